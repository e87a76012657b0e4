import math

import numpy as np
import pytest

from traceineq import funcat, ineq, sampler, symla
from traceineq.funcat import CONVEX, MONOTONE, log1p, parse_function, power, square
from traceineq.ineq import (
    EQUALITY,
    HOLDS,
    VIOLATED,
    convex_gap,
    interpolation_chain,
    klein_gap,
    monotone_gap,
    powers_stormer_gap,
    ricard_gap,
    scalar_power_gap,
    zee_decomposition,
)

PROJ_A = np.diag([1.0, 0.0])
PROJ_B = np.full((2, 2), 0.5)  # rank-one projection onto (1,1)/sqrt(2)


def pair(i, dim, kind="wishart"):
    return sampler.random_pair(sampler.SampleSpec(dim=dim, kind=kind, seed=5000 + i))


def commuting_oracle_pair(i, dim):
    spec = sampler.SampleSpec(dim=dim, kind="commuting_pair", seed=7000 + i)
    return sampler.commuting_pair_with_spectra(spec)


class TestScalarPower:
    def test_examples(self):
        assert scalar_power_gap(2.0, 1.0, 3.0).gap == pytest.approx(2.0)
        assert scalar_power_gap(5.0, 5.0, 2.7).gap == pytest.approx(0.0, abs=1e-12)
        assert scalar_power_gap(2.0, 1.0, 1.5).gap == pytest.approx(0.585786, abs=1e-6)
        assert scalar_power_gap(2.0, 1.0, 1.5).gap == pytest.approx(2.0 - math.sqrt(2.0))

    def test_p_two_both_orientations_vanish(self):
        assert scalar_power_gap(3.0, 1.0, 2.0).gap == pytest.approx(0.0, abs=1e-12)
        assert scalar_power_gap(3.0, 1.0, 2.0).verdict == EQUALITY

    def test_validation(self):
        with pytest.raises(ValueError):
            scalar_power_gap(1.0, 2.0, 3.0)  # unordered with p >= 2
        with pytest.raises(ValueError):
            scalar_power_gap(2.0, 1.0, 0.5)  # p < 1
        with pytest.raises(ValueError):
            scalar_power_gap(-1.0, 0.0, 2.0)

    def test_random_sweep(self):
        rng = np.random.default_rng(0)
        for _ in range(500):
            a, b = np.sort(5.0 * rng.random(2))[::-1]
            for p in (1.0, 1.3, 1.7, 2.0, 2.5, 3.0, 4.0):
                assert scalar_power_gap(a, b, p).relative_gap >= -1e-12


class TestRicard:
    def test_commuting_examples(self):
        a, b = np.diag([2.0, 0.0]), np.diag([1.0, 0.0])
        assert ricard_gap(a, b, 3.0).gap == pytest.approx(2.0, abs=1e-12)
        assert ricard_gap(a, b, 1.5).gap == pytest.approx(2.0 - math.sqrt(2.0), abs=1e-10)

    def test_equal_matrices(self):
        a, _ = pair(0, 4)
        assert ricard_gap(a, a, 2.5).gap == pytest.approx(0.0, abs=1e-12)

    def test_p_two_is_equality(self):
        for i in range(10):
            a, b = pair(i, 4)
            rep = ricard_gap(a, b, 2.0)
            assert abs(rep.relative_gap) <= 1e-10
            assert rep.verdict == EQUALITY

    def test_rejects_small_p(self):
        a, b = pair(0, 3)
        with pytest.raises(ValueError):
            ricard_gap(a, b, 0.9)

    @pytest.mark.parametrize("p", [1.0, 1.2, 1.5, 2.0, 2.5, 3.0, 4.0])
    def test_holds_on_samples(self, p):
        for i in range(25):
            a, b = pair(i, 4)
            assert ricard_gap(a, b, p).relative_gap >= -1e-9

    def test_lhs_nonnegative_for_p_ge_1(self):
        # the paired trace itself is nonnegative (Klein applied twice)
        for i in range(25):
            a, b = pair(i, 5)
            for p in (1.0, 1.5, 2.0, 3.0):
                am, bm = symla.symmetrize(a), symla.symmetrize(b)
                pa = symla.psd_function(am, lambda t: np.power(t, p - 1.0))
                pb = symla.psd_function(bm, lambda t: np.power(t, p - 1.0))
                assert symla.trace_product(am - bm, pa - pb) >= -1e-9


class TestChain:
    def test_projection_example(self):
        chain = interpolation_chain(PROJ_A, PROJ_B, 2.0)
        assert chain.left == pytest.approx(math.sqrt(2.0), abs=1e-10)
        assert chain.middle == pytest.approx(1.0, abs=1e-10)
        assert chain.right == pytest.approx(1.0, abs=1e-10)
        assert (chain.left, chain.middle, chain.right) == pytest.approx(
            (1.414214, 1.0, 1.0), abs=1e-6)

    def test_equal_matrices(self):
        a, _ = pair(1, 3)
        chain = interpolation_chain(a, a, 3.0)
        assert (chain.left, chain.middle, chain.right) == pytest.approx((0.0, 0.0, 0.0), abs=1e-10)

    def test_diagonal_example(self):
        chain = interpolation_chain(np.diag([2.0, 0.0]), np.diag([1.0, 0.0]), 3.0)
        assert (chain.left, chain.middle, chain.right) == pytest.approx((7.0, 3.0, 1.0), abs=1e-10)

    def test_left_only_below_two(self):
        a, b = pair(2, 4)
        chain = interpolation_chain(a, b, 1.5)
        assert chain.middle_right is None
        assert chain.left_middle.relative_gap >= -1e-9

    @pytest.mark.parametrize("p", [2.0, 2.5, 3.0, 4.0])
    def test_full_chain_holds(self, p):
        for i in range(25):
            a, b = pair(i, 4)
            chain = interpolation_chain(a, b, p)
            assert chain.left_middle.relative_gap >= -1e-9
            assert chain.middle_right.relative_gap >= -1e-9


class TestPowersStormer:
    def test_projection_example(self):
        rep = powers_stormer_gap(PROJ_A, PROJ_B, 0.5)
        assert rep.gap == pytest.approx(math.sqrt(2.0) - 1.0, abs=1e-10)
        assert rep.gap == pytest.approx(0.414214, abs=1e-6)

    def test_equality_at_equal_arguments(self):
        for i in range(5):
            a, _ = pair(i, 4)
            assert abs(powers_stormer_gap(a, a, 0.5).gap) <= 1e-10

    def test_orthogonal_supports(self):
        rep = powers_stormer_gap(np.diag([1.0, 0.0]), np.diag([0.0, 1.0]), 0.5)
        assert rep.lhs == pytest.approx(0.0, abs=1e-12)
        assert rep.rhs == pytest.approx(0.0, abs=1e-12)

    def test_validation(self):
        with pytest.raises(ValueError):
            powers_stormer_gap(PROJ_A, PROJ_B, 1.5)

    @pytest.mark.parametrize("s", [0.0, 0.25, 0.5, 0.75, 1.0])
    def test_holds_on_samples(self, s):
        for i in range(25):
            a, b = pair(i, 5)
            assert powers_stormer_gap(a, b, s).relative_gap >= -1e-9


class TestKlein:
    def test_nearly_singular_diagonal(self):
        rep = klein_gap(np.diag([2.0, 0.0]), np.diag([1.0, 1e-6]), square())
        assert rep.gap == pytest.approx(1.0, abs=1e-5)

    def test_projection_example(self):
        rep = klein_gap(PROJ_A, PROJ_B, square())
        assert rep.lhs == pytest.approx(0.0, abs=1e-12)
        assert rep.rhs == pytest.approx(-1.0, abs=1e-12)
        assert rep.gap == pytest.approx(1.0, abs=1e-12)

    def test_equal_matrices(self):
        a, _ = pair(3, 4)
        assert abs(klein_gap(a, a, square()).gap) <= 1e-10

    def test_requires_convex_class(self):
        with pytest.raises(ValueError):
            klein_gap(PROJ_A, PROJ_B, power(0.5))

    def test_holds_on_samples(self):
        for f in (square(), power(1.5), power(1.0, CONVEX), parse_function("qatom:2.5")):
            for i in range(20):
                a, b = pair(i, 4)
                assert klein_gap(a, b, f).relative_gap >= -1e-9


class TestMonotoneGap:
    def test_projection_example(self):
        rep = monotone_gap(PROJ_A, PROJ_B, power(0.5))
        assert rep.gap == pytest.approx(2.0**0.25 - 1.0, abs=1e-10)
        assert rep.gap == pytest.approx(0.189207, abs=1e-6)
        assert rep.lhs == pytest.approx(2.0**0.25, abs=1e-10)

    def test_equal_matrices(self):
        a, _ = pair(4, 4)
        assert abs(monotone_gap(a, a, power(0.5)).gap) <= 1e-12

    def test_commuting_example(self):
        rep = monotone_gap(np.diag([2.0, 0.0]), np.diag([1.0, 0.0]), power(0.5))
        assert rep.gap == pytest.approx(2.0 - math.sqrt(2.0), abs=1e-10)
        assert rep.gap == pytest.approx(0.585786, abs=1e-6)

    def test_requires_monotone_class(self):
        with pytest.raises(ValueError):
            monotone_gap(PROJ_A, PROJ_B, square())

    def test_holds_on_samples_all_kinds(self):
        fs = [power(0.3), power(0.5), power(1.0), log1p(), parse_function("atom:2.5")]
        for kind in ("wishart", "ordered_pair", "commuting_pair",
                     "projection_pair", "rank_deficient"):
            for i in range(15):
                a, b = pair(i, 4, kind)
                for f in fs:
                    assert monotone_gap(a, b, f).relative_gap >= -1e-9


class TestConvexGap:
    def test_projection_example(self):
        rep = convex_gap(PROJ_A, PROJ_B, square())
        assert rep.gap == pytest.approx(1.0 - 1.0 / math.sqrt(2.0), abs=1e-10)
        assert rep.gap == pytest.approx(0.292893, abs=1e-6)

    def test_commuting_example(self):
        rep = convex_gap(np.diag([2.0, 0.0]), np.diag([1.0, 0.0]), square())
        assert rep.gap == pytest.approx(2.0, abs=1e-10)

    def test_equal_matrices(self):
        a, _ = pair(5, 4)
        assert abs(convex_gap(a, a, square()).gap) <= 1e-12

    def test_requires_convex_class(self):
        with pytest.raises(ValueError):
            convex_gap(PROJ_A, PROJ_B, log1p())

    def test_holds_on_samples_all_kinds(self):
        fs = [square(), power(1.5), power(2.0), parse_function("qatom:1")]
        for kind in ("wishart", "ordered_pair", "commuting_pair",
                     "projection_pair", "rank_deficient"):
            for i in range(15):
                a, b = pair(i, 4, kind)
                for f in fs:
                    assert convex_gap(a, b, f).relative_gap >= -1e-9


class TestCommutingOracle:
    """Simultaneously diagonal pairs: every trace quantity equals its scalar sum."""

    def test_monotone_and_convex_sides(self):
        for i in range(30):
            a, b, sa, sb = commuting_oracle_pair(i, 4)
            c = sa - sb
            for f in (power(0.5), power(0.2), log1p()):
                rep = monotone_gap(a, b, f)
                lhs_oracle = float(np.sum(np.abs(c) * f.fn(np.abs(c))))
                rhs_oracle = float(np.sum(c * (f.fn(sa) - f.fn(sb))))
                assert abs(rep.lhs - lhs_oracle) <= 1e-10 * max(1.0, abs(lhs_oracle))
                assert abs(rep.rhs - rhs_oracle) <= 1e-10 * max(1.0, abs(rhs_oracle))
            for f in (square(), power(1.5)):
                rep = convex_gap(a, b, f)
                lhs_oracle = float(np.sum(c * (f.fn(sa) - f.fn(sb))))
                assert abs(rep.lhs - lhs_oracle) <= 1e-10 * max(1.0, abs(lhs_oracle))

    def test_ricard_sides(self):
        for i in range(30):
            a, b, sa, sb = commuting_oracle_pair(i, 5)
            c = sa - sb
            for p in (1.5, 3.0):
                rep = ricard_gap(a, b, p)
                paired = float(np.sum(c * (sa ** (p - 1) - sb ** (p - 1))))
                powered = float(np.sum(np.abs(c) ** p))
                want = paired - powered if p >= 2 else powered - paired
                assert abs(rep.gap - want) <= 1e-10 * max(1.0, abs(want))


class TestZee:
    def test_ordered_case_collapses(self):
        for i in range(10):
            a, b = pair(i, 4, "ordered_pair")
            z = zee_decomposition(a, b, power(0.5))
            assert symla.frobenius(z.negative_part) <= 1e-8
            assert abs(z.t2) <= 1e-8 and abs(z.t4) <= 1e-8
            # direct monotone computation agrees with the route through Z
            assert sum(z.terms) == pytest.approx(z.direct, abs=1e-10 * max(1.0, abs(z.direct)))

    def test_reconstruction_identity(self):
        a, b = PROJ_A, PROJ_B
        z = zee_decomposition(a, b, power(0.5))
        lhs = z.z
        np.testing.assert_allclose(lhs, symla.symmetrize(b) + z.positive_part, atol=1e-10)
        np.testing.assert_allclose(lhs, symla.symmetrize(a) + z.negative_part, atol=1e-10)

    def test_four_term_identity(self):
        for i in range(20):
            a, b = pair(i, 5)
            z = zee_decomposition(a, b, power(0.5))
            assert sum(z.terms) == pytest.approx(z.direct, rel=1e-9, abs=1e-9)

    def test_cross_term_signs(self):
        for i in range(20):
            a, b = pair(i, 4)
            scale = 1.0
            for f in (power(0.5), log1p()):
                z = zee_decomposition(a, b, f)
                scale = max(1.0, sum(abs(t) for t in z.terms))
                assert z.t2 <= 1e-9 * scale and z.t4 <= 1e-9 * scale
            for f in (square(), power(1.5)):
                z = zee_decomposition(a, b, f)
                scale = max(1.0, sum(abs(t) for t in z.terms))
                assert z.t2 >= -1e-9 * scale and z.t4 >= -1e-9 * scale


class TestGapReportClassification:
    def test_verdicts(self):
        assert ineq.classify("x", 2.0, 1.0).verdict == HOLDS
        assert ineq.classify("x", 1.0, 1.0 + 5e-10).verdict == EQUALITY
        assert ineq.classify("x", 1.0, 2.0).verdict == VIOLATED

    def test_relative_normalization(self):
        rep = ineq.classify("x", 2e6, 1e6)
        assert rep.relative_gap == pytest.approx(0.5)
