import math

import numpy as np
import pytest

from traceineq import sampler, symla, uinorm
from traceineq.funcat import CONVEX, parse_function, power, square
from traceineq.uinorm import (
    NormSpec,
    ando_gap,
    ando_theta_gap,
    conjecture_gap,
    ky_fan_norm,
    norm_value,
    parse_norm,
    schatten_norm,
)

PROJ_A = np.diag([1.0, 0.0])
PROJ_B = np.full((2, 2), 0.5)


def pair(i, dim, kind="wishart"):
    return sampler.random_pair(sampler.SampleSpec(dim=dim, kind=kind, seed=6000 + i))


def sym(i, dim):
    a, b = pair(i, dim)
    return a - b


class TestNormSpec:
    def test_parse(self):
        assert parse_norm("trace") == NormSpec("schatten", 1.0)
        assert parse_norm("schatten:2") == NormSpec("schatten", 2.0)
        assert parse_norm("kyfan:3") == NormSpec("kyfan", 3)

    def test_parse_rejects(self):
        for bad in ("spectral", "schatten:0.5", "kyfan:0", "kyfan:1.5", "kyfan:all"):
            with pytest.raises(ValueError):
                parse_norm(bad)

    def test_labels(self):
        assert parse_norm("trace").label == "trace"
        assert parse_norm("schatten:2").label == "schatten:2"
        assert parse_norm("kyfan:2").label == "kyfan:2"


class TestNorms:
    def test_schatten_examples(self):
        assert schatten_norm(np.diag([3.0, -4.0]), 1.0) == pytest.approx(7.0)
        assert schatten_norm(np.full((2, 2), 1.0), 2.0) == pytest.approx(2.0)
        for p in (1.0, 2.0, 3.5):
            assert schatten_norm(np.eye(4), p) == pytest.approx(4.0 ** (1.0 / p))

    def test_kyfan_examples(self):
        assert ky_fan_norm(np.diag([3.0, -1.0, 2.0]), 2) == pytest.approx(5.0)
        m = sym(0, 4)
        assert ky_fan_norm(m, 4) == pytest.approx(schatten_norm(m, 1.0), abs=1e-12)
        assert ky_fan_norm(np.array([[0.0, 2.0], [0.0, 0.0]]), 1) == pytest.approx(2.0)

    def test_validation(self):
        with pytest.raises(ValueError):
            schatten_norm(np.eye(2), 0.5)
        with pytest.raises(ValueError):
            ky_fan_norm(np.eye(2), 3)
        with pytest.raises(ValueError):
            ky_fan_norm(np.eye(2), 0)

    def test_triangle_inequality(self):
        for i in range(15):
            x, y = sym(2 * i, 4), sym(2 * i + 1, 4)
            for spec in (parse_norm("trace"), parse_norm("schatten:2"), parse_norm("kyfan:2")):
                lhs = norm_value(x + y, spec)
                rhs = norm_value(x, spec) + norm_value(y, spec)
                assert lhs <= rhs * (1.0 + 1e-9) + 1e-12

    def test_absolute_homogeneity(self):
        x = sym(7, 4)
        for spec in (parse_norm("trace"), parse_norm("schatten:3"), parse_norm("kyfan:3")):
            assert norm_value(-2.5 * x, spec) == pytest.approx(2.5 * norm_value(x, spec), rel=1e-12)

    def test_unitary_invariance(self):
        for i in range(10):
            x = sym(i, 5)
            q = sampler.random_orthogonal(5, sampler.stream(42, i))
            u = sampler.random_orthogonal(5, sampler.stream(43, i))
            for spec in (parse_norm("trace"), parse_norm("schatten:2"), parse_norm("kyfan:2")):
                before = norm_value(x, spec)
                after = norm_value(q @ x @ u.T, spec)
                assert abs(after - before) <= 1e-9 * max(1.0, before)


class TestHoelder:
    @pytest.mark.parametrize("p,q", [(2.0, 2.0), (3.0, 1.5), (4.0, 4.0 / 3.0)])
    def test_trace_bound(self, p, q):
        assert abs(1.0 / p + 1.0 / q - 1.0) < 1e-12
        for i in range(25):
            x, y = sym(2 * i, 4), sym(2 * i + 1, 4)
            lhs = abs(symla.trace_product(x, y))
            rhs = schatten_norm(x, p) * schatten_norm(y, q)
            assert lhs <= rhs * (1.0 + 1e-9) + 1e-12


class TestAndo:
    def test_projection_example(self):
        rep = ando_gap(PROJ_A, PROJ_B, 2.0, parse_norm("trace"))
        assert rep.gap == pytest.approx(math.sqrt(2.0) - 1.0, abs=1e-10)
        assert rep.gap == pytest.approx(0.414214, abs=1e-6)

    def test_equal_matrices(self):
        a, _ = pair(0, 3)
        assert abs(ando_gap(a, a, 2.0, parse_norm("trace")).gap) <= 1e-12

    def test_diagonal_example(self):
        rep = ando_gap(np.diag([2.0, 0.0]), np.diag([1.0, 0.0]), 3.0, parse_norm("trace"))
        assert rep.gap == pytest.approx(6.0, abs=1e-10)

    def test_p_one_identically_zero(self):
        for i in range(10):
            a, b = pair(i, 4)
            assert abs(ando_gap(a, b, 1.0, parse_norm("trace")).gap) <= 1e-12

    def test_holds_on_samples_all_kyfan(self):
        for i in range(20):
            a, b = pair(i, 4)
            for p in (1.5, 2.0, 3.0):
                for k in range(1, 5):
                    rep = ando_gap(a, b, p, NormSpec("kyfan", k))
                    assert rep.relative_gap >= -1e-9

    def test_fan_dominance_consistency(self):
        # all Ky Fan gaps nonnegative on an instance implies Schatten gaps too
        for i in range(15):
            a, b = pair(i, 4)
            for p in (2.0, 3.0):
                if all(ando_gap(a, b, p, NormSpec("kyfan", k)).gap >= 0.0
                       for k in range(1, 5)):
                    for sp in (1.0, 2.0, 4.0):
                        rep = ando_gap(a, b, p, NormSpec("schatten", sp))
                        assert rep.relative_gap >= -1e-9


class TestAndoTheta:
    def test_diagonal_example(self):
        rep = ando_theta_gap(np.diag([4.0, 0.0]), np.diag([1.0, 0.0]), 0.5, 1.0)
        assert rep.gap == pytest.approx(math.sqrt(3.0) - 1.0, abs=1e-10)
        assert rep.gap == pytest.approx(0.732051, abs=1e-6)

    def test_equal_matrices(self):
        a, _ = pair(1, 3)
        assert abs(ando_theta_gap(a, a, 0.5, 2.0).gap) <= 1e-12

    def test_theta_one_identically_zero(self):
        for i in range(10):
            a, b = pair(i, 3)
            assert abs(ando_theta_gap(a, b, 1.0, 2.0).gap) <= 1e-10

    def test_validation(self):
        a, b = pair(0, 3)
        with pytest.raises(ValueError):
            ando_theta_gap(a, b, 1.5, 2.0)
        with pytest.raises(ValueError):
            ando_theta_gap(a, b, 0.5, 0.25)

    @pytest.mark.parametrize("theta", [0.25, 0.5, 0.75])
    @pytest.mark.parametrize("q", [1.0, 2.0, 3.0])
    def test_holds_on_samples(self, theta, q):
        for i in range(20):
            a, b = pair(i, 4)
            assert ando_theta_gap(a, b, theta, q).relative_gap >= -1e-9


class TestConjecture:
    def test_commuting_example(self):
        rep = conjecture_gap(np.diag([2.0, 0.0]), np.diag([1.0, 0.0]), power(0.5),
                             NormSpec("kyfan", 1))
        assert rep.gap == pytest.approx(2.0 - math.sqrt(2.0), abs=1e-10)
        assert rep.gap == pytest.approx(0.585786, abs=1e-6)

    def test_equal_matrices(self):
        a, _ = pair(2, 3)
        assert abs(conjecture_gap(a, a, power(0.5), NormSpec("kyfan", 2)).gap) <= 1e-12

    def test_projection_example(self):
        rep = conjecture_gap(PROJ_A, PROJ_B, power(0.5), NormSpec("kyfan", 2))
        assert rep.lhs == pytest.approx(2.0**0.25, abs=1e-10)
        assert rep.lhs == pytest.approx(1.189207, abs=1e-6)
        assert rep.rhs == pytest.approx(1.0, abs=1e-10)
        assert rep.gap == pytest.approx(0.189207, abs=1e-6)

    def test_identity_function_gap_vanishes(self):
        # both sides share singular values when f is the identity
        for i in range(10):
            a, b = pair(i, 4)
            for k in (1, 2, 3, 4):
                assert abs(conjecture_gap(a, b, power(1.0), NormSpec("kyfan", k)).gap) <= 1e-10
                assert abs(conjecture_gap(a, b, power(1.0, CONVEX),
                                          NormSpec("kyfan", k)).gap) <= 1e-10

    def test_trace_norm_rhs_is_folded_trace(self):
        # the folded matrix is PSD, so its trace norm at k = dim is its trace
        for i in range(10):
            a, b = pair(i, 4)
            c = symla.symmetrize(a) - symla.symmetrize(b)
            mu = np.abs(symla.jacobi_eigh(c).eigenvalues)
            want = float(np.sum(mu * np.sqrt(mu)))
            rep = conjecture_gap(a, b, power(0.5), NormSpec("kyfan", 4))
            assert abs(rep.lhs - want) <= 1e-10 * max(1.0, want)

    def test_accurate_route_matches(self):
        a, b = pair(3, 4)
        for f in (power(0.5), square()):
            fast = conjecture_gap(a, b, f, NormSpec("kyfan", 2))
            slow = conjecture_gap(a, b, f, NormSpec("kyfan", 2), accurate=True)
            assert fast.gap == pytest.approx(slow.gap, abs=1e-8)

    def test_holds_on_samples(self):
        fs = [power(0.3), power(0.5), parse_function("log1p"),
              square(), power(1.5)]
        for kind in ("wishart", "rank_deficient", "projection_pair"):
            for i in range(10):
                a, b = pair(i, 4, kind)
                for f in fs:
                    for k in (1, 2, 4):
                        rep = conjecture_gap(a, b, f, NormSpec("kyfan", k))
                        assert rep.relative_gap >= -1e-9
