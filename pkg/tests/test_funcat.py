import math

import numpy as np
import pytest

from traceineq import funcat, sampler, symla
from traceineq.funcat import (
    CONVEX,
    MONOTONE,
    QuadratureSpec,
    atom,
    catalog,
    eval_derivative,
    eval_scalar,
    eval_via_representation,
    log1p,
    parse_function,
    power,
    qatom,
    square,
)

MEASURED = [f for f in catalog() if f.measure is not None]


class TestCatalog:
    def test_shipped_classes(self):
        names = {f.name for f in catalog()}
        assert {"power:0.5", "power:1", "log1p", "square", "atom:2.5", "qatom:2.5"} <= names

    def test_power_half_is_monotone_with_zero_beta(self):
        f = power(0.5)
        assert f.kind == MONOTONE and f.beta == 0.0 and f.measure is not None

    def test_power_one_is_pure_linear(self):
        f = power(1.0)
        assert f.kind == MONOTONE and f.beta == 1.0 and f.measure is None

    def test_square_is_pure_quadratic(self):
        f = square()
        assert f.kind == CONVEX and f.gamma == 1.0 and f.beta == 0.0 and f.measure is None

    def test_power_two_equals_square(self):
        f = power(2.0)
        assert f.kind == CONVEX and f.gamma == 1.0 and f.measure is None

    def test_alpha_always_zero(self):
        assert all(f.alpha == 0.0 for f in catalog())

    def test_monotone_beta_nonnegative(self):
        assert all(f.beta >= 0.0 for f in catalog() if f.kind == MONOTONE)

    def test_class_validation(self):
        with pytest.raises(ValueError):
            power(0.5, CONVEX)
        with pytest.raises(ValueError):
            power(1.7, MONOTONE)
        with pytest.raises(ValueError):
            power(2.5)
        with pytest.raises(ValueError):
            atom(-1.0)


class TestParse:
    def test_grammar(self):
        assert parse_function("power:0.5").name == "power:0.5"
        assert parse_function("power:1.7").kind == CONVEX
        assert parse_function("log1p").name == "log1p"
        assert parse_function("atom:2.5").param == 2.5
        assert parse_function("square").gamma == 1.0
        assert parse_function("qatom:1.5").kind == CONVEX

    def test_power_one_class_hint(self):
        assert parse_function("power:1", MONOTONE).kind == MONOTONE
        assert parse_function("power:1", CONVEX).kind == CONVEX

    def test_unknown_rejected(self):
        with pytest.raises(ValueError):
            parse_function("cube")
        with pytest.raises(ValueError):
            parse_function("log1p:3")
        with pytest.raises(ValueError):
            parse_function("power:abc")


class TestScalarRules:
    def test_closed_forms(self):
        assert eval_scalar(power(0.5), 4.0) == pytest.approx(2.0)
        assert eval_scalar(log1p(), math.e - 1.0) == pytest.approx(1.0)
        assert eval_scalar(atom(1.0), 1.0) == pytest.approx(0.5)

    def test_all_vanish_at_zero(self):
        for f in catalog():
            assert eval_scalar(f, 0.0) == 0.0

    def test_negative_rejected(self):
        with pytest.raises(ValueError):
            eval_scalar(power(0.5), -1.0)

    def test_derivatives(self):
        assert eval_derivative(square(), 3.0) == pytest.approx(6.0)
        for p in (0.3, 0.8, 1.0, 1.5, 2.0):
            assert eval_derivative(parse_function(f"power:{p}"), 1.0) == pytest.approx(p)
        assert eval_derivative(log1p(), 0.0) == pytest.approx(1.0)

    def test_derivative_against_finite_differences(self):
        h = 1e-6
        for f in catalog():
            for t in (0.5, 1.0, 3.7):
                fd = (eval_scalar(f, t + h) - eval_scalar(f, t - h)) / (2.0 * h)
                assert eval_derivative(f, t) == pytest.approx(fd, rel=1e-5)

    def test_derivative_undefined_at_zero(self):
        with pytest.raises(ValueError):
            eval_derivative(power(0.5), 0.0)

    def test_monotone_entries_nondecreasing(self):
        grid = np.linspace(0.0, 50.0, 400)
        for f in catalog():
            if f.kind != MONOTONE:
                continue
            vals = f.fn(grid)
            assert np.all(np.diff(vals) >= -1e-12)
            assert np.all(vals >= -1e-12)

    def test_convex_entries_midpoint_convex(self):
        rng = np.random.default_rng(3)
        for f in catalog():
            if f.kind != CONVEX:
                continue
            x = 10.0 * rng.random(200)
            y = 10.0 * rng.random(200)
            mid = f.fn((x + y) / 2.0)
            assert np.all(mid <= (f.fn(x) + f.fn(y)) / 2.0 + 1e-12)


class TestRepresentation:
    def test_examples(self):
        assert eval_via_representation(power(0.5), 4.0) == pytest.approx(2.0, rel=1e-6)
        assert eval_via_representation(atom(1.0), 1.0) == 0.5  # point mass, exact
        assert eval_via_representation(power(1.5), 2.0) == pytest.approx(2.828427, abs=1e-5)
        assert eval_via_representation(power(1.5), 2.0) == pytest.approx(2.0**1.5, rel=1e-6)

    @pytest.mark.parametrize("f", MEASURED, ids=lambda f: f.name)
    def test_matches_closed_form_on_log_grid(self, f):
        for t in np.logspace(-3, 3, 50):
            closed = eval_scalar(f, float(t))
            got = eval_via_representation(f, float(t))
            assert abs(got - closed) <= 1e-6 * max(1.0, abs(closed))

    def test_entries_without_measure_are_exact(self):
        assert eval_via_representation(power(1.0), 3.0) == 3.0
        assert eval_via_representation(square(), 3.0) == 9.0

    def test_zero_argument(self):
        for f in catalog():
            assert eval_via_representation(f, 0.0) == 0.0

    def test_quadrature_spec_validation(self):
        with pytest.raises(ValueError):
            QuadratureSpec(rel_tol=0.0)
        with pytest.raises(ValueError):
            QuadratureSpec(max_level=0)

    def test_tolerance_is_respected(self):
        spec = QuadratureSpec(rel_tol=1e-10, max_level=9)
        got = eval_via_representation(power(0.5), 2.0, spec)
        assert got == pytest.approx(math.sqrt(2.0), rel=1e-9)


class TestOperatorMonotonicity:
    def test_matrix_monotonicity_spot_check(self):
        # A = B + increment implies f(A) - f(B) is nearly PSD for monotone f
        for f in catalog():
            if f.kind != MONOTONE:
                continue
            for i in range(10):
                spec = sampler.SampleSpec(dim=4, kind="ordered_pair", seed=900 + i)
                a, b = sampler.random_pair(spec)
                diff = symla.psd_function(a, f.fn) - symla.psd_function(b, f.fn)
                assert symla.jacobi_eigh(diff).eigenvalues[-1] >= -1e-8

    def test_square_is_not_matrix_monotone(self):
        # sanity for the test above: t^2 fails operator monotonicity somewhere
        witness = 0
        f = square()
        for i in range(50):
            spec = sampler.SampleSpec(dim=4, kind="ordered_pair", seed=4242 + i)
            a, b = sampler.random_pair(spec)
            diff = symla.psd_function(a, f.fn) - symla.psd_function(b, f.fn)
            if symla.jacobi_eigh(diff).eigenvalues[-1] < -1e-6:
                witness += 1
        assert witness > 0


def test_derivative_on_spectrum_zero_handling():
    lam = np.array([2.0, 1.0, 0.0])
    out = funcat.derivative_on_spectrum(power(1.5), lam)
    assert out[-1] == 0.0
    with pytest.raises(ValueError):
        funcat.derivative_on_spectrum(power(0.5), lam)
