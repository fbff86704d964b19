import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from relgouy.numerics import (
    GAUSS_WEIGHTS,
    KRONROD_NODES,
    KRONROD_WEIGHTS,
    QuadratureError,
    QuadratureSpec,
    StencilSpec,
    default_step,
    diff,
    fixed_gauss_legendre,
    hermite,
    integrate,
)


def hermite_exact(n, x):
    """Recurrence in exact rational arithmetic."""
    x = Fraction(x)
    h_prev, h = Fraction(1), 2 * x
    if n == 0:
        return h_prev
    for k in range(1, n):
        h_prev, h = h, 2 * x * h - 2 * k * h_prev
    return h


def test_hermite_examples():
    assert hermite(0, 3.7) == 1.0
    assert hermite(1, 0.5) == 1.0
    assert hermite(3, 1.0) == float(hermite_exact(3, 1)) == -4.0


@pytest.mark.parametrize("n", [2, 5, 9, 14, 20])
@pytest.mark.parametrize("x", [-6.0, -1.25, 0.0, 0.3, 2.5, 6.0])
def test_hermite_matches_exact_recurrence(n, x):
    exact = float(hermite_exact(n, x))
    assert hermite(n, x) == pytest.approx(exact, rel=1e-13, abs=1e-300)


def test_hermite_against_numpy_polynomial():
    x = np.linspace(-6, 6, 31)
    for n in range(12):
        coeffs = np.zeros(n + 1)
        coeffs[n] = 1
        ref = np.polynomial.hermite.hermval(x, coeffs)
        got = np.array([hermite(n, v) for v in x])
        np.testing.assert_allclose(got, ref, rtol=1e-12, atol=1e-9)


def test_hermite_cap():
    with pytest.raises(ValueError, match="cap n <= 20"):
        hermite(21, 0.1)
    with pytest.raises(ValueError):
        hermite(-1, 0.1)


finite_x = st.floats(min_value=-6, max_value=6, allow_nan=False)


@given(n=st.integers(1, 19), x=finite_x)
def test_hermite_recurrence_property(n, x):
    assert hermite(n + 1, x) == 2 * x * hermite(n, x) - 2 * n * hermite(n - 1, x)


@given(n=st.integers(0, 20), x=finite_x)
def test_hermite_parity_bitwise(n, x):
    assert hermite(n, -x) == (-1) ** n * hermite(n, x)


def test_kronrod_rule_constants():
    assert KRONROD_WEIGHTS.sum() == pytest.approx(2.0, abs=1e-15)
    assert GAUSS_WEIGHTS.sum() == pytest.approx(2.0, abs=1e-15)
    # Kronrod-15 integrates degree 22 exactly, Gauss-7 degree 13.
    for p in range(0, 23, 2):
        exact = 2.0 / (p + 1)
        assert KRONROD_WEIGHTS @ KRONROD_NODES**p == pytest.approx(exact, rel=1e-14)
        if p <= 13:
            assert GAUSS_WEIGHTS @ KRONROD_NODES**p == pytest.approx(exact, rel=1e-14)


def test_integrate_constant():
    value, err = integrate(lambda x: 1.0, QuadratureSpec(((0.0, 1.0),)))
    assert value == pytest.approx(1.0, abs=1e-15)
    assert err < 1e-14


def test_integrate_gaussian_1d():
    spec = QuadratureSpec(((-8.0, 8.0),), rel_tol=1e-12)
    value, err = integrate(lambda x: np.exp(-x * x), spec)
    oracle = fixed_gauss_legendre(lambda x: np.exp(-x * x), spec.box, nodes=200)
    assert oracle == pytest.approx(math.sqrt(math.pi), rel=1e-14)
    assert value == pytest.approx(math.sqrt(math.pi), rel=spec.rel_tol)
    assert err <= spec.rel_tol * abs(value)


def test_integrate_gaussian_2d():
    spec = QuadratureSpec(((-8.0, 8.0), (-8.0, 8.0)), rel_tol=1e-11)
    f = lambda x, y: np.exp(-x * x - y * y)  # noqa: E731
    value, err = integrate(f, spec)
    assert fixed_gauss_legendre(f, spec.box, nodes=120) == pytest.approx(math.pi, rel=1e-13)
    assert value == pytest.approx(math.pi, rel=spec.rel_tol)
    assert err <= spec.rel_tol * abs(value)


def test_integrate_is_deterministic():
    spec = QuadratureSpec(((-3.0, 5.0), (0.0, 2.0)), rel_tol=1e-12)
    f = lambda x, y: np.cos(3 * x) * np.exp(-y) + x * x  # noqa: E731
    assert integrate(f, spec) == integrate(f, spec)


def test_integrate_linearity():
    spec = QuadratureSpec(((-2.0, 3.0),), rel_tol=1e-12)
    f = lambda x: np.sin(x) ** 2  # noqa: E731
    g = lambda x: np.exp(-x) * x  # noqa: E731
    a, b = 2.5, -1.75
    vf, ef = integrate(f, spec)
    vg, eg = integrate(g, spec)
    vh, eh = integrate(lambda x: a * f(x) + b * g(x), spec)
    assert abs(vh - (a * vf + b * vg)) <= abs(a) * ef + abs(b) * eg + eh + 1e-14


def test_integrate_budget_exhausted_carries_estimate():
    spec = QuadratureSpec(((0.0, 1.0),), rel_tol=1e-15, max_subdivisions=2)
    with pytest.raises(QuadratureError) as info:
        integrate(lambda x: np.sqrt(x), spec)
    assert info.value.value == pytest.approx(2.0 / 3.0, rel=1e-3)
    assert info.value.error_estimate > 0


def test_integrate_rejects_nonfinite():
    with pytest.raises(ValueError), np.errstate(divide="ignore"):
        integrate(lambda x: 1.0 / x, QuadratureSpec(((-1.0, 1.0),)))


@pytest.mark.parametrize("box", [((1.0, 1.0),), ((2.0, 1.0),), ((0.0, float("inf")),)])
def test_quadrature_spec_rejects_degenerate_box(box):
    with pytest.raises(ValueError):
        QuadratureSpec(box)


def test_diff_quadratic_second_derivative():
    spec = StencilSpec("second", "x1", 0.1, 2)
    for x in (-3.0, 0.0, 1.7):
        assert abs(diff(lambda v: v * v, x, spec) - 2.0) <= 1e-10


def test_diff_exp_first_derivative():
    spec = StencilSpec("first", "x1", default_step("first", 1.0), 2)
    assert abs(diff(lambda v: np.exp(1j * v), 0.0, spec) - 1j) <= 1e-12


def test_diff_exp_second_derivative():
    k = 5.0
    spec = StencilSpec("second", "x1", default_step("second", 1.0 / k), 2)
    oracle = -(k**2) * complex(math.cos(1.5), math.sin(1.5))
    assert abs(diff(lambda v: np.exp(1j * k * v), 0.3, spec) - oracle) <= 1e-9 * k**2


@pytest.mark.parametrize("order", ["first", "second"])
@pytest.mark.parametrize("levels", [1, 2])
def test_stencil_convergence_order(order, levels):
    exact = 1j * np.exp(0.4j) if order == "first" else -np.exp(0.4j)
    errors = []
    for h in (0.4, 0.2, 0.1):
        spec = StencilSpec(order, "t", h, levels)
        errors.append(abs(diff(lambda v: np.exp(1j * v), 0.4, spec) - exact))
    for coarse, fine in zip(errors, errors[1:]):
        assert coarse / fine >= 3.0


def test_stencil_spec_validation():
    with pytest.raises(ValueError):
        StencilSpec("third", "t", 0.1)
    with pytest.raises(ValueError):
        StencilSpec("first", "y", 0.1)
    with pytest.raises(ValueError):
        StencilSpec("first", "t", 0.0)
    with pytest.raises(ValueError):
        StencilSpec("first", "t", 0.1, richardson_levels=5)


@settings(max_examples=25, deadline=None)
@given(k=st.floats(0.5, 4.0), x=st.floats(-2.0, 2.0))
def test_diff_matches_analytic_on_plane_waves(k, x):
    spec = StencilSpec("second", "x3", default_step("second", 1.0 / k), 2)
    got = diff(lambda v: np.exp(1j * k * v), x, spec)
    assert abs(got + k * k * np.exp(1j * k * x)) <= 1e-8 * k * k
