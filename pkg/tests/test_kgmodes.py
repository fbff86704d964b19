import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from relgouy.kgmodes import (
    Convention,
    FourEvent,
    RelativeEvent,
    beam_radius,
    envelope,
    gouy_relativistic,
    normalization_constant,
    wavefunction,
)
from relgouy.kinematics import BeamGeometry, BeamSpec, ModeIndex, make_kinematics
from relgouy.numerics import fixed_gauss_legendre
from relgouy.rng import Lcg64
from relgouy.verify import transverse_norm


def literal_envelope(ev, mode, k, g, printed=False):
    """Independent re-evaluation of the closed forms with cmath."""
    s = ev.xi3 + ev.tau
    C = normalization_constant(mode, g)
    if printed:
        b = 0.5 * k.K * g.w0**2
        w = g.w0 * math.sqrt(1 + (s / (2 * b)) ** 2)
        gouy = (1 + mode.m + mode.n) * math.atan(s / (2 * b))
        expo = 1j * k.K * (ev.xi1**2 + ev.xi2**2) / (s - 2j * b)
    else:
        w = g.w0 * math.sqrt(1 + (s / g.zR) ** 2)
        gouy = (1 + mode.m + mode.n) * math.atan(s / g.zR)
        expo = 1j * k.K * (ev.xi1**2 + ev.xi2**2) / (2 * (s - 1j * g.zR))
    hm = np.polynomial.hermite.hermval(math.sqrt(2) * ev.xi1 / w, [0] * mode.m + [1])
    hn = np.polynomial.hermite.hermval(math.sqrt(2) * ev.xi2 / w, [0] * mode.n + [1])
    return C * g.w0 / w * hm * hn * cmath.exp(expo - 1j * gouy)


def _beam():
    return make_kinematics(BeamSpec(0.5, 0.05))


def random_events(seed, count, g):
    gen = Lcg64(seed)
    return [RelativeEvent(gen.uniform(-2, 2), gen.uniform(-2, 2), gen.uniform(-2, 2) * g.zR, gen.uniform(-2, 2) * g.zR)
            for _ in range(count)]


def test_beam_radius_examples(beam):
    _, g = beam
    assert beam_radius(0.0, g) == g.w0
    assert beam_radius(g.zR, g) == pytest.approx(g.w0 * math.sqrt(2), rel=1e-15)
    assert beam_radius(-1.7 * g.zR, g) == beam_radius(1.7 * g.zR, g)
    # The printed reading reaches sqrt(2) w0 at s = 2b.
    assert beam_radius(2 * g.zR, g, Convention.AS_PRINTED) == pytest.approx(g.w0 * math.sqrt(2), rel=1e-15)


def test_gouy_examples(beam):
    _, g = beam
    assert gouy_relativistic(0.0, ModeIndex(), g) == 0.0
    assert gouy_relativistic(g.zR, ModeIndex(), g) == pytest.approx(math.pi / 4, rel=1e-15)
    s = np.linspace(-5, 5, 21) * g.zR
    np.testing.assert_allclose(gouy_relativistic(s, ModeIndex(1, 2), g), 4 * gouy_relativistic(s, ModeIndex(), g),
                               rtol=1e-15)
    np.testing.assert_array_equal(gouy_relativistic(-s, ModeIndex(2, 0), g), -gouy_relativistic(s, ModeIndex(2, 0), g))
    assert np.all(np.abs(gouy_relativistic(1e9 * s, ModeIndex(2, 0), g)) < 3 * math.pi / 2)


def test_envelope_at_focus_is_normalization(beam):
    k, g = beam
    assert envelope(RelativeEvent(0, 0, 0, 0), ModeIndex(), k, g) == normalization_constant(ModeIndex(), g)


def test_envelope_hermite_parity(beam):
    k, g = beam
    ev = RelativeEvent(0.7, -0.4, 3.0, 5.0)
    flipped = RelativeEvent(-0.7, -0.4, 3.0, 5.0)
    assert envelope(flipped, ModeIndex(1, 0), k, g) == -envelope(ev, ModeIndex(1, 0), k, g)
    assert envelope(flipped, ModeIndex(0, 3), k, g) == envelope(ev, ModeIndex(0, 3), k, g)


@pytest.mark.parametrize("mode", [ModeIndex(0, 0), ModeIndex(1, 0), ModeIndex(2, 3), ModeIndex(5, 1)])
@pytest.mark.parametrize("conv", list(Convention))
def test_envelope_matches_literal_closed_form(beam, mode, conv):
    k, g = beam
    for ev in random_events(11, 10, g):
        got = envelope(ev, mode, k, g, conv)
        ref = literal_envelope(ev, mode, k, g, printed=conv is Convention.AS_PRINTED)
        assert abs(got - ref) <= 1e-12 * abs(ref) + 1e-300


def test_modulus_is_gaussian(beam):
    k, g = beam
    C = normalization_constant(ModeIndex(), g)
    for ev in random_events(3, 25, g):
        ev = RelativeEvent(ev.xi1, 0.0, ev.xi3, ev.tau)
        w = beam_radius(ev.s, g)
        expected = C * g.w0 / w * math.exp(-ev.xi1**2 / w**2)
        assert abs(envelope(ev, ModeIndex(), k, g)) == pytest.approx(expected, rel=1e-12)


def test_gaussian_special_case_as_printed(beam):
    """Mode (0,0) as printed equals C b/(b + i s/2) exp[iK r^2/(s - 2ib)]."""
    k, g = beam
    b = g.zR
    C = normalization_constant(ModeIndex(), g)
    for ev in random_events(5, 10, g):
        s = ev.s
        ref = C * b / (b + 0.5j * s) * cmath.exp(1j * k.K * (ev.xi1**2 + ev.xi2**2) / (s - 2j * b))
        got = envelope(ev, ModeIndex(), k, g, Convention.AS_PRINTED)
        assert abs(got - ref) <= 1e-13 * abs(ref)


@settings(max_examples=50, deadline=None)
@given(s=st.floats(-60, 60), xi3=st.floats(-100, 100), dt=st.floats(-50, 50))
def test_envelope_depends_only_on_s(s, xi3, dt):
    k, g = _beam()
    a = RelativeEvent(0.3, -0.8, xi3, s - xi3)
    b = RelativeEvent(0.3, -0.8, xi3 + dt, a.s - (xi3 + dt))
    if a.s == b.s:
        assert envelope(a, ModeIndex(2, 1), k, g) == envelope(b, ModeIndex(2, 1), k, g)


def test_wavefunction_focus_and_modulus(beam):
    k, g = beam
    assert wavefunction(FourEvent(), FourEvent(), ModeIndex(), k, g) == pytest.approx(
        normalization_constant(ModeIndex(), g), rel=1e-15)
    x, focus = FourEvent(3.0, 0.4, 0.2, -1.0), FourEvent(1.0, 0.1, 0.0, 2.0)
    shifted_x, shifted_f = FourEvent(3.0 + 17.5, 0.4, 0.2, -1.0), FourEvent(1.0 + 17.5, 0.1, 0.0, 2.0)
    a = wavefunction(x, focus, ModeIndex(1, 1), k, g)
    b = wavefunction(shifted_x, shifted_f, ModeIndex(1, 1), k, g)
    assert abs(a) == pytest.approx(abs(b), rel=1e-12)
    assert abs(a) == pytest.approx(abs(envelope(x - focus, ModeIndex(1, 1), k, g)), rel=1e-15)


def test_wavefunction_half_wavelength_phase(beam):
    k, g = beam
    half = math.pi / k.k3
    p0 = wavefunction(FourEvent(0, 0.3, 0.1, 0.0), FourEvent(0, 0, 0, -1.0), ModeIndex(), k, g)
    p1 = wavefunction(FourEvent(0, 0.3, 0.1, half), FourEvent(0, 0, 0, half - 1.0), ModeIndex(), k, g)
    # Same relative event, carrier advanced by k3 * pi / k3.
    assert cmath.phase(p1 / p0) == pytest.approx(math.pi, abs=1e-12) or \
        cmath.phase(p1 / p0) == pytest.approx(-math.pi, abs=1e-12)


def test_normalization_constant_examples():
    g = BeamGeometry(w0=1.0, zR=4.0)
    assert normalization_constant(ModeIndex(), g) == pytest.approx(math.sqrt(2 / math.pi), rel=1e-15)
    g2 = BeamGeometry(w0=2.0, zR=4.0)
    for mode in (ModeIndex(), ModeIndex(3, 1)):
        assert normalization_constant(mode, g2) == pytest.approx(normalization_constant(mode, g) / 2, rel=1e-15)


@pytest.mark.parametrize("mode", [ModeIndex(0, 0), ModeIndex(1, 0), ModeIndex(2, 2)])
def test_normalization_constant_by_fixed_rule_oracle(mode):
    """|Phi|^2 at s = 0 with unit amplitude, integrated by a fixed Gauss-Legendre rule."""
    w0 = 1.0

    def density(x, y):
        hm = np.polynomial.hermite.hermval(math.sqrt(2) * x / w0, [0] * mode.m + [1])
        hn = np.polynomial.hermite.hermval(math.sqrt(2) * y / w0, [0] * mode.n + [1])
        return (hm * hn) ** 2 * np.exp(-2 * (x * x + y * y) / w0**2)

    I = fixed_gauss_legendre(density, ((-9, 9), (-9, 9)), nodes=150)
    assert normalization_constant(mode, BeamGeometry(w0, 1.0)) == pytest.approx(1 / math.sqrt(I), rel=1e-12)


@pytest.mark.parametrize("mode", [ModeIndex(0, 0), ModeIndex(2, 1)])
def test_transverse_norm_conserved(beam, mode):
    k, g = beam
    for s in (0.0, g.zR, -g.zR, 3 * g.zR, -3 * g.zR):
        assert transverse_norm(mode, k, g, s) == pytest.approx(1.0, rel=1e-8)


def test_gouy_extraction_on_axis(beam):
    k, g = beam
    for s in np.linspace(-4, 4, 9) * g.zR:
        val = envelope(RelativeEvent.on_axis(s), ModeIndex(), k, g)
        assert cmath.phase(val) == pytest.approx(-gouy_relativistic(s, ModeIndex(), g), abs=1e-12)
