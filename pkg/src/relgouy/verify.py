"""Finite-difference residuals, normalization probes and the Schrodinger
correspondence.

All residuals are evaluated on closures ``field(t, x1, x2, x3) -> complex`` so
the same operators can be applied to beam modes and to plain waves.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .kgmodes import (
    Convention,
    FourEvent,
    RelativeEvent,
    beam_radius,
    envelope,
    envelope_grid,
    gouy_relativistic,
)
from .kinematics import BeamGeometry, BeamSpec, ModeIndex, ParticleKinematics, kinematics_for, make_kinematics
from .numerics import QuadratureSpec, StencilSpec, default_step, diff, integrate
from .srmodes import NrKinematics, envelope_nr, gouy_nonrelativistic, make_nr_kinematics

Field = Callable[[float, float, float, float], complex]
AXES = ("t", "x1", "x2", "x3")
RICHARDSON_LEVELS = 2
DEFAULT_CONVENTION = Convention.CANONICAL

KG_RESIDUAL_TOL = 1e-6
REDUCED_RESIDUAL_TOL = 1e-7
ADJUDICATION_RATIO = 1e3


@dataclass(frozen=True)
class ResidualReport:
    point: RelativeEvent
    raw: complex
    scaled: float
    step_used: tuple  # (t, x1, x2, x3) base steps


@dataclass(frozen=True)
class ConstraintSpec:
    u3: float
    form: str = "axial"

    def __post_init__(self):
        if self.form != "axial":
            raise ValueError(f"unsupported constraint form {self.form!r}")
        if not 0.0 < self.u3 < 1.0:
            raise ValueError(f"constraint velocity must satisfy 0 < u3 < c, got {self.u3!r}")

    def tau_for(self, xi3):
        return xi3 / self.u3


@dataclass(frozen=True)
class CorrespondenceReport:
    beta: float
    max_rel_envelope_dev: float
    sample_count: int


def _along(field, event, axis):
    i = AXES.index(axis)
    base = list(event)

    def f(v):
        p = list(base)
        p[i] = v
        return field(*p)

    return f, base[i]


def _second(field, event, axis, step):
    f, at = _along(field, event, axis)
    return diff(f, at, StencilSpec("second", axis, step, RICHARDSON_LEVELS))


def _first(field, event, axis, step):
    f, at = _along(field, event, axis)
    return diff(f, at, StencilSpec("first", axis, step, RICHARDSON_LEVELS))


ORIGIN = (0.0, 0.0, 0.0, 0.0)


def kg_operator(field: Field, mass: float, steps: Sequence[float], event: Sequence[float] = ORIGIN) -> complex:
    """(d_tt - d_11 - d_22 - d_33 + m^2) applied to ``field`` at ``event`` = (t, x1, x2, x3)."""
    ht, h1, h2, h3 = steps
    return (_second(field, event, "t", ht)
            - _second(field, event, "x1", h1)
            - _second(field, event, "x2", h2)
            - _second(field, event, "x3", h3)
            + mass * mass * field(*event))


def reduced_operator(field: Field, k3: float, omega: float, steps: Sequence[float],
                     event: Sequence[float] = ORIGIN) -> complex:
    """d_11 + d_22 + 2i (k3 d_3 + omega d_t) applied to an envelope."""
    ht, h1, h2, h3 = steps
    return (_second(field, event, "x1", h1)
            + _second(field, event, "x2", h2)
            + 2j * (k3 * _first(field, event, "x3", h3) + omega * _first(field, event, "t", ht)))


def schrodinger_operator(field: Field, mass: float, steps: Sequence[float], event: Sequence[float] = ORIGIN,
                         include_axial: bool = True) -> complex:
    """d_11 + d_22 [+ d_33] + 2i m d_t."""
    ht, h1, h2, h3 = steps
    out = _second(field, event, "x1", h1) + _second(field, event, "x2", h2)
    if include_axial:
        out = out + _second(field, event, "x3", h3)
    return out + 2j * mass * _first(field, event, "t", ht)


def _carrier(phase):
    return complex(math.cos(phase), math.sin(phase))


def kg_steps(k: ParticleKinematics, g: BeamGeometry):
    axial = min(g.zR / 10.0, 1.0 / k.omega)
    h_ax = default_step("second", axial, RICHARDSON_LEVELS)
    h_tr = default_step("second", g.w0, RICHARDSON_LEVELS)
    return (h_ax, h_tr, h_tr, h_ax)


def envelope_steps(g: BeamGeometry, axial_scale: float):
    h_tr = default_step("second", g.w0, RICHARDSON_LEVELS)
    h_ax = default_step("first", axial_scale / 10.0, RICHARDSON_LEVELS)
    return (h_ax, h_tr, h_tr, h_ax)


# The residual closures below take offsets (dt, dx1, dx2, dx3) from the
# evaluation event, so stencil nodes are exact and the large carrier phase at
# the event is a common factor of every node.

def kg_residual(mode: ModeIndex, k: ParticleKinematics, g: BeamGeometry, conv: Convention,
                point: RelativeEvent, focus: FourEvent = FourEvent()) -> ResidualReport:
    """Klein-Gordon residual of the full wavefunction, scaled by |psi| m0^2."""
    x = FourEvent(focus.t + point.tau, focus.x1 + point.xi1, focus.x2 + point.xi2, focus.x3 + point.xi3)
    centre = _carrier(k.k3 * x.x3 - k.omega * x.t)

    def psi(dt, d1, d2, d3):
        rel = RelativeEvent(point.xi1 + d1, point.xi2 + d2, point.xi3 + d3, point.tau + dt)
        return envelope(rel, mode, k, g, conv) * centre * _carrier(k.k3 * d3 - k.omega * dt)

    steps = kg_steps(k, g)
    raw = kg_operator(psi, k.m0, steps)
    return ResidualReport(point, raw, abs(raw) / (abs(psi(*ORIGIN)) * k.m0**2), steps)


def reduced_residual(mode: ModeIndex, k: ParticleKinematics, g: BeamGeometry, conv: Convention,
                     point: RelativeEvent, wavenumber_factor: float = 1.0) -> ResidualReport:
    """Residual of the envelope in the reduced (paraxial-analog) equation,
    scaled by |Phi| / w0^2. ``wavenumber_factor`` rescales k3 and omega in the
    operator only."""

    def phi(dt, d1, d2, d3):
        return envelope(RelativeEvent(point.xi1 + d1, point.xi2 + d2, point.xi3 + d3, point.tau + dt), mode, k, g, conv)

    steps = envelope_steps(g, g.zR)
    raw = reduced_operator(phi, wavenumber_factor * k.k3, wavenumber_factor * k.omega, steps)
    return ResidualReport(point, raw, abs(raw) * g.w0**2 / abs(phi(*ORIGIN)), steps)


def schrodinger_residual(mode: ModeIndex, nk: NrKinematics, g: BeamGeometry, point: RelativeEvent,
                         full: bool = False) -> ResidualReport:
    """Schrodinger residual.

    ``full=False`` applies the transverse operator to the envelope and scales
    by |Phi| / w0^2. ``full=True`` applies the 3-D operator to the
    wavefunction (focus at the origin) and scales by |Psi| max(1/w0^2, p3^2),
    the size of the largest cancelling term.
    """
    if full:
        centre = _carrier(nk.p3 * point.xi3 - nk.Es * point.tau)

        def field(dt, d1, d2, d3):
            local = _carrier(nk.p3 * d3 - nk.Es * dt)
            return envelope_nr(point.xi1 + d1, point.xi2 + d2, point.tau + dt, mode, nk, g) * centre * local

        ax = 1.0 / nk.p3 if nk.p3 > 0 else g.w0
        tm = min(nk.tR / 10.0, 1.0 / nk.Es) if nk.Es > 0 else nk.tR / 10.0
        steps = (default_step("first", tm, RICHARDSON_LEVELS), default_step("second", g.w0, RICHARDSON_LEVELS),
                 default_step("second", g.w0, RICHARDSON_LEVELS), default_step("second", ax, RICHARDSON_LEVELS))
        scale = max(1.0 / g.w0**2, nk.p3**2)
    else:
        def field(dt, d1, d2, d3):
            return envelope_nr(point.xi1 + d1, point.xi2 + d2, point.tau + dt, mode, nk, g)

        steps = envelope_steps(g, nk.tR)
        scale = 1.0 / g.w0**2
    raw = schrodinger_operator(field, nk.m0, steps, include_axial=full)
    return ResidualReport(point, raw, abs(raw) / (abs(field(*ORIGIN)) * scale), steps)


def adjudicate_convention(mode: ModeIndex, k: ParticleKinematics, g: BeamGeometry,
                          points: Sequence[RelativeEvent]) -> dict:
    """Compare the two envelope readings against the reduced equation.

    The winner is the convention whose worst residual sits at the stencil
    floor while the other stays O(1); ``None`` if neither or both do.
    """
    canon = [reduced_residual(mode, k, g, Convention.CANONICAL, p).scaled for p in points]
    printed = [reduced_residual(mode, k, g, Convention.AS_PRINTED, p).scaled for p in points]
    printed_2k = [reduced_residual(mode, k, g, Convention.AS_PRINTED, p, wavenumber_factor=2.0).scaled for p in points]
    ratios = [b / a if a > 0 else math.inf for a, b in zip(canon, printed)]
    canon_ok = max(canon) <= REDUCED_RESIDUAL_TOL
    printed_ok = max(printed) <= REDUCED_RESIDUAL_TOL
    winner = None
    if canon_ok and not printed_ok:
        winner = Convention.CANONICAL
    elif printed_ok and not canon_ok:
        winner = Convention.AS_PRINTED
    return {
        "canonical_max_scaled": max(canon),
        "as_printed_min_scaled": min(printed),
        "as_printed_max_scaled": max(printed),
        "min_ratio": min(ratios),
        "as_printed_with_2K_max_scaled": max(printed_2k),
        "winner": winner,
    }


def correspondence_check(mode: ModeIndex, spec: BeamSpec, samples: Sequence[tuple], gamma_one: bool = False
                         ) -> CorrespondenceReport:
    """Compare the Klein-Gordon envelope restricted to xi3 = u3 tau with the
    Schrodinger envelope at the same (xi1, xi2, tau).

    The delta constraint is applied by substitution, so s = (u3 + c) tau; the
    1/u3 Jacobian only rescales the norm and drops out of the relative
    deviation. ``gamma_one=True`` evaluates the relativistic side with the
    slow-particle substitution gamma = 1.
    """
    if not 0.0 < spec.beta <= 0.1:
        raise ValueError(f"correspondence needs 0 < beta <= 0.1, got {spec.beta!r}")
    constraint = ConstraintSpec(spec.beta)
    k = kinematics_for(spec.mass, spec.beta, gamma=1.0 if gamma_one else None)
    g = BeamGeometry.from_wavenumber(k.K)
    nk = make_nr_kinematics(spec)
    worst = 0.0
    for xi1, xi2, tau in samples:
        phi = envelope(RelativeEvent(xi1, xi2, constraint.u3 * tau, tau), mode, k, g, Convention.CANONICAL)
        phi_s = envelope_nr(xi1, xi2, tau, mode, nk, g)
        worst = max(worst, abs(phi - phi_s) / abs(phi_s))
    return CorrespondenceReport(beta=spec.beta, max_rel_envelope_dev=worst, sample_count=len(samples))


def gouy_gamma_relation(tau: float, mode: ModeIndex, spec: BeamSpec) -> tuple[float, float, float]:
    """Relativistic Gouy phase on the constraint, the Schrodinger Gouy phase,
    and the ratio of their arctan arguments (equal to 1/gamma)."""
    if tau == 0:
        raise ValueError("tau must be nonzero for an argument ratio")
    k, g = make_kinematics(spec)
    nk = make_nr_kinematics(spec)
    s = (spec.beta + 1.0) * tau
    return gouy_relativistic(s, mode, g), gouy_nonrelativistic(tau, mode, nk), (s / g.zR) / (tau / nk.tR)


def _transverse_box(mode: ModeIndex, width: float):
    half = width * (6.0 + math.sqrt(2.0 * max(mode.m, mode.n) + 1.0))
    return ((-half, half), (-half, half))


def transverse_norm(mode: ModeIndex, k: ParticleKinematics, g: BeamGeometry, s: float = 0.0,
                    conv: Convention = Convention.CANONICAL, rel_tol: float = 1e-12) -> float:
    """Quadrature of |Phi|^2 over the transverse plane at fixed s."""

    def density(x1, x2):
        return np.abs(envelope_grid(x1, x2, np.full_like(x1, s), mode, k, g, conv)) ** 2

    box = _transverse_box(mode, beam_radius(s, g, conv))
    value, _ = integrate(density, QuadratureSpec(box, rel_tol=rel_tol, abs_tol=0.0, max_subdivisions=20000))
    return value


def normalization_check(mode: ModeIndex, g: BeamGeometry) -> float:
    """Deviation from 1 of the transverse-slice norm at s = 0."""
    # Any kinematics with K = 2 zR / w0^2 is consistent with g.
    k = kinematics_for(2.0 * g.zR / g.w0**2, 0.0)
    return transverse_norm(mode, k, g, 0.0) - 1.0


def divergence_probe(mode: ModeIndex, spec: BeamSpec, axial_window: float) -> float:
    """Constrained 4-D norm restricted to |xi3| <= axial_window.

    The delta(xi3 - u3 tau) integral over tau leaves a 1/u3 Jacobian and
    tau = xi3/u3, i.e. s = xi3 (1 + 1/u3).
    """
    if not axial_window > 0:
        raise ValueError("axial window must be positive")
    constraint = ConstraintSpec(spec.beta)
    k, g = make_kinematics(spec)

    def slice_norm(xi3_nodes):
        return np.array([transverse_norm(mode, k, g, x + constraint.tau_for(x), rel_tol=1e-11) / constraint.u3
                         for x in np.atleast_1d(xi3_nodes)])

    value, _ = integrate(slice_norm, QuadratureSpec(((-axial_window, axial_window),), rel_tol=1e-9))
    return value
