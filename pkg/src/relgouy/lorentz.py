"""Lorentz boosts of events and beams, and numerical form-invariance checks.

Velocities are in units of c. A boost with velocity v describes an observer
moving with +v relative to the lab; the time component is q0 = c t.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .kgmodes import Convention, FourEvent, beam_radius, carrier_phase, gouy_relativistic, wavefunction
from .kinematics import BeamGeometry, ModeIndex, ParticleKinematics, dispersion_residual


@dataclass(frozen=True)
class Boost:
    v1: float = 0.0
    v2: float = 0.0
    v3: float = 0.0

    def __post_init__(self):
        if self.speed2 >= 1.0:
            raise ValueError(f"superluminal boost: |v|^2={self.speed2!r} must be < 1")

    @property
    def speed2(self):
        return self.v1 * self.v1 + self.v2 * self.v2 + self.v3 * self.v3

    @property
    def gamma(self):
        return 1.0 / math.sqrt(1.0 - self.speed2)

    def inverse(self):
        return Boost(-self.v1, -self.v2, -self.v3)


@dataclass(frozen=True)
class InvarianceReport:
    lab_value: complex
    boosted_value: complex
    abs_defect: float
    phase_defect: float
    width_defect: float
    gouy_defect: float


def boost_event(q: FourEvent, b: Boost) -> FourEvent:
    g = b.gamma
    vq = b.v1 * q.x1 + b.v2 * q.x2 + b.v3 * q.x3
    bracket = g / (1.0 + g) * vq - q.t
    return FourEvent(
        t=g * (q.t - vq),
        x1=q.x1 + g * b.v1 * bracket,
        x2=q.x2 + g * b.v2 * bracket,
        x3=q.x3 + g * b.v3 * bracket,
    )


def interval(q: FourEvent) -> float:
    """Minkowski interval (ct)^2 - |x|^2."""
    return q.t * q.t - (q.x1 * q.x1 + q.x2 * q.x2 + q.x3 * q.x3)


def doppler_factor(v3: float) -> float:
    if abs(v3) >= 1.0:
        raise ValueError(f"superluminal velocity: |v3|={abs(v3)!r} must be < 1")
    return math.sqrt((1.0 - v3) / (1.0 + v3))


def velocity_addition(u, v):
    """Collinear velocity of a frame moving at u seen from a frame moving at v."""
    return (u - v) / (1.0 - u * v)


def transform_beam(k: ParticleKinematics, g: BeamGeometry, v3: float) -> tuple[ParticleKinematics, BeamGeometry]:
    """Kinematics and geometry seen by an observer moving at v3 along the beam axis.

    (omega, k3) is boosted as a four-vector; the axial scale picks up the
    Doppler factor while the waist is frame independent.
    """
    d = doppler_factor(v3)
    gv = 1.0 / math.sqrt((1.0 - v3) * (1.0 + v3))
    k3 = gv * (k.k3 - v3 * k.omega)
    omega = gv * (k.omega - v3 * k.k3)
    boosted = ParticleKinematics(m0=k.m0, u3=k3 / omega, gamma=omega / k.m0, k3=k3, omega=omega)
    return boosted, BeamGeometry(w0=g.w0, zR=d * g.zR)


def invariance_check(x: FourEvent, focus: FourEvent, mode: ModeIndex, k: ParticleKinematics,
                     g: BeamGeometry, v3: float) -> InvarianceReport:
    b = Boost(v3=v3)
    kb, gb = transform_beam(k, g, v3)
    xb, fb = boost_event(x, b), boost_event(focus, b)
    lab = wavefunction(x, focus, mode, k, g, Convention.CANONICAL)
    boosted = wavefunction(xb, fb, mode, kb, gb, Convention.CANONICAL)
    s, sb = (x - focus).s, (xb - fb).s
    w, wb = beam_radius(s, g), beam_radius(sb, gb)
    return InvarianceReport(
        lab_value=lab,
        boosted_value=boosted,
        abs_defect=abs(boosted - lab) / abs(lab),
        phase_defect=abs(carrier_phase(xb, kb) - carrier_phase(x, k)),
        width_defect=abs(wb - w) / w,
        gouy_defect=abs(gouy_relativistic(sb, mode, gb) - gouy_relativistic(s, mode, g)),
    )


def boosted_mass_shell_defect(k: ParticleKinematics, v3: float) -> float:
    kb, _ = transform_beam(k, BeamGeometry(1.0, 1.0), v3)
    return dispersion_residual(kb)
