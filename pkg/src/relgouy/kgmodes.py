"""Relativistic Hermite-Gaussian beam modes of the Klein-Gordon equation.

The envelope depends on the axial offset and the time offset from the focal
event only through ``s = xi3 + c*tau``. Two readings of the closed form are
supported:

``Convention.CANONICAL``
    exp[i K r^2 / (2 (s - i zR))], width w0 sqrt(1 + (s/zR)^2), Gouy
    (1+m+n) arctan(s/zR). This family annihilates the reduced operator
    d11 + d22 + 2i K d_s.
``Convention.AS_PRINTED``
    exp[i K r^2 / (s - 2 i b)], width w0 sqrt(1 + (s/2b)^2), Gouy
    (1+m+n) arctan(s/2b), with b = zR. This family solves the reduced
    equation for 2K instead of K and is kept for adjudication.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .kinematics import BeamGeometry, ModeIndex, ParticleKinematics


class Convention(str, enum.Enum):
    CANONICAL = "canonical"
    AS_PRINTED = "as_printed"


@dataclass(frozen=True)
class FourEvent:
    t: float = 0.0
    x1: float = 0.0
    x2: float = 0.0
    x3: float = 0.0

    def __post_init__(self):
        if not all(math.isfinite(v) for v in (self.t, self.x1, self.x2, self.x3)):
            raise ValueError(f"non-finite event {self!r}")

    def __sub__(self, other: "FourEvent") -> "RelativeEvent":
        return RelativeEvent(self.x1 - other.x1, self.x2 - other.x2, self.x3 - other.x3, self.t - other.t)


@dataclass(frozen=True)
class RelativeEvent:
    """Position of an event relative to the focal event."""

    xi1: float
    xi2: float
    xi3: float
    tau: float

    @property
    def s(self) -> float:
        return self.xi3 + self.tau

    @classmethod
    def on_axis(cls, s):
        return cls(0.0, 0.0, float(s), 0.0)


def _axial_scale(g: BeamGeometry, conv: Convention) -> float:
    return g.zR if Convention(conv) is Convention.CANONICAL else 2.0 * g.zR


def beam_radius(s, g: BeamGeometry, conv: Convention = Convention.CANONICAL):
    arg = np.asarray(s, dtype=float) / _axial_scale(g, conv)
    out = g.w0 * np.sqrt(1.0 + arg * arg)
    return float(out) if out.ndim == 0 else out


def gouy_relativistic(s, mode: ModeIndex, g: BeamGeometry, conv: Convention = Convention.CANONICAL):
    out = mode.order * np.arctan(np.asarray(s, dtype=float) / _axial_scale(g, conv))
    return float(out) if out.ndim == 0 else out


def normalization_constant(mode: ModeIndex, g: BeamGeometry) -> float:
    """Constant giving unit transverse-slice norm, |Phi|^2 integrated over xi1, xi2."""
    return 1.0 / math.sqrt(math.pi * 2.0 ** (mode.m + mode.n - 1) * math.factorial(mode.m) * math.factorial(mode.n) * g.w0**2)


def _field_params(k: ParticleKinematics, g: BeamGeometry, conv: Convention):
    if Convention(conv) is Convention.CANONICAL:
        return dict(a=0.5 * k.K, z0=g.zR, wscale=g.zR)
    return dict(a=k.K, z0=2.0 * g.zR, wscale=2.0 * g.zR)


def envelope_grid(xi1, xi2, s, mode: ModeIndex, k: ParticleKinematics, g: BeamGeometry,
                  conv: Convention = Convention.CANONICAL, amp=None):
    """Vectorized envelope on broadcastable arrays of xi1, xi2 and s."""
    if amp is None:
        amp = normalization_constant(mode, g)
    return kernels.hg_field(xi1, xi2, s, mode.m, mode.n, g.w0, amp, **_field_params(k, g, conv))


def envelope(ev: RelativeEvent, mode: ModeIndex, k: ParticleKinematics, g: BeamGeometry,
             conv: Convention = Convention.CANONICAL) -> complex:
    val = envelope_grid(np.array([ev.xi1]), np.array([ev.xi2]), np.array([ev.s]), mode, k, g, conv)
    return complex(val[0])


def carrier_phase(x: FourEvent, k: ParticleKinematics) -> float:
    return k.k3 * x.x3 - k.omega * x.t


def wavefunction(x: FourEvent, focus: FourEvent, mode: ModeIndex, k: ParticleKinematics,
                 g: BeamGeometry, conv: Convention = Convention.CANONICAL) -> complex:
    ph = carrier_phase(x, k)
    return envelope(x - focus, mode, k, g, conv) * complex(math.cos(ph), math.sin(ph))
