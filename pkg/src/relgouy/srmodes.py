"""Paraxial Hermite-Gaussian solutions of the free Schrodinger equation.

Same closed form as the relativistic modes with the Bateman coordinate s
replaced by the time offset tau and the wavenumber K by m0/hbar, so the axial
Rayleigh time is tR = m0 w0^2 / (2 hbar).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .kgmodes import FourEvent, normalization_constant
from .kinematics import BeamGeometry, BeamSpec, ModeIndex


@dataclass(frozen=True)
class NrKinematics:
    m0: float
    u3: float
    tR: float

    def __post_init__(self):
        if not self.tR > 0:
            raise ValueError("Rayleigh time must be positive")

    @property
    def p3(self):
        return self.m0 * self.u3

    @property
    def Es(self):
        return self.p3 * self.p3 / (2.0 * self.m0)

    @classmethod
    def from_mass(cls, m0, u3, w0=1.0):
        return cls(m0=m0, u3=u3, tR=0.5 * m0 * w0 * w0)


def make_nr_kinematics(spec: BeamSpec) -> NrKinematics:
    return NrKinematics.from_mass(spec.mass, spec.beta)


def _scaled_time(tau, nk):
    # Shared by the width and the Gouy phase.
    return np.asarray(tau, dtype=float) / nk.tR


def beam_radius_nr(tau, nk: NrKinematics, g: BeamGeometry):
    arg = _scaled_time(tau, nk)
    out = g.w0 * np.sqrt(1.0 + arg * arg)
    return float(out) if out.ndim == 0 else out


def gouy_nonrelativistic(tau, mode: ModeIndex, nk: NrKinematics):
    out = mode.order * np.arctan(_scaled_time(tau, nk))
    return float(out) if out.ndim == 0 else out


def envelope_nr_grid(xi1, xi2, tau, mode: ModeIndex, nk: NrKinematics, g: BeamGeometry, amp=None):
    if amp is None:
        amp = normalization_constant(mode, g)
    return kernels.hg_field(xi1, xi2, tau, mode.m, mode.n, g.w0, amp, a=0.5 * nk.m0, z0=nk.tR, wscale=nk.tR)


def envelope_nr(xi1, xi2, tau, mode: ModeIndex, nk: NrKinematics, g: BeamGeometry) -> complex:
    val = envelope_nr_grid(np.array([xi1], dtype=float), np.array([xi2], dtype=float),
                           np.array([tau], dtype=float), mode, nk, g)
    return complex(val[0])


def carrier_phase_nr(x: FourEvent, nk: NrKinematics) -> float:
    return nk.p3 * x.x3 - nk.Es * x.t


def wavefunction_nr(x: FourEvent, focus: FourEvent, mode: ModeIndex, nk: NrKinematics, g: BeamGeometry) -> complex:
    rel = x - focus
    ph = carrier_phase_nr(x, nk)
    return envelope_nr(rel.xi1, rel.xi2, rel.tau, mode, nk, g) * complex(math.cos(ph), math.sin(ph))
