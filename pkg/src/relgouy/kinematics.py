"""Mass-shell kinematics, beam geometry and unit handling.

Internally everything is expressed in natural units hbar = c = 1 with the
beam waist as the unit of length (w0 = 1). A beam is then fixed by two
dimensionless numbers: beta = u3/c and epsilon = hbar/(m0 c w0), the waist in
reduced Compton wavelengths. In these units m0 = 1/epsilon.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .numerics import HERMITE_MAX_ORDER

HBAR_SI = 1.054571817e-34  # J s
C_SI = 299792458.0  # m / s


@dataclass(frozen=True)
class ModeIndex:
    m: int = 0
    n: int = 0

    def __post_init__(self):
        for name in ("m", "n"):
            v = getattr(self, name)
            if int(v) != v or v < 0:
                raise ValueError(f"mode index {name} must be a nonnegative integer, got {v!r}")
            if v > HERMITE_MAX_ORDER:
                raise ValueError(f"mode index {name}={v} exceeds the cap {HERMITE_MAX_ORDER}")

    @property
    def order(self) -> int:
        """The Gouy multiplier 1 + m + n."""
        return 1 + self.m + self.n


@dataclass(frozen=True)
class UnitSystem:
    """Conversion scales from internal units to SI.

    ``length_unit`` is the waist in meters. The internal time unit is then
    length_unit/c and the internal mass unit hbar/(c*length_unit).
    """

    hbar: float = HBAR_SI
    c: float = C_SI
    length_unit: float = 1.0

    def __post_init__(self):
        if not (self.hbar > 0 and self.c > 0 and self.length_unit > 0):
            raise ValueError("unit scales must be strictly positive")

    @property
    def time_unit(self):
        return self.length_unit / self.c

    @property
    def mass_unit(self):
        return self.hbar / (self.c * self.length_unit)

    @property
    def velocity_unit(self):
        return self.c


@dataclass(frozen=True)
class BeamSpec:
    beta: float
    epsilon: float
    mode: ModeIndex = field(default_factory=ModeIndex)
    units: UnitSystem = field(default_factory=UnitSystem)

    def __post_init__(self):
        if not math.isfinite(self.beta) or self.beta < 0:
            raise ValueError(f"beta must be finite and >= 0, got {self.beta!r}")
        if self.beta >= 1:
            raise ValueError(f"superluminal beam: beta={self.beta!r} must be < 1")
        if not (math.isfinite(self.epsilon) and self.epsilon > 0):
            raise ValueError(f"epsilon must be finite and > 0, got {self.epsilon!r}")

    @classmethod
    def from_physical(cls, mass, waist, velocity, mode=None, hbar=HBAR_SI, c=C_SI):
        """Build a spec from SI mass [kg], waist [m] and axial velocity [m/s]."""
        if mass <= 0 or waist <= 0:
            raise ValueError("mass and waist must be positive")
        units = UnitSystem(hbar=hbar, c=c, length_unit=waist)
        return cls(
            beta=velocity / c,
            epsilon=hbar / (mass * c * waist),
            mode=mode if mode is not None else ModeIndex(),
            units=units,
        )

    def to_physical(self):
        """Return (mass [kg], waist [m], velocity [m/s])."""
        u = self.units
        return self.mass * u.mass_unit, u.length_unit, self.beta * u.c

    @property
    def mass(self):
        """Rest mass in internal units (1/epsilon)."""
        return 1.0 / self.epsilon


@dataclass(frozen=True)
class ParticleKinematics:
    """Carrier parameters of the beam in internal units (hbar = c = 1)."""

    m0: float
    u3: float
    gamma: float
    k3: float
    omega: float

    @property
    def K(self):
        """Sum k3 + omega/c that sets the axial scale of the envelope."""
        return self.k3 + self.omega


@dataclass(frozen=True)
class BeamGeometry:
    w0: float
    zR: float

    def __post_init__(self):
        if not (self.w0 > 0 and self.zR > 0):
            raise ValueError(f"beam geometry needs w0 > 0 and zR > 0, got w0={self.w0!r}, zR={self.zR!r}")

    @classmethod
    def from_wavenumber(cls, K, w0=1.0):
        return cls(w0=w0, zR=0.5 * K * w0 * w0)


def lorentz_gamma(beta):
    if abs(beta) >= 1:
        raise ValueError(f"superluminal velocity: |beta|={abs(beta)!r} must be < 1")
    return 1.0 / math.sqrt((1.0 - beta) * (1.0 + beta))


def kinematics_for(m0, u3, gamma=None):
    """Mass-shell kinematics for mass ``m0`` moving at ``u3``.

    Passing ``gamma`` explicitly overrides the Lorentz factor; ``gamma=1`` gives
    the slow-particle substitution used when comparing with Schrodinger beams.
    """
    g = lorentz_gamma(u3) if gamma is None else float(gamma)
    if not g >= 1.0:
        raise ValueError(f"Lorentz factor must be >= 1, got {g!r}")
    return ParticleKinematics(m0=m0, u3=u3, gamma=g, k3=m0 * u3 * g, omega=m0 * g)


def make_kinematics(spec: BeamSpec) -> tuple[ParticleKinematics, BeamGeometry]:
    kin = kinematics_for(spec.mass, spec.beta)
    return kin, BeamGeometry.from_wavenumber(kin.K, w0=1.0)


def dispersion_residual(k: ParticleKinematics) -> float:
    """Scaled mass-shell defect (omega^2 - k3^2 - m0^2) / omega^2."""
    return ((k.omega - k.k3) * (k.omega + k.k3) - k.m0 * k.m0) / (k.omega * k.omega)
