"""Exact relativistic Hermite-Gaussian matter-wave beams: evaluation,
Lorentz form-invariance checks, Schrodinger correspondence and
finite-difference certification."""

from ._accel import backend_name
from .kgmodes import (
    Convention,
    FourEvent,
    RelativeEvent,
    beam_radius,
    envelope,
    envelope_grid,
    gouy_relativistic,
    normalization_constant,
    wavefunction,
)
from .kinematics import (
    BeamGeometry,
    BeamSpec,
    ModeIndex,
    ParticleKinematics,
    UnitSystem,
    dispersion_residual,
    make_kinematics,
)
from .lorentz import Boost, InvarianceReport, boost_event, doppler_factor, invariance_check, transform_beam
from .numerics import QuadratureSpec, StencilSpec, diff, hermite, integrate
from .srmodes import NrKinematics, beam_radius_nr, envelope_nr, gouy_nonrelativistic, wavefunction_nr

__version__ = "0.1.0"
