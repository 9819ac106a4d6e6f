"""Relativistic spin splitting and Larmor precession of neutral dipole particles."""

__version__ = "0.1.0"

from .quantities import (  # noqa: E402
    FieldPoint,
    NaturalParams,
    ParticleSpec,
    PhysicalConstants,
    load_constants,
    load_particle_preset,
    load_registry,
    to_natural,
)
from .spectrum import (  # noqa: E402
    doppler_reference,
    eigenvalues_analytic,
    eta_of_velocity,
    kinematics_of,
    larmor_redshift,
    relativistic_limits,
    spin_splitting,
    spin_splitting_si,
    splitting_at_rest,
    splitting_derivative,
    splitting_highspeed,
    splitting_lowspeed,
    splitting_nonrel,
)
from .dirac import build_hamiltonian, hermiticity_defect, standard_basis  # noqa: E402
from .oracle import classify_spin, diagonalize, splitting_numeric  # noqa: E402
