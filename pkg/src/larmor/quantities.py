"""Physical constants, particle presets and the SI -> natural unit bridge.

Everything downstream of this module works with ``mc^2 = 1`` and ``c = 1``:
energies are in units of the rest energy, momenta in units of ``mc`` and
frequencies in units of ``mc^2/hbar``.  Only this module knows about SI.

The registry is a small INI file::

    [constants]
    c = 299792458.0
    hbar = 1.054571817e-34
    nuclear_magneton = 5.0507837461e-27

    [particle:neutron]
    mass_kg = 1.67492749804e-27
    mdm_J_per_T = -9.6623651e-27
    edm_C_m = 0.0

The shipped copy lives in ``larmor/data/registry.ini``.  Set the
``LARMOR_REGISTRY`` environment variable (or pass a path) to use another.
"""
from __future__ import annotations

import configparser
import math
import os
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .errors import (
    MalformedRegistry,
    MasslessConversion,
    NonFiniteInput,
    SuperluminalVelocity,
    UnknownParticle,
)

REGISTRY_ENV = "LARMOR_REGISTRY"
PARTICLE_PREFIX = "particle:"


@dataclass(frozen=True)
class PhysicalConstants:
    c: float
    hbar: float
    nuclear_magneton: float
    version: str = ""

    def __post_init__(self):
        for name in ("c", "hbar", "nuclear_magneton"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0):
                raise MalformedRegistry(f"constant {name} must be finite and positive, got {value!r}")


@dataclass(frozen=True)
class ParticleSpec:
    """A neutral particle: rest mass (kg), magnetic (J/T) and electric (C m) dipole moments."""

    name: str
    mass: float
    mdm: float
    edm: float = 0.0

    def __post_init__(self):
        for attr in ("mass", "mdm", "edm"):
            if not math.isfinite(getattr(self, attr)):
                raise NonFiniteInput(f"particle {self.name!r}: {attr} is not finite")
        if self.mass < 0:
            raise MalformedRegistry(f"particle {self.name!r}: negative mass {self.mass!r}")


@dataclass(frozen=True)
class FieldPoint:
    """Static fields along the propagation axis: E in V/m, B in T."""

    e_field: float = 0.0
    b_field: float = 0.0

    def __post_init__(self):
        if not (math.isfinite(self.e_field) and math.isfinite(self.b_field)):
            raise NonFiniteInput(f"non-finite field values E={self.e_field!r}, B={self.b_field!r}")


@dataclass(frozen=True)
class NaturalParams:
    """Dimensionless Hamiltonian inputs.

    ``p_tilde`` is the momentum over ``mc``, ``pi_tilde`` the cross coupling
    ``c*(dB + mu*E/c^2)/(mc^2)``, ``delta_tilde`` the interaction energy
    ``(dE - mu*B)/(mc^2)``.  ``eta_tilde`` is derived.
    """

    p_tilde: float
    pi_tilde: float = 0.0
    delta_tilde: float = 0.0
    eta_tilde: float = field(init=False)

    def __post_init__(self):
        if not all(math.isfinite(x) for x in (self.p_tilde, self.pi_tilde, self.delta_tilde)):
            raise NonFiniteInput(
                f"non-finite natural parameters p={self.p_tilde!r}, pi={self.pi_tilde!r}, delta={self.delta_tilde!r}")
        object.__setattr__(self, "eta_tilde", math.sqrt(self.p_tilde**2 + self.pi_tilde**2))


@dataclass(frozen=True)
class Registry:
    constants: PhysicalConstants
    particles: dict
    path: str = ""

    def particle(self, name: str) -> ParticleSpec:
        try:
            return self.particles[name]
        except KeyError:
            known = ", ".join(sorted(self.particles)) or "none"
            raise UnknownParticle(f"unknown particle {name!r} (known: {known})") from None


def registry_path(path=None) -> Path:
    """Resolve the registry file: explicit path, then $LARMOR_REGISTRY, then the shipped file."""
    if path is not None:
        return Path(path)
    env = os.environ.get(REGISTRY_ENV)
    if env:
        return Path(env)
    return Path(str(resources.files("larmor") / "data" / "registry.ini"))


def _float(section, key, where):
    try:
        raw = section[key]
    except KeyError:
        raise MalformedRegistry(f"{where}: missing key {key!r}") from None
    try:
        value = float(raw)
    except ValueError:
        raise MalformedRegistry(f"{where}: {key} = {raw!r} is not a number") from None
    if not math.isfinite(value):
        raise MalformedRegistry(f"{where}: {key} is not finite")
    return value


def load_registry(path=None) -> Registry:
    path = registry_path(path)
    parser = configparser.ConfigParser(interpolation=None)
    parser.optionxform = str  # keys are case sensitive (mdm_J_per_T)
    try:
        with open(path, encoding="utf-8") as fh:
            parser.read_file(fh)
    except OSError as exc:
        raise MalformedRegistry(f"cannot read registry {path}: {exc}") from None
    except configparser.Error as exc:
        raise MalformedRegistry(f"cannot parse registry {path}: {exc}") from None

    if not parser.has_section("constants"):
        raise MalformedRegistry(f"{path}: missing [constants] section")
    sec = parser["constants"]
    constants = PhysicalConstants(
        c=_float(sec, "c", "[constants]"),
        hbar=_float(sec, "hbar", "[constants]"),
        nuclear_magneton=_float(sec, "nuclear_magneton", "[constants]"),
        version=sec.get("version", ""),
    )

    particles = {}
    for name in parser.sections():
        if not name.startswith(PARTICLE_PREFIX):
            continue
        pname = name[len(PARTICLE_PREFIX):].strip()
        where = f"[{name}]"
        sec = parser[name]
        mass = _float(sec, "mass_kg", where)
        if mass < 0:
            raise MalformedRegistry(f"{where}: negative mass {mass!r}")
        particles[pname] = ParticleSpec(
            name=pname,
            mass=mass,
            mdm=_float(sec, "mdm_J_per_T", where),
            edm=_float(sec, "edm_C_m", where) if "edm_C_m" in sec else 0.0,
        )
    return Registry(constants=constants, particles=particles, path=str(path))


def load_constants(path=None) -> PhysicalConstants:
    return load_registry(path).constants


def load_particle_preset(name: str, registry=None) -> ParticleSpec:
    """Look up a particle by name.  ``registry`` may be a loaded Registry or a path."""
    if not isinstance(registry, Registry):
        registry = load_registry(registry)
    return registry.particle(name)


def interaction_energy(particle: ParticleSpec, fields: FieldPoint) -> float:
    """delta = dE - mu*B in joules."""
    return particle.edm * fields.e_field - particle.mdm * fields.b_field


def cross_coupling(particle: ParticleSpec, fields: FieldPoint, constants: PhysicalConstants) -> float:
    """pi = dB + mu*E/c^2 in kg m/s (a momentum)."""
    return particle.edm * fields.b_field + particle.mdm * fields.e_field / constants.c**2


def to_natural(particle: ParticleSpec, fields: FieldPoint, momentum: float,
               constants: PhysicalConstants) -> NaturalParams:
    """Convert SI inputs (momentum in kg m/s) to :class:`NaturalParams`."""
    if not math.isfinite(momentum):
        raise NonFiniteInput(f"momentum {momentum!r} is not finite")
    if particle.mass == 0:
        raise MasslessConversion(
            f"particle {particle.name!r} is massless; use the SI entry points (spin_splitting_si)")
    mc = particle.mass * constants.c
    rest_energy = mc * constants.c
    return NaturalParams(
        p_tilde=momentum / mc,
        pi_tilde=constants.c * cross_coupling(particle, fields, constants) / rest_energy,
        delta_tilde=interaction_energy(particle, fields) / rest_energy,
    )


def rest_energy(particle: ParticleSpec, constants: PhysicalConstants) -> float:
    return particle.mass * constants.c**2


def momentum_of_velocity(particle: ParticleSpec, velocity: float, constants: PhysicalConstants) -> float:
    """Relativistic momentum m*gamma*v (kg m/s) for ``velocity`` given as a fraction of c."""
    if not abs(velocity) < 1:
        raise SuperluminalVelocity(f"|v| = {abs(velocity)!r} must be below 1 (fraction of c)")
    gamma = 1.0 / math.sqrt(1.0 - velocity * velocity)
    return particle.mass * gamma * velocity * constants.c
