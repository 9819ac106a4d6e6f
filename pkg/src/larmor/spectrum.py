"""Closed-form spectrum and spin splitting.

Units: energies in mc^2, momenta in mc, frequencies in mc^2/hbar, velocities
as fractions of c.  ``eta`` is the kinetic scale sqrt(p^2 + pi^2) and
``delta`` the interaction energy dE - mu*B, both dimensionless.

The four levels are

    E(+/-, up)   = +/- sqrt(eta^2 + (1 + delta)^2)
    E(+/-, down) = +/- sqrt(eta^2 + (1 - delta)^2)

and the spin splitting is E(+, up) - E(+, down).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import (
    NonFiniteInput,
    NonPositiveMass,
    OutsideExpansionDomain,
    SingularExpansion,
    SingularPoint,
    SuperluminalVelocity,
)
from .quantities import PhysicalConstants

LOWSPEED_GUARD = 0.1
HIGHSPEED_GUARD = 10.0


def _check_finite(**values):
    for name, value in values.items():
        if not math.isfinite(value):
            raise NonFiniteInput(f"{name} = {value!r} is not finite")


def _check_eta(eta):
    _check_finite(eta=eta)
    if eta < 0:
        raise ValueError(f"eta must be non-negative, got {eta!r}")


@dataclass(frozen=True)
class SpectrumResult:
    e_plus_up: float
    e_plus_down: float
    e_minus_up: float
    e_minus_down: float
    splitting: float

    def levels(self):
        """(branch, spin, energy) tuples in the order +up, +down, -up, -down."""
        return [
            ("+", "up", self.e_plus_up),
            ("+", "down", self.e_plus_down),
            ("-", "up", self.e_minus_up),
            ("-", "down", self.e_minus_down),
        ]

    def sorted_energies(self):
        return sorted([self.e_plus_up, self.e_plus_down, self.e_minus_up, self.e_minus_down])


@dataclass(frozen=True)
class Kinematics:
    velocity: float
    gamma: float
    p_tilde: float


@dataclass(frozen=True)
class RedShiftResult:
    ratio: float
    shift: float


@dataclass(frozen=True)
class LimitBundle:
    """Upper limits on splitting and Larmor frequency.

    ``max_splitting`` = 2mc^2, ``max_larmor`` = 2mc^2/hbar and
    ``min_wavelength`` = c/max_larmor, which is half of
    ``compton_wavelength`` = hbar/(mc).
    """

    max_splitting: float
    max_larmor: float
    min_wavelength: float
    compton_wavelength: float


def _branch_energies(eta, delta):
    up = math.sqrt(eta * eta + (1.0 + delta) ** 2)
    down = math.sqrt(eta * eta + (1.0 - delta) ** 2)
    return up, down


def eigenvalues_analytic(eta_tilde: float, delta_tilde: float) -> SpectrumResult:
    _check_eta(eta_tilde)
    _check_finite(delta=delta_tilde)
    up, down = _branch_energies(eta_tilde, delta_tilde)
    return SpectrumResult(
        e_plus_up=up,
        e_plus_down=down,
        e_minus_up=-up,
        e_minus_down=-down,
        splitting=spin_splitting(eta_tilde, delta_tilde),
    )


def _splitting_naive(eta, delta):
    up, down = _branch_energies(eta, delta)
    return up - down


def _splitting_rationalised(eta, delta):
    up, down = _branch_energies(eta, delta)
    return 4.0 * delta / (up + down)


def spin_splitting(eta_tilde: float, delta_tilde: float) -> float:
    """E(+, up) - E(+, down).  Odd in delta, bounded by 2 in magnitude."""
    _check_eta(eta_tilde)
    _check_finite(delta=delta_tilde)
    if eta_tilde == 0.0:
        # |1 + delta| - |1 - delta| without the rounding of 1 +/- delta
        return splitting_at_rest(delta_tilde)
    # E_up - E_down == 4*delta/(E_up + E_down); the difference form cancels
    # catastrophically at large eta and at small delta
    return _splitting_rationalised(eta_tilde, delta_tilde)


def spin_splitting_si(cp: float, cpi: float, delta: float, rest_energy: float) -> float:
    """Spin splitting in joules from cp, c*pi, delta and mc^2 (all joules).

    Works for ``rest_energy == 0``, where the splitting vanishes identically.
    """
    _check_finite(cp=cp, cpi=cpi, delta=delta, rest_energy=rest_energy)
    if rest_energy < 0:
        raise NonPositiveMass(f"rest energy must be >= 0, got {rest_energy!r}")
    if rest_energy == 0:
        # sqrt(eta^2 + delta^2) - sqrt(eta^2 + (-delta)^2) is zero exactly
        return 0.0
    eta = math.hypot(cp, cpi)
    up = math.hypot(eta, rest_energy + delta)
    down = math.hypot(eta, rest_energy - delta)
    return 4.0 * rest_energy * delta / (up + down)


def splitting_nonrel(d: float, mu: float, e_field: float, b_field: float) -> float:
    """Nonrelativistic splitting 2(dE - mu*B) in joules."""
    return 2.0 * (d * e_field - mu * b_field)


def splitting_derivative(eta_tilde: float, delta_tilde: float) -> float:
    """d(splitting)/d(eta) = -eta * splitting / (E(+, up) * E(+, down))."""
    _check_eta(eta_tilde)
    _check_finite(delta=delta_tilde)
    up, down = _branch_energies(eta_tilde, delta_tilde)
    denom = up * down
    if denom == 0.0:
        raise SingularPoint(
            f"derivative undefined at eta={eta_tilde!r}, delta={delta_tilde!r} (zero-energy level)")
    return -eta_tilde / denom * spin_splitting(eta_tilde, delta_tilde)


def splitting_at_rest(delta_tilde: float) -> float:
    """Splitting at eta = 0: 2*delta below the rest energy, +/-2 at and above it."""
    _check_finite(delta=delta_tilde)
    if abs(delta_tilde) >= 1.0:
        return math.copysign(2.0, delta_tilde)
    return 2.0 * delta_tilde


def lowspeed_applicable(eta_tilde: float, delta_tilde: float) -> bool:
    gap = 1.0 - abs(delta_tilde)
    return gap != 0.0 and eta_tilde**2 < LOWSPEED_GUARD * gap * gap


def splitting_lowspeed(eta_tilde: float, delta_tilde: float) -> float:
    """Quadratic small-eta expansion around the rest-frame splitting."""
    _check_eta(eta_tilde)
    _check_finite(delta=delta_tilde)
    denom = abs(1.0 - delta_tilde * delta_tilde)
    if denom == 0.0:
        raise SingularExpansion(f"low-speed expansion is singular at |delta| = 1 (delta={delta_tilde!r})")
    if not lowspeed_applicable(eta_tilde, delta_tilde):
        raise OutsideExpansionDomain(
            f"eta={eta_tilde!r} violates eta^2 < {LOWSPEED_GUARD}*(1-|delta|)^2 at delta={delta_tilde!r}")
    rest = splitting_at_rest(delta_tilde)
    return rest - rest / (2.0 * denom) * eta_tilde**2


def highspeed_applicable(eta_tilde: float, delta_tilde: float) -> bool:
    return eta_tilde > HIGHSPEED_GUARD * max(1.0, abs(delta_tilde))


def splitting_highspeed(eta_tilde: float, delta_tilde: float) -> float:
    """Leading large-eta behaviour 2*delta/eta."""
    _check_eta(eta_tilde)
    _check_finite(delta=delta_tilde)
    if not highspeed_applicable(eta_tilde, delta_tilde):
        raise OutsideExpansionDomain(
            f"eta={eta_tilde!r} violates eta > {HIGHSPEED_GUARD}*max(1, |delta|) at delta={delta_tilde!r}")
    return 2.0 * delta_tilde / eta_tilde


def relativistic_limits(mass: float, constants: PhysicalConstants) -> LimitBundle:
    if not (math.isfinite(mass) and mass > 0):
        raise NonPositiveMass(f"mass must be positive, got {mass!r}")
    c, hbar = constants.c, constants.hbar
    max_splitting = 2.0 * mass * c**2
    max_larmor = max_splitting / hbar
    return LimitBundle(
        max_splitting=max_splitting,
        max_larmor=max_larmor,
        min_wavelength=c / max_larmor,
        compton_wavelength=hbar / (mass * c),
    )


def natural_limits() -> LimitBundle:
    return LimitBundle(max_splitting=2.0, max_larmor=2.0, min_wavelength=0.5, compton_wavelength=1.0)


def _check_velocity(velocity):
    _check_finite(velocity=velocity)
    if not abs(velocity) < 1.0:
        raise SuperluminalVelocity(f"|v| = {abs(velocity)!r} must be below 1 (fraction of c)")


def kinematics_of(velocity: float) -> Kinematics:
    _check_velocity(velocity)
    gamma = 1.0 / math.sqrt(1.0 - velocity * velocity)
    return Kinematics(velocity=velocity, gamma=gamma, p_tilde=gamma * velocity)


def eta_of_velocity(k: Kinematics, pi_tilde: float = 0.0, exact: bool = True) -> float:
    """sqrt(p^2 + pi^2), or just |p| when ``exact`` is False (eta ~ cp)."""
    _check_finite(pi=pi_tilde)
    if not exact:
        return abs(k.p_tilde)
    return math.sqrt(k.p_tilde**2 + pi_tilde**2)


def larmor_redshift(velocity: float, delta_tilde: float) -> RedShiftResult:
    """omega(v)/omega_0 from the low-speed expansion with eta = gamma*v."""
    _check_velocity(velocity)
    _check_finite(delta=delta_tilde)
    denom = abs(1.0 - delta_tilde * delta_tilde)
    if denom == 0.0:
        raise SingularExpansion(f"red shift is singular at |delta| = 1 (delta={delta_tilde!r})")
    eta = kinematics_of(velocity).p_tilde
    if not lowspeed_applicable(abs(eta), delta_tilde):
        raise OutsideExpansionDomain(
            f"v={velocity!r} gives eta={abs(eta)!r} outside the low-speed domain at delta={delta_tilde!r}")
    ratio = 1.0 - eta * eta / (2.0 * denom)
    return RedShiftResult(ratio=ratio, shift=ratio - 1.0)


def doppler_reference(velocity: float) -> tuple:
    """(nonrelativistic, relativistic) Doppler ratios 1 - v and gamma*(1 - v) for a receding source."""
    _check_velocity(velocity)
    if velocity < 0:
        raise ValueError(f"velocity must be >= 0, got {velocity!r}")
    gamma = 1.0 / math.sqrt(1.0 - velocity * velocity)
    return 1.0 - velocity, gamma * (1.0 - velocity)
