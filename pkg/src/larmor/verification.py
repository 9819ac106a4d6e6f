"""Self-checks run by ``larmor verify``.

Each check returns a :class:`Check` with the worst observed metric and the
threshold it was held to.  Random samples come from
``numpy.random.default_rng(seed)`` (PCG64), so a seed fully determines the
sample set and therefore the printed summary.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import spectrum
from .dirac import build_hamiltonian
from .oracle import diagonalize_many, splitting_numeric
from .quantities import NaturalParams
from .sweep import Grid, sweep_velocity

DEFAULT_SEED = 42
DEFAULT_SAMPLES = 10_000
LABEL_SAMPLES = 500


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    metric: float
    threshold: float


def log_uniform_signed(rng, n, lo=1e-3, hi=1e3):
    """Magnitudes log-uniform in [lo, hi] with random signs."""
    mags = 10.0 ** rng.uniform(math.log10(lo), math.log10(hi), n)
    return np.where(rng.random(n) < 0.5, -1.0, 1.0) * mags


def sample_params(n, seed=DEFAULT_SEED):
    rng = np.random.default_rng(seed)
    return log_uniform_signed(rng, n), log_uniform_signed(rng, n), log_uniform_signed(rng, n)


def oracle_eigenvalue_error(p, pi, delta):
    """Max relative deviation between sorted oracle and closed-form eigenvalues."""
    hams = np.array([build_hamiltonian(NaturalParams(*x)) for x in zip(p, pi, delta)])
    numeric, _ = diagonalize_many(hams)
    worst = 0.0
    for row, x in zip(numeric, zip(p, pi, delta)):
        params = NaturalParams(*x)
        exact = spectrum.eigenvalues_analytic(params.eta_tilde, params.delta_tilde).sorted_energies()
        worst = max(worst, float(np.max(np.abs(row - exact) / np.abs(exact))))
    return worst


def check_oracle(p, pi, delta) -> Check:
    err = oracle_eigenvalue_error(p, pi, delta)
    return Check("oracle-agreement", bool(err < 1e-10), err, 1e-10)


def check_labels(p, pi, delta) -> Check:
    worst = 0.0
    for x in list(zip(p, pi, np.abs(delta)))[:LABEL_SAMPLES]:
        params = NaturalParams(*x)
        num = splitting_numeric(params)
        res = spectrum.eigenvalues_analytic(params.eta_tilde, params.delta_tilde)
        # eigenvalue accuracy is relative to the matrix norm, not absolute
        err = abs(num - res.splitting) / (1.0 + res.e_plus_up)
        worst = max(worst, err if num >= 0 else math.inf)
    return Check("label-consistency", bool(worst < 1e-12), worst, 1e-12)


def check_bound(p, pi, delta) -> Check:
    """|splitting| <= 2 everywhere, equal to 2 only on eta = 0, |delta| >= 1."""
    eta = np.sqrt(p**2 + pi**2)
    worst_excess = -math.inf
    equality_violation = 0.0
    for e, d in zip(eta, delta):
        s = abs(spectrum.spin_splitting(float(e), float(d)))
        worst_excess = max(worst_excess, s - 2.0)
        if 2.0 - s <= 1e-12:
            equality_violation = max(equality_violation, 1.0)
    for d in Grid(0.0, 1e3, 10_001).points():
        s = abs(spectrum.spin_splitting(0.0, d))
        worst_excess = max(worst_excess, s - 2.0)
        on_plateau = abs(d) >= 1.0
        if on_plateau != (abs(s - 2.0) <= 1e-12):
            equality_violation = max(equality_violation, 1.0)
    ok = bool(worst_excess <= 1e-12 and equality_violation == 0.0)
    return Check("upper-bound", ok, max(worst_excess, 0.0) + equality_violation, 1e-12)


def check_monotone(seed=DEFAULT_SEED, n_points=1000) -> Check:
    """Strict decrease along velocity, and the derivative against finite differences."""
    table = sweep_velocity([0.3, 0.5, 0.9], Grid(0.0, 0.99, 61))
    worst_step = -math.inf
    for a, b in zip(table.rows, table.rows[1:]):
        if a.series_label == b.series_label:
            worst_step = max(worst_step, b.splitting - a.splitting)
    rng = np.random.default_rng(seed + 1)
    etas = rng.uniform(0.1, 10.0, n_points)
    deltas = rng.uniform(0.05, 3.0, n_points)
    h = 1e-6
    worst_rel = 0.0
    for e, d in zip(etas, deltas):
        e, d = float(e), float(d)
        fd = (spectrum.spin_splitting(e + h, d) - spectrum.spin_splitting(e - h, d)) / (2 * h)
        an = spectrum.splitting_derivative(e, d)
        worst_rel = max(worst_rel, abs(fd - an) / abs(an))
    ok = bool(worst_step < -1e-12 and worst_rel < 1e-6)
    return Check("motional-narrowing", ok, worst_rel, 1e-6)


def lowspeed_error(eta, delta):
    return abs(spectrum.splitting_lowspeed(eta, delta) - spectrum.spin_splitting(eta, delta))


def highspeed_error(eta, delta):
    return abs(spectrum.splitting_highspeed(eta, delta) - spectrum.spin_splitting(eta, delta))


def check_expansions(delta=0.5) -> Check:
    # halving eta should cut the quartic remainder by ~16; doubling cuts the cubic one by ~8
    low = [lowspeed_error(e, delta) / lowspeed_error(e / 2, delta) for e in (0.1, 0.01)]
    high = [highspeed_error(2 * e, delta) / highspeed_error(e, delta) for e in (1e2, 1e3)]
    lead = abs(spectrum.spin_splitting(1e3, delta) * 1e3 - 2 * delta) / (2 * delta)
    ok = all(12 <= r <= 20 for r in low) and all(0.1 <= r <= 1 / 6 for r in high) and lead < 1e-3
    return Check("expansion-orders", ok, max(abs(r - 16) for r in low), 4.0)


def run_all(samples=DEFAULT_SAMPLES, seed=DEFAULT_SEED) -> list:
    p, pi, delta = sample_params(samples, seed)
    return [
        check_oracle(p, pi, delta),
        check_labels(p, pi, delta),
        check_bound(p, pi, delta),
        check_monotone(seed),
        check_expansions(),
    ]
