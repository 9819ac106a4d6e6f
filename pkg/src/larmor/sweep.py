"""Deterministic parameter sweeps.

Three table shapes are produced:

* ``sweep_delta``: splitting against delta, one series per velocity.
* ``sweep_velocity``: splitting against velocity, one series per delta.
* ``doppler_compare``: motional Larmor red shift next to the two Doppler ratios.

Rows are always emitted in (series index, grid index) order, whatever the
number of workers used to evaluate them.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, fields

from . import spectrum
from .errors import LarmorError, OutsideExpansionDomain, SingularExpansion, ValidationMismatch
from .oracle import splitting_numeric
from .quantities import NaturalParams

VALIDATION_TOL = 1e-10

# series used when the caller gives none
DEFAULT_VELOCITIES = (0.0, 0.2, 0.5, 0.8)
DEFAULT_DELTAS = (0.3, 0.5, 0.9)


@dataclass(frozen=True)
class Grid:
    """Inclusive linear grid of ``count`` points from ``start`` to ``stop``."""

    start: float
    stop: float
    count: int

    def __post_init__(self):
        if not (math.isfinite(self.start) and math.isfinite(self.stop)):
            raise ValueError("grid bounds must be finite")
        if self.count < 2:
            raise ValueError(f"grid needs at least 2 points, got {self.count}")
        if not self.start < self.stop:
            raise ValueError(f"grid start {self.start!r} must be below stop {self.stop!r}")

    @classmethod
    def parse(cls, text: str) -> "Grid":
        """Parse ``start:stop:count``."""
        parts = text.split(":")
        if len(parts) != 3:
            raise ValueError(f"range {text!r} is not of the form start:stop:count")
        return cls(float(parts[0]), float(parts[1]), int(parts[2]))

    def points(self) -> list:
        step = (self.stop - self.start) / (self.count - 1)
        pts = [self.start + i * step for i in range(self.count)]
        pts[-1] = self.stop
        return pts


@dataclass(frozen=True)
class SweepRow:
    series_label: float
    swept_value: float
    splitting: float
    splitting_numeric: float | None = None
    lowspeed_approx: float | None = None
    highspeed_approx: float | None = None


@dataclass(frozen=True)
class DopplerRow:
    v: float
    motional_ratio: float
    nonrel_doppler: float
    rel_doppler: float


@dataclass
class Table:
    columns: tuple
    rows: list
    dropped: int = 0

    @classmethod
    def of(cls, row_type, rows, dropped=0):
        return cls(columns=tuple(f.name for f in fields(row_type)), rows=list(rows), dropped=dropped)

    def values(self):
        return [tuple(getattr(r, c) for c in self.columns) for r in self.rows]


@dataclass(frozen=True)
class SweepSpec:
    mode: str  # "delta-sweep" | "velocity-sweep" | "doppler-compare"
    fixed_values: tuple
    grid: Grid
    eta_mode: str = "approx"
    validate: bool = False
    pi_tilde: float = 0.0
    expansions: bool = False


def _check_eta_mode(eta_mode):
    if eta_mode not in ("exact", "approx"):
        raise ValueError(f"eta_mode must be 'exact' or 'approx', got {eta_mode!r}")


def _check_velocities(vs):
    for v in vs:
        if not 0.0 <= v < 1.0:
            raise ValueError(f"velocity {v!r} must lie in [0, 1)")


def _check_deltas(ds):
    for d in ds:
        if not (math.isfinite(d) and d >= 0):
            raise ValueError(f"delta {d!r} must be finite and >= 0")


def _row(velocity, delta, eta_mode, pi_tilde, validate, expansions, series_label, swept_value):
    try:
        kin = spectrum.kinematics_of(velocity)
        exact = eta_mode == "exact"
        eta = spectrum.eta_of_velocity(kin, pi_tilde, exact=exact)
        split = spectrum.spin_splitting(eta, delta)
        numeric = None
        if validate:
            # the oracle sees the same eta the closed form used
            params = NaturalParams(kin.p_tilde, pi_tilde if exact else 0.0, delta)
            numeric = splitting_numeric(params)
            if not abs(numeric - split) < VALIDATION_TOL:
                raise ValidationMismatch(
                    f"oracle {numeric!r} vs closed form {split!r} differ by {abs(numeric - split):.3e}")
        low = high = None
        if expansions:
            if spectrum.lowspeed_applicable(eta, delta):
                low = spectrum.splitting_lowspeed(eta, delta)
            if spectrum.highspeed_applicable(eta, delta):
                high = spectrum.splitting_highspeed(eta, delta)
    except LarmorError as exc:
        raise type(exc)(f"at v={velocity!r}, delta={delta!r}: {exc}") from exc
    return SweepRow(series_label, swept_value, split, numeric, low, high)


def _evaluate(tasks, workers):
    if workers <= 1:
        return [fn(*args) for fn, args in tasks]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(lambda t: t[0](*t[1]), tasks))


def sweep_delta(velocities, grid: Grid, eta_mode="approx", validate=False, pi_tilde=0.0,
                expansions=False, workers=1) -> Table:
    """Splitting vs delta; outer loop over ``velocities`` in the given order."""
    _check_eta_mode(eta_mode)
    _check_velocities(velocities)
    deltas = grid.points()
    _check_deltas(deltas)
    tasks = [(_row, (v, d, eta_mode, pi_tilde, validate, expansions, v, d))
             for v in velocities for d in deltas]
    return Table.of(SweepRow, _evaluate(tasks, workers))


def sweep_velocity(deltas, grid: Grid, eta_mode="approx", validate=False, pi_tilde=0.0,
                   expansions=False, workers=1) -> Table:
    """Splitting vs velocity; outer loop over ``deltas`` in the given order."""
    _check_eta_mode(eta_mode)
    _check_deltas(deltas)
    velocities = grid.points()
    _check_velocities(velocities)
    tasks = [(_row, (v, d, eta_mode, pi_tilde, validate, expansions, d, v))
             for d in deltas for v in velocities]
    return Table.of(SweepRow, _evaluate(tasks, workers))


def doppler_compare(grid: Grid, delta_tilde: float) -> Table:
    """Motional red-shift ratio beside the Doppler ratios 1 - v and gamma(1 - v).

    Grid points outside the low-speed expansion domain are dropped and
    counted in ``Table.dropped``.
    """
    velocities = grid.points()
    _check_velocities(velocities)
    rows, dropped = [], 0
    for v in velocities:
        try:
            shift = spectrum.larmor_redshift(v, delta_tilde)
        except OutsideExpansionDomain:
            dropped += 1
            continue
        except SingularExpansion as exc:
            raise SingularExpansion(f"at v={v!r}, delta={delta_tilde!r}: {exc}") from exc
        nonrel, rel = spectrum.doppler_reference(v)
        rows.append(DopplerRow(v, shift.ratio, nonrel, rel))
    return Table.of(DopplerRow, rows, dropped=dropped)


def run_sweep(spec: SweepSpec, workers=1) -> Table:
    if spec.mode == "delta-sweep":
        return sweep_delta(spec.fixed_values, spec.grid, spec.eta_mode, spec.validate,
                           spec.pi_tilde, spec.expansions, workers)
    if spec.mode == "velocity-sweep":
        return sweep_velocity(spec.fixed_values, spec.grid, spec.eta_mode, spec.validate,
                              spec.pi_tilde, spec.expansions, workers)
    if spec.mode == "doppler-compare":
        (delta,) = spec.fixed_values
        return doppler_compare(spec.grid, delta)
    raise ValueError(f"unknown sweep mode {spec.mode!r}")
