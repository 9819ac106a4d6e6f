"""Command-line front end.

Exit status: 0 on success, 1 on domain errors (guards, singular points,
failed verification), 2 on usage errors.  Data goes to ``--out`` or stdout,
diagnostics to stderr.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys

from . import __version__, spectrum, sweep, verification
from .errors import LarmorError
from .oracle import labeled_spectrum
from .quantities import (
    FieldPoint,
    NaturalParams,
    load_registry,
    momentum_of_velocity,
    to_natural,
)
from .sweep import Grid, Table


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _float_list(text):
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def _grid(text):
    try:
        return Grid.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _precision(text):
    value = int(text)
    if not 6 <= value <= 17:
        raise argparse.ArgumentTypeError(f"precision must lie in [6, 17], got {value}")
    return value


def _common():
    common = argparse.ArgumentParser(add_help=False)
    g = common.add_argument_group("output and configuration")
    g.add_argument("--registry", help="particle/constants registry file (default: $LARMOR_REGISTRY or shipped file)")
    g.add_argument("--format", choices=("csv", "json"), default="csv")
    g.add_argument("--precision", type=_precision, default=17, help="significant digits, 6..17")
    g.add_argument("--out", help="write data here instead of stdout")
    g.add_argument("--eta-mode", choices=("exact", "approx"), default="approx",
                   help="approx uses eta = cp; exact uses sqrt(p^2 + pi^2)")
    g.add_argument("--pi", type=float, default=0.0, dest="pi_tilde", help="cross coupling pi in units mc")
    return common


def build_parser():
    common = _common()
    parser = _Parser(prog="larmor", description="Relativistic spin splitting of neutral dipole particles.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("spectrum", parents=[common], help="four labelled energies")
    p.add_argument("--eta", type=float, required=True)
    p.add_argument("--delta", type=float, required=True)
    p.add_argument("--numeric", action="store_true", help="also diagonalise numerically")

    p = sub.add_parser("split", parents=[common], help="spin splitting at one point")
    p.add_argument("--eta", type=float)
    p.add_argument("--delta", type=float)
    p.add_argument("--derivative", action="store_true")
    mx = p.add_mutually_exclusive_group()
    mx.add_argument("--lowspeed", action="store_true")
    mx.add_argument("--highspeed", action="store_true")
    si = p.add_argument_group("SI mode")
    si.add_argument("--particle", help="registry preset; enables SI mode")
    si.add_argument("--e-field", type=float, default=0.0, help="V/m")
    si.add_argument("--b-field", type=float, default=0.0, help="T")
    si.add_argument("--velocity", type=float, default=0.0, help="fraction of c")

    p = sub.add_parser("limits", parents=[common], help="upper limits on splitting and Larmor frequency")
    mx = p.add_mutually_exclusive_group(required=True)
    mx.add_argument("--particle")
    mx.add_argument("--natural", action="store_true")

    p = sub.add_parser("sweep-delta", parents=[common], help="splitting vs delta per velocity")
    p.add_argument("--velocities", type=_float_list, default=list(sweep.DEFAULT_VELOCITIES))
    p.add_argument("--delta-range", type=_grid, default=Grid(0.0, 3.0, 31))
    p.add_argument("--validate", action="store_true", help="cross-check every row with the oracle")
    p.add_argument("--expansions", action="store_true", help="attach low/high-speed approximations")
    p.add_argument("--workers", type=int, default=1)

    p = sub.add_parser("sweep-velocity", parents=[common], help="splitting vs velocity per delta")
    p.add_argument("--deltas", type=_float_list, default=list(sweep.DEFAULT_DELTAS))
    p.add_argument("--velocity-range", type=_grid, default=Grid(0.0, 0.99, 61))
    p.add_argument("--validate", action="store_true")
    p.add_argument("--expansions", action="store_true")
    p.add_argument("--workers", type=int, default=1)

    p = sub.add_parser("doppler", parents=[common], help="motional red shift vs Doppler ratios")
    p.add_argument("--velocity-range", type=_grid, default=Grid(0.0, 0.3, 31))
    p.add_argument("--delta", type=float, default=0.5)

    p = sub.add_parser("verify", parents=[common], help="run the self-verification suites")
    p.add_argument("--samples", type=int, default=verification.DEFAULT_SAMPLES)
    p.add_argument("--seed", type=int, default=verification.DEFAULT_SEED)
    return parser


def _fmt(value, precision):
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (int, float)):
        return f"{float(value):.{precision - 1}e}"
    return str(value)


def _json_value(value, precision):
    if value is None or isinstance(value, (bool, str)):
        return value
    if isinstance(value, (int, float)):
        x = float(f"{float(value):.{precision - 1}e}")
        return x if math.isfinite(x) else None
    return str(value)


def render(table: Table, fmt: str, precision: int, meta: dict) -> str:
    if fmt == "json":
        rows = [{c: _json_value(v, precision) for c, v in zip(table.columns, r)} for r in table.values()]
        meta = dict(meta)
        if table.dropped:
            meta["dropped_rows"] = table.dropped
        return json.dumps({"meta": meta, "rows": rows}, indent=2) + "\n"
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(table.columns)
    for r in table.values():
        writer.writerow([_fmt(v, precision) for v in r])
    if table.dropped:
        buf.write(f"# dropped_rows={table.dropped}\n")
    return buf.getvalue()


def _simple(columns, rows):
    return Table(columns=tuple(columns), rows=[_Row(columns, r) for r in rows])


class _Row:
    def __init__(self, columns, values):
        for c, v in zip(columns, values):
            setattr(self, c, v)


def cmd_spectrum(args):
    res = spectrum.eigenvalues_analytic(args.eta, args.delta)
    if not args.numeric:
        return _simple(("branch", "spin", "energy"), res.levels())
    if abs(args.pi_tilde) > args.eta:
        raise LarmorError(f"--pi {args.pi_tilde!r} exceeds --eta {args.eta!r}")
    p = math.sqrt(args.eta**2 - args.pi_tilde**2)
    labelled = labeled_spectrum(NaturalParams(p, args.pi_tilde, args.delta))
    rows = []
    for branch, spin, energy in res.levels():
        num = labelled.energy(branch, spin)
        lv = next(lv for lv in labelled.entries if lv.branch == branch and lv.spin == spin)
        rows.append((branch, spin, energy, num, num - energy, lv.sigma_x_expectation))
    return _simple(("branch", "spin", "energy", "energy_numeric", "deviation", "sigma_x"), rows)


def _split_extras(args, eta, delta, columns, values):
    if args.derivative:
        columns.append("derivative")
        values.append(spectrum.splitting_derivative(eta, delta))
    if args.lowspeed:
        columns.append("lowspeed_approx")
        values.append(spectrum.splitting_lowspeed(eta, delta))
    if args.highspeed:
        columns.append("highspeed_approx")
        values.append(spectrum.splitting_highspeed(eta, delta))


def cmd_split(args):
    if args.particle is None:
        if args.eta is None or args.delta is None:
            raise UsageError("larmor split: --eta and --delta are required without --particle")
        columns = ["eta", "delta", "splitting"]
        values = [args.eta, args.delta, spectrum.spin_splitting(args.eta, args.delta)]
        _split_extras(args, args.eta, args.delta, columns, values)
        return _simple(columns, [values])

    if args.eta is not None or args.delta is not None:
        raise UsageError("larmor split: --eta/--delta cannot be combined with --particle")
    reg = load_registry(args.registry)
    particle = reg.particle(args.particle)
    const = reg.constants
    fields = FieldPoint(args.e_field, args.b_field)
    momentum = momentum_of_velocity(particle, args.velocity, const)
    params = to_natural(particle, fields, momentum, const)
    eta = params.eta_tilde if args.eta_mode == "exact" else abs(params.p_tilde)
    delta = params.delta_tilde
    split = spectrum.spin_splitting(eta, delta)
    rest = particle.mass * const.c**2
    columns = ["p_tilde", "pi_tilde", "eta", "delta", "splitting",
               "splitting_J", "larmor_rad_per_s", "splitting_nonrel_J"]
    values = [params.p_tilde, params.pi_tilde, eta, delta, split,
              split * rest, split * rest / const.hbar,
              spectrum.splitting_nonrel(particle.edm, particle.mdm, args.e_field, args.b_field)]
    _split_extras(args, eta, delta, columns, values)
    return _simple(columns, [values])


def cmd_limits(args):
    if args.natural:
        b = spectrum.natural_limits()
        return _simple(("max_splitting", "max_larmor", "min_wavelength", "compton_wavelength"),
                       [(b.max_splitting, b.max_larmor, b.min_wavelength, b.compton_wavelength)])
    reg = load_registry(args.registry)
    particle = reg.particle(args.particle)
    b = spectrum.relativistic_limits(particle.mass, reg.constants)
    return _simple(("particle", "max_splitting_J", "max_larmor_rad_per_s", "min_wavelength_m",
                    "compton_wavelength_m"),
                   [(particle.name, b.max_splitting, b.max_larmor, b.min_wavelength, b.compton_wavelength)])


def cmd_sweep_delta(args):
    return sweep.sweep_delta(args.velocities, args.delta_range, args.eta_mode, args.validate,
                             args.pi_tilde, args.expansions, args.workers)


def cmd_sweep_velocity(args):
    return sweep.sweep_velocity(args.deltas, args.velocity_range, args.eta_mode, args.validate,
                                args.pi_tilde, args.expansions, args.workers)


def cmd_doppler(args):
    table = sweep.doppler_compare(args.velocity_range, args.delta)
    if table.dropped:
        print(f"warning: {table.dropped} grid point(s) outside the low-speed domain were dropped",
              file=sys.stderr)
    return table


def cmd_verify(args):
    checks = verification.run_all(args.samples, args.seed)
    table = _simple(("check", "passed", "metric", "threshold"),
                    [(c.name, c.passed, c.metric, c.threshold) for c in checks])
    for c in checks:
        print(f"{'PASS' if c.passed else 'FAIL'} {c.name}", file=sys.stderr)
    table.failed = sum(not c.passed for c in checks)
    return table


COMMANDS = {
    "spectrum": cmd_spectrum,
    "split": cmd_split,
    "limits": cmd_limits,
    "sweep-delta": cmd_sweep_delta,
    "sweep-velocity": cmd_sweep_velocity,
    "doppler": cmd_doppler,
    "verify": cmd_verify,
}

_NOT_PARAMETERS = {"command", "format", "precision", "out", "registry"}


def _meta(args):
    params = {}
    for key, value in sorted(vars(args).items()):
        if key in _NOT_PARAMETERS:
            continue
        if isinstance(value, Grid):
            value = f"{value.start!r}:{value.stop!r}:{value.count}"
        params[key] = value
    return {
        "command": args.command,
        "parameters": params,
        "seed": getattr(args, "seed", None),
        "version": __version__,
    }


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        table = COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except (LarmorError, ValueError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except SystemExit as exc:  # --help / --version
        return int(exc.code or 0)

    text = render(table, args.format, args.precision, _meta(args))
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 1 if getattr(table, "failed", 0) else 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
