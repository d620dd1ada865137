"""Command line front end emitting plot-ready CSV/JSON data files.

Exit codes: 0 success, 2 usage error, 3 numerical failure, 4 divergence
in simulation.  Relative output paths resolve against the directory in
DUFFING_JUMP_OUTDIR when that variable is set.  Identical invocations
produce byte-identical files: nothing here is randomized or
time-dependent.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from dataclasses import dataclass

from duffing_jump import jump, sim, singular, steady
from duffing_jump.algebra import coefficient_report
from duffing_jump.poly import RootConvergenceError
from duffing_jump.steady import Params
from duffing_jump.util import default_threads

DEFAULT_GAMMA = 0.0783
DEFAULT_ZETA = 0.025
DEFAULT_F = 0.1


def _fmt(x: float) -> str:
    return format(x, ".15g")


@dataclass
class RangeSpec:
    lo: float
    hi: float
    count: int


def _parse_range(text: str, default_count: int = 400) -> RangeSpec:
    parts = text.split(":")
    if len(parts) not in (2, 3):
        raise argparse.ArgumentTypeError(
            f"range must look like min:max[:count], got {text!r}"
        )
    try:
        lo = float(parts[0])
        hi = float(parts[1])
        count = int(parts[2]) if len(parts) == 3 else default_count
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None
    if not (math.isfinite(lo) and math.isfinite(hi)) or hi <= lo:
        raise argparse.ArgumentTypeError(f"empty or non-finite range {text!r}")
    if count < 2:
        raise argparse.ArgumentTypeError("range count must be >= 2")
    return RangeSpec(lo=lo, hi=hi, count=count)


def _parse_grid(text: str) -> tuple:
    try:
        a, b = text.lower().split("x")
        return int(a), int(b)
    except ValueError:
        raise argparse.ArgumentTypeError(f"grid must look like NxM, got {text!r}") from None


def _positive_float(text: str) -> float:
    v = float(text)
    if not math.isfinite(v) or v <= 0:
        raise argparse.ArgumentTypeError(f"expected a positive finite number, got {text}")
    return v


def _nonneg_float(text: str) -> float:
    v = float(text)
    if not math.isfinite(v) or v < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative finite number, got {text}")
    return v


def _add_param_args(p: argparse.ArgumentParser, with_f0: bool = True):
    p.add_argument("--gamma", type=_positive_float, default=DEFAULT_GAMMA,
                   help="cubic stiffness (default %(default)s)")
    p.add_argument("--zeta", type=_positive_float, default=DEFAULT_ZETA,
                   help="damping ratio (default %(default)s)")
    p.add_argument("--f", type=_nonneg_float, default=DEFAULT_F,
                   help="harmonic forcing amplitude (default %(default)s)")
    if with_f0:
        p.add_argument("--f0", type=_nonneg_float, required=True,
                       help="constant force")


def _add_io_args(p: argparse.ArgumentParser, formats=("csv", "json"), default="csv"):
    p.add_argument("--out", help="output file (stdout when omitted)")
    if len(formats) > 1:
        p.add_argument("--format", choices=formats, default=default,
                       help="output format (default %(default)s)")
    p.add_argument("--threads", type=int, default=None,
                   help="parallel workers for grid evaluation "
                        "(default: all cores)")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="duffing-jump",
        description="Jump analysis of the forced single-well cubic oscillator",
    )
    sub = ap.add_subparsers(dest="command", required=True, metavar="command")

    p = sub.add_parser("response", help="amplitude-frequency response curve")
    _add_param_args(p)
    p.add_argument("--omega", type=_parse_range, required=True, metavar="LO:HI[:N]",
                   help="frequency range, count defaults to 400")
    p.add_argument("--include-negative-a0", action="store_true",
                   help="keep response branches with negative bias amplitude")
    _add_io_args(p)

    p = sub.add_parser("jumps", help="vertical-tangency points")
    _add_param_args(p)
    _add_io_args(p)

    p = sub.add_parser("manifold2d", help="fold-manifold slice over f0")
    _add_param_args(p, with_f0=False)
    p.add_argument("--f0-range", type=_parse_range, default=_parse_range("0:7"),
                   metavar="LO:HI[:N]", help="constant-force range (default 0:7:400)")
    _add_io_args(p)

    p = sub.add_parser("manifold3d", help="fold-manifold surface over (f, f0)")
    p.add_argument("--gamma", type=_positive_float, default=DEFAULT_GAMMA)
    p.add_argument("--zeta", type=_positive_float, default=DEFAULT_ZETA)
    p.add_argument("--f-range", type=_parse_range, default=_parse_range("0:1:80"),
                   metavar="LO:HI[:N]")
    p.add_argument("--f0-range", type=_parse_range, default=_parse_range("0:7:80"),
                   metavar="LO:HI[:N]")
    _add_io_args(p)

    p = sub.add_parser("border", help="parameter values where the tangency count changes")
    p.add_argument("--vary", choices=sorted(jump._PARAM_FIELDS), required=True)
    p.add_argument("--range", dest="value_range", type=_parse_range, required=True,
                   metavar="LO:HI[:N]", help="search range; N is the coarse grid")
    p.add_argument("--gamma", type=_positive_float, default=DEFAULT_GAMMA)
    p.add_argument("--zeta", type=_positive_float, default=DEFAULT_ZETA)
    p.add_argument("--f", type=_nonneg_float, default=DEFAULT_F)
    p.add_argument("--f0", type=_nonneg_float, default=0.0,
                   help="fixed constant force (needed when varying another parameter)")
    _add_io_args(p, formats=("json",), default="json")

    p = sub.add_parser("double-omega", help="forces where two tangencies share a frequency")
    p.add_argument("--gamma", type=_positive_float, default=DEFAULT_GAMMA)
    p.add_argument("--zeta", type=_positive_float, default=DEFAULT_ZETA)
    p.add_argument("--f", type=_nonneg_float, default=DEFAULT_F)
    p.add_argument("--f0-range", type=_parse_range, required=True, metavar="LO:HI[:N]")
    _add_io_args(p)

    p = sub.add_parser("singular-scan", help="verify the singular quartic has no positive roots")
    p.add_argument("--zeta-range", type=_parse_range, default=_parse_range("0.005:0.5"),
                   metavar="LO:HI")
    p.add_argument("--c-range", type=_parse_range, default=_parse_range("1e-6:10"),
                   metavar="LO:HI")
    p.add_argument("--grid", type=_parse_grid, default=(200, 200), metavar="NxM")
    _add_io_args(p, formats=("json",), default="json")

    p = sub.add_parser("sweep", help="time-domain hysteresis frequency sweep")
    _add_param_args(p)
    p.add_argument("--omega", type=_parse_range, default=_parse_range("0.3:1.0:141"),
                   metavar="LO:HI[:N]", help="sweep range (default 0.3:1.0:141)")
    p.add_argument("--steps-per-period", type=int, default=sim.DEFAULT_STEPS_PER_PERIOD)
    p.add_argument("--transient", type=int, default=sim.DEFAULT_TRANSIENT_PERIODS,
                   help="discarded periods per step")
    p.add_argument("--measure", type=int, default=sim.DEFAULT_MEASURE_PERIODS,
                   help="measured periods per step")
    _add_io_args(p)

    p = sub.add_parser("derive-tables", help="audit report of the derived coefficient tables")
    p.add_argument("--out", help="report path (stdout when omitted)")

    return ap


def _resolve_out(path):
    if path is None:
        return None
    base = os.environ.get("DUFFING_JUMP_OUTDIR")
    if base and not os.path.isabs(path):
        return os.path.join(base, path)
    return path


def _emit(text: str, out, summary: str) -> None:
    out = _resolve_out(out)
    if out is None:
        sys.stdout.write(text)
        print(summary, file=sys.stderr)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
        print(f"{summary} -> {out}")


def _params(args, f0=None) -> Params:
    return Params(
        gamma=args.gamma,
        zeta=args.zeta,
        f_amp=args.f,
        f0=args.f0 if f0 is None else f0,
    )


def _threads(args):
    t = getattr(args, "threads", None)
    return default_threads() if t is None else t


def _run_response(args) -> None:
    curve = steady.response_curve(
        _params(args),
        (args.omega.lo, args.omega.hi),
        args.omega.count,
        include_negative_a0=args.include_negative_a0,
        threads=_threads(args),
    )
    n_branches = len({s.branch for s in curve.samples})
    text = steady.curve_csv(curve) if args.format == "csv" else steady.curve_json(curve)
    _emit(text, args.out,
          f"response: {len(curve.samples)} samples on {n_branches} branches")


def _run_jumps(args) -> None:
    pts = jump.jump_points(_params(args))
    if args.format == "csv":
        lines = ["omega,a0,a1"]
        lines += [f"{_fmt(p.omega)},{_fmt(p.a0)},{_fmt(p.a1)}" for p in pts]
        text = "\n".join(lines) + "\n"
    else:
        text = json.dumps(
            [{"omega": p.omega, "a0": p.a0, "a1": p.a1} for p in pts], indent=1
        )
    rng = f" (omega {_fmt(pts[0].omega)}..{_fmt(pts[-1].omega)})" if pts else ""
    _emit(text, args.out, f"jumps: {len(pts)} vertical tangencies{rng}")


def _run_manifold2d(args) -> None:
    sl = jump.manifold_slice_2d(
        args.gamma, args.zeta, args.f,
        (args.f0_range.lo, args.f0_range.hi), args.f0_range.count,
        threads=_threads(args),
    )
    if args.format == "csv":
        lines = ["f0,a0"]
        lines += [f"{_fmt(f0)},{_fmt(a0)}" for f0, a0 in sl.points]
        text = "\n".join(lines) + "\n"
    else:
        text = json.dumps({"fixed": sl.fixed,
                           "points": [[f0, a0] for f0, a0 in sl.points]}, indent=1)
    _emit(text, args.out, f"manifold2d: {len(sl.points)} points")


def _run_manifold3d(args) -> None:
    sl = jump.manifold_slice_3d(
        args.gamma, args.zeta,
        (args.f_range.lo, args.f_range.hi),
        (args.f0_range.lo, args.f0_range.hi),
        (args.f_range.count, args.f0_range.count),
        threads=_threads(args),
    )
    if args.format == "csv":
        lines = ["f,f0,a0"]
        lines += [f"{_fmt(f)},{_fmt(f0)},{_fmt(a0)}" for f, f0, a0 in sl.points]
        text = "\n".join(lines) + "\n"
    else:
        text = json.dumps({"fixed": sl.fixed,
                           "points": [list(p) for p in sl.points]}, indent=1)
    _emit(text, args.out, f"manifold3d: {len(sl.points)} points")


def _run_border(args) -> None:
    base = _params(args)
    pts = jump.border_set(
        base, args.vary, (args.value_range.lo, args.value_range.hi),
        grid_n=args.value_range.count,
    )
    text = json.dumps(
        [
            {
                "param": p.param,
                "value": p.value,
                "a0_double": p.a0_double,
                "count_below": p.count_below,
                "count_above": p.count_above,
            }
            for p in pts
        ],
        indent=1,
    )
    values = ", ".join(_fmt(p.value) for p in pts)
    _emit(text, args.out, f"border [{args.vary}]: {values}")


def _run_double_omega(args) -> None:
    events = jump.double_omega_points(
        args.gamma, args.zeta, args.f,
        (args.f0_range.lo, args.f0_range.hi), args.f0_range.count,
    )
    if args.format == "csv":
        lines = ["f0,omega,a0_low,a0_high"]
        lines += [
            f"{_fmt(e.f0)},{_fmt(e.omega)},{_fmt(e.a0_pair[0])},{_fmt(e.a0_pair[1])}"
            for e in events
        ]
        text = "\n".join(lines) + "\n"
    else:
        text = json.dumps(
            [{"f0": e.f0, "omega": e.omega, "a0": list(e.a0_pair)} for e in events],
            indent=1,
        )
    _emit(text, args.out, f"double-omega: {len(events)} events")


def _run_singular_scan(args) -> None:
    rep = singular.scan_no_singular(
        (args.zeta_range.lo, args.zeta_range.hi),
        (args.c_range.lo, args.c_range.hi),
        args.grid,
        threads=_threads(args),
    )
    text = json.dumps(
        {
            "grid": {
                "zeta": [rep.zeta_range[0], rep.zeta_range[1], rep.grid[0]],
                "c": [rep.c_range[0], rep.c_range[1], rep.grid[1]],
            },
            "violations": [list(v) for v in rep.violations],
            "checked": rep.checked,
        },
        indent=1,
    )
    _emit(text, args.out,
          f"singular-scan: {len(rep.violations)} violations in {rep.checked} grid points")


def _run_sweep(args) -> None:
    records = sim.bifurcation_sweep(
        _params(args),
        (args.omega.lo, args.omega.hi),
        args.omega.count,
        transient_periods=args.transient,
        measure_periods=args.measure,
        steps_per_period=args.steps_per_period,
    )
    if args.format == "csv":
        lines = ["omega,direction,a0_sim,a1_sim"]
        lines += [
            f"{_fmt(r.omega)},{r.direction},{_fmt(r.a0_sim)},{_fmt(r.a1_sim)}"
            for r in records
        ]
        text = "\n".join(lines) + "\n"
    else:
        text = json.dumps(
            {
                "params": {"gamma": args.gamma, "zeta": args.zeta,
                           "f": args.f, "f0": args.f0},
                "steps_per_period": args.steps_per_period,
                "transient_periods": args.transient,
                "measure_periods": args.measure,
                "records": [
                    {"omega": r.omega, "direction": r.direction,
                     "a0_sim": r.a0_sim, "a1_sim": r.a1_sim}
                    for r in records
                ],
            },
            indent=1,
        )
    _emit(text, args.out, f"sweep: {len(records)} records (up+down)")


def _run_derive_tables(args) -> None:
    text = coefficient_report()
    _emit(text, args.out, "derive-tables: coefficient audit written")


_RUNNERS = {
    "response": _run_response,
    "jumps": _run_jumps,
    "manifold2d": _run_manifold2d,
    "manifold3d": _run_manifold3d,
    "border": _run_border,
    "double-omega": _run_double_omega,
    "singular-scan": _run_singular_scan,
    "sweep": _run_sweep,
    "derive-tables": _run_derive_tables,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        _RUNNERS[args.command](args)
    except sim.DivergenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    except (RootConvergenceError, ArithmeticError, ValueError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    return 0


if __name__ == "__main__":
    sys.exit(main())
