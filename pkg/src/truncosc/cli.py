"""Command-line interface.

Three subcommands emit machine-readable data:

    potential   partner potential + its lowest eigenfunctions (CSV/JSON)
    piv         a Painleve IV solution g(x) with residual column (CSV/JSON)
    verify      run a verification suite, write a JSON report

Exit codes: 0 success, 2 rejected configuration, 3 verification
failure, 4 solution undetermined at the requested parameters.

Output is byte-stable for a fixed configuration: floats are written in
their shortest round-trip form (17 significant digits at most), masked
values as empty fields, and lines end with a bare newline.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys

import numpy as np

from . import pha_piv, susy, verify
from .numverify import GridSpec
from .seeds import EigenKind, Parity, h0_eigenfunction
from .susy import OrderingError, SingularityError, TransformationCase

EXIT_OK = 0
EXIT_REJECTED = 2
EXIT_VERIFY_FAILED = 3
EXIT_UNDETERMINED = 4

_CASE_NAMES = [c.value for c in TransformationCase] + ["V0"]


def _fmt(value: float | None) -> str:
    if value is None:
        return ""
    return repr(float(value))


def _write_text(path: str, text: str) -> None:
    with open(path, "w", newline="\n") as fh:
        fh.write(text)


def _csv_lines(meta: str, header: list[str], columns: list[list[float | None]]) -> str:
    lines = [meta, ",".join(header)]
    for row in zip(*columns):
        lines.append(",".join(_fmt(v) for v in row))
    return "\n".join(lines) + "\n"


def _json_payload(meta: dict, header: list[str], columns: list[list[float | None]]) -> str:
    payload = dict(meta)
    payload["columns"] = {name: col for name, col in zip(header, columns)}
    return json.dumps(payload, indent=1, sort_keys=True) + "\n"


# ---------------------------------------------------------------------------
# potential
# ---------------------------------------------------------------------------

def cmd_potential(args) -> int:
    grid = GridSpec(args.grid_l, args.grid_n)
    xs = grid.points()
    if args.case == "V0":
        header = ["x", "V"] + [f"phi{i}" for i in range(3)]
        cols = [list(xs), list(0.5 * xs * xs)]
        for n in range(3):
            cols.append(list(h0_eigenfunction(n, EigenKind.PHYSICAL).value_fn(xs)))
        meta_line = f"# case=V0 eps1= eps2= grid=n:{grid.N},l:{_fmt(grid.L)}"
        meta = {"case": "V0", "eps1": None, "eps2": None, "grid_n": grid.N, "grid_l": grid.L}
    else:
        case = TransformationCase(args.case)
        if case.order == 2 and args.eps2 is None:
            print(f"rejected: case {case.value} requires --eps2", file=sys.stderr)
            return EXIT_REJECTED
        check = susy.validate_epsilon_range(case, args.eps1, args.eps2)
        if not check:
            print(f"rejected: {check.reason}", file=sys.stderr)
            return EXIT_REJECTED
        count = 4 if case in (TransformationCase.ODD_EVEN, TransformationCase.EVEN_ODD) else 3
        partner, prediction, states = verify.spectrum_states(case, args.eps1, args.eps2, count)
        header = ["x", "V"] + [f"phi{i}" for i in range(len(states))]
        cols = [list(xs), list(partner.full_eval_fn(xs))]
        for state in states:
            cols.append(list(np.asarray(state.value_fn(xs), dtype=float)))
        meta_line = (f"# case={case.value} eps1={_fmt(args.eps1)} eps2="
                     f"{_fmt(args.eps2) if args.eps2 is not None else ''} "
                     f"grid=n:{grid.N},l:{_fmt(grid.L)}")
        meta = {"case": case.value, "eps1": args.eps1, "eps2": args.eps2,
                "grid_n": grid.N, "grid_l": grid.L,
                "energies": [s.energy for s in states]}
    if args.format == "csv":
        _write_text(args.out, _csv_lines(meta_line, header, cols))
    else:
        _write_text(args.out, _json_payload(meta, header, cols))
    return EXIT_OK


# ---------------------------------------------------------------------------
# piv
# ---------------------------------------------------------------------------

def _locate_poles(gfn, xs: np.ndarray) -> list[float]:
    vals = np.asarray(gfn(xs), dtype=float)
    poles = []
    finite = np.isfinite(vals)
    for i in range(len(xs) - 1):
        if not (finite[i] and finite[i + 1]):
            poles.append(0.5 * (xs[i] + xs[i + 1]))
            continue
        if vals[i] * vals[i + 1] < 0 and min(abs(vals[i]), abs(vals[i + 1])) > 10.0:
            lo, hi = xs[i], xs[i + 1]
            for _ in range(50):
                mid = 0.5 * (lo + hi)
                vm = float(gfn(mid))
                if not np.isfinite(vm) or abs(vm) > 1e12:
                    break
                if (1.0 / vals[i]) * (1.0 / vm) <= 0:
                    hi = mid
                else:
                    lo = mid
                    vals[i] = vm
            poles.append(0.5 * (lo + hi))
    return poles


def cmd_piv(args) -> int:
    parity = Parity(args.parity)
    try:
        piv = pha_piv.closed_form_g(args.order, parity, args.index, args.eps1)
    except pha_piv.UndeterminedSolutionError as exc:
        print(f"undetermined: {exc}", file=sys.stderr)
        return EXIT_UNDETERMINED
    xs = np.linspace(args.grid_l / args.grid_n, args.grid_l, args.grid_n)
    gvals = np.asarray(piv.g_fn(xs), dtype=float)
    if piv.trivial_zero:
        gvals = np.zeros_like(gvals)
    poles = _locate_poles(piv.g_fn, xs)

    g_col: list[float | None] = []
    r_col: list[float | None] = []
    max_res = 0.0
    for x, g in zip(xs, gvals):
        near_pole = any(abs(x - p) < 1e-3 for p in poles)
        if near_pole or not np.isfinite(g):
            g_col.append(None)
            r_col.append(None)
            continue
        g_col.append(float(g))
        if piv.trivial_zero:
            r_col.append(None)
            continue
        try:
            res = pha_piv.piv_residual(piv, float(x))
        except (pha_piv.NearSingularityError, pha_piv.NearZeroError):
            r_col.append(None)
            continue
        r_col.append(res)
        max_res = max(max_res, abs(res))

    meta_line = (f"# case=piv-o{args.order}-{parity.value}-g{args.index} "
                 f"eps1={_fmt(args.eps1)} eps2= grid=n:{args.grid_n},l:{_fmt(args.grid_l)}")
    text = _csv_lines(meta_line, ["x", "g", "residual"], [list(xs), g_col, r_col])
    _write_text(args.out, text)
    sidecar = {
        "a": float(piv.a),
        "b": float(piv.b),
        "epsilon": float(args.eps1),
        "order": args.order,
        "parity": parity.value,
        "permutation": args.index,
        "trivial_zero": piv.trivial_zero,
        "max_residual": max_res,
        "poles": [float(p) for p in poles],
    }
    _write_text(args.out + ".json", json.dumps(sidecar, indent=1, sort_keys=True) + "\n")
    return EXIT_OK


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------

def cmd_verify(args) -> int:
    checks = verify.suite(args.suite)
    report = {
        "suite": args.suite,
        "checks": [dataclasses.asdict(c) for c in checks],
        "n_checks": len(checks),
        "n_failed": sum(not c.passed for c in checks),
        "all_passed": all(c.passed for c in checks),
    }
    text = json.dumps(report, indent=1, sort_keys=True) + "\n"
    if args.out:
        _write_text(args.out, text)
    else:
        sys.stdout.write(text)
    for c in checks:
        if not c.passed:
            print(f"FAIL {c.name}: measured {c.measured:.3e} > {c.threshold:.3e}",
                  file=sys.stderr)
    return EXIT_OK if report["all_passed"] else EXIT_VERIFY_FAILED


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="truncosc",
        description="Darboux partners of the half-line oscillator and Painleve IV data",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("potential", help="partner potential and eigenfunctions")
    p.add_argument("--case", choices=_CASE_NAMES, required=True)
    p.add_argument("--eps1", type=float, default=None)
    p.add_argument("--eps2", type=float, default=None)
    p.add_argument("--grid-n", type=int, default=1200)
    p.add_argument("--grid-l", type=float, default=12.0)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out", required=True)
    p.set_defaults(fn=cmd_potential)

    p = sub.add_parser("piv", help="Painleve IV solution g(x) with residual")
    p.add_argument("--order", type=int, choices=(1, 2), required=True)
    p.add_argument("--parity", choices=("Odd", "Even"), required=True)
    p.add_argument("--index", type=int, choices=(1, 2, 3), required=True)
    p.add_argument("--eps1", type=float, required=True)
    p.add_argument("--grid-n", type=int, default=1200)
    p.add_argument("--grid-l", type=float, default=6.0)
    p.add_argument("--format", choices=("csv",), default="csv")
    p.add_argument("--out", required=True)
    p.set_defaults(fn=cmd_piv)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("suite", choices=verify.SUITE_NAMES)
    p.add_argument("--out", default=None)
    p.set_defaults(fn=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "potential" and args.case != "V0" and args.eps1 is None:
        print("rejected: --eps1 is required for transformation cases", file=sys.stderr)
        return EXIT_REJECTED
    try:
        return args.fn(args)
    except OrderingError as exc:
        print(f"rejected: {exc}", file=sys.stderr)
        return EXIT_REJECTED
    except SingularityError as exc:
        print(f"rejected: {exc}", file=sys.stderr)
        return EXIT_REJECTED


if __name__ == "__main__":
    sys.exit(main())
