"""Command-line front end.

Exit codes: 0 success / feasible, 1 mathematically infeasible or failed
verification, 2 invalid input.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import serialize as ser
from .block import block_spectrum
from .guo import (DEFAULT_CAP, EXHAUSTIVE_MAX_SLOTS, InvalidEigenMatrix, construct_block,
                  guo_index_block, phi)
from .oracle import brute_force_threshold, verify_spectrum
from .spectra import niep_diagnostics
from .worked_examples import EXAMPLES, all_ok, run_example
from .xlike import (EXHAUSTIVE_MAX_TAIL, guo_bound, guo_index_xlike_closed,
                    guo_index_xlike_exhaustive, per_x, xlike_feasible)

EXIT_OK, EXIT_INFEASIBLE, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def _load(path: str | None):
    try:
        text = sys.stdin.read() if path in (None, "-") else open(path).read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc


def _emit(payload, args):
    text = ser.render_table(payload) if args.format == "table" else ser.dumps(payload)
    if args.output in (None, "-"):
        print(text)
    else:
        with open(args.output, "w") as fh:
            fh.write(text + "\n")


def cmd_realize_xlike(args) -> int:
    doc = _load(args.input)
    try:
        lam = ser.parse_real_entries(doc)
    except (ValueError, TypeError, KeyError) as exc:
        raise InputError(str(exc)) from exc
    if lam.size < 2:
        raise InputError("list must have at least 2 entries")
    feas = xlike_feasible(lam)
    x = feas.witness if feas.feasible else feas.x
    X = per_x(x)
    ver = verify_spectrum(X, lam, args.tol)
    out = {
        "x": x,
        "feasible": feas.feasible,
        "binding_value": feas.binding_value,
        "matrix": ser.matrix_json(X),
        "verification": ver,
    }
    if not feas.feasible:
        i = int(np.argmin(feas.x))
        out["violation"] = {"index": i, "value": feas.x[i]}
    _emit(out, args)
    if not ver.passed:
        return EXIT_INFEASIBLE
    return EXIT_OK if feas.feasible else EXIT_INFEASIBLE


def cmd_guo_xlike(args) -> int:
    doc = _load(args.input)
    key = "tail" if isinstance(doc, dict) and "tail" in doc else "entries"
    try:
        tail = ser.parse_real_entries(doc, key)
    except (ValueError, TypeError, KeyError) as exc:
        raise InputError(str(exc)) from exc
    closed = guo_index_xlike_closed(tail)
    searched = guo_index_xlike_exhaustive(tail) if tail.size <= EXHAUSTIVE_MAX_TAIL else None
    bound = guo_bound(tail)
    lo = float(np.abs(tail).max())
    bisected = brute_force_threshold(
        lambda v: xlike_feasible(np.concatenate([[v], tail])).feasible, lo, max(lo, bound))
    out = {
        "n": tail.size + 1,
        "guo_index": closed,
        "closed_form": closed,
        "exhaustive": searched,
        "bisection": bisected,
        "bound": bound,
    }
    if bound == 0:
        out["note"] = "all-zero tail: index and bound are both 0"
    if searched is not None and abs(searched - closed) > 1e-9 * max(1.0, bound):
        out["note"] = "permutation search disagrees with closed form"
        _emit(out, args)
        return EXIT_INFEASIBLE
    _emit(out, args)
    return EXIT_OK


def _eigen_matrix(args):
    doc = _load(args.input)
    try:
        return ser.parse_eigen_matrix(doc)
    except InvalidEigenMatrix as exc:
        raise InputError(f"invalid eigenvalue matrix ({exc.invariant}): {exc}") from exc
    except (ValueError, TypeError, KeyError) as exc:
        raise InputError(f"invalid eigenvalue matrix: {exc}") from exc


def cmd_build_block(args) -> int:
    E = _eigen_matrix(args)
    try:
        E.validate(strict=True)
        report = phi(E)
    except InvalidEigenMatrix as exc:
        raise InputError(f"invalid eigenvalue matrix ({exc.invariant}): {exc}") from exc
    res = construct_block(E)
    out = {"threshold": report, "perron": E.perron, "L": res.L, "feasible": res.feasible}
    if not res.feasible:
        k, j = res.violation_index
        out["violation"] = {"k": k, "j": j, "value": res.min_entry}
        _emit(out, args)
        return EXIT_INFEASIBLE
    A = res.assembly.materialize().real
    ver = verify_spectrum(A, E.multiset(), args.tol)
    out["assembly"] = ser.assembly_json(res.assembly)
    out["block_spectrum"] = ser.spectrum_json(block_spectrum(res.assembly))
    out["matrix"] = ser.matrix_json(A)
    out["verification"] = ver
    _emit(out, args)
    return EXIT_OK if ver.passed else EXIT_INFEASIBLE


def cmd_guo_block(args) -> int:
    E = _eigen_matrix(args)
    try:
        E.validate(strict=False)
        if args.mode == "exhaustive" and E.n * E.m - 1 > EXHAUSTIVE_MAX_SLOTS:
            raise InputError(f"exhaustive mode needs n*m - 1 <= {EXHAUSTIVE_MAX_SLOTS}; use --mode generators")
        report = guo_index_block(E, args.mode, args.cap)
    except InvalidEigenMatrix as exc:
        raise InputError(f"invalid eigenvalue matrix ({exc.invariant}): {exc}") from exc
    witness = report.arrangement.apply(E).with_perron(report.phi)
    out = {"report": report, "witness": witness}
    if E.m == 1 and E.n > 1:
        tail = E.entries[1:, 0].real
        out["xlike"] = {"closed_form": guo_index_xlike_closed(tail), "bound": guo_bound(tail)}
    _emit(out, args)
    return EXIT_OK if report.verified else EXIT_INFEASIBLE


def cmd_verify(args) -> int:
    doc = _load(args.input)
    try:
        A = ser.parse_matrix(doc["matrix"] if "matrix" in doc else doc)
        claimed = ser.parse_entries(doc, "claimed")
        ver = verify_spectrum(A, claimed, args.tol)
    except (ValueError, TypeError, KeyError) as exc:
        raise InputError(str(exc)) from exc
    _emit({"verification": ver}, args)
    return EXIT_OK if ver.passed else EXIT_INFEASIBLE


def cmd_diagnose(args) -> int:
    doc = _load(args.input)
    try:
        lam = ser.parse_entries(doc)
    except (ValueError, TypeError, KeyError) as exc:
        raise InputError(str(exc)) from exc
    rep = niep_diagnostics(lam, args.k_max, args.m_max)
    _emit(rep, args)
    return EXIT_OK if rep.passed else EXIT_INFEASIBLE


def cmd_paper_examples(args) -> int:
    ids = [args.id] if args.id else sorted(EXAMPLES)
    ok = True
    results = {}
    for i in ids:
        ex = EXAMPLES[i]
        checks = run_example(ex, args.tol)
        ok &= all_ok(checks)
        results[f"example {i}"] = {"checks": checks, "notes": ex.notes, "passed": all_ok(checks)}
    if args.format == "table":
        lines = []
        for name, res in results.items():
            lines.append(f"== {name}: {'PASS' if res['passed'] else 'FAIL'}")
            for c in res["checks"]:
                tag = {"match": "match", "erratum": "ERRATUM", "oracle": "oracle"}[c.kind]
                lines.append(f"  [{'ok' if c.ok else 'FAIL'}] {tag:7s} {c.name}: {c.detail}")
            for note in res["notes"]:
                lines.append(f"  note: {note}")
        text = "\n".join(lines)
        if args.output in (None, "-"):
            print(text)
        else:
            with open(args.output, "w") as fh:
                fh.write(text + "\n")
    else:
        _emit(results, args)
    return EXIT_OK if ok else EXIT_INFEASIBLE


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-i", "--input", help="input JSON file (default: stdin)")
    common.add_argument("-o", "--output", help="output file (default: stdout)")
    common.add_argument("--tol", type=float, default=1e-8, help="spectrum verification tolerance (default 1e-8)")
    common.add_argument("--format", choices=("json", "table"), default="json")

    parser = argparse.ArgumentParser(prog="guoindex", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("realize-xlike", parents=[common], help="X-like matrix with a given real spectrum") \
        .set_defaults(func=cmd_realize_xlike)
    sub.add_parser("guo-xlike", parents=[common], help="least Perron value for an X-like list") \
        .set_defaults(func=cmd_guo_xlike)
    sub.add_parser("build-block", parents=[common], help="block X-like matrix with circulant blocks") \
        .set_defaults(func=cmd_build_block)
    p = sub.add_parser("guo-block", parents=[common], help="least Perron value over admissible rearrangements")
    p.add_argument("--mode", choices=("exhaustive", "generators"), default="exhaustive")
    p.add_argument("--cap", type=int, default=DEFAULT_CAP, help=f"max arrangements visited (default {DEFAULT_CAP})")
    p.set_defaults(func=cmd_guo_block)
    sub.add_parser("verify", parents=[common], help="check a claimed spectrum of a matrix") \
        .set_defaults(func=cmd_verify)
    p = sub.add_parser("diagnose", parents=[common], help="necessary conditions for a list")
    p.add_argument("--k-max", type=int, default=4)
    p.add_argument("--m-max", type=int, default=4)
    p.set_defaults(func=cmd_diagnose)
    p = sub.add_parser("paper-examples", parents=[common], help="check the four bundled worked examples")
    p.add_argument("--id", type=int, choices=sorted(EXAMPLES))
    p.set_defaults(func=cmd_paper_examples)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    if args.tol <= 0:
        print("error: --tol must be positive", file=sys.stderr)
        return EXIT_INPUT
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
