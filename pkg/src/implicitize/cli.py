"""Command-line front end.

    implicitize implicitize problem.json [--json] [--mu M] [--method det|fitting|both]
    implicitize analyze problem.json
    implicitize verify problem.json --candidate "x*z - y^2"
    implicitize export-matrix problem.json --out DIR

A problem is a JSON document (path, or ``-`` for stdin), or given inline as
``--source s,t --target x,y,z "s^2" "s*t" "t^2"``.

Exit codes: 0 success, 1 candidate does not vanish (verify only),
2 input error, 3 degenerate or non-acyclic piece, 4 internal inconsistency.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from .errors import ImplicitizationError, InputError
from .linalg import to_tsv
from .pipeline import build_problem_piece, export_matrices, run_analyze, run_implicitize, run_verify
from .problem import METHODS, ProblemInput, make_problem, parse_input

EXIT_OK = 0
EXIT_NOT_VERIFIED = 1


def _add_problem_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("inputs", nargs="*", metavar="INPUT",
                   help="JSON problem file ('-' for stdin), or the maps themselves when --source is given")
    p.add_argument("--source", help="source variables, e.g. 'a,b,c' (inline mode)")
    p.add_argument("--target", help="target variables, default x,y,z,t or T0..Tn")
    p.add_argument("--mu", type=int, help="override the source degree of the graded piece")
    p.add_argument("--method", choices=METHODS, help="determinant of the complex, Fitting gcd, or both")
    p.add_argument("--seed", type=int, help="seed for minor selection (default 0)")
    p.add_argument("--prime", type=int, help="prime for modular rank checks (default 2^61-1)")
    p.add_argument("--json", action="store_true", help="machine-readable output")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="implicitize", description="Implicit equations of rational hypersurfaces.")
    parser.add_argument("-v", "--verbose", action="count", default=0)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("implicitize", help="compute the determinant of the graded Z-complex piece")
    _add_problem_args(p)
    p.add_argument("--assume-birational-lci", action="store_true",
                   help="assert the map is birational and the base locus lci; label D as the implicit equation")
    p.add_argument("--export-matrices", metavar="DIR", help="also write the d^T matrices as TSV")
    p.add_argument("--timings", action="store_true", help="include wall-clock timings (breaks byte-identity)")

    p = sub.add_parser("analyze", help="base-locus analysis only")
    _add_problem_args(p)

    p = sub.add_parser("verify", help="check that a candidate vanishes on the parametrization")
    _add_problem_args(p)
    p.add_argument("--candidate", required=True, help="polynomial in the target variables")

    p = sub.add_parser("export-matrix", help="write the d^T matrices of the graded piece")
    _add_problem_args(p)
    p.add_argument("--out", metavar="DIR", help="directory for d{p}_mu{mu}.tsv (default: print)")
    return parser


def load_problem(args: argparse.Namespace, stdin=None) -> ProblemInput:
    if args.source is not None:
        if not args.inputs:
            raise InputError("inline mode needs the maps as positional arguments")
        problem = make_problem(args.source, args.inputs, args.target)
    else:
        if len(args.inputs) != 1:
            raise InputError("expected one problem file (or '-'), or --source with inline maps")
        path = args.inputs[0]
        if path == "-":
            text = (stdin or sys.stdin).read()
        else:
            try:
                text = Path(path).read_text()
            except OSError as exc:
                raise InputError(f"cannot read {path}: {exc.strerror}") from None
        problem = parse_input(text)
        if args.target is not None:
            problem = make_problem(problem.source_vars, problem.maps, args.target, problem.options)
    overrides = {k: getattr(args, k) for k in ("mu", "method", "seed", "prime") if getattr(args, k, None) is not None}
    if getattr(args, "assume_birational_lci", False):
        overrides["assume_birational_lci"] = True
    if overrides:
        problem = problem.with_options(**overrides)
    return problem


def _emit(obj, as_json: bool, out) -> None:
    if as_json:
        out.write(json.dumps(obj.to_dict(), indent=2, sort_keys=True) + "\n")
    else:
        out.write(obj.to_text() if hasattr(obj, "to_text") else _analyze_text(obj))


def _analyze_text(report) -> str:
    lines = [
        f"base locus   : {report.dim_class.value}",
        f"degree       : {report.degree if report.degree is not None else '-'}",
        f"epsilon_X    : {report.epsilon if report.epsilon is not None else '-'}",
        f"mu           : {report.mu}",
        f"dims I_e     : {report.ideal_dims}",
        f"dims I^sat_e : {report.saturation_dims}",
        f"hilbert      : {report.hilbert}",
    ]
    lines += [f"warning      : {w}" for w in report.warnings]
    return "\n".join(lines) + "\n"


def _dispatch(args, out, stdin) -> int:
    problem = load_problem(args, stdin)
    if args.command == "implicitize":
        report = run_implicitize(problem, timings=args.timings, export_dir=args.export_matrices)
        _emit(report, args.json, out)
        return EXIT_OK if report.verified else 4
    if args.command == "analyze":
        _emit(run_analyze(problem), args.json, out)
        return EXIT_OK
    if args.command == "verify":
        result = run_verify(problem, args.candidate)
        _emit(result, args.json, out)
        return EXIT_OK if result.vanishes else EXIT_NOT_VERIFIED
    if args.command == "export-matrix":
        piece = build_problem_piece(problem)
        if args.out:
            for path in export_matrices(piece, args.out):
                out.write(f"{path}\n")
        else:
            for p, M in enumerate(piece.matrices, start=1):
                out.write(f"# d{p} mu={piece.mu} {M.nrows}x{M.ncols}\n{to_tsv(M)}")
        return EXIT_OK
    raise AssertionError(args.command)


def main(argv=None, out=None, err=None, stdin=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    logging.basicConfig(level=logging.WARNING - 10 * min(args.verbose, 2), format="%(name)s: %(message)s")
    try:
        return _dispatch(args, out, stdin)
    except ImplicitizationError as exc:
        err.write(f"error: {exc}\n")
        if exc.hint:
            err.write(f"hint: {exc.hint}\n")
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
