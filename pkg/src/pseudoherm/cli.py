"""Command line front end.

Usage::

    pseudoherm analyze matrix.json --format markdown
    pseudoherm analyze matrix.json --metric eta.json --ordering 1,0
    pseudoherm batch a.json b.json --jobs 4
    pseudoherm check --seed 3 --count 20
    pseudoherm export I1 --param r=2 -o i1.json

Exit codes: 0 success, 2 usage, 3 parse error, 4 spectral failure,
5 metric failure, 6 symmetry-suite failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from .analysis import AnalysisOptions, analyze, emit_report
from .core import DEFAULT_TOL, Tolerance
from .errors import ParseError, PseudoHermError
from .matrixio import parse_matrix_file, write_fixture

EXIT_OK = 0
EXIT_INTERNAL = 1
EXIT_USAGE = 2
EXIT_PARSE = 3
EXIT_SPECTRAL = 4
EXIT_METRIC = 5
EXIT_SUITE = 6

STAGE_EXIT = {
    "spectral": EXIT_SPECTRAL,
    "metric": EXIT_METRIC,
    "suite": EXIT_SUITE,
    "internal": EXIT_INTERNAL,
}

TOL_ENV = "PSEUDOHERM_TOL"

EXIT_HELP = ("exit codes: 0 success, 2 usage, 3 parse error, 4 spectral failure, "
             "5 metric failure, 6 symmetry-suite failure")


def parse_tolerance(text):
    """``"ABS"`` or ``"ABS,REL"``."""
    parts = [p.strip() for p in str(text).split(",")]
    if not 1 <= len(parts) <= 2:
        raise ValueError(f"bad tolerance {text!r}")
    vals = [float(p) for p in parts]
    return Tolerance(vals[0], vals[1] if len(vals) == 2 else DEFAULT_TOL.rel)


def resolve_tolerance(flag_value, environ=None):
    environ = os.environ if environ is None else environ
    if flag_value is not None:
        return parse_tolerance(flag_value)
    if environ.get(TOL_ENV):
        return parse_tolerance(environ[TOL_ENV])
    return DEFAULT_TOL


def exit_code(report):
    if report.ok:
        return EXIT_OK
    return STAGE_EXIT[report.failed_stage]


def _options(args, mf, tol):
    eta = mf.eta
    if args.metric:
        other = parse_matrix_file(args.metric)
        eta = other.eta if other.eta is not None else other.H
        if eta.shape != mf.H.shape:
            raise ParseError(f"metric is {eta.shape[0]}x{eta.shape[0]}, H is {mf.n}x{mf.n}",
                             args.metric)
    ordering = None
    if args.ordering:
        try:
            ordering = tuple(int(k) for k in args.ordering.split(","))
        except ValueError as exc:
            raise ParseError(f"bad ordering {args.ordering!r}", "--ordering") from exc
    phases = mf.phases if args.phases == "file" else None
    return AnalysisOptions(tol=tol, eta=eta, ordering=ordering, phases=phases,
                           conjugate_pairs=args.conjugate_pairs, seed=args.seed)


def run_file(path, args, tol):
    """Analyze one file; returns ``(exit_code, rendered_text, report_or_None)``."""
    try:
        mf = parse_matrix_file(path)
        opts = _options(args, mf, tol)
    except ParseError as exc:
        return EXIT_PARSE, json.dumps({"error": {"stage": "parse", "type": type(exc).__name__,
                                                 "message": str(exc)}}), None
    report = analyze(mf.H, opts)
    return exit_code(report), emit_report(report, args.format), report


def cmd_analyze(args, tol):
    code, text, _ = run_file(args.file, args, tol)
    _write(text, args.output)
    if code == EXIT_PARSE:
        print(json.loads(text)["error"]["message"], file=sys.stderr)
    return code


def cmd_batch(args, tol):
    with ThreadPoolExecutor(max_workers=max(1, args.jobs)) as pool:
        results = list(pool.map(lambda p: run_file(p, args, tol), args.files))
    codes = [c for c, _, _ in results]
    if args.format == "json":
        merged = {p: json.loads(t) for p, (_, t, _) in zip(args.files, results)}
        _write(json.dumps(merged, indent=2), args.output)
    else:
        _write("\n".join(f"<!-- {p} -->\n{t}" for p, (_, t, _) in zip(args.files, results)),
               args.output)
    nonzero = [c for c in codes if c]
    return max(nonzero) if nonzero else EXIT_OK


def cmd_check(args, tol):
    """Seeded random suites: prints one line per instance."""
    from .fixtures import random_real_spectrum

    rng = np.random.default_rng(args.seed)
    failures = 0
    for k in range(args.count):
        n = int(rng.integers(2, args.n_max + 1))
        seed = int(rng.integers(0, 2**31))
        H, _, _ = random_real_spectrum(n, seed)
        report = analyze(H, AnalysisOptions(tol=tol, seed=args.seed))
        ok = report.ok
        failures += not ok
        print(f"{'PASS' if ok else 'FAIL'} instance={k} n={n} seed={seed}")
    return EXIT_OK if failures == 0 else EXIT_SUITE


def cmd_export(args, tol):
    from . import fixtures

    builders = {
        "I1": fixtures.fixture_I1,
        "I2": fixtures.fixture_I2,
        "eq3": fixtures.family_eq3,
        "eq23": fixtures.family_eq23,
        "eq28": fixtures.family_eq28,
    }
    params = {}
    for item in args.param or []:
        key, _, value = item.partition("=")
        params[key] = complex(value) if "j" in value else float(value)
    fx = builders[args.fixture](**params)
    write_fixture(args.output, fx, include_metric=not args.no_metric,
                  include_phases=not args.no_phases)
    return EXIT_OK


def _write(text, path):
    if path:
        with open(path, "w") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="pseudoherm",
        description="Analyze complex square matrices for pseudo-Hermiticity",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog=EXIT_HELP,
    )
    parser.add_argument("--tol", help="ABS or ABS,REL tolerance (overrides $PSEUDOHERM_TOL)")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--metric", help="matrix file holding the fundamental metric")
        p.add_argument("--ordering", help="comma-separated eigenvalue permutation, e.g. 1,0")
        p.add_argument("--phases", choices=("auto", "file"), default="file",
                       help="use the phases stored in the matrix file or the automatic convention")
        p.add_argument("--conjugate-pairs", action="store_true",
                       help="build the conjugate-pair metric for all-complex spectra")
        p.add_argument("--format", choices=("json", "markdown"), default="json")
        p.add_argument("--seed", type=int, default=0, help="seed for the metric search")
        p.add_argument("-o", "--output", help="write the report here instead of stdout")

    p = sub.add_parser("analyze", help="analyze one matrix file")
    p.add_argument("file")
    common(p)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("batch", help="analyze several files concurrently")
    p.add_argument("files", nargs="+")
    p.add_argument("--jobs", type=int, default=4)
    common(p)
    p.set_defaults(func=cmd_batch)

    p = sub.add_parser("check", help="run the pipeline on seeded random real-spectrum matrices")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=20)
    p.add_argument("--n-max", type=int, default=6)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("export", help="write a built-in example to a matrix file")
    p.add_argument("fixture", choices=("I1", "I2", "eq3", "eq23", "eq28"))
    p.add_argument("--param", action="append", help="KEY=VALUE, repeatable")
    p.add_argument("--no-metric", action="store_true")
    p.add_argument("--no-phases", action="store_true")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_export)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        tol = resolve_tolerance(args.tol)
    except ValueError as exc:
        parser.error(str(exc))
    try:
        return args.func(args, tol)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except PseudoHermError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
