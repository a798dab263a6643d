"""Command-line front end: ``solve``, ``bench`` and ``gen``.

Exit codes: 0 success, 1 usage error, 2 numerical failure, 3 I/O error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass

import numpy as np

from .baselines import banded_lu_solve, densify, plu_solve
from .bench import TEST_PARAMS, normalize_test_id, render_table, run_suite, true_solution
from .core import MIN_FAST_N, Method, matvec, new_penta, solve_fast
from .exceptions import SolverError, UnsupportedSizeError
from .vecio import format_vector, read_vector

__all__ = ["CliConfig", "UsageError", "parse_args", "run", "main"]

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_NUMERIC = 2
EXIT_IO = 3

BAND_FLAGS = (("sigma", "--sigma"), ("lam", "--lambda"), ("alpha", "--alpha"),
              ("beta", "--beta"), ("gamma", "--gamma"))


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class CliConfig:
    subcommand: str
    n: int | None = None
    sigma: float | None = None
    lam: float | None = None
    alpha: float | None = None
    beta: float | None = None
    gamma: float | None = None
    method: Method = Method.FAST
    # ("file", path) | ("ones", None) | ("random", seed)
    rhs_source: tuple | None = None
    output: str | None = None
    format: str = "text"
    tests: tuple[str, ...] = ()
    sizes: tuple[int, ...] = ()
    reps: int = 10
    seed: int = 0
    methods: tuple[Method, ...] = ()

    @property
    def bands(self):
        return (self.sigma, self.lam, self.alpha, self.beta, self.gamma)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _int_list(text):
    try:
        return tuple(int(t) for t in text.split(",") if t.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated integer list: {text!r}")


def _name_list(text):
    return tuple(t.strip() for t in text.split(",") if t.strip())


def _add_system_args(p):
    p.add_argument("--n", type=int, help="matrix order")
    p.add_argument("--test", choices=("1", "2", "3"),
                   help="use a preset parameter set; explicit band flags override it")
    for dest, flag in BAND_FLAGS:
        p.add_argument(flag, dest=dest, type=float)
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--rhs-file", metavar="PATH")
    src.add_argument("--rhs-ones", action="store_true")
    src.add_argument("--rhs-random", type=int, metavar="SEED")
    p.add_argument("--out", metavar="PATH", help="output file (default: stdout)")


def _build_parser():
    parser = _Parser(prog="penta-toeplitz",
                     description="Pentadiagonal Toeplitz solver and benchmark.")
    sub = parser.add_subparsers(dest="subcommand", required=True, parser_class=_Parser)

    solve = sub.add_parser("solve", help="solve A x = b")
    _add_system_args(solve)
    solve.add_argument("--method", choices=[m.value for m in Method], default="fast")
    solve.add_argument("--format", choices=("text", "json"), default="text")

    gen = sub.add_parser("gen", help="write b = A x* for the x* chosen by --rhs-*")
    _add_system_args(gen)

    bench = sub.add_parser("bench", help="run the accuracy/timing grid")
    bench.add_argument("--tests", type=_name_list, default=("1", "2", "3"))
    bench.add_argument("--sizes", type=_int_list, default=(128, 256, 512))
    bench.add_argument("--reps", type=int, default=10)
    bench.add_argument("--seed", type=int, default=0)
    bench.add_argument("--methods", type=_name_list, default=("fast", "plu"))
    bench.add_argument("--format", choices=("markdown", "csv"), default="markdown")
    bench.add_argument("--out", metavar="PATH")
    return parser


def parse_args(argv) -> CliConfig:
    """Parse and validate ``argv`` (without the program name).

    Raises
    ------
    UsageError
        With a message naming the offending flag.
    """
    ns = _build_parser().parse_args(list(argv))
    if ns.subcommand == "bench":
        return _bench_config(ns)

    preset = dict(zip(("sigma", "lam", "alpha", "beta", "gamma"),
                      TEST_PARAMS[normalize_test_id(ns.test)])) if ns.test else {}
    bands = {}
    for dest, flag in BAND_FLAGS:
        value = getattr(ns, dest)
        if value is None:
            value = preset.get(dest)
        if value is None:
            raise UsageError(f"missing required parameter {flag} (or use --test)")
        if not math.isfinite(value):
            raise UsageError(f"{flag} must be finite, got {value}")
        bands[dest] = value

    if ns.rhs_file is not None:
        source = ("file", ns.rhs_file)
    elif ns.rhs_ones:
        source = ("ones", None)
    else:
        if ns.rhs_random < 0:
            raise UsageError("--rhs-random: seed must be nonnegative")
        source = ("random", ns.rhs_random)

    if ns.n is None and source[0] != "file":
        raise UsageError("missing required parameter --n")
    if ns.n is not None and ns.n < 1:
        raise UsageError(f"--n must be positive, got {ns.n}")

    method = Method(getattr(ns, "method", "fast"))
    if ns.subcommand == "solve" and method is Method.FAST and ns.n is not None:
        _check_fast_n(ns.n)

    return CliConfig(
        subcommand=ns.subcommand,
        n=ns.n,
        method=method,
        rhs_source=source,
        output=ns.out,
        format=getattr(ns, "format", "text"),
        **bands,
    )


def _check_fast_n(n):
    if n < MIN_FAST_N:
        raise UsageError(f"--n: the fast method requires n >= {MIN_FAST_N}, got {n}")


def _bench_config(ns):
    try:
        tests = tuple(normalize_test_id(t) for t in ns.tests)
        methods = tuple(Method(m) for m in ns.methods)
    except ValueError as exc:
        flag = "--tests" if "test" in str(exc) else "--methods"
        raise UsageError(f"{flag}: {exc}") from None
    if not tests:
        raise UsageError("--tests must name at least one test")
    if not methods:
        raise UsageError("--methods must name at least one method")
    if not ns.sizes or min(ns.sizes) < 1:
        raise UsageError("--sizes must be a nonempty list of positive integers")
    if Method.FAST in methods and min(ns.sizes) < MIN_FAST_N:
        raise UsageError(f"--sizes: the fast method requires n >= {MIN_FAST_N}")
    if ns.reps < 1:
        raise UsageError("--reps must be >= 1")
    if not 0 <= ns.seed < 2**64:
        raise UsageError("--seed must be an unsigned 64-bit integer")
    return CliConfig(
        subcommand="bench",
        output=ns.out,
        format=ns.format,
        tests=tests,
        sizes=tuple(ns.sizes),
        reps=ns.reps,
        seed=ns.seed,
        methods=methods,
    )


def _emit(text, output):
    if output is None:
        sys.stdout.write(text)
    else:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text)


def _source_vector(config):
    kind, value = config.rhs_source
    if kind == "file":
        vec = read_vector(value)
        if config.n is not None and vec.shape[0] != config.n:
            raise UsageError(
                f"--rhs-file: {value} holds {vec.shape[0]} values, expected --n {config.n}"
            )
        return vec
    if kind == "ones":
        return np.ones(config.n)
    return true_solution(config.n, value)


def _run_solve(config):
    b = _source_vector(config)
    n = b.shape[0]
    if config.method is Method.FAST:
        _check_fast_n(n)
    A = new_penta(n, *config.bands)
    if config.method is Method.FAST:
        report = solve_fast(A, b)
    elif config.method is Method.BANDED_LU:
        report = banded_lu_solve(A, b)
    else:
        report = plu_solve(densify(A), b)

    if report.unstable:
        print(f"warning: relative residual {report.relative_residual:.3e} "
              "exceeds the stability threshold", file=sys.stderr)
    if config.format == "json":
        payload = {
            "method": report.method.value,
            "n": n,
            "relative_residual": report.relative_residual,
            "elapsed_seconds": report.elapsed_seconds,
            "unstable": report.unstable,
            "x": report.x.tolist(),
        }
        _emit(json.dumps(payload) + "\n", config.output)
    else:
        summary = (f"{report.method.value}, {n}, {report.relative_residual:.17g}, "
                   f"{report.elapsed_seconds:.6g}")
        _emit(format_vector(report.x, [
            "method, n, relative_residual, elapsed_seconds", summary,
        ]), config.output)


def _run_gen(config):
    x = _source_vector(config)
    A = new_penta(x.shape[0], *config.bands)
    b = matvec(A, x)
    bands = ", ".join(f"{name}={v:g}" for name, v in zip(
        ("sigma", "lambda", "alpha", "beta", "gamma"), config.bands))
    _emit(format_vector(b, [f"b = A x*, n={A.n}, {bands}"]), config.output)


def _run_bench(config):
    table = run_suite(config.tests, config.sizes, config.seed, config.reps, config.methods)
    _emit(render_table(table, config.format), config.output)


def run(config: CliConfig) -> int:
    """Execute a parsed command and return its exit code."""
    handlers = {"solve": _run_solve, "gen": _run_gen, "bench": _run_bench}
    try:
        handlers[config.subcommand](config)
    except (UsageError, UnsupportedSizeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SolverError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


def main(argv=None) -> int:
    try:
        config = parse_args(sys.argv[1:] if argv is None else argv)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return run(config)


if __name__ == "__main__":
    sys.exit(main())
