#
# Cyclotomic cli
# compute, verify, sweep, grid and bench over ternary cyclotomic
# polynomials; reports go to stdout or --out, logs to stderr
#
from __future__ import annotations
import argparse
import logging
import sys
from functools import partial
from pathlib import Path
from typing import List, Optional

# add parent dir
sys.path.insert(0, str(Path(__file__).resolve().parent.parent.parent))

from common.logging_config import setup_logging
from common.config import OUTPUT_FORMATS, AppConfig, load_config

from common.arith import TernaryTriple
from common.benchmark import DEFAULT_POINT_QUERIES, bench_triple, sample_triples
from common.bounds import bound_report
from common.coeffs import coefficient_at, coefficients, extrema, oracle_coefficients
from common.errors import IdentityViolationError, IndexOutOfRangeError, InputError, InvariantError
from common.fkseq import make_context
from common.models import BenchRow, CheckResult, RunConfig, SweepRow, parse_fraction, rational_to_float, rational_to_str
from common.report_writer import render_json, write_rows, write_text
from common.stats import antidiagonal_table, grid_average, grid_density, residue_grid, stronger_count, sweep_density
from common.sweep import enumerate_triples, run_parallel, run_sweep
from common.verification import DEFAULT_SAMPLES, all_passed, merge_results, verify_triple

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VERIFICATION_FAILED = 1
EXIT_INPUT_ERROR = 2

COEFFICIENT_COLUMNS = ["n", "coefficient"]
CHECK_COLUMNS = ["check", "passed", "failed", "first_counterexample"]
GRID_COLUMNS = [
    "p",
    "grid_average",
    "grid_average_float",
    "stronger_count",
    "stronger_expected",
    "pairs",
    "c",
    "empirical_fraction",
    "empirical_fraction_float",
    "closed_form_lower",
    "closed_form_lower_float",
]


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def _int_expr(text: str) -> int:
    # accepts 100000, 10^7 and 10**7
    cleaned = text.replace("**", "^")
    if "^" in cleaned:
        base, _, exponent = cleaned.partition("^")
        return int(base) ** int(exponent)
    return int(cleaned)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cyclotomic", description="Ternary cyclotomic polynomial coefficients")
    sub = parser.add_subparsers(dest="command", required=True)

    output = argparse.ArgumentParser(add_help=False)
    output.add_argument("--format", choices=OUTPUT_FORMATS, default=None)
    output.add_argument("--out", default=None, help="output file, stdout when omitted")

    compute = sub.add_parser("compute", parents=[output], help="dump the coefficients of one polynomial")
    compute.add_argument("primes", type=int, nargs=3, metavar="P")
    compute.add_argument("--method", choices=("oracle", "fk", "both"), default="fk")
    compute.add_argument("--at", type=int, default=None, help="single coefficient index")

    verify = sub.add_parser("verify", parents=[output], help="check every identity and bound against brute force")
    verify.add_argument("primes", type=int, nargs="*", metavar="P")
    verify.add_argument("--sweep", action="store_true")
    verify.add_argument("--pqr-max", type=_int_expr, default=None)
    verify.add_argument("--p-max", type=int, default=None)
    verify.add_argument("--exhaustive", action="store_true")
    verify.add_argument("--seed", type=int, default=None)
    verify.add_argument("--samples", type=_positive_int, default=DEFAULT_SAMPLES)
    verify.add_argument("--workers", type=int, default=None)

    sweep = sub.add_parser("sweep", parents=[output], help="one summary row per triple")
    sweep.add_argument("--pqr-max", type=_int_expr, required=True)
    sweep.add_argument("--p-max", type=int, default=None)
    sweep.add_argument("--timings", action="store_true", help="fill elapsed_ms (output stops being deterministic)")
    sweep.add_argument("--c", type=parse_fraction, action="append", default=[], help="log the share of rows with A < c*p")
    sweep.add_argument("--workers", type=int, default=None)

    grid = sub.add_parser("grid", parents=[output], help="statistics of the residue grid for one p")
    grid.add_argument("p", type=int)
    grid.add_argument("--c", type=parse_fraction, action="append", default=[], help="density threshold, e.g. 2/3")
    grid.add_argument("--full-grid", default=None, metavar="PATH", help="also write every grid entry as csv")
    grid.add_argument("--antidiagonal", action="store_true", help="log the antidiagonal sums")

    bench = sub.add_parser("bench", parents=[output], help="time oracle vs sliding window vs point queries")
    bench.add_argument("primes", type=int, nargs="*", metavar="P")
    bench.add_argument("--pqr-max", type=_int_expr, default=None)
    bench.add_argument("--sample", type=_positive_int, default=5)
    bench.add_argument("--point-queries", type=int, default=DEFAULT_POINT_QUERIES)
    bench.add_argument("--seed", type=int, default=None)
    return parser


class CyclotomicService:
    def __init__(self, config: AppConfig, args: argparse.Namespace):
        self.config = config
        self.args = args
        triple = tuple(args.primes) if getattr(args, "primes", None) else None
        workers = getattr(args, "workers", None)
        seed = getattr(args, "seed", None)
        self.run_config = RunConfig(
            command=args.command,
            triple=triple,
            pqr_limit=getattr(args, "pqr_max", None),
            p_limit=getattr(args, "p_max", None),
            thresholds=list(getattr(args, "c", []) or []),
            output_format=args.format or config.output_format,
            output_path=args.out,
            worker_count=workers if workers is not None else config.workers,
            seed=seed if seed is not None else config.seed,
        )
        logger.debug(f"run config: {self.run_config.to_dict()}")

    def _triple(self) -> TernaryTriple:
        primes = self.run_config.triple
        if primes is None or len(primes) != 3:
            raise InputError(f"expected three primes p q r, got {list(primes or ())}")
        return TernaryTriple.of(*primes)

    def _write(self, rows: List[dict], columns: List[str]) -> None:
        write_rows(rows, columns, self.run_config.output_format, self.run_config.output_path)

    def compute(self) -> int:
        triple = self._triple()
        ctx = make_context(triple)
        method = self.args.method

        if self.args.at is not None:
            n = self.args.at
            if not 0 <= n <= triple.degree:
                raise IndexOutOfRangeError(f"--at {n} outside [0, {triple.degree}] for {triple}")
            if method == "oracle":
                value = oracle_coefficients(triple)[n]
            else:
                value = coefficient_at(ctx, n)
                if method == "both" and value != oracle_coefficients(triple)[n]:
                    raise IdentityViolationError(f"{triple}, n={n}: F_k value {value} disagrees with the oracle")
            self._write([{"n": n, "coefficient": value}], COEFFICIENT_COLUMNS)
            return EXIT_OK

        vector = coefficients(ctx, method=method, chunk_size=self.config.chunk_size)
        summary = extrema(vector)
        report = bound_report(ctx, vector)
        logger.info(
            f"{triple}: deg={triple.degree} A+={summary.a_plus} A-={summary.a_minus} "
            f"A={summary.height} max_jump={summary.max_jump} bound={report.bound_new} tight={report.tight}"
        )

        if self.run_config.output_format == "json":
            payload = {
                "summary": {**summary.to_dict(), **report.to_dict()},
                "coefficients": [int(c) for c in vector.coeffs],
            }
            write_text(render_json(payload), self.run_config.output_path)
        else:
            self._write(vector.to_rows(), COEFFICIENT_COLUMNS)
        return EXIT_OK

    def verify(self) -> int:
        args = self.args
        task = partial(verify_triple, exhaustive=args.exhaustive, seed=self.run_config.seed, samples=args.samples)
        if args.sweep:
            if args.pqr_max is None:
                raise InputError("verify --sweep needs --pqr-max")
            triples = enumerate_triples(args.pqr_max, args.p_max)
            logger.info(f"verifying {len(triples)} triples, seed={self.run_config.seed}, exhaustive={args.exhaustive}")
            per_triple = run_parallel(task, triples, self.run_config.worker_count)
        else:
            triple = self._triple()
            logger.info(f"verifying {triple}, seed={self.run_config.seed}, exhaustive={args.exhaustive}")
            per_triple = [task(triple)]

        results: List[CheckResult] = merge_results(per_triple)
        self._write([result.to_dict() for result in results], CHECK_COLUMNS)

        if all_passed(results):
            logger.info(f"all {len(results)} checks passed")
            return EXIT_OK
        for result in results:
            if result.failed:
                logger.error(f"{result.check}: {result.failed} failure(s), first: {result.first_counterexample}")
        return EXIT_VERIFICATION_FAILED

    def sweep(self) -> int:
        args = self.args
        triples = enumerate_triples(args.pqr_max, args.p_max)
        rows = run_sweep(triples, self.run_config.worker_count, self.config.chunk_size, timed=args.timings)
        for c in self.run_config.thresholds:
            share = sweep_density(rows, c)
            logger.info(f"share of triples with A < {rational_to_str(c)} p: {rational_to_str(share)} ({rational_to_float(share)})")
        self._write([row.to_dict() for row in rows], SweepRow.columns())
        return EXIT_OK

    def grid(self) -> int:
        p = self.args.p
        average = grid_average(p)
        count = stronger_count(p)
        base = {
            "p": p,
            "grid_average": rational_to_str(average),
            "grid_average_float": rational_to_float(average),
            "stronger_count": count,
            "stronger_expected": (p - 3) * (p - 5) // 2,
            "pairs": (p - 1) ** 2,
        }
        rows = [{**base, **grid_density(p, c).to_dict()} for c in self.run_config.thresholds] or [base]
        for row in rows:
            if "c" in row:
                logger.info(f"p={p}, c={row['c']}: fraction {row['empirical_fraction_float']} vs lower {row['closed_form_lower_float']}")
        self._write(rows, GRID_COLUMNS)

        if self.args.full_grid:
            write_rows(residue_grid(p).rows(), ["i", "j", "a"], "csv", self.args.full_grid)
        if self.args.antidiagonal:
            for entry in antidiagonal_table(p):
                logger.info(f"p={p}, k={entry.k}: sum {entry.total}, (p+1)k/2 = {entry.claimed}, off by {entry.discrepancy}")
        return EXIT_OK

    def bench(self) -> int:
        args = self.args
        if args.primes:
            triples = [self._triple()]
        elif args.pqr_max is not None:
            triples = sample_triples(enumerate_triples(args.pqr_max), args.sample, self.run_config.seed)
        else:
            raise InputError("bench needs p q r or --pqr-max")

        rows: List[BenchRow] = []
        for triple in triples:
            rows.extend(bench_triple(triple, point_queries=args.point_queries, seed=self.run_config.seed, chunk_size=self.config.chunk_size))
        self._write([row.to_dict() for row in rows], BenchRow.columns())
        return EXIT_OK

    def run(self) -> int:
        handlers = {
            "compute": self.compute,
            "verify": self.verify,
            "sweep": self.sweep,
            "grid": self.grid,
            "bench": self.bench,
        }
        return handlers[self.args.command]()


def main(argv: Optional[List[str]] = None) -> int:
    setup_logging("cyclotomic")
    args = build_parser().parse_args(argv)
    try:
        config = load_config()
        service = CyclotomicService(config, args)
        return service.run()
    except (InputError, RuntimeError) as e:
        logger.error(f"{e}")
        return EXIT_INPUT_ERROR
    except InvariantError as e:
        logger.error(f"verification failed: {e}")
        return EXIT_VERIFICATION_FAILED


if __name__ == "__main__":
    sys.exit(main())
