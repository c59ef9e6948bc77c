"""
Command-line interface

    superparametric sample    --dist bimodal --m 180 --seed 7 --out s.txt
    superparametric fit       --in s.txt --method pbezier --out model.json
    superparametric plotdata  --model model.json --truth bimodal --out grid.tsv
    superparametric bench     --dist exponential --method bezier --m 30 180 --seeds 20
    superparametric partition --in s.txt

Exit codes: 0 success, 1 usage, 2 data error, 3 solver non-convergence.
Results go to stdout or --out; diagnostics go to stderr.
"""
import argparse
import sys
from typing import List, Optional

from pydantic import ValidationError

from ..basis.window_basis import BasisFamily
from ..config.logger import logger, set_level
from ..config.settings import DEFAULT_BENCH_WORKERS, SolverConfig, validate_config
from ..estimator.density import log_likelihood
from ..estimator.graph import fit
from ..exceptions import ConvergenceError, SuperParametricError
from ..formats.model_file import read_model, write_model
from ..formats.tables import DEFAULT_GRID_ROWS, partition_table, plot_grid, write_tsv
from ..partition.domain_partition import partition
from ..sampling.sample_lab import SampleSet, SampleSource, generate, true_pdf
from .bench import run_bench

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_CONVERGENCE = 3

GENERATED_SOURCES = [s.value for s in SampleSource if s is not SampleSource.FILE]
METHODS = [m.value for m in BasisFamily]

# flag dest -> SolverConfig field
_CONFIG_FLAGS = {
    "degree": "bezier_degree",
    "order": "bspline_order",
    "r": "r",
    "eps": "eps_outer",
    "delta": "delta_inner",
    "min_piece": "min_piece_size",
    "min_gap_ratio": "min_gap_ratio",
    "extend": "extension_fraction",
    "max_outer": "max_outer",
    "max_inner": "max_inner_updates",
    "accelerate": "accelerate_outer",
}


class UsageError(Exception):
    """Arguments that parse but cannot be used together"""


class CliArgumentParser(argparse.ArgumentParser):
    """ArgumentParser that reports usage errors with exit code 1"""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be at least 1, got {value}")
    return value


def nonnegative_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be nonnegative, got {value}")
    return value


def _add_config_flags(parser: argparse.ArgumentParser):
    group = parser.add_argument_group("solver configuration (defaults from SUPERPARAM_* variables)")
    group.add_argument("--degree", type=positive_int, help="Bezier degree n (n+1 windows per piece)")
    group.add_argument("--order", type=positive_int, help="B-spline order k")
    group.add_argument("--r", type=float, help="total coefficient mass bound")
    group.add_argument("--eps", type=float, help="outer termination tolerance")
    group.add_argument("--delta", type=float, help="inner residual tolerance (default 1e-9 * m)")
    group.add_argument("--min-piece", dest="min_piece", type=positive_int,
                       help="smallest partition piece (default max(30, ceil(m/6)))")
    group.add_argument("--min-gap-ratio", dest="min_gap_ratio", type=float,
                       help="accepted gaps must exceed this multiple of the median gap (0 disables)")
    group.add_argument("--extend", type=float, help="domain extension as a fraction of the sample range")
    group.add_argument("--max-outer", dest="max_outer", type=positive_int, help="outer iteration budget")
    group.add_argument("--max-inner", dest="max_inner", type=positive_int, help="inner update budget per solve")
    group.add_argument("--no-accelerate", dest="accelerate", action="store_const", const=False,
                       help="run the plain outer alternation without extrapolation")


def build_parser() -> CliArgumentParser:
    parser = CliArgumentParser(
        prog="superparametric",
        description="Super-parametric maximum-likelihood density estimation",
    )
    parser.add_argument("--log-level", default=None, help="DEBUG, INFO, WARNING or ERROR (default LOG_LEVEL)")
    commands = parser.add_subparsers(dest="command", metavar="COMMAND", required=True)

    sample = commands.add_parser("sample", help="draw seeded samples from an example distribution")
    sample.add_argument("--dist", required=True, choices=GENERATED_SOURCES)
    sample.add_argument("--m", required=True, type=positive_int, help="number of samples")
    sample.add_argument("--seed", default=0, type=nonnegative_int)
    sample.add_argument("--out", default="-", help="sample file (default stdout)")
    sample.set_defaults(handler=cmd_sample)

    fit_cmd = commands.add_parser("fit", help="fit a density to a sample file")
    fit_cmd.add_argument("--in", dest="in_path", required=True, help="sample file, one decimal per line")
    fit_cmd.add_argument("--method", default=BasisFamily.BEZIER.value, choices=METHODS)
    fit_cmd.add_argument("--out", required=True, help="model file to write")
    _add_config_flags(fit_cmd)
    fit_cmd.set_defaults(handler=cmd_fit)

    plot = commands.add_parser("plotdata", help="tabulate a fitted density on a grid")
    plot.add_argument("--model", required=True, help="model file written by fit")
    plot.add_argument("--truth", choices=GENERATED_SOURCES, help="add the exact density of this distribution")
    plot.add_argument("--grid", default=DEFAULT_GRID_ROWS, type=positive_int, help="number of grid rows")
    plot.add_argument("--cdf", action="store_true", help="add a cumulative distribution column")
    plot.add_argument("--out", default="-", help="TSV file (default stdout)")
    plot.set_defaults(handler=cmd_plotdata)

    bench = commands.add_parser("bench", help="L1 error and likelihood over sample sizes and seeds")
    bench.add_argument("--dist", required=True, choices=GENERATED_SOURCES)
    bench.add_argument("--method", default=BasisFamily.BEZIER.value, choices=METHODS)
    bench.add_argument("--m", dest="m_list", required=True, nargs="+", type=positive_int)
    bench.add_argument("--seeds", default=20, type=positive_int, help="seeds 0..N-1 per sample size")
    bench.add_argument("--workers", default=DEFAULT_BENCH_WORKERS, type=positive_int)
    bench.add_argument("--out", default="-", help="TSV file (default stdout)")
    _add_config_flags(bench)
    bench.set_defaults(handler=cmd_bench)

    part = commands.add_parser("partition", help="split a sample file at large gaps")
    part.add_argument("--in", dest="in_path", required=True)
    part.add_argument("--min-piece", dest="min_piece", type=positive_int)
    part.add_argument("--min-gap-ratio", dest="min_gap_ratio", type=float)
    part.add_argument("--out", default="-", help="TSV file (default stdout)")
    part.set_defaults(handler=cmd_partition)

    return parser


def config_from_args(args: argparse.Namespace) -> SolverConfig:
    """SolverConfig with every given flag overriding its environment default."""
    overrides = {
        field: getattr(args, flag)
        for flag, field in _CONFIG_FLAGS.items()
        if getattr(args, flag, None) is not None
    }
    try:
        return SolverConfig(**overrides)
    except ValidationError as e:
        problems = "; ".join(f"{'.'.join(map(str, err['loc']))}: {err['msg']}" for err in e.errors())
        raise UsageError(f"invalid solver configuration: {problems}") from e


def cmd_sample(args: argparse.Namespace) -> int:
    samples = generate(args.dist, args.m, args.seed)
    if args.out == "-":
        sys.stdout.write("".join(f"{float(x)!r}\n" for x in samples.values))
    else:
        samples.write(args.out)
        logger.info(f"Wrote {samples.size} {args.dist} samples (seed {args.seed}) to {args.out}")
    return EXIT_OK


def cmd_fit(args: argparse.Namespace) -> int:
    config = config_from_args(args)
    method = BasisFamily(args.method)
    samples = SampleSet.from_file(args.in_path)
    if method is BasisFamily.BSPLINE and samples.size - 1 < config.bspline_order:
        raise UsageError(f"B-splines of order {config.bspline_order} need at least "
                         f"{config.bspline_order + 1} samples, {args.in_path} has {samples.size}")

    est = fit(samples, method, config)
    write_model(est, args.out)

    report = est.fit_report
    print(
        f"method={method.value}\twindows={est.basis.window_count}\tpieces={len(est.basis.pieces)}"
        f"\touter={report.outer_iterations}\tuv_sum={report.final_uv_sum!r}"
        f"\tloglik={log_likelihood(est, samples)!r}\tterminated_by={report.terminated_by.value}"
    )
    return EXIT_OK


def cmd_plotdata(args: argparse.Namespace) -> int:
    est = read_model(args.model)
    truth = true_pdf(args.truth) if args.truth else None
    write_tsv(plot_grid(est, args.grid, truth, include_cdf=args.cdf), args.out)
    return EXIT_OK


def cmd_bench(args: argparse.Namespace) -> int:
    config = config_from_args(args)
    table = run_bench(args.dist, args.method, args.m_list, range(args.seeds), config, args.workers)
    write_tsv(table, args.out)
    return EXIT_OK


def cmd_partition(args: argparse.Namespace) -> int:
    config = config_from_args(args)
    samples = SampleSet.from_file(args.in_path)
    result = partition(samples, config)
    for lo, hi in result.removed_gaps:
        logger.info(f"Removed gap ({lo!r}, {hi!r})")
    write_tsv(partition_table(result), args.out)
    return EXIT_OK


def main(argv: Optional[List[str]] = None) -> int:
    """Entry point; returns the process exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_OK

    if args.log_level:
        set_level(logger, args.log_level)

    try:
        validate_config()
        return args.handler(args)
    except UsageError as e:
        parser.print_usage(sys.stderr)
        print(f"{parser.prog}: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except EnvironmentError as e:
        # also OSError: unreadable or unwritable paths
        logger.error(str(e))
        return EXIT_DATA
    except ConvergenceError as e:
        logger.error(f"Solver did not converge: {e}")
        if e.report is not None:
            print(e.report.model_dump_json(indent=2), file=sys.stderr)
        return e.exit_code
    except SuperParametricError as e:
        logger.error(str(e))
        return e.exit_code


if __name__ == "__main__":
    sys.exit(main())
