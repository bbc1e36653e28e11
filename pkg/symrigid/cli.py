"""!
@file cli.py
@brief Command-line interface for symrigid.

@details
Sub-commands check counts, compare counts with numeric ranks, certify
tight graphs by reduction, export covering frameworks, print gallery
graphs and grow random tight graphs.

@section cli_usage Usage Examples
@code{.bash}
# Is the loop counterexample tight for the rho_4 count?
symrigid check gallery:counterexample-loop --k 8 --spec zkj --j 4

# Counts against numeric ranks for every block
symrigid analyze gallery:counterexample-loop --k 8

# Reduction certificate
symrigid reduce graph.txt --j 2

# Cover of the example framework, as points and bonds
symrigid lift gallery:figure1 --k 6 -o cover.txt

# Gallery listing, then one entry
symrigid gallery
symrigid gallery counterexample-fixed --k 10

# Random tight graph, deterministic in the seed
symrigid random --k 7 --j 2 --steps 4 --seed 1
@endcode

Exit status: 0 success, 1 count/numeric disagreement (analyze) or a
count violation (check), 2 input error, 3 special-case terminal (reduce).

@author symrigid Contributors
@version 0.1.0
"""

from __future__ import annotations

import argparse
import logging
import sys
from typing import Callable, Optional

from symrigid import __version__
from symrigid.analyzer import SymmetryAnalyzer
from symrigid.config import Command, Config, OutputFormat, RunConfig
from symrigid.core.gain_graph import GainGraph
from symrigid.core.gallery import GALLERY_NAMES, describe
from symrigid.core.graph_io import format_graph
from symrigid.counting.sparsity import CapacityError
from symrigid.report.renderer import BaseRenderer, get_renderer

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_DISAGREE = 1
EXIT_INPUT = 2
EXIT_SPECIAL = 3


def _common_options() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--k", type=int, help="Group order (required for gallery: sources)")
    common.add_argument("--j", type=int, help="Representation index")
    common.add_argument("--trials", type=int, help="Sampled configurations (default 20)")
    common.add_argument("--seed", type=int, help="Root seed (default 0)")
    common.add_argument("--cap", type=int, help="Subset enumeration cap (default 22)")
    common.add_argument("--json", action="store_true", help="Output as JSON")
    common.add_argument("--config", metavar="FILE", help="JSON configuration file")
    common.add_argument("-o", "--output", metavar="FILE", help="Write output to file")
    common.add_argument("--debug", action="store_true", help="Log debugging detail to stderr")
    common.add_argument("--verbose", action="store_true", help="Log progress to stderr")
    return common


def create_parser() -> argparse.ArgumentParser:
    """!
    @brief Create the argument parser for the CLI.

    @return Configured ArgumentParser instance
    """
    parser = argparse.ArgumentParser(
        prog="symrigid",
        description="Symmetric infinitesimal rigidity of C_k-symmetric plane frameworks",
    )
    parser.add_argument("-v", "--version", action="version", version=f"%(prog)s {__version__}")

    common = _common_options()
    commands = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    check = commands.add_parser("check", parents=[common], help="Sparsity and tightness counts")
    check.add_argument("source", help="Graph file or gallery:<name>")
    check.add_argument(
        "--spec", action="append", default=[], metavar="COUNT",
        help="plain:m,l | gain:m,l | zkj | zkj:j (repeatable)",
    )

    analyze = commands.add_parser(
        "analyze", parents=[common], help="Counts against numeric ranks, block by block"
    )
    analyze.add_argument("source", help="Graph file or gallery:<name>")
    analyze.add_argument(
        "--numeric-only", action="store_true", help="Skip the combinatorial verdicts"
    )

    reduce = commands.add_parser("reduce", parents=[common], help="Reduction certificate")
    reduce.add_argument("source", help="Graph file or gallery:<name>")

    lift = commands.add_parser("lift", parents=[common], help="Export a symmetric framework")
    lift.add_argument("source", help="Graph file or gallery:<name>")

    gallery = commands.add_parser("gallery", parents=[common], help="List or print gallery graphs")
    gallery.add_argument("name", nargs="?", help="Gallery entry to print")

    random = commands.add_parser("random", parents=[common], help="Grow a random tight graph")
    random.add_argument("--steps", type=int, default=4, help="Extensions to apply (default 4)")
    random.add_argument("--base", default="loop-pair", help="Base shape (default loop-pair)")
    random.add_argument(
        "--fixed", action="store_true", help="Join an isolated fixed vertex to the base"
    )

    return parser


def build_run_config(args: argparse.Namespace) -> RunConfig:
    """!
    @brief Compose defaults, config file, environment and flags, in that order.
    """
    config = Config.from_file(args.config) if args.config else Config()
    config = Config.from_env(config)
    if args.trials is not None:
        config.numeric.trials = args.trials
    if args.seed is not None:
        config.numeric.seed = args.seed
    if args.cap is not None:
        config.counting.subset_cap = args.cap
    if args.json:
        config.output.format = OutputFormat.JSON

    return RunConfig(
        command=Command(args.command),
        source=getattr(args, "source", None) or getattr(args, "name", None),
        k=args.k,
        j=args.j,
        specs=list(getattr(args, "spec", [])),
        steps=getattr(args, "steps", 4),
        base=getattr(args, "base", "loop-pair"),
        with_fixed=getattr(args, "fixed", False),
        output=args.output,
        numeric_only=getattr(args, "numeric_only", False),
        config=config,
    )


def _require(value: Optional[int], flag: str) -> int:
    if value is None:
        raise ValueError(f"{flag} is required")
    return value


def cmd_check(
    run_config: RunConfig, analyzer: SymmetryAnalyzer, renderer: BaseRenderer
) -> tuple[int, str]:
    """!
    @brief Sparsity verdicts; exit 0 iff every requested count is satisfied.
    """
    g = _load(run_config, analyzer)
    verdicts = analyzer.check(g, run_config.specs, run_config.j)
    status = EXIT_OK if all(v.sparse for v in verdicts) else EXIT_DISAGREE
    return status, renderer.render_verdicts(verdicts)


def cmd_analyze(
    run_config: RunConfig, analyzer: SymmetryAnalyzer, renderer: BaseRenderer
) -> tuple[int, str]:
    """!
    @brief Per-block report; exit 0 iff counts and numeric ranks agree.
    """
    g = _load(run_config, analyzer)
    js = None if run_config.j is None else [run_config.j]
    report = analyzer.analyze(g, js, counts=not run_config.numeric_only)
    status = EXIT_OK if report.agree else EXIT_DISAGREE
    return status, renderer.render_report(report)


def cmd_reduce(
    run_config: RunConfig, analyzer: SymmetryAnalyzer, renderer: BaseRenderer
) -> tuple[int, str]:
    g = _load(run_config, analyzer)
    cert = analyzer.reduce(g, _require(run_config.j, "--j"))
    status = EXIT_SPECIAL if cert.special else EXIT_OK
    return status, renderer.render_certificate(cert)


def cmd_lift(
    run_config: RunConfig, analyzer: SymmetryAnalyzer, renderer: BaseRenderer
) -> tuple[int, str]:
    return EXIT_OK, analyzer.lift(_load(run_config, analyzer))


def cmd_gallery(
    run_config: RunConfig, analyzer: SymmetryAnalyzer, renderer: BaseRenderer
) -> tuple[int, str]:
    if run_config.source is None:
        lines = [f"{name}: {describe(name)}" for name in GALLERY_NAMES]
        return EXIT_OK, "\n".join(lines) + "\n"
    g = analyzer.gallery(run_config.source, _require(run_config.k, "--k"))
    return EXIT_OK, format_graph(g)


def cmd_random(
    run_config: RunConfig, analyzer: SymmetryAnalyzer, renderer: BaseRenderer
) -> tuple[int, str]:
    k = _require(run_config.k, "--k")
    j = _require(run_config.j, "--j")
    run_config.validate(k)
    growth = analyzer.random(run_config.base, k, j, run_config.steps, run_config.with_fixed)
    return EXIT_OK, format_graph(growth.graph)


COMMANDS: dict[Command, Callable[..., tuple[int, str]]] = {
    Command.CHECK: cmd_check,
    Command.ANALYZE: cmd_analyze,
    Command.REDUCE: cmd_reduce,
    Command.LIFT: cmd_lift,
    Command.GALLERY: cmd_gallery,
    Command.RANDOM: cmd_random,
}


def run(run_config: RunConfig, renderer: BaseRenderer) -> tuple[int, str]:
    """!
    @brief Execute one command.

    @return Exit status and the text to emit
    """
    analyzer = SymmetryAnalyzer(run_config.config)
    return COMMANDS[run_config.command](run_config, analyzer, renderer)


def _load(run_config: RunConfig, analyzer: SymmetryAnalyzer) -> GainGraph:
    if run_config.source is None:
        raise ValueError("an input graph is required")
    g = analyzer.load(run_config.source, run_config.k)
    run_config.validate(g.k)
    return g


def _configure_logging(args: argparse.Namespace) -> None:
    if args.debug:
        logging.basicConfig(level=logging.DEBUG, format="%(levelname)s %(name)s: %(message)s")
    elif args.verbose:
        logging.basicConfig(level=logging.INFO, format="%(levelname)s %(name)s: %(message)s")


def main(argv: Optional[list[str]] = None) -> int:
    """!
    @brief Main entry point for the CLI.

    @param argv Command-line arguments (uses sys.argv if None)
    @return Exit code
    """
    parser = create_parser()
    args = parser.parse_args(argv)
    _configure_logging(args)

    try:
        run_config = build_run_config(args)
        renderer = get_renderer(run_config.config)
        status, text = run(run_config, renderer)
        if run_config.output:
            with open(run_config.output, "w", encoding="utf-8") as f:
                f.write(text)
        else:
            sys.stdout.write(text)
        return status
    except (ValueError, CapacityError, OSError) as e:
        sys.stderr.write(f"Input error: {e}\n")
        return EXIT_INPUT
    except Exception as e:
        logger.debug("unexpected failure", exc_info=True)
        sys.stderr.write(f"Error: {e}\n")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
