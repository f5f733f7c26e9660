"""
Command line for affine-weyl.

    affine-weyl classify "(+1 2)^1 (-3 4)^3 (-5)^2 (-6)^4 (+7)^0"
    affine-weyl graph "B:n=6:(2,2,0,0):f=0" --window 1 --format dot
    affine-weyl verify all --seed 7 --jobs 4

Exit codes: 0 success, 1 verification failure, 2 usage or parse error,
3 budget exceeded.
"""

import argparse
import logging
import sys
from typing import List, Optional

from pydantic import ValidationError

from . import __version__
from .commuting import commutes_fast, commutes_oracle, neighbors_in_class
from .config import settings
from .conjugacy import canonical_representative, class_of, find_conjugator
from .constructive import constructive_path
from .core import AffineElement, FamilyTag, GroupFamily
from .errors import AffineWeylError, BudgetExceededError
from .graph import WindowSpec, census, distance, predict_connectivity, window_graph
from .involutions import invariants
from .models import OutputFormat, RunConfig
from .notation import (
    ElementPayload,
    format_descriptor,
    format_element,
    parse_descriptor,
    read_element,
)
from .reports import (
    Report,
    census_records,
    distance_record,
    graph_records,
    make_header,
    render,
    verdict_record,
    witness_record,
    write_report,
)
from .verify import SUITE_NAMES, SuiteOptions, run_suites

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VERIFICATION = 1
EXIT_USAGE = 2


def _common() -> argparse.ArgumentParser:
    parent = argparse.ArgumentParser(add_help=False)
    parent.add_argument("--group", default="C", help="A, B, Bbar, C or D (default C)")
    parent.add_argument(
        "--n", type=int, default=None, help="rank; inferred from input when omitted"
    )
    parent.add_argument(
        "--window", type=int, default=settings.default_window, help="label bound L"
    )
    parent.add_argument("--seed", type=int, default=settings.default_seed, help="64-bit seed")
    parent.add_argument(
        "--format",
        choices=[f.value for f in OutputFormat],
        default=OutputFormat.JSON.value,
        help="report format",
    )
    parent.add_argument("--max-nodes", type=int, default=settings.max_nodes)
    parent.add_argument("--max-seconds", type=float, default=settings.max_seconds)
    parent.add_argument("--out", default=None, help="write the report here instead of stdout")
    parent.add_argument("--jobs", type=int, default=settings.verify_jobs)
    return parent


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="affine-weyl",
        description="Involutions and commuting involution graphs in classical affine Weyl groups",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--log-level", default=settings.log_level)
    common = _common()
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", parents=[common], help="name the class of an involution")
    p.add_argument("element")

    p = sub.add_parser("commutes", parents=[common], help="test whether two involutions commute")
    p.add_argument("x")
    p.add_argument("y")

    p = sub.add_parser("neighbors", parents=[common], help="commuting neighbours in the class")
    p.add_argument("element")

    p = sub.add_parser("graph", parents=[common], help="window graph and verdict of a class")
    p.add_argument("descriptor")

    p = sub.add_parser("distance", parents=[common], help="shortest path by widening windows")
    p.add_argument("x")
    p.add_argument("y")
    p.add_argument("--max-window", type=int, default=None)

    p = sub.add_parser("path", parents=[common], help="explicit path to the class representative")
    p.add_argument("element")

    p = sub.add_parser("verify", parents=[common], help="run verification suites")
    p.add_argument("suites", nargs="+", choices=SUITE_NAMES + ["all"])

    p = sub.add_parser("census", parents=[common], help="verdicts and window sizes for every class")
    return parser


def _config(args: argparse.Namespace) -> RunConfig:
    return RunConfig(
        group=args.group,
        n=args.n,
        window=args.window,
        seed=args.seed,
        format=args.format,
        max_nodes=args.max_nodes,
        max_seconds=args.max_seconds,
        out=args.out,
        jobs=args.jobs,
    )


def _element(text: str, config: RunConfig) -> AffineElement:
    return read_element(text, config.n)


def _family(config: RunConfig, x: AffineElement) -> GroupFamily:
    return config.family(x.n)


# =============================================================================
# COMMANDS
# =============================================================================


def cmd_classify(args, config: RunConfig) -> Report:
    x = _element(args.element, config)
    family = _family(config, x)
    d = class_of(x, family)
    inv = invariants(x)
    rep = canonical_representative(d)
    g = find_conjugator(x, rep, family)
    summary = {
        "descriptor": format_descriptor(d),
        "cycle_form": format_element(x),
        "cycle_type": list(d.cycle_type),
        "split": d.split,
        "invariants": {"sum": inv.sum, "sum_plus": inv.sum_plus, "minus": inv.minus, "f": inv.f},
        "representative": format_element(rep),
        "conjugator": ElementPayload.from_element(g).model_dump() if g is not None else None,
    }
    return Report("classify", make_header("classify", config, n=family.n), summary=summary)


def cmd_commutes(args, config: RunConfig) -> Report:
    x = _element(args.x, config)
    y = _element(args.y, config)
    summary = {"commutes": commutes_fast(x, y), "oracle": commutes_oracle(x, y)}
    return Report("commutes", make_header("commutes", config, n=x.n), summary=summary)


def cmd_neighbors(args, config: RunConfig) -> Report:
    x = _element(args.element, config)
    family = _family(config, x)
    d = class_of(x, family)
    found = list(neighbors_in_class(x, d, config.window))
    return Report(
        "neighbors",
        make_header("neighbors", config, n=family.n),
        records=[{"neighbor": format_element(y)} for y in found],
        summary={"descriptor": format_descriptor(d), "count": len(found)},
    )


def cmd_graph(args, config: RunConfig) -> Report:
    d = parse_descriptor(args.descriptor)
    verdict = None if d.tag is FamilyTag.A else predict_connectivity(d)
    bounds = WindowSpec(L=config.window, max_nodes=config.max_nodes)
    graph = window_graph(d, bounds, config.max_seconds)
    summary = {
        "descriptor": format_descriptor(d),
        "verdict": verdict_record(verdict),
        "vertices": len(graph.vertices),
        "edges": len(graph.edges),
        "components": len(graph.components),
    }
    header = make_header("graph", config, group=d.tag.value, n=d.n)
    return Report("graph", header, graph_records(graph), summary, graph)


def cmd_distance(args, config: RunConfig) -> Report:
    x = _element(args.x, config)
    y = _element(args.y, config)
    family = _family(config, x)
    result = distance(x, y, family, args.max_window, config.max_nodes, config.max_seconds)
    d = class_of(x, family)
    return Report(
        "distance",
        make_header("distance", config, n=family.n),
        summary=distance_record(d, result),
    )


def cmd_path(args, config: RunConfig) -> Report:
    x = _element(args.element, config)
    family = _family(config, x)
    d = class_of(x, family)
    witness = constructive_path(x, d, config.max_nodes, config.max_seconds)
    summary = {
        "descriptor": format_descriptor(d),
        "bound": predict_connectivity(d).bound,
        "length": witness.length,
        "witness": witness_record(witness),
    }
    return Report("path", make_header("path", config, n=family.n), summary=summary)


def cmd_verify(args, config: RunConfig) -> Report:
    opts = SuiteOptions.from_settings(
        config.seed, config.window, max_nodes=config.max_nodes, max_seconds=config.max_seconds
    )
    results = run_suites(args.suites, opts, config.jobs)
    records = [r.record() for r in results]
    summary = {"passed": all(r.passed for r in results)}
    header = make_header("verify", config, suites=[r.name for r in results])
    return Report("verify", header, records, summary)


def cmd_census(args, config: RunConfig) -> Report:
    family = config.family()
    rows = census(family, config.window, config.max_nodes)
    return Report("census", make_header("census", config), census_records(rows))


COMMANDS = {
    "classify": cmd_classify,
    "commutes": cmd_commutes,
    "neighbors": cmd_neighbors,
    "graph": cmd_graph,
    "distance": cmd_distance,
    "path": cmd_path,
    "verify": cmd_verify,
    "census": cmd_census,
}


def main(argv: Optional[List[str]] = None, stdout=None) -> int:
    """Run one command and return its exit code."""
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=getattr(logging, str(args.log_level).upper(), logging.INFO),
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        stream=sys.stderr,
    )
    stdout = stdout or sys.stdout
    try:
        config = _config(args)
        report = COMMANDS[args.command](args, config)
        write_report(render(report, config.format), config.out, stdout)
    except BudgetExceededError as exc:
        logger.error("budget exceeded: %s", exc)
        return exc.exit_code
    except AffineWeylError as exc:
        logger.error("%s", exc)
        return exc.exit_code
    except (ValidationError, ValueError, OverflowError) as exc:
        logger.error("invalid input: %s", exc)
        return EXIT_USAGE
    if args.command == "verify" and not report.summary["passed"]:
        return EXIT_VERIFICATION
    return EXIT_OK


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
