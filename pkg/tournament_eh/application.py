from __future__ import annotations

import argparse
import importlib.util
import itertools
import logging
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from pathlib import Path
from typing import Any, Optional, Protocol, Sequence, cast, runtime_checkable

from . import __version__
from .blockade import (
    Blockade,
    find_uniform_minor,
    is_support_uniform,
    trace,
)
from .catalog import catalog, names
from .construct import (
    ConstructionParams,
    Counterexample,
    assemble_counterexample,
)
from .core import OrderedGraph, Tournament, backedge_graph, check_numbering
from .enumeration import all_tournaments, backedge_census
from .errors import (
    RetryLimitExceeded,
    SearchFailed,
    TournamentEHError,
    UnknownSuite,
    VerificationFailed,
)
from .numbering import (
    forest_numbering,
    interval_violations,
    min_backedge_numbering,
)
from .patterns import DEFAULT_CERTIFICATE_BUDGET, find_srseh_certificate
from .report import (
    BlockedGraph,
    CheckResult,
    Emittable,
    Format,
    VerificationReport,
    emit,
    load_object,
    parse_text,
)
from .sampling import substream
from .search import (
    PurePair,
    contains_ordered,
    contains_subtournament,
    max_anticomplete_pair,
    max_pure_pair,
    pure_to_backedge,
)
from .suite import Check, SuiteOptions
from .suites.certificates import describe

logger = logging.getLogger(__name__)

CURRENT_FILE_DIRECTORY = Path(__file__).resolve().parent

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_USAGE = 2


@runtime_checkable
class SuiteExporter(Protocol):
    def exported_checks(self) -> list[Check]:
        ...


def load_suites() -> dict[str, list[Check]]:
    """Every suite module under suites/, keyed by module name."""
    suites_subdirectory = Path("suites")
    suites: dict[str, list[Check]] = {}
    files: list[Path] = sorted(
        entry
        for entry in (CURRENT_FILE_DIRECTORY / suites_subdirectory).iterdir()
        if entry.is_file()
        and entry.suffix.lower() == ".py"
        and not entry.stem.startswith("_")
    )
    for file in files:
        module_name = (
            f"{__package__}.{'.'.join(suites_subdirectory.parts)}.{file.stem}"
        )
        if module_name in sys.modules:
            module = sys.modules[module_name]
        else:
            spec = importlib.util.spec_from_file_location(module_name, file)
            if not spec:
                raise RuntimeError(f"No spec could be loaded for {file}")
            module = importlib.util.module_from_spec(spec)
            if not spec.loader:
                raise RuntimeError(f"Spec has no loader for {file}")
            sys.modules[module_name] = module  # so pickling finds checks
            spec.loader.exec_module(module)
        if not isinstance(module, SuiteExporter):
            raise RuntimeError(
                f"Module does not contain any exported checks: {file}"
            )
        checks = cast(SuiteExporter, module).exported_checks()
        check_ids: set[str] = set()
        for check in checks:
            if check.id in check_ids:
                raise RuntimeError(
                    f"Multiple checks with the same id: {check.id}"
                )
            check_ids.add(check.id)
        suites[file.stem] = sorted(checks, key=lambda check: check.id)
    return suites


def suite_names() -> list[str]:
    return list(load_suites())


def _execute(check: Check, options: SuiteOptions) -> CheckResult:
    return check.execute(options)


def run_suite(name: str, options: SuiteOptions) -> VerificationReport:
    suites = load_suites()
    if name not in suites:
        raise UnknownSuite(
            f"no suite named {name!r}; choose from {', '.join(suites)}"
        )
    checks = suites[name]
    logger.info("running %d checks of %s", len(checks), name)
    if options.jobs > 1:
        with ProcessPoolExecutor(max_workers=options.jobs) as executor:
            results = list(
                executor.map(_execute, checks, itertools.repeat(options))
            )
    else:
        results = [check.execute(options) for check in checks]
    return VerificationReport(
        suite=name,
        version=__version__,
        seed=options.seed,
        checks=sorted(results, key=lambda result: result.id),
    )


def _write(data: bytes) -> None:
    sys.stdout.buffer.write(data)
    sys.stdout.flush()


def _tournament(reference: str) -> Tournament:
    found = load_object(reference)
    if not isinstance(found, Tournament):
        raise argparse.ArgumentTypeError(f"{reference} is not a tournament")
    return found


def _ordered(reference: str) -> OrderedGraph:
    found = load_object(reference)
    if not isinstance(found, OrderedGraph):
        raise argparse.ArgumentTypeError(f"{reference} is not ordered")
    return found


def _numbering(value: str) -> list[int]:
    try:
        return [int(x) - 1 for x in value.replace(" ", "").split(",")]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(
            f"{value!r} is not a comma-separated numbering"
        ) from exc


def _blockade(value: str, host_size: int) -> Blockade:
    """Either a file in the blockade text form or blocks like 1,2;3,4."""
    path = Path(value)
    if path.is_file():
        found = parse_text(path.read_text())
        if not isinstance(found, Blockade):
            raise argparse.ArgumentTypeError(f"{value} is not a blockade")
        return Blockade(host_size, found.blocks)
    try:
        blocks = [
            [int(x) - 1 for x in block.split(",")]
            for block in value.split(";")
        ]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(
            f"{value!r} is neither a file nor blocks like 1,2;3,4"
        ) from exc
    return Blockade.of(host_size, blocks)


def _one_based(embedding: Optional[Sequence[int]]) -> Optional[list[int]]:
    return None if embedding is None else [v + 1 for v in embedding]


def _pair(pair: Optional[PurePair]) -> Optional[dict[str, Any]]:
    if pair is None:
        return None
    return {
        "a": sorted(v + 1 for v in pair.a),
        "b": sorted(v + 1 for v in pair.b),
        "kind": str(pair.kind),
        "order": pair.order,
        "exact": pair.exact,
    }


def command_catalog(args: argparse.Namespace) -> Emittable:
    if args.name is None:
        return {"names": names()}
    return catalog(args.name)


def command_enumerate(args: argparse.Namespace) -> Emittable:
    classes = all_tournaments(args.vertices, jobs=args.jobs)
    logger.info("%d classes on %d vertices", len(classes), args.vertices)
    if args.format == Format.JSON:
        return {
            "n": args.vertices,
            "count": len(classes),
            "classes": classes,
        }
    return classes


def command_backedges(args: argparse.Namespace) -> Emittable:
    t = _tournament(args.tournament)
    if args.numbering is not None:
        return backedge_graph(t, check_numbering(t.n, args.numbering))
    census = sorted(backedge_census(t), key=lambda b: b.adj)
    return {
        "size": len(census),
        "graphs": [b.one_based_edges() for b in census],
    }


def command_optimal_numbering(args: argparse.Namespace) -> Emittable:
    t = _tournament(args.tournament)
    result = min_backedge_numbering(t)
    return {
        "numbering": _one_based(result.numbering),
        "backedges": result.backedge_count,
        "violations": [
            str(x) for x in interval_violations(t, result.numbering)
        ],
    }


def command_forest_numbering(args: argparse.Namespace) -> Emittable:
    return {"numbering": _one_based(forest_numbering(_tournament(args.t)))}


def command_contains(args: argparse.Namespace) -> Emittable:
    host = load_object(args.host)
    pattern = load_object(args.pattern)
    if isinstance(host, Tournament) and isinstance(pattern, Tournament):
        return {"copy": _one_based(contains_subtournament(host, pattern))}
    if isinstance(host, OrderedGraph) and isinstance(pattern, OrderedGraph):
        return {"copy": _one_based(contains_ordered(host, pattern))}
    raise argparse.ArgumentTypeError(
        "host and pattern must both be tournaments or both be ordered graphs"
    )


def command_purepair(args: argparse.Namespace) -> Emittable:
    found = load_object(args.object)
    if isinstance(found, OrderedGraph):
        return {"anticomplete": _pair(max_anticomplete_pair(found))}
    if not isinstance(found, Tournament):
        raise argparse.ArgumentTypeError(f"{args.object} has no pure pairs")
    pair = max_pure_pair(found, exact=args.exact)
    result: dict[str, Any] = {"pure": _pair(pair)}
    if args.numbering is not None and pair is not None:
        numbering = check_numbering(found.n, args.numbering)
        result["backedge"] = _pair(pure_to_backedge(found, numbering, pair))
    return result


def command_certificate(args: argparse.Namespace) -> Emittable:
    certificate = find_srseh_certificate(
        _tournament(args.tournament), budget=args.budget
    )
    return {
        "certificate": None if certificate is None else describe(certificate)
    }


def command_blockade(args: argparse.Namespace) -> Emittable:
    host = _ordered(args.host)
    blockade = _blockade(args.blocks, host.n)
    result: dict[str, Any] = {"blockade": blockade}
    if args.trace is not None:
        found = trace(host, blockade, _ordered(args.trace))
        result["trace"] = sorted(sorted(i + 1 for i in s) for s in found)
    uniformity = is_support_uniform(host, blockade, args.tau)
    result["uniform"] = uniformity.uniform
    if uniformity.pattern is not None:
        result["offending_pattern"] = uniformity.pattern
    if args.minor is not None:
        result["minor"] = find_uniform_minor(
            host,
            blockade,
            args.minor,
            args.tau,
            Fraction(args.kappa),
            budget=args.budget,
            rng=substream(args.seed, "contraction"),
        )
    return result


def command_construct(args: argparse.Namespace) -> int:
    """Emits J, the blockade, G and the bullets, failing on a required
    bullet."""
    params = ConstructionParams.of(args.k, args.c, args.width, args.seed)
    result = assemble_counterexample(params, strict=args.strict)
    fmt = args.format if args.emit is None else args.emit
    output: Emittable
    if fmt == Format.DOT:
        output = [
            BlockedGraph(result.graph, result.blockade),
            result.tournament,
        ]
    else:
        output = _construction(params, result)
    _write(emit(output, fmt))
    if result.failed:
        logger.error(
            "construction fails bullets %s", ", ".join(result.failed)
        )
        return EXIT_FAIL
    return EXIT_PASS


def _construction(
    params: ConstructionParams, result: Counterexample
) -> dict[str, Any]:
    return {
        "params": params.to_dict(),
        "J": result.graph,
        "blockade": result.blockade,
        "G": result.tournament,
        "failed": result.failed,
        "bullets": [
            {
                "name": bullet.name,
                "statement": bullet.statement,
                "passed": bullet.passed,
                "required": bullet.required,
                "detail": bullet.detail,
            }
            for bullet in result.bullets
        ],
    }


def command_verify(args: argparse.Namespace) -> int:
    options = SuiteOptions(
        seed=args.seed,
        jobs=args.jobs,
        budget=args.budget,
        samples=args.samples,
        timings=args.timings,
        strict=args.strict,
    )
    chosen = args.suites or suite_names()
    reports = [run_suite(name, options) for name in chosen]
    fmt = Format.TEXT if args.format == Format.DOT else args.format
    data = emit(reports, fmt)
    if args.output is not None:
        args.output.write_bytes(emit(reports, Format.JSON))
        logger.info("report written to %s", args.output)
    _write(data)
    return EXIT_PASS if all(r.passed for r in reports) else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tournament-eh",
        description="Exact search and verification for tournaments and"
        " their backedge graphs.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument(
        "--format", type=Format, choices=list(Format), default=Format.TEXT
    )
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--jobs", type=int, default=1)
    parser.add_argument(
        "--budget", type=int, default=DEFAULT_CERTIFICATE_BUDGET
    )
    parser.add_argument("-v", "--verbose", action="count", default=0)
    commands = parser.add_subparsers(dest="command", required=True)

    sub = commands.add_parser("catalog", help="list or show named objects")
    sub.add_argument("name", nargs="?")
    sub.set_defaults(handler=command_catalog)

    sub = commands.add_parser("enumerate", help="count isomorphism classes")
    sub.add_argument("--vertices", type=int, required=True, metavar="N")
    sub.set_defaults(handler=command_enumerate)

    sub = commands.add_parser("backedges", help="backedge graphs")
    sub.add_argument("tournament")
    sub.add_argument("--numbering", type=_numbering)
    sub.set_defaults(handler=command_backedges)

    sub = commands.add_parser("optimal-numbering", help="fewest backedges")
    sub.add_argument("tournament")
    sub.set_defaults(handler=command_optimal_numbering)

    sub = commands.add_parser("forest-numbering", help="acyclic backedges")
    sub.add_argument("t", metavar="tournament")
    sub.set_defaults(handler=command_forest_numbering)

    sub = commands.add_parser("contains", help="induced containment")
    sub.add_argument("host")
    sub.add_argument("pattern")
    sub.set_defaults(handler=command_contains)

    sub = commands.add_parser("purepair", help="largest pure pair")
    sub.add_argument("object")
    sub.add_argument("--numbering", type=_numbering)
    exactness = sub.add_mutually_exclusive_group()
    exactness.add_argument(
        "--exact", dest="exact", action="store_const", const=True
    )
    exactness.add_argument(
        "--greedy", dest="exact", action="store_const", const=False
    )
    sub.set_defaults(handler=command_purepair)

    sub = commands.add_parser("certificate", help="certificate search")
    sub.add_argument("tournament")
    sub.set_defaults(handler=command_certificate)

    sub = commands.add_parser("blockade", help="traces and uniformity")
    sub.add_argument("host")
    sub.add_argument("blocks", help="a blockade file or blocks like 1,2;3,4")
    sub.add_argument("--tau", type=int, default=2)
    sub.add_argument("--trace", metavar="PATTERN")
    sub.add_argument("--minor", type=int, metavar="K")
    sub.add_argument("--kappa", default="1/2")
    sub.set_defaults(handler=command_blockade)

    sub = commands.add_parser("construct", help="build a counterexample")
    sub.add_argument("--k", type=int, required=True)
    sub.add_argument("--c", required=True)
    sub.add_argument("--width", type=int, required=True)
    sub.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    sub.add_argument(
        "--emit", type=Format, choices=[Format.JSON, Format.DOT]
    )
    sub.add_argument("--strict", action="store_true")
    sub.set_defaults(handler=command_construct)

    sub = commands.add_parser("verify", help="run verification suites")
    sub.add_argument("suites", nargs="*")
    sub.add_argument("--output", type=Path)
    sub.add_argument("--samples", type=int)
    sub.add_argument("--timings", action="store_true")
    sub.add_argument("--strict", action="store_true")
    sub.set_defaults(handler=command_verify)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=max(logging.DEBUG, logging.WARNING - 10 * args.verbose),
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        if args.command == "verify":
            return command_verify(args)
        if args.command == "construct":
            return command_construct(args)
        _write(emit(args.handler(args), args.format))
    except (VerificationFailed, SearchFailed, RetryLimitExceeded) as exc:
        logger.error("%s", exc)
        return EXIT_FAIL
    except (TournamentEHError, argparse.ArgumentTypeError) as exc:
        logger.error("%s", exc)
        return EXIT_USAGE
    return EXIT_PASS
