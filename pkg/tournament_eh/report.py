from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from enum import StrEnum, unique
from pathlib import Path
from typing import Any, Callable, Mapping, Optional, Sequence

from .blockade import Blockade
from .catalog import catalog
from .core import OrderedGraph, Tournament, build_tournament
from .errors import (
    InvalidBlockade,
    ParseError,
    UnknownName,
    UnsupportedFormat,
)


@unique
class Status(StrEnum):
    PASS = "pass"
    FAIL = "fail"
    SKIPPED = "skipped"


@unique
class Format(StrEnum):
    JSON = "json"
    TEXT = "text"
    DOT = "dot"


@dataclass(frozen=True, kw_only=True)
class CheckResult:
    id: str
    statement: str
    status: Status
    witness: Any = None
    elapsed_ms: float = 0.0

    def to_dict(self) -> dict[str, Any]:
        return {
            "id": self.id,
            "statement": self.statement,
            "status": str(self.status),
            "witness": self.witness,
            "elapsed_ms": round(self.elapsed_ms, 3),
        }


@dataclass(kw_only=True)
class VerificationReport:
    suite: str
    version: str
    seed: int
    checks: list[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        """Every check that ran passed."""
        return all(check.status is not Status.FAIL for check in self.checks)

    @property
    def status(self) -> Status:
        return Status.PASS if self.passed else Status.FAIL

    def to_dict(self) -> dict[str, Any]:
        return {
            "suite": self.suite,
            "version": self.version,
            "seed": self.seed,
            "status": str(self.status),
            "checks": [check.to_dict() for check in self.checks],
        }


@dataclass(frozen=True)
class BlockedGraph:
    """An ordered graph drawn with its blocks as clusters."""

    graph: OrderedGraph
    blockade: Blockade


Emittable = (
    VerificationReport
    | Tournament
    | OrderedGraph
    | Blockade
    | BlockedGraph
    | Mapping[str, Any]
    | Sequence[Any]
)


def _upper_bits(n: int, test: Callable[[int, int], bool]) -> str:
    """Upper-triangle bits in row-major order as MSB-first hex."""
    value = 0
    for i in range(n):
        for j in range(i + 1, n):
            value = value << 1 | test(i, j)
    digits = max(1, math.ceil(n * (n - 1) // 2 / 4))
    return f"{value:0{digits}x}"


def _text(obj: Emittable) -> str:
    if isinstance(obj, Tournament):
        return f"tournament {obj.n}\n{_upper_bits(obj.n, obj.beats)}\n"
    if isinstance(obj, OrderedGraph):
        return f"ordered {obj.n}\n{_upper_bits(obj.n, obj.adjacent)}\n"
    if isinstance(obj, Blockade):
        header = f"blockade {obj.length}"
        if obj.host_size != _implied_host_size(obj):
            header += f" {obj.host_size}"
        lines = [header]
        lines.extend(" ".join(map(str, block)) for block in obj.one_based())
        return "\n".join(lines) + "\n"
    if isinstance(obj, VerificationReport):
        return _report_text(obj)
    if isinstance(obj, Mapping):
        return "".join(
            f"{key}: {json.dumps(to_json(value), sort_keys=True)}\n"
            for key, value in obj.items()
        )
    if isinstance(obj, Sequence):
        return "".join(_text(item) for item in obj)
    raise UnsupportedFormat(f"no text form for {type(obj).__name__}")


def _report_text(report: VerificationReport) -> str:
    lines = [f"{report.suite}: {report.status} (seed {report.seed})"]
    for check in report.checks:
        lines.append(f"  [{check.status}] {check.id}: {check.statement}")
    return "\n".join(lines) + "\n"


def _dot(obj: Emittable) -> str:
    if isinstance(obj, Tournament):
        arcs = "".join(f"  {u + 1} -> {v + 1};\n" for u, v in obj.arcs())
        nodes = "".join(f"  {v + 1};\n" for v in range(obj.n))
        return f"digraph tournament {{\n{nodes}{arcs}}}\n"
    if isinstance(obj, OrderedGraph):
        edges = "".join(f"  {p} -- {q};\n" for p, q in obj.one_based_edges())
        # rank=same keeps the positions on one line in order
        nodes = " ".join(str(p + 1) for p in range(obj.n))
        return (
            f"graph ordered {{\n  rankdir=LR;\n  {{ rank=same; {nodes} }}\n"
            f"{edges}}}\n"
        )
    if isinstance(obj, BlockedGraph):
        return _blocked_dot(obj)
    if isinstance(obj, Sequence) and not isinstance(obj, str):
        return "".join(_dot(item) for item in obj)
    raise UnsupportedFormat(f"no dot form for {type(obj).__name__}")


def _blocked_dot(obj: BlockedGraph) -> str:
    clusters = "".join(
        f"  subgraph cluster_{index} {{\n"
        f'    label="B{index}";\n'
        f"    {' '.join(map(str, block))};\n"
        "  }\n"
        for index, block in enumerate(obj.blockade.one_based(), start=1)
    )
    edges = "".join(
        f"  {p} -- {q};\n" for p, q in obj.graph.one_based_edges()
    )
    return f"graph blocked {{\n  rankdir=LR;\n{clusters}{edges}}}\n"


def to_json(obj: Emittable) -> Any:
    if isinstance(obj, Tournament):
        return {
            "type": "tournament",
            "n": obj.n,
            "arcs": [[u + 1, v + 1] for u, v in obj.arcs()],
        }
    if isinstance(obj, OrderedGraph):
        return {
            "type": "ordered",
            "n": obj.n,
            "edges": [list(edge) for edge in obj.one_based_edges()],
        }
    if isinstance(obj, Blockade):
        return {
            "type": "blockade",
            "host_size": obj.host_size,
            "blocks": obj.one_based(),
        }
    if isinstance(obj, BlockedGraph):
        return {
            "type": "blocked",
            "graph": to_json(obj.graph),
            "blockade": to_json(obj.blockade),
        }
    if isinstance(obj, VerificationReport):
        return obj.to_dict()
    if isinstance(obj, Mapping):
        return {key: to_json(value) for key, value in obj.items()}
    if isinstance(obj, Sequence) and not isinstance(obj, str):
        return [to_json(item) for item in obj]
    return obj


def emit(obj: Emittable, fmt: Format | str) -> bytes:
    try:
        chosen = Format(fmt)
    except ValueError as exc:
        raise UnsupportedFormat(f"unknown format {fmt!r}") from exc
    match chosen:
        case Format.JSON:
            text = json.dumps(to_json(obj), indent=2, sort_keys=True) + "\n"
        case Format.TEXT:
            text = _text(obj)
        case Format.DOT:
            text = _dot(obj)
    return text.encode()


def _pairs_from_hex(n: int, digits: str) -> list[tuple[int, int]]:
    try:
        value = int(digits, 16)
    except ValueError as exc:
        raise ParseError(f"{digits!r} is not hexadecimal") from exc
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    if value >> len(pairs):
        raise ParseError(f"{digits!r} has more than {len(pairs)} bits")
    return [
        pair
        for index, pair in enumerate(pairs)
        if value >> (len(pairs) - 1 - index) & 1
    ]


def _int(token: str, what: str) -> int:
    try:
        return int(token)
    except ValueError as exc:
        raise ParseError(f"{what} {token!r} is not an integer") from exc


def _implied_host_size(blockade: Blockade) -> int:
    return 1 + max((max(block) for block in blockade.blocks), default=-1)


def _parse_blockade(header: list[str], rows: list[str]) -> Blockade:
    """`blockade k` then k block lines; a trailing host size is optional
    and otherwise the largest listed vertex."""
    if len(header) not in (2, 3):
        raise ParseError("blockade takes a length and an optional host size")
    length = _int(header[1], "length")
    if len(rows) != length:
        raise ParseError(f"expected {length} block lines, got {len(rows)}")
    blocks = [[_int(x, "vertex") - 1 for x in row.split()] for row in rows]
    implied = 1 + max((max(block, default=-1) for block in blocks), default=-1)
    host_size = _int(header[2], "host size") if len(header) == 3 else implied
    blockade = Blockade.of(host_size, blocks)
    if not blockade.respectful:
        raise InvalidBlockade("block lines must increase from line to line")
    return blockade


def parse_text(data: str | bytes) -> Tournament | OrderedGraph | Blockade:
    """Inverse of the text form of emit."""
    text = data.decode() if isinstance(data, bytes) else data
    lines = [line.strip() for line in text.splitlines() if line.strip()]
    if not lines:
        raise ParseError("no header line")
    header = lines[0].split()
    kind = header[0]
    if kind in ("tournament", "ordered"):
        if len(header) != 2 or len(lines) != 2:
            raise ParseError(f"{kind} takes a size and one hex line")
        n = _int(header[1], "size")
        pairs = _pairs_from_hex(n, lines[1])
        if kind == "ordered":
            return OrderedGraph.from_edges(n, pairs)
        chosen = set(pairs)
        return build_tournament(
            n,
            (
                (i, j) if (i, j) in chosen else (j, i)
                for i in range(n)
                for j in range(i + 1, n)
            ),
        )
    if kind == "blockade":
        return _parse_blockade(header, lines[1:])
    raise ParseError(f"unknown object kind {kind!r}")


def _from_json(data: Any) -> Tournament | OrderedGraph | Blockade:
    try:
        kind = data["type"]
        if kind == "tournament":
            return build_tournament(
                data["n"], ((u - 1, v - 1) for u, v in data["arcs"])
            )
        if kind == "ordered":
            return OrderedGraph.from_one_based(data["n"], data["edges"])
        if kind == "blockade":
            return Blockade.of(
                data["host_size"],
                ([v - 1 for v in block] for block in data["blocks"]),
            )
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed object: {exc}") from exc
    raise ParseError(f"unknown object kind {kind!r}")


def load_object(
    reference: str, *, base: Optional[Path] = None
) -> Tournament | OrderedGraph | Blockade:
    """A catalog name, or a text or JSON file."""
    try:
        return catalog(reference)
    except UnknownName:
        pass
    path = Path(reference) if base is None else base / reference
    if not path.is_file():
        raise UnknownName(f"{reference!r} is neither a name nor a file")
    content = path.read_text()
    if path.suffix.lower() == ".json":
        try:
            return _from_json(json.loads(content))
        except json.JSONDecodeError as exc:
            raise ParseError(f"{path}: {exc}") from exc
    return parse_text(content)
