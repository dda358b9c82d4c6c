"""Text formats for hypergraphs and patterns, and the JSON run report.

Hypergraph edge-list format: a header line ``r n m`` followed by m lines of
r distinct 0-based vertex indices separated by whitespace.  Pattern format:
a header line ``r l m`` followed by m lines of r vertex labels in ``1..l``,
with repetition denoting multiplicity.  ``#`` starts a comment anywhere on a
line; blank lines are ignored.  Serialization is canonical, so parse and
serialize round-trip exactly.
"""

from __future__ import annotations

import hashlib
import json
from typing import IO

from .errors import DuplicateEdge, IndexOutOfRange, ParseError
from .hypergraph import Hypergraph, Partition
from .patterns import Pattern

TOOL_NAME = "linkclust"
TOOL_VERSION = "0.1.0"
REPORT_SCHEMA_VERSION = 1

__all__ = [
    "TOOL_NAME",
    "TOOL_VERSION",
    "REPORT_SCHEMA_VERSION",
    "parse_hypergraph",
    "serialize_hypergraph",
    "parse_pattern",
    "serialize_pattern",
    "partition_classes_sorted",
    "build_report",
    "dump_report",
    "sha256_digest",
]


def _content_lines(source: str | IO[str]) -> list[tuple[int, str]]:
    text = source if isinstance(source, str) else source.read()
    out = []
    for i, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append((i, line))
    return out


def _parse_header(lines: list[tuple[int, str]], kind: str) -> tuple[int, int, int]:
    if not lines:
        raise ParseError(1, f"empty {kind} input")
    lineno, header = lines[0]
    parts = header.split()
    if len(parts) != 3:
        raise ParseError(lineno, f"header must be 3 integers, got {header!r}")
    try:
        a, b, m = (int(p) for p in parts)
    except ValueError:
        raise ParseError(lineno, f"header must be 3 integers, got {header!r}") from None
    if m < 0:
        raise ParseError(lineno, "edge count must be nonnegative")
    if len(lines) - 1 != m:
        raise ParseError(
            lines[-1][0],
            f"header declares {m} edges but {len(lines) - 1} edge lines follow",
        )
    return a, b, m


def parse_hypergraph(source: str | IO[str]) -> Hypergraph:
    """Parse the edge-list format; malformed lines raise with line numbers."""
    lines = _content_lines(source)
    r, n, _ = _parse_header(lines, "hypergraph")
    if r < 2:
        raise ParseError(lines[0][0], f"uniformity must be at least 2, got {r}")
    if n < 0:
        raise ParseError(lines[0][0], "vertex count must be nonnegative")
    seen: dict[tuple[int, ...], int] = {}
    edges = []
    for lineno, line in lines[1:]:
        parts = line.split()
        if len(parts) != r:
            raise ParseError(lineno, f"expected {r} vertices, got {len(parts)}")
        try:
            verts = tuple(int(p) for p in parts)
        except ValueError:
            raise ParseError(lineno, f"non-integer vertex in {line!r}") from None
        for v in verts:
            if v < 0 or v >= n:
                raise IndexOutOfRange(lineno, f"vertex {v} outside [0, {n})")
        key = tuple(sorted(verts))
        if len(set(key)) != r:
            raise ParseError(lineno, f"repeated vertex in edge {line!r}")
        if key in seen:
            raise DuplicateEdge(
                lineno, f"edge {line!r} duplicates line {seen[key]}"
            )
        seen[key] = lineno
        edges.append(key)
    return Hypergraph(r, n, edges)


def serialize_hypergraph(hypergraph: Hypergraph) -> str:
    lines = [f"{hypergraph.r} {hypergraph.n} {len(hypergraph)}"]
    lines.extend(" ".join(str(v) for v in e) for e in hypergraph)
    return "\n".join(lines) + "\n"


def parse_pattern(source: str | IO[str]) -> Pattern:
    """Parse the pattern format (1-based labels, repetition = multiplicity)."""
    lines = _content_lines(source)
    r, num_vertices, _ = _parse_header(lines, "pattern")
    if r < 1:
        raise ParseError(lines[0][0], f"uniformity must be positive, got {r}")
    if num_vertices < 1:
        raise ParseError(lines[0][0], "vertex count must be positive")
    seen: dict[tuple[int, ...], int] = {}
    multisets = []
    for lineno, line in lines[1:]:
        parts = line.split()
        if len(parts) != r:
            raise ParseError(lineno, f"expected {r} labels, got {len(parts)}")
        try:
            labels = tuple(int(p) for p in parts)
        except ValueError:
            raise ParseError(lineno, f"non-integer label in {line!r}") from None
        for v in labels:
            if v < 1 or v > num_vertices:
                raise IndexOutOfRange(lineno, f"label {v} outside [1, {num_vertices}]")
        key = tuple(sorted(labels))
        if key in seen:
            raise DuplicateEdge(lineno, f"edge {line!r} duplicates line {seen[key]}")
        seen[key] = lineno
        multisets.append(tuple(v - 1 for v in labels))
    return Pattern.from_multisets(r, num_vertices, multisets)


def serialize_pattern(pattern: Pattern) -> str:
    lines = [f"{pattern.r} {pattern.num_vertices} {len(pattern.edges)}"]
    for mult in pattern.edges:
        labels = []
        for v, count in enumerate(mult):
            labels.extend([v + 1] * count)
        lines.append(" ".join(str(v) for v in labels))
    return "\n".join(lines) + "\n"


def partition_classes_sorted(partition: Partition) -> list[list[int]]:
    """Classes as sorted lists, ordered by smallest member; empties last."""
    classes = [sorted(c) for c in partition.classes]
    return sorted(classes, key=lambda c: (not c, c[0] if c else -1))


def sha256_digest(text: str) -> str:
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def build_report(
    command: str,
    params: dict,
    inputs: dict[str, str],
    verdict: str | None = None,
    witness: Partition | None = None,
    stats: dict | None = None,
    results: dict | None = None,
    seed: int | None = None,
) -> dict:
    """Assemble the machine-readable run report.

    ``inputs`` maps input names to their serialized text; digests are stored
    rather than the texts.  The report is JSON-serializable and, except for
    wall-time entries inside ``stats``, deterministic for a given run.
    """
    report: dict = {
        "schema_version": REPORT_SCHEMA_VERSION,
        "tool": TOOL_NAME,
        "tool_version": TOOL_VERSION,
        "command": command,
        "params": params,
        "input_digests": {k: sha256_digest(v) for k, v in sorted(inputs.items())},
    }
    if seed is not None:
        report["seed"] = seed
    if verdict is not None:
        report["verdict"] = verdict
    if witness is not None:
        report["witness"] = {"classes": partition_classes_sorted(witness)}
    if stats is not None:
        report["stats"] = stats
    if results is not None:
        report["results"] = results
    return report


def dump_report(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2, default=_shim) + "\n"


def _shim(obj):
    if isinstance(obj, (tuple, set, frozenset)):
        return list(obj)
    if hasattr(obj, "item"):
        return obj.item()
    raise TypeError(f"not JSON serializable: {type(obj)!r}")
