"""Edge-coloured, edge-weighted simple graphs with a specified edge.

Vertices are the integers ``1..n``; the integer order is the total order used
by the sieving matrix.  Undirected edges are stored as ``(min, max)`` while the
specified edge keeps the orientation it was given with.

Instance files are JSON objects::

    {"n": 3,
     "edges": [{"u": 1, "v": 2, "colour": 1, "weight": 0}, ...],
     "specified": [1, 2]}

``colour`` and ``weight`` may be omitted; missing colours become fresh unique
colours and missing weights default to 0.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace
from typing import Iterable

from .errors import InvalidInputError, ParseError


@dataclass(frozen=True)
class Edge:
    u: int
    v: int
    colour: int = 1
    weight: int = 0

    @property
    def key(self) -> tuple[int, int]:
        return (self.u, self.v)


@dataclass(frozen=True)
class ColouredGraph:
    n: int
    edges: tuple[Edge, ...]
    specified: tuple[int, int]

    def __post_init__(self):
        if self.n < 1:
            raise InvalidInputError(f"graph needs at least one vertex, got n={self.n}")
        seen = set()
        for i, e in enumerate(self.edges):
            if e.u == e.v:
                raise InvalidInputError(f"edge #{i} ({e.u},{e.v}) is a loop")
            if not (1 <= e.u <= self.n and 1 <= e.v <= self.n):
                raise InvalidInputError(f"edge #{i} ({e.u},{e.v}) has an endpoint outside 1..{self.n}")
            if e.u > e.v:
                raise InvalidInputError(f"edge #{i} ({e.u},{e.v}) is not stored as (min, max)")
            if e.key in seen:
                raise InvalidInputError(f"edge #{i} ({e.u},{e.v}) is a duplicate")
            if e.weight not in (0, 1):
                raise InvalidInputError(f"edge #{i} ({e.u},{e.v}) has weight {e.weight}, expected 0 or 1")
            seen.add(e.key)
        colours = {e.colour for e in self.edges}
        if colours != set(range(1, len(colours) + 1)):
            raise InvalidInputError("colours must be exactly 1..s")
        v1, v2 = self.specified
        if (min(v1, v2), max(v1, v2)) not in seen:
            raise InvalidInputError(f"specified edge ({v1},{v2}) is not an edge of the graph")

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def s(self) -> int:
        return len({e.colour for e in self.edges})

    def edge_index(self) -> dict[tuple[int, int], int]:
        return {e.key: i for i, e in enumerate(self.edges)}

    def edge(self, u: int, v: int) -> Edge:
        key = (min(u, v), max(u, v))
        for e in self.edges:
            if e.key == key:
                return e
        raise KeyError(key)

    def adjacency(self) -> dict[int, list[int]]:
        adj: dict[int, list[int]] = {v: [] for v in range(1, self.n + 1)}
        for e in self.edges:
            adj[e.u].append(e.v)
            adj[e.v].append(e.u)
        for nbrs in adj.values():
            nbrs.sort()
        return adj

    def with_specified(self, v1: int, v2: int) -> "ColouredGraph":
        return replace(self, specified=(v1, v2))


@dataclass(frozen=True)
class LongCycleInstance:
    """A plain graph, a target length and the edge the cycle must pass."""

    graph: ColouredGraph
    k: int

    def __post_init__(self):
        if not 3 <= self.k <= self.graph.n:
            raise InvalidInputError(f"k must lie in 3..n={self.graph.n}, got {self.k}")

    @property
    def specified(self) -> tuple[int, int]:
        return self.graph.specified


def make_graph(n: int, edges: Iterable, specified: tuple[int, int]) -> ColouredGraph:
    """Build a graph from ``(u, v)``, ``(u, v, colour)`` or ``(u, v, colour, weight)`` tuples.

    Colours are remapped onto ``1..s`` preserving equality classes and their
    relative order; edges without a colour get fresh unique ones.
    """
    raw = []
    for e in edges:
        if isinstance(e, Edge):
            e = (e.u, e.v, e.colour, e.weight)
        u, v, *rest = e
        colour = rest[0] if len(rest) > 0 else None
        weight = rest[1] if len(rest) > 1 else 0
        raw.append((int(u), int(v), colour, weight))
    return _assemble(n, raw, specified)


def _assemble(n, raw, specified, where=lambda i: f"edge #{i}") -> ColouredGraph:
    given = sorted({c for _, _, c, _ in raw if c is not None})
    fresh = iter(range(len(given), len(given) + len(raw)))
    rank = {c: i for i, c in enumerate(given)}
    edges, seen = [], {}
    for i, (u, v, colour, weight) in enumerate(raw):
        if u == v:
            raise ParseError(f"{where(i)} ({u},{v}) is a loop")
        if not (1 <= u <= n and 1 <= v <= n):
            raise ParseError(f"{where(i)} ({u},{v}) has an endpoint outside 1..{n}")
        key = (min(u, v), max(u, v))
        if key in seen:
            raise ParseError(f"{where(i)} ({u},{v}) duplicates {where(seen[key])}")
        seen[key] = i
        if weight not in (0, 1) or isinstance(weight, bool):
            raise ParseError(f"{where(i)} ({u},{v}) has weight {weight!r}, expected 0 or 1")
        c = rank[colour] if colour is not None else next(fresh)
        edges.append(Edge(key[0], key[1], c, int(weight)))
    # compact to 1..s keeping the order of first appearance by colour value
    used = sorted({e.colour for e in edges})
    compact = {c: i + 1 for i, c in enumerate(used)}
    edges = [replace(e, colour=compact[e.colour]) for e in edges]
    if len(specified) != 2:
        raise ParseError("specified edge must be a pair [v1, v2]")
    v1, v2 = int(specified[0]), int(specified[1])
    if (min(v1, v2), max(v1, v2)) not in seen:
        raise ParseError(f"specified edge ({v1},{v2}) is not an edge of the graph")
    return ColouredGraph(int(n), tuple(edges), (v1, v2))


def parse_graph(text: str) -> ColouredGraph:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"instance is not valid JSON: {exc}") from None
    return graph_from_dict(obj)


def graph_from_dict(obj: dict) -> ColouredGraph:
    if not isinstance(obj, dict):
        raise ParseError("instance must be a JSON object")
    for key in ("n", "edges", "specified"):
        if key not in obj:
            raise ParseError(f"instance is missing the {key!r} field")
    n = obj["n"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise ParseError(f"n must be a positive integer, got {n!r}")
    raw = []
    for i, rec in enumerate(obj["edges"]):
        if not isinstance(rec, dict) or "u" not in rec or "v" not in rec:
            raise ParseError(f"edge record #{i} must be an object with 'u' and 'v'")
        colour = rec.get("colour")
        if colour is not None and (not isinstance(colour, int) or isinstance(colour, bool)):
            raise ParseError(f"edge record #{i} has non-integer colour {colour!r}")
        raw.append((rec["u"], rec["v"], colour, rec.get("weight", 0)))
    spec = obj["specified"]
    if not isinstance(spec, (list, tuple)):
        raise ParseError("specified edge must be a pair [v1, v2]")
    return _assemble(n, raw, spec, where=lambda i: f"edge record #{i}")


def graph_to_dict(g: ColouredGraph) -> dict:
    return {
        "n": g.n,
        "edges": [{"u": e.u, "v": e.v, "colour": e.colour, "weight": e.weight} for e in g.edges],
        "specified": list(g.specified),
    }


def serialize_graph(g: ColouredGraph) -> str:
    return json.dumps(graph_to_dict(g))


def all_unique_colouring(g: ColouredGraph) -> ColouredGraph:
    """Give every edge its own colour and weight 0."""
    edges = tuple(Edge(e.u, e.v, i + 1, 0) for i, e in enumerate(g.edges))
    return ColouredGraph(g.n, edges, g.specified)
