"""Brute-force ground truth for small instances.

Everything here enumerates explicitly (cycles, permutations, cycle covers) and
refuses inputs beyond hard size guards instead of running for hours.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Sequence

from .errors import SizeRefusal
from .graph import ColouredGraph

MAX_CYCLE_N = 16
MAX_PERMANENT_N = 8
MAX_COVER_N = 5
MAX_COVER_CHOICES = 2_000_000  # product of out-degrees, i.e. arc tuples enumerated


@dataclass(frozen=True)
class SimpleCycle:
    """Closed walk ``v1, v2, ..., v_l`` with distinct vertices, starting on the specified arc."""

    vertices: tuple[int, ...]

    def __len__(self):
        return len(self.vertices)

    def edges(self) -> list[tuple[int, int]]:
        vs = self.vertices
        return [(vs[i], vs[(i + 1) % len(vs)]) for i in range(len(vs))]


@dataclass(frozen=True)
class RunStats:
    tau: int
    x_left: int
    x_right: int
    s_runs: int


@dataclass(frozen=True)
class Arc:
    init: int
    ter: int
    label: object


@dataclass(frozen=True)
class LabelledMultigraph:
    """Directed multigraph on vertices ``0..n-1``; loops and parallel arcs allowed."""

    n: int
    arcs: tuple[Arc, ...]

    def label_matrix(self, ring) -> list[list]:
        m = [[ring.zero for _ in range(self.n)] for _ in range(self.n)]
        for a in self.arcs:
            m[a.init][a.ter] = ring.add(m[a.init][a.ter], a.label)
        return m


def _guard_cycles(g: ColouredGraph):
    if g.n > MAX_CYCLE_N:
        raise SizeRefusal(f"cycle enumeration is limited to n <= {MAX_CYCLE_N}, got n={g.n}")


def enumerate_cycles_through(g: ColouredGraph, e: tuple[int, int] | None = None,
                             max_len: int | None = None) -> list[SimpleCycle]:
    """All simple cycles through ``e``, each once, oriented to start with ``e``."""
    _guard_cycles(g)
    v1, v2 = e if e is not None else g.specified
    if max_len is None:
        max_len = g.n
    adj = g.adjacency()
    out: list[SimpleCycle] = []
    path = [v1, v2]
    on_path = {v1, v2}

    def extend(u):
        for w in adj[u]:
            if w == v1:
                if len(path) >= 3:
                    out.append(SimpleCycle(tuple(path)))
                continue
            if w in on_path or len(path) >= max_len:
                continue
            path.append(w)
            on_path.add(w)
            extend(w)
            path.pop()
            on_path.discard(w)

    if max_len >= 3:
        extend(v2)
    return out


def rainbow_subset_exists(colours: Sequence[int], weights: Sequence[int], k: int, t: int,
                          forced: int | None = None) -> bool:
    """Is there a set of ``k`` edges with pairwise distinct colours and total weight ``t``?

    Dynamic programme over colour classes; each class offers at most one edge,
    of weight 0 and/or 1 depending on what the class contains.  With
    ``forced`` the edge at that index must belong to the set.
    """
    classes: dict[int, set[int]] = {}
    for i, (c, w) in enumerate(zip(colours, weights)):
        if forced is None or c != colours[forced]:
            classes.setdefault(c, set()).add(w)
    reach = {(0, 0)} if forced is None else {(1, weights[forced])}
    for ws in classes.values():
        reach = reach | {(cnt + 1, tw + w) for cnt, tw in reach for w in ws
                         if cnt + 1 <= k and tw + w <= t}
    return (k, t) in reach


def _cycle_labels(g: ColouredGraph, cyc: SimpleCycle):
    colours, weights = [], []
    for u, v in cyc.edges():
        ed = g.edge(u, v)
        colours.append(ed.colour)
        weights.append(ed.weight)
    return colours, weights


def oracle_shortest_colourful(g: ColouredGraph, k: int, t: int, e: tuple[int, int] | None = None,
                              rainbow_e: bool = True) -> float:
    """Length of a shortest k-colourful weight-t cycle through ``e``; ``inf`` if none.

    By default the rainbow subset must contain ``e`` itself, which is what the
    sieve detects: its matrix has no extra arc for the specified edge.  Pass
    ``rainbow_e=False`` to allow any rainbow subset.
    """
    best = math.inf
    for cyc in enumerate_cycles_through(g, e):
        if len(cyc) >= best or len(cyc) < k:
            continue
        # cycles start on the specified arc, so e is edge 0
        if rainbow_subset_exists(*_cycle_labels(g, cyc), k, t, forced=0 if rainbow_e else None):
            best = len(cyc)
    return best


def oracle_longest_cycle_through(g: ColouredGraph, e: tuple[int, int] | None = None) -> int:
    return max((len(c) for c in enumerate_cycles_through(g, e)), default=0)


def permanent_bruteforce(matrix, ring):
    n = len(matrix)
    if n > MAX_PERMANENT_N:
        raise SizeRefusal(f"permanent enumeration is limited to n <= {MAX_PERMANENT_N}, got n={n}")
    total = ring.zero
    for sigma in itertools.permutations(range(n)):
        term = ring.one
        for i, j in enumerate(sigma):
            term = ring.mul(term, matrix[i][j])
        total = ring.add(total, term)
    return total


def cycle_cover_label_sum(d: LabelledMultigraph, ring):
    """Sum over cycle covers of ``d`` of the product of arc labels."""
    out_arcs = [[a for a in d.arcs if a.init == v] for v in range(d.n)]
    choices = math.prod(len(a) for a in out_arcs)
    if d.n > MAX_COVER_N or choices > MAX_COVER_CHOICES:
        raise SizeRefusal(f"cover enumeration is limited to n <= {MAX_COVER_N} and "
                          f"{MAX_COVER_CHOICES} out-arc choices, got n={d.n} with {choices}")
    total = ring.zero
    for choice in itertools.product(*out_arcs):
        if len({a.ter for a in choice}) != d.n:
            continue
        term = ring.one
        for a in choice:
            term = ring.mul(term, a.label)
        total = ring.add(total, term)
    return total


def rank_gf2(rows) -> int:
    """Rank over GF(2) of a 0/1 matrix given as a sequence of rows."""
    vecs = [int("".join(str(int(b)) for b in row), 2) if len(row) else 0 for row in rows]
    rank = 0
    while vecs:
        pivot = vecs.pop()
        if pivot == 0:
            continue
        rank += 1
        top = pivot.bit_length() - 1
        vecs = [v ^ pivot if v >> top & 1 else v for v in vecs]
    return rank


def verify_run_structure(cycle: SimpleCycle | Sequence[int], S) -> RunStats:
    """Split edges, X_left, X_right and S-run counts of a cycle for a vertex sample S."""
    vs = cycle.vertices if isinstance(cycle, SimpleCycle) else tuple(cycle)
    ell = len(vs)
    inside = [v in S for v in vs]
    tau = x_left = x_right = 0
    for i in range(ell):
        a, b = inside[i], inside[(i + 1) % ell]
        if a != b:
            tau += 1
        if not a and b:
            x_left += 1
        if inside[i - 1] and a and not b:
            x_right += 1
    return RunStats(tau=tau, x_left=x_left, x_right=x_right, s_runs=x_left)
