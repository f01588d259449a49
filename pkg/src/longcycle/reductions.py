"""Long cycles through an edge, reduced to shortest colourful cycles.

Bipartite graphs: colour every edge by its endpoint on one side; a cycle with
``ceil(k/2)`` distinct colours visits that many distinct vertices of the side,
so it has length at least ``2*ceil(k/2) >= k``.

General graphs: first look for a cycle of length in ``[k, beta*k]`` directly
(all edges distinctly coloured).  Otherwise sample a vertex set ``S``, give
each edge a colour set (its endpoints in ``S``, or one fresh colour if it has
none), expand the colour sets into parallel copies and subdivide them to get a
simple graph ``G_S``.  Edges with exactly one endpoint in ``S`` ("split"
edges) weigh 1.  A cycle in ``G_S`` with ``k'`` rainbow edges of total weight
``t`` is the image of a cycle in ``G`` of length at least ``k' + ceil(t/2)``:
every maximal run of ``S``-vertices is entered and left by split edges and
contains at least one edge that cannot be rainbow.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .colourful import DEFAULT_TRIALS, search_weights, trial_rng
from .errors import InvalidInputError
from .graph import ColouredGraph, Edge, all_unique_colouring

DEFAULT_OUTER = 32
DEFAULT_INNER = DEFAULT_TRIALS
# target base for max(1.657^(beta k), 2^k') in the combined bound
TARGET_BASE = 1.7304
FIRST_COMPONENT_BASE = 1.657


def _exact(x) -> Fraction:
    # go through the shortest repr so 0.5774 means exactly 5774/10000
    return Fraction(x) if isinstance(x, (int, Fraction)) else Fraction(repr(float(x)))


@dataclass(frozen=True)
class GeneralParams:
    alpha: float = 0.5774
    beta: float = 1.0856
    epsilon: float = 0.01

    def __post_init__(self):
        for name in ("alpha", "beta", "epsilon"):
            v = getattr(self, name)
            if isinstance(v, bool) or not isinstance(v, (int, float, Fraction)) or not math.isfinite(v):
                raise InvalidInputError(f"{name} must be a finite number, got {v!r}")

    @property
    def exact(self) -> tuple[Fraction, Fraction, Fraction]:
        return _exact(self.alpha), _exact(self.beta), _exact(self.epsilon)

    @property
    def weight_factor(self) -> Fraction:
        """``(1-eps)(1-alpha)(alpha+alpha^2)beta``: target weight per unit of k."""
        a, b, e = self.exact
        return (1 - e) * (1 - a) * (a + a * a) * b

    @property
    def colour_factor(self) -> Fraction:
        """``(1-(1+eps)(1-alpha)alpha)beta``: guaranteed rainbow size per unit of k."""
        a, b, e = self.exact
        return (1 - (1 + e) * (1 - a) * a) * b

    def k_prime(self, k: int) -> int:
        return math.ceil((1 - self.weight_factor / 2) * k)

    def t_range(self, k: int) -> range:
        return range(math.ceil(self.weight_factor * k), self.k_prime(k) + 1)

    def beta_k(self, k: int) -> int:
        return math.floor(_exact(self.beta) * k)


@dataclass(frozen=True)
class ParamReport:
    alpha: float
    beta: float
    epsilon: float
    in_range: bool
    feasible: bool
    lhs: float
    rhs: float
    margin: float
    base_first: float
    base_second: float
    flags: tuple[str, ...]
    k: int | None = None
    k_prime: int | None = None
    t_min: int | None = None
    lhs_k: float | None = None
    margin_k: float | None = None
    feasible_at_k: bool | None = None
    base_second_k: float | None = None

    @property
    def ok(self) -> bool:
        return self.in_range and self.feasible

    def as_dict(self) -> dict:
        return {name: getattr(self, name) for name in self.__dataclass_fields__} | {"ok": self.ok}


def check_params(params: GeneralParams, k: int | None = None) -> ParamReport:
    """Evaluate the detection condition exactly and report margins and base constants.

    Feasibility is the k-free form ``colour_factor >= 1 - weight_factor/2``; the
    per-``k`` comparison against ``k' = ceil((1 - weight_factor/2) k)`` is
    reported alongside when ``k`` is given.
    """
    a, b, e = params.exact
    flags = []
    in_range = True
    if not 0 < a < 1:
        flags.append(f"alpha={params.alpha} outside (0, 1)")
        in_range = False
    if not b > 1:
        flags.append(f"beta={params.beta} not above 1")
        in_range = False
    if not 0 < e < 1:
        flags.append(f"epsilon={params.epsilon} outside (0, 1)")
        in_range = False
    elif e >= Fraction(1, 2):
        flags.append(f"epsilon={params.epsilon} is a degenerate concentration slack")
    lhs = params.colour_factor
    rhs = 1 - params.weight_factor / 2
    base_first = FIRST_COMPONENT_BASE ** float(b)
    base_second = 2 ** float(rhs)
    for name, base in (("1.657^beta", base_first), ("2^(k'/k) (k large)", base_second)):
        if base >= TARGET_BASE:
            flags.append(f"{name} = {base:.5f} is not below {TARGET_BASE}")
    rep = dict(alpha=params.alpha, beta=params.beta, epsilon=params.epsilon, in_range=in_range,
               feasible=lhs >= rhs, lhs=float(lhs), rhs=float(rhs), margin=float(lhs - rhs),
               base_first=base_first, base_second=base_second)
    if k is not None:
        kp = params.k_prime(k)
        rep.update(k=k, k_prime=kp, t_min=math.ceil(params.weight_factor * k),
                   lhs_k=float(lhs * k), margin_k=float(lhs * k - kp), feasible_at_k=lhs * k >= kp,
                   base_second_k=2 ** (kp / k))
    return ParamReport(flags=tuple(flags), **rep)


# ------------------------------------------------------------------ bipartite


def bipartition(g: ColouredGraph) -> tuple[frozenset, frozenset]:
    """Two-colouring with the smallest vertex of each component on the first side.

    Raises InvalidInputError naming an odd cycle if there is none.
    """
    adj = g.adjacency()
    side: dict[int, int] = {}
    parent: dict[int, int | None] = {}
    for root in range(1, g.n + 1):
        if root in side:
            continue
        side[root], parent[root] = 0, None
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for w in adj[u]:
                if w not in side:
                    side[w], parent[w] = 1 - side[u], u
                    queue.append(w)
                elif side[w] == side[u]:
                    cyc = _odd_cycle(parent, u, w)
                    raise InvalidInputError(
                        "graph is not bipartite: odd cycle " + "-".join(map(str, cyc + [cyc[0]])))
    return (frozenset(v for v, s in side.items() if s == 0),
            frozenset(v for v, s in side.items() if s == 1))


def _odd_cycle(parent, u, w) -> list[int]:
    def path(v):
        out = [v]
        while parent[v] is not None:
            v = parent[v]
            out.append(v)
        return out

    pu, pw = path(u), path(w)
    common = set(pu) & set(pw)
    lca = next(v for v in pu if v in common)
    # u .. lca followed by the tree path back down to w
    return pu[: pu.index(lca) + 1] + list(reversed(pw[: pw.index(lca)]))


def _check_bipartition(g: ColouredGraph, parts) -> tuple[frozenset, frozenset]:
    U, V = (frozenset(int(v) for v in p) for p in parts)
    if U & V or (U | V) != frozenset(range(1, g.n + 1)):
        raise InvalidInputError("bipartition must split 1..n into two disjoint parts")
    for e in g.edges:
        if (e.u in U) == (e.v in U):
            raise InvalidInputError(f"edge ({e.u},{e.v}) lies inside one part of the bipartition")
    return U, V


@dataclass(frozen=True)
class LongCycleResult:
    found: bool
    length: int | None
    k: int
    k_prime: int | None = None
    t: int | None = None
    component: str | None = None
    trials_used: int = 0
    details: dict = field(default_factory=dict)

    def __bool__(self):
        return self.found


def bipartite_colouring(g: ColouredGraph, parts=None) -> ColouredGraph:
    U, V = _check_bipartition(g, parts) if parts is not None else bipartition(g)
    edges = tuple(Edge(e.u, e.v, e.v if e.v in V else e.u, 0) for e in g.edges)
    used = sorted({e.colour for e in edges})
    remap = {c: i + 1 for i, c in enumerate(used)}
    edges = tuple(Edge(e.u, e.v, remap[e.colour], 0) for e in edges)
    return ColouredGraph(g.n, edges, g.specified)


def bipartite_long_cycle(g: ColouredGraph, k: int, trials: int = DEFAULT_INNER, seed: int = 0,
                         parts=None, e: tuple[int, int] | None = None) -> LongCycleResult:
    """Is there a cycle of length at least ``k`` through the specified edge of a bipartite graph?"""
    if k < 3:
        raise InvalidInputError(f"k must be at least 3, got {k}")
    if e is not None:
        g = _respecify(g, e)
    gc = bipartite_colouring(g, parts)
    kp = math.ceil(k / 2)
    best, used = search_weights(gc, kp, [0], trials, seed, stream=(0,))
    ell = best[0]
    found = math.isfinite(ell)
    return LongCycleResult(found, int(ell) if found else None, k, kp, 0,
                           "bipartite" if found else None, used)


def _respecify(g: ColouredGraph, e) -> ColouredGraph:
    v1, v2 = int(e[0]), int(e[1])
    if (min(v1, v2), max(v1, v2)) not in g.edge_index():
        raise InvalidInputError(f"({v1},{v2}) is not an edge of the graph")
    return g.with_specified(v1, v2)


# -------------------------------------------------------------------- general


def first_component(g: ColouredGraph, k: int, beta: float = GeneralParams.beta,
                    trials: int = DEFAULT_INNER, seed: int = 0, stream: tuple = (0,)) -> int | None:
    """Length of a cycle through the specified edge with length in ``[k, beta*k]``, if one is detected."""
    if k < 3:
        raise InvalidInputError(f"k must be at least 3, got {k}")
    bound = min(g.n, math.floor(_exact(beta) * k))
    if bound < k:
        return None
    gu = all_unique_colouring(g)
    best, _ = search_weights(gu, k, [0], trials, seed, stream, stop_at=bound)
    ell = best[0]
    return int(ell) if ell <= bound else None


def sample_S(g: ColouredGraph, alpha: float, rng: np.random.Generator) -> frozenset:
    if not 0 < alpha < 1:
        raise InvalidInputError(f"alpha must lie strictly between 0 and 1, got {alpha}")
    draws = rng.random(g.n)
    return frozenset(int(v) + 1 for v in np.flatnonzero(draws < alpha))


@dataclass(frozen=True)
class SubdividedInstance:
    """``G_S`` with provenance of each edge and the candidate specified edges.

    ``origin[i]`` is ``(edge key in G, colour option)`` for edge ``i`` of
    ``gs``, where the option is a vertex of ``S`` or ``None`` for a fresh
    colour.  Each candidate is the ``v1``-incident half of one copy of the
    specified edge, oriented away from ``v1``.
    """

    gs: ColouredGraph
    origin: tuple
    candidates: tuple[tuple[int, int], ...]
    S: frozenset

    def with_candidate(self, i: int) -> ColouredGraph:
        return self.gs.with_specified(*self.candidates[i])


def build_GS(g: ColouredGraph, S, e: tuple[int, int] | None = None) -> SubdividedInstance:
    S = frozenset(S)
    v1, v2 = e if e is not None else g.specified
    spec = (min(v1, v2), max(v1, v2))
    if spec not in g.edge_index():
        raise InvalidInputError(f"({v1},{v2}) is not an edge of the graph")
    n = g.n
    nxt = n + 1
    fresh = n + 1  # raw colours above n are unique per edge
    raw, origin, candidates = [], [], []
    for ed in g.edges:
        u, v = ed.key
        inside = [x for x in (u, v) if x in S]
        split = len(inside) == 1
        if inside:
            options = inside
        else:
            options = [None]
        for opt in options:
            colour = opt if opt is not None else fresh
            w = 1 if split else 0
            s = nxt
            nxt += 1
            raw.append((u, s, colour, w))
            raw.append((v, s, colour, w))
            origin.extend([(ed.key, opt), (ed.key, opt)])
            if ed.key == spec:
                candidates.append((v1, s))
        if not inside:
            fresh += 1
    edges = [Edge(a, b, c, w) for a, b, c, w in raw]
    used = sorted({x.colour for x in edges})
    remap = {c: i + 1 for i, c in enumerate(used)}
    edges = tuple(Edge(x.u, x.v, remap[x.colour], x.weight) for x in edges)
    gs = ColouredGraph(nxt - 1, edges, candidates[0])
    return SubdividedInstance(gs, tuple(origin), tuple(candidates), S)


def general_long_cycle(g: ColouredGraph, k: int, params: GeneralParams | None = None,
                       outer_trials: int = DEFAULT_OUTER, inner_trials: int = DEFAULT_INNER,
                       seed: int = 0, e: tuple[int, int] | None = None) -> LongCycleResult:
    """Is there a cycle of length at least ``k`` through the specified edge?

    ``True`` answers are always correct; the reported length is that of an
    actual cycle through the edge.  A ``False`` answer may be wrong with small
    probability when a cycle of length at least ``beta*k`` exists.
    """
    params = params or GeneralParams()
    rep = check_params(params, k)
    if not rep.ok:
        raise InvalidInputError("infeasible parameters: " + "; ".join(rep.flags or ("detection condition fails",))
                                + f" (lhs={rep.lhs:.6f}, rhs={rep.rhs:.6f})")
    if k < 3:
        raise InvalidInputError(f"k must be at least 3, got {k}")
    if outer_trials < 0 or inner_trials < 1:
        raise InvalidInputError("outer_trials must be >= 0 and inner_trials >= 1")
    if e is not None:
        g = _respecify(g, e)
    plain = all_unique_colouring(g)
    ell = first_component(plain, k, params.beta, inner_trials, seed, stream=(0,))
    if ell is not None:
        return LongCycleResult(True, ell, k, component="first", trials_used=0)
    kp = params.k_prime(k)
    ts = list(params.t_range(k))
    if k > g.n or not ts:
        return LongCycleResult(False, None, k, kp, trials_used=outer_trials)
    for j in range(outer_trials):
        S = sample_S(g, params.alpha, trial_rng(seed, (1,), j))
        inst = build_GS(plain, S)
        for ci in range(len(inst.candidates)):
            gs = inst.with_candidate(ci)
            best, _ = search_weights(gs, kp, ts, inner_trials, seed, stream=(2, j, ci))
            # a 4-cycle of G_S is the two copies of one edge, not a cycle of G;
            # it has weight 0 while every t tried is positive, but stay explicit
            hits = [t for t in ts if math.isfinite(best[t]) and best[t] >= 6]
            if hits:
                t = hits[0]
                length = int(best[t]) // 2
                return LongCycleResult(True, length, k, kp, t, "sampled", j + 1,
                                       {"gs_length": int(best[t]), "S": sorted(S), "candidate": ci})
    return LongCycleResult(False, None, k, kp, trials_used=outer_trials)
