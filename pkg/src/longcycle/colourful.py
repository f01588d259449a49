"""Shortest k-colourful weight-t cycle through the specified edge.

One trial samples a colour matrix ``A`` and sieving values ``r``, ``x``, then
sums ``det(M_b)`` over all filter vectors ``b`` in ``{0,1}^k``.  In
characteristic 2 the determinant is the permanent, i.e. a sum over cycle
covers of the labelled digraph behind ``M_b``; the sum over ``b`` cancels
every cover that is not a single cycle through the specified arc with ``k``
distinctly coloured rainbow arcs, leaving monomials ``W^t Y^(i-k) Z^(n-i)``
for qualifying cycles of length ``i``.

Two determinant backends are provided:

``"grid"`` (default)
    evaluates the matrix at field points, takes field determinants by
    elimination in compiled code and recovers coefficients by interpolation.
``"berkowitz"``
    division-free Berkowitz over :class:`~longcycle.poly.TriPoly`; exact but
    slow, kept as a reference.

The grid backend has two point layouts.  ``"full"`` recovers the whole of
``h`` up to degree ``n`` in every variable, so every trial costs the same
number of determinants whatever ``k`` is.  ``"compact"`` uses that only covers
with at least ``k`` rainbow arcs survive the sieve: with ``Y = lam*mu`` and
``Z = lam`` the wanted terms are exactly the top ``lam`` degree ``n - k``,
which needs ``(n-k+1)^2`` points instead of ``(n+1)(n-1)``.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field, replace
from functools import lru_cache

import numpy as np

from .errors import InvalidInputError
from .gf2k import FieldCtx, TABLE_KAPPA, field_for_order, field_tables, inv, mul, mul_array, power, sample_array
from .graph import ColouredGraph
from .oracle import Arc, LabelledMultigraph
from .poly import PolyRing, TriPoly, monomial, poly_zero

DEFAULT_TRIALS = 64
BACKENDS = ("grid", "berkowitz")
GRIDS = ("full", "compact")

PolyMatrix = list  # n x n nested list of TriPoly; row i is vertex i + 1


@dataclass(frozen=True)
class SieveConfig:
    """Randomness of one trial plus the filter vector ``b``.

    ``r`` and ``x`` map edge keys ``(min, max)`` to field elements; ``x`` has
    no entry for the specified edge.
    """

    A: np.ndarray
    b: tuple[int, ...]
    r: dict
    x: dict

    @property
    def k(self) -> int:
        return self.A.shape[1]

    def with_b(self, b) -> "SieveConfig":
        return replace(self, b=tuple(int(v) & 1 for v in b))


@dataclass(frozen=True)
class ColourfulResult:
    length: float
    trials_used: int
    per_trial_lengths: tuple = field(default=())

    def __post_init__(self):
        if math.isfinite(self.length) and self.length < 3:
            raise InvalidInputError(f"finite length must be a cycle length, got {self.length}")

    @property
    def found(self) -> bool:
        return math.isfinite(self.length)


def trial_rng(seed: int, stream: tuple = (), trial: int = 0) -> np.random.Generator:
    """Independent generator for one trial, split off ``seed`` by counter."""
    return np.random.default_rng(np.random.SeedSequence(int(seed), spawn_key=(*stream, trial)))


def _spec_key(g: ColouredGraph) -> tuple[int, int]:
    v1, v2 = g.specified
    return (min(v1, v2), max(v1, v2))


def sample_config(g: ColouredGraph, k: int, ctx: FieldCtx, rng: np.random.Generator) -> SieveConfig:
    """Draw ``A`` uniformly from {0,1}^(s x k), then ``r`` per edge, then ``x`` per non-specified edge."""
    A = rng.integers(0, 2, size=(g.s, k), dtype=np.int64)
    rv = sample_array(ctx, rng, g.m)
    spec = _spec_key(g)
    others = [e.key for e in g.edges if e.key != spec]
    xv = sample_array(ctx, rng, len(others))
    r = {e.key: int(v) for e, v in zip(g.edges, rv)}
    x = {key: int(v) for key, v in zip(others, xv)}
    return SieveConfig(A, (0,) * k, r, x)


def _check_config(g: ColouredGraph, cfg: SieveConfig):
    if cfg.A.ndim != 2 or cfg.A.shape[0] != g.s:
        raise InvalidInputError(f"A must have s={g.s} rows, got shape {cfg.A.shape}")
    if len(cfg.b) != cfg.A.shape[1]:
        raise InvalidInputError(f"b has length {len(cfg.b)}, A has {cfg.A.shape[1]} columns")
    spec = _spec_key(g)
    keys = {e.key for e in g.edges}
    if set(cfg.r) != keys or set(cfg.x) != keys - {spec}:
        raise InvalidInputError("r needs one value per edge and x one per non-specified edge")


def _filter_bit(cfg: SieveConfig, colour: int) -> int:
    return int(np.dot(cfg.A[colour - 1], cfg.b)) & 1


def _default_caps(g: ColouredGraph, caps):
    caps = (g.n, g.n, g.n) if caps is None else tuple(int(c) for c in caps)
    if len(caps) != 3 or min(caps) < g.n:
        raise InvalidInputError(f"caps must be at least (n, n, n) = {(g.n,) * 3}, got {caps}")
    return caps


def arc_multigraph(g: ColouredGraph, cfg: SieveConfig, ctx: FieldCtx | None = None,
                   caps=None) -> LabelledMultigraph:
    """The labelled digraph behind ``M_b`` with every arc listed separately.

    Vertex ``v`` becomes index ``v - 1``.  Each non-specified edge gives two
    extra arcs ``x*Y`` and two rainbow arcs; a rainbow arc switched off by
    ``b`` is kept with label zero so the arc list does not depend on ``b``.
    """
    _check_config(g, cfg)
    ctx = ctx or field_for_order(g.n)
    caps = _default_caps(g, caps)
    v1, v2 = g.specified
    spec = _spec_key(g)
    zero = poly_zero(ctx, caps)
    arcs = [Arc(u - 1, u - 1, monomial(ctx, caps, 1, 0, 0, 1))
            for u in range(1, g.n + 1) if u not in (v1, v2)]
    for e in g.edges:
        bit = _filter_bit(cfg, e.colour)
        rainbow = monomial(ctx, caps, cfg.r[e.key], e.weight, 0, 0)
        if e.key == spec:
            arcs.append(Arc(v1 - 1, v2 - 1, rainbow if bit else zero))
            continue
        extra = monomial(ctx, caps, cfg.x[e.key], 0, 1, 0)
        arcs.append(Arc(e.u - 1, e.v - 1, extra))
        arcs.append(Arc(e.v - 1, e.u - 1, extra))
        # edges are stored with u < v: the forward rainbow arc gets a^T b,
        # the backward one 1 + a^T b
        arcs.append(Arc(e.u - 1, e.v - 1, rainbow if bit else zero))
        arcs.append(Arc(e.v - 1, e.u - 1, zero if bit else rainbow))
    return LabelledMultigraph(g.n, tuple(arcs))


def build_matrix(g: ColouredGraph, cfg: SieveConfig, ctx: FieldCtx | None = None,
                 caps=None) -> PolyMatrix:
    """``M_b`` as a nested list of TriPoly; entry ``[u-1][v-1]`` sums the arcs u -> v."""
    ctx = ctx or field_for_order(g.n)
    caps = _default_caps(g, caps)
    return arc_multigraph(g, cfg, ctx, caps).label_matrix(PolyRing(ctx, caps))


def berkowitz_det(M, ring=None):
    """Determinant (equal to the permanent in characteristic 2) without division.

    ``ring`` supplies ``zero``, ``one``, ``add`` and ``mul``; a
    :class:`~longcycle.gf2k.FieldCtx` works for field matrices.  It is inferred
    for TriPoly entries.
    """
    n = len(M)
    if any(len(row) != n for row in M):
        raise InvalidInputError("matrix is not square")
    if ring is None:
        if n and isinstance(M[0][0], TriPoly):
            ring = PolyRing(M[0][0].ctx, M[0][0].caps)
        else:
            raise InvalidInputError("ring must be given for non-TriPoly entries")
    if n == 0:
        return ring.one
    add, mul_ = ring.add, ring.mul

    def dot(u, v):
        acc = ring.zero
        for a, b in zip(u, v):
            acc = add(acc, mul_(a, b))
        return acc

    # p holds the characteristic polynomial of the leading block (signs vanish)
    p = [ring.one, M[0][0]]
    for r in range(1, n):
        row = M[r][:r]
        col = [M[i][r] for i in range(r)]
        toe = [ring.one, M[r][r]]
        v = col
        for j in range(r):
            toe.append(dot(row, v))
            if j + 1 < r:
                v = [dot(M[i][:r], v) for i in range(r)]
        new = []
        for i in range(r + 2):
            acc = ring.zero
            for l in range(max(0, i - len(toe) + 1), min(i, r) + 1):
                acc = add(acc, mul_(toe[i - l], p[l]))
            new.append(acc)
        p = new
    return p[n]


# ---------------------------------------------------------------- grid backend


@dataclass(frozen=True)
class _Layout:
    core_of: np.ndarray
    is_end: np.ndarray
    eu: np.ndarray
    ev: np.ndarray
    ecol: np.ndarray
    ew: np.ndarray
    espec: np.ndarray
    elim_edges: np.ndarray
    heavy: int  # number of weight-1 edges
    heavy_colours: int  # distinct colours among weight-1 edges
    bipartite: bool
    rainbow_cap: int  # most rainbow arcs a cover with nonzero label can have


@lru_cache(maxsize=64)
def _layout(g: ColouredGraph) -> _Layout:
    n = g.n
    v1, v2 = g.specified
    spec = _spec_key(g)
    incident = [[] for _ in range(n + 1)]
    for i, e in enumerate(g.edges):
        incident[e.u].append(i)
        incident[e.v].append(i)
    # an independent set of degree-2 vertices with nonzero loop entries is
    # removed by a Schur step; subdivision vertices are the typical case
    removed = set()
    for v in range(n, 0, -1):
        if v in (v1, v2) or len(incident[v]) != 2:
            continue
        nbrs = {g.edges[i].u + g.edges[i].v - v for i in incident[v]}
        if nbrs & removed:
            continue
        removed.add(v)
    order = [v for v in range(1, n + 1) if v not in removed and v not in (v1, v2)] + [v1, v2]
    core_of = np.full(n, -1, dtype=np.int64)
    for idx, v in enumerate(order):
        core_of[v - 1] = idx
    is_end = np.zeros(n, dtype=np.int64)
    is_end[[v1 - 1, v2 - 1]] = 1
    elim = np.array([incident[v] for v in sorted(removed)], dtype=np.int64).reshape(-1, 2)
    sides = _two_colouring(g)
    espec = np.zeros(g.m, dtype=np.int64)
    for i, e in enumerate(g.edges):
        if e.key == spec:
            espec[i] = 1 if e.u == v1 else 2
    arr = lambda vals: np.array(list(vals), dtype=np.int64)
    return _Layout(
        core_of=core_of,
        is_end=is_end,
        eu=arr(e.u - 1 for e in g.edges),
        ev=arr(e.v - 1 for e in g.edges),
        ecol=arr(e.colour - 1 for e in g.edges),
        ew=arr(e.weight for e in g.edges),
        espec=espec,
        elim_edges=elim,
        heavy=sum(e.weight for e in g.edges),
        heavy_colours=len({e.colour for e in g.edges if e.weight}),
        bipartite=sides is not None,
        rainbow_cap=_rainbow_cap(g, sides),
    )


def _two_colouring(g: ColouredGraph):
    adj = g.adjacency()
    side = [-1] * (g.n + 1)
    for root in range(1, g.n + 1):
        if side[root] >= 0:
            continue
        side[root] = 0
        stack = [root]
        while stack:
            u = stack.pop()
            for w in adj[u]:
                if side[w] < 0:
                    side[w] = 1 - side[u]
                    stack.append(w)
                elif side[w] == side[u]:
                    return None
    return side


def _rainbow_cap(g: ColouredGraph, sides) -> int:
    """Upper bound on the rainbow arcs of a cover whose label is not identically zero.

    If all edges at a vertex ``s`` share a colour and ``s`` is above (or
    below) all its neighbours, its in-arc and out-arc carry the factors
    ``a^T b`` and ``1 + a^T b`` (or the reverse), whose product vanishes for
    every ``b``; so at most one of them is rainbow.  In a bipartite graph every
    arc meets each side once, so either side's per-vertex caps bound the total.
    """
    if sides is None:
        return g.n
    adj = g.adjacency()
    colours = [set() for _ in range(g.n + 1)]
    for e in g.edges:
        colours[e.u].add(e.colour)
        colours[e.v].add(e.colour)
    caps = [0, 0]
    for v in range(1, g.n + 1):
        nb = adj[v]
        single = (v not in g.specified and len(colours[v]) == 1
                  and (all(w < v for w in nb) or all(w > v for w in nb)))
        caps[sides[v]] += 1 if single else min(2, len(nb))
    return min(g.n, *caps)


def configure_threads() -> int:
    """Apply the LONGCYCLE_THREADS cap to the compiled kernels; returns the thread count."""
    import numba

    # the bundled TBB is often too old; prefer OpenMP and fall back to workqueue
    numba.config.THREADING_LAYER_PRIORITY = ["omp", "workqueue", "tbb"]
    limit = numba.config.NUMBA_NUM_THREADS
    env = os.environ.get("LONGCYCLE_THREADS")
    if env:
        try:
            want = int(env)
        except ValueError:
            raise InvalidInputError(f"LONGCYCLE_THREADS must be an integer, got {env!r}") from None
        if want < 1:
            raise InvalidInputError(f"LONGCYCLE_THREADS must be positive, got {want}")
        limit = min(limit, want)
    numba.set_num_threads(limit)
    return limit


def _grid_values(g: ColouredGraph, cfg: SieveConfig, ctx: FieldCtx, wpts, ys, zs) -> np.ndarray:
    from ._kernels import grid_det_sum

    if ctx.kappa > TABLE_KAPPA:
        raise InvalidInputError(f"the grid backend supports graphs with at most 2^{TABLE_KAPPA - 1} vertices")
    lay = _layout(g)
    log, exp = field_tables(ctx)
    k = cfg.k
    weights = 1 << np.arange(k, dtype=np.int64)
    amask = (cfg.A.astype(np.int64) * weights).sum(axis=1) if k else np.zeros(g.s, dtype=np.int64)
    er = np.array([cfg.r[e.key] for e in g.edges], dtype=np.int64)
    spec = _spec_key(g)
    ex = np.array([cfg.x.get(e.key, 0) if e.key != spec else 0 for e in g.edges], dtype=np.int64)
    configure_threads()
    return grid_det_sum(k, lay.core_of, lay.is_end, lay.eu, lay.ev, lay.ecol, lay.ew, er, ex,
                        lay.espec, lay.elim_edges, amask.astype(np.int64),
                        np.asarray(wpts, dtype=np.int64), np.asarray(ys, dtype=np.int64),
                        np.asarray(zs, dtype=np.int64), log, exp)


@lru_cache(maxsize=256)
def _vandermonde_inverse(ctx: FieldCtx, pts: tuple[int, ...]) -> np.ndarray:
    """Inverse of ``V[i][j] = pts[i]^j`` over the field, by Gauss-Jordan."""
    d = len(pts)
    aug = []
    for i, p in enumerate(pts):
        row, acc = [], 1
        for _ in range(d):
            row.append(acc)
            acc = mul(ctx, acc, p)
        aug.append(row + [1 if j == i else 0 for j in range(d)])
    for c in range(d):
        piv = next(r for r in range(c, d) if aug[r][c])
        aug[c], aug[piv] = aug[piv], aug[c]
        f = inv(ctx, aug[c][c])
        aug[c] = [mul(ctx, f, a) for a in aug[c]]
        for r in range(d):
            if r != c and aug[r][c]:
                f = aug[r][c]
                aug[r] = [a ^ mul(ctx, f, b) for a, b in zip(aug[r], aug[c])]
    out = np.array([row[d:] for row in aug], dtype=np.uint64)
    out.flags.writeable = False
    return out


def _interpolate(ctx: FieldCtx, vals: np.ndarray, pts, axis: int) -> np.ndarray:
    """Replace values at ``pts`` along ``axis`` by polynomial coefficients."""
    vinv = _vandermonde_inverse(ctx, tuple(int(p) for p in pts))
    v = np.moveaxis(np.asarray(vals, dtype=np.uint64), axis, 0)
    out = np.zeros_like(v)
    for i in range(v.shape[0]):
        col = vinv[:, i].reshape((-1,) + (1,) * (v.ndim - 1))
        out ^= mul_array(ctx, col, v[i][None])
    return np.moveaxis(out, 0, axis)


def _field_outer(ctx: FieldCtx, a, b) -> np.ndarray:
    return mul_array(ctx, np.asarray(a)[:, None], np.asarray(b)[None, :])


def grid_polynomial(g: ColouredGraph, cfg: SieveConfig, ctx: FieldCtx | None = None) -> TriPoly:
    """The full sieve sum ``h`` with caps ``(n, n, n)`` recovered by interpolation."""
    ctx = ctx or field_for_order(g.n)
    n = g.n
    caps = (n, n, n)
    out = np.zeros((n + 1,) * 3, dtype=np.uint64)
    if n < 2:
        return TriPoly(ctx, caps, out)
    dw = min(n, _layout(g).heavy)
    wpts = np.arange(dw + 1)
    ypts = np.arange(n + 1)
    zpts = np.arange(1, n)
    ys = np.repeat(ypts, len(zpts))
    zs = np.tile(zpts, len(ypts))
    H = _grid_values(g, cfg, ctx, wpts, ys, zs).reshape(len(wpts), len(ypts), len(zpts))
    C = _interpolate(ctx, H, wpts, 0)
    C = _interpolate(ctx, C, ypts, 1)
    C = _interpolate(ctx, C, zpts, 2)
    out[: dw + 1, :, : n - 1] = C
    return TriPoly(ctx, caps, out)


def _compact_coefficients(g: ColouredGraph, cfg: SieveConfig, ctx: FieldCtx) -> np.ndarray:
    """``c[t, a]`` = coefficient of ``W^t Y^a Z^(n-k-a)`` in ``h``.

    The wanted terms have exactly ``k`` rainbow arcs of distinct colours, so
    their W-degree is at most the number of colours carried by weight-1
    edges.  In a bipartite graph every cycle of a cover is even apart from
    loops, hence ``a = k (mod 2)`` and the ``mu`` polynomial is
    ``mu^(k mod 2) * Q(mu^2)``; squaring is injective in characteristic 2, so
    half as many ``mu`` points suffice.
    """
    n, k = g.n, cfg.k
    D = n - k
    lay = _layout(g)
    dw = min(k, lay.heavy_colours)
    # lam-degree is n minus the number of rainbow arcs, so it is at least lo
    lo = max(0, n - lay.rainbow_cap)
    if lo > D:
        return np.zeros((dw + 1, D + 1), dtype=np.uint64)
    wpts = np.arange(dw + 1)
    lam = np.arange(1, D - lo + 2)
    if lay.bipartite:
        odd = k % 2
        dq = (D - odd) // 2
        mu = np.arange(1, dq + 2)
    else:
        mu = np.arange(D + 1)
    ys = _field_outer(ctx, lam, mu).reshape(-1)
    zs = np.repeat(lam, len(mu))
    H = _grid_values(g, cfg, ctx, wpts, ys, zs).reshape(len(wpts), len(lam), len(mu))
    if lo:
        scale = np.array([power(ctx, inv(ctx, int(x)), lo) for x in lam], dtype=np.uint64)
        H = mul_array(ctx, H, scale[None, :, None])
    top = _interpolate(ctx, H, lam, 1)[:, D - lo, :]
    top = _interpolate(ctx, top, wpts, 0)
    if not lay.bipartite:
        return _interpolate(ctx, top, mu, 1)
    if odd:
        top = mul_array(ctx, top, np.array([inv(ctx, int(m)) for m in mu], dtype=np.uint64)[None, :])
    nu = mul_array(ctx, mu, mu)
    q = _interpolate(ctx, top, nu, 1)
    out = np.zeros((dw + 1, D + 1), dtype=np.uint64)
    out[:, odd::2] = q
    return out


def sieve_polynomial(g: ColouredGraph, cfg: SieveConfig, ctx: FieldCtx | None = None,
                     backend: str = "grid") -> TriPoly:
    """``h = sum_b det(M_b)`` as a TriPoly with caps ``(n, n, n)``."""
    ctx = ctx or field_for_order(g.n)
    _check_config(g, cfg)
    if backend == "grid":
        return grid_polynomial(g, cfg, ctx)
    if backend != "berkowitz":
        raise InvalidInputError(f"unknown backend {backend!r}; choose from {BACKENDS}")
    caps = (g.n,) * 3
    ring = PolyRing(ctx, caps)
    h = ring.zero
    for bits in range(1 << cfg.k):
        b = [(bits >> j) & 1 for j in range(cfg.k)]
        h = ring.add(h, berkowitz_det(build_matrix(g, cfg.with_b(b), ctx, caps), ring))
    return h


def lengths_from_polynomial(h: TriPoly, n: int, k: int, ts) -> dict[int, float]:
    """Smallest ``i`` in ``[k, n]`` with ``[W^t Y^(i-k) Z^(n-i)] h != 0``, per ``t``."""
    out = {}
    for t in ts:
        out[t] = math.inf
        if t > h.caps[0]:
            continue
        sl = h.coeffs[t]
        for i in range(k, n + 1):
            if i - k <= h.caps[1] and n - i <= h.caps[2] and sl[i - k, n - i]:
                out[t] = float(i)
                break
    return out


def trial_lengths(g: ColouredGraph, k: int, ts, cfg: SieveConfig, ctx: FieldCtx | None = None,
                  backend: str = "grid", grid: str = "full") -> dict[int, float]:
    """Answers of one trial (one ``A, r, x``) for every weight in ``ts`` at once."""
    ctx = ctx or field_for_order(g.n)
    ts = list(ts)
    if grid not in GRIDS:
        raise InvalidInputError(f"unknown grid {grid!r}; choose from {GRIDS}")
    # a qualifying cycle needs k distinct colours, t of them on weight-1 edges
    live = [t for t in ts if t <= _layout(g).heavy_colours]
    if k > g.n or k > g.s or g.n < 3 or not live:
        return {t: math.inf for t in ts}
    if backend == "grid" and grid == "compact":
        _check_config(g, cfg)
        c = _compact_coefficients(g, cfg, ctx)
        out = {}
        for t in ts:
            out[t] = math.inf
            if t < c.shape[0]:
                nz = np.flatnonzero(c[t])
                if nz.size:
                    out[t] = float(k + nz[0])
        return out
    h = sieve_polynomial(g, cfg, ctx, backend)
    return lengths_from_polynomial(h, g.n, k, ts)


def _validate(g: ColouredGraph, k: int, t: int):
    if k < 1:
        raise InvalidInputError(f"k must be at least 1, got {k}")
    if not 0 <= t <= k:
        raise InvalidInputError(f"t must lie in 0..k={k}, got {t}")


def algorithm_A(g: ColouredGraph, k: int, t: int, rng: np.random.Generator,
                backend: str = "grid", grid: str = "full") -> float:
    """One randomized trial: a length that is exact with probability above 1/8, else larger or inf.

    A finite answer is always the length of a genuine k-colourful weight-t
    cycle through the specified edge, and never below the shortest one.
    """
    _validate(g, k, t)
    ctx = field_for_order(g.n)
    cfg = sample_config(g, k, ctx, rng)
    return trial_lengths(g, k, [t], cfg, ctx, backend, grid)[t]


def shortest_colourful_cycle(g: ColouredGraph, k: int, t: int, trials: int = DEFAULT_TRIALS,
                             seed: int = 0, stream: tuple = (), backend: str = "grid",
                             grid: str = "full") -> ColourfulResult:
    """Minimum over ``trials`` independent runs of :func:`algorithm_A`."""
    _validate(g, k, t)
    if trials < 1:
        raise InvalidInputError(f"trials must be at least 1, got {trials}")
    lengths = tuple(algorithm_A(g, k, t, trial_rng(seed, stream, i), backend, grid)
                    for i in range(trials))
    return ColourfulResult(min(lengths), trials, lengths)


def search_weights(g: ColouredGraph, k: int, ts, trials: int, seed: int, stream: tuple = (),
                   grid: str = "compact", stop_at: float | None = math.inf) -> tuple[dict[int, float], int]:
    """Best length per weight in ``ts``, sharing one sieve sum per trial across all weights.

    Each weight on its own gets exactly the guarantee of
    :func:`shortest_colourful_cycle`; trials are merely reused.  The search
    ends early once some weight has an answer ``<= stop_at`` (never if
    ``stop_at`` is None).  Returns the answers and the number of trials run.
    """
    ts = sorted(set(ts))
    for t in ts:
        _validate(g, k, t)
    ctx = field_for_order(g.n)
    best = {t: math.inf for t in ts}
    for i in range(trials):
        cfg = sample_config(g, k, ctx, trial_rng(seed, stream, i))
        for t, ell in trial_lengths(g, k, ts, cfg, ctx, "grid", grid).items():
            best[t] = min(best[t], ell)
        done = min(best.values())
        if stop_at is not None and math.isfinite(done) and done <= stop_at:
            return best, i + 1
    return best, trials
