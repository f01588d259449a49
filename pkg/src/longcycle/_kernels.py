"""Compiled inner loops for the grid determinant backend.

Field elements are int64 values below 2^kappa, multiplied through the log /
antilog tables of :func:`longcycle.gf2k.field_tables`.
"""

import numpy as np
from numba import config, njit, prange

# the bundled TBB is often too old; prefer OpenMP and fall back to workqueue
config.THREADING_LAYER_PRIORITY = ["omp", "workqueue", "tbb"]


@njit(cache=True, inline="always")
def _fmul(a, b, log, exp):
    if a == 0 or b == 0:
        return 0
    return exp[log[a] + log[b]]


@njit(cache=True, inline="always")
def _parity(x):
    x ^= x >> 32
    x ^= x >> 16
    x ^= x >> 8
    x ^= x >> 4
    x ^= x >> 2
    x ^= x >> 1
    return x & 1


@njit(cache=True)
def _det_inplace(M, nc, log, exp, q1):
    det = 1
    for c in range(nc):
        piv = -1
        for r in range(c, nc):
            if M[r, c] != 0:
                piv = r
                break
        if piv < 0:
            return 0
        if piv != c:
            for j in range(c, nc):
                tmp = M[c, j]
                M[c, j] = M[piv, j]
                M[piv, j] = tmp
        p = M[c, c]
        det = _fmul(det, p, log, exp)
        pinv = exp[q1 - log[p]]
        for i in range(c + 1, nc):
            a = M[i, c]
            if a == 0:
                continue
            f = _fmul(a, pinv, log, exp)
            for j in range(c + 1, nc):
                v = M[c, j]
                if v != 0:
                    M[i, j] ^= _fmul(f, v, log, exp)
    return det


@njit(cache=True, parallel=True)
def grid_det_sum(k, core_of, is_end, eu, ev, ecol, ew, er, ex, espec,
                 elim_edges, amask, wpts, ys, zs, log, exp):
    """Sum over all 2^k filter vectors of det(M_b) at every evaluation point.

    Points are ``(wpts[i], ys[p], zs[p])``; the result has shape
    ``(len(wpts), len(ys))``.  ``core_of[v]`` is the row of vertex ``v`` in the
    reduced matrix, or -1 for vertices removed up front by a Schur step on
    their loop entry ``Z`` (which must then be nonzero); ``elim_edges[j]``
    lists the two edges of the j-th removed vertex.  ``espec[e]`` is 0 for
    ordinary edges, 1 if the specified arc runs ``eu -> ev`` and 2 if it runs
    ``ev -> eu``.
    """
    q1 = exp.shape[0] // 2
    nw = wpts.shape[0]
    npair = ys.shape[0]
    m = eu.shape[0]
    n = core_of.shape[0]
    nc = 0
    for v in range(n):
        if core_of[v] >= 0:
            nc += 1
    nelim = elim_edges.shape[0]
    ncol = amask.shape[0]
    H = np.zeros((nw, npair), dtype=np.int64)
    for pt in prange(nw * npair):
        wi = pt // npair
        pi = pt % npair
        w = wpts[wi]
        y = ys[pi]
        z = zs[pi]
        X = np.empty(m, dtype=np.int64)
        R = np.empty(m, dtype=np.int64)
        for e in range(m):
            X[e] = _fmul(ex[e], y, log, exp)
            R[e] = _fmul(er[e], w, log, exp) if ew[e] == 1 else er[e]
        fwd = np.empty(m, dtype=np.int64)
        bwd = np.empty(m, dtype=np.int64)
        cbit = np.empty(ncol, dtype=np.int64)
        M = np.empty((nc, nc), dtype=np.int64)
        zinv = exp[q1 - log[z]] if z != 0 else 0
        zpow = 1
        for j in range(nelim):
            zpow = _fmul(zpow, z, log, exp)
        acc = 0
        for b in range(1 << k):
            for c in range(ncol):
                cbit[c] = _parity(amask[c] & b)
            for e in range(m):
                bit = cbit[ecol[e]]
                if espec[e] == 0:
                    fwd[e] = X[e] ^ (R[e] if bit == 1 else 0)
                    bwd[e] = X[e] ^ (0 if bit == 1 else R[e])
                elif espec[e] == 1:
                    fwd[e] = R[e] if bit == 1 else 0
                    bwd[e] = 0
                else:
                    fwd[e] = 0
                    bwd[e] = R[e] if bit == 1 else 0
            for i in range(nc):
                for j in range(nc):
                    M[i, j] = 0
            for v in range(n):
                cv = core_of[v]
                if cv >= 0 and is_end[v] == 0:
                    M[cv, cv] = z
            for e in range(m):
                cu = core_of[eu[e]]
                cw = core_of[ev[e]]
                if cu >= 0 and cw >= 0:
                    M[cu, cw] ^= fwd[e]
                    M[cw, cu] ^= bwd[e]
            for j in range(nelim):
                e1 = elim_edges[j, 0]
                e2 = elim_edges[j, 1]
                # orient both edges as (neighbour -> s, s -> neighbour)
                if core_of[eu[e1]] >= 0:
                    a = core_of[eu[e1]]
                    a_in = fwd[e1]
                    a_out = bwd[e1]
                else:
                    a = core_of[ev[e1]]
                    a_in = bwd[e1]
                    a_out = fwd[e1]
                if core_of[eu[e2]] >= 0:
                    c2 = core_of[eu[e2]]
                    c_in = fwd[e2]
                    c_out = bwd[e2]
                else:
                    c2 = core_of[ev[e2]]
                    c_in = bwd[e2]
                    c_out = fwd[e2]
                a_in = _fmul(a_in, zinv, log, exp)
                c_in = _fmul(c_in, zinv, log, exp)
                M[a, a] ^= _fmul(a_in, a_out, log, exp)
                M[a, c2] ^= _fmul(a_in, c_out, log, exp)
                M[c2, a] ^= _fmul(c_in, a_out, log, exp)
                M[c2, c2] ^= _fmul(c_in, c_out, log, exp)
            d = _det_inplace(M, nc, log, exp, q1)
            if d != 0:
                acc ^= _fmul(d, zpow, log, exp)
        H[wi, pi] = acc
    return H
