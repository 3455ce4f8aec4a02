"""Graph differential, its adjoint and the Laplacian on lattice graphs.

Vertex functions are arrays of shape ``(2^n,)`` or ``(2^n, m)`` (``m`` stacked
columns). Edge flows follow the canonical edge order of :meth:`LatticeGraph.edges`.
"""

from __future__ import annotations

import numpy as np

from ..games import GameError, TuGame, popcounts
from .lattice import LatticeGraph


def as_vertex_function(u, n: int) -> np.ndarray:
    x = u.worth if isinstance(u, TuGame) else np.asarray(u, dtype=float)
    if x.shape[0] != 1 << n:
        raise GameError(f"vertex function must have 2^{n} rows, got {x.shape[0]}")
    return x


def differential(G: LatticeGraph, u) -> np.ndarray:
    """``(du)(a, b) = u(b) - u(a)`` on every edge."""
    x = as_vertex_function(u, G.n)
    tails, heads = G.edges()
    return x[heads] - x[tails]


def adjoint(G: LatticeGraph, f) -> np.ndarray:
    """``(d*f)(v)`` = inflow into ``v`` minus outflow from ``v``."""
    f = np.asarray(f, dtype=float)
    if f.shape[0] != G.num_edges:
        raise GameError(f"edge flow must have {G.num_edges} rows, got {f.shape[0]}")
    tails, heads = G.edges()
    out = np.zeros((G.num_vertices,) + f.shape[1:])
    np.add.at(out, heads, f)
    np.subtract.at(out, tails, f)
    return out


def _sum_over_bits(x: np.ndarray, n: int, supersets: bool) -> np.ndarray:
    """Zeta transform: sum of ``x`` over all subsets (or supersets) of each mask."""
    out = x.copy()
    idx = np.arange(1 << n)
    for b in range(n):
        bit = 1 << b
        has = np.flatnonzero(idx & bit)
        if supersets:
            out[has ^ bit] += out[has]
        else:
            out[has] += out[has ^ bit]
    return out


def _graded_sums(x: np.ndarray, n: int, k: int, supersets: bool) -> np.ndarray:
    """Entry ``j`` sums ``x`` over supersets (or subsets) at distance exactly ``j``, ``j <= k``."""
    g = np.zeros((k + 1,) + x.shape)
    g[0] = x
    idx = np.arange(1 << n)
    for b in range(n):
        bit = 1 << b
        has = np.flatnonzero(idx & bit)
        dst, src = (has ^ bit, has) if supersets else (has, has ^ bit)
        # dst and src are disjoint, so the update order over j is irrelevant
        g[1:, dst] += g[:-1, src]
    return g


def _degree_column(G: LatticeGraph, x: np.ndarray) -> np.ndarray:
    deg = G.degree().astype(float)
    return deg.reshape((-1,) + (1,) * (x.ndim - 1))


def laplacian(G: LatticeGraph, u) -> np.ndarray:
    """``L u(v) = deg(v) u(v) - sum of u over neighbours``, evaluated without a matrix."""
    x = as_vertex_function(u, G.n)
    n = G.n
    if G.kind == "single":
        S = G.S
        idx = np.arange(1 << n)
        inter = idx & S
        shape = (-1,) + (1,) * (x.ndim - 1)
        below = (inter == 0).reshape(shape)
        above = (inter == S).reshape(shape)
        out = np.where(below, x - x[idx | S], 0.0)
        return np.where(above, x - x[idx & ~S], out)
    if G.k == n:
        # full lattice: deg(A) + 2 = 2^|A| + 2^(n-|A|)
        sizes = popcounts(n)
        weight = (2.0 ** sizes + 2.0 ** (n - sizes)).reshape((-1,) + (1,) * (x.ndim - 1))
        return weight * x - _sum_over_bits(x, n, False) - _sum_over_bits(x, n, True)
    up = _graded_sums(x, n, G.k, True)[1:].sum(axis=0)
    down = _graded_sums(x, n, G.k, False)[1:].sum(axis=0)
    return _degree_column(G, x) * x - up - down


def laplacian_matrix(G: LatticeGraph) -> np.ndarray:
    """Dense ``D - A`` assembled from the edge list (for small ``n`` and as an oracle)."""
    tails, heads = G.edges()
    L = np.zeros((G.num_vertices, G.num_vertices))
    np.add.at(L, (tails, heads), -1.0)
    np.add.at(L, (heads, tails), -1.0)
    np.add.at(L, (tails, tails), 1.0)
    np.add.at(L, (heads, heads), 1.0)
    return L

