"""Poisson equation ``L_G x = L_H v`` on lattice graphs, pinned at the empty coalition.

On a connected graph the Laplacian kernel is the constants, so the equation has
exactly one solution with ``x(empty) = 0``. Two routes are provided:

* ``cg``: conjugate gradient on the singular system, iterates kept orthogonal
  to the constants, then shifted so that ``x(empty) = 0``;
* ``dense``: Cholesky solve of the Laplacian with the empty row and column
  deleted (positive definite on a connected graph), assembled from the edge list.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.linalg import cho_factor, cho_solve

from ..games import GameError
from .lattice import LatticeGraph
from .operators import as_vertex_function, laplacian, laplacian_matrix

DEFAULT_TOL = 1e-12
MAX_DENSE_PLAYERS = 10
MAX_RESTARTS = 8


class ConvergenceError(RuntimeError):
    """CG ran out of iterations; carries the best residual norm reached."""

    def __init__(self, message: str, residual: float, iterations: int):
        super().__init__(message)
        self.residual = residual
        self.iterations = iterations


@dataclass(frozen=True)
class PoissonSolution:
    x: np.ndarray
    residual_norm: float
    iterations: int
    method: str


def _check_graph(G: LatticeGraph):
    if not G.is_connected():
        raise GameError("the Poisson solve needs a connected graph G (pin at the empty set would not be unique)")


def _deflate(r: np.ndarray) -> np.ndarray:
    return r - r.mean(axis=0)


def _cg(G: LatticeGraph, b: np.ndarray, tol: float, maxiter: int) -> tuple[np.ndarray, int]:
    """Column-batched CG on ``L_G x = b`` for ``b`` orthogonal to the constants."""
    target = tol * np.maximum(1.0, np.linalg.norm(b, axis=0))
    x = np.zeros_like(b)
    iterations = 0
    best = np.inf
    for _ in range(MAX_RESTARTS):
        r = _deflate(b - laplacian(G, x))
        rr = np.einsum("ij,ij->j", r, r)
        if np.all(np.sqrt(rr) <= target):
            return x, iterations
        p = r.copy()
        while iterations < maxiter:
            active = np.sqrt(rr) > target
            if not active.any():
                break
            Ap = laplacian(G, p)
            pAp = np.einsum("ij,ij->j", p, Ap)
            alpha = np.divide(rr, pAp, out=np.zeros_like(rr), where=active & (pAp > 0))
            x += alpha * p
            r = _deflate(r - alpha * Ap)
            rr_new = np.einsum("ij,ij->j", r, r)
            beta = np.divide(rr_new, rr, out=np.zeros_like(rr), where=active & (rr > 0))
            p = np.where(active, r + beta * p, p)
            rr = np.where(active, rr_new, rr)
            iterations += 1
        true = np.linalg.norm(b - laplacian(G, x), axis=0)
        best = min(best, float(np.max(true / np.maximum(1.0, np.linalg.norm(b, axis=0)))))
        if np.all(true <= target):
            return x, iterations
        if iterations >= maxiter:
            break
    raise ConvergenceError(
        f"CG did not reach relative residual {tol:g} within {maxiter} iterations (best {best:.3g})",
        residual=best,
        iterations=iterations,
    )


@lru_cache(maxsize=16)
def _pinned_factor(G: LatticeGraph):
    L = laplacian_matrix(G)
    return cho_factor(L[1:, 1:], lower=True)


def solve_laplacian(
    G: LatticeGraph,
    b,
    tol: float = DEFAULT_TOL,
    method: str = "cg",
) -> PoissonSolution:
    """Solve ``L_G x = b`` with ``x(empty) = 0``; ``b`` must sum to zero over the vertices."""
    _check_graph(G)
    b = as_vertex_function(b, G.n)
    squeeze = b.ndim == 1
    B = b.reshape(b.shape[0], -1)
    drift = np.abs(B.sum(axis=0))
    if np.any(drift > 1e-9 * np.maximum(1.0, np.abs(B).sum(axis=0))):
        raise GameError("right-hand side is not orthogonal to the constants; the system is unsolvable")
    if method == "cg":
        maxiter = 10 * G.num_vertices
        X, iterations = _cg(G, _deflate(B), tol, maxiter)
        X = X - X[0]
    elif method == "dense":
        if G.n > MAX_DENSE_PLAYERS:
            raise GameError(f"dense solve is limited to n <= {MAX_DENSE_PLAYERS}")
        X = np.zeros_like(B)
        X[1:] = cho_solve(_pinned_factor(G), B[1:])
        iterations = 0
    else:
        raise GameError(f"unknown method {method!r} (cg | dense)")
    residual = float(np.max(np.linalg.norm(laplacian(G, X) - B, axis=0)))
    return PoissonSolution(X[:, 0] if squeeze else X, residual, iterations, method)


def poisson_solve(
    G: LatticeGraph,
    H: LatticeGraph,
    v,
    tol: float = DEFAULT_TOL,
    method: str = "cg",
) -> PoissonSolution:
    """Pinned solution of ``L_G x = L_H v`` for a subgraph ``H`` of ``G``."""
    if not G.contains(H):
        raise GameError(f"H ({H.kind}) is not an edge subgraph of G ({G.kind}, k={G.k})")
    return solve_laplacian(G, laplacian(H, as_vertex_function(v, G.n)), tol, method)
