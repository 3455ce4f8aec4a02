"""Component games ``u_S^k`` and their links to the scaled SHoGa and the Shapley value.

``u_S^k`` is the pinned solution of ``L^k x = L_S u`` where ``L^k`` is the
Laplacian of the lattice graph with steps of size at most ``k`` and ``L_S`` the
Laplacian of the single-step graph for ``S``. On the full lattice ``u_S(N)``
equals the scaled SHoGa worth of ``S``; on the hypercube ``u_{i}(N)`` is the
Shapley value of player ``i``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ..games import CoalitionLike, GameError, TuGame, as_mask, popcounts
from .lattice import LatticeGraph
from .operators import adjoint, as_vertex_function, differential, laplacian
from .poisson import DEFAULT_TOL, solve_laplacian


def _coalitions_up_to(n: int, k: int) -> np.ndarray:
    sizes = popcounts(n)
    return np.flatnonzero((sizes >= 1) & (sizes <= k))


def _single_step_rhs(u: TuGame, masks: Sequence[int]) -> np.ndarray:
    return np.column_stack([laplacian(LatticeGraph.single_step(u.n, int(S)), u.worth) for S in masks])


def component_game(
    u: TuGame,
    S: CoalitionLike,
    k: int | None = None,
    method: str = "cg",
    tol: float = DEFAULT_TOL,
) -> TuGame:
    """``u_S^k``; ``k`` defaults to ``n`` (the full lattice)."""
    k = u.n if k is None else k
    mask = as_mask(S, u.n)
    size = bin(mask).count("1")
    if mask == 0:
        raise GameError("component game needs a nonempty coalition S")
    if not size <= k <= u.n:
        raise GameError(f"need |S| <= k <= n, got |S|={size}, k={k}, n={u.n}")
    sol = solve_laplacian(LatticeGraph.up_to(u.n, k), _single_step_rhs(u, [mask])[:, 0], tol, method)
    return TuGame(u.n, sol.x)


def component_games(
    u: TuGame,
    k: int | None = None,
    method: str = "cg",
    tol: float = DEFAULT_TOL,
) -> dict[int, TuGame]:
    """All ``u_S^k`` for ``1 <= |S| <= k``, solved as one batch; keyed by mask."""
    k = u.n if k is None else k
    if not 1 <= k <= u.n:
        raise GameError(f"k must be in 1..{u.n}, got {k}")
    masks = _coalitions_up_to(u.n, k)
    sol = solve_laplacian(LatticeGraph.up_to(u.n, k), _single_step_rhs(u, masks), tol, method)
    return {int(S): TuGame(u.n, sol.x[:, j]) for j, S in enumerate(masks)}


def shoga_via_hodge(u: TuGame, S: CoalitionLike, method: str = "cg", tol: float = DEFAULT_TOL) -> float:
    """``u_S(N)`` on the full lattice; equals ``shoga_scaled(u)(S)``."""
    return float(component_game(u, S, u.n, method, tol).worth[u.grand])


def shapley_via_hodge(u: TuGame, i: int, method: str = "cg", tol: float = DEFAULT_TOL) -> float:
    """``u^1_i(N)`` on the hypercube; equals the Shapley value of player ``i``."""
    if not 1 <= i <= u.n:
        raise GameError(f"player index must be in 1..{u.n}, got {i}")
    return float(component_game(u, 1 << (i - 1), 1, method, tol).worth[u.grand])


def shoga_table_via_hodge(u: TuGame, method: str = "cg", tol: float = DEFAULT_TOL) -> np.ndarray:
    """``u_S(N)`` for every coalition (entry 0 is 0), from one batched solve."""
    out = np.zeros(1 << u.n)
    for S, g in component_games(u, u.n, method, tol).items():
        out[S] = g.worth[u.grand]
    return out


def shapley_vector_via_hodge(u: TuGame, method: str = "cg", tol: float = DEFAULT_TOL) -> np.ndarray:
    games = component_games(u, 1, method, tol)
    return np.array([games[1 << i].worth[u.grand] for i in range(u.n)])


@dataclass(frozen=True)
class HodgeParts:
    gradient: np.ndarray
    residual: np.ndarray
    potential: np.ndarray
    solver_residual: float


def hodge_decompose(G: LatticeGraph, f, tol: float = DEFAULT_TOL, method: str = "cg") -> HodgeParts:
    """Split an edge flow into ``d x`` (image of d) plus a divergence-free remainder."""
    f = np.asarray(f, dtype=float)
    sol = solve_laplacian(G, adjoint(G, f), tol, method)
    gradient = differential(G, sol.x)
    return HodgeParts(gradient, f - gradient, sol.x, sol.residual_norm)


def _check_permutation(sigma: Sequence[int], n: int) -> list[int]:
    sigma = [int(s) for s in sigma]
    if len(sigma) != n or sorted(sigma) != list(range(1, n + 1)):
        raise GameError(f"not a permutation of 1..{n}: {sigma}")
    return sigma


def permutation_image(sigma: Sequence[int], n: int) -> np.ndarray:
    """Mask of ``sigma(S)`` for every coalition ``S``; ``sigma[i-1]`` is the image of player ``i``."""
    sigma = _check_permutation(sigma, n)
    idx = np.arange(1 << n)
    img = np.zeros_like(idx)
    for i, s in enumerate(sigma):
        img |= ((idx >> i) & 1) << (s - 1)
    return img


def permutation_pullback(sigma: Sequence[int], u):
    """``(sigma* u)(S) = u(sigma(S))``; returns the same type it was given."""
    if isinstance(u, TuGame):
        return TuGame(u.n, u.worth[permutation_image(sigma, u.n)])
    x = np.asarray(u, dtype=float)
    n = x.shape[0].bit_length() - 1
    x = as_vertex_function(x, n)
    return x[permutation_image(sigma, n)]
