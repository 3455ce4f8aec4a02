"""Hodge calculus on the coalition lattice and the Poisson characterisations."""

from .components import (
    HodgeParts,
    component_game,
    component_games,
    hodge_decompose,
    permutation_image,
    permutation_pullback,
    shapley_vector_via_hodge,
    shapley_via_hodge,
    shoga_table_via_hodge,
    shoga_via_hodge,
)
from .lattice import MAX_HODGE_PLAYERS, LatticeGraph, connected_components
from .operators import adjoint, differential, laplacian, laplacian_matrix
from .poisson import ConvergenceError, PoissonSolution, poisson_solve, solve_laplacian

__all__ = [
    "ConvergenceError",
    "HodgeParts",
    "LatticeGraph",
    "MAX_HODGE_PLAYERS",
    "PoissonSolution",
    "adjoint",
    "component_game",
    "component_games",
    "connected_components",
    "differential",
    "hodge_decompose",
    "laplacian",
    "laplacian_matrix",
    "permutation_image",
    "permutation_pullback",
    "poisson_solve",
    "shapley_vector_via_hodge",
    "shapley_via_hodge",
    "shoga_table_via_hodge",
    "shoga_via_hodge",
    "solve_laplacian",
]
