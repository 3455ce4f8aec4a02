"""Game maps: transforms sending a game to an associated game on the same players."""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Callable

import numpy as np

from .games import EXACT_TOL, GameError, TuGame, popcounts, submasks, unanimity_coordinates


@dataclass(frozen=True)
class GameMap:
    name: str
    transform: Callable[[TuGame], TuGame]

    def __call__(self, u: TuGame) -> TuGame:
        image = self.transform(u)
        if image.n != u.n:
            raise GameError(f"map {self.name!r} changed the player count")
        return image


def _complements(u: TuGame) -> np.ndarray:
    return u.worth[u.grand ^ np.arange(1 << u.n)]


def shoga(u: TuGame) -> TuGame:
    """Shapley-Hodge associated game: ``C_u(S) = (u(N) - u(N - S) + u(S)) / 2``."""
    w = u.worth
    return TuGame(u.n, 0.5 * (w[u.grand] - _complements(u) + w))


def shoga_scaled(u: TuGame) -> TuGame:
    """``C_u / 2^(n-1)``, the efficient version whose worths sum to ``u(N)``."""
    return TuGame(u.n, shoga(u).worth / 2.0 ** (u.n - 1))


def dual(u: TuGame) -> TuGame:
    """``u*(S) = u(N) - u(N - S)``."""
    return TuGame(u.n, u.worth[u.grand] - _complements(u))


def anti_dual(u: TuGame) -> TuGame:
    return TuGame(u.n, -dual(u).worth)


def zero_normalization(u: TuGame) -> TuGame:
    idx = np.arange(1 << u.n)
    singles = np.zeros(1 << u.n)
    for b in range(u.n):
        singles += ((idx >> b) & 1) * u.worth[1 << b]
    return TuGame(u.n, u.worth - singles)


def mobius(u: TuGame) -> TuGame:
    """Harsanyi dividends, ``sum over T in S of (-1)^(s-t) u(T)``."""
    return TuGame(u.n, unanimity_coordinates(u))


def synergy(u: TuGame) -> TuGame:
    """Subset sums ``sum over T in S of u(T)``; inverse of :func:`mobius`."""
    w = u.worth.copy()
    idx = np.arange(1 << u.n)
    for b in range(u.n):
        bit = 1 << b
        hi = np.flatnonzero(idx & bit)
        w[hi] += w[hi ^ bit]
    return TuGame(u.n, w)


def hamiache(u: TuGame, t: float) -> TuGame:
    """Hamiache's associated game with parameter ``t``."""
    w = u.worth
    idx = np.arange(1 << u.n)
    surplus = np.zeros(1 << u.n)
    for b in range(u.n):
        bit = 1 << b
        out = (idx & bit) == 0
        surplus[out] += w[idx[out] | bit] - w[idx[out]] - w[bit]
    return TuGame(u.n, w + t * surplus)


def _potential_of(worths: np.ndarray, sizes: np.ndarray, s: int) -> float:
    # (t-1)!(s-t)!/s! == 1 / (t * C(s, t)) for t >= 1
    coef = np.zeros(s + 1)
    for t in range(1, s + 1):
        coef[t] = 1.0 / (t * comb(s, t))
    return float(np.dot(coef[sizes], worths))


def potential(u: TuGame) -> float:
    """Hart and Mas-Colell potential ``P(N, u)``."""
    return _potential_of(u.worth, popcounts(u.n), u.n)


def potential_map(u: TuGame) -> TuGame:
    """``rho_u(S) = P(S, u restricted to S)``."""
    sizes = popcounts(u.n)
    rho = np.zeros(1 << u.n)
    for S in range(1, 1 << u.n):
        T = submasks(S)
        rho[S] = _potential_of(u.worth[T], sizes[T], int(sizes[S]))
    return TuGame(u.n, rho)


def kernel_membership(u: TuGame, tol: float = EXACT_TOL) -> bool:
    """True iff ``u(A) == u(N - A)`` for all A, i.e. ``shoga(u)`` is the zero game."""
    return bool(np.all(np.abs(u.worth - _complements(u)) <= tol))


_NAMED = {
    "shoga": shoga,
    "shoga-scaled": shoga_scaled,
    "dual": dual,
    "anti-dual": anti_dual,
    "zero-norm": zero_normalization,
    "mobius": mobius,
    "synergy": synergy,
    "potential": potential_map,
}

MAP_NAMES = tuple(_NAMED) + ("hamiache:<t>",)


def get_map(name: str) -> GameMap:
    """Resolve a map name such as ``shoga`` or ``hamiache:0.5``."""
    if name in _NAMED:
        return GameMap(name, _NAMED[name])
    if name.startswith("hamiache:"):
        try:
            t = float(name.split(":", 1)[1])
        except ValueError:
            raise GameError(f"bad hamiache parameter in {name!r}") from None
        return GameMap(name, lambda u: hamiache(u, t))
    raise GameError(f"unknown game map {name!r}; known: {', '.join(MAP_NAMES)}")
