"""Probabilistic values, probabilistic generalized values and their links to SHoGa."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations
from math import comb
from typing import Callable, Sequence

import numpy as np

from .games import (
    EXACT_TOL,
    CoalitionLike,
    GameError,
    TuGame,
    as_mask,
    format_coalition,
    popcounts,
    quotient_game,
)
from .maps import GameMap

MAX_GENERALIZED_PLAYERS = 10
NORMALIZATION_TOL = 1e-12


# ---------------------------------------------------------------------------
# Weight tables
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class ProbabilisticWeights:
    """``table[i-1, S]`` is the weight of ``S`` (a coalition without ``i``) for player ``i``."""

    n: int
    table: np.ndarray
    name: str = "custom"

    def __post_init__(self):
        t = np.array(self.table, dtype=float)
        if t.shape != (self.n, 1 << self.n):
            raise GameError(f"weights must have shape ({self.n}, {1 << self.n}), got {t.shape}")
        idx = np.arange(1 << self.n)
        for i in range(self.n):
            if np.any(t[i, (idx >> i) & 1 == 1] != 0):
                raise GameError(f"player {i + 1}: weights on coalitions containing the player must be 0")
            total = t[i].sum()
            if abs(total - 1.0) > NORMALIZATION_TOL:
                raise GameError(f"player {i + 1}: weights sum to {total!r}, expected 1")
        t.setflags(write=False)
        object.__setattr__(self, "table", t)

    def reflected(self) -> np.ndarray:
        """``p(i, N - S - i)`` at position ``[i-1, S]``."""
        idx = np.arange(1 << self.n)
        full = (1 << self.n) - 1
        out = np.zeros_like(self.table)
        for i in range(self.n):
            others = full ^ (1 << i)
            without = idx[(idx >> i) & 1 == 0]
            out[i, without] = self.table[i, others ^ without]
        return out

    def is_complement_symmetric(self, tol: float = EXACT_TOL) -> bool:
        """``p(i, S) == p(i, N - S - i)`` for all players and coalitions."""
        return bool(np.all(np.abs(self.table - self.reflected()) <= tol))


def _by_size(n: int, weight_of_size: Callable[[int], float], name: str) -> ProbabilisticWeights:
    sizes = popcounts(n)
    per_size = np.array([weight_of_size(s) for s in range(n + 1)])
    idx = np.arange(1 << n)
    table = np.zeros((n, 1 << n))
    for i in range(n):
        out = (idx >> i) & 1 == 0
        table[i, out] = per_size[sizes[out]]
    return ProbabilisticWeights(n, table, name)


def shapley_weights(n: int) -> ProbabilisticWeights:
    # s!(n-s-1)!/n! == 1 / (n * C(n-1, s)), exact integers before the one rounding
    return _by_size(n, lambda s: 1.0 / (n * comb(n - 1, s)) if s < n else 0.0, "shapley")


def banzhaf_weights(n: int) -> ProbabilisticWeights:
    return _by_size(n, lambda s: 1.0 / 2 ** (n - 1) if s < n else 0.0, "banzhaf")


def dictator_weights(n: int) -> ProbabilisticWeights:
    """All weight on ``N - i``: the value ``u(N) - u(N - i)``."""
    table = np.zeros((n, 1 << n))
    full = (1 << n) - 1
    for i in range(n):
        table[i, full ^ (1 << i)] = 1.0
    return ProbabilisticWeights(n, table, "dictator")


@dataclass(frozen=True, eq=False)
class GeneralizedWeights:
    """``table[S, T]`` weights ``T`` (disjoint from ``S``) for coalition ``S``."""

    n: int
    table: np.ndarray
    name: str = "custom"

    def __post_init__(self):
        if self.n > MAX_GENERALIZED_PLAYERS:
            raise GameError(f"dense generalized weights are limited to n <= {MAX_GENERALIZED_PLAYERS}")
        t = np.array(self.table, dtype=float)
        size = 1 << self.n
        if t.shape != (size, size):
            raise GameError(f"weights must have shape ({size}, {size}), got {t.shape}")
        idx = np.arange(size)
        overlap = (idx[:, None] & idx[None, :]) != 0
        if np.any(t[overlap] != 0):
            raise GameError("weights on T overlapping S must be 0")
        sums = t.sum(axis=1)
        bad = np.flatnonzero(np.abs(sums[1:] - 1.0) > NORMALIZATION_TOL)
        if bad.size:
            S = int(bad[0]) + 1
            raise GameError(f"coalition {{{format_coalition(S)}}}: weights sum to {sums[S]!r}, expected 1")
        t.setflags(write=False)
        object.__setattr__(self, "table", t)


def shoga_generalized_weights(n: int) -> GeneralizedWeights:
    """Half the weight on ``T = empty`` and half on ``T = N - S``."""
    size = 1 << n
    full = size - 1
    table = np.zeros((size, size))
    for S in range(1, size):
        table[S, 0] += 0.5
        table[S, full ^ S] += 0.5
    return GeneralizedWeights(n, table, "shoga")


# ---------------------------------------------------------------------------
# Values
# ---------------------------------------------------------------------------


def marginals(u: TuGame, i: int) -> np.ndarray:
    """``u(S + i) - u(S)`` at every mask ``S`` (0 where ``i`` is already in ``S``)."""
    idx = np.arange(1 << u.n)
    return u.worth[idx | (1 << (i - 1))] - u.worth


def shapley(u: TuGame) -> np.ndarray:
    return probabilistic_value(shapley_weights(u.n), u)


def banzhaf(u: TuGame) -> np.ndarray:
    return probabilistic_value(banzhaf_weights(u.n), u)


def probabilistic_value(w: ProbabilisticWeights, u: TuGame) -> np.ndarray:
    """``psi_i(u) = sum_S p(i, S) (u(S + i) - u(S))``."""
    if w.n != u.n:
        raise GameError(f"weights are for {w.n} players, game has {u.n}")
    return np.array([w.table[i] @ marginals(u, i + 1) for i in range(u.n)])


def complementary_form_value(w: ProbabilisticWeights, u: TuGame) -> np.ndarray:
    """``psi_i(u) = sum_S p~(i, S) (u(N - S) - u(S))`` with ``p~(i, S) = p(i, N - S - i)``.

    The complementary form reproduces :func:`probabilistic_value` only when the
    weights are complement symmetric (Shapley and Banzhaf are); other weights
    are rejected.
    """
    if w.n != u.n:
        raise GameError(f"weights are for {w.n} players, game has {u.n}")
    if not w.is_complement_symmetric():
        raise GameError(f"{w.name} weights are not complement symmetric; the complementary form does not apply")
    idx = np.arange(1 << u.n)
    diff = u.worth[u.grand ^ idx] - u.worth
    tilde = w.reflected()
    return np.array([tilde[i] @ diff for i in range(u.n)])


def generalized_value(q: GeneralizedWeights, u: TuGame) -> TuGame:
    """``psi_S(u) = sum_{T in N - S} q(S, T) (u(T + S) - u(T))``, as a game (``psi_empty = 0``)."""
    if q.n != u.n:
        raise GameError(f"weights are for {q.n} players, game has {u.n}")
    psi = np.zeros(1 << u.n)
    for S in range(1, 1 << u.n):
        row = q.table[S]
        T = np.flatnonzero(row)
        psi[S] = row[T] @ (u.worth[T | S] - u.worth[T])
    return TuGame(u.n, psi)


def permutation_shapley(u: TuGame) -> np.ndarray:
    """Average marginal contribution over all ``n!`` arrival orders (slow oracle)."""
    phi = np.zeros(u.n)
    count = 0
    for order in permutations(range(u.n)):
        mask = 0
        for i in order:
            phi[i] += u.worth[mask | 1 << i] - u.worth[mask]
            mask |= 1 << i
        count += 1
    return phi / count


# ---------------------------------------------------------------------------
# Named values and associated consistency
# ---------------------------------------------------------------------------

VALUE_NAMES = ("shapley", "banzhaf", "generalized:shoga")

_WEIGHTS = {"shapley": shapley_weights, "banzhaf": banzhaf_weights}


def value_weights(name: str, n: int) -> ProbabilisticWeights:
    try:
        return _WEIGHTS[name](n)
    except KeyError:
        raise GameError(f"unknown probabilistic value {name!r}; known: {', '.join(_WEIGHTS)}") from None


@dataclass
class ConsistencyReport:
    value: str
    game_map: str
    games_checked: int = 0
    max_residual: float = 0.0
    passed: bool = True
    witness: dict | None = field(default=None, repr=False)


def associated_consistency_check(
    value: str | ProbabilisticWeights,
    game_map: GameMap,
    suite: Sequence[TuGame],
    tol: float = 1e-10,
) -> ConsistencyReport:
    """Check ``psi_i(u) == psi_i(gamma_u)`` for every game of the suite and every player."""
    if not suite:
        raise GameError("empty game suite")
    report = ConsistencyReport(value if isinstance(value, str) else value.name, game_map.name)
    for u in suite:
        w = value_weights(value, u.n) if isinstance(value, str) else value
        residual = np.abs(probabilistic_value(w, game_map(u)) - probabilistic_value(w, u))
        worst = float(residual.max())
        report.games_checked += 1
        report.max_residual = max(report.max_residual, worst)
        if worst > tol and report.passed:
            report.passed = False
            report.witness = {"game": u, "player": int(residual.argmax()) + 1, "residual": worst}
    return report


def shoga_via_quotient(u: TuGame, S: CoalitionLike) -> tuple[float, float]:
    """Shapley value of the two-block quotient game ``{S, N - S}``, as ``(S part, N - S part)``."""
    mask = as_mask(S, u.n)
    if mask in (0, u.grand):
        raise GameError("S must be a proper nonempty coalition")
    comp = u.grand ^ mask
    phi = shapley(quotient_game(u, [mask, comp]))
    # quotient blocks are ordered by smallest member
    s_first = (mask & -mask) < (comp & -comp)
    return (float(phi[0]), float(phi[1])) if s_first else (float(phi[1]), float(phi[0]))


def is_group_rational(q: GeneralizedWeights, u: TuGame, tol: float = EXACT_TOL) -> bool:
    """``psi_S(u) >= u(S)`` for all coalitions."""
    return bool(np.all(generalized_value(q, u).worth >= u.worth - tol))


def shoga_generalized(u: TuGame) -> TuGame:
    return generalized_value(shoga_generalized_weights(u.n), u)


__all__ = [
    "ConsistencyReport",
    "GeneralizedWeights",
    "ProbabilisticWeights",
    "VALUE_NAMES",
    "associated_consistency_check",
    "banzhaf",
    "banzhaf_weights",
    "complementary_form_value",
    "dictator_weights",
    "generalized_value",
    "is_group_rational",
    "marginals",
    "permutation_shapley",
    "probabilistic_value",
    "shapley",
    "shapley_weights",
    "shoga_generalized",
    "shoga_generalized_weights",
    "shoga_via_quotient",
    "value_weights",
]
