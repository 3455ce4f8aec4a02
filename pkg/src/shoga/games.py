"""TU-games on a fixed player set, stored as dense tables indexed by coalition mask.

Player ``i`` (1-based) occupies bit ``i - 1``, so a coalition's mask is also its
offset into the worth table.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Sequence, Union

import numpy as np

MAX_PLAYERS = 20
MAX_COHESIVE_PLAYERS = 12
EXACT_TOL = 1e-12

CoalitionLike = Union[int, Iterable[int]]


class GameError(ValueError):
    """Raised for malformed games, coalitions or partitions."""


# ---------------------------------------------------------------------------
# Coalition helpers
# ---------------------------------------------------------------------------


def coalition(players: Iterable[int]) -> int:
    """Mask of a coalition given by 1-based player indices."""
    mask = 0
    for i in players:
        if i < 1:
            raise GameError(f"player indices are 1-based, got {i}")
        mask |= 1 << (i - 1)
    return mask


def as_mask(S: CoalitionLike, n: int) -> int:
    """Accept either a mask or an iterable of players; check it fits ``n`` players."""
    mask = S if isinstance(S, (int, np.integer)) else coalition(S)
    mask = int(mask)
    if mask < 0 or mask >= 1 << n:
        raise GameError(f"coalition {mask:#b} is not a subset of a {n}-player set")
    return mask


def members(mask: int) -> tuple[int, ...]:
    """1-based players of a coalition, ascending."""
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def format_coalition(mask: int) -> str:
    return ",".join(str(i) for i in members(mask))


def parse_coalition(text: str) -> int:
    """Inverse of :func:`format_coalition`; ``""`` is the empty coalition."""
    text = text.strip()
    if not text:
        return 0
    try:
        players = [int(tok) for tok in text.split(",")]
    except ValueError:
        raise GameError(f"bad coalition {text!r}: expected comma-separated player indices") from None
    if players != sorted(set(players)):
        raise GameError(f"bad coalition {text!r}: players must be strictly ascending")
    return coalition(players)


def full_mask(n: int) -> int:
    return (1 << n) - 1


@lru_cache(maxsize=None)
def popcounts(n: int) -> np.ndarray:
    """Cardinality of every coalition of ``n`` players (read-only)."""
    idx = np.arange(1 << n, dtype=np.int64)
    counts = np.zeros(1 << n, dtype=np.int64)
    for b in range(n):
        counts += (idx >> b) & 1
    counts.setflags(write=False)
    return counts


@lru_cache(maxsize=1 << 13)
def submasks(mask: int) -> np.ndarray:
    """All subsets of ``mask``, ordered by their relabeled index.

    Entry ``j`` is the subset whose ``r``-th lowest member is present iff bit
    ``r`` of ``j`` is set. This is the relabeling used for subgames.
    """
    bits = [b for b in range(mask.bit_length()) if mask >> b & 1]
    idx = np.arange(1 << len(bits), dtype=np.int64)
    out = np.zeros_like(idx)
    for r, b in enumerate(bits):
        out |= ((idx >> r) & 1) << b
    out.setflags(write=False)
    return out


# ---------------------------------------------------------------------------
# The game type
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class TuGame:
    """Characteristic function of an ``n``-player game; ``worth[0]`` is pinned to 0."""

    n: int
    worth: np.ndarray

    def __post_init__(self):
        if not isinstance(self.n, (int, np.integer)) or not 1 <= self.n <= MAX_PLAYERS:
            raise GameError(f"player count must be in 1..{MAX_PLAYERS}, got {self.n!r}")
        table = np.array(self.worth, dtype=np.float64)
        if table.shape != (1 << self.n,):
            raise GameError(f"worth table must have length 2^{self.n}={1 << self.n}, got shape {table.shape}")
        if table[0] != 0.0:
            raise GameError(f"worth of the empty coalition must be 0, got {table[0]}")
        if not np.all(np.isfinite(table)):
            raise GameError("worth table has non-finite entries")
        table[0] = 0.0  # normalise -0.0
        table.setflags(write=False)
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "worth", table)

    @classmethod
    def zero(cls, n: int) -> TuGame:
        return cls(n, np.zeros(1 << n))

    @classmethod
    def from_function(cls, n: int, f) -> TuGame:
        """Build a game from ``f(players_tuple) -> float``; ``f`` is not called on the empty set."""
        table = np.zeros(1 << n)
        for mask in range(1, 1 << n):
            table[mask] = f(members(mask))
        return cls(n, table)

    @property
    def grand(self) -> int:
        return full_mask(self.n)

    def __call__(self, S: CoalitionLike) -> float:
        return float(self.worth[as_mask(S, self.n)])

    def complement(self, S: CoalitionLike) -> int:
        return self.grand ^ as_mask(S, self.n)

    def table(self) -> dict[str, float]:
        return {format_coalition(m): float(w) for m, w in enumerate(self.worth)}

    # linear structure of the game space
    def _check_same(self, other: TuGame):
        if not isinstance(other, TuGame):
            return NotImplemented
        if other.n != self.n:
            raise GameError(f"player counts differ: {self.n} vs {other.n}")
        return None

    def __add__(self, other: TuGame) -> TuGame:
        if self._check_same(other) is NotImplemented:
            return NotImplemented
        return TuGame(self.n, self.worth + other.worth)

    def __sub__(self, other: TuGame) -> TuGame:
        if self._check_same(other) is NotImplemented:
            return NotImplemented
        return TuGame(self.n, self.worth - other.worth)

    def __neg__(self) -> TuGame:
        return TuGame(self.n, -self.worth)

    def __mul__(self, c: float) -> TuGame:
        if not isinstance(c, (int, float, np.floating, np.integer)):
            return NotImplemented
        return TuGame(self.n, float(c) * self.worth)

    __rmul__ = __mul__

    def __truediv__(self, c: float) -> TuGame:
        return TuGame(self.n, self.worth / float(c))

    def equals(self, other: TuGame, atol: float = 0.0) -> bool:
        return other.n == self.n and bool(np.all(np.abs(self.worth - other.worth) <= atol))

    def __repr__(self) -> str:
        return f"TuGame(n={self.n}, worth={self.table()})"


# ---------------------------------------------------------------------------
# Unanimity basis
# ---------------------------------------------------------------------------


def unanimity_game(n: int, S: CoalitionLike) -> TuGame:
    """theta_S: worth 1 on every superset of ``S``."""
    mask = as_mask(S, n)
    if mask == 0:
        raise GameError("unanimity game of the empty coalition is not a basis element")
    idx = np.arange(1 << n)
    return TuGame(n, ((idx & mask) == mask).astype(float))


def unanimity_coordinates(u: TuGame) -> np.ndarray:
    """Coordinates of ``u`` in the unanimity basis (entry 0 unused, always 0).

    These are the Harsanyi dividends, computed by an in-place Moebius transform.
    """
    coords = u.worth.copy()
    for b in range(u.n):
        bit = 1 << b
        hi = (np.arange(1 << u.n) & bit) != 0
        coords[hi] -= coords[np.flatnonzero(hi) ^ bit]
    return coords


def from_unanimity_coordinates(n: int, coords: Sequence[float]) -> TuGame:
    """Sum of ``coords[S] * theta_S`` over nonempty ``S`` (a subset-sum transform)."""
    table = np.array(coords, dtype=float).copy()
    table[0] = 0.0
    for b in range(n):
        bit = 1 << b
        hi = (np.arange(1 << n) & bit) != 0
        table[hi] += table[np.flatnonzero(hi) ^ bit]
    return TuGame(n, table)


# ---------------------------------------------------------------------------
# Structural predicates
# ---------------------------------------------------------------------------


def is_superadditive(u: TuGame, tol: float = EXACT_TOL) -> bool:
    return superadditivity_violation(u, tol) is None


def superadditivity_violation(u: TuGame, tol: float = EXACT_TOL) -> tuple[int, int] | None:
    """First disjoint nonempty pair ``(S, T)`` with ``u(S|T) < u(S) + u(T) - tol``."""
    w = u.worth
    for S in range(1, 1 << u.n):
        T = submasks(u.grand ^ S)[1:]
        T = T[T > S]  # each unordered pair once
        if T.size == 0:
            continue
        bad = w[S | T] < w[S] + w[T] - tol
        if bad.any():
            return S, int(T[np.argmax(bad)])
    return None


def set_partitions(mask: int) -> Iterator[list[int]]:
    """All partitions of the players in ``mask`` into nonempty blocks.

    Enumerated as restricted growth strings: each player in ascending order joins
    an existing block or opens the next new one.
    """
    players = [1 << b for b in range(mask.bit_length()) if mask >> b & 1]
    if not players:
        yield []
        return
    blocks: list[int] = []

    def grow(pos: int):
        if pos == len(players):
            yield list(blocks)
            return
        p = players[pos]
        for j in range(len(blocks)):
            blocks[j] |= p
            yield from grow(pos + 1)
            blocks[j] ^= p
        blocks.append(p)
        yield from grow(pos + 1)
        blocks.pop()

    yield from grow(0)


def is_cohesive(u: TuGame, tol: float = EXACT_TOL) -> bool:
    """``u(N) >= sum of u over the blocks`` for every partition of ``N``."""
    if u.n > MAX_COHESIVE_PLAYERS:
        raise GameError(
            f"exhaustive cohesiveness check is limited to n <= {MAX_COHESIVE_PLAYERS} "
            f"(got n={u.n}); superadditivity is a sufficient condition"
        )
    w = u.worth
    top = w[u.grand] + tol
    for blocks in set_partitions(u.grand):
        if sum(w[b] for b in blocks) > top:
            return False
    return True


def is_constant_sum(u: TuGame, tol: float = EXACT_TOL) -> bool:
    w = u.worth
    idx = np.arange(1 << u.n)
    return bool(np.all(np.abs(w + w[u.grand ^ idx] - w[u.grand]) <= tol))


def is_null_coalition(u: TuGame, S: CoalitionLike, tol: float = EXACT_TOL) -> bool:
    """``u(S | T) == u(T)`` for all ``T`` disjoint from ``S``, including ``T`` empty."""
    mask = as_mask(S, u.n)
    T = submasks(u.grand ^ mask)
    return bool(np.all(np.abs(u.worth[T | mask] - u.worth[T]) <= tol))


def null_coalitions(u: TuGame, tol: float = EXACT_TOL) -> list[int]:
    """Exhaustive scan of all nonempty null coalitions."""
    return [S for S in range(1, 1 << u.n) if is_null_coalition(u, S, tol)]


def is_bilateral_coalition(u: TuGame, S: CoalitionLike, tol: float = EXACT_TOL) -> bool:
    mask = as_mask(S, u.n)
    return abs(u.worth[mask] - u.worth[u.grand ^ mask]) <= tol


# ---------------------------------------------------------------------------
# Subgames and quotient games
# ---------------------------------------------------------------------------


def subgame(u: TuGame, S: CoalitionLike) -> TuGame:
    """Restriction to ``S``; its players are relabeled 1..|S| in ascending order."""
    mask = as_mask(S, u.n)
    if mask == 0:
        raise GameError("subgame on the empty coalition")
    return TuGame(bin(mask).count("1"), u.worth[submasks(mask)])


def embed(S: CoalitionLike, T: CoalitionLike, n: int) -> int:
    """Map a coalition ``T`` of the relabeled subgame on ``S`` back to original players."""
    mask = as_mask(S, n)
    k = bin(mask).count("1")
    return int(submasks(mask)[as_mask(T, k)])


def check_partition(blocks: Sequence[CoalitionLike], n: int) -> list[int]:
    """Validate a partition of the ``n`` players; return blocks ordered by smallest member."""
    masks = [as_mask(B, n) for B in blocks]
    seen = 0
    for B in masks:
        if B == 0:
            raise GameError("partition has an empty block")
        if seen & B:
            raise GameError(f"partition blocks overlap on players {list(members(seen & B))}")
        seen |= B
    if seen != full_mask(n):
        raise GameError(f"partition misses players {list(members(full_mask(n) ^ seen))}")
    return sorted(masks, key=lambda B: B & -B)


def quotient_game(u: TuGame, blocks: Sequence[CoalitionLike]) -> TuGame:
    """Game whose players are the partition blocks (ordered by smallest member)."""
    ordered = check_partition(blocks, u.n)
    k = len(ordered)
    idx = np.arange(1 << k, dtype=np.int64)
    unions = np.zeros_like(idx)
    for j, B in enumerate(ordered):
        unions |= ((idx >> j) & 1) * B
    return TuGame(k, u.worth[unions])
