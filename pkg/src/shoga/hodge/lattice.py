"""Oriented graphs on the coalition lattice.

Every graph has one vertex per coalition and an edge ``A -> B`` for strict
inclusions ``A < B``, filtered by the graph kind:

* ``full``: all strict inclusions (transitive closure of the Hasse diagram);
* ``upto``: ``|B - A| <= k`` (``k = 1`` is the oriented hypercube);
* ``single``: ``B - A == S`` for one fixed nonempty ``S``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb

import numpy as np

from ..games import CoalitionLike, GameError, as_mask, full_mask, popcounts, submasks
from ..unionfind import UnionFind

MAX_HODGE_PLAYERS = 14


@dataclass(frozen=True)
class LatticeGraph:
    n: int
    kind: str
    k: int = 0
    S: int = 0

    def __post_init__(self):
        if not 1 <= self.n <= MAX_HODGE_PLAYERS:
            raise GameError(f"lattice graphs support 1..{MAX_HODGE_PLAYERS} players, got {self.n}")
        if self.kind == "full":
            object.__setattr__(self, "k", self.n)
        elif self.kind == "upto":
            if not 1 <= self.k <= self.n:
                raise GameError(f"edge size bound k must be in 1..{self.n}, got {self.k}")
        elif self.kind == "single":
            if not 0 < self.S < 1 << self.n:
                raise GameError("single-step graph needs a nonempty coalition S within N")
        else:
            raise GameError(f"unknown lattice graph kind {self.kind!r}")

    @classmethod
    def full(cls, n: int) -> LatticeGraph:
        return cls(n, "full")

    @classmethod
    def up_to(cls, n: int, k: int) -> LatticeGraph:
        """Edges with ``|B - A| <= k``; ``k == n`` gives the same edges as :meth:`full`."""
        return cls(n, "upto", k=k)

    @classmethod
    def single_step(cls, n: int, S: CoalitionLike) -> LatticeGraph:
        return cls(n, "single", S=as_mask(S, n))

    @property
    def num_vertices(self) -> int:
        return 1 << self.n

    @property
    def num_edges(self) -> int:
        n = self.n
        if self.kind == "single":
            return 1 << (n - bin(self.S).count("1"))
        return sum(comb(n, d) << (n - d) for d in range(1, self.k + 1))

    @property
    def max_step(self) -> int:
        """Largest ``|B - A|`` over the edges."""
        return bin(self.S).count("1") if self.kind == "single" else self.k

    def step_masks(self) -> list[int]:
        """The admissible differences ``B - A``."""
        if self.kind == "single":
            return [self.S]
        sizes = popcounts(self.n)
        return [int(D) for D in np.flatnonzero((sizes >= 1) & (sizes <= self.k))]

    def edges(self) -> tuple[np.ndarray, np.ndarray]:
        """``(tails, heads)`` sorted by (tail mask, head mask); read-only arrays."""
        return _edges(self)

    def degree(self) -> np.ndarray:
        n = self.n
        sizes = popcounts(n)
        if self.kind == "single":
            idx = np.arange(1 << n)
            inter = idx & self.S
            return ((inter == 0) | (inter == self.S)).astype(np.int64)
        deg = np.zeros(1 << n, dtype=np.int64)
        for d in range(1, self.k + 1):
            deg += np.array([comb(int(s), d) + comb(n - int(s), d) for s in range(n + 1)])[sizes]
        return deg

    def contains(self, other: LatticeGraph) -> bool:
        """Whether every edge of ``other`` is an edge of this graph."""
        if other.n != self.n:
            return False
        if self.kind == "single":
            return other.kind == "single" and other.S == self.S
        return other.max_step <= self.k

    def is_connected(self) -> bool:
        if self.kind in ("full", "upto"):
            # every coalition is joined to the empty set through a chain of singleton steps
            return True
        return connected_components(self) == 1


@lru_cache(maxsize=32)
def _edges(G: LatticeGraph) -> tuple[np.ndarray, np.ndarray]:
    n = G.n
    tails, heads = [], []
    for D in G.step_masks():
        A = submasks(full_mask(n) ^ D)
        tails.append(A)
        heads.append(A | D)
    tail = np.concatenate(tails).astype(np.int64)
    head = np.concatenate(heads).astype(np.int64)
    order = np.argsort((tail << n) | head, kind="stable")
    tail, head = tail[order], head[order]
    tail.setflags(write=False)
    head.setflags(write=False)
    return tail, head


def connected_components(G: LatticeGraph) -> int:
    """Number of connected components of the undirected support (isolated vertices count)."""
    uf = UnionFind(G.num_vertices)
    tails, heads = G.edges()
    for a, b in zip(tails.tolist(), heads.tolist()):
        uf.union(a, b)
    return uf.components
