"""Built-in games: the classic examples plus seeded random generators."""

from __future__ import annotations

from typing import Sequence

import numpy as np

from .games import CoalitionLike, GameError, TuGame, as_mask, popcounts, unanimity_game


def glove_game() -> TuGame:
    """Player 1 holds a left glove, players 2 and 3 a right glove each."""
    w = np.zeros(8)
    w[0b011] = w[0b101] = w[0b111] = 1.0
    return TuGame(3, w)


def bankruptcy_game(estate: float, claims: Sequence[float]) -> TuGame:
    """``u(S) = max(0, E - sum of claims outside S)``."""
    claims = np.asarray(claims, dtype=float)
    if claims.ndim != 1 or claims.size == 0:
        raise GameError("claims: expected a nonempty list of numbers")
    if np.any(claims <= 0):
        raise GameError("claims: every claim must be positive")
    if estate < 0:
        raise GameError("E: estate must be nonnegative")
    n = claims.size
    idx = np.arange(1 << n)
    inside = np.zeros(1 << n)
    for b in range(n):
        inside += ((idx >> b) & 1) * claims[b]
    outside = claims.sum() - inside
    w = np.maximum(0.0, estate - outside)
    w[0] = 0.0
    return TuGame(n, w)


def airport_game(costs: Sequence[float]) -> TuGame:
    """Cost-sharing game written as worths: ``u(S) = -max cost in S``, ``u(empty) = 0``."""
    costs = np.asarray(costs, dtype=float)
    if costs.ndim != 1 or costs.size == 0:
        raise GameError("costs: expected a nonempty list of numbers")
    if np.any(costs <= 0):
        raise GameError("costs: every cost must be positive")
    n = costs.size
    idx = np.arange(1 << n)
    w = np.zeros(1 << n)
    for b in range(n):
        w = np.where((idx >> b) & 1, np.maximum(w, costs[b]), w)
    return TuGame(n, -w)


def majority_game(n: int, quota: int) -> TuGame:
    """Simple game winning iff at least ``quota`` players join."""
    if not 1 <= quota <= n:
        raise GameError(f"q: quota must be in 1..{n}, got {quota}")
    return TuGame(n, (popcounts(n) >= quota).astype(float))


def additive_game(weights: Sequence[float]) -> TuGame:
    weights = np.asarray(weights, dtype=float)
    n = weights.size
    idx = np.arange(1 << n)
    w = np.zeros(1 << n)
    for b in range(n):
        w += ((idx >> b) & 1) * weights[b]
    return TuGame(n, w)


def random_game(
    n: int,
    seed: int | None = None,
    distribution: str = "uniform",
    rng: np.random.Generator | None = None,
) -> TuGame:
    """Worths drawn i.i.d. (uniform on [-1, 1] or standard normal), empty set reset to 0."""
    rng = np.random.default_rng(seed) if rng is None else rng
    if distribution == "uniform":
        w = rng.uniform(-1.0, 1.0, 1 << n)
    elif distribution == "normal":
        w = rng.standard_normal(1 << n)
    else:
        raise GameError(f"distribution: unknown {distribution!r} (uniform | normal)")
    w[0] = 0.0
    return TuGame(n, w)


def with_null_players(u: TuGame, n: int) -> TuGame:
    """Extend ``u`` to ``n`` players; the added players (and any coalition of them) are null."""
    if n < u.n:
        raise GameError(f"cannot extend a {u.n}-player game to {n} players")
    idx = np.arange(1 << n)
    return TuGame(n, u.worth[idx & ((1 << u.n) - 1)])


def complement_symmetric(u: TuGame) -> TuGame:
    """Project ``u`` onto games with ``v(S) = v(N - S)`` for all S (this forces ``v(N) = 0``)."""
    idx = np.arange(1 << u.n)
    w = 0.5 * (u.worth + u.worth[u.grand ^ idx])
    w[0] = w[u.grand] = 0.0
    return TuGame(u.n, w)


def constant_sum_part(u: TuGame) -> TuGame:
    """Project ``u`` onto constant-sum games, keeping ``u(N)``."""
    idx = np.arange(1 << u.n)
    w = 0.5 * (u.worth - u.worth[u.grand ^ idx] + u.worth[u.grand])
    return TuGame(u.n, w)


BUILTIN_PARAMS = {
    "glove": set(),
    "bankruptcy": {"E", "c"},
    "airport": {"costs"},
    "unanimity": {"n", "S"},
    "majority": {"n", "q"},
    "random": {"n", "seed", "distribution"},
}


def builtin_game(name: str, **params) -> TuGame:
    """Dispatch by name: glove, bankruptcy, airport, unanimity, majority, random."""
    if name in BUILTIN_PARAMS:
        unknown = sorted(set(params) - BUILTIN_PARAMS[name])
        if unknown:
            raise GameError(f"{name}: unknown parameter {unknown[0]!r}")
    try:
        if name == "glove":
            return glove_game()
        if name == "bankruptcy":
            return bankruptcy_game(float(params["E"]), [float(c) for c in params["c"]])
        if name == "airport":
            return airport_game([float(c) for c in params["costs"]])
        if name == "unanimity":
            n = int(params["n"])
            S: CoalitionLike = params["S"]
            return unanimity_game(n, as_mask(S, n))
        if name == "majority":
            return majority_game(int(params["n"]), int(params["q"]))
        if name == "random":
            return random_game(
                int(params["n"]),
                seed=int(params["seed"]) if "seed" in params else None,
                distribution=params.get("distribution", "uniform"),
            )
    except KeyError as e:
        raise GameError(f"{name}: missing parameter {e.args[0]}") from None
    except (TypeError, ValueError) as e:
        if isinstance(e, GameError):
            raise
        raise GameError(f"{name}: bad parameter value ({e})") from None
    raise GameError(f"unknown builtin game {name!r}")
