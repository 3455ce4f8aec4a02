"""End-to-end check of the worked examples and characterisation results.

Each group returns one :class:`Claim` row; ``run_all`` is what the
``verify-paper`` subcommand prints.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .axioms import check_axiom, random_suite, verify_uniqueness_on_basis
from .catalog import airport_game, bankruptcy_game, glove_game, random_game
from .games import TuGame, coalition, format_coalition, is_superadditive
from .hodge import (
    LatticeGraph,
    adjoint,
    component_games,
    hodge_decompose,
    permutation_image,
    shapley_vector_via_hodge,
    shoga_table_via_hodge,
)
from .maps import get_map, mobius, potential_map, shoga, shoga_scaled, synergy
from .values import associated_consistency_check, permutation_shapley, shapley, shoga_via_quotient


@dataclass
class Claim:
    group: str
    passed: bool
    max_residual: float
    detail: str

    def __post_init__(self):
        self.passed = bool(self.passed)
        self.max_residual = float(self.max_residual)


def _table(n: int, entries: dict[tuple[int, ...], float], default: float) -> np.ndarray:
    w = np.full(1 << n, float(default))
    w[0] = 0.0
    for players, value in entries.items():
        w[coalition(players)] = value
    return w


def expected_glove_shoga() -> np.ndarray:
    return _table(3, {(1, 2): 1, (1, 3): 1, (1, 2, 3): 1, (1,): 0.5, (2, 3): 0.5}, 0.0)


def expected_bankruptcy_shoga() -> np.ndarray:
    return _table(3, {(1, 2, 3): 200, (2, 3): 150, (1,): 50}, 100.0)


def expected_airport_shoga() -> np.ndarray:
    """-6 / -24 / -14 / -16 pattern; the grand coalition keeps ``u(N) = -30``."""
    w = np.zeros(16)
    for S in range(1, 16):
        if S == coalition([1]):
            w[S] = -6
        elif S == coalition([2, 3, 4]):
            w[S] = -24
        elif S == 15:
            w[S] = -30
        elif S & 0b0110 and not S & 0b1000:
            w[S] = -14
        else:
            w[S] = -16
    return w


def _example(name: str, u: TuGame, expected: np.ndarray, sa_u: bool, sa_c: bool) -> Claim:
    c = shoga(u)
    diff = np.abs(c.worth - expected)
    exact = bool(np.all(c.worth == expected))
    sa = (is_superadditive(u), is_superadditive(c))
    ok = exact and sa == (sa_u, sa_c)
    bad = [format_coalition(S) or "{}" for S in np.flatnonzero(diff)]
    return Claim(
        name,
        ok,
        float(diff.max()),
        f"table {'exact' if exact else 'mismatch at ' + ';'.join(bad)}; superadditive u={sa[0]} C={sa[1]}",
    )


def claim_glove() -> Claim:
    return _example("example-glove", glove_game(), expected_glove_shoga(), True, True)


def claim_bankruptcy() -> Claim:
    return _example("example-bankruptcy", bankruptcy_game(200, [100, 200, 300]), expected_bankruptcy_shoga(), True, False)


def claim_airport() -> Claim:
    return _example("example-airport", airport_game([12, 28, 28, 30]), expected_airport_shoga(), True, True)


def claim_basis(max_n: int) -> Claim:
    reports = [verify_uniqueness_on_basis(n) for n in range(1, min(max_n, 8) + 1)]
    bad = sum(len(r.mismatches) for r in reports)
    cases = sum(sum(r.cases.values()) for r in reports)
    return Claim("uniqueness-basis-cases", bad == 0, 0.0 if bad == 0 else 0.5, f"{cases} (S,T) cases, {bad} mismatches")


def claim_axioms(max_n: int, seed: int, count: int = 40) -> Claim:
    worst, failures = 0.0, []
    for n in range(2, max_n + 1):
        suite = random_suite(n, count, seed + n)
        checks = [("shoga", ax) for ax in ("AvEFF", "NLL", "BLT", "CS", "LIN")] + [("shoga-scaled", "EFF")]
        for name, ax in checks:
            r = check_axiom(get_map(name), ax, suite, seed=seed)
            worst = max(worst, r.max_residual)
            if not r.passed:
                failures.append(f"{name}/{ax}@n={n}")
    dual_cs = check_axiom(get_map("dual"), "CS", [glove_game()])
    ok = not failures and not dual_cs.passed
    detail = f"n=2..{max_n}, {count} games each; dual CS counterexample {'found' if not dual_cs.passed else 'MISSING'}"
    if failures:
        detail += "; failed " + ",".join(failures)
    return Claim("axioms", ok, worst, detail)


def _random_games(max_n: int, seed: int, per_n: int, low: int = 2) -> list[TuGame]:
    rng = np.random.default_rng(seed)
    return [random_game(n, rng=rng) for n in range(low, max_n + 1) for _ in range(per_n)]


def claim_value_consistency(max_n: int, seed: int) -> Claim:
    games = _random_games(max_n, seed, 10)
    worst = 0.0
    for value in ("shapley", "banzhaf"):
        r = associated_consistency_check(value, get_map("shoga"), games)
        worst = max(worst, r.max_residual)
    return Claim("value-consistency", worst < 1e-10, worst, f"shapley+banzhaf on {len(games)} games")


def claim_shapley_oracle(max_n: int, seed: int) -> Claim:
    games = _random_games(min(max_n, 7), seed, 3, low=1) + [glove_game(), bankruptcy_game(200, [100, 200, 300])]
    worst = max(float(np.abs(shapley(u) - permutation_shapley(u)).max()) for u in games)
    return Claim("shapley-permutation-oracle", worst < 1e-12, worst, f"{len(games)} games")


def _battery(max_n: int, seed: int, per_n: int) -> list[TuGame]:
    return _random_games(max_n, seed, per_n) + [glove_game(), bankruptcy_game(200, [100, 200, 300]), airport_game([12, 28, 28, 30])]


def claim_shoga_hodge(max_n: int, seed: int) -> Claim:
    worst, trace = 0.0, 0.0
    for u in _battery(max_n, seed, 3):
        got = shoga_table_via_hodge(u)
        worst = max(worst, float(np.abs(got - shoga_scaled(u).worth).max()))
        for S, g in component_games(u).items():
            trace = max(trace, abs(g.worth.sum() - u.worth[S]))
    ok = worst < 1e-8 and trace < 1e-8
    return Claim("poisson-full-lattice=scaled-shoga", ok, max(worst, trace), f"trace identity residual {trace:.3g}")


def claim_shapley_hodge(max_n: int, seed: int) -> Claim:
    worst = max(float(np.abs(shapley_vector_via_hodge(u) - shapley(u)).max()) for u in _battery(max_n, seed, 3))
    return Claim("poisson-hypercube=shapley", worst < 1e-8, worst, "all players")


def claim_component_games(max_n: int, seed: int) -> Claim:
    rng = np.random.default_rng(seed)
    worst = {"a": 0.0, "b": 0.0, "c": 0.0, "d": 0.0}
    for n in range(2, min(max_n, 6) + 1):
        u, v = random_game(n, rng=rng), random_game(n, rng=rng)
        for k in sorted({1, 2, n} & set(range(1, n + 1))):
            parts = component_games(u, k)
            total = sum(g.worth for g in parts.values())
            worst["a"] = max(worst["a"], float(np.abs(total - u.worth).max()))
            a, b = rng.uniform(-2, 2, 2)
            mixed = component_games(a * u + b * v, k)
            pv = component_games(v, k)
            for S in parts:
                lin = mixed[S].worth - a * parts[S].worth - b * pv[S].worth
                worst["d"] = max(worst["d"], float(np.abs(lin).max()))
            sigma = [int(s) + 1 for s in rng.permutation(n)]
            img = permutation_image(sigma, n)
            pulled = component_games(TuGame(n, u.worth[img]), k)
            for S in parts:
                lhs = pulled[S].worth
                rhs = parts[int(img[S])].worth[img]
                worst["c"] = max(worst["c"], float(np.abs(lhs - rhs).max()))
        # null coalition: players beyond the first are null in a one-player-supported game
        w = np.zeros(1 << n)
        w[1::2] = rng.uniform(-1, 1)
        nulls = component_games(TuGame(n, w), n)
        worst["b"] = max(worst["b"], max(float(np.abs(g.worth).max()) for S, g in nulls.items() if not S & 1))
    ok = worst["a"] < 1e-7 and worst["b"] < 1e-9 and worst["c"] < 1e-7 and worst["d"] < 1e-8
    return Claim("component-games(a-d)", ok, max(worst.values()), " ".join(f"{k}={v:.2g}" for k, v in worst.items()))


def claim_hodge_decomposition(max_n: int, seed: int) -> Claim:
    rng = np.random.default_rng(seed)
    worst = 0.0
    for n in range(1, min(max_n, 6) + 1):
        for G in (LatticeGraph.full(n), LatticeGraph.up_to(n, 1)):
            f = rng.standard_normal(G.num_edges)
            parts = hodge_decompose(G, f)
            cross = abs(parts.gradient @ parts.residual) / max(1.0, f @ f)
            div = float(np.linalg.norm(adjoint(G, parts.residual)))
            worst = max(worst, cross, div)
    return Claim("hodge-decomposition", worst < 1e-9, worst, "orthogonality and divergence-free residual")


def claim_quotient(max_n: int, seed: int) -> Claim:
    worst = 0.0
    for u in _random_games(max_n, seed, 2):
        c = shoga(u).worth
        for S in range(1, u.grand):
            a, b = shoga_via_quotient(u, S)
            worst = max(worst, abs(a - c[S]), abs(b - c[u.grand ^ S]), abs(a + b - u.worth[u.grand]))
    return Claim("quotient-link", worst < 1e-12, worst, "two-block quotient Shapley value")


def claim_transforms(max_n: int, seed: int) -> Claim:
    worst = 0.0
    for u in _random_games(max_n, seed, 3):
        worst = max(worst, float(np.abs(synergy(mobius(u)).worth - u.worth).max()))
        worst = max(worst, float(np.abs(mobius(synergy(u)).worth - u.worth).max()))
        rho = potential_map(u).worth
        diffs = np.array([rho[u.grand] - rho[u.grand ^ (1 << i)] for i in range(u.n)])
        worst = max(worst, float(np.abs(diffs - shapley(u)).max()))
    return Claim("mobius-synergy+potential", worst < 1e-10, worst, "round trips and potential differential")


def run_all(max_n: int = 6, seed: int = 0) -> list[Claim]:
    steps: list[Callable[[], Claim]] = [
        claim_glove,
        claim_bankruptcy,
        claim_airport,
        lambda: claim_basis(max_n),
        lambda: claim_axioms(max_n, seed),
        lambda: claim_value_consistency(max_n, seed),
        lambda: claim_shapley_oracle(max_n, seed),
        lambda: claim_shoga_hodge(max_n, seed),
        lambda: claim_shapley_hodge(max_n, seed),
        lambda: claim_component_games(max_n, seed),
        lambda: claim_hodge_decomposition(max_n, seed),
        lambda: claim_quotient(max_n, seed),
        lambda: claim_transforms(max_n, seed),
    ]
    return [step() for step in steps]


__all__ = ["Claim", "run_all", "expected_airport_shoga", "expected_bankruptcy_shoga", "expected_glove_shoga"]
