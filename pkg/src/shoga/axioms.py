"""Falsification harness for the coalition-level axioms of game maps.

Axioms are universally quantified, so a finite suite can only refute them. Each
check scans a suite and reports the largest residual seen together with the
first violating witness.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .catalog import random_game, with_null_players
from .games import EXACT_TOL, GameError, TuGame, is_bilateral_coalition, null_coalitions, unanimity_game
from .maps import GameMap, shoga

AXIOMS = ("AvEFF", "EFF", "NLL", "BLT", "CS", "LIN")
AXIOM_TOL = 1e-9
LIN_DRAWS = 32
MAX_NULL_SCAN_PLAYERS = 12


@dataclass
class AxiomReport:
    axiom: str
    game_map: str
    passed: bool = True
    max_residual: float = 0.0
    games_checked: int = 0
    seed: int | None = None
    witness: dict | None = field(default=None, repr=False)

    @property
    def verdict(self) -> str:
        return "pass" if self.passed else "fail"

    def _record(self, residual: float, tol: float, witness) -> None:
        self.max_residual = max(self.max_residual, residual)
        if residual > tol and self.passed:
            self.passed = False
            self.witness = dict(witness(), residual=residual)


def _check_suite(suite: Sequence[TuGame]) -> int:
    if not suite:
        raise GameError("empty game suite")
    ns = {u.n for u in suite}
    if len(ns) != 1:
        raise GameError(f"suite mixes player counts {sorted(ns)}")
    return ns.pop()


def check_axiom(
    game_map: GameMap,
    axiom: str,
    suite: Sequence[TuGame],
    seed: int = 0,
    tol: float = AXIOM_TOL,
) -> AxiomReport:
    n = _check_suite(suite)
    report = AxiomReport(axiom, game_map.name, seed=seed if axiom == "LIN" else None)
    idx = np.arange(1 << n)
    full = (1 << n) - 1

    if axiom == "LIN":
        rng = np.random.default_rng(seed)
        for _ in range(LIN_DRAWS):
            a, b = rng.uniform(-2.0, 2.0, 2)
            i, j = rng.integers(len(suite), size=2)
            u, v = suite[i], suite[j]
            lhs = game_map(a * u + b * v).worth
            rhs = a * game_map(u).worth + b * game_map(v).worth
            diff = np.abs(lhs - rhs)
            S = int(diff.argmax())
            report._record(float(diff[S]), tol, lambda: {"a": float(a), "b": float(b), "u": u, "v": v, "coalition": S})
            report.games_checked += 1
        return report

    if axiom not in AXIOMS:
        raise GameError(f"unknown axiom {axiom!r}; known: {', '.join(AXIOMS)}")
    if axiom == "NLL" and n > MAX_NULL_SCAN_PLAYERS:
        raise GameError(f"null-coalition scan is limited to n <= {MAX_NULL_SCAN_PLAYERS}")

    for u in suite:
        g = game_map(u).worth
        report.games_checked += 1
        if axiom == "AvEFF":
            residual = abs(g.sum() - 2.0 ** (n - 1) * u.worth[full])
            report._record(residual, tol, lambda: {"game": u})
        elif axiom == "EFF":
            residual = abs(g.sum() - u.worth[full])
            report._record(residual, tol, lambda: {"game": u})
        elif axiom == "CS":
            diff = np.abs(g + g[full ^ idx] - g[full])
            S = int(diff.argmax())
            report._record(float(diff[S]), tol, lambda: {"game": u, "coalition": S})
        elif axiom == "NLL":
            for S in null_coalitions(u):
                report._record(abs(float(g[S])), tol, lambda: {"game": u, "coalition": S})
        elif axiom == "BLT":
            bilateral = np.flatnonzero(np.abs(u.worth - u.worth[full ^ idx]) <= EXACT_TOL)
            if bilateral.size == 0:
                continue
            diff = np.abs(g[bilateral] - g[full ^ bilateral])
            S = int(bilateral[diff.argmax()])
            report._record(float(diff.max()), tol, lambda: {"game": u, "coalition": S})
    return report


def witness_violates(report: AxiomReport, game_map: GameMap, tol: float = AXIOM_TOL) -> bool:
    """Re-evaluate a failing report's witness from scratch."""
    w = report.witness
    if w is None:
        return False
    if report.axiom == "LIN":
        lhs = game_map(w["a"] * w["u"] + w["b"] * w["v"]).worth
        rhs = w["a"] * game_map(w["u"]).worth + w["b"] * game_map(w["v"]).worth
        return bool(np.abs(lhs - rhs).max() > tol)
    u = w["game"]
    g = game_map(u).worth
    full = u.grand
    if report.axiom == "AvEFF":
        return abs(g.sum() - 2.0 ** (u.n - 1) * u.worth[full]) > tol
    if report.axiom == "EFF":
        return abs(g.sum() - u.worth[full]) > tol
    S = w["coalition"]
    if report.axiom == "CS":
        return abs(g[S] + g[full ^ S] - g[full]) > tol
    if report.axiom == "NLL":
        return S in null_coalitions(u) and abs(g[S]) > tol
    if report.axiom == "BLT":
        return is_bilateral_coalition(u, S) and abs(g[S] - g[full ^ S]) > tol
    raise GameError(f"unknown axiom {report.axiom!r}")


def random_suite(n: int, count: int, seed: int = 0) -> list[TuGame]:
    """Seeded suite mixing plain random games with ones that have null and bilateral coalitions.

    Plain uniform games almost never contain null or bilateral coalitions, which
    would let NLL and BLT pass vacuously.
    """
    rng = np.random.default_rng(seed)
    full = (1 << n) - 1
    suite = []
    for j in range(count):
        kind = j % 4
        if kind == 1 and n >= 2:
            m = int(rng.integers(1, n))
            u = with_null_players(random_game(m, rng=rng), n)
            perm = rng.permutation(n)
            idx = np.arange(1 << n)
            img = np.zeros_like(idx)
            for i, p in enumerate(perm):
                img |= ((idx >> i) & 1) << int(p)
            u = TuGame(n, u.worth[img])
        elif kind == 2:
            w = random_game(n, rng=rng).worth.copy()
            for S in rng.integers(1, full, size=max(1, n // 2)) if n >= 2 else []:
                w[full ^ int(S)] = w[int(S)]
            u = TuGame(n, w)
        elif kind == 3:
            u = TuGame.zero(n)
            for S in rng.integers(1, full + 1, size=3):
                u = u + float(rng.integers(-3, 4)) * unanimity_game(n, int(S))
        else:
            u = random_game(n, rng=rng)
        suite.append(u)
    return suite


@dataclass
class BasisReport:
    n: int
    cases: dict[str, int]
    mismatches: list[tuple[int, int, float, float]]

    @property
    def passed(self) -> bool:
        return not self.mismatches


def verify_uniqueness_on_basis(n: int) -> BasisReport:
    """Compare ``shoga(theta_S)(T)`` with 0, 1 or 1/2 according to how ``T`` meets ``S``."""
    if not 1 <= n <= 10:
        raise GameError(f"basis verification supports 1 <= n <= 10, got {n}")
    cases = {"disjoint": 0, "superset": 0, "straddling": 0}
    mismatches = []
    T = np.arange(1 << n)
    for S in range(1, 1 << n):
        image = shoga(unanimity_game(n, S)).worth
        meet = T & S
        disjoint, superset = meet == 0, meet == S
        expected = np.where(disjoint, 0.0, np.where(superset, 1.0, 0.5))
        cases["disjoint"] += int(disjoint.sum())
        cases["superset"] += int(superset.sum())
        cases["straddling"] += int((~disjoint & ~superset).sum())
        for t in np.flatnonzero(image != expected):
            mismatches.append((S, int(t), float(image[t]), float(expected[t])))
    return BasisReport(n, cases, mismatches)
