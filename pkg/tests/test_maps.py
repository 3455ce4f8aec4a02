from math import factorial

import numpy as np
import pytest

import oracles
from shoga.catalog import additive_game, airport_game, bankruptcy_game, complement_symmetric, glove_game, majority_game, random_game
from shoga.games import GameError, TuGame, is_cohesive, is_constant_sum, is_superadditive, subgame, unanimity_game
from shoga.maps import (
    MAP_NAMES,
    anti_dual,
    dual,
    get_map,
    hamiache,
    kernel_membership,
    mobius,
    potential,
    potential_map,
    shoga,
    shoga_scaled,
    synergy,
    zero_normalization,
)
from shoga.values import shapley


def test_shoga_matches_formula(rng):
    for n in range(1, 8):
        u = random_game(n, rng=rng)
        np.testing.assert_array_equal(shoga(u).worth, oracles.shoga(u.worth))


def test_shoga_scaled_examples():
    assert shoga_scaled(glove_game())([1]) == 1 / 8
    assert shoga_scaled(unanimity_game(2, [1, 2]))([1]) == 0.25
    assert not shoga_scaled(TuGame.zero(3)).worth.any()


def test_shoga_scaled_is_efficient(rng):
    for n in range(1, 9):
        u = random_game(n, rng=rng)
        assert shoga_scaled(u).worth.sum() == pytest.approx(u(u.grand), abs=1e-12)


def test_dual_examples():
    d = dual(glove_game())
    assert d([1]) == 1 and d([2, 3]) == 1 and d([2]) == 0
    u = majority_game(3, 2)
    assert dual(u).equals(u)
    assert anti_dual(u).equals(-u)


def test_zero_normalization():
    assert zero_normalization(glove_game()).equals(glove_game())
    u = additive_game([1, 2, 3])
    assert not zero_normalization(u).worth.any()


def test_dual_identity_and_fixpoint(rng):
    for n in range(1, 8):
        u = random_game(n, rng=rng)
        c = shoga(u)
        assert c.equals(0.5 * (dual(u) + u), atol=1e-12)
        assert c(c.grand) == u(u.grand)


def test_idempotent(rng):
    for n in range(1, 8):
        c = shoga(random_game(n, rng=rng))
        assert shoga(c).equals(c, atol=1e-12)


def test_complement_difference(rng):
    for n in range(1, 8):
        u = random_game(n, rng=rng)
        c = shoga(u).worth
        idx = np.arange(1 << n)
        np.testing.assert_allclose(c[u.grand ^ idx] - c, u.worth[u.grand ^ idx] - u.worth, atol=1e-12)


def test_cohesive_bound_and_equality(rng):
    games = [glove_game(), bankruptcy_game(200, [100, 200, 300]), airport_game([12, 28, 28, 30]), majority_game(5, 3)]
    for n in range(1, 7):
        w = np.array([oracles.popcount(S) ** 1.5 for S in range(1 << n)]) + rng.uniform(0, 0.01, 1 << n)
        w[0] = 0
        w[-1] += 10
        games.append(TuGame(n, w))
    for u in games:
        assert is_cohesive(u)
        c = shoga(u).worth
        assert np.all(c >= u.worth - 1e-12)
        assert np.allclose(c, u.worth, atol=1e-12) == is_constant_sum(u)


def _triple_partition_test(u: TuGame) -> bool:
    w, full = u.worth, u.grand
    for S in range(1 << u.n):
        for T in oracles.subsets(full ^ S):
            R = full ^ S ^ T
            lhs = w[full] - w[R | S] - w[R | T] - w[S | T] + w[R] + w[S] + w[T]
            if lhs > 1e-12:
                return False
    return True


def test_superadditivity_criterion_exhaustive(rng):
    games = [glove_game(), bankruptcy_game(200, [100, 200, 300]), airport_game([12, 28, 28, 30])]
    for n in range(1, 10):
        games.append(majority_game(n, n // 2 + 1))
        games.append(random_game(n, rng=rng))
        w = np.array([oracles.popcount(S) for S in range(1 << n)], dtype=float) ** 2
        games.append(TuGame(n, w))
        games.append(TuGame(n, -w))
    verdicts = set()
    for u in games:
        expected = _triple_partition_test(u)
        assert is_superadditive(shoga(u)) == expected
        verdicts.add(expected)
    assert verdicts == {True, False}


def test_superadditive_constant_sum_maps_to_superadditive():
    for n in (3, 5, 7):
        u = majority_game(n, n // 2 + 1)
        assert is_superadditive(u) and is_constant_sum(u)
        assert is_superadditive(shoga(u))


def test_kernel(rng):
    assert kernel_membership(TuGame(2, [0, 3, 3, 0]))
    assert not shoga(TuGame(2, [0, 3, 3, 0])).worth.any()
    assert not kernel_membership(glove_game())
    for n in range(1, 7):
        v = complement_symmetric(random_game(n, rng=rng))
        assert kernel_membership(v)
        assert not shoga(v).worth.any()
        u = random_game(n, rng=rng)
        assert kernel_membership(u) == (not shoga(u).worth.any())


def test_mobius_examples(rng):
    for S in (1, 0b101, 0b111):
        np.testing.assert_array_equal(mobius(unanimity_game(3, S)).worth, np.eye(8)[S])
    k = mobius(additive_game([1.0, 2.0, 3.0])).worth
    np.testing.assert_allclose(k, [0, 1, 2, 0, 3, 0, 0, 0], atol=1e-12)


def test_mobius_synergy_round_trip(rng):
    for _ in range(100):
        u = random_game(8, rng=rng)
        assert synergy(mobius(u)).equals(u, atol=1e-12)
    v = random_game(4, rng=rng)
    expected = [sum(v.worth[T] for T in oracles.subsets(S)) for S in range(16)]
    np.testing.assert_allclose(synergy(v).worth, expected, atol=1e-12)


def test_hamiache_examples(rng):
    u = glove_game()
    h = hamiache(u, 1.0)
    assert h([1]) == 2.0
    assert h(u.grand) == u(u.grand)
    assert hamiache(u, 0.0).equals(u)
    v = random_game(4, rng=rng)
    t = 0.3
    for S in range(16):
        outside = [j for j in range(4) if not S >> j & 1]
        expected = v.worth[S] + t * sum(v.worth[S | 1 << j] - v.worth[S] - v.worth[1 << j] for j in outside)
        if S == 0:
            expected = 0.0
        assert hamiache(v, t).worth[S] == pytest.approx(expected, abs=1e-12)


def _potential_oracle(u: TuGame) -> float:
    n = u.n
    return sum(
        factorial(oracles.popcount(S) - 1) * factorial(n - oracles.popcount(S)) / factorial(n) * u.worth[S]
        for S in range(1, 1 << n)
    )


def test_potential(rng):
    u = glove_game()
    assert potential(u) == pytest.approx(2 / 3, abs=1e-15)
    rho = potential_map(u)
    assert rho([2, 3]) == 0
    assert rho(7) - rho([2, 3]) == pytest.approx(2 / 3, abs=1e-15)
    assert not potential_map(TuGame.zero(3)).worth.any()
    assert potential_map(TuGame(1, [0, 2.5]))(1) == 2.5
    for n in range(1, 7):
        v = random_game(n, rng=rng)
        assert potential(v) == pytest.approx(_potential_oracle(v), abs=1e-12)
        rho = potential_map(v)
        for S in range(1, 1 << n):
            assert rho.worth[S] == pytest.approx(_potential_oracle(subgame(v, S)), abs=1e-12)
        diffs = [rho.worth[v.grand] - rho.worth[v.grand ^ 1 << i] for i in range(n)]
        np.testing.assert_allclose(diffs, shapley(v), atol=1e-12)


def test_registry():
    for name in MAP_NAMES:
        key = "hamiache:0.25" if name == "hamiache:<t>" else name
        m = get_map(key)
        assert m(glove_game()).n == 3
    assert get_map("hamiache:1")(glove_game())([1]) == 2.0
    for bad in ("nope", "hamiache:x"):
        with pytest.raises(GameError):
            get_map(bad)


def test_map_keeps_empty_worth_zero(rng):
    u = random_game(5, rng=rng)
    for name in MAP_NAMES:
        key = "hamiache:-1.5" if name == "hamiache:<t>" else name
        assert get_map(key)(u).worth[0] == 0.0

