import numpy as np
import pytest

from shoga.axioms import AXIOMS, check_axiom, random_suite, verify_uniqueness_on_basis, witness_violates
from shoga.catalog import glove_game, random_game
from shoga.games import GameError, coalition, unanimity_game
from shoga.maps import GameMap, get_map, shoga


@pytest.mark.parametrize("n", [2, 3, 5])
def test_shoga_satisfies_all_its_axioms(n):
    suite = random_suite(n, 60, seed=n)
    for axiom in ("AvEFF", "NLL", "BLT", "CS", "LIN"):
        report = check_axiom(get_map("shoga"), axiom, suite)
        assert report.passed, (axiom, report.max_residual)
        assert report.games_checked > 0
    assert check_axiom(get_map("shoga-scaled"), "EFF", suite).passed


def test_scaled_map_fails_average_efficiency():
    suite = random_suite(4, 20, seed=1)
    report = check_axiom(get_map("shoga-scaled"), "AvEFF", suite)
    assert not report.passed
    assert witness_violates(report, get_map("shoga-scaled"))


def test_dual_cs_counterexample_on_glove():
    report = check_axiom(get_map("dual"), "CS", [glove_game()])
    assert not report.passed
    assert report.witness["coalition"] in (coalition([1]), coalition([2, 3]))
    assert report.max_residual == 1.0
    assert witness_violates(report, get_map("dual"))


@pytest.mark.parametrize("name, axiom", [("dual", "AvEFF"), ("synergy", "BLT"), ("mobius", "AvEFF"), ("potential", "CS")])
def test_other_maps_get_refuted_with_witness(name, axiom):
    report = check_axiom(get_map(name), axiom, random_suite(4, 80, seed=3))
    assert not report.passed
    assert witness_violates(report, get_map(name))


def test_dual_keeps_null_coalitions_at_zero():
    assert check_axiom(get_map("dual"), "NLL", random_suite(4, 80, seed=3)).passed


def test_nonlinear_map_fails_lin():
    squared = GameMap("square", lambda u: type(u)(u.n, u.worth**2))
    report = check_axiom(squared, "LIN", random_suite(3, 10, seed=0), seed=4)
    assert not report.passed and report.seed == 4
    assert witness_violates(report, squared)


def test_lin_is_seed_deterministic():
    suite = random_suite(3, 10, seed=0)
    a = check_axiom(get_map("hamiache:0.5"), "LIN", suite, seed=9)
    b = check_axiom(get_map("hamiache:0.5"), "LIN", suite, seed=9)
    assert a.max_residual == b.max_residual


def test_suite_validation():
    with pytest.raises(GameError):
        check_axiom(get_map("shoga"), "CS", [])
    with pytest.raises(GameError, match="mixes"):
        check_axiom(get_map("shoga"), "CS", [random_game(2, seed=0), random_game(3, seed=0)])
    with pytest.raises(GameError, match="unknown axiom"):
        check_axiom(get_map("shoga"), "XYZ", [glove_game()])
    assert "EFF" in AXIOMS


def test_random_suite_is_reproducible():
    a, b = random_suite(4, 12, seed=5), random_suite(4, 12, seed=5)
    assert all(x.equals(y) for x, y in zip(a, b))


def test_basis_cases_small():
    image = shoga(unanimity_game(3, [1, 2]))
    assert image([3]) == 0 and image(7) == 1 and image([1]) == 0.5
    for n in range(1, 6):
        report = verify_uniqueness_on_basis(n)
        assert report.passed
        assert sum(report.cases.values()) == (2**n - 1) * 2**n
    with pytest.raises(GameError):
        verify_uniqueness_on_basis(11)


def test_uniqueness_via_basis_linearity(rng):
    """A linear map agreeing with shoga on every unanimity game agrees everywhere."""
    n = 4
    u = random_game(n, rng=rng)
    from shoga.games import unanimity_coordinates

    coords = unanimity_coordinates(u)
    rebuilt = sum((coords[S] * shoga(unanimity_game(n, S)).worth for S in range(1, 1 << n)), np.zeros(1 << n))
    np.testing.assert_allclose(rebuilt, shoga(u).worth, atol=1e-12)
