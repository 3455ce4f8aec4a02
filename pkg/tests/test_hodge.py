import numpy as np
import pytest

import oracles
from shoga.catalog import airport_game, bankruptcy_game, glove_game, random_game
from shoga.games import GameError, TuGame, coalition, unanimity_game
from shoga.hodge import (
    ConvergenceError,
    LatticeGraph,
    adjoint,
    component_game,
    component_games,
    connected_components,
    differential,
    hodge_decompose,
    laplacian,
    laplacian_matrix,
    permutation_pullback,
    poisson_solve,
    shapley_via_hodge,
    shoga_via_hodge,
    solve_laplacian,
)
from shoga.maps import shoga_scaled
from shoga.values import shapley


def graphs(n):
    out = [LatticeGraph.full(n)] + [LatticeGraph.up_to(n, k) for k in range(1, n + 1)]
    return out + [LatticeGraph.single_step(n, S) for S in range(1, 1 << n)]


def oracle_edges(G):
    return oracles.lattice_edges(G.n, G.kind, k=G.k, S=G.S)


class TestLattice:
    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_edges_match_definition(self, n):
        for G in graphs(n):
            tails, heads = G.edges()
            assert list(zip(tails.tolist(), heads.tolist())) == oracle_edges(G)
            assert G.num_edges == len(tails)

    def test_full_edge_count(self):
        for n in range(1, 9):
            assert LatticeGraph.full(n).num_edges == 3**n - 2**n

    def test_orientation_and_degree(self):
        G = LatticeGraph.up_to(4, 2)
        tails, heads = G.edges()
        pairs = set(zip(tails.tolist(), heads.tolist()))
        assert not any((b, a) in pairs for a, b in pairs)
        np.testing.assert_array_equal(G.degree(), np.bincount(np.r_[tails, heads], minlength=16))

    def test_component_examples(self):
        assert connected_components(LatticeGraph.single_step(2, [1])) == 2
        for n in range(1, 7):
            assert connected_components(LatticeGraph.full(n)) == 1
            assert connected_components(LatticeGraph.up_to(n, 1)) == 1

    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_kernel_dimension_equals_components(self, n):
        for G in graphs(n):
            assert oracles.kernel_dimension(n, oracle_edges(G)) == connected_components(G)

    def test_containment(self):
        full = LatticeGraph.full(4)
        assert full.contains(LatticeGraph.single_step(4, 0b1011))
        assert LatticeGraph.up_to(4, 2).contains(LatticeGraph.single_step(4, 0b0101))
        assert not LatticeGraph.up_to(4, 1).contains(LatticeGraph.single_step(4, 0b0101))

    def test_validation(self):
        with pytest.raises(GameError):
            LatticeGraph.up_to(3, 0)
        with pytest.raises(GameError):
            LatticeGraph.single_step(3, 0)
        with pytest.raises(GameError):
            LatticeGraph.full(15)


class TestOperators:
    def test_single_edge_signs(self):
        G = LatticeGraph.full(1)
        np.testing.assert_array_equal(adjoint(G, [1.0]), [-1.0, 1.0])
        np.testing.assert_array_equal(differential(G, [0.0, 2.5]), [2.5])

    def test_constants_are_in_the_kernel(self):
        for G in graphs(3):
            c = np.full(8, 1.7)
            assert not differential(G, c).any()
            assert np.abs(laplacian(G, c)).max() < 1e-12

    @pytest.mark.parametrize("n", [1, 3, 5, 8])
    def test_adjointness(self, n, rng):
        for G in (LatticeGraph.full(n), LatticeGraph.up_to(n, 1), LatticeGraph.up_to(n, 2 if n > 1 else 1), LatticeGraph.single_step(n, 1)):
            for _ in range(100 if n <= 5 else 10):
                u, f = rng.standard_normal(1 << n), rng.standard_normal(G.num_edges)
                assert abs(u @ adjoint(G, f) - differential(G, u) @ f) < 1e-10 * max(1, np.abs(f).sum())

    @pytest.mark.parametrize("n", [1, 2, 4, 6])
    def test_laplacian_is_d_star_d(self, n, rng):
        for G in graphs(n) if n <= 4 else (LatticeGraph.full(n), LatticeGraph.up_to(n, 2), LatticeGraph.single_step(n, 0b101)):
            X = rng.standard_normal((1 << n, 3))
            composed = np.column_stack([adjoint(G, differential(G, X[:, j])) for j in range(3)])
            np.testing.assert_allclose(laplacian(G, X), composed, atol=1e-10)

    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_dense_matrix_matches_incidence(self, n):
        for G in graphs(n):
            D = oracles.incidence(n, oracle_edges(G))
            np.testing.assert_array_equal(laplacian_matrix(G), D.T @ D)

    def test_symmetric_semidefinite(self, rng):
        for G in graphs(4):
            u, v = rng.standard_normal(16), rng.standard_normal(16)
            assert u @ laplacian(G, u) >= -1e-12
            assert abs(u @ laplacian(G, v) - laplacian(G, u) @ v) < 1e-10

    def test_single_step_laplacians_partition_the_full_one(self, rng):
        for n in range(1, 7):
            u = rng.standard_normal(1 << n)
            total = sum(laplacian(LatticeGraph.single_step(n, S), u) for S in range(1, 1 << n))
            np.testing.assert_allclose(total, laplacian(LatticeGraph.full(n), u), atol=1e-10)

    def test_rhs_sums_to_zero(self, rng):
        for H in graphs(4):
            assert abs(laplacian(H, rng.standard_normal(16)).sum()) < 1e-12


class TestPoisson:
    def test_constant_rhs_source_gives_zero(self):
        sol = poisson_solve(LatticeGraph.full(3), LatticeGraph.single_step(3, 0b011), np.full(8, 4.0))
        assert np.abs(sol.x).max() < 1e-12

    @pytest.mark.parametrize("method", ["cg", "dense"])
    def test_two_player_example(self, method):
        sol = poisson_solve(LatticeGraph.full(2), LatticeGraph.single_step(2, [1]), unanimity_game(2, [1, 2]).worth, method=method)
        assert sol.x[3] == pytest.approx(0.25, abs=1e-12)
        assert sol.x[0] == 0.0
        assert sol.method == method

    def test_cg_matches_dense_on_random_games(self, rng):
        G = LatticeGraph.full(6)
        worst = 0.0
        for _ in range(50):
            u = random_game(6, rng=rng)
            H = LatticeGraph.single_step(6, int(rng.integers(1, 64)))
            a = poisson_solve(G, H, u.worth, method="cg")
            b = poisson_solve(G, H, u.worth, method="dense")
            worst = max(worst, np.abs(a.x - b.x).max())
            assert a.residual_norm < 1e-9
        assert worst < 1e-8

    def test_matches_lstsq_oracle(self, rng):
        for n in range(1, 5):
            for k in range(1, n + 1):
                u = random_game(n, rng=rng)
                for S in range(1, 1 << n):
                    if bin(S).count("1") > k:
                        continue
                    expected = oracles.component_game(u.worth, n, S, k)
                    np.testing.assert_allclose(component_game(u, S, k).worth, expected, atol=1e-10)

    def test_rejections(self):
        with pytest.raises(GameError, match="connected"):
            solve_laplacian(LatticeGraph.single_step(3, 1), np.zeros(8))
        with pytest.raises(GameError, match="orthogonal"):
            solve_laplacian(LatticeGraph.full(3), np.ones(8))
        with pytest.raises(GameError, match="subgraph"):
            poisson_solve(LatticeGraph.up_to(3, 1), LatticeGraph.single_step(3, 3), np.zeros(8))
        with pytest.raises(GameError, match="method"):
            solve_laplacian(LatticeGraph.full(2), np.zeros(4), method="lu")

    def test_convergence_error_carries_residual(self):
        err = ConvergenceError("stalled", 1e-3, 7)
        assert err.residual == 1e-3 and err.iterations == 7


class TestComponentGames:
    def test_bridge_examples(self):
        assert shoga_via_hodge(glove_game(), [1]) == pytest.approx(1 / 8, abs=1e-12)
        assert shoga_via_hodge(bankruptcy_game(200, [100, 200, 300]), [2, 3]) == pytest.approx(37.5, abs=1e-9)
        u = airport_game([12, 28, 28, 30])
        assert shoga_via_hodge(u, u.grand) == pytest.approx(u(u.grand) / 8, abs=1e-10)
        assert shapley_via_hodge(glove_game(), 1) == pytest.approx(2 / 3, abs=1e-12)
        assert shapley_via_hodge(glove_game(), 2) == pytest.approx(1 / 6, abs=1e-12)
        assert shapley_via_hodge(TuGame.zero(4), 3) == 0.0

    def test_null_coalition_has_zero_component(self):
        u = unanimity_game(3, [1, 2])
        for k in (1, 2, 3):
            assert not np.abs(component_game(u, [3], k).worth).max() > 1e-12
        assert component_game(unanimity_game(2, [1, 2]), [1], 2)(3) == pytest.approx(0.25)

    def test_trace_identity(self, rng):
        for n in range(1, 7):
            u = random_game(n, rng=rng)
            for S, g in component_games(u).items():
                assert g.worth.sum() == pytest.approx(u.worth[S], abs=1e-8)

    def test_bridges_on_random_games(self, rng):
        for n in range(1, 8):
            u = random_game(n, rng=rng)
            for S in (1, (1 << n) - 1, int(rng.integers(1, 1 << n))):
                assert shoga_via_hodge(u, S) == pytest.approx(shoga_scaled(u).worth[S], abs=1e-8)
            assert shapley_via_hodge(u, n) == pytest.approx(shapley(u)[n - 1], abs=1e-8)

    def test_argument_checks(self):
        u = glove_game()
        with pytest.raises(GameError):
            component_game(u, 0)
        with pytest.raises(GameError):
            component_game(u, [1, 2], k=1)
        with pytest.raises(GameError):
            component_games(u, 4)
        with pytest.raises(GameError):
            shapley_via_hodge(u, 4)


class TestDecomposition:
    def test_gradient_flow_is_all_gradient(self, rng):
        G = LatticeGraph.full(4)
        f = differential(G, rng.standard_normal(16))
        parts = hodge_decompose(G, f)
        np.testing.assert_allclose(parts.gradient, f, atol=1e-10)
        assert np.abs(parts.residual).max() < 1e-10

    def test_divergence_free_flow_is_all_residual(self, rng):
        G = LatticeGraph.up_to(4, 2)
        f = rng.standard_normal(G.num_edges)
        r = hodge_decompose(G, f).residual
        parts = hodge_decompose(G, r)
        assert np.abs(parts.gradient).max() < 1e-10
        np.testing.assert_allclose(parts.residual, r, atol=1e-10)

    def test_matches_least_squares(self, rng):
        G = LatticeGraph.full(4)
        D = oracles.incidence(4, oracle_edges(G))
        f = rng.standard_normal(G.num_edges)
        x = np.linalg.lstsq(D, f, rcond=None)[0]
        parts = hodge_decompose(G, f)
        np.testing.assert_allclose(parts.gradient, D @ x, atol=1e-10)
        assert abs(parts.gradient @ parts.residual) < 1e-9 * (f @ f)
        assert np.abs(parts.gradient + parts.residual - f).max() <= 2 * np.finfo(float).eps * np.abs(f).max()


class TestPermutations:
    def test_identity(self, rng):
        u = random_game(4, rng=rng)
        assert permutation_pullback([1, 2, 3, 4], u).equals(u)

    def test_swap_two_players(self):
        u = unanimity_game(2, [1])
        assert permutation_pullback([2, 1], u)([2]) == 1.0
        assert permutation_pullback([1, 3, 2], glove_game()).equals(glove_game())

    def test_vertex_function_input(self):
        x = np.arange(8.0)
        y = permutation_pullback([2, 3, 1], x)
        assert y[coalition([1])] == x[coalition([2])]

    def test_rejects_non_bijection(self):
        with pytest.raises(GameError):
            permutation_pullback([1, 1, 2], glove_game())
