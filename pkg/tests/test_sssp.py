import math

import numpy as np
import pytest

from ratpath.graph import (
    NegativeCycle,
    WeightedDigraph,
    bf_exact,
    gen_random,
    gen_small_diff,
    plant_negative_cycle,
    verify_sssp,
)
from ratpath.rational import BigRational, WordBudget, ZERO
from ratpath.sssp import (
    BOB_STRATEGIES,
    IllegalBobMove,
    NegativeWeightError,
    cut_dijkstra,
    cut_preprocess,
    dijkstra_nonneg,
    game_simulate,
    negative_sssp,
    replay_enhanced_order,
)


def R(n, d=1):
    return BigRational(n, d)


B16 = WordBudget(16)


class TestDijkstraNonneg:
    def test_single_vertex(self):
        g = WeightedDigraph(1, source=0)
        res = dijkstra_nonneg(g, 0)
        assert res.tree_vertices() == [0]
        assert res.distances() == [ZERO]

    def test_negative_weight_rejected(self):
        g = WeightedDigraph(2, [(0, 1, R(-1))])
        with pytest.raises(NegativeWeightError):
            dijkstra_nonneg(g, 0)

    def test_gadget_resolves_gap(self):
        g, gap = gen_small_diff(6)
        res = dijkstra_nonneg(g, 0, strategy="distcmp", seed=1)
        sink = g.n - 1
        assert res.distances()[sink] == R(1, 2)
        assert gap == R(1, 30)

    @pytest.mark.parametrize("strategy", ["exact_oracle", "distcmp", "pairwise_delta"])
    def test_matches_oracle_random(self, strategy):
        rng = np.random.default_rng(55)
        for trial in range(60):
            n = int(rng.integers(2, 50))
            m = int(rng.integers(0, min(3 * n, n * (n - 1)) + 1))
            g = gen_random(n, m, int(rng.integers(0, 2**31)))
            res = dijkstra_nonneg(g, 0, strategy=strategy, seed=trial)
            want = bf_exact(g, 0).dist
            got = res.distances()
            assert got == want, (strategy, trial)

    def test_unreachable_reported(self):
        g = WeightedDigraph(3, [(1, 2, R(1))])
        res = dijkstra_nonneg(g, 0)
        assert not res.reachable(1) and not res.reachable(2)
        assert res.distances()[1] is None

    def test_deterministic(self):
        g = gen_random(30, 90, 4)
        a = dijkstra_nonneg(g, 0, seed=9).parent
        b = dijkstra_nonneg(g, 0, seed=9).parent
        assert a == b

    def test_self_verifies(self):
        for seed in range(10):
            g = gen_random(25, 70, seed)
            res = dijkstra_nonneg(g, 0, seed=seed)
            assert verify_sssp(g, res, mode="exact").valid


class TestCutDijkstra:
    def _context(self, g, k):
        ctx = cut_preprocess(g, k, budget=B16)
        assert not isinstance(ctx, NegativeCycle)
        return ctx

    def test_source_zero(self):
        g = gen_random(12, 30, 2, "small", "priced")
        ctx = self._context(g, 3)
        run = cut_dijkstra(ctx, g, 0, seed=0)
        assert run.dist[0] == ZERO

    def test_context_table_matches_direct_approximation(self):
        from ratpath.cfrac import best_approx
        from ratpath.graph import check_eps_feasible

        g = gen_random(14, 40, 6, "small", "priced")
        k = 3
        ctx = self._context(g, k)
        assert check_eps_feasible(g, ctx.price, ctx.eps)
        rng = np.random.default_rng(9)
        for _ in range(50):
            u, v = int(rng.integers(0, g.n)), int(rng.integers(0, g.n))
            if u == v:
                continue
            assert ctx.ra_pair(u, v) == best_approx(ctx.price[u] - ctx.price[v], 2 * B16.B)

    def test_exact_on_hop_bounded(self):
        from ratpath.rational import is_k_short

        rng = np.random.default_rng(66)
        checked = 0
        for trial in range(200):
            n = int(round(math.exp(rng.uniform(math.log(4), math.log(80)))))
            m = int(rng.integers(n, min(3 * n, n * (n - 1)) + 1))
            g = gen_random(n, m, int(rng.integers(0, 2**31)), "small", "priced")
            k = int(rng.choice([2, max(2, math.isqrt(n)), n]))
            ctx = self._context(g, k)
            run = cut_dijkstra(ctx, g, 0, seed=trial)
            full = bf_exact(g, 0).dist
            hop = bf_exact(g, 0, hop_bound=k).dist
            for v in range(n):
                if run.dist[v] is not None:
                    assert is_k_short(run.dist[v], k + 1, B16)
                    # always an upper bound witnessed by a real path
                    path = run.witness_path(v)
                    acc = ZERO
                    for a, b in zip(path, path[1:]):
                        acc = acc + g.edge_between(a, b).weight
                    assert acc == run.dist[v]
                    assert full[v] is not None and run.dist[v] >= full[v]
                if full[v] is not None and hop[v] is not None and hop[v] == full[v]:
                    checked += 1
                    assert run.dist[v] == full[v], (trial, v)
        assert checked > 500

    def test_exact_path_of_k_edges(self):
        g = WeightedDigraph(4, [(0, 1, R(-1, 2)), (1, 2, R(-1, 2)), (2, 3, R(-1, 2))])
        ctx = self._context(g, 3)
        run = cut_dijkstra(ctx, g, 0, seed=1)
        assert run.dist[3] == R(-3, 2)

    def test_heap_insert_bound(self):
        rng = np.random.default_rng(67)
        for trial in range(30):
            n = int(rng.integers(4, 50))
            g = gen_random(n, min(3 * n, n * (n - 1)), int(rng.integers(0, 2**31)), "small", "priced")
            k = max(2, math.isqrt(n))
            ctx = self._context(g, k)
            run = cut_dijkstra(ctx, g, 0, seed=trial)
            assert run.heap_inserts <= n + 2 * n * math.sqrt(n)

    def test_replay_reproduces_dist(self):
        rng = np.random.default_rng(68)
        for trial in range(30):
            n = int(rng.integers(4, 40))
            g = gen_random(n, min(3 * n, n * (n - 1)), int(rng.integers(0, 2**31)), "small", "priced")
            k = int(rng.choice([2, max(2, math.isqrt(n))]))
            ctx = self._context(g, k)
            run = cut_dijkstra(ctx, g, 0, seed=trial)
            replay = replay_enhanced_order(g, 0, run.order, run.processed)
            assert replay == run.dist

    def test_k_equals_n_matches_plain_dijkstra(self):
        for seed in range(12):
            g = gen_random(18, 50, seed)
            ctx = self._context(g, 18)
            run = cut_dijkstra(ctx, g, 0, seed=seed)
            want = dijkstra_nonneg(g, 0, strategy="exact_oracle").distances()
            assert run.dist == want

    def test_recombination_graph_dominance(self):
        # estimates between hit-set vertices dominate true distances
        rng = np.random.default_rng(69)
        for trial in range(10):
            n = int(rng.integers(6, 26))
            g = gen_random(n, 3 * n, int(rng.integers(0, 2**31)), "small", "priced")
            k = max(2, math.isqrt(n))
            ctx = self._context(g, k)
            sample = sorted(int(x) for x in rng.permutation(n)[: max(2, n // 3)])
            runs = {z: cut_dijkstra(ctx, g, z, seed=trial) for z in sample}
            for z in sample:
                full = bf_exact(g, z).dist
                for v in sample:
                    est = runs[z].dist[v]
                    if est is not None:
                        assert full[v] is not None and est >= full[v]


class TestNegativePipeline:
    def test_matches_oracle(self):
        rng = np.random.default_rng(70)
        for trial in range(25):
            n = int(rng.integers(3, 40))
            g = gen_random(n, min(3 * n, n * (n - 1)), int(rng.integers(0, 2**31)), "small", "priced")
            for k in (2, None):
                res = negative_sssp(g, 0, k=k, seed=trial, budget=B16)
                assert not isinstance(res, NegativeCycle)
                assert res.distances() == bf_exact(g, 0).dist

    def test_planted_cycle_detected(self):
        for seed in range(15):
            g = plant_negative_cycle(gen_random(15, 45, seed, "small", "priced"), seed)
            res = negative_sssp(g, 0, seed=seed, budget=B16)
            assert isinstance(res, NegativeCycle)
            assert res.weight < ZERO

    def test_agrees_with_nonneg_solver(self):
        for seed in range(10):
            g = gen_random(20, 60, seed)
            a = negative_sssp(g, 0, seed=seed, budget=B16)
            b = dijkstra_nonneg(g, 0, seed=seed)
            assert a.distances() == b.distances()

    def test_jobs_parallel_same_answer(self):
        g = gen_random(24, 72, 5, "small", "priced")
        a = negative_sssp(g, 0, seed=3, budget=B16, jobs=1)
        b = negative_sssp(g, 0, seed=3, budget=B16, jobs=4)
        assert a.distances() == b.distances()

    def test_single_vertex(self):
        g = WeightedDigraph(1, source=0)
        res = negative_sssp(g, 0, budget=B16)
        assert res.distances() == [ZERO]

    def test_unreachable_stay_out(self):
        g = WeightedDigraph(4, [(0, 1, R(-1, 2)), (2, 3, R(1))], source=0)
        res = negative_sssp(g, 0, budget=B16)
        assert res.distances()[1] == R(-1, 2)
        assert res.distances()[2] is None and res.distances()[3] is None

    def test_counters_collected(self):
        stats = {}
        g = gen_random(16, 48, 8, "small", "priced")
        negative_sssp(g, 0, seed=1, budget=B16, collect=stats)
        assert stats["cut_heap_inserts"] > 0
        assert stats["scaling_rounds"] > 0
        assert stats["hitset_size"] >= 1


class TestGame:
    def test_single_index_frozen_value(self):
        # with the alternating turn order the last assignment never pays
        assert game_simulate(10, "greedy-single-index", 0) == 9

    def test_n_one(self):
        assert game_simulate(1, "front-loaded", 0) <= 2

    def test_bound_all_strategies(self):
        for name in BOB_STRATEGIES:
            for n in (50, 100):
                for seed in range(5):
                    assert game_simulate(n, name, seed) <= 2 * n * math.sqrt(n)

    def test_illegal_moves(self):
        with pytest.raises(IllegalBobMove):
            game_simulate(4, lambda t, n, rng: [0, 0, 0, 0], 0)
        with pytest.raises(IllegalBobMove):
            game_simulate(4, lambda t, n, rng: [1, 1, 0, 0], 0)
        with pytest.raises(IllegalBobMove):
            game_simulate(4, lambda t, n, rng: [2, 3, 0, 0], 0)

    def test_custom_strategy_callable(self):
        def alternating(turn, n, rng):
            out = [0] * n
            out[turn % n] = 1
            return out

        assert game_simulate(12, alternating, 0) <= 2 * 12 * math.sqrt(12)
