import math

import numpy as np
import pytest

from ratpath.cfrac import Ordering
from ratpath.distcmp import (
    ClusterOrder,
    DistCmp,
    DistCmpConfig,
    PairwiseDeltaComparator,
    similarity_fraction,
)
from ratpath.rational import BigRational, WordBudget, ZERO, is_k_short


def R(n, d=1):
    return BigRational(n, d)


WEIGHT_POOL = [R(1, 2), R(1, 3), R(1, 5), R(2, 3), R(1, 7), R(3, 5), R(0), R(2, 7)]


def nearby_fraction(diff: BigRational, b: int, ell: int):
    """Brute-force unique fraction with |p|, q < 2^b within 2^-ell of diff."""
    found = []
    for q in range(1, 1 << b):
        p0 = (diff.num * q) // diff.den
        for p in (p0 - 1, p0, p0 + 1):
            if abs(p) >= 1 << b:
                continue
            gap = abs(diff - R(p, q))
            if gap.num << ell <= gap.den:
                if all((p * fq != fp * q) for fp, fq in found):
                    found.append((p, q))
    return found


class TestSimilarityFraction:
    def test_example_near_third(self):
        diff = R(1, 3) + R(1, 1 << 200)
        assert similarity_fraction(diff, ZERO, 8, 100) == R(1, 3)

    def test_equal_values(self):
        assert similarity_fraction(R(5, 7), R(5, 7), 4, 20) == ZERO

    def test_no_fraction(self):
        # 5/6 is far from every fraction with denominator < 4 at window 2^-19
        assert similarity_fraction(R(1, 2) + R(1, 3), ZERO, 2, 20) is None

    def test_window_precondition(self):
        with pytest.raises(ValueError):
            similarity_fraction(R(1), ZERO, 8, 17)

    def test_uniqueness_brute_force(self, rng):
        # at ell >= 2b + 2 at most one fraction sits in the window
        for _ in range(400):
            b = int(rng.integers(1, 5))
            ell = 2 * b + 2 + int(rng.integers(0, 4))
            x = R(int(rng.integers(-200, 201)), int(rng.integers(1, 64)))
            cands = nearby_fraction(x, b, ell)
            assert len(cands) <= 1
            got = similarity_fraction(x, ZERO, b, ell + 1)
            if got is not None:
                # the window used by the op is 2^-(ell), matching cands
                assert cands and R(*cands[0]) == got


def _similar(diff, b, ell):
    found = nearby_fraction(diff, b, ell)
    return R(*found[0]) if found else None


class TestSimilarityCalculus:
    def test_smaller_transitivity(self, rng):
        # ell >= 4b + 5: x<=y, y<=z and x~z imply x<=z, with unchanged
        # parameters
        b = 2
        ell = 4 * b + 5
        step = R(1, 1 << (ell + 3))
        checked = 0
        for _ in range(4000):
            f1 = R(int(rng.integers(-3, 4)), int(rng.integers(1, 1 << b)))
            f2 = R(int(rng.integers(-3, 4)), int(rng.integers(1, 1 << b)))
            if abs(f1.num) >= 1 << b or abs(f2.num) >= 1 << b:
                continue
            e1 = step * int(rng.integers(-4, 5))
            e2 = step * int(rng.integers(-4, 5))
            z = R(int(rng.integers(-2, 3)), int(rng.integers(1, 8)))
            y = z + f2 + e2
            x = y + f1 + e1
            fx_y = _similar(x - y, b, ell)
            fy_z = _similar(y - z, b, ell)
            fx_z = _similar(x - z, b, ell)
            if fx_y is None or fy_z is None or fx_z is None:
                continue
            small_xy = x - y <= fx_y
            small_yz = y - z <= fy_z
            if small_xy and small_yz:
                checked += 1
                assert x - z <= fx_z
        assert checked > 200

    def test_similarity_chaining(self, rng):
        # x ~_{b1} y and y ~_{b2} z at window ell give x ~ z at
        # (b1 + b2 + 1, ell - 1)
        for _ in range(2000):
            b1 = int(rng.integers(1, 4))
            b2 = int(rng.integers(1, 4))
            ell = 2 * (b1 + b2 + 1) + 3 + int(rng.integers(0, 3))
            step = R(1, 1 << (ell + 2))
            f1 = R(int(rng.integers(-3, 4)), int(rng.integers(1, 1 << b1)))
            f2 = R(int(rng.integers(-3, 4)), int(rng.integers(1, 1 << b2)))
            if abs(f1.num) >= 1 << b1 or abs(f2.num) >= 1 << b2:
                continue
            z = R(int(rng.integers(-2, 3)), int(rng.integers(1, 8)))
            y = z + f2 + step * int(rng.integers(-2, 3))
            x = y + f1 + step * int(rng.integers(-2, 3))
            glue = f1 + f2
            gap = abs((x - z) - glue)
            assert abs(glue.num) < 1 << (b1 + b2 + 1)
            assert glue.den < 1 << (b1 + b2 + 1)
            assert gap.num << (ell - 1) <= gap.den


class TestConfig:
    def test_margins_hold(self):
        for n in (2, 5, 16, 200, 512, 4096):
            cfg = DistCmpConfig(capacity=n, c=2, B=16)
            for i in range(cfg.t):
                assert cfg.ell_chain[i] >= 4 * cfg.bits_chain[i] + 5
            assert cfg.K >= 2
            assert cfg.n_levels[cfg.t] == 1

    def test_rejects_bad(self):
        with pytest.raises(ValueError):
            DistCmpConfig(capacity=0)
        with pytest.raises(ValueError):
            DistCmpConfig(capacity=4, c=0)


class TestInsertAndRecords:
    def test_chain_distances_recoverable(self):
        dc = DistCmp(DistCmpConfig(capacity=8, c=2, B=16), seed=0)
        a = dc.insert_leaf(0, R(1, 2))
        b = dc.insert_leaf(a, R(1, 3))
        assert dc.exact_distance(a) == R(1, 2)
        assert dc.exact_distance(b) == R(5, 6)
        z, d_i, d_next, approx = dc.level_record(0, b)
        assert z == a and d_i == R(1, 3)
        # scaled approximation within the stated error bound
        scale = dc.approx_denominator(0)
        err_num = abs(int(approx) * dc.exact_distance(b).den - dc.exact_distance(b).num * scale)
        assert err_num <= 2 * dc.exact_distance(b).den  # two chain hops

    def test_root_record(self):
        dc = DistCmp(DistCmpConfig(capacity=4, c=2, B=16), seed=0)
        z, d_i, d_next, approx = dc.level_record(0, 0)
        assert z is None and d_i == ZERO and d_next == ZERO and int(approx) == 0

    def test_level_assignment_deterministic(self):
        a = DistCmp(DistCmpConfig(capacity=64, c=2, B=16), seed=9)
        b = DistCmp(DistCmpConfig(capacity=64, c=2, B=16), seed=9)
        assert a.slot_level == b.slot_level

    def test_rejects_long_weight(self):
        dc = DistCmp(DistCmpConfig(capacity=4, c=1, B=4), seed=0)
        with pytest.raises(ValueError):
            dc.insert_leaf(0, R(1000, 7))

    def test_approx_error_bound_invariant(self, rng):
        cfg = DistCmpConfig(capacity=40, c=2, B=16)
        dc = DistCmp(cfg, seed=3)
        nodes = [0]
        for _ in range(39):
            parent = nodes[int(rng.integers(0, len(nodes)))]
            w = WEIGHT_POOL[int(rng.integers(0, len(WEIGHT_POOL)))]
            v = dc.insert_leaf(parent, w)
            nodes.append(v)
            for i in range(cfg.t):
                if dc.tree.level[v] < i:
                    continue
                _, _, _, approx = dc.level_record(i, v)
                exact = dc.exact_distance(v)
                # count chain members of level >= i on the root path
                k = 0
                x = v
                while x != 0:
                    if dc.tree.level[x] >= i:
                        k += 1
                    x = dc.tree.parent[x]
                scale = dc.approx_denominator(i)
                err = abs(int(approx) * exact.den - exact.num * scale)
                assert err <= k * exact.den


class TestCompare:
    def test_examples(self):
        dc = DistCmp(DistCmpConfig(capacity=8, c=2, B=16), seed=1)
        u = dc.insert_leaf(0, R(1, 2))
        v = dc.insert_leaf(0, R(1, 3))
        assert dc.compare(u, v, R(1, 6)) is Ordering.EQUAL
        assert dc.compare(u, v, ZERO) is Ordering.GREATER
        assert dc.compare(u, u, ZERO) is Ordering.EQUAL
        assert dc.compare(0, 0, R(-3, 7)) is Ordering.GREATER
        assert dc.compare(0, 0, R(3, 7)) is Ordering.LESS

    def test_gadget_twin_chains(self):
        # insert the two gadget paths as sibling chains: the difference of
        # the endpoint distances is the 1/30 gap, oriented heavy vs light
        dc = DistCmp(DistCmpConfig(capacity=8, c=2, B=16), seed=4)
        light = dc.insert_leaf(dc.insert_leaf(0, R(1, 2)), R(0))
        heavy = dc.insert_leaf(dc.insert_leaf(0, R(1, 3)), R(1, 5))
        assert dc.compare(heavy, light, ZERO) is Ordering.GREATER
        assert dc.compare(heavy, light, R(1, 30)) is Ordering.EQUAL
        assert dc.exact_compare(heavy, light, ZERO) is Ordering.GREATER

    def test_query_shortness_guard(self):
        dc = DistCmp(DistCmpConfig(capacity=4, c=1, B=4), seed=0)
        with pytest.raises(ValueError):
            dc.compare(0, 0, R(10**9, 7))

    def test_oracle_equivalence_workloads(self):
        total_ops = 0
        mismatches = 0
        budget = WordBudget(64)
        for seed in range(64):
            rng = np.random.default_rng(1000 + seed)
            n = int(rng.choice([24, 32, 48, 64, 96, 128, 256, 512]))
            ops = 1600
            cfg = DistCmpConfig(capacity=n, c=2, B=64)
            dc = DistCmp(cfg, seed=seed)
            nodes = [0]
            for _ in range(ops):
                total_ops += 1
                if len(nodes) < n and (rng.random() < 0.4 or len(nodes) < 3):
                    parent = nodes[int(rng.integers(0, len(nodes)))]
                    w = WEIGHT_POOL[int(rng.integers(0, len(WEIGHT_POOL)))]
                    nodes.append(dc.insert_leaf(parent, w))
                else:
                    u = nodes[int(rng.integers(0, len(nodes)))]
                    v = nodes[int(rng.integers(0, len(nodes)))]
                    diff = dc.exact_distance(u) - dc.exact_distance(v)
                    r = rng.random()
                    if r < 0.45 and is_k_short(diff, 2, budget):
                        beta = diff
                    elif r < 0.7:
                        beta = WEIGHT_POOL[int(rng.integers(0, len(WEIGHT_POOL)))] - WEIGHT_POOL[
                            int(rng.integers(0, len(WEIGHT_POOL)))
                        ]
                    else:
                        beta = R(int(rng.integers(-30, 31)), int(rng.integers(1, 20)))
                    if dc.compare(u, v, beta) is not dc.exact_compare(u, v, beta):
                        mismatches += 1
        assert total_ops >= 100_000
        assert mismatches == 0

    def test_fallback_path_still_correct(self):
        # a single clustering instance per cover makes covering misses
        # likely, forcing the exact fallback route
        rng = np.random.default_rng(77)
        cfg = DistCmpConfig(capacity=48, c=2, B=16, lam=0.17)
        dc = DistCmp(cfg, seed=5)
        nodes = [0]
        fallbacks_before = sum(dc.counters()["cover_fallbacks"])
        for _ in range(800):
            if len(nodes) < 48 and (rng.random() < 0.4 or len(nodes) < 3):
                parent = nodes[int(rng.integers(0, len(nodes)))]
                nodes.append(dc.insert_leaf(parent, WEIGHT_POOL[int(rng.integers(0, 6))]))
            else:
                u = nodes[int(rng.integers(0, len(nodes)))]
                v = nodes[int(rng.integers(0, len(nodes)))]
                diff = dc.exact_distance(u) - dc.exact_distance(v)
                beta = diff if is_k_short(diff, 2, WordBudget(16)) else R(1, 3)
                assert dc.compare(u, v, beta) is dc.exact_compare(u, v, beta)
        assert sum(dc.counters()["cover_fallbacks"]) >= fallbacks_before

    def test_fanout_counter_bound(self):
        rng = np.random.default_rng(88)
        n = 128
        cfg = DistCmpConfig(capacity=n, c=2, B=64)
        dc = DistCmp(cfg, seed=6)
        nodes = [0]
        for _ in range(3000):
            if len(nodes) < n and (rng.random() < 0.3 or len(nodes) < 3):
                parent = nodes[int(rng.integers(0, len(nodes)))]
                nodes.append(dc.insert_leaf(parent, WEIGHT_POOL[int(rng.integers(0, 6))]))
            else:
                u = nodes[int(rng.integers(0, len(nodes)))]
                v = nodes[int(rng.integers(0, len(nodes)))]
                diff = dc.exact_distance(u) - dc.exact_distance(v)
                beta = diff if is_k_short(diff, 2, WordBudget(64)) else R(1, 5)
                dc.compare(u, v, beta)
        queries = dc.counters()["level_queries"]
        logn = math.log2(n)
        for i in range(cfg.t):
            assert queries[i + 1] <= cfg.kappa * cfg.n_levels[i] * logn**2

    def test_capacity_doubling_replay(self):
        dc = DistCmp(DistCmpConfig(capacity=4, c=2, B=16), seed=2)
        nodes = [0]
        rng = np.random.default_rng(3)
        for _ in range(20):
            parent = nodes[int(rng.integers(0, len(nodes)))]
            nodes.append(dc.insert_leaf(parent, WEIGHT_POOL[int(rng.integers(0, 6))]))
        assert len(dc.tree) == 21
        assert dc.config.capacity >= 21
        for u in nodes[::3]:
            for v in nodes[::5]:
                assert dc.compare(u, v, ZERO) is dc.exact_compare(u, v, ZERO)


class TestClusterOrderUnit:
    def test_groups_and_relation(self):
        order = ClusterOrder(lambda x, y: ((x > y) - (x < y), True))
        for v in (5, 1, 3, 9, 7):
            order.insert(v)
        assert order.relation(1, 9) == -1
        assert order.relation(9, 1) == 1
        order2 = ClusterOrder(lambda x, y: (0, True))
        order2.insert(1)
        order2.insert(2)
        assert order2.relation(1, 2) == 0
        order.remove(3)
        assert order.relation(1, 3) is None


class TestPairwiseComparator:
    def _grow(self, pdc, rng, n):
        nodes = [0]
        for _ in range(n - 1):
            parent = nodes[int(rng.integers(0, len(nodes)))]
            nodes.append(pdc.add_leaf(parent, WEIGHT_POOL[int(rng.integers(0, 6))]))
        return nodes

    def test_agrees_with_exact(self):
        rng = np.random.default_rng(13)
        budget = WordBudget(16)
        pdc = PairwiseDeltaComparator(60, 8, budget, c=2, seed=4)
        nodes = self._grow(pdc, rng, 60)
        for _ in range(10_000):
            u = nodes[int(rng.integers(0, len(nodes)))]
            v = nodes[int(rng.integers(0, len(nodes)))]
            beta = R(int(rng.integers(-10, 11)), int(rng.integers(1, 12)))
            diff = pdc._exact(u) - pdc._exact(v)
            assert pdc.compare(u, v, beta) is Ordering.of(diff._cmp(beta))

    def test_self_pair_is_zero(self):
        pdc = PairwiseDeltaComparator(10, 3, WordBudget(8), seed=1)
        ap = pdc._ra(0, 0)
        assert ap.lo == ZERO and ap.hi == ZERO

    def test_all_marked_short_tails(self):
        # a hop parameter of 1 with everything marked keeps every tail empty
        budget = WordBudget(8)
        pdc = PairwiseDeltaComparator(6, 1, budget, c=1, gamma=100.0, seed=2)
        rng = np.random.default_rng(14)
        nodes = self._grow(pdc, rng, 6)
        assert all(slot in pdc._marked_slots or slot == 0 for slot in range(6))
        for u in nodes:
            assert pdc.tree.nearest_marked_ancestor(u, 1) == u
