import math
from collections import deque

import numpy as np
import pytest

from ratpath.cover import (
    ClusteringInstance,
    DepthCapExceeded,
    IncrementalBfs,
    SparseCover,
    estc_static,
    sample_shift,
)


def bfs_dist(adjacency, s):
    dist = [-1] * len(adjacency)
    dist[s] = 0
    q = deque([s])
    while q:
        x = q.popleft()
        for y in adjacency[x]:
            if dist[y] < 0:
                dist[y] = dist[x] + 1
                q.append(y)
    return dist


class TestSampleShift:
    def test_tail_at_zero(self):
        rng = np.random.default_rng(1)
        assert all(sample_shift(1.0, rng) >= 0 for _ in range(100))

    def test_mean_and_tail(self):
        rng = np.random.default_rng(2)
        draws = [sample_shift(1.0, rng) for _ in range(1_000_000)]
        mean = sum(draws) / len(draws)
        want_mean = 1.0 / (math.e - 1.0)
        # var of Geo(1 - e^-1) is (1-p)/p^2 with p = 1 - e^-1
        p = 1.0 - math.exp(-1.0)
        sigma_mean = math.sqrt((1 - p) / p**2 / len(draws))
        assert abs(mean - want_mean) <= 3 * sigma_mean
        tail = sum(1 for d in draws if d >= 3) / len(draws)
        want_tail = math.exp(-3.0)
        sigma_tail = math.sqrt(want_tail * (1 - want_tail) / len(draws))
        assert abs(tail - want_tail) <= 3 * sigma_tail

    def test_rejects_bad_alpha(self):
        with pytest.raises(ValueError):
            sample_shift(0.0, np.random.default_rng(0))


class TestEstcStatic:
    def test_edgeless_self_centers(self):
        centers, _ = estc_static([[] for _ in range(5)], 1.0, np.random.default_rng(3))
        assert centers == list(range(5))

    def test_path_with_fixed_shifts(self):
        # path a-b-c with shifts (2, 0, 0): a and b center at a; the tie at
        # c between a and c breaks toward the lowest id.
        adjacency = [[1], [0, 2], [1]]
        centers, _ = estc_static(adjacency, 1.0, shifts=[2, 0, 0])
        assert centers == [0, 0, 0]

    def test_all_zero_shifts(self):
        adjacency = [[1], [0, 2], [1]]
        centers, _ = estc_static(adjacency, 1.0, shifts=[0, 0, 0])
        assert centers == [0, 1, 2]


class TestIncrementalBfs:
    def test_star(self):
        adjacency = [[1, 2, 3], [0], [0], [0]]
        bfs = IncrementalBfs(adjacency, 0, depth_cap=3)
        assert bfs.beta[1:] == [1, 2, 3]

    def test_shortcut_changes_beta(self):
        # path s-a-b, then insert s-b
        adjacency = [[1], [0, 2], [1]]
        bfs = IncrementalBfs(adjacency, 0, depth_cap=3)
        assert bfs.beta[2] == 1
        changes = bfs.insert(0, 2)
        assert changes == [(2, 2)]
        assert bfs.dist[2] == 1

    def test_useless_insert_empty_update(self):
        adjacency = [[1], [0, 2], [1]]
        bfs = IncrementalBfs(adjacency, 0, depth_cap=3)
        assert bfs.insert(1, 2) == []

    def test_beta_certificate_random(self):
        rng = np.random.default_rng(5)
        n = 24
        # start from a star so the graph is connected
        adjacency = [[] for _ in range(n)]
        for v in range(1, n):
            adjacency[0].append(v)
            adjacency[v].append(0)
        bfs = IncrementalBfs(adjacency, 0, depth_cap=n)
        current = [list(nb) for nb in adjacency]
        for _ in range(120):
            u, v = rng.integers(0, n, size=2)
            u, v = int(u), int(v)
            if u == v:
                continue
            bfs.insert(u, v)
            current[u].append(v)
            current[v].append(u)
            fresh = bfs_dist(current, 0)
            fresh_from = {}
            for w in range(n):
                assert bfs.dist[w] == fresh[w]
            for w in range(1, n):
                b = bfs.beta[w]
                assert b in current[0]
                if b not in fresh_from:
                    fresh_from[b] = bfs_dist(current, b)
                assert fresh[w] == 1 + fresh_from[b][w]

    def test_depth_cap(self):
        adjacency = [[1], [0, 2], [1, 3], [2]]
        with pytest.raises(DepthCapExceeded):
            IncrementalBfs(adjacency, 0, depth_cap=2)


class TestClusteringInstance:
    def test_initial_singletons(self):
        inst = ClusteringInstance(6, np.random.default_rng(6), slack=8)
        assert inst.center == list(range(6))
        assert all(inst.clusters[v] == {v} for v in range(6))

    def test_certificate_after_insertions(self):
        # center assignment must satisfy: shifted-source distance to v equals
        # (attachment length of the center) + hop distance center -> v.
        rng = np.random.default_rng(7)
        n = 16
        for trial in range(20):
            inst = ClusteringInstance(n, np.random.default_rng(trial), slack=3 * n)
            adjacency = [[] for _ in range(n)]
            for _ in range(40):
                u, v = int(rng.integers(0, n)), int(rng.integers(0, n))
                if u == v:
                    continue
                inst.insert_edge(u, v)
                adjacency[u].append(v)
                adjacency[v].append(u)
                for w in range(n):
                    c = inst.center[w]
                    entry_len = inst.b_max + 1 - inst.shifts[c]
                    hop = bfs_dist(adjacency, c)[w]
                    assert hop >= 0  # co-assignment implies connectivity
                    assert inst._bfs.dist[w] == entry_len + hop


class TestSparseCover:
    def test_fresh_cover_singletons_and_sparsity(self):
        cover = SparseCover(10, 4.0, np.random.default_rng(8))
        for v in range(10):
            sets = cover.sets_of(v)
            assert len(sets) == cover.instance_count
            assert all(sid == (i, v) for i, sid in enumerate(sets))
        assert cover.membership_counts() == [cover.instance_count] * 10

    def test_covering_and_common_set(self):
        hits = 0
        trials = 200
        count = None
        for seed in range(trials):
            cover = SparseCover(8, 4.0, np.random.default_rng(seed))
            count = cover.instance_count
            cover.insert_edge(2, 5)
            if cover.common_set(2, 5) is not None:
                hits += 1
        # per instance the co-cluster probability is >= e^-2, instances
        # are independent
        p_hit = 1.0 - (1.0 - math.exp(-2.0)) ** count
        sigma = math.sqrt(p_hit * (1 - p_hit) / trials)
        assert hits / trials >= p_hit - 3 * sigma

    def test_same_cluster_frequency_single_instance(self):
        p_want = math.exp(-2.0)
        trials = 3000
        hits = 0
        for seed in range(trials):
            inst = ClusteringInstance(6, np.random.default_rng(seed), slack=40)
            inst.insert_edge(1, 4)
            hits += inst.center[1] == inst.center[4]
        sigma = math.sqrt(p_want * (1 - p_want) / trials)
        assert hits / trials >= p_want - 3 * sigma

    def test_repeat_edges_ignored(self):
        cover = SparseCover(6, 4.0, np.random.default_rng(9))
        first = cover.insert_edge(0, 1)
        assert cover.insert_edge(0, 1) == []
        assert cover.insert_edge(1, 0) == []
        assert cover.edges_seen == 1

    def test_update_lists_track_membership(self):
        rng = np.random.default_rng(10)
        n = 12
        cover = SparseCover(n, 4.0, np.random.default_rng(11))
        membership = {
            (i, v): {v} for i in range(cover.instance_count) for v in range(n)
        }
        for _ in range(60):
            u, v = int(rng.integers(0, n)), int(rng.integers(0, n))
            if u == v:
                continue
            for sid, op, x in cover.insert_edge(u, v):
                if op == "remove":
                    membership[sid].discard(x)
                else:
                    membership.setdefault(sid, set()).add(x)
        for sid, members in membership.items():
            assert cover.members(sid) == members

    def test_diameter_property_snapshots(self):
        # whenever max shift <= k ln n, co-clustered pairs sit within
        # k ln n hops of each other in the current graph
        rng = np.random.default_rng(12)
        n = 48
        cover = SparseCover(n, 4.0, np.random.default_rng(13))
        adjacency = [[] for _ in range(n)]
        inserted = 0
        while inserted < 160:
            u, v = int(rng.integers(0, n)), int(rng.integers(0, n))
            if u == v:
                continue
            cover.insert_edge(u, v)
            adjacency[u].append(v)
            adjacency[v].append(u)
            inserted += 1
            if inserted % 32:
                continue
            for inst in cover.instances:
                k = max(1, math.ceil(max(inst.shifts) / math.log(n)))
                bound = k * math.log(n)
                if max(inst.shifts) > bound:
                    continue
                dists = {}
                for w in range(n):
                    c = inst.center[w]
                    if c == w:
                        continue
                    if c not in dists:
                        dists[c] = bfs_dist(adjacency, c)
                    assert 0 <= dists[c][w] <= bound

    def test_update_counter_reports(self):
        cover = SparseCover(8, 4.0, np.random.default_rng(14))
        cover.insert_edge(0, 1)
        counters = cover.counters()
        assert counters["edges"] == 1
        assert counters["updates"] == cover.updates_issued
