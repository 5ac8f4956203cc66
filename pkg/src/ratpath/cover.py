"""Exponential start-time clustering and the incremental sparse edge cover.

Each clustering instance draws a geometric shift b_v per vertex and
assigns every vertex to the center minimizing hop-distance minus shift.
Equivalently, build a *shifted graph*: a fresh source s attached to each
vertex v by a path of length b_max + 1 - b_v, and let v's center be the
vertex whose attachment path begins the shortest s -> v route.  That view
makes the clustering maintainable under edge insertions with a plain
incremental BFS: whenever the first hop beta_v of some shortest s -> v
path changes, v moves between clusters.

A sparse edge cover stacks several independent clustering instances, so
with decent probability the endpoints of every inserted edge land
together in at least one cluster, while every vertex belongs to exactly
one cluster per instance.
"""

from __future__ import annotations

import math
from collections import deque
from typing import Dict, List, Optional, Sequence, Set, Tuple

import numpy as np

__all__ = [
    "sample_shift",
    "estc_static",
    "IncrementalBfs",
    "DepthCapExceeded",
    "ClusteringInstance",
    "SparseCover",
]


def sample_shift(alpha: float, rng: np.random.Generator) -> int:
    """Geometric shift with tail P[X >= k] = e^(-alpha * k)."""
    if alpha <= 0:
        raise ValueError("alpha must be positive")
    u = 1.0 - rng.random()  # uniform in (0, 1]
    return int(math.floor(-math.log(u) / alpha))


def estc_static(
    adjacency: Sequence[Sequence[int]],
    alpha: float,
    rng: Optional[np.random.Generator] = None,
    shifts: Optional[Sequence[int]] = None,
) -> Tuple[List[int], List[int]]:
    """One-shot clustering of an undirected graph given as adjacency lists.

    Returns (centers, shifts): centers[v] is the vertex minimizing
    hop-distance(v, w) - shift(w); ties break toward the lowest center id,
    unreachable candidates never win.
    """
    n = len(adjacency)
    if shifts is None:
        if rng is None:
            raise ValueError("either shifts or an rng must be supplied")
        shifts = [sample_shift(alpha, rng) for _ in range(n)]
    else:
        shifts = list(shifts)
        if len(shifts) != n:
            raise ValueError("one shift per vertex required")
    centers = list(range(n))
    best = [-shifts[v] for v in range(n)]  # delta(v, v) - b_v
    # BFS from each candidate center; lowest center id wins ties.
    for w in range(n):
        dist = [-1] * n
        dist[w] = 0
        q = deque([w])
        while q:
            x = q.popleft()
            for y in adjacency[x]:
                if dist[y] < 0:
                    dist[y] = dist[x] + 1
                    q.append(y)
        for v in range(n):
            if dist[v] < 0:
                continue
            score = dist[v] - shifts[w]
            if score < best[v] or (score == best[v] and w < centers[v]):
                best[v] = score
                centers[v] = w
    return centers, shifts


class DepthCapExceeded(RuntimeError):
    """A BFS level went past the configured cap, so an upstream
    high-probability assumption was violated."""


class IncrementalBfs:
    """BFS tree from a fixed source under edge insertions.

    Tracks, for every vertex v != s, a neighbor beta_v of s lying on some
    current shortest s -> v path.  Insertions only ever shrink distances,
    so updates mimic BFS from the vertices whose distance dropped.
    Tie-breaking is by insertion order: beta_v changes only when the
    distance of v strictly drops.
    """

    __slots__ = ("n", "s", "adj", "dist", "beta", "depth_cap", "work_counter")

    def __init__(self, adjacency: List[List[int]], s: int, depth_cap: int):
        self.n = len(adjacency)
        self.s = s
        self.adj = [list(nb) for nb in adjacency]
        self.depth_cap = depth_cap
        self.dist = [-1] * self.n
        self.beta: List[Optional[int]] = [None] * self.n
        self.work_counter = 0
        self.dist[s] = 0
        q = deque([s])
        while q:
            x = q.popleft()
            for y in self.adj[x]:
                if self.dist[y] < 0:
                    self.dist[y] = self.dist[x] + 1
                    self.beta[y] = y if x == s else self.beta[x]
                    q.append(y)
        if any(d < 0 for d in self.dist):
            raise ValueError("initial graph must be connected")
        if max(self.dist) > depth_cap:
            raise DepthCapExceeded(f"initial depth {max(self.dist)} exceeds cap {depth_cap}")

    def insert(self, u: int, v: int) -> List[Tuple[int, int]]:
        """Insert the undirected edge (u, v); returns (vertex, new beta)
        for every vertex whose beta changed."""
        self.adj[u].append(v)
        self.adj[v].append(u)
        changes: List[Tuple[int, int]] = []
        drops = deque()
        for a, b in ((u, v), (v, u)):
            if self.dist[a] + 1 < self.dist[b]:
                self.dist[b] = self.dist[a] + 1
                nb = b if a == self.s else self.beta[a]
                if nb != self.beta[b]:
                    self.beta[b] = nb
                    changes.append((b, nb))
                drops.append(b)
        while drops:
            x = drops.popleft()
            self.work_counter += 1
            if self.dist[x] > self.depth_cap:
                raise DepthCapExceeded(f"depth {self.dist[x]} exceeds cap {self.depth_cap}")
            for y in self.adj[x]:
                if self.dist[x] + 1 < self.dist[y]:
                    self.dist[y] = self.dist[x] + 1
                    nb = y if x == self.s else self.beta[x]
                    if nb != self.beta[y]:
                        self.beta[y] = nb
                        changes.append((y, nb))
                    drops.append(y)
        return changes


class ClusteringInstance:
    """One incremental clustering over n real vertices.

    The shifted graph materializes the attachment paths as real BFS
    vertices; entry_of[v] is the neighbor of the source on v's own path.
    """

    __slots__ = (
        "n",
        "shifts",
        "b_max",
        "center",
        "clusters",
        "entry_of",
        "center_of_entry",
        "_bfs",
        "moves",
    )

    def __init__(self, n: int, rng: np.random.Generator, alpha: float = 1.0, slack: int = 0):
        self.n = n
        self.shifts = [sample_shift(alpha, rng) for _ in range(n)]
        self.b_max = max(self.shifts, default=0)
        adjacency: List[List[int]] = [[] for _ in range(n)]
        self.entry_of: List[int] = [0] * n
        self.center_of_entry: Dict[int, int] = {}

        def new_vertex() -> int:
            adjacency.append([])
            return len(adjacency) - 1

        s = new_vertex()
        for v in range(n):
            length = self.b_max + 1 - self.shifts[v]
            prev = s
            entry = v
            for step in range(length - 1):
                c = new_vertex()
                adjacency[prev].append(c)
                adjacency[c].append(prev)
                if prev == s:
                    entry = c
                prev = c
            adjacency[prev].append(v)
            adjacency[v].append(prev)
            self.entry_of[v] = entry
            self.center_of_entry[entry] = v
        self._bfs = IncrementalBfs(adjacency, s, depth_cap=self.b_max + 1 + slack)
        for v in range(n):
            assert self._bfs.beta[v] == self.entry_of[v]
        self.center = list(range(n))
        self.clusters: Dict[int, Set[int]] = {v: {v} for v in range(n)}
        self.moves = 0

    @property
    def source(self) -> int:
        return self._bfs.s

    def insert_edge(self, u: int, v: int) -> List[Tuple[int, int, int]]:
        """Relay an edge of the clustered graph; returns (vertex, old
        center, new center) moves."""
        out: List[Tuple[int, int, int]] = []
        for x, nb in self._bfs.insert(u, v):
            if x >= self.n:
                continue  # interior path vertex
            new_center = self.center_of_entry.get(nb)
            if new_center is None or new_center == self.center[x]:
                continue
            old = self.center[x]
            self.clusters[old].discard(x)
            self.clusters.setdefault(new_center, set()).add(x)
            self.center[x] = new_center
            self.moves += 1
            out.append((x, old, new_center))
        return out


class SparseCover:
    """Union of several independent incremental clusterings.

    Set ids are (instance index, center vertex).  Every vertex sits in
    exactly one set per instance, so membership per vertex is bounded by
    the instance count at all times.
    """

    __slots__ = ("n", "instances", "updates_issued", "edges_seen", "_edge_set")

    def __init__(self, n: int, lambda_: float, rng: np.random.Generator, alpha: float = 1.0):
        if n < 1:
            raise ValueError("cover needs at least one vertex")
        count = max(1, math.ceil(lambda_ * math.log2(max(n, 2))))
        slack = max(1, math.ceil(lambda_ * math.log2(max(n, 2))))
        self.n = n
        self.instances = [
            ClusteringInstance(n, np.random.default_rng(rng.integers(0, 2**63)), alpha, slack)
            for _ in range(count)
        ]
        self.updates_issued = 0
        self.edges_seen = 0
        self._edge_set: Set[Tuple[int, int]] = set()

    @property
    def instance_count(self) -> int:
        return len(self.instances)

    def insert_edge(self, u: int, v: int) -> List[Tuple[Tuple[int, int], str, int]]:
        """Insert an edge; repeats are ignored.  Returns the elementary
        updates ((instance, center), "remove"/"add", vertex) in order."""
        if u == v:
            raise ValueError("self-loops are not part of the cover graph")
        key = (min(u, v), max(u, v))
        if key in self._edge_set:
            return []
        self._edge_set.add(key)
        self.edges_seen += 1
        updates: List[Tuple[Tuple[int, int], str, int]] = []
        for idx, inst in enumerate(self.instances):
            for x, old, new in inst.insert_edge(u, v):
                updates.append(((idx, old), "remove", x))
                updates.append(((idx, new), "add", x))
        self.updates_issued += len(updates)
        return updates

    def sets_of(self, v: int) -> List[Tuple[int, int]]:
        return [(idx, inst.center[v]) for idx, inst in enumerate(self.instances)]

    def common_set(self, u: int, v: int) -> Optional[Tuple[int, int]]:
        """Scan u's sets for one also containing v; None on covering failure."""
        for idx, inst in enumerate(self.instances):
            if inst.center[u] == inst.center[v]:
                return (idx, inst.center[u])
        return None

    def members(self, set_id: Tuple[int, int]) -> Set[int]:
        idx, center = set_id
        return set(self.instances[idx].clusters.get(center, ()))

    def membership_counts(self) -> List[int]:
        return [self.instance_count] * self.n

    def counters(self) -> Dict[str, int]:
        return {
            "instances": self.instance_count,
            "edges": self.edges_seen,
            "updates": self.updates_issued,
            "beta_changes": sum(inst.moves for inst in self.instances),
            "bfs_work": sum(inst._bfs.work_counter for inst in self.instances),
        }
