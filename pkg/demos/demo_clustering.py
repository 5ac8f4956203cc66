"""
Shift clustering and the sparse edge cover
==========================================

Each vertex draws a geometric shift and joins the center winning the
race "hop distance minus shift".  Maintained incrementally over a graph
that only gains edges, the clustering moves each vertex rarely; stacking
independent instances yields a cover in which almost every inserted edge
ends up with both endpoints inside some common cluster.
"""

import math

import numpy as np

from ratpath import SparseCover, estc_static, sample_shift

rng = np.random.default_rng(3)
draws = [sample_shift(1.0, rng) for _ in range(200_000)]
print(f"shift mean {sum(draws)/len(draws):.4f} (expected {1/(math.e-1):.4f})")
print(f"tail P[X >= 3] {sum(d >= 3 for d in draws)/len(draws):.4f} (expected {math.exp(-3):.4f})")

# one-shot clustering of a path graph with handpicked shifts
adjacency = [[1], [0, 2], [1, 3], [2]]
centers, shifts = estc_static(adjacency, 1.0, shifts=[3, 0, 0, 0])
print(f"path with shifts {shifts}: centers {centers}")

# incremental cover over a densifying random graph
n = 128
cover = SparseCover(n, 4.0, np.random.default_rng(17))
edge_rng = np.random.default_rng(18)
inserted = 0
covered = 0
while inserted < n * n // 8:
    u, v = int(edge_rng.integers(0, n)), int(edge_rng.integers(0, n))
    if u == v:
        continue
    cover.insert_edge(u, v)
    covered += cover.common_set(u, v) is not None
    inserted += 1

counters = cover.counters()
print(f"{inserted} insertions over {counters['instances']} instances")
print(f"covered on arrival: {covered}/{inserted}")
print(f"elementary cover updates: {counters['updates']} (insertions: {inserted})")
print(f"cluster moves: {counters['beta_changes']}")
