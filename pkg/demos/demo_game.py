"""
The countdown game behind the lazy heap
=======================================

Every reinsertion into the cut Dijkstra's priority queue corresponds to
a countdown reaching zero in a two-player game: the opponent hands out
ranks 1..c each turn, the counters tick down, and every zero costs a
dollar.  However adversarial the rank assignments, the payout stays
below 2n*sqrt(n), which is what caps the heap traffic.
"""

import math

from ratpath import game_simulate
from ratpath.sssp import BOB_STRATEGIES

for n in (100, 400, 1600):
    bound = 2 * n * math.sqrt(n)
    print(f"n = {n}  (bound {bound:.0f})")
    for name in BOB_STRATEGIES:
        worst = max(game_simulate(n, name, seed) for seed in range(20))
        print(f"  {name:<20} worst of 20 seeds: {worst:>6}  ({worst / bound:.1%} of bound)")
