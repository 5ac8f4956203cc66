"""Price functions by scaling: halve the feasibility error per round.

Each rational edge weight is streamed as a binary expansion.  Round j
works on the integer weights 2^j * (w truncated to j fractional bits) + 1,
reduced by twice the accumulated potential; the reduction keeps every
surviving weight in a small integer range, so a plain integer shortest
path routine (pluggable; Bellman-Ford here) does the heavy lifting.
Edges whose reduced weight exceeds 4n can never lie on a shortest path or
negative cycle at this or any later round and are pruned.

Summing the per-round integer potentials p_j / 2^j yields a price
function under which every reduced weight is at least -2^-k, verified
exactly before returning.  Any negative cycle met along the way maps to
the same vertex cycle in the input graph and is re-verified with exact
rational arithmetic.
"""

from __future__ import annotations

from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from .graph import NegativeCycle, PriceFunction, WeightedDigraph, check_eps_feasible, cycle_weight
from .rational import BigRational, DEFAULT_BUDGET, WordBudget, ZERO, is_k_short, truncate_binary

__all__ = [
    "integer_sssp",
    "integer_sssp_arrays",
    "eps_feasible_price",
    "assemble_price",
    "scaled_weight",
]

# Magnitudes below this keep every intermediate of the vectorized engine
# inside int64.
_NUMPY_SAFE = 1 << 60


def scaled_weight(w: BigRational, j: int) -> int:
    """Integer round-j weight: 2^j * (w truncated to j fractional bits) + 1."""
    t = truncate_binary(w, j)
    return ((t.num << j) // t.den) + 1


def _walk_cycle(parent: Sequence[int], start: int, n: int) -> List[int]:
    # After n improving rounds, n parent hops from an improved vertex
    # land inside the cycle.
    v = start
    for _ in range(n):
        v = int(parent[v])
    cycle = [v]
    u = int(parent[v])
    while u != v:
        cycle.append(u)
        u = int(parent[u])
    cycle.reverse()
    return cycle


def integer_sssp_arrays(
    n: int,
    tails: Sequence[int],
    heads: Sequence[int],
    weights: Sequence[int],
    s: int,
) -> Tuple[Optional[List[Optional[int]]], Optional[List[int]], Optional[List[int]]]:
    """Integer Bellman-Ford over edge arrays with early termination.

    Returns (dist, parent, None) or (None, None, cycle).  This is the
    pluggable engine behind `integer_sssp` and the scaling rounds; replace
    it to substitute a faster integer solver.
    """
    max_abs = max((abs(int(w)) for w in weights), default=0)
    if (max_abs + 1) * (n + 1) < _NUMPY_SAFE and len(weights) > 0:
        inf = np.int64(1 << 62)
        t_arr = np.asarray(tails, dtype=np.int64)
        h_arr = np.asarray(heads, dtype=np.int64)
        w_arr = np.asarray(weights, dtype=np.int64)
        dist = np.full(n, inf, dtype=np.int64)
        parent = np.full(n, -1, dtype=np.int64)
        dist[s] = 0
        changed_v = None
        for _ in range(n + 1):
            dt = dist[t_arr]
            cand = np.where(dt < inf, dt + w_arr, inf)
            new = dist.copy()
            np.minimum.at(new, h_arr, cand)
            changed_v = new < dist
            if not changed_v.any():
                out = [None if dist[v] >= inf else int(dist[v]) for v in range(n)]
                return out, [int(p) for p in parent], None
            upd = (dt < inf) & (cand == new[h_arr]) & changed_v[h_arr]
            parent[h_arr[upd]] = t_arr[upd]
            dist = new
        start = int(np.nonzero(changed_v)[0][0])
        return None, None, _walk_cycle(parent, start, n)

    # Arbitrary-magnitude fallback.
    dist_o: List[Optional[int]] = [None] * n
    parent_o = [-1] * n
    dist_o[s] = 0
    last = -1
    for _ in range(n + 1):
        changed = False
        for t, h, w in zip(tails, heads, weights):
            dt = dist_o[t]
            if dt is None:
                continue
            cand = dt + w
            if dist_o[h] is None or cand < dist_o[h]:
                dist_o[h] = cand
                parent_o[h] = t
                changed = True
                last = h
        if not changed:
            return dist_o, parent_o, None
    return None, None, _walk_cycle(parent_o, last, n)


def integer_sssp(
    g: WeightedDigraph, s: int
) -> Union[Tuple[List[Optional[int]], List[int]], NegativeCycle]:
    """Exact integer single-source distances, or a negative-cycle witness."""
    for e in g.edges:
        if e.weight.den != 1:
            raise ValueError("integer_sssp requires integral weights")
    dist, parent, cyc = integer_sssp_arrays(
        g.n,
        [e.tail for e in g.edges],
        [e.head for e in g.edges],
        [e.weight.num for e in g.edges],
        s,
    )
    if cyc is None:
        return dist, parent
    return NegativeCycle(cyc, cycle_weight(g, cyc))


def _halving_sum(vals: Sequence[int]) -> BigRational:
    """Exact sum of vals[i] / 2^i via a halving recursion."""
    if len(vals) == 1:
        return BigRational(vals[0])
    mid = (len(vals) + 1) // 2
    high = _halving_sum(vals[mid:])
    return _halving_sum(vals[:mid]) + BigRational(high.num, high.den << mid)


def assemble_price(levels: Sequence[Sequence[int]]) -> PriceFunction:
    """Combine integer potentials: value(v) = sum_j levels[j][v] / 2^j.

    The result denominator divides 2^(len(levels) - 1).
    """
    if not levels:
        raise ValueError("at least one potential level required")
    n = len(levels[0])
    return PriceFunction([_halving_sum([int(col[v]) for col in levels]) for v in range(n)])


def eps_feasible_price(
    g: WeightedDigraph,
    k: int,
    budget: WordBudget = DEFAULT_BUDGET,
    collect: Optional[Dict[str, int]] = None,
) -> Union[PriceFunction, NegativeCycle]:
    """A 2^-k-feasible price function of g, or a negative-cycle witness.

    Runs k+2 integer shortest-path rounds on the graph augmented with a
    zero-weight super-source.  The returned prices have denominators
    dividing 2^(k+1) and are verified exactly against every edge before
    returning.  Internal contract violations raise: they indicate a bug,
    not bad input.
    """
    if k < 0:
        raise ValueError("accuracy exponent must be non-negative")
    for e in g.edges:
        if not is_k_short(e.weight, 1, budget):
            raise ValueError(f"edge weight {e.weight} is not 1-short under B={budget.B}")
    n = g.n
    src = n  # super-source
    m = g.m
    total = m + n
    tails = [e.tail for e in g.edges] + [src] * n
    heads = [e.head for e in g.edges] + list(range(n))

    signs = [1] * total
    rems = [0] * total
    dens = [1] * total
    reduced: List[int] = [1] * total  # super-source edges stay at round weight 1
    for idx, e in enumerate(g.edges):
        num, den = e.weight.num, e.weight.den
        signs[idx] = 1 if num >= 0 else -1
        a = -num if num < 0 else num
        q0, r = divmod(a, den)
        rems[idx] = r
        dens[idx] = den
        reduced[idx] = (q0 if num >= 0 else -q0) + 1

    vector_ok = (
        max((abs(w) for w in reduced), default=0) + 2 * n
    ) * 4 * (n + 2) < _NUMPY_SAFE and max(dens, default=1) < _NUMPY_SAFE

    if vector_ok:
        price_cols = _rounds_vectorized(
            n, k, tails, heads, signs, rems, dens, reduced, g, collect
        )
    else:
        price_cols = _rounds_object(n, k, tails, heads, signs, rems, dens, reduced, g, collect)
    if isinstance(price_cols, NegativeCycle):
        return price_cols

    price = assemble_price([col[:n] for col in price_cols])
    eps = BigRational(1, 1 << k)
    if not check_eps_feasible(g, price, eps):
        raise AssertionError("assembled price function fails exact feasibility")
    return price


def _rounds_vectorized(n, k, tails, heads, signs, rems, dens, reduced, g, collect):
    src = n
    t_arr = np.asarray(tails, dtype=np.int64)
    h_arr = np.asarray(heads, dtype=np.int64)
    sign_arr = np.asarray(signs, dtype=np.int64)
    rem_arr = np.asarray(rems, dtype=np.int64)
    den_arr = np.asarray(dens, dtype=np.int64)
    red_arr = np.asarray(reduced, dtype=np.int64)
    alive = np.ones(len(tails), dtype=bool)
    cols: List[List[int]] = []
    for j in range(k + 2):
        live = np.nonzero(alive)[0]
        dist, parent, cyc = integer_sssp_arrays(
            n + 1, t_arr[live], h_arr[live], red_arr[live], src
        )
        if collect is not None:
            collect["scaling_rounds"] = collect.get("scaling_rounds", 0) + 1
        if cyc is not None:
            w = cycle_weight(g, cyc)
            if w >= ZERO:
                raise AssertionError("round-level cycle does not map to a negative cycle")
            return NegativeCycle(cyc, w)
        if any(d is None for d in dist):
            raise AssertionError("super-source lost reachability; pruning bug")
        cols.append([int(d) for d in dist])
        if j == k + 1:
            break
        p = np.asarray(cols[-1], dtype=np.int64)
        stream = den_arr > 1
        r2 = np.where(stream, rem_arr * 2, 0)
        bit = (r2 >= den_arr) & stream
        rem_arr = np.where(stream, r2 - bit * den_arr, rem_arr)
        step = np.where(sign_arr >= 0, bit.astype(np.int64) - 1, -bit.astype(np.int64) - 1)
        nxt = 2 * (red_arr + p[t_arr] - p[h_arr]) + step
        if (alive & (nxt < -2)).any():
            raise AssertionError(f"reduced weight below -2 at round {j + 1}")
        alive &= nxt <= 4 * n
        # Dead edges are clamped so their values cannot overflow over
        # later rounds; they are never read again.
        red_arr = np.where(alive, nxt, 0)
    return cols


def _rounds_object(n, k, tails, heads, signs, rems, dens, reduced, g, collect):
    src = n
    total = len(tails)
    alive = [True] * total
    cols: List[List[int]] = []
    for j in range(k + 2):
        live = [i for i in range(total) if alive[i]]
        dist, parent, cyc = integer_sssp_arrays(
            n + 1,
            [tails[i] for i in live],
            [heads[i] for i in live],
            [reduced[i] for i in live],
            src,
        )
        if collect is not None:
            collect["scaling_rounds"] = collect.get("scaling_rounds", 0) + 1
        if cyc is not None:
            w = cycle_weight(g, cyc)
            if w >= ZERO:
                raise AssertionError("round-level cycle does not map to a negative cycle")
            return NegativeCycle(cyc, w)
        if any(d is None for d in dist):
            raise AssertionError("super-source lost reachability; pruning bug")
        cols.append([int(d) for d in dist])
        if j == k + 1:
            break
        p = cols[-1]
        for i in live:
            if dens[i] > 1:
                r = rems[i] * 2
                bit = 1 if r >= dens[i] else 0
                rems[i] = r - bit * dens[i]
            else:
                bit = 0
            step = (bit - 1) if signs[i] >= 0 else (-bit - 1)
            nxt = 2 * (reduced[i] + p[tails[i]] - p[heads[i]]) + step
            if nxt < -2:
                raise AssertionError(f"reduced weight {nxt} below -2 at round {j + 1}")
            if nxt > 4 * n:
                alive[i] = False
            reduced[i] = nxt
    return cols
