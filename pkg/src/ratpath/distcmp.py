"""Hierarchical comparison of root-distance differences in a growing tree.

The structure maintains an incremental weighted out-tree and answers
queries "compare dist(root, u) - dist(root, v) against a short rational"
without ever materializing the exact distances, which can need a number
of bits linear in the tree depth.

Vertices are thinned geometrically into level sets L_0 (everything)
through L_t (the root alone).  Level i keeps, per member, a fixed-point
approximation of the root distance with denominator 2^(ell_i + 2) * n,
accurate enough that almost every comparison resolves by comparing
approximations.  The residual "difficult" comparisons are exactly those
whose two sides differ by almost precisely a short rational; such pairs
are recorded as edges of a similarity graph, covered by sparse clusters
(see `cover`), and ordered inside each cluster by a total preorder whose
evaluation delegates one comparison to level i+1 with a rewritten,
shorter right-hand side.  The recursion bottoms out at L_t where every
query is a sign test.

An exact-arithmetic twin of the query predicate is provided both as a
testing oracle and as the fallback when a low-probability covering
failure is detected.
"""

from __future__ import annotations

import math
from typing import Callable, Dict, List, Optional, Tuple

import numpy as np

try:
    from gmpy2 import mpz
except ImportError:  # pragma: no cover - gmpy2 is a declared dependency
    mpz = int

from .cfrac import Ordering, best_approx
from .cover import SparseCover
from .inctree import IncTree
from .rational import BigRational, WordBudget, ZERO, is_k_short

__all__ = [
    "DistCmpConfig",
    "DistCmp",
    "similarity_fraction",
    "ClusterOrder",
    "PairwiseDeltaComparator",
]


def similarity_fraction(
    a_u: BigRational, a_v: BigRational, b: int, ell: int
) -> Optional[BigRational]:
    """The unique fraction with |num|, den < 2^b within 2^-(ell-1) of
    a_u - a_v, or None when no such fraction exists.

    Requires ell >= 2b + 2 so that uniqueness holds.  The candidate is the
    endpoint of the best b-bit approximation closer to the difference.
    """
    if ell < 2 * b + 2:
        raise ValueError("window too wide for a unique fraction: need ell >= 2b + 2")
    diff = a_u - a_v
    ap = best_approx(diff, b)
    lo_gap = diff - ap.lo
    hi_gap = ap.hi - diff
    cand = ap.lo if lo_gap <= hi_gap else ap.hi
    gap = lo_gap if lo_gap <= hi_gap else hi_gap
    bound = 1 << b
    if cand.num >= bound or -cand.num >= bound:
        return None
    # |diff - cand| <= 2^-(ell-1)
    if gap.num << (ell - 1) <= gap.den:
        return cand
    return None


class DistCmpConfig:
    """Derived level parameters for a comparison structure.

    capacity: maximum vertex count including the root; c: shortness class
    of supported weights and queries; B: word budget in bits.  The level
    count t is the smallest with capacity / K^t <= 1 for the thinning
    factor K = max(2, ceil(C log2 capacity)).
    """

    __slots__ = (
        "capacity",
        "c",
        "B",
        "C",
        "lam",
        "gamma",
        "kappa",
        "K",
        "t",
        "n_levels",
        "bits",
        "ell",
        "bits_chain",
        "ell_chain",
        "chain_log",
    )

    def __init__(
        self,
        capacity: int,
        c: int = 2,
        B: int = 64,
        C: float = 2.0,
        lam: float = 4.0,
        gamma: float = 2.0,
        kappa: float = 64.0,
    ):
        if capacity < 1:
            raise ValueError("capacity must be positive")
        if c < 1:
            raise ValueError("shortness class must be positive")
        WordBudget(B)  # validates B >= 2
        self.capacity = capacity
        self.c = c
        self.B = B
        self.C = C
        self.lam = lam
        self.gamma = gamma
        self.kappa = kappa
        logn = math.log2(max(capacity, 2))
        self.K = max(2, math.ceil(C * logn))
        t = 1
        while capacity > self.K**t:
            t += 1
        self.t = t
        self.n_levels = [math.ceil(capacity / self.K**i) for i in range(t + 1)]
        self.chain_log = max(1, math.ceil(lam * logn))
        self.bits = [c * B * self.K ** (i + 1) for i in range(t)]
        self.ell = [10 * b * self.K for b in self.bits]
        # Chained similarity parameters: what a cluster-internal comparison
        # may accumulate along a weak-diameter path.
        self.bits_chain = [(1 + b) * self.chain_log for b in self.bits]
        self.ell_chain = [l - self.chain_log for l in self.ell]
        for i in range(t):
            if self.ell_chain[i] < 4 * self.bits_chain[i] + 5:
                raise ValueError("precision margins violated; increase B or C")


class ClusterOrder:
    """Total preorder over the members of one cluster.

    Groups of mutually equal members collapse to one slot; insertion
    binary-searches with the supplied three-way comparator, so each insert
    costs a logarithmic number of comparisons.  A comparator that had to
    fall back to exact arithmetic marks the order degraded.
    """

    __slots__ = ("groups", "where", "degraded", "_cmp")

    def __init__(self, cmp3: Callable[[int, int], Tuple[int, bool]]):
        self.groups: List[List[int]] = []
        self.where: Dict[int, List[int]] = {}
        self.degraded = False
        self._cmp = cmp3

    def _compare(self, x: int, y: int) -> int:
        r, clean = self._cmp(x, y)
        if not clean:
            self.degraded = True
        return r

    def insert(self, v: int) -> None:
        if v in self.where:
            return
        lo, hi = 0, len(self.groups)
        while lo < hi:
            mid = (lo + hi) // 2
            r = self._compare(v, self.groups[mid][0])
            if r < 0:
                hi = mid
            elif r > 0:
                lo = mid + 1
            else:
                self.groups[mid].append(v)
                self.where[v] = self.groups[mid]
                return
        group = [v]
        self.groups.insert(lo, group)
        self.where[v] = group

    def remove(self, v: int) -> None:
        group = self.where.pop(v, None)
        if group is None:
            return
        group.remove(v)
        if not group:
            for i, g in enumerate(self.groups):
                if g is group:
                    del self.groups[i]
                    break

    def relation(self, u: int, v: int) -> Optional[int]:
        gu = self.where.get(u)
        gv = self.where.get(v)
        if gu is None or gv is None:
            return None
        if gu is gv:
            return 0
        iu = iv = -1
        for i, g in enumerate(self.groups):
            if g is gu:
                iu = i
            elif g is gv:
                iv = i
        return -1 if iu < iv else 1


class _PotentialDsu:
    """Union-find whose elements carry rational potentials.

    union(u, v, d) records the constraint value(u) - value(v) = d;
    fraction(u, v) returns the implied difference when u and v are
    already connected.
    """

    __slots__ = ("parent", "offset", "size", "inconsistencies")

    def __init__(self, n: int):
        self.parent = list(range(n))
        self.offset: List[BigRational] = [ZERO] * n
        self.size = [1] * n
        self.inconsistencies = 0

    def find(self, x: int) -> int:
        path = []
        while self.parent[x] != x:
            path.append(x)
            x = self.parent[x]
        acc = ZERO
        for y in reversed(path):
            acc = acc + self.offset[y]
            self.parent[y] = x
            self.offset[y] = acc
        return x

    def _rel(self, x: int) -> BigRational:
        # Valid immediately after find(x).
        return self.offset[x] if self.parent[x] != x else ZERO

    def union(self, u: int, v: int, d: BigRational) -> None:
        ru = self.find(u)
        rel_u = self._rel(u)
        rv = self.find(v)
        rel_v = self._rel(v)
        if ru == rv:
            if rel_u - rel_v != d:
                self.inconsistencies += 1
            return
        if self.size[ru] < self.size[rv]:
            ru, rv = rv, ru
            rel_u, rel_v = rel_v, rel_u
            d = -d
        self.parent[rv] = ru
        self.offset[rv] = rel_u - rel_v - d
        self.size[ru] += self.size[rv]

    def fraction(self, u: int, v: int) -> Optional[BigRational]:
        if self.find(u) != self.find(v):
            return None
        return self._rel(u) - self._rel(v)


class _LevelState:
    __slots__ = (
        "cap",
        "members",
        "slot_of",
        "node_of_slot",
        "cover",
        "orders",
        "dsu",
        "edges",
        "seed",
    )

    def __init__(self, cap: int, seed):
        self.cap = max(1, cap)
        self.members: List[int] = []
        self.slot_of: Dict[int, int] = {}
        self.node_of_slot: Dict[int, int] = {}
        self.cover: Optional[SparseCover] = None
        self.orders: Dict[Tuple[int, int], ClusterOrder] = {}
        self.dsu = _PotentialDsu(self.cap)
        self.edges: set = set()
        self.seed = seed


class DistCmp:
    """Comparison structure over an incremental weighted out-tree.

    insert_leaf() grows the tree; compare(u, v, beta) orders
    dist(root, u) - dist(root, v) against a c-short rational beta,
    correct with high probability; exact_compare() evaluates the same
    predicate in exact arithmetic.

    Queries mutate internal state (similarity edges, cluster orders), so
    all access must be serialized by the owning thread.
    """

    def __init__(self, config: DistCmpConfig, seed: int = 0):
        self.config = config
        self._seed = seed
        ss = np.random.SeedSequence(seed)
        level_child, state_child, grow_child = ss.spawn(3)
        rng = np.random.default_rng(level_child)
        t = config.t
        self.slot_level = [t]
        if config.capacity > 1:
            draws = rng.geometric(1.0 - 1.0 / config.K, size=config.capacity - 1) - 1
            self.slot_level.extend(min(t, int(d)) for d in draws)
        self.tree = IncTree(max_level=t)
        state_seeds = state_child.spawn(max(t, 1))
        caps = [sum(1 for lv in self.slot_level if lv >= i) for i in range(t)]
        self._states = [_LevelState(caps[i], state_seeds[i]) for i in range(t)]
        for st in self._states:
            st.members.append(0)
            st.slot_of[0] = 0
            st.node_of_slot[0] = 0
        self._grow_seed = grow_child
        self._grow_count = 0
        self._log: List[Tuple[int, BigRational]] = []
        self._scale = [mpz(1) << (config.ell[i] + 2) for i in range(t)]
        self._scale = [s * config.capacity for s in self._scale]
        self._a: List[Dict[int, "mpz"]] = [{0: mpz(0)} for _ in range(t)]
        self._d_alpha_memo: Dict[Tuple[int, int], BigRational] = {}
        self._exact_memo: Dict[int, BigRational] = {0: ZERO}
        self.level_queries = [0] * (t + 1)
        self.easy_answers = [0] * (t + 1)
        self.difficult_answers = [0] * (t + 1)
        self.cover_fallbacks = [0] * (t + 1)
        self.retired: Dict[str, int] = {}

    # -- insertion ----------------------------------------------------

    def insert_leaf(self, parent: int, weight: BigRational) -> int:
        if not is_k_short(weight, self.config.c, WordBudget(self.config.B)):
            raise ValueError(f"weight {weight} is not {self.config.c}-short")
        if len(self.tree) >= self.config.capacity:
            self._grow()
        lvl = self.slot_level[len(self.tree)]
        node = self.tree.insert_leaf(parent, weight, lvl)
        self._log.append((parent, weight))
        for i in range(min(lvl, self.config.t - 1) + 1):
            st = self._states[i]
            slot = len(st.members)
            st.members.append(node)
            st.slot_of[node] = slot
            st.node_of_slot[slot] = node
            if st.cover is not None:
                for sid in st.cover.sets_of(slot):
                    order = st.orders.get(sid)
                    if order is not None:
                        order.insert(node)
        return node

    def _grow(self) -> None:
        # Reinitialize at doubled capacity and replay the insertion log.
        cfg = self.config
        bigger = DistCmpConfig(
            capacity=cfg.capacity * 2,
            c=cfg.c,
            B=cfg.B,
            C=cfg.C,
            lam=cfg.lam,
            gamma=cfg.gamma,
            kappa=cfg.kappa,
        )
        child = self._grow_seed.spawn(1)[0]
        fresh = DistCmp(bigger, seed=int(child.generate_state(1)[0]))
        for parent, weight in self._log:
            fresh.insert_leaf(parent, weight)
        retired = dict(self.retired)
        for name in ("level_queries", "easy_answers", "difficult_answers", "cover_fallbacks"):
            retired[name] = retired.get(name, 0) + sum(getattr(self, name))
        self._grow_count += 1
        grow_count = self._grow_count
        self.__dict__.update(fresh.__dict__)
        self.retired = retired
        self._grow_count = grow_count

    # -- lazy per-level values -----------------------------------------

    def _a_scaled(self, i: int, v: int):
        memo = self._a[i]
        got = memo.get(v)
        if got is not None:
            return got
        chain = []
        x = v
        while x not in memo:
            chain.append(x)
            x = self.tree.nearest_strict_marked_ancestor(x, i)
        scale = self._scale[i]
        for y in reversed(chain):
            z = self.tree.nearest_strict_marked_ancestor(y, i)
            d = self.tree.path_weight(z, y)
            memo[y] = memo[z] + (scale * d.num) // d.den
        return memo[v]

    def _d_alpha(self, lvl: int, v: int) -> BigRational:
        key = (lvl, v)
        got = self._d_alpha_memo.get(key)
        if got is None:
            if lvl >= self.config.t:
                anc = 0
            else:
                anc = self.tree.nearest_marked_ancestor(v, lvl)
            got = ZERO if anc == v else self.tree.path_weight(anc, v)
            self._d_alpha_memo[key] = got
        return got

    def _alpha(self, lvl: int, v: int) -> int:
        if lvl >= self.config.t:
            return 0
        return self.tree.nearest_marked_ancestor(v, lvl)

    def exact_distance(self, v: int) -> BigRational:
        memo = self._exact_memo
        chain = []
        x = v
        while x not in memo:
            chain.append(x)
            x = self.tree.parent[x]
        for y in reversed(chain):
            memo[y] = memo[self.tree.parent[y]] + self.tree.weight[y]
        return memo[v]

    # -- queries --------------------------------------------------------

    def compare(self, u: int, v: int, beta: BigRational) -> Ordering:
        if not is_k_short(beta, self.config.c, WordBudget(self.config.B)):
            raise ValueError(f"query value {beta} is not {self.config.c}-short")
        return self._level_compare(0, u, v, beta)

    def exact_compare(self, u: int, v: int, beta: BigRational) -> Ordering:
        diff = self.exact_distance(u) - self.exact_distance(v)
        return Ordering.of(diff._cmp(beta))

    def _level_compare(self, i: int, u: int, v: int, beta: BigRational) -> Ordering:
        self.level_queries[i] += 1
        if i == self.config.t or u == v:
            return Ordering.of(-beta.sign)

        a_diff = self._a_scaled(i, u) - self._a_scaled(i, v)
        lhs = a_diff * beta.den
        rhs = self._scale[i] * beta.num
        margin = (2 * self.config.capacity) * beta.den
        if lhs > rhs + margin:
            self.easy_answers[i] += 1
            return Ordering.GREATER
        if lhs < rhs - margin:
            self.easy_answers[i] += 1
            return Ordering.LESS

        self.difficult_answers[i] += 1
        st = self._level_state(i)
        su, sv = st.slot_of[u], st.slot_of[v]
        ekey = (min(su, sv), max(su, sv))
        if ekey not in st.edges:
            st.edges.add(ekey)
            st.dsu.union(su, sv, beta)
            updates = st.cover.insert_edge(su, sv)
            self._apply_updates(st, updates)
        sid = st.cover.common_set(su, sv)
        if sid is None:
            self.cover_fallbacks[i] += 1
            return self._exact_fallback(u, v, beta)
        order = self._order_of(i, st, sid)
        if order.degraded:
            self.cover_fallbacks[i] += 1
            return self._exact_fallback(u, v, beta)
        rel = order.relation(u, v)
        if rel is None:
            self.cover_fallbacks[i] += 1
            return self._exact_fallback(u, v, beta)
        return Ordering.of(rel)

    def _exact_fallback(self, u: int, v: int, beta: BigRational) -> Ordering:
        diff = self.exact_distance(u) - self.exact_distance(v)
        return Ordering.of(diff._cmp(beta))

    # -- level plumbing ---------------------------------------------------

    def _level_state(self, i: int) -> _LevelState:
        st = self._states[i]
        if st.cover is None:
            rng = np.random.default_rng(st.seed)
            st.cover = SparseCover(st.cap, self.config.lam, rng)
        return st

    def _apply_updates(self, st: _LevelState, updates) -> None:
        for sid, op, slot in updates:
            node = st.node_of_slot.get(slot)
            if node is None:
                continue
            order = st.orders.get(sid)
            if order is None:
                continue
            if op == "remove":
                order.remove(node)
            else:
                order.insert(node)

    def _order_of(self, i: int, st: _LevelState, sid: Tuple[int, int]) -> ClusterOrder:
        order = st.orders.get(sid)
        if order is None:
            order = ClusterOrder(self._make_comparator(i, st))
            st.orders[sid] = order
            for slot in sorted(st.cover.members(sid)):
                node = st.node_of_slot.get(slot)
                if node is not None:
                    order.insert(node)
        return order

    def _make_comparator(self, i: int, st: _LevelState) -> Callable[[int, int], Tuple[int, bool]]:
        scale = self._scale[i]
        # Exact integer window check: |a_x - a_y - p/q| <= 2^-(ell_chain - 1)
        # scaled by scale*q, where scale / 2^(ell_chain - 1) has the exact
        # integer value below.
        window = (mpz(1) << (self.config.ell[i] - self.config.ell_chain[i] + 3)) * self.config.capacity
        frac_bound = 1 << self.config.bits_chain[i]

        def cmp3(x: int, y: int) -> Tuple[int, bool]:
            if x == y:
                return 0, True
            frac = st.dsu.fraction(st.slot_of[x], st.slot_of[y])
            ok = frac is not None and -frac_bound < frac.num < frac_bound and frac.den < frac_bound
            if ok:
                a_diff = self._a_scaled(i, x) - self._a_scaled(i, y)
                lhs = a_diff * frac.den - scale * frac.num
                ok = -window * frac.den <= lhs <= window * frac.den
            if not ok:
                diff = self.exact_distance(x) - self.exact_distance(y)
                return diff.sign, False
            child_beta = frac + self._d_alpha(i + 1, y) - self._d_alpha(i + 1, x)
            r = self._level_compare(i + 1, self._alpha(i + 1, x), self._alpha(i + 1, y), child_beta)
            return r.value, True

        return cmp3

    # -- observability ----------------------------------------------------

    def level_record(self, i: int, v: int):
        """Per-level bookkeeping of v: (strict ancestor, exact distance from
        it, exact distance from the level-(i+1) ancestor, scaled
        approximation numerator).  Exposed for auditing."""
        if self.tree.level[v] < i:
            raise ValueError(f"node {v} is below level {i}")
        if v == 0:
            return None, ZERO, ZERO, mpz(0)
        z = self.tree.nearest_strict_marked_ancestor(v, i)
        return z, self.tree.path_weight(z, v), self._d_alpha(i + 1, v), self._a_scaled(i, v)

    def approx_denominator(self, i: int) -> int:
        return int(self._scale[i])

    def counters(self) -> Dict[str, object]:
        out: Dict[str, object] = {
            "level_queries": list(self.level_queries),
            "easy_answers": list(self.easy_answers),
            "difficult_answers": list(self.difficult_answers),
            "cover_fallbacks": list(self.cover_fallbacks),
            "dsu_inconsistencies": sum(st.dsu.inconsistencies for st in self._states),
            "cover_updates": sum(
                st.cover.updates_issued for st in self._states if st.cover is not None
            ),
        }
        for name, value in self.retired.items():
            out[f"retired_{name}"] = value
        return out


class PairwiseDeltaComparator:
    """Comparison strategy precomputing approximations of all ancestor-pair
    distance differences over one sampled vertex set.

    Sampled marks hit every long descending path with high probability, so
    both comparison sides reduce to a marked-ancestor difference plus a
    short tail.  The marked-pair differences get best rational
    approximations (lazily, cached); tails stay exact.  Pairs whose tail
    exceeds the hop parameter fall back to exact arithmetic.
    """

    def __init__(
        self,
        capacity: int,
        hop_param: int,
        budget: WordBudget,
        c: int = 2,
        gamma: float = 2.0,
        seed: int = 0,
    ):
        if hop_param < 1:
            raise ValueError("hop parameter must be positive")
        self.capacity = capacity
        self.h = hop_param
        self.bits = (2 * hop_param + 2) * budget.B + 1
        self.tree = IncTree(max_level=1)
        rng = np.random.default_rng(seed)
        want = min(capacity, math.ceil(gamma * (capacity / hop_param) * math.log2(max(capacity, 2))))
        picks = rng.permutation(max(capacity - 1, 0))[: max(want - 1, 0)]
        self._marked_slots = {int(p) + 1 for p in picks}  # root is always marked
        self._ra_cache: Dict[Tuple[int, int], object] = {}
        self._exact_memo: Dict[int, BigRational] = {0: ZERO}
        self.exact_fallbacks = 0
        self.pairs_computed = 0

    def add_leaf(self, parent: int, weight: BigRational) -> int:
        slot = len(self.tree)
        level = 1 if slot in self._marked_slots else 0
        return self.tree.insert_leaf(parent, weight, level)

    def _exact(self, v: int) -> BigRational:
        memo = self._exact_memo
        chain = []
        x = v
        while x not in memo:
            chain.append(x)
            x = self.tree.parent[x]
        for y in reversed(chain):
            memo[y] = memo[self.tree.parent[y]] + self.tree.weight[y]
        return memo[v]

    def _ra(self, a: int, b: int):
        got = self._ra_cache.get((a, b))
        if got is None:
            rev = self._ra_cache.get((b, a))
            if rev is not None:
                got = rev.negated()
            else:
                got = best_approx(self._exact(a) - self._exact(b), self.bits)
                self.pairs_computed += 1
            self._ra_cache[(a, b)] = got
        return got

    def compare(self, u: int, v: int, beta: BigRational) -> Ordering:
        """Order dist(root, u) - dist(root, v) against beta."""
        from .cfrac import compare_via_approx

        au = self.tree.nearest_marked_ancestor(u, 1)
        av = self.tree.nearest_marked_ancestor(v, 1)
        if (
            self.tree.depth[u] - self.tree.depth[au] > self.h
            or self.tree.depth[v] - self.tree.depth[av] > self.h
        ):
            self.exact_fallbacks += 1
            diff = self._exact(u) - self._exact(v)
            return Ordering.of(diff._cmp(beta))
        tail_u = self.tree.path_weight(au, u)
        tail_v = self.tree.path_weight(av, v)
        shifted = beta + tail_v - tail_u
        if shifted.den >= (1 << self.bits):
            self.exact_fallbacks += 1
            diff = self._exact(u) - self._exact(v)
            return Ordering.of(diff._cmp(beta))
        return compare_via_approx(self._ra(au, av), shifted)

    def counters(self) -> Dict[str, int]:
        return {
            "pairs_computed": self.pairs_computed,
            "exact_fallbacks": self.exact_fallbacks,
        }
