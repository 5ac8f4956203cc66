"""Incremental rooted out-tree with exact descending-path-weight queries.

Nodes are appended as leaves and never move.  Each node carries an
integer level assigned at insertion; for every level i the tree tracks the
nearest ancestor of level >= i (the node itself when its own level
qualifies), answerable in constant time.  Path weights are summed with
balanced pairing so a k-hop query costs near-linear time in the bits
involved.

Single-writer: concurrent readers are fine between mutations.
"""

from __future__ import annotations

from typing import List

from .rational import BigRational, ZERO, sum_balanced

__all__ = ["IncTree", "NotAnAncestorError"]


class NotAnAncestorError(ValueError):
    pass


class IncTree:
    """Rooted out-tree under leaf insertions; node ids are dense ints.

    The root is node 0 and carries the maximum level.
    """

    __slots__ = ("max_level", "parent", "weight", "depth", "level", "_anc")

    def __init__(self, max_level: int):
        if max_level < 0:
            raise ValueError("max_level must be non-negative")
        self.max_level = max_level
        self.parent: List[int] = [-1]
        self.weight: List[BigRational] = [ZERO]
        self.depth: List[int] = [0]
        self.level: List[int] = [max_level]
        # _anc[i][v]: nearest ancestor of v (inclusive) with level >= i.
        self._anc: List[List[int]] = [[0] for _ in range(max_level + 1)]

    def __len__(self):
        return len(self.parent)

    @property
    def root(self) -> int:
        return 0

    def insert_leaf(self, parent: int, weight: BigRational, level: int = 0) -> int:
        if not 0 <= parent < len(self.parent):
            raise KeyError(f"unknown parent node {parent}")
        if not 0 <= level <= self.max_level:
            raise ValueError(f"level {level} out of range 0..{self.max_level}")
        v = len(self.parent)
        self.parent.append(parent)
        self.weight.append(weight)
        self.depth.append(self.depth[parent] + 1)
        self.level.append(level)
        for i in range(self.max_level + 1):
            self._anc[i].append(v if level >= i else self._anc[i][parent])
        return v

    def nearest_marked_ancestor(self, v: int, level: int) -> int:
        """Nearest ancestor of v (v itself included) with level >= `level`."""
        if not 0 <= level <= self.max_level:
            raise ValueError(f"level {level} out of range 0..{self.max_level}")
        return self._anc[level][v]

    def nearest_strict_marked_ancestor(self, v: int, level: int) -> int:
        """Nearest proper ancestor of v with level >= `level`."""
        if v == 0:
            raise NotAnAncestorError("the root has no proper ancestor")
        return self._anc[level][self.parent[v]]

    def is_ancestor(self, ancestor: int, descendant: int) -> bool:
        v = descendant
        steps = self.depth[v] - self.depth[ancestor]
        if steps < 0:
            return False
        for _ in range(steps):
            v = self.parent[v]
        return v == ancestor

    def path_hops(self, ancestor: int, descendant: int) -> int:
        if not self.is_ancestor(ancestor, descendant):
            raise NotAnAncestorError(f"{ancestor} is not an ancestor of {descendant}")
        return self.depth[descendant] - self.depth[ancestor]

    def path_weight(self, ancestor: int, descendant: int) -> BigRational:
        """Exact weight of the descending path ancestor -> descendant."""
        steps = self.depth[descendant] - self.depth[ancestor]
        if steps < 0:
            raise NotAnAncestorError(f"{ancestor} is not an ancestor of {descendant}")
        weights = []
        v = descendant
        for _ in range(steps):
            weights.append(self.weight[v])
            v = self.parent[v]
        if v != ancestor:
            raise NotAnAncestorError(f"{ancestor} is not an ancestor of {descendant}")
        weights.reverse()
        return sum_balanced(weights)
