"""Union-find over a fixed ground set of integers."""

from __future__ import annotations

from typing import Iterable


class UnionFind:
    """Disjoint-set forest with path compression and union by size."""

    def __init__(self, elements: Iterable[int]):
        self._parent = {x: x for x in elements}
        self._size = {x: 1 for x in self._parent}

    def find(self, x: int) -> int:
        root = x
        while self._parent[root] != root:
            root = self._parent[root]
        while self._parent[x] != root:
            self._parent[x], x = root, self._parent[x]
        return root

    def union(self, x: int, y: int) -> bool:
        """Merge the classes of x and y; return True if they were distinct."""
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return False
        if self._size[rx] < self._size[ry]:
            rx, ry = ry, rx
        self._parent[ry] = rx
        self._size[rx] += self._size[ry]
        return True

    def groups(self) -> list[list[int]]:
        """Classes as lists, each sorted, ordered by minimum element."""
        buckets: dict[int, list[int]] = {}
        for x in self._parent:
            buckets.setdefault(self.find(x), []).append(x)
        out = [sorted(members) for members in buckets.values()]
        out.sort(key=lambda b: b[0])
        return out

    def n_groups(self) -> int:
        return sum(1 for x in self._parent if self._parent[x] == x)
