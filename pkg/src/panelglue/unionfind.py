"""Array-backed union-find over the integers ``0 .. n-1``."""

from __future__ import annotations

from typing import Iterable

import numpy as np


class UnionFind:
    """Disjoint sets with union by size and path halving.

    Elements are the integers ``0 .. n-1``.  :meth:`labels` numbers the sets
    in order of their smallest element, so the labelling only depends on the
    partition, never on the order in which unions were performed.
    """

    def __init__(self, n: int):
        self._parent = list(range(n))
        self._size = [1] * n
        self.n_sets = n

    def __len__(self) -> int:
        return len(self._parent)

    def __repr__(self) -> str:
        return f"UnionFind(n={len(self)}, sets={self.n_sets})"

    def find(self, x: int) -> int:
        parent = self._parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, a: int, b: int) -> bool:
        """Merge the sets of ``a`` and ``b``; return False if already joined."""
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if self._size[ra] < self._size[rb]:
            ra, rb = rb, ra
        self._parent[rb] = ra
        self._size[ra] += self._size[rb]
        self.n_sets -= 1
        return True

    def union_pairs(self, a: Iterable[int], b: Iterable[int]) -> None:
        for x, y in zip(a, b):
            self.union(int(x), int(y))

    def connected(self, a: int, b: int) -> bool:
        return self.find(a) == self.find(b)

    def size(self, x: int) -> int:
        return self._size[self.find(x)]

    def labels(self) -> np.ndarray:
        """Canonical set label of every element (labels are 0, 1, 2, ...)."""
        n = len(self._parent)
        out = np.empty(n, dtype=np.int64)
        seen: dict[int, int] = {}
        for x in range(n):
            r = self.find(x)
            lab = seen.get(r)
            if lab is None:
                lab = seen[r] = len(seen)
            out[x] = lab
        return out
