"""
Disjoint sets with union by rank and path compression.
"""

from collections import Counter
from typing import Dict, Generic, Hashable, Iterable, List, TypeVar

T = TypeVar("T", bound=Hashable)


class UnionFind(Generic[T]):
    """
    Disjoint sets over hashable items, created lazily on first sight.

    >>> uf = UnionFind()
    >>> uf.union(1, 2)
    >>> uf.find(2)
    1
    """

    def __init__(self, items: Iterable[T] = ()) -> None:
        self.parent: Dict[T, T] = {}
        self.rank: Dict[T, int] = Counter()
        for item in items:
            self.find(item)

    def find(self, x: T) -> T:
        root = self.parent.setdefault(x, x)
        while root != self.parent[root]:
            root = self.parent[root]
        while x != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x: T, y: T) -> None:
        px = self.find(x)
        py = self.find(y)
        if px == py:
            return
        if self.rank[px] == self.rank[py]:
            self.parent[py] = px
            self.rank[px] += 1
        elif self.rank[px] > self.rank[py]:
            self.parent[py] = px
        else:
            self.parent[px] = py

    def groups(self) -> List[List[T]]:
        """Sets in order of first insertion, members in insertion order."""
        by_root: Dict[T, List[T]] = {}
        for item in self.parent:
            by_root.setdefault(self.find(item), []).append(item)
        return list(by_root.values())
