from __future__ import annotations

from typing import Iterable, Sequence


class UnionFind:
    """Disjoint sets over the points 0..n-1."""

    def __init__(self, n: int):
        self.parent = list(range(n))
        self.rank = [0] * n
        self.size = [1] * n

    def find(self, x: int) -> int:
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, x: int, y: int) -> None:
        x, y = self.find(x), self.find(y)
        if x == y:
            return
        if self.rank[x] < self.rank[y]:
            x, y = y, x
        elif self.rank[x] == self.rank[y]:
            self.rank[x] += 1
        self.parent[y] = x
        self.size[x] += self.size[y]

    def union_permutation(self, perm: Sequence[int]) -> None:
        for x, y in enumerate(perm):
            self.union(x, int(y))

    def labels(self) -> list[int]:
        return [self.find(x) for x in range(len(self.parent))]

    def __len__(self) -> int:
        return sum(1 for x, p in enumerate(self.parent) if x == p)


def find_orbits(perms: Iterable[Sequence[int]], n: int) -> list[list[int]]:
    """Orbits of the group generated by `perms` on 0..n-1, each sorted, ordered by least point."""
    uf = UnionFind(n)
    for perm in perms:
        uf.union_permutation(perm)
    orbits: dict[int, list[int]] = {}
    for x, root in enumerate(uf.labels()):
        orbits.setdefault(root, []).append(x)
    return sorted(orbits.values(), key=lambda o: o[0])
