"""Vertex partitions and their enumeration via restricted growth strings."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .util import InputError, ResourceError


@dataclass(frozen=True)
class Partition:
    """Ordered disjoint nonempty vertex blocks, canonically sorted.

    Canonical form: each block ascending, blocks ordered by smallest
    element.  Block indices 0..m are taken in this canonical order.
    """

    blocks: tuple[tuple[int, ...], ...]

    @staticmethod
    def from_blocks(blocks) -> "Partition":
        canon = []
        seen: set[int] = set()
        for block in blocks:
            b = tuple(sorted(block))
            if not b:
                raise InputError("partition blocks must be nonempty")
            if len(set(b)) != len(b) or seen & set(b):
                raise InputError("partition blocks must be disjoint")
            seen.update(b)
            canon.append(b)
        if not canon:
            raise InputError("partition needs at least one block")
        return Partition(tuple(sorted(canon, key=lambda b: b[0])))

    @property
    def num_blocks(self) -> int:
        return len(self.blocks)

    @property
    def support(self) -> frozenset[int]:
        return frozenset(v for b in self.blocks for v in b)

    def covers(self, n: int) -> bool:
        return self.support == frozenset(range(n))

    def block_sizes(self) -> tuple[int, ...]:
        return tuple(len(b) for b in self.blocks)

    def assignment(self, n: int) -> list[int]:
        """Vertex -> block index table; requires the partition to cover 0..n-1."""
        if not self.covers(n):
            raise InputError(f"partition does not cover 0..{n - 1}")
        assign = [0] * n
        for i, block in enumerate(self.blocks):
            for v in block:
                assign[v] = i
        return assign

    def block_of(self, v: int) -> int:
        for i, block in enumerate(self.blocks):
            if v in block:
                return i
        raise InputError(f"vertex {v} not in partition")

    def labels(self) -> list[list[int]]:
        """1-based blocks for reports."""
        return [[v + 1 for v in b] for b in self.blocks]

    def __str__(self):
        return "|".join(",".join(str(v + 1) for v in b) for b in self.blocks)


@lru_cache(maxsize=None)
def stirling2(n: int, m: int) -> int:
    """Number of partitions of an n-set into m nonempty blocks."""
    if n == m == 0:
        return 1
    if n == 0 or m == 0 or m > n:
        return 0
    return m * stirling2(n - 1, m) + stirling2(n - 1, m - 1)


def check_partition_cap(n: int, m: int, cap: int) -> None:
    count = stirling2(n, m)
    if count > cap:
        raise ResourceError(
            f"{count} partitions of {n} vertices into {m} blocks exceeds cap {cap}"
        )


def iter_partitions(n: int, m: int):
    """All unordered partitions of range(n) into m nonempty blocks.

    Enumerated in lexicographic restricted-growth-string order, which is
    also the canonical tie-break order used by the expansion minima.
    """
    if m < 1 or m > n:
        return
    a = [0] * n

    def rec(i: int, mx: int):
        if i == n:
            blocks: list[list[int]] = [[] for _ in range(m)]
            for v, lab in enumerate(a):
                blocks[lab].append(v)
            yield Partition(tuple(tuple(b) for b in blocks))
            return
        top = min(mx + 1, m - 1)
        for lab in range(top + 1):
            new_mx = max(mx, lab)
            # enough positions left to open the remaining blocks
            if new_mx + 1 + (n - i - 1) >= m:
                a[i] = lab
                yield from rec(i + 1, new_mx)

    yield from rec(0, -1)
