"""GF(2) linear algebra on Python-int bitsets."""

from __future__ import annotations


def row_reduce(rows: list[int]) -> list[int]:
    """Reduce to an independent basis with distinct lowest set bits.

    The result is sorted by pivot (lowest bit), which reduce_vector and
    in_span rely on.
    """
    basis: list[int] = []
    for row in rows:
        cur = row
        for b in basis:  # ascending pivot order
            if cur & (b & -b):
                cur ^= b
        if cur:
            basis.append(cur)
            basis.sort(key=lambda r: r & -r)
    return basis


def rank(rows: list[int]) -> int:
    return len(row_reduce(rows))


def reduce_vector(vec: int, basis: list[int]) -> int:
    """Residue of vec modulo the span of a row_reduce basis."""
    cur = vec
    for b in basis:
        if cur & (b & -b):
            cur ^= b
    return cur


def in_span(vec: int, basis: list[int]) -> bool:
    return reduce_vector(vec, basis) == 0


def nullspace(rows: list[int], width: int) -> list[int]:
    """Basis of {x : every row has even overlap with x}, as width-bit ints."""
    pivots: list[tuple[int, int]] = []  # (pivot column, row), sorted by column
    for row in rows:
        cur = row
        for col, prow in pivots:
            if (cur >> col) & 1:
                cur ^= prow
        if cur:
            pivots.append(((cur & -cur).bit_length() - 1, cur))
            pivots.sort()
    pivot_cols = {c for c, _ in pivots}
    basis = []
    for free in range(width):
        if free in pivot_cols:
            continue
        vec = 1 << free
        # fix pivot coordinates from the highest pivot column down
        for col, prow in reversed(pivots):
            if (prow & vec).bit_count() & 1:
                vec ^= 1 << col
        basis.append(vec)
    return basis


def span_min_weight(vec: int, basis: list[int]) -> int:
    """min |vec + s| over s in the span of basis, by a Gray-code walk."""
    best = vec.bit_count()
    cur = vec
    for i in range(1, 1 << len(basis)):
        cur ^= basis[(i & -i).bit_length() - 1]
        w = cur.bit_count()
        if w < best:
            best = w
            if best == 0:
                break
    return best


__all__ = ["row_reduce", "rank", "reduce_vector", "in_span", "nullspace", "span_min_weight"]
