"""Exact expansion constants of simplicial complexes.

Every quantity here is an exhaustive minimum over a finite search space:
vertex partitions, GF(2) cochains supported on rainbow faces, whole cochain
spaces, or cosets of the coboundary space.  Ratios are carried as exact
integer pairs and compared as rationals; floats appear only in reports.
Enumeration caps guard each search space and raise ResourceError instead of
silently truncating.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import gf2
from .cochains import coboundary_basis_z2, cocycle_basis_z2, face_masks
from .complexes import Face, SimplicialComplex
from .partitions import Partition, check_partition_cap, iter_partitions
from .util import INF, InputError, Infinite, ResourceError, json_value

PARTITION_CAP = 10_000_000
SUBSET_CAP = 1 << 20
COCHAIN_CAP = 1 << 25
COSET_CAP = 1 << 24


@dataclass
class ExpansionValue:
    """One expansion constant with its exact ratio and witnesses.

    For the partition/cochain quantities (h, h', h~) the value carries the
    |V| scale factor: value = |V| * num / den.  For the coboundary expansion
    quantities (phi, phi') the value is num / den directly.  num and den are
    always the raw integer counts; den == 0 encodes the infinite sentinel.
    """

    quantity: str
    num: int
    den: int
    value: Fraction | Infinite
    witness_partition: Partition | None = None
    witness_support: tuple[Face, ...] | None = None

    @property
    def is_infinite(self) -> bool:
        return self.value is INF

    def as_float(self) -> float:
        if self.is_infinite:
            raise InputError(f"{self.quantity} is infinite")
        return float(self.value)

    def to_json(self) -> dict:
        return {
            "quantity": self.quantity,
            "value": json_value(float(self.value) if not self.is_infinite else INF),
            "num": self.num,
            "den": self.den,
            "witness_partition": self.witness_partition.labels()
            if self.witness_partition
            else None,
            "witness_support": [[v + 1 for v in f] for f in self.witness_support]
            if self.witness_support is not None
            else None,
        }


def _infinite(quantity: str) -> ExpansionValue:
    return ExpansionValue(quantity, 0, 0, INF)


# -- rainbow faces -----------------------------------------------------------


def rainbow_faces(X: SimplicialComplex, partition: Partition, dim: int | None = None):
    """Faces with exactly one vertex in each partition block.

    With an (m+1)-block partition this selects m-dimensional faces; pass the
    completion of X to get the boundary variant.
    """
    m = partition.num_blocks - 1
    if dim is None:
        dim = m
    if dim != m:
        raise InputError(f"{partition.num_blocks} blocks select faces of dimension {m}")
    block_of = {}
    for i, block in enumerate(partition.blocks):
        for v in block:
            block_of[v] = i
    out = []
    for face in X.faces(dim):
        hit = set()
        ok = True
        for v in face:
            b = block_of.get(v)
            if b is None or b in hit:
                ok = False
                break
            hit.add(b)
        if ok:
            out.append(face)
    return tuple(out)


def _faces_array(faces) -> np.ndarray:
    if not faces:
        return np.zeros((0, 1), dtype=np.int64)
    return np.array(faces, dtype=np.int64)


def _rainbow_count(faces_arr: np.ndarray, assign: np.ndarray) -> int:
    """Number of rows whose vertices land in pairwise distinct blocks."""
    if faces_arr.shape[0] == 0:
        return 0
    B = assign[faces_arr]
    if B.shape[1] == 1:
        return int(B.shape[0])
    S = np.sort(B, axis=1)
    return int(np.all(S[:, 1:] != S[:, :-1], axis=1).sum())


def _assignment_array(partition: Partition, n: int) -> np.ndarray:
    assign = np.empty(n, dtype=np.int64)
    for i, block in enumerate(partition.blocks):
        for v in block:
            assign[v] = i
    return assign


# -- h: the partition Cheeger constant ---------------------------------------


def cheeger_constant(
    X: SimplicialComplex, partition_cap: int = PARTITION_CAP
) -> ExpansionValue:
    """Exact minimum of |V| |F(A_0..A_k)| / |F^d(A_0..A_k)| over unordered
    partitions of the vertices into k+1 nonempty blocks.

    F counts rainbow top faces of X, F^d the rainbow top faces of the
    completion.  Partitions with no rainbow face in the completion are
    skipped (their ratio is the infinite sentinel); ties are broken by the
    restricted-growth enumeration order.
    """
    k = X.dim
    n = X.n
    if k < 1:
        raise InputError("cheeger constant needs a complex of dimension >= 1")
    check_partition_cap(n, k + 1, partition_cap)
    K = X.completion()
    fx = _faces_array(X.faces(k))
    fk = _faces_array(K.faces(k))
    best: Fraction | None = None
    best_partition = None
    best_counts = (0, 0)
    for P in iter_partitions(n, k + 1):
        assign = _assignment_array(P, n)
        ck = _rainbow_count(fk, assign)
        if ck == 0:
            continue
        cx = _rainbow_count(fx, assign)
        val = Fraction(n * cx, ck)
        if best is None or val < best:
            best, best_partition, best_counts = val, P, (cx, ck)
            if best == 0:
                break
    if best is None:
        return _infinite("h")
    return ExpansionValue(
        "h",
        best_counts[0],
        best_counts[1],
        best,
        witness_partition=best_partition,
        witness_support=rainbow_faces(X, best_partition),
    )


def congestion(X: SimplicialComplex, partition: Partition, _completion=None):
    """C for a fixed partition: the largest facet-degree sum over rainbow
    faces of the completion, plus the full degree table d(sigma).

    Returns (0, {}) when the partition has no rainbow face in the
    completion.
    """
    k = X.dim
    if partition.num_blocks != k + 1 or not partition.covers(X.n):
        raise InputError(f"congestion needs a {k + 1}-block partition of the vertices")
    K = _completion if _completion is not None else X.completion()
    boundary_rainbow = rainbow_faces(K, partition)
    if not boundary_rainbow:
        return 0, {}
    d: Counter[Face] = Counter()
    for tau in boundary_rainbow:
        for v in tau:
            d[tuple(sorted(set(tau) - {v}))] += 1
    c = max(sum(d[tuple(sorted(set(tau) - {v}))] for v in tau) for tau in boundary_rainbow)
    return c, dict(d)


def min_congestion_over_minimizers(
    X: SimplicialComplex, partition_cap: int = PARTITION_CAP
):
    """Smallest congestion C over all partitions achieving the Cheeger
    minimum (the --c-scan-all behaviour).  Returns (C, partition)."""
    h = cheeger_constant(X, partition_cap)
    if h.is_infinite:
        return 0, None
    k = X.dim
    n = X.n
    K = X.completion()
    fx = _faces_array(X.faces(k))
    fk = _faces_array(K.faces(k))
    best_c = None
    best_partition = None
    for P in iter_partitions(n, k + 1):
        assign = _assignment_array(P, n)
        ck = _rainbow_count(fk, assign)
        if ck == 0:
            continue
        cx = _rainbow_count(fx, assign)
        if Fraction(n * cx, ck) != h.value:
            continue
        c, _ = congestion(X, P, _completion=K)
        if best_c is None or c < best_c:
            best_c, best_partition = c, P
            if best_c == k + 1:  # smallest possible: each facet counted once
                break
    return best_c, best_partition


# -- GF(2) sweep machinery ----------------------------------------------------


def _sweep_min_ratio(width: int, masks, in_x, scale: int, batch: int = 1 << 18):
    """Minimize scale*num/den over nonzero bit patterns of the given width.

    den(s) counts masks with odd overlap against s, num(s) the same over the
    flagged masks.  Patterns with den = 0 are skipped.  Returns
    (Fraction, bits, num, den) for the first minimizer in increasing bit
    order, or None when every pattern has den = 0.
    """
    if width == 0:
        return None
    pairs = [(np.uint64(m), bool(fx)) for m, fx in zip(masks, in_x) if m]
    best = None
    best_at = None
    total = 1 << width
    for start in range(0, total, batch):
        stop = min(start + batch, total)
        S = np.arange(start, stop, dtype=np.uint64)
        num = np.zeros(stop - start, dtype=np.int32)
        den = np.zeros(stop - start, dtype=np.int32)
        for m, fx in pairs:
            par = (np.bitwise_count(S & m) & np.uint64(1)).astype(np.int32)
            den += par
            if fx:
                num += par
        if start == 0:
            den[0] = 0  # the zero cochain maps to the infinite sentinel
        valid = np.flatnonzero(den)
        if valid.size == 0:
            continue
        ratios = num[valid].astype(float) / den[valid]
        j = int(valid[int(np.argmin(ratios))])
        cand = Fraction(scale * int(num[j]), int(den[j]))
        if best is None or cand < best:
            best = cand
            best_at = (start + j, int(num[j]), int(den[j]))
            if best == 0:
                break
    if best is None:
        return None
    bits, n_, d_ = best_at
    return best, bits, n_, d_


def _bits_to_faces(bits: int, faces) -> tuple[Face, ...]:
    return tuple(f for i, f in enumerate(faces) if (bits >> i) & 1)


def _restricted_masks(K: SimplicialComplex, X: SimplicialComplex, support):
    """Per top-face-of-K bitmask over the support positions, plus X flags."""
    k = X.dim
    pos = {face: i for i, face in enumerate(support)}
    in_x = set(X.faces(k))
    masks = []
    flags = []
    for tau in K.faces(k):
        m = 0
        for v in tau:
            s = tuple(sorted(set(tau) - {v}))
            if s in pos:
                m |= 1 << pos[s]
        masks.append(m)
        flags.append(tau in in_x)
    return masks, flags


# -- h': expansion over partition-supported cochains ---------------------------


def restricted_expansion(
    X: SimplicialComplex, subset_cap: int = SUBSET_CAP
) -> ExpansionValue:
    """Exact minimum of |V| |delta_X f| / |delta_K f| over partitions of the
    vertices into k nonempty blocks and GF(2) cochains supported on the
    rainbow (k-1)-faces of the partition.

    Runs in two phases: a GF(2) rank scan that finds a zero ratio whenever
    one exists (no subset enumeration, so no cap applies), then exhaustive
    subset sweeps per partition, capped at subset_cap patterns each.
    """
    k = X.dim
    n = X.n
    if k < 1:
        raise InputError("restricted expansion needs a complex of dimension >= 1")
    K = X.completion()
    km1_faces = X.faces(k - 1)
    partitions = list(iter_partitions(n, k))

    def support_of(P: Partition):
        return rainbow_faces(X, P, k - 1) if k > 1 else km1_faces

    # phase 1: a zero ratio exists iff some partition-supported cochain is a
    # cocycle of X but not of the completion
    for P in partitions:
        support = support_of(P)
        if not support:
            continue
        masks, flags = _restricted_masks(K, X, support)
        rows_x = [m for m, fx in zip(masks, flags) if fx]
        for v in gf2.nullspace(rows_x, len(support)):
            den = sum((v & m).bit_count() & 1 for m in masks)
            if den:
                return ExpansionValue(
                    "h_prime",
                    0,
                    den,
                    Fraction(0),
                    witness_partition=P,
                    witness_support=_bits_to_faces(v, support),
                )

    # phase 2: exhaustive sweeps
    best = None
    best_val: Fraction | None = None
    for P in partitions:
        support = support_of(P)
        if not support:
            continue
        if (1 << len(support)) > subset_cap:
            raise ResourceError(
                f"partition {P} spans {len(support)} supported faces; "
                f"2**{len(support)} patterns exceed cap {subset_cap}"
            )
        masks, flags = _restricted_masks(K, X, support)
        hit = _sweep_min_ratio(len(support), masks, flags, n)
        if hit is None:
            continue
        val, bits, num, den = hit
        if best_val is None or val < best_val:
            best_val = val
            best = ExpansionValue(
                "h_prime",
                num,
                den,
                val,
                witness_partition=P,
                witness_support=_bits_to_faces(bits, support),
            )
    return best if best is not None else _infinite("h_prime")


# -- h~: expansion over all cochains -------------------------------------------


def cochain_expansion(
    X: SimplicialComplex, cochain_cap: int = COCHAIN_CAP
) -> ExpansionValue:
    """Exact minimum of |V| |delta_X f| / |delta_K f| over every nonzero
    GF(2) cochain in dimension k-1."""
    k = X.dim
    n = X.n
    if k < 1:
        raise InputError("cochain expansion needs a complex of dimension >= 1")
    width = X.num_faces(k - 1)
    if (1 << width) > cochain_cap:
        raise ResourceError(f"2**{width} cochains exceed cap {cochain_cap}")
    K = X.completion()
    masks = face_masks(K, k - 1)
    in_x = set(X.faces(k))
    flags = [tau in in_x for tau in K.faces(k)]
    hit = _sweep_min_ratio(width, masks, flags, n)
    if hit is None:
        return _infinite("h_tilde")
    val, bits, num, den = hit
    return ExpansionValue(
        "h_tilde",
        num,
        den,
        val,
        witness_support=_bits_to_faces(bits, X.faces(k - 1)),
    )


# -- phi: coboundary expansion w.r.t. coset weight ------------------------------


def _extend_to_complement(basis: list[int], width: int) -> list[int]:
    """Unit vectors completing a reduced basis to the full space."""
    current = list(basis)
    comp = []
    for i in range(width):
        v = 1 << i
        res = gf2.reduce_vector(v, current)
        if res:
            comp.append(v)
            current.append(res)
            current.sort(key=lambda r: r & -r)
    return comp


def coboundary_expansion(
    X: SimplicialComplex,
    cochain_cap: int = COCHAIN_CAP,
    coset_cap: int = COSET_CAP,
) -> ExpansionValue:
    """Exact minimum of |delta_X f| / |[f]| over GF(2) cochains, where |[f]|
    is the least Hamming weight in the coset f + B^{k-1}.

    Both the numerator and the coset weight are constant on cosets of the
    coboundary space, so the minimum is taken coset by coset.  Cochains with
    |[f]| = 0 (the coboundaries themselves) map to the infinite sentinel.
    A nontrivial GF(2) cocycle class gives the exact value 0 directly.
    """
    k = X.dim
    if k < 1:
        raise InputError("coboundary expansion needs a complex of dimension >= 1")
    width = X.num_faces(k - 1)
    basis_b = coboundary_basis_z2(X, k - 1)
    if (1 << len(basis_b)) > coset_cap:
        raise ResourceError(
            f"coboundary space dimension {len(basis_b)} exceeds coset cap {coset_cap}"
        )
    # nontrivial cohomology: a cocycle outside B^{k-1} has ratio exactly 0
    for z in cocycle_basis_z2(X, k - 1):
        if not gf2.in_span(z, basis_b):
            den = gf2.span_min_weight(z, basis_b)
            return ExpansionValue(
                "phi",
                0,
                den,
                Fraction(0),
                witness_support=_bits_to_faces(z, X.faces(k - 1)),
            )
    if (1 << width) > cochain_cap:
        raise ResourceError(f"2**{width} cochains exceed cap {cochain_cap}")
    rows_x = face_masks(X, k - 1)
    comp = _extend_to_complement(basis_b, width)
    images = []
    for v in comp:
        img = 0
        for r, m in enumerate(rows_x):
            if (v & m).bit_count() & 1:
                img |= 1 << r
        images.append(img)
    best_val: Fraction | None = None
    best = None
    cur_f = 0
    cur_img = 0
    for i in range(1, 1 << len(comp)):
        j = (i & -i).bit_length() - 1
        cur_f ^= comp[j]
        cur_img ^= images[j]
        num = cur_img.bit_count()
        den = gf2.span_min_weight(cur_f, basis_b)
        val = Fraction(num, den)
        if best_val is None or val < best_val:
            best_val = val
            best = (num, den, cur_f)
    if best is None:
        return _infinite("phi")
    num, den, f_bits = best
    return ExpansionValue(
        "phi",
        num,
        den,
        best_val,
        witness_support=_bits_to_faces(f_bits, X.faces(k - 1)),
    )


def restricted_coboundary_expansion(
    X: SimplicialComplex,
    subset_cap: int = SUBSET_CAP,
    coset_cap: int = COSET_CAP,
) -> ExpansionValue:
    """Exact minimum of |delta_X f| / |[f]| over partition-supported
    cochains (the support restriction of the h' minimum applied to the
    coboundary expansion)."""
    k = X.dim
    n = X.n
    if k < 1:
        raise InputError("restricted coboundary expansion needs dimension >= 1")
    basis_b = coboundary_basis_z2(X, k - 1)
    if (1 << len(basis_b)) > coset_cap:
        raise ResourceError(
            f"coboundary space dimension {len(basis_b)} exceeds coset cap {coset_cap}"
        )
    km1_faces = X.faces(k - 1)
    rows_x = face_masks(X, k - 1)
    partitions = list(iter_partitions(n, k))

    def support_of(P: Partition):
        return rainbow_faces(X, P, k - 1) if k > 1 else km1_faces

    def to_global(bits: int, positions) -> int:
        out = 0
        for i, g in enumerate(positions):
            if (bits >> i) & 1:
                out |= 1 << g
        return out

    index = {f: i for i, f in enumerate(km1_faces)}

    # zero phase: a supported cocycle outside the coboundary space
    for P in partitions:
        support = support_of(P)
        if not support:
            continue
        positions = [index[f] for f in support]
        restricted_rows = []
        for m in rows_x:
            rm = 0
            for i, g in enumerate(positions):
                if (m >> g) & 1:
                    rm |= 1 << i
            restricted_rows.append(rm)
        for v in gf2.nullspace(restricted_rows, len(support)):
            g = to_global(v, positions)
            if not gf2.in_span(g, basis_b):
                return ExpansionValue(
                    "phi_prime",
                    0,
                    gf2.span_min_weight(g, basis_b),
                    Fraction(0),
                    witness_partition=P,
                    witness_support=_bits_to_faces(v, support),
                )

    best_val: Fraction | None = None
    best = None
    for P in partitions:
        support = support_of(P)
        if not support:
            continue
        if (1 << len(support)) > subset_cap:
            raise ResourceError(
                f"partition {P} spans {len(support)} supported faces; "
                f"2**{len(support)} patterns exceed cap {subset_cap}"
            )
        positions = [index[f] for f in support]
        for s in range(1, 1 << len(support)):
            g = to_global(s, positions)
            den = gf2.span_min_weight(g, basis_b)
            if den == 0:
                continue
            num = sum((g & m).bit_count() & 1 for m in rows_x)
            val = Fraction(num, den)
            if best_val is None or val < best_val:
                best_val = val
                best = (num, den, s, P, support)
    if best is None:
        return _infinite("phi_prime")
    num, den, s, P, support = best
    return ExpansionValue(
        "phi_prime",
        num,
        den,
        best_val,
        witness_partition=P,
        witness_support=_bits_to_faces(s, support),
    )


# -- graphs --------------------------------------------------------------------


def graph_expansion(G: SimplicialComplex, max_n: int = 24):
    """Exact (h, phi) for a graph by subset enumeration.

    h minimizes |V| |E(A, V-A)| / (|A| |V-A|) over bipartitions, phi
    minimizes |E(A, V-A)| / |A| over subsets of at most half the vertices.
    The sandwich phi <= h <= 2 phi is asserted before returning.
    """
    if G.dim > 1:
        raise InputError("graph expansion needs a 1-dimensional complex")
    n = G.n
    if n > max_n:
        raise ResourceError(f"{n} vertices exceed the graph enumeration cap {max_n}")
    edges = G.faces(1)
    half = np.arange(0, 1 << max(n - 1, 0), dtype=np.uint64)
    subsets_h = (half << np.uint64(1)) | np.uint64(1)  # subsets containing vertex 0
    cut_h = np.zeros(subsets_h.shape, dtype=np.int64)
    for u, v in edges:
        par = ((subsets_h >> np.uint64(u)) ^ (subsets_h >> np.uint64(v))) & np.uint64(1)
        cut_h += par.astype(np.int64)
    sizes_h = np.bitwise_count(subsets_h).astype(np.int64)
    valid = sizes_h < n
    h_val: Fraction | None = None
    h_best = None
    if valid.any():
        idx = np.flatnonzero(valid)
        ratios = n * cut_h[idx].astype(float) / (sizes_h[idx] * (n - sizes_h[idx]))
        j = int(idx[int(np.argmin(ratios))])
        a = int(subsets_h[j])
        size = int(sizes_h[j])
        h_val = Fraction(n * int(cut_h[j]), size * (n - size))
        h_best = ExpansionValue(
            "h",
            int(cut_h[j]),
            size * (n - size),
            h_val,
            witness_partition=Partition.from_blocks(
                [
                    [v for v in range(n) if (a >> v) & 1],
                    [v for v in range(n) if not (a >> v) & 1],
                ]
            ),
        )
    subsets = np.arange(1, 1 << n, dtype=np.uint64)
    cut = np.zeros(subsets.shape, dtype=np.int64)
    for u, v in edges:
        par = ((subsets >> np.uint64(u)) ^ (subsets >> np.uint64(v))) & np.uint64(1)
        cut += par.astype(np.int64)
    sizes = np.bitwise_count(subsets).astype(np.int64)
    small = sizes <= n // 2
    phi_val: Fraction | None = None
    phi_best = None
    if small.any():
        idx = np.flatnonzero(small)
        ratios = cut[idx].astype(float) / sizes[idx]
        j = int(idx[int(np.argmin(ratios))])
        a = int(subsets[j])
        phi_val = Fraction(int(cut[j]), int(sizes[j]))
        phi_best = ExpansionValue(
            "phi",
            int(cut[j]),
            int(sizes[j]),
            phi_val,
            witness_partition=Partition.from_blocks(
                [
                    [v for v in range(n) if (a >> v) & 1],
                    [v for v in range(n) if not (a >> v) & 1],
                ]
            )
            if sizes[j] < n
            else None,
        )
    if h_best is None or phi_best is None:
        return (
            h_best if h_best is not None else _infinite("h"),
            phi_best if phi_best is not None else _infinite("phi"),
        )
    assert phi_val <= h_val <= 2 * phi_val, "graph expansion sandwich violated"
    return h_best, phi_best
