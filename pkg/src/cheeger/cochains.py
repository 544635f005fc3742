"""Cochains over the reals and over GF(2), with coboundary machinery.

Real cochains are dense float vectors indexed by the sorted face list of
their dimension; GF(2) cochains are bit-packed Python ints over the same
index.  All operators accept an optional vertex order so that the same code
serves the default numeric orientation and block-sorted orientations.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import gf2
from .complexes import SimplicialComplex
from .partitions import Partition
from .util import InputError, ResourceError


@dataclass(eq=False)
class RealCochain:
    dim: int
    values: np.ndarray

    def inner(self, other: "RealCochain") -> float:
        return float(self.values @ other.values)

    def norm_sq(self) -> float:
        return float(self.values @ self.values)


@dataclass(frozen=True)
class Z2Cochain:
    dim: int
    bits: int
    size: int

    @property
    def weight(self) -> int:
        return self.bits.bit_count()

    def support_indices(self) -> list[int]:
        return [i for i in range(self.size) if (self.bits >> i) & 1]


def real_cochain(X: SimplicialComplex, dim: int, values) -> RealCochain:
    vals = np.asarray(values, dtype=float)
    if vals.shape != (X.num_faces(dim),):
        raise InputError(f"expected {X.num_faces(dim)} values for dimension {dim}")
    return RealCochain(dim, vals)


def real_indicator(X: SimplicialComplex, dim: int, faces) -> RealCochain:
    idx = X.face_index(dim)
    vals = np.zeros(len(idx))
    for face in faces:
        vals[idx[tuple(sorted(face))]] = 1.0
    return RealCochain(dim, vals)


def z2_cochain(X: SimplicialComplex, dim: int, faces) -> Z2Cochain:
    idx = X.face_index(dim)
    bits = 0
    for face in faces:
        f = tuple(sorted(face))
        if f not in idx:
            raise InputError(f"face {f} not in dimension {dim}")
        bits |= 1 << idx[f]
    return Z2Cochain(dim, bits, len(idx))


def support_faces(X: SimplicialComplex, f: Z2Cochain):
    faces = X.faces(f.dim)
    return tuple(faces[i] for i in f.support_indices())


# -- operators --------------------------------------------------------------


def coboundary_matrix(X: SimplicialComplex, i: int, order=None) -> np.ndarray:
    """Signed incidence matrix of delta_i, shape (|X_{i+1}|, |X_i|), int64."""
    k = X.dim
    if i < -1 or i > k:
        raise InputError(f"coboundary dimension {i} outside -1..{k}")
    rows = X.faces(i + 1)
    cols = X.face_index(i)
    M = np.zeros((len(rows), len(cols)), dtype=np.int64)
    if order is None:
        pos = None
    else:
        pos = {v: r for r, v in enumerate(order)}
    for r, tau in enumerate(rows):
        ordered = tau if pos is None else tuple(sorted(tau, key=pos.__getitem__))
        for j, v in enumerate(ordered):
            sigma = tuple(sorted(set(tau) - {v}))
            M[r, cols[sigma]] = -1 if j % 2 else 1
    return M


def face_masks(X: SimplicialComplex, i: int) -> list[int]:
    """Per (i+1)-face bitmask of its i-facet indices (the GF(2) coboundary)."""
    k = X.dim
    if i < -1 or i > k:
        raise InputError(f"coboundary dimension {i} outside -1..{k}")
    cols = X.face_index(i)
    masks = []
    for tau in X.faces(i + 1):
        m = 0
        for v in tau:
            m |= 1 << cols[tuple(sorted(set(tau) - {v}))]
        masks.append(m)
    return masks


def coboundary(X: SimplicialComplex, f, order=None):
    """delta f, one dimension up; the zero cochain above the top dimension."""
    k = X.dim
    if f.dim < -1 or f.dim > k:
        raise InputError(f"cochain dimension {f.dim} outside -1..{k}")
    if isinstance(f, Z2Cochain):
        masks = face_masks(X, f.dim)
        bits = 0
        for r, m in enumerate(masks):
            if (f.bits & m).bit_count() & 1:
                bits |= 1 << r
        return Z2Cochain(f.dim + 1, bits, len(masks))
    M = coboundary_matrix(X, f.dim, order)
    return RealCochain(f.dim + 1, M @ f.values)


def boundary(X: SimplicialComplex, f: RealCochain, order=None) -> RealCochain:
    """The adjoint of the coboundary: transpose action of the incidence matrix."""
    k = X.dim
    if f.dim < 0 or f.dim > k:
        raise InputError(f"boundary needs dimension in 0..{k}, got {f.dim}")
    M = coboundary_matrix(X, f.dim - 1, order)
    return RealCochain(f.dim - 1, M.T @ f.values)


# -- GF(2) subspaces ---------------------------------------------------------


def coboundary_basis_z2(X: SimplicialComplex, i: int) -> list[int]:
    """Reduced basis of the GF(2) coboundary space B^i, as bitsets over X_i."""
    if i < 0 or i > X.dim:
        raise InputError(f"dimension {i} outside 0..{X.dim}")
    idx = X.face_index(i - 1)
    cols = [0] * len(idx)
    for r, tau in enumerate(X.faces(i)):
        for v in tau:
            cols[idx[tuple(sorted(set(tau) - {v}))]] |= 1 << r
    return gf2.row_reduce(cols)


def cocycle_basis_z2(X: SimplicialComplex, i: int) -> list[int]:
    """Basis of the GF(2) cocycle space Z^i (kernel of delta_i)."""
    return gf2.nullspace(face_masks(X, i), X.num_faces(i))


def coset_weight(X: SimplicialComplex, f: Z2Cochain, coset_cap: int = 1 << 24) -> int:
    """Minimum Hamming weight over the coset f + B^{k-1}(X; GF(2)).

    Exhaustive Gray-code walk of the coboundary space; minimum coset weight
    is NP-hard in general, so the walk is guarded by a hard cap on the
    number of coset elements.
    """
    k = X.dim
    if f.dim != k - 1:
        raise InputError(f"coset weight is defined in dimension {k - 1}")
    basis = coboundary_basis_z2(X, k - 1)
    if (1 << len(basis)) > coset_cap:
        raise ResourceError(
            f"coboundary space has dimension {len(basis)}; "
            f"2**{len(basis)} coset elements exceed cap {coset_cap}"
        )
    return gf2.span_min_weight(f.bits, basis)


# -- the partition cochain ---------------------------------------------------


def block_order(partition: Partition, n: int) -> tuple[int, ...]:
    """Vertex order listing block 0, then block 1, ...; leftovers last."""
    order = [v for block in partition.blocks for v in block]
    rest = sorted(set(range(n)) - set(order))
    return tuple(order + rest)


def partition_cochain(X: SimplicialComplex, partition: Partition) -> RealCochain:
    """The (k-1)-cochain giving each rainbow face the signed size of its
    missing block: (-1)**l * |A_l| when block l is the unique block the face
    misses, 0 whenever two vertices share a block.

    The values are tied to the block-sorted orientation from block_order;
    use that order for any operator applied to this cochain.
    """
    k = X.dim
    if k < 1:
        raise InputError("partition cochain needs a complex of dimension >= 1")
    if partition.num_blocks != k + 1 or not partition.covers(X.n):
        raise InputError(f"need a partition of all vertices into {k + 1} blocks")
    assign = partition.assignment(X.n)
    sizes = partition.block_sizes()
    vals = np.zeros(X.num_faces(k - 1))
    full = set(range(k + 1))
    for r, sigma in enumerate(X.faces(k - 1)):
        hit = {assign[v] for v in sigma}
        if len(hit) == k:
            (missing,) = full - hit
            vals[r] = (-1) ** missing * sizes[missing]
    return RealCochain(k - 1, vals)


def partition_cochain_coboundary(X: SimplicialComplex, partition: Partition) -> RealCochain:
    """delta of the partition cochain under the block-sorted orientation.

    Entries land in {0, |V|}, with support exactly the rainbow top faces.
    """
    f = partition_cochain(X, partition)
    return coboundary(X, f, order=block_order(partition, X.n))


def cochain_to_json(X: SimplicialComplex, f) -> dict:
    """Cochain dump: support faces (1-based) plus values for real cochains."""
    if isinstance(f, Z2Cochain):
        return {
            "dim": f.dim,
            "ring": "Z2",
            "support": [[v + 1 for v in face] for face in support_faces(X, f)],
        }
    faces = X.faces(f.dim)
    nz = [i for i, v in enumerate(f.values) if v != 0.0]
    return {
        "dim": f.dim,
        "ring": "R",
        "support": [[v + 1 for v in faces[i]] for i in nz],
        "values": [float(f.values[i]) for i in nz],
    }
