"""Builders for the named example complexes and random test instances.

Every generator validates the structural facts its downstream users rely
on, so a corrupted face table fails loudly at construction time.
"""

from __future__ import annotations

from itertools import combinations
from math import comb

import numpy as np

from . import gf2
from .cochains import cocycle_basis_z2, coboundary_basis_z2, coboundary, z2_cochain
from .complexes import SimplicialComplex, from_facets
from .util import InputError

# 6-vertex closed-surface triangulation of the projective plane (1-based
# labels as they appear in reports).  The labeling is pinned by the witness
# checks in projective_plane(): the bold path 1-2-4-5 must meet exactly two
# triangles an odd number of times.
_RP2_FACETS_1BASED = (
    (1, 2, 3),
    (1, 2, 4),
    (1, 3, 5),
    (1, 4, 6),
    (1, 5, 6),
    (2, 3, 6),
    (2, 4, 5),
    (2, 5, 6),
    (3, 4, 5),
    (3, 4, 6),
)

_RP2_CACHE: SimplicialComplex | None = None


def projective_plane() -> SimplicialComplex:
    """The 6-vertex triangulation of the real projective plane.

    Complete 1-skeleton, 15 edges, 10 triangles, every edge in exactly two
    triangles.  Construction validates the Euler characteristic, the edge
    degrees, nontrivial first GF(2) cohomology, the bold-path witness
    (coboundary weights 2 in X and 8 in the completion), and the spectral
    gap value 0.764 +/- 0.005.
    """
    global _RP2_CACHE
    if _RP2_CACHE is not None:
        return _RP2_CACHE
    X = from_facets(6, [[v - 1 for v in f] for f in _RP2_FACETS_1BASED])
    if X.dim != 2 or X.num_faces(1) != 15 or X.num_faces(2) != 10:
        raise RuntimeError("projective plane face table corrupt")
    if X.euler_characteristic() != 1:
        raise RuntimeError("projective plane Euler characteristic != 1")
    if any(X.degree(e) != 2 for e in X.faces(1)):
        raise RuntimeError("projective plane has an edge not in two triangles")
    dim_z1 = len(cocycle_basis_z2(X, 1))
    dim_b1 = len(coboundary_basis_z2(X, 1))
    if dim_z1 <= dim_b1:
        raise RuntimeError("projective plane should have nontrivial GF(2) cohomology")
    bold = z2_cochain(X, 1, [(0, 1), (1, 3), (3, 4)])
    if coboundary(X, bold).weight != 2:
        raise RuntimeError("projective plane bold-path witness broken in X")
    K = X.completion()
    bold_k = z2_cochain(K, 1, [(0, 1), (1, 3), (3, 4)])
    if coboundary(K, bold_k).weight != 8:
        raise RuntimeError("projective plane bold-path witness broken in K(X)")
    from .spectral import spectral_gap  # deferred: spectral imports cochains

    gap, _ = spectral_gap(X)
    if not abs(gap - 0.764) <= 0.005:
        raise RuntimeError(f"projective plane spectral gap {gap} out of range")
    _RP2_CACHE = X
    return X


def complete_complex(n: int, k: int) -> SimplicialComplex:
    """All faces of dimension at most k on n vertices."""
    if not 0 <= k < n:
        raise InputError(f"complete complex needs 0 <= k < n, got k={k}, n={n}")
    return from_facets(n, combinations(range(n), k + 1))


def y_complex(n: int) -> SimplicialComplex:
    """Complete-1-skeleton 2-complex whose triangles meet the fixed path
    1-2-3-4 in an even number of edges.

    The excluded triangles are {1,2,4}, {1,3,4} and {1,2,i}, {2,3,i},
    {3,4,i} for i = 5..n, leaving C(n,3) - (2 + 3(n-4)) triangles.
    """
    if n < 8:
        raise InputError(f"y complex needs n >= 8, got {n}")
    excluded = {(0, 1, 3), (0, 2, 3)}
    for i in range(4, n):
        excluded.update(
            {tuple(sorted((0, 1, i))), tuple(sorted((1, 2, i))), tuple(sorted((2, 3, i)))}
        )
    triangles = [t for t in combinations(range(n), 3) if t not in excluded]
    facets = triangles + [list(e) for e in combinations(range(n), 2)]
    X = from_facets(n, facets)
    if X.num_faces(2) != comb(n, 3) - (2 + 3 * (n - 4)):
        raise RuntimeError("y complex triangle count corrupt")
    path = {(0, 1), (1, 2), (2, 3)}
    for t in X.faces(2):
        hits = sum(1 for e in combinations(t, 2) if e in path)
        if hits % 2:
            raise RuntimeError(f"y complex keeps triangle {t} with odd path contact")
    return X


def moebius_cylinder(n: int) -> SimplicialComplex:
    """Triangle strip on a cycle: edges {i,i+1}, {i,i+2} and triangles
    {i,i+1,i+2}, indices mod n.  A Moebius strip for odd n, a cylinder for
    even n.  Needs n >= 5 so the listed faces are distinct."""
    if n < 5:
        raise InputError(f"moebius/cylinder complex needs n >= 5, got {n}")
    triangles = [tuple(sorted((i, (i + 1) % n, (i + 2) % n))) for i in range(n)]
    X = from_facets(n, triangles)
    if X.num_faces(1) != 2 * n or X.num_faces(2) != n:
        raise RuntimeError("moebius/cylinder face counts corrupt")
    return X


def graph_complex(n: int, edges) -> SimplicialComplex:
    """1-dimensional complex from an edge list (0-based pairs)."""
    edge_list = [tuple(e) for e in edges]
    for e in edge_list:
        if len(e) != 2:
            raise InputError(f"graph edge {e} must have two endpoints")
    return from_facets(n, edge_list)


def random_complex(n: int, k: int, p: float, seed: int, thin: bool = False) -> SimplicialComplex:
    """Random k-complex: complete (k-1)-skeleton, each k-face kept with
    probability p, deterministically for a fixed seed.

    With thin=True, (k-1)-faces not under any kept k-face are dropped as
    well (the lower skeleton stays complete).
    """
    if not 0.0 <= p <= 1.0:
        raise InputError(f"probability {p} outside [0, 1]")
    if not 1 <= k < n:
        raise InputError(f"random complex needs 1 <= k < n, got k={k}, n={n}")
    rng = np.random.default_rng(seed)
    candidates = list(combinations(range(n), k + 1))
    keep = rng.random(len(candidates)) < p
    kept = [c for c, take in zip(candidates, keep) if take]
    if thin:
        facets = kept + list(combinations(range(n), k - 1))
    else:
        facets = kept + list(combinations(range(n), k))
    return from_facets(n, facets)


def connected_random_graph(n: int, p: float, seed: int) -> SimplicialComplex:
    """Erdos-Renyi graph, resampled until connected (seeded, deterministic)."""
    rng = np.random.default_rng(seed)
    pairs = list(combinations(range(n), 2))
    while True:
        edges = [e for e, r in zip(pairs, rng.random(len(pairs))) if r < p]
        X = from_facets(n, edges) if edges else None
        if X is None or X.dim != 1:
            continue
        rows = [(1 << u) | (1 << v) for u, v in edges]
        # connected iff the cut space has full rank n-1
        if gf2.rank(rows) == n - 1:
            return X
