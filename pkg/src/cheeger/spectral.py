"""Combinatorial Laplacians, spectral gaps, and Hodge projections.

Laplacian matrices are assembled as exact integer matrices from the signed
incidence data; eigenvalue and rank decisions then happen in float64 with a
single global relative rank tolerance so borderline cases are auditable.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .cochains import RealCochain, coboundary_matrix
from .complexes import SimplicialComplex
from .util import INF, InputError, ResourceError, json_value

RANK_TOL = 1e-9
DENSE_CAP = 4096


def upper_laplacian(X: SimplicialComplex, i: int, order=None) -> np.ndarray:
    """L_up_i = boundary_{i+1} after delta_i, as an exact integer matrix."""
    if i < 0 or i > X.dim:
        raise InputError(f"Laplacian dimension {i} outside 0..{X.dim}")
    M = coboundary_matrix(X, i, order)
    return M.T @ M


def lower_laplacian(X: SimplicialComplex, i: int, order=None) -> np.ndarray:
    if i < 0 or i > X.dim:
        raise InputError(f"Laplacian dimension {i} outside 0..{X.dim}")
    M = coboundary_matrix(X, i - 1, order)
    return M @ M.T


def full_laplacian(X: SimplicialComplex, i: int, order=None) -> np.ndarray:
    return upper_laplacian(X, i, order) + lower_laplacian(X, i, order)


def eigendecompose(M: np.ndarray, dense_cap: int = DENSE_CAP):
    """Ascending eigenvalues and orthonormal eigenvectors of a symmetric matrix."""
    A = np.asarray(M, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise InputError("eigendecompose needs a square matrix")
    if A.shape[0] > dense_cap:
        raise ResourceError(f"matrix order {A.shape[0]} exceeds dense cap {dense_cap}")
    if A.shape[0] == 0:
        return np.zeros(0), np.zeros((0, 0))
    w, V = np.linalg.eigh(A)
    return w, V


def _svd_rank(M: np.ndarray, rank_tol: float):
    """Left singular basis split (column space, complement) with the rank."""
    A = np.asarray(M, dtype=float)
    if A.shape[1] == 0 or not np.any(A):
        return np.zeros((A.shape[0], 0)), np.eye(A.shape[0]), 0
    U, s, _ = np.linalg.svd(A, full_matrices=True)
    r = int(np.sum(s > rank_tol * s[0]))
    return U[:, :r], U[:, r:], r


def matrix_rank(M: np.ndarray, rank_tol: float = RANK_TOL) -> int:
    A = np.asarray(M, dtype=float)
    if A.size == 0 or not np.any(A):
        return 0
    s = np.linalg.svd(A, compute_uv=False)
    return int(np.sum(s > rank_tol * s[0]))


@dataclass
class SpectralResult:
    """Spectrum of the upper Laplacian restricted to the cycle space."""

    eigenvalues: tuple[float, ...]
    basis_dim: int
    rank_tolerance: float
    coboundary_dim: int
    orientation_seed: int = 0

    @property
    def gap(self):
        """Smallest restricted eigenvalue; INF when the cycle space is trivial."""
        if not self.eigenvalues:
            return INF
        return self.eigenvalues[0]

    def to_json(self) -> dict:
        return {
            "lambda": json_value(self.gap),
            "dim_Z": self.basis_dim,
            "dim_B": self.coboundary_dim,
            "tolerance": self.rank_tolerance,
            "orientation_seed": self.orientation_seed,
        }


def cycle_space_basis(X: SimplicialComplex, order=None, rank_tol: float = RANK_TOL):
    """Orthonormal basis of Z_{k-1} = ker(boundary), i.e. the orthogonal
    complement of the coboundary space B^{k-1}, plus dim B^{k-1}."""
    k = X.dim
    D = coboundary_matrix(X, k - 2, order)  # shape |X_{k-1}| x |X_{k-2}|
    col_basis, complement, r = _svd_rank(D, rank_tol)
    del col_basis
    return complement, r


def spectral_gap(
    X: SimplicialComplex,
    order=None,
    dense_cap: int = DENSE_CAP,
    rank_tol: float = RANK_TOL,
    orientation_seed: int = 0,
):
    """Smallest eigenvalue of the top upper Laplacian on the cycle space.

    Returns (gap, SpectralResult); the gap is INF when the cycle space has
    dimension zero.
    """
    k = X.dim
    if k < 1:
        raise InputError("spectral gap needs a complex of dimension >= 1")
    m = X.num_faces(k - 1)
    if m == 0:
        raise InputError("no faces in the spectral dimension")
    if m > dense_cap:
        raise ResourceError(f"{m} faces exceed dense cap {dense_cap}")
    Q, dim_b = cycle_space_basis(X, order, rank_tol)
    if Q.shape[1] == 0:
        result = SpectralResult((), 0, rank_tol, dim_b, orientation_seed)
        return INF, result
    L = upper_laplacian(X, k - 1, order).astype(float)
    R = Q.T @ L @ Q
    w, _ = eigendecompose((R + R.T) / 2.0, dense_cap)
    result = SpectralResult(tuple(float(x) for x in w), Q.shape[1], rank_tol, dim_b, orientation_seed)
    return float(w[0]), result


@dataclass
class HodgeSplit:
    """Orthogonal decomposition f = harmonic + coboundary_part + boundary_part.

    The cocycle-space component z = harmonic + boundary_part and the
    coboundary component b satisfy f = z + b with z in ker(boundary).
    """

    harmonic: RealCochain
    coboundary_part: RealCochain
    boundary_part: RealCochain

    @property
    def z(self) -> RealCochain:
        return RealCochain(self.harmonic.dim, self.harmonic.values + self.boundary_part.values)

    @property
    def b(self) -> RealCochain:
        return self.coboundary_part


def hodge_split(
    X: SimplicialComplex, f: RealCochain, order=None, rank_tol: float = RANK_TOL
) -> HodgeSplit:
    """Project a (k-1)-cochain onto the three Hodge summands."""
    k = X.dim
    if f.dim != k - 1:
        raise InputError(f"hodge split expects dimension {k - 1}, got {f.dim}")
    D_down = coboundary_matrix(X, k - 2, order)
    U_b, _, _ = _svd_rank(D_down, rank_tol)
    D_up = coboundary_matrix(X, k - 1, order)
    U_bd, _, _ = _svd_rank(D_up.T, rank_tol)
    b = U_b @ (U_b.T @ f.values)
    bd = U_bd @ (U_bd.T @ f.values)
    h = f.values - b - bd
    return HodgeSplit(
        RealCochain(f.dim, h), RealCochain(f.dim, b), RealCochain(f.dim, bd)
    )


def rayleigh_quotient_bound(X: SimplicialComplex, f: RealCochain, order=None):
    """n * <L_up(X) f, f> / <L_up(K(X)) f, f>, an upper bound for the gap.

    Defined for f outside the coboundary space; returns INF when the
    denominator vanishes (the completion sees f as a cocycle).
    """
    k = X.dim
    if f.dim != k - 1:
        raise InputError(f"expected a cochain of dimension {k - 1}")
    split = hodge_split(X, f, order)
    znorm = float(np.linalg.norm(split.z.values))
    if znorm <= RANK_TOL * max(1.0, float(np.linalg.norm(f.values))):
        raise InputError("bound undefined for cochains in the coboundary space")
    K = X.completion()
    dx = coboundary_matrix(X, k - 1, order) @ f.values
    dk = coboundary_matrix(K, k - 1, order) @ f.values
    num = X.n * float(dx @ dx)
    den = float(dk @ dk)
    if den <= 1e-12:
        return INF
    return num / den
