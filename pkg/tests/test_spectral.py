import numpy as np
import pytest
import sympy

from cheeger import (
    INF,
    InputError,
    RealCochain,
    ResourceError,
    complete_complex,
    eigendecompose,
    from_facets,
    full_laplacian,
    graph_complex,
    hodge_split,
    lower_laplacian,
    moebius_cylinder,
    projective_plane,
    random_complex,
    rayleigh_quotient_bound,
    spectral_gap,
    upper_laplacian,
    y_complex,
)
from cheeger.cochains import coboundary_matrix, real_cochain, z2_cochain, block_order
from cheeger.partitions import Partition
from cheeger.spectral import cycle_space_basis, matrix_rank

SUITE = [
    projective_plane(),
    moebius_cylinder(6),
    moebius_cylinder(8),
    y_complex(8),
    complete_complex(5, 2),
    complete_complex(6, 3),
    random_complex(7, 2, 0.5, 2),
    random_complex(7, 2, 0.5, 2, thin=True),
]


def test_graph_upper_laplacian_is_degree_minus_adjacency():
    G = graph_complex(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (1, 3)])
    L = upper_laplacian(G, 0)
    A = np.zeros((5, 5), dtype=int)
    for u, v in G.faces(1):
        A[u, v] = A[v, u] = 1
    D = np.diag(A.sum(axis=1))
    assert np.array_equal(L, D - A)


def test_single_triangle_upper_laplacian_diagonal():
    X = from_facets(3, [[0, 1, 2]])
    L = upper_laplacian(X, 1)
    assert np.array_equal(np.diag(L), [1, 1, 1])


def test_complete_complex_laplacian_identity():
    for n, k in [(5, 1), (5, 2), (6, 2), (6, 3)]:
        K = complete_complex(n, k)
        total = upper_laplacian(K, k - 1) + lower_laplacian(K, k - 1)
        assert total.dtype.kind == "i"
        assert np.array_equal(total, n * np.eye(total.shape[0], dtype=np.int64))


def test_laplacian_dimension_errors():
    X = projective_plane()
    with pytest.raises(InputError):
        upper_laplacian(X, 3)
    with pytest.raises(InputError):
        lower_laplacian(X, -1)


def test_eigendecompose_diagonal():
    w, V = eigendecompose(np.diag([3.0, 1.0, 2.0]))
    assert np.allclose(w, [1, 2, 3])
    assert np.allclose(V.T @ V, np.eye(3), atol=1e-10)


def test_eigendecompose_k4_charpoly_oracle():
    G = complete_complex(4, 1)
    L = upper_laplacian(G, 0)
    w, V = eigendecompose(L.astype(float))
    roots = sympy.Matrix(L.tolist()).charpoly().all_roots()
    expected = sorted(float(r) for r in roots)
    assert np.allclose(w, expected, atol=1e-9)
    assert np.allclose(w, [0, 4, 4, 4], atol=1e-9)
    M = L.astype(float)
    assert np.max(np.abs(M @ V - V @ np.diag(w))) <= 1e-8 * max(1, np.max(np.abs(M)))


def test_eigendecompose_zero_matrix_and_guards():
    w, _ = eigendecompose(np.zeros((4, 4)))
    assert np.allclose(w, 0)
    with pytest.raises(ResourceError):
        eigendecompose(np.eye(10), dense_cap=5)
    with pytest.raises(InputError):
        eigendecompose(np.zeros((2, 3)))


def test_spectral_gap_rp2():
    gap, res = spectral_gap(projective_plane())
    assert abs(gap - 0.764) <= 0.005
    assert abs(gap - 0.7639320225) <= 1e-8  # frozen full-precision regression
    assert res.basis_dim == 10 and res.coboundary_dim == 5
    assert res.to_json()["lambda"] == gap


def test_spectral_gap_complete_graphs_match_dense_eigensolver():
    for n in (3, 4, 5, 6):
        G = complete_complex(n, 1)
        gap, _ = spectral_gap(G)
        w = np.linalg.eigvalsh(upper_laplacian(G, 0).astype(float))
        assert abs(gap - sorted(w)[1]) <= 1e-8
        assert abs(gap - n) <= 1e-8


def test_spectral_gap_vanishes_on_moebius_and_y():
    for X in (moebius_cylinder(6), moebius_cylinder(9), y_complex(8)):
        gap, _ = spectral_gap(X)
        assert abs(gap) <= 1e-8


def test_spectral_gap_complete_complexes():
    for n, k in [(5, 1), (5, 2), (6, 2), (6, 3)]:
        gap, _ = spectral_gap(complete_complex(n, k))
        assert abs(gap - n) <= 1e-8


def test_spectral_gap_rejects_points():
    with pytest.raises(InputError):
        spectral_gap(from_facets(3, [[0], [1], [2]]))


def test_laplacians_are_psd():
    for X in SUITE:
        k = X.dim
        for L in (upper_laplacian(X, k - 1), lower_laplacian(X, k - 1), full_laplacian(X, k - 1)):
            w = np.linalg.eigvalsh(L.astype(float))
            assert w.min() >= -1e-9


def test_upper_laplacian_kernel_is_cocycle_space():
    for X in SUITE:
        k = X.dim
        L = upper_laplacian(X, k - 1)
        assert matrix_rank(L) == matrix_rank(coboundary_matrix(X, k - 1))


def test_gap_invariant_under_orientation_orders():
    rng = np.random.default_rng(17)
    for X in (projective_plane(), moebius_cylinder(7), y_complex(8), random_complex(7, 2, 0.6, 5)):
        base, _ = spectral_gap(X)
        gaps = [base]
        for _ in range(5):
            order = tuple(int(v) for v in rng.permutation(X.n))
            g, _ = spectral_gap(X, order=order)
            gaps.append(g)
        assert max(gaps) - min(gaps) <= 1e-7


def test_gap_zero_iff_real_cohomology_nontrivial():
    for X in SUITE:
        k = X.dim
        gap, res = spectral_gap(X)
        dim_z = X.num_faces(k - 1) - matrix_rank(coboundary_matrix(X, k - 1))
        dim_b = res.coboundary_dim
        nontrivial = dim_z > dim_b
        if gap is INF:
            continue
        assert (abs(gap) <= 1e-8) == nontrivial


def test_hodge_split_known_parts():
    X = projective_plane()
    rng = np.random.default_rng(2)
    g = real_cochain(X, 0, rng.uniform(-1, 1, 6))
    from cheeger.cochains import coboundary

    f = coboundary(X, g)
    split = hodge_split(X, f)
    assert np.linalg.norm(split.z.values) <= 1e-9
    # a cochain orthogonal to the coboundary space keeps b = 0
    Q, _ = cycle_space_basis(X)
    perp = RealCochain(1, Q @ rng.uniform(-1, 1, Q.shape[1]))
    split = hodge_split(X, perp)
    assert np.linalg.norm(split.b.values) <= 1e-9


def test_hodge_split_orthogonality_and_dimension_count():
    rng = np.random.default_rng(3)
    for X in SUITE:
        k = X.dim
        f = RealCochain(k - 1, rng.uniform(-1, 1, X.num_faces(k - 1)))
        s = hodge_split(X, f)
        parts = [s.harmonic.values, s.coboundary_part.values, s.boundary_part.values]
        assert np.allclose(sum(parts), f.values, atol=1e-9)
        for i in range(3):
            for j in range(i + 1, 3):
                assert abs(parts[i] @ parts[j]) <= 1e-9
        # rank bookkeeping: |X_{k-1}| = dim H + rank(delta_{k-2}) + rank(delta_{k-1})
        r_down = matrix_rank(coboundary_matrix(X, k - 2))
        r_up = matrix_rank(coboundary_matrix(X, k - 1))
        dim_h = X.num_faces(k - 1) - r_down - r_up
        assert dim_h >= 0
        # the harmonic part of anything lives in that dim_h-dimensional space
        if dim_h == 0:
            assert np.linalg.norm(s.harmonic.values) <= 1e-8
        # z is a cycle: boundary(z) = 0
        down = coboundary_matrix(X, k - 2)
        assert np.linalg.norm(down.T @ s.z.values) <= 1e-8


def test_hodge_split_preserves_upper_energy():
    rng = np.random.default_rng(4)
    X = y_complex(8)
    L = upper_laplacian(X, 1).astype(float)
    for _ in range(10):
        f = RealCochain(1, rng.uniform(-1, 1, X.num_faces(1)))
        z = hodge_split(X, f).z.values
        assert abs(f.values @ L @ f.values - z @ L @ z) <= 1e-8


def test_rayleigh_bound_dominates_gap():
    rng = np.random.default_rng(6)
    for X in (projective_plane(), y_complex(8), random_complex(7, 2, 0.7, 8)):
        gap, _ = spectral_gap(X)
        gap = 0.0 if gap is INF else gap
        for _ in range(20):
            f = RealCochain(X.dim - 1, rng.uniform(-1, 1, X.num_faces(X.dim - 1)))
            bound = rayleigh_quotient_bound(X, f)
            if bound is INF:
                continue
            assert bound >= gap - 1e-6


def test_rayleigh_bound_equality_on_complete_skeleton():
    X = complete_complex(6, 2)
    gap, _ = spectral_gap(X)
    Q, _ = cycle_space_basis(X)
    L = upper_laplacian(X, 1).astype(float)
    w, V = np.linalg.eigh(Q.T @ L @ Q)
    f = RealCochain(1, Q @ V[:, 0])
    bound = rayleigh_quotient_bound(X, f)
    assert abs(bound - gap) <= 1e-6 * max(1, gap)


def test_rayleigh_bound_matches_z2_ratio_for_witness_cochains():
    # the h' witness cast to the reals gives exactly n |dX f| / |dK f|
    X = projective_plane()
    P = Partition.from_blocks([[0, 1, 2, 3], [4, 5]])
    order = block_order(P, X.n)
    support = [(0, 4), (1, 4), (2, 4), (0, 5)]
    from cheeger.cochains import coboundary, real_indicator

    fr = real_indicator(X, 1, support)
    fz = z2_cochain(X, 1, support)
    K = X.completion()
    num = coboundary(X, fz).weight
    den = coboundary(K, z2_cochain(K, 1, support)).weight
    bound = rayleigh_quotient_bound(X, fr, order=order)
    assert bound is not INF
    assert abs(bound - X.n * num / den) <= 1e-9


def test_rayleigh_bound_guards():
    X = projective_plane()
    rng = np.random.default_rng(7)
    g = real_cochain(X, 0, rng.uniform(-1, 1, 6))
    from cheeger.cochains import coboundary

    with pytest.raises(InputError):
        rayleigh_quotient_bound(X, coboundary(X, g))
    # moebius: a cocycle of the completion maps to the infinite sentinel
    Z = moebius_cylinder(8)
    from cheeger import gf2
    from cheeger.cochains import cocycle_basis_z2, coboundary_basis_z2

    basis_b = coboundary_basis_z2(Z, 1)
    z_bits = next(z for z in cocycle_basis_z2(Z, 1) if not gf2.in_span(z, basis_b))
    vals = np.array([(z_bits >> i) & 1 for i in range(Z.num_faces(1))], dtype=float)
    bound = rayleigh_quotient_bound(Z, RealCochain(1, vals))
    assert bound is INF
