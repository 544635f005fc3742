"""Machine-checkable certificates for the spectral-gap inequalities.

Each check computes both sides of one inequality or identity on a concrete
complex and records the inputs, the quantities, the verdict, and the slack.
A failing certificate on a valid input is a build-stopping event: the
statements are theorems, so the only way to fail is an implementation bug.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from fractions import Fraction
from math import comb

import numpy as np

from . import gf2
from .cochains import (
    RealCochain,
    block_order,
    coboundary_basis_z2,
    coboundary_matrix,
    face_masks,
    partition_cochain,
    partition_cochain_coboundary,
)
from .complexes import SimplicialComplex
from .expansion import (
    ExpansionValue,
    cheeger_constant,
    cochain_expansion,
    coboundary_expansion,
    congestion,
    min_congestion_over_minimizers,
    rainbow_faces,
    restricted_expansion,
)
from .generators import complete_complex, moebius_cylinder, projective_plane, random_complex, y_complex
from .partitions import Partition
from .spectral import hodge_split, spectral_gap, upper_laplacian
from .util import INF, InputError, ResourceError, canonical_json, json_value

CLAIM_IDS = (
    "THM1_GENERAL",
    "THM2",
    "THM3",
    "LEM2",
    "LEM3",
    "LEM5",
    "LEM6A",
    "LEM6B",
    "LEM7",
    "LEM8",
    "PROP6",
    "REL_PHI_HTILDE",
)

DEFAULT_TRIALS = 100
DEFAULT_SEED = 0xC0FFEE
REL_TOL = 1e-6
INT_TOL = 1e-8


@dataclass
class Certificate:
    """Record of one verified claim instance."""

    claim: str
    inputs: dict
    quantities: dict
    verdict: bool
    slack: float | object = 0.0
    notes: tuple[str, ...] = ()

    @property
    def passed(self) -> bool:
        return self.verdict

    def to_json_dict(self) -> dict:
        return {
            "claim": self.claim,
            "inputs": self.inputs,
            "quantities": {k: json_value(v) for k, v in self.quantities.items()},
            "verdict": "pass" if self.verdict else "fail",
            "slack": json_value(self.slack),
            "notes": list(self.notes),
        }

    def to_json_line(self) -> str:
        return canonical_json(self.to_json_dict())


def complex_digest(X: SimplicialComplex) -> str:
    return hashlib.sha256(canonical_json(X.to_json_dict()).encode()).hexdigest()[:16]


def _inputs(X: SimplicialComplex, **extra) -> dict:
    base = {"complex": complex_digest(X), "n": X.n, "k": X.dim}
    base.update(extra)
    return base


def _ratio(v: ExpansionValue):
    return INF if v.is_infinite else float(v.value)


def _rational(v: ExpansionValue):
    if v.is_infinite:
        return "inf"
    return [v.value.numerator, v.value.denominator]


# -- theorems ------------------------------------------------------------------


def verify_theorem1_general(
    X: SimplicialComplex, partition_cap: int | None = None, tol: float = REL_TOL
) -> Certificate:
    """Spectral gap bounded by the Cheeger constant on arbitrary complexes."""
    kwargs = {} if partition_cap is None else {"partition_cap": partition_cap}
    h = cheeger_constant(X, **kwargs)
    gap, _ = spectral_gap(X)
    gap_val = 0.0 if gap is INF else gap
    if h.is_infinite:
        ok, slack = True, INF
    else:
        slack = h.as_float() - gap_val
        ok = gap_val <= h.as_float() + tol
    return Certificate(
        "THM1_GENERAL",
        _inputs(X, tolerance=tol),
        {"lambda": gap, "h": _ratio(h), "h_exact": _rational(h)},
        ok,
        slack,
    )


def verify_theorem2(
    X: SimplicialComplex,
    partition_cap: int | None = None,
    c_scan_all: bool = False,
    tol: float = REL_TOL,
) -> Certificate:
    """Spectral gap bounded by (C/|V|) h, with the coface-count corollary."""
    kwargs = {} if partition_cap is None else {"partition_cap": partition_cap}
    h = cheeger_constant(X, **kwargs)
    gap, _ = spectral_gap(X)
    gap_val = 0.0 if gap is INF else gap
    n = X.n
    k = X.dim
    quantities: dict = {"lambda": gap, "h": _ratio(h), "h_exact": _rational(h)}
    notes = []
    if h.is_infinite:
        return Certificate(
            "THM2", _inputs(X, tolerance=tol, c_scan_all=c_scan_all), quantities, True, INF
        )
    if c_scan_all:
        c, witness = min_congestion_over_minimizers(X, **kwargs)
        notes.append("congestion minimized over all minimizing partitions")
    else:
        witness = h.witness_partition
        c, _ = congestion(X, witness)
    K = X.completion()
    cmax = max(K.degree(sigma) for sigma in X.faces(k - 1))
    bound = Fraction(c, n) * h.value
    corollary = Fraction((k + 1) * cmax, n) * h.value
    quantities.update(
        {
            "C": c,
            "witness_partition": witness.labels() if witness else None,
            "bound": float(bound),
            "max_coface_count": cmax,
            "corollary_bound": float(corollary),
        }
    )
    ok = (
        gap_val <= float(bound) + tol
        and gap_val <= float(corollary) + tol
        and c <= n
        and c <= (k + 1) * cmax
    )
    return Certificate(
        "THM2",
        _inputs(X, tolerance=tol, c_scan_all=c_scan_all),
        quantities,
        ok,
        float(bound) - gap_val,
        tuple(notes),
    )


def verify_theorem3(
    X: SimplicialComplex, subset_cap: int | None = None, tol: float = REL_TOL
) -> Certificate:
    """Spectral gap bounded by the partition-supported cochain expansion."""
    kwargs = {} if subset_cap is None else {"subset_cap": subset_cap}
    hp = restricted_expansion(X, **kwargs)
    gap, _ = spectral_gap(X)
    gap_val = 0.0 if gap is INF else gap
    if hp.is_infinite:
        ok, slack = True, INF
    else:
        slack = hp.as_float() - gap_val
        ok = gap_val <= hp.as_float() + tol
    return Certificate(
        "THM3",
        _inputs(X, tolerance=tol),
        {"lambda": gap, "h_prime": _ratio(hp), "h_prime_exact": _rational(hp)},
        ok,
        slack,
    )


# -- lemmas --------------------------------------------------------------------


def _block_partition_data(X: SimplicialComplex, partition: Partition):
    order = block_order(partition, X.n)
    f = partition_cochain(X, partition)
    K = X.completion()
    boundary_rainbow = rainbow_faces(K, partition)
    return order, f, K, boundary_rainbow


def verify_lemmas(
    X: SimplicialComplex,
    partition: Partition,
    trials: int = DEFAULT_TRIALS,
    seed: int = DEFAULT_SEED,
) -> list[Certificate]:
    """All lemma-level identities for one complex and one block partition.

    Randomized parts draw the auxiliary cochains from a seeded uniform
    [-1, 1] distribution; the identities are universally quantified, so any
    distribution only probes them.
    """
    certs = [
        verify_norm_identity(X, partition),
        verify_coboundary_value_identity(X, partition),
        verify_projection_bound(X, partition),
    ]
    certs.extend(verify_distance_bounds(X, partition, trials, seed))
    certs.append(verify_z2_norm_identity(X, partition, trials, seed))
    certs.append(verify_rayleigh_reformulation(X, trials, seed))
    return certs


def verify_norm_identity(X: SimplicialComplex, partition: Partition) -> Certificate:
    """LEM2: on a complete lower skeleton the partition cochain is a cycle
    and its squared norm is |V| * prod |A_i|."""
    n, k = X.n, X.dim
    complete = X.num_faces(k - 1) == comb(n, k)
    inputs = _inputs(X, partition=partition.labels(), trials=0, seed=0)
    if not complete:
        return Certificate(
            "LEM2", inputs, {"applicable": False}, True, INF, ("skeleton not complete",)
        )
    order, f, K, boundary_rainbow = _block_partition_data(X, partition)
    down = coboundary_matrix(X, k - 2, order)
    boundary_norm = float(np.linalg.norm(down.T @ f.values))
    norm_sq = f.norm_sq()
    expected = n
    for size in partition.block_sizes():
        expected *= size
    ok = boundary_norm <= INT_TOL and abs(norm_sq - expected) <= 1e-9 * max(1, expected)
    ok = ok and len(boundary_rainbow) * n == expected
    return Certificate(
        "LEM2",
        inputs,
        {
            "norm_sq": round(norm_sq),
            "expected": expected,
            "boundary_norm": boundary_norm,
            "rainbow_boundary_faces": len(boundary_rainbow),
        },
        ok,
        expected - norm_sq,
    )


def verify_coboundary_value_identity(
    X: SimplicialComplex, partition: Partition
) -> Certificate:
    """LEM3: delta of the partition cochain takes values in {0, |V|}, with
    support the rainbow top faces, and squared norm |V|^2 |F|."""
    n, k = X.n, X.dim
    df = partition_cochain_coboundary(X, partition)
    F = rainbow_faces(X, partition)
    faces = X.faces(k)
    ok = True
    for i, tau in enumerate(faces):
        target = n if tau in set(F) else 0
        if abs(df.values[i] - target) > 1e-9 * max(1, n):
            ok = False
            break
    norm_sq = df.norm_sq()
    expected = n * n * len(F)
    ok = ok and abs(norm_sq - expected) <= 1e-9 * max(1, expected)
    return Certificate(
        "LEM3",
        _inputs(X, partition=partition.labels()),
        {"norm_sq": round(norm_sq), "expected": expected, "rainbow_faces": len(F)},
        ok,
        expected - norm_sq,
    )


def verify_projection_bound(X: SimplicialComplex, partition: Partition) -> Certificate:
    """LEM5: the gap is at most |V|^2 |F| / <z, z> for the cycle-space part
    z of the partition cochain."""
    n, k = X.n, X.dim
    order, f, K, _ = _block_partition_data(X, partition)
    F = rainbow_faces(X, partition)
    gap, _res = spectral_gap(X, order=order)
    gap_val = 0.0 if gap is INF else gap
    z = hodge_split(X, f, order=order).z
    zz = z.norm_sq()
    inputs = _inputs(X, partition=partition.labels())
    if zz <= 1e-12:
        ok = len(F) == 0
        return Certificate(
            "LEM5",
            inputs,
            {"z_norm_sq": zz, "rainbow_faces": len(F)},
            ok,
            INF,
            ("partition cochain lies in the coboundary space",),
        )
    bound = n * n * len(F) / zz
    ok = gap_val <= bound + REL_TOL * max(1.0, bound)
    return Certificate(
        "LEM5",
        inputs,
        {"lambda": gap, "bound": bound, "z_norm_sq": zz, "rainbow_faces": len(F)},
        ok,
        bound - gap_val,
    )


def verify_distance_bounds(
    X: SimplicialComplex,
    partition: Partition,
    trials: int = DEFAULT_TRIALS,
    seed: int = DEFAULT_SEED,
) -> list[Certificate]:
    """LEM6A/LEM6B: the distance from the partition cochain to any
    coboundary dominates the facet-degree-weighted sums q, and each q is at
    least |V|^2 over the facet-degree sum."""
    n, k = X.n, X.dim
    order, f, K, boundary_rainbow = _block_partition_data(X, partition)
    d: dict = {}
    for tau in boundary_rainbow:
        for v in tau:
            s = tuple(sorted(set(tau) - {v}))
            d[s] = d.get(s, 0) + 1
    idx = X.face_index(k - 1)
    down = coboundary_matrix(X, k - 2, order)
    rng = np.random.default_rng(seed)
    inputs = _inputs(X, partition=partition.labels(), trials=trials, seed=seed)
    if not boundary_rainbow:
        note = ("no rainbow faces in the completion",)
        return [
            Certificate("LEM6A", inputs, {"applicable": False}, True, INF, note),
            Certificate("LEM6B", inputs, {"applicable": False}, True, INF, note),
        ]
    slack_a = None
    slack_b = None
    ok_a = ok_b = True
    for _ in range(max(trials, 1)):
        g = rng.uniform(-1.0, 1.0, X.num_faces(k - 2))
        diff = f.values - down @ g
        total = 0.0
        for tau in boundary_rainbow:
            q = 0.0
            dsum = 0
            for v in tau:
                s = tuple(sorted(set(tau) - {v}))
                q += diff[idx[s]] ** 2 / d[s]
                dsum += d[s]
            lower = n * n / dsum
            if q < lower - REL_TOL * max(1.0, lower):
                ok_b = False
            slack_b = q - lower if slack_b is None else min(slack_b, q - lower)
            total += q
        lhs = float(diff @ diff)
        if lhs < total - REL_TOL * max(1.0, total):
            ok_a = False
        slack_a = lhs - total if slack_a is None else min(slack_a, lhs - total)
    return [
        Certificate("LEM6A", inputs, {"min_slack": slack_a}, ok_a, slack_a),
        Certificate("LEM6B", inputs, {"min_slack": slack_b}, ok_b, slack_b),
    ]


def verify_z2_norm_identity(
    X: SimplicialComplex,
    partition: Partition,
    trials: int = DEFAULT_TRIALS,
    seed: int = DEFAULT_SEED,
) -> Certificate:
    """LEM7: for cochains supported on the rainbow faces of disjoint blocks,
    the real coboundary norm squared equals the GF(2) coboundary weight."""
    n, k = X.n, X.dim
    blocks = Partition(partition.blocks[:k])  # pairwise disjoint, need not cover
    rest = sorted(set(range(X.n)) - blocks.support)
    order = tuple([v for b in blocks.blocks for v in b] + rest)
    block_of = {}
    for i, b in enumerate(blocks.blocks):
        for v in b:
            block_of[v] = i
    support = []
    for face in X.faces(k - 1):
        hit = set()
        good = True
        for v in face:
            bidx = block_of.get(v)
            if bidx is None or bidx in hit:
                good = False
                break
            hit.add(bidx)
        if good:
            support.append(face)
    inputs = _inputs(X, blocks=blocks.labels(), trials=trials, seed=seed)
    if not support:
        return Certificate(
            "LEM7", inputs, {"applicable": False}, True, INF, ("empty rainbow support",)
        )
    rng = np.random.default_rng(seed)
    idx = X.face_index(k - 1)
    up = coboundary_matrix(X, k - 1, order)
    masks = face_masks(X, k - 1)
    width = X.num_faces(k - 1)
    worst = 0.0
    ok = True
    for _ in range(max(trials, 1)):
        chosen = [s for s in support if rng.random() < 0.5]
        vals = np.zeros(width)
        bits = 0
        for s in chosen:
            vals[idx[s]] = 1.0
            bits |= 1 << idx[s]
        real = up @ vals
        real_sq = float(real @ real)
        lap = float(vals @ upper_laplacian(X, k - 1, order) @ vals)
        z2 = sum((bits & m).bit_count() & 1 for m in masks)
        err = max(abs(real_sq - z2), abs(lap - z2))
        worst = max(worst, err)
        if err > INT_TOL:
            ok = False
    return Certificate("LEM7", inputs, {"max_error": worst}, ok, -worst)


def verify_rayleigh_reformulation(
    X: SimplicialComplex, trials: int = DEFAULT_TRIALS, seed: int = DEFAULT_SEED
) -> Certificate:
    """LEM8: n <L_up(X) f, f> / <L_up(K) f, f> dominates the gap for any f
    outside the coboundary space, with equality attained on complete lower
    skeleta."""
    from .spectral import rayleigh_quotient_bound

    n, k = X.n, X.dim
    gap, res = spectral_gap(X)
    gap_val = 0.0 if gap is INF else gap
    rng = np.random.default_rng(seed)
    ok = True
    min_bound = None
    for _ in range(max(trials, 1)):
        f = RealCochain(k - 1, rng.uniform(-1.0, 1.0, X.num_faces(k - 1)))
        try:
            bound = rayleigh_quotient_bound(X, f)
        except InputError:
            continue
        if bound is INF:
            continue
        if bound < gap_val - REL_TOL * max(1.0, gap_val):
            ok = False
        min_bound = bound if min_bound is None else min(min_bound, bound)
    quantities: dict = {"lambda": gap, "min_random_bound": min_bound}
    complete = X.num_faces(k - 1) == comb(n, k)
    if complete and res.basis_dim > 0 and gap is not INF:
        from .spectral import cycle_space_basis

        Q, _ = cycle_space_basis(X)
        L = upper_laplacian(X, k - 1).astype(float)
        R = Q.T @ L @ Q
        w, V = np.linalg.eigh((R + R.T) / 2)
        fmin = RealCochain(k - 1, Q @ V[:, 0])
        eq = rayleigh_quotient_bound(X, fmin)
        quantities["eigenvector_bound"] = eq
        if not (eq is not INF and abs(eq - gap_val) <= REL_TOL * max(1.0, gap_val)):
            ok = False
    slack = INF if min_bound is None else min_bound - gap_val
    return Certificate(
        "LEM8", _inputs(X, trials=trials, seed=seed), quantities, ok, slack
    )


# -- the complete-complex expansion bound ---------------------------------------


def verify_expansion_of_complete_complex(
    n: int, k: int, cochain_cap: int = 1 << 25
) -> Certificate:
    """PROP6: every GF(2) cochain of the complete complex satisfies
    n |[f]| / (k+1) <= |delta f| <= n |[f]|, checked exhaustively."""
    K = complete_complex(n, k)
    width = K.num_faces(k - 1)
    if (1 << width) > cochain_cap:
        raise ResourceError(f"2**{width} cochains exceed cap {cochain_cap}")
    masks = face_masks(K, k - 1)
    basis_b = coboundary_basis_z2(K, k - 1)
    ok = True
    worst = None
    for bits in range(1 << width):
        df = sum((bits & m).bit_count() & 1 for m in masks)
        cw = gf2.span_min_weight(bits, basis_b)
        if not ((k + 1) * df >= n * cw and df <= n * cw):
            ok = False
        margin = (k + 1) * df - n * cw
        worst = margin if worst is None else min(worst, margin)
    return Certificate(
        "PROP6",
        _inputs(K, cochains=1 << width),
        {"checked": 1 << width, "min_margin": worst},
        ok,
        float(worst),
    )


def verify_phi_htilde_relation(
    X: SimplicialComplex,
    cochain_cap: int = 1 << 25,
    coset_cap: int = 1 << 24,
) -> Certificate:
    """REL_PHI_HTILDE: phi <= h~ always; on complete lower skeleta also
    h~ <= (k+1) phi."""
    n, k = X.n, X.dim
    phi = coboundary_expansion(X, cochain_cap, coset_cap)
    ht = cochain_expansion(X, cochain_cap)
    complete = X.num_faces(k - 1) == comb(n, k)
    quantities = {
        "phi": _ratio(phi),
        "h_tilde": _ratio(ht),
        "complete_skeleton": complete,
    }
    if ht.is_infinite:
        ok = True
        slack = INF
    elif phi.is_infinite:
        ok = False  # phi infinite forces h~ infinite: B full means delta trivial
        slack = 0.0
    else:
        ok = phi.value <= ht.value
        slack = float(ht.value - phi.value)
        if complete:
            ok = ok and ht.value <= (k + 1) * phi.value
    return Certificate("REL_PHI_HTILDE", _inputs(X), quantities, ok, slack)


# -- suites ----------------------------------------------------------------------


def verify_all_theorems(
    X: SimplicialComplex,
    trials: int = 20,
    seed: int = DEFAULT_SEED,
    c_scan_all: bool = False,
) -> list[Certificate]:
    """THM1/THM2/THM3 plus the lemma suite at the Cheeger witness partition."""
    certs = [
        verify_theorem2(X, c_scan_all=c_scan_all),
        verify_theorem3(X),
        verify_theorem1_general(X),
    ]
    h = cheeger_constant(X)
    if not h.is_infinite:
        certs.extend(verify_lemmas(X, h.witness_partition, trials, seed))
    return certs


def paper_examples_suite(trials: int = 25, seed: int = DEFAULT_SEED) -> list[Certificate]:
    """Certificates over the three worked examples, small complete
    complexes, and the complete-complex expansion bound."""
    certs: list[Certificate] = []
    certs.extend(verify_all_theorems(projective_plane(), trials, seed))
    certs.append(verify_phi_htilde_relation(projective_plane()))
    certs.extend(verify_all_theorems(y_complex(8), trials, seed))
    for n in (6, 8):
        certs.extend(verify_all_theorems(moebius_cylinder(n), trials, seed, c_scan_all=True))
        certs.append(verify_phi_htilde_relation(moebius_cylinder(n)))
    for n, k in ((5, 2), (6, 2)):
        certs.extend(verify_all_theorems(complete_complex(n, k), trials, seed))
        certs.append(verify_phi_htilde_relation(complete_complex(n, k)))
    certs.append(verify_expansion_of_complete_complex(4, 1))
    certs.append(verify_expansion_of_complete_complex(5, 1))
    certs.append(verify_expansion_of_complete_complex(5, 2))
    return certs


def random_suite(
    n: int,
    k: int,
    p: float,
    count: int,
    seed: int = DEFAULT_SEED,
    trials: int = 10,
    thin: bool = False,
    claims=("THM2", "THM3", "THM1_GENERAL"),
) -> list[Certificate]:
    """Theorem certificates over seeded random complexes."""
    certs: list[Certificate] = []
    for i in range(count):
        X = random_complex(n, k, p, seed + i, thin=thin)
        if X.dim != k or X.num_faces(k - 1) == 0:
            continue
        if "THM2" in claims:
            certs.append(verify_theorem2(X))
        if "THM3" in claims:
            certs.append(verify_theorem3(X))
        if "THM1_GENERAL" in claims:
            certs.append(verify_theorem1_general(X))
        lemma_claims = {"LEM2", "LEM3", "LEM5", "LEM6A", "LEM6B", "LEM7", "LEM8"}
        if lemma_claims & set(claims):
            h = cheeger_constant(X)
            if not h.is_infinite:
                for cert in verify_lemmas(X, h.witness_partition, trials, seed + i):
                    if cert.claim in claims:
                        certs.append(cert)
    return certs
