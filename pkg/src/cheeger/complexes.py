"""Finite abstract simplicial complexes with ordered-vertex incidence data.

Vertices are dense 0-based integer ids; all file formats and reports use
1-based labels instead.  A complex stores its faces per dimension, from the
empty face at dimension -1 up to the top dimension, each level sorted
lexicographically so that every matrix and cochain index is reproducible.
"""

from __future__ import annotations

import json
from itertools import combinations

from .util import InputError

Face = tuple[int, ...]


def _vertex_positions(order, n: int) -> list[int]:
    """Invert a vertex order (possibly partial) into a position table."""
    if order is None:
        return list(range(n))
    pos = [-1] * n
    for rank, v in enumerate(order):
        if not 0 <= v < n or pos[v] != -1:
            raise InputError(f"order is not a permutation of 0..{n - 1}")
    # re-run assigning after validation pass
    pos = [-1] * n
    for rank, v in enumerate(order):
        pos[v] = rank
    if any(p < 0 for p in pos):
        raise InputError("order must mention every vertex exactly once")
    return pos


class SimplicialComplex:
    """Downward-closed family of faces on vertex set {0, ..., n-1}.

    The empty face is always present at dimension -1, every vertex is a
    0-face (isolated vertices are allowed), and the top dimension has at
    least one face.  Instances are immutable after construction and safe to
    share between threads.
    """

    __slots__ = ("n", "_faces", "_index")

    def __init__(self, n: int, faces_by_dim: dict[int, tuple[Face, ...]]):
        self.n = n
        self._faces = faces_by_dim
        self._index: dict[int, dict[Face, int]] = {}
        self._validate()

    # -- construction -----------------------------------------------------

    @staticmethod
    def from_facets(n: int, facets) -> "SimplicialComplex":
        """Downward closure of the given facets on n vertices."""
        if n <= 0:
            raise InputError("vertex count must be positive")
        closure: set[Face] = {()}
        for facet in facets:
            f = tuple(facet)
            if len(set(f)) != len(f):
                raise InputError(f"facet {list(facet)} repeats a vertex")
            for v in f:
                if not isinstance(v, int) or not 0 <= v < n:
                    raise InputError(f"facet vertex {v!r} outside 0..{n - 1}")
            f = tuple(sorted(f))
            for r in range(len(f) + 1):
                closure.update(combinations(f, r))
        closure.update((v,) for v in range(n))
        by_dim: dict[int, list[Face]] = {}
        for face in closure:
            by_dim.setdefault(len(face) - 1, []).append(face)
        faces = {d: tuple(sorted(fs)) for d, fs in by_dim.items()}
        return SimplicialComplex(n, faces)

    def _validate(self):
        if self.n <= 0:
            raise InputError("vertex count must be positive")
        if self._faces.get(-1) != ((),):
            raise InputError("the empty face must be the unique (-1)-face")
        if len(self._faces.get(0, ())) != self.n:
            raise InputError("every vertex must appear as a 0-face")
        k = max(self._faces)
        for d in range(-1, k + 1):
            fs = self._faces.get(d, ())
            if d == k and not fs:
                raise InputError("top dimension has no faces")
            if list(fs) != sorted(set(fs)):
                raise InputError(f"faces of dimension {d} not sorted/unique")
            for face in fs:
                if len(face) != d + 1 or list(face) != sorted(set(face)):
                    raise InputError(f"malformed face {face} in dimension {d}")
        # downward closure, desk scale: scan every facet of every face
        for d in range(1, k + 1):
            below = set(self._faces.get(d - 1, ()))
            for face in self._faces.get(d, ()):
                for sub in combinations(face, d):
                    if sub not in below:
                        raise InputError(f"missing face {sub} under {face}")

    # -- basic queries -----------------------------------------------------

    @property
    def dim(self) -> int:
        return max(self._faces)

    def faces(self, i: int) -> tuple[Face, ...]:
        """Faces of dimension i in lexicographic order; empty outside -1..dim."""
        return self._faces.get(i, ())

    def num_faces(self, i: int) -> int:
        return len(self._faces.get(i, ()))

    def face_index(self, i: int) -> dict[Face, int]:
        """Face -> position map for dimension i (cached)."""
        if i not in self._index:
            self._index[i] = {f: j for j, f in enumerate(self._faces.get(i, ()))}
        return self._index[i]

    def has_face(self, face) -> bool:
        f = tuple(sorted(face))
        return f in self.face_index(len(f) - 1)

    def degree(self, sigma) -> int:
        """Number of cofaces of sigma one dimension up."""
        s = tuple(sorted(sigma))
        if not self.has_face(s):
            raise InputError(f"face {s} not in the complex")
        d = len(s) - 1
        ss = set(s)
        return sum(1 for tau in self._faces.get(d + 1, ()) if ss.issubset(tau))

    def facets(self) -> tuple[Face, ...]:
        """Maximal faces, sorted lexicographically."""
        out = []
        for d in range(self.dim, -1, -1):
            for face in self._faces.get(d, ()):
                fs = set(face)
                above = self._faces.get(d + 1, ())
                if not any(fs.issubset(t) for t in above):
                    out.append(face)
        return tuple(sorted(out))

    def euler_characteristic(self) -> int:
        return sum((-1) ** d * self.num_faces(d) for d in range(0, self.dim + 1))

    # -- derived complexes ---------------------------------------------------

    def completion(self) -> "SimplicialComplex":
        """Add every (k+1)-set of vertices whose k-subsets are all faces.

        The lower skeleton is unchanged; only top-dimensional faces are
        added.  Requires dimension at least 1.
        """
        k = self.dim
        if k < 1:
            raise InputError("completion needs a complex of dimension >= 1")
        below = self.face_index(k - 1)
        top = set(self._faces[k])
        for cand in combinations(range(self.n), k + 1):
            if cand in top:
                continue
            if all(sub in below for sub in combinations(cand, k)):
                top.add(cand)
        faces = dict(self._faces)
        faces[k] = tuple(sorted(top))
        return SimplicialComplex(self.n, faces)

    def relabel(self, perm) -> "SimplicialComplex":
        """Apply a vertex permutation (perm[v] = new id of v)."""
        pos = _vertex_positions(perm, self.n)  # validates bijection
        del pos
        faces = {
            d: tuple(sorted(tuple(sorted(perm[v] for v in f)) for f in fs))
            for d, fs in self._faces.items()
        }
        return SimplicialComplex(self.n, faces)

    # -- file format -------------------------------------------------------

    def to_json_dict(self) -> dict:
        """Complex file format: 1-based labels, facets sorted lexicographically."""
        return {
            "n": self.n,
            "k": self.dim,
            "facets": [[v + 1 for v in f] for f in self.facets()],
        }

    @staticmethod
    def from_json_dict(data: dict) -> "SimplicialComplex":
        try:
            n = data["n"]
            facets = data["facets"]
        except (TypeError, KeyError) as exc:
            raise InputError(f"complex JSON missing field: {exc}") from exc
        if not isinstance(n, int):
            raise InputError("field 'n' must be an integer")
        zero_based = []
        for f in facets:
            zero_based.append([v - 1 for v in f])
        X = SimplicialComplex.from_facets(n, zero_based)
        if "k" in data and data["k"] != X.dim:
            raise InputError(f"declared k={data['k']} but facets give k={X.dim}")
        return X

    def __eq__(self, other):
        return (
            isinstance(other, SimplicialComplex)
            and self.n == other.n
            and self._faces == other._faces
        )

    def __hash__(self):
        return hash((self.n, tuple(sorted(self._faces.items()))))

    def __repr__(self):
        counts = ",".join(str(self.num_faces(d)) for d in range(self.dim + 1))
        return f"SimplicialComplex(n={self.n}, dim={self.dim}, faces=[{counts}])"


def from_facets(n: int, facets) -> SimplicialComplex:
    """Module-level alias for SimplicialComplex.from_facets."""
    return SimplicialComplex.from_facets(n, facets)


def incidence_number(tau, sigma, order=None) -> int:
    """Oriented incidence [tau:sigma] in {-1, 0, +1}.

    Equals (-1)**j when sigma is tau with its j-th vertex removed, with
    positions taken in the given linear order (numeric by default), and 0
    when sigma is not a facet of tau.  In particular [v:()] = +1.
    """
    t = tuple(sorted(tau))
    s = tuple(sorted(sigma))
    if len(t) != len(s) + 1:
        raise InputError("incidence needs dim(tau) = dim(sigma) + 1")
    if not set(s).issubset(t):
        return 0
    (removed,) = set(t) - set(s)
    if order is None:
        j = t.index(removed)
    else:
        pos = {v: r for r, v in enumerate(order)}
        j = sorted(t, key=pos.__getitem__).index(removed)
    return -1 if j % 2 else 1


def load_complex(path) -> SimplicialComplex:
    """Read a complex from a JSON file (1-based labels)."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read complex file: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON in {path}: {exc}") from exc
    return SimplicialComplex.from_json_dict(data)


def save_complex(X: SimplicialComplex, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(X.to_json_dict(), fh, indent=1, sort_keys=True)
        fh.write("\n")
