"""Subspaces and subalgebras of the split octonions.

A :class:`Subspace` is held in reduced row echelon form, which makes equality
and hashing canonical.  The four families enumerated here are

* ``D`` -- 2-dim subalgebras isomorphic to F_{q^2} (anisotropic norm, nonzero polar form);
* ``X`` -- 4-dim subalgebras ``D + Dz`` with ``z`` in D-perp, ``z^2 = 0 != z``;
* ``H`` -- quaternion subalgebras;
* ``L`` -- 2-dim subalgebras with trivial multiplication.
"""

from __future__ import annotations

import csv
import enum
import functools
import io
from dataclasses import dataclass, field as dc_field

import numpy as np

from . import linalg
from .compalg import OctElem, Octonions, octonions

ENUMERABLE_Q = (2, 3, 4)


class Kind(str, enum.Enum):
    FIELD_D = "FIELD_D"
    NIL_L = "NIL_L"
    MIXED_X = "MIXED_X"
    QUATERNION_H = "QUATERNION_H"
    OTHER = "OTHER"


@dataclass(frozen=True, order=True)
class Subspace:
    """An F_q-subspace of the octonions, stored by its canonical echelon basis."""

    q: int
    basis: tuple

    @classmethod
    def from_vectors(cls, vectors, q: int) -> "Subspace":
        F = octonions(q).F
        R = linalg.rref(linalg.as_rows(vectors, 8), F)
        return cls(q, tuple(tuple(int(c) for c in row) for row in R))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def array(self) -> np.ndarray:
        return np.array(self.basis, dtype=np.uint8).reshape(self.dim, 8)

    def contains(self, vec) -> bool:
        alg = octonions(self.q)
        v = alg.coords(vec) if isinstance(vec, OctElem) else np.asarray(vec, dtype=np.uint8)
        return linalg.rank(np.vstack([self.array(), v]), alg.F) == self.dim

    def contains_space(self, other: "Subspace") -> bool:
        if other.dim > self.dim:
            return False
        alg = octonions(self.q)
        return linalg.rank(np.vstack([self.array(), other.array()]), alg.F) == self.dim

    def elements(self) -> np.ndarray:
        """All elements, as coordinate rows."""
        alg = octonions(self.q)
        return linalg.span_elements(self.array(), alg.F)

    def codes(self) -> np.ndarray:
        return octonions(self.q).encode(self.elements())

    def intersection(self, other: "Subspace") -> "Subspace":
        # x in both iff x is orthogonal (dot-product sense) to both annihilators
        F = octonions(self.q).F
        ann = np.vstack([linalg.nullspace(self.array(), F, 8), linalg.nullspace(other.array(), F, 8)])
        return Subspace.from_vectors(linalg.nullspace(ann, F, 8), self.q)

    def __repr__(self):
        alg = octonions(self.q)
        return "Subspace(q=%d, <%s>)" % (self.q, ", ".join(alg.format(r) for r in self.array()))


@dataclass(frozen=True)
class Subalgebra:
    space: Subspace
    kind: Kind
    witnesses: tuple = dc_field(default=(), compare=False)

    @property
    def q(self):
        return self.space.q

    @property
    def dim(self):
        return self.space.dim

    def __lt__(self, other):
        return self.space < other.space


def _closure_basis(alg: Octonions, B: np.ndarray) -> np.ndarray:
    F = alg.F
    B = linalg.rref(B, F)
    while True:
        prods = alg.mul(B[:, None, :], B[None, :, :]).reshape(-1, 8)
        B2 = linalg.rref(np.vstack([B, prods]), F)
        if B2.shape[0] == B.shape[0]:
            return B
        B = B2


def span_closure(generators, q: int | None = None) -> Subalgebra:
    """Smallest subalgebra containing the generators (1 is not added)."""
    gens = list(generators)
    if not gens:
        raise ValueError("span_closure needs at least one generator")
    if q is None:
        q = gens[0].spec.q if isinstance(gens[0], OctElem) else None
        if q is None:
            raise ValueError("q is required for raw coordinate generators")
    alg = octonions(q)
    rows = [alg.coords(g) if isinstance(g, OctElem) else np.asarray(g, dtype=np.uint8) for g in gens]
    B = _closure_basis(alg, np.array(rows))
    space = Subspace(q, tuple(tuple(int(c) for c in r) for r in B))
    return Subalgebra(space, classify(space))


def orth_complement(S: Subspace) -> Subspace:
    """``{o : (o|s) = 0 for all s in S}`` with respect to the polar form."""
    alg = octonions(S.q)
    if S.dim == 0:
        return Subspace(S.q, tuple(tuple(int(c) for c in r) for r in alg.basis))
    M = linalg.dot(S.array(), alg.gram, alg.F)
    N = linalg.nullspace(M, alg.F, 8)
    return Subspace(S.q, tuple(tuple(int(c) for c in r) for r in N))


def _is_closed(alg, B) -> bool:
    prods = alg.mul(B[:, None, :], B[None, :, :]).reshape(-1, 8)
    return linalg.rank(np.vstack([B, prods]), alg.F) == B.shape[0]


def has_trivial_multiplication(S: Subspace) -> bool:
    alg = octonions(S.q)
    B = S.array()
    return not np.any(alg.mul(B[:, None, :], B[None, :, :]))


def classify_dim2(S) -> Kind:
    """FIELD_D, NIL_L or OTHER for a 2-dim subalgebra."""
    S = getattr(S, "space", S)
    if S.dim != 2:
        raise ValueError(f"classify_dim2 needs a 2-dim subalgebra, got dim {S.dim}")
    alg = octonions(S.q)
    B = S.array()
    if not _is_closed(alg, B):
        raise ValueError("subspace is not multiplicatively closed")
    if has_trivial_multiplication(S):
        return Kind.NIL_L
    E = S.elements()[1:]  # drop 0 (code order puts it first)
    anisotropic = bool(np.all(alg.norm(E) != 0))
    polar_nonzero = bool(np.any(alg.polar(B[:, None, :], B[None, :, :])))
    if anisotropic and polar_nonzero:
        return Kind.FIELD_D
    return Kind.OTHER


def radical(S: Subspace) -> Subspace:
    """``S`` intersected with its orthogonal complement."""
    return S.intersection(orth_complement(S))


def classify(S: Subspace) -> Kind:
    """Kind of a subalgebra of any dimension (OTHER outside the named families)."""
    alg = octonions(S.q)
    B = S.array()
    if S.dim == 0 or not _is_closed(alg, B):
        return Kind.OTHER
    if S.dim == 2:
        return classify_dim2(S)
    if S.dim == 4 and S.contains(alg.one):
        Q = radical(S)
        # trivial-multiplication radical first (cheap exit), quaternion second
        if Q.dim == 2 and has_trivial_multiplication(Q):
            return Kind.MIXED_X
        if Q.dim == 0:
            return Kind.QUATERNION_H
    return Kind.OTHER


def span_dichotomy(D: Subalgebra, E: Subalgebra) -> tuple[Kind, Subalgebra]:
    """Classify the algebra generated by two distinct members of ``D``."""
    if D.space == E.space:
        raise ValueError("span_dichotomy needs two distinct subalgebras")
    alg = octonions(D.q)
    B = _closure_basis(alg, np.vstack([D.space.array(), E.space.array()]))
    space = Subspace(D.q, tuple(tuple(int(c) for c in r) for r in B))
    kind = classify(space)
    if space.dim != 4 or kind not in (Kind.QUATERNION_H, Kind.MIXED_X):
        raise AssertionError(f"span of two quadratic subfields has dim {space.dim}, kind {kind}")
    return kind, Subalgebra(space, kind)


def _rows_to_space(R, q):
    return Subspace(q, tuple(tuple(int(c) for c in r) for r in R))


class Families:
    """Enumerated families ``D, X, H`` (and ``L`` on demand) for one ``q``,
    with their incidence relations.  Members are listed in canonical order."""

    def __init__(self, q: int):
        if q not in ENUMERABLE_Q:
            raise ValueError(f"enumeration is supported for q in {ENUMERABLE_Q}, not {q}")
        self.q = q
        self.alg = octonions(q)
        self._build_D()

    # D ------------------------------------------------------------------------

    def _build_D(self):
        alg, F, q = self.alg, self.alg.F, self.q
        gens = field_generators(alg)
        codes = alg.encode(gens)
        partner = alg.encode(alg.sub(alg.one, gens))
        key = np.minimum(codes, partner)
        _, first = np.unique(key, return_index=True)
        spaces = []
        for i in first:
            o = gens[i]
            S = _rows_to_space(linalg.rref(np.vstack([alg.one, o]), F), q)
            w = tuple(sorted((int(codes[i]), int(partner[i]))))
            spaces.append((S, w))
        spaces.sort()
        self.D = [Subalgebra(S, Kind.FIELD_D, w) for S, w in spaces]
        self.D_index = {d.space: i for i, d in enumerate(self.D)}
        wit = np.full(alg.size, -1, dtype=np.int32)
        for i, d in enumerate(self.D):
            wit[list(d.witnesses)] = i
        self.witness_to_D = wit

    def root(self, i: int) -> np.ndarray:
        """The canonical root ``u_D`` of ``x^2 - x - delta`` in ``D[i]`` (smaller code)."""
        return self.alg.decode(self.D[i].witnesses[0])

    def perp_basis(self, i: int) -> np.ndarray:
        return orth_complement(self.D[i].space).array()

    def _lines_in_perp(self, i: int, isotropic: bool):
        """Representatives ``z`` of the D-lines ``Dz`` in D-perp of the given type."""
        alg = self.alg
        u = self.root(i)
        E = linalg.span_elements(self.perp_basis(i), alg.F)[1:]
        n = alg.norm(E)
        E = E[n == 0] if isotropic else E[n != 0]
        uE = alg.mul(u, E)
        # the line Dz = {a z + b (u z)}; key it by its least code
        C = linalg.coefficient_vectors(alg.F, 2)[1:]
        line = alg.add(alg.scale(C[None, :, 0], E[:, None, :]), alg.scale(C[None, :, 1], uE[:, None, :]))
        keys = alg.encode(line).min(axis=1)
        _, first = np.unique(keys, return_index=True)
        return E[first], uE[first]

    def _build_4dim(self, isotropic: bool, kind: Kind):
        alg, F, q = self.alg, self.alg.F, self.q
        found = {}
        for i in range(len(self.D)):
            Z, uZ = self._lines_in_perp(i, isotropic)
            u = self.root(i)
            for z, uz in zip(Z, uZ):
                S = _rows_to_space(linalg.rref(np.vstack([alg.one, u, z, uz]), F), q)
                found.setdefault(S, None)
        spaces = sorted(found)
        return [Subalgebra(S, kind) for S in spaces]

    @functools.cached_property
    def X(self) -> list:
        return self._build_4dim(True, Kind.MIXED_X)

    @functools.cached_property
    def H(self) -> list:
        return self._build_4dim(False, Kind.QUATERNION_H)

    @functools.cached_property
    def L(self) -> list:
        alg, F, q = self.alg, self.alg.F, self.q
        E = alg.elements() if alg.size <= 65536 else None
        if E is None:
            raise ValueError("L enumeration needs q <= 4")
        nil = E[(alg.norm(E) == 0) & (alg.trace(E) == 0)][1:]
        found = {}
        for n in nil:
            left = alg.mul(n, nil)
            right = alg.mul(nil, n)
            ok = ~np.any(left, axis=1) & ~np.any(right, axis=1)
            for m in nil[ok]:
                R = linalg.rref(np.vstack([n, m]), F)
                if R.shape[0] == 2:
                    found.setdefault(_rows_to_space(R, q), None)
        return [Subalgebra(S, Kind.NIL_L) for S in sorted(found)]

    # incidence ------------------------------------------------------------------

    def _points_of(self, family) -> list:
        """For each 4-dim member, the sorted ids of the D's it contains."""
        bases = np.array([Y.space.array() for Y in family])
        out = []
        for start in range(0, len(family), 2048):
            chunk = linalg.span_elements_batch(bases[start : start + 2048], self.alg.F)
            ids = self.witness_to_D[self.alg.encode(chunk)]
            out.extend(tuple(np.unique(row[row >= 0]).tolist()) for row in ids)
        return out

    @functools.cached_property
    def D_X(self) -> list:
        return self._points_of(self.X)

    @functools.cached_property
    def D_H(self) -> list:
        return self._points_of(self.H)

    def _invert(self, rel):
        inv = [[] for _ in self.D]
        for y, pts in enumerate(rel):
            for d in pts:
                inv[d].append(y)
        return [tuple(v) for v in inv]

    @functools.cached_property
    def X_D(self) -> list:
        return self._invert(self.D_X)

    @functools.cached_property
    def H_D(self) -> list:
        return self._invert(self.D_H)

    @functools.cached_property
    def X_index(self) -> dict:
        return {x.space: i for i, x in enumerate(self.X)}

    @functools.cached_property
    def block_of_points(self) -> dict:
        """Point set (sorted tuple of D ids) of each X -> its id."""
        return {pts: i for i, pts in enumerate(self.D_X)}


@functools.lru_cache(maxsize=None)
def families(q: int) -> Families:
    return Families(q)


def field_generators(alg: Octonions) -> np.ndarray:
    """All elements of trace 1 and norm ``-delta`` (each D holds exactly two).

    Built as ``a + x w`` with ``tr(a) = 1`` and ``N(x) = N(a) + delta``.
    """
    F = alg.F
    Q = linalg.coefficient_vectors(F, 4)
    tq = F.add[Q[:, 0], Q[:, 3]]
    nq = F.sub[F.mul[Q[:, 0], Q[:, 3]], F.mul[Q[:, 1], Q[:, 2]]]
    A = Q[tq == 1]
    target = F.add[nq[tq == 1], alg.delta]
    by_norm = [Q[nq == v] for v in range(F.q)]
    parts = []
    for v in range(F.q):
        As = A[target == v]
        Xs = by_norm[v]
        if len(As) and len(Xs):
            parts.append(
                np.concatenate(
                    [np.repeat(As, len(Xs), axis=0), np.tile(Xs, (len(As), 1))],
                    axis=1,
                )
            )
    return np.concatenate(parts)


def enumerate_family(kind: str, q: int) -> list:
    """Complete, duplicate-free, canonically ordered list of one family."""
    kind = kind.upper()
    if kind == "D":
        if q in ENUMERABLE_Q:
            return families(q).D
        return _enumerate_D_large(q)
    fam = families(q)
    if kind == "X":
        return fam.X
    if kind == "H":
        return fam.H
    if kind == "L":
        return fam.L
    raise ValueError(f"unknown family {kind!r}")


def _enumerate_D_large(q: int) -> list:
    alg = octonions(q)
    gens = field_generators(alg)
    codes = alg.encode(gens)
    partner = alg.encode(alg.sub(alg.one, gens))
    keep = codes < partner
    out = []
    for o in gens[keep]:
        out.append(Subalgebra(_rows_to_space(linalg.rref(np.vstack([alg.one, o]), alg.F), q), Kind.FIELD_D))
    out.sort()
    return out


def incidence(relation: str, member: Subalgebra, q: int | None = None) -> list:
    """One of ``X_D, H_D, D_X, D_H`` for a given member, as a list of subalgebras."""
    fam = families(member.q if q is None else q)
    if relation == "X_D":
        return [fam.X[i] for i in fam.X_D[fam.D_index[member.space]]]
    if relation == "H_D":
        return [fam.H[i] for i in fam.H_D[fam.D_index[member.space]]]
    if relation == "D_X":
        return [fam.D[i] for i in fam.D_X[fam.X_index[member.space]]]
    if relation == "D_H":
        idx = {h.space: i for i, h in enumerate(fam.H)}
        return [fam.D[i] for i in fam.D_H[idx[member.space]]]
    raise ValueError(f"unknown incidence relation {relation!r}")


def to_csv(members, q: int) -> str:
    """One row per subalgebra: kind, then basis vectors in canonical encoding."""
    alg = octonions(q)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    width = max((m.dim for m in members), default=0)
    w.writerow(["kind"] + [f"b{i}" for i in range(width)])
    for m in members:
        w.writerow([m.kind.value] + [alg.format(r) for r in m.space.array()])
    return buf.getvalue()
