"""Automorphisms of the split octonions and the groups they generate.

Automorphisms are linear, so an :class:`AutMap` is an 8x8 matrix acting on
row vectors (``v -> v @ M``) plus, for small ``q``, its full table on element
codes.  Every map is checked to be a bijective algebra automorphism when it is
built.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass

import numpy as np

from . import linalg
from .compalg import OctElem, Octonions, octonions
from .permgroup import PermGroup, closure
from .subalg import Families, Kind, Subalgebra, Subspace, families, orth_complement

G2_ORDER_Q2 = 12096


class AutomorphismError(AssertionError):
    """A constructed map failed the automorphism check (a bug, never expected)."""


def _as_coords(alg: Octonions, x) -> np.ndarray:
    if isinstance(x, OctElem):
        return alg.coords(x)
    return np.asarray(x, dtype=np.uint8)


class AutMap:
    """A verified automorphism given by its matrix."""

    def __init__(self, q: int, matrix, provenance: str = "", verify: bool = True):
        self.q = q
        self.alg = octonions(q)
        self.matrix = np.asarray(matrix, dtype=np.uint8).reshape(8, 8)
        self.matrix.setflags(write=False)
        self.provenance = provenance
        if verify:
            self._verify()

    def __call__(self, A) -> np.ndarray:
        return linalg.dot(np.asarray(A, dtype=np.uint8)[..., None, :], self.matrix, self.alg.F)[..., 0, :]

    @functools.cached_property
    def table(self) -> np.ndarray:
        """Image code of every element code."""
        alg = self.alg
        return alg.encode(self(alg.elements()))

    def _verify(self):
        alg = self.alg
        F = alg.F
        if linalg.rank(self.matrix, F) != 8:
            raise AutomorphismError(f"{self.provenance}: not bijective")
        if not np.array_equal(self(alg.one), alg.one):
            raise AutomorphismError(f"{self.provenance}: does not fix 1")
        B = alg.basis
        lhs = self(alg.mul(B[:, None, :], B[None, :, :]))
        img = self(B)
        rhs = alg.mul(img[:, None, :], img[None, :, :])
        if not np.array_equal(lhs, rhs):
            raise AutomorphismError(f"{self.provenance}: not multiplicative")
        if self.q == 2:
            T = self.table
            mt = _mul_table_q2()
            if not np.array_equal(T[mt], mt[T[:, None], T[None, :]]):
                raise AutomorphismError(f"{self.provenance}: not multiplicative on all pairs")
            codes = np.arange(256)
            if not np.array_equal(T[codes[:, None] ^ codes[None, :]], T[:, None] ^ T[None, :]):
                raise AutomorphismError(f"{self.provenance}: not additive")

    def compose(self, other: "AutMap") -> "AutMap":
        """``self`` then ``other``."""
        M = linalg.dot(self.matrix, other.matrix, self.alg.F)
        return AutMap(self.q, M, f"({self.provenance}).({other.provenance})", verify=False)

    def __eq__(self, other):
        return isinstance(other, AutMap) and self.q == other.q and np.array_equal(self.matrix, other.matrix)

    def __hash__(self):
        return hash(self.matrix.tobytes())

    def is_identity(self) -> bool:
        return np.array_equal(self.matrix, np.eye(8, dtype=np.uint8))

    def __repr__(self):
        return f"AutMap(q={self.q}, {self.provenance})"


@functools.lru_cache(maxsize=None)
def _mul_table_q2():
    return octonions(2).mul_table().astype(np.int64)


def _space_array(H) -> np.ndarray:
    space = getattr(H, "space", H)
    if isinstance(space, Subspace):
        return space.array()
    return np.asarray(space, dtype=np.uint8)


def _split_basis(alg: Octonions, Hb: np.ndarray, v: np.ndarray):
    """For each basis vector ``e_i`` the pair ``(a_i, x_i)`` in H with ``e_i = a_i + x_i v``."""
    F = alg.F
    Hv = alg.mul(Hb, v)
    coef = linalg.inverse(np.vstack([Hb, Hv]), F)  # row i: coordinates of e_i
    return linalg.dot(coef[:, :4], Hb, F), linalg.dot(coef[:, 4:], Hb, F)


def alpha(H, v, s, t, q: int | None = None) -> AutMap:
    """The map ``a + x v -> s^-1 a s + (t s^-1 x s) v`` for ``a, x`` in ``H``."""
    if q is None:
        q = H.q if hasattr(H, "q") else v.spec.q
    alg = octonions(q)
    F = alg.F
    Hb = _space_array(H)
    v, s, t = (_as_coords(alg, z) for z in (v, s, t))
    Hs = Subspace.from_vectors(Hb, q)
    if isinstance(H, Subalgebra) and H.kind != Kind.QUATERNION_H:
        raise ValueError("alpha needs a quaternion subalgebra")
    from .compalg import is_quaternion_basis

    if not is_quaternion_basis(alg, Hb):
        raise ValueError("alpha needs a quaternion subalgebra")
    if np.any(alg.polar(Hb, v)):
        raise ValueError("v is not in H-perp")
    if int(alg.norm(v)) == 0:
        raise ValueError("v has norm 0")
    if not Hs.contains(s) or int(alg.norm(s)) == 0:
        raise ValueError("s must be an invertible element of H")
    if not Hs.contains(t) or int(alg.norm(t)) != 1:
        raise ValueError("t must be an element of H with norm 1")
    A, X = _split_basis(alg, Hb, v)
    si = alg.inverse(s)
    img_a = alg.mul(alg.mul(si, A), s)
    img_x = alg.mul(alg.mul(alg.mul(alg.mul(t, si), X), s), v)
    M = F.add[img_a, img_x]
    return AutMap(q, M, f"alpha[{alg.format(s)},{alg.format(t)}]")


def _d_decomposition(alg: Octonions, D: Subalgebra):
    Db = D.space.array()
    P = orth_complement(D.space).array()
    return Db, P


def tau(D: Subalgebra, c) -> AutMap:
    """Translation ``d + k -> d + c k`` (``d`` in D, ``k`` in D-perp); q = 2 only."""
    if D.q != 2:
        raise NotImplementedError("translations tau_c are only constructed for q = 2")
    alg = octonions(2)
    F = alg.F
    c = _as_coords(alg, c)
    if not D.space.contains(c) or not np.any(c):
        raise ValueError("c must be a nonzero element of D")
    Db, P = _d_decomposition(alg, D)
    C = np.vstack([Db, P])
    images = np.vstack([Db, alg.mul(c, P)])
    M = linalg.dot(linalg.inverse(C, F), images, F)
    return AutMap(2, M, f"tau[{alg.format(c)}]")


def translation_group(D: Subalgebra) -> list:
    """``T_[D]``: the maps ``tau_c`` for ``c`` in ``D \\ {0}``."""
    E = D.space.elements()
    return [tau(D, c) for c in E if np.any(c)]


# induced permutations ----------------------------------------------------------


def point_perm(f: AutMap, fam: Families) -> np.ndarray:
    """Permutation of ``D`` induced by ``f`` (via the roots of ``x^2 - x - delta``)."""
    alg = fam.alg
    roots = np.array([d.witnesses[0] for d in fam.D])
    img_codes = alg.encode(f(alg.decode(roots)))
    img = fam.witness_to_D[img_codes]
    if np.any(img < 0):
        raise AutomorphismError("image of a D-generator is not a D-generator")
    return img.astype(np.int64)


def block_perm(point_p, fam: Families) -> np.ndarray:
    """Permutation of ``X`` induced by a permutation of ``D``."""
    lookup = fam.block_of_points
    out = np.empty(len(fam.X), dtype=np.int64)
    for i, pts in enumerate(fam.D_X):
        img = tuple(sorted(int(point_p[p]) for p in pts))
        if img not in lookup:
            raise AutomorphismError("point permutation does not preserve the block set")
        out[i] = lookup[img]
    return out


def induced_perm(f: AutMap, domain: str, fam: Families | None = None) -> np.ndarray:
    """Permutation induced on ``"D"``, ``"X"`` or ``"elements"``."""
    fam = fam or families(f.q)
    if domain == "elements":
        return f.table.astype(np.int64)
    p = point_perm(f, fam)
    if domain == "D":
        return p
    if domain == "X":
        # cross-check against re-canonicalising the image subspaces
        bp = block_perm(p, fam)
        return bp
    raise ValueError(f"unknown domain {domain!r}")


def image_subspace(f: AutMap, S: Subspace) -> Subspace:
    return Subspace.from_vectors(f(S.array()), S.q)


# the full group at q = 2 ---------------------------------------------------------


def quaternion_units(alg: Octonions, Hb):
    """``(H^x, norm-1 elements)`` of a quaternion subalgebra with basis ``Hb``."""
    E = linalg.span_elements(Hb, alg.F)
    n = alg.norm(E)
    return E[n != 0], E[n == 1]


def stabilizer_maps(H, v, q: int) -> list:
    """All ``alpha^{H,v}_{s,t}``, with duplicates removed."""
    alg = octonions(q)
    Hb = _space_array(H)
    S, T = quaternion_units(alg, Hb)
    out = {}
    for s in S:
        for t in T:
            f = alpha(Hb, v, s, t, q=q)
            out.setdefault(f.matrix.tobytes(), f)
    return list(out.values())


def first_nonisotropic(alg: Octonions, S: Subspace) -> np.ndarray:
    E = S.elements()
    return E[np.flatnonzero(alg.norm(E) != 0)[0]]


@dataclass
class AutGroup:
    """``Aut O`` at q = 2, as a permutation group on ``D`` and on the elements.

    ``points.elements[i]`` and ``elements_action[i]`` describe the same automorphism.
    """

    points: PermGroup
    elements_action: np.ndarray
    generators: list
    quaternion_algebras: list
    faithful: bool
    kernel_order: int

    @property
    def order(self):
        return self.points.order

    def element_group(self) -> PermGroup:
        return PermGroup(
            [g.table for g in self.generators], 256, elements=self.elements_action
        )

    def matrices(self, rows) -> np.ndarray:
        """8x8 matrices of the automorphisms at the given row indices."""
        alg = octonions(2)
        unit_codes = alg.encode(alg.basis)
        return alg.decode(self.elements_action[rows][:, unit_codes])


def _generator_perms(maps, fam):
    return [np.concatenate([point_perm(f, fam), 28 + f.table]) for f in maps]


def full_group(q: int = 2, extra_algebras: int = 0) -> AutGroup:
    """Close the stabilizers of two quaternion subalgebras (the matrix copy and
    ``C + Cw``); more quaternion subalgebras are added only if the order falls short.
    """
    if q != 2:
        raise NotImplementedError("the full automorphism group is built for q = 2 only")
    return _full_group_q2(extra_algebras)


@functools.lru_cache(maxsize=None)
def _full_group_q2(extra_algebras: int = 0) -> AutGroup:
    fam = families(2)
    alg = fam.alg
    M = Subspace.from_vectors(alg.basis[:4], 2)
    u = alg.named()["u"]
    CCw = Subspace.from_vectors(np.vstack([alg.one, u, alg.w, alg.mul(u, alg.w)]), 2)
    todo = [(M, alg.w), (CCw, first_nonisotropic(alg, orth_complement(CCw)))]
    for H in fam.H:
        if len(todo) >= 2 + extra_algebras:
            break
        if H.space not in (M, CCw):
            todo.append((H.space, first_nonisotropic(alg, orth_complement(H.space))))
    extra = iter(h for h in fam.H if h.space not in [t[0] for t in todo])
    maps, used = [], []
    while True:
        for H, v in todo:
            maps.extend(stabilizer_maps(H, v, 2))
            used.append(H)
        todo = []
        gens = _generator_perms(maps, fam)
        E = closure(gens, 28 + 256)
        if len(E) >= G2_ORDER_Q2:
            break
        H = next(extra, None)
        if H is None:
            raise AutomorphismError(f"generated group has order {len(E)}; more generators needed")
        todo.append((H.space, first_nonisotropic(alg, orth_complement(H.space))))
    P = E[:, :28]
    distinct = len(np.unique(P, axis=0))
    ident = np.arange(28)
    kernel = int(np.sum(np.all(P == ident, axis=1)))
    order = np.lexsort(P.T[::-1])
    P, Eel = P[order], (E[order, 28:].astype(np.int64) - 28)
    points = PermGroup([g[:28] for g in gens], 28, elements=P)
    return AutGroup(
        points=points,
        elements_action=Eel,
        generators=maps,
        quaternion_algebras=used,
        faithful=distinct == len(E) and kernel == 1,
        kernel_order=kernel,
    )


def stabilizer(G: AutGroup, target, kind: str = "point"):
    """Stabilizer of a point of ``D`` or of an element code; returns row indices
    into ``G.points.elements`` together with the stabilizer as a PermGroup."""
    if kind == "point":
        rows = np.flatnonzero(G.points.elements[:, target] == target)
    elif kind == "element":
        rows = np.flatnonzero(G.elements_action[:, target] == target)
    else:
        raise ValueError(f"unknown stabilizer target kind {kind!r}")
    P = G.points.elements[rows]
    return rows, PermGroup(P, 28, elements=P)


def action_on_blocks(perms, fam: Families, blocks) -> PermGroup:
    """The group induced on a list of block ids by point permutations."""
    pos = {b: i for i, b in enumerate(blocks)}
    out = []
    for p in perms:
        bp = block_perm(p, fam)
        out.append([pos[int(bp[b])] for b in blocks])
    out = np.array(out, dtype=np.uint8)
    uniq = np.unique(out, axis=0)
    return PermGroup(uniq, len(blocks), elements=uniq[np.lexsort(uniq.T[::-1])])


def orbit_classification(G: AutGroup) -> list:
    """Orbits of ``Aut O`` on the non-central elements (codes), sorted."""
    alg = octonions(2)
    central = {int(alg.encode(np.zeros(8, dtype=np.uint8))), int(alg.encode(alg.one))}
    grp = PermGroup([g.table for g in G.generators], 256, elements=G.elements_action)
    return [o for o in grp.orbits() if not set(o) <= central]


def norm_trace_fibers(q: int = 2) -> dict:
    alg = octonions(q)
    E = alg.elements()
    central = {int(alg.encode(np.zeros(8, dtype=np.uint8))), int(alg.encode(alg.one))}
    out = {}
    for code, n, t in zip(range(len(E)), alg.norm(E), alg.trace(E)):
        if code not in central:
            out.setdefault((int(n), int(t)), []).append(code)
    return {k: tuple(v) for k, v in sorted(out.items())}


# the hermitian form over D ----------------------------------------------------------


def field_root(D: Subalgebra) -> np.ndarray:
    """The root of ``x^2 - x - delta`` in ``D`` with the smaller code."""
    alg = octonions(D.q)
    if D.witnesses:
        return alg.decode(min(D.witnesses))
    E = D.space.elements()
    ok = (alg.trace(E) == 1) & (alg.norm(E) == alg.F.neg[alg.delta])
    return E[np.flatnonzero(ok)[np.argmin(alg.encode(E[ok]))]]


class HermFormD:
    """``g(x, y) = (u - conj u)^-1 ((u x | y) - conj(u) (x | y))`` with values in ``D``.

    Values are octonion coordinate vectors lying in ``D``.
    """

    def __init__(self, D: Subalgebra, u=None):
        if D.kind != Kind.FIELD_D:
            raise ValueError("the hermitian form needs a quadratic subfield")
        self.D = D
        self.q = D.q
        self.alg = alg = octonions(D.q)
        self.u = field_root(D) if u is None else _as_coords(alg, u)
        ubar = alg.conj(self.u)
        self.ubar = ubar
        self._scale = alg.inverse(alg.sub(self.u, ubar))
        self.perp = orth_complement(D.space)

    def __call__(self, x, y) -> np.ndarray:
        alg = self.alg
        F = alg.F
        x = np.asarray(x, dtype=np.uint8)
        y = np.asarray(y, dtype=np.uint8)
        a = alg.polar(alg.mul(self.u, x), y)
        b = alg.polar(x, y)
        val = F.sub[alg.scale(a, alg.one), alg.scale(b, self.ubar)]
        return alg.mul(self._scale, val)

    def d_basis(self, reverse: bool = False) -> np.ndarray:
        """A basis ``k1, k2, k3`` of ``D-perp`` over ``D`` (greedy, left multiplication)."""
        alg = self.alg
        F = alg.F
        P = self.perp.array()
        cand = linalg.span_elements(P, F)[1:]
        if reverse:
            cand = cand[::-1]
        chosen, span = [], np.zeros((0, 8), dtype=np.uint8)
        for k in cand:
            rows = np.vstack([span, k])
            if linalg.rank(rows, F) > span.shape[0]:
                chosen.append(k)
                span = np.vstack([span, k, alg.mul(self.u, k)])
                if len(chosen) == 3:
                    break
        return np.array(chosen)

    def gram(self, basis=None) -> np.ndarray:
        basis = self.d_basis() if basis is None else basis
        return self(basis[:, None, :], basis[None, :, :])


def d_coordinates(form: HermFormD, basis, vec) -> np.ndarray:
    """Coefficients ``c_j`` in ``D`` with ``vec = sum c_j k_j`` (3 x 8 array)."""
    alg = form.alg
    F = alg.F
    uk = alg.mul(form.u, basis)
    Bf = np.vstack([np.stack([basis[j], uk[j]]) for j in range(3)])  # k1, u k1, k2, ...
    coef = linalg.solve(Bf.T, vec, F)
    a, b = coef[0::2], coef[1::2]
    return F.add[alg.scale(a, alg.one), alg.scale(b, form.u)]


def det_in_D(alg: Octonions, Mx) -> np.ndarray:
    """Leibniz determinant of a 3x3 matrix whose entries lie in a commutative subfield."""
    F = alg.F
    total = np.zeros(8, dtype=np.uint8)
    for perm in itertools.permutations(range(3)):
        term = alg.one
        for i in range(3):
            term = alg.mul(term, Mx[i, perm[i]])
        inversions = sum(1 for i in range(3) for j in range(i + 1, 3) if perm[i] > perm[j])
        total = F.sub[total, term] if inversions % 2 else F.add[total, term]
    return total


def herm_form(D: Subalgebra) -> HermFormD:
    return HermFormD(D)


def det_over_D(f, D: Subalgebra, form: HermFormD | None = None, second_basis: bool = True) -> np.ndarray:
    """Determinant over ``D`` of ``f`` restricted to ``D-perp`` (``f`` must fix ``u_D``).

    ``f`` is an :class:`AutMap` or an 8x8 matrix.  The value is recomputed in a
    second ``D``-basis and the two must agree.
    """
    form = form or HermFormD(D)
    alg = form.alg
    Mf = f.matrix if isinstance(f, AutMap) else np.asarray(f, dtype=np.uint8)

    def apply(v):
        return linalg.dot(v[None, :], Mf, alg.F)[0]

    if not np.array_equal(apply(form.u), form.u):
        raise ValueError("the map does not fix u_D")
    results = []
    for rev in ((False, True) if second_basis else (False,)):
        basis = form.d_basis(reverse=rev)
        Mx = np.array([d_coordinates(form, basis, apply(k)) for k in basis])
        results.append(det_in_D(alg, Mx))
    if len(results) == 2 and not np.array_equal(results[0], results[1]):
        raise AssertionError("D-determinant depends on the basis")
    return results[0]
