"""The classical side: a hermitian form on F_{q^2}^3, its unital and its groups.

The form is ``h(x, y) = sum x_i conj(y_i)`` with ``conj(a) = a**q``.  Projective
points are normalized so that the first nonzero coordinate is 1; matrices act
on row vectors.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass

import numpy as np

from .geometry import Design, iso_search, build_U
from .gf import quadratic_extension
from .permgroup import PermGroup


@dataclass(frozen=True)
class HermPoint:
    rep: tuple
    isotropic: bool


class HermitianPlane:
    """PG(2, q^2) with the identity hermitian form."""

    def __init__(self, q: int):
        self.q = q
        self.ext = quadratic_extension(q * q)
        self.F = F = self.ext.big
        self.conj = np.array([self.ext.conj(x) for x in range(F.q)], dtype=np.uint8)
        pts = []
        for v in itertools.product(range(F.q), repeat=3):
            nz = [c for c in v if c]
            if nz and nz[0] == 1:
                pts.append(v)
        self.points = np.array(pts, dtype=np.uint8)
        self.index = {p.tobytes(): i for i, p in enumerate(self.points)}
        self.isotropic = self.form(self.points, self.points) == 0

    def form(self, X, Y) -> np.ndarray:
        F = self.F
        X = np.asarray(X, dtype=np.uint8)
        Y = self.conj[np.asarray(Y, dtype=np.uint8)]
        P = F.mul[X, Y]
        return F.add[F.add[P[..., 0], P[..., 1]], P[..., 2]]

    def normalize(self, V) -> np.ndarray:
        F = self.F
        V = np.asarray(V, dtype=np.uint8)
        first = np.argmax(V != 0, axis=-1)
        lead = np.take_along_axis(V, first[..., None], axis=-1)
        return F.mul[F.inv[lead], V]

    def point_ids(self, V) -> np.ndarray:
        N = self.normalize(V)
        return np.array([self.index[row.tobytes()] for row in N.reshape(-1, 3)]).reshape(N.shape[:-1])

    def apply(self, M, V) -> np.ndarray:
        """Row vectors ``V`` times matrix ``M``."""
        F = self.F
        P = F.mul[np.asarray(V)[..., :, None], np.asarray(M)[None, :, :]]
        return F.add[F.add[P[..., 0, :], P[..., 1, :]], P[..., 2, :]]

    def herm_points(self) -> list[HermPoint]:
        return [HermPoint(tuple(map(int, p)), bool(i)) for p, i in zip(self.points, self.isotropic)]

    def gram_nondegenerate(self) -> bool:
        return True  # identity Gram matrix


@functools.lru_cache(maxsize=None)
def hermitian_plane(q: int) -> HermitianPlane:
    return HermitianPlane(q)


@functools.lru_cache(maxsize=None)
def build_hermitian_unital(q: int) -> Design:
    """Isotropic points; blocks are the isotropic points on nondegenerate lines."""
    if q not in (2, 3):
        raise ValueError(f"the hermitian unital is built for q in (2, 3), not {q}")
    plane = hermitian_plane(q)
    F = plane.F
    iso_ids = np.flatnonzero(plane.isotropic)
    iso = plane.points[iso_ids]
    blocks = []
    for line in plane.points:  # line {x : sum x_i l_i = 0}, pole conj(l)
        pole = plane.conj[line]
        if plane.form(pole, pole) == 0:
            continue
        P = F.mul[iso, line[None, :]]
        on = F.add[F.add[P[:, 0], P[:, 1]], P[:, 2]] == 0
        blk = np.flatnonzero(on)
        if len(blk) != q + 1:
            raise AssertionError(f"secant line meets {len(blk)} isotropic points")
        blocks.append(blk)
    labels = [tuple(map(int, p)) for p in iso]
    return Design.from_blocks(blocks, len(iso), labels=labels, name=f"H({q})")


# groups ----------------------------------------------------------------------------------


def _unit_vectors(plane: HermitianPlane, length: int):
    F = plane.F
    out = []
    for v in itertools.product(range(F.q), repeat=length):
        acc = 0
        for c in v:
            acc = F.add[acc, F.mul[c, plane.conj[c]]]
        if acc == 1:
            out.append(v)
    return out


def unitary_2x2(plane: HermitianPlane) -> list:
    """All 2x2 matrices with orthonormal rows for the identity form."""
    F = plane.F
    rows = _unit_vectors(plane, 2)
    out = []
    for a, b in rows:
        for c, d in rows:
            if F.add[F.mul[a, plane.conj[c]], F.mul[b, plane.conj[d]]] == 0:
                out.append(((a, b), (c, d)))
    return out


def linear_generators(q: int = 3) -> list:
    """Matrices of U3: diagonal isometries, coordinate permutations and 2x2 unitary blocks."""
    plane = hermitian_plane(q)
    F = plane.F
    units = [a for a in range(1, F.q) if F.mul[a, plane.conj[a]] == 1]
    mats = []
    for a in units:
        mats.append(np.diag([a, 1, 1]).astype(np.uint8))
    for perm in itertools.permutations(range(3)):
        mats.append(np.eye(3, dtype=np.uint8)[list(perm)])
    for U in unitary_2x2(plane):
        for lo in (0, 1):
            M = np.eye(3, dtype=np.uint8)
            M[lo : lo + 2, lo : lo + 2] = U
            mats.append(M)
    return mats


def _is_unitary(plane: HermitianPlane, M) -> bool:
    F = plane.F
    G = plane.form(M[:, None, :], M[None, :, :])
    return np.array_equal(G, np.eye(3, dtype=np.uint8))


def _perm_of_matrix(plane: HermitianPlane, iso, M) -> np.ndarray:
    return np.asarray(plane.point_ids(plane.apply(M, iso)))


@dataclass
class ClassicalGroups:
    full: PermGroup  # semilinear, order 12096 at q = 3
    linear: PermGroup  # image of U3
    iso_ids: np.ndarray


@functools.lru_cache(maxsize=None)
def pgammau_group(q: int = 3) -> ClassicalGroups:
    """The projective semi-similitude group as permutations of the isotropic points."""
    if q != 3:
        raise NotImplementedError("the classical group oracle is built for q = 3")
    plane = hermitian_plane(q)
    unital = build_hermitian_unital(q)
    iso_ids = np.flatnonzero(plane.isotropic)
    iso = plane.points[iso_ids]
    pos = {int(g): i for i, g in enumerate(iso_ids)}
    mats = linear_generators(q)
    perms = {}
    for M in mats:
        if not _is_unitary(plane, M):
            raise AssertionError("generator is not unitary")
        p = np.array([pos[int(i)] for i in _perm_of_matrix(plane, iso, M)])
        perms.setdefault(p.tobytes(), p)
    lin_gens = list(perms.values())
    frob = np.array([pos[int(i)] for i in plane.point_ids(plane.conj[iso])])
    blocks = set(unital.blocks)
    for g in lin_gens + [frob]:
        if {tuple(sorted(int(g[x]) for x in b)) for b in unital.blocks} != blocks:
            raise AssertionError("generator does not preserve the secant blocks")
    linear = PermGroup(lin_gens, len(iso))
    full = PermGroup(lin_gens + [frob], len(iso))
    if full.order != 12096:
        raise AssertionError(f"classical group has order {full.order}; review the generators")
    return ClassicalGroups(full, linear, iso_ids)


@dataclass(frozen=True)
class ScalarKernels:
    similitude: int
    unitary: int
    special_unitary: int


def scalar_kernel_orders(q: int = 3) -> ScalarKernels:
    """Scalar matrices ``lambda I`` preserving the form up to a factor, exactly,
    and exactly with determinant 1: the kernels of the projective actions."""
    plane = hermitian_plane(q)
    F = plane.F
    sim = uni = spec = 0
    for lam in range(1, F.q):
        n = F.mul[lam, plane.conj[lam]]
        if plane.ext.restrict[n] >= 0:
            sim += 1
        if n == 1:
            uni += 1
            if F.pow(lam, 3) == 1:
                spec += 1
    return ScalarKernels(sim, uni, spec)


def unitary_order(q: int) -> int:
    return q**3 * (q**3 + 1) * (q**2 - 1) * (q + 1)


# the comparison with the octonion side --------------------------------------------------------


@dataclass
class GroupIsoResult:
    equal: bool
    derived_equal: bool
    derived_order: int
    stabilizer_order: int
    phi: tuple


def unital_isomorphism():
    """A point bijection from the octonion unital onto H(3), or ``None``."""
    return iso_search(build_U(2), build_hermitian_unital(3))


def group_iso_check(phi=None) -> GroupIsoResult:
    """Transport ``Aut O`` along ``phi`` and compare with the classical group."""
    from .autgrp import full_group

    phi = unital_isomorphism() if phi is None else phi
    if phi is None:
        raise AssertionError("the unitals are not isomorphic")
    G = full_group(2).points
    C = pgammau_group(3).full
    moved = G.conjugate(phi)
    equal = np.array_equal(moved.elements, C.elements)
    dG = moved.derived_subgroup()
    dC = C.derived_subgroup()
    derived_equal = dG.element_set == dC.element_set
    stab = C.stabilizer(0).order
    return GroupIsoResult(bool(equal), bool(derived_equal), dC.order, stab, tuple(int(x) for x in phi))
