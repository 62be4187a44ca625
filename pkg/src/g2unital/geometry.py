"""Finite incidence structures built from the octonion subalgebras.

Points of a :class:`Design` are always ``0 .. v-1``; ``labels`` records what
each id stands for (a subalgebra, a projective point, ...).  Blocks are sorted
tuples and the block list itself is sorted, so two designs with the same
incidence compare equal.
"""

from __future__ import annotations

import functools
import itertools
from collections import Counter
from dataclasses import dataclass, field
from math import comb

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from . import kernels
from .subalg import Kind, families, span_dichotomy


@dataclass(frozen=True)
class Design:
    points: tuple
    blocks: tuple
    labels: tuple | None = field(default=None, compare=False, repr=False)
    name: str = field(default="", compare=False)

    @classmethod
    def from_blocks(cls, blocks, v: int | None = None, labels=None, name: str = "") -> "Design":
        blocks = sorted(set(tuple(sorted(int(p) for p in b)) for b in blocks))
        if v is None:
            v = 1 + max((b[-1] for b in blocks if b), default=-1)
        for b in blocks:
            if b and (b[0] < 0 or b[-1] >= v):
                raise ValueError(f"block {b} is not inside the point set 0..{v - 1}")
        return cls(tuple(range(v)), tuple(blocks), None if labels is None else tuple(labels), name)

    @property
    def v(self) -> int:
        return len(self.points)

    @property
    def b(self) -> int:
        return len(self.blocks)

    @functools.cached_property
    def masks(self) -> list[int]:
        return [sum(1 << p for p in blk) for blk in self.blocks]

    @functools.cached_property
    def blocks_through(self) -> list[tuple]:
        out = [[] for _ in self.points]
        for i, blk in enumerate(self.blocks):
            for p in blk:
                out[p].append(i)
        return [tuple(x) for x in out]

    def replication(self) -> list[int]:
        return [len(x) for x in self.blocks_through]

    def relabel(self, phi) -> "Design":
        """Image design under the point map ``i -> phi[i]``."""
        return Design.from_blocks(([phi[p] for p in b] for b in self.blocks), self.v, name=self.name)


@dataclass(frozen=True)
class DesignReport:
    v: int
    b: int
    k: int | None
    r: int | None
    lam: int | None
    is_2_design: bool

    def describe(self) -> str:
        if not self.is_2_design:
            return f"not a 2-design (v={self.v}, b={self.b})"
        return f"2-({self.v},{self.k},{self.lam}), r = {self.r}"


def check_design(d: Design) -> DesignReport:
    """Block size, replication and pair coverage; non-uniform structures are reported."""
    if d.v == 0 or d.b == 0:
        raise ValueError("empty design")
    sizes = {len(b) for b in d.blocks}
    reps = set(d.replication())
    pair = Counter()
    for blk in d.blocks:
        pair.update(itertools.combinations(blk, 2))
    all_pairs = comb(d.v, 2)
    lams = set(pair.values())
    if len(pair) < all_pairs:
        lams.add(0)
    k = sizes.pop() if len(sizes) == 1 else None
    r = reps.pop() if len(reps) == 1 else None
    lam = lams.pop() if len(lams) == 1 else None
    ok = k is not None and lam is not None and lam > 0 and r is not None
    return DesignReport(d.v, d.b, k, r, lam, ok)


def build_U(q: int = 2) -> Design:
    """Points are the quadratic subfields, blocks the point sets of the nil-radical algebras."""
    fam = families(q)
    return Design.from_blocks(fam.D_X, len(fam.D), labels=[d.space for d in fam.D], name=f"U(q={q})")


def build_V(q: int = 2) -> Design:
    """Same points, blocks from both four-dimensional families (inspection only).

    Blocks are point sets, so members with equal point sets are merged.
    """
    fam = families(q)
    blocks = list(fam.D_X) + list(fam.D_H)
    return Design.from_blocks(blocks, len(fam.D), labels=[d.space for d in fam.D], name=f"V(q={q})")


# reference designs ---------------------------------------------------------------------


def affine_plane_3() -> Design:
    """AG(2,3): points ``x + 3y`` of F3^2, lines the cosets of the four 1-dim subspaces."""
    pts = [(x, y) for y in range(3) for x in range(3)]
    lines = set()
    for dx, dy in ((1, 0), (0, 1), (1, 1), (1, 2)):
        for x0, y0 in pts:
            lines.add(tuple(sorted(((x0 + t * dx) % 3) + 3 * ((y0 + t * dy) % 3) for t in range(3))))
    return Design.from_blocks(lines, 9, labels=pts, name="AG(2,3)")


def projective_plane(p: int) -> Design:
    """PG(2,p) for a prime ``p``: normalized points, lines as their zero sets."""
    pts = []
    for v in itertools.product(range(p), repeat=3):
        nz = [c for c in v if c]
        if nz and nz[0] == 1:
            pts.append(v)
    P = np.array(pts)
    lines = [np.flatnonzero((P @ np.array(l)) % p == 0) for l in pts]
    return Design.from_blocks(lines, len(pts), labels=pts, name=f"PG(2,{p})")


# O'Nan configurations --------------------------------------------------------------------


@dataclass(frozen=True)
class OnanResult:
    configurations: tuple
    examined: int

    def summary(self) -> str:
        return f"{len(self.configurations)} configurations found; {self.examined} block 4-subsets examined"


def onan_search(d: Design) -> OnanResult:
    """Every 4-set of blocks meeting pairwise in one point, in six distinct points."""
    configs, examined = kernels.onan_search(d.masks)
    return OnanResult(tuple(tuple(int(i) for i in c) for c in configs), int(examined))


# isomorphism search -----------------------------------------------------------------------


def _fingerprints(d: Design) -> list:
    sizes = [len(b) for b in d.blocks]
    base = [(len(bt), tuple(sorted(sizes[i] for i in bt))) for bt in d.blocks_through]
    # refine once by the multiset of neighbour fingerprints along blocks
    out = []
    for p, bt in enumerate(d.blocks_through):
        nb = Counter(base[x] for i in bt for x in d.blocks[i] if x != p)
        out.append((base[p], tuple(sorted(nb.items()))))
    return out


def _search_order(d: Design) -> list[int]:
    order = [0]
    rest = set(range(1, d.v))
    covered = set(d.blocks_through[0])
    while rest:
        nxt = max(rest, key=lambda p: (len(covered & set(d.blocks_through[p])), -p))
        order.append(nxt)
        rest.discard(nxt)
        covered |= set(d.blocks_through[nxt])
    return order


def iso_search(d1: Design, d2: Design):
    """A point bijection ``phi`` (tuple, ``i -> phi[i]``) carrying blocks onto blocks,
    or ``None`` once the backtracking search is exhausted."""
    if (d1.v, d1.b) != (d2.v, d2.b):
        return None
    if sorted(map(len, d1.blocks)) != sorted(map(len, d2.blocks)):
        return None
    f1, f2 = _fingerprints(d1), _fingerprints(d2)
    if sorted(f1) != sorted(f2):
        return None
    n = d1.v
    order = _search_order(d1)
    m1, m2 = d1.masks, d2.masks
    bt1, bt2 = d1.blocks_through, d2.blocks_through
    fwd = [-1] * n
    bwd = [-1] * n
    img = [0] * d1.b  # mask of images of assigned points, per block of d1
    pre = [0] * d2.b  # mask of preimages, per block of d2
    target = set(d2.blocks)

    def consistent(x, y) -> bool:
        for i in bt1[x]:
            m = img[i] | (1 << y)
            if not any(m & ~m2[j] == 0 for j in bt2[y]):
                return False
        for j in bt2[y]:
            m = pre[j] | (1 << x)
            if not any(m & ~m1[i] == 0 for i in bt1[x]):
                return False
        return True

    def assign(x, y, on):
        fwd[x], bwd[y] = (y, x) if on else (-1, -1)
        for i in bt1[x]:
            img[i] ^= 1 << y
        for j in bt2[y]:
            pre[j] ^= 1 << x

    def extend(depth):
        if depth == n:
            return {tuple(sorted(fwd[p] for p in b)) for b in d1.blocks} == target
        x = order[depth]
        cands = [y for y in range(n) if bwd[y] < 0 and f2[y] == f1[x]]
        cands.sort(key=lambda y: (y != x, y))
        for y in cands:
            if consistent(x, y):
                assign(x, y, True)
                if extend(depth + 1):
                    return True
                assign(x, y, False)
        return False

    return tuple(fwd) if extend(0) else None


def is_isomorphism(d1: Design, d2: Design, phi) -> bool:
    return d1.relabel(phi).blocks == d2.blocks


# the pencil through a point -------------------------------------------------------------------


def pencil_plane(D: int, q: int = 2) -> Design:
    """Points: the blocks through ``D``.  Blocks: triples of them that no other
    block meets in all three members."""
    if q != 2:
        raise NotImplementedError("the pencil plane is built for q = 2")
    fam = families(q)
    pencil = list(fam.X_D[D])
    pts_of = [set(fam.D_X[x]) for x in range(len(fam.X))]
    outside = [x for x in range(len(fam.X)) if x not in set(pencil)]
    blocks = []
    for tri in itertools.combinations(range(len(pencil)), 3):
        members = [pts_of[pencil[i]] for i in tri]
        if not any(all(pts_of[y] & m for m in members) for y in outside):
            blocks.append(tri)
    return Design.from_blocks(blocks, len(pencil), labels=pencil, name=f"pencil({D})")


# the graph on nonisotropic points --------------------------------------------------------------


@dataclass(frozen=True)
class Graph:
    vertices: tuple
    edges: tuple
    labels: tuple | None = field(default=None, compare=False, repr=False)

    def components(self) -> list[tuple]:
        n = len(self.vertices)
        if not self.edges:
            return [(v,) for v in self.vertices]
        e = np.array(self.edges)
        A = coo_matrix((np.ones(len(e)), (e[:, 0], e[:, 1])), shape=(n, n))
        _, lab = connected_components(A, directed=False)
        comps = {}
        for v, c in enumerate(lab):
            comps.setdefault(int(c), []).append(v)
        return sorted(tuple(c) for c in comps.values())

    def degree(self) -> list[int]:
        deg = [0] * len(self.vertices)
        for a, b in self.edges:
            deg[a] += 1
            deg[b] += 1
        return deg


def gamma_graph(q: int) -> Graph:
    """Nonisotropic points of the hermitian plane over F_{q^2}, adjacent when the
    form is nondegenerate on the line they span."""
    from .hermitian import HermitianPlane

    if q not in (2, 3, 4):
        raise ValueError(f"gamma_graph supports q in (2, 3, 4), not {q}")
    plane = HermitianPlane(q)
    P = plane.points[~plane.isotropic]
    F = plane.F
    h = plane.form(P[:, None, :], P[None, :, :])
    det = F.sub[F.mul[np.diag(h)[:, None], np.diag(h)[None, :]], F.mul[h, h.T]]
    ii, jj = np.nonzero(np.triu(det != 0, 1))
    edges = tuple(zip(ii.tolist(), jj.tolist()))
    return Graph(tuple(range(len(P))), edges, tuple(map(tuple, P.tolist())))


# joining blocks ----------------------------------------------------------------------------------


def element_order(alg, x, limit: int = 64) -> int:
    p = x
    for k in range(1, limit + 1):
        if np.array_equal(p, alg.one):
            return k
        p = alg.mul(p, x)
    raise ValueError("element order exceeds the search limit")


@dataclass(frozen=True)
class JoinResult:
    points: tuple
    pattern: str
    involutions: tuple
    orders: tuple


def joining_block_points(D: int, E: int, q: int = 2) -> JoinResult:
    """The four points on the block through ``D`` and ``E``, read off the orders of
    the nine products ``d^i e^j`` of order-3 generators."""
    if q != 2:
        raise NotImplementedError("joining blocks via element orders is a q = 2 computation")
    if D == E:
        raise ValueError("D and E must be distinct")
    fam = families(q)
    alg = fam.alg
    kind, _ = span_dichotomy(fam.D[D], fam.D[E])
    if kind != Kind.MIXED_X:
        raise ValueError("D and E span a quaternion algebra; no block joins them")
    d, e = fam.root(D), fam.root(E)
    pw = {(i, j): alg.mul(alg.power(d, i), alg.power(e, j)) for i in range(3) for j in range(3)}
    orders = {k: element_order(alg, v) for k, v in pw.items()}
    inv = tuple(sorted(k for k, o in orders.items() if o == 2))
    if orders[1, 1] == 3 and orders[2, 2] == 3:
        pattern, extra = "de", [(1, 1), (2, 2)]
    elif orders[2, 1] == 3 and orders[1, 2] == 3:
        pattern, extra = "d2e", [(2, 1), (1, 2)]
    else:
        raise AssertionError(f"unexpected order pattern {orders}")
    ids = [D, E] + [int(fam.witness_to_D[int(alg.encode(pw[k]))]) for k in extra]
    if min(ids) < 0 or len(set(ids)) != 4:
        raise AssertionError("order-3 products do not give two new points")
    return JoinResult(tuple(sorted(ids)), pattern, inv, tuple(sorted(orders.items())))


# translations ------------------------------------------------------------------------------------


def translation_groups(q: int = 2) -> dict:
    """``T_[D]`` for every point, as point permutations."""
    from .autgrp import point_perm, translation_group

    fam = families(q)
    return {i: [point_perm(t, fam) for t in translation_group(D)] for i, D in enumerate(fam.D)}


def translations_check(d: Design, groups: dict) -> bool:
    """Each ``T_[D]`` is a group of order 3 fixing ``D`` and every block through it,
    transitive on each such block minus ``D``."""
    from .permgroup import closure

    for p in d.points:
        perms = [np.asarray(g) for g in groups.get(p, [])]
        if not perms or len(closure(perms, d.v)) != 3:
            return False
        for g in perms:
            if g[p] != p:
                return False
        for bi in d.blocks_through[p]:
            blk = set(d.blocks[bi])
            rest = blk - {p}
            for g in perms:
                if {int(g[x]) for x in blk} != blk:
                    return False
            x0 = min(rest)
            if {int(g[x0]) for g in perms} != rest:
                return False
    return True


# export --------------------------------------------------------------------------------------------


def design_to_text(d: Design) -> str:
    lines = [f"points {d.v} blocks {d.b}"]
    lines += [" ".join(map(str, b)) for b in d.blocks]
    return "\n".join(lines) + "\n"


def design_from_text(text: str) -> Design:
    rows = [ln.split() for ln in text.strip().splitlines()]
    head = rows[0]
    if len(head) != 4 or head[0] != "points" or head[2] != "blocks":
        raise ValueError("expected a 'points N blocks M' header")
    v, b = int(head[1]), int(head[3])
    blocks = [tuple(int(x) for x in r) for r in rows[1:]]
    if len(blocks) != b:
        raise ValueError(f"header announces {b} blocks, found {len(blocks)}")
    return Design.from_blocks(blocks, v)


def graph_to_dot(g: Graph, name: str = "gamma") -> str:
    out = [f"graph {name} {{"]
    for v in g.vertices:
        label = "".join("0123456789abcdef"[c] for c in g.labels[v]) if g.labels else str(v)
        out.append(f'  {v} [label="{label}"];')
    for a, b in g.edges:
        out.append(f"  {a} -- {b};")
    out.append("}")
    return "\n".join(out) + "\n"
