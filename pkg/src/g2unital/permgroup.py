"""Permutation groups small enough to list every element.

A permutation of ``{0, .., n-1}`` is an integer array ``p`` with ``i -> p[i]``.
Products compose left to right: ``p * q`` applies ``p`` first, i.e. ``q[p]``.
"""

from __future__ import annotations

import functools
import random

import numpy as np


def _dtype(n):
    return np.uint8 if n <= 256 else np.uint16


def as_perm(p, n=None) -> np.ndarray:
    p = np.asarray(p)
    n = len(p) if n is None else n
    return p.astype(_dtype(n))


def compose(p, q):
    """``p`` then ``q``."""
    return q[p]


def inverse(p):
    inv = np.empty_like(p)
    inv[p] = np.arange(len(p), dtype=p.dtype)
    return inv


def is_identity(p) -> bool:
    return bool(np.all(p == np.arange(len(p))))


def _void(rows):
    rows = np.ascontiguousarray(rows)
    return rows.view(np.dtype((np.void, rows.dtype.itemsize * rows.shape[1]))).ravel()


def closure(gens, degree: int) -> np.ndarray:
    """All elements of the group generated by ``gens``, sorted lexicographically.

    Breadth-first: each layer multiplies the newest elements by every generator.
    """
    dt = _dtype(degree)
    ident = np.arange(degree, dtype=dt)
    gens = [np.asarray(g, dtype=dt) for g in gens]
    seen = {ident.tobytes()}
    found = [ident[None, :]]
    frontier = ident[None, :]
    while len(frontier):
        new = []
        for g in gens:
            cand = g[frontier]
            _, first = np.unique(_void(cand), return_index=True)
            for row in cand[np.sort(first)]:
                b = row.tobytes()
                if b not in seen:
                    seen.add(b)
                    new.append(row)
        frontier = np.array(new, dtype=dt).reshape(-1, degree)
        found.append(frontier)
    elems = np.concatenate(found)
    order = np.lexsort(elems.T[::-1])
    return elems[order]


class PermGroup:
    """A permutation group given by generators; the element list is computed on demand."""

    def __init__(self, generators, degree: int | None = None, elements=None):
        gens = [np.asarray(g) for g in generators]
        if degree is None:
            if not gens:
                raise ValueError("degree is required for a group without generators")
            degree = len(gens[0])
        for g in gens:
            if len(g) != degree:
                raise ValueError(f"generator of degree {len(g)} in a group of degree {degree}")
            if sorted(g.tolist()) != list(range(degree)):
                raise ValueError("generator is not a permutation")
        self.degree = degree
        self.generators = [as_perm(g, degree) for g in gens]
        if elements is not None:
            self._elements = np.asarray(elements, dtype=_dtype(degree))

    @functools.cached_property
    def _elements(self) -> np.ndarray:
        return closure(self.generators, self.degree)

    @property
    def elements(self) -> np.ndarray:
        return self._elements

    @property
    def order(self) -> int:
        return len(self._elements)

    @functools.cached_property
    def element_set(self) -> frozenset:
        return frozenset(row.tobytes() for row in self._elements)

    def __contains__(self, p) -> bool:
        return as_perm(p, self.degree).tobytes() in self.element_set

    def orbits(self) -> list:
        """Orbit partition of the domain, each orbit sorted, orbits by least point."""
        parent = list(range(self.degree))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for g in self.generators:
            for i, j in enumerate(g.tolist()):
                ri, rj = find(i), find(j)
                if ri != rj:
                    parent[max(ri, rj)] = min(ri, rj)
        groups = {}
        for i in range(self.degree):
            groups.setdefault(find(i), []).append(i)
        return sorted(tuple(v) for v in groups.values())

    def orbit(self, point: int) -> tuple:
        return next(o for o in self.orbits() if point in o)

    def is_transitive(self) -> bool:
        return len(self.orbits()) == 1

    def is_2_transitive(self) -> bool:
        """Transitive on ordered pairs of distinct points."""
        n = self.degree
        if n < 2:
            return True
        if not self.is_transitive():
            return False
        E = self._elements.astype(np.int64)
        pairs = np.unique(E[:, 0] * n + E[:, 1])
        return len(pairs) == n * (n - 1)

    def stabilizer(self, point: int) -> "PermGroup":
        E = self._elements
        S = E[E[:, point] == point]
        return PermGroup(S, self.degree, elements=S)

    def setwise_stabilizer(self, points) -> "PermGroup":
        E = self._elements
        target = np.zeros(self.degree, dtype=bool)
        target[list(points)] = True
        S = E[np.all(target[E[:, list(points)]], axis=1)]
        return PermGroup(S, self.degree, elements=S)

    def small_generating_set(self, seed: int = 0) -> list:
        """A few random elements that generate the whole group."""
        rng = random.Random(seed)
        E = self._elements
        for k in range(1, 8):
            for _ in range(8):
                gens = [E[rng.randrange(len(E))] for _ in range(k)]
                if len(closure(gens, self.degree)) == self.order:
                    return gens
        return list(self.generators)

    def derived_subgroup(self, seed: int = 0) -> "PermGroup":
        """Normal closure of the commutators of a generating set."""
        gens = self.small_generating_set(seed)
        comms = []
        for a in gens:
            for b in gens:
                c = compose(compose(compose(inverse(a), inverse(b)), a), b)
                if not is_identity(c):
                    comms.append(c)
        K = PermGroup(comms, self.degree) if comms else PermGroup([], self.degree)
        while True:
            extra = []
            for g in gens:
                gi = inverse(g)
                for k in K.generators:
                    c = compose(compose(gi, k), g)
                    if c not in K:
                        extra.append(c)
            if not extra:
                return K
            K = PermGroup(K.generators + extra[:1], self.degree)

    def conjugate(self, phi) -> "PermGroup":
        """The group ``phi^-1 G phi`` acting on relabelled points ``phi[i]``."""
        phi = np.asarray(phi, dtype=np.int64)
        inv = inverse(phi)
        gens = [phi[g[inv]] for g in self.generators]
        E = phi[self._elements[:, inv]]
        E = E[np.lexsort(E.T[::-1])]
        return PermGroup(gens, self.degree, elements=E)


def group_closure(gens, degree: int | None = None) -> PermGroup:
    """Closure of a list of permutations on a common domain."""
    gens = list(gens)
    if degree is None:
        if not gens:
            raise ValueError("degree is required for an empty generator list")
        degree = len(gens[0])
    G = PermGroup(gens, degree)
    G.elements  # noqa: B018 - force the closure
    return G


def perm_word(p) -> str:
    """One-line permutation word: the images of ``0 .. n-1``."""
    return " ".join(str(int(x)) for x in p)
