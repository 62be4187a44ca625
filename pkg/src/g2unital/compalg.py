"""The split quaternions (2x2 matrices) and split octonions over F_q.

An octonion ``a + x w`` (``a, x`` 2x2 matrices) is stored as the coordinate
8-vector ``(a00, a01, a10, a11, x00, x01, x10, x11)``, i.e. in the basis
``E11, E12, E21, E22, E11 w, E12 w, E21 w, E22 w``.  The integer code of an
element reads that vector as a little-endian base-``q`` number; at ``q = 2`` it
is a byte printed as two hex digits.

Two multiplication paths exist on purpose: :class:`OctElem` multiplies with the
doubling formula on matrix pairs, while :class:`Octonions` multiplies batches
of coordinate vectors through precomputed structure constants.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass

import numpy as np

from . import kernels, linalg
from .gf import FieldElem, FieldMismatchError, FieldSpec, field, find_delta


@dataclass(frozen=True)
class QuatElem:
    """A 2x2 matrix ``[[a00, a01], [a10, a11]]`` over F_q (entries as codes)."""

    spec: FieldSpec
    entries: tuple

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(int(e) for e in self.entries))
        if len(self.entries) != 4:
            raise ValueError("a quaternion has four entries")

    @classmethod
    def from_matrix(cls, spec, rows):
        (a, b), (c, d) = rows
        return cls(spec, (a, b, c, d))

    def _check(self, other):
        if not isinstance(other, QuatElem):
            raise TypeError(f"expected QuatElem, got {type(other).__name__}")
        if other.spec is not self.spec:
            raise FieldMismatchError("quaternions over different fields")

    def __add__(self, other):
        self._check(other)
        A = self.spec.add
        return QuatElem(self.spec, tuple(int(A[x, y]) for x, y in zip(self.entries, other.entries)))

    def __sub__(self, other):
        self._check(other)
        S = self.spec.sub
        return QuatElem(self.spec, tuple(int(S[x, y]) for x, y in zip(self.entries, other.entries)))

    def __neg__(self):
        N = self.spec.neg
        return QuatElem(self.spec, tuple(int(N[x]) for x in self.entries))

    def __mul__(self, other):
        if isinstance(other, FieldElem):
            if other.spec is not self.spec:
                raise FieldMismatchError("scalar from a different field")
            M = self.spec.mul
            return QuatElem(self.spec, tuple(int(M[other.value, x]) for x in self.entries))
        self._check(other)
        F = self.spec
        M, A = F.mul, F.add
        a, b, c, d = self.entries
        e, f, g, h = other.entries
        return QuatElem(
            F,
            (
                int(A[M[a, e], M[b, g]]),
                int(A[M[a, f], M[b, h]]),
                int(A[M[c, e], M[d, g]]),
                int(A[M[c, f], M[d, h]]),
            ),
        )

    def conj(self) -> "QuatElem":
        a, b, c, d = self.entries
        N = self.spec.neg
        return QuatElem(self.spec, (d, int(N[b]), int(N[c]), a))

    def norm(self) -> FieldElem:
        F = self.spec
        a, b, c, d = self.entries
        return FieldElem(F, int(F.sub[F.mul[a, d], F.mul[b, c]]))

    def trace(self) -> FieldElem:
        a, _, _, d = self.entries
        return FieldElem(self.spec, int(self.spec.add[a, d]))

    def is_zero(self):
        return not any(self.entries)

    def __repr__(self):
        a, b, c, d = self.entries
        return f"[[{a},{b}],[{c},{d}]]"


def quat_ops(a: QuatElem, b: QuatElem | None, op: str):
    """Dispatch ``mul conj norm trace add`` on quaternions."""
    if op == "mul":
        return a * b
    if op == "add":
        return a + b
    if op == "conj":
        return a.conj()
    if op == "norm":
        return a.norm()
    if op == "trace":
        return a.trace()
    raise ValueError(f"unknown quaternion operation {op!r}")


def quat_scalar(spec, c) -> QuatElem:
    c = int(c)
    return QuatElem(spec, (c, 0, 0, c))


@dataclass(frozen=True)
class OctElem:
    """The octonion ``a + x w``."""

    a: QuatElem
    x: QuatElem

    def __post_init__(self):
        if self.a.spec is not self.x.spec:
            raise FieldMismatchError("octonion halves over different fields")

    @property
    def spec(self):
        return self.a.spec

    @classmethod
    def from_coords(cls, spec, coords):
        c = [int(v) for v in coords]
        return cls(QuatElem(spec, c[:4]), QuatElem(spec, c[4:]))

    @property
    def coords(self) -> tuple:
        return self.a.entries + self.x.entries

    def _check(self, other):
        if not isinstance(other, OctElem):
            raise TypeError(f"expected OctElem, got {type(other).__name__}")
        if other.spec is not self.spec:
            raise FieldMismatchError("octonions over different fields")

    def __add__(self, other):
        self._check(other)
        return OctElem(self.a + other.a, self.x + other.x)

    def __sub__(self, other):
        self._check(other)
        return OctElem(self.a - other.a, self.x - other.x)

    def __neg__(self):
        return OctElem(-self.a, -self.x)

    def __mul__(self, other):
        if isinstance(other, FieldElem):
            return OctElem(self.a * other, self.x * other)
        self._check(other)
        a, x = self.a, self.x
        b, y = other.a, other.x
        # (a + xw)(b + yw) = ab + conj(y) x + (y a + x conj(b)) w
        return OctElem(a * b + y.conj() * x, y * a + x * b.conj())

    def conj(self) -> "OctElem":
        return OctElem(self.a.conj(), -self.x)

    def norm(self) -> FieldElem:
        return self.a.norm() - self.x.norm()

    def trace(self) -> FieldElem:
        return self.a.trace()

    def is_zero(self):
        return self.a.is_zero() and self.x.is_zero()

    def __repr__(self):
        return f"OctElem({self.a!r} + {self.x!r}w)"


def oct_mul(o1: OctElem, o2: OctElem) -> OctElem:
    return o1 * o2


def oct_unary(o: OctElem, op: str):
    if op == "conj":
        return o.conj()
    if op == "norm":
        return o.norm()
    if op == "trace":
        return o.trace()
    raise ValueError(f"unknown octonion operation {op!r}")


def polar(o1: OctElem, o2: OctElem) -> FieldElem:
    """``N(o1 + o2) - N(o1) - N(o2)``."""
    return (o1 + o2).norm() - o1.norm() - o2.norm()


class Octonions:
    """Vectorised split octonion arithmetic over F_q on coordinate arrays.

    Arrays have trailing dimension 8 and dtype ``uint8``; all operations
    broadcast over leading dimensions.
    """

    def __init__(self, q: int):
        F = field(q)
        self.q = q
        self.F = F
        self.size = q**8
        self.basis = np.eye(8, dtype=np.uint8)
        self.one = np.array([1, 0, 0, 1, 0, 0, 0, 0], dtype=np.uint8)
        self.w = np.array([0, 0, 0, 0, 1, 0, 0, 1], dtype=np.uint8)
        self.delta = find_delta(q).value
        self.kidx, self.ksign = self._structure_constants()
        self._weights = np.array([q**i for i in range(8)], dtype=np.int64)
        self.gram = self.polar(self.basis[:, None, :], self.basis[None, :, :])
        for arr in (self.basis, self.one, self.w, self.kidx, self.ksign, self.gram):
            arr.setflags(write=False)

    def _structure_constants(self):
        F = self.F
        kidx = np.zeros((8, 8), dtype=np.int8)
        ksign = np.zeros((8, 8), dtype=np.int8)
        minus_one = int(F.neg[1])
        for i in range(8):
            ei = OctElem.from_coords(F, self.basis[i])
            for j in range(8):
                ej = OctElem.from_coords(F, self.basis[j])
                prod = (ei * ej).coords
                nz = [k for k, c in enumerate(prod) if c]
                if not nz:
                    continue
                if len(nz) != 1 or prod[nz[0]] not in (1, minus_one):
                    raise AssertionError("basis product is not a signed basis vector")
                kidx[i, j] = nz[0]
                ksign[i, j] = 1 if prod[nz[0]] == 1 else -1
        return kidx, ksign

    # encoding ----------------------------------------------------------------

    def encode(self, A) -> np.ndarray:
        A = np.asarray(A, dtype=np.int64)
        return A @ self._weights

    def decode(self, idx) -> np.ndarray:
        idx = np.asarray(idx, dtype=np.int64)
        return ((idx[..., None] // self._weights) % self.q).astype(np.uint8)

    def format(self, A) -> str:
        """Canonical text form: two hex digits at q = 2, else 8 base-q digits."""
        if self.q == 2:
            return "%02x" % int(self.encode(A))
        return "".join("0123456789abcdef"[int(c)] for c in np.asarray(A).reshape(8))

    def elements(self) -> np.ndarray:
        if self.size > 65536:
            raise ValueError(f"refusing to materialise all {self.size} elements")
        return self.decode(np.arange(self.size))

    def elem(self, coords) -> OctElem:
        return OctElem.from_coords(self.F, coords)

    def coords(self, o: OctElem) -> np.ndarray:
        if o.spec is not self.F:
            raise FieldMismatchError("octonion over a different field")
        return np.array(o.coords, dtype=np.uint8)

    # arithmetic --------------------------------------------------------------

    def add(self, A, B):
        return self.F.add[np.asarray(A), np.asarray(B)]

    def sub(self, A, B):
        return self.F.sub[np.asarray(A), np.asarray(B)]

    def neg(self, A):
        return self.F.neg[np.asarray(A)]

    def scale(self, c, A):
        return self.F.mul[np.asarray(c)[..., None], np.asarray(A)]

    def mul(self, A, B) -> np.ndarray:
        A = np.asarray(A, dtype=np.uint8)
        B = np.asarray(B, dtype=np.uint8)
        shape = np.broadcast_shapes(A.shape, B.shape)
        A = np.broadcast_to(A, shape).reshape(-1, 8)
        B = np.broadcast_to(B, shape).reshape(-1, 8)
        F = self.F
        out = kernels.oct_mul(A, B, self.kidx, self.ksign, F.add, F.mul, F.neg)
        return out.reshape(shape)

    def norm(self, A) -> np.ndarray:
        A = np.asarray(A)
        F = self.F
        na = F.sub[F.mul[A[..., 0], A[..., 3]], F.mul[A[..., 1], A[..., 2]]]
        nx = F.sub[F.mul[A[..., 4], A[..., 7]], F.mul[A[..., 5], A[..., 6]]]
        return F.sub[na, nx]

    def trace(self, A) -> np.ndarray:
        A = np.asarray(A)
        return self.F.add[A[..., 0], A[..., 3]]

    def conj(self, A) -> np.ndarray:
        A = np.asarray(A)
        n = self.F.neg
        out = n[A]
        out[..., 0] = A[..., 3]
        out[..., 3] = A[..., 0]
        return out

    def polar(self, A, B) -> np.ndarray:
        F = self.F
        return F.sub[F.sub[self.norm(self.add(A, B)), self.norm(A)], self.norm(B)]

    def inverse(self, A) -> np.ndarray:
        """``conj(A) / N(A)`` for a single invertible element."""
        n = int(self.norm(A))
        if n == 0:
            raise ZeroDivisionError("element of norm 0 is not invertible")
        return self.scale(self.F.inv[n], self.conj(A))

    def power(self, A, n: int):
        out = self.one.copy()
        for _ in range(n):
            out = self.mul(out, A)
        return out

    def lmul_matrix(self, c) -> np.ndarray:
        """Matrix ``L`` with ``c * v = v @ L`` (row-vector convention)."""
        return self.mul(np.broadcast_to(np.asarray(c, dtype=np.uint8), (8, 8)), self.basis)

    def mul_table(self) -> np.ndarray:
        """Full product table on element codes (only for q = 2)."""
        if self.q != 2:
            raise ValueError("the full multiplication table is only built for q = 2")
        E = self.elements()
        prod = self.mul(E[:, None, :], E[None, :, :])
        return self.encode(prod).astype(np.uint8)

    # named elements ------------------------------------------------------------

    def quat(self, a00, a01, a10, a11) -> np.ndarray:
        return np.array([a00, a01, a10, a11, 0, 0, 0, 0], dtype=np.uint8)

    def times_w(self, A) -> np.ndarray:
        """``x -> x w`` for ``x`` in the matrix copy."""
        A = np.asarray(A)
        out = np.zeros_like(A)
        out[..., 4:] = A[..., :4]
        return out

    def named(self) -> dict:
        """The standard elements ``1, w, p0, n0, m0, u, j``."""
        F = self.F
        one = 1
        m1 = int(F.neg[1])
        return {
            "1": self.one.copy(),
            "w": self.w.copy(),
            "p0": self.quat(1, 0, 0, 0),
            "n0": self.quat(0, 1, 0, 0),
            "m0": self.quat(0, 0, 1, 0),
            "u": self.quat(0, one, self.delta, one),
            # j in C-perp inside the matrix copy, with N(j) = -1
            "j": self.quat(1, 0, 1, m1),
        }


@functools.lru_cache(maxsize=None)
def octonions(q: int) -> Octonions:
    """Shared :class:`Octonions` instance for ``F_q``."""
    return Octonions(q)


def _space_basis(H):
    space = getattr(H, "space", H)
    basis = getattr(space, "basis", space)
    return np.asarray(basis, dtype=np.uint8)


def decompose(o: OctElem, H, v: OctElem) -> tuple[OctElem, OctElem]:
    """Write ``o = a + x v`` with ``a, x`` in the quaternion subalgebra ``H``.

    ``H`` is a subalgebra (or a basis array); ``v`` must lie in ``H``-perp with
    nonzero norm.  ``x`` is recovered from ``(x v) v = -N(v) x``.
    """
    alg = octonions(o.spec.q)
    F = alg.F
    Hb = _space_basis(H)
    if not is_quaternion_basis(alg, Hb):
        raise ValueError("H is not a quaternion subalgebra")
    vv = alg.coords(v)
    if np.any(alg.polar(Hb, vv)):
        raise ValueError("v is not orthogonal to H")
    nv = int(alg.norm(vv))
    if nv == 0:
        raise ValueError("v has norm 0")
    Hv = alg.mul(Hb, vv)
    # coordinates of o in the basis (H basis, H basis * v)
    change = np.vstack([Hb, Hv])
    coef = linalg.solve(change.T, alg.coords(o), F)
    a = linalg.dot(coef[None, :4], Hb, F)[0]
    k = linalg.dot(coef[None, 4:], Hv, F)[0]
    x = alg.scale(F.inv[F.neg[nv]], alg.mul(k, vv))
    return alg.elem(a), alg.elem(x)


def is_quaternion_basis(alg: Octonions, basis) -> bool:
    """4-dim, unital, multiplicatively closed, with nondegenerate polar form."""
    F = alg.F
    B = linalg.rref(basis, F)
    if B.shape[0] != 4:
        return False
    if linalg.rank(np.vstack([B, alg.one]), F) != 4:
        return False
    prods = alg.mul(B[:, None, :], B[None, :, :]).reshape(-1, 8)
    if linalg.rank(np.vstack([B, prods]), F) != 4:
        return False
    G = alg.polar(B[:, None, :], B[None, :, :])
    return linalg.rank(G, F) == 4
