"""Dense linear algebra over a table field.

Vectors and matrices are ``uint8`` arrays of element codes.  Row reduction is
delegated to the kernel backend.
"""

from __future__ import annotations

import functools

import numpy as np

from . import kernels
from .gf import FieldSpec


def as_rows(M, ncols=None) -> np.ndarray:
    A = np.asarray(M, dtype=np.uint8)
    if A.ndim == 1:
        A = A.reshape(1, -1) if A.size else A.reshape(0, ncols or 0)
    return A


def rref(M, F: FieldSpec) -> np.ndarray:
    A = as_rows(M)
    if A.shape[0] == 0:
        return A.copy()
    return kernels.rref(A, F.add, F.mul, F.neg, F.inv)


def rank(M, F: FieldSpec) -> int:
    return rref(M, F).shape[0]


def pivots(R) -> list[int]:
    return [int(np.flatnonzero(row)[0]) for row in R]


def dot(A, B, F: FieldSpec) -> np.ndarray:
    """Matrix product ``A @ B`` over ``F``."""
    A = np.asarray(A, dtype=np.uint8)
    B = np.asarray(B, dtype=np.uint8)
    prods = F.mul[A[..., :, :, None], B[..., None, :, :]]
    out = prods[..., 0, :]
    for k in range(1, A.shape[-1]):
        out = F.add[out, prods[..., k, :]]
    return out


def nullspace(M, F: FieldSpec, ncols: int | None = None) -> np.ndarray:
    """Basis (in reduced echelon form) of ``{x : M x = 0}``."""
    A = as_rows(M, ncols)
    n = A.shape[1] if ncols is None else ncols
    R = rref(A, F) if A.shape[0] else np.zeros((0, n), dtype=np.uint8)
    piv = pivots(R)
    free = [c for c in range(n) if c not in piv]
    basis = []
    for f in free:
        v = np.zeros(n, dtype=np.uint8)
        v[f] = 1
        for row, pc in zip(R, piv):
            v[pc] = F.neg[row[f]]
        basis.append(v)
    if not basis:
        return np.zeros((0, n), dtype=np.uint8)
    return rref(np.array(basis), F)


def solve(A, b, F: FieldSpec) -> np.ndarray:
    """The unique ``x`` with ``A x = b``; raises if none or not unique."""
    A = as_rows(A)
    b = np.asarray(b, dtype=np.uint8).reshape(-1, 1)
    n = A.shape[1]
    R = rref(np.hstack([A, b]), F)
    piv = pivots(R)
    if n in piv:
        raise ValueError("inconsistent linear system")
    if len(piv) != n:
        raise ValueError("linear system has no unique solution")
    return R[:n, n].copy()


def inverse(M, F: FieldSpec) -> np.ndarray:
    M = as_rows(M)
    n = M.shape[0]
    if M.shape != (n, n):
        raise ValueError("inverse of a non-square matrix")
    R = rref(np.hstack([M, np.eye(n, dtype=np.uint8)]), F)
    if R.shape[0] < n or not np.array_equal(R[:, :n], np.eye(n, dtype=np.uint8)):
        raise ValueError("singular matrix")
    return R[:, n:].copy()


@functools.lru_cache(maxsize=None)
def _combos(q: int, k: int) -> np.ndarray:
    idx = np.arange(q**k)
    out = np.empty((q**k, k), dtype=np.uint8)
    for i in range(k):
        out[:, i] = (idx // q**i) % q
    out.setflags(write=False)
    return out


def coefficient_vectors(F: FieldSpec, k: int) -> np.ndarray:
    """All of ``F^k`` in canonical (little-endian) order."""
    return _combos(F.q, k)


def span_elements(basis, F: FieldSpec) -> np.ndarray:
    """All ``q**k`` vectors of the span of ``k`` independent rows."""
    basis = np.asarray(basis, dtype=np.uint8)
    return dot(coefficient_vectors(F, basis.shape[0]), basis, F)


def span_elements_batch(bases, F: FieldSpec) -> np.ndarray:
    """``span_elements`` for a stack of bases of equal size, shape (N, q**k, n)."""
    bases = np.asarray(bases, dtype=np.uint8)
    C = coefficient_vectors(F, bases.shape[1])
    return dot(np.broadcast_to(C, (bases.shape[0],) + C.shape), bases, F)
