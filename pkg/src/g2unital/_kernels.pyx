# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels; see ``_kernels_py.py`` for the reference semantics."""

import numpy as np
cimport numpy as cnp
from libc.stdint cimport uint8_t, int8_t, int16_t, uint64_t

cnp.import_array()

BACKEND = "cython"


def oct_mul(A, B, kidx, ksign, add, mul, neg):
    cdef const uint8_t[:, ::1] a = np.ascontiguousarray(A, dtype=np.uint8)
    cdef const uint8_t[:, ::1] b = np.ascontiguousarray(B, dtype=np.uint8)
    cdef const int8_t[:, ::1] ki = np.ascontiguousarray(kidx, dtype=np.int8)
    cdef const int8_t[:, ::1] ks = np.ascontiguousarray(ksign, dtype=np.int8)
    cdef const uint8_t[:, ::1] ta = np.ascontiguousarray(add, dtype=np.uint8)
    cdef const uint8_t[:, ::1] tm = np.ascontiguousarray(mul, dtype=np.uint8)
    cdef const uint8_t[::1] tn = np.ascontiguousarray(neg, dtype=np.uint8)
    cdef Py_ssize_t n = a.shape[0], r, i, j
    out_arr = np.zeros((n, 8), dtype=np.uint8)
    cdef uint8_t[:, ::1] out = out_arr
    cdef uint8_t p
    cdef int8_t s, k
    # flatten the nonzero structure constants once
    cdef int nterms = 0
    cdef int ti[64]
    cdef int tj[64]
    cdef int tk[64]
    cdef int tsg[64]
    for i in range(8):
        for j in range(8):
            s = ks[i, j]
            if s != 0:
                ti[nterms] = i
                tj[nterms] = j
                tk[nterms] = ki[i, j]
                tsg[nterms] = s
                nterms += 1
    cdef int t
    with nogil:
        for r in range(n):
            for t in range(nterms):
                p = tm[a[r, ti[t]], b[r, tj[t]]]
                if p == 0:
                    continue
                if tsg[t] < 0:
                    p = tn[p]
                out[r, tk[t]] = ta[out[r, tk[t]], p]
    return out_arr


def rref(M, add, mul, neg, inv):
    work = np.array(M, dtype=np.uint8, order="C", copy=True)
    if work.ndim != 2:
        raise ValueError("rref expects a 2-d array")
    cdef uint8_t[:, ::1] m = work
    cdef const uint8_t[:, ::1] ta = np.ascontiguousarray(add, dtype=np.uint8)
    cdef const uint8_t[:, ::1] tm = np.ascontiguousarray(mul, dtype=np.uint8)
    cdef const uint8_t[::1] tn = np.ascontiguousarray(neg, dtype=np.uint8)
    cdef const uint8_t[::1] ti = np.ascontiguousarray(inv, dtype=np.uint8)
    cdef Py_ssize_t nr = m.shape[0], nc = m.shape[1]
    cdef Py_ssize_t r = 0, c, i, k, piv
    cdef uint8_t s, f, tmp
    with nogil:
        for c in range(nc):
            if r == nr:
                break
            piv = -1
            for i in range(r, nr):
                if m[i, c] != 0:
                    piv = i
                    break
            if piv < 0:
                continue
            if piv != r:
                for k in range(nc):
                    tmp = m[r, k]
                    m[r, k] = m[piv, k]
                    m[piv, k] = tmp
            s = ti[m[r, c]]
            if s != 1:
                for k in range(nc):
                    m[r, k] = tm[s, m[r, k]]
            for i in range(nr):
                if i != r and m[i, c] != 0:
                    f = tn[m[i, c]]
                    for k in range(nc):
                        m[i, k] = ta[m[i, k], tm[f, m[r, k]]]
            r += 1
    return work[:r].copy()


cdef inline int _single(uint64_t x) nogil:
    return x != 0 and (x & (x - 1)) == 0


def onan_search(masks):
    cdef Py_ssize_t M = len(masks)
    if M and max(int(x) for x in masks) >= (1 << 64):
        raise OverflowError("compiled O'Nan search supports at most 64 points")
    cdef uint64_t[::1] bm = np.array([int(x) for x in masks], dtype=np.uint64)
    cdef Py_ssize_t a, b, c, d
    cdef uint64_t ab, ac, bc, ad, bd, cd
    cdef long long examined = 0
    configs = []
    for a in range(M):
        for b in range(a + 1, M):
            ab = bm[a] & bm[b]
            if not _single(ab):
                examined += (M - b - 1) * (M - b - 2) // 2
                continue
            for c in range(b + 1, M):
                ac = bm[a] & bm[c]
                bc = bm[b] & bm[c]
                if not _single(ac) or not _single(bc) or ac == ab or bc == ab or ac == bc:
                    examined += M - c - 1
                    continue
                for d in range(c + 1, M):
                    examined += 1
                    ad = bm[a] & bm[d]
                    bd = bm[b] & bm[d]
                    cd = bm[c] & bm[d]
                    if not _single(ad) or not _single(bd) or not _single(cd):
                        continue
                    if (ad | bd | cd) & (ab | ac | bc):
                        continue
                    if ad == bd or ad == cd or bd == cd:
                        continue
                    configs.append((a, b, c, d))
    return configs, examined
