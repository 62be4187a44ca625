"""Pure-Python implementations of the hot kernels.

These mirror ``_kernels.pyx`` function for function and are used when the
compiled extension is unavailable (or when explicitly selected).  All field
arithmetic is done through the lookup tables of a :class:`~g2unital.gf.FieldSpec`.
"""

from math import comb

import numpy as np

BACKEND = "python"


def oct_mul(A, B, kidx, ksign, add, mul, neg):
    """Row-wise products of octonion coordinate arrays ``A`` and ``B`` (shape (n, 8)).

    ``e_i e_j = ksign[i, j] * e_{kidx[i, j]}`` with ``ksign`` in {-1, 0, 1}.
    """
    A = np.asarray(A, dtype=np.uint8)
    B = np.asarray(B, dtype=np.uint8)
    out = np.zeros((A.shape[0], 8), dtype=np.uint8)
    for i in range(8):
        ai = A[:, i]
        for j in range(8):
            s = ksign[i, j]
            if s == 0:
                continue
            prod = mul[ai, B[:, j]]
            if s < 0:
                prod = neg[prod]
            k = kidx[i, j]
            out[:, k] = add[out[:, k], prod]
    return out


def rref(M, add, mul, neg, inv):
    """Reduced row echelon form over a table field; zero rows dropped."""
    rows = [list(map(int, r)) for r in np.asarray(M)]
    ncols = len(rows[0]) if rows else 0
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, len(rows)):
            if rows[i][c]:
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        pr = rows[r]
        s = inv[pr[c]]
        if s != 1:
            mrow = mul[s]
            pr = [int(mrow[x]) for x in pr]
            rows[r] = pr
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = neg[rows[i][c]]
                mrow = mul[f]
                ri = rows[i]
                rows[i] = [int(add[ri[k], mrow[pr[k]]]) for k in range(ncols)]
        r += 1
        if r == len(rows):
            break
    return np.array(rows[:r], dtype=np.uint8).reshape(r, ncols)


def _popcount(x):
    return bin(x).count("1")


def onan_search(masks):
    """Exhaustive O'Nan configuration search over block bitmasks.

    Returns ``(configs, examined)``; ``examined`` counts every 4-subset of
    blocks, including those discarded wholesale by pruning, so it always
    equals ``C(len(masks), 4)``.
    """
    masks = [int(m) for m in masks]
    M = len(masks)
    configs = []
    examined = 0
    for a in range(M):
        ma = masks[a]
        for b in range(a + 1, M):
            ab = ma & masks[b]
            if _popcount(ab) != 1:
                examined += comb(M - b - 1, 2)
                continue
            for c in range(b + 1, M):
                mc = masks[c]
                ac = ma & mc
                bc = masks[b] & mc
                if _popcount(ac) != 1 or _popcount(bc) != 1 or ac == ab or bc == ab or ac == bc:
                    examined += M - c - 1
                    continue
                for d in range(c + 1, M):
                    examined += 1
                    md = masks[d]
                    ad = ma & md
                    bd = masks[b] & md
                    cd = mc & md
                    if _popcount(ad) != 1 or _popcount(bd) != 1 or _popcount(cd) != 1:
                        continue
                    if len({ab, ac, bc, ad, bd, cd}) == 6:
                        configs.append((a, b, c, d))
    return configs, examined
