"""Linear algebra over F_3 on small numpy integer arrays."""

import numpy as np


def rref3(M):
    """Reduced row echelon form mod 3; returns (rows, pivot_columns)."""
    M = np.array(M, dtype=np.int64) % 3
    if M.ndim == 1:
        M = M.reshape(1, -1)
    nrows, ncols = M.shape
    piv = []
    r = 0
    for c in range(ncols):
        hit = None
        for i in range(r, nrows):
            if M[i, c]:
                hit = i
                break
        if hit is None:
            continue
        if hit != r:
            M[[r, hit]] = M[[hit, r]]
        if M[r, c] == 2:
            M[r] = (M[r] * 2) % 3
        for i in range(nrows):
            if i != r and M[i, c]:
                M[i] = (M[i] - M[i, c] * M[r]) % 3
        piv.append(c)
        r += 1
        if r == nrows:
            break
    return M[:r], piv


def rank3(M):
    return len(rref3(M)[1])


def reduce3(R, piv, v):
    """Residue of v modulo the row space given in reduced echelon form."""
    v = np.array(v, dtype=np.int64) % 3
    for row, c in zip(R, piv):
        if v[c]:
            v = (v - v[c] * row) % 3
    return v


def in_span3(R, piv, v):
    return not reduce3(R, piv, v).any()


def span_members3(R):
    """All 3^k combinations of the given (independent) rows."""
    R = np.array(R, dtype=np.int64) % 3
    k = len(R)
    word = np.zeros(R.shape[1] if R.ndim > 1 else 0, dtype=np.int64)
    coeffs = [0] * k
    yield word.copy()
    total = 3 ** k
    for _ in range(total - 1):
        i = 0
        while True:
            coeffs[i] += 1
            word = (word + R[i]) % 3
            if coeffs[i] < 3:
                break
            coeffs[i] = 0
            i += 1
        yield word.copy()
