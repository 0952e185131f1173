"""Dense exact linear algebra over a FieldCtx.

Matrices are lists of lists of "raw" entries: plain ints for prime fields
(the hot case), Fel objects for extensions.  An ops bundle carries the
field arithmetic so every routine is written once.
"""

from __future__ import annotations


class FieldOps:
    __slots__ = ("ctx", "zero", "one", "add", "sub", "mul", "inv", "neg",
                 "is0", "to_raw", "from_raw")

    def __init__(self, ctx, zero, one, add, sub, mul, inv, neg, is0,
                 to_raw, from_raw):
        self.ctx = ctx
        self.zero = zero
        self.one = one
        self.add = add
        self.sub = sub
        self.mul = mul
        self.inv = inv
        self.neg = neg
        self.is0 = is0
        self.to_raw = to_raw
        self.from_raw = from_raw


def ops_for(ctx) -> FieldOps:
    if ctx.k == 1:
        p = ctx.p
        return FieldOps(
            ctx, 0, 1,
            add=lambda a, b: (a + b) % p,
            sub=lambda a, b: (a - b) % p,
            mul=lambda a, b: (a * b) % p,
            inv=lambda a: pow(a, p - 2, p),
            neg=lambda a: (-a) % p,
            is0=lambda a: a == 0,
            to_raw=lambda x: x.c[0],
            from_raw=lambda r: ctx.el(r),
        )
    return FieldOps(
        ctx, ctx.zero, ctx.one,
        add=lambda a, b: a + b,
        sub=lambda a, b: a - b,
        mul=lambda a, b: a * b,
        inv=lambda a: a.inv(),
        neg=lambda a: -a,
        is0=lambda a: not a,
        to_raw=lambda x: x,
        from_raw=lambda r: r,
    )


def rref(rows, ops):
    """Reduced row echelon form; returns (rows, pivot_columns)."""
    rows = [list(r) for r in rows]
    if not rows:
        return rows, []
    ncols = len(rows[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, len(rows)):
            if not ops.is0(rows[i][c]):
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = ops.inv(rows[r][c])
        rows[r] = [ops.mul(inv, x) for x in rows[r]]
        for i in range(len(rows)):
            if i != r and not ops.is0(rows[i][c]):
                f = rows[i][c]
                ri, rr = rows[i], rows[r]
                rows[i] = [ops.sub(ri[j], ops.mul(f, rr[j])) for j in range(ncols)]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def rank(rows, ops):
    return len(rref(rows, ops)[0])


def reduce_vector(v, rref_rows, pivots, ops):
    """Eliminate the pivot coordinates of v; the residue is supported on
    the non-pivot columns."""
    v = list(v)
    for row, c in zip(rref_rows, pivots):
        f = v[c]
        if not ops.is0(f):
            v = [ops.sub(v[j], ops.mul(f, row[j])) for j in range(len(v))]
    return v


def nullspace(rows, ops, ncols):
    """Basis of the right kernel of the matrix."""
    R, pivots = rref(rows, ops)
    pivset = set(pivots)
    free = [c for c in range(ncols) if c not in pivset]
    basis = []
    for fc in free:
        vec = [ops.zero] * ncols
        vec[fc] = ops.one
        for row, pc in zip(R, pivots):
            vec[pc] = ops.neg(row[fc])
        basis.append(vec)
    return basis


def mat_mul(A, B, ops):
    n, m = len(A), len(B[0])
    k = len(B)
    out = []
    for i in range(n):
        Ai = A[i]
        row = []
        for j in range(m):
            acc = ops.zero
            for t in range(k):
                a = Ai[t]
                if not ops.is0(a):
                    acc = ops.add(acc, ops.mul(a, B[t][j]))
            row.append(acc)
        out.append(row)
    return out


def mat_vec(A, v, ops):
    out = []
    for row in A:
        acc = ops.zero
        for a, x in zip(row, v):
            if not ops.is0(a):
                acc = ops.add(acc, ops.mul(a, x))
        out.append(acc)
    return out


def mat_inv(A, ops):
    """Inverse, or None if singular."""
    n = len(A)
    aug = [list(A[i]) + [ops.one if j == i else ops.zero for j in range(n)]
           for i in range(n)]
    R, pivots = rref(aug, ops)
    if pivots[:n] != list(range(n)):
        return None
    return [row[n:] for row in R[:n]]


def mat_sub(A, B, ops):
    return [[ops.sub(a, b) for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def mat_pow(A, e, ops):
    n = len(A)
    R = [[ops.one if i == j else ops.zero for j in range(n)] for i in range(n)]
    B = A
    while e:
        if e & 1:
            R = mat_mul(R, B, ops)
        e >>= 1
        if e:
            B = mat_mul(B, B, ops)
    return R


def identity(n, ops):
    return [[ops.one if i == j else ops.zero for j in range(n)] for i in range(n)]


def det(A, ops):
    """Determinant by Gaussian elimination."""
    A = [list(r) for r in A]
    n = len(A)
    d = ops.one
    for c in range(n):
        piv = None
        for i in range(c, n):
            if not ops.is0(A[i][c]):
                piv = i
                break
        if piv is None:
            return ops.zero
        if piv != c:
            A[c], A[piv] = A[piv], A[c]
            d = ops.neg(d)
        d = ops.mul(d, A[c][c])
        inv = ops.inv(A[c][c])
        for i in range(c + 1, n):
            if not ops.is0(A[i][c]):
                f = ops.mul(A[i][c], inv)
                A[i] = [ops.sub(A[i][j], ops.mul(f, A[c][j])) for j in range(n)]
    return d


def charpoly(A, ops):
    """Coefficients of det(xI - A), low degree first, monic.

    Hessenberg reduction followed by the leading-principal-minor
    recurrence; exact over any field.
    """
    n = len(A)
    if n == 0:
        return [ops.one]
    H = [list(r) for r in A]
    for col in range(n - 2):
        piv = None
        for i in range(col + 1, n):
            if not ops.is0(H[i][col]):
                piv = i
                break
        if piv is None:
            continue
        if piv != col + 1:
            H[col + 1], H[piv] = H[piv], H[col + 1]
            for i in range(n):
                H[i][col + 1], H[i][piv] = H[i][piv], H[i][col + 1]
        pinv = ops.inv(H[col + 1][col])
        for row in range(col + 2, n):
            t = H[row][col]
            if ops.is0(t):
                continue
            f = ops.mul(t, pinv)
            Hr, Hc = H[row], H[col + 1]
            H[row] = [ops.sub(Hr[j], ops.mul(f, Hc[j])) for j in range(n)]
            for i in range(n):
                H[i][col + 1] = ops.add(H[i][col + 1], ops.mul(f, H[i][row]))

    def shift_sub(poly, h):
        # x*poly - h*poly
        out = [ops.zero] + list(poly)
        for i, c in enumerate(poly):
            out[i] = ops.sub(out[i], ops.mul(h, c))
        return out

    polys = [[ops.one]]
    for m in range(1, n + 1):
        cur = shift_sub(polys[m - 1], H[m - 1][m - 1])
        beta = ops.one
        for i in range(m - 1, 0, -1):
            beta = ops.mul(beta, H[i][i - 1])
            coef = ops.mul(H[i - 1][m - 1], beta)
            if not ops.is0(coef):
                prev = polys[i - 1]
                for j, c in enumerate(prev):
                    cur[j] = ops.sub(cur[j], ops.mul(coef, c))
        polys.append(cur)
    return polys[n]
