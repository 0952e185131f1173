"""Sparse polynomials in x0..x3 over a FieldCtx, and the univariate
toolbox (resultants, squarefree decomposition, root finding over
extensions) used to solve zero-dimensional systems exactly.

The elimination engine works on the graded quotient by the ideal of the
three input forms: once the Hilbert function certifies the system is
zero-dimensional, multiplication by a coordinate is a linear operator on
the quotient and its characteristic polynomial is the exact eliminant,
one root per solution point, counted with intersection multiplicity.
"""

from __future__ import annotations

import re
from itertools import product

from . import linalg
from .ffield import ContextMismatchError, Fel, FieldCtx
from .util import seeded_rng


class PolyParseError(ValueError):
    def __init__(self, message, line, col):
        super().__init__(f"line {line}, col {col}: {message}")
        self.line = line
        self.col = col


class MixedDegreeError(ValueError):
    pass


class NotDivisibleError(ArithmeticError):
    pass


class NotZeroDimensionalError(ArithmeticError):
    pass


class ChartMissesError(ArithmeticError):
    pass


# ---------------------------------------------------------------------------
# univariate polynomials

class UPoly:
    """Dense univariate polynomial, coefficients low degree first."""

    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx, coeffs):
        n = len(coeffs)
        while n and not coeffs[n - 1]:
            n -= 1
        self.ctx = ctx
        self.coeffs = tuple(coeffs[:n])

    @classmethod
    def from_ints(cls, ctx, ints):
        return cls(ctx, [ctx.el(i) for i in ints])

    @classmethod
    def gen(cls, ctx):
        return cls(ctx, [ctx.zero, ctx.one])

    def degree(self):
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    def __getitem__(self, i):
        return self.coeffs[i] if i < len(self.coeffs) else self.ctx.zero

    def lc(self):
        return self.coeffs[-1]

    def monic(self):
        if self.is_zero() or self.lc() == self.ctx.one:
            return self
        inv = self.lc().inv()
        return UPoly(self.ctx, [c * inv for c in self.coeffs])

    def __eq__(self, other):
        return isinstance(other, UPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return UPoly(self.ctx, out)

    def __sub__(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        return UPoly(self.ctx, [self[i] - other[i] for i in range(n)])

    def __neg__(self):
        return UPoly(self.ctx, [-c for c in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, Fel):
            return UPoly(self.ctx, [c * other for c in self.coeffs])
        if self.is_zero() or other.is_zero():
            return UPoly(self.ctx, [])
        out = [self.ctx.zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] = out[i + j] + a * b
        return UPoly(self.ctx, out)

    def __divmod__(self, other):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return UPoly(self.ctx, []), self
        quo = [self.ctx.zero] * (dq + 1)
        inv = other.lc().inv()
        ob = other.coeffs
        for i in range(len(rem) - 1, len(ob) - 2, -1):
            c = rem[i]
            if c:
                f = c * inv
                quo[i - len(ob) + 1] = f
                for j in range(len(ob)):
                    rem[i - len(ob) + 1 + j] = rem[i - len(ob) + 1 + j] - f * ob[j]
        return UPoly(self.ctx, quo), UPoly(self.ctx, rem)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __pow__(self, e):
        r = UPoly(self.ctx, [self.ctx.one])
        b = self
        while e:
            if e & 1:
                r = r * b
            b = b * b
            e >>= 1
        return r

    def derivative(self):
        return UPoly(self.ctx, [self.coeffs[i] * i for i in range(1, len(self.coeffs))])

    def evaluate(self, x):
        acc = x.ctx.zero if isinstance(x, Fel) else self.ctx.zero
        for c in reversed(self.coeffs):
            acc = acc * x + _coerce_into(c, x.ctx)
        return acc

    def map_coeffs(self, fn, ctx):
        return UPoly(ctx, [fn(c) for c in self.coeffs])

    def __repr__(self):
        if self.is_zero():
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c:
                parts.append(f"{c!r}*x^{i}" if i else f"{c!r}")
        return " + ".join(parts)


def _coerce_into(a: Fel, ctx: FieldCtx) -> Fel:
    if a.ctx is ctx or (a.ctx.p, a.ctx.k, a.ctx.modulus) == (ctx.p, ctx.k, ctx.modulus):
        return a
    if a.ctx.k == 1 and a.ctx.p == ctx.p:
        return ctx.el(a.c[0])
    raise ContextMismatchError("cannot coerce element between unrelated fields")


def up_gcd(f: UPoly, g: UPoly) -> UPoly:
    while not g.is_zero():
        f, g = g, f % g
    return f.monic() if not f.is_zero() else f


def up_powmod(a: UPoly, e: int, m: UPoly) -> UPoly:
    r = UPoly(m.ctx, [m.ctx.one])
    a = a % m
    while e:
        if e & 1:
            r = (r * a) % m
        a = (a * a) % m
        e >>= 1
    return r


def up_resultant(f: UPoly, g: UPoly) -> Fel:
    """Sylvester resultant: lc(f)^deg(g) * prod of g over the roots of f."""
    ctx = f.ctx
    if f.is_zero() or g.is_zero():
        return ctx.zero
    m, n = f.degree(), g.degree()
    if m == 0:
        return f.lc() ** n
    if n == 0:
        return g.lc() ** m
    ops = linalg.ops_for(ctx)
    size = m + n
    fc = [ops.to_raw(f[m - i]) for i in range(m + 1)]  # high first
    gc = [ops.to_raw(g[n - i]) for i in range(n + 1)]
    rows = []
    for i in range(n):
        rows.append([ops.zero] * i + fc + [ops.zero] * (size - m - 1 - i))
    for i in range(m):
        rows.append([ops.zero] * i + gc + [ops.zero] * (size - n - 1 - i))
    return ops.from_raw(linalg.det(rows, ops))


def _pth_root(f: UPoly) -> UPoly:
    ctx = f.ctx
    p, k = ctx.p, ctx.k
    e = p ** (k - 1)  # inverse Frobenius exponent
    out = []
    for i in range(0, len(f.coeffs), p):
        out.append(f.coeffs[i] ** e)
    return UPoly(ctx, out)


def up_squarefree(f: UPoly):
    """Decomposition [(g_i, m_i)] with prod g_i^m_i = f/lc(f); the g_i are
    monic, squarefree and pairwise coprime.  Valid in characteristic p."""
    ctx = f.ctx
    p = ctx.p
    if f.is_zero():
        raise ZeroDivisionError("squarefree decomposition of zero")
    f = f.monic()
    if f.degree() < 1:
        return []
    out = []
    fp = f.derivative()
    if fp.is_zero():
        for g, m in up_squarefree(_pth_root(f)):
            out.append((g, p * m))
        return out
    c = up_gcd(f, fp)
    w = f // c
    i = 1
    while w.degree() > 0:
        y = up_gcd(w, c)
        z = w // y
        if z.degree() > 0:
            out.append((z, i))
        i += 1
        w = y
        c = c // y
    if c.degree() > 0:
        for g, m in up_squarefree(_pth_root(c)):
            out.append((g, p * m))
    out.sort(key=lambda gm: (gm[1], gm[0].degree()))
    return out


# ---------------------------------------------------------------------------
# root finding over extension fields

_EMBED_CACHE: dict = {}


def embedding(src: FieldCtx, dst: FieldCtx):
    """The canonical embedding F_{p^k} -> F_{p^(k*d)} as a callable."""
    key = (src.p, src.k, src.modulus, dst.p, dst.k, dst.modulus)
    fn = _EMBED_CACHE.get(key)
    if fn is not None:
        return fn
    if src.p != dst.p or dst.k % src.k != 0:
        raise ContextMismatchError(f"no embedding {src!r} -> {dst!r}")
    if src.k == 1:
        fn = lambda a: dst.el(a.c[0])  # noqa: E731
    elif (src.k, src.modulus) == (dst.k, dst.modulus):
        fn = lambda a: dst.el(a.c)  # noqa: E731
    else:
        # image of the generator = a root of the source modulus; take the
        # smallest root so the embedding is canonical
        mod = UPoly.from_ints(dst, src.modulus)
        rng = seeded_rng("embed", key)
        roots = _all_linear_roots(mod, rng)
        tau = min(roots, key=lambda r: r.c)
        powers = [dst.one]
        for _ in range(src.k - 1):
            powers.append(powers[-1] * tau)

        def fn(a, _pw=powers, _dst=dst):
            acc = _dst.zero
            for ci, pw in zip(a.c, _pw):
                if ci:
                    acc = acc + pw * ci
            return acc

    _EMBED_CACHE[key] = fn
    return fn


def _all_linear_roots(g: UPoly, rng):
    """All roots of g, assuming g splits into distinct linear factors."""
    g = g.monic()
    stack = [g]
    roots = []
    ctx = g.ctx
    Q = ctx.order
    x = UPoly.gen(ctx)
    while stack:
        h = stack.pop()
        if h.degree() == 0:
            continue
        if h.degree() == 1:
            roots.append(-h[0])
            continue
        while True:
            shift = ctx.rand(rng)
            probe = up_powmod(x + UPoly(ctx, [shift]), (Q - 1) // 2, h) - UPoly(ctx, [ctx.one])
            d = up_gcd(probe, h)
            if 0 < d.degree() < h.degree():
                stack.append(d)
                stack.append(h // d)
                break
    return roots


def _equal_degree_split(g: UPoly, d: int, rng):
    """Cantor-Zassenhaus: split g into its irreducible factors, all of
    degree d."""
    if g.degree() == d:
        return [g.monic()]
    ctx = g.ctx
    Q = ctx.order
    e = (Q ** d - 1) // 2
    while True:
        r = UPoly(ctx, [ctx.rand(rng) for _ in range(g.degree())])
        if r.degree() < 1:
            continue
        probe = up_powmod(r, e, g) - UPoly(ctx, [ctx.one])
        h = up_gcd(probe, g)
        if 0 < h.degree() < g.degree():
            return _equal_degree_split(h, d, rng) + _equal_degree_split(g // h, d, rng)


class RootReport:
    """Roots of a univariate polynomial found within the extension budget.

    roots: list of (value, minimal field degree over the base, multiplicity)
    unresolved: list of (factor, multiplicity) whose irreducible parts all
    exceed the budget.
    """

    def __init__(self, roots, unresolved):
        self.roots = roots
        self.unresolved = unresolved

    @property
    def budget_exceeded(self):
        return bool(self.unresolved)


def up_roots(f: UPoly, ext_budget: int = 6, seed: int = 0) -> RootReport:
    """All roots of f in extensions of degree <= ext_budget of its base
    field, with multiplicities, by distinct/equal-degree splitting."""
    ctx = f.ctx
    rng = seeded_rng("roots", ctx.p, ctx.k, seed)
    q = ctx.order
    roots = []
    unresolved = []
    for g, mult in up_squarefree(f):
        remaining = g
        x = UPoly.gen(ctx)
        h = x
        d = 0
        while remaining.degree() > 0 and d < min(ext_budget, remaining.degree()):
            d += 1
            h = up_powmod(h, q, remaining)
            part = up_gcd(h - x, remaining)
            if part.degree() > 0:
                for irr in _equal_degree_split(part, d, rng):
                    roots.extend((r, d, mult) for r in _roots_of_irreducible(irr, d, rng))
                remaining = remaining // part
                h = h % remaining
        if remaining.degree() > 0:
            unresolved.append((remaining, mult))
    roots.sort(key=lambda t: (t[1], t[0].c))
    return RootReport(roots, unresolved)


def _roots_of_irreducible(h: UPoly, d: int, rng):
    ctx = h.ctx
    h = h.monic()
    if d == 1:
        return [-h[0]]
    big = ctx.extension(d)
    phi = embedding(ctx, big)
    hb = h.map_coeffs(phi, big)
    # hb splits into linear factors over big; one root and its Frobenius
    # orbit over the base field give all of them
    alpha = _find_one_root(hb, rng)
    q = ctx.order
    out = [alpha]
    cur = alpha
    for _ in range(d - 1):
        cur = cur ** q
        out.append(cur)
    return out


def _find_one_root(g: UPoly, rng):
    ctx = g.ctx
    Q = ctx.order
    x = UPoly.gen(ctx)
    g = g.monic()
    while g.degree() > 1:
        shift = ctx.rand(rng)
        probe = up_powmod(x + UPoly(ctx, [shift]), (Q - 1) // 2, g) - UPoly(ctx, [ctx.one])
        d = up_gcd(probe, g)
        if 0 < d.degree() < g.degree():
            g = d if d.degree() <= g.degree() - d.degree() else g // d
    return -g[0]


# ---------------------------------------------------------------------------
# multivariate polynomials in x0..x3

_NVARS = 4


class MPoly:
    """Sparse polynomial in x0,x1,x2,x3; term map exponent tuple -> Fel."""

    __slots__ = ("ctx", "terms")

    def __init__(self, ctx, terms=None):
        self.ctx = ctx
        self.terms = {e: c for e, c in (terms or {}).items() if c}

    @classmethod
    def zero(cls, ctx):
        return cls(ctx)

    @classmethod
    def constant(cls, ctx, c):
        c = ctx.el(c)
        return cls(ctx, {(0, 0, 0, 0): c} if c else {})

    @classmethod
    def monomial(cls, ctx, coeff, exps):
        coeff = ctx.el(coeff)
        return cls(ctx, {tuple(exps): coeff} if coeff else {})

    @classmethod
    def variable(cls, ctx, i):
        e = [0] * _NVARS
        e[i] = 1
        return cls.monomial(ctx, 1, e)

    @classmethod
    def parse(cls, text, ctx, homogeneous=False):
        """One term per line: `coeff e0 e1 e2 e3`; `#` starts a comment,
        blank lines are skipped, duplicate exponent rows are summed."""
        terms: dict = {}
        for ln, raw_line in enumerate(text.splitlines(), start=1):
            line = raw_line.split("#", 1)[0]
            if not line.strip():
                continue
            toks = list(re.finditer(r"\S+", line))
            if len(toks) != 5:
                col = toks[5].start() + 1 if len(toks) > 5 else len(line.rstrip()) + 1
                raise PolyParseError(
                    f"expected 5 integers, got {len(toks)}", ln, col)
            vals = []
            for tk in toks:
                try:
                    vals.append(int(tk.group()))
                except ValueError:
                    raise PolyParseError(
                        f"not an integer: {tk.group()!r}", ln, tk.start() + 1) from None
            coeff, exps = vals[0], tuple(vals[1:])
            for tk, e in zip(toks[1:], exps):
                if e < 0:
                    raise PolyParseError("negative exponent", ln, tk.start() + 1)
            c = ctx.el(coeff)
            cur = terms.get(exps)
            terms[exps] = c if cur is None else cur + c
        poly = cls(ctx, terms)
        if homogeneous and not poly.is_homogeneous():
            raise MixedDegreeError("terms of unequal total degree")
        return poly

    def to_text(self):
        if self.ctx.k != 1:
            raise ValueError("text form only for prime-field polynomials")
        lines = []
        for e in sorted(self.terms, key=lambda e: (sum(e), e), reverse=True):
            c = self.terms[e]
            lines.append(f"{c.int_value()} {e[0]} {e[1]} {e[2]} {e[3]}")
        return "\n".join(lines) + ("\n" if lines else "")

    def is_zero(self):
        return not self.terms

    def total_degree(self):
        return max((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self):
        degs = {sum(e) for e in self.terms}
        return len(degs) <= 1

    def __eq__(self, other):
        return isinstance(other, MPoly) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def _check(self, other):
        if isinstance(other, (int, Fel)):
            return MPoly.constant(self.ctx, other)
        if other.ctx is not self.ctx and (
                other.ctx.p, other.ctx.k, other.ctx.modulus) != (
                self.ctx.p, self.ctx.k, self.ctx.modulus):
            raise ContextMismatchError("polynomials over different fields")
        return other

    def __add__(self, other):
        other = self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            cur = out.get(e)
            s = c if cur is None else cur + c
            if s:
                out[e] = s
            elif cur is not None:
                del out[e]
        return MPoly(self.ctx, out)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._check(other)
        return self + (-other)

    def __neg__(self):
        return MPoly(self.ctx, {e: -c for e, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fel)):
            c = self.ctx.el(other)
            return MPoly(self.ctx, {e: v * c for e, v in self.terms.items()})
        other = self._check(other)
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = (e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2], e1[3] + e2[3])
                prod = c1 * c2
                cur = out.get(e)
                s = prod if cur is None else cur + prod
                if s:
                    out[e] = s
                elif cur is not None:
                    del out[e]
        return MPoly(self.ctx, out)

    __rmul__ = __mul__

    def __pow__(self, e):
        r = MPoly.constant(self.ctx, 1)
        b = self
        while e:
            if e & 1:
                r = r * b
            b = b * b
            e >>= 1
        return r

    def diff(self, i):
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                ne = list(e)
                ne[i] -= 1
                nc = c * e[i]
                if nc:
                    out[tuple(ne)] = nc
        return MPoly(self.ctx, out)

    def evaluate(self, point):
        """Evaluate at a 4-tuple of Fels, possibly in an extension of the
        coefficient field."""
        tctx = point[0].ctx
        maxes = [0] * _NVARS
        for e in self.terms:
            for i in range(_NVARS):
                maxes[i] = max(maxes[i], e[i])
        pows = []
        for i in range(_NVARS):
            row = [tctx.one]
            for _ in range(maxes[i]):
                row.append(row[-1] * point[i])
            pows.append(row)
        acc = tctx.zero
        for e, c in self.terms.items():
            t = _coerce_into(c, tctx)
            for i in range(_NVARS):
                if e[i]:
                    t = t * pows[i][e[i]]
            acc = acc + t
        return acc

    def leading(self):
        """Leading (exponent, coeff) in graded lex order, x0 > x1 > x2 > x3."""
        e = max(self.terms, key=lambda e: (sum(e), e))
        return e, self.terms[e]

    def divide_exact(self, den):
        """Quotient q with q*den == self, or NotDivisibleError."""
        den = self._check(den)
        if den.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        quo: dict = {}
        rem = self
        de, dc = den.leading()
        dinv = dc.inv()
        while not rem.is_zero():
            re_, rc = rem.leading()
            qe = tuple(a - b for a, b in zip(re_, de))
            if any(x < 0 for x in qe):
                raise NotDivisibleError("leading term not divisible")
            qc = rc * dinv
            quo[qe] = qc
            rem = rem - MPoly(self.ctx, {qe: qc}) * den
        return MPoly(self.ctx, quo)

    def compose_linear(self, M):
        """f(M x): substitute x_i -> sum_j M[i][j] x_j."""
        lin = [MPoly(self.ctx, {tuple(1 if t == j else 0 for t in range(_NVARS)): M[i][j]
                                for j in range(_NVARS) if M[i][j]})
               for i in range(_NVARS)]
        cache: dict = {}

        def power(i, e):
            key = (i, e)
            got = cache.get(key)
            if got is None:
                got = lin[i] ** e
                cache[key] = got
            return got

        acc = MPoly.zero(self.ctx)
        for e, c in self.terms.items():
            t = MPoly.constant(self.ctx, c)
            for i in range(_NVARS):
                if e[i]:
                    t = t * power(i, e[i])
            acc = acc + t
        return acc

    def __repr__(self):
        if self.is_zero():
            return "0"
        parts = []
        for e in sorted(self.terms, key=lambda e: (sum(e), e), reverse=True):
            c = self.terms[e]
            mono = "".join(f"*x{i}^{e[i]}" for i in range(_NVARS) if e[i])
            parts.append(f"{c!r}{mono}")
        return " + ".join(parts)


# ---------------------------------------------------------------------------
# elimination of zero-dimensional triple systems

_MONO_CACHE: dict = {}


def monomials(deg):
    """All exponent tuples of total degree deg in 4 variables, fixed order."""
    got = _MONO_CACHE.get(deg)
    if got is None:
        got = [e for e in product(range(deg + 1), repeat=_NVARS) if sum(e) == deg]
        got.sort(reverse=True)
        _MONO_CACHE[deg] = got
    return got


class EliminationData:
    """Quotient-ring data for a certified zero-dimensional triple system.

    eliminant: char poly of multiplication by x_proj/x_chart on the degree-m
    quotient slice; degree equals the Bezout number, roots are the projected
    solutions with their intersection multiplicities.
    """

    __slots__ = ("ctx", "degrees", "bezout", "level", "chart", "proj",
                 "transform", "eliminant", "xops", "ops", "attempt")

    def __init__(self, **kw):
        for k, v in kw.items():
            setattr(self, k, v)


def _ideal_rows(polys, t, mono_idx, width, ops):
    rows = []
    for F in polys:
        dF = F.total_degree()
        if t < dF:
            continue
        for gam in monomials(t - dF):
            row = [ops.zero] * width
            for e, c in F.terms.items():
                key = (e[0] + gam[0], e[1] + gam[1], e[2] + gam[2], e[3] + gam[3])
                j = mono_idx[key]
                row[j] = ops.add(row[j], ops.to_raw(c))
            rows.append(row)
    return rows


def _quotient_mult_ops(A, B, C, level, bezout, ops):
    """Standard-monomial slices at degrees level and level+1 plus the four
    multiplication matrices between them.  Raises NotZeroDimensionalError
    if the Hilbert function does not certify a finite scheme."""
    mon_m = monomials(level)
    mon_m1 = monomials(level + 1)
    idx_m = {e: i for i, e in enumerate(mon_m)}
    idx_m1 = {e: i for i, e in enumerate(mon_m1)}

    polys = (A, B, C)
    R_m, piv_m = linalg.rref(_ideal_rows(polys, level, idx_m, len(mon_m), ops), ops)
    h_m = len(mon_m) - len(piv_m)
    R_m1, piv_m1 = linalg.rref(_ideal_rows(polys, level + 1, idx_m1, len(mon_m1), ops), ops)
    h_m1 = len(mon_m1) - len(piv_m1)
    if h_m != bezout or h_m1 != bezout:
        raise NotZeroDimensionalError(
            f"Hilbert function ({h_m}, {h_m1}) at degrees ({level}, {level + 1}) "
            f"does not match the Bezout number {bezout}")

    pivset_m = set(piv_m)
    std_m = [e for i, e in enumerate(mon_m) if i not in pivset_m]
    pivset_m1 = set(piv_m1)
    std_cols_m1 = [i for i in range(len(mon_m1)) if i not in pivset_m1]

    mults = []
    for var in range(_NVARS):
        cols = []
        for mu in std_m:
            e = list(mu)
            e[var] += 1
            vec = [ops.zero] * len(mon_m1)
            vec[idx_m1[tuple(e)]] = ops.one
            red = linalg.reduce_vector(vec, R_m1, piv_m1, ops)
            cols.append([red[i] for i in std_cols_m1])
        # cols are columns; transpose to a matrix
        mults.append([[cols[j][i] for j in range(bezout)] for i in range(bezout)])
    return mults


def random_gl4(ctx, rng):
    ops = linalg.ops_for(ctx)
    while True:
        M = [[ctx.rand(rng) for _ in range(_NVARS)] for _ in range(_NVARS)]
        raw = [[ops.to_raw(x) for x in row] for row in M]
        if not ops.is0(linalg.det(raw, ops)):
            return M


def eliminate_system(a, b, c, chart=0, proj=None, seed=0, retries=8,
                     start_attempt=0):
    """Certified elimination for the system a = b = c = 0 in P^3.

    Attempt 0 uses the chart as given; later attempts apply seeded random
    coordinate changes until multiplication by the chart coordinate is
    invertible on the quotient (all solutions visible in the chart).  The
    returned eliminant has degree d_a*d_b*d_c and true multiplicities.
    Callers needing stronger genericity (separating projections) restart
    the ladder at start_attempt.
    """
    ctx = a.ctx
    for f in (a, b, c):
        if f.is_zero() or not f.is_homogeneous():
            raise ValueError("inputs must be nonzero homogeneous forms")
    degs = (a.total_degree(), b.total_degree(), c.total_degree())
    bezout = degs[0] * degs[1] * degs[2]
    level = sum(degs) - 3
    others = [v for v in range(_NVARS) if v != chart]
    if proj is None:
        proj = others[0]
    ops = linalg.ops_for(ctx)

    for attempt in range(start_attempt, start_attempt + retries + 1):
        if attempt == 0:
            M = None
            A, B, C = a, b, c
        else:
            M = random_gl4(ctx, seeded_rng("elim", ctx.p, ctx.k, seed, attempt))
            A, B, C = (f.compose_linear(M) for f in (a, b, c))
        mults = _quotient_mult_ops(A, B, C, level, bezout, ops)
        m0inv = linalg.mat_inv(mults[chart], ops)
        if m0inv is None:
            continue  # solutions on the chart hyperplane; change coordinates
        xops = {v: linalg.mat_mul(m0inv, mults[v], ops) for v in others}
        coeffs = linalg.charpoly(xops[proj], ops)
        eliminant = UPoly(ctx, [ops.from_raw(cc) for cc in coeffs])
        return EliminationData(
            ctx=ctx, degrees=degs, bezout=bezout, level=level, chart=chart,
            proj=proj, transform=M, eliminant=eliminant, xops=xops, ops=ops,
            attempt=attempt)
    raise ChartMissesError(
        f"no chart found in {retries} coordinate changes; solutions keep "
        f"meeting the chart hyperplane")


def eliminate_pair(a, b, c, chart=0, proj=None, seed=0, retries=8) -> UPoly:
    """Univariate elimination image of the 0-dimensional system a=b=c=0."""
    return eliminate_system(a, b, c, chart=chart, proj=proj, seed=seed,
                            retries=retries).eliminant
