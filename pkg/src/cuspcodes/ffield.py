"""Exact arithmetic in prime fields F_p and extension fields F_{p^k}.

Extension fields are presented as F_p[t]/(m) for a monic irreducible
modulus m of degree k, found deterministically from (p, k, seed).
Elements are immutable and always stored fully reduced, so equality is
coefficient-wise and elements hash safely.

Characteristics 2 and 3 are rejected: the singularity analysis downstream
needs both 2 and 3 invertible.
"""

from __future__ import annotations

from .util import seeded_rng


class NonPrimeError(ValueError):
    pass


class SmallCharacteristicError(ValueError):
    pass


class IrreducibleSearchError(RuntimeError):
    pass


class ContextMismatchError(ValueError):
    pass


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, valid far beyond 2^64."""
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % q == 0:
            return n == q
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


# Dense univariate arithmetic over F_p on int tuples, low degree first.
# Only used for modulus bookkeeping; general polynomials live in mpoly.

def _trim(c):
    n = len(c)
    while n and c[n - 1] == 0:
        n -= 1
    return tuple(c[:n])


def _pmul(a, b, p):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _trim(out)


def _pmod(a, m, p):
    # m monic
    a = list(a)
    dm = len(m) - 1
    for i in range(len(a) - 1, dm - 1, -1):
        c = a[i] % p
        if c:
            a[i] = 0
            for j in range(dm):
                a[i - dm + j] = (a[i - dm + j] - c * m[j]) % p
    return _trim(a)


def _ppowmod(a, e, m, p):
    r = (1,)
    a = _pmod(a, m, p)
    while e:
        if e & 1:
            r = _pmod(_pmul(r, a, p), m, p)
        a = _pmod(_pmul(a, a, p), m, p)
        e >>= 1
    return r


def _pgcd(a, b, p):
    a, b = _trim(a), _trim(b)
    while b:
        inv = pow(b[-1], p - 2, p)
        bm = tuple((c * inv) % p for c in b)
        a, b = b, _pmod(a, bm, p)
    return a


def _is_irreducible(m, p):
    """m monic of degree k >= 2 over F_p."""
    k = len(m) - 1
    x = (0, 1)
    frob = [x]  # frob[i] = x^(p^i) mod m
    for _ in range(k):
        frob.append(_ppowmod(frob[-1], p, m, p))
    if frob[k] != x:
        return False
    q = 2
    kk = k
    while kk > 1:
        if kk % q == 0:
            d = k // q
            diff = list(frob[d])
            while len(diff) < 2:
                diff.append(0)
            diff[1] = (diff[1] - 1) % p
            if len(_pgcd(_trim(diff), m, p)) > 1:
                return False
            while kk % q == 0:
                kk //= q
        q += 1
    return True


_CTX_CACHE: dict = {}


class FieldCtx:
    """A finite field F_{p^k}; construct through field_make."""

    __slots__ = ("p", "k", "modulus", "seed", "_zero", "_one")

    def __init__(self, p, k, modulus, seed):
        self.p = p
        self.k = k
        self.modulus = modulus
        self.seed = seed
        self._zero = Fel(self, (0,) * k)
        self._one = Fel(self, (1,) + (0,) * (k - 1))

    @property
    def order(self):
        return self.p ** self.k

    @property
    def zero(self):
        return self._zero

    @property
    def one(self):
        return self._one

    def el(self, v):
        """Coerce an int (or coefficient sequence) into the field."""
        if isinstance(v, Fel):
            if v.ctx is self:
                return v
            if v.ctx.k == 1 and v.ctx.p == self.p:
                return self.el(v.c[0])
            raise ContextMismatchError(f"cannot coerce {v!r} into {self!r}")
        if isinstance(v, int):
            return Fel(self, (v % self.p,) + (0,) * (self.k - 1))
        c = tuple(int(x) % self.p for x in v)
        if len(c) > self.k:
            c = _pmod(c, self.modulus, self.p)
        c = c + (0,) * (self.k - len(c))
        return Fel(self, c)

    def rand(self, rng):
        return Fel(self, tuple(rng.randrange(self.p) for _ in range(self.k)))

    def elements(self):
        """Iterate over all p^k elements (small fields only)."""
        p, k = self.p, self.k
        c = [0] * k
        while True:
            yield Fel(self, tuple(c))
            i = 0
            while i < k:
                c[i] += 1
                if c[i] < p:
                    break
                c[i] = 0
                i += 1
            if i == k:
                return

    def extension(self, d, seed=0):
        """The canonical degree-d extension F_{p^(k*d)}."""
        if d == 1:
            return self
        return field_make(self.p, self.k * d, seed)

    def __repr__(self):
        if self.k == 1:
            return f"F_{self.p}"
        return f"F_{self.p}^{self.k}"

    def __reduce__(self):
        return (field_make, (self.p, self.k, self.seed))


class Fel:
    """An element of a FieldCtx, stored as a reduced coefficient tuple."""

    __slots__ = ("ctx", "c")

    def __init__(self, ctx, c):
        self.ctx = ctx
        self.c = c

    def _check(self, other):
        if isinstance(other, int):
            return self.ctx.el(other)
        if other.ctx is not self.ctx:
            if (other.ctx.p, other.ctx.k, other.ctx.modulus) != (
                self.ctx.p, self.ctx.k, self.ctx.modulus,
            ):
                raise ContextMismatchError("operands from different fields")
        return other

    def __add__(self, other):
        other = self._check(other)
        p = self.ctx.p
        return Fel(self.ctx, tuple((a + b) % p for a, b in zip(self.c, other.c)))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._check(other)
        p = self.ctx.p
        return Fel(self.ctx, tuple((a - b) % p for a, b in zip(self.c, other.c)))

    def __rsub__(self, other):
        return self.ctx.el(other) - self

    def __neg__(self):
        p = self.ctx.p
        return Fel(self.ctx, tuple((-a) % p for a in self.c))

    def __mul__(self, other):
        other = self._check(other)
        ctx = self.ctx
        if ctx.k == 1:
            return Fel(ctx, ((self.c[0] * other.c[0]) % ctx.p,))
        prod = _pmod(_pmul(self.c, other.c, ctx.p), ctx.modulus, ctx.p)
        return Fel(ctx, prod + (0,) * (ctx.k - len(prod)))

    __rmul__ = __mul__

    def inv(self):
        ctx = self.ctx
        if not self:
            raise ZeroDivisionError("inverse of zero")
        if ctx.k == 1:
            return Fel(ctx, (pow(self.c[0], ctx.p - 2, ctx.p),))
        # extended Euclid in F_p[t]
        p = ctx.p
        r0, r1 = ctx.modulus, _trim(self.c)
        s0, s1 = (), (1,)
        while r1:
            inv_lc = pow(r1[-1], p - 2, p)
            mono = tuple((c * inv_lc) % p for c in r1)
            q = _pquot(r0, mono, p)
            q = _pmul(q, ((inv_lc),), p)
            r0, r1 = r1, _psub(r0, _pmul(q, r1, p), p)
            s0, s1 = s1, _psub(s0, _pmul(q, s1, p), p)
        lc = pow(r0[-1], p - 2, p)
        s0 = _pmul(s0, (lc,), p)
        s0 = _pmod(s0, ctx.modulus, p)
        return Fel(ctx, s0 + (0,) * (ctx.k - len(s0)))

    def __truediv__(self, other):
        other = self._check(other)
        return self * other.inv()

    def __rtruediv__(self, other):
        return self.ctx.el(other) / self

    def __pow__(self, e):
        if e < 0:
            return self.inv() ** (-e)
        r = self.ctx.one
        b = self
        while e:
            if e & 1:
                r = r * b
            b = b * b
            e >>= 1
        return r

    def __bool__(self):
        return any(self.c)

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.ctx.el(other)
        elif not isinstance(other, Fel):
            return NotImplemented
        return self.c == other.c and self.ctx.p == other.ctx.p and self.ctx.modulus == other.ctx.modulus

    def __hash__(self):
        return hash((self.ctx.p, self.ctx.modulus, self.c))

    def degree(self):
        """Smallest d with self^(p^d) == self; divides k."""
        p, k = self.ctx.p, self.ctx.k
        a = self
        for d in range(1, k + 1):
            a = a ** p
            if a == self:
                if k % d == 0:
                    return d
        raise AssertionError("Frobenius orbit did not close")

    def int_value(self):
        if self.ctx.k != 1:
            raise ValueError("int_value only for prime fields")
        return self.c[0]

    def __repr__(self):
        if self.ctx.k == 1:
            return str(self.c[0])
        return "(" + ",".join(map(str, self.c)) + ")"


def _psub(a, b, p):
    n = max(len(a), len(b))
    a = a + (0,) * (n - len(a))
    b = b + (0,) * (n - len(b))
    return _trim(tuple((x - y) % p for x, y in zip(a, b)))


def _pquot(a, m, p):
    """Quotient of a by monic m."""
    a = list(a)
    dm = len(m) - 1
    q = [0] * max(len(a) - dm, 0)
    for i in range(len(a) - 1, dm - 1, -1):
        c = a[i] % p
        if c:
            q[i - dm] = c
            for j in range(dm + 1):
                a[i - dm + j] = (a[i - dm + j] - c * m[j]) % p
    return _trim(q)


def field_make(p: int, k: int = 1, seed: int = 0) -> FieldCtx:
    """Build (and intern) the field F_{p^k}, p prime >= 5.

    For k > 1 a monic irreducible modulus is sampled deterministically
    from the seed, so identical parameters give identical fields.
    """
    key = (p, k, seed)
    ctx = _CTX_CACHE.get(key)
    if ctx is not None:
        return ctx
    if p < 5:
        raise SmallCharacteristicError(f"characteristic {p} < 5 not supported")
    if not is_prime(p):
        raise NonPrimeError(f"{p} is not prime")
    if k < 1:
        raise ValueError("extension degree must be >= 1")
    if k == 1:
        modulus = None
    else:
        rng = seeded_rng("modulus", p, k, seed)
        modulus = None
        for _ in range(4096):
            cand = tuple(rng.randrange(p) for _ in range(k)) + (1,)
            if _is_irreducible(cand, p):
                modulus = cand
                break
        if modulus is None:
            raise IrreducibleSearchError(f"no irreducible of degree {k} found over F_{p}")
    ctx = FieldCtx(p, k, modulus, seed)
    _CTX_CACHE[key] = ctx
    return ctx
