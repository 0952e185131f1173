"""Ternary codes attached to the singular sets of the surface families.

Coordinates are indexed by singular points, grouped in blocks by the pair
of components whose intersection carries them; blocks are ordered like
the columns 12, 13, 23, 14, ... (by larger index, then smaller).  The
extended code has one extra leading coordinate recording the component
degree mod 3.

For each component i there is a generating word: leading coordinate
d_i mod 3, value -1 on every block (j, i) with j < i and +1 on every
block (i, j) with j > i.  The k words sum to zero when 3 | d, so any
k - 1 of them span the code.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .construct import count_direct, count_residual
from .gf3 import in_span3, rank3, reduce3, rref3, span_members3


class LengthMismatchError(ValueError):
    pass


class NotExtendedError(ValueError):
    pass


class TooLargeError(ValueError):
    pass


class BadPairingError(ValueError):
    pass


class DegreeMismatchError(ValueError):
    pass


class NotASubPartitionError(ValueError):
    pass


@dataclass(frozen=True)
class BlockLayout:
    parts: tuple   # component degrees d_i
    pairs: tuple   # ((i, j), ...) with i < j, ordered by (j, i)
    sizes: tuple   # block sizes, aligned with pairs

    @property
    def n(self):
        return sum(self.sizes)

    def offsets(self):
        out = {}
        pos = 0
        for pair, size in zip(self.pairs, self.sizes):
            out[pair] = (pos, pos + size)
            pos += size
        return out

    def pair_index(self):
        return {pair: t for t, pair in enumerate(self.pairs)}


def _pairs(k):
    return tuple((i, j) for j in range(k) for i in range(j))


def layout_direct(parts) -> BlockLayout:
    parts = tuple(parts)
    per_pair, _ = count_direct(parts)
    pairs = _pairs(len(parts))
    return BlockLayout(parts=parts, pairs=pairs,
                       sizes=tuple(per_pair[p] for p in pairs))


def layout_residual(c_parts, b) -> BlockLayout:
    c_parts = tuple(c_parts)
    _, per_pair = count_residual(c_parts, b)
    pairs = _pairs(len(c_parts))
    return BlockLayout(parts=tuple(3 * ci for ci in c_parts), pairs=pairs,
                       sizes=tuple(per_pair[p] for p in pairs))


class TWord:
    """A vector indexed by singular points, optionally with the leading
    coordinate of the extended code.  Weight counts nonzero point
    coordinates only."""

    __slots__ = ("layout", "i0", "vals")

    def __init__(self, layout, i0, vals):
        self.layout = layout
        self.i0 = None if i0 is None else int(i0) % 3
        self.vals = np.asarray(vals, dtype=np.int64) % 3
        if self.vals.shape != (layout.n,):
            raise LengthMismatchError(
                f"word length {self.vals.shape} vs layout {layout.n}")

    @property
    def extended(self):
        return self.i0 is not None

    def weight(self):
        return int(np.count_nonzero(self.vals))

    def block(self, pair):
        lo, hi = self.layout.offsets()[pair]
        return self.vals[lo:hi]

    def row(self):
        if self.extended:
            return np.concatenate(([self.i0], self.vals))
        return self.vals.copy()

    def __add__(self, other):
        i0 = None if self.i0 is None else (self.i0 + other.i0) % 3
        return TWord(self.layout, i0, (self.vals + other.vals) % 3)

    def __sub__(self, other):
        i0 = None if self.i0 is None else (self.i0 - other.i0) % 3
        return TWord(self.layout, i0, (self.vals - other.vals) % 3)

    def __mul__(self, c):
        i0 = None if self.i0 is None else (self.i0 * c) % 3
        return TWord(self.layout, i0, (self.vals * c) % 3)

    def __eq__(self, other):
        return (self.i0 == other.i0 and self.layout == other.layout
                and np.array_equal(self.vals, other.vals))

    def block_values(self):
        return {pair: sorted(set(self.block(pair).tolist()))
                for pair in self.layout.pairs}

    def __repr__(self):
        head = "" if self.i0 is None else f"{self.i0} | "
        body = " ".join("".join(map(str, self.block(p))) for p in self.layout.pairs)
        return f"<{head}{body}>"


def block_word(layout, i0, block_map) -> TWord:
    """Word constant on each block; block_map: pair -> value."""
    vals = np.zeros(layout.n, dtype=np.int64)
    offs = layout.offsets()
    for pair, v in block_map.items():
        lo, hi = offs[pair]
        vals[lo:hi] = v % 3
    return TWord(layout, i0, vals)


def words_for_type(parts, layout=None):
    """The k generating words of the extended code of the given type."""
    layout = layout or layout_direct(parts)
    parts = layout.parts
    out = []
    for i in range(len(parts)):
        bm = {}
        for (a, b) in layout.pairs:
            if a == i:
                bm[(a, b)] = 1
            elif b == i:
                bm[(a, b)] = 2
        out.append(block_word(layout, parts[i] % 3, bm))
    return out


class TCode:
    """Span of generator words over F_3, with rank and membership."""

    def __init__(self, layout, extended, gens):
        self.layout = layout
        self.extended = extended
        rows = [g.row() if isinstance(g, TWord) else np.asarray(g) % 3
                for g in gens]
        width = layout.n + (1 if extended else 0)
        for r in rows:
            if r.shape != (width,):
                raise LengthMismatchError("generator length mismatch")
        if rows:
            self.basis, self.piv = rref3(np.array(rows))
        else:
            self.basis = np.zeros((0, width), dtype=np.int64)
            self.piv = []

    @property
    def dim(self):
        return len(self.basis)

    @property
    def length(self):
        return self.layout.n

    def contains(self, word):
        row = word.row() if isinstance(word, TWord) else np.asarray(word) % 3
        return in_span3(self.basis, self.piv, row)

    def basis_words(self):
        out = []
        for row in self.basis:
            if self.extended:
                out.append(TWord(self.layout, row[0], row[1:]))
            else:
                out.append(TWord(self.layout, None, row))
        return out

    def members(self, max_dim=16):
        if self.dim > max_dim:
            raise TooLargeError(f"3^{self.dim} members is past the guard")
        for row in span_members3(self.basis):
            if self.extended:
                yield TWord(self.layout, row[0], row[1:])
            else:
                yield TWord(self.layout, None, row)


def code_span(words) -> TCode:
    if not words:
        raise LengthMismatchError("no generators")
    layout = words[0].layout
    extended = words[0].extended
    if any(w.extended != extended or w.layout.n != layout.n for w in words):
        raise LengthMismatchError("mixed generator shapes")
    return TCode(layout, extended, words)


def proper_subcode(E: TCode) -> TCode:
    """Members with zero leading coordinate, with that coordinate dropped."""
    if not E.extended:
        raise NotExtendedError("proper subcode needs an extended code")
    rows = []
    for row in E.basis:
        if row[0] == 0:
            rows.append(row[1:])
    # in reduced echelon form at most one basis row has a nonzero leading
    # coordinate, and no combination involving it can cancel it
    return TCode(E.layout, False, [TWord(E.layout, None, r) for r in rows]
                 if rows else [])


def weight_enumerator(C: TCode, max_dim=16):
    """Exact weight distribution over all 3^dim members."""
    if C.dim > max_dim:
        raise TooLargeError(f"dimension {C.dim} exceeds the enumeration guard")
    dist = {}
    skip = 1 if C.extended else 0
    for row in span_members3(C.basis):
        w = int(np.count_nonzero(row[skip:]))
        dist[w] = dist.get(w, 0) + 1
    return dict(sorted(dist.items()))


def min_weight(C: TCode, max_dim=16):
    dist = weight_enumerator(C, max_dim)
    nz = [w for w in dist if w > 0]
    return min(nz) if nz else 0


def paired_involution(layout) -> np.ndarray:
    """The involution swapping the two halves of every block (all block
    sizes must be even)."""
    perm = np.arange(layout.n)
    offs = layout.offsets()
    for pair, size in zip(layout.pairs, layout.sizes):
        if size % 2:
            raise BadPairingError(f"block {pair} has odd size {size}")
        lo, _ = offs[pair]
        half = size // 2
        for q in range(half):
            perm[lo + q], perm[lo + half + q] = lo + half + q, lo + q
    return perm


def involution_split(C: TCode, pairing=None):
    """Split a proper code into invariant and anti-invariant parts under a
    fixed-point-free involution of the points; checks C = C+ (+) C-."""
    if C.extended:
        raise BadPairingError("involution split operates on proper codes")
    perm = paired_involution(C.layout) if pairing is None else np.asarray(pairing)
    if perm.shape != (C.layout.n,):
        raise BadPairingError("pairing has the wrong length")
    if np.any(perm[perm] != np.arange(C.layout.n)) or np.any(perm == np.arange(C.layout.n)):
        raise BadPairingError("pairing is not a fixed-point-free involution")
    offs = C.layout.offsets()
    for pair in C.layout.pairs:
        lo, hi = offs[pair]
        if np.any((perm[lo:hi] < lo) | (perm[lo:hi] >= hi)):
            raise BadPairingError(f"pairing leaves block {pair}")
    for row in C.basis:
        if not C.contains(row[perm]):
            raise BadPairingError("code is not invariant under the pairing")
    plus_rows = [(2 * (row + row[perm])) % 3 for row in C.basis]
    minus_rows = [(2 * (row - row[perm])) % 3 for row in C.basis]
    plus = TCode(C.layout, False, [TWord(C.layout, None, r) for r in plus_rows]
                 if plus_rows else [])
    minus = TCode(C.layout, False, [TWord(C.layout, None, r) for r in minus_rows]
                  if minus_rows else [])
    assert plus.dim + minus.dim == C.dim, "eigenspace split lost dimensions"
    return plus, minus


def sigma_word(w: TWord, sigma) -> TWord:
    """Relabel components by the permutation sigma, with the orientation
    sign: the value on block (i, j) lands on block (sigma i, sigma j),
    negated when the pair order flips."""
    layout = w.layout
    k = len(layout.parts)
    sigma = tuple(sigma)
    if sorted(sigma) != list(range(k)):
        raise DegreeMismatchError(f"not a permutation of {k} parts")
    offs = layout.offsets()
    vals = np.zeros_like(w.vals)
    for (i, j) in layout.pairs:
        a, b = sigma[i], sigma[j]
        sign = 1
        if a > b:
            a, b = b, a
            sign = -1
        if layout.sizes[layout.pair_index()[(a, b)]] != layout.sizes[layout.pair_index()[(i, j)]]:
            raise DegreeMismatchError(
                f"blocks ({i},{j}) and ({a},{b}) have different sizes")
        lo_s, hi_s = offs[(i, j)]
        lo_t, _ = offs[(a, b)]
        vals[lo_t:lo_t + (hi_s - lo_s)] = (sign * w.vals[lo_s:hi_s]) % 3
    return TWord(layout, w.i0, vals)


def sigma_action(C: TCode, sigma) -> TCode:
    """Image of the code under a component relabeling."""
    return TCode(C.layout, C.extended,
                 [sigma_word(w, sigma) for w in C.basis_words()])


# ---------------------------------------------------------------------------
# refinement embeddings

def _find_split(coarse, fine):
    """Index m and split (a, b) with coarse[m] = a + b realizing fine as a
    one-step refinement of coarse (as multisets)."""
    coarse, fine = tuple(coarse), tuple(fine)
    if len(fine) != len(coarse) + 1 or sum(fine) != sum(coarse):
        return None
    for m, dm in enumerate(coarse):
        for a in range(1, dm // 2 + 1):
            b = dm - a
            inplace = coarse[:m] + (a, b) + coarse[m + 1:]
            if sorted(inplace) == sorted(fine):
                return m, a, b, inplace
    return None


def _stable_matching(inplace, fine):
    """Permutation pi with pi[s] = position in fine, matching degrees
    leftmost-first."""
    used = [False] * len(fine)
    pi = [None] * len(inplace)
    for s, d in enumerate(inplace):
        for t, dt in enumerate(fine):
            if not used[t] and dt == d:
                pi[s] = t
                used[t] = True
                break
    return tuple(pi)


@dataclass
class EmbedReport:
    coarse: tuple
    fine: tuple
    split: tuple              # (index, a, b)
    coarse_dim: int
    fine_dim: int
    image_in_fine: bool
    strict: bool
    new_block: tuple          # pair label of the fresh block in fine order
    vanishing_dim: int        # dim of the fine subcode vanishing there

    @property
    def ok(self):
        return self.image_in_fine and self.strict and self.vanishing_dim == self.coarse_dim


def refine_word(w: TWord, coarse, fine) -> TWord:
    """Image of a word of the coarse type inside the ambient space of the
    fine type.  Blocks of the split component are carried over chunk by
    chunk; the fresh block of points between the two halves gets zero."""
    found = _find_split(coarse, fine)
    if found is None:
        raise NotASubPartitionError(f"{fine} does not refine {coarse} in one step")
    m, a, b, inplace = found
    third = sum(coarse) // 3
    lay_in = layout_direct(inplace)
    offs_in = lay_in.offsets()
    vals = np.zeros(lay_in.n, dtype=np.int64)

    def src(t):
        if t < m:
            return t
        if t in (m, m + 1):
            return m
        return t - 1

    for (i, j) in lay_in.pairs:
        si, sj = src(i), src(j)
        if si == sj:
            continue  # the fresh block; stays zero
        chunk = w.block((min(si, sj), max(si, sj)))
        lo, hi = offs_in[(i, j)]
        if i in (m, m + 1) or j in (m, m + 1):
            other = coarse[sj] if si == m else coarse[si]
            take_a = other * a * third
            piece = chunk[take_a:] if (i == m + 1 or j == m + 1) else chunk[:take_a]
        else:
            piece = chunk
        assert len(piece) == hi - lo
        vals[lo:hi] = piece
    win = TWord(lay_in, w.i0, vals)
    pi = _stable_matching(inplace, fine)
    return sigma_to_layout(win, pi, layout_direct(tuple(fine)))


def sigma_to_layout(w: TWord, pi, target_layout) -> TWord:
    """Signed relabeling into another layout whose parts are w's parts
    permuted by pi."""
    offs_s = w.layout.offsets()
    offs_t = target_layout.offsets()
    vals = np.zeros(target_layout.n, dtype=np.int64)
    for (i, j) in w.layout.pairs:
        a, b = pi[i], pi[j]
        sign = 1
        if a > b:
            a, b = b, a
            sign = -1
        lo_s, hi_s = offs_s[(i, j)]
        lo_t, hi_t = offs_t[(a, b)]
        if hi_t - lo_t != hi_s - lo_s:
            raise DegreeMismatchError("block size mismatch under relabeling")
        vals[lo_t:hi_t] = (sign * w.vals[lo_s:hi_s]) % 3
    return TWord(target_layout, w.i0, vals)


def refine_embed(coarse, fine) -> EmbedReport:
    """Check that the code of the coarse type embeds into the code of the
    fine type under the refinement map, with a strict dimension increase,
    and that the image is exactly the fine subcode vanishing on the fresh
    block."""
    coarse, fine = tuple(coarse), tuple(fine)
    found = _find_split(coarse, fine)
    if found is None:
        raise NotASubPartitionError(f"{fine} does not refine {coarse} in one step")
    m, a, b, inplace = found
    coarse_code = code_span(words_for_type(coarse))
    fine_words = words_for_type(fine)
    fine_code = code_span(fine_words)
    images = [refine_word(w, coarse, fine) for w in coarse_code.basis_words()]
    image_ok = all(fine_code.contains(w) for w in images)
    image_code = code_span(images) if images else None
    pi = _stable_matching(inplace, fine)
    new_block = (min(pi[m], pi[m + 1]), max(pi[m], pi[m + 1]))
    # fine subcode with zero values on the fresh block: coefficient vectors
    # of basis combinations whose block columns cancel
    lo, hi = layout_direct(fine).offsets()[new_block]
    basis = np.array(fine_code.basis)
    block_cols = basis[:, 1 + lo:1 + hi]
    coeff_kernel = _nullspace3(block_cols.T)
    vanish_rows = [(cv @ basis) % 3 for cv in coeff_kernel]
    vanishing_dim = rank3(np.array(vanish_rows)) if vanish_rows else 0
    return EmbedReport(
        coarse=coarse, fine=fine, split=(m, a, b),
        coarse_dim=coarse_code.dim, fine_dim=fine_code.dim,
        image_in_fine=image_ok,
        strict=fine_code.dim > coarse_code.dim,
        new_block=new_block, vanishing_dim=vanishing_dim)


def _nullspace3(M):
    R, piv = rref3(M)
    cols = M.shape[1]
    pivset = set(piv)
    free = [c for c in range(cols) if c not in pivset]
    basis = []
    for fc in free:
        v = np.zeros(cols, dtype=np.int64)
        v[fc] = 1
        for row, pc in zip(R, piv):
            v[pc] = (-row[fc]) % 3
        basis.append(v)
    return basis


# ---------------------------------------------------------------------------
# the sextic landscape

LATTICE_TYPES = (
    ("33", (3, 3)), ("15", (1, 5)), ("24", (2, 4)),
    ("123", (1, 2, 3)), ("114", (1, 1, 4)), ("222", (2, 2, 2)),
    ("1113", (1, 1, 1, 3)), ("1122", (1, 1, 2, 2)),
    ("11112", (1, 1, 1, 1, 2)), ("111111", (1, 1, 1, 1, 1, 1)),
)

LATTICE_DIMS = {"33": 1, "15": 1, "24": 1, "123": 2, "114": 2, "222": 2,
                "1113": 3, "1122": 3, "11112": 4, "111111": 5}

LATTICE_EDGES = (
    ("33", "123"), ("15", "123"), ("15", "114"),
    ("24", "123"), ("24", "114"), ("24", "222"),
    ("123", "1113"), ("123", "1122"),
    ("114", "1113"), ("114", "1122"), ("222", "1122"),
    ("1113", "11112"), ("1122", "11112"), ("11112", "111111"),
)


def lattice_report():
    """Dimensions of all ten sextic codes and the refinement checks for
    every inclusion edge."""
    types = dict(LATTICE_TYPES)
    dims = {}
    for name, parts in LATTICE_TYPES:
        dims[name] = code_span(words_for_type(parts)).dim
    edges = []
    for src, dst in LATTICE_EDGES:
        edges.append((src, dst, refine_embed(types[src], types[dst])))
    return dims, edges


def cusps27_code():
    """The two displayed words of the 27-point residual sextic and their
    span: values (0,1,1) and (2,0,1) on the three 9-blocks."""
    layout = layout_residual((1, 1, 1), 3)
    rule = words_for_type(None, layout=layout)
    w1 = rule[0] + rule[1]
    w2 = rule[1]
    assert [int(w1.block(p)[0]) for p in layout.pairs] == [0, 1, 1]
    assert [int(w2.block(p)[0]) for p in layout.pairs] == [2, 0, 1]
    code = code_span([TWord(layout, None, w1.vals), TWord(layout, None, w2.vals)])
    heavy = w1 + w2
    return layout, (w1, w2), code, heavy
