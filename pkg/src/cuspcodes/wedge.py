"""The exterior square of F_3^6 and the exhaustive verification that every
vector outside the distinguished 4-dimensional subspace generates a word
of forbidden weight under the permutation action.

Coordinates of Lambda^2(F_3^6) are indexed by pairs (i, j), i < j, in the
order (0,1), (0,2), (1,2), (0,3), ...; a vector is a length-15 array over
F_3 and its weight is the number of nonzero coordinates.  Permutations of
the six coordinates act with orientation signs.

The verification scans all 3^15 vectors.  For each vector outside the
subspace it exhibits a witness word of weight outside {0, 9, 12, 15}
obtained from the vector's images under the group:
  stage a: the vector itself has forbidden weight;
  stage b: a difference v - t.v over a transposition t;
  stage c: the combinations v' +- s.v' for the two double transpositions
           (0 2)(1 3) and (0 4)(1 5), where v' is v translated into the
           subspace on the coordinates (0,1), (2,3), (4,5);
  stage d: seeded random combinations v + b*s.v + c*t.v.
Stage-c witnesses involve subspace translates, so they rule the vector
out of any qualifying code that contains the subspace; for each such
vector the scan also records whether a pure group-image witness (as in
stages b/d) exists, which it does throughout.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from itertools import permutations

import numpy as np

from .gf3 import rref3, in_span3, span_members3
from .util import seeded_rng

PAIRS = tuple((i, j) for j in range(6) for i in range(j))
PAIR_INDEX = {pair: c for c, pair in enumerate(PAIRS)}
NPAIRS = 15
NVECTORS = 3 ** 15
GOOD_WEIGHTS = (0, 9, 12, 15)

E_ALL = np.ones(6, dtype=np.int64)


def wedge_of(u, v):
    """Coordinates u_i v_j - u_j v_i of the wedge of two vectors in F_3^6."""
    u = np.asarray(u, dtype=np.int64) % 3
    v = np.asarray(v, dtype=np.int64) % 3
    out = np.zeros(NPAIRS, dtype=np.int64)
    for c, (i, j) in enumerate(PAIRS):
        out[c] = (u[i] * v[j] - u[j] * v[i]) % 3
    return out


def weight(v):
    return int(np.count_nonzero(np.asarray(v) % 3))


def basis_vec(i):
    e = np.zeros(6, dtype=np.int64)
    e[i] = 1
    return e


def u_word(i):
    """Sum over k of e_i wedge e_k; equals e_i wedge (e_1+...+e_6)."""
    return wedge_of(basis_vec(i), E_ALL)


def u_pair(i, j):
    return (u_word(i) - u_word(j)) % 3


def u_words():
    """The six single-index words and the fifteen difference words."""
    singles = [u_word(i) for i in range(6)]
    diffs = {(i, j): (singles[i] - singles[j]) % 3 for (i, j) in PAIRS}
    return singles, diffs


@dataclass
class WedgeSubspace:
    basis: np.ndarray
    piv: list

    @property
    def dim(self):
        return len(self.basis)

    def contains(self, v):
        return in_span3(self.basis, self.piv, v)

    def members(self):
        return [m for m in span_members3(self.basis)]


def e_wedge_U() -> WedgeSubspace:
    """Echelon basis of the span of u_{0,1}, u_{0,2}, u_{0,3}, u_{0,4};
    its dimension must be 4."""
    rows = np.array([u_pair(0, j) for j in range(1, 5)])
    R, piv = rref3(rows)
    sub = WedgeSubspace(R, piv)
    assert sub.dim == 4
    return sub


def sigma_table(sigma):
    """Coordinate permutation and sign multiplier realizing the action of
    sigma: (sigma.v)[(a,b)] = mult * v[(inv a, inv b) sorted]."""
    sigma = tuple(sigma)
    inv = [0] * 6
    for i, s in enumerate(sigma):
        inv[s] = i
    perm = np.zeros(NPAIRS, dtype=np.int64)
    mult = np.zeros(NPAIRS, dtype=np.int64)
    for c, (a, b) in enumerate(PAIRS):
        i, j = inv[a], inv[b]
        if i < j:
            perm[c] = PAIR_INDEX[(i, j)]
            mult[c] = 1
        else:
            perm[c] = PAIR_INDEX[(j, i)]
            mult[c] = 2
    return perm, mult


def sigma_on_wedge(sigma, v):
    perm, mult = sigma_table(sigma)
    v = np.asarray(v, dtype=np.int64) % 3
    return (mult * v[perm]) % 3


def transposition(i, j):
    s = list(range(6))
    s[i], s[j] = j, i
    return tuple(s)


def step1_witness(v):
    """For each vanishing coordinate (i,j) of v, the difference with the
    transposed image is supported on at most 8 coordinates; if nonzero it
    is a forbidden-weight witness."""
    v = np.asarray(v, dtype=np.int64) % 3
    for (i, j) in PAIRS:
        if v[PAIR_INDEX[(i, j)]]:
            continue
        img = sigma_on_wedge(transposition(i, j), v)
        w = (v - img) % 3
        wt = weight(w)
        if 0 < wt and wt not in GOOD_WEIGHTS:
            return w
    return None


# ---------------------------------------------------------------------------
# encoding and the scan tables

def encode(v):
    idx = 0
    for c in range(NPAIRS - 1, -1, -1):
        idx = idx * 3 + int(v[c])
    return idx


def decode(idx):
    out = np.zeros(NPAIRS, dtype=np.int64)
    for c in range(NPAIRS):
        out[c] = idx % 3
        idx //= 3
    return out


def weight_table():
    """Weight of every index, as a uint8 array of length 3^15."""
    w = np.zeros(NVECTORS, dtype=np.uint8)
    chunk = 3 ** 9
    for start in range(0, NVECTORS, chunk):
        idx = np.arange(start, min(start + chunk, NVECTORS), dtype=np.int64)
        t = idx.copy()
        acc = np.zeros_like(idx, dtype=np.uint8)
        for _ in range(NPAIRS):
            acc += (t % 3 != 0)
            t //= 3
        w[start:start + len(idx)] = acc
    return w


def member_table(sub: WedgeSubspace):
    member = np.zeros(NVECTORS, dtype=np.uint8)
    for m in sub.members():
        member[encode(m)] = 1
    return member


ALL_PERMS = tuple(permutations(range(6)))


def group_tables():
    perm = np.zeros((len(ALL_PERMS), NPAIRS), dtype=np.int64)
    mult = np.zeros((len(ALL_PERMS), NPAIRS), dtype=np.int64)
    for g, sigma in enumerate(ALL_PERMS):
        perm[g], mult[g] = sigma_table(sigma)
    return perm, mult


def draw_tables(seed, ndraws=200):
    """Stage-d search plan: random group elements and coefficients, fixed
    by the seed so results do not depend on worker partitioning."""
    rng = seeded_rng("wedge-draws", seed)
    perm_s = np.zeros((ndraws, NPAIRS), dtype=np.int64)
    mult_s = np.zeros((ndraws, NPAIRS), dtype=np.int64)
    perm_t = np.zeros((ndraws, NPAIRS), dtype=np.int64)
    mult_t = np.zeros((ndraws, NPAIRS), dtype=np.int64)
    coef = np.zeros((ndraws, 2), dtype=np.int64)
    for d in range(ndraws):
        sig = tuple(rng.sample(range(6), 6))
        tau = tuple(rng.sample(range(6), 6))
        perm_s[d], mult_s[d] = sigma_table(sig)
        perm_t[d], mult_t[d] = sigma_table(tau)
        bc = (0, 0)
        while bc == (0, 0):
            bc = (rng.randrange(3), rng.randrange(3))
        coef[d] = bc
    return perm_s, mult_s, perm_t, mult_t, coef


class ScanTables:
    def __init__(self, seed=0, ndraws=200):
        self.sub = e_wedge_U()
        self.weights = weight_table()
        self.member = member_table(self.sub)
        trans = [transposition(i, j) for (i, j) in PAIRS]
        self.tr_perm = np.array([sigma_table(t)[0] for t in trans])
        self.tr_mult = np.array([sigma_table(t)[1] for t in trans])
        specials = [(2, 3, 0, 1, 4, 5), (4, 5, 2, 3, 0, 1)]
        # (0 2)(1 3) and (0 4)(1 5)
        self.sp_perm = np.array([sigma_table(s)[0] for s in specials])
        self.sp_mult = np.array([sigma_table(s)[1] for s in specials])
        self.u_rows = np.array([u_pair(0, 1), u_pair(2, 3), u_pair(4, 5)])
        self.u_cols = np.array([PAIR_INDEX[(0, 1)], PAIR_INDEX[(2, 3)],
                                PAIR_INDEX[(4, 5)]])
        (self.dr_perm_s, self.dr_mult_s, self.dr_perm_t, self.dr_mult_t,
         self.dr_coef) = draw_tables(seed, ndraws)
        self.good = np.zeros(16, dtype=np.uint8)
        for w in GOOD_WEIGHTS:
            self.good[w] = 1
        self.gp_perm = None
        self.gp_mult = None

    def with_group(self):
        if self.gp_perm is None:
            self.gp_perm, self.gp_mult = group_tables()
        return self


# counter layout shared by both kernels
C_MEMBER, C_A, C_B, C_C, C_D, C_UNRESOLVED, C_CONFIRMED, C_PROCESSED, C_CLASSES = range(9)

_TABLES = None


def _get_kernel():
    try:
        from . import _scan
        return _scan, "compiled"
    except ImportError:
        from . import _scan_py
        return _scan_py, "python"


KERNEL, KERNEL_KIND = _get_kernel()


@dataclass
class Prop25Report:
    mode: str
    seed: int
    kernel: str
    processed: int
    counts: dict
    classes: int
    unresolved: list
    member_weights: dict
    subspace_dim: int

    @property
    def ok(self):
        return (not self.unresolved
                and set(self.member_weights) <= set(GOOD_WEIGHTS)
                and self.processed == NVECTORS)

    def to_text(self):
        lines = ["exterior-square weight verification",
                 f"mode={self.mode} seed={self.seed}",
                 f"vectors={self.processed} subspace_dim={self.subspace_dim}",
                 "member_weights: " + " ".join(
                     f"{w}:{n}" for w, n in sorted(self.member_weights.items()))]
        order = ["member", "stage_a", "stage_b", "stage_c", "stage_d",
                 "unresolved", "stage_c_orbit_confirmed"]
        lines.append(" ".join(f"{k}={self.counts[k]}" for k in order))
        if self.mode == "orbit-reduced":
            lines.append(f"classes={self.classes}")
        if self.unresolved:
            lines.append("UNRESOLVED: " + " ".join(map(str, self.unresolved[:64])))
        lines.append(f"result: {'PASS' if self.ok else 'FAIL'}")
        return "\n".join(lines) + "\n"


def _worker(args):
    start, stop, mode = args
    t = _TABLES
    if mode == "exhaustive":
        return KERNEL.scan_exhaustive(
            start, stop, t.weights, t.member, t.good,
            t.tr_perm, t.tr_mult, t.sp_perm, t.sp_mult, t.u_rows, t.u_cols,
            t.dr_perm_s, t.dr_mult_s, t.dr_perm_t, t.dr_mult_t, t.dr_coef)
    return KERNEL.scan_orbits(
        start, stop, t.weights, t.member, t.good,
        t.gp_perm, t.gp_mult,
        t.tr_perm, t.tr_mult, t.sp_perm, t.sp_mult, t.u_rows, t.u_cols,
        t.dr_perm_s, t.dr_mult_s, t.dr_perm_t, t.dr_mult_t, t.dr_coef)


def prop25_verify(mode="exhaustive", workers=None, seed=0) -> Prop25Report:
    """Scan Lambda^2(F_3^6) and certify that every vector outside the
    distinguished subspace has a forbidden-weight witness."""
    if mode not in ("exhaustive", "orbit-reduced"):
        raise ValueError(f"unknown mode {mode!r}")
    global _TABLES
    tables = ScanTables(seed=seed)
    if mode == "orbit-reduced":
        tables.with_group()
    _TABLES = tables

    sub = tables.sub
    member_weights = {}
    for m in sub.members():
        w = weight(m)
        member_weights[w] = member_weights.get(w, 0) + 1

    if workers is None:
        workers = os.cpu_count() or 1
    nchunks = max(1, workers * 4)
    step = (NVECTORS + nchunks - 1) // nchunks
    jobs = [(lo, min(lo + step, NVECTORS), mode)
            for lo in range(0, NVECTORS, step)]

    if workers > 1:
        import multiprocessing as mp
        with mp.get_context("fork").Pool(workers) as pool:
            parts = pool.map(_worker, jobs)
    else:
        parts = [_worker(job) for job in jobs]

    counts = np.zeros(9, dtype=np.int64)
    unresolved = []
    for cnt, unres in parts:
        counts += np.asarray(cnt, dtype=np.int64)
        unresolved.extend(int(u) for u in unres)
    unresolved.sort()

    report = Prop25Report(
        mode=mode, seed=seed, kernel=KERNEL_KIND,
        processed=int(counts[C_PROCESSED]),
        counts={"member": int(counts[C_MEMBER]),
                "stage_a": int(counts[C_A]),
                "stage_b": int(counts[C_B]),
                "stage_c": int(counts[C_C]),
                "stage_d": int(counts[C_D]),
                "unresolved": int(counts[C_UNRESOLVED]),
                "stage_c_orbit_confirmed": int(counts[C_CONFIRMED])},
        classes=int(counts[C_CLASSES]),
        unresolved=unresolved,
        member_weights=member_weights,
        subspace_dim=sub.dim)
    return report


def bplus_bminus_check():
    """Cross-module consistency with the plane-pair code of type 1^6: the
    doubled subspace words are exactly the invariant proper code, weights
    double, and the extended code has dimension 5."""
    from .cuspcode import (code_span, involution_split, proper_subcode,
                           weight_enumerator, words_for_type, TWord)

    words = words_for_type((1,) * 6)
    E = code_span(words)
    C = proper_subcode(E)
    layout = words[0].layout
    sub = e_wedge_U()

    # pair order of the blocks matches the wedge coordinate order
    assert layout.pairs == PAIRS

    def doubled(v):
        vals = np.repeat(np.asarray(v, dtype=np.int64) % 3, 2)
        return TWord(layout, None, vals)

    doubled_rows = [doubled(m) for m in sub.members()]
    in_code = all(C.contains(w) for w in doubled_rows)
    doubled_dim = code_span([doubled(b) for b in sub.basis]).dim

    weights_double = all(w.weight() == 2 * weight(m)
                         for w, m in zip(doubled_rows, sub.members()))

    plus, minus = involution_split(C)
    enum = weight_enumerator(C)
    u12_doubled = doubled(u_pair(0, 1))
    w_diff = words[0] - words[1]
    match_u12 = bool(np.array_equal(u12_doubled.vals, w_diff.vals))

    return {
        "doubled_in_code": in_code,
        "doubled_dim": doubled_dim,
        "proper_dim": C.dim,
        "weights_double": weights_double,
        "enumerator": enum,
        "dim_plus": plus.dim,
        "dim_minus": minus.dim,
        "extended_dim": E.dim,
        "u12_matches_w1_minus_w2": match_u12,
    }
