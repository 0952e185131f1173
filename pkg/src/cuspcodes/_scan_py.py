"""Vectorized numpy kernel for the exterior-square scan.

Fallback twin of the compiled kernel in _scan.pyx; identical interface
and identical results, selected at import time when the extension is
missing.
"""

import numpy as np

NPAIRS = 15
NVECTORS = 3 ** 15
CHUNK = 3 ** 9

(C_MEMBER, C_A, C_B, C_C, C_D, C_UNRESOLVED, C_CONFIRMED, C_PROCESSED,
 C_CLASSES) = range(9)


def _digits(idx):
    out = np.empty((len(idx), NPAIRS), dtype=np.int64)
    t = idx.copy()
    for c in range(NPAIRS):
        out[:, c] = t % 3
        t //= 3
    return out


def _encode(digs):
    idx = np.zeros(len(digs), dtype=np.int64)
    for c in range(NPAIRS - 1, -1, -1):
        idx = idx * 3 + digs[:, c]
    return idx


def _apply(digs, perm, mult):
    return (mult * digs[:, perm]) % 3


def _stage_d_mask(digs, good, dr_perm_s, dr_mult_s, dr_perm_t, dr_mult_t,
                  dr_coef):
    """Rows for which some seeded combination v + b*s.v + c*t.v has
    forbidden weight."""
    n = len(digs)
    found = np.zeros(n, dtype=bool)
    for d in range(len(dr_coef)):
        rem = np.nonzero(~found)[0]
        if not len(rem):
            break
        sub = digs[rem]
        b, c = int(dr_coef[d, 0]), int(dr_coef[d, 1])
        cand = sub.copy()
        if b:
            cand = cand + b * _apply(sub, dr_perm_s[d], dr_mult_s[d])
        if c:
            cand = cand + c * _apply(sub, dr_perm_t[d], dr_mult_t[d])
        cand %= 3
        wt = np.count_nonzero(cand, axis=1)
        bad = (wt > 0) & (good[wt] == 0)
        found[rem[bad]] = True
    return found


def _ladder(idx, mul, counts, unresolved, weights, member, good,
            tr_perm, tr_mult, sp_perm, sp_mult, u_rows, u_cols,
            dr_perm_s, dr_mult_s, dr_perm_t, dr_mult_t, dr_coef):
    """Witness ladder on the given indices; mul carries per-row orbit
    multiplicities (all ones in exhaustive mode)."""
    counts[C_PROCESSED] += int(mul.sum())
    mem = member[idx].astype(bool)
    counts[C_MEMBER] += int(mul[mem].sum())
    wt = weights[idx]
    goodmask = good[wt].astype(bool)
    a_hit = (~mem) & (~goodmask)
    counts[C_A] += int(mul[a_hit].sum())
    todo = (~mem) & goodmask
    if not todo.any():
        return
    idx = idx[todo]
    mul = mul[todo]
    digs = _digits(idx)
    alive = np.ones(len(idx), dtype=bool)

    for t in range(len(tr_perm)):
        live = np.nonzero(alive)[0]
        if not len(live):
            break
        sub = digs[live]
        diff = (sub - _apply(sub, tr_perm[t], tr_mult[t])) % 3
        w = np.count_nonzero(diff, axis=1)
        bad = (w > 0) & (good[w] == 0)
        hits = live[bad]
        counts[C_B] += int(mul[hits].sum())
        alive[hits] = False

    live = np.nonzero(alive)[0]
    if not len(live):
        return
    sub = digs[live]
    vp = sub.copy()
    for r in range(len(u_rows)):
        vp = vp + np.outer(sub[:, u_cols[r]], u_rows[r])
    vp %= 3
    c_hit = np.zeros(len(live), dtype=bool)
    for s in range(len(sp_perm)):
        img = _apply(vp, sp_perm[s], sp_mult[s])
        for sign in (1, 2):
            cand = (vp + sign * img) % 3
            w = np.count_nonzero(cand, axis=1)
            c_hit |= (w > 0) & (good[w] == 0)
    hits = live[c_hit]
    counts[C_C] += int(mul[hits].sum())
    alive[hits] = False
    # pure group-image confirmation for stage-c rows
    if c_hit.any():
        conf = _stage_d_mask(sub[c_hit], good, dr_perm_s, dr_mult_s,
                             dr_perm_t, dr_mult_t, dr_coef)
        counts[C_CONFIRMED] += int(mul[hits[conf]].sum())

    live = np.nonzero(alive)[0]
    if not len(live):
        return
    found = _stage_d_mask(digs[live], good, dr_perm_s, dr_mult_s,
                          dr_perm_t, dr_mult_t, dr_coef)
    counts[C_D] += int(mul[live[found]].sum())
    rest = live[~found]
    counts[C_UNRESOLVED] += int(mul[rest].sum())
    unresolved.extend(int(i) for i in idx[rest])


def scan_exhaustive(start, stop, weights, member, good,
                    tr_perm, tr_mult, sp_perm, sp_mult, u_rows, u_cols,
                    dr_perm_s, dr_mult_s, dr_perm_t, dr_mult_t, dr_coef):
    counts = np.zeros(9, dtype=np.int64)
    unresolved = []
    for lo in range(start, stop, CHUNK):
        idx = np.arange(lo, min(lo + CHUNK, stop), dtype=np.int64)
        _ladder(idx, np.ones(len(idx), dtype=np.int64), counts, unresolved,
                weights, member, good, tr_perm, tr_mult, sp_perm, sp_mult,
                u_rows, u_cols, dr_perm_s, dr_mult_s, dr_perm_t, dr_mult_t,
                dr_coef)
    return counts, unresolved


def scan_orbits(start, stop, weights, member, good, gp_perm, gp_mult,
                tr_perm, tr_mult, sp_perm, sp_mult, u_rows, u_cols,
                dr_perm_s, dr_mult_s, dr_perm_t, dr_mult_t, dr_coef):
    """Process only lexicographically minimal representatives of the
    orbits under the permutation group and scalars, weighting counters by
    orbit size."""
    counts = np.zeros(9, dtype=np.int64)
    unresolved = []
    for lo in range(start, stop, CHUNK):
        idx = np.arange(lo, min(lo + CHUNK, stop), dtype=np.int64)
        digs = _digits(idx)
        # cheap pre-filter: scalar image and the transposition images
        alive = _encode((2 * digs) % 3) >= idx
        for t in range(len(tr_perm)):
            live = np.nonzero(alive)[0]
            if not len(live):
                break
            img = _apply(digs[live], tr_perm[t], tr_mult[t])
            e1 = _encode(img)
            e2 = _encode((2 * img) % 3)
            alive[live[(e1 < idx[live]) | (e2 < idx[live])]] = False
        cand = np.nonzero(alive)[0]
        if not len(cand):
            continue
        cidx = idx[cand]
        cdigs = digs[cand]
        keep = np.ones(len(cand), dtype=bool)
        stab = np.zeros(len(cand), dtype=np.int64)
        for g in range(len(gp_perm)):
            live = np.nonzero(keep)[0]
            if not len(live):
                break
            img = _apply(cdigs[live], gp_perm[g], gp_mult[g])
            e1 = _encode(img)
            e2 = _encode((2 * img) % 3)
            keep[live[(e1 < cidx[live]) | (e2 < cidx[live])]] = False
            stab[live] += (e1 == cidx[live]) + (e2 == cidx[live])
        reps = np.nonzero(keep)[0]
        if not len(reps):
            continue
        orbit = 1440 // stab[reps]
        counts[C_CLASSES] += len(reps)
        _ladder(cidx[reps], orbit, counts, unresolved,
                weights, member, good, tr_perm, tr_mult, sp_perm, sp_mult,
                u_rows, u_cols, dr_perm_s, dr_mult_s, dr_perm_t, dr_mult_t,
                dr_coef)
    return counts, unresolved
