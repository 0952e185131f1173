# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled kernel for the exterior-square scan; twin of _scan_py."""

import numpy as np
cimport numpy as cnp

cdef enum:
    NPAIRS = 15

cdef enum:
    C_MEMBER = 0
    C_A = 1
    C_B = 2
    C_C = 3
    C_D = 4
    C_UNRESOLVED = 5
    C_CONFIRMED = 6
    C_PROCESSED = 7
    C_CLASSES = 8


cdef inline void _decode(long idx, int* v) noexcept:
    cdef int c
    for c in range(NPAIRS):
        v[c] = idx % 3
        idx //= 3


cdef inline long _encode_img(const int* v, const long* perm, const long* mult,
                             int dbl) noexcept:
    # index of (dbl * mult * v[perm]) mod 3, digits read back to front
    cdef long idx = 0
    cdef int c
    for c in range(NPAIRS - 1, -1, -1):
        idx = idx * 3 + (dbl * mult[c] * v[perm[c]]) % 3
    return idx


cdef inline int _diff_weight_bad(const int* v, const long* perm,
                                 const long* mult,
                                 const unsigned char* good) noexcept:
    cdef int c, wt = 0, d
    for c in range(NPAIRS):
        d = (v[c] - mult[c] * v[perm[c]]) % 3
        if d < 0:
            d += 3
        if d != 0:
            wt += 1
    return wt > 0 and good[wt] == 0


cdef inline int _comb_weight_bad(const int* v, const long* ps, const long* ms,
                                 const long* pt, const long* mt,
                                 int b, int c_, const unsigned char* good) noexcept:
    cdef int c, wt = 0, d
    for c in range(NPAIRS):
        d = v[c]
        if b:
            d += b * (ms[c] * v[ps[c]]) % 3
        if c_:
            d += c_ * (mt[c] * v[pt[c]]) % 3
        d %= 3
        if d != 0:
            wt += 1
    return wt > 0 and good[wt] == 0


cdef inline int _sum_weight_bad(const int* a, const int* img, int sign,
                                const unsigned char* good) noexcept:
    cdef int c, wt = 0, d
    for c in range(NPAIRS):
        d = (a[c] + sign * img[c]) % 3
        if d != 0:
            wt += 1
    return wt > 0 and good[wt] == 0


cdef int _stage_d(const int* v,
                  const long[:, :] dps, const long[:, :] dms,
                  const long[:, :] dpt, const long[:, :] dmt,
                  const long[:, :] dco, const unsigned char* good) noexcept:
    cdef int d
    for d in range(dco.shape[0]):
        if _comb_weight_bad(v, &dps[d, 0], &dms[d, 0], &dpt[d, 0], &dmt[d, 0],
                            <int>dco[d, 0], <int>dco[d, 1], good):
            return 1
    return 0


cdef void _ladder_one(long idx, long mul, const int* v,
                      const unsigned char[:] weights,
                      const unsigned char[:] member,
                      const unsigned char[:] good,
                      const long[:, :] trp, const long[:, :] trm,
                      const long[:, :] spp, const long[:, :] spm,
                      const long[:, :] u_rows, const long[:] u_cols,
                      const long[:, :] dps, const long[:, :] dms,
                      const long[:, :] dpt, const long[:, :] dmt,
                      const long[:, :] dco,
                      long* counts, list unresolved) noexcept:
    cdef int t, c, s, sign, chit
    cdef int vp[NPAIRS]
    cdef int img[NPAIRS]
    counts[C_PROCESSED] += mul
    if member[idx]:
        counts[C_MEMBER] += mul
        return
    if good[weights[idx]] == 0:
        counts[C_A] += mul
        return
    for t in range(trp.shape[0]):
        if _diff_weight_bad(v, &trp[t, 0], &trm[t, 0], &good[0]):
            counts[C_B] += mul
            return
    for c in range(NPAIRS):
        vp[c] = (v[c] + v[u_cols[0]] * u_rows[0, c]
                 + v[u_cols[1]] * u_rows[1, c]
                 + v[u_cols[2]] * u_rows[2, c]) % 3
    chit = 0
    for s in range(spp.shape[0]):
        for c in range(NPAIRS):
            img[c] = (spm[s, c] * vp[spp[s, c]]) % 3
        for sign in range(1, 3):
            if _sum_weight_bad(vp, img, sign, &good[0]):
                chit = 1
                break
        if chit:
            break
    if chit:
        counts[C_C] += mul
        if _stage_d(v, dps, dms, dpt, dmt, dco, &good[0]):
            counts[C_CONFIRMED] += mul
        return
    if _stage_d(v, dps, dms, dpt, dmt, dco, &good[0]):
        counts[C_D] += mul
        return
    counts[C_UNRESOLVED] += mul
    unresolved.append(idx)


def scan_exhaustive(long start, long stop,
                    const unsigned char[:] weights,
                    const unsigned char[:] member,
                    const unsigned char[:] good,
                    const long[:, :] trp, const long[:, :] trm,
                    const long[:, :] spp, const long[:, :] spm,
                    const long[:, :] u_rows, const long[:] u_cols,
                    const long[:, :] dps, const long[:, :] dms,
                    const long[:, :] dpt, const long[:, :] dmt,
                    const long[:, :] dco):
    cdef cnp.ndarray[cnp.int64_t, ndim=1] counts = np.zeros(9, dtype=np.int64)
    cdef long* cp = <long*>counts.data
    cdef list unresolved = []
    cdef long idx
    cdef int v[NPAIRS]
    for idx in range(start, stop):
        _decode(idx, v)
        _ladder_one(idx, 1, v, weights, member, good, trp, trm, spp, spm,
                    u_rows, u_cols, dps, dms, dpt, dmt, dco, cp, unresolved)
    return counts, unresolved


def scan_orbits(long start, long stop,
                const unsigned char[:] weights,
                const unsigned char[:] member,
                const unsigned char[:] good,
                const long[:, :] gpp, const long[:, :] gpm,
                const long[:, :] trp, const long[:, :] trm,
                const long[:, :] spp, const long[:, :] spm,
                const long[:, :] u_rows, const long[:] u_cols,
                const long[:, :] dps, const long[:, :] dms,
                const long[:, :] dpt, const long[:, :] dmt,
                const long[:, :] dco):
    cdef cnp.ndarray[cnp.int64_t, ndim=1] counts = np.zeros(9, dtype=np.int64)
    cdef long* cp = <long*>counts.data
    cdef list unresolved = []
    cdef long idx, e1, e2, stab, orbit
    cdef int g, canonical
    cdef int v[NPAIRS]
    cdef int ngroup = gpp.shape[0]
    for idx in range(start, stop):
        _decode(idx, v)
        stab = 0
        canonical = 1
        for g in range(ngroup):
            e1 = _encode_img(v, &gpp[g, 0], &gpm[g, 0], 1)
            if e1 < idx:
                canonical = 0
                break
            e2 = _encode_img(v, &gpp[g, 0], &gpm[g, 0], 2)
            if e2 < idx:
                canonical = 0
                break
            if e1 == idx:
                stab += 1
            if e2 == idx:
                stab += 1
        if not canonical:
            continue
        orbit = 1440 / stab
        cp[C_CLASSES] += 1
        _ladder_one(idx, orbit, v, weights, member, good, trp, trm, spp, spm,
                    u_rows, u_cols, dps, dms, dpt, dmt, dco, cp, unresolved)
    return counts, unresolved
