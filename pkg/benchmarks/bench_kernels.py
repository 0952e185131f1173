"""Throughput comparison of the two scan kernels (compiled vs numpy).

Run:  python benchmarks/bench_kernels.py [--full]
"""

import argparse
import time

import numpy as np

from cuspcodes import wedge


def load_kernels():
    kernels = {}
    try:
        from cuspcodes import _scan
        kernels["compiled"] = _scan
    except ImportError:
        pass
    from cuspcodes import _scan_py
    kernels["numpy"] = _scan_py
    return kernels


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--full", action="store_true",
                    help="time the full 3^15 range instead of a slice")
    args = ap.parse_args()

    t = wedge.ScanTables(seed=0).with_group()
    ladder_args = (t.weights, t.member, t.good, t.tr_perm, t.tr_mult,
                   t.sp_perm, t.sp_mult, t.u_rows, t.u_cols,
                   t.dr_perm_s, t.dr_mult_s, t.dr_perm_t, t.dr_mult_t,
                   t.dr_coef)
    kernels = load_kernels()

    stop = wedge.NVECTORS if args.full else 3 ** 12
    print(f"exhaustive ladder on [0, {stop}):")
    ref = None
    for name, mod in kernels.items():
        t0 = time.time()
        counts, unresolved = mod.scan_exhaustive(0, stop, *ladder_args)
        dt = time.time() - t0
        rate = stop / dt / 1e6
        print(f"  {name:9s} {dt:8.3f}s  {rate:7.2f} Mvec/s")
        counts = np.asarray(counts)
        if ref is None:
            ref = (counts.copy(), list(unresolved))
        else:
            assert np.array_equal(ref[0], counts) and ref[1] == list(unresolved), \
                f"kernel mismatch for {name}"

    print(f"orbit-reduced scan on [0, {stop}):")
    orbit_args = (t.weights, t.member, t.good, t.gp_perm, t.gp_mult,
                  t.tr_perm, t.tr_mult, t.sp_perm, t.sp_mult, t.u_rows,
                  t.u_cols, t.dr_perm_s, t.dr_mult_s, t.dr_perm_t,
                  t.dr_mult_t, t.dr_coef)
    ref = None
    for name, mod in kernels.items():
        t0 = time.time()
        counts, unresolved = mod.scan_orbits(0, stop, *orbit_args)
        dt = time.time() - t0
        print(f"  {name:9s} {dt:8.3f}s  classes={int(np.asarray(counts)[8])}")
        counts = np.asarray(counts)
        if ref is None:
            ref = (counts.copy(), list(unresolved))
        else:
            assert np.array_equal(ref[0], counts) and ref[1] == list(unresolved), \
                f"kernel mismatch for {name}"
    print("kernels agree on all counters")


if __name__ == "__main__":
    main()
