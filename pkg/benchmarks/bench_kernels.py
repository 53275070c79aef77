"""Time the numba kernels against their numpy fallbacks.

    python benchmarks/bench_kernels.py --repeat 5
"""
import argparse
import random
import time

import numpy as np

from costfn import kernels
from costfn.algebra import product_monoid, to_mask
from costfn.computation import _rel
from costfn.corpus import counta, random_monoid, sega


def best_of(fn, args, repeat):
    fn(*args)  # warm-up, includes JIT compilation
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        times.append(time.perf_counter() - t0)
    return min(times)


def cases(seed):
    big = product_monoid(product_monoid(counta(), sega()), counta())  # 36 elements
    P = np.ascontiguousarray(big.product)
    Q = np.ascontiguousarray(big.leq)
    rows = np.array([to_mask(np.flatnonzero(big.leq[:, r])) for r in range(big.size)], dtype=np.uint64)
    yield "assoc_witness", (P,)
    yield "monotone_witness", (P, Q)
    yield "j_below", (P,)
    yield "set_product", (P, np.uint64((1 << 36) - 1), np.uint64((1 << 20) - 1), rows)

    rng = random.Random(seed)
    M = random_monoid(rng, 6)
    w = np.array([rng.randrange(M.size) for _ in range(12)], dtype=np.int64)
    rel = _rel(M, "over")
    relmask = np.array([to_mask(np.flatnonzero(rel[r])) for r in range(M.size)], dtype=np.uint64)
    idem = M.product[np.arange(M.size), np.arange(M.size)] == np.arange(M.size)
    sharp = np.where(M.sharp >= 0, M.sharp, 0).astype(np.int64)
    yield "values_dp", (w, np.ascontiguousarray(M.product), sharp, idem, relmask, 3, 12)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    print(f"backend in use: {kernels.BACKEND}")
    print(f"{'kernel':<18}{'numpy s':>12}{'numba s':>12}{'speedup':>10}")
    for name, kargs in cases(args.seed):
        nb, npy = kernels.implementations(name)
        t_np = best_of(npy, kargs, args.repeat)
        if nb is None:
            print(f"{name:<18}{t_np:>12.5f}{'n/a':>12}{'':>10}")
            continue
        t_nb = best_of(nb, kargs, args.repeat)
        print(f"{name:<18}{t_np:>12.5f}{t_nb:>12.5f}{t_np / t_nb:>9.1f}x")


if __name__ == "__main__":
    main()
