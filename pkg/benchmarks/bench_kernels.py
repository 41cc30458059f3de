#!/usr/bin/env python3
"""Compare the numba kernel path against the pure-numpy fallback.

The hot loops are the ones that dominate basis computations: merging scaled
term lists (the reduction step), full normal forms against a packed basis,
and term-list products.  Each workload runs on both backends (after a numba
warm-up pass so compilation is not timed) and reports wall time plus the
speedup.  Select the default backend for the package itself with CHARP_JIT;
this script switches explicitly.

Usage: python benchmarks/bench_kernels.py [--repeat N] [--quick]
"""

import argparse
import random
import time


from charp import Ideal, Ring
from charp import _kernels as K
from charp.decomposition import ex8_build
from charp.frobenius import frob_root


def rand_poly(ring, rng, terms, deg):
    out = []
    for _ in range(terms):
        vec = tuple(rng.randint(0, deg) for _ in ring.vars)
        out.append((vec, rng.randint(1, ring.p - 1)))
    return ring.from_terms(out)


def rand_poly_tdeg(ring, rng, terms, total_deg):
    """Bounded total degree per term; keeps eliminations tractable."""
    out = []
    for _ in range(terms):
        remaining = total_deg
        vec = []
        for _v in ring.vars:
            e = rng.randint(0, remaining)
            vec.append(e)
            remaining -= e
        rng.shuffle(vec)
        out.append((tuple(vec), rng.randint(1, ring.p - 1)))
    return ring.from_terms(out)


def bench_axpy(rng):
    R = Ring(32003, ["X", "Y", "Z"])
    f = rand_poly(R, rng, 4000, 60)
    g = rand_poly(R, rng, 4000, 60)

    def run():
        acc = f
        for _ in range(60):
            acc = acc + g
            acc = acc - g
        return acc.nterms()

    return run


def bench_mul(rng):
    R = Ring(32003, ["X", "Y", "Z"])
    f = rand_poly(R, rng, 90, 30)
    g = rand_poly(R, rng, 90, 30)

    def run():
        total = 0
        for _ in range(12):
            total += (f * g).nterms()
        return total

    return run


def bench_groebner(rng):
    R = Ring(32003, ["X", "Y", "Z"])
    systems = []
    for _ in range(6):
        systems.append([rand_poly(R, rng, 5, 4) for _ in range(3)])

    def run():
        total = 0
        for gens in systems:
            total += len(Ideal(R, gens).groebner())
        return total

    return run


def bench_frob_root(rng):
    from charp.frobenius import frob_power

    R = Ring(3, ["X", "Y", "Z"])
    ideals = [Ideal(R, [rand_poly_tdeg(R, rng, 3, 4) for _ in range(3)])
              for _ in range(10)]

    def run():
        total = 0
        for I in ideals:
            total += len(frob_root(frob_power(I, 1), method="elimination").groebner())
        return total

    return run


def bench_family(_rng):
    def run():
        rep = ex8_build(7, 2, (1, 1, 1), 3)
        return sum(rep.ass_sizes)

    return run


WORKLOADS = [
    ("axpy merge, 4k-term operands", bench_axpy),
    ("term-list products, 90x90", bench_mul),
    ("groebner, 6 random systems", bench_groebner),
    ("frobenius root by elimination", bench_frob_root),
    ("escalating-primes family, depth 3", bench_family),
]


def time_backend(run, backend, repeat):
    K.use_backend(backend)
    run()  # warm-up (JIT compile / cache load)
    best = float("inf")
    result = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = run()
        best = min(best, time.perf_counter() - t0)
    return best, result


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--quick", action="store_true", help="single repetition")
    args = ap.parse_args()
    repeat = 1 if args.quick else args.repeat

    if not K._HAVE_NUMBA:
        raise SystemExit("numba is not importable; nothing to compare")

    rng = random.Random(4057)
    print(f"{'workload':<38} {'numba':>10} {'numpy':>10} {'speedup':>9}")
    for name, make in WORKLOADS:
        run = make(rng)
        t_nb, r_nb = time_backend(run, "numba", repeat)
        t_np, r_np = time_backend(run, "numpy", repeat)
        if r_nb != r_np:
            raise SystemExit(f"backend results differ on {name!r}: {r_nb} vs {r_np}")
        print(f"{name:<38} {t_nb * 1e3:>8.1f}ms {t_np * 1e3:>8.1f}ms {t_np / t_nb:>8.1f}x")
    K.use_backend("numba")


if __name__ == "__main__":
    main()
