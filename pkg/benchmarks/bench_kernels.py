"""Compiled kernels versus their numpy fallbacks.

    python3 benchmarks/bench_kernels.py --sizes 8 16 32 --repeat 5

Prints the best-of-``repeat`` time per call for each kernel and size, and
checks that both paths return the same answer before timing them.
"""

import argparse
import timeit

import numpy as np

from fuzzyrank import _kernels as K


def sinkhorn(rng, n, iters=500):
    m = rng.random((n, n)) + 0.05
    for _ in range(iters):
        m /= m.sum(axis=1, keepdims=True)
        m /= m.sum(axis=0, keepdims=True)
    return m


def sparse_bistochastic(rng, n, terms):
    # few nonzeros per row: the typical input for decomposition
    w = rng.dirichlet(np.ones(terms))
    m = np.zeros((n, n))
    for wk in w:
        m[np.arange(n), rng.permutation(n)] += wk
    return m


def cases(rng, n):
    pa, pb = rng.permutation(n).astype(np.int64), rng.permutation(n).astype(np.int64)
    h = np.cumsum(rng.dirichlet(np.ones(n), size=n), axis=1)
    support = sinkhorn(rng, n) > 0.5 / n
    f = sparse_bistochastic(rng, n, min(2 * n, 40))
    return {
        "discordant_pairs": ((pa, pb), K.discordant_pairs_jit, K.discordant_pairs_fallback),
        "dominance_codes": ((h, 1e-9), K.dominance_codes_jit, K.dominance_codes_fallback),
        "perfect_matching": ((support,), K.perfect_matching_jit, K.perfect_matching_fallback),
        "birkhoff": ((f, 1e-9), K.birkhoff_jit, K.birkhoff_fallback),
    }


def same(x, y):
    if isinstance(x, tuple):
        return all(same(a, b) for a, b in zip(x, y))
    return np.allclose(x, y, atol=1e-12)


def best(fn, args, repeat):
    number = 1
    while timeit.timeit(lambda: fn(*args), number=number) < 0.05 and number < 1 << 20:
        number *= 4
    return min(timeit.repeat(lambda: fn(*args), number=number, repeat=repeat)) / number


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[8, 16, 32])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    if not K.HAVE_NUMBA:
        raise SystemExit("numba is not installed; nothing to compare")
    rng = np.random.default_rng(args.seed)
    print(f"{'kernel':<18}{'n':>6}{'numba':>14}{'numpy':>14}{'speedup':>10}")
    for n in args.sizes:
        for name, (call_args, jit, fallback) in cases(rng, n).items():
            jit(*call_args)  # compile, or load from cache
            if not same(jit(*call_args), fallback(*call_args)):
                raise SystemExit(f"{name} n={n}: paths disagree")
            tj, tf = best(jit, call_args, args.repeat), best(fallback, call_args, args.repeat)
            print(f"{name:<18}{n:>6}{tj * 1e6:>12.1f}us{tf * 1e6:>12.1f}us{tf / tj:>9.1f}x")


if __name__ == "__main__":
    main()
