"""Time the numba kernels against their numpy twins.

    python benchmarks/bench_kernels.py [--sizes 200 2000 20000] [--repeat 5]

Both backends are imported in one process; the numba path is warmed up
once before timing so compilation is not counted.
"""
from __future__ import annotations

import argparse
import timeit

import numpy as np

from commlang import _kernels as K


def random_dfa(rng: np.random.Generator, n: int, k: int):
    return rng.integers(0, n, size=(n, k)).astype(np.int64), rng.random(n) < 0.5


def bench(n: int, k: int, repeat: int, seed: int) -> list[tuple[str, str, float]]:
    rng = np.random.default_rng(seed)
    ta, fa = random_dfa(rng, n, k)
    # a relabeled copy: equivalent, so the product search cannot stop early
    perm = rng.permutation(n)
    tb = np.empty_like(ta)
    tb[perm] = perm[ta]
    fb = np.empty_like(fa)
    fb[perm] = fa
    sb = int(perm[0])
    jobs = {
        "moore": lambda b: K.moore_classes(ta, fa, backend=b),
        "equivalence": lambda b: K.distinguishable(ta, fa, 0, tb, fb, sb, backend=b),
        "reachable": lambda b: K.reachable(ta, 0, backend=b),
    }
    backends = ["numpy"] + (["numba"] if K.NUMBA_AVAILABLE else [])
    rows = []
    for name, job in jobs.items():
        expected = None
        for b in backends:
            out = job(b)  # warm-up, and agreement check
            out = out.tolist() if isinstance(out, np.ndarray) else out
            if expected is None:
                expected = out
            elif out != expected:
                raise AssertionError(f"{name}: backends disagree at n={n}")
            if name == "equivalence" and out:
                raise AssertionError("relabeled copy reported inequivalent")
            best = min(timeit.repeat(lambda: job(b), number=1, repeat=repeat))
            rows.append((name, b, best))
    return rows


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--sizes", type=int, nargs="+", default=[200, 2000, 20000])
    parser.add_argument("--letters", type=int, default=3)
    parser.add_argument("--repeat", type=int, default=5)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()
    if not K.NUMBA_AVAILABLE:
        print("numba unavailable or disabled; timing numpy only")
    print(f"{'kernel':<12} {'states':>7} {'backend':<7} {'best (ms)':>10} {'speedup':>8}")
    for n in args.sizes:
        rows = bench(n, args.letters, args.repeat, args.seed)
        base = {name: t for name, b, t in rows if b == "numpy"}
        for name, b, t in rows:
            print(f"{name:<12} {n:>7} {b:<7} {t * 1e3:>10.3f} {base[name] / t:>7.1f}x")


if __name__ == "__main__":
    main()
