"""Compare the compiled and pure-Python kernels on the workloads the package runs.

    python benchmarks/bench_kernels.py [--repeat N]

Each workload is timed on every available backend and the outputs are
checked to agree before any timing is reported.
"""

import argparse
import time

import numpy as np

from g2unital import kernels
from g2unital.compalg import octonions
from g2unital.geometry import build_U
from g2unital.gf import field


def _oct_mul_workload():
    alg = octonions(3)
    rng = np.random.default_rng(1)
    A = rng.integers(0, 3, size=(200_000, 8)).astype(np.uint8)
    B = rng.integers(0, 3, size=(200_000, 8)).astype(np.uint8)
    F = alg.F
    return lambda: kernels.oct_mul(A, B, alg.kidx, alg.ksign, F.add, F.mul, F.neg)


def _rref_workload():
    F = field(9)
    rng = np.random.default_rng(2)
    mats = [rng.integers(0, 9, size=(8, 16)).astype(np.uint8) for _ in range(2000)]
    return lambda: [kernels.rref(M, F.add, F.mul, F.neg, F.inv) for M in mats]


def _onan_workload():
    masks = build_U(2).masks
    return lambda: kernels.onan_search(masks)


WORKLOADS = {
    "oct_mul 200k products, q=3": _oct_mul_workload,
    "rref 2000 8x16 over F9": _rref_workload,
    "O'Nan sweep over 63 blocks": _onan_workload,
}


def _same(a, b):
    if isinstance(a, np.ndarray):
        return np.array_equal(a, b)
    if isinstance(a, list) and a and isinstance(a[0], np.ndarray):
        return all(np.array_equal(x, y) for x, y in zip(a, b))
    return a == b


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    backends = kernels.available_backends()
    print(f"backends: {', '.join(backends)}")
    prev = kernels.backend()
    try:
        for name, make in WORKLOADS.items():
            run = make()
            times, outputs = {}, {}
            for be in backends:
                kernels.use_backend(be)
                outputs[be] = run()
                best = float("inf")
                for _ in range(args.repeat):
                    t0 = time.perf_counter()
                    run()
                    best = min(best, time.perf_counter() - t0)
                times[be] = best
            ref = outputs[backends[0]]
            if not all(_same(ref, outputs[be]) for be in backends):
                raise SystemExit(f"{name}: backends disagree")
            row = "  ".join(f"{be} {times[be] * 1000:9.1f} ms" for be in backends)
            speed = ""
            if "cython" in times:
                speed = f"  speedup x{times['python'] / times['cython']:.1f}"
            print(f"{name:32s} {row}{speed}")
    finally:
        kernels.use_backend(prev)


if __name__ == "__main__":
    main()
