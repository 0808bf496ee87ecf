"""Compare the numba and pure-numpy kernel backends.

Usage:
    python3 benchmarks/bench_kernels.py [--fibers 20000] [--repeat 3]

Times symbol-batch assembly and the fiber resolvent-difference norms for
each backend that is available, printing one row per (task, n, backend).
The numba pass includes a warmup call so JIT compilation is not billed.
"""

import argparse
import os
import time

import numpy as np


def run_one(n, fibers, repeat, rng):
    from cubedec import kernels
    from cubedec.symbols import forward_coeffs

    zetas = rng.uniform(-6.0, 6.0, size=(fibers, n))
    coeffs = np.stack([forward_coeffs(n, 0.5, q) for q in zetas])
    rows = []
    kernels.assemble_symbol_batch(n, coeffs[:16])
    kernels.fiber_difference_norms(n, 0.5, 1j, zetas[:16])
    best_asm = min(
        _timed(lambda: kernels.assemble_symbol_batch(n, coeffs)) for _ in range(repeat)
    )
    best_nrm = min(
        _timed(lambda: kernels.fiber_difference_norms(n, 0.5, 1j, zetas))
        for _ in range(repeat)
    )
    rows.append(("assemble", n, kernels.backend_name(), best_asm))
    rows.append(("norms", n, kernels.backend_name(), best_nrm))
    return rows


def _timed(fn):
    t0 = time.perf_counter()
    fn()
    return time.perf_counter() - t0


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--fibers", type=int, default=20000)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    backends = ["numpy"]
    try:
        import numba  # noqa: F401

        backends.append("numba")
    except ImportError:
        print("numba not importable, timing numpy only")

    all_rows = []
    for backend in backends:
        os.environ["DEC_BACKEND"] = backend
        rng = np.random.default_rng(args.seed)
        for n in (1, 2, 3):
            all_rows.extend(run_one(n, args.fibers, args.repeat, rng))

    print(f"\n{args.fibers} fibers, best of {args.repeat}")
    print(f"{'task':<10} {'n':>2} {'backend':<8} {'seconds':>10}")
    for task, n, backend, sec in sorted(all_rows):
        print(f"{task:<10} {n:>2} {backend:<8} {sec:>10.4f}")

    for task in ("assemble", "norms"):
        for n in (1, 2, 3):
            times = {b: s for t, nn, b, s in all_rows if t == task and nn == n}
            if len(times) == 2 and times["numba"] > 0:
                print(f"{task} n={n}: numpy/numba speed ratio {times['numpy'] / times['numba']:.2f}x")


if __name__ == "__main__":
    main()
