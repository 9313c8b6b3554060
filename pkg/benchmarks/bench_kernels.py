"""Compare the compiled kernels against the pure-Python fallback.

Times the two hot kernels (water level, Jacobi eigensolver) and the full
solver on representative sizes.  Run directly:

    python3 benchmarks/bench_kernels.py
"""

from __future__ import annotations

import time

import numpy as np

from optframe.kernels import _ckernels_available, load_backend


def _bench(fn, *args, repeat: int = 5, min_time: float = 0.2) -> float:
    """Best-of-repeat average seconds per call."""
    best = float("inf")
    for _ in range(repeat):
        n = 0
        t0 = time.perf_counter()
        while True:
            fn(*args)
            n += 1
            dt = time.perf_counter() - t0
            if dt >= min_time:
                break
        best = min(best, dt / n)
    return best


def main() -> None:
    rng = np.random.default_rng(7)
    backends = [("python", load_backend(force_python=True))]
    if _ckernels_available():
        backends.append(("cython", load_backend()))
    else:
        print("compiled kernels unavailable; benchmarking pure Python only")

    alpha = np.ascontiguousarray(np.sort(rng.random(200))[::-1])
    sym = rng.standard_normal((40, 40))
    sym = sym + sym.T

    print(f"{'kernel':<28}" + "".join(f"{name:>14}" for name, _ in backends))
    rows = [
        ("water_level n=200 d=120", lambda mod: mod.water_level(alpha, 120)),
        ("jacobi_eig 40x40", lambda mod: mod.jacobi_eig(sym)),
    ]
    times = {}
    for label, call in rows:
        vals = []
        for name, mod in backends:
            t = _bench(lambda m=mod: call(m))
            vals.append(t)
            times[(label, name)] = t
        line = f"{label:<28}" + "".join(f"{v * 1e6:>11.1f} us" for v in vals)
        if len(vals) == 2:
            line += f"   ({vals[0] / vals[1]:.1f}x)"
        print(line)

    # end-to-end: solver timing is backend-agnostic at the API level, so
    # flip the backend via the environment variable to compare manually.
    import optframe

    inp = optframe.problem_input(np.sort(rng.random(12) + 0.1)[::-1], [8, 6, 4, 2])
    t = _bench(lambda: optframe.solve(inp))
    print(f"{'solve n=12 m=4 (' + optframe.BACKEND + ')':<28}{t * 1e3:>11.2f} ms")


if __name__ == "__main__":
    main()
