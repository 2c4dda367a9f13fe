"""Compare the compiled pairwise kernels against the numpy fallback.

Run:  python3 benchmarks/bench_kernels.py [N ...]
"""

from __future__ import annotations

import sys
import timeit

import numpy as np

from nvortex import _reference

try:
    from nvortex import _speedups
except ImportError:
    _speedups = None


def bench(n: int, repeats: int = 5) -> None:
    rng = np.random.default_rng(0)
    gam = rng.uniform(0.5, 2.0, n)
    z = rng.uniform(-3.0, 3.0, 2 * n)
    print(f"N = {n}")
    for name in ("hamiltonian", "gradient", "hessian", "min_pair_distance"):
        ref_fn = getattr(_reference, name)
        args = (z,) if name == "min_pair_distance" else (gam, z)
        number = max(1, int(2e5 / (n * n)))
        t_ref = min(timeit.repeat(lambda: ref_fn(*args), number=number, repeat=repeats)) / number
        line = f"  {name:18s} python {t_ref * 1e6:9.2f} us"
        if _speedups is not None:
            cmp_fn = getattr(_speedups, name)
            t_cmp = min(timeit.repeat(lambda: cmp_fn(*args), number=number, repeat=repeats)) / number
            line += f"   compiled {t_cmp * 1e6:9.2f} us   speedup {t_ref / t_cmp:6.2f}x"
        print(line)


def main() -> None:
    sizes = [int(a) for a in sys.argv[1:]] or [4, 16, 64, 256]
    if _speedups is None:
        print("compiled backend not available; timing the fallback only")
    for n in sizes:
        bench(n)


if __name__ == "__main__":
    main()
