"""Benchmark the compiled factored-product kernel against the numpy
fallback.

The kernel evaluates coefficient * prod(z^e, (z^k - c)^e) on complex node
arrays; it dominates contour residues and path quadrature.  Run:

    python3 benchmarks/bench_kernels.py
"""

import time

import numpy as np

from spheremin import make_double_vase
from spheremin.algebra import FactoredMeromorphic
from spheremin.kernels import BACKEND


def _load_backends():
    backends = {}
    try:
        from spheremin import _kernels

        backends["cython"] = _kernels
    except ImportError:
        pass
    from spheremin import _kernels_py

    backends["python"] = backends.get("python", _kernels_py)
    return backends


def _bench(kernel, f: FactoredMeromorphic, z: np.ndarray, repeats: int):
    out = np.empty_like(z)
    kinds, ks, cs, exps = f._packed
    kernel.eval_product(f.coefficient, kinds, ks, cs, exps, z, out)
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        kernel.eval_product(f.coefficient, kinds, ks, cs, exps, z, out)
        best = min(best, time.perf_counter() - t0)
    return best, out.copy()


def main():
    rng = np.random.default_rng(0)
    dv = make_double_vase(6, 0.25)
    forms = {"G": dv.data.gauss_map, "dh": dv.data.dh}
    backends = _load_backends()
    print(f"active backend at import: {BACKEND}")
    print(f"{'form':>4} {'n':>8} " + " ".join(f"{k:>12}" for k in backends)
          + "   speedup")
    for name, f in forms.items():
        for n in (1_000, 30_000, 1_000_000):
            z = rng.normal(size=n) + 1j * rng.normal(size=n)
            times, vals = {}, {}
            for bk, kernel in backends.items():
                times[bk], vals[bk] = _bench(kernel, f, z, repeats=5)
            if len(vals) == 2:
                a, b = vals["cython"], vals["python"]
                assert np.allclose(a, b, rtol=1e-12, atol=0.0, equal_nan=True)
            cols = " ".join(f"{times[bk] * 1e3:9.3f} ms" for bk in backends)
            ratio = (times["python"] / times["cython"]
                     if "cython" in times else float("nan"))
            print(f"{name:>4} {n:>8} {cols}   {ratio:6.2f}x")


if __name__ == "__main__":
    main()
