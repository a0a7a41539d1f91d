"""Compare the compiled and numpy kernels on batched norm derivatives.

    python3 benchmarks/bench_kernels.py --pairs 200000 --repeat 5

Both backends are imported directly, so one run times both. The compiled
one is skipped (with a note) when the extension was not built.
"""

import argparse
import math
import time

import numpy as np

from normderiv import _pykernels
from normderiv.spaces import RegularPolygon

try:
    from normderiv import _ckernels
except ImportError:
    _ckernels = None


def _time(fn, repeat):
    best = math.inf
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t)
    return best


def _cases(pairs, rng):
    # integer-valued x so ties and zeros (the branching cases) actually occur
    X = rng.integers(-2, 3, size=(pairs, 5)).astype(float)
    X[~X.any(axis=1), 0] = 1.0
    Y = rng.standard_normal((pairs, 5))
    F = RegularPolygon(6).edge_functionals
    P = rng.standard_normal((pairs, 2))
    Q = rng.standard_normal((pairs, 2))
    return {
        "l1_rho_pm (n=5)": lambda k: k.l1_rho_pm(X, Y, 1e-10),
        "linf_rho_pm (n=5)": lambda k: k.linf_rho_pm(X, Y, 1e-10),
        "polygon_norms (12-gon)": lambda k: k.polygon_norms(F, P),
        "polygon_rho_pm (12-gon)": lambda k: k.polygon_rho_pm(F, P, Q, 1e-10),
    }


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.split("\n\n")[0])
    ap.add_argument("--pairs", type=int, default=200_000)
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)

    rng = np.random.default_rng(args.seed)
    print(f"{args.pairs} pairs, best of {args.repeat}")
    print(f"{'kernel':26s} {'python [s]':>11s} {'cython [s]':>11s} {'speedup':>8s}  agree")
    for name, call in _cases(args.pairs, rng).items():
        tp = _time(lambda: call(_pykernels), args.repeat)
        if _ckernels is None:
            print(f"{name:26s} {tp:11.4f} {'n/a':>11s}")
            continue
        tc = _time(lambda: call(_ckernels), args.repeat)
        a, b = call(_pykernels), call(_ckernels)
        a, b = (a, b) if isinstance(a, tuple) else ((a,), (b,))
        agree = all(np.allclose(u, v, rtol=0, atol=1e-12) for u, v in zip(a, b))
        print(f"{name:26s} {tp:11.4f} {tc:11.4f} {tp / tc:7.1f}x  {agree}")
    if _ckernels is None:
        print("compiled extension not built; run `pip install -e . --no-build-isolation`")


if __name__ == "__main__":
    main()
