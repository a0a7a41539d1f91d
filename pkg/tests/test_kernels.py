import os
import subprocess
import sys

import numpy as np
import pytest

from normderiv import _pykernels, kernels
from normderiv.spaces import regular_polygon_vertices, RegularPolygon

ck = pytest.importorskip("normderiv._ckernels")


def _data(n, m=500, seed=50):
    rng = np.random.default_rng(seed)
    X = rng.standard_normal((m, n))
    # ties and zeros exercise the tolerance branches
    X[::3, 0] = 0.0
    if n > 1:
        X[1::3, 1] = X[1::3, 0]
    Y = rng.standard_normal((m, n))
    return np.ascontiguousarray(X), np.ascontiguousarray(Y)


@pytest.mark.parametrize("name", ["l1_rho_pm", "linf_rho_pm"])
@pytest.mark.parametrize("n", [1, 2, 5])
def test_coordinate_kernels_agree(name, n):
    X, Y = _data(n)
    a = getattr(_pykernels, name)(X, Y, 1e-10)
    b = getattr(ck, name)(X, Y, 1e-10)
    for u, v in zip(a, b):
        assert np.allclose(u, v, rtol=1e-13, atol=1e-13)


@pytest.mark.parametrize("n", [2, 3, 7])
def test_polygon_kernels_agree(n):
    F = np.ascontiguousarray(RegularPolygon(n).edge_functionals)
    X, Y = _data(2)
    X = np.vstack([X, regular_polygon_vertices(n)])
    Y = np.vstack([Y, np.roll(regular_polygon_vertices(n), 1, axis=0)])
    assert np.allclose(_pykernels.polygon_norms(F, X), ck.polygon_norms(F, X), rtol=1e-14)
    for u, v in zip(_pykernels.polygon_rho_pm(F, X, Y, 1e-10), ck.polygon_rho_pm(F, X, Y, 1e-10)):
        assert np.allclose(u, v, rtol=1e-13, atol=1e-13)


def test_default_backend_is_compiled():
    if os.environ.get("NORMDERIV_PURE", "") in ("", "0"):
        assert kernels.BACKEND == "cython"


def test_pure_fallback_selected_by_environment():
    code = ("from normderiv import kernels; from normderiv.gamma import gamma;"
            "from normderiv.spaces import RegularPolygon;"
            "print(kernels.BACKEND, repr(gamma(RegularPolygon(4)).value))")
    env = dict(os.environ, NORMDERIV_PURE="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True,
                         text=True, check=True).stdout.split()
    assert out[0] == "python"
    assert float(out[1]) == pytest.approx(1 / (2 * np.sqrt(2)), abs=1e-12)
