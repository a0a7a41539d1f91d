"""Backend selection for the batched kernels.

The compiled extension ``_ckernels`` is used when it was built; otherwise the
numpy fallback in ``_pykernels`` is used. Setting ``NORMDERIV_PURE=1`` in the
environment forces the fallback.
"""

import os

import numpy as np

from . import _pykernels

if os.environ.get("NORMDERIV_PURE", "") not in ("", "0"):
    _impl = _pykernels
    BACKEND = "python"
else:
    try:
        from . import _ckernels as _impl
        BACKEND = "cython"
    except ImportError:
        _impl = _pykernels
        BACKEND = "python"


def _arr(a):
    return np.ascontiguousarray(a, dtype=np.float64)


def l1_rho_pm(X, Y, tol):
    return _impl.l1_rho_pm(_arr(X), _arr(Y), float(tol))


def linf_rho_pm(X, Y, tol):
    return _impl.linf_rho_pm(_arr(X), _arr(Y), float(tol))


def polygon_norms(F, P):
    return _impl.polygon_norms(_arr(F), _arr(P))


def polygon_rho_pm(F, X, Y, tol):
    return _impl.polygon_rho_pm(_arr(F), _arr(X), _arr(Y), float(tol))
