"""Pure numpy implementations of the batched kernels.

Every function here has a twin with the same signature in ``_ckernels.pyx``.
Inputs are C-contiguous float64 arrays; rows of ``X`` and ``Y`` are paired.
"""

import numpy as np


def l1_rho_pm(X, Y, tol):
    """One-sided norm derivatives in l1^n for row pairs (x, y).

    rho'_+/- = ||x||_1 * (sum_{k not in Z} sgn(x_k) y_k +/- sum_{k in Z} |y_k|)
    where Z holds the coordinates with |x_k| <= tol * ||x||_1.
    """
    ax = np.abs(X)
    nx = ax.sum(axis=1)
    zero = ax <= tol * nx[:, None]
    s = np.where(zero, 0.0, np.sign(X) * Y).sum(axis=1)
    z = np.where(zero, np.abs(Y), 0.0).sum(axis=1)
    return nx * (s + z), nx * (s - z)


def linf_rho_pm(X, Y, tol):
    """One-sided norm derivatives in l_inf^n for row pairs (x, y).

    The extreme supporting functionals are sgn(x_i) e_i for i in I_x, the
    coordinates with |x_i| >= (1 - tol) ||x||_inf.
    """
    ax = np.abs(X)
    nx = ax.max(axis=1)
    active = ax >= (1.0 - tol) * nx[:, None]
    vals = np.sign(X) * Y
    hi = np.where(active, vals, -np.inf).max(axis=1)
    lo = np.where(active, vals, np.inf).min(axis=1)
    return nx * hi, nx * lo


def polygon_norms(F, P):
    """Polygon gauge: max over edge functionals F (rows) of f(p)."""
    return (P @ F.T).max(axis=1)


def polygon_rho_pm(F, X, Y, tol):
    """One-sided norm derivatives for a polygon norm with edge functionals F.

    The active edges at x are those whose functional attains ||x|| up to a
    relative slack ``tol``.
    """
    V = X @ F.T
    nx = V.max(axis=1)
    active = V >= nx[:, None] * (1.0 - tol)
    W = Y @ F.T
    hi = np.where(active, W, -np.inf).max(axis=1)
    lo = np.where(active, W, np.inf).min(axis=1)
    return nx * hi, nx * lo
