"""Birkhoff-James orthogonality cones in the plane.

In a two-dimensional space the set {y : x is BJ-orthogonal to y} is K u (-K)
for a closed cone K spanned by two unit directions w1, w2 lying in the open
half-plane ahead of x (det(x, w) > 0). Walking the unit sphere from x towards
-x, rho'_-(x, .) changes sign at w1 and rho'_+(x, .) at w2.
"""

import math
from dataclasses import dataclass

import numpy as np

from .derivatives import derivative, derivative_batch
from .spaces import (DimensionMismatch, RegularPolygon, SpaceError, ZeroVector, _vec,
                     regular_polygon_vertices)

__all__ = [
    "OrthoCone",
    "MonotoneReport",
    "precedes",
    "det2",
    "ortho_cone",
    "regular_polygon_cone",
    "verify_monotone",
]

BISECT_STEPS = 80
KERNEL_TOL = 1e-12


def det2(x, y):
    return float(x[0] * y[1] - x[1] * y[0])


def precedes(x, y):
    """Strict orientation order: x comes before y when det(x, y) > 0."""
    return det2(x, y) > 0


@dataclass(frozen=True, eq=False)
class OrthoCone:
    """Unit boundary directions of the BJ cone of ``base``; w1 = w2 for a line."""

    w1: np.ndarray
    w2: np.ndarray
    base: np.ndarray

    @property
    def degenerate(self):
        return bool(np.allclose(self.w1, self.w2, rtol=0, atol=1e-12))

    def angles(self):
        """Angles of w1 and w2 measured counterclockwise from base, in (0, pi)."""
        b = math.atan2(self.base[1], self.base[0])
        return tuple(float(np.mod(math.atan2(w[1], w[0]) - b, 2 * math.pi))
                     for w in (self.w1, self.w2))


def _need_2d(space):
    if space.dim != 2:
        raise DimensionMismatch("orthogonality cones are planar")


def _forward_unit(space, x, d):
    d = np.asarray(d, dtype=float)
    if det2(x, d) < 0:
        d = -d
    return d / space.norm(d) + 0.0  # drop negative zeros


def _exact_cone(space, x):
    # J(x) is the segment between the extreme functionals, so the cone is
    # bounded by their kernels; order them by angle past x
    ks = [_forward_unit(space, x, (-f[1], f[0])) for f in space.ext_functionals(x)]
    ks.sort(key=lambda w: math.atan2(det2(x, w), float(np.dot(x, w))))
    return OrthoCone(ks[0], ks[-1], x)


def _bisect_boundary(space, x, pick, method):
    # pick(triple) is True on the x side of the boundary and False past it
    th = math.atan2(x[1], x[0])
    lo, hi = 0.0, math.pi
    for _ in range(BISECT_STEPS):
        mid = 0.5 * (lo + hi)
        y = np.array([math.cos(th + mid), math.sin(th + mid)])
        if pick(derivative(space, x, y, method)):
            lo = mid
        else:
            hi = mid
    phi = 0.5 * (lo + hi)
    y = np.array([math.cos(th + phi), math.sin(th + phi)])
    return y / space.norm(y)


def ortho_cone(space, x, method=None):
    """The cone (w1, w2) of unit directions BJ-orthogonal to x.

    ``method="exact"`` (the default whenever the space lists its extreme
    supporting functionals) takes the kernels of the extreme functionals at
    x. ``method="bisect"`` locates the sign changes of rho'_- and rho'_+ by
    bisection in angle; ``method="numeric"`` does the same with numeric
    derivatives.
    """
    _need_2d(space)
    x = _vec(space, x)
    if space.norm(x) == 0:
        raise ZeroVector("the cone of x = 0 is undefined")
    if method in (None, "exact") and hasattr(space, "ext_functionals"):
        return _exact_cone(space, x)
    dmethod = "numeric" if method == "numeric" else None
    w1 = _bisect_boundary(space, x, lambda d: d.rho_minus > 0, dmethod)
    w2 = _bisect_boundary(space, x, lambda d: d.rho_plus >= 0, dmethod)
    return OrthoCone(w1, w2, x)


def _v(V, k):
    # 1-based vertex index, taken modulo 2n
    return V[(k - 1) % len(V)]


def regular_polygon_cone(n, m):
    """Closed-form cone of the vertex v_m of the regular 2n-gon.

    For odd n: w1 = v_((n+2m-1)/2), w2 = v_((n+2m+1)/2). For even n the
    boundaries are edge midpoints: w1 = (v_((n+2m-2)/2) + v_((n+2m)/2)) / 2,
    w2 = (v_((n+2m)/2) + v_((n+2m+2)/2)) / 2. Indices are 1-based modulo 2n.
    Each result is checked to lie in the kernel of the edge functional on
    the matching side of v_m before it is returned.
    """
    V = regular_polygon_vertices(n)
    if int(m) != m or not 1 <= m <= 2 * n:
        raise SpaceError(f"vertex index m must be in 1..{2 * n}, got {m}")
    m = int(m)
    if n % 2:
        w1 = _v(V, (n + 2 * m - 1) // 2)
        w2 = _v(V, (n + 2 * m + 1) // 2)
    else:
        w1 = 0.5 * (_v(V, (n + 2 * m - 2) // 2) + _v(V, (n + 2 * m) // 2))
        w2 = 0.5 * (_v(V, (n + 2 * m) // 2) + _v(V, (n + 2 * m + 2) // 2))
    F = RegularPolygon(n).edge_functionals
    # the edges meeting at v_m are edges m-1 and m (1-based, cyclic)
    f_before, f_after = F[(m - 2) % (2 * n)], F[(m - 1) % (2 * n)]
    if abs(f_before @ w1) > KERNEL_TOL or abs(f_after @ w2) > KERNEL_TOL:
        raise ArithmeticError(f"closed-form cone for n={n}, m={m} failed the kernel check")
    return OrthoCone(np.array(w1), np.array(w2), np.array(_v(V, m)))


@dataclass(frozen=True)
class MonotoneReport:
    samples: int
    max_violation: float
    passed: bool


def verify_monotone(space, x, samples=360, tol=1e-9):
    """Check that rho'(x, w) does not increase as w turns from x to -x.

    ``samples`` unit vectors are taken at the angles pi*i/(samples+1) past x
    (strictly between x and -x). The violation is the largest rise
    rho'(x, w_j) - min_{i<j} rho'(x, w_i).
    """
    _need_2d(space)
    x = _vec(space, x)
    if space.norm(x) == 0:
        raise ZeroVector("x must be nonzero")
    if samples < 2:
        raise ValueError("need at least two samples")
    th = math.atan2(x[1], x[0]) + math.pi * np.arange(1, samples + 1) / (samples + 1)
    W = np.column_stack([np.cos(th), np.sin(th)])
    W /= space.norms(W)[:, None]
    plus, minus = derivative_batch(space, np.broadcast_to(x, W.shape), W)
    rho = 0.5 * (plus + minus)
    rise = rho - np.minimum.accumulate(rho)
    worst = float(rise.max())
    return MonotoneReport(samples, worst, worst <= tol)
