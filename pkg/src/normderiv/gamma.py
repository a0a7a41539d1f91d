"""The constant Gamma(X) and its companions E(X), J(X) and delta_X.

Gamma(X) = sup{|rho'(x, y)| : x, y unit, x BJ-orthogonal to y}.

In the plane, for fixed x the BJ-orthogonal unit directions ahead of x form
the arc between the cone boundaries w1, w2, and rho'(x, .) is monotone along
it, so the inner supremum is max(|rho'(x, w1)|, |rho'(x, w2)|). For polygons
the outer supremum is attained at a vertex.
"""

import enum
import math
from dataclasses import dataclass

import numpy as np

from .cones2d import ortho_cone
from .derivatives import derivative
from .spaces import (Lp, OrthantMixed2D, SpaceError, UnsupportedSpace, _PolygonNorm,
                     sphere_points_2d)

__all__ = [
    "GammaMethod",
    "GammaResult",
    "UNSReport",
    "gamma",
    "gamma_polyhedral_2d",
    "gamma_closed_form_2ngon",
    "gamma_estimate",
    "e_constant",
    "james_constant_estimate",
    "modulus_of_convexity_estimate",
    "check_uns_relation",
    "polygon_vertices",
]

INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


class GammaMethod(str, enum.Enum):
    EXACT_POLYHEDRAL_2D = "ExactPolyhedral2D"
    CLOSED_FORM_2NGON = "ClosedForm2nGon"
    GRID_ESTIMATE = "GridEstimate"
    # the upper bound 1/2 is attained by an explicit witness (l1^n, l_inf^n)
    ATTAINED_BOUND = "AttainedBound"
    # smooth space: BJ- and rho-orthogonality coincide, so Gamma = 0
    SMOOTH = "Smooth"


@dataclass(frozen=True, eq=False)
class GammaResult:
    value: float
    witness_x: np.ndarray
    witness_y: np.ndarray
    method: GammaMethod
    lower_bound_only: bool = False


def polygon_vertices(space):
    """Unit-sphere vertices of a planar polyhedral space, counterclockwise."""
    if isinstance(space, _PolygonNorm):
        return space.vertices
    if isinstance(space, OrthantMixed2D) and space.polyhedral:
        return space.as_polygon().vertices
    if isinstance(space, Lp) and space.n == 2 and space.p in (1.0, math.inf):
        if space.p == 1:
            return np.array([[1.0, 0.0], [0.0, 1.0], [-1.0, 0.0], [0.0, -1.0]])
        return np.array([[1.0, 1.0], [-1.0, 1.0], [-1.0, -1.0], [1.0, -1.0]])
    raise UnsupportedSpace(f"{space!r} is not a planar polyhedral space")


def _boundary_values(space, x):
    cone = ortho_cone(space, x)
    r1 = abs(derivative(space, x, cone.w1).rho)
    r2 = abs(derivative(space, x, cone.w2).rho)
    return (r1, cone.w1) if r1 >= r2 else (r2, cone.w2)


def gamma_polyhedral_2d(space):
    """Exact Gamma of a planar polyhedral space: a maximum over vertices."""
    best, bx, by = -1.0, None, None
    for z in polygon_vertices(space):
        r, w = _boundary_values(space, z)
        if r > best + 1e-15:
            best, bx, by = r, np.array(z, dtype=float), w
    return GammaResult(best, bx, by, GammaMethod.EXACT_POLYHEDRAL_2D)


def gamma_closed_form_2ngon(n):
    """Gamma of the regular 2n-gon.

    Odd n: cos((n-2)pi/2n) / (2 cos(pi/2n)).
    Even n: (cos((n-3)pi/2n) + cos((n-1)pi/2n)) / (4 cos(pi/2n)).
    """
    if int(n) != n or n < 2:
        raise SpaceError(f"n must be an integer >= 2, got {n}")
    c = math.cos(math.pi / (2 * n))
    if n % 2:
        return math.cos((n - 2) * math.pi / (2 * n)) / (2 * c)
    return (math.cos((n - 3) * math.pi / (2 * n))
            + math.cos((n - 1) * math.pi / (2 * n))) / (4 * c)


def _golden(f, a, b, iters, maximize=True):
    """Golden-section search; returns the best (t, f(t)) seen."""
    sign = 1.0 if maximize else -1.0
    c = b - INV_PHI * (b - a)
    d = a + INV_PHI * (b - a)
    fc, fd = f(c), f(d)
    best = max([(sign * fc, c, fc), (sign * fd, d, fd)])
    for _ in range(iters):
        if sign * fc >= sign * fd:
            b, d, fd = d, c, fc
            c = b - INV_PHI * (b - a)
            fc = f(c)
            best = max(best, (sign * fc, c, fc))
        else:
            a, c, fc = c, d, fd
            d = a + INV_PHI * (b - a)
            fd = f(d)
            best = max(best, (sign * fd, d, fd))
    return best[1], best[2]


def _forward_functional(space, x):
    F = space.ext_functionals(x)
    t = np.array([-x[1], x[0]])
    return F[int(np.argmax(F @ t))]


def gamma_estimate(space, coarse=720, refine_iters=60):
    """Lower bound on Gamma of a planar space.

    Scans ``coarse`` equally spaced sphere directions. In every grid cell
    where the forward supporting functional of the left end stops
    supporting the right end, the switch point (a corner of the ball) is
    located by bisection and evaluated too. The best point is then refined
    by golden-section search over its neighbouring cells.
    """
    if space.dim != 2:
        raise UnsupportedSpace("gamma_estimate works on planar spaces")
    if coarse < 4:
        raise ValueError("coarse must be at least 4")
    th = 2 * math.pi * np.arange(coarse) / coarse
    X = sphere_points_2d(space, th)

    best = (-1.0, None, None, None)

    def consider(theta, x):
        nonlocal best
        r, w = _boundary_values(space, x)
        if r > best[0] + 1e-15:
            best = (r, theta, x, w)
        return r

    for t, x in zip(th, X):
        consider(t, x)

    # corners between grid points
    Fa = np.array([_forward_functional(space, x) for x in X])
    nxt = np.roll(X, -1, axis=0)
    kink = np.einsum("ij,ij->i", Fa, nxt) < 1.0 - 1e-13
    lo = th[kink]
    hi = lo + 2 * math.pi / coarse
    F = Fa[kink]
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        supp = np.einsum("ij,ij->i", F, sphere_points_2d(space, mid)) >= 1.0 - 1e-13
        lo = np.where(supp, mid, lo)
        hi = np.where(supp, hi, mid)
    for a, b in zip(lo, hi):
        for t in (a, b):
            consider(t, sphere_points_2d(space, [t])[0])

    h = 2 * math.pi / coarse
    t0 = best[1]
    _golden(lambda t: consider(t, sphere_points_2d(space, [t])[0]),
            t0 - h, t0 + h, refine_iters)
    r, _, x, w = best
    return GammaResult(r, x, w, GammaMethod.GRID_ESTIMATE, lower_bound_only=True)


def gamma(space, coarse=720, refine_iters=60):
    """Gamma by the best available route for the space family."""
    if isinstance(space, Lp):
        if space.n == 1:
            raise UnsupportedSpace("Gamma needs dimension at least 2")
        if space.smooth:
            e1 = np.eye(space.n)[0]
            return GammaResult(0.0, e1, np.eye(space.n)[1], GammaMethod.SMOOTH)
        if space.n > 2:
            x, y = np.zeros(space.n), np.zeros(space.n)
            if space.p == 1:
                x[0], y[0], y[1] = 1.0, 0.5, 0.5
            else:
                x[:], y[-1] = 1.0, 1.0
            r = abs(derivative(space, x, y).rho)
            return GammaResult(r, x, y, GammaMethod.ATTAINED_BOUND)
    try:
        polygon_vertices(space)
    except UnsupportedSpace:
        return gamma_estimate(space, coarse, refine_iters)
    return gamma_polyhedral_2d(space)


def _diameter(space, F):
    best = 0.0
    for i in range(len(F)):
        for j in range(i + 1, len(F)):
            best = max(best, space.dual_norm(F[i] - F[j]))
    return best


def e_constant(space):
    """E(X): the largest dual-norm diameter of J(x) over unit x."""
    if isinstance(space, Lp):
        if space.smooth:
            return 0.0
        return 2.0 if space.n >= 2 else 0.0
    if isinstance(space, _PolygonNorm):
        F = space.edge_functionals
        return float(max(space.dual_norm(F[i] - F[i - 1]) for i in range(len(F))))
    if isinstance(space, OrthantMixed2D):
        # non-smooth points lie on the axes or at l_inf corners
        pts = [(1, 0), (0, 1), (-1, 0), (0, -1), (1, 1), (-1, 1), (-1, -1), (1, -1)]
        return max(_diameter(space, space.ext_functionals(np.array(p, dtype=float)))
                   for p in pts)
    raise UnsupportedSpace(f"E(X) is not available for {space!r}")


def _crossing(space, th, pred, steps=60):
    # For x = x(th), bisect phi in (0, pi] on pred(x, y(th + phi)), which is
    # True near phi = 0 and False near phi = pi.
    X = sphere_points_2d(space, th)
    lo = np.zeros_like(th)
    hi = np.full_like(th, math.pi)
    for _ in range(steps):
        mid = 0.5 * (lo + hi)
        ok = pred(X, sphere_points_2d(space, th + mid))
        lo = np.where(ok, mid, lo)
        hi = np.where(ok, hi, mid)
    return X, sphere_points_2d(space, th + lo), sphere_points_2d(space, th + hi)


def james_constant_estimate(space, coarse=720, refine_iters=60):
    """Lower bound on sup{min(||x - y||, ||x + y||) : x, y unit}.

    For each x the minimum is largest where ||x - y|| = ||x + y||, which is
    found by bisection along the sphere from x to -x.
    """
    if space.dim != 2:
        raise UnsupportedSpace("james_constant_estimate works on planar spaces")

    def values(th):
        th = np.atleast_1d(np.asarray(th, dtype=float))
        X, Ylo, Yhi = _crossing(
            space, th, lambda X, Y: space.norms(X - Y) < space.norms(X + Y))
        v = [np.minimum(space.norms(X - Y), space.norms(X + Y)) for Y in (Ylo, Yhi)]
        return np.maximum(*v)

    th = math.pi * np.arange(coarse) / coarse
    vals = values(th)
    k = int(np.argmax(vals))
    h = math.pi / coarse
    _, v = _golden(lambda t: float(values(t)[0]), th[k] - h, th[k] + h, refine_iters)
    return float(max(vals[k], v))


def modulus_of_convexity_estimate(space, eps, coarse=720, refine_iters=60):
    """Upper bound on inf{1 - ||x + y||/2 : x, y unit, ||x - y|| >= eps}.

    For fixed x the infimum is reached at the first y past x with
    ||x - y|| = eps; the admissible end of the bisection bracket is used.
    """
    if space.dim != 2:
        raise UnsupportedSpace("modulus_of_convexity_estimate works on planar spaces")
    if not 0 <= eps <= 2:
        raise ValueError(f"eps must lie in [0, 2], got {eps}")
    if eps == 0:
        return 0.0

    def values(th):
        th = np.atleast_1d(np.asarray(th, dtype=float))
        X, _, Y = _crossing(space, th, lambda X, Y: space.norms(X - Y) < eps)
        return 1.0 - space.norms(X + Y) / 2.0

    th = 2 * math.pi * np.arange(coarse) / coarse
    vals = values(th)
    k = int(np.argmin(vals))
    h = 2 * math.pi / coarse
    _, v = _golden(lambda t: float(values(t)[0]), th[k] - h, th[k] + h, refine_iters,
                   maximize=False)
    return float(max(0.0, min(vals[k], v)))


@dataclass(frozen=True)
class UNSReport:
    gamma: float
    gamma_method: str
    james: float
    uniformly_non_square: bool
    violation: bool


def check_uns_relation(space, coarse=720, refine_iters=60):
    """Check that Gamma < 1/2 forces uniform non-squareness (J < 2).

    A violation is reported only for Gamma < 1/2 - 1e-6 together with a
    James estimate above 2 - 1e-6.
    """
    g = gamma(space, coarse, refine_iters)
    j = james_constant_estimate(space, coarse, refine_iters)
    uns = j <= 2 - 1e-6
    return UNSReport(g.value, g.method.value, j, uns,
                     bool(g.value < 0.5 - 1e-6 and not uns))
