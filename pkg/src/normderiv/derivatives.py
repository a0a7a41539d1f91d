"""One-sided norm derivatives and the orthogonalities built on them.

For x != 0 the norm derivatives are

    rho'_+(x, y) = ||x|| lim_{t->0+} (||x + t y|| - ||x||) / t
    rho'_-(x, y) = ||x|| lim_{t->0-} (||x + t y|| - ||x||) / t
    rho'(x, y)   = (rho'_+ + rho'_-) / 2.

The exact path evaluates them as ||x|| max f(y) and ||x|| min f(y) over the
extreme supporting functionals f of x/||x||. The numeric path uses one-sided
difference quotients on a geometric step ladder; see ``difference_quotients``.
"""

import enum
import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .spaces import (SUPPORT_TOL, Lp, OrthantMixed2D, ZeroVector, _PolygonNorm,
                     _lp_norm, _vec)

__all__ = [
    "Method",
    "Cone",
    "DerivativeTriple",
    "Ladder",
    "NumericDerivativeError",
    "derivative",
    "derivative_batch",
    "difference_quotients",
    "is_birkhoff",
    "is_rho_orthogonal",
    "rho_cone_membership",
    "alpha_right",
    "alpha_left",
    "is_smooth_point",
]

STEP0 = 1e-2
RATIO = 0.25
RUNGS = 13
ORTH_TOL = 1e-9
CERT_TOL = 1e-6
# rounding floor, relative to |alpha| ||x|| + ||y||, for a cancelling alpha x + y
CANCEL_TOL = 1e-12


class Method(str, enum.Enum):
    EXACT = "exact"
    NUMERIC = "numeric"


class Cone(str, enum.Enum):
    """Membership of y in the cones x^{rho+} / x^{rho-}."""

    PLUS_ONLY = "plus_only"
    MINUS_ONLY = "minus_only"
    BOTH = "both"


class NumericDerivativeError(ArithmeticError):
    """The difference-quotient ladder did not settle to the required width."""


@dataclass(frozen=True)
class DerivativeTriple:
    rho_plus: float
    rho_minus: float
    rho: float
    method: Method
    bracket_width: float = 0.0

    @classmethod
    def build(cls, plus, minus, method, width=0.0):
        plus, minus = float(plus), float(minus)
        return cls(plus, minus, (plus + minus) / 2, method, float(width))


@dataclass(frozen=True)
class Ladder:
    """Difference quotients of t -> ||x + t y|| on the step ladder.

    ``q_plus[k]`` is the quotient at +t[k], ``q_minus[k]`` at -t[k], and
    ``slack[k]`` bounds the floating-point error of either quotient. By
    convexity ``q_minus[k] <= rho'_- <= rho'_+ <= q_plus[k]`` for every k,
    up to ``slack[k]``.
    """

    t: np.ndarray
    q_plus: np.ndarray
    q_minus: np.ndarray
    slack: np.ndarray


def _has_exact(space):
    return isinstance(space, (Lp, _PolygonNorm, OrthantMixed2D))


def _exact_pm(space, x, y, nx):
    if isinstance(space, Lp) and space.p == 1:
        a = np.abs(x)
        if np.count_nonzero(a <= SUPPORT_TOL * nx) > 16:
            # max/min over the 2^|Z| sign completions, without listing them
            plus, minus = kernels.l1_rho_pm(x[None, :], y[None, :], SUPPORT_TOL)
            return float(plus[0]), float(minus[0])
    vals = space.ext_functionals(x) @ y
    return nx * float(vals.max()), nx * float(vals.min())


def difference_quotients(space, x, y):
    """Quotients ||x|| (||x + t y|| - ||x||) / t on t = +-t_k.

    The ladder is t_k = 0.01 * 4^-k, k = 0..12, applied to the normalised
    pair and rescaled, so the returned quotients belong to (x, y) at steps
    t_k ||x|| / ||y||.
    """
    x = _vec(space, x)
    y = _vec(space, y)
    nx = space.norm(x)
    ny = space.norm(y)
    if nx == 0:
        raise ZeroVector("norm derivatives are undefined at x = 0")
    t = STEP0 * RATIO ** np.arange(RUNGS)
    if ny == 0:
        z = np.zeros(RUNGS)
        return Ladder(t, z, z.copy(), z.copy())
    u, v = x / nx, y / ny
    P = np.vstack([u + t[:, None] * v, u - t[:, None] * v])
    vals = space.norms(P)
    qp = (vals[:RUNGS] - 1.0) / t
    qm = (vals[RUNGS:] - 1.0) / -t
    slack = 4.0 * (space.dim + 2) * np.finfo(float).eps * (2.0 + t) / t
    s = nx * ny
    return Ladder(t * nx / ny, qp * s, qm * s, slack * s)


def _settle(q, slack):
    # Successive quotients agree once the ladder is inside a linear piece;
    # past that point rounding grows like eps/t. Pick the rung where the
    # change plus the rounding bound is smallest.
    score = np.abs(np.diff(q)) + slack[1:]
    k = int(np.argmin(score))
    return q[k + 1], score[k]


def _numeric(space, x, y):
    lad = difference_quotients(space, x, y)
    plus, wp = _settle(lad.q_plus, lad.slack)
    minus, wm = _settle(lad.q_minus, lad.slack)
    width = max(wp, wm)
    scale = space.norm(x) * space.norm(y)
    # Convexity gives q(-t) <= rho'_- <= rho'_+ <= q(t) on every rung. When
    # that bracket certifies (smooth points) its midpoint is used for both
    # sides: it is a central difference, accurate to O(t^2). At a corner
    # the bracket cannot shrink and the one-sided estimates are kept.
    central = lad.q_plus - lad.q_minus + 2 * lad.slack
    k = int(np.argmin(central))
    if central[k] <= max(width, CERT_TOL * scale):
        width = central[k]
        plus = minus = 0.5 * (lad.q_plus[k] + lad.q_minus[k])
    if width > CERT_TOL * scale:
        raise NumericDerivativeError(
            f"difference quotients did not settle: width {width:.3g} > "
            f"{CERT_TOL:g} * ||x|| ||y||")
    return DerivativeTriple.build(plus, minus, Method.NUMERIC, width)


def derivative(space, x, y, method=None):
    """Norm derivatives (rho'_+, rho'_-, rho') of ``space`` at x towards y.

    ``method`` is ``"exact"``, ``"numeric"`` or None (exact when the space
    family provides its extreme supporting functionals).
    """
    method = Method(method) if method is not None else None
    x = _vec(space, x)
    y = _vec(space, y)
    nx = space.norm(x)
    if nx == 0:
        raise ZeroVector("norm derivatives are undefined at x = 0")
    if method is Method.NUMERIC or (method is None and not _has_exact(space)):
        return _numeric(space, x, y)
    plus, minus = _exact_pm(space, x, y, nx)
    return DerivativeTriple.build(plus, minus, Method.EXACT)


def derivative_batch(space, X, Y):
    """Exact (rho'_+, rho'_-) for the row pairs of X and Y.

    Rows of X must be nonzero. l1, l_inf and polygon norms go through the
    compiled kernels when they are available.
    """
    X = np.atleast_2d(np.asarray(X, dtype=float))
    Y = np.atleast_2d(np.asarray(Y, dtype=float))
    if isinstance(space, Lp):
        if space.p == 1:
            return kernels.l1_rho_pm(X, Y, SUPPORT_TOL)
        if math.isinf(space.p):
            return kernels.linf_rho_pm(X, Y, SUPPORT_TOL)
        p = space.p
        nx = _lp_norm(X, p)
        G = np.sign(X) * (np.abs(X) / nx[:, None]) ** (p - 1.0)
        r = nx * np.einsum("ij,ij->i", G, Y)
        return r, r.copy()
    if isinstance(space, _PolygonNorm):
        return kernels.polygon_rho_pm(space.edge_functionals, X, Y, SUPPORT_TOL)
    plus = np.empty(len(X))
    minus = np.empty(len(X))
    for i, (x, y) in enumerate(zip(X, Y)):
        plus[i], minus[i] = _exact_pm(space, x, y, space.norm(x))
    return plus, minus


def _eps(space, x, y, d):
    return ORTH_TOL * space.norm(x) * space.norm(y) + d.bracket_width


def is_birkhoff(space, x, y, method=None):
    """x is Birkhoff-James orthogonal to y: rho'_- <= 0 <= rho'_+."""
    d = derivative(space, x, y, method)
    eps = _eps(space, x, y, d)
    return d.rho_minus <= eps and d.rho_plus >= -eps


def is_rho_orthogonal(space, x, y, method=None):
    """x is rho-orthogonal to y: rho'(x, y) = 0 up to 1e-9 ||x|| ||y||."""
    d = derivative(space, x, y, method)
    return abs(d.rho) <= _eps(space, x, y, d)


def rho_cone_membership(space, x, y, method=None):
    d = derivative(space, x, y, method)
    eps = _eps(space, x, y, d)
    if abs(d.rho) <= eps:
        return Cone.BOTH
    return Cone.PLUS_ONLY if d.rho > 0 else Cone.MINUS_ONLY


def alpha_right(space, x, y, check=True):
    """The alpha with x rho-orthogonal to alpha x + y.

    Uses rho'(x, alpha x + y) = alpha ||x||^2 + rho'(x, y), which holds for
    both one-sided derivatives.
    """
    x = _vec(space, x)
    y = _vec(space, y)
    nx = space.norm(x)
    ny = space.norm(y)

    def done(a):
        # forming z = a x + y costs about eps (|a| ||x|| + ||y||), so when it
        # cancels heavily the zero test needs that floor on top of 1e-9 ||x|| ||z||
        z = a * x + y
        d = derivative(space, x, z)
        floor = CANCEL_TOL * nx * (abs(a) * nx + ny)
        return abs(d.rho) <= _eps(space, x, z, d) + floor

    alpha = -derivative(space, x, y).rho / nx ** 2
    # Functionals chosen with a support tolerance meet f(x) = ||x|| only to
    # about 1e-10, so the identity is slightly off when alpha x + y nearly
    # cancels. Iterating the same step contracts at that rate.
    for _ in range(3):
        if done(alpha):
            break
        alpha -= derivative(space, x, alpha * x + y).rho / nx ** 2
    if check and not done(alpha):
        raise ArithmeticError("alpha_right postcondition failed")
    return alpha


def alpha_left(space, x, y, search_range=1e3, steps=10_000, tol=1e-10):
    """An alpha with alpha x + y rho-orthogonal to x, or None.

    g(alpha) = rho'(alpha x + y, x) is scanned on ``steps`` points of
    [-search_range, search_range]. Near-zero samples are accepted directly;
    each sign change is bisected and kept only if |g| actually drops below
    ``tol`` (g may jump at non-smooth points). The root nearest 0 wins.
    """
    x = _vec(space, x)
    y = _vec(space, y)
    nx = space.norm(x)
    ny = space.norm(y)
    if nx == 0:
        raise ZeroVector("alpha_left needs x != 0")

    alphas = np.linspace(-search_range, search_range, steps)
    Z = alphas[:, None] * x + y
    nz = space.norms(Z)
    ok = nz > 1e-12 * (np.abs(alphas) * nx + ny)
    g = np.full(steps, np.nan)
    plus, minus = derivative_batch(space, Z[ok], np.broadcast_to(x, Z[ok].shape))
    g[ok] = (plus + minus) / 2 / (nz[ok] * nx)

    def g_at(a):
        z = a * x + y
        n = space.norm(z)
        if n <= 1e-12 * (abs(a) * nx + ny):
            return math.nan
        return derivative(space, z, x).rho / (n * nx)

    roots = [a for a, v in zip(alphas, g) if abs(v) <= tol]
    for k in range(steps - 1):
        ga, gb = g[k], g[k + 1]
        if not (np.isfinite(ga) and np.isfinite(gb)) or ga * gb >= 0:
            continue
        lo, hi = alphas[k], alphas[k + 1]
        for _ in range(200):
            mid = 0.5 * (lo + hi)
            gm = g_at(mid)
            if not np.isfinite(gm):
                break
            if abs(gm) <= tol:
                roots.append(mid)
                break
            if (gm < 0) == (ga < 0):
                lo = mid
            else:
                hi = mid
            if hi - lo <= 1e-15 * max(1.0, abs(mid)):
                break
    if not roots:
        return None
    return float(min(roots, key=abs))


def is_smooth_point(space, x, method=None, rng=None, directions=32):
    """J(x) is a singleton.

    Exact path: a single extreme supporting functional. Numeric path:
    rho'_+ = rho'_- within 1e-8 along ``directions`` random directions.
    """
    x = _vec(space, x)
    if space.norm(x) == 0:
        raise ZeroVector("smoothness is undefined at x = 0")
    method = Method(method) if method is not None else None
    if method is not Method.NUMERIC and _has_exact(space):
        return len(space.ext_functionals(x)) == 1
    rng = np.random.default_rng(rng)
    for d in rng.standard_normal((directions, space.dim)):
        t = derivative(space, x, d, Method.NUMERIC)
        if t.rho_plus - t.rho_minus > 1e-8 * space.norm(x) * space.norm(d) + t.bracket_width:
            return False
    return True
