"""Independent reference computations for the tests.

Nothing here imports the package's derivative, cone or Gamma code. Norms are
re-derived from their definitions in mpmath, one-sided derivatives come from
a single difference quotient at a step far below double precision, and the
l1 right-symmetry test is the literal enumeration of {-1, 0, +1} labelings.
"""

import itertools
import math
from fractions import Fraction

import mpmath
import numpy as np

mpmath.mp.dps = 60
STEP = mpmath.mpf("1e-40")


def mp_lp_norm(v, p):
    a = [abs(mpmath.mpf(c)) for c in v]
    if p == 1:
        return sum(a)
    if math.isinf(p):
        return max(a)
    p = mpmath.mpf(p)
    return sum(c ** p for c in a) ** (1 / p)


def mp_polygon_norm(n):
    """Gauge of the regular 2n-gon with a vertex at (1, 0), from scratch."""
    V = [(mpmath.cos(k * mpmath.pi / n), mpmath.sin(k * mpmath.pi / n))
         for k in range(2 * n)]
    F = []
    for k in range(2 * n):
        (a, b), (c, d) = V[k], V[(k + 1) % (2 * n)]
        # functional (f1, f2) with f(V[k]) = f(V[k+1]) = 1
        det = a * d - b * c
        F.append(((d - b) / det, (a - c) / det))
    return lambda v: max(f1 * mpmath.mpf(v[0]) + f2 * mpmath.mpf(v[1]) for f1, f2 in F)


def mp_mixed_norm(pos, neg):
    def nrm(v):
        p = pos if v[0] * v[1] >= 0 else neg
        return mp_lp_norm(v, p)
    return nrm


def mp_rho_pm(norm, x, y):
    """(rho'_+, rho'_-) as plain floats from one-sided quotients at t = 1e-40."""
    x = [mpmath.mpf(c) for c in x]
    y = [mpmath.mpf(c) for c in y]
    nx = norm(x)

    def q(t):
        return (norm([a + t * b for a, b in zip(x, y)]) - nx) / t

    return float(nx * q(STEP)), float(nx * q(-STEP))


def signed_sums_distinct_literal(values):
    """True when no labeling of the support with at least one +1 and one -1
    has |sum over +1| == |sum over -1|. Exact for Fractions."""
    supp = [v for v in values if v != 0]
    for lab in itertools.product((-1, 0, 1), repeat=len(supp)):
        if 1 not in lab or -1 not in lab:
            continue
        a = sum((v for v, s in zip(supp, lab) if s == 1), Fraction(0))
        b = sum((v for v, s in zip(supp, lab) if s == -1), Fraction(0))
        if abs(a) == abs(b):
            return False
    return True


def classify_l1_literal(x):
    """(left, right) for a unit vector of l1^n, straight from the statement."""
    supp = [v for v in x if v != 0]
    extreme = len(supp) == 1
    half = len(supp) == 2 and all(abs(v) == Fraction(1, 2) for v in supp)
    return extreme or half, extreme or signed_sums_distinct_literal(x)


def classify_linf_literal(x):
    m = max(abs(v) for v in x)
    top = [i for i, v in enumerate(x) if abs(v) == m]
    rest = [abs(v) for i, v in enumerate(x) if abs(v) != m]
    left = all(v == 0 for v in rest)
    extreme = len(top) == len(x)
    distinct = all(0 < v < m for v in rest) and len(set(rest)) == len(rest)
    return left, extreme or distinct


def brute_gamma_2d(norms, derivative_pm, nx=400, ny=4000, extra_x=()):
    """sup |rho'(x, y)| over BJ pairs by scanning x and y on angle grids.

    ``norms(P)`` evaluates the norm of each row; ``derivative_pm(X, Y)``
    returns (rho'_+, rho'_-) per row pair. Unlike the library this does not
    use vertices or cone boundaries, so it is only a lower bound, good to
    roughly the grid spacing. On a polygon the supremum sits at corners,
    which a uniform grid misses, so the caller passes the corner directions
    it already knows as ``extra_x``.
    """
    def sphere(k):
        a = np.pi * np.arange(k) / k
        P = np.column_stack([np.cos(a), np.sin(a)])
        return P / norms(P)[:, None]

    Y = sphere(ny)
    Y = np.vstack([Y, -Y])
    best = 0.0
    X = sphere(nx)
    if len(extra_x):
        E = np.asarray(extra_x, dtype=float)
        X = np.vstack([X, E / norms(E)[:, None]])
    for x in X:
        p, m = derivative_pm(np.broadcast_to(x, Y.shape), Y)
        bj = (m <= 1e-12) & (p >= -1e-12)
        if bj.any():
            best = max(best, float(np.abs(0.5 * (p + m))[bj].max()))
    return best
