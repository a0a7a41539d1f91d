"""Norms, dual norms and extreme supporting functionals.

Four families of finite-dimensional real normed spaces are supported:

``Lp(p, n)``
    The l_p^n norm for 1 <= p <= inf.
``Polyhedral2D(points)``
    A planar norm whose unit ball is the convex polygon spanned by ``points``
    and their negatives.
``RegularPolygon(n)``
    The planar norm whose unit sphere is the regular 2n-gon with vertices
    (cos((j-1)pi/n), sin((j-1)pi/n)), j = 1..2n.
``OrthantMixed2D(pos, neg)``
    A planar norm that is l_pos on the quadrants where x*y >= 0 and l_neg
    where x*y <= 0 (each piece an l_p exponent, 1 <= p <= inf).

Every space answers ``norm``, ``norms`` (row-wise batch), ``dual_norm`` and
``ext_functionals``. The last returns the finite set Ext(J(x/||x||)) as the
rows of an array; the derivative code builds on it.
"""

import itertools
import json
import math

import numpy as np

from . import kernels

__all__ = [
    "SUPPORT_TOL",
    "SpaceError",
    "DimensionMismatch",
    "DegeneratePolygon",
    "UnsupportedSpace",
    "ZeroVector",
    "Lp",
    "Polyhedral2D",
    "RegularPolygon",
    "OrthantMixed2D",
    "norm",
    "dual_norm",
    "ext_supporting_functionals",
    "sphere_point_2d",
    "regular_polygon_vertices",
    "load_polygon",
]

# Relative slack used to decide which functionals attain the norm at x, which
# coordinates of an l1 point count as zero and which of an l_inf point count
# as maximal.
SUPPORT_TOL = 1e-10


class SpaceError(ValueError):
    pass


class DimensionMismatch(SpaceError):
    pass


class DegeneratePolygon(SpaceError):
    pass


class UnsupportedSpace(SpaceError):
    """The requested operation has no implementation for this space family."""


class ZeroVector(SpaceError):
    pass


def _vec(space, x):
    x = np.asarray(x, dtype=float)
    if x.ndim != 1 or x.shape[0] != space.dim:
        raise DimensionMismatch(
            f"expected a vector of length {space.dim}, got shape {x.shape}")
    if not np.all(np.isfinite(x)):
        raise SpaceError("vector entries must be finite")
    return x


def _lp_norm(x, p):
    """l_p norm along the last axis, scaled to avoid overflow."""
    a = np.abs(np.asarray(x, dtype=float))
    if p == 1:
        return a.sum(axis=-1)
    if math.isinf(p):
        return a.max(axis=-1)
    m = a.max(axis=-1)
    safe = np.where(m > 0, m, 1.0)
    r = np.expand_dims(safe, -1) if a.ndim > 1 else safe
    return m * ((a / r) ** p).sum(axis=-1) ** (1.0 / p)


def _conjugate(p):
    if p == 1:
        return math.inf
    if math.isinf(p):
        return 1.0
    return p / (p - 1.0)


def _lp_ext(u, p, tol=SUPPORT_TOL):
    """Ext(J(u)) in l_p^n as rows; u need not be normalised."""
    n = u.shape[0]
    if p == 1:
        a = np.abs(u)
        zero = np.flatnonzero(a <= tol * a.sum())
        base = np.where(a <= tol * a.sum(), 0.0, np.sign(u))
        rows = []
        for signs in itertools.product((1.0, -1.0), repeat=len(zero)):
            f = base.copy()
            f[zero] = signs
            rows.append(f)
        return np.array(rows)
    if math.isinf(p):
        a = np.abs(u)
        idx = np.flatnonzero(a >= (1.0 - tol) * a.max())
        rows = np.zeros((len(idx), n))
        rows[np.arange(len(idx)), idx] = np.sign(u[idx])
        return rows
    nu = _lp_norm(u, p)
    g = np.sign(u) * (np.abs(u) / nu) ** (p - 1.0)
    return g[None, :]


class Lp:
    """The l_p^n norm."""

    def __init__(self, p, n):
        p = float(p)
        if not p >= 1:
            raise SpaceError(f"p must lie in [1, inf], got {p}")
        if int(n) != n or n < 1:
            raise SpaceError(f"dimension must be a positive integer, got {n}")
        self.p = p
        self.n = int(n)

    @property
    def dim(self):
        return self.n

    def __repr__(self):
        return f"Lp(p={self.p:g}, n={self.n})"

    def __eq__(self, other):
        return isinstance(other, Lp) and (self.p, self.n) == (other.p, other.n)

    def __hash__(self):
        return hash(("Lp", self.p, self.n))

    @property
    def smooth(self):
        return 1 < self.p < math.inf or self.n == 1

    def norm(self, x):
        return float(_lp_norm(_vec(self, x), self.p))

    def norms(self, P):
        return _lp_norm(np.asarray(P, dtype=float), self.p)

    def dual_norm(self, f):
        return float(_lp_norm(_vec(self, f), _conjugate(self.p)))

    def ext_functionals(self, x):
        x = _vec(self, x)
        if not np.any(x):
            raise ZeroVector("Ext(J(x)) is undefined at x = 0")
        return _lp_ext(x, self.p)


def _convex_hull(P):
    """Strict convex hull vertices, counterclockwise (monotone chain)."""
    pts = sorted(set(map(tuple, np.round(P, 15))))
    if len(pts) < 3:
        return np.array(pts)

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    scale = max(max(abs(c) for c in p) for p in pts)
    eps = 1e-12 * scale * scale
    lower, upper = [], []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= eps:
            lower.pop()
        lower.append(p)
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= eps:
            upper.pop()
        upper.append(p)
    return np.array(lower[:-1] + upper[:-1])


def _edge_functionals(V):
    """Row i is the functional equal to 1 on the edge [V[i], V[i+1]]."""
    W = np.roll(V, -1, axis=0)
    d = W - V
    nrm = np.column_stack([d[:, 1], -d[:, 0]])
    return nrm / np.einsum("ij,ij->i", nrm, V)[:, None]


class _PolygonNorm:
    """Shared machinery for planar norms with a polygonal unit ball.

    Subclasses set ``vertices`` (counterclockwise, origin symmetric) and
    ``edge_functionals`` (row i supports the edge from vertex i to i+1).
    """

    dim = 2
    smooth = False
    vertices: np.ndarray
    edge_functionals: np.ndarray

    def norm(self, x):
        x = _vec(self, x)
        return float(np.max(self.edge_functionals @ x))

    def norms(self, P):
        return kernels.polygon_norms(self.edge_functionals, P)

    def dual_norm(self, f):
        f = _vec(self, f)
        return float(np.max(np.abs(self.vertices @ f)))

    def ext_functionals(self, x):
        x = _vec(self, x)
        vals = self.edge_functionals @ x
        top = vals.max()
        if top <= 0:
            raise ZeroVector("Ext(J(x)) is undefined at x = 0")
        idx = np.flatnonzero(vals >= top * (1.0 - SUPPORT_TOL))
        return self.edge_functionals[idx]

    def as_polygon(self):
        return self


class Polyhedral2D(_PolygonNorm):
    """Planar norm whose unit ball is conv(points, -points).

    Only half of a symmetric polygon needs to be given; negations are
    appended and the vertices sorted counterclockwise starting from the
    smallest polar angle in [0, 2pi). Points that are not on the boundary of
    the resulting convex polygon are rejected.
    """

    def __init__(self, points):
        P = np.asarray(points, dtype=float)
        if P.ndim != 2 or P.shape[1] != 2 or len(P) == 0:
            raise DegeneratePolygon("vertices must be a non-empty list of [x, y] pairs")
        if not np.all(np.isfinite(P)):
            raise DegeneratePolygon("vertex coordinates must be finite")
        Q = np.vstack([P, -P])
        H = _convex_hull(Q)
        if len(H) < 4:
            raise DegeneratePolygon("the symmetric closure has empty interior")
        F = _edge_functionals(H)
        if not np.all(np.isfinite(F)) or np.any(np.einsum("ij,ij->i", F, H) <= 0):
            raise DegeneratePolygon("origin is not interior to the polygon")
        on_boundary = (Q @ F.T).max(axis=1)
        if np.any(on_boundary < 1.0 - 1e-9):
            raise DegeneratePolygon("some points lie strictly inside the polygon; "
                                    "the vertex list is not convex")
        ang = np.mod(np.arctan2(H[:, 1], H[:, 0]), 2 * np.pi)
        start = int(np.argmin(ang))
        self.vertices = np.roll(H, -start, axis=0)
        self.edge_functionals = _edge_functionals(self.vertices)

    def __repr__(self):
        return f"Polyhedral2D({self.vertices.tolist()})"


def regular_polygon_vertices(n):
    """The 2n vertices (cos((j-1)pi/n), sin((j-1)pi/n)), counterclockwise."""
    if int(n) != n or n < 2:
        raise SpaceError(f"regular 2n-gon needs integer n >= 2, got {n}")
    t = np.arange(2 * n) * np.pi / n
    return np.column_stack([np.cos(t), np.sin(t)])


class RegularPolygon(_PolygonNorm):
    """Planar norm whose unit sphere is the regular 2n-gon.

    The edge functionals are the closed-form ones,
    f_i(x, y) = (x cos((2i-1)pi/2n) + y sin((2i-1)pi/2n)) / cos(pi/2n),
    not derived from the vertices.
    """

    def __init__(self, n):
        self.vertices = regular_polygon_vertices(n)
        self.n = int(n)
        t = (2 * np.arange(1, 2 * n + 1) - 1) * np.pi / (2 * n)
        self.edge_functionals = np.column_stack([np.cos(t), np.sin(t)]) / np.cos(np.pi / (2 * n))

    def __repr__(self):
        return f"RegularPolygon({self.n})"

    def __eq__(self, other):
        return isinstance(other, RegularPolygon) and other.n == self.n

    def __hash__(self):
        return hash(("RegularPolygon", self.n))


class OrthantMixed2D:
    """l_pos on quadrants with x*y >= 0, l_neg on quadrants with x*y <= 0.

    All l_p pieces agree on the axes and every combination is convex, so the
    glued function is a norm. With pos = 1 and neg = inf this is the
    hexagonal l1-l_inf norm with vertices (1,0), (0,1), (-1,1), (-1,0),
    (0,-1), (1,-1).
    """

    dim = 2

    def __init__(self, pos, neg):
        self.pos = float(pos)
        self.neg = float(neg)
        for p in (self.pos, self.neg):
            if not p >= 1:
                raise SpaceError(f"piece exponent must lie in [1, inf], got {p}")

    def __repr__(self):
        return f"OrthantMixed2D(pos={self.pos:g}, neg={self.neg:g})"

    def __eq__(self, other):
        return (isinstance(other, OrthantMixed2D)
                and (self.pos, self.neg) == (other.pos, other.neg))

    def __hash__(self):
        return hash(("OrthantMixed2D", self.pos, self.neg))

    @property
    def polyhedral(self):
        return all(p == 1 or math.isinf(p) for p in (self.pos, self.neg))

    smooth = False

    def _piece(self, x):
        # compare signs: the product of two tiny coordinates underflows
        return self.pos if np.sign(x[0]) * np.sign(x[1]) >= 0 else self.neg

    def norm(self, x):
        x = _vec(self, x)
        return float(_lp_norm(x, self._piece(x)))

    def norms(self, P):
        P = np.asarray(P, dtype=float)
        prod = np.sign(P[:, 0]) * np.sign(P[:, 1])
        return np.where(prod >= 0, _lp_norm(P, self.pos), _lp_norm(P, self.neg))

    def as_polygon(self):
        if not self.polyhedral:
            raise UnsupportedSpace(f"{self!r} has a curved piece")
        pts = [(1.0, 0.0), (0.0, 1.0)]
        if math.isinf(self.pos):
            pts.append((1.0, 1.0))
        if math.isinf(self.neg):
            pts.append((-1.0, 1.0))
        return Polyhedral2D(pts)

    def dual_norm(self, f):
        f = _vec(self, f)
        # The ball is a union of convex quadrant pieces: the maximiser of f
        # is an axis point or the unconstrained l_p maximiser in the
        # quadrant of sgn(f), when that quadrant's piece contains it.
        best = np.abs(f).max()
        if f[0] != 0 and f[1] != 0:
            p = self.pos if np.sign(f[0]) == np.sign(f[1]) else self.neg
            best = max(best, float(_lp_norm(f, _conjugate(p))))
        return float(best)

    def ext_functionals(self, x):
        x = _vec(self, x)
        nx = self.norm(x)
        if nx == 0:
            raise ZeroVector("Ext(J(x)) is undefined at x = 0")
        u = x / nx
        a = np.abs(u)
        if a.min() > SUPPORT_TOL * a.max():
            return _lp_ext(u, self._piece(u))
        # On an axis: one functional per side, each taken from the piece that
        # governs the quadrant on that side, tilted towards it.
        i = int(np.argmax(a))
        j = 1 - i
        w = np.zeros(2)
        w[i] = np.sign(u[i])
        rows = []
        for side in (1.0, -1.0):
            p = self.pos if w[i] * side > 0 else self.neg
            G = _lp_ext(w, p)
            rows.append(G[np.argmax(side * G[:, j])])
        if np.allclose(rows[0], rows[1], rtol=0, atol=1e-15):
            rows = rows[:1]
        return np.array(rows)


def norm(space, x):
    """Norm of x in ``space``."""
    return space.norm(x)


def dual_norm(space, f):
    """Dual norm of the functional with coordinates f."""
    return space.dual_norm(f)


def ext_supporting_functionals(space, x):
    """Ext(J(x/||x||)) as an array with one functional per row.

    l1^n gives every sign completion over the zero coordinates of x, l_inf^n
    one signed coordinate functional per maximal coordinate, polygons the one
    or two adjacent edge functionals and smooth l_p the gradient.
    """
    return space.ext_functionals(x)


def sphere_point_2d(space, theta):
    """The unit vector of ``space`` in the Euclidean direction theta."""
    if space.dim != 2:
        raise DimensionMismatch("sphere_point_2d needs a planar space")
    v = np.array([math.cos(theta), math.sin(theta)])
    return v / space.norm(v)


def sphere_points_2d(space, thetas):
    """Batched ``sphere_point_2d``; one row per angle."""
    thetas = np.asarray(thetas, dtype=float)
    V = np.column_stack([np.cos(thetas), np.sin(thetas)])
    return V / space.norms(V)[:, None]


def load_polygon(path):
    """Read a polygon file: a JSON object with a "vertices" list of [x, y]."""
    with open(path) as fh:
        doc = json.load(fh)
    if not isinstance(doc, dict) or "vertices" not in doc:
        raise DegeneratePolygon(f"{path}: expected an object with key 'vertices'")
    return Polyhedral2D(doc["vertices"])
