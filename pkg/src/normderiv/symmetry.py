"""rho-orthogonality in l1^n and l_inf^n, and rho-left/right symmetric points.

x is rho-left symmetric when x _|_rho y forces y _|_rho x for every y, and
rho-right symmetric when y _|_rho x forces x _|_rho y.

The exact predicates and classifiers accept ``Fraction``/int/str coordinates
("p/q" or decimal tokens). Float coordinates are accepted too; they are
compared with an absolute tolerance of 1e-12 and an ``InexactInputWarning``
is issued, since near-ties are then classified as ties.

The randomized oracles work from the definitions through the ``derivatives``
module (or from the explicit solution sets of y _|_rho x) and serve as an
independent check of the classifiers.
"""

import itertools
import math
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

import numpy as np

from .derivatives import derivative, derivative_batch
from .spaces import Lp, OrthantMixed2D, SpaceError, UnsupportedSpace, ZeroVector

__all__ = [
    "FLOAT_TOL",
    "SUPPORT_CAP",
    "InexactInputWarning",
    "NotUnitVector",
    "SymmetryClass",
    "OracleResult",
    "ProbeReport",
    "parse_rational_vector",
    "rho_ortho_l1",
    "rho_ortho_linf",
    "classify_l1",
    "classify_linf",
    "distinct_signed_subset_sums",
    "oracle_left_symmetric",
    "oracle_right_symmetric",
    "probe_space_symmetry",
    "random_unit_rational",
]

FLOAT_TOL = 1e-12
SUPPORT_CAP = 20
ORACLE_TOL = 1e-8


class InexactInputWarning(UserWarning):
    pass


class NotUnitVector(SpaceError):
    pass


def parse_rational_vector(text):
    """Parse comma-separated "p/q" or decimal tokens into Fractions."""
    toks = [t.strip() for t in str(text).split(",")]
    if not toks or any(t == "" for t in toks):
        raise ValueError(f"cannot parse vector {text!r}")
    try:
        return [Fraction(t) for t in toks]
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"cannot parse vector {text!r}: {exc}") from None


def _coerce(x):
    """Return (coords, exact). Floats stay floats and trigger a warning."""
    out, exact = [], True
    for v in x:
        if isinstance(v, (Fraction, int, np.integer)):
            out.append(Fraction(int(v)) if isinstance(v, np.integer) else Fraction(v))
        elif isinstance(v, str):
            out.append(Fraction(v))
        else:
            f = float(v)
            if not math.isfinite(f):
                raise SpaceError("vector entries must be finite")
            out.append(f)
            exact = False
    if not out:
        raise SpaceError("empty vector")
    if not exact:
        warnings.warn("float coordinates: equalities are tested with tolerance "
                      f"{FLOAT_TOL:g}, near-ties count as ties", InexactInputWarning,
                      stacklevel=3)
        out = [float(v) for v in out]
    return out, exact


def _eq(a, b, exact):
    return a == b if exact else abs(a - b) <= FLOAT_TOL


def _sgn(v):
    return (v > 0) - (v < 0)


def _pair(x, y):
    xs, ex = _coerce(x)
    ys, ey = _coerce(y)
    if len(xs) != len(ys):
        raise SpaceError(f"dimension mismatch: {len(xs)} vs {len(ys)}")
    exact = ex and ey
    if not exact:
        xs, ys = [float(v) for v in xs], [float(v) for v in ys]
    if all(v == 0 for v in xs):
        raise ZeroVector("x must be nonzero")
    return xs, ys, exact


def rho_ortho_l1(x, y):
    """x _|_rho y in l1^n: sum_i sgn(x_i) y_i = 0."""
    xs, ys, exact = _pair(x, y)
    s = sum(_sgn(a) * b for a, b in zip(xs, ys))
    return _eq(s, 0, exact)


def _max_index_set(xs, exact):
    m = max(abs(v) for v in xs)
    if exact:
        return [i for i, v in enumerate(xs) if abs(v) == m]
    return [i for i, v in enumerate(xs) if abs(v) >= m - FLOAT_TOL * m]


def rho_ortho_linf(x, y):
    """x _|_rho y in l_inf^n: max + min of sgn(x_i) y_i over I_x is 0.

    I_x collects the coordinates of largest modulus, so the test is
    invariant under positive scaling of x.
    """
    xs, ys, exact = _pair(x, y)
    vals = [_sgn(xs[i]) * ys[i] for i in _max_index_set(xs, exact)]
    return _eq(max(vals) + min(vals), 0, exact)


@dataclass(frozen=True)
class SymmetryClass:
    left: bool
    right: bool

    @property
    def label(self):
        if self.left and self.right:
            return "Both"
        if self.left:
            return "LeftOnly"
        return "RightOnly" if self.right else "Neither"

    @property
    def symmetric(self):
        return self.left and self.right

    def __str__(self):
        return self.label


def distinct_signed_subset_sums(values, exact=True):
    """True when the 2^m subset sums of ``values`` are pairwise distinct.

    For nonzero values this is the same as |sum_A| != |sum_B| for all
    disjoint nonempty A, B: equal subset sums give such a pair after
    removing the common part, and sum_A = -sum_B makes A u B and the empty
    set collide.
    """
    if exact:
        den = math.lcm(*[Fraction(v).denominator for v in values]) if values else 1
        ints = [int(Fraction(v) * den) for v in values]
        sums = {0}
        for v in ints:
            shifted = {s + v for s in sums}
            if not shifted.isdisjoint(sums):
                return False
            sums |= shifted
        return True
    sums = np.zeros(1)
    for v in values:
        sums = np.concatenate([sums, sums + float(v)])
    sums.sort()
    return bool(np.all(np.diff(sums) > FLOAT_TOL))


def _unit_check(total, exact, name):
    if not _eq(total, 1, exact):
        raise NotUnitVector(f"x must lie on the unit sphere of {name} (norm is {total})")


def _unit(xs, exact, total, name, normalize):
    if normalize:
        if _eq(total, 0, exact):
            raise ZeroVector("x must be nonzero")
        return [v / total for v in xs]
    _unit_check(total, exact, name)
    return xs


def classify_l1(x, normalize=False):
    """Left/right rho-symmetry of a unit vector of l1^n.

    left:  x is an extreme point (one nonzero coordinate), or x has exactly
           two nonzero coordinates, both of modulus 1/2.
    right: x is an extreme point, or |sum_A x| != |sum_B x| for all disjoint
           nonempty A, B inside the support of x.

    Both properties are invariant under scaling x by a nonzero factor. With
    ``normalize=True`` a nonzero x is divided by its norm (exactly, for
    rational input) instead of being rejected.
    """
    xs, exact = _coerce(x)
    xs = _unit(xs, exact, sum(abs(v) for v in xs), "l1", normalize)
    supp = [v for v in xs if not _eq(v, 0, exact)]
    if len(supp) > SUPPORT_CAP:
        raise SpaceError(f"support larger than {SUPPORT_CAP} coordinates")
    extreme = len(supp) == 1
    left = extreme or (len(supp) == 2 and _eq(abs(supp[0]), abs(supp[1]), exact))
    right = extreme or distinct_signed_subset_sums(supp, exact)
    return SymmetryClass(left, right)


def classify_linf(x, normalize=False):
    """Left/right rho-symmetry of a unit vector of l_inf^n.

    left:  every coordinate outside I_x = {i : |x_i| = 1} is zero.
    right: x is an extreme point (I_x is everything), or the coordinates
           outside I_x are nonzero with pairwise distinct moduli.

    ``normalize`` works as in ``classify_l1``.
    """
    xs, exact = _coerce(x)
    xs = _unit(xs, exact, max(abs(v) for v in xs), "l_inf", normalize)
    rest = [abs(v) for v in xs if not _eq(abs(v), 1, exact)]
    left = all(_eq(v, 0, exact) for v in rest)
    right = not rest or (
        all(not _eq(v, 0, exact) for v in rest)
        and all(not _eq(a, b, exact) for a, b in itertools.combinations(rest, 2)))
    return SymmetryClass(left, right)


@dataclass(frozen=True, eq=False)
class OracleResult:
    holds: bool
    trials: int
    counterexample: Optional[np.ndarray] = None

    def __bool__(self):
        return self.holds


def _directions(rng, trials, n):
    d = rng.standard_normal((trials, n))
    return d / np.linalg.norm(d, axis=1, keepdims=True)


def oracle_left_symmetric(space, x, trials=500, seed=0):
    """Randomized test that x _|_rho y implies y _|_rho x.

    For random Euclidean directions d, y = alpha x + d with the alpha that
    makes x _|_rho y; then |rho'(y, x)| <= 1e-8 ||y|| ||x|| is checked.
    """
    rng = np.random.default_rng(seed)
    x = np.asarray(x, dtype=float)
    nx = space.norm(x)
    if nx == 0:
        raise ZeroVector("x must be nonzero")
    D = _directions(rng, trials, space.dim)
    X = np.broadcast_to(x, D.shape)
    plus, minus = derivative_batch(space, X, D)
    alpha = -0.5 * (plus + minus) / nx ** 2
    Y = alpha[:, None] * x + D
    ny = space.norms(Y)
    keep = ny > 1e-9
    Yk = Y[keep]
    p2, m2 = derivative_batch(space, Yk, np.broadcast_to(x, Yk.shape))
    bad = np.abs(0.5 * (p2 + m2)) > ORACLE_TOL * ny[keep] * nx
    if np.any(bad):
        return OracleResult(False, trials, Yk[int(np.argmax(bad))].copy())
    return OracleResult(True, trials)


def _pattern_schedule(rng, patterns, trials):
    # every admissible pattern once (as far as trials allow), then random ones
    order = list(rng.permutation(len(patterns)))
    while len(order) < trials:
        order.append(int(rng.integers(len(patterns))))
    return [patterns[i] for i in order[:trials]]


def _right_l1(x, trials, rng):
    n = len(x)
    nx = np.abs(x).sum()
    supp = np.flatnonzero(np.abs(x) > 1e-12 * nx)
    off = np.setdiff1d(np.arange(n), supp)
    # y _|_rho x depends only on the signs of y on supp(x):
    # sum_{i in supp} s_i x_i = 0 with s_i in {-1, 0, 1}
    if 3 ** len(supp) <= 4 * trials:
        cands = np.array(list(itertools.product((-1.0, 0.0, 1.0), repeat=len(supp))))
    else:
        cands = rng.integers(-1, 2, size=(16 * trials, len(supp))).astype(float)
    ok = np.abs(cands @ x[supp]) <= 1e-12 * nx
    patterns = cands[ok]
    Y = np.zeros((trials, n))
    for k, s in enumerate(_pattern_schedule(rng, patterns, trials)):
        Y[k, supp] = s * rng.uniform(0.1, 1.0, len(supp))
        Y[k, off] = rng.uniform(-1.0, 1.0, len(off))
    nz = np.abs(Y).sum(axis=1) > 0
    Y = Y[nz]
    # x _|_rho y  <=>  sum sgn(x_i) y_i = 0
    lhs = Y @ np.sign(x)
    bad = np.abs(lhs) > ORACLE_TOL * nx * np.abs(Y).sum(axis=1)
    return Y, bad


def _right_linf(x, trials, rng):
    n = len(x)
    m = np.abs(x).max()
    # y _|_rho x depends on I_y and the signs of y there: with y = s_i on
    # I_y and |y_i| < 1 elsewhere, need max + min of s_i x_i over I_y = 0
    if 3 ** n <= 4 * trials:
        pool = np.array(list(itertools.product((-1.0, 0.0, 1.0), repeat=n)))
    else:
        pool = rng.integers(-1, 2, size=(16 * trials, n)).astype(float)
    cands = []
    for s in pool:
        idx = np.flatnonzero(s)
        if len(idx) == 0:
            continue
        v = s[idx] * x[idx]
        if abs(v.max() + v.min()) <= 1e-12 * m:
            cands.append(s)
    if not cands:
        # no nonzero y is rho-orthogonal to x: right symmetric, vacuously
        return np.zeros((0, n)), np.zeros(0, dtype=bool)
    Y = np.empty((trials, n))
    for k, s in enumerate(_pattern_schedule(rng, cands, trials)):
        Y[k] = np.where(s != 0, s, rng.uniform(-0.9, 0.9, n))
    # x _|_rho y via the exact derivative
    plus, minus = derivative_batch(Lp(math.inf, n), np.broadcast_to(x, Y.shape), Y)
    bad = np.abs(0.5 * (plus + minus)) > ORACLE_TOL * m
    return Y, bad


def _right_smooth(space, x, trials, rng):
    nx = space.norm(x)
    Ys, bad = [], []
    for d in _directions(rng, trials, space.dim):
        def g(s):
            y = d + s * x
            return derivative(space, y, x).rho / (space.norm(y) * nx)
        lo, hi = -1.0, 1.0
        while g(lo) > 0:
            lo *= 2
        while g(hi) < 0:
            hi *= 2
        for _ in range(100):
            mid = 0.5 * (lo + hi)
            if g(mid) < 0:
                lo = mid
            else:
                hi = mid
        y = d + 0.5 * (lo + hi) * x
        Ys.append(y)
        bad.append(abs(derivative(space, x, y).rho) > ORACLE_TOL * nx * space.norm(y))
    return np.array(Ys), np.array(bad)


def oracle_right_symmetric(space, x, trials=500, seed=0):
    """Randomized test that y _|_rho x implies x _|_rho y.

    In l1^n and l_inf^n the vectors y with y _|_rho x are drawn from the
    explicit solution set: whether y _|_rho x holds depends only on a sign
    pattern of y, so every admissible pattern is visited (when trials
    allow) with random magnitudes. In smooth l_p^n, y = d + s x with s
    found by bisection on s -> rho'(d + s x, x).
    """
    rng = np.random.default_rng(seed)
    x = np.asarray(x, dtype=float)
    if not np.any(x):
        raise ZeroVector("x must be nonzero")
    if isinstance(space, Lp) and space.p == 1:
        Y, bad = _right_l1(x, trials, rng)
    elif isinstance(space, Lp) and math.isinf(space.p):
        Y, bad = _right_linf(x, trials, rng)
    elif isinstance(space, Lp) and space.smooth:
        Y, bad = _right_smooth(space, x, trials, rng)
    else:
        raise UnsupportedSpace(f"no sampler for y _|_rho x in {space!r}")
    if np.any(bad):
        return OracleResult(False, trials, Y[int(np.argmax(bad))].copy())
    return OracleResult(True, trials)


@dataclass(frozen=True, eq=False)
class ProbeReport:
    samples: int
    symmetric_samples: int
    counterexample: Optional[tuple] = None
    witness_checked: bool = False
    notes: list = field(default_factory=list)

    @property
    def fraction(self):
        return self.symmetric_samples / self.samples if self.samples else 1.0

    @property
    def symmetric(self):
        return self.counterexample is None


def probe_space_symmetry(space, trials=50, seed=0, per_point=100):
    """Look for a pair with x _|_rho y but not y _|_rho x.

    ``trials`` random points x each get ``per_point`` left-oracle trials.
    On the l1-l_inf plane the known pair x = (-1/3, 1), y = (1, 0) is
    checked first.
    """
    rng = np.random.default_rng(seed)
    counter, witness, notes = None, False, []
    if isinstance(space, OrthantMixed2D) and (space.pos, space.neg) == (1.0, math.inf):
        a, b = np.array([-1 / 3, 1.0]), np.array([1.0, 0.0])
        fwd = derivative(space, a, b).rho
        back = derivative(space, b, a).rho
        witness = True
        notes.append(f"rho'(a, b) = {fwd:.12g}, rho'(b, a) = {back:.12g}")
        if abs(fwd) <= 1e-9 and abs(back) > 1e-9:
            counter = (a, b)
    good = 0
    for x in _directions(rng, trials, space.dim):
        res = oracle_left_symmetric(space, x, per_point, int(rng.integers(2 ** 32)))
        if res.holds:
            good += 1
        elif counter is None:
            counter = (x, res.counterexample)
    return ProbeReport(trials, good, counter, witness, notes)


def random_unit_rational(family, n, rng, bound=None):
    """A random unit vector with small rational coordinates.

    l1: integers in [-3, 3] divided by their absolute sum. l_inf: integers
    in [-4, 4] divided by their largest modulus. Ties and zeros are common
    on purpose.
    """
    bound = bound or (3 if family == "l1" else 4)
    while True:
        v = [int(t) for t in rng.integers(-bound, bound + 1, n)]
        if any(v):
            break
    s = sum(abs(t) for t in v) if family == "l1" else max(abs(t) for t in v)
    return [Fraction(t, s) for t in v]
