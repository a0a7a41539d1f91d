"""The acceptance suite: twelve numbered checks with fixed tolerances.

Each ``criterion_k`` returns a ``CriterionResult``; ``run_all`` runs them in
order. ``trials`` scales the randomized sample sizes (500 is the full suite)
and ``seed`` fixes every random draw, so two runs with the same arguments
give the same verdicts and details.
"""

import math
import time
from dataclasses import dataclass, field

import numpy as np

from .cones2d import verify_monotone
from .derivatives import (NumericDerivativeError, alpha_left, alpha_right, derivative,
                          derivative_batch, difference_quotients, is_birkhoff,
                          is_rho_orthogonal)
from .gamma import (e_constant, gamma, gamma_closed_form_2ngon, gamma_estimate,
                    gamma_polyhedral_2d)
from .spaces import Lp, OrthantMixed2D, Polyhedral2D, RegularPolygon, sphere_points_2d
from .symmetry import (classify_l1, classify_linf, oracle_left_symmetric,
                       oracle_right_symmetric, parse_rational_vector,
                       random_unit_rational)

__all__ = ["CriterionResult", "CRITERIA", "run_all", "random_polygon", "builtin_spaces"]


@dataclass
class CriterionResult:
    id: int
    name: str
    passed: bool
    details: dict = field(default_factory=dict)
    seconds: float = 0.0

    def line(self):
        return f"criterion {self.id:2d} {'PASS' if self.passed else 'FAIL'}  {self.name}"


def _scaled(k, trials, floor=10):
    return max(floor, int(round(k * trials / 500)))


def random_polygon(rng, k=None):
    """A random origin-symmetric convex polygon with up to 2k vertices."""
    k = k or int(rng.integers(2, 7))
    while True:
        th = np.sort(rng.uniform(0, math.pi, k))
        r = rng.uniform(0.5, 2.0, k)
        pts = np.column_stack([r * np.cos(th), r * np.sin(th)])
        try:
            return Polyhedral2D(_hull_points(pts))
        except ValueError:
            continue


def _hull_points(pts):
    # keep only the points on the boundary of conv(pts, -pts)
    from .spaces import _convex_hull
    return _convex_hull(np.vstack([pts, -pts]))


def builtin_spaces():
    """Every space family the CLI can name, at small dimensions."""
    out = []
    for n in (2, 3, 4):
        for p in (1, 1.5, 2, 3, math.inf):
            out.append(Lp(p, n))
    out += [RegularPolygon(n) for n in range(2, 13)]
    for a, b in [(1, math.inf), (math.inf, 1), (1, 1), (math.inf, math.inf),
                 (2, 1), (3, 1), (1, 2), (1.5, math.inf), (2, 3)]:
        out.append(OrthantMixed2D(a, b))
    return out


def criterion_1(trials=500, seed=42):
    t = time.perf_counter()
    g = gamma_polyhedral_2d(RegularPolygon(4))
    dt = time.perf_counter() - t
    target = 1 / (2 * math.sqrt(2))
    ok = abs(g.value - target) <= 1e-9 and dt < 0.1
    return CriterionResult(1, "octagon Gamma = 1/(2 sqrt 2)", ok,
                           {"value": g.value, "target": target,
                            "error": abs(g.value - target), "time_limit_s": 0.1}, dt)


def criterion_2(trials=500, seed=42):
    t = time.perf_counter()
    rows = []
    for n in range(2, 13):
        ex = gamma_polyhedral_2d(RegularPolygon(n)).value
        cf = gamma_closed_form_2ngon(n)
        rows.append({"n": n, "exact": ex, "closed_form": cf, "diff": abs(ex - cf)})
    dt = time.perf_counter() - t
    worst = max(r["diff"] for r in rows)
    return CriterionResult(2, "closed-form sweep n = 2..12", worst <= 1e-9 and dt < 1.0,
                           {"max_diff": worst, "rows": rows, "time_limit_s": 1.0}, dt)


# exponents of the l_p piece used for the numeric mixed-norm check; at p = 2
# the plain difference quotient cannot get below ~1e-8 in double precision
MIXED_P = (3.0, 4.0, 8.0, math.inf)


def criterion_3(trials=500, seed=42):
    linf = {}
    for n in range(2, 7):
        x = np.ones(n)
        y = np.eye(n)[-1]
        linf[n] = derivative(Lp(math.inf, n), x, y, "exact").rho
    mixed = {}
    for p in MIXED_P:
        d = derivative(OrthantMixed2D(p, 1), [1, 0], [0, 1], "numeric")
        mixed[f"{p:g}"] = {"rho": d.rho, "error": abs(d.rho + 0.5),
                           "bracket_width": d.bracket_width}
    p2 = derivative(OrthantMixed2D(2, 1), [1, 0], [0, 1], "numeric")
    ok = all(v == 0.5 for v in linf.values()) and all(
        m["error"] <= 1e-9 for m in mixed.values())
    return CriterionResult(3, "l_inf^n and mixed l_p-l1 derivative values", ok,
                           {"linf_rho": linf, "mixed_numeric": mixed,
                            "mixed_p2_info": {"rho": p2.rho, "error": abs(p2.rho + 0.5)}})


def criterion_4(trials=500, seed=42):
    sp = OrthantMixed2D(1, math.inf)
    g = gamma_polyhedral_2d(sp)
    bj = is_birkhoff(sp, g.witness_x, g.witness_y)
    ok = abs(g.value - 0.5) <= 1e-9 and bj
    return CriterionResult(4, "l1-l_inf Gamma = 1/2 with BJ witness", ok,
                           {"value": g.value, "witness_x": g.witness_x.tolist(),
                            "witness_y": g.witness_y.tolist(), "birkhoff": bj})


def criterion_5(trials=500, seed=42):
    rng = np.random.default_rng(seed)
    spaces = builtin_spaces() + [random_polygon(rng) for _ in range(5)]
    rows, ok = [], True
    for sp in spaces:
        g = gamma(sp, coarse=360, refine_iters=30)
        e = e_constant(sp)
        good = -1e-12 <= g.value <= min(e, 0.5) + 1e-9
        ok &= good
        rows.append({"space": repr(sp), "gamma": g.value, "method": g.method.value,
                     "E": e, "ok": good})
    return CriterionResult(5, "0 <= Gamma <= min(E, 1/2)", ok, {"spaces": rows})


def _pairs_for(space, rng, m):
    """Random pairs, half generic and half placed on corners/ties."""
    n = space.dim
    X = rng.standard_normal((m, n))
    Y = rng.standard_normal((m, n))
    h = m // 2
    if isinstance(space, Lp) and not space.smooth:
        X[:h] = rng.integers(-2, 3, (h, n))
        X[:h][~X[:h].any(axis=1)] = 1.0
    elif isinstance(space, RegularPolygon):
        X[:h] = space.vertices[rng.integers(len(space.vertices), size=h)]
        X[:h] *= rng.uniform(0.5, 2.0, (h, 1))
    return X, Y


def criterion_6(trials=500, seed=42):
    rng = np.random.default_rng(seed)
    m = _scaled(1000, trials)
    fams = [Lp(1, 3), Lp(math.inf, 3), RegularPolygon(3), RegularPolygon(4),
            RegularPolygon(7), Lp(1.5, 3), Lp(3, 3)]
    rows, ok = [], True
    for sp in fams:
        X, Y = _pairs_for(sp, rng, m)
        plus, minus = derivative_batch(sp, X, Y)
        worst, viol, refused = 0.0, 0, 0
        for x, y, ep, em in zip(X, Y, plus, minus):
            try:
                d = derivative(sp, x, y, "numeric")
            except NumericDerivativeError:
                # an uncertified pair is a failure, not a skip
                refused += 1
                continue
            worst = max(worst, abs(d.rho_plus - ep), abs(d.rho_minus - em))
            lad = difference_quotients(sp, x, y)
            viol += int(np.sum(lad.q_plus + lad.slack < ep))
            viol += int(np.sum(lad.q_minus - lad.slack > em))
        good = worst <= 1e-6 and viol == 0 and refused == 0
        ok &= good
        rows.append({"space": repr(sp), "pairs": m, "max_abs_diff": worst,
                     "bracket_violations": viol, "refused": refused})
    return CriterionResult(6, "numeric vs exact derivatives", ok, {"families": rows})


CLASSIFICATION_TABLE = [
    ("l1", "1/2,0,0,-1/2", "LeftOnly"),
    ("l1", "1/2,1/3,0,-1/4", "RightOnly"),
    ("l1", "1/4,1/4,1/4,1/4", "Neither"),
    ("linf", "1,1,0,0,-1", "LeftOnly"),
    ("linf", "1,1/2,1/5,-1,2/3", "RightOnly"),
    ("linf", "1,-1/3,1,1/3,1/7", "Neither"),
]


def criterion_7(trials=500, seed=42):
    rows, ok = [], True
    for fam, text, want in CLASSIFICATION_TABLE:
        fn = classify_l1 if fam == "l1" else classify_linf
        # (1/2, 1/3, 0, -1/4) has l1 norm 13/12; the class is scale invariant
        got = fn(parse_rational_vector(text), normalize=True).label
        ok &= got == want
        rows.append({"space": fam, "x": text, "expected": want, "got": got})
    return CriterionResult(7, "classification table", ok, {"rows": rows})


def criterion_8(trials=500, seed=42):
    t = time.perf_counter()
    rng = np.random.default_rng(seed)
    count = _scaled(200, trials, floor=5)
    rows, ok = [], True
    for fam in ("l1", "linf"):
        for n in (3, 4, 5):
            sp = Lp(1 if fam == "l1" else math.inf, n)
            classify = classify_l1 if fam == "l1" else classify_linf
            agree, classes = 0, {}
            for _ in range(count):
                x = random_unit_rational(fam, n, rng)
                c = classify(x)
                xf = np.array([float(v) for v in x])
                s = int(rng.integers(2 ** 32))
                left = oracle_left_symmetric(sp, xf, trials, s).holds
                right = oracle_right_symmetric(sp, xf, trials, s).holds
                agree += (left, right) == (c.left, c.right)
                classes[c.label] = classes.get(c.label, 0) + 1
            ok &= agree == count
            rows.append({"space": repr(sp), "vectors": count, "agree": agree,
                         "classes": dict(sorted(classes.items()))})
    dt = time.perf_counter() - t
    return CriterionResult(8, "classifier vs oracle agreement", ok and dt < 30,
                           {"rows": rows, "oracle_trials": trials, "time_limit_s": 30},
                           dt)


def criterion_9(trials=500, seed=42):
    rng = np.random.default_rng(seed)
    m = _scaled(1000, trials)
    worst = 0.0
    for n in (2, 3, 4):
        sp = Lp(2, n)
        X = rng.standard_normal((m, n))
        D = rng.standard_normal((m, n))
        p, q = derivative_batch(sp, X, D)
        alpha = -0.5 * (p + q) / np.einsum("ij,ij->i", X, X)
        Y = alpha[:, None] * X + D
        p2, q2 = derivative_batch(sp, Y, X)
        worst = max(worst, float(np.abs(0.5 * (p2 + q2)).max()))
    mix = OrthantMixed2D(1, math.inf)
    a, b = [-1 / 3, 1], [1, 0]
    fwd = is_rho_orthogonal(mix, a, b)
    back = is_rho_orthogonal(mix, b, a)
    ok = worst <= 1e-8 and fwd and not back
    return CriterionResult(9, "inner-product symmetry and l1-l_inf witness", ok,
                           {"max_abs_rho_yx": worst, "pairs_per_n": m,
                            "witness_forward": fwd, "witness_backward": back,
                            "witness_rho_backward": derivative(mix, b, a).rho})


def _alpha_families(rng):
    return [Lp(1, 4), Lp(math.inf, 4), Lp(1.5, 3), Lp(2, 3), Lp(3, 2),
            RegularPolygon(3), RegularPolygon(6), random_polygon(rng),
            OrthantMixed2D(1, math.inf), OrthantMixed2D(2, 1)]


def criterion_10(trials=500, seed=42):
    rng = np.random.default_rng(seed)
    m = _scaled(1000, trials)
    rows, ok = [], True
    for sp in _alpha_families(rng):
        fails = 0
        for _ in range(m):
            x = rng.standard_normal(sp.dim)
            y = rng.standard_normal(sp.dim)
            a = alpha_right(sp, x, y, check=False)
            fails += not is_rho_orthogonal(sp, x, a * x + y)
        ok &= fails == 0
        rows.append({"space": repr(sp), "triples": m, "failures": fails})
    none = alpha_left(Lp(math.inf, 3), [1, 1, 0.5], [-0.5, 0, 1], search_range=1e3)
    ok &= none is None
    return CriterionResult(10, "alpha-right postcondition, alpha-left absence", ok,
                           {"alpha_right": rows, "alpha_left_linf3": none})


def criterion_11(trials=500, seed=42):
    rng = np.random.default_rng(seed)
    spaces = [("l2", Lp(2, 2)), ("regular hexagon", RegularPolygon(3)),
              ("l1-linf", OrthantMixed2D(1, math.inf))]
    spaces += [(f"random polygon {i}", random_polygon(rng)) for i in range(10)]
    rows, ok = [], True
    for name, sp in spaces:
        pts = [np.array([1.0, 0.0])]
        pts += list(sphere_points_2d(sp, rng.uniform(0, 2 * math.pi, 4)))
        if hasattr(sp, "vertices"):
            pts += list(sp.vertices)
        worst = max(verify_monotone(sp, x, 360).max_violation for x in pts)
        ok &= worst <= 1e-9
        rows.append({"space": name, "points": len(pts), "max_violation": worst})
    return CriterionResult(11, "monotonicity of rho' along the cone", ok, {"rows": rows})


def criterion_12(trials=500, seed=42):
    rows, ok = [], True
    for p in (1.5, 2.0, 3.0):
        g = gamma_estimate(Lp(p, 2), coarse=720, refine_iters=60)
        ok &= g.value <= 1e-3
        rows.append({"p": p, "gamma_lower_bound": g.value})
    return CriterionResult(12, "smooth spaces have Gamma ~ 0", ok, {"rows": rows})


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6,
            criterion_7, criterion_8, criterion_9, criterion_10, criterion_11, criterion_12]


def run_all(trials=500, seed=42, only=None):
    out = []
    for k, fn in enumerate(CRITERIA, start=1):
        if only and k not in only:
            continue
        t = time.perf_counter()
        r = fn(trials=trials, seed=seed)
        if not r.seconds:
            r.seconds = time.perf_counter() - t
        out.append(r)
    return out
