import math

import numpy as np
import pytest

from normderiv.cones2d import ortho_cone
from normderiv.derivatives import derivative, derivative_batch, is_birkhoff
from normderiv.gamma import (GammaMethod, check_uns_relation, e_constant, gamma,
                             gamma_closed_form_2ngon, gamma_estimate, gamma_polyhedral_2d,
                             james_constant_estimate, modulus_of_convexity_estimate,
                             polygon_vertices)
from normderiv.spaces import (Lp, OrthantMixed2D, Polyhedral2D, RegularPolygon, SpaceError,
                              UnsupportedSpace, regular_polygon_vertices)
from normderiv.verify import builtin_spaces, random_polygon

from oracles import brute_gamma_2d

INF = math.inf
L1L = OrthantMixed2D(1, INF)


def _check_witness(sp, res):
    x, y = res.witness_x, res.witness_y
    assert sp.norm(x) == pytest.approx(1) and sp.norm(y) == pytest.approx(1)
    assert is_birkhoff(sp, x, y)
    assert abs(derivative(sp, x, y).rho) == pytest.approx(res.value, abs=1e-12)


# exact values


def test_octagon():
    res = gamma_polyhedral_2d(RegularPolygon(4))
    assert res.value == pytest.approx(1 / (2 * math.sqrt(2)), abs=1e-9)
    assert res.method is GammaMethod.EXACT_POLYHEDRAL_2D
    _check_witness(RegularPolygon(4), res)


def test_diamond_and_square():
    assert gamma_polyhedral_2d(RegularPolygon(2)).value == pytest.approx(0.5, abs=1e-12)
    assert gamma_polyhedral_2d(Lp(INF, 2)).value == pytest.approx(0.5, abs=1e-12)
    assert gamma_polyhedral_2d(Lp(1, 2)).value == pytest.approx(0.5, abs=1e-12)


def test_l1_linf_hexagon():
    res = gamma_polyhedral_2d(L1L)
    assert res.value == pytest.approx(0.5, abs=1e-9)
    _check_witness(L1L, res)
    assert is_birkhoff(L1L, [1, 0], [0, 1])
    assert derivative(L1L, [1, 0], [0, 1]).rho == 0.5


def test_closed_form_examples():
    assert gamma_closed_form_2ngon(4) == pytest.approx(1 / (2 * math.sqrt(2)), abs=1e-15)
    assert gamma_closed_form_2ngon(3) == pytest.approx(0.5, abs=1e-15)
    assert gamma_closed_form_2ngon(2) == pytest.approx(0.5, abs=1e-15)
    with pytest.raises(SpaceError):
        gamma_closed_form_2ngon(1)


@pytest.mark.parametrize("n", range(2, 13))
def test_closed_form_matches_vertex_maximum(n):
    res = gamma_polyhedral_2d(RegularPolygon(n))
    assert abs(res.value - gamma_closed_form_2ngon(n)) <= 1e-9
    _check_witness(RegularPolygon(n), res)


SCAN = [(RegularPolygon(3), regular_polygon_vertices(3)),
        (RegularPolygon(5), regular_polygon_vertices(5)),
        (L1L, [(1, 0), (0, 1), (-1, 1)]),
        (Polyhedral2D([(3, 1), (1, 2), (-1, 2)]), [(3, 1), (1, 2), (-1, 2)])]


@pytest.mark.parametrize("sp,corners", SCAN, ids=[repr(s) for s, _ in SCAN])
def test_vertex_maximum_matches_brute_force_scan(sp, corners):
    brute = brute_gamma_2d(sp.norms, lambda X, Y: derivative_batch(sp, X, Y),
                           extra_x=corners)
    exact = gamma_polyhedral_2d(sp).value
    assert brute <= exact + 1e-9
    assert brute >= exact - 5e-3


def test_vertex_sufficiency_on_random_polygons():
    rng = np.random.default_rng(30)
    for _ in range(20):
        sp = random_polygon(rng)
        best = gamma_polyhedral_2d(sp).value
        V = sp.vertices
        for i in range(len(V)):
            for t in np.linspace(0.01, 0.99, 15):
                x = (1 - t) * V[i] + t * V[(i + 1) % len(V)]
                c = ortho_cone(sp, x)
                for w in (c.w1, c.w2):
                    assert abs(derivative(sp, x, w).rho) <= best + 1e-9


def test_higher_dimensional_attained_bound():
    for sp in (Lp(1, 3), Lp(INF, 4)):
        res = gamma(sp)
        assert res.value == 0.5 and res.method is GammaMethod.ATTAINED_BOUND
        _check_witness(sp, res)


def test_dispatch():
    assert gamma(Lp(3, 3)).value == 0.0
    assert gamma(Lp(3, 3)).method is GammaMethod.SMOOTH
    assert gamma(RegularPolygon(4)).method is GammaMethod.EXACT_POLYHEDRAL_2D
    assert gamma(OrthantMixed2D(2, 1)).method is GammaMethod.GRID_ESTIMATE
    with pytest.raises(UnsupportedSpace):
        gamma(Lp(INF, 1))
    with pytest.raises(UnsupportedSpace):
        polygon_vertices(Lp(3, 2))


# estimator


@pytest.mark.parametrize("p", [1.5, 2, 3])
def test_estimate_vanishes_on_smooth_planes(p):
    res = gamma_estimate(Lp(p, 2), coarse=720)
    assert res.value <= 1e-3 and res.lower_bound_only


def test_estimate_regular_decagon():
    res = gamma_estimate(RegularPolygon(5), coarse=720)
    assert res.value == pytest.approx(gamma_closed_form_2ngon(5), abs=1e-6)


@pytest.mark.parametrize("p", [2, 3])
def test_estimate_mixed_lp_l1(p):
    sp = OrthantMixed2D(p, 1)
    res = gamma_estimate(sp, coarse=720)
    assert res.value == pytest.approx(0.5, abs=1e-6)
    _check_witness(sp, res)


def test_estimate_is_a_lower_bound_that_converges():
    rng = np.random.default_rng(31)
    spaces = [RegularPolygon(n) for n in (3, 4, 7)] + [L1L]
    spaces += [random_polygon(rng) for _ in range(4)]
    for sp in spaces:
        exact = gamma_polyhedral_2d(sp).value
        est = gamma_estimate(sp, coarse=1440).value
        assert est <= exact + 1e-9
        assert est >= exact - 1e-5


# bounds and companion constants


def test_bound_on_builtin_spaces():
    for sp in builtin_spaces():
        g = gamma(sp, coarse=360).value
        e = e_constant(sp)
        assert 0 <= g <= min(e, 0.5) + 1e-9, repr(sp)


def test_e_constant():
    assert e_constant(Lp(2, 2)) == 0.0
    assert e_constant(Lp(INF, 2)) == 2.0
    for n in range(2, 13):
        # adjacent edge functionals differ by 2 tan(pi/2n) perpendicular to a
        # vertex; its dual norm is the largest |sin| over the vertex angles
        ref = 2 * math.tan(math.pi / (2 * n)) * max(abs(math.sin(k * math.pi / n))
                                                    for k in range(2 * n))
        assert e_constant(RegularPolygon(n)) == pytest.approx(ref, abs=1e-12)
    assert e_constant(L1L) == pytest.approx(1.0)
    with pytest.raises(UnsupportedSpace):
        e_constant(object())


def _brute_james(sp, k=3000):
    a = np.pi * np.arange(k) / k
    P = np.column_stack([np.cos(a), np.sin(a)])
    P /= sp.norms(P)[:, None]
    return max(np.minimum(sp.norms(x - P), sp.norms(x + P)).max() for x in P[::10])


JAMES = [(Lp(INF, 2), 2.0), (Lp(2, 2), math.sqrt(2)), (RegularPolygon(3), 1.5),
         (L1L, 1.5), (RegularPolygon(4), math.sqrt(2)), (RegularPolygon(6), 2 * (math.sqrt(3) - 1)),
         (Lp(3, 2), 2 ** (2 / 3))]


@pytest.mark.parametrize("sp,value", JAMES, ids=[repr(s) for s, _ in JAMES])
def test_james_constant(sp, value):
    j = james_constant_estimate(sp)
    assert j == pytest.approx(value, abs=1e-6)
    assert _brute_james(sp) <= j + 1e-9


def test_l1_linf_is_uniformly_non_square():
    assert james_constant_estimate(L1L) <= 1.95


def test_modulus_of_convexity():
    assert modulus_of_convexity_estimate(Lp(2, 2), 1.0) == pytest.approx(
        1 - math.sqrt(0.75), abs=1e-6)
    assert modulus_of_convexity_estimate(Lp(INF, 2), 1.0) == 0.0
    assert modulus_of_convexity_estimate(RegularPolygon(6), 0.5) == 0.0
    assert modulus_of_convexity_estimate(Lp(2, 2), 0.0) == 0.0
    with pytest.raises(ValueError):
        modulus_of_convexity_estimate(Lp(2, 2), 2.5)


def test_uns_relation():
    r = check_uns_relation(RegularPolygon(4))
    assert r.gamma < 0.5 and r.uniformly_non_square and not r.violation
    r = check_uns_relation(Lp(INF, 2))
    assert r.gamma == pytest.approx(0.5) and r.james == pytest.approx(2.0)
    assert not r.uniformly_non_square and not r.violation
    r = check_uns_relation(L1L)
    assert r.gamma == pytest.approx(0.5) and r.uniformly_non_square and not r.violation
    # regular hexagon: recorded as computed, (Gamma, J) = (1/2, 3/2)
    r = check_uns_relation(RegularPolygon(3))
    assert (r.gamma, r.james) == pytest.approx((0.5, 1.5), abs=1e-9)
