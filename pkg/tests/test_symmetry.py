import math
import warnings
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from normderiv.derivatives import is_rho_orthogonal
from normderiv.spaces import Lp, OrthantMixed2D, RegularPolygon, SpaceError, UnsupportedSpace, ZeroVector
from normderiv.symmetry import (SUPPORT_CAP, InexactInputWarning, NotUnitVector, SymmetryClass,
                                classify_l1, classify_linf, distinct_signed_subset_sums,
                                oracle_left_symmetric, oracle_right_symmetric,
                                parse_rational_vector, probe_space_symmetry,
                                random_unit_rational, rho_ortho_l1, rho_ortho_linf)

from oracles import classify_l1_literal, classify_linf_literal, signed_sums_distinct_literal

INF = math.inf
F = Fraction


def _vec(text):
    return parse_rational_vector(text)


# classification table


TABLE = [
    ("l1", "1/2,0,0,-1/2", "LeftOnly"),
    ("l1", "1/2,1/3,0,-1/4", "RightOnly"),
    ("l1", "1/4,1/4,1/4,1/4", "Neither"),
    ("linf", "1,1,0,0,-1", "LeftOnly"),
    ("linf", "1,1/2,1/5,-1,2/3", "RightOnly"),
    ("linf", "1,-1/3,1,1/3,1/7", "Neither"),
]


@pytest.mark.parametrize("fam,text,want", TABLE)
def test_classification_table(fam, text, want):
    fn = classify_l1 if fam == "l1" else classify_linf
    assert fn(_vec(text), normalize=True).label == want


def test_extreme_points_are_both():
    assert classify_l1(_vec("1,0,0")).label == "Both"
    assert classify_l1(_vec("0,-1")).symmetric
    assert classify_linf(_vec("1,1,1")).label == "Both"
    assert classify_linf(_vec("-1,1,1,-1")).label == "Both"


def test_non_unit_input():
    with pytest.raises(NotUnitVector):
        classify_l1(_vec("1/2,1/3,0,-1/4"))
    with pytest.raises(NotUnitVector):
        classify_linf(_vec("2,1"))
    with pytest.raises(ZeroVector):
        classify_l1(_vec("0,0"), normalize=True)
    # scaling does not change the class
    assert classify_l1(_vec("2,0,0,-2"), normalize=True).label == "LeftOnly"


def test_symmetry_class_labels():
    assert str(SymmetryClass(True, True)) == "Both"
    assert SymmetryClass(False, False).label == "Neither"
    assert not SymmetryClass(True, False).symmetric


def test_support_cap():
    x = [F(1, SUPPORT_CAP + 1)] * (SUPPORT_CAP + 1)
    with pytest.raises(SpaceError):
        classify_l1(x)
    classify_l1([F(1, SUPPORT_CAP)] * SUPPORT_CAP)


def test_parse():
    assert _vec("1/2, -0.25,3") == [F(1, 2), F(-1, 4), F(3)]
    for bad in ("", "1,,2", "1/0", "a,b"):
        with pytest.raises(ValueError):
            parse_rational_vector(bad)


def test_float_input_warns():
    with pytest.warns(InexactInputWarning):
        assert classify_l1([0.5, -0.5]).label == "LeftOnly"
    with pytest.warns(InexactInputWarning):
        rho_ortho_l1([1.0, 0.0], [0.0, 1.0])
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        classify_l1([F(1, 2), F(-1, 2)])
        classify_l1(["1/2", "-1/2"])


# subset sums


def test_subset_sums_examples():
    assert distinct_signed_subset_sums([F(1, 2), F(1, 3), F(-1, 4)])
    assert not distinct_signed_subset_sums([F(1, 4)] * 4)
    assert not distinct_signed_subset_sums([1, 2, 3])
    assert distinct_signed_subset_sums([1, 2, 4, 8])
    assert distinct_signed_subset_sums([])
    assert not distinct_signed_subset_sums([1.0, 2.0, 3.0], exact=False)
    assert distinct_signed_subset_sums([1.0, 2.0, 4.0], exact=False)


small = st.fractions(min_value=-3, max_value=3, max_denominator=6).filter(lambda v: v != 0)


@given(st.lists(small, min_size=0, max_size=6))
def test_subset_sums_match_literal_enumeration(values):
    assert distinct_signed_subset_sums(values) == signed_sums_distinct_literal(values)


def _rational_unit(family):
    ints = st.lists(st.integers(-4, 4), min_size=1, max_size=6).filter(any)

    def make(v):
        s = sum(map(abs, v)) if family == "l1" else max(map(abs, v))
        return [F(t, s) for t in v]
    return ints.map(make)


@given(_rational_unit("l1"))
def test_classify_l1_matches_literal(x):
    c = classify_l1(x)
    assert (c.left, c.right) == classify_l1_literal(x)


@given(_rational_unit("linf"))
def test_classify_linf_matches_literal(x):
    c = classify_linf(x)
    assert (c.left, c.right) == classify_linf_literal(x)


# rho-orthogonality predicates


def test_rho_ortho_examples():
    x = _vec("1/4,1/4,1/4,1/4")
    assert rho_ortho_l1(x, [1, 1, 1, -3])
    # the reverse fails: rho'(y, x) = 1/4 (1 + 1 + 1 - 1) != 0
    assert not rho_ortho_l1([1, 1, 1, -3], x)
    assert rho_ortho_l1([1, 0], [0, 5])
    assert rho_ortho_linf([1, 1], [1, -1])
    assert not rho_ortho_linf([1, 1], [1, 0])
    assert rho_ortho_linf([2, 1, 0], [0, 7, 7])
    with pytest.raises(SpaceError):
        rho_ortho_l1([1, 0], [1, 0, 0])
    with pytest.raises(ZeroVector):
        rho_ortho_linf([0, 0], [1, 0])


@pytest.mark.parametrize("n", range(2, 6))
def test_predicates_agree_with_derivatives(n):
    rng = np.random.default_rng(40 + n)
    for _ in range(200):
        for fam, fn, sp in (("l1", rho_ortho_l1, Lp(1, n)), ("linf", rho_ortho_linf, Lp(INF, n))):
            x = random_unit_rational(fam, n, rng)
            y = [F(int(t)) for t in rng.integers(-3, 4, n)]
            want = is_rho_orthogonal(sp, [float(v) for v in x], [float(v) for v in y])
            assert fn(x, y) == want


# randomized oracles


def test_oracle_examples():
    assert oracle_left_symmetric(Lp(2, 3), [1, 2, 2], 300).holds
    assert oracle_right_symmetric(Lp(2, 3), [1, 2, 2], 300).holds
    r = oracle_left_symmetric(Lp(1, 4), [0.25] * 4, 300)
    assert not r.holds and r.counterexample is not None
    assert oracle_left_symmetric(OrthantMixed2D(1, INF), [1, 0], 300).holds
    assert oracle_right_symmetric(Lp(1, 3), [1, 0, 0], 300).holds
    assert not oracle_right_symmetric(Lp(INF, 5), [1, 1, 0, 0, -1], 300)


def test_oracles_agree_with_classifiers():
    rng = np.random.default_rng(41)
    for fam, sp, fn in (("l1", Lp(1, 4), classify_l1), ("linf", Lp(INF, 4), classify_linf)):
        for _ in range(25):
            x = random_unit_rational(fam, 4, rng)
            c = fn(x)
            xf = [float(v) for v in x]
            assert oracle_left_symmetric(sp, xf, 400, 1).holds == c.left, x
            assert oracle_right_symmetric(sp, xf, 400, 1).holds == c.right, x


def test_oracle_errors():
    with pytest.raises(ZeroVector):
        oracle_left_symmetric(Lp(2, 2), [0, 0])
    with pytest.raises(UnsupportedSpace):
        oracle_right_symmetric(RegularPolygon(3), [1, 0])


def test_probe():
    r = probe_space_symmetry(Lp(2, 3), trials=10, per_point=50)
    assert r.symmetric and r.fraction == 1.0
    r = probe_space_symmetry(OrthantMixed2D(1, INF), trials=10, per_point=50)
    assert r.witness_checked and not r.symmetric
    a, b = r.counterexample
    assert is_rho_orthogonal(OrthantMixed2D(1, INF), a, b)
    assert not is_rho_orthogonal(OrthantMixed2D(1, INF), b, a)
    r = probe_space_symmetry(Lp(INF, 3), trials=10, per_point=50)
    assert not r.symmetric
