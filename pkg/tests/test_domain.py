import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from oracles import brute_best_rational, gcd_list
from reinhardt import (
    DimensionMismatch,
    ExponentVector,
    InvalidExponent,
    NotRationalType,
    ParseError,
    ReinhardtDomain,
    classify,
    member_ambient,
    member_domain,
    normalize_rational,
    parse_alpha,
    parse_point,
)
from reinhardt.domain import TypeKind, best_rational

SQRT2_15 = 1.41421356237309


# -- best rational approximation against brute force ---------------------------


@settings(max_examples=200)
@given(st.floats(-3, 3, allow_nan=False), st.integers(1, 300))
def test_best_rational_matches_brute_force(x, qmax):
    ours = best_rational(Fraction(x), qmax)
    ref = brute_best_rational(x, qmax)
    assert ours.denominator <= qmax
    assert abs(ours - Fraction(x)) == abs(ref - Fraction(x))


def test_best_rational_matches_stdlib_on_sqrt2():
    x = Fraction(1 / SQRT2_15)
    assert best_rational(x, 10**6) == x.limit_denominator(10**6)


# -- classification ---------------------------------------------------------------


def test_classify_integer_vector():
    c = classify((2, 1))
    assert c.kind is TypeKind.RATIONAL and c.primitive == (2, 1) and c.scale == 1


def test_classify_decimal_ratio():
    c = classify(ExponentVector((1.5, 1.0)))
    assert c.kind is TypeKind.RATIONAL and c.primitive == (3, 2) and c.scale == pytest.approx(2)


def test_classify_sqrt2_is_irrational():
    c = classify(ExponentVector((1.0, SQRT2_15)), 10**6, 1e-12)
    assert c.kind is TypeKind.IRRATIONAL


def test_sqrt2_oracle_has_no_consistent_integer_scaling():
    # the best ratio approximation with q <= 10^6 is within 1e-12 of the ratio,
    # but rescaling onto that lattice misses integers by far more than 1e-12
    ratio = 1.0 / SQRT2_15
    best = brute_best_rational(ratio, 10**6)
    assert abs(float(best) - ratio) < 1e-12
    t = best.denominator / SQRT2_15
    residual = abs(t * 1.0 - best.numerator)
    assert residual > 1e-8


def test_classify_exact_fraction_input():
    c = classify(parse_alpha("3/2,1"))
    assert c.to_json() == {"kind": "rational", "primitive": [3, 2], "scale": 2}


def test_classify_zero_entries_pass_through():
    c = classify(ExponentVector((0.0, 1.5, 0.0, -3.0)))
    assert c.primitive == (0, 1, 0, -2)


def test_classify_single_nonzero_entry_is_rational():
    assert classify(ExponentVector((0.0, SQRT2_15))).primitive == (0, 1)


@pytest.mark.parametrize("bad", [(0.0, 0.0), (1.0, float("inf")), (float("nan"), 1.0)])
def test_invalid_exponent(bad):
    with pytest.raises(InvalidExponent):
        classify(ExponentVector(bad))


@pytest.mark.parametrize("t", [0.5, 2, 3.7])
@pytest.mark.parametrize("prim", [(2, 1), (3, -2), (5, 0, 7), (-1, -4, 6)])
def test_classify_scale_invariant(prim, t):
    alpha = ExponentVector(tuple(t * p for p in prim))
    assert classify(alpha).primitive == prim


def test_normalize_rational_examples():
    assert normalize_rational((4, 2)) == (2, 1)
    assert normalize_rational((-3, 6)) == (-1, 2)
    assert normalize_rational((2, 1)) == (2, 1)


def test_normalize_rational_rejects_irrational():
    with pytest.raises(NotRationalType):
        normalize_rational(ExponentVector((1.0, math.pi)))


@settings(max_examples=100)
@given(st.lists(st.integers(-40, 40), min_size=2, max_size=5).filter(any), st.floats(0.01, 10))
def test_normalize_output_is_primitive(ints, t):
    prim = normalize_rational(ExponentVector(tuple(t * v for v in ints)))
    assert gcd_list(prim) == 1
    g = gcd_list(ints)
    assert prim == tuple(v // g for v in ints)


def test_rational_override_uses_exact_float_value():
    d = ReinhardtDomain.build(ExponentVector((1.0, SQRT2_15)), type="rational")
    assert d.is_rational
    prim = d.classification.primitive
    assert gcd_list(prim) == 1
    assert prim[1] / prim[0] == pytest.approx(SQRT2_15, rel=1e-15)


def test_irrational_override():
    assert not ReinhardtDomain.build("2,1", type="irrational").is_rational


# -- grammar ------------------------------------------------------------------------


def test_parse_alpha_grammar():
    a = parse_alpha("3/2,1,-2")
    assert a.entries == (1.5, 1.0, -2.0)
    assert a.exact == (Fraction(3, 2), Fraction(1), Fraction(-2))
    d = parse_alpha("1, 1.41421356237309")
    assert d.exact is None and d.entries == (1.0, SQRT2_15)


@pytest.mark.parametrize("spec, token", [("1,x", "x"), ("1,2/0", "2/0"), ("1,,2", ""), ("1;2", "1;2")])
def test_parse_alpha_errors_name_token(spec, token):
    with pytest.raises(ParseError) as info:
        parse_alpha(spec)
    assert info.value.token == token


def test_parse_point():
    assert parse_point("0.5+0.1i,0.3") == (0.5 + 0.1j, 0.3 + 0j)
    assert parse_point("-0.1i,2") == (-0.1j, 2 + 0j)


# -- membership -----------------------------------------------------------------------


def test_member_ambient_examples():
    assert member_ambient((2, -1), (0, 1))
    assert not member_ambient((2, -1), (1, 0))
    assert member_ambient((1, 1), (0, 0))


def test_member_domain_examples():
    assert member_domain((2, 1), (0.5, 0.5))
    assert not member_domain((2, 1), (1, 1))
    assert not member_domain((2, -1), (1, 0))


def test_member_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        member_domain((2, 1), (0.5,))


points = st.lists(
    st.tuples(st.floats(0, 2), st.floats(0, 2 * math.pi)).map(lambda rt: rt[0] * complex(math.cos(rt[1]), math.sin(rt[1]))),
    min_size=3, max_size=3,
)


@given(points, st.floats(0.05, 20), st.lists(st.floats(0, 2 * math.pi), min_size=3, max_size=3))
def test_membership_scale_and_rotation_invariant(z, t, thetas):
    alpha = (2.0, -1.0, 0.5)
    inside = member_domain(alpha, z)
    assert member_domain(tuple(t * a for a in alpha), z) == inside or _on_boundary(alpha, z)
    rz = tuple(w * complex(math.cos(th), math.sin(th)) for w, th in zip(z, thetas))
    assert member_domain(alpha, rz) == inside or _on_boundary(alpha, z)


def _on_boundary(alpha, z):
    # rounding can flip membership only when log|z^alpha| is within a few ulps of 0
    if any(a < 0 and w == 0 for a, w in zip(alpha, z)) or any(w == 0 for a, w in zip(alpha, z) if a > 0):
        return False
    lg = sum(a * math.log(abs(w)) for a, w in zip(alpha, z))
    return abs(lg) < 1e-12
