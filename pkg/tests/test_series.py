import json
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from planebranch.field import QQ, field_context
from planebranch.series import (BranchPoly, NotDistinguished, XSeries, YPoly, branch_from_terms,
                                series_inverse)


def xs(terms, T=float("inf"), ctx=QQ):
    return XSeries.from_dict(ctx, terms, T)


def yp(terms, ctx=QQ):
    """``{(x_exp, y_exp): c}``."""
    return YPoly.from_terms(ctx, terms)


CUSP = {(0, 2): 1, (3, 0): 1}
F413 = {(0, 4): 1, (3, 2): 2, (6, 0): 1, (5, 1): 1}  # (y^2+x^3)^2 + x^5 y


def test_xseries_sum_examples():
    assert xs({3: 1}, 10) + xs({3: 1}, 10) == xs({3: 2}, 10)
    s = xs({1: 4, 5: -1}, 20)
    assert s + xs({}, 20) == s
    r = xs({2: 1}, 5) + xs({7: 1}, 9)
    assert r == xs({2: 1}, 5) and r.precision == 5


def test_truncation_drops_high_terms():
    s = xs({0: 1, 7: 3}, 5)
    assert s.coeffs == {0: QQ.one}
    assert s.order() == 0
    assert xs({}, 5).order() is None


def test_ypoly_products():
    cusp = yp(CUSP)
    assert cusp * YPoly.constant(QQ) == cusp
    assert yp({(0, 1): 1, (1, 0): 1}) * yp({(0, 1): 1, (1, 0): -1}) == yp({(0, 2): 1, (2, 0): -1})
    assert cusp ** 2 == yp({(0, 4): 1, (3, 2): 2, (6, 0): 1})
    assert cusp ** 0 == YPoly.constant(QQ)
    assert cusp ** 1 == cusp


def test_order_examples():
    assert yp(CUSP).order() == 2
    assert yp(F413).order() == 4
    assert yp({(0, 1): 1, (7, 0): 1}).order() == 1


def test_mult_x_and_eval():
    assert branch_from_terms(CUSP).mult_x() == 2
    assert branch_from_terms(F413).mult_x() == 4
    assert BranchPoly.y(QQ).ydeg == 1
    assert yp(CUSP).eval_y_zero() == xs({3: 1})
    assert yp(F413).eval_y_zero() == xs({6: 1})
    assert BranchPoly.y(QQ).eval_y_zero().is_zero()


def test_branch_validation():
    with pytest.raises(NotDistinguished):
        branch_from_terms({(0, 2): 1, (0, 0): 1})
    with pytest.raises(NotDistinguished):
        branch_from_terms({(0, 2): 2, (3, 0): 1})
    # a unit leading coefficient can be normalized away at finite precision
    p = YPoly.from_terms(QQ, {(0, 2): 1, (3, 0): 1, (2, 2): 1}, 40)
    g = BranchPoly.monic_from_unit_leading(p)
    assert g.ydeg == 2 and g.precision == 40


def test_monic_normalization_is_exact():
    p = YPoly.from_terms(QQ, {(0, 2): 1, (3, 0): 1, (2, 2): 1}, 30)
    g = BranchPoly.monic_from_unit_leading(p)
    unit = YPoly(QQ, [xs({0: 1, 2: 1}, 30)], 30)
    assert (g * unit).truncate(30) == p.truncate(30)


def test_json_roundtrip_bytes():
    F = field_context(101)
    for f in (branch_from_terms(F413), branch_from_terms({(0, 3): 1, (7, 0): -2, (2, 1): 5}, F),
              BranchPoly.monic_from_unit_leading(YPoly.from_terms(QQ, {(0, 2): 1, (3, 0): 1, (2, 2): 1}, 20))):
        a = json.dumps(f.to_json(), sort_keys=True)
        g = BranchPoly.from_json(json.loads(a))
        assert g == f
        assert json.dumps(g.to_json(), sort_keys=True) == a


def test_json_shape():
    doc = branch_from_terms(CUSP).to_json()
    assert doc == {"field": "q", "ydeg": 2, "precision": None, "terms": [{"y": 0, "x": 3, "c": "1"}]}


def test_series_inverse():
    s = xs({0: 2, 1: 1, 4: -3}, 25)
    inv = series_inverse(s, 25)
    assert (s * inv) == xs({0: 1}, 25)


small = st.integers(min_value=-9, max_value=9)
series_st = st.dictionaries(st.integers(0, 12), small, max_size=6)


@given(a=series_st, b=series_st)
def test_valuation_additive(a, b):
    A, B = xs(a), xs(b)
    if A.is_zero() or B.is_zero():
        assert (A * B).is_zero()
    else:
        assert (A * B).order() == A.order() + B.order()


@given(a=series_st, b=series_st, c=series_st, T=st.integers(1, 20))
def test_series_ring_laws(a, b, c, T):
    A, B, C = xs(a, T), xs(b, T), xs(c, T)
    assert (A * B) * C == A * (B * C)
    assert A * (B + C) == A * B + A * C
    assert A * B == B * A
    assert (A - A).is_zero()


poly_st = st.dictionaries(st.tuples(st.integers(0, 6), st.integers(0, 3)), small, max_size=6)


@given(a=poly_st, b=poly_st, c=poly_st)
def test_ypoly_ring_laws(a, b, c):
    A, B, C = yp(a), yp(b), yp(c)
    assert (A * B) * C == A * (B * C)
    assert A * (B + C) == A * B + A * C
    assert A * B == B * A


@given(lower=st.lists(st.dictionaries(st.integers(1, 8), small, max_size=3), min_size=1, max_size=4))
def test_mult_x_is_ydeg_and_order_bound(lower):
    f = BranchPoly.from_lower(QQ, [xs(t) for t in lower])
    assert f.mult_x() == f.ydeg == len(lower)
    assert f.order() <= f.mult_x()


def test_fraction_coefficients():
    s = xs({0: Fraction(1, 3)}) * xs({1: Fraction(3, 2)})
    assert s == xs({1: Fraction(1, 2)})
