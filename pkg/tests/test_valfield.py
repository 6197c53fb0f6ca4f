from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from purediff.errors import PrecisionExhausted, SpecValidationError, UnsupportedForm
from purediff.ordgrp import INF
from purediff.valfield import (
    LaurentSeriesField,
    Poly,
    RatFunc,
    RationalPadic,
    ResidueField,
    build_extension,
    eval_val,
    field_from_json,
    residue_minpoly,
    separable,
    vp_int,
)

Q2, Q3 = RationalPadic(2), RationalPadic(3)
F2t = LaurentSeriesField(2)
F2u = LaurentSeriesField(2, with_u=True)


def P(K, *cs):
    return Poly([K.parse(c) if isinstance(c, str) else K.from_int(c) for c in cs], K)


def test_padic_val():
    assert Q2.val(F(12)) == 2
    assert Q2.val(F(0)) is INF
    assert Q2.val(F(3, 8)) == -3
    assert vp_int(5 ** 4 * 3, 5) == 4


def test_series_val():
    x = F2t.parse("t^3*(1+t+t^2)")
    assert F2t.val(x) == 3
    assert F2t.val(F2t.zero) is INF
    assert F2u.val(F2u.parse("u/t")) == -1


def test_series_inverse_roundtrip():
    x = F2t.parse("t^-2 + 1 + t")
    y = F2t.inverse(x)
    r = x * y - F2t.one
    assert not r.terms
    # the residual is only known up to O(t^prec): its valuation is never guessed
    with pytest.raises(PrecisionExhausted):
        F2t.val(r)


def test_build_ramified():
    L = build_extension(Q2, P(Q2, -2, 0, 1))
    assert (L.e, L.f, L.gamma) == (2, 1, F(1, 2))
    assert L.kind == "ramified"


def test_build_inertial():
    L = build_extension(Q2, P(Q2, 1, 1, 1))
    assert (L.e, L.f, L.kind) == (1, 2, "inertial")
    assert separable(residue_minpoly(L))


def test_build_inseparable_residue():
    L = build_extension(F2u, P(F2u, "-(u+t)", 0, 1))
    assert (L.e, L.f) == (1, 2)
    assert not separable(residue_minpoly(L))


def test_build_errors():
    with pytest.raises(SpecValidationError):
        build_extension(Q2, P(Q2, 1, 0, 2))  # not monic
    with pytest.raises(SpecValidationError):
        build_extension(Q3, P(Q3, -1, 0, 1))  # residue y^2 - 1 splits
    with pytest.raises(UnsupportedForm):
        build_extension(Q2, P(Q2, 1, 0, 1))  # residue (y+1)^2
    with pytest.raises(UnsupportedForm):
        build_extension(Q2, P(Q2, 4, 0, 0, 0, 1))  # slope 1/2 in degree 4


def _rpoly(p, *coeffs):
    R = ResidueField(p, with_u=True)
    return Poly([c if isinstance(c, RatFunc) else R.from_int(c) for c in coeffs], R)


def test_separable_examples():
    u = RatFunc.u(2)
    assert separable(Poly([RatFunc.const(2, 1)] * 3, ResidueField(2)))
    assert not separable(_rpoly(2, -u, 0, 1))
    assert separable(_rpoly(2, -u, 0, 0, 1))


def test_eval_val_examples():
    L = build_extension(Q2, P(Q2, -2, 0, 1))
    assert eval_val(L.x(), L) == F(1, 2)
    assert eval_val(L.g, L) is INF
    assert eval_val(L.g.derivative(), L) == F(3, 2)


def test_field_from_json():
    assert field_from_json({"field": "Qp", "p": 5}) == RationalPadic(5)
    with pytest.raises(SpecValidationError):
        field_from_json({"field": "Qp", "p": 4})


# -- properties ---------------------------------------------------------------

small = st.integers(min_value=-12, max_value=12)
polys = st.lists(small, min_size=1, max_size=4).filter(any)


@pytest.mark.parametrize(
    "K,g",
    [
        (Q2, P(Q2, -2, 0, 1)),
        (Q2, P(Q2, 1, 1, 1)),
        (Q3, P(Q3, -2, 0, 1)),
        (Q2, P(Q2, -2, 0, 0, 1)),
        (Q3, P(Q3, 3, 3, 0, 1)),
        (Q2, P(Q2, 1, 1, 0, 1)),
    ],
    ids=str,
)
def test_degree_formula_and_value_group(K, g):
    L = build_extension(K, g)
    assert L.e * L.f == g.deg
    if L.kind == "ramified":
        assert L.gamma.denominator == L.e


@given(polys, polys)
def test_eval_val_is_multiplicative(a, b):
    for K, g in ((Q2, P(Q2, -2, 0, 1)), (Q3, P(Q3, 1, 2, 0, 1)), (Q2, P(Q2, 1, 1, 1))):
        L = build_extension(K, g)
        f, h = Poly([F(c) for c in a], K), Poly([F(c) for c in b], K)
        vf, vh = eval_val(f, L), eval_val(h, L)
        assert eval_val(f * h, L) == vf + vh


@given(polys, polys)
def test_eval_val_ultrametric(a, b):
    L = build_extension(Q2, P(Q2, -2, 0, 0, 1))
    f, h = Poly([F(c) for c in a], Q2), Poly([F(c) for c in b], Q2)
    s = eval_val(f + h, L)
    assert s >= min(eval_val(f, L), eval_val(h, L))
