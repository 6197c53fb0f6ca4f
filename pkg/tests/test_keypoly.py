from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from purediff.errors import NoStabilizationWitnessed, NotConcrete, UnsupportedForm
from purediff.keypoly import (
    NewtonPolygon,
    check_generation,
    delta,
    delta_compare,
    evaluate_monomials,
    hasse_derivative,
    normalize_proportional,
    q_expand,
    rewrite_nonneg,
    stable_value,
    truncation,
)
from purediff.omega import PureDefect
from purediff.oracle import delta_bruteforce
from purediff.ordgrp import INF
from purediff.valfield import Poly, RationalPadic, build_extension

Q2 = RationalPadic(2)


def P(*cs, K=Q2):
    return Poly([F(c) for c in cs], K)


SQRT2 = build_extension(Q2, P(-2, 0, 1))
F4 = build_extension(Q2, P(1, 1, 1))


def test_q_expand_examples():
    q = P(-1, 1)
    assert q_expand(q, q).coeffs == (P(), P(1))
    assert q_expand(P(1, 0, 1), q).coeffs == (P(2), P(2), P(1))
    f = P(3, 5)
    assert q_expand(f, P(1, 0, 1)).coeffs == (f,)
    with pytest.raises(ValueError):
        q_expand(f, P(1, 2))


def test_truncation_examples():
    assert truncation(P(-2, 0, 1), P(0, 1), SQRT2) == 1
    assert truncation(P(0, 1), P(0, 1), SQRT2) == F(1, 2)
    # the support polynomial has infinite value, so only f_0 counts
    assert truncation(P(3, 0, 1), SQRT2.g, SQRT2) == SQRT2.eval_val(P(3, 0, 1)) == 0
    assert truncation(P(0, 0, 0, -2, 0, 1), SQRT2.g, SQRT2) is INF


def test_hasse_derivative():
    assert hasse_derivative(P(0, 0, 0, 1), 2) == P(0, 3)
    assert hasse_derivative(P(0, 0, 0, 1), 0) == P(0, 0, 0, 1)
    assert hasse_derivative(P(0, 0, 0, 1), 4).is_zero()


def test_newton_polygon():
    poly = NewtonPolygon.from_values([2, INF, 0])
    assert poly.slopes == ((F(-1), 2),)
    assert poly.root_values() == [(F(1), 2)]


def test_delta_examples():
    assert delta(SQRT2.g, SQRT2) is INF
    assert delta(P(0, 1), SQRT2) == F(1, 2)
    f = P(-4, 0, 1)
    assert delta(f, SQRT2) == delta_bruteforce(f, SQRT2, [P(2), P(-2)]) == F(1, 2)
    assert delta_compare(SQRT2.g, f, SQRT2) == 1
    assert delta_compare(P(0, 1), f, SQRT2) == 0


def test_normalize_proportional():
    assert normalize_proportional([P(0, 1)], F4) == [P(0, 1)]
    near_six = build_extension(Q2, P(28, -10, 1))  # eta = 6 + 2*zeta, zeta^2 + zeta + 1 = 0
    assert near_six.eval_val(P(-6, 1)) == 1
    assert normalize_proportional([P(-6, 1)], near_six) == [P(-3, F(1, 2))]
    with pytest.raises(UnsupportedForm):
        normalize_proportional([P(0, 1)], SQRT2)


def test_rewrite_nonneg_examples():
    x = P(0, 1)
    assert rewrite_nonneg(x, [x], F4) == [(F(1), (1,))]
    terms = rewrite_nonneg(P(2, 1), [x], F4)
    assert sorted(terms, key=lambda t: t[1]) == [(F(2), (0,)), (F(1), (1,))]
    assert min(Q2.val(a) for a, _ in terms) == F4.eval_val(P(2, 1)) == 0
    assert rewrite_nonneg(P(0, 4), [x], F4) == [(F(4), (1,))]
    with pytest.raises(ValueError):
        rewrite_nonneg(P(1, 0, 1), [x], F4)  # degree too large
    with pytest.raises(ValueError):
        rewrite_nonneg(P(F(1, 2)), [x], F4)  # negative value


def test_stable_value():
    val = Q2.val
    assert stable_value(P(12), None, val) == 2
    assert stable_value(P(0, 1), lambda i: F(3) + F(2) ** (i + 5), val) == 0
    with pytest.raises(NoStabilizationWitnessed):
        stable_value(P(0, 1), lambda i: F(2) ** i, val)
    with pytest.raises(NoStabilizationWitnessed):
        stable_value(P(0, 1), None, val)


def test_check_generation():
    assert check_generation(F4, [P(0, 1)])
    assert check_generation(SQRT2, [P(0, 1)])
    bad = check_generation(SQRT2, [P(0, 2)])  # 2*eta misses eta itself
    assert not bad and bad.counterexample is not None
    with pytest.raises(NotConcrete):
        check_generation(PureDefect, [P(0, 1)])


# -- properties ---------------------------------------------------------------

ints = st.integers(min_value=-30, max_value=30)


@given(st.lists(ints, min_size=1, max_size=8), st.lists(ints, min_size=1, max_size=3))
def test_q_expansion_reconstructs(fc, qc):
    f, q = P(*fc), P(*qc, 1)
    exp = q_expand(f, q)
    assert exp.reconstruct() == f
    assert all(c.deg < q.deg for c in exp.coeffs)


@given(st.lists(ints, min_size=1, max_size=4), st.lists(ints, min_size=1, max_size=4), ints)
def test_linear_truncation_is_multiplicative(fc, hc, c):
    f, h, q = P(*fc), P(*hc), P(c, 1)
    if f.is_zero() or h.is_zero():
        return
    for L in (SQRT2, F4):
        assert truncation(f * h, q, L) == truncation(f, q, L) + truncation(h, q, L)


@given(st.lists(ints, min_size=1, max_size=2).filter(any))
def test_rewrite_postconditions(fc):
    x = P(0, 1)
    f = P(*fc)
    v = F4.eval_val(f)
    f = f * Q2.pi_power(-int(v))
    terms = rewrite_nonneg(f, [x], F4)
    assert evaluate_monomials(terms, [x], Q2) == f
    assert min(Q2.val(a) for a, _ in terms) == F4.eval_val(f) == 0
