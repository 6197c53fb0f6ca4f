from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from purediff import segment as seg
from purediff.errors import SpecValidationError, UnsupportedForm
from purediff.oracle import GridWindow, RawSegment, random_group, random_raw_segment
from purediff.ordgrp import INF, ExtValue, ValueGroup
from purediff.segment import (
    Cofinal,
    FiniteMax,
    IncToSup,
    annihilator_segment,
    closed_at,
    closed_ext,
    closed_mod,
    contains,
    has_min,
    invariance_subgroup,
    member,
    module_report,
    open_at,
    open_ext,
    open_mod,
    seg_equal,
    segment_of_family,
    segment_sum,
    translate,
)

Z = ValueGroup.of(1)
Z2 = ValueGroup.of(1, 1)
ZH = ValueGroup.of((1, 2))


def test_closed_and_open_at_on_discrete_group():
    assert seg_equal(closed_at(Z(0)), open_at(Z(-1)))
    assert not seg_equal(closed_at(Z(1)), open_at(Z(1)))
    assert closed_at(Z(0)).form == "closed_at"


def test_annihilator_example():
    assert seg_equal(annihilator_segment(closed_at(Z(-2)), closed_at(Z(3))), closed_at(Z(5)))


def test_member_and_validation():
    S = closed_at(Z(-2))
    assert member(S, Z(-2)) and not member(S, Z(-3)) and member(S, INF)
    with pytest.raises(SpecValidationError):
        member(closed_at(Z(0)), ZH(F(1, 2)))


def test_special_segments():
    assert has_min(seg.top(Z)) is INF
    assert has_min(seg.whole(Z)) is None
    assert not member(seg.empty(Z), INF)
    assert member(seg.top(Z), INF) and not member(seg.top(Z), Z(10 ** 6))
    assert invariance_subgroup(seg.whole(Z2)) == Z2.whole


def test_open_ext_on_dense_group_has_no_min():
    assert has_min(open_ext(ExtValue((F(0),)), ZH)) is None
    assert has_min(closed_at(ZH(F(3, 4)))) == ZH(F(3, 4))
    # an irrational-looking anchor in a discrete group snaps to a member
    assert seg_equal(open_ext(ExtValue((F(1, 2),)), Z), closed_at(Z(1)))


def test_invariance_subgroups():
    D2 = Z2.subgroup(2)
    assert invariance_subgroup(closed_mod(Z2(0, 0), D2)) == D2
    assert invariance_subgroup(closed_at(Z2(0, 0))).is_trivial
    assert invariance_subgroup(open_mod(Z2(3, 0), D2)) == D2


def test_mod_forms_ignore_lower_coordinates():
    D2 = Z2.subgroup(2)
    S = closed_mod(Z2(1, 7), D2)
    assert member(S, Z2(1, -100)) and not member(S, Z2(0, 100))
    assert seg_equal(open_mod(Z2(0, 5), D2), closed_mod(Z2(1, 0), D2))


def test_translate():
    assert seg_equal(translate(closed_at(Z(2)), Z(3)), closed_at(Z(5)))
    assert translate(seg.top(Z), Z(3)) == seg.top(Z)


def test_annihilator_edge_cases():
    a = closed_at(Z(0))
    assert annihilator_segment(seg.empty(Z), a) == seg.whole(Z)
    assert annihilator_segment(a, seg.empty(Z)) == seg.empty(Z)
    assert annihilator_segment(a, seg.top(Z)) == seg.empty(Z)
    assert annihilator_segment(seg.top(Z), a) == seg.whole(Z)
    with pytest.raises(UnsupportedForm):
        annihilator_segment(a, closed_at(ZH(0)))


def test_contains_and_sum():
    assert contains(closed_at(Z(0)), closed_at(Z(3)))
    assert not contains(closed_at(Z(3)), closed_at(Z(0)))
    assert seg_equal(segment_sum(closed_at(Z(1)), closed_at(Z(2))), closed_at(Z(3)))
    assert segment_sum(seg.top(Z), closed_at(Z(2))) == seg.top(Z)


def test_segment_of_family():
    fam = FiniteMax((Z(1), Z(4)))
    assert seg_equal(segment_of_family(fam, -1, 1, Z(0), Z), closed_at(Z(-4)))
    inc = IncToSup(ExtValue((F(0),)))
    assert seg_equal(segment_of_family(inc, -1, 2, ZH(1), ZH), open_ext(ExtValue((F(1),)), ZH))
    assert segment_of_family(Cofinal(), -1, 1, ZH(0), ZH) == seg.whole(ZH)
    with pytest.raises(UnsupportedForm):
        segment_of_family(Cofinal(), 1, 1, ZH(0), ZH)


def test_families_validate():
    with pytest.raises(SpecValidationError):
        FiniteMax(())
    with pytest.raises(SpecValidationError):
        IncToSup(ExtValue((F(0),))).validate(Z)  # discrete group has no increasing sequences to a sup
    IncToSup(ExtValue((F(0),))).validate(ZH)


def test_module_report_flags():
    rep = module_report(closed_at(Z(0)), closed_at(Z(3)))
    assert not rep.is_zero and rep.fin_gen and rep.fin_pres
    assert seg_equal(rep.ann, closed_at(Z(3)))
    rep = module_report(open_ext(ExtValue((F(0),)), ZH), seg.top(ZH))
    assert not rep.fin_gen and not rep.fin_pres and rep.ann == seg.empty(ZH)
    z = module_report(closed_at(Z(2)), closed_at(Z(2)))
    assert z.is_zero and z.fin_pres
    with pytest.raises(SpecValidationError):
        module_report(closed_at(Z(3)), closed_at(Z(0)))


# -- properties over random segments ------------------------------------------


def _random_pair(seed):
    import random

    rng = random.Random(seed)
    G = random_group(rng)
    a, b = random_raw_segment(G, rng, span=2), random_raw_segment(G, rng, span=2)
    return G, a, b, GridWindow(G, 2, 1)


seeds = st.integers(min_value=0, max_value=10 ** 9)


@given(seeds)
def test_build_matches_raw_membership(seed):
    G, a, _, W = _random_pair(seed)
    S = a.build(G)
    for x in W.points():
        assert member(S, x) == a.contains(x)


@given(seeds)
def test_canonical_form_is_unique(seed):
    G, a, b, W = _random_pair(seed)
    A, B = a.build(G), b.build(G)
    if seg_equal(A, B):
        assert all(a.contains(x) == b.contains(x) for x in W.points())


@given(seeds)
def test_invariance_subgroup_fixes_segment(seed):
    G, a, _, W = _random_pair(seed)
    S = a.build(G)
    H = invariance_subgroup(S)
    for k in range(H.suffix_start - 1, G.rank):
        unit = G.unit(k)
        assert seg_equal(translate(S, unit), S)


@given(seeds)
def test_annihilator_is_largest_translate_inside(seed):
    G, a, b, W = _random_pair(seed)
    A, B = a.build(G), b.build(G)
    ann = annihilator_segment(A, B)
    for x in W.points():
        assert member(ann, x) == contains(B, translate(A, x))


@given(seeds)
def test_contains_is_a_partial_order(seed):
    G, a, b, _ = _random_pair(seed)
    A, B = a.build(G), b.build(G)
    assert contains(A, A)
    if contains(A, B) and contains(B, A):
        assert seg_equal(A, B)
    S = segment_sum(A, B)
    assert seg_equal(S, segment_sum(B, A))
