import random
from fractions import Fraction as F

import pytest

from purediff import segment as seg
from purediff.oracle import (
    AGREE,
    DISAGREE,
    INCONCLUSIVE,
    GridWindow,
    RawSegment,
    char_poly,
    delta_bruteforce,
    different_monogenic,
    monogenic_generator,
    norm_val,
    random_group,
    random_raw_segment,
    segment_bruteforce,
)
from purediff.ordgrp import INF, ValueGroup
from purediff.valfield import LaurentSeriesField, Poly, RationalPadic, build_extension

Q2, Q3 = RationalPadic(2), RationalPadic(3)
Z, Z2, ZH = ValueGroup.of(1), ValueGroup.of(1, 1), ValueGroup.of((1, 2))


def P(K, *cs):
    return Poly([K.parse(c) if isinstance(c, str) else K.from_int(c) for c in cs], K)


def at(*c):
    return RawSegment("closed_mod", tuple(F(x) for x in c), len(c))


# -- the different ---------------------------------------------------------------


@pytest.mark.parametrize(
    "K,g,want",
    [
        (Q2, (1, 1, 1), 0),
        (Q2, (-2, 0, 1), F(3, 2)),
        (Q2, (-2, 0, 0, 1), F(2, 3)),
        (Q3, (-2, 0, 1), 0),
        (Q3, (-3, 0, 1), F(1, 2)),
    ],
)
def test_different_examples(K, g, want):
    assert different_monogenic(build_extension(K, P(K, *g))) == want


def test_different_inseparable_is_infinite():
    K = LaurentSeriesField(2, with_u=True)
    assert different_monogenic(build_extension(K, P(K, "-(u+t)", 0, 1))) is INF


def test_different_artin_schreier_ramified():
    K = LaurentSeriesField(3)
    L = build_extension(K, P(K, "-1/t", -1, 0, 1))
    assert different_monogenic(L) == F(4, 3)


def test_norm_and_char_poly():
    L = build_extension(Q2, P(Q2, -2, 0, 1))
    eta = P(Q2, 0, 1)
    assert char_poly(eta, L) == L.g
    assert norm_val(eta, L) == F(1, 2)  # v(N(sqrt 2)) / 2
    assert monogenic_generator(L) == eta


def test_different_agrees_with_eval_val():
    rng = random.Random(7)
    checked = 0
    for _ in range(300):
        n = rng.randint(2, 4)
        cs = [F(rng.randint(-20, 20)) for _ in range(n)] + [F(1)]
        try:
            L = build_extension(Q3, Poly(cs, Q3))
        except Exception:
            continue
        theta = monogenic_generator(L)
        if theta != P(Q3, 0, 1):
            continue
        assert different_monogenic(L) == L.eval_val(L.g.derivative())
        checked += 1
    assert checked > 20


def test_delta_bruteforce_examples():
    L = build_extension(Q2, P(Q2, -2, 0, 1))
    assert delta_bruteforce(P(Q2, -4, 0, 1), L, [P(Q2, 2), P(Q2, -2)]) == F(1, 2)
    assert delta_bruteforce(L.g, L, [L.x(), -L.x()]) is INF
    f = P(Q2, 6, -5, 1)  # roots 2 and 3
    assert delta_bruteforce(f, L, [P(Q2, 2), P(Q2, 3)]) == F(1, 2)


# -- segment brute force ------------------------------------------------------------


def test_bruteforce_examples():
    assert segment_bruteforce("annihilator_segment", [at(-2), at(3)], GridWindow(Z, 10)).status == AGREE
    mod = RawSegment("closed_mod", (F(0), F(0)), 1)
    assert segment_bruteforce("invariance_subgroup", [mod], GridWindow(Z2, 4)).status == AGREE
    oe = RawSegment("open_ext", (F(0),))
    assert segment_bruteforce("has_min", [oe], GridWindow(ZH, 4, 6)).status == AGREE


def test_has_min_window_coincidence_is_not_a_disagreement():
    # -25/8 is the least member on both refined grids, yet -22/7 is approached from above
    raw = RawSegment("closed_ext", (F(-22, 7),))
    assert segment_bruteforce("has_min", [raw], GridWindow(ZH, 3, 1)).status == AGREE
    v = segment_bruteforce("has_min", [raw], GridWindow(ZH, 3, 1), impl=lambda S: ZH(F(-25, 8)))
    assert v.status == DISAGREE


def test_empty_window_is_inconclusive():
    assert segment_bruteforce("member", [at(0)], GridWindow(Z, 0)).status == INCONCLUSIVE


def test_window_size():
    assert GridWindow(Z, 10).size() == 21
    assert GridWindow(ZH, 2, 3).size() == 33


# -- planted mutations: each wrong implementation must be caught ------------------------


def _flip_member(S, x):
    return not seg.member(S, x)


def _off_by_one_ann(a, b):
    A = seg.annihilator_segment(a, b)
    return seg.translate(A, a.group.unit(a.group.rank - 1)) if A.kind == "cut" else A


def _always_equal(S, T):
    return True


def _wrong_min(S):
    m = seg.has_min(S)
    if m is None or m is INF:
        return m
    return m + S.group.unit(S.group.rank - 1)


def _whole_invariance(S):
    return S.group.whole


def _trivial_invariance(S):
    return S.group.trivial


MUTANTS = [
    ("member", _flip_member, [[at(0)]], Z),
    ("annihilator_segment", _off_by_one_ann, [[at(-2), at(3)], [at(0), at(1)]], Z),
    ("seg_equal", _always_equal, [[at(0), at(1)]], Z),
    ("has_min", _wrong_min, [[at(3)]], Z),
    ("invariance_subgroup", _whole_invariance, [[at(0, 0)]], Z2),
]


@pytest.mark.parametrize("op,impl,cases,G", MUTANTS, ids=[m[1].__name__ for m in MUTANTS])
def test_planted_mutation_is_caught(op, impl, cases, G):
    for operands in cases:
        v = segment_bruteforce(op, operands, GridWindow(G, 8), impl=impl)
        assert v.status == DISAGREE, v


def test_boundary_outside_window_is_never_agreement():
    # the mutant and the truth differ only at 5 versus 6, beyond a window of radius 4
    v = segment_bruteforce("annihilator_segment", [at(-2), at(3)], GridWindow(Z, 4), impl=_off_by_one_ann)
    assert v.status == INCONCLUSIVE
    # an over-small invariance subgroup has no window witness either way
    mod = RawSegment("closed_mod", (F(0), F(0)), 1)
    v = segment_bruteforce("invariance_subgroup", [mod], GridWindow(Z2, 4), impl=_trivial_invariance)
    assert v.status != AGREE


@pytest.mark.parametrize("impl", [_flip_member, _off_by_one_ann, _wrong_min], ids=lambda f: f.__name__)
def test_mutants_only_agree_when_window_cannot_tell(impl):
    op = {_flip_member: "member", _off_by_one_ann: "annihilator_segment", _wrong_min: "has_min"}[impl]
    primary = {_flip_member: seg.member, _off_by_one_ann: seg.annihilator_segment, _wrong_min: seg.has_min}[impl]
    rng = random.Random(11)
    caught = 0
    for _ in range(200):
        G = random_group(rng, rng.randint(1, 2))
        k = 2 if op == "annihilator_segment" else 1
        operands = [random_raw_segment(G, rng, span=2) for _ in range(k)]
        W = GridWindow(G, 2, 1)
        v = segment_bruteforce(op, operands, W, impl=impl)
        if v.status == DISAGREE:
            caught += 1
        elif v.status == AGREE and op == "annihilator_segment":
            built = [r.build(G) for r in operands]
            mutant, truth = impl(*built), primary(*built)
            # differences finer than the window grid are invisible to any finite window
            assert all(seg.member(mutant, x) == seg.member(truth, x) for x in W.points())
        elif v.status == AGREE:
            assert impl == _wrong_min and primary(operands[0].build(G)) in (None, INF)
    assert caught > 0
