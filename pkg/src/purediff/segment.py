"""Final segments of Gamma_infinity in canonical form.

Every non-degenerate segment handled here is a *cut*: it is decided by the
first ``depth`` coordinates of an element, compared against a point of
``Q^depth``.  ``closed=True`` means ``x[:depth] >= point`` and ``closed=False``
means ``x[:depth] > point``.  Canonical cuts satisfy

* ``point`` lies in the product of the leading components, except possibly
  its last coordinate, which then sits in a dense component (an ``open_ext``
  cut, always stored with ``closed=False``);
* an open cut at a member point only occurs over a dense last component
  (over a discrete one it is rewritten as a closed cut one step up).

With these rules two canonical segments are equal as sets iff they are equal
as dataclasses, so ``seg_equal`` is structural.  The degenerate segments are
``whole`` (all of Gamma_infinity), ``top`` (just infinity) and ``empty``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Sequence, Union

from .errors import SpecValidationError, UnsupportedForm
from .ordgrp import (
    INF,
    ConvexSubgroup,
    ExtValue,
    Value,
    ValueGroup,
    format_coords,
)

WHOLE, TOP, EMPTY, CUT = "whole", "top", "empty", "cut"


@dataclass(frozen=True)
class FinalSegment:
    group: ValueGroup
    kind: str
    depth: int = 0
    point: tuple = ()
    closed: bool = True

    # -- classification -------------------------------------------------
    @property
    def anchor_is_member(self) -> bool:
        return self.kind == CUT and self.group.prefix_contains(self.point)

    @property
    def form(self) -> str:
        if self.kind != CUT:
            return self.kind
        r = self.group.rank
        if not self.anchor_is_member:
            return "open_ext"
        if self.depth == r:
            return "closed_at" if self.closed else "open_at"
        return "closed_mod" if self.closed else "open_mod"

    @property
    def anchor(self) -> Optional[ExtValue]:
        """The cut point padded with zeros to full rank."""
        if self.kind != CUT:
            return None
        coords = self.point + (Fraction(0),) * (self.group.rank - self.depth)
        if self.anchor_is_member:
            return Value(coords, self.group)
        return ExtValue(coords)

    @property
    def delta(self) -> Optional[ConvexSubgroup]:
        if self.kind != CUT:
            return None
        return ConvexSubgroup(self.group, self.depth + 1)

    def __str__(self):
        if self.kind != CUT:
            return self.kind.capitalize()
        a = format_coords(self.anchor.coords)
        form = self.form
        if form in ("closed_mod", "open_mod"):
            return f"{'ClosedMod' if self.closed else 'OpenMod'}({a}, D{self.depth + 1})"
        return {"closed_at": "ClosedAt", "open_at": "OpenAt", "open_ext": "OpenExt"}[form] + f"({a})"


def _canon(G: ValueGroup, depth: int, point: Sequence, closed: bool) -> FinalSegment:
    point = tuple(Fraction(x) for x in point[:depth])
    if depth == 0:
        return FinalSegment(G, WHOLE if closed else TOP)
    for k in range(depth):
        comp = G.components[k]
        if not comp.contains(point[k]):
            if comp.dense:
                return FinalSegment(G, CUT, k + 1, point[: k + 1], False)
            # x_k never equals point[k]; x_k > point[k] iff x_k >= ceil
            return FinalSegment(G, CUT, k + 1, point[:k] + (comp.ceil(point[k]),), True)
    last = G.components[depth - 1]
    if not closed and not last.dense:
        return FinalSegment(G, CUT, depth, point[:-1] + (point[-1] + last.gen,), True)
    return FinalSegment(G, CUT, depth, point, closed)


# -- constructors -------------------------------------------------------

def whole(G: ValueGroup) -> FinalSegment:
    return FinalSegment(G, WHOLE)


def top(G: ValueGroup) -> FinalSegment:
    return FinalSegment(G, TOP)


def empty(G: ValueGroup) -> FinalSegment:
    return FinalSegment(G, EMPTY)


def _coords(s, G: ValueGroup) -> tuple:
    coords = s.coords if isinstance(s, ExtValue) else tuple(Fraction(x) for x in s)
    if len(coords) != G.rank:
        raise ValueError(f"rank mismatch: {len(coords)} vs {G.rank}")
    return coords


def closed_at(s: Value, G: Optional[ValueGroup] = None) -> FinalSegment:
    G = G or s.group
    return closed_mod(s, G.trivial)


def open_at(s: Value, G: Optional[ValueGroup] = None) -> FinalSegment:
    G = G or s.group
    return open_mod(s, G.trivial)


def closed_mod(s: Value, D: ConvexSubgroup) -> FinalSegment:
    """``{x : x + D >= s + D}`` together with infinity."""
    G = D.group
    coords = _coords(s, G)
    if not G.contains(coords):
        raise SpecValidationError(f"anchor {format_coords(coords)} is not in the group")
    return _canon(G, D.prefix_len, coords, True)


def open_mod(s: Value, D: ConvexSubgroup) -> FinalSegment:
    """``{x : x + D > s + D}`` together with infinity."""
    G = D.group
    coords = _coords(s, G)
    if not G.contains(coords):
        raise SpecValidationError(f"anchor {format_coords(coords)} is not in the group")
    return _canon(G, D.prefix_len, coords, False)


def open_ext(rho: ExtValue, G: ValueGroup) -> FinalSegment:
    """``{x in Gamma : x > rho}`` for an arbitrary point rho of Q^r."""
    return _canon(G, G.rank, _coords(rho, G), False)


def closed_ext(rho: ExtValue, G: ValueGroup) -> FinalSegment:
    """``{x in Gamma : x >= rho}`` for an arbitrary point rho of Q^r."""
    return _canon(G, G.rank, _coords(rho, G), True)


# -- queries ------------------------------------------------------------

def member(S: FinalSegment, x) -> bool:
    if x is INF:
        return S.kind != EMPTY
    if not S.group.contains(x.coords):
        raise SpecValidationError(f"{x} is not in {S.group.describe()}")
    if S.kind == WHOLE:
        return True
    if S.kind in (TOP, EMPTY):
        return False
    pre = x.coords[: S.depth]
    return pre >= S.point if S.closed else pre > S.point


def translate(S: FinalSegment, t: ExtValue) -> FinalSegment:
    if S.kind != CUT:
        return S
    shift = _coords(t, S.group)[: S.depth]
    return _canon(S.group, S.depth, tuple(a + b for a, b in zip(S.point, shift)), S.closed)


def seg_equal(S: FinalSegment, T: FinalSegment) -> bool:
    if S.group != T.group:
        raise UnsupportedForm("segments live in different groups")
    return S == T


def has_min(S: FinalSegment):
    """Smallest element of S, or None.  ``top`` has minimum infinity."""
    if S.kind == TOP:
        return INF
    if S.kind == CUT and S.depth == S.group.rank and S.closed and S.anchor_is_member:
        return Value(S.point, S.group)
    return None


def invariance_subgroup(S: FinalSegment) -> ConvexSubgroup:
    if S.kind != CUT:
        return S.group.whole
    return ConvexSubgroup(S.group, S.depth + 1)


def _residual_cut(a: FinalSegment, b: FinalSegment) -> FinalSegment:
    G = a.group
    m1, m2 = a.depth, b.depth
    if m1 < m2:
        diff = tuple(x - y for x, y in zip(b.point[:m1], a.point))
        # prefixes reachable in a must sit strictly above b's prefix minus the shift
        if a.closed:
            return _canon(G, m1, diff, False)
        return _canon(G, m1, diff, True)
    if m1 > m2:
        a_point, a_closed = a.point[:m2], True
    else:
        a_point, a_closed = a.point, a.closed
    diff = tuple(x - y for x, y in zip(b.point, a_point))
    if a_closed:
        return _canon(G, m2, diff, b.closed)
    return _canon(G, m2, diff, True)


def annihilator_segment(alpha: FinalSegment, beta: FinalSegment) -> FinalSegment:
    """The final segment ``{b in Gamma : b + alpha is contained in beta}``.

    Returns ``empty`` when no finite b qualifies (the annihilator is (0)).
    """
    if alpha.group != beta.group:
        raise UnsupportedForm("segments live in different groups")
    G = alpha.group
    if alpha.kind == EMPTY:
        return whole(G)
    if beta.kind == EMPTY:
        return empty(G)
    if alpha.kind == TOP or beta.kind == WHOLE:
        return whole(G)
    if beta.kind == TOP or alpha.kind == WHOLE:
        return empty(G)
    res = _residual_cut(alpha, beta)
    return empty(G) if res.kind == TOP else res


def contains(S: FinalSegment, T: FinalSegment) -> bool:
    """Whether T is a subset of S."""
    return member(annihilator_segment(T, S), S.group.zero())


def segment_sum(S: FinalSegment, T: FinalSegment) -> FinalSegment:
    """The pointwise sum ``{s + t}``; it indexes the product of the modules I_S and I_T."""
    if S.group != T.group:
        raise UnsupportedForm("segments live in different groups")
    G = S.group
    if EMPTY in (S.kind, T.kind):
        return empty(G)
    if TOP in (S.kind, T.kind):
        return top(G)
    if WHOLE in (S.kind, T.kind):
        return whole(G)
    m = min(S.depth, T.depth)
    pts = []
    closed = True
    for seg in (S, T):
        if seg.depth > m:
            pts.append(seg.point[:m])
        else:
            pts.append(seg.point)
            closed = closed and seg.closed and seg.anchor_is_member
    point = tuple(x + y for x, y in zip(*pts))
    return _canon(G, m, point, closed)


# -- value families -----------------------------------------------------

@dataclass(frozen=True)
class FiniteMax:
    """A finite set of values; its maximum is attained."""

    values: tuple

    def __post_init__(self):
        if not self.values:
            raise SpecValidationError("finite_max family needs at least one value")
        object.__setattr__(self, "values", tuple(sorted(self.values)))

    @property
    def max(self):
        return self.values[-1]

    def validate(self, group: ValueGroup) -> None:
        for v in self.values:
            if v is INF or not group.contains(v.coords):
                raise SpecValidationError(f"family value {v} is not in the group")


@dataclass(frozen=True)
class IncToSup:
    """Values strictly increasing towards an unattained supremum ``sup``."""

    sup: ExtValue
    witness: Optional[Callable[[int], Value]] = None

    def validate(self, group: ValueGroup) -> None:
        r = group.rank
        if self.sup.rank != r:
            raise SpecValidationError("supremum rank differs from group rank")
        # approachable from below in Q^r only through a dense last component
        if not group.components[-1].dense or not group.prefix_contains(self.sup.coords[:-1]):
            raise SpecValidationError(
                f"no strictly increasing family in {group.describe()} has supremum {self.sup}"
            )
        if self.witness is not None:
            prev = None
            for i in range(8):
                w = self.witness(i)
                if not w < self.sup or (prev is not None and not prev < w):
                    raise SpecValidationError("witness sequence must increase strictly below sup")
                prev = w


@dataclass(frozen=True)
class Cofinal:
    """Values cofinal in the whole group."""

    def validate(self, group: ValueGroup) -> None:
        return None


ValueFamily = Union[FiniteMax, IncToSup, Cofinal]


def has_max(F: ValueFamily) -> bool:
    return isinstance(F, FiniteMax)


def segment_of_family(F: ValueFamily, sign: int, scale: int, offset, G: ValueGroup) -> FinalSegment:
    """Smallest final segment containing ``{offset + sign*scale*x : x in F}``."""
    if sign not in (1, -1) or scale < 1:
        raise ValueError("sign must be +-1 and scale a positive integer")
    if offset is INF:
        return top(G)
    off = _coords(offset, G)
    if isinstance(F, Cofinal):
        if sign == -1:
            return whole(G)
        raise UnsupportedForm("an upward-cofinal family has no lower bound to anchor on")
    if isinstance(F, FiniteMax):
        x = F.max if sign == -1 else F.values[0]
        return closed_ext(ExtValue(tuple(o + sign * scale * c for o, c in zip(off, x.coords))), G)
    if sign == -1:
        return open_ext(ExtValue(tuple(o - scale * c for o, c in zip(off, F.sup.coords))), G)
    if F.witness is None:
        raise UnsupportedForm("lower end of an increasing family needs a witness")
    first = F.witness(0)
    return closed_ext(ExtValue(tuple(o + scale * c for o, c in zip(off, first.coords))), G)


# -- module-level conclusions ------------------------------------------

@dataclass(frozen=True)
class ModuleReport:
    alpha: FinalSegment
    beta: FinalSegment
    is_zero: bool
    ann: FinalSegment
    fin_gen: bool
    fin_pres: bool
    single_generator: bool


def module_report(alpha: FinalSegment, beta: FinalSegment) -> ModuleReport:
    """Structure of the quotient I_alpha / I_beta."""
    if not contains(alpha, beta):
        raise SpecValidationError(f"beta = {beta} is not contained in alpha = {alpha}")
    is_zero = seg_equal(alpha, beta)
    fin_gen = is_zero or has_min(alpha) is not None
    fin_pres = fin_gen and (is_zero or has_min(beta) is not None)
    return ModuleReport(
        alpha=alpha,
        beta=beta,
        is_zero=is_zero,
        ann=annihilator_segment(alpha, beta),
        fin_gen=fin_gen,
        fin_pres=fin_pres,
        single_generator=fin_gen,
    )
