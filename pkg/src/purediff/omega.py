"""Differential modules of pure extensions: the segments alpha and beta, the
verdict Omega = (0), annihilators, finiteness flags and the independent
criteria (B-sets, separability, defect, the isolated-subgroup test)."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Sequence, Tuple, Union

from . import segment as seg
from .errors import SpecValidationError, UnsupportedForm
from .ordgrp import (
    INF,
    ConvexSubgroup,
    ExtValue,
    Value,
    ValueGroup,
    greatest_isolated_below,
    is_subgroup,
    quotient_min_positive,
)
from .segment import Cofinal, FiniteMax, IncToSup, ModuleReport, ValueFamily
from .valfield.extension import RAMIFIED, TRIVIAL, ExtensionField, Model, build_model, separable
from .valfield.fields import vp_int
from .valfield.poly import Poly

PURE_DEFECT = "pure_defect"
BRANCHED_PURE = "branched_pure"
PURELY_INERTIAL = "purely_inertial"
PURELY_RAMIFIED = "purely_ramified"


def _is_prime_power(n: int, p: int) -> bool:
    if p < 2 or n < 1:
        return False
    while n % p == 0:
        n //= p
    return n == 1


# -- specs -----------------------------------------------------------------


@dataclass(frozen=True)
class PureDefect:
    n: int
    p: int
    group: ValueGroup
    v_eta_K: ValueFamily
    v_gprime_eta: object
    B: Optional[frozenset] = None
    case = PURE_DEFECT


@dataclass(frozen=True)
class BranchedPure:
    n: int
    p: int
    group: ValueGroup
    d: int
    beta_d: Value
    v_eta_K: ValueFamily
    v_gprime_eta: object
    B: Optional[frozenset] = None
    case = BRANCHED_PURE


@dataclass(frozen=True)
class PurelyInertial:
    """``v_eta`` defaults to 0; ``residue_minpoly`` is the minimal polynomial of
    the residue of eta / c with v(c) = v(eta)."""

    n: int
    p: int
    group: ValueGroup
    v_gprime_eta: object
    residue_minpoly: Optional[Poly] = None
    B: Optional[frozenset] = None
    v_eta: Optional[Value] = None
    case = PURELY_INERTIAL

    @property
    def eta_value(self) -> Value:
        return self.v_eta if self.v_eta is not None else self.group.zero()


@dataclass(frozen=True)
class PurelyRamified:
    """``group`` is vL; ``coeff_values[l]`` is v(a_l) for l = 0..n-1, with all
    values expressed in vL coordinates."""

    n: int
    p: int
    group: ValueGroup
    vK: ValueGroup
    gamma: Value
    coeff_values: Tuple
    vp: object
    case = PURELY_RAMIFIED


PureExtensionSpec = Union[PureDefect, BranchedPure, PurelyInertial, PurelyRamified]


def _check_value(x, group: ValueGroup, what: str, allow_inf: bool = True):
    if x is INF:
        if not allow_inf:
            raise SpecValidationError(f"{what} must be finite")
        return
    if not isinstance(x, ExtValue) or not group.contains(x.coords):
        raise SpecValidationError(f"{what} = {x} is not in {group.describe()}")


def _check_p(p: int, allow_zero: bool):
    from .ordgrp import _is_prime

    if p == 0 and allow_zero:
        return
    if not _is_prime(p):
        raise SpecValidationError(f"p must be a prime{' or 0' if allow_zero else ''}, got {p}")


def _check_family(F: ValueFamily, group: ValueGroup):
    if isinstance(F, FiniteMax):
        raise SpecValidationError("v(eta-K) must not have a maximum for a pure defect or branched extension")
    F.validate(group)


def _check_B(B, p: int):
    if B is None:
        return
    if not B or any(not isinstance(b, int) or b < 1 for b in B):
        raise SpecValidationError("B must be a nonempty set of positive integers")


def validate(spec: PureExtensionSpec) -> None:
    """Raise SpecValidationError naming the first violated structural clause."""
    if spec.n < 1:
        raise SpecValidationError("n must be positive")
    G = spec.group
    if isinstance(spec, PureDefect):
        _check_p(spec.p, allow_zero=False)
        if spec.n < 2 or not _is_prime_power(spec.n, spec.p):
            raise SpecValidationError(f"pure defect degree n={spec.n} must be a power of p={spec.p} above 1")
        _check_family(spec.v_eta_K, G)
        _check_value(spec.v_gprime_eta, G, "v(g'(eta))")
        _check_B(spec.B, spec.p)
        if spec.B is not None and any(not _is_prime_power(b, spec.p) for b in spec.B):
            raise SpecValidationError(f"B = {sorted(spec.B)} is not contained in {{1, p, p^2, ...}}")
    elif isinstance(spec, BranchedPure):
        _check_p(spec.p, allow_zero=False)
        if not (1 <= spec.d <= spec.n) or not _is_prime_power(spec.d, spec.p):
            raise SpecValidationError(f"defect d={spec.d} must be a power of p with 1 <= d <= n")
        _check_family(spec.v_eta_K, G)
        _check_value(spec.v_gprime_eta, G, "v(g'(eta))")
        _check_value(spec.beta_d, G, "beta_d", allow_inf=False)
        if spec.d == 1 and spec.v_gprime_eta != spec.beta_d:
            raise SpecValidationError("for d = 1 the fixed value of the first derivative is v(g'(eta))")
        _check_B(spec.B, spec.p)
        if spec.B is not None:
            if spec.d not in spec.B:
                raise SpecValidationError(f"d={spec.d} must belong to B")
            if 1 not in spec.B and any(b % spec.p for b in spec.B):
                raise SpecValidationError("when 1 is not in B every element of B must be a multiple of p")
    elif isinstance(spec, PurelyInertial):
        _check_p(spec.p, allow_zero=True)
        _check_value(spec.v_gprime_eta, G, "v(g'(eta))")
        _check_value(spec.eta_value, G, "v(eta)", allow_inf=False)
        if spec.residue_minpoly is None and spec.B is None:
            raise SpecValidationError("a purely inertial spec needs a residue minimal polynomial or B")
        q = spec.residue_minpoly
        if q is not None:
            from .valfield.extension import is_irreducible

            if q.deg != spec.n:
                raise SpecValidationError(f"residue minimal polynomial has degree {q.deg}, expected n={spec.n}")
            if q.ring.p != spec.p:
                raise SpecValidationError("residue polynomial characteristic differs from p")
            if not is_irreducible(q):
                raise SpecValidationError(f"residue polynomial {q} is reducible")
            if spec.B is not None and frozenset(spec.B) != _b_from_minpoly(q):
                raise SpecValidationError("explicit B disagrees with the residue minimal polynomial")
        _check_B(spec.B, spec.p)
        if spec.B is not None and max(spec.B) != spec.n:
            raise SpecValidationError("the largest element of B must be n")
    elif isinstance(spec, PurelyRamified):
        _check_p(spec.p, allow_zero=True)
        vK, g = spec.vK, spec.gamma
        if not is_subgroup(vK, G):
            raise SpecValidationError("vK must be a subgroup of vL")
        _check_value(g, G, "gamma", allow_inf=False)
        if not g > G.zero():
            raise SpecValidationError("gamma = v(eta) must be positive")
        n = spec.n
        if n < 2:
            raise SpecValidationError("a purely ramified extension has degree at least 2")
        for s in range(1, n):
            if vK.contains((s * g).coords):
                raise SpecValidationError(f"{s}*gamma lies in vK, so [L:K] != (vL:vK)")
        if not vK.contains((n * g).coords):
            raise SpecValidationError("n*gamma must lie in vK")
        if len(spec.coeff_values) != n:
            raise SpecValidationError(f"expected {n} coefficient values v(a_0..a_{n-1})")
        for l, va in enumerate(spec.coeff_values):
            if va is not INF and not vK.contains(va.coords):
                raise SpecValidationError(f"v(a_{l}) = {va} is not in vK")
        if spec.coeff_values[0] != n * g:
            raise SpecValidationError("v(a_0) must equal n*gamma")
        if spec.p > 0:
            if spec.vp is not INF and (not vK.contains(spec.vp.coords) or not spec.vp > G.zero()):
                raise SpecValidationError("vp must be a positive element of vK or inf")
        for l in range(1, n):
            t = _term(spec, l)
            if t is not INF and not t > G.zero():
                raise SpecValidationError(f"v({l}) + v(a_{l}) - ({n}-{l})*gamma = {t} is not positive")
    else:
        raise SpecValidationError(f"unknown spec type {type(spec).__name__}")


def classify(spec) -> str:
    """Case tag of a synthetic spec (validated) or of a constructed extension."""
    if isinstance(spec, ExtensionField):
        if spec.kind == RAMIFIED:
            return PURELY_RAMIFIED
        if spec.kind == TRIVIAL:
            return "trivial"
        return PURELY_INERTIAL
    validate(spec)
    return spec.case


# -- value helpers -------------------------------------------------------


def v_int(l: int, spec: PurelyRamified):
    """Value of the integer l in K, in vL coordinates."""
    G = spec.group
    if spec.p == 0 or l % spec.p:
        return G.zero()
    if spec.vp is INF:
        return INF
    return vp_int(l, spec.p) * spec.vp


def _coeff_value(spec: PurelyRamified, l: int):
    return spec.group.zero() if l == spec.n else spec.coeff_values[l]


def _term(spec: PurelyRamified, l: int):
    """v(l) + v(a_l) - (n-l)*gamma."""
    a, b = v_int(l, spec), _coeff_value(spec, l)
    if a is INF or b is INF:
        return INF
    return a + b - (spec.n - l) * spec.gamma


def ramified_delta(spec: PurelyRamified) -> ConvexSubgroup:
    return greatest_isolated_below(spec.group, spec.gamma)


def ramified_has_quotient_min(spec: PurelyRamified) -> bool:
    return quotient_min_positive(spec.group, ramified_delta(spec)) is not None


def ramified_min_term(spec: PurelyRamified):
    terms = [_term(spec, l) for l in range(1, spec.n + 1)]
    finite = [t for t in terms if t is not INF]
    return min(finite) if finite else INF


def ramified_gprime_value(spec: PurelyRamified):
    """v(g'(eta)) = min over l of v(l) + v(a_l) + (l-1)*gamma."""
    best = INF
    for l in range(1, spec.n + 1):
        a, b = v_int(l, spec), _coeff_value(spec, l)
        if a is INF or b is INF:
            continue
        t = a + b + (l - 1) * spec.gamma
        best = t if best is INF or t < best else best
    return best


# -- alpha, beta, B --------------------------------------------------------


def alpha_of(spec: PureExtensionSpec) -> seg.FinalSegment:
    G = spec.group
    if isinstance(spec, (PureDefect, BranchedPure)):
        return seg.segment_of_family(spec.v_eta_K, -1, 1, G.zero(), G)
    if isinstance(spec, PurelyInertial):
        return seg.closed_at(-spec.eta_value)
    D = ramified_delta(spec)
    if ramified_has_quotient_min(spec):
        return seg.closed_mod(G.zero(), D)
    return seg.open_mod(-spec.gamma, D)


def beta_of(spec: PureExtensionSpec) -> Optional[seg.FinalSegment]:
    """None in the ramified case with a minimal positive quotient element."""
    G = spec.group
    vg = spec.v_gprime_eta if not isinstance(spec, PurelyRamified) else None
    if isinstance(spec, PureDefect):
        return seg.segment_of_family(spec.v_eta_K, -1, spec.n, vg, G)
    if isinstance(spec, BranchedPure):
        offset = INF if vg is INF else vg - spec.beta_d
        return seg.segment_of_family(spec.v_eta_K, -1, spec.d, offset, G)
    if isinstance(spec, PurelyInertial):
        if vg is INF:
            return seg.top(G)
        return seg.closed_at(vg - spec.n * spec.eta_value)
    if ramified_has_quotient_min(spec):
        return None
    m = ramified_min_term(spec)
    if m is INF:
        return seg.top(G)
    return seg.translate(alpha_of(spec), m)


def _b_from_minpoly(q: Poly) -> frozenset:
    return frozenset(k for k in range(1, q.deg + 1) if not q.coeff(k).is_zero())


def b_set(spec: PureExtensionSpec) -> Tuple[Optional[frozenset], str]:
    """The exponent set B together with its provenance: computed, input or none."""
    if isinstance(spec, PurelyRamified):
        return frozenset({spec.n}), "computed"
    if isinstance(spec, PurelyInertial) and spec.residue_minpoly is not None:
        return _b_from_minpoly(spec.residue_minpoly), "computed"
    B = getattr(spec, "B", None)
    if B is None:
        return None, "none"
    return frozenset(B), "input"


def p_not_divides(B, p: int) -> bool:
    """p does not divide B: some exponent in B is prime to p."""
    return p == 0 or any(b % p for b in B)


# -- reports ---------------------------------------------------------------


@dataclass(frozen=True)
class OracleOnly:
    """An annihilator known only as a value from the classical different."""

    value: object

    def __str__(self):
        return f"OracleOnly({self.value})"


@dataclass(frozen=True)
class CrossCheck:
    """A named criterion; ``predicts_zero`` is None when it does not apply."""

    name: str
    predicts_zero: Optional[bool]
    detail: str = ""

    def agrees(self, is_zero: bool) -> bool:
        return self.predicts_zero is None or self.predicts_zero == is_zero


@dataclass(frozen=True)
class OmegaReport:
    case: str
    alpha: Optional[seg.FinalSegment]
    beta: Optional[seg.FinalSegment]
    module: Optional[ModuleReport]
    is_zero: bool
    ann: object  # FinalSegment, OracleOnly, or None when unknown
    B: Optional[frozenset]
    B_provenance: str
    cross_checks: Tuple[CrossCheck, ...]
    inconsistent: bool
    notes: Tuple[str, ...] = ()
    fin_gen: Optional[bool] = None
    fin_pres: Optional[bool] = None

    def check(self, name: str) -> Optional[CrossCheck]:
        return next((c for c in self.cross_checks if c.name == name), None)


def _cross_checks(spec, is_zero: bool, B, extra=()) -> Tuple[CrossCheck, ...]:
    checks = []
    p = spec.p
    if isinstance(spec, (PureDefect, BranchedPure)):
        if isinstance(spec, BranchedPure):
            checks.append(CrossCheck("defect_one", spec.d == 1, f"d = {spec.d}"))
        if B is not None:
            checks.append(CrossCheck("one_in_B", 1 in B, f"B = {sorted(B)}"))
            checks.append(CrossCheck("p_not_divides_B", p_not_divides(B, p), f"p = {p}"))
    elif isinstance(spec, PurelyInertial):
        if spec.residue_minpoly is not None:
            checks.append(CrossCheck("residue_separable", separable(spec.residue_minpoly), str(spec.residue_minpoly)))
        if B is not None:
            checks.append(CrossCheck("p_not_divides_B", p_not_divides(B, p), f"B = {sorted(B)}, p = {p}"))
    elif isinstance(spec, PurelyRamified):
        if ramified_has_quotient_min(spec):
            checks.append(CrossCheck("quotient_minimum", False, "vL/Delta has a least positive element"))
        else:
            D = ramified_delta(spec)
            hits = [l for l in range(1, spec.n + 1) if _term(spec, l) is not INF and D.contains(_term(spec, l))]
            checks.append(CrossCheck("delta_criterion", bool(hits), f"terms in Delta at l = {hits}"))
            checks.append(
                CrossCheck("corollary_p_not_divides_n", True if p_not_divides({spec.n}, p) else None, f"n = {spec.n}")
            )
            vp_in = spec.p > 0 and spec.vp is not INF and D.contains(spec.vp)
            checks.append(CrossCheck("corollary_vp_in_delta", True if vp_in else None, f"vp = {spec.vp}"))
    checks.extend(extra)
    return tuple(checks)


def _core(spec: PureExtensionSpec):
    """The spec-determined part of a report; memoized when the spec is hashable."""
    try:
        hash(spec)
    except TypeError:
        return _core_uncached(spec)
    return _core_cached(spec)


def _core_uncached(spec: PureExtensionSpec):
    validate(spec)
    B, prov = b_set(spec)
    alpha = alpha_of(spec)
    beta = beta_of(spec)
    module = None if beta is None else seg.module_report(alpha, beta)
    is_zero = False if module is None else module.is_zero
    return B, prov, alpha, beta, module, is_zero, _cross_checks(spec, is_zero, B)


_core_cached = lru_cache(maxsize=4096)(_core_uncached)


def omega_report(spec: PureExtensionSpec, extra_checks: Sequence[CrossCheck] = (), notes: Sequence[str] = (),
                 oracle_ann=None) -> OmegaReport:
    """Full report for a validated synthetic spec.

    ``oracle_ann`` supplies the classical different for concrete ramified
    inputs whose module has no segment description.
    """
    B, prov, alpha, beta, module, is_zero, checks = _core(spec)
    notes = list(notes)
    if module is None:
        ann = OracleOnly(oracle_ann) if oracle_ann is not None else None
        fin_gen = fin_pres = None
        notes.append("vL/Delta has a least positive element: Omega is nonzero and has no alpha/beta description")
        if ann is None:
            notes.append("annihilator unknown: no ring generator data for a synthetic spec")
    else:
        ann = module.ann
        fin_gen, fin_pres = module.fin_gen, module.fin_pres
    checks = checks + tuple(extra_checks)
    bad = [c.name for c in checks if not c.agrees(is_zero)]
    if bad:
        notes.append("criteria disagree with the segment comparison: " + ", ".join(bad))
    return OmegaReport(
        case=spec.case,
        alpha=alpha,
        beta=beta,
        module=module,
        is_zero=is_zero,
        ann=ann,
        B=B,
        B_provenance=prov,
        cross_checks=checks,
        inconsistent=bool(bad),
        notes=tuple(notes),
        fin_gen=fin_gen,
        fin_pres=fin_pres,
    )


# -- concrete extensions --------------------------------------------------


@lru_cache(maxsize=4096)
def _as_value(q, G: ValueGroup):
    return INF if q is INF else G(q)


def spec_from_extension(L: ExtensionField) -> PureExtensionSpec:
    """Synthetic value data read off a constructed extension."""
    K = L.base
    p = K.residue_char
    vL = L.value_group
    if L.kind == RAMIFIED:
        n = L.n
        k = -(L.gamma.__floor__())
        gamma = L.gamma + k
        vals = []
        for l in range(n):
            c = L.g.coeff(l)
            v = INF if K.is_exact_zero(c) else K.val(c)
            vals.append(INF if v is INF else vL(v + k * (n - l)))
        vp = INF if K.vp is INF else vL(K.vp)
        return PurelyRamified(n, p, vL, ValueGroup.of(1), vL(gamma), tuple(vals), vp)
    vg = L.eval_val(L.g.derivative())
    eta = L.gamma if L.gamma is not INF else Fraction(0)
    return PurelyInertial(L.n, p, vL, _as_value(vg, vL), residue_minpoly=L.residue_poly, v_eta=_as_value(eta, vL))


def concrete_report(K, g: Poly, with_oracle: bool = True, extra_checks=(), notes=(),
                    L: Optional[ExtensionField] = None, model: Optional[Model] = None) -> OmegaReport:
    """Build L = K[x]/(g), read off its value data, and report.

    With ``with_oracle`` the classical different of a ring generator is
    compared against the report (inertial) or supplies the annihilator
    value (ramified).  An already built ``L`` for the same K and g, or a
    ``model`` from ``build_model(K, g)``, may be passed to skip the
    construction.  When the root of g does not generate the valuation ring,
    L is presented by the minimal polynomial of a generator theta instead.
    """
    from .oracle import different_monogenic

    if L is not None:
        if L.base != K or L.g != g:
            raise ValueError("L was not built from this K and g")
        model = Model(L, Poly.x(K))
    elif model is None:
        model = build_model(K, g)
    L = model.L
    spec = spec_from_extension(L)
    checks = list(extra_checks)
    notes = list(notes)
    if not model.uses_eta:
        notes.append(f"valuation ring generated by theta = {model.theta} (in eta), minimal polynomial {L.g}")
    notes.append(f"L over {K.describe()}: e = {L.e}, f = {L.f}, v(eta) = {L.gamma}")
    oracle_ann = None
    if with_oracle:
        diff = different_monogenic(L)
        if L.kind == RAMIFIED:
            oracle_ann = _as_value(diff, L.value_group)
            checks.append(CrossCheck("oracle_different_positive", False if diff != 0 else None, f"different = {diff}"))
        else:
            checks.append(CrossCheck("oracle_different", diff == 0, f"different = {diff}"))
    rep = omega_report(spec, checks, notes, oracle_ann=oracle_ann)
    if with_oracle and L.kind != RAMIFIED:
        want = seg.empty(spec.group) if diff is INF else seg.closed_at(_as_value(diff, spec.group))
        if rep.ann != want:
            rep = _flag(rep, f"annihilator {rep.ann} differs from the oracle different {diff}")
    if L.kind == TRIVIAL:
        rep = OmegaReport(**{**rep.__dict__, "case": "trivial"})
    return rep


def _flag(rep: OmegaReport, note: str) -> OmegaReport:
    return OmegaReport(**{**rep.__dict__, "inconsistent": True, "notes": rep.notes + (note,)})


# -- CKR segments ---------------------------------------------------------


def ckr_segments(spec: PureDefect, v_rtilde: Value) -> Tuple[seg.FinalSegment, seg.FinalSegment]:
    """U = alpha + v(r~) and V = v(g'(eta)) - (n-1) v(eta-K)."""
    validate(spec)
    if not isinstance(spec, PureDefect):
        raise SpecValidationError("CKR segments are defined for pure defect specs")
    F = spec.v_eta_K
    if isinstance(F, Cofinal):
        raise SpecValidationError("no value lies above a family cofinal in the group")
    if isinstance(F, IncToSup) and v_rtilde < F.sup:
        raise SpecValidationError(f"v(r~) = {v_rtilde} does not exceed every value of v(eta-K)")
    U = seg.translate(alpha_of(spec), v_rtilde)
    V = seg.segment_of_family(F, -1, spec.n - 1, spec.v_gprime_eta, spec.group)
    return U, V


def ckr_module(spec: PureDefect, v_rtilde: Value) -> ModuleReport:
    U, V = ckr_segments(spec, v_rtilde)
    return seg.module_report(U, seg.segment_sum(U, V))


def default_rtilde(spec: PureDefect) -> Value:
    """A value of the group at or above the supremum of v(eta-K)."""
    F = spec.v_eta_K
    G = spec.group
    if not isinstance(F, IncToSup):
        raise SpecValidationError("needs an increasing family")
    coords = list(F.sup.coords)
    comp = G.components[-1]
    coords[-1] = comp.gen * ((coords[-1] / comp.gen).__ceil__())
    return Value(tuple(coords), G)


# -- Artin-Schreier and Kummer ---------------------------------------------


@dataclass(frozen=True)
class KummerWitness:
    """An integer r and the value v(eta - c) for some c in K."""

    r: int
    v_eta_c: Value


def _rank_one_sup(spec) -> Optional[ExtValue]:
    F = spec.v_eta_K
    if spec.group.rank == 1 and isinstance(F, IncToSup):
        return F.sup
    return None


def _poly_shape(g: Poly, K) -> dict:
    return {i: c for i, c in enumerate(g.coeffs) if not K.is_exact_zero(c)}


def artin_schreier_poly(K, a) -> Poly:
    p = K.char
    return Poly([-a, K.from_int(-1)] + [K.zero] * (p - 2) + [K.one], K)


def kummer_poly(K, a, q: int) -> Poly:
    return Poly([-a] + [K.zero] * (q - 1) + [K.one], K)


def artin_schreier_report(data, K=None) -> OmegaReport:
    """Report for x^p - x - a.

    ``data`` is either the constant a (with K of characteristic p) or a
    synthetic spec with n = p.
    """
    if K is not None:
        p = K.char
        if p == 0:
            raise SpecValidationError("Artin-Schreier polynomials need characteristic p")
        g = artin_schreier_poly(K, K.parse(data) if isinstance(data, str) else data)
        model = build_model(K, g)
        L = model.L
        rep = concrete_report(K, g, notes=["Artin-Schreier: g'(x) = -1"], model=model)
        if model.uses_eta and L.kind != RAMIFIED and L.kind != TRIVIAL:
            G = L.value_group
            vc = -G(L.gamma)
            alpha_ok = rep.alpha == seg.closed_at(vc)
            beta_ok = rep.beta == seg.closed_at(p * vc)
            if not (alpha_ok and beta_ok):
                rep = _flag(rep, "inertial Artin-Schreier segments differ from (v c, p v c)")
        return rep
    spec = data
    validate(spec)
    if spec.n != spec.p:
        raise SpecValidationError("an Artin-Schreier extension has degree p")
    checks, notes = [], ["Artin-Schreier"]
    if isinstance(spec, PureDefect):
        if spec.v_gprime_eta != spec.group.zero():
            raise SpecValidationError("g' = -1 forces v(g'(eta)) = 0")
        sup = _rank_one_sup(spec)
        if sup is not None and sup > spec.group.zero():
            raise SpecValidationError("v(eta - K) of an Artin-Schreier defect extension lies below 0")
    if isinstance(spec, PurelyRamified):
        if spec.vp is not INF:
            raise SpecValidationError("in characteristic p the value of p is infinite")
    if isinstance(spec, BranchedPure):
        checks.append(CrossCheck("defectless_branched", True if spec.d == 1 else None, f"d = {spec.d}"))
    rep = omega_report(spec, checks, notes)
    if isinstance(spec, PureDefect):
        G = spec.group
        if rep.beta != seg.segment_of_family(spec.v_eta_K, -1, spec.p, G.zero(), G):
            rep = _flag(rep, "beta differs from -p v(eta-K)")
        sup = _rank_one_sup(spec)
        if sup is not None:
            want = seg.closed_ext(ExtValue(tuple((1 - spec.p) * c for c in sup.coords)), G)
            if rep.ann != want:
                rep = _flag(rep, f"annihilator {rep.ann} differs from vb >= (1-p) rho = {want}")
    if isinstance(spec, PurelyRamified) and rep.is_zero:
        rep = _flag(rep, "a ramified Artin-Schreier extension must have nonzero Omega")
    return rep


def kummer_report(data, K=None, q: Optional[int] = None, vp=None, witnesses: Sequence[KummerWitness] = ()) -> OmegaReport:
    """Report for x^q - a.

    Concrete: ``data`` is the constant a, with K and q.  Synthetic: ``data``
    is a spec; ``vp`` is the value of p (needed for the defect case) and
    ``witnesses`` feed the sufficient condition in the branched case.
    """
    if K is not None:
        if q is None or q < 2:
            raise SpecValidationError("Kummer polynomials need a degree q >= 2")
        g = kummer_poly(K, K.parse(data) if isinstance(data, str) else data, q)
        model = build_model(K, g)
        L = model.L
        rep = concrete_report(K, g, notes=[f"Kummer: q = {q}"], model=model)
        if model.uses_eta and L.kind not in (RAMIFIED, TRIVIAL):
            G = L.value_group
            vq = INF if K.is_exact_zero(K.from_int(q)) else G(K.val(K.from_int(q)))
            veta = G(L.gamma)
            beta_want = seg.top(G) if vq is INF else seg.closed_at(vq - veta)
            if rep.beta != beta_want:
                rep = _flag(rep, f"inertial Kummer beta {rep.beta} differs from v(q) - v(eta)")
        return rep
    spec = data
    validate(spec)
    checks, notes = [], ["Kummer"]
    G = spec.group
    if isinstance(spec, PureDefect):
        if spec.n != spec.p:
            raise SpecValidationError("a Kummer defect extension has degree q = p")
        if vp is None:
            raise SpecValidationError("the Kummer defect case needs vp")
        if spec.v_gprime_eta != vp:
            raise SpecValidationError("with v(eta) = 0, v(g'(eta)) = v(q eta^(q-1)) = vp")
    if isinstance(spec, BranchedPure) and witnesses:
        met = any(
            vp is not None and vp is not INF and vp < w.r * (spec.beta_d + spec.d * w.v_eta_c) for w in witnesses
        )
        checks.append(
            CrossCheck("kummer_witness_condition", True if met else None,
                       "sufficient condition met" if met else "sufficient condition not established")
        )
    rep = omega_report(spec, checks, notes)
    if isinstance(spec, PureDefect):
        sup = _rank_one_sup(spec)
        if sup is not None and vp is not INF:
            want = seg.closed_ext(ExtValue(tuple(a + (1 - spec.p) * c for a, c in zip(vp.coords, sup.coords))), G)
            if rep.ann != want:
                rep = _flag(rep, f"annihilator {rep.ann} differs from vb >= vp + (1-p) rho = {want}")
    return rep


def kummer_ramified_spec(vL: ValueGroup, vK: ValueGroup, gamma: Value, q: int, p: int, vp) -> PurelyRamified:
    """Value data of x^q - a with v(a) = q*gamma."""
    return PurelyRamified(q, p, vL, vK, gamma, (q * gamma,) + (INF,) * (q - 1), vp)


def artin_schreier_ramified_spec(vL: ValueGroup, vK: ValueGroup, gamma: Value, p: int, v_a1: Value) -> PurelyRamified:
    """Value data of a normalized x^p - c x - a (characteristic p)."""
    return PurelyRamified(p, p, vL, vK, gamma, (p * gamma, v_a1) + (INF,) * (p - 2), INF)
