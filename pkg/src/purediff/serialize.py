"""JSON spec documents and report (de)serialization.

Rationals always travel as strings (``"1/2"``, ``"(1/2,0)"``, ``"inf"``) so no
value ever passes through a float.
"""
from __future__ import annotations

import json
import dataclasses
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Optional

import jsonschema

from . import omega as om
from . import segment as seg
from .errors import SpecValidationError
from .ordgrp import INF, Component, ExtValue, Value, ValueGroup, format_value, parse_value
from .segment import Cofinal, FiniteMax, FinalSegment, IncToSup
from .valfield.fields import LaurentSeriesField, field_from_json
from .valfield.poly import Poly
from .valfield.residue import RatFunc, ResidueField

_VALUE = {"oneOf": [{"type": "string"}, {"type": "integer"}]}
_GROUP = {
    "type": "array",
    "minItems": 1,
    "items": {
        "type": "object",
        "properties": {"gen": _VALUE, "div": {"type": ["integer", "null"]}},
        "required": ["gen"],
        "additionalProperties": False,
    },
}
_FAMILY = {
    "type": "object",
    "properties": {
        "kind": {"enum": ["finite_max", "inc_to_sup", "cofinal"]},
        "values": {"type": "array", "items": _VALUE, "minItems": 1},
        "sup": _VALUE,
        "attained": {"const": False},
    },
    "required": ["kind"],
    "additionalProperties": False,
}
_FIELD = {
    "type": "object",
    "properties": {
        "field": {"enum": ["Qp", "Fp_t", "Fp_u_t"]},
        "p": {"type": "integer"},
        "prec": {"type": "integer", "minimum": 1},
    },
    "required": ["field", "p"],
    "additionalProperties": False,
}
_FAMILY_TAG = {
    "type": "object",
    "properties": {
        "kind": {"enum": ["artin_schreier", "kummer"]},
        "vp": _VALUE,
        "witnesses": {
            "type": "array",
            "items": {
                "type": "object",
                "properties": {"r": {"type": "integer"}, "v_eta_c": _VALUE},
                "required": ["r", "v_eta_c"],
                "additionalProperties": False,
            },
        },
    },
    "required": ["kind"],
    "additionalProperties": False,
}
_OPTIONS = {
    "type": "object",
    "properties": {
        "precision": {"type": "integer", "minimum": 1},
        "window_bound": {"type": "integer", "minimum": 0},
        "format": {"enum": ["json", "text"]},
        "seed": {"type": "integer"},
    },
    "additionalProperties": False,
}
_COMMON = {"version": {"const": 1}, "options": _OPTIONS, "n": {"type": "integer", "minimum": 1},
           "p": {"type": "integer", "minimum": 0}, "group": _GROUP, "family": _FAMILY_TAG}


def _case(name, props, required):
    return {
        "type": "object",
        "properties": {"case": {"const": name}, **_COMMON, **props},
        "required": ["case", *required],
        "additionalProperties": False,
    }


SPEC_SCHEMA = {
    "oneOf": [
        _case(
            "pure_defect",
            {"v_eta_K": _FAMILY, "v_gprime_eta": _VALUE, "B": {"type": "array", "items": {"type": "integer"}}},
            ["n", "p", "group", "v_eta_K", "v_gprime_eta"],
        ),
        _case(
            "branched_pure",
            {"d": {"type": "integer", "minimum": 1}, "beta_d": _VALUE, "v_eta_K": _FAMILY, "v_gprime_eta": _VALUE,
             "B": {"type": "array", "items": {"type": "integer"}}},
            ["n", "p", "group", "d", "beta_d", "v_eta_K", "v_gprime_eta"],
        ),
        _case(
            "purely_inertial",
            {"v_gprime_eta": _VALUE, "v_eta": _VALUE,
             "residue_minpoly": {
                 "type": "object",
                 "properties": {"coeffs": {"type": "array", "items": _VALUE, "minItems": 2},
                                "with_u": {"type": "boolean"}},
                 "required": ["coeffs"],
                 "additionalProperties": False,
             },
             "B": {"type": "array", "items": {"type": "integer"}}},
            ["n", "p", "group", "v_gprime_eta"],
        ),
        _case(
            "purely_ramified",
            {"vK": _GROUP, "gamma": _VALUE, "coeff_values": {"type": "array", "items": _VALUE}, "vp": _VALUE},
            ["n", "p", "group", "vK", "gamma", "coeff_values", "vp"],
        ),
        {
            "type": "object",
            "properties": {
                "case": {"const": "concrete"},
                "version": {"const": 1},
                "options": _OPTIONS,
                "field": _FIELD,
                "g": {"type": "array", "items": _VALUE, "minItems": 2},
                "a": _VALUE,
                "kind": {"enum": ["generic", "artin_schreier", "kummer"]},
                "q": {"type": "integer", "minimum": 2},
            },
            "required": ["case", "field"],
            "additionalProperties": False,
        },
    ]
}


# -- parsing ---------------------------------------------------------------


def group_from_json(doc) -> ValueGroup:
    comps = []
    for c in doc:
        try:
            gen = Fraction(str(c["gen"]))
        except (ValueError, ZeroDivisionError) as exc:
            raise SpecValidationError(f"bad generator {c.get('gen')!r}") from exc
        comps.append(Component(gen, c.get("div")))
    return ValueGroup(tuple(comps))


def group_to_json(G: ValueGroup) -> list:
    return [{"gen": str(c.gen), "div": c.div} for c in G.components]


def _val(text, G: ValueGroup, ext: bool = False):
    return parse_value(str(text), G, ext=ext)


def family_from_json(doc, G: ValueGroup):
    kind = doc["kind"]
    if kind == "finite_max":
        if "values" not in doc:
            raise SpecValidationError("finite_max family needs values")
        vals = tuple(_val(v, G) for v in doc["values"])
        if any(v is INF for v in vals):
            raise SpecValidationError("family values must be finite")
        return FiniteMax(vals)
    if kind == "inc_to_sup":
        if "sup" not in doc:
            raise SpecValidationError("inc_to_sup family needs sup")
        sup = _val(doc["sup"], G, ext=True)
        if sup is INF:
            raise SpecValidationError("supremum must be finite")
        return IncToSup(sup)
    return Cofinal()


def family_to_json(F) -> dict:
    if isinstance(F, FiniteMax):
        return {"kind": "finite_max", "values": [format_value(v) for v in F.values]}
    if isinstance(F, IncToSup):
        return {"kind": "inc_to_sup", "sup": format_value(F.sup), "attained": False}
    return {"kind": "cofinal"}


def _residue_poly(doc, p: int) -> Poly:
    with_u = bool(doc.get("with_u", False))
    helper = LaurentSeriesField(p, with_u)
    RF = ResidueField(p, with_u)
    coeffs = []
    for c in doc["coeffs"]:
        s = helper.parse(str(c))
        if s.prec is not None or any(k != 0 for k in s.terms):
            raise SpecValidationError(f"residue coefficient {c!r} must be free of t")
        coeffs.append(s.terms.get(0, RatFunc.const(p, 0)))
    q = Poly(coeffs, RF)
    if not q.is_monic():
        raise SpecValidationError("residue minimal polynomial must be monic")
    return q


@dataclass(frozen=True)
class SpecDocument:
    """A validated document: a synthetic spec or a concrete field and polynomial."""

    case: str
    spec: Any = None
    field: Any = None
    g: Optional[Poly] = None
    kind: str = "generic"
    q: Optional[int] = None
    a: Any = None
    family: Optional[dict] = None
    options: dict = dataclasses.field(default_factory=dict)


def load_spec(doc: dict) -> SpecDocument:
    try:
        jsonschema.validate(doc, SPEC_SCHEMA)
    except jsonschema.ValidationError as exc:
        raise SpecValidationError(f"schema: {exc.message}") from exc
    case = doc["case"]
    options = doc.get("options", {})
    if case == "concrete":
        fdoc = dict(doc["field"])
        if "precision" in options and fdoc["field"] != "Qp":
            fdoc["prec"] = options["precision"]
        K = field_from_json(fdoc)
        kind = doc.get("kind", "generic")
        q = doc.get("q")
        a = K.parse(str(doc["a"])) if "a" in doc else None
        g = Poly([K.parse(str(c)) for c in doc["g"]], K) if "g" in doc else None
        if g is None and a is None:
            raise SpecValidationError("a concrete document needs g or a")
        if kind == "generic":
            if g is None:
                raise SpecValidationError("a generic concrete document needs g")
        elif kind == "kummer":
            if q is None:
                q = g.deg if g is not None else None
            if q is None:
                raise SpecValidationError("kummer documents need q")
            shaped = om.kummer_poly(K, a, q) if a is not None else None
            if g is not None:
                a_from_g = -g.coeff(0)
                if g != om.kummer_poly(K, a_from_g, q):
                    raise SpecValidationError(f"g is not of the form x^{q} - a")
                if a is not None and shaped != g:
                    raise SpecValidationError("g and a disagree")
                a = a_from_g
        else:
            if K.char == 0:
                raise SpecValidationError("Artin-Schreier documents need a field of characteristic p")
            if g is not None:
                a_from_g = -g.coeff(0)
                if g != om.artin_schreier_poly(K, a_from_g):
                    raise SpecValidationError("g is not of the form x^p - x - a")
                if a is not None and a != a_from_g:
                    raise SpecValidationError("g and a disagree")
                a = a_from_g
        return SpecDocument("concrete", field=K, g=g, kind=kind, q=q, a=a, options=options)

    G = group_from_json(doc["group"])
    n, p = doc["n"], doc["p"]
    B = frozenset(doc["B"]) if "B" in doc else None
    if case == "pure_defect":
        spec = om.PureDefect(n, p, G, family_from_json(doc["v_eta_K"], G), _val(doc["v_gprime_eta"], G), B)
    elif case == "branched_pure":
        spec = om.BranchedPure(
            n, p, G, doc["d"], _val(doc["beta_d"], G), family_from_json(doc["v_eta_K"], G),
            _val(doc["v_gprime_eta"], G), B,
        )
    elif case == "purely_inertial":
        rm = _residue_poly(doc["residue_minpoly"], p) if "residue_minpoly" in doc else None
        if rm is not None and p == 0:
            raise SpecValidationError("residue polynomials need p > 0")
        v_eta = _val(doc["v_eta"], G) if "v_eta" in doc else None
        spec = om.PurelyInertial(n, p, G, _val(doc["v_gprime_eta"], G), rm, B, v_eta)
    else:
        vK = group_from_json(doc["vK"])
        spec = om.PurelyRamified(
            n, p, G, vK, _val(doc["gamma"], G), tuple(_val(v, G) for v in doc["coeff_values"]), _val(doc["vp"], G)
        )
    fam = doc.get("family")
    if fam is not None:
        fam = dict(fam)
        if "vp" in fam:
            fam["vp"] = _val(fam["vp"], G)
        fam["witnesses"] = tuple(om.KummerWitness(w["r"], _val(w["v_eta_c"], G)) for w in fam.get("witnesses", []))
    om.validate(spec)
    return SpecDocument(case, spec=spec, family=fam, options=options)


def run_document(sd: SpecDocument) -> om.OmegaReport:
    if sd.case == "concrete":
        if sd.kind == "kummer":
            return om.kummer_report(sd.a, sd.field, q=sd.q)
        if sd.kind == "artin_schreier":
            return om.artin_schreier_report(sd.a, sd.field)
        return om.concrete_report(sd.field, sd.g)
    fam = sd.family
    if fam is None:
        return om.omega_report(sd.spec)
    if fam["kind"] == "artin_schreier":
        return om.artin_schreier_report(sd.spec)
    return om.kummer_report(sd.spec, vp=fam.get("vp"), witnesses=fam.get("witnesses", ()))


# -- reports -------------------------------------------------------------------


def segment_to_json(S: Optional[FinalSegment]):
    if S is None:
        return None
    form = S.form
    if S.kind != seg.CUT:
        return {"form": form}
    key = "rho" if form == "open_ext" else "s"
    return {"form": form, key: format_value(S.anchor), "delta_suffix": S.depth + 1}


def segment_from_json(doc, G: ValueGroup) -> Optional[FinalSegment]:
    if doc is None:
        return None
    form = doc["form"]
    if form in ("whole", "top", "empty"):
        return FinalSegment(G, form)
    anchor = parse_value(doc.get("s", doc.get("rho")), G, ext=True)
    depth = int(doc["delta_suffix"]) - 1
    closed = form.startswith("closed")
    return seg._canon(G, depth, anchor.coords, closed)


def report_to_json(rep: om.OmegaReport) -> dict:
    G = rep.alpha.group
    if isinstance(rep.ann, om.OracleOnly):
        ann = {"form": "oracle_only", "value": format_value(rep.ann.value)}
    else:
        ann = segment_to_json(rep.ann)
    return {
        "case": rep.case,
        "group": group_to_json(G),
        "alpha": segment_to_json(rep.alpha),
        "beta": segment_to_json(rep.beta),
        "is_zero": rep.is_zero,
        "ann": ann,
        "fin_gen": rep.fin_gen,
        "fin_pres": rep.fin_pres,
        "single_generator": rep.module.single_generator if rep.module is not None else None,
        "B": sorted(rep.B) if rep.B is not None else None,
        "B_provenance": rep.B_provenance,
        "cross_checks": [
            {"name": c.name, "predicts_zero": c.predicts_zero, "agrees": c.agrees(rep.is_zero), "detail": c.detail}
            for c in rep.cross_checks
        ],
        "inconsistent": rep.inconsistent,
        "notes": list(rep.notes),
    }


def report_from_json(doc: dict) -> om.OmegaReport:
    G = group_from_json(doc["group"])
    alpha = segment_from_json(doc["alpha"], G)
    beta = segment_from_json(doc["beta"], G)
    a = doc["ann"]
    if a is not None and a["form"] == "oracle_only":
        ann = om.OracleOnly(parse_value(a["value"], G))
    else:
        ann = segment_from_json(a, G)
    module = None
    if beta is not None:
        module = seg.ModuleReport(alpha, beta, doc["is_zero"], ann, doc["fin_gen"], doc["fin_pres"],
                                  doc["single_generator"])
    return om.OmegaReport(
        case=doc["case"],
        alpha=alpha,
        beta=beta,
        module=module,
        is_zero=doc["is_zero"],
        ann=ann,
        B=frozenset(doc["B"]) if doc["B"] is not None else None,
        B_provenance=doc["B_provenance"],
        cross_checks=tuple(om.CrossCheck(c["name"], c["predicts_zero"], c["detail"]) for c in doc["cross_checks"]),
        inconsistent=doc["inconsistent"],
        notes=tuple(doc["notes"]),
        fin_gen=doc["fin_gen"],
        fin_pres=doc["fin_pres"],
    )


def dumps_report(rep: om.OmegaReport) -> str:
    return json.dumps(report_to_json(rep), indent=2)


def text_report(rep: om.OmegaReport) -> str:
    def flag(x):
        return "unknown" if x is None else ("yes" if x else "no")

    lines = [
        f"case:          {rep.case}",
        f"alpha:         {rep.alpha}",
        f"beta:          {rep.beta if rep.beta is not None else 'n/a'}",
        f"Omega = (0):   {flag(rep.is_zero)}",
        f"annihilator:   {rep.ann if rep.ann is not None else 'unknown'}",
        f"fin. gen.:     {flag(rep.fin_gen)}",
        f"fin. pres.:    {flag(rep.fin_pres)}",
        f"B:             {sorted(rep.B) if rep.B is not None else 'n/a'} ({rep.B_provenance})",
        "cross-checks:",
    ]
    for c in rep.cross_checks:
        pred = "n/a" if c.predicts_zero is None else ("zero" if c.predicts_zero else "nonzero")
        mark = "ok" if c.agrees(rep.is_zero) else "DISAGREES"
        lines.append(f"  {c.name:<28} predicts {pred:<8} {mark}  {c.detail}")
    if rep.inconsistent:
        lines.append("INCONSISTENT: criteria disagree")
    for note in rep.notes:
        lines.append(f"note: {note}")
    return "\n".join(lines)
