"""Curated inputs shared by ``selftest`` and the acceptance suite.

``SPECS`` holds named spec documents (the JSON accepted by ``report``) with
the expected ``is_zero`` verdict. ``split_cases`` lists polynomials that split
in a constructed extension L together with all of their roots, for comparing
the Newton-polygon root distance with explicit root enumeration.
"""
from __future__ import annotations

from itertools import combinations
from typing import List, NamedTuple, Optional, Sequence, Tuple

from .valfield import ExtensionField, LaurentSeriesField, Poly, RationalPadic, build_extension

_DENSE2 = [{"gen": "1", "div": 2}]
_DENSE3 = [{"gen": "1", "div": 3}]
_DENSE5 = [{"gen": "1", "div": 5}]


def _concrete(field: str, p: int, g=None, **extra) -> dict:
    doc = {"version": 1, "case": "concrete", "field": {"field": field, "p": p}}
    if g is not None:
        doc["g"] = [str(c) for c in g]
    doc.update(extra)
    return doc


def _defect(n: int, p: int, group, sup: str, vg: str = "0", B=None, family=None) -> dict:
    doc = {"version": 1, "case": "pure_defect", "n": n, "p": p, "group": group,
           "v_eta_K": {"kind": "inc_to_sup", "sup": sup}, "v_gprime_eta": vg}
    if B is not None:
        doc["B"] = list(B)
    if family is not None:
        doc["family"] = family
    return doc


class CorpusSpec(NamedTuple):
    name: str
    doc: dict
    is_zero: Optional[bool]


SPECS: Tuple[CorpusSpec, ...] = (
    # concrete extensions over Q_p
    CorpusSpec("Q2 x^2+x+1", _concrete("Qp", 2, (1, 1, 1)), True),
    CorpusSpec("Q2 x^4+x+1", _concrete("Qp", 2, (1, 1, 0, 0, 1)), True),
    CorpusSpec("Q3 x^2-2", _concrete("Qp", 3, (-2, 0, 1)), True),
    CorpusSpec("Q3 x^3-x-1", _concrete("Qp", 3, (-1, -1, 0, 1)), True),
    CorpusSpec("Q5 x^2-2", _concrete("Qp", 5, (-2, 0, 1)), True),
    CorpusSpec("Q2 x^2-5", _concrete("Qp", 2, (-5, 0, 1)), True),
    CorpusSpec("Q2 x^2-2", _concrete("Qp", 2, (-2, 0, 1)), False),
    CorpusSpec("Q2 x^3-2", _concrete("Qp", 2, (-2, 0, 0, 1)), False),
    CorpusSpec("Q3 x^2-3", _concrete("Qp", 3, (-3, 0, 1)), False),
    CorpusSpec("Q5 x^2-5", _concrete("Qp", 5, (-5, 0, 1)), False),
    CorpusSpec("Q3 Kummer x^2-2", _concrete("Qp", 3, kind="kummer", a="2", q=2), True),
    CorpusSpec("Q2 Kummer x^2-2", _concrete("Qp", 2, kind="kummer", a="2", q=2), False),
    CorpusSpec("Q2 Kummer x^3-2", _concrete("Qp", 2, kind="kummer", a="2", q=3), False),
    # concrete extensions in characteristic p
    CorpusSpec("F2((t)) AS x^2-x-1", _concrete("Fp_t", 2, kind="artin_schreier", a="1"), True),
    CorpusSpec("F3((t)) AS x^3-x-1", _concrete("Fp_t", 3, kind="artin_schreier", a="1"), True),
    CorpusSpec("F3((t)) AS x^3-x-1/t", _concrete("Fp_t", 3, kind="artin_schreier", a="1/t"), False),
    CorpusSpec("F2((t)) x^2+t", _concrete("Fp_t", 2, ("t", 0, 1)), False),
    CorpusSpec("F2(u)((t)) x^2-(u+t)", _concrete("Fp_u_t", 2, ("-(u+t)", 0, 1)), False),
    # pure defect extensions
    CorpusSpec("AS defect p=2 sup -1", _defect(2, 2, _DENSE2, "-1", family={"kind": "artin_schreier"}), False),
    CorpusSpec("AS defect p=3 sup -1/3", _defect(3, 3, _DENSE3, "-1/3", family={"kind": "artin_schreier"}), False),
    CorpusSpec("AS defect p=5 sup -2", _defect(5, 5, _DENSE5, "-2", family={"kind": "artin_schreier"}), False),
    CorpusSpec("AS defect p=2 sup 0", _defect(2, 2, _DENSE2, "0", B=[1, 2], family={"kind": "artin_schreier"}), True),
    CorpusSpec("Kummer defect p=2 sup -1/2",
               _defect(2, 2, _DENSE2, "-1/2", vg="1", family={"kind": "kummer", "vp": "1"}), False),
    CorpusSpec("Kummer defect p=3 sup -1/3",
               _defect(3, 3, _DENSE3, "-1/3", vg="1", family={"kind": "kummer", "vp": "1"}), False),
    CorpusSpec("Kummer defect p=3 sup 1/2",
               _defect(3, 3, _DENSE3, "1/2", vg="1", family={"kind": "kummer", "vp": "1"}), True),
    CorpusSpec("defect n=4 p=2 sup -1/4", _defect(4, 2, _DENSE2, "-1/4", vg="1/2"), False),
    CorpusSpec("defect n=2 p=2 sup 0 rank 2",
               _defect(2, 2, [{"gen": "1"}, {"gen": "1", "div": 2}], "(0,0)", vg="(0,0)", B=[1, 2]), True),
    # branched and synthetic inertial and ramified specs
    CorpusSpec("branched d=1", {"version": 1, "case": "branched_pure", "n": 4, "p": 2, "group": _DENSE2, "d": 1,
                                "beta_d": "0", "v_eta_K": {"kind": "inc_to_sup", "sup": "-1"},
                                "v_gprime_eta": "0", "B": [1, 4]}, True),
    CorpusSpec("branched d=2", {"version": 1, "case": "branched_pure", "n": 4, "p": 2, "group": _DENSE2, "d": 2,
                                "beta_d": "0", "v_eta_K": {"kind": "inc_to_sup", "sup": "-1"},
                                "v_gprime_eta": "0", "B": [2, 4]}, False),
    CorpusSpec("inertial separable residue",
               {"version": 1, "case": "purely_inertial", "n": 2, "p": 2, "group": [{"gen": "1"}],
                "v_gprime_eta": "0", "residue_minpoly": {"coeffs": ["1", "1", "1"]}}, True),
    CorpusSpec("ramified rank 2 over Z[1/2]",
               {"version": 1, "case": "purely_ramified", "n": 2, "p": 3,
                "group": [{"gen": "1"}, {"gen": "1", "div": 2}], "vK": [{"gen": "1"}, {"gen": "1"}],
                "gamma": "(0,1/2)", "coeff_values": ["(0,1)", "inf"], "vp": "(1,0)"}, True),
)


def defect_specs() -> List[CorpusSpec]:
    return [s for s in SPECS if s.doc["case"] == "pure_defect"]


# -- split polynomials ----------------------------------------------------------


class SplitCase(NamedTuple):
    label: str
    L: ExtensionField
    f: Poly
    roots: Tuple[Poly, ...]


def _from_roots(roots: Sequence[Poly], K) -> Poly:
    """prod (x - r) over constant roots r."""
    out = Poly.const(K.one, K)
    for r in roots:
        out = out * Poly((-r.coeff(0), K.one), K)
    return out


def split_cases() -> List[SplitCase]:
    """Every quadratic and cubic with distinct roots in a small constant pool, in several
    extensions, plus polynomials whose roots are the conjugates of eta."""
    Q2, Q3 = RationalPadic(2), RationalPadic(3)
    F2t = LaurentSeriesField(2)

    def P(K, *cs):
        return Poly([K.parse(str(c)) for c in cs], K)

    fields = [
        ("Q2 sqrt 2", build_extension(Q2, P(Q2, -2, 0, 1)), [-2, -1, 0, 1, 2, 3, 4, 6]),
        ("Q2 x^2+x+1", build_extension(Q2, P(Q2, 1, 1, 1)), [-2, -1, 0, 1, 2, 3, 4]),
        ("Q2 cube root 2", build_extension(Q2, P(Q2, -2, 0, 0, 1)), [-1, 0, 1, 2, 4, "1/2"]),
        ("Q3 sqrt 2", build_extension(Q3, P(Q3, -2, 0, 1)), [-3, -1, 0, 1, 2, 3, 9]),
        ("Q3 sqrt 3", build_extension(Q3, P(Q3, -3, 0, 1)), [-3, -1, 0, 1, 3, 6]),
        ("F2((t)) x^2+t", build_extension(F2t, P(F2t, "t", 0, 1)), ["0", "1", "t", "1+t", "t^2", "1/t"]),
    ]
    cases: List[SplitCase] = []
    for label, L, pool in fields:
        K = L.base
        consts = [Poly.const(K.parse(str(c)), K) for c in pool]
        for k in (2, 3):
            for roots in combinations(consts, k):
                f = _from_roots(roots, K)
                names = ", ".join(str(r.coeff(0)) for r in roots)
                cases.append(SplitCase(f"{label}: roots {names}", L, f, roots))
    # polynomials with the conjugates of eta among their roots
    L = build_extension(Q2, P(Q2, -2, 0, 1))
    eta = L.x()
    cases.append(SplitCase("Q2 sqrt 2: f = g", L, L.g, (eta, -eta)))
    for c in (0, 1, 2, 4):
        lin = Poly.const(Q2.from_int(c), Q2)
        cases.append(SplitCase(f"Q2 sqrt 2: (x-{c})(x^2-2)", L, L.g * Poly((-Q2.from_int(c), Q2.one), Q2),
                               (eta, -eta, lin)))
    L = build_extension(Q2, P(Q2, 1, 1, 1))
    eta = L.x()
    conj = Poly((-Q2.one, -Q2.one), Q2)
    cases.append(SplitCase("Q2 x^2+x+1: f = g", L, L.g, (eta, conj)))
    cases.append(SplitCase("Q2 x^2+x+1: (x-1)g", L, L.g * Poly((-Q2.one, Q2.one), Q2),
                           (eta, conj, Poly.const(Q2.one, Q2))))
    L = build_extension(Q3, P(Q3, -3, 0, 1))
    eta = L.x()
    cases.append(SplitCase("Q3 sqrt 3: (x+3)g", L, L.g * Poly((Q3.from_int(3), Q3.one), Q3),
                           (eta, -eta, Poly.const(Q3.from_int(-3), Q3))))
    return cases
