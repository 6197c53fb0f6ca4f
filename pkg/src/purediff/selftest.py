"""Curated corpus checks and randomized invariant suites behind ``selftest``.

Every curated case must end in agreement; an inconclusive oracle verdict is
a failure.  Randomized cases may be inconclusive (the count is reported) but
never disagree.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Optional

from . import corpus
from . import omega as om
from .keypoly import delta, q_expand, rewrite_nonneg
from .oracle import (
    AGREE,
    DISAGREE,
    INCONCLUSIVE,
    GridWindow,
    RawSegment,
    delta_bruteforce,
    different_monogenic,
    random_group,
    random_raw_segment,
    segment_bruteforce,
)
from .ordgrp import INF, ExtValue, ValueGroup
from .segment import IncToSup
from .serialize import load_spec, run_document
from .valfield import Poly, RationalPadic, build_extension, build_model


@dataclass
class SuiteResult:
    name: str
    passed: int = 0
    failed: int = 0
    inconclusive: int = 0
    random_inconclusive: int = 0
    failures: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.failed == 0 and self.inconclusive == 0

    def record(self, status: str, label: str, curated: bool = True) -> None:
        if status == AGREE:
            self.passed += 1
        elif status == INCONCLUSIVE and curated:
            self.inconclusive += 1
            self.failures.append(f"inconclusive: {label}")
        elif status == INCONCLUSIVE:
            self.random_inconclusive += 1
        else:
            self.failed += 1
            self.failures.append(f"failed: {label}")

    def check(self, cond: bool, label: str) -> None:
        self.record(AGREE if cond else DISAGREE, label)


# -- segments ---------------------------------------------------------------

Z = ValueGroup.of(1)
Z2 = ValueGroup.of(1, 1)
ZHALF = ValueGroup.of((1, 2))


def _curated_segments(bound: Optional[int]):
    """(label, op, operands, window) entries that must all agree."""

    def W(G, b, den=0):
        return GridWindow(G, b if bound is None else bound, den)

    ca = lambda *c: RawSegment("closed_mod", tuple(Fraction(x) for x in c), len(c))
    return [
        ("annihilator ClosedAt(-2), ClosedAt(3) is ClosedAt(5)", "annihilator_segment",
         [ca(-2), ca(3)], W(Z, 10)),
        ("member ClosedAt(-2)", "member", [ca(-2)], W(Z, 10)),
        ("member OpenExt(1/2) on Z", "member", [RawSegment("open_ext", (Fraction(1, 2),))], W(Z, 10)),
        ("invariance of ClosedMod(0, D2) on rank 2", "invariance_subgroup",
         [RawSegment("closed_mod", (Fraction(0), Fraction(0)), 1)], W(Z2, 4)),
        ("invariance of ClosedAt((0,0))", "invariance_subgroup",
         [RawSegment("closed_mod", (Fraction(0), Fraction(0)), 2)], W(Z2, 4)),
        ("has_min OpenExt(0) on Z[1/2] is None", "has_min", [RawSegment("open_ext", (Fraction(0),))], W(ZHALF, 4, 6)),
        ("has_min ClosedAt(3) on Z", "has_min", [ca(3)], W(Z, 10)),
        ("has_min OpenAt(0) on Z is 1", "has_min", [RawSegment("open_mod", (Fraction(0),), 1)], W(Z, 10)),
        ("ClosedAt(1) differs from OpenAt(1)", "seg_equal", [ca(1), RawSegment("open_mod", (Fraction(1),), 1)], W(Z, 10)),
        ("OpenAt(0) equals ClosedAt(1) on Z", "seg_equal", [RawSegment("open_mod", (Fraction(0),), 1), ca(1)], W(Z, 10)),
        ("annihilator of OpenMod(0, D2) into itself", "annihilator_segment",
         [RawSegment("open_mod", (Fraction(0), Fraction(0)), 1)] * 2, W(Z2, 3)),
    ]


def suite_segments(bound: Optional[int], seed: int, cases: int = 150) -> SuiteResult:
    res = SuiteResult("segments")
    for label, op, operands, W in _curated_segments(bound):
        v = segment_bruteforce(op, operands, W)
        res.record(v.status, f"{label} ({v.detail})" if v.detail else label)
    rng = random.Random(seed)
    ops = ["member", "seg_equal", "has_min", "invariance_subgroup", "annihilator_segment"]
    b = 2 if bound is None else bound
    for i in range(cases):
        G = random_group(rng, rng.randint(1, 2))
        op = ops[i % len(ops)]
        k = 2 if op in ("seg_equal", "annihilator_segment") else 1
        operands = [random_raw_segment(G, rng, span=2) for _ in range(k)]
        v = segment_bruteforce(op, operands, GridWindow(G, b, 1))
        if v.status == INCONCLUSIVE and bound is not None and bound <= 0:
            res.record(v.status, f"random {op} #{i}")
        else:
            res.record(v.status, f"random {op} #{i}: {v.detail}", curated=False)
    return res


# -- concrete fields and the different oracle ------------------------------------


def suite_oracle(bound: Optional[int], seed: int) -> SuiteResult:
    """Concrete corpus specs against the classical different, and delta against explicit roots."""
    res = SuiteResult("oracle")
    for entry in corpus.SPECS:
        sd = load_spec(entry.doc)
        if sd.case != "concrete":
            continue
        g = sd.g
        if g is None:
            g = om.kummer_poly(sd.field, sd.a, sd.q) if sd.kind == "kummer" else om.artin_schreier_poly(sd.field, sd.a)
        L = build_model(sd.field, g).L
        d = different_monogenic(L)
        res.check((d == 0) == entry.is_zero, f"{entry.name}: different {d}")
    for case in corpus.split_cases():
        d1, d2 = delta(case.f, case.L), delta_bruteforce(case.f, case.L, case.roots)
        res.check(d1 == d2, f"{case.label}: delta {d1} vs explicit roots {d2}")
    return res


# -- omega formulas --------------------------------------------------------------


def suite_omega(bound: Optional[int], seed: int, cases: int = 60) -> SuiteResult:
    res = SuiteResult("omega")
    for entry in corpus.SPECS:
        rep = run_document(load_spec(entry.doc))
        res.check(rep.is_zero == entry.is_zero and not rep.inconsistent, f"{entry.name}: is_zero {rep.is_zero}")
    for entry in corpus.defect_specs():
        spec = load_spec(entry.doc).spec
        U = om.ckr_module(spec, om.default_rtilde(spec))
        rep = om.omega_report(spec)
        res.check((U.is_zero, U.fin_gen, U.fin_pres) == (rep.is_zero, rep.fin_gen, rep.fin_pres),
                  f"{entry.name}: CKR flags")
    rng = random.Random(seed)
    for i in range(cases):
        p = rng.choice([2, 3, 5])
        G = ValueGroup.of((1, p))
        rho = Fraction(-rng.randint(0, 12), p ** rng.randint(0, 2))
        fam = IncToSup(ExtValue((rho,)))
        rep = om.artin_schreier_report(om.PureDefect(p, p, G, fam, G.zero(), None))
        res.check(not rep.inconsistent, f"Artin-Schreier defect rho={rho}, p={p}")
        vp = G(rng.randint(1, 4))
        krep = om.kummer_report(om.PureDefect(p, p, G, fam, vp, None), vp=vp)
        res.check(not krep.inconsistent, f"Kummer defect rho={rho}, p={p}")
    return res


# -- key polynomials ------------------------------------------------------------


def suite_keypoly(bound: Optional[int], seed: int, cases: int = 60) -> SuiteResult:
    res = SuiteResult("keypoly")
    rng = random.Random(seed)
    Q2 = RationalPadic(2)
    for i in range(cases):
        f = Poly([Fraction(rng.randint(-9, 9)) for _ in range(rng.randint(1, 7))], Q2)
        q = Poly([Fraction(rng.randint(-9, 9)) for _ in range(rng.randint(1, 3))] + [Fraction(1)], Q2)
        res.check(q_expand(f, q).reconstruct() == f, f"q-expansion of {f} in {q}")
    L = build_extension(Q2, Poly([Fraction(1), Fraction(1), Fraction(1)], Q2))
    x = L.x()
    for i in range(cases // 3):
        f = Poly([Fraction(rng.randint(-9, 9)), Fraction(rng.randint(-9, 9))], Q2)
        if f.is_zero():
            continue
        v = L.eval_val(f)
        f = f * Q2.pi_power(-int(v))
        terms = rewrite_nonneg(f, [x], L)
        res.check(bool(terms), f"rewrite of {f}")
    return res


SUITES: Dict[str, Callable] = {
    "segments": suite_segments,
    "oracle": suite_oracle,
    "omega": suite_omega,
    "keypoly": suite_keypoly,
}


def run(only: Optional[str] = None, bound: Optional[int] = None, seed: int = 0) -> List[SuiteResult]:
    names = [only] if only else list(SUITES)
    out = []
    for name in names:
        if name == "segments":
            out.append(suite_segments(bound, seed))
        elif bound is not None and bound <= 0:
            # every suite consults the window policy; an empty window decides nothing
            r = SuiteResult(name, inconclusive=1, failures=["inconclusive: window bound 0"])
            out.append(r)
        else:
            out.append(SUITES[name](bound, seed))
    return out


def matrix(results: List[SuiteResult]) -> str:
    head = f"{'suite':<10} {'passed':>7} {'failed':>7} {'inconcl.':>9} {'random inconcl.':>16}  status"
    lines = [head]
    for r in results:
        lines.append(
            f"{r.name:<10} {r.passed:>7} {r.failed:>7} {r.inconclusive:>9} {r.random_inconclusive:>16}  "
            f"{'PASS' if r.ok else 'FAIL'}"
        )
        for f in r.failures[:10]:
            lines.append(f"    {f}")
    return "\n".join(lines)
