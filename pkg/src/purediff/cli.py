"""Command line front end.

Exit codes: 0 success, 2 validation error, 3 inconsistent report,
4 precision exhausted, 1 selftest failure or inconclusive verdict.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from . import selftest
from .errors import NotConcrete, PrecisionExhausted, SpecValidationError, UnsupportedForm
from .oracle import different_monogenic
from .ordgrp import INF
from .serialize import dumps_report, load_spec, run_document, text_report
from .valfield import build_model

EXIT_OK, EXIT_FAIL, EXIT_VALIDATION, EXIT_INCONSISTENT, EXIT_PRECISION = 0, 1, 2, 3, 4


def _load(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise SpecValidationError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise SpecValidationError(f"{path} is not valid JSON: {exc}") from exc
    return load_spec(doc)


def _guarded(fn):
    def run(args) -> int:
        try:
            return fn(args)
        except (SpecValidationError, UnsupportedForm, NotConcrete) as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_VALIDATION
        except PrecisionExhausted as exc:
            print(f"precision exhausted: {exc}", file=sys.stderr)
            return EXIT_PRECISION

    return run


@_guarded
def cmd_report(args) -> int:
    sd = _load(args.spec)
    fmt = args.format or sd.options.get("format", "json")
    rep = run_document(sd)
    print(dumps_report(rep) if fmt == "json" else text_report(rep))
    return EXIT_INCONSISTENT if rep.inconsistent else EXIT_OK


@_guarded
def cmd_oracle_different(args) -> int:
    sd = _load(args.spec)
    if sd.case != "concrete":
        raise NotConcrete("the different oracle needs a concrete field and polynomial")
    g = sd.g
    if g is None:
        from .omega import artin_schreier_poly, kummer_poly

        g = kummer_poly(sd.field, sd.a, sd.q) if sd.kind == "kummer" else artin_schreier_poly(sd.field, sd.a)
    model = build_model(sd.field, g)
    L = model.L
    d = different_monogenic(L)
    out = {"extension": L.describe(), "kind": L.kind, "different": "inf" if d is INF else str(d)}
    if not model.uses_eta:
        out["generator"] = str(model.theta)
    print(json.dumps(out))
    return EXIT_OK


def cmd_selftest(args) -> int:
    results = selftest.run(args.only, args.window_bound, args.seed)
    print(selftest.matrix(results))
    return EXIT_OK if all(r.ok for r in results) else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="purediff", description="Kaehler differentials of pure extensions")
    sub = parser.add_subparsers(dest="command", required=True)

    rp = sub.add_parser("report", help="report on an extension spec")
    rp.add_argument("spec")
    rp.add_argument("--format", choices=["json", "text"])
    rp.set_defaults(func=cmd_report)

    st = sub.add_parser("selftest", help="run the oracle corpus and invariant suites")
    st.add_argument("--only", choices=sorted(selftest.SUITES))
    st.add_argument("--window-bound", type=int, default=None)
    st.add_argument("--seed", type=int, default=0)
    st.set_defaults(func=cmd_selftest)

    orc = sub.add_parser("oracle", help="independent verifiers")
    osub = orc.add_subparsers(dest="oracle_command", required=True)
    od = osub.add_parser("different", help="valuation of the different of a concrete extension")
    od.add_argument("spec")
    od.set_defaults(func=cmd_oracle_different)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
