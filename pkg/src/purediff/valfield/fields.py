"""Base fields with exact valuations: Q with the p-adic valuation, and
t-adic Laurent series over F_p or F_p(u) with explicit precision.

Concrete valuations are rank one, so they are returned as plain
``Fraction`` values (or ``INF``); the omega layer wraps them into group
values when it builds reports.
"""
from __future__ import annotations

import ast
from fractions import Fraction
from functools import lru_cache
from typing import Optional

from ..errors import PrecisionExhausted, SpecValidationError
from ..ordgrp import INF
from .residue import FpPoly, RatFunc, ResidueField


def vp_int(n: int, p: int) -> int:
    """Multiplicity of the prime p in the nonzero integer n."""
    n = abs(n)
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


@lru_cache(maxsize=1024)
def _int_fraction(k: int) -> Fraction:
    return Fraction(k)


@lru_cache(maxsize=1024)
def _fraction_power(p: int, k: int) -> Fraction:
    return Fraction(p) ** k


class Series:
    """A truncated Laurent series ``sum c_k t^k + O(t^prec)``.

    ``prec is None`` marks an exact (finite) series.  Coefficients are
    :class:`RatFunc` and every stored exponent is below ``prec``.
    """

    __slots__ = ("field", "terms", "prec")

    def __init__(self, field: "LaurentSeriesField", terms: dict, prec: Optional[int] = None):
        clean = {}
        for k, c in terms.items():
            if isinstance(c, int):
                c = RatFunc.const(field.p, c)
            if c.is_zero():
                continue
            if prec is not None and k >= prec:
                continue
            clean[k] = c
        self.field = field
        self.terms = clean
        self.prec = prec

    # -- helpers --------------------------------------------------------
    def _lift(self, other) -> "Series":
        if isinstance(other, Series):
            return other
        if isinstance(other, int):
            return Series(self.field, {0: RatFunc.const(self.field.p, other)})
        if isinstance(other, RatFunc):
            return Series(self.field, {0: other})
        raise TypeError(f"cannot combine a series with {type(other).__name__}")

    def _low(self):
        """A lower bound for the valuation (exact when terms exist)."""
        if self.terms:
            return min(self.terms)
        return INF if self.prec is None else self.prec

    @staticmethod
    def _minprec(*ps):
        ps = [p for p in ps if p is not None and p is not INF]
        return min(ps) if ps else None

    def is_exact(self) -> bool:
        return self.prec is None

    def val(self):
        if self.terms:
            return Fraction(min(self.terms))
        if self.prec is None:
            return INF
        raise PrecisionExhausted(f"series is O(t^{self.prec}); its valuation is unknown")

    def coeff(self, k: int) -> RatFunc:
        if self.prec is not None and k >= self.prec:
            raise PrecisionExhausted(f"coefficient of t^{k} lies beyond O(t^{self.prec})")
        return self.terms.get(k, RatFunc.const(self.field.p, 0))

    # -- arithmetic -----------------------------------------------------
    def __add__(self, other):
        other = self._lift(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out[k] + c if k in out else c
        return Series(self.field, out, self._minprec(self.prec, other.prec))

    __radd__ = __add__

    def __neg__(self):
        return Series(self.field, {k: -c for k, c in self.terms.items()}, self.prec)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        other = self._lift(other)
        la, lb = self._low(), other._low()
        precs = []
        if self.prec is not None and lb is not INF:
            precs.append(self.prec + lb)
        if other.prec is not None and la is not INF:
            precs.append(other.prec + la)
        if la is INF or lb is INF:
            return Series(self.field, {}, None)
        prec = min(precs) if precs else None
        out = {}
        for i, a in self.terms.items():
            for j, b in other.terms.items():
                k = i + j
                if prec is not None and k >= prec:
                    continue
                out[k] = out[k] + a * b if k in out else a * b
        return Series(self.field, out, prec)

    __rmul__ = __mul__

    def inverse(self) -> "Series":
        v = self.val()
        if v is INF:
            raise ZeroDivisionError("inverse of zero series")
        v = int(v)
        c0 = self.terms[v]
        if self.prec is None and len(self.terms) == 1:
            return Series(self.field, {-v: c0.inverse()})
        rel = self.field.prec if self.prec is None else min(self.field.prec, self.prec - v)
        unit = [self.terms.get(v + k, RatFunc.const(self.field.p, 0)) for k in range(rel)]
        inv0 = c0.inverse()
        w = [inv0]
        for k in range(1, rel):
            acc = RatFunc.const(self.field.p, 0)
            for j in range(1, k + 1):
                if not unit[j].is_zero():
                    acc = acc + unit[j] * w[k - j]
            w.append(-(acc * inv0))
        return Series(self.field, {k - v: c for k, c in enumerate(w)}, rel - v)

    def __truediv__(self, other):
        return self * self._lift(other).inverse()

    def __rtruediv__(self, other):
        return self._lift(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = self.field.one
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, (int, RatFunc)):
            other = self._lift(other)
        if not isinstance(other, Series):
            return NotImplemented
        return self.prec == other.prec and self.terms == other.terms

    def __hash__(self):
        return hash((tuple(sorted(self.terms.items())), self.prec))

    def __repr__(self):
        return f"Series({self})"

    def __str__(self):
        parts = []
        for k in sorted(self.terms):
            c = self.terms[k]
            mono = "" if k == 0 else ("t" if k == 1 else f"t^{k}")
            cs = str(c)
            if not mono:
                parts.append(cs)
            elif c == 1:
                parts.append(mono)
            else:
                if " " in cs:
                    cs = f"({cs})"
                parts.append(f"{cs}*{mono}")
        if self.prec is not None:
            parts.append(f"O(t^{self.prec})")
        return " + ".join(parts) if parts else "0"


class _ElementParser(ast.NodeVisitor):
    """Evaluate a restricted arithmetic expression in the field's generators."""

    def __init__(self, field, names):
        self.field = field
        self.names = names

    def visit_Expression(self, node):
        return self.visit(node.body)

    def visit_Constant(self, node):
        if isinstance(node.value, int) and not isinstance(node.value, bool):
            return self.field.from_int(node.value)
        raise SpecValidationError(f"unsupported literal {node.value!r}")

    def visit_Name(self, node):
        if node.id not in self.names:
            raise SpecValidationError(f"unknown symbol {node.id!r} for {self.field.describe()}")
        return self.names[node.id]

    def visit_UnaryOp(self, node):
        x = self.visit(node.operand)
        if isinstance(node.op, ast.USub):
            return -x
        if isinstance(node.op, ast.UAdd):
            return x
        raise SpecValidationError("unsupported unary operator")

    def visit_BinOp(self, node):
        op = node.op
        if isinstance(op, ast.Pow):
            e = node.right
            sign = 1
            if isinstance(e, ast.UnaryOp) and isinstance(e.op, ast.USub):
                sign, e = -1, e.operand
            if not (isinstance(e, ast.Constant) and isinstance(e.value, int)):
                raise SpecValidationError("exponents must be integer literals")
            return self.field.power(self.visit(node.left), sign * e.value)
        a, b = self.visit(node.left), self.visit(node.right)
        if isinstance(op, ast.Add):
            return a + b
        if isinstance(op, ast.Sub):
            return a - b
        if isinstance(op, ast.Mult):
            return a * b
        if isinstance(op, ast.Div):
            if b == self.field.zero:
                raise SpecValidationError("division by zero in element")
            return self.field.divide(a, b)
        raise SpecValidationError("unsupported operator")

    def generic_visit(self, node):
        raise SpecValidationError(f"unsupported syntax {type(node).__name__}")


def _parse(field, text, names):
    if isinstance(text, int):
        return field.from_int(text)
    src = str(text).replace("^", "**").strip()
    if not src:
        raise SpecValidationError("empty element")
    try:
        tree = ast.parse(src, mode="eval")
    except SyntaxError as exc:
        raise SpecValidationError(f"cannot parse element {text!r}") from exc
    return _ElementParser(field, names).visit(tree)


class RationalPadic:
    """Q with the p-adic valuation; elements are exact ``Fraction`` values.

    The completion is never built: every polynomial handled is checked to
    stay irreducible over Q_p, so norms from Q(eta) compute the valuation.
    """

    tag = "Qp"

    def __init__(self, p: int):
        from ..ordgrp import _is_prime

        if not _is_prime(p):
            raise SpecValidationError(f"p must be prime, got {p}")
        self.p = p
        self.zero = Fraction(0)
        self.one = Fraction(1)

    def __eq__(self, other):
        return isinstance(other, RationalPadic) and other.p == self.p

    def __hash__(self):
        return hash(("Qp", self.p))

    @property
    def char(self) -> int:
        return 0

    @property
    def residue_char(self) -> int:
        return self.p

    @property
    def vp(self):
        return Fraction(1)

    @property
    def residue_field(self) -> ResidueField:
        return ResidueField(self.p, False)

    @property
    def uniformizer(self) -> Fraction:
        return Fraction(self.p)

    def from_int(self, n: int) -> Fraction:
        return Fraction(n)

    def val(self, x):
        if not x:
            return INF
        return _int_fraction(vp_int(x.numerator, self.p) - vp_int(x.denominator, self.p))

    def residue(self, x) -> RatFunc:
        x = Fraction(x)
        if self.val(x) < 0:
            raise ValueError(f"{x} is not in the valuation ring")
        if x == 0:
            return RatFunc.const(self.p, 0)
        return RatFunc.const(self.p, x.numerator * pow(x.denominator, -1, self.p))

    def residue_int(self, x) -> int:
        """The residue of an integral x as an integer in [0, p)."""
        d = x.denominator
        if d == 1:
            return x.numerator % self.p
        if d % self.p == 0:
            raise ValueError(f"{x} is not in the valuation ring")
        return x.numerator * pow(d, -1, self.p) % self.p

    def inverse(self, x):
        return 1 / Fraction(x)

    def divide(self, a, b):
        return Fraction(a) / Fraction(b)

    def power(self, x, k: int):
        return Fraction(x) ** k

    def pi_power(self, k: int) -> Fraction:
        return _fraction_power(self.p, k)

    def parse(self, text) -> Fraction:
        if isinstance(text, Fraction):
            return text
        return Fraction(_parse(self, text, {}))

    def format(self, x) -> str:
        return str(Fraction(x))

    def is_exact_zero(self, x) -> bool:
        return x == 0

    def describe(self) -> str:
        return f"Q_{self.p}"

    def to_json(self) -> dict:
        return {"field": "Qp", "p": self.p}


class LaurentSeriesField:
    """F_p((t)) or F_p(u)((t)) with the t-adic valuation.

    ``prec`` is the relative precision used when inverting non-monomial
    series; exact inputs stay exact under ring operations.
    """

    def __init__(self, p: int, with_u: bool = False, prec: int = 64):
        from ..ordgrp import _is_prime

        if not _is_prime(p):
            raise SpecValidationError(f"p must be prime, got {p}")
        if prec < 1:
            raise SpecValidationError("precision must be positive")
        self.p = p
        self.with_u = with_u
        self.prec = prec
        self.zero = Series(self, {})
        self.one = Series(self, {0: RatFunc.const(p, 1)})

    @property
    def tag(self) -> str:
        return "Fp_u_t" if self.with_u else "Fp_t"

    def __eq__(self, other):
        return (
            isinstance(other, LaurentSeriesField)
            and (other.p, other.with_u, other.prec) == (self.p, self.with_u, self.prec)
        )

    def __hash__(self):
        return hash((self.tag, self.p, self.prec))

    @property
    def char(self) -> int:
        return self.p

    @property
    def residue_char(self) -> int:
        return self.p

    @property
    def vp(self):
        return INF

    @property
    def residue_field(self) -> ResidueField:
        return ResidueField(self.p, self.with_u)

    @property
    def t(self) -> Series:
        return Series(self, {1: RatFunc.const(self.p, 1)})

    @property
    def u(self) -> Series:
        if not self.with_u:
            raise SpecValidationError("this field has no variable u")
        return Series(self, {0: RatFunc.u(self.p)})

    @property
    def uniformizer(self) -> Series:
        return self.t

    def from_int(self, n: int) -> Series:
        return Series(self, {0: RatFunc.const(self.p, n)})

    def from_residue(self, c: RatFunc) -> Series:
        return Series(self, {0: c})

    def val(self, x: Series):
        return x.val()

    def residue(self, x: Series) -> RatFunc:
        if x.val() < 0:
            raise ValueError(f"{x} is not in the valuation ring")
        return x.coeff(0)

    def residue_int(self, x: Series) -> int:
        """The residue of an integral x in F_p; only for the field without u."""
        if self.with_u:
            raise TypeError("residues lie in F_p(u), not F_p")
        r = self.residue(x)
        return r.num.coeffs[0] if r.num.coeffs else 0

    def inverse(self, x: Series) -> Series:
        return x.inverse()

    def divide(self, a, b):
        return a / b

    def power(self, x, k: int):
        return x ** k

    def pi_power(self, k: int) -> Series:
        return Series(self, {k: RatFunc.const(self.p, 1)})

    def parse(self, text) -> Series:
        if isinstance(text, Series):
            return text
        names = {"t": self.t}
        if self.with_u:
            names["u"] = self.u
        return _parse(self, text, names)

    def format(self, x: Series) -> str:
        return str(x)

    def is_exact_zero(self, x) -> bool:
        return x == self.zero

    def describe(self) -> str:
        inner = f"F_{self.p}(u)" if self.with_u else f"F_{self.p}"
        return f"{inner}((t))"

    def to_json(self) -> dict:
        return {"field": self.tag, "p": self.p, "prec": self.prec}


def field_from_json(doc: dict):
    tag = doc.get("field")
    p = doc.get("p")
    if not isinstance(p, int):
        raise SpecValidationError("field descriptor needs an integer 'p'")
    if tag == "Qp":
        return RationalPadic(p)
    if tag in ("Fp_t", "Fp_u_t"):
        return LaurentSeriesField(p, tag == "Fp_u_t", int(doc.get("prec", 64)))
    raise SpecValidationError(f"unknown field tag {tag!r}")


__all__ = [
    "FpPoly",
    "LaurentSeriesField",
    "RationalPadic",
    "Series",
    "field_from_json",
    "vp_int",
]
