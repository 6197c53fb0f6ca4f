"""Simple extensions L = K[x]/(g) of a complete discretely valued base.

Only two shapes are built, and both are recognized from a single Newton
polygon slope ``lam = v(a_0)/n``:

* ``lam`` has denominator n: totally ramified, ``v(eta) = lam``;
* ``lam`` is an integer and the residue polynomial of
  ``g(pi^lam y) / pi^(n lam)`` is irreducible of degree n: inertial, the
  residue of ``eta / pi^lam`` generates the residue extension.

In both shapes the powers ``1, eta, ..., eta^(n-1)`` form a valuation basis,
so ``v(sum c_i eta^i) = min(v(c_i) + i*v(eta))`` for reduced representatives.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import floor
from typing import Optional

from ..errors import SpecValidationError, UnsupportedForm
from ..ordgrp import INF, ValueGroup
from .poly import Poly
from .residue import FpPoly, RatFunc, ResidueField

MAX_FACTOR_CANDIDATES = 200_000

TRIVIAL, INERTIAL, RAMIFIED = "trivial", "inertial", "ramified"
_ZERO = Fraction(0)


@dataclass(frozen=True, eq=False)
class ExtensionField:
    base: object
    g: Poly
    kind: str
    e: int
    f: int
    gamma: object  # v(eta): Fraction, or INF when eta = 0 (degree one only)
    lam: Fraction  # Newton polygon slope of g
    residue_poly: Optional[Poly]  # minimal polynomial of the residue of eta/pi^lam

    @property
    def n(self) -> int:
        return self.g.deg

    @property
    def value_group(self) -> ValueGroup:
        return _value_group(self.e)

    @property
    def residue_field(self) -> ResidueField:
        return self.base.residue_field

    def describe(self) -> str:
        return f"{self.base.describe()}[x]/({self.g})"

    def reduce(self, f: Poly) -> Poly:
        return f.divmod(self.g)[1]

    def eval_val(self, f: Poly):
        """v(f(eta)) for f in K[x]; INF when g divides f."""
        K = self.base
        r = self.reduce(f)
        if r.is_zero():
            return INF
        best = INF
        for i, c in enumerate(r.coeffs):
            if K.is_exact_zero(c):
                continue
            v = K.val(c)
            if v is INF:
                continue
            v = v + i * self.lam
            if best is INF or v < best:
                best = v
        return best

    def x(self) -> Poly:
        return Poly.x(self.base)

    def const(self, c) -> Poly:
        return Poly.const(c, self.base)


@lru_cache(maxsize=None)
def _value_group(e: int) -> ValueGroup:
    return ValueGroup.of(Fraction(1, e))


def _scaled_coeffs(K, g: Poly, lam: int):
    """Coefficients of g(pi^lam y) / pi^(n lam)."""
    n = g.deg
    if lam == 0:
        return list(g.coeffs)
    return [c * K.pi_power(-(n - i) * lam) for i, c in enumerate(g.coeffs)]


def build_extension(K, g: Poly) -> ExtensionField:
    if g.deg < 1:
        raise SpecValidationError("g must have positive degree")
    if not g.is_monic():
        raise SpecValidationError("g must be monic")
    n = g.deg
    a0 = g.coeff(0)
    if K.is_exact_zero(a0):
        if n == 1:
            return ExtensionField(K, g, TRIVIAL, 1, 1, INF, Fraction(0), Poly.x(K.residue_field))
        raise SpecValidationError("g is reducible: it is divisible by x")
    vals = [K.val(c) for c in g.coeffs[:-1]]
    lam = _ZERO if vals[0] == 0 else Fraction(vals[0]) / n
    for i in range(1, n):
        if vals[i] is not INF and vals[i] < (n - i) * lam:
            raise UnsupportedForm(
                f"Newton polygon of g has more than one slope; factor g first (coefficient of x^{i})"
            )
    if n > 1 and lam.denominator == n:
        return ExtensionField(K, g, RAMIFIED, n, 1, lam, lam, None)
    if lam.denominator != 1:
        raise UnsupportedForm(
            f"slope {lam} has ramification {lam.denominator} strictly between 1 and {n}; "
            "eta is neither a ramified nor an inertial generator"
        )
    RF = K.residue_field
    h = _scaled_coeffs(K, g, int(lam))
    if not RF.with_u:
        ints = tuple(K.residue_int(c) for c in h)
        if not _irreducible_fp(RF.p, ints):
            if _squarefree_fp(RF.p, ints):
                raise SpecValidationError(
                    f"g is reducible: its residue polynomial {_fp_str(RF.p, ints)} splits into coprime factors"
                )
            raise UnsupportedForm(
                f"residue polynomial {_fp_str(RF.p, ints)} is reducible; "
                "the residue of eta does not generate the residue extension"
            )
        kind = TRIVIAL if n == 1 else INERTIAL
        return ExtensionField(K, g, kind, 1, n, lam, lam, _fp_poly(RF.p, ints))
    rpoly = Poly([K.residue(c) for c in h], RF)
    if not is_irreducible(rpoly):
        if separable(rpoly) and _coprime_to_derivative(rpoly):
            raise SpecValidationError(f"g is reducible: its residue polynomial {rpoly} splits into coprime factors")
        raise UnsupportedForm(
            f"residue polynomial {rpoly} is reducible; the residue of eta does not generate the residue extension"
        )
    kind = TRIVIAL if n == 1 else INERTIAL
    return ExtensionField(K, g, kind, 1, n, lam, lam, rpoly)


@dataclass(frozen=True)
class Model:
    """L presented by the minimal polynomial of theta, an element of K[x]/(g)
    (a polynomial in the root eta of g) whose powers span the valuation ring."""

    L: ExtensionField
    theta: Poly

    @property
    def uses_eta(self) -> bool:
        return self.theta == Poly.x(self.L.base)


def build_model(K, g: Poly) -> Model:
    """build_extension, falling back over Q_p to a search for another ring generator."""
    try:
        return Model(build_extension(K, g), Poly.x(K))
    except UnsupportedForm:
        if K.char != 0:
            raise
    from .generator import find_generator

    theta, chi = find_generator(K, g)
    return Model(build_extension(K, chi), theta)


def residue_minpoly(L: ExtensionField) -> Optional[Poly]:
    """Minimal polynomial over the residue field of the residue of eta/pi^lam."""
    return L.residue_poly


def separable(q: Poly) -> bool:
    return not q.derivative().is_zero()


def eval_val(f: Poly, L: ExtensionField):
    return L.eval_val(f)


# -- irreducibility over F_p and F_p(u) ---------------------------------

def _rf_inverse(c: RatFunc) -> RatFunc:
    return c.inverse()


def poly_gcd(a: Poly, b: Poly) -> Poly:
    while not b.is_zero():
        a, b = b, a.divmod(b, _rf_inverse)[1]
    if a.is_zero():
        return a
    return a * a.lc.inverse()


def _coprime_to_derivative(q: Poly) -> bool:
    d = q.derivative()
    return not d.is_zero() and poly_gcd(q, d).deg == 0


def is_irreducible(q: Poly) -> bool:
    """Irreducibility of a polynomial over F_p or F_p(u) by exhaustive factor search."""
    if q.deg < 1:
        return False
    q = q * q.lc.inverse()
    if q.deg == 1:
        return True
    p = q.ring.p
    if all(c.is_const() for c in q.coeffs):
        return _irreducible_fp(p, tuple(c.num.coeffs[0] if c.num.coeffs else 0 for c in q.coeffs))
    return _irreducible_fpu(q)


@lru_cache(maxsize=None)
def _irreducible_fp(p: int, coeffs: tuple) -> bool:
    n = len(coeffs) - 1
    for d in range(1, n // 2 + 1):
        for low in product(range(p), repeat=d):
            if _divides_fp(p, coeffs, low + (1,)):
                return False
    return True


@lru_cache(maxsize=None)
def _fp_poly(p: int, coeffs: tuple) -> Poly:
    return Poly([RatFunc.const(p, c) for c in coeffs], ResidueField(p, False))


@lru_cache(maxsize=None)
def _fp_str(p: int, coeffs: tuple) -> str:
    return str(_fp_poly(p, coeffs))


@lru_cache(maxsize=None)
def _squarefree_fp(p: int, coeffs: tuple) -> bool:
    """gcd(q, q') = 1 for q over F_p given by integer coefficients."""
    q = FpPoly(p, coeffs)
    d = FpPoly(p, [i * c for i, c in enumerate(coeffs)][1:])
    return not d.is_zero() and q.gcd(d).deg == 0


def _divides_fp(p: int, f: tuple, q: tuple) -> bool:
    rem = list(f)
    dq = len(q) - 1
    for i in range(len(rem) - 1, dq - 1, -1):
        c = rem[i] % p
        if c:
            for j, b in enumerate(q):
                rem[i - dq + j] = (rem[i - dq + j] - c * b) % p
    return not any(x % p for x in rem[:dq])


def _lcm_fp(a: FpPoly, b: FpPoly) -> FpPoly:
    return (a * b).divmod(a.gcd(b))[0].monic()


def _irreducible_fpu(q: Poly) -> bool:
    RF = q.ring
    p = RF.p
    n = q.deg
    D = FpPoly(p, (1,))
    for c in q.coeffs:
        D = _lcm_fp(D, c.den)
    Drf = RatFunc(D)
    # D^n q(z/D) is monic with coefficients in F_p[u]
    ints = [(c * Drf ** (n - i)).num for i, c in enumerate(q.coeffs)]
    bound = max(Fraction(max(c.deg, 0), n - i) for i, c in enumerate(ints[:-1]))
    qz = Poly([RatFunc(c) for c in ints], RF)
    for d in range(1, n // 2 + 1):
        degs = [floor((d - j) * bound) for j in range(d)]
        count = 1
        for b in degs:
            count *= p ** (b + 1)
        if count > MAX_FACTOR_CANDIDATES:
            raise UnsupportedForm(f"irreducibility search over F_{p}(u) too large ({count} candidates)")
        pools = [list(product(range(p), repeat=b + 1)) for b in degs]
        for choice in product(*pools):
            cand = Poly([RatFunc(FpPoly(p, c)) for c in choice] + [RF.one], RF)
            if qz.divmod(cand)[1].is_zero():
                return False
    return True
