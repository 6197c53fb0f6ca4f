"""Exact arithmetic in F_p and F_p(u), the residue fields used by the concrete layer."""
from __future__ import annotations

from dataclasses import dataclass
from functools import total_ordering


def _trim(coeffs, p):
    c = [x % p for x in coeffs]
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


@dataclass(frozen=True)
class FpPoly:
    """A polynomial in u over F_p; ``coeffs`` low degree first, no trailing zeros."""

    p: int
    coeffs: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _trim(self.coeffs, self.p))

    @classmethod
    def const(cls, p, c):
        return cls(p, (c,))

    @property
    def deg(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lc(self) -> int:
        return self.coeffs[-1]

    def __add__(self, other):
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        return FpPoly(self.p, [(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)])

    def __neg__(self):
        return FpPoly(self.p, [-x for x in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return FpPoly(self.p, [other * x for x in self.coeffs])
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return FpPoly(self.p)
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return FpPoly(self.p, out)

    __rmul__ = __mul__

    def divmod(self, other):
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        p = self.p
        inv = pow(other.lc, -1, p)
        rem = list(self.coeffs)
        q = [0] * max(len(rem) - len(other.coeffs) + 1, 0)
        db = other.deg
        for i in range(len(rem) - 1, db - 1, -1):
            c = rem[i] * inv % p
            if c:
                q[i - db] = c
                for j, y in enumerate(other.coeffs):
                    rem[i - db + j] = (rem[i - db + j] - c * y) % p
        return FpPoly(p, q), FpPoly(p, rem)

    def monic(self):
        if self.is_zero():
            return self
        return self * pow(self.lc, -1, self.p)

    def gcd(self, other):
        a, b = self, other
        while not b.is_zero():
            a, b = b, a.divmod(b)[1]
        return a.monic()

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = "" if i == 0 else ("u" if i == 1 else f"u^{i}")
            if not mono:
                terms.append(str(c))
            else:
                terms.append(mono if c == 1 else f"{c}*{mono}")
        return " + ".join(reversed(terms))


@total_ordering
class RatFunc:
    """An element of F_p(u) as a reduced fraction with monic denominator.

    Constants of F_p are the degree-0 elements, so the same type serves both
    residue fields.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: FpPoly, den: FpPoly = None):
        p = num.p
        if den is None:
            den = FpPoly(p, (1,))
        if den.is_zero():
            raise ZeroDivisionError("zero denominator in F_p(u)")
        if num.is_zero():
            self.num, self.den = num, FpPoly(p, (1,))
            return
        if den.deg > 0:
            g = num.gcd(den)
            if g.deg > 0:
                num, den = num.divmod(g)[0], den.divmod(g)[0]
        c = pow(den.lc, -1, p)
        self.num, self.den = num * c, den * c

    @classmethod
    def const(cls, p: int, c: int) -> "RatFunc":
        return cls(FpPoly(p, (c,)))

    @classmethod
    def u(cls, p: int) -> "RatFunc":
        return cls(FpPoly(p, (0, 1)))

    @property
    def p(self) -> int:
        return self.num.p

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_const(self) -> bool:
        return self.num.deg <= 0 and self.den.deg == 0

    def _lift(self, other):
        if isinstance(other, int):
            return RatFunc.const(self.p, other)
        return other

    def __add__(self, other):
        other = self._lift(other)
        if self.den == other.den:
            return RatFunc(self.num + other.num, self.den)
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        other = self._lift(other)
        return RatFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in F_p(u)")
        return RatFunc(self.den, self.num)

    def __truediv__(self, other):
        return self * self._lift(other).inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = RatFunc.const(self.p, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, int):
            other = RatFunc.const(self.p, other)
        if not isinstance(other, RatFunc):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __lt__(self, other):
        # arbitrary but fixed order, used only to sort deterministically
        return (self.num.coeffs, self.den.coeffs) < (other.num.coeffs, other.den.coeffs)

    def __hash__(self):
        return hash((self.num.coeffs, self.den.coeffs, self.p))

    def __repr__(self):
        return f"RatFunc({self})"

    def __str__(self):
        if self.den.deg == 0:
            return str(self.num)
        return f"({self.num})/({self.den})"


@dataclass(frozen=True)
class ResidueField:
    """F_p (``with_u=False``) or F_p(u)."""

    p: int
    with_u: bool = False

    @property
    def zero(self):
        return RatFunc.const(self.p, 0)

    @property
    def one(self):
        return RatFunc.const(self.p, 1)

    def from_int(self, n: int):
        return RatFunc.const(self.p, n)

    @property
    def char(self) -> int:
        return self.p

    def describe(self) -> str:
        return f"F_{self.p}(u)" if self.with_u else f"F_{self.p}"
