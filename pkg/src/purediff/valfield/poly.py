"""Dense univariate polynomials over any of the package's coefficient rings."""
from __future__ import annotations

from itertools import permutations
from math import comb


class Poly:
    """Immutable polynomial; ``coeffs[i]`` is the coefficient of x^i.

    ``ring`` supplies ``zero``, ``one`` and ``from_int``; coefficients must
    support ``+``, ``-``, ``*`` and ``==``.
    """

    __slots__ = ("ring", "coeffs")

    def __init__(self, coeffs, ring):
        c = list(coeffs)
        zero = ring.zero
        while c and c[-1] == zero:
            c.pop()
        self.ring = ring
        self.coeffs = tuple(c)

    @classmethod
    def x(cls, ring) -> "Poly":
        return cls((ring.zero, ring.one), ring)

    @classmethod
    def const(cls, c, ring) -> "Poly":
        return cls((c,), ring)

    @classmethod
    def monomial(cls, k: int, c, ring) -> "Poly":
        return cls((ring.zero,) * k + (c,), ring)

    @property
    def deg(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self):
        return self.coeffs[-1] if self.coeffs else self.ring.zero

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == self.ring.one

    def coeff(self, i: int):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else self.ring.zero

    def _wrap(self, other) -> "Poly":
        if isinstance(other, Poly):
            return other
        if isinstance(other, int):
            other = self.ring.from_int(other)
        return Poly((other,), self.ring)

    def __add__(self, other):
        other = self._wrap(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly([self.coeff(i) + other.coeff(i) for i in range(n)], self.ring)

    __radd__ = __add__

    def __neg__(self):
        return Poly([-c for c in self.coeffs], self.ring)

    def __sub__(self, other):
        return self + (-self._wrap(other))

    def __rsub__(self, other):
        return self._wrap(other) - self

    def __mul__(self, other):
        if not isinstance(other, Poly):
            if isinstance(other, int):
                other = self.ring.from_int(other)
            return Poly([c * other for c in self.coeffs], self.ring)
        if not self.coeffs or not other.coeffs:
            return Poly((), self.ring)
        zero = self.ring.zero
        out = [zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == zero:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return Poly(out, self.ring)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Poly":
        out = Poly.const(self.ring.one, self.ring)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def divmod(self, q: "Poly", inverse=None):
        """Quotient and remainder by q.

        Monic q needs only ring operations; otherwise ``inverse`` must invert
        the leading coefficient.
        """
        if q.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        if q.is_monic():
            inv = None
        elif inverse is not None:
            inv = inverse(q.lc)
        else:
            raise ValueError("non-monic divisor needs an inverse for its leading coefficient")
        rem = list(self.coeffs)
        dq = q.deg
        quo = [self.ring.zero] * max(len(rem) - dq, 0)
        for i in range(len(rem) - 1, dq - 1, -1):
            c = rem[i] if inv is None else rem[i] * inv
            if c == self.ring.zero:
                continue
            quo[i - dq] = c
            for j, b in enumerate(q.coeffs):
                rem[i - dq + j] = rem[i - dq + j] - c * b
        return Poly(quo, self.ring), Poly(rem[:dq], self.ring)

    def __mod__(self, q):
        return self.divmod(q)[1]

    def derivative(self) -> "Poly":
        return Poly([c * self.ring.from_int(i) for i, c in enumerate(self.coeffs)][1:], self.ring)

    def hasse(self, s: int) -> "Poly":
        """s-th Hasse derivative: sum over k of C(k, s) a_k x^(k-s)."""
        if s < 0:
            raise ValueError("order must be nonnegative")
        return Poly(
            [c * self.ring.from_int(comb(k, s)) for k, c in enumerate(self.coeffs) if k >= s], self.ring
        )

    def __call__(self, x):
        """Horner evaluation at a ring element or a polynomial."""
        if isinstance(x, Poly):
            acc = Poly((), x.ring)
            for c in reversed(self.coeffs):
                acc = acc * x + Poly((c,), x.ring)
            return acc
        acc = self.ring.zero
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def shift(self, c) -> "Poly":
        """f(x + c)."""
        return self(Poly((c, self.ring.one), self.ring))

    def map(self, fn, ring) -> "Poly":
        return Poly([fn(c) for c in self.coeffs], ring)

    def __repr__(self):
        return f"Poly({self})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == self.ring.zero:
                continue
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            cs = str(c)
            if not mono:
                terms.append(cs)
            elif c == self.ring.one:
                terms.append(mono)
            elif -c == self.ring.one:
                terms.append("-" + mono)
            else:
                simple_neg = cs.startswith("-") and not any(ch in cs[1:] for ch in "+- ")
                cs = f"({cs})" if any(ch in cs for ch in "+- ") and not simple_neg else cs
                terms.append(f"{cs}*{mono}")
        out = ""
        for t in reversed(terms):
            if not out:
                out = t
            elif t.startswith("-") and "+" not in t[1:] and " " not in t:
                out += " - " + t[1:]
            else:
                out += " + " + t
        return out


class PolyRing:
    """Ring descriptor for polynomials over ``base``; lets Poly coefficients be polys."""

    def __init__(self, base):
        self.base = base
        self.zero = Poly((), base)
        self.one = Poly((base.one,), base)

    def from_int(self, n: int) -> Poly:
        return Poly((self.base.from_int(n),), self.base)


def det(matrix, ring):
    """Determinant by the Leibniz expansion (ring operations only)."""
    n = len(matrix)
    if n == 0:
        return ring.one
    total = ring.zero
    for perm in permutations(range(n)):
        sign = 1
        seen = [False] * n
        for i in range(n):
            if not seen[i]:
                j, length = i, 0
                while not seen[j]:
                    seen[j] = True
                    j = perm[j]
                    length += 1
                if length % 2 == 0:
                    sign = -sign
        term = ring.one
        for i in range(n):
            term = term * matrix[i][perm[i]]
            if term == ring.zero:
                break
        else:
            total = total + term if sign > 0 else total - term
    return total


def det_field(matrix, zero, one):
    """Determinant by Gaussian elimination over a field with exact division."""
    m = [list(row) for row in matrix]
    n = len(m)
    result = one
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col] != zero), None)
        if pivot is None:
            return zero
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            result = -result
        pv = m[col][col]
        result = result * pv
        for r in range(col + 1, n):
            if m[r][col] != zero:
                f = m[r][col] / pv
                for c in range(col, n):
                    m[r][c] = m[r][c] - f * m[col][c]
    return result
