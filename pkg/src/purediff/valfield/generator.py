"""Search for a generator of the valuation ring of an unramified extension of Q_p.

``build_extension`` needs the residue of the root eta (suitably scaled) to
generate the residue extension. When it does not, for example for
``x^2 - 5`` over Q_2, another element theta of ``Q(eta)`` may. The search
below walks the residue tower: given theta whose characteristic polynomial
reduces to ``psi^m``, it lifts psi to phi, rescales ``phi(theta)`` to a unit
u and either takes u as the new theta (its residue has larger degree) or
subtracts the part of u already explained by theta and repeats with a
better approximation of a root of psi.

Every conclusion that g is reducible comes from an exact witness: a zero
divisor, a non-integral unit candidate, or coprime residue factors of an
integral characteristic polynomial. Ramified extensions surface as
non-integral values and are reported as unsupported.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import List, Tuple

from ..errors import SpecValidationError, UnsupportedForm
from .fields import vp_int
from .linalg import char_poly_rational
from .poly import Poly
from .residue import FpPoly

MAX_STEPS = 64
MAX_RESIDUE_SEARCH = 50_000


@lru_cache(maxsize=None)
def fp_factor(p: int, coeffs: tuple) -> Tuple[Tuple[tuple, int], ...]:
    """Factorization of a monic polynomial over F_p as ((factor, multiplicity), ...)."""
    cur = FpPoly(p, coeffs)
    out: List[Tuple[tuple, int]] = []
    d = 1
    while cur.deg >= 2 * d:
        for low in product(range(p), repeat=d):
            cand = FpPoly(p, low + (1,))
            m = 0
            while True:
                q, r = cur.divmod(cand)
                if not r.is_zero():
                    break
                cur, m = q, m + 1
            if m:
                out.append((cand.coeffs, m))
        d += 1
    if cur.deg > 0:
        coeffs = cur.monic().coeffs
        for i, (f, m) in enumerate(out):
            if f == coeffs:
                out[i] = (f, m + 1)
                break
        else:
            out.append((coeffs, 1))
    return tuple(out)


def _integral(p: int, cs) -> bool:
    return all(c.denominator % p for c in cs)


def _residue(p: int, cs) -> tuple:
    return tuple(c.numerator * pow(c.denominator, -1, p) % p for c in cs)


def _squarefree(chi: Poly, K) -> bool:
    a, b = chi, chi.derivative()
    while not b.is_zero():
        a, b = b, a.divmod(b, K.inverse)[1]
    return a.deg == 0


@dataclass
class _Search:
    K: object
    g: Poly

    @property
    def p(self) -> int:
        return self.K.p

    def reduce(self, f: Poly) -> Poly:
        return f.divmod(self.g)[1]

    def compose(self, phi: Poly, theta: Poly) -> Poly:
        acc = Poly((), self.K)
        for c in reversed(phi.coeffs):
            acc = self.reduce(acc * theta + Poly.const(c, self.K))
        return acc

    def charpoly(self, theta: Poly) -> Poly:
        return Poly(char_poly_rational(theta, self.g), self.K)

    def factors(self, chi: Poly):
        f = fp_factor(self.p, _residue(self.p, chi.coeffs))
        if len(f) > 1:
            raise SpecValidationError(
                "g is reducible: an element of K[x]/(g) has a characteristic polynomial "
                "whose reduction has coprime factors"
            )
        return f[0]

    def lift(self, coeffs) -> Poly:
        return Poly([Fraction(c) for c in coeffs], self.K)

    def full_degree(self, u: Poly, prev: Poly, chi_u: Poly):
        """u itself, or u + p^k prev with the same residue data and squarefree characteristic polynomial."""
        if _squarefree(chi_u, self.K):
            return u, chi_u
        target = _residue(self.p, chi_u.coeffs)
        for k in range(1, MAX_STEPS):
            z = self.reduce(u + prev * self.K.pi_power(k))
            chi = self.charpoly(z)
            if _integral(self.p, chi.coeffs) and _residue(self.p, chi.coeffs) == target and _squarefree(chi, self.K):
                return z, chi
        raise UnsupportedForm("could not perturb a generator candidate to full degree")


def find_generator(K, g: Poly) -> Tuple[Poly, Poly]:
    """(theta, chi): theta as a polynomial in eta with Z_p[theta] the valuation ring
    of K[x]/(g), and chi its minimal polynomial, whose reduction is irreducible of degree n.

    Only for K = Q_p. Raises SpecValidationError when g is shown reducible and
    UnsupportedForm when the extension is ramified or the search gives up.
    """
    if K.char != 0:
        raise UnsupportedForm("the generator search is implemented over Q_p only")
    if not g.is_monic() or g.deg < 1:
        raise SpecValidationError("g must be monic of positive degree")
    S = _Search(K, g)
    p, n = K.p, g.deg
    theta = Poly.x(K)
    chi = g
    if not _squarefree(g, K):
        raise SpecValidationError("g is reducible: it has a repeated factor")
    for _ in range(MAX_STEPS):
        integral = _integral(p, chi.coeffs)
        if integral:
            psi, m = S.factors(chi)
            if m == 1:
                return theta, chi
            phi = S.lift(psi)
        else:
            psi, phi = (0, 1), Poly.x(K)
        d = len(psi) - 1
        for _ in range(MAX_STEPS):
            w = S.compose(phi, theta)
            N = S.charpoly(w).coeff(0)
            if N == 0:
                raise SpecValidationError("g is reducible: K[x]/(g) has zero divisors")
            v = Fraction(vp_int(N.numerator, p) - vp_int(N.denominator, p), n)
            if v.denominator != 1:
                raise UnsupportedForm(f"K[x]/(g) is ramified or g is reducible (an element has value {v})")
            if integral and v <= 0:
                raise SpecValidationError("g is reducible: a residue root of psi lifts to a unit")
            u = w * K.pi_power(-int(v))
            chi_u = S.charpoly(u)
            if not _integral(p, chi_u.coeffs):
                raise SpecValidationError("g is reducible: an element of norm value zero is not integral")
            psi_u, _ = S.factors(chi_u)
            if not integral or len(psi_u) - 1 > d:
                theta, chi = S.full_degree(u, theta, chi_u)
                break
            h = _residue_combination(S, u, theta, d)
            if h is not None:
                phi = phi - h * K.pi_power(int(v))
                continue
            # the residue of u is new but no larger in degree: mix in theta
            for c in range(1, p):
                z = S.reduce(u + theta * c)
                chi_z = S.charpoly(z)
                if len(S.factors(chi_z)[0]) - 1 > d:
                    theta, chi = S.full_degree(z, theta, chi_z)
                    break
            else:
                raise UnsupportedForm("generator search found no element of larger residue degree")
            break
        else:
            raise UnsupportedForm("generator search did not converge")
    raise UnsupportedForm("generator search exceeded its step limit")


def _residue_combination(S: _Search, u: Poly, theta: Poly, d: int):
    """h over F_p of degree < d with v(u - h(theta)) > 0, lifted to K, or None."""
    p, n = S.p, S.g.deg
    if p ** d > MAX_RESIDUE_SEARCH:
        raise UnsupportedForm(f"residue search over F_{p}^{d} too large")
    nilpotent = (0,) * n + (1,)
    for cs in product(range(p), repeat=d):
        h = S.lift(cs)
        z = S.reduce(u - S.compose(h, theta))
        chi = S.charpoly(z)
        if _integral(p, chi.coeffs) and _residue(p, chi.coeffs) == nilpotent:
            return h
    return None
