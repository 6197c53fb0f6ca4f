"""Polynomial tools over a valued field: q-expansions, truncations, Hasse
derivatives, Newton polygons, root-distance bounds and monomial rewriting."""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, List, Optional, Sequence, Tuple

from .errors import IncompleteKeySet, NoStabilizationWitnessed, NotConcrete, UnsupportedForm
from .ordgrp import INF
from .valfield.extension import ExtensionField
from .valfield.poly import Poly


@dataclass(frozen=True)
class Expansion:
    """``f = sum coeffs[l] * q^l`` with every ``deg coeffs[l] < deg q``."""

    q: Poly
    coeffs: Tuple[Poly, ...]

    def reconstruct(self) -> Poly:
        acc = Poly((), self.q.ring)
        for c in reversed(self.coeffs):
            acc = acc * self.q + c
        return acc


def q_expand(f: Poly, q: Poly) -> Expansion:
    if q.deg < 1 or not q.is_monic():
        raise ValueError("q must be monic of positive degree")
    coeffs = []
    rest = f
    while not rest.is_zero():
        rest, r = rest.divmod(q)
        coeffs.append(r)
    return Expansion(q, tuple(coeffs) or (Poly((), f.ring),))


def _vadd(a, b):
    if a is INF or b is INF:
        return INF
    return a + b


def _vmin(values):
    best = INF
    for v in values:
        if v is not INF and (best is INF or v < best):
            best = v
    return best


def truncation(f: Poly, q: Poly, L: ExtensionField):
    """min over the q-expansion of v(f_l(eta)) + l * v(q(eta))."""
    exp = q_expand(f, q)
    vq = L.eval_val(q)
    terms = []
    for l, fl in enumerate(exp.coeffs):
        if fl.is_zero():
            continue
        vf = L.eval_val(fl)
        terms.append(vf if l == 0 else _vadd(vf, INF if vq is INF else l * vq))
    return _vmin(terms)


def hasse_derivative(f: Poly, s: int) -> Poly:
    if not 0 <= s:
        raise ValueError("order must be nonnegative")
    return f.hasse(s)


@dataclass(frozen=True)
class NewtonPolygon:
    """Lower convex hull of points ``(i, w_i)``; ``slopes`` as (slope, length)."""

    vertices: Tuple[Tuple[int, Fraction], ...]
    slopes: Tuple[Tuple[Fraction, int], ...]

    @classmethod
    def from_values(cls, values: Sequence) -> "NewtonPolygon":
        pts = [(i, Fraction(w)) for i, w in enumerate(values) if w is not INF]
        if not pts:
            raise ValueError("Newton polygon of the zero polynomial")
        hull: List[Tuple[int, Fraction]] = []
        for pt in pts:
            while len(hull) >= 2:
                (x1, y1), (x2, y2) = hull[-2], hull[-1]
                # drop the middle point unless it lies strictly below the chord
                if (y2 - y1) * (pt[0] - x1) >= (pt[1] - y1) * (x2 - x1):
                    hull.pop()
                else:
                    break
            hull.append(pt)
        slopes = []
        for (x1, y1), (x2, y2) in zip(hull, hull[1:]):
            slopes.append((Fraction(y2 - y1, x2 - x1), x2 - x1))
        return cls(tuple(hull), tuple(slopes))

    def root_values(self) -> List[Tuple[Fraction, int]]:
        """Values of the nonzero roots with multiplicities (negated slopes)."""
        return [(-s, m) for s, m in self.slopes]


def taylor_values(f: Poly, L: ExtensionField) -> list:
    """``[v(d_s f(eta)) for s = 0..deg f]``: coefficient values of f(eta + T)."""
    return [L.eval_val(f.hasse(s)) for s in range(f.deg + 1)]


def delta(f: Poly, L: ExtensionField):
    """max v(eta - a) over the roots a of f, read off the Newton polygon of f(eta+T)."""
    if f.deg < 1:
        raise ValueError("delta needs a polynomial of positive degree")
    w = taylor_values(f, L)
    if w[0] is INF:
        return INF
    poly = NewtonPolygon.from_values(w)
    return max(v for v, _ in poly.root_values())


def delta_compare(f1: Poly, f2: Poly, L: ExtensionField) -> int:
    """Sign of delta(f1) - delta(f2), treating INF as the top element."""
    a, b = delta(f1, L), delta(f2, L)
    if a == b:
        return 0
    if a is INF:
        return 1
    if b is INF:
        return -1
    return 1 if a > b else -1


def normalize_proportional(Qs: Sequence[Poly], L: ExtensionField) -> List[Poly]:
    """Divide each q by a constant of the same value so that v(q(eta)) = 0.

    Polynomials with value INF (multiples of g) are returned unchanged.
    """
    K = L.base
    out = []
    for q in Qs:
        v = L.eval_val(q)
        if v is INF:
            out.append(q)
            continue
        if Fraction(v).denominator != 1:
            raise UnsupportedForm(
                f"v({q}) = {v} is not a value of the base field; no constant of matching value exists"
            )
        out.append(q * K.pi_power(-int(v)))
    return out


Monomial = Tuple[object, Tuple[int, ...]]


def rewrite_nonneg(f: Poly, Qs: Sequence[Poly], L: ExtensionField) -> List[Monomial]:
    """Write f as ``sum a_l * prod Q_j^(lam_l[j])`` with every a_l integral.

    Each entry is ``(a_l, lam_l)``.  Requires v(q(eta)) = 0 for q in Qs,
    ``deg f < deg g`` and v(f(eta)) >= 0.  Ties in degree are broken by the
    order of Qs.
    """
    K = L.base
    Qs = list(Qs)
    for q in Qs:
        if L.eval_val(q) != 0:
            raise ValueError(f"{q} is not normalized (value {L.eval_val(q)})")
    if f.deg >= L.n:
        raise ValueError("f must have degree below deg g")
    vf = L.eval_val(f)
    if vf is INF or vf < 0:
        raise ValueError("f must have nonnegative finite value")
    zero_exp = (0,) * len(Qs)

    def go(h: Poly, vh) -> List[Monomial]:
        if h.is_zero():
            return []
        if h.deg <= 0:
            return [(h.coeff(0), zero_exp)]
        choice = None
        for j, q in enumerate(Qs):
            if 1 <= q.deg <= h.deg and truncation(h, q, L) == vh:
                if choice is None or q.deg > Qs[choice].deg:
                    choice = j
        if choice is None:
            raise IncompleteKeySet(f"no polynomial in the set computes the value of {h}")
        out: List[Monomial] = []
        for l, hl in enumerate(q_expand(h, Qs[choice]).coeffs):
            if hl.is_zero():
                continue
            for a, lam in go(hl, L.eval_val(hl)):
                lam = list(lam)
                lam[choice] += l
                out.append((a, tuple(lam)))
        return out

    terms = go(f, vf)
    # postconditions: exact reconstruction, integral coefficients, minimum value
    rebuilt = evaluate_monomials(terms, Qs, K)
    if rebuilt != f:
        raise AssertionError("rewrite does not reconstruct f")
    vals = [K.val(a) for a, _ in terms]
    if any(v is not INF and v < 0 for v in vals) or _vmin(vals) != vf:
        raise AssertionError("rewrite coefficients violate integrality or the minimum-value identity")
    return terms


def evaluate_monomials(terms: Sequence[Monomial], Qs: Sequence[Poly], K) -> Poly:
    acc = Poly((), K)
    for a, lam in terms:
        m = Poly.const(a, K)
        for q, k in zip(Qs, lam):
            if k:
                m = m * q ** k
        acc = acc + m
    return acc


def stable_value(
    f: Poly,
    approximants: Optional[Callable[[int], object]],
    val: Callable,
    horizon: int = 32,
    tail: int = 4,
):
    """Eventually constant value of v(f(c_i)) along approximants c_i.

    Only the witness range ``0..horizon-1`` is inspected; the last ``tail``
    values must agree, otherwise nothing is extrapolated.
    """
    if f.deg <= 0:
        return val(f.coeff(0))
    if approximants is None:
        raise NoStabilizationWitnessed("a non-constant polynomial needs approximants")
    vals = [val(f(approximants(i))) for i in range(horizon)]
    last = vals[-1]
    if len(vals) < tail or any(v != last for v in vals[-tail:]):
        raise NoStabilizationWitnessed(f"values {vals[-tail:]} have not stabilized")
    return last


# -- generation checks --------------------------------------------------

@dataclass(frozen=True)
class GenerationVerdict:
    passed: bool
    trials: int
    counterexample: Optional[Poly] = None

    def __bool__(self):
        return self.passed


def _random_base_element(K, rng: random.Random):
    if K.char == 0:
        num = rng.randint(-30, 30)
        return Fraction(num, K.p ** rng.randint(0, 3))
    terms = {k: rng.randrange(K.p) for k in range(rng.randint(-3, 0), rng.randint(1, 4))}
    from .valfield.fields import Series

    return Series(K, terms)


def _sample_integral(L: ExtensionField, rng: random.Random) -> Poly:
    K = L.base
    while True:
        b = Poly([_random_base_element(K, rng) for _ in range(L.n)], K)
        v = L.eval_val(b)
        if v is INF:
            continue
        k = Fraction(v).__floor__()
        return b * K.pi_power(-k)


def _solve(matrix, rhs, K):
    """Solve ``matrix * x = rhs`` over K by Gaussian elimination."""
    n = len(rhs)
    m = [list(row) + [rhs[i]] for i, row in enumerate(matrix)]
    for col in range(n):
        piv = next((r for r in range(col, n) if not K.is_exact_zero(m[r][col])), None)
        if piv is None:
            raise ValueError("generator powers are linearly dependent")
        m[col], m[piv] = m[piv], m[col]
        inv = K.inverse(m[col][col])
        m[col] = [x * inv for x in m[col]]
        for r in range(n):
            if r != col and not K.is_exact_zero(m[r][col]):
                fac = m[r][col]
                m[r] = [a - fac * b for a, b in zip(m[r], m[col])]
    return [m[i][n] for i in range(n)]


def _in_power_span(b: Poly, theta: Poly, L: ExtensionField) -> bool:
    K = L.base
    n = L.n
    cols = []
    power = Poly.const(K.one, K)
    for _ in range(n):
        cols.append(L.reduce(power))
        power = L.reduce(power * theta)
    matrix = [[cols[j].coeff(i) for j in range(n)] for i in range(n)]
    coeffs = _solve(matrix, [L.reduce(b).coeff(i) for i in range(n)], K)
    return all(K.is_exact_zero(c) or K.val(c) >= 0 for c in coeffs)


def check_generation(L, generators: Sequence[Poly], trials: int = 50, seed: int = 0) -> GenerationVerdict:
    """Sampled test that the valuation ring of L is generated by ``generators``.

    One generator theta: every sampled integral b must have integral
    coordinates in the basis ``1, theta, ..., theta^(n-1)``.  Several
    generators: each must have value 0 and every sample must pass the
    monomial rewriting.
    """
    if not isinstance(L, ExtensionField):
        raise NotConcrete("generation can only be checked on a constructed extension")
    rng = random.Random(seed)
    for i in range(trials):
        b = _sample_integral(L, rng)
        try:
            if len(generators) == 1:
                ok = _in_power_span(b, generators[0], L)
            else:
                rewrite_nonneg(b, generators, L)
                ok = True
        except (IncompleteKeySet, ValueError):
            ok = False
        if not ok:
            return GenerationVerdict(False, i + 1, b)
    return GenerationVerdict(True, trials)
