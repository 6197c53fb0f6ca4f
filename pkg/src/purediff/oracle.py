"""Brute-force verifiers, deliberately independent of the primary code paths.

* :func:`different_monogenic` computes v(G'(theta)) for a generator theta of
  the valuation ring through characteristic polynomials and norms (matrix
  determinants), never through the valuation-basis shortcut used by
  ``ExtensionField.eval_val``.
* :func:`delta_bruteforce` maximizes v(eta - a) over explicit roots, again via
  norms.
* :func:`segment_bruteforce` re-decides final-segment operations by
  enumerating a finite window of the group, with memberships read straight
  from the defining inequalities of the raw forms.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from itertools import product
from typing import Callable, Optional, Sequence, Tuple

from . import segment as seg
from .errors import UnsupportedForm
from .ordgrp import INF, ExtValue, Value, ValueGroup
from .valfield.extension import RAMIFIED, ExtensionField
from .valfield.fields import vp_int
from .valfield.linalg import bareiss as _bareiss
from .valfield.linalg import faddeev_leverrier as _faddeev_leverrier
from .valfield.linalg import mat_poly as _mat_poly
from .valfield.linalg import matmul as _matmul
from .valfield.linalg import mult_matrix as _mult_matrix
from .valfield.linalg import scale_to_int as _scale_to_int
from .valfield.poly import Poly, PolyRing, det

# -- norms and characteristic polynomials -------------------------------


def _det(matrix, K):
    if K.char == 0:
        D, A = _scale_to_int(matrix)
        return Fraction(_bareiss(A), D ** len(A))
    return det(matrix, K)


def norm(f: Poly, L: ExtensionField):
    """N_{L/K}(f(eta)) as the determinant of multiplication by f(eta)."""
    return _det(_mult_matrix(f, L.g, L.base), L.base)


def norm_val(f: Poly, L: ExtensionField):
    """v(f(eta)) = v_K(N(f(eta))) / n, valid because K is complete."""
    K = L.base
    N = norm(f, L)
    if K.is_exact_zero(N):
        return INF
    v = K.val(N)
    return v if v is INF else Fraction(v) / L.n


def char_poly(theta: Poly, L: ExtensionField) -> Poly:
    """det(y*I - M_theta) over K."""
    K = L.base
    M = _mult_matrix(theta, L.g, K)
    n = len(M)
    if K.char == 0:
        D, A = _scale_to_int(M)
        c = _faddeev_leverrier(A)
        return Poly([Fraction(c[i], D ** (n - i)) for i in range(n + 1)], K)
    R = PolyRing(K)
    y = Poly.x(K)
    entries = [
        [(y if i == j else R.zero) - Poly.const(M[i][j], K) for j in range(n)] for i in range(n)
    ]
    return det(entries, R)


def monogenic_generator(L: ExtensionField) -> Poly:
    """An element theta (as a polynomial in eta) with O_L = O_K[theta].

    Inertial: eta / pi^lam, whose residue generates the residue field.
    Ramified: eta^s * pi^k with value 1/n, a uniformizer.
    """
    K = L.base
    if L.kind == RAMIFIED:
        m, n = L.gamma.numerator, L.gamma.denominator
        s = pow(m, -1, n)
        k = (1 - s * m) // n
        return Poly.monomial(s, K.pi_power(k), K).divmod(L.g)[1]
    lam = int(L.lam)
    return Poly((K.zero, K.pi_power(-lam)), K)


def _companion(g: Poly):
    """Matrix of multiplication by x on K[x]/(g) in the basis 1, x, ..., x^(n-1)."""
    n = g.deg
    C = [[Fraction(0)] * n for _ in range(n)]
    for j in range(n - 1):
        C[j + 1][j] = Fraction(1)
    for i in range(n):
        C[i][n - 1] = -Fraction(g.coeff(i))
    return C


def _different_char0(L: ExtensionField):
    """N(G'(theta)) = det G'(M_theta), entirely in integer matrices."""
    K = L.base
    n = L.n
    theta = monogenic_generator(L)
    if theta.coeffs == (0, 1) and all(Fraction(c).denominator == 1 for c in L.g.coeffs):
        # theta = eta with g integral: M_theta is the companion matrix, whose characteristic polynomial is g
        g = [int(c) for c in L.g.coeffs]
        C = [[int(i == j + 1) for j in range(n - 1)] + [-g[i]] for i in range(n)]
        N = _bareiss(_mat_poly([i * c for i, c in enumerate(g)][1:], C))
        return INF if N == 0 else Fraction(vp_int(N, K.p), n)
    Dc, C = _scale_to_int(_companion(L.g))
    # D * M_theta = sum_i theta_i * D / Dc^i * C^i with D a common denominator
    tc = [Fraction(c) for c in theta.coeffs]
    D = lcm(*(c.denominator * Dc ** i for i, c in enumerate(tc) if c))
    A = [[0] * n for _ in range(n)]
    P = [[int(i == j) for j in range(n)] for i in range(n)]
    for i, c in enumerate(tc):
        if c:
            w = c.numerator * (D // (c.denominator * Dc ** i))
            A = [[x + w * y for x, y in zip(ra, rp)] for ra, rp in zip(A, P)]
        if i + 1 < len(tc):
            P = _matmul(P, C)
    chi = _faddeev_leverrier(A)  # chi(z) = D^n G(z / D)
    dchi = [i * c for i, c in enumerate(chi)][1:]
    N = _bareiss(_mat_poly(dchi, A))  # = D^(n(n-1)) N(G'(theta))
    if N == 0:
        return INF
    v = vp_int(N, K.p) - n * (n - 1) * vp_int(D, K.p)
    return Fraction(v, n)


def different_monogenic(L: ExtensionField):
    """v(G'(theta)) for the characteristic polynomial G of a ring generator theta."""
    if L.base.char == 0:
        return _different_char0(L)
    theta = monogenic_generator(L)
    G = char_poly(theta, L)
    dG = G.derivative()
    return norm_val(dG(theta).divmod(L.g)[1], L)


def delta_bruteforce(f: Poly, L: ExtensionField, roots: Sequence[Poly]):
    """max v(eta - a) over the listed roots a of f (elements of L as polys in eta).

    Refuses unless the roots are genuine and, when they all lie in K, their
    linear factors multiply back to f.
    """
    K = L.base
    if f.is_zero():
        raise ValueError("zero polynomial")
    if len(roots) != f.deg:
        raise UnsupportedForm("f must be given with all deg(f) roots")
    for r in roots:
        if not f(r).divmod(L.g)[1].is_zero():
            raise UnsupportedForm(f"{r} is not a root of {f}")
    if all(r.deg <= 0 for r in roots):
        prod = Poly.const(f.lc, K)
        for r in roots:
            prod = prod * Poly((-r.coeff(0), K.one), K)
        if prod != f:
            raise UnsupportedForm("listed roots do not account for every factor of f")
    best = None
    for r in roots:
        v = norm_val(Poly.x(K) - r, L)
        if v is INF:
            return INF
        best = v if best is None or v > best else best
    return best


# -- grid windows ---------------------------------------------------------


@dataclass(frozen=True)
class GridWindow:
    """Points of the group with ``|x_k| <= bound * gen_k`` on the grid
    ``gen_k * Z`` (discrete component) or ``gen_k * l^-den_exp * Z`` (dense)."""

    group: ValueGroup
    bound: int
    den_exp: int = 0

    def _step_count(self, k: int) -> Tuple[Fraction, int]:
        comp = self.group.components[k]
        step = comp.gen / (comp.div ** self.den_exp) if comp.dense else comp.gen
        return step, int(self.bound * comp.gen / step)

    def axis(self, k: int) -> Tuple[Fraction, ...]:
        step, count = self._step_count(k)
        return tuple(step * i for i in range(-count, count + 1))

    def axes(self):
        return [self.axis(k) for k in range(self.group.rank)]

    def size(self) -> int:
        total = 1
        for k in range(self.group.rank):
            total *= 2 * self._step_count(k)[1] + 1
        return total

    def points(self):
        for coords in product(*self.axes()):
            yield Value.trusted(coords, self.group)

    def point_at(self, index: int) -> Value:
        """The index-th point in lexicographic order, without building the axes."""
        coords = []
        for k in reversed(range(self.group.rank)):
            step, count = self._step_count(k)
            index, r = divmod(index, 2 * count + 1)
            coords.append(step * (r - count))
        return Value.trusted(tuple(reversed(coords)), self.group)

    def enlarged(self, factor: int = 3, extra_den: int = 2) -> "GridWindow":
        return GridWindow(self.group, self.bound * factor, self.den_exp + extra_den)


@dataclass(frozen=True)
class RawSegment:
    """A final segment given by its defining inequality, never canonicalized.

    form: whole | top | empty | closed_mod | open_mod | closed_ext | open_ext.
    ``prefix`` is the number of leading coordinates compared (mod forms).
    """

    form: str
    anchor: Tuple[Fraction, ...] = ()
    prefix: int = 0

    def contains(self, x) -> bool:
        if x is INF:
            return self.form != "empty"
        if self.form == "whole":
            return True
        if self.form in ("top", "empty"):
            return False
        c = tuple(x.coords)
        if self.form == "closed_mod":
            return c[: self.prefix] >= self.anchor[: self.prefix]
        if self.form == "open_mod":
            return c[: self.prefix] > self.anchor[: self.prefix]
        if self.form == "closed_ext":
            return c >= self.anchor
        if self.form == "open_ext":
            return c > self.anchor
        raise ValueError(f"unknown raw form {self.form}")

    def build(self, G: ValueGroup) -> seg.FinalSegment:
        """The primary-module segment for the same set."""
        if self.form == "whole":
            return seg.whole(G)
        if self.form == "top":
            return seg.top(G)
        if self.form == "empty":
            return seg.empty(G)
        if self.form == "closed_mod":
            return seg.closed_mod(Value(self.anchor, G), G.subgroup(self.prefix + 1))
        if self.form == "open_mod":
            return seg.open_mod(Value(self.anchor, G), G.subgroup(self.prefix + 1))
        if self.form == "closed_ext":
            return seg.closed_ext(ExtValue(self.anchor), G)
        return seg.open_ext(ExtValue(self.anchor), G)


@dataclass(frozen=True)
class Verdict:
    status: str  # agree | disagree | inconclusive
    detail: str = ""

    @property
    def agrees(self) -> bool:
        return self.status == "agree"


AGREE, DISAGREE, INCONCLUSIVE = "agree", "disagree", "inconclusive"


def _window_min(S: RawSegment, W: GridWindow):
    """Least point of W in S, by bisection over the lexicographically sorted window."""
    n = W.size()
    lo, hi = 0, n
    while lo < hi:
        mid = (lo + hi) // 2
        if S.contains(W.point_at(mid)):
            hi = mid
        else:
            lo = mid + 1
    return None if lo == n else W.point_at(lo)


def _shift_members(G, S, h, W):
    """A point x of W with x in S differing from x - h in S, if any."""
    for x in W.points():
        y = Value.trusted(tuple(a - b for a, b in zip(x.coords, h)), G)
        if S.contains(x) != S.contains(y):
            return x
    return None


def _smaller_member(S: RawSegment, m: Value, depth: int = 16) -> bool:
    """Whether some point of S lies below m: lower one coordinate by a small group
    step and push every later coordinate far up."""
    G = m.group
    for k, comp in enumerate(G.components):
        steps = [comp.gen / comp.div ** j for j in range(depth + 1)] if comp.dense else [comp.gen]
        for step in steps:
            coords = list(m.coords)
            coords[k] -= step
            for j in range(k + 1, G.rank):
                coords[j] = G.components[j].gen * 10 ** 6
            if S.contains(Value.trusted(tuple(coords), G)):
                return True
    return False


def _test_elements(G: ValueGroup, k: int, W: GridWindow):
    comp = G.components[k]
    elems = [comp.gen]
    if comp.dense:
        elems += [comp.gen / comp.div ** e for e in range(1, W.den_exp + 1)]
    out = []
    for e in elems:
        coords = [Fraction(0)] * G.rank
        coords[k] = e
        out.append(tuple(coords))
    return out


def segment_bruteforce(op: str, operands: Sequence[RawSegment], W: GridWindow, impl: Optional[Callable] = None) -> Verdict:
    """Compare one segment-module operation against window enumeration.

    ``impl`` replaces the primary implementation (used to plant mutations).
    """
    G = W.group
    if W.size() == 0 or W.bound <= 0:
        return Verdict(INCONCLUSIVE, "empty window")
    fn = impl or {
        "member": seg.member,
        "seg_equal": seg.seg_equal,
        "has_min": seg.has_min,
        "invariance_subgroup": seg.invariance_subgroup,
        "annihilator_segment": seg.annihilator_segment,
    }[op]
    built = [r.build(G) for r in operands]

    if op == "member":
        S, raw = built[0], operands[0]
        for x in list(W.points()) + [INF]:
            if fn(S, x) != raw.contains(x):
                return Verdict(DISAGREE, f"membership of {x} differs")
        return Verdict(AGREE)

    if op == "seg_equal":
        claim = fn(*built)
        witness = next((x for x in W.points() if operands[0].contains(x) != operands[1].contains(x)), None)
        if witness is not None:
            return Verdict(DISAGREE if claim else AGREE, f"differ at {witness}")
        if claim:
            return Verdict(AGREE)
        return Verdict(INCONCLUSIVE, "no separating point in window")

    if op == "has_min":
        raw = operands[0]
        claim = fn(built[0])
        W1, W2 = W.enlarged(), W.enlarged(6, 4)
        m1, m2 = _window_min(raw, W1), _window_min(raw, W2)
        if claim is INF:
            if m2 is None and raw.form == "top":
                return Verdict(AGREE)
            return Verdict(DISAGREE if m2 is not None else INCONCLUSIVE, "finite members exist")
        if claim is None:
            if m1 is None and m2 is None:
                return Verdict(INCONCLUSIVE, "no members in window")
            if m1 != m2 or _smaller_member(raw, m2):
                return Verdict(AGREE)
            return Verdict(DISAGREE, f"window minimum {m1} is stable")
        if not raw.contains(claim):
            return Verdict(DISAGREE, f"claimed minimum {claim} is not a member")
        if _smaller_member(raw, claim):
            return Verdict(DISAGREE, f"a member lies below the claimed minimum {claim}")
        if m2 is None:
            return Verdict(INCONCLUSIVE, "claimed minimum outside window")
        if m2 < claim:
            return Verdict(DISAGREE, f"{m2} is a smaller member")
        if m2 == claim:
            return Verdict(AGREE)
        return Verdict(INCONCLUSIVE, "claimed minimum outside window")

    if op == "invariance_subgroup":
        raw = operands[0]
        D = fn(built[0])
        j = D.suffix_start
        for k in range(j - 1, G.rank):
            for h in _test_elements(G, k, W):
                if _shift_members(G, raw, h, W) is not None:
                    return Verdict(DISAGREE, f"shift by {h} moves the segment")
        if j == 1:
            return Verdict(AGREE)
        for h in _test_elements(G, j - 2, W):
            if _shift_members(G, raw, h, W) is not None:
                return Verdict(AGREE)
        return Verdict(INCONCLUSIVE, "no window witness that the next subgroup moves the segment")

    if op == "annihilator_segment":
        alpha, beta = operands
        A = fn(*built)

        def verdicts(win):
            if alpha.form == "top":
                return [True] * W.size()
            a = _window_min(alpha, win)
            if a is None:
                return None
            return [beta.contains(Value.trusted(tuple(x + y for x, y in zip(b.coords, a.coords)), G)) for b in W.points()]

        v1, v2 = verdicts(W.enlarged()), verdicts(W.enlarged(6, 4))
        if v1 is None or v2 is None:
            return Verdict(INCONCLUSIVE, "alpha has no members in window")
        if v1 != v2:
            return Verdict(INCONCLUSIVE, "window too small to pin down alpha's lower end")
        for b, ok in zip(W.points(), v1):
            if seg.member(A, b) != ok:
                return Verdict(DISAGREE, f"annihilator membership of {b} differs")
        if len(set(v1)) == 1 and A.kind == "cut":
            # the claimed boundary lies outside the window: agreement would be vacuous
            return Verdict(INCONCLUSIVE, "annihilator boundary outside window")
        return Verdict(AGREE)

    raise ValueError(f"unknown operation {op!r}")


# -- random raw segments ---------------------------------------------------


def random_group(rng: random.Random, rank: Optional[int] = None) -> ValueGroup:
    rank = rank or rng.randint(1, 3)
    comps = []
    for _ in range(rank):
        gen = rng.choice([Fraction(1), Fraction(1, 2), Fraction(1, 3), Fraction(2)])
        div = rng.choice([None, None, 2, 3])
        comps.append((gen, div))
    return ValueGroup.of(*comps)


def random_group_point(G: ValueGroup, rng: random.Random, span: int = 3, den_exp: int = 2) -> tuple:
    coords = []
    for comp in G.components:
        step = comp.gen / (comp.div ** rng.randint(0, den_exp)) if comp.dense else comp.gen
        coords.append(step * rng.randint(-span * int(comp.gen / step), span * int(comp.gen / step)))
    return tuple(coords)


def random_raw_segment(G: ValueGroup, rng: random.Random, span: int = 3) -> RawSegment:
    form = rng.choices(
        ["whole", "top", "closed_mod", "open_mod", "closed_ext", "open_ext"], weights=[1, 1, 5, 5, 3, 3]
    )[0]
    if form in ("whole", "top"):
        return RawSegment(form)
    if form in ("closed_mod", "open_mod"):
        return RawSegment(form, random_group_point(G, rng, span), rng.randint(1, G.rank))
    # free anchors: rationals with denominators outside the group now and then
    coords = []
    for comp in G.components:
        den = rng.choice([1, 1, 2, 3, 5, 7])
        coords.append(Fraction(rng.randint(-span * den, span * den), den) * comp.gen)
    return RawSegment(form, tuple(coords))


# -- unramified root counting -------------------------------------------------------


class _Unramified:
    """Z_p[t]/(Phi) for a monic lift Phi of an irreducible of degree d over F_p.

    Elements are d-tuples of integers; the residue field F_{p^d} is encoded
    as integers 0..p^d-1 in base p.
    """

    def __init__(self, p: int, d: int):
        self.p, self.d = p, d
        self.phi = next(
            low + (1,) for low in product(range(p), repeat=d) if _fp_irreducible_bruteforce(p, low + (1,))
        )
        self.q = p ** d
        self.res = [self.decode(i) for i in range(self.q)]
        self.mul_table = None

    def decode(self, i: int) -> tuple:
        out = []
        for _ in range(self.d):
            i, r = divmod(i, self.p)
            out.append(r)
        return tuple(out)

    def encode(self, a) -> int:
        i = 0
        for c in reversed(a):
            i = i * self.p + c % self.p
        return i

    def mul(self, a, b) -> tuple:
        d = self.d
        prod = [0] * (2 * d - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    prod[i + j] += x * y
        for k in range(2 * d - 2, d - 1, -1):
            c = prod[k]
            if c:
                for j in range(d):
                    prod[k - d + j] -= c * self.phi[j]
        return tuple(prod[:d])

    def table(self):
        if self.mul_table is None:
            self.mul_table = [[self.encode(self.mul(x, y)) for y in self.res] for x in self.res]
        return self.mul_table

    def add_enc(self, i: int, j: int) -> int:
        return self.encode(tuple(a + b for a, b in zip(self.res[i], self.res[j])))


def _fp_irreducible_bruteforce(p: int, coeffs: tuple) -> bool:
    """No root-free shortcut: trial division by every monic polynomial of lower degree."""
    n = len(coeffs) - 1
    for k in range(1, n // 2 + 1):
        for low in product(range(p), repeat=k):
            rem = list(coeffs)
            for i in range(n, k - 1, -1):
                c = rem[i] % p
                if c:
                    for j, b in enumerate(low + (1,)):
                        rem[i - k + j] -= c * b
            if not any(x % p for x in rem[:k]):
                return False
    return True


_RING_CACHE = {}
_ROOT_CACHE = {}


def _ring(p: int, d: int) -> _Unramified:
    key = (p, d)
    if key not in _RING_CACHE:
        _RING_CACHE[key] = _Unramified(p, d)
    return _RING_CACHE[key]


def _residue_roots(U: _Unramified, fbar: tuple):
    """(root, simple?) for the roots in F_{p^d} of a polynomial with encoded coefficients."""
    key = (U.p, U.d, fbar)
    if key in _ROOT_CACHE:
        return _ROOT_CACHE[key]
    T = U.table()
    add = U.add_enc
    dfbar = [U.encode(tuple(k * c for c in U.res[a])) for k, a in enumerate(fbar)][1:]

    def ev(poly, x):
        acc = 0
        for c in reversed(poly):
            acc = add(T[acc][x], c)
        return acc

    out = tuple((x, ev(dfbar, x) != 0) for x in range(U.q) if ev(fbar, x) == 0)
    _ROOT_CACHE[key] = out
    return out


class _Counter:
    """Root counter remembering whether any residue root was repeated."""

    def __init__(self, U: _Unramified, first_only: bool = False):
        self.U = U
        self.first_only = first_only
        self.lifted = False

    def count(self, f, depth: int = 0) -> int:
        """Number of roots in Z_p[t]/(Phi) of f (a list of element tuples, no repeated roots)."""
        U = self.U
        if depth > 400:
            raise UnsupportedForm("root count did not terminate; f may have repeated roots")
        p = U.p
        k = min(vp_int(c, p) for a in f for c in a if c)
        if k:
            f = [tuple(c // p ** k for c in a) for a in f]
        fbar = [U.encode(a) for a in f]
        while fbar and fbar[-1] == 0:
            fbar.pop()
        if len(fbar) <= 1:
            return 0
        total = 0
        for x, simple in _residue_roots(U, tuple(fbar)):
            if simple:
                total += 1
                if self.first_only:
                    return total
                continue
            self.lifted = True
            a = U.res[x]
            zero = tuple([0] * U.d)
            # f(a + p y) by Horner in y
            acc = [zero]
            for c in reversed(f):
                new = [U.mul(t, a) for t in acc] + [zero]
                for j, t in enumerate(acc):
                    new[j + 1] = tuple(s + p * e for s, e in zip(new[j + 1], t))
                new[0] = tuple(s + e for s, e in zip(new[0], c))
                acc = new
            total += self.count(acc, depth + 1)
            if total and self.first_only:
                return total
        return total


def _root_count(coeffs: Sequence[int], p: int, d: int, first_only: bool = False):
    counter = _Counter(_ring(p, d), first_only)
    n = counter.count([(int(c),) + (0,) * (d - 1) for c in coeffs])
    return n, counter.lifted


def unramified_root_count(coeffs: Sequence[int], p: int, d: int) -> int:
    """Roots of an integer polynomial without repeated roots in the unramified extension of Q_p of degree d."""
    return _root_count(coeffs, p, d)[0]


def _squarefree_rational(coeffs: Sequence[int]) -> bool:
    """Res(g, g') != 0, by a fraction-free determinant of the Sylvester matrix."""
    g = [int(c) for c in coeffs]
    dg = [i * c for i, c in enumerate(g)][1:]
    n, m = len(g) - 1, len(dg) - 1
    size = n + m
    rows = [[0] * i + g[::-1] + [0] * (size - n - 1 - i) for i in range(m)]
    rows += [[0] * i + dg[::-1] + [0] * (size - m - 1 - i) for i in range(n)]
    return _bareiss(rows) != 0


_SIMPLE_VERDICTS = {}


def is_unramified_irreducible(coeffs: Sequence[int], p: int) -> bool:
    """Whether a monic integer polynomial is irreducible over Q_p with an unramified root field.

    Such g of degree n has all n roots in the unramified extension of degree n
    and none in any proper one; conversely one root there and none in the
    proper subextensions forces Q_p(root) to be that whole extension.  When
    every residue root met is simple the counts depend only on g mod p, so
    those verdicts are remembered per reduction.
    """
    n = len(coeffs) - 1
    if n == 1:
        return True
    key = (p, tuple(int(c) % p for c in coeffs))
    if key in _SIMPLE_VERDICTS:
        return _SIMPLE_VERDICTS[key]
    if not _squarefree_rational(coeffs):
        return False  # repeated factor
    lifted = False
    verdict = None
    for d in [d for d in range(1, n) if n % d == 0] + [n]:
        count, used = _root_count(coeffs, p, d, first_only=d < n)
        lifted = lifted or used
        if d < n and count:
            verdict = False
            break
    if verdict is None:
        verdict = count > 0
    if not lifted:
        _SIMPLE_VERDICTS[key] = verdict
    return verdict
