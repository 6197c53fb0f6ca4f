"""Exact integer matrix routines used for norms and characteristic polynomials."""
from __future__ import annotations

from fractions import Fraction
from math import lcm
from operator import mul

from .poly import Poly


def mult_matrix(f: Poly, g: Poly, K):
    """Matrix of multiplication by f on K[x]/(g) in the basis 1, x, ..., x^(n-1)."""
    n = g.deg
    cols = []
    power = f.divmod(g)[1]
    for _ in range(n):
        cols.append(power)
        power = (power * Poly.x(K)).divmod(g)[1]
    return [[cols[j].coeff(i) for j in range(n)] for i in range(n)]


def scale_to_int(matrix):
    """(D, A) with A = D * matrix integral, for a matrix of rationals."""
    D = lcm(*(Fraction(x).denominator for row in matrix for x in row))
    return D, [[Fraction(x).numerator * (D // Fraction(x).denominator) for x in row] for row in matrix]


def bareiss(A) -> int:
    """Integer determinant by fraction-free elimination."""
    m = [list(r) for r in A]
    n = len(m)
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            piv = next((r for r in range(k + 1, n) if m[r][k] != 0), None)
            if piv is None:
                return 0
            m[k], m[piv] = m[piv], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1] if n else 1


def matmul(A, B):
    cols = list(zip(*B))
    return [[sum(map(mul, row, col)) for col in cols] for row in A]


def faddeev_leverrier(A) -> list:
    """Characteristic polynomial coefficients (low degree first) of an integer matrix."""
    n = len(A)
    coeffs = [0] * n + [1]
    Mk = [[int(i == j) for j in range(n)] for i in range(n)]
    for k in range(1, n + 1):
        Mk = matmul(A, Mk)
        c = coeffs[n - k] = -sum(Mk[i][i] for i in range(n)) // k
        for i in range(n):
            Mk[i][i] += c
    return coeffs


def char_poly_rational(f: Poly, g: Poly) -> list:
    """Characteristic polynomial of multiplication by f on Q[x]/(g), as Fractions (low degree first)."""
    M = mult_matrix(f, g, g.ring)
    n = len(M)
    D, A = scale_to_int(M)
    c = faddeev_leverrier(A)
    return [Fraction(c[i], D ** (n - i)) for i in range(n + 1)]


def mat_poly(coeffs, A):
    """sum coeffs[i] * A^i by Horner's rule."""
    n = len(A)
    acc = None
    for c in reversed(coeffs):
        acc = [[0] * n for _ in range(n)] if acc is None else matmul(acc, A)
        for i in range(n):
            acc[i][i] += c
    return acc
