"""Exact linear algebra over the rationals.

Reductions run on sympy matrices; callers pass and receive Fractions so the
rest of the package never sees a sympy number or a float.
"""
from fractions import Fraction
from math import gcd, lcm

import sympy as sp


def to_fractions(rows):
    return [[Fraction(x) for x in row] for row in rows]


def _matrix(rows, ncols):
    rows = to_fractions(rows)
    if not rows:
        return sp.zeros(0, ncols)
    return sp.Matrix([[sp.Rational(x.numerator, x.denominator) for x in row] for row in rows])


def _fraction(x):
    x = sp.Rational(x)
    return Fraction(int(x.p), int(x.q))


def _ncols(rows, ncols):
    if ncols is not None:
        return ncols
    return len(rows[0]) if rows else 0


def rref(rows, ncols=None):
    """Reduced row echelon form. Returns (reduced nonzero rows, pivot columns)."""
    ncols = _ncols(rows, ncols)
    if not rows:
        return [], []
    R, pivots = _matrix(rows, ncols).rref()
    reduced = [[_fraction(R[i, j]) for j in range(R.cols)] for i in range(len(pivots))]
    return reduced, list(pivots)


def rank(rows, ncols=None):
    if not rows:
        return 0
    return _matrix(rows, _ncols(rows, ncols)).rank()


def nullspace(rows, ncols):
    """Basis of {x : A x = 0}, one vector per free column."""
    if not rows:
        return [tuple(Fraction(int(i == j)) for j in range(ncols)) for i in range(ncols)]
    return [tuple(_fraction(x) for x in v) for v in _matrix(rows, ncols).nullspace()]


def solve(rows, rhs):
    """Unique solution of A x = b, or None when inconsistent or underdetermined."""
    A = _matrix(rows, len(rows[0]))
    b = _matrix([[x] for x in rhs], 1)
    try:
        solution, params = A.gauss_jordan_solve(b)
    except ValueError:
        return None
    if params.rows:
        return None
    return tuple(_fraction(x) for x in solution)


def inverse(rows):
    n = len(rows)
    A = _matrix(rows, n)
    if A.rank() < n:
        return None
    inv = A.inv()
    return [tuple(_fraction(inv[i, j]) for j in range(n)) for i in range(n)]


def transpose(rows):
    return [tuple(col) for col in zip(*rows)]


def mat_vec(rows, v):
    return tuple(sum((a * b for a, b in zip(row, v)), Fraction(0)) for row in rows)


def dot(u, v):
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def primitive(v):
    """Smallest positive multiple of v with integer entries (gcd 1)."""
    v = [Fraction(x) for x in v]
    den = lcm(*(x.denominator for x in v)) if v else 1
    ints = [int(x * den) for x in v]
    g = gcd(*ints)
    if g == 0:
        return tuple(ints)
    return tuple(x // g for x in ints)


def intersection_dim(U, V, ncols):
    """dim(span U ∩ span V) = dim U + dim V - dim(U + V)."""
    return rank(U, ncols) + rank(V, ncols) - rank(list(U) + list(V), ncols)
