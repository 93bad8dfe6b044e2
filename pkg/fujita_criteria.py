"""Fujita-type numerical certificates.

Every criterion here is one-directional: it either certifies that K + L is
big or says nothing. Inequalities are strict and compared exactly.
"""
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import factorial
from typing import Optional

import sympy

from utils import logger, InputError, PreconditionError

# --- Cited rules ---
RULE_DIM1 = "dim 1: Vol(L) > 2"
RULE_DIM2 = "dim 2: Vol(L) > 9 and L.C > 2 for curves through a general point"
RULE_DIM3 = "dim 3: Vol(L) > 64, L^2.S > 9 and L.C > 2 through a general point"
RULE_DIM3_RATIONAL = "dim 3: Vol(L) > 64 and L.C > 3 for every rational curve"
RULE_SURFACE_RATIONAL = "surface: L.C > 3 for every rational curve"

RIGID_VOLUME_BOUND = Fraction(9)
THREEFOLD_VOLUME_BOUND = Fraction(64)


class Status(Enum):
    IMPLIES_BIG = "implies_big"
    INCONCLUSIVE = "inconclusive"


class RigidCheck(Enum):
    CONSISTENT = "consistent"
    VIOLATES = "violates"


@dataclass(frozen=True)
class GeometricWitness:
    dim: int
    vol_L: Fraction
    min_curve_deg: Optional[Fraction] = None
    min_rational_curve_deg: Optional[Fraction] = None
    min_surface_vol: Optional[Fraction] = None

    def __post_init__(self):
        if self.dim not in (1, 2, 3):
            logger.error(f"Witness dimension {self.dim} is outside 1..3.")
            raise InputError(f"witness dimension must be 1, 2 or 3, got {self.dim}")
        for name in ('vol_L', 'min_curve_deg', 'min_rational_curve_deg', 'min_surface_vol'):
            value = getattr(self, name)
            if value is None:
                continue
            value = Fraction(value)
            if value <= 0:
                logger.error(f"Witness field {name} = {value} is not positive.")
                raise InputError(f"witness field {name} must be positive, got {value}")
            object.__setattr__(self, name, value)

    def require(self, *names):
        missing = [n for n in names if getattr(self, n) is None]
        if missing:
            logger.error(f"Witness of dimension {self.dim} lacks {missing}.")
            raise InputError(f"dimension {self.dim} criterion needs witness field(s): {', '.join(missing)}")


@dataclass(frozen=True)
class Verdict:
    status: Status
    cited_rule: str

    @property
    def implies_big(self):
        return self.status is Status.IMPLIES_BIG


def _verdict(holds, rule):
    return Verdict(Status.IMPLIES_BIG if holds else Status.INCONCLUSIVE, rule)


# --- Bigness criteria ---
def bigness_criterion(w):
    if w.dim == 1:
        return _verdict(w.vol_L > 2, RULE_DIM1)
    if w.dim == 2:
        w.require('min_curve_deg')
        return _verdict(w.vol_L > 9 and w.min_curve_deg > 2, RULE_DIM2)
    w.require('min_surface_vol', 'min_curve_deg')
    holds = w.vol_L > THREEFOLD_VOLUME_BOUND and w.min_surface_vol > 9 and w.min_curve_deg > 2
    return _verdict(holds, RULE_DIM3)


def bigness_dim3_improved(w):
    if w.dim != 3:
        raise InputError(f"the rational-curve criterion is for threefolds, got dimension {w.dim}")
    w.require('min_rational_curve_deg')
    return _verdict(w.vol_L > THREEFOLD_VOLUME_BOUND and w.min_rational_curve_deg > 3, RULE_DIM3_RATIONAL)


def surface_rational_curve_criterion(min_rational_curve_deg):
    deg = Fraction(min_rational_curve_deg)
    if deg <= 0:
        raise InputError(f"rational curve degree must be positive, got {deg}")
    return _verdict(deg > 3, RULE_SURFACE_RATIONAL)


# --- Rigid volume bounds ---
def rigid_surface_volume_check(a, vol):
    """An adjoint rigid surface has Vol(L) <= 9 / a^2; a violation rules rigidity out."""
    a, vol = Fraction(a), Fraction(vol)
    if a <= 0 or vol <= 0:
        raise PreconditionError(f"a and Vol(L) must be positive, got a = {a}, vol = {vol}")
    return RigidCheck.CONSISTENT if a * a * vol <= RIGID_VOLUME_BOUND else RigidCheck.VIOLATES


def a_invariant_upper_bound_from_volume(vol):
    """Bound on a^2 for an adjoint rigid surface with the given volume."""
    vol = Fraction(vol)
    if vol <= 0:
        raise PreconditionError(f"volume must be positive, got {vol}")
    return RIGID_VOLUME_BOUND / vol


@dataclass(frozen=True)
class CoverABound:
    bound_sq: Fraction
    strongly_a_unbalanced_excluded: bool


def surface_cover_a_bound(d, e):
    """Degree e cover Y of a degree d del Pezzo surface: a(Y)^2 <= 9 / (d e)."""
    if d < 1 or e < 1:
        raise PreconditionError(f"degrees must be positive, got d = {d}, e = {e}")
    bound_sq = a_invariant_upper_bound_from_volume(d * e)
    return CoverABound(bound_sq, bound_sq < 1)


@dataclass(frozen=True)
class WeakDPBound:
    feasible: bool
    b_upper: Optional[int]
    balanced_forced: bool


def weak_dp_cover_b_bound(d, e):
    """Adjoint rigid degree e cover of a degree d del Pezzo surface by a weak del Pezzo model."""
    if not 1 <= d <= 9:
        logger.error(f"Del Pezzo degree {d} outside 1..9.")
        raise InputError(f"del Pezzo degree must be in 1..9, got {d}")
    if e < 1:
        raise InputError(f"cover degree must be positive, got {e}")
    if d * e > 9:
        return WeakDPBound(False, None, False)
    b_upper = 10 - d * e
    return WeakDPBound(True, b_upper, e >= 2 and b_upper < 10 - d)


# --- Riemann-Roch samples ---
@dataclass(frozen=True)
class HilbertCheck:
    polynomial: str
    top_intersection: Fraction
    matches_projective: bool
    matches_quadric: bool


def adjoint_hilbert_check(n, values):
    """Interpolates P(r) through r = 1..n+1 and reads off n! times its r^n coefficient."""
    values = [int(v) for v in values]
    if n < 1:
        raise InputError(f"dimension must be positive, got {n}")
    if len(values) != n + 1:
        logger.error(f"Hilbert check for n = {n} received {len(values)} values.")
        raise InputError(f"expected {n + 1} values at r = 1..{n + 1}, got {len(values)}")
    if any(v < 0 for v in values):
        raise InputError("Hilbert samples must be nonnegative")

    r = sympy.Symbol('r')
    interpolant = sympy.expand(sympy.interpolate(list(zip(range(1, n + 2), values)), r))
    lead = sympy.Rational(sympy.Poly(interpolant, r).coeff_monomial(r ** n))
    top = Fraction(int(lead.p), int(lead.q)) * factorial(n)

    projective = values == [0] * n + [1]
    quadric = values == [0] * (n - 1) + [1, n + 2]
    logger.info(f"Hilbert check n = {n}: P(r) = {interpolant}, top intersection {top}.")
    return HilbertCheck(str(interpolant), top, projective, quadric)
