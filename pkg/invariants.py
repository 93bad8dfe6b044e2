"""Fujita invariant, b-invariant (geometric and equivariant) and balanced comparisons."""
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Optional

import numpy as np

import exact_linalg as la
from cone_core import RatVec, PolyCone, contains, interior, tight_facets, minimal_supported_face
from utils import (
    logger,
    InputError,
    PreconditionError,
    GroupClosureError,
    DEFAULT_GROUP_BOUND,
)


# --- TYPES ---
@dataclass(frozen=True)
class PolarizedSpace:
    name: str
    basis_labels: tuple
    pseff: PolyCone
    K: RatVec
    L: RatVec
    nef: Optional[PolyCone] = None
    adjoint_rigid: Optional[bool] = None

    def __post_init__(self):
        object.__setattr__(self, 'K', RatVec.of(self.K))
        object.__setattr__(self, 'L', RatVec.of(self.L))
        object.__setattr__(self, 'basis_labels', tuple(self.basis_labels))
        n = self.pseff.ambient_dim
        if self.K.dim != n or self.L.dim != n:
            raise InputError(f"space '{self.name}': K and L must have {n} coordinates")
        if self.basis_labels and len(self.basis_labels) != n:
            raise InputError(f"space '{self.name}': {len(self.basis_labels)} basis labels for rank {n}")

    @property
    def rank(self):
        return self.pseff.ambient_dim

    def check(self):
        """Raises PreconditionError unless L is big and nef sits inside pseff."""
        if not interior(self.pseff, self.L):
            raise PreconditionError(f"space '{self.name}': polarization not big")
        if self.nef is not None:
            outside = [g for g in self.nef.generators if not contains(self.pseff, g)]
            if outside:
                raise PreconditionError(f"space '{self.name}': nef generator {outside[0]} is not pseudo-effective")

    def with_polarization(self, L):
        return PolarizedSpace(self.name, self.basis_labels, self.pseff, self.K, L, self.nef, self.adjoint_rigid)


@dataclass(frozen=True)
class GroupAction:
    generators: tuple
    rigid_components: tuple = ()
    closure_bound: int = DEFAULT_GROUP_BOUND
    name: str = ""

    def __post_init__(self):
        gens = tuple(tuple(tuple(int(x) for x in row) for row in m) for m in self.generators)
        object.__setattr__(self, 'generators', gens)
        object.__setattr__(self, 'rigid_components', tuple(RatVec.of(c) for c in self.rigid_components))


@dataclass(frozen=True)
class ABResult:
    a: Fraction
    b: int
    adjoint_class: Optional[RatVec] = None
    tight_facets: tuple = field(default=())

    @classmethod
    def cited(cls, a, b):
        return cls(Fraction(a), int(b))

    def __str__(self):
        return f"({self.a}, {self.b})"


class Ordering(Enum):
    LESS = "less"
    EQUAL = "equal"
    GREATER = "greater"


class BalancedVerdict(Enum):
    BALANCED = "balanced"
    WEAKLY_BALANCED_ONLY = "weakly_balanced_only"
    NOT_WEAKLY_BALANCED = "not_weakly_balanced"
    PULLBACK_NOT_BIG = "pullback_not_big"


class ABalancedVerdict(Enum):
    STRONGLY_A_BALANCED = "strongly_a_balanced"
    A_BALANCED_ONLY = "a_balanced_only"
    NOT_A_BALANCED = "not_a_balanced"
    PULLBACK_NOT_BIG = "pullback_not_big"


# --- a AND b ---
def a_invariant(space):
    """min t with t L + K pseudo-effective: the largest facet ratio -v.K / v.L."""
    if not interior(space.pseff, space.L):
        logger.error(f"a-invariant requested for '{space.name}' with a non-big polarization.")
        raise PreconditionError("polarization not big")
    if any(la.dot(eq, space.K) != 0 for eq in space.pseff.equation_functionals):
        raise PreconditionError(f"space '{space.name}': K is outside the span of the pseudo-effective cone")
    if not space.pseff.facets:
        raise PreconditionError(f"space '{space.name}': pseudo-effective cone has no facets")
    a = max(-la.dot(phi, space.K) / la.dot(phi, space.L) for phi in space.pseff.facet_functionals)
    logger.info(f"a({space.name}) = {a}")
    return a


def adjoint_class(space):
    return space.L.scale(a_invariant(space)) + space.K


def b_invariant(space):
    _, codim = minimal_supported_face(space.pseff, adjoint_class(space))
    logger.info(f"b({space.name}) = {codim}")
    return codim


def ab_result(space):
    a = a_invariant(space)
    adjoint = adjoint_class(space)
    b = b_invariant(space)
    return ABResult(a, b, adjoint, tight_facets(space.pseff, adjoint))


def rational_curve_ab(degree):
    """(a, b) of a rational curve C with L.C = degree: a = 2 / degree, b = 1."""
    degree = Fraction(degree)
    if degree <= 0:
        raise PreconditionError(f"L.C must be positive for a big restriction, got {degree}")
    return ABResult(Fraction(2) / degree, 1)


# --- GROUP ACTIONS ---
def _key(m):
    return tuple(m.ravel().tolist())


def _matrix(rows):
    m = np.array([[int(x) for x in row] for row in rows], dtype=object)
    return m.astype(np.int64) if m.size == 0 or int(np.abs(m).max()) < 2 ** 62 else m


def _mul(s, g):
    """Exact product: int64 while entries provably fit, Python integers beyond."""
    if s.size == 0:
        return s @ g
    if s.dtype != object and g.dtype != object and int(np.abs(s).max()) * int(np.abs(g).max()) * len(s) < 2 ** 63:
        return s @ g
    return s.astype(object) @ g.astype(object)


def group_closure(generators, bound=DEFAULT_GROUP_BOUND, dim=None):
    """All elements of the matrix group generated by `generators` (identity first)."""
    gens = [_matrix(g) for g in generators]
    if dim is None:
        if not gens:
            raise InputError("group closure of an empty generator list needs a dimension")
        dim = gens[0].shape[0]
    identity = np.eye(dim, dtype=np.int64)
    elements = {_key(identity): identity}
    frontier = [identity]
    while frontier:
        new = []
        for g in frontier:
            for s in gens:
                h = _mul(s, g)
                key = _key(h)
                if key in elements:
                    continue
                elements[key] = h
                if len(elements) > bound:
                    logger.error(f"Group closure exceeded the bound of {bound} elements.")
                    raise GroupClosureError(f"group closure exceeds {bound} elements")
                new.append(h)
        frontier = new
    logger.info(f"Group closure has {len(elements)} elements.")
    return list(elements.values())


def fixed_subspace(generators, dim):
    """Basis of {x : M x = x for every generator M}."""
    rows = []
    for m in generators:
        rows.extend(tuple(m[i][j] - int(i == j) for j in range(dim)) for i in range(dim))
    return la.nullspace(rows, dim)


def _apply(m, v):
    return RatVec(la.mat_vec(m, v))


def validate_action(space, action):
    n = space.rank
    rays = set(space.pseff.generators)
    rigid = {c.canonical_ray() for c in action.rigid_components}
    for c in action.rigid_components:
        if c.dim != n:
            raise InputError(f"rigid component {c} has {c.dim} coordinates, expected {n}")
    for k, m in enumerate(action.generators):
        if len(m) != n or any(len(row) != n for row in m):
            raise InputError(f"action generator {k} is not a {n}x{n} matrix")
        if _apply(m, space.K) != space.K or _apply(m, space.L) != space.L:
            logger.error(f"Action generator {k} on '{space.name}' moves K or L.")
            raise InputError(f"action generator {k} does not fix K and L")
        if {_apply(m, g).canonical_ray() for g in rays} != rays:
            logger.error(f"Action generator {k} on '{space.name}' does not permute the pseudo-effective generators.")
            raise InputError(f"action generator {k} does not preserve the pseudo-effective cone")
        if {_apply(m, c).canonical_ray() for c in rigid} != rigid:
            raise InputError(f"action generator {k} does not permute the rigid components")


def b_equivariant(space, action, bound=None):
    """dim Fix(G) - dim(Fix(G) ∩ span(rigid components)), valid for adjoint rigid spaces."""
    if space.adjoint_rigid is not True:
        logger.error(f"Equivariant b requested for '{space.name}', which is not flagged adjoint rigid.")
        raise PreconditionError(f"space '{space.name}' is not flagged adjoint rigid")
    validate_action(space, action)
    n = space.rank
    group_closure(action.generators, bound if bound is not None else action.closure_bound, dim=n)
    fixed = fixed_subspace(action.generators, n)
    rigid = [c.coords for c in action.rigid_components]
    b = len(fixed) - la.intersection_dim(fixed, rigid, n)
    logger.info(f"b_equivariant({space.name}, {action.name or 'action'}) = {b}")
    return b


# --- COMPARISONS ---
def compare_lex(left, right):
    if (left.a, left.b) < (right.a, right.b):
        return Ordering.LESS
    if (left.a, left.b) == (right.a, right.b):
        return Ordering.EQUAL
    return Ordering.GREATER


def balanced_verdict(base, other, pullback_big=True):
    if not pullback_big:
        return BalancedVerdict.PULLBACK_NOT_BIG
    order = compare_lex(other, base)
    if order is Ordering.LESS:
        return BalancedVerdict.BALANCED
    if order is Ordering.EQUAL:
        return BalancedVerdict.WEAKLY_BALANCED_ONLY
    return BalancedVerdict.NOT_WEAKLY_BALANCED


def a_balanced_verdict(base_a, other_a, pullback_big=True):
    if not pullback_big:
        return ABalancedVerdict.PULLBACK_NOT_BIG
    if Fraction(other_a) < Fraction(base_a):
        return ABalancedVerdict.STRONGLY_A_BALANCED
    if Fraction(other_a) == Fraction(base_a):
        return ABalancedVerdict.A_BALANCED_ONLY
    return ABalancedVerdict.NOT_A_BALANCED
