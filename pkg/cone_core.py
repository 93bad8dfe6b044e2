"""Rational polyhedral cones with synchronized generator and facet representations.

A cone lives in the left space of a PairingForm. Its facet normals live in the
right space and evaluate generators through the pairing, so the same code
handles divisor cones (facets are curve classes), curve cones and the
self-paired surface classes.
"""
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

import ppl

import exact_linalg as la
from utils import logger, InputError, ConeError, PreconditionError, format_rational


# --- VECTORS ---
@dataclass(frozen=True, order=True)
class RatVec:
    coords: tuple

    def __post_init__(self):
        object.__setattr__(self, 'coords', tuple(Fraction(c) for c in self.coords))

    @classmethod
    def of(cls, values):
        return values if isinstance(values, RatVec) else cls(tuple(values))

    @classmethod
    def zero(cls, dim):
        return cls((0,) * dim)

    @property
    def dim(self):
        return len(self.coords)

    def __len__(self):
        return len(self.coords)

    def __iter__(self):
        return iter(self.coords)

    def __getitem__(self, i):
        return self.coords[i]

    def __add__(self, other):
        _check_dims(self, other)
        return RatVec(tuple(a + b for a, b in zip(self, other)))

    def __sub__(self, other):
        _check_dims(self, other)
        return RatVec(tuple(a - b for a, b in zip(self, other)))

    def __neg__(self):
        return RatVec(tuple(-a for a in self))

    def scale(self, c):
        c = Fraction(c)
        return RatVec(tuple(c * a for a in self))

    def is_zero(self):
        return all(a == 0 for a in self)

    def canonical_ray(self):
        """Primitive integer vector on the same ray (positive scaling only)."""
        return RatVec(la.primitive(self.coords))

    def canonical_line(self):
        """Primitive integer vector on the same line, first nonzero entry positive."""
        ints = la.primitive(self.coords)
        lead = next((x for x in ints if x != 0), 0)
        if lead < 0:
            ints = tuple(-x for x in ints)
        return RatVec(ints)

    def __str__(self):
        return "(" + ", ".join(format_rational(c) for c in self) + ")"


def _check_dims(u, v):
    if len(u) != len(v):
        logger.error(f"Dimension mismatch: {len(u)} vs {len(v)}.")
        raise InputError(f"dimension mismatch: {len(u)} vs {len(v)}")


# --- PAIRINGS ---
@dataclass(frozen=True)
class PairingForm:
    """Bilinear pairing x^T M y between a left and a right class space."""
    matrix: tuple
    left_labels: tuple = ()
    right_labels: tuple = ()

    def __post_init__(self):
        rows = tuple(tuple(Fraction(x) for x in row) for row in self.matrix)
        if not rows or not rows[0] or any(len(r) != len(rows[0]) for r in rows):
            raise InputError("pairing matrix must be a nonempty rectangular table")
        object.__setattr__(self, 'matrix', rows)
        object.__setattr__(self, 'left_labels', tuple(self.left_labels))
        object.__setattr__(self, 'right_labels', tuple(self.right_labels))

    @classmethod
    def identity(cls, dim, labels=()):
        return cls(tuple(tuple(int(i == j) for j in range(dim)) for i in range(dim)), labels, labels)

    @property
    def left_dim(self):
        return len(self.matrix)

    @property
    def right_dim(self):
        return len(self.matrix[0])

    def pair(self, x, y):
        if len(x) != self.left_dim or len(y) != self.right_dim:
            raise InputError(f"pairing expects ({self.left_dim}, {self.right_dim}) vectors, got ({len(x)}, {len(y)})")
        return la.dot(x, la.mat_vec(self.matrix, y))

    def functional(self, y):
        """The left-space linear form x -> x . y."""
        return la.mat_vec(self.matrix, y)

    def transpose(self):
        return PairingForm(tuple(la.transpose(self.matrix)), self.right_labels, self.left_labels)

    def is_symmetric(self):
        return self.left_dim == self.right_dim and all(
            self.matrix[i][j] == self.matrix[j][i] for i in range(self.left_dim) for j in range(i))

    @cached_property
    def _inverse(self):
        if self.left_dim != self.right_dim:
            return None
        return la.inverse(self.matrix)

    def from_functional(self, phi):
        """The right-space vector y with x . y = phi(x) for every x."""
        if self._inverse is None:
            logger.error(f"Degenerate pairing of shape {self.left_dim}x{self.right_dim}.")
            raise ConeError("pairing must be square and nondegenerate to represent facets")
        return la.mat_vec(self._inverse, phi)


# --- DOUBLE DESCRIPTION ---
def _ppl_rows(items, n):
    return [tuple(int(x) for x in item.coefficients()) + (0,) * (n - item.space_dimension())
            for item in items]

def minimized_representation(rays, n):
    """Both minimized descriptions of the cone spanned by integer `rays` in Q^n.

    Returns (extreme rays, facet normals, equation rows, lines), all integer
    tuples; facet normals a satisfy a . x >= 0 on the cone and equation rows
    vanish on it. A nonempty `lines` means the cone is not pointed.
    """
    poly = ppl.C_Polyhedron(n, 'empty')
    poly.add_generator(ppl.point())
    for r in rays:
        poly.add_generator(ppl.ray(ppl.Linear_Expression(list(r), 0)))
    generators = poly.minimized_generators()
    constraints = poly.minimized_constraints()
    extreme = _ppl_rows((g for g in generators if g.is_ray()), n)
    lines = _ppl_rows((g for g in generators if g.is_line()), n)
    normals = _ppl_rows((c for c in constraints if c.is_inequality()), n)
    equations = _ppl_rows((c for c in constraints if c.is_equality()), n)
    return extreme, normals, equations, lines


# --- CONES ---
@dataclass(frozen=True)
class PolyCone:
    ambient_dim: int
    generators: tuple
    facets: tuple
    pairing: PairingForm
    equations: tuple = field(default=())

    @cached_property
    def facet_functionals(self):
        return tuple(self.pairing.functional(f) for f in self.facets)

    @cached_property
    def equation_functionals(self):
        return tuple(self.pairing.functional(e) for e in self.equations)

    @property
    def is_full_dimensional(self):
        return not self.equations

    @property
    def dimension(self):
        return self.ambient_dim - len(self.equations)

    def evaluate(self, x):
        """Values of every facet normal on x, in facet order."""
        return tuple(la.dot(phi, x) for phi in self.facet_functionals)

    def __str__(self):
        return (f"cone of dimension {self.dimension} in ambient dimension {self.ambient_dim} "
                f"with {len(self.generators)} generators and {len(self.facets)} facets")


def _sorted_rays(vectors):
    return tuple(sorted({RatVec.of(v).canonical_ray() for v in vectors}))

def cone_from_generators(gens, pairing=None, ambient_dim=None):
    """Builds the cone spanned by `gens`, computing both representations exactly."""
    gens = [RatVec.of(g) for g in gens]
    if pairing is None:
        n = ambient_dim if ambient_dim is not None else (gens[0].dim if gens else None)
        if n is None:
            raise InputError("the zero cone needs an explicit ambient dimension or pairing")
        pairing = PairingForm.identity(n)
    n = pairing.left_dim
    for g in gens:
        if g.dim != n:
            logger.error(f"Generator {g} does not live in the {n}-dimensional space of the pairing.")
            raise InputError(f"generator {g} has dimension {g.dim}, expected {n}")
    if pairing.right_dim != n:
        raise ConeError("cone pairing must be square")

    rays = _sorted_rays(g for g in gens if not g.is_zero())
    ray_set = set(rays)
    for r in rays:
        if -r in ray_set:
            logger.error(f"Generators contain both {r} and {-r}.")
            raise ConeError(f"cone has lineality: both {r} and its negative are generators")

    extreme, normals, eq_rows, lines = minimized_representation([tuple(int(c) for c in r) for r in rays], n)
    if lines:
        logger.error(f"Generators in dimension {n} span a cone with lineality.")
        raise ConeError("cone has lineality (it is not pointed)")

    eq_rows, eq_pivots = la.rref(eq_rows, n) if eq_rows else ([], [])

    def reduce(phi):
        phi = [Fraction(x) for x in phi]
        for row, p in zip(eq_rows, eq_pivots):
            if phi[p] != 0:
                c = phi[p]
                phi = [a - c * b for a, b in zip(phi, row)]
        return phi

    extreme = _sorted_rays(extreme)
    if len(extreme) < len(rays):
        logger.info(f"Dropped {len(rays) - len(extreme)} redundant generator(s) in dimension {n}.")

    facets = _sorted_rays(pairing.from_functional(reduce(phi)) for phi in normals)
    equations = tuple(sorted({RatVec(pairing.from_functional(row)).canonical_line() for row in eq_rows}))
    cone = PolyCone(n, tuple(extreme), facets, pairing, equations)
    logger.info(f"Built {cone}.")
    return cone


def dual_cone(cone):
    """Cone of right-space vectors pairing nonnegatively with every generator."""
    if not cone.is_full_dimensional:
        logger.error("Dual requested for a lower-dimensional cone.")
        raise ConeError("the dual of a lower-dimensional cone has lineality")
    return PolyCone(cone.pairing.right_dim, cone.facets, cone.generators, cone.pairing.transpose())


def contains(cone, x):
    x = RatVec.of(x)
    if x.dim != cone.ambient_dim:
        logger.error(f"Membership test with a {x.dim}-vector in a {cone.ambient_dim}-dimensional cone.")
        raise InputError(f"dimension mismatch: vector has {x.dim} coordinates, cone lives in {cone.ambient_dim}")
    return (all(la.dot(phi, x) >= 0 for phi in cone.facet_functionals)
            and all(la.dot(eq, x) == 0 for eq in cone.equation_functionals))


def interior(cone, x):
    """Relative interior membership: strictly positive on every facet."""
    return contains(cone, x) and all(la.dot(phi, x) > 0 for phi in cone.facet_functionals)


def tight_facets(cone, x):
    x = RatVec.of(x)
    return tuple(f for f, phi in zip(cone.facets, cone.facet_functionals) if la.dot(phi, x) == 0)


def minimal_supported_face(cone, x):
    """Smallest face containing x, and its codimension in the ambient space."""
    x = RatVec.of(x)
    if not contains(cone, x):
        logger.error(f"Face requested for {x}, which is outside the cone.")
        raise PreconditionError(f"{x} is not in the cone")
    tight = [phi for phi in cone.facet_functionals if la.dot(phi, x) == 0]
    codim = la.rank(tight + list(cone.equation_functionals), cone.ambient_dim)
    face_gens = [g for g in cone.generators if all(la.dot(phi, g) == 0 for phi in tight)]
    face = cone_from_generators(face_gens, cone.pairing)
    return face, codim


def same_rays(left, right):
    """Generator-set equality up to positive scaling."""
    return _sorted_rays(left) == _sorted_rays(right)
