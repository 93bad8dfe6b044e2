"""The lattice Z^{1,n} of a blow-up of the plane in n <= 8 points.

Coordinates of a class a h + b_1 e_1 + ... + b_n e_n are (a, b_1, ..., b_n),
with h^2 = 1, e_i^2 = -1 and K = -3h + e_1 + ... + e_n.

Enumeration bound: for a (-1)-class put beta = -b, so sum(beta) = 3a - 1 and
sum(beta^2) = a^2 + 1. Cauchy-Schwarz gives (3a - 1)^2 <= n (a^2 + 1), i.e.
(9 - n) a^2 - 6a + 1 - n <= 0, so |a| <= (3 + sqrt(n (10 - n))) / (9 - n).
For a root sum(beta) = 3a and sum(beta^2) = a^2 + 2, giving
(9 - n) a^2 <= 2n. The search covers |a| < bound, where bound defaults to
one more than these limits; a solution with |a| = bound means the bound
was too small and raises instead of returning an incomplete set.
"""
from dataclasses import dataclass
from enum import Enum
from math import isqrt

import numpy as np
from sympy.utilities.iterables import multiset_permutations

import exact_linalg as la
from cone_core import RatVec
from utils import logger, InputError, EnumerationBoundError

MAX_POINTS = 8


class Kind(Enum):
    MINUS_ONE = "minus_one"
    MINUS_TWO = "minus_two"
    OTHER = "other"


@dataclass(frozen=True)
class DPLattice:
    n: int

    def __post_init__(self):
        if not isinstance(self.n, int) or not 0 <= self.n <= MAX_POINTS:
            logger.error(f"Rejected del Pezzo lattice with n = {self.n!r}.")
            raise InputError(f"number of blown-up points must be in 0..{MAX_POINTS}, got {self.n!r}")

    @property
    def rank(self):
        return self.n + 1

    @property
    def basis(self):
        return ('h',) + tuple(f"e{i}" for i in range(1, self.n + 1))

    @property
    def form(self):
        return tuple(tuple((1 if i == 0 else -1) if i == j else 0 for j in range(self.rank))
                     for i in range(self.rank))

    @property
    def K(self):
        return RatVec((-3,) + (1,) * self.n)


@dataclass(frozen=True, order=True)
class CurveClass:
    vector: RatVec
    kind: Kind

    def __str__(self):
        return str(self.vector)


def pair(lattice, x, y):
    if len(x) != lattice.rank or len(y) != lattice.rank:
        raise InputError(f"classes on Z^(1,{lattice.n}) need {lattice.rank} coordinates")
    return x[0] * y[0] - sum(a * b for a, b in zip(x[1:], y[1:]))


def degree(lattice):
    return pair(lattice, lattice.K, lattice.K)


def classify(lattice, v):
    v = RatVec.of(v)
    if any(c.denominator != 1 for c in v):
        raise InputError(f"lattice classes have integer coordinates, got {v}")
    sq, k = pair(lattice, v, v), pair(lattice, v, lattice.K)
    if sq == -1 and k == -1:
        return Kind.MINUS_ONE
    if sq == -2 and k == 0:
        return Kind.MINUS_TWO
    return Kind.OTHER


def _curve(lattice, v):
    v = RatVec.of(v)
    return CurveClass(v, classify(lattice, v))


# --- ENUMERATION ---
def _nonincreasing(k, total, squares, ceiling):
    """Nonincreasing integer k-tuples with the given sum and sum of squares, entries <= ceiling."""
    if k == 0:
        if total == 0 and squares == 0:
            yield ()
        return
    if squares < 0 or total * total > k * squares:
        return
    top = min(ceiling, isqrt(squares))
    for x in range(top, -isqrt(squares) - 1, -1):
        if total - x > (k - 1) * x:
            break
        for rest in _nonincreasing(k - 1, total - x, squares - x * x, x):
            yield (x,) + rest


def _solve(lattice, sum_of, squares_of, a_limit, bound):
    n = lattice.n
    if bound is None:
        bound = a_limit + 1
    found = []
    for a in range(-bound, bound + 1):
        for beta in _nonincreasing(n, sum_of(a), squares_of(a), squares_of(a)):
            if abs(a) >= bound:
                logger.error(f"Enumeration on Z^(1,{n}) found a solution at |a| = {abs(a)}, bound {bound}.")
                raise EnumerationBoundError(f"solution with |a| = {abs(a)} reaches the search bound {bound}")
            for perm in multiset_permutations(list(beta)):
                found.append((a,) + tuple(-x for x in perm))
    return found


def enumerate_minus_one(lattice, bound=None):
    """All classes with c^2 = -1 and K.c = -1, sorted by coordinates."""
    n = lattice.n
    if n == 0:
        return ()
    a_limit = (3 + isqrt(n * (10 - n)) + 1) // (9 - n)
    vectors = _solve(lattice, lambda a: 3 * a - 1, lambda a: a * a + 1, a_limit, bound)
    classes = tuple(sorted(CurveClass(RatVec(v), Kind.MINUS_ONE) for v in set(vectors)))
    logger.info(f"Found {len(classes)} (-1)-classes on Z^(1,{n}).")
    return classes


def enumerate_minus_two(lattice, bound=None):
    """All roots: c^2 = -2 and K.c = 0, both signs, sorted by coordinates."""
    n = lattice.n
    a_limit = isqrt(2 * n // (9 - n)) + 1
    vectors = _solve(lattice, lambda a: 3 * a, lambda a: a * a + 2, a_limit, bound)
    classes = tuple(sorted(CurveClass(RatVec(v), Kind.MINUS_TWO) for v in set(vectors)))
    logger.info(f"Found {len(classes)} roots on Z^(1,{n}).")
    return classes


# --- WEYL GROUP ---
def reflection_matrix(lattice, root):
    """Matrix of x -> x + (x.r) r, an isometry fixing K for every root r."""
    r = RatVec.of(root)
    if classify(lattice, r) is not Kind.MINUS_TWO:
        raise InputError(f"{r} is not a root of Z^(1,{lattice.n})")
    m = lattice.rank
    columns = []
    for j in range(m):
        e = tuple(int(i == j) for i in range(m))
        c = pair(lattice, e, r)
        columns.append([int(e[i] + c * r[i]) for i in range(m)])
    return tuple(tuple(columns[j][i] for j in range(m)) for i in range(m))


def weyl_generators(lattice):
    """Simple reflections: e_i <-> e_{i+1} swaps, plus the Cremona reflection for n >= 3."""
    n = lattice.n
    gens = []
    for i in range(1, n):
        root = [0] * (n + 1)
        root[i], root[i + 1] = 1, -1
        gens.append(reflection_matrix(lattice, root))
    if n >= 3:
        gens.append(reflection_matrix(lattice, [1, -1, -1, -1] + [0] * (n - 3)))
    return gens


def _permutation(m, order):
    """Matrix sending coordinate order[k] to position k (h stays first)."""
    p = np.zeros((m, m), dtype=np.int64)
    p[0, 0] = 1
    for k, src in enumerate(order, start=1):
        p[k, src] = 1
    return p


def reduce_to_exceptional(lattice, c):
    """Isometry g with g c = e_n, built from sorting swaps and Cremona reflections."""
    v = RatVec.of(c)
    if classify(lattice, v) is not Kind.MINUS_ONE:
        logger.error(f"Blow-down requested for {v}, which is not a (-1)-class.")
        raise InputError(f"{v} is not a (-1)-class on Z^(1,{lattice.n})")
    n, m = lattice.n, lattice.rank
    x = np.array([int(t) for t in v], dtype=np.int64)
    g = np.eye(m, dtype=np.int64)
    cremona = np.array(reflection_matrix(lattice, [1, -1, -1, -1] + [0] * (n - 3)), dtype=np.int64) if n >= 3 else None
    while x[0] > 0:
        if cremona is None:
            raise InputError(f"{v} is not Weyl equivalent to an exceptional class for n = {n}")
        order = sorted(range(1, m), key=lambda i: (x[i], i))
        step = cremona @ _permutation(m, order)
        y = step @ x
        if y[0] >= x[0]:
            raise InputError(f"Cremona reduction of {v} does not terminate")
        x, g = y, step @ g
    i = int(np.flatnonzero(x[1:])[0]) + 1
    order = [j for j in range(1, m) if j != i] + [i]
    g = _permutation(m, order) @ g
    return tuple(tuple(int(t) for t in row) for row in g), n


@dataclass(frozen=True)
class BlowDown:
    source: DPLattice
    target: DPLattice
    contracted: RatVec
    isometry: tuple

    def image(self, x):
        """Class on the contracted surface of a class orthogonal to the contracted curve."""
        v = RatVec.of(x)
        if pair(self.source, v, self.contracted) != 0:
            raise InputError(f"{v} meets the contracted curve {self.contracted}; it has no image")
        return RatVec(la.mat_vec(self.isometry, v)[:-1])


def blow_down(lattice, c):
    """Contracts the (-1)-class c: Z^(1,n) -> Z^(1,n-1), degree goes up by one."""
    g, _ = reduce_to_exceptional(lattice, c)
    result = BlowDown(lattice, DPLattice(lattice.n - 1), RatVec.of(c), g)
    logger.info(f"Blew down {result.contracted}: degree {degree(lattice)} -> {degree(result.target)}.")
    return result


def crepant_rank_drop(lattice, roots):
    """Rank of the span of the contracted roots, the Picard rank lost by the contraction."""
    vectors = []
    for r in roots:
        v = r.vector if isinstance(r, CurveClass) else RatVec.of(r)
        if classify(lattice, v) is not Kind.MINUS_TWO:
            logger.error(f"Crepant contraction given {v}, which is not a root.")
            raise InputError(f"{v} is not a (-2)-class on Z^(1,{lattice.n})")
        vectors.append(v.coords)
    return la.rank(vectors, lattice.rank)
