from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import assume, given, settings, strategies as st

import exact_linalg as la
from cone_core import (
    RatVec,
    PairingForm,
    cone_from_generators,
    minimized_representation,
    dual_cone,
    contains,
    interior,
    tight_facets,
    minimal_supported_face,
    same_rays,
)
from utils import ConeError, InputError, PreconditionError

# Divisors (H1[2], H2[2], E) against curves (F1, F2, R) on the Hilbert square of P1xP1.
HILB_PAIRING = PairingForm(((0, 1, 1), (1, 0, 1), (0, 0, 1)))
E, D1, D2 = (0, 0, 1), (1, 0, -1), (0, 1, -1)
H1, H2, X11 = (1, 0, 0), (0, 1, 0), (1, 1, -1)
F1, F2, R = (1, 0, 0), (0, 1, 0), (0, 0, 1)
C, J1, J2 = (1, 1, -1), (0, -1, 1), (-1, 0, 1)

OCTANT = [(1, 0, 0), (0, 1, 0), (0, 0, 1)]


def test_ratvec_text_and_canonical_forms():
    v = RatVec((1, Fraction(-1, 2)))
    assert str(v) == "(1, -1/2)"
    assert v.canonical_ray() == RatVec((2, -1))
    assert RatVec((0, -2, 4)).canonical_ray() == RatVec((0, -1, 2))
    assert RatVec((0, -2, 4)).canonical_line() == RatVec((0, 1, -2))


def test_pairing_form_helpers():
    assert not HILB_PAIRING.is_symmetric()
    assert HILB_PAIRING.transpose().transpose() == HILB_PAIRING
    assert PairingForm(((2, 1), (1, 3))).is_symmetric()
    y = HILB_PAIRING.from_functional((1, 2, 3))
    for x in [(1, 0, 0), (0, 1, 0), (0, 0, 1)]:
        assert HILB_PAIRING.pair(x, y) == la.dot(x, (1, 2, 3))


def test_octant_is_self_dual():
    cone = cone_from_generators(OCTANT)
    assert cone.is_full_dimensional
    assert same_rays(cone.generators, cone.facets)
    assert same_rays(dual_cone(cone).generators, OCTANT)


def test_minimized_representation_of_a_square_cone():
    square = [(1, 0, 1), (0, 1, 1), (-1, 0, 1), (0, -1, 1), (0, 0, 1)]
    extreme, normals, equations, lines = minimized_representation(square, 3)
    assert sorted(extreme) == [(-1, 0, 1), (0, -1, 1), (0, 1, 1), (1, 0, 1)]
    assert sorted(normals) == [(-1, -1, 1), (-1, 1, 1), (1, -1, 1), (1, 1, 1)]
    assert equations == [] and lines == []
    _, _, _, lines = minimized_representation([(1, 0), (-1, 1), (0, -1)], 2)
    assert lines
    extreme, normals, equations, _ = minimized_representation([(1, 0, 0)], 3)
    assert extreme == [(1, 0, 0)]
    assert len(normals) == 1 and normals[0][0] > 0
    assert len(equations) == 2


def test_redundant_generator_is_dropped():
    cone = cone_from_generators([(1, 0), (0, 1), (1, 1), (2, 2)])
    assert cone.generators == (RatVec((0, 1)), RatVec((1, 0)))


def test_lineality_is_rejected():
    with pytest.raises(ConeError):
        cone_from_generators([(1, 0), (-1, 0), (0, 1)])
    with pytest.raises(ConeError):
        cone_from_generators([(1, 0), (-1, 1), (0, -1)])


def test_lower_dimensional_cone_keeps_equations():
    cone = cone_from_generators([(1, 0, 0), (0, 1, 0)])
    assert cone.dimension == 2
    assert cone.equations == (RatVec((0, 0, 1)),)
    assert contains(cone, (1, 1, 0))
    assert not contains(cone, (1, 1, 1))
    assert interior(cone, (1, 2, 0))
    with pytest.raises(ConeError):
        dual_cone(cone)


def test_zero_cone_needs_a_dimension():
    with pytest.raises(InputError):
        cone_from_generators([])
    cone = cone_from_generators([], ambient_dim=2)
    assert cone.generators == () and cone.dimension == 0
    assert contains(cone, (0, 0))


def test_dimension_mismatch():
    cone = cone_from_generators(OCTANT)
    with pytest.raises(InputError):
        contains(cone, (1, 1))
    with pytest.raises(InputError):
        cone_from_generators([(1, 0), (0, 1, 0)])


def test_degenerate_pairing_is_rejected():
    with pytest.raises(ConeError):
        cone_from_generators([(1, 0), (0, 1)], PairingForm(((1, 1), (1, 1))))


def test_divisor_curve_dualities():
    pseff = cone_from_generators([E, D1, D2], HILB_PAIRING)
    nef = cone_from_generators([H1, H2, X11], HILB_PAIRING)
    assert same_rays(dual_cone(pseff).generators, [F1, F2, R])
    assert same_rays(dual_cone(nef).generators, [J1, J2, C])


def test_dual_rebuilt_from_its_generators_returns_the_cone():
    pseff = cone_from_generators([E, D1, D2], HILB_PAIRING)
    curves = cone_from_generators([F1, F2, R], HILB_PAIRING.transpose())
    assert same_rays(curves.facets, pseff.generators)


def test_membership_against_curve_facets():
    pseff = cone_from_generators([E, D1, D2], HILB_PAIRING)
    assert contains(pseff, X11)
    assert not contains(pseff, (-1, 0, 2))
    assert not interior(pseff, E)
    assert interior(pseff, (1, 1, 0))


def test_minimal_face_of_boundary_ray():
    pseff = cone_from_generators([E, D1, D2], HILB_PAIRING)
    face, codim = minimal_supported_face(pseff, E)
    assert codim == 2
    assert face.generators == (RatVec(E),)
    assert same_rays(tight_facets(pseff, E), [F1, F2])


def test_minimal_face_of_zero_and_interior():
    cone = cone_from_generators(OCTANT)
    assert minimal_supported_face(cone, (0, 0, 0))[1] == 3
    assert minimal_supported_face(cone, (1, 1, 1))[1] == 0
    face, codim = minimal_supported_face(cone, (1, 1, 0))
    assert codim == 1 and len(face.generators) == 2


def test_minimal_face_outside_cone():
    with pytest.raises(PreconditionError):
        minimal_supported_face(cone_from_generators(OCTANT), (1, -1, 0))


def _brute_force_facets(gens, n):
    """Normals of hyperplanes through n-1 independent generators that support every generator."""
    facets = set()
    for subset in combinations(gens, n - 1):
        if la.rank(subset, n) < n - 1:
            continue
        normal = la.nullspace(subset, n)[0]
        values = [la.dot(normal, g) for g in gens]
        if all(v >= 0 for v in values):
            facets.add(RatVec(normal).canonical_ray())
        elif all(v <= 0 for v in values):
            facets.add((-RatVec(normal)).canonical_ray())
    return facets


@st.composite
def pointed_generators(draw, n=3):
    """Standard basis plus extra vectors with positive coordinate sum: pointed and full-dimensional."""
    extra = draw(st.lists(st.lists(st.integers(-3, 3), min_size=n, max_size=n).filter(lambda v: sum(v) > 0),
                          max_size=5))
    basis = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    return basis + [tuple(v) for v in extra]


@settings(max_examples=150, deadline=None)
@given(pointed_generators())
def test_facets_match_brute_force(gens):
    cone = cone_from_generators(gens)
    assert set(cone.facets) == _brute_force_facets(gens, 3)
    for g in gens:
        assert contains(cone, g)


@settings(max_examples=100, deadline=None)
@given(pointed_generators(n=4))
def test_dual_generators_rebuild_primal_facets(gens):
    cone = cone_from_generators(gens)
    dual = dual_cone(cone)
    rebuilt = cone_from_generators(dual.generators, dual.pairing)
    assert set(rebuilt.facets) == set(cone.generators)
    assert set(rebuilt.generators) == set(dual.generators)


@st.composite
def full_rank_generators(draw):
    """2..12 generators in dimension 2..6, all with positive coordinate sum so the cone is pointed."""
    n = draw(st.integers(min_value=2, max_value=6))
    vectors = st.lists(st.integers(-3, 3), min_size=n, max_size=n).filter(lambda v: sum(v) > 0)
    gens = [tuple(v) for v in draw(st.lists(vectors, min_size=n, max_size=12))]
    assume(la.rank(gens, n) == n)
    return gens


@settings(max_examples=200, deadline=None)
@given(full_rank_generators())
def test_double_dual_is_the_cone(gens):
    cone = cone_from_generators(gens)
    dual = dual_cone(cone)
    rebuilt = cone_from_generators(dual.generators, dual.pairing)
    assert set(rebuilt.facets) == set(cone.generators)
    assert same_rays(dual_cone(rebuilt).generators, cone.generators)
    for f in cone.facets:
        assert contains(dual, f)
    for g in gens:
        assert contains(cone, g)


@settings(max_examples=150, deadline=None)
@given(full_rank_generators())
def test_facets_are_supporting_hyperplanes(gens):
    cone = cone_from_generators(gens)
    n = cone.ambient_dim
    for f in cone.facets:
        tight = [g for g in cone.generators if la.dot(g, f) == 0]
        assert la.rank(tight, n) == n - 1
        assert all(la.dot(g, f) >= 0 for g in gens)


@settings(max_examples=150, deadline=None)
@given(full_rank_generators(), st.data())
def test_face_codimension_zero_exactly_on_the_interior(gens, data):
    cone = cone_from_generators(gens)
    weights = data.draw(st.lists(st.integers(0, 2), min_size=len(cone.generators),
                                 max_size=len(cone.generators)))
    x = RatVec.zero(cone.ambient_dim)
    for w, g in zip(weights, cone.generators):
        x = x + g.scale(w)
    face, codim = minimal_supported_face(cone, x)
    assert (codim == 0) == interior(cone, x)
    assert codim <= len(tight_facets(cone, x))
    assert contains(face, x)


@settings(max_examples=100, deadline=None)
@given(st.lists(st.sampled_from([E, D1, D2, X11, H1, H2]), min_size=1, max_size=6))
def test_dual_under_a_nonsymmetric_pairing(gens):
    assume(la.rank(gens, 3) == 3)
    cone = cone_from_generators(gens, HILB_PAIRING)
    dual = dual_cone(cone)
    for g in cone.generators:
        for c in dual.generators:
            assert HILB_PAIRING.pair(g, c) >= 0
    rebuilt = cone_from_generators(dual.generators, dual.pairing)
    assert set(rebuilt.facets) == set(cone.generators)
