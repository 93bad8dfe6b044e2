from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from cone_core import RatVec, PairingForm, cone_from_generators, contains, tight_facets, minimal_supported_face
from invariants import (
    PolarizedSpace,
    GroupAction,
    ABResult,
    Ordering,
    BalancedVerdict,
    ABalancedVerdict,
    a_invariant,
    adjoint_class,
    b_invariant,
    ab_result,
    b_equivariant,
    group_closure,
    fixed_subspace,
    compare_lex,
    balanced_verdict,
    a_balanced_verdict,
    rational_curve_ab,
)
from utils import InputError, PreconditionError, GroupClosureError

HILB_PAIRING = PairingForm(((0, 1, 1), (1, 0, 1), (0, 0, 1)))
SWAP = ((0, 1, 0), (1, 0, 0), (0, 0, 1))


@pytest.fixture
def hilb_pseff():
    return cone_from_generators([(0, 0, 1), (1, 0, -1), (0, 1, -1)], HILB_PAIRING)


@pytest.fixture
def blowup_diagonal():
    """Bl_diag(P2 x P2) in the basis (H1, H2, E)."""
    pseff = cone_from_generators([(0, 0, 1), (1, 0, 0), (0, 1, 0), (1, 1, -1)])
    return PolarizedSpace("W", ("H1", "H2", "E"), pseff, (-3, -3, 1), (3, 3, 0), adjoint_rigid=True)


def test_hilbert_square_anticanonical(hilb_pseff):
    space = PolarizedSpace("X", (), hilb_pseff, (-2, -2, 0), (2, 2, 0))
    assert a_invariant(space) == 1
    assert adjoint_class(space).is_zero()
    assert b_invariant(space) == 3


def test_hilbert_square_sum_of_rulings(hilb_pseff):
    result = ab_result(PolarizedSpace("X", (), hilb_pseff, (-2, -2, 0), (1, 1, 0)))
    assert (result.a, result.b) == (2, 3)
    assert len(result.tight_facets) == 3


def test_projective_space_closed_form():
    line = cone_from_generators([(1,)])
    for n in range(1, 6):
        result = ab_result(PolarizedSpace(f"P{n}", ("H",), line, (-(n + 1),), (1,)))
        assert (result.a, result.b) == (n + 1, 1)


def test_non_big_polarization(hilb_pseff):
    space = PolarizedSpace("X", (), hilb_pseff, (-2, -2, 0), (0, 0, 1))
    with pytest.raises(PreconditionError, match="polarization not big"):
        a_invariant(space)
    with pytest.raises(PreconditionError):
        space.check()


def test_space_dimension_mismatch(hilb_pseff):
    with pytest.raises(InputError):
        PolarizedSpace("X", (), hilb_pseff, (-2, -2), (1, 1, 0))


def test_boundary_adjoint_class(blowup_diagonal):
    result = ab_result(blowup_diagonal)
    assert result.a == 1
    assert result.adjoint_class == RatVec((0, 0, 1))
    assert result.b == 2


def test_equivariant_b_swap_and_trivial(blowup_diagonal):
    swap = GroupAction((SWAP,), ((0, 0, 1),), name="swap")
    trivial = GroupAction((), ((0, 0, 1),), name="trivial")
    assert b_equivariant(blowup_diagonal, swap) == 1
    assert b_equivariant(blowup_diagonal, trivial) == 2


def test_equivariant_b_needs_rigid_flag(blowup_diagonal):
    space = PolarizedSpace("W", (), blowup_diagonal.pseff, blowup_diagonal.K, blowup_diagonal.L)
    with pytest.raises(PreconditionError):
        b_equivariant(space, GroupAction(()))


def test_equivariant_b_rejects_bad_actions(blowup_diagonal):
    moves_K = GroupAction((((1, 0, 0), (0, 1, 0), (0, 0, -1)),))
    with pytest.raises(InputError):
        b_equivariant(blowup_diagonal, moves_K)
    moves_rigid = GroupAction((SWAP,), ((1, 0, 0),))
    with pytest.raises(InputError):
        b_equivariant(blowup_diagonal, moves_rigid)


def test_group_closure_orders():
    assert len(group_closure([SWAP])) == 2
    cycle = ((0, 1, 0), (0, 0, 1), (1, 0, 0))
    assert len(group_closure([SWAP, cycle])) == 6
    assert len(group_closure([], dim=3)) == 1


def test_group_closure_bounds():
    cycle = ((0, 1, 0), (0, 0, 1), (1, 0, 0))
    with pytest.raises(GroupClosureError):
        group_closure([SWAP, cycle], bound=5)
    with pytest.raises(GroupClosureError):
        group_closure([((1, 1), (0, 1))])


def test_group_closure_keeps_large_entries_exact():
    flip = ((1, 2 ** 32), (0, -1))
    elements = group_closure([flip])
    assert len(elements) == 2
    assert sorted(tuple(map(int, m.ravel())) for m in elements) == [(1, 0, 0, 1), (1, 2 ** 32, 0, -1)]
    with pytest.raises(GroupClosureError, match="exceeds 50"):
        group_closure([((1, 2 ** 40), (0, 1))], bound=50)


def test_fixed_subspace():
    assert len(fixed_subspace([SWAP], 3)) == 2
    assert len(fixed_subspace([], 3)) == 3


def test_lexicographic_comparison():
    assert compare_lex(ABResult.cited(1, 2), ABResult.cited(1, 3)) is Ordering.LESS
    assert compare_lex(ABResult.cited(1, 3), ABResult.cited(1, 3)) is Ordering.EQUAL
    assert compare_lex(ABResult.cited(Fraction(3, 2), 1), ABResult.cited(1, 7)) is Ordering.GREATER


def test_balanced_verdicts():
    base = ABResult.cited(1, 3)
    assert balanced_verdict(base, ABResult.cited(1, 3)) is BalancedVerdict.WEAKLY_BALANCED_ONLY
    assert balanced_verdict(base, ABResult.cited(1, 1)) is BalancedVerdict.BALANCED
    assert balanced_verdict(base, ABResult.cited(1, 4)) is BalancedVerdict.NOT_WEAKLY_BALANCED
    assert balanced_verdict(base, ABResult.cited(1, 1), pullback_big=False) is BalancedVerdict.PULLBACK_NOT_BIG


def test_a_balanced_verdicts():
    assert a_balanced_verdict(2, 1) is ABalancedVerdict.STRONGLY_A_BALANCED
    assert a_balanced_verdict(2, 2) is ABalancedVerdict.A_BALANCED_ONLY
    assert a_balanced_verdict(1, Fraction(3, 2)) is ABalancedVerdict.NOT_A_BALANCED
    assert a_balanced_verdict(1, 1, pullback_big=False) is ABalancedVerdict.PULLBACK_NOT_BIG


def test_rational_curve_pair():
    assert rational_curve_ab(1) == ABResult(Fraction(2), 1)
    assert rational_curve_ab(4).a == Fraction(1, 2)
    with pytest.raises(PreconditionError):
        rational_curve_ab(0)


# --- Oracle equivalence ---
def _oracle_a(cone, K, L):
    """Exact a-invariant by bracketing, bisection and continued-fraction rounding."""
    member = lambda t: contains(cone, L.scale(t) + K)
    hi = Fraction(1)
    while not member(hi):
        hi *= 2
    lo = Fraction(-1)
    while member(lo):
        lo *= 2
    while hi - lo > Fraction(1, 10 ** 20):
        mid = (lo + hi) / 2
        if member(mid):
            hi = mid
        else:
            lo = mid
    for cap in (10, 10 ** 3, 10 ** 5, 10 ** 7):
        guess = hi.limit_denominator(cap)
        if member(guess) and not member(guess - Fraction(1, 10 ** 21)):
            return guess
    return hi


@st.composite
def polarized_spaces(draw):
    n = draw(st.integers(min_value=1, max_value=6))
    extra = draw(st.lists(st.lists(st.integers(-2, 3), min_size=n, max_size=n).filter(lambda v: sum(v) > 0),
                          max_size=4 if n > 4 else 6))
    gens = [tuple(int(i == j) for j in range(n)) for i in range(n)] + [tuple(v) for v in extra]
    weights = draw(st.lists(st.integers(1, 3), min_size=len(gens), max_size=len(gens)))
    L = [sum(w * g[i] for w, g in zip(weights, gens)) for i in range(n)]
    K = draw(st.lists(st.integers(-6, 3), min_size=n, max_size=n))
    cone = cone_from_generators(gens)
    return PolarizedSpace("random", (), cone, K, L)


@settings(max_examples=500, deadline=None)
@given(polarized_spaces())
def test_closed_form_matches_oracle(space):
    result = ab_result(space)
    assert result.a == _oracle_a(space.pseff, space.K, space.L)
    assert contains(space.pseff, result.adjoint_class)
    assert tight_facets(space.pseff, result.adjoint_class)
    assert 1 <= result.b <= space.rank


@settings(max_examples=100, deadline=None)
@given(polarized_spaces(), st.integers(min_value=1, max_value=5))
def test_scaling_polarization_scales_a(space, c):
    scaled = space.with_polarization(space.L.scale(c))
    assert a_invariant(scaled) == a_invariant(space) / c
    assert b_invariant(scaled) == b_invariant(space)


ab_pairs = st.builds(ABResult.cited, st.fractions(min_value=0, max_value=5, max_denominator=6),
                     st.integers(min_value=1, max_value=8))


@given(ab_pairs, ab_pairs, ab_pairs)
def test_lexicographic_order_laws(x, y, z):
    order = compare_lex(x, y)
    flipped = {Ordering.LESS: Ordering.GREATER, Ordering.GREATER: Ordering.LESS, Ordering.EQUAL: Ordering.EQUAL}
    assert compare_lex(y, x) is flipped[order]
    if compare_lex(x, y) is Ordering.LESS and compare_lex(y, z) is Ordering.LESS:
        assert compare_lex(x, z) is Ordering.LESS


@st.composite
def swap_symmetric_spaces(draw):
    """Adjoint rigid spaces whose data is symmetric under exchanging the first two coordinates."""
    n = draw(st.integers(min_value=2, max_value=5))
    swap = tuple(tuple(int(j == (1 - i if i < 2 else i)) for j in range(n)) for i in range(n))
    extra = draw(st.lists(st.lists(st.integers(-2, 3), min_size=n, max_size=n).filter(lambda v: sum(v) > 0),
                          max_size=3))
    gens = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    for v in extra:
        gens += [tuple(v), (v[1], v[0]) + tuple(v[2:])]
    cone = cone_from_generators(gens)
    L = [sum(g[i] for g in cone.generators) for i in range(n)]
    tail = draw(st.lists(st.integers(-6, 2), min_size=n - 1, max_size=n - 1))
    K = [tail[0]] + tail
    space = PolarizedSpace("symmetric", (), cone, K, L, adjoint_rigid=True)
    face, _ = minimal_supported_face(cone, adjoint_class(space))
    return space, swap, face.generators


@settings(max_examples=150, deadline=None)
@given(swap_symmetric_spaces())
def test_equivariant_b_never_exceeds_b(case):
    space, swap, rigid = case
    b = b_invariant(space)
    assert b_equivariant(space, GroupAction((), rigid)) == b
    assert b_equivariant(space, GroupAction((swap,), rigid)) <= b
