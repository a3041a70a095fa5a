import pytest
from hypothesis import given, strategies as st

from tnc_origami.perm import (
    CycleType,
    Permutation,
    commutator,
    compose,
    cycle_type,
    is_transitive,
)


def P(text, d):
    return Permutation.parse(text, d)


@st.composite
def perms(draw, d=None):
    d = d if d is not None else draw(st.integers(1, 9))
    return Permutation(draw(st.permutations(list(range(d)))))


@st.composite
def perm_pairs(draw, count=2):
    d = draw(st.integers(1, 9))
    return [Permutation(draw(st.permutations(list(range(d))))) for _ in range(count)]


def test_compose_involution_squared():
    assert compose(P("(1,2)", 2), P("(1,2)", 2)).is_identity()


def test_compose_identity_left():
    v = P("(1,3,2)", 4)
    assert compose(Permutation.identity(4), v) == v


def test_compose_applies_rightmost_first():
    # v = (1 2) sends 1 -> 2, then u = (1 2 3) sends 2 -> 3
    assert compose(P("(1,2,3)", 3), P("(1,2)", 3)) == P("(1,3)", 3)


def test_compose_size_mismatch():
    with pytest.raises(ValueError):
        compose(P("(1,2)", 2), P("(1,2)", 3))


def test_commutator_with_identity():
    v = P("(1,2,3)(4,5)", 5)
    assert commutator(Permutation.identity(5), v).is_identity()


def test_commutator_of_smallest_building_block():
    a = P("(1,2,3,4)", 4)
    b = P("(1,2,3)", 4)
    c = commutator(b.inverse(), a.inverse())
    assert c == P("(2,4,3)", 4)
    assert c(0) == 0


def test_commutator_disjoint_supports():
    assert commutator(P("(1,2)", 5), P("(3,4,5)", 5)).is_identity()


def test_cycle_type_examples():
    assert cycle_type(Permutation.identity(5)) == (1, 1, 1, 1, 1)
    assert cycle_type(P("(2,4,3)", 4)) == CycleType([3, 1])
    h1234 = P("(1,2,3)(5,6,7)(8,9,10)(12,16,13,14,15)(17,18,19)", 21)
    assert cycle_type(h1234) == CycleType([3, 3, 3, 5, 3, 1, 1, 1, 1])
    assert sum(cycle_type(h1234)) == 21


def test_is_transitive_examples():
    assert is_transitive([P("(1,2,3,4)", 4), P("(1,2,3)", 4)])
    assert not is_transitive([Permutation.identity(2)])
    assert is_transitive([P("(1,2)", 2)])
    assert not is_transitive([], d=2)
    assert is_transitive([], d=1)


def test_cycle_notation_round_trip():
    p = P(" (1, 5,2)( 3 ,4) ", 6)
    assert p.cycle_string() == "(1,5,2)(3,4)"
    assert P(p.cycle_string(), 6) == p
    assert Permutation.identity(3).cycle_string() == "()"
    assert P("()", 3).is_identity()


@pytest.mark.parametrize("bad", ["(1,2", "(1,1)", "(0,1)", "(1,7)", "1,2"])
def test_cycle_notation_rejects(bad):
    with pytest.raises(ValueError):
        P(bad, 4)


def test_not_a_bijection():
    with pytest.raises(ValueError):
        Permutation([0, 0, 1])


def test_one_based_images():
    p = Permutation.from_images([2, 3, 1])
    assert p.images1 == [2, 3, 1]
    assert p == P("(1,2,3)", 3)


def test_power_matches_repeated_composition():
    p = P("(1,2,3,4,5)(6,7)", 7)
    q = Permutation.identity(7)
    for k in range(12):
        assert p**k == q
        q = q * p
    assert p**-1 == p.inverse()
    assert p**-23 == (p.inverse()) ** 23


@given(perms())
def test_compose_with_inverse_is_identity(u):
    assert compose(u, u.inverse()).is_identity()
    assert compose(u.inverse(), u).is_identity()


@given(perm_pairs())
def test_cycle_type_conjugation_invariant(pair):
    u, w = pair
    assert cycle_type(w * u * w.inverse()) == cycle_type(u)


@given(perm_pairs())
def test_commutator_cycle_type_symmetric(pair):
    u, v = pair
    assert cycle_type(commutator(u, v)) == cycle_type(commutator(v, u))


@given(perm_pairs())
def test_commutator_is_even(pair):
    c = commutator(*pair)
    assert c.sign() == 1
    assert sum(1 for k in cycle_type(c) if k % 2 == 0) % 2 == 0
