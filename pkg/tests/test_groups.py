import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from weightedsaw.errors import InvalidHomomorphism
from weightedsaw.groups import (
    FreeAbelian,
    FreeGroup,
    Heisenberg3,
    Homomorphism,
    canonical_key,
    evaluate_homomorphism,
    identity,
    inverse,
    make_group,
    multiply,
)

Z2 = FreeAbelian(2)
H3 = Heisenberg3()
F2 = FreeGroup(2)

small = st.integers(-4, 4)
z2_elems = st.tuples(small, small)
h3_elems = st.tuples(small, small, small)
f2_elems = st.lists(st.sampled_from([1, -1, 2, -2]), max_size=6).map(lambda w: F2.reduce(w))


def test_identities():
    assert identity(Z2) == (0, 0)
    assert identity(H3) == (0, 0, 0)
    assert identity(F2) == ()


def test_multiply_examples():
    assert multiply(Z2, (1, 0), (0, 1)) == (1, 1)
    assert multiply(H3, (1, 0, 0), (0, 1, 0)) == (1, 1, 1)
    assert multiply(H3, (0, 1, 0), (1, 0, 0)) == (1, 1, 0)
    assert multiply(F2, F2.parse("ab"), F2.parse("b^-1 a")) == F2.parse("aa")


def test_inverse_examples():
    assert inverse(Z2, (3, -1)) == (-3, 1)
    assert inverse(H3, (1, 1, 1)) == (-1, -1, 0)
    assert multiply(H3, (1, 1, 1), (-1, -1, 0)) == (0, 0, 0)
    assert inverse(F2, F2.parse("ab")) == F2.parse("b^-1 a^-1")


def test_free_group_words_are_reduced():
    assert F2.reduce([1, 2, -2, -1, 1]) == (1,)
    assert F2.format(F2.parse("ab")) == "ab"


@pytest.mark.parametrize("group,elems", [(Z2, z2_elems), (H3, h3_elems), (F2, f2_elems)])
def test_group_laws(group, elems):
    @settings(max_examples=60, deadline=None)
    @given(elems, elems, elems)
    def check(a, b, c):
        e = group.identity()
        assert group.multiply(group.multiply(a, b), c) == group.multiply(a, group.multiply(b, c))
        assert group.multiply(a, e) == a == group.multiply(e, a)
        assert group.multiply(a, group.inverse(a)) == e

    check()


def test_canonical_key():
    assert canonical_key(Z2, (0, 0)) == canonical_key(Z2, Z2.identity())
    assert canonical_key(Z2, (1, 0)) != canonical_key(Z2, (0, 1))
    assert canonical_key(F2, F2.parse("ab")) == canonical_key(F2, multiply(F2, F2.parse("a"), F2.parse("b")))
    assert isinstance(canonical_key(H3, (1, 2, 3)), bytes)


@settings(max_examples=80, deadline=None)
@given(h3_elems, h3_elems)
def test_canonical_key_injective_heisenberg(a, b):
    assert (canonical_key(H3, a) == canonical_key(H3, b)) == (a == b)


def test_homomorphism_examples():
    assert evaluate_homomorphism(Homomorphism(Z2, (1, 0)), (3, 5)) == 3
    assert evaluate_homomorphism(Homomorphism(H3, (1, 0)), (2, 7, -4)) == 2
    F = Homomorphism(F2, (1, -1))
    assert F(F2.parse("ab")) == 0
    assert F(F2.parse("aab^-1")) == 3


def test_homomorphism_rejects_bad_input():
    with pytest.raises(InvalidHomomorphism):
        Homomorphism(Z2, (0, 0))
    with pytest.raises(InvalidHomomorphism):
        Homomorphism(Z2, (1,))
    with pytest.raises(InvalidHomomorphism):
        Homomorphism(H3, (1, 0, 1))


@settings(max_examples=60, deadline=None)
@given(f2_elems, f2_elems)
def test_homomorphism_is_additive(a, b):
    F = Homomorphism(F2, (2, -3))
    assert F(F2.multiply(a, b)) == F(a) + F(b)


def test_make_group_round_trip():
    for g in (Z2, H3, F2):
        assert make_group(g.spec()).spec() == g.spec()
