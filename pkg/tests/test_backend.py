import itertools

import pytest
from hypothesis import given, strategies as st

from relcat.backend import (
    FINGRP,
    FINQGRP,
    FINSET,
    Kind,
    check_malcev_witness,
    check_variety_axioms,
    enumerate_subobjects,
    finvect,
    is_entirely_inhabited,
    is_subobject,
    make_object,
    prod,
    product,
    subobject_generated,
    terminal,
)
from relcat.catalog import (
    cyclic,
    finset,
    idempotent_quasigroup_table,
    klein,
    quasigroup,
    small_groups,
    subtraction_quasigroup_table,
    vect,
)
from relcat.errors import (
    BadPrime,
    EnumerationBudgetExceeded,
    IndexOutOfRange,
    KindMismatch,
    MalformedAlgebra,
)

Z2 = [[0, 1], [1, 0]]


def brute_subobjects(A):
    """Every closed subset, by trying all of them."""
    out = []
    for k in range(A.size + 1):
        for S in itertools.combinations(A.elements, k):
            if is_subobject(A, S):
                out.append(frozenset(S))
    return out


def test_make_object_basic():
    assert make_object(FINSET, 2).size == 2
    assert make_object(FINGRP, Z2).size == 2
    with pytest.raises(MalformedAlgebra):
        make_object(FINGRP, [[0, 1], [0, 1]])


def test_bad_tables_rejected():
    with pytest.raises(MalformedAlgebra):
        make_object(FINGRP, [[1, 0], [0, 1]])   # identity not at index 0
    with pytest.raises(MalformedAlgebra):
        make_object(FINQGRP, [[0, 0], [1, 1]])  # not a Latin square
    with pytest.raises(MalformedAlgebra):
        make_object(FINGRP, [])
    with pytest.raises(BadPrime):
        finvect(4)
    with pytest.raises(KindMismatch):
        prod(finset(2), cyclic(2))


def test_products():
    assert prod(finset(2), finset(3)).size == 6
    V = prod(vect(2, 1), vect(2, 2))
    assert V == vect(2, 3) and V.dim == 3
    K = prod(cyclic(2), cyclic(2))
    # direct table of Z2 x Z2 with index a*2+b
    expected = [[((x >> 1) ^ (y >> 1)) * 2 + ((x & 1) ^ (y & 1)) for y in range(4)] for x in range(4)]
    assert [list(r) for r in K.mul_table()] == expected


def test_pair_unpair_inverse():
    P = product(cyclic(3), cyclic(2))
    for a in range(3):
        for b in range(2):
            assert P.unpair(P.pair(a, b)) == (a, b)
    assert P.obj.size == 6


def test_terminal_objects():
    assert terminal(FINSET).size == 1
    assert terminal(FINGRP).size == 1
    T = terminal(finvect(3))
    assert T.size == 1 and T.dim == 0


def test_is_subobject_examples():
    Z = cyclic(2)
    assert is_subobject(Z, {0})
    assert not is_subobject(Z, {1})
    assert is_subobject(finset(3), {0, 2})
    with pytest.raises(IndexOutOfRange):
        is_subobject(Z, {2})


def test_subobject_generated():
    assert subobject_generated(cyclic(4), {2}) == {0, 2}
    assert subobject_generated(finset(3), set()) == frozenset()
    assert subobject_generated(cyclic(3), set()) == {0}
    assert subobject_generated(vect(2, 2), set()) == {0}
    assert subobject_generated(quasigroup(idempotent_quasigroup_table(3)), set()) == frozenset()
    assert subobject_generated(finset(3), {1, 2}) == {1, 2}


def test_enumerate_subobjects_examples():
    assert list(enumerate_subobjects(finset(2))) == [frozenset(), {0}, {1}, {0, 1}]
    assert len(list(enumerate_subobjects(klein()))) == 5
    assert len(list(enumerate_subobjects(vect(2, 2)))) == (2**2 - 1) // (2 - 1) + 2


@pytest.mark.parametrize("A", [cyclic(4), cyclic(6), klein(), vect(2, 2), vect(3, 1),
                               quasigroup(idempotent_quasigroup_table(3)),
                               quasigroup(subtraction_quasigroup_table(3)),
                               prod(cyclic(2), cyclic(3))])
def test_enumeration_matches_brute_force(A):
    got = list(enumerate_subobjects(A))
    assert sorted(got, key=lambda s: (len(s), sorted(s))) == got
    assert set(got) == set(brute_subobjects(A))
    assert len(got) == len(set(got))


def test_enumeration_budget():
    with pytest.raises(EnumerationBudgetExceeded):
        list(enumerate_subobjects(finset(5), limit=10))


def test_entirely_inhabited_computed():
    assert is_entirely_inhabited(FINGRP)
    assert is_entirely_inhabited(finvect(2))
    assert not is_entirely_inhabited(FINSET)
    assert not is_entirely_inhabited(FINQGRP)
    for kind in (FINSET, FINGRP, FINQGRP, finvect(5)):
        assert is_entirely_inhabited(kind) == kind.is_entirely_inhabited


def test_kind_flags():
    assert not FINSET.is_malcev
    assert all(k.is_malcev for k in (FINGRP, FINQGRP, finvect(2)))
    assert all(k.is_positively_regular for k in (FINSET, FINGRP, FINQGRP, finvect(2)))
    assert FINSET.tag is Kind.FINSET


@pytest.mark.parametrize("name,G", small_groups(8))
def test_groups_satisfy_axioms_and_malcev(name, G):
    assert check_variety_axioms(G)
    assert check_malcev_witness(G)


@pytest.mark.parametrize("A", [vect(2, 2), vect(3, 1), quasigroup(idempotent_quasigroup_table(5)),
                               quasigroup(subtraction_quasigroup_table(3))])
def test_other_varieties_malcev(A):
    assert check_variety_axioms(A)
    assert check_malcev_witness(A)


def test_quasigroup_divisions():
    Q = quasigroup(subtraction_quasigroup_table(5))
    for x in Q.elements:
        for y in Q.elements:
            assert Q.mul(x, Q.ldiv(x, y)) == y
            assert Q.mul(Q.rdiv(y, x), x) == y


def test_empty_carriers():
    assert finset(0).size == 0
    assert quasigroup([]).size == 0
    with pytest.raises(MalformedAlgebra):
        make_object(FINGRP, [])


def test_finvect_budget():
    with pytest.raises(EnumerationBudgetExceeded):
        vect(2, 9)


@given(st.sampled_from([cyclic(4), klein(), vect(3, 1), prod(cyclic(2), cyclic(3)), finset(4)]),
       st.sets(st.integers(0, 3)), st.sets(st.integers(0, 3)))
def test_generated_is_closure(A, s1, s2):
    s1 = {x % A.size for x in s1}
    s2 = {x % A.size for x in s2}
    g1 = subobject_generated(A, s1)
    assert is_subobject(A, g1) and s1 <= g1
    assert subobject_generated(A, g1) == g1
    assert subobject_generated(A, s1 | s2) >= g1


@given(st.sampled_from([cyclic(2), cyclic(3), finset(2)]), st.sampled_from([cyclic(2), cyclic(3), finset(3)]),
       st.sampled_from([cyclic(2), cyclic(3), finset(2)]))
def test_product_associative_up_to_index(A, B, C):
    if not (A.kind == B.kind == C.kind):
        return
    left = prod(prod(A, B), C)
    right = prod(A, prod(B, C))
    assert left.size == right.size
    if A.kind.tag is not Kind.FINSET:
        # same mixed-radix layout, so the tables coincide
        assert left.mul_table() == right.mul_table()
