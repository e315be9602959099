import itertools

import pytest
from hypothesis import given, strategies as st

from relcat import rel
from relcat.backend import prod
from relcat.catalog import cyclic, finset, klein, quasigroup, idempotent_quasigroup_table, small_groups, vect
from relcat.errors import KindMismatch, NotASubobject, ObjectMismatch
from relcat.rel import (
    Relation,
    brute_force_positive,
    cap,
    codelete,
    compose,
    cup,
    dagger,
    delete,
    empty,
    enumerate_relations,
    full,
    identity,
    is_difunctional,
    is_equivalence,
    is_positive,
    is_reflexive,
    is_symmetric,
    leq,
    meet,
    satisfies_pos_condition,
    state,
    swap,
    tensor,
)

from strategies import algebra_relations, set_relations

TWO = finset(2)


def naive_compose(R, S):
    return {(a, c) for a, b in R.graph for b2, c in S.graph if b == b2}


def naive_difunctional(R):
    g = R.graph
    return all((a, d) in g for (a, b), (c, b2), (c2, d) in itertools.product(g, g, g)
               if b == b2 and c == c2)


def test_compose_examples():
    flip = Relation(TWO, TWO, [(0, 1), (1, 0)])
    assert compose(flip, flip) == identity(TWO)
    Z = cyclic(2)
    diag = Relation(Z, Z, [(0, 0), (1, 1)])
    assert compose(diag, full(Z, Z)) == full(Z, Z)
    with pytest.raises(ObjectMismatch):
        compose(identity(TWO), identity(finset(3)))


def test_dagger_examples():
    R = Relation(TWO, TWO, [(0, 1)])
    assert dagger(R).pairs == ((1, 0),)
    assert dagger(identity(TWO)) == identity(TWO)


def test_tensor_examples():
    assert tensor(identity(TWO), identity(finset(3))) == identity(finset(6))
    R = Relation(TWO, TWO, [(0, 1), (1, 1)])
    S = Relation(finset(3), TWO, [(0, 0), (2, 1), (1, 1)])
    assert len(tensor(R, S)) == 6
    assert len(tensor(R, empty(TWO, TWO))) == 0
    with pytest.raises(KindMismatch):
        tensor(identity(TWO), identity(cyclic(2)))


def test_compact_structure():
    c = cup(TWO)
    assert c.pairs == ((0, 0), (0, 3))
    A = finset(3)
    snake = compose(tensor(identity(A), cup(A)), tensor(cap(A), identity(A)))
    assert snake == identity(A)
    # delete after codelete is the identity scalar on nonempty A
    one = delete(A).cod
    assert compose(codelete(A), delete(A)) == identity(one)
    assert compose(codelete(finset(0)), delete(finset(0))) == empty(one, one)
    sw = swap(TWO, A)
    assert compose(sw, swap(A, TWO)) == identity(prod(TWO, A))


def test_leq_and_meet():
    R = Relation(TWO, TWO, [(0, 1), (1, 1)])
    assert leq(R, R) and leq(empty(TWO, TWO), R)
    V = vect(2, 2)
    lines = rel_lines(V)
    assert len(lines) == 3
    m = meet(lines[0], lines[1])
    assert support(m) == {0}


def rel_lines(V):
    """The three lines of F_2^2 as states."""
    from relcat.backend import enumerate_subobjects
    return [state(V, S) for S in enumerate_subobjects(V) if len(S) == 2]


def support(psi):
    return {b for _, b in psi.graph}


def test_validation():
    Z = cyclic(2)
    with pytest.raises(NotASubobject):
        Relation(Z, Z, [(0, 1)])
    Relation(TWO, TWO, [(0, 1)])


def test_difunctional_examples():
    R = Relation(TWO, TWO, [(0, 0), (1, 0), (1, 1)])
    assert not is_difunctional(R)
    E = Relation(finset(3), finset(3), [(0, 0), (1, 1), (2, 2), (0, 1), (1, 0)])
    assert is_equivalence(E) and is_difunctional(E)


def test_all_subgroup_relations_difunctional_small():
    groups = [G for _, G in small_groups(6)]
    for G, H in itertools.product(groups, repeat=2):
        for R in enumerate_relations(G, H):
            assert is_difunctional(R)


def test_all_subgroup_relations_difunctional_order_8():
    groups = [G for _, G in small_groups(8)]
    for G, H in itertools.product(groups, repeat=2):
        for R in enumerate_relations(G, H):
            assert is_difunctional(R), (G, H, R)


def test_pos_condition_examples():
    assert not satisfies_pos_condition(Relation(TWO, TWO, [(0, 1)]))
    assert satisfies_pos_condition(identity(TWO))
    assert satisfies_pos_condition(full(TWO, TWO))


def test_is_positive_examples():
    assert is_positive(Relation(TWO, TWO, [(0, 1)])) is None
    w = is_positive(full(TWO, TWO))
    assert w.mid == prod(TWO, TWO) and w.verify(full(TWO, TWO))
    for A in (finset(3), cyclic(3), klein()):
        wi = is_positive(identity(A))
        assert wi is not None and wi.verify(identity(A))
    e = brute_force_positive(empty(TWO, TWO))
    assert e is not None and len(e.s) == 0


@pytest.mark.parametrize("A", [finset(2), finset(3), cyclic(2), cyclic(3), klein(), vect(2, 1),
                               quasigroup(idempotent_quasigroup_table(3))])
def test_positive_matches_oracle(A):
    for R in enumerate_relations(A, A):
        w = is_positive(R)
        o = brute_force_positive(R)
        assert (w is None) == (o is None), R
        if w is not None:
            assert w.verify(R) and o.verify(R)
            assert is_symmetric(R) and satisfies_pos_condition(R)


@given(set_relations(), st.data())
def test_compose_matches_naive(R, data):
    S = data.draw(set_relations(dom=R.cod))
    assert compose(R, S).graph == naive_compose(R, S)


@given(set_relations(), st.data())
def test_category_laws(R, data):
    S = data.draw(set_relations(dom=R.cod))
    T = data.draw(set_relations(dom=S.cod))
    assert compose(compose(R, S), T) == compose(R, compose(S, T))
    assert compose(identity(R.dom), R) == R == compose(R, identity(R.cod))
    assert dagger(compose(R, S)) == compose(dagger(S), dagger(R))
    assert dagger(dagger(R)) == R


@given(set_relations(), set_relations(), st.data())
def test_tensor_functorial(R, S, data):
    R2 = data.draw(set_relations(dom=R.cod))
    S2 = data.draw(set_relations(dom=S.cod))
    assert compose(tensor(R, S), tensor(R2, S2)) == tensor(compose(R, R2), compose(S, S2))


@given(set_relations(), st.data())
def test_composition_monotone(R, data):
    S = data.draw(set_relations(dom=R.cod))
    R_big = Relation(R.dom, R.cod, R.graph | data.draw(set_relations(dom=R.dom, cod=R.cod)).graph)
    S_big = Relation(S.dom, S.cod, S.graph | data.draw(set_relations(dom=S.dom, cod=S.cod)).graph)
    assert leq(compose(R, S), compose(R_big, S_big))


@given(algebra_relations())
def test_algebra_relations_difunctional(R):
    assert is_difunctional(R)
    assert naive_difunctional(R)


@given(algebra_relations())
def test_malcev_endo_properties(R):
    if R.dom != R.cod:
        return
    if is_reflexive(R):
        assert is_equivalence(R)
    if is_reflexive(R) and is_symmetric(R):
        assert compose(R, dagger(R)) == R


@given(algebra_relations(), st.data())
def test_derived_relations_are_subobjects(R, data):
    S = data.draw(algebra_relations(dom=R.cod))
    old = rel.STRICT
    rel.STRICT = True
    try:
        compose(R, S)
        dagger(R)
        tensor(R, S)
        meet(R, R)
    finally:
        rel.STRICT = old


@given(set_relations())
def test_positively_monoidal(R):
    if R.dom != R.cod or R.dom.size > 2:
        return
    X = TWO
    if is_positive(tensor(R, identity(X))) is not None:
        assert is_positive(R) is not None


@given(set_relations())
def test_difunctional_matches_naive(R):
    assert is_difunctional(R) == naive_difunctional(R)
