import pytest
from hypothesis import given, strategies as st

from relcat import diagram as dg
from relcat.catalog import cyclic, finset
from relcat.diagram import (
    Cap,
    Codelete,
    Compose,
    Cup,
    Dagger,
    Delete,
    Gen,
    Id,
    Swap,
    Tensor,
    evaluate,
    format_term,
    parse_term,
    term_from_json,
    term_to_json,
    terms_equal,
    typecheck,
)
from relcat.errors import BoundaryMismatch, ParseError, TypeMismatch, UnboundGenerator
from relcat.frobenius import group_structure, indiscrete
from relcat.rel import Relation, compose, dagger, identity, swap, tensor

from strategies import set_relations

A, B = finset(2), finset(3)


def test_typecheck_examples():
    assert typecheck(Compose(Id((A,)), Id((A,)))) == ((A,), (A,))
    assert typecheck(Cup(A)) == ((), (A, A))
    with pytest.raises(TypeMismatch) as e:
        typecheck(Compose(Id((A,)), Id((B,))))
    assert isinstance(e.value.path, tuple)


def test_type_error_path_points_inside():
    bad = Tensor(Id((A,)), Compose(Id((A,)), Id((B,))))
    with pytest.raises(TypeMismatch) as e:
        typecheck(bad)
    assert len(e.value.path) >= 1


def test_evaluate_examples():
    C = finset(3)
    snake = dg.seq(dg.par(Id((C,)), Cup(C)), dg.par(Cap(C), Id((C,))))
    assert evaluate(snake) == identity(C)
    R = Relation(A, B, [(0, 2), (1, 1)])
    assert evaluate(Dagger(dg.gen("f", R)), {"f": R}) == dagger(R)
    with pytest.raises(UnboundGenerator):
        evaluate(dg.gen("f", R), {})


def test_unbound_wrong_boundary():
    R = Relation(A, B, [(0, 2)])
    with pytest.raises(TypeMismatch):
        evaluate(Gen("f", (B,), (A,)), {"f": R})


def test_frobenius_law_z2():
    F = group_structure(cyclic(2), kind=finset(1).kind)
    Z = F.carrier
    m = Gen("m", (Z, Z), (Z,))
    idZ = Id((Z,))
    lhs = dg.seq(dg.par(idZ, Dagger(m)), dg.par(m, idZ))
    rhs = dg.seq(m, Dagger(m))
    assert terms_equal(lhs, rhs, {"m": F.mult})


def test_terms_equal_examples():
    R = Relation(A, B, [(0, 2), (1, 1)])
    f = dg.gen("f", R)
    assert terms_equal(f, Compose(Id((B,)), f), {"f": R})
    Fz = group_structure(cyclic(2), kind=A.kind)
    Z = Fz.carrier
    m = Gen("m", (Z, Z), (Z,))
    assert terms_equal(m, dg.seq(Swap(Z, Z), m), {"m": Fz.mult})
    Fi = indiscrete(A)
    I = Fi.carrier
    mi = Gen("m", (I, I), (I,))
    assert not terms_equal(mi, dg.seq(Swap(I, I), mi), {"m": Fi.mult})
    with pytest.raises(BoundaryMismatch):
        terms_equal(Id((A,)), Id((B,)))


def test_parse_examples():
    objs = {"A": A, "B": B}
    assert parse_term("id[A]", objs) == Id((A,))
    R = Relation(A, B, [(0, 0)])
    S = Relation(B, A, [(0, 1)])
    t = parse_term("f ; g", objs, {"f": R, "g": S})
    assert t == Compose(Gen("g", (B,), (A,)), Gen("f", (A,), (B,)))
    t2 = parse_term("(h * id[A]) ; cap[A]", objs, {"h": identity(A)})
    assert typecheck(t2) == ((A, A), ())


def test_parse_builtins_and_dagger():
    objs = {"A": A, "B": B}
    t = parse_term("dg(cup[A]) ; codel[B] ; id[B] * codel[A] ; sw[B,A] ; del[A] * id[B]", objs)
    assert typecheck(t) == ((A, A), (B,))


@pytest.mark.parametrize("text,pos", [("id[A] ; ", 8), ("id[A] $ id[A]", 6), ("id[Q]", 3), ("dg(id[A]", 8)])
def test_parse_errors_have_positions(text, pos):
    with pytest.raises(ParseError) as e:
        parse_term(text, {"A": A})
    assert e.value.position == pos


def test_format_and_json_roundtrip():
    objs = {"A": A, "B": B}
    R = Relation(A, B, [(0, 0)])
    sigs = {"f": R}
    t = parse_term("(f * id[A]) ; (dg(f) * id[A])", objs, sigs)
    names = {A: "A", B: "B"}
    again = parse_term(format_term(t, names), objs, sigs)
    assert again == t
    assert term_from_json(term_to_json(t, names), objs) == t


def test_delete_codelete():
    C = finset(3)
    assert evaluate(dg.seq(Codelete(C), Delete(C))) == identity(evaluate(Delete(C)).cod)


@given(set_relations(), set_relations(), st.data())
def test_interchange_law(R, S, data):
    R2 = data.draw(set_relations(dom=R.cod))
    S2 = data.draw(set_relations(dom=S.cod))
    env = {"f": R, "g": S, "h": R2, "k": S2}
    f, g, h, k = (dg.gen(n, env[n]) for n in "fghk")
    assert terms_equal(dg.seq(dg.par(f, g), dg.par(h, k)), dg.par(dg.seq(f, h), dg.seq(g, k)), env)


@given(set_relations())
def test_evaluation_is_compositional(R):
    env = {"f": R}
    f = dg.gen("f", R)
    assert evaluate(Dagger(f), env) == dagger(R)
    assert evaluate(dg.seq(f, Dagger(f)), env) == compose(R, dagger(R))
    assert evaluate(Tensor(f, f), env) == tensor(R, R)


@given(set_relations(), set_relations())
def test_swap_naturality(R, S):
    env = {"f": R, "g": S}
    f, g = dg.gen("f", R), dg.gen("g", S)
    lhs = dg.seq(dg.par(f, g), Swap(R.cod, S.cod))
    rhs = dg.seq(Swap(R.dom, S.dom), dg.par(g, f))
    assert terms_equal(lhs, rhs, env)
    assert evaluate(Swap(R.dom, S.dom)) == swap(R.dom, S.dom)


@given(st.sampled_from([finset(0), finset(1), finset(2), finset(3), cyclic(2), cyclic(3)]))
def test_dagger_cup_is_cap(X):
    assert terms_equal(Dagger(Cup(X)), Cap(X))
    snake = dg.seq(dg.par(Cup(X), Id((X,))), dg.par(Id((X,)), Cap(X)))
    assert terms_equal(snake, Id((X,)))
