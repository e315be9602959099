import itertools

import pytest
from hypothesis import given, strategies as st

from relcat.backend import FINSET, prod
from relcat.catalog import cyclic, finset, klein
from relcat.cp import (
    builder,
    choi,
    choi_by_term,
    cp_compose,
    cp_dagger,
    cp_identity,
    cp_morphisms,
    is_completely_positive,
    make_cp,
    respects_inverses_equiv_check,
)
from relcat.errors import NotCP, NotFrobenius
from relcat.frobenius import enumerate_frobenius, group_structure, indiscrete, make_structure, tensor_structures
from relcat.quantum import disturbing_measurement_instance
from relcat.rel import Relation, dagger, empty, enumerate_relations, full, identity, is_positive

from strategies import finset_relation


def naive_choi(R, FA, FB):
    """((a, b), (a1, b')) with M_A(a1, a2, a), R(a2, y) and M_B(y, b, b')."""
    nb = FB.carrier.size
    out = set()
    for a1, a2, a in FA.triples():
        for y in R.image(a2):
            for y2, b, b2 in FB.triples():
                if y2 == y:
                    out.add((a * nb + b, a1 * nb + b2))
    return Relation(prod(FA.carrier, FB.carrier), prod(FA.carrier, FB.carrier), out, validate=False)


def inverses(F):
    m = {(a, b): c for a, b, c in F.triples()}
    U = F.units()
    inv = {a: b for a in F.carrier.elements for b in F.carrier.elements
           if m.get((a, b)) in U and m.get((b, a)) in U}
    src = {a: x for a in F.carrier.elements for x in U if (a, x) in m}
    return inv, src


def naive_respects_inverses(R, FA, FB):
    ia, sa = inverses(FA)
    ib, sb = inverses(FB)
    return all((ia[a], ib[b]) in R and (sa[a], sb[b]) in R for a, b in R)


SET_STRUCTURES = list(enumerate_frobenius(finset(2))) + [
    group_structure(cyclic(3), kind=FINSET), indiscrete(finset(1))]
GROUP_STRUCTURES = [group_structure(cyclic(2)), group_structure(cyclic(3))]


def test_z2_identity_choi_closed_form():
    F = group_structure(cyclic(2))
    expected = {(a * 2 + b, a2 * 2 + b2)
                for a, b, a2, b2 in itertools.product(range(2), repeat=4) if (a + a2) % 2 == (b + b2) % 2}
    assert set(choi(identity(cyclic(2)), F, F).pairs) == expected


def test_choi_routes_agree():
    pairs = [(FA, FB) for FA in SET_STRUCTURES[:3] for FB in SET_STRUCTURES[:3]]
    for FA, FB in pairs:
        b = builder(FA, FB)
        for R in enumerate_relations(FA.carrier, FB.carrier):
            want = naive_choi(R, FA, FB)
            assert b.formula(R) == want
            assert b.diagram(R) == want
    F = group_structure(klein())
    for R in enumerate_relations(klein(), klein()):
        assert choi_by_term(R, F, F) == choi(R, F, F)


def test_empty_relation_is_cp():
    for FA in SET_STRUCTURES:
        for FB in SET_STRUCTURES:
            assert is_completely_positive(empty(FA.carrier, FB.carrier), FA, FB).cp


def test_disturbing_measurement_is_cp():
    M, FB, FC = disturbing_measurement_instance()
    FBC = tensor_structures(FB, FC)
    assert M.dom == FB.carrier and M.cod == FBC.carrier
    v = is_completely_positive(M, FB, FBC)
    assert v.cp
    assert is_positive(v.choi) is not None


def test_non_inverse_respecting_relation_is_not_cp():
    F = group_structure(cyclic(3), kind=FINSET)
    R = Relation(finset(3), finset(3), [(1, 0)])
    v = is_completely_positive(R, F, F)
    assert not v.cp
    assert v.violation is not None
    with pytest.raises(NotCP):
        make_cp(R, F, F)
    # Adding the inverse pair repairs it.
    assert is_completely_positive(Relation(finset(3), finset(3), [(1, 0), (2, 0), (0, 0)]), F, F).cp


def test_multiplication_dagger_is_cp():
    for F in SET_STRUCTURES + GROUP_STRUCTURES:
        assert is_completely_positive(dagger(F.mult), F, tensor_structures(F, F)).cp


def test_choi_needs_frobenius_structures():
    bad = make_structure(finset(2), itertools.product(range(2), repeat=3), [0])
    with pytest.raises(NotFrobenius):
        choi(identity(finset(2)), bad, bad)


def test_cp_iff_respects_inverses_against_oracle():
    for FA in SET_STRUCTURES:
        for FB in SET_STRUCTURES:
            b = builder(FA, FB)
            for R in enumerate_relations(FA.carrier, FB.carrier):
                assert (is_positive(b.choi(R)) is not None) == naive_respects_inverses(R, FA, FB)
    for FA in GROUP_STRUCTURES:
        for FB in GROUP_STRUCTURES:
            rep = respects_inverses_equiv_check(FA, FB)
            assert rep.ok and rep.cp_count == rep.total


def test_equivalence_report_counts():
    F = group_structure(cyclic(3), kind=FINSET)
    rep = respects_inverses_equiv_check(F, F)
    assert rep.total == 2 ** 9
    assert rep.ok
    assert rep.cp_count == sum(naive_respects_inverses(R, F, F) for R in enumerate_relations(finset(3), finset(3)))


def test_cp_identity_and_composition():
    for F in SET_STRUCTURES:
        one = cp_identity(F)
        for R in cp_morphisms(F, F):
            f = make_cp(R, F, F)
            assert cp_compose(one, f).rel == R
            assert cp_compose(f, one).rel == R


def test_cp_dagger_is_cp():
    for FA in SET_STRUCTURES:
        for FB in SET_STRUCTURES:
            for R in cp_morphisms(FA, FB):
                d = cp_dagger(make_cp(R, FA, FB))
                assert d.rel == dagger(R)
                assert d.source == FB and d.target == FA


def test_full_relation_is_cp():
    for FA in SET_STRUCTURES:
        for FB in SET_STRUCTURES:
            assert is_completely_positive(full(FA.carrier, FB.carrier), FA, FB).cp


@given(st.sampled_from(SET_STRUCTURES), st.sampled_from(SET_STRUCTURES), st.data())
def test_cp_composites_stay_cp(FA, FB, data):
    FC = data.draw(st.sampled_from(SET_STRUCTURES))
    fs = cp_morphisms(FA, FB)
    gs = cp_morphisms(FB, FC)
    f = make_cp(data.draw(st.sampled_from(fs)), FA, FB)
    g = make_cp(data.draw(st.sampled_from(gs)), FB, FC)
    h = cp_compose(f, g)
    assert naive_respects_inverses(h.rel, FA, FC)


@given(st.sampled_from(SET_STRUCTURES), st.data())
def test_choi_matches_naive(F, data):
    R = data.draw(finset_relation(F.carrier, F.carrier))
    assert choi(R, F, F) == naive_choi(R, F, F)
