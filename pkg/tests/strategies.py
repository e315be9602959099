"""Hypothesis strategies for small objects and relations."""
from hypothesis import strategies as st

from relcat.backend import enumerate_subobjects, product
from relcat.catalog import cyclic, finset, klein, vect
from relcat.rel import Relation

SETS = [finset(n) for n in range(4)]
ALGEBRAS = [cyclic(2), cyclic(3), klein(), vect(2, 1)]


def finset_relation(A, B):
    cells = [(a, b) for a in A.elements for b in B.elements]
    return st.sets(st.sampled_from(cells) if cells else st.nothing()).map(
        lambda pairs: Relation(A, B, pairs))


@st.composite
def set_relations(draw, dom=None, cod=None):
    A = dom if dom is not None else draw(st.sampled_from(SETS))
    B = cod if cod is not None else draw(st.sampled_from(SETS))
    return draw(finset_relation(A, B))


@st.composite
def algebra_relations(draw, dom=None, cod=None):
    A = dom if dom is not None else draw(st.sampled_from(ALGEBRAS))
    if cod is None:
        cod = draw(st.sampled_from([B for B in ALGEBRAS if B.kind == A.kind]))
    P = product(A, cod)
    S = draw(st.sampled_from(list(enumerate_subobjects(P.obj))))
    return Relation(A, cod, (P.unpair(z) for z in S))
