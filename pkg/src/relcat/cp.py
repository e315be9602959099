"""Completely positive morphisms between Frobenius structures.

The Choi relation of ``R : A -> B`` bends the input wire of A around with
the multiplications of both structures::

    choi(R) = (id_A x m_B) . (id_A x R x id_B) . (m_A-dagger x id_B)

Elementwise, ``choi(R)((a, b), (a', b'))`` holds iff ``R(a'^-1 a, b' b^-1)``,
where ``t(a) = t(a')`` and ``s(b) = s(b')`` so both composites exist.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from . import diagram as dg
from .backend import DEFAULT_ENUM_LIMIT, prod
from .errors import InternalError, NotCP, NotFrobenius, ObjectMismatch
from .frobenius import FrobeniusStructure, check_frobenius, to_groupoid
from .groupoid import InternalGroupoid, inverse_violation
from .rel import (
    PositivityWitness,
    Relation,
    compose,
    dagger,
    enumerate_relations,
    identity,
    is_positive,
    pos_condition_violation,
    tensor,
)


@lru_cache(maxsize=256)
def groupoid_of(F: FrobeniusStructure) -> InternalGroupoid:
    return to_groupoid(F)


def choi_term(A, B) -> dg.Term:
    ma = dg.Gen("ma", (A, A), (A,))
    mb = dg.Gen("mb", (B, B), (B,))
    r = dg.Gen("r", (A,), (B,))
    idA, idB = dg.Id((A,)), dg.Id((B,))
    return dg.seq(dg.par(dg.Dagger(ma), idB), dg.par(idA, r, idB), dg.par(idA, mb))


class ChoiBuilder:
    """Choi relations for a fixed pair of structures, with the constant layers cached."""

    def __init__(self, FA: FrobeniusStructure, FB: FrobeniusStructure):
        for F in (FA, FB):
            if not check_frobenius(F).ok:
                raise NotFrobenius("choi needs special dagger Frobenius structures")
        self.FA, self.FB = FA, FB
        A, B = FA.carrier, FB.carrier
        self.A, self.B = A, B
        self.AB = prod(A, B)
        self.lower = tensor(dagger(FA.mult), identity(B))   # A x B -> A x A x B
        self.upper = tensor(identity(A), FB.mult)           # A x B x B -> A x B
        self.GA, self.GB = groupoid_of(FA), groupoid_of(FB)
        self._table = self._formula_table()

    def _formula_table(self):
        GA, GB = self.GA, self.GB
        nb = self.B.size
        rows = []
        for a in self.A.elements:
            for a2 in self.A.elements:
                if GA.t(a) != GA.t(a2):
                    continue
                x = GA.m[(GA.i(a2), a)]
                for b in self.B.elements:
                    for b2 in self.B.elements:
                        if GB.s(b) != GB.s(b2):
                            continue
                        y = GB.m[(b2, GB.i(b))]
                        rows.append((a * nb + b, a2 * nb + b2, (x, y)))
        return rows

    def _check(self, R: Relation):
        if R.dom != self.A or R.cod != self.B:
            raise ObjectMismatch(f"relation {R.dom!r} -> {R.cod!r} does not match the structures")

    def diagram(self, R: Relation) -> Relation:
        self._check(R)
        middle = tensor(tensor(identity(self.A), R), identity(self.B))
        return compose(compose(self.lower, middle), self.upper)

    def formula(self, R: Relation) -> Relation:
        self._check(R)
        g = R.graph
        return Relation(self.AB, self.AB, ((p, q) for p, q, k in self._table if k in g), validate=False)

    def choi(self, R: Relation) -> Relation:
        out = self.diagram(R)
        if out != self.formula(R):
            raise InternalError("Choi relation: diagram and elementwise formula disagree")
        return out


@lru_cache(maxsize=64)
def builder(FA: FrobeniusStructure, FB: FrobeniusStructure) -> ChoiBuilder:
    return ChoiBuilder(FA, FB)


def choi(R: Relation, FA: FrobeniusStructure, FB: FrobeniusStructure) -> Relation:
    return builder(FA, FB).choi(R)


def choi_by_term(R: Relation, FA: FrobeniusStructure, FB: FrobeniusStructure) -> Relation:
    """Choi relation evaluated from the full diagram term (no cached layers)."""
    return dg.evaluate(choi_term(FA.carrier, FB.carrier), {"ma": FA.mult, "mb": FB.mult, "r": R})


@dataclass(frozen=True)
class CpVerdict:
    cp: bool
    choi: Relation
    witness: PositivityWitness | None = None
    violation: tuple | None = None   # pair of the Choi relation breaking the positivity condition

    def __bool__(self):
        return self.cp


def is_completely_positive(R: Relation, FA: FrobeniusStructure, FB: FrobeniusStructure) -> CpVerdict:
    C = choi(R, FA, FB)
    w = is_positive(C)
    if w is None:
        return CpVerdict(False, C, None, pos_condition_violation(C))
    return CpVerdict(True, C, w)


@dataclass(frozen=True)
class CpMorphism:
    source: FrobeniusStructure
    target: FrobeniusStructure
    rel: Relation
    choi: Relation = field(default=None, compare=False, repr=False)
    witness: PositivityWitness | None = field(default=None, compare=False, repr=False)


def make_cp(R: Relation, FA: FrobeniusStructure, FB: FrobeniusStructure) -> CpMorphism:
    v = is_completely_positive(R, FA, FB)
    if not v.cp:
        raise NotCP(f"Choi relation violates positivity at {v.violation}")
    return CpMorphism(FA, FB, R, v.choi, v.witness)


def cp_identity(F: FrobeniusStructure) -> CpMorphism:
    return make_cp(identity(F.carrier), F, F)


def cp_compose(f: CpMorphism, g: CpMorphism) -> CpMorphism:
    """``g . f``; the composite's Choi relation is re-verified positive."""
    if f.target != g.source:
        raise ObjectMismatch("cp_compose: target of f is not the source of g")
    R = compose(f.rel, g.rel)
    v = is_completely_positive(R, f.source, g.target)
    if not v.cp:
        raise InternalError("composite of CP morphisms is not CP")
    return CpMorphism(f.source, g.target, R, v.choi, v.witness)


def cp_dagger(f: CpMorphism) -> CpMorphism:
    return make_cp(dagger(f.rel), f.target, f.source)


@dataclass(frozen=True)
class EquivalenceReport:
    total: int
    cp_count: int
    disagreements: tuple[Relation, ...]

    @property
    def ok(self) -> bool:
        return not self.disagreements


def respects_inverses_equiv_check(FA: FrobeniusStructure, FB: FrobeniusStructure,
                                  limit: int = DEFAULT_ENUM_LIMIT) -> EquivalenceReport:
    """CP iff respects inverses, over every relation between the carriers."""
    b = builder(FA, FB)
    total = cp = 0
    bad = []
    for R in enumerate_relations(FA.carrier, FB.carrier, limit):
        total += 1
        is_cp = pos_condition_violation(b.choi(R)) is None
        ri = inverse_violation(R, b.GA, b.GB) is None
        cp += is_cp
        if is_cp != ri:
            bad.append(R)
    return EquivalenceReport(total, cp, tuple(bad))


def cp_morphisms(FA: FrobeniusStructure, FB: FrobeniusStructure,
                 limit: int = DEFAULT_ENUM_LIMIT) -> list[Relation]:
    """All relations ``A -> B`` with positive Choi relation, in enumeration order."""
    b = builder(FA, FB)
    return [R for R in enumerate_relations(FA.carrier, FB.carrier, limit)
            if pos_condition_violation(b.choi(R)) is None]
