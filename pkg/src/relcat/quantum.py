"""Quantum-like properties of Rel(C): uncertainty, broadcasting, rank, projections."""
from __future__ import annotations

import itertools

from . import diagram as dg
from .backend import DEFAULT_ENUM_LIMIT, FINSET, Kind, enumerate_subobjects, prod, product
from .catalog import cyclic, finset, idempotent_quasigroup_table, quasigroup, s3
from .cp import groupoid_of, is_completely_positive
from .errors import EnumerationBudgetExceeded, NotCP, NotQuantumStructure, ObjectMismatch
from .frobenius import (
    FrobeniusStructure,
    copyable_states,
    counit,
    group_structure,
    indiscrete,
    is_commutative,
    make_structure,
    tensor_structures,
    trivial_structure,
)
from .rel import Relation, compose, dagger, identity, state
from .report import PropertyReport


def is_quantum_structure(F: FrobeniusStructure) -> bool:
    """True iff the groupoid of F is indiscrete: one arrow between any two objects."""
    G = groupoid_of(F)
    seen = {(G.s(f), G.t(f)) for f in G.C1.elements}
    return G.C1.size == G.C0.size ** 2 and len(seen) == G.C1.size


# -- Heisenberg uncertainty ------------------------------------------------------

def heisenberg_terms(B, C):
    m = dg.Gen("m", (B,), (B, C))
    lhs = dg.seq(m, dg.par(dg.Id((B,)), dg.Gen("ec", (C,), ())))
    rhs = dg.seq(m, dg.par(dg.Gen("eb", (B,), ()), dg.Id((C,))))
    return lhs, rhs


def check_heisenberg_instance(M: Relation, FB: FrobeniusStructure, FC: FrobeniusStructure,
                              limit: int = DEFAULT_ENUM_LIMIT) -> PropertyReport:
    """No measurement without disturbance.

    If discarding the C output of M leaves B untouched, then discarding the B
    output must factor through the unit of B followed by some state psi of C.
    """
    B, C = FB.carrier, FC.carrier
    if M.dom != B or M.cod != prod(B, C):
        raise ObjectMismatch("M must be a relation B -> B x C")
    if not is_quantum_structure(FB):
        raise NotQuantumStructure("F_B is not an indiscrete (quantum) structure")
    v = is_completely_positive(M, FB, tensor_structures(FB, FC))
    if not v.cp:
        raise NotCP(f"M is not completely positive; Choi violation at {v.violation}")
    env = {"m": M, "ec": counit(FC), "eb": counit(FB)}
    lhs_t, rhs_t = heisenberg_terms(B, C)
    undisturbed = dg.evaluate(lhs_t, env) == identity(B)
    measured = dg.evaluate(rhs_t, env)
    info = {"M": M, "undisturbed": undisturbed, "measurement": measured,
            "commutative_C": is_commutative(FC)}
    if not undisturbed:
        return PropertyReport("heisenberg", True, info, "premise fails")
    eb = counit(FB)
    for S in enumerate_subobjects(C, limit):
        psi = state(C, S)
        if compose(eb, psi) == measured:
            return PropertyReport("heisenberg", True, {**info, "psi": psi})
    return PropertyReport("heisenberg", False, info, "no state psi factors the measurement")


def disturbing_measurement_instance() -> tuple[Relation, FrobeniusStructure, FrobeniusStructure]:
    """Indiscrete structure on {x, y} measured into Z2: records 1 only on (x, x)."""
    FB = indiscrete(finset(2))
    FC = group_structure(cyclic(2), kind=FINSET)
    B = FB.carrier
    xx = 0
    pairs = [(b, b * 2 + 0) for b in B.elements] + [(xx, xx * 2 + 1)]
    return Relation(B, prod(B, FC.carrier), pairs), FB, FC


# -- broadcasting ----------------------------------------------------------------

def broadcast_terms(A):
    b = dg.Gen("b", (A,), (A, A))
    e = dg.Gen("e", (A,), ())
    idA = dg.Id((A,))
    return dg.seq(b, dg.par(idA, e)), dg.seq(b, dg.par(e, idA))


def _marginals_ok(Bm: Relation, F: FrobeniusStructure) -> bool:
    A = F.carrier
    left, right = broadcast_terms(A)
    env = {"b": Bm, "e": counit(F)}
    idA = identity(A)
    return dg.evaluate(left, env) == idA and dg.evaluate(right, env) == idA


def is_broadcasting_map(Bm: Relation, F: FrobeniusStructure, *, require_cp: bool = True) -> bool:
    A = F.carrier
    if Bm.dom != A or Bm.cod != prod(A, A):
        raise ObjectMismatch("a broadcasting map is a relation A -> A x A")
    if require_cp:
        v = is_completely_positive(Bm, F, tensor_structures(F, F))
        if not v.cp:
            raise NotCP(f"broadcasting candidate is not CP; Choi violation at {v.violation}")
    return _marginals_ok(Bm, F)


def search_broadcasting_map(F: FrobeniusStructure, limit: int = DEFAULT_ENUM_LIMIT) -> Relation | None:
    """A CP broadcasting map for F, or None.

    The canonical candidate ``mult-dagger`` is tried first.  After that the
    search is exhaustive: in Mal'cev backends over every subobject of
    ``A x (A x A)``; in FinSet over subsets of the pairs
    ``(a, (a, x))`` and ``(a, (x, a))`` with x a unit, which is enough
    because cutting any broadcasting CP map down to those pairs leaves a
    broadcasting CP map.  Candidates are taken smallest first, then
    lexicographically.
    """
    A = F.carrier
    AA = prod(A, A)
    FF = tensor_structures(F, F)

    def good(Bm):
        return _marginals_ok(Bm, F) and is_completely_positive(Bm, F, FF).cp

    canonical = dagger(F.mult)
    if good(canonical):
        return canonical
    n = A.size
    if A.kind.tag is Kind.FINSET:
        U = sorted(F.units())
        cells = sorted({(a, a * n + x) for a in A.elements for x in U}
                       | {(a, x * n + a) for a in A.elements for x in U})
        if 2 ** len(cells) > limit:
            raise EnumerationBudgetExceeded(f"2^{len(cells)} candidate broadcasting maps")
        for k in range(len(cells) + 1):
            for chosen in itertools.combinations(cells, k):
                Bm = Relation(A, AA, chosen, validate=False)
                if good(Bm):
                    return Bm
        return None
    P = product(A, AA)
    for S in enumerate_subobjects(P.obj, limit):
        Bm = Relation(A, AA, (P.unpair(z) for z in S), validate=False)
        if good(Bm):
            return Bm
    return None


def s3_broadcast_instance() -> tuple[Relation, FrobeniusStructure]:
    """S3 as a one-object groupoid in FinSet, broadcast by pairing with the identity."""
    G = s3()
    F = group_structure(G, kind=FINSET)
    n = G.size
    e = 0
    pairs = [(g, e * n + g) for g in range(n)] + [(g, g * n + e) for g in range(n)]
    return Relation(F.carrier, prod(F.carrier, F.carrier), pairs), F


# -- rank ------------------------------------------------------------------------

def is_disconnecting(R: Relation) -> bool:
    """R(a, b) and R(a', b') imply R(a, b'): R factors through the unit."""
    doms = {a for a, _ in R.graph}
    cods = {b for _, b in R.graph}
    return len(R.graph) == len(doms) * len(cods)


def factor_through_unit(R: Relation) -> tuple[Relation, Relation] | None:
    """States ``(phi, psi)`` with ``R = psi . phi-dagger``, if they exist."""
    if not is_disconnecting(R):
        return None
    phi = state(R.dom, {a for a, _ in R.graph})
    psi = state(R.cod, {b for _, b in R.graph})
    return phi, psi


def check_bottleneck(R: Relation) -> PropertyReport:
    X = compose(R, dagger(R))
    sq = factor_through_unit(X)
    fac = factor_through_unit(R)
    payload = {"R": R, "square_splits": sq is not None, "splits": fac is not None}
    if sq is None:
        return PropertyReport("bottleneck", True, payload, "premise fails")
    if fac is not None:
        payload["phi"], payload["psi"] = fac
        return PropertyReport("bottleneck", True, payload)
    payload["square_phi"], payload["square_psi"] = sq
    return PropertyReport("bottleneck", False, payload, "R-dagger R splits but R does not")


def bottleneck_instance() -> Relation:
    A = finset(2)
    return Relation(A, A, [(0, 0), (0, 1), (1, 1)])


# -- projections -----------------------------------------------------------------

def projection_terms(A):
    m = dg.Gen("m", (A, A), (A,))
    u = dg.Gen("u", (), (A,))
    psi = dg.Gen("psi", (), (A,))
    idA = dg.Id((A,))
    idempotent = dg.seq(dg.par(psi, psi), m)
    bent = dg.seq(u, dg.Dagger(m), dg.par(dg.Dagger(psi), idA))
    return idempotent, bent


def check_state_projection(psi: Relation, F: FrobeniusStructure, *, strict: bool = False) -> PropertyReport:
    """``m . (psi x psi) = psi`` and ``psi = (psi-dagger x id) . m-dagger . u``.

    With ``strict`` a non-CP state raises NotCP; otherwise CP-ness is
    reported alongside the two equations.
    """
    A = F.carrier
    if psi.cod != A or psi.dom.size != 1:
        raise ObjectMismatch("expected a state of the structure's carrier")
    cp = is_completely_positive(psi, trivial_structure(A.kind), F).cp
    if strict and not cp:
        raise NotCP("state does not respect inverses")
    idem_t, bent_t = projection_terms(A)
    env = {"m": F.mult, "u": F.unit, "psi": psi}
    idem = dg.evaluate(idem_t, env) == psi
    bent = dg.evaluate(bent_t, env) == psi
    failed = [name for name, ok in (("idempotent", idem), ("self_adjoint", bent)) if not ok]
    payload = {"psi": psi, "cp": cp, "idempotent": idem, "self_adjoint": bent, "failed": failed}
    return PropertyReport("projection", idem and bent, payload)


def cp_states(F: FrobeniusStructure, limit: int = DEFAULT_ENUM_LIMIT) -> list[Relation]:
    I = trivial_structure(F.kind)
    out = []
    for S in enumerate_subobjects(F.carrier, limit):
        psi = state(F.carrier, S)
        if is_completely_positive(psi, I, F).cp:
            out.append(psi)
    return out


# -- copyable states -----------------------------------------------------------------

def check_copyable(F: FrobeniusStructure, limit: int = DEFAULT_ENUM_LIMIT) -> PropertyReport:
    """Whether the copyable states of F are unique (the empty state included)."""
    states = copyable_states(F, limit)
    return PropertyReport("copyable", len(states) <= 1,
                          {"states": states, "count": len(states)},
                          f"{len(states)} copyable states")


def pinned_copyable_instances() -> dict[str, FrobeniusStructure]:
    """Structures with two distinct nonempty copyable states."""
    two = finset(2)
    Q = quasigroup(idempotent_quasigroup_table(3))
    return {
        "finset_discrete2": make_structure(two, [(0, 0, 0), (1, 1, 1)], [0, 1]),
        "finqgrp_discrete_z3": make_structure(Q, [(a, a, a) for a in Q.elements], Q.elements),
    }
