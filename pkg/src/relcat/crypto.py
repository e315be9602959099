"""Symmetric encryption protocols in Rel(C) and the one-time pad.

Copying and deleting here are the canonical cartesian ones (diagonal and
the map to the terminal object), not a Frobenius structure under study.
"""
from __future__ import annotations

from dataclasses import dataclass

from . import diagram as dg
from .backend import DEFAULT_MAX_ELEMENTS, FINSET, Kind, ObjectRef, power, prod
from .catalog import is_abelian
from .errors import EnumerationBudgetExceeded, InternalError, KindMismatch, ObjectMismatch
from .rel import Relation
from .report import PropertyReport, first


@dataclass(frozen=True)
class ProtocolSpec:
    P: ObjectRef
    K: ObjectRef
    C: ObjectRef
    E: Relation

    def __post_init__(self):
        if not (self.P.kind == self.K.kind == self.C.kind):
            raise KindMismatch("plaintext, key and ciphertext spaces must share a backend")
        if self.E.dom != prod(self.P, self.K) or self.E.cod != self.C:
            raise ObjectMismatch("E must be a relation P x K -> C")

    def triples(self):
        nk = self.K.size
        return sorted((x // nk, x % nk, c) for x, c in self.E.graph)


def copy(A: ObjectRef) -> Relation:
    """The diagonal ``A -> A x A``."""
    n = A.size
    return Relation(A, prod(A, A), ((a, a * n + a) for a in A.elements))


def _env(spec: ProtocolSpec) -> dict:
    return {"e": spec.E, "copy": copy(spec.K)}


def correctness_terms(spec: ProtocolSpec):
    """Encrypt then decrypt with a shared key, versus passing the plaintext through."""
    P, K, C = spec.P, spec.K, spec.C
    e = dg.Gen("e", (P, K), (C,))
    cp = dg.Gen("copy", (K,), (K, K))
    idP, idK = dg.Id((P,)), dg.Id((K,))
    lhs = dg.seq(dg.par(idP, cp), dg.par(e, idK), dg.par(dg.Dagger(e), idK), dg.par(idP, dg.Cap(K)))
    rhs = dg.par(idP, dg.Delete(K))
    return lhs, rhs


def security_terms(spec: ProtocolSpec):
    """Ciphertext with the key forgotten, versus a ciphertext independent of the plaintext."""
    P, K, C = spec.P, spec.K, spec.C
    e = dg.Gen("e", (P, K), (C,))
    lhs = dg.seq(dg.par(dg.Id((P,)), dg.Codelete(K)), e)
    rhs = dg.seq(dg.Delete(P), dg.Codelete(C))
    return lhs, rhs


def check_correctness(spec: ProtocolSpec) -> PropertyReport:
    """Every (p, k) encrypts to something, and the key determines p from c."""
    T = spec.triples()
    defined = {(p, k) for p, k, _ in T}
    missing = first((p, k) for p in spec.P.elements for k in spec.K.elements if (p, k) not in defined)
    by_kc: dict[tuple[int, int], list[int]] = {}
    for p, k, c in T:
        by_kc.setdefault((k, c), []).append(p)
    clash = first((ps[0], ps[1], k, c) for (k, c), ps in sorted(by_kc.items()) if len(ps) > 1)
    elementwise = missing is None and clash is None

    lhs, rhs = correctness_terms(spec)
    diagram = dg.terms_equal(lhs, rhs, _env(spec))
    if diagram != elementwise:
        raise InternalError("correctness: diagram and elementwise routes disagree")
    return PropertyReport("correctness", elementwise,
                          {"total": missing is None, "untotal_at": missing,
                           "injective": clash is None, "clash": clash, "diagram": diagram})


def check_security(spec: ProtocolSpec) -> PropertyReport:
    """Without the key, every plaintext can produce every ciphertext."""
    seen = {(p, c) for p, _, c in spec.triples()}
    gap = first((p, c) for p in spec.P.elements for c in spec.C.elements if (p, c) not in seen)
    elementwise = gap is None
    lhs, rhs = security_terms(spec)
    diagram = dg.terms_equal(lhs, rhs, _env(spec))
    if diagram != elementwise:
        raise InternalError("security: diagram and elementwise routes disagree")
    return PropertyReport("security", elementwise, {"unreachable": gap, "diagram": diagram})


def make_otp(G: ObjectRef, n: int = 1, *, kind=None,
             max_elements: int = DEFAULT_MAX_ELEMENTS) -> ProtocolSpec:
    """One-time pad on words of length n over G: ``E(p, k) = p * k`` letterwise.

    The spaces are bare sets by default.  With ``kind=FINGRP`` they are the
    group ``G^n`` itself, which needs G abelian so that E is a subgroup.
    """
    if n < 1:
        raise ValueError("message length must be at least 1")
    size = G.size ** n
    if size > max_elements:
        raise EnumerationBudgetExceeded(f"|G|^n = {size} > {max_elements}")
    Gn = power(G, n)
    if kind is not None and kind.tag is not Kind.FINSET:
        if not is_abelian(G):
            raise KindMismatch("the one-time pad is a subgroup only for abelian G")
        S = Gn
    else:
        S = ObjectRef(FINSET, size)
    pairs = ((p * size + k, Gn.mul(p, k)) for p in range(size) for k in range(size))
    return ProtocolSpec(S, S, S, Relation(prod(S, S), S, pairs))


def identity_cipher(A: ObjectRef, K: ObjectRef | None = None) -> ProtocolSpec:
    """``E(p, k) = p``: correct but leaks everything."""
    K = K if K is not None else A
    nk = K.size
    return ProtocolSpec(A, K, A, Relation(prod(A, K), A, ((p * nk + k, p) for p in A.elements for k in K.elements)))
