"""Special dagger Frobenius structures in Rel(C) and their groupoids.

A structure on ``A`` is a multiplication ``M : A x A -> A`` and a unit
``U : 1 -> A``.  ``M(a, b, c)`` reads "c is a composed with b", matching the
groupoid convention ``m(f, g) = f after g``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator

from . import diagram as dg
from .backend import (
    DEFAULT_ENUM_LIMIT,
    Kind,
    ObjectRef,
    enumerate_subobjects,
    prod,
    product,
    subobject_as_object,
    terminal,
)
from .errors import InternalError, InvalidGroupoid, NotFrobenius, NotMalcevBackend, NotUnital, ObjectMismatch
from .groupoid import InternalGroupoid, make_groupoid, validate_groupoid
from .rel import Relation, compose, dagger, state, support, swap, tensor
from .report import Check, Report

AXIOMS = ("U1", "U2", "A", "S", "F")


@dataclass(frozen=True)
class FrobeniusStructure:
    carrier: ObjectRef
    mult: Relation
    unit: Relation

    def __post_init__(self):
        A = self.carrier
        if self.mult.dom != prod(A, A) or self.mult.cod != A:
            raise ObjectMismatch(f"mult must be a relation {A!r} x {A!r} -> {A!r}")
        if self.unit.dom.size != 1 or self.unit.dom.kind != A.kind or self.unit.cod != A:
            raise ObjectMismatch(f"unit must be a state of {A!r}")

    @property
    def kind(self):
        return self.carrier.kind

    def triples(self) -> list[tuple[int, int, int]]:
        """Sorted ``(a, b, c)`` with M(a, b, c)."""
        n = self.carrier.size
        return sorted((x // n, x % n, c) for x, c in self.mult.graph)

    def units(self) -> frozenset[int]:
        return support(self.unit)


def make_structure(A: ObjectRef, triples, unit) -> FrobeniusStructure:
    """Structure from ``(a, b, c)`` triples and a collection of unit elements."""
    n = A.size
    M = Relation(prod(A, A), A, ((a * n + b, c) for a, b, c in triples))
    return FrobeniusStructure(A, M, state(A, unit))


def derived_unit(M: Relation) -> frozenset[int]:
    """``{a | M(a, a, a)}``: the unit is recoverable from the multiplication."""
    n = M.cod.size
    return frozenset(c for x, c in M.graph if x == c * n + c)


# -- axiom checks --------------------------------------------------------------

def _diag(n):
    return {(a, a) for a in range(n)}


def _first_diff(X: set, Y: set):
    d = X ^ Y
    return min(d) if d else None


def formula_checks(F: FrobeniusStructure) -> dict[str, object]:
    """Elementwise evaluation of the regular formulas; axiom -> counterexample or None."""
    n = F.carrier.size
    T = F.triples()
    U = F.units()
    diag = _diag(n)
    by_first: dict[int, list[tuple[int, int]]] = {}   # a -> [(b, c)]
    by_second: dict[int, list[tuple[int, int]]] = {}  # b -> [(a, c)]
    for a, b, c in T:
        by_first.setdefault(a, []).append((b, c))
        by_second.setdefault(b, []).append((a, c))

    out = {}
    out["U1"] = _first_diff({(a, c) for x, a, c in T if x in U}, diag)
    out["U2"] = _first_diff({(a, c) for a, x, c in T if x in U}, diag)

    # (A): exists e. M(a,b,e) & M(e,c,d)  <=>  exists e. M(a,e,d) & M(b,c,e)
    lhs = {(a, b, c, d) for a, b, e in T for c, d in by_first.get(e, ())}
    rhs = {(a, b, c, d) for b, c, e in T for a, d in by_second.get(e, ())}
    out["A"] = _first_diff(lhs, rhs)

    # (S): exists b, c. M(b,c,a) & M(b,c,a')  <=>  a = a'
    by_args: dict[tuple[int, int], list[int]] = {}
    for a, b, c in T:
        by_args.setdefault((a, b), []).append(c)
    out["S"] = _first_diff({(x, y) for cs in by_args.values() for x in cs for y in cs}, diag)

    # (F): exists e. M(a,e,c) & M(e,d,b)  <=>  exists e. M(c,e,a) & M(e,b,d)
    lhs = {(a, b, c, d) for a, e, c in T for d, b in by_first.get(e, ())}
    rhs = {(a, b, c, d) for c, e, a in T for b, d in by_first.get(e, ())}
    out["F"] = _first_diff(lhs, rhs)
    return out


def axiom_terms(A: ObjectRef) -> dict[str, tuple[dg.Term, dg.Term]]:
    """Both sides of each axiom as diagrams over generators ``m`` and ``u``."""
    m = dg.Gen("m", (A, A), (A,))
    u = dg.Gen("u", (), (A,))
    md = dg.Dagger(m)
    idA = dg.Id((A,))
    return {
        "U1": (dg.seq(dg.par(u, idA), m), idA),
        "U2": (dg.seq(dg.par(idA, u), m), idA),
        "A": (dg.seq(dg.par(m, idA), m), dg.seq(dg.par(idA, m), m)),
        "S": (dg.seq(md, m), idA),
        "F": (dg.seq(dg.par(idA, md), dg.par(m, idA)), dg.seq(dg.par(md, idA), dg.par(idA, m))),
    }


def diagram_checks(F: FrobeniusStructure) -> dict[str, bool]:
    env = {"m": F.mult, "u": F.unit}
    return {name: dg.terms_equal(l, r, env) for name, (l, r) in axiom_terms(F.carrier).items()}


def check_frobenius(F: FrobeniusStructure, axioms=AXIOMS) -> Report:
    """Verdict per axiom; formula and diagram routes must agree."""
    formulas = formula_checks(F)
    diagrams = diagram_checks(F)
    checks = []
    for name in axioms:
        ok = formulas[name] is None
        if ok != diagrams[name]:
            raise InternalError(f"axiom {name}: formula says {ok}, diagram says {diagrams[name]}")
        checks.append(Check(name, ok, formulas[name]))
    return Report(tuple(checks))


def is_frobenius(F: FrobeniusStructure) -> bool:
    return check_frobenius(F).ok


def is_commutative(F: FrobeniusStructure) -> bool:
    A = F.carrier
    return compose(swap(A, A), F.mult) == F.mult


# -- constructions ---------------------------------------------------------------

def indiscrete(A: ObjectRef) -> FrobeniusStructure:
    """The structure on ``A x A`` whose groupoid has one arrow ``(a, b) : a -> b``.

    ``(b, c)`` after ``(a, b)`` is ``(a, c)``; identities are the diagonal.
    """
    n = A.size
    AA = prod(A, A)
    triples = [(b * n + c, a * n + b, a * n + c) for a in range(n) for b in range(n) for c in range(n)]
    return make_structure(AA, triples, [a * n + a for a in range(n)])


def group_structure(G: ObjectRef, *, kind=None) -> FrobeniusStructure:
    """``M = {(a, b, a*b)}`` with unit the identity, optionally over bare sets."""
    A = ObjectRef(kind, G.size) if kind is not None and kind.tag is Kind.FINSET else G
    n = G.size
    return make_structure(A, [(a, b, G.mul(a, b)) for a in range(n) for b in range(n)], [0])


def to_groupoid(F: FrobeniusStructure) -> InternalGroupoid:
    """Read off source, target, identities, inverses and composition."""
    rep = check_frobenius(F)
    if not rep.ok:
        bad = rep.failures()[0]
        raise NotFrobenius(f"axiom {bad.name} fails at {bad.counterexample!r}")
    A = F.carrier
    U = sorted(F.units())
    Uset = set(U)
    C0, inc = subobject_as_object(A, U)
    where = {x: k for k, x in enumerate(inc.table)}

    m: dict[tuple[int, int], int] = {}
    for a, b, c in F.triples():
        if (a, b) in m:
            raise InternalError(f"multiplication is not single-valued at {(a, b)}")
        m[(a, b)] = c

    def unique(name, a, cands):
        if len(cands) != 1:
            raise InternalError(f"{name} relation is not a function at {a}: {cands}")
        return cands[0]

    # S = {(a, x) in A x U | a.x defined},  T = {(a, x) in A x U | x.a defined}
    s = [where[unique("source", a, [x for x in U if (a, x) in m])] for a in A.elements]
    t = [where[unique("target", a, [x for x in U if (x, a) in m])] for a in A.elements]
    # I = {(a, b) | a.b and b.a are both identities}
    i = [unique("inverse", a, [b for b in A.elements
                               if m.get((a, b)) in Uset and m.get((b, a)) in Uset])
         for a in A.elements]
    G = make_groupoid(C0, A, s, t, list(inc.table), i, m, validate=False)
    rep = validate_groupoid(G)
    if not rep.ok:
        raise InternalError(f"extracted groupoid fails {rep.failures()[0].name}")
    return G


def from_groupoid(G: InternalGroupoid) -> FrobeniusStructure:
    rep = validate_groupoid(G)
    if not rep.ok:
        bad = rep.failures()[0]
        raise InvalidGroupoid(f"axiom {bad.name} fails at {bad.counterexample!r}")
    F = make_structure(G.C1, ((f, g, h) for (f, g), h in G.m.items()), set(G.u.table))
    if not is_frobenius(F):
        raise InternalError("the structure of a valid groupoid fails the Frobenius axioms")
    return F


def frobenius_from_unital(M: Relation, U: Relation) -> FrobeniusStructure:
    """In a Mal'cev backend a unital multiplication is automatically Frobenius."""
    A = M.cod
    if not A.kind.is_malcev:
        raise NotMalcevBackend(f"{A.kind} is not a Mal'cev backend")
    F = FrobeniusStructure(A, M, U)
    rep = check_frobenius(F)
    if not (rep["U1"].ok and rep["U2"].ok):
        bad = rep["U1"] if not rep["U1"].ok else rep["U2"]
        raise NotUnital(f"{bad.name} fails at {bad.counterexample!r}")
    if not rep.ok:
        raise InternalError(f"unital structure fails {rep.failures()[0].name} in a Mal'cev backend")
    return F


def copyable_states(F: FrobeniusStructure, limit: int = DEFAULT_ENUM_LIMIT) -> list[Relation]:
    """States ``H`` of the carrier with ``mult-dagger . H = H x H``, in enumeration order."""
    A = F.carrier
    h = dg.Gen("h", (), (A,))
    lhs = dg.seq(h, dg.Dagger(dg.Gen("m", (A, A), (A,))))
    rhs = dg.par(h, h)
    out = []
    for S in enumerate_subobjects(A, limit):
        H = state(A, S)
        if dg.terms_equal(lhs, rhs, {"h": H, "m": F.mult}):
            out.append(H)
    return out


def is_copyable(F: FrobeniusStructure, H: Relation) -> bool:
    return compose(H, dagger(F.mult)) == tensor(H, H)


# -- enumeration -----------------------------------------------------------------

def enumerate_frobenius(A: ObjectRef, limit: int = DEFAULT_ENUM_LIMIT) -> Iterator[FrobeniusStructure]:
    """Every special dagger Frobenius structure on ``A``.

    The unit is forced (it is the set of idempotents of M), so only the
    multiplication is searched.  FinSet carriers of size up to 3 use partial
    binary operations (speciality forces single-valuedness); other backends
    range over all subobjects of ``(A x A) x A``.
    """
    n = A.size
    AA = prod(A, A)
    if A.kind.tag is Kind.FINSET:
        if (n + 1) ** (n * n) > limit:
            from .errors import EnumerationBudgetExceeded
            raise EnumerationBudgetExceeded(f"{(n + 1) ** (n * n)} partial operations on {n} points")
        cells = [(a, b) for a in range(n) for b in range(n)]
        for values in itertools.product(range(-1, n), repeat=n * n):
            table = {cells[k]: v for k, v in enumerate(values) if v >= 0}
            if not _units_plausible(n, table):
                continue
            F = FrobeniusStructure(A, Relation(AA, A, ((a * n + b, c) for (a, b), c in table.items()),
                                               validate=False),
                                   state(A, (a for a in range(n) if table.get((a, a)) == a)))
            if is_frobenius(F):
                yield F
        return
    P = product(AA, A)
    for S in enumerate_subobjects(P.obj, limit):
        M = Relation(AA, A, (P.unpair(z) for z in S), validate=False)
        U = derived_unit(M)
        F = FrobeniusStructure(A, M, state(A, U))
        if _units_plausible(n, {(x // n, x % n): c for x, c in M.graph}) and is_frobenius(F):
            yield F


def _units_plausible(n: int, table: dict) -> bool:
    """Cheap necessary condition: every element has exactly one left and one right unit."""
    U = {a for a in range(n) if table.get((a, a)) == a}
    for a in range(n):
        if sum(1 for x in U if table.get((x, a)) == a) != 1:
            return False
        if sum(1 for x in U if table.get((a, x)) == a) != 1:
            return False
    for (x, a), c in table.items():
        if (x in U and c != a) or (a in U and c != x):
            return False
    return True


def tensor_structures(F: FrobeniusStructure, G: FrobeniusStructure) -> FrobeniusStructure:
    """The product structure on ``A x C``, acting componentwise."""
    A, C = F.carrier, G.carrier
    nc = C.size
    triples = [(a * nc + c, b * nc + d, x * nc + y)
               for a, b, x in F.triples() for c, d, y in G.triples()]
    unit = [a * nc + c for a in sorted(F.units()) for c in sorted(G.units())]
    return make_structure(prod(A, C), triples, unit)


def trivial_structure(kind) -> FrobeniusStructure:
    """The structure on the terminal object (the tensor unit of CP)."""
    return make_structure(terminal(kind), [(0, 0, 0)], [0])


def counit(F: FrobeniusStructure) -> Relation:
    """``unit-dagger``: the discarding effect of the structure."""
    return dagger(F.unit)


def unitality_counterexample(M: Relation, U) -> tuple | None:
    """First failure of the two unit laws for ``M`` and unit elements ``U``, or None."""
    U = support(U) if isinstance(U, Relation) else frozenset(U)
    n = M.cod.size
    left, right = set(), set()
    for x, c in M.graph:
        a, b = divmod(x, n)
        if a in U:
            left.add((b, c))
        if b in U:
            right.add((a, c))
    diag = _diag(n)
    for name, got in (("U1", left), ("U2", right)):
        d = _first_diff(got, diag)
        if d is not None:
            return (name, d)
    return None
