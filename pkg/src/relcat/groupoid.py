"""Internal categories and groupoids in a backend.

Composition convention, fixed for the whole package: ``m(f, g)`` is
"f after g".  It is defined when ``s(f) == t(g)``; then
``s(m(f, g)) == s(g)`` and ``t(m(f, g)) == t(f)``.  In ternary form
``M(f, g, h)`` means ``h = m(f, g)``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .backend import (
    DEFAULT_ENUM_LIMIT,
    FINSET,
    Hom,
    Kind,
    ObjectRef,
    enumerate_subobjects,
    is_homomorphism,
    is_subobject,
    prod,
    product,
    terminal,
)
from .errors import InternalError, InvalidGroupoid, NotMalcevBackend, ObjectMismatch
from .rel import Relation, support
from .report import Check, Report, first


@dataclass(frozen=True, eq=False)
class InternalCategory:
    C0: ObjectRef
    C1: ObjectRef
    s: Hom
    t: Hom
    u: Hom
    m: Mapping[tuple[int, int], int]

    @property
    def kind(self):
        return self.C1.kind

    def composable(self, f: int, g: int) -> bool:
        return self.s(f) == self.t(g)

    def composable_pairs(self) -> list[tuple[int, int]]:
        by_target: dict[int, list[int]] = {}
        for g in self.C1.elements:
            by_target.setdefault(self.t(g), []).append(g)
        return [(f, g) for f in self.C1.elements for g in by_target.get(self.s(f), ())]

    def compose(self, f: int, g: int) -> int:
        try:
            return self.m[(f, g)]
        except KeyError:
            raise InvalidGroupoid(f"arrows {f} and {g} are not composable") from None

    def id_dom(self, f: int) -> int:
        return self.u(self.s(f))

    def _key(self):
        return (self.C0, self.C1, self.s.table, self.t.table, self.u.table,
                tuple(sorted(self.m.items())))

    def __eq__(self, other):
        return type(self) is type(other) and self._key() == other._key()

    def __hash__(self):
        return hash((self.C0.size, self.C1.size, self.s.table, self.u.table))


@dataclass(frozen=True, eq=False)
class InternalGroupoid(InternalCategory):
    i: Hom = None

    def inverse(self, f: int) -> int:
        return self.i(f)

    def underlying_category(self) -> InternalCategory:
        return InternalCategory(self.C0, self.C1, self.s, self.t, self.u, self.m)

    def _key(self):
        return super()._key() + (self.i.table,)


# -- validation ----------------------------------------------------------------

def _first_failure(cases, pred):
    for c in cases:
        if not pred(*c):
            return c
    return None


def _check(name, cx):
    return Check(name, cx is None, cx)


def _m_is_homomorphism(G: InternalCategory, pairs) -> tuple | None:
    C1 = G.C1
    tag = C1.kind.tag
    if tag is Kind.FINSET:
        return None
    ops = [C1.mul]
    if tag is Kind.FINQGRP:
        ops += [C1.ldiv, C1.rdiv]
    m = G.m
    for op in ops:
        for f1, g1 in pairs:
            h1 = m[(f1, g1)]
            for f2, g2 in pairs:
                key = (op(f1, f2), op(g1, g2))
                if key not in m or m[key] != op(h1, m[(f2, g2)]):
                    return ((f1, g1), (f2, g2))
    if tag is not Kind.FINQGRP and m.get((0, 0)) != 0:
        return ((0, 0),)
    return None


def validate_category(G: InternalCategory) -> Report:
    """Per-axiom verdicts for the internal-category laws."""
    C0, C1, s, t, u, m = G.C0, G.C1, G.s, G.t, G.u, G.m
    checks = []
    shapes_ok = (s.dom == C1 and t.dom == C1 and s.cod == C0 and t.cod == C0
                 and u.dom == C0 and u.cod == C1
                 and len(s.table) == C1.size and len(t.table) == C1.size and len(u.table) == C0.size)
    checks.append(Check("shapes", shapes_ok))
    if not shapes_ok:
        return Report(tuple(checks))
    bad_hom = first(name for name, h in (("s", s), ("t", t), ("u", u)) if not is_homomorphism(h))
    checks.append(Check("homomorphisms", bad_hom is None, bad_hom))
    checks.append(_check("unit_endpoints", _first_failure(
        ((x,) for x in C0.elements), lambda x: s(u(x)) == x and t(u(x)) == x)))
    checks.append(Check("u_injective", len(set(u.table)) == C0.size))

    pairs = G.composable_pairs()
    pair_set = set(pairs)
    extra = first(k for k in m if k not in pair_set)
    missing = first(p for p in pairs if p not in m)
    bad_value = first(k for k, v in m.items() if not 0 <= v < C1.size)
    dom_cx = extra or missing or bad_value
    checks.append(_check("m_domain", dom_cx))
    if dom_cx is not None:
        return Report(tuple(checks))
    P = product(C1, C1)
    pullback_ok = is_subobject(P.obj, (P.pair(f, g) for f, g in pairs))
    checks.append(Check("pullback_subobject", pullback_ok))
    checks.append(_check("m_homomorphism", _m_is_homomorphism(G, pairs) if pullback_ok else None))
    checks.append(_check("m_source", _first_failure(pairs, lambda f, g: s(m[(f, g)]) == s(g))))
    checks.append(_check("m_target", _first_failure(pairs, lambda f, g: t(m[(f, g)]) == t(f))))
    checks.append(_check("unit_laws", _first_failure(
        ((f,) for f in C1.elements),
        lambda f: m.get((f, u(s(f)))) == f and m.get((u(t(f)), f)) == f)))

    by_target: dict[int, list[int]] = {}
    for g in C1.elements:
        by_target.setdefault(t(g), []).append(g)
    triples = ((f, g, h) for f, g in pairs for h in by_target.get(s(g), ()))
    checks.append(_check("associativity", _first_failure(
        triples, lambda f, g, h: m[(m[(f, g)], h)] == m[(f, m[(g, h)])])))
    return Report(tuple(checks))


def validate_groupoid(G: InternalCategory) -> Report:
    """Category laws plus the inverse laws (when ``G`` carries an ``i``)."""
    rep = validate_category(G)
    i = getattr(G, "i", None)
    if i is None:
        return Report(rep.checks + (Check("inverse", False, None, "no inverse map"),))
    C1, s, t, u, m = G.C1, G.s, G.t, G.u, G.m
    checks = list(rep.checks)
    shape = i.dom == C1 and i.cod == C1 and len(i.table) == C1.size
    checks.append(Check("inverse_homomorphism", shape and is_homomorphism(i)))
    if shape and rep["shapes"].ok:
        checks.append(_check("inverse_endpoints", _first_failure(
            ((f,) for f in C1.elements), lambda f: s(i(f)) == t(f) and t(i(f)) == s(f))))
        checks.append(_check("inverse_laws", _first_failure(
            ((f,) for f in C1.elements),
            lambda f: m.get((f, i(f))) == u(t(f)) and m.get((i(f), f)) == u(s(f)))))
    return Report(tuple(checks))


def require_valid(G: InternalCategory) -> InternalCategory:
    rep = validate_groupoid(G) if isinstance(G, InternalGroupoid) else validate_category(G)
    if not rep.ok:
        bad = rep.failures()[0]
        raise InvalidGroupoid(f"axiom {bad.name} fails at {bad.counterexample!r}")
    return G


# -- constructions -------------------------------------------------------------

def make_groupoid(C0: ObjectRef, C1: ObjectRef, s, t, u, i, m, *, validate: bool = True) -> InternalGroupoid:
    """Assemble a groupoid from tables; ``m`` is a mapping or (f, g, h) triples."""
    if not isinstance(m, Mapping):
        m = {(f, g): h for f, g, h in m}
    G = InternalGroupoid(C0, C1, Hom(C1, C0, tuple(s)), Hom(C1, C0, tuple(t)),
                         Hom(C0, C1, tuple(u)), dict(m), Hom(C1, C1, tuple(i)))
    return require_valid(G) if validate else G


def one_object_groupoid(G: ObjectRef, *, kind=None) -> InternalGroupoid:
    """A group as a groupoid with one object.

    With ``kind=FINSET`` the group table is only used to define ``m`` and the
    carriers are bare sets.  Inside FinGrp this is a groupoid only when the
    group is abelian, since ``m`` must then be a homomorphism.
    """
    if kind is not None and kind.tag is Kind.FINSET:
        C1 = ObjectRef(FINSET, G.size)
    else:
        C1 = G
    C0 = terminal(C1.kind)
    n = G.size
    m = {(f, g): G.mul(f, g) for f in range(n) for g in range(n)}
    return make_groupoid(C0, C1, [0] * n, [0] * n, [0], [G.inv(f) for f in range(n)], m)


def indiscrete_groupoid(A: ObjectRef) -> InternalGroupoid:
    """One arrow ``(a, b) : a -> b`` for every ordered pair of objects."""
    n = A.size
    C1 = prod(A, A)
    s = [x // n for x in C1.elements]
    t = [x % n for x in C1.elements]
    u = [a * n + a for a in A.elements]
    i = [(x % n) * n + x // n for x in C1.elements]
    m = {(b * n + c, a * n + b): a * n + c for a in range(n) for b in range(n) for c in range(n)}
    return make_groupoid(A, C1, s, t, u, i, m)


def discrete_groupoid(A: ObjectRef) -> InternalGroupoid:
    idx = list(A.elements)
    return make_groupoid(A, A, idx, idx, idx, idx, {(a, a): a for a in idx})


def disjoint_union(*parts: InternalGroupoid) -> InternalGroupoid:
    """Coproduct of FinSet groupoids; objects and arrows are renumbered blockwise."""
    if any(p.kind.tag is not Kind.FINSET for p in parts):
        raise InvalidGroupoid("disjoint unions are only formed in FinSet")
    s, t, u, i, m = [], [], [], [], {}
    o0 = o1 = 0
    for p in parts:
        s += [o0 + x for x in p.s.table]
        t += [o0 + x for x in p.t.table]
        u += [o1 + x for x in p.u.table]
        i += [o1 + x for x in p.i.table]
        m.update({(o1 + f, o1 + g): o1 + h for (f, g), h in p.m.items()})
        o0 += p.C0.size
        o1 += p.C1.size
    return make_groupoid(ObjectRef(FINSET, o0), ObjectRef(FINSET, o1), s, t, u, i, m)


def relabel(G: InternalGroupoid, perm: list[int]) -> InternalGroupoid:
    """Rename arrow ``f`` to ``perm[f]`` (FinSet only); objects keep their order."""
    inv = [0] * len(perm)
    for f, pf in enumerate(perm):
        inv[pf] = f
    n = G.C1.size
    return make_groupoid(
        G.C0, G.C1,
        [G.s(inv[x]) for x in range(n)], [G.t(inv[x]) for x in range(n)],
        [perm[G.u(x)] for x in G.C0.elements], [perm[G.i(inv[x])] for x in range(n)],
        {(perm[f], perm[g]): perm[h] for (f, g), h in G.m.items()})


def complete_to_groupoid(C: InternalCategory) -> InternalGroupoid:
    """The unique inverse map of an internal category in a Mal'cev backend."""
    if not C.kind.is_malcev:
        raise NotMalcevBackend(f"{C.kind} is not a Mal'cev backend")
    require_valid(C)
    s, t, u, m = C.s, C.t, C.u, C.m
    inv = []
    for f in C.C1.elements:
        cands = [g for g in C.C1.elements
                 if m.get((f, g)) == u(t(f)) and m.get((g, f)) == u(s(f))]
        if len(cands) != 1:
            raise InternalError(f"arrow {f} has {len(cands)} inverses in a Mal'cev backend")
        inv.append(cands[0])
    G = InternalGroupoid(C.C0, C.C1, s, t, u, dict(m), Hom(C.C1, C.C1, tuple(inv)))
    rep = validate_groupoid(G)
    if not rep.ok:
        raise InternalError(f"completed groupoid fails {rep.failures()[0].name}")
    return G


# -- relations between groupoids -------------------------------------------------

def respects_inverses(R: Relation, G: InternalGroupoid, H: InternalGroupoid) -> bool:
    """R(a, b) implies R(a^-1, b^-1) and R(id_dom a, id_dom b)."""
    return inverse_violation(R, G, H) is None


def inverse_violation(R: Relation, G: InternalGroupoid, H: InternalGroupoid):
    if R.dom != G.C1 or R.cod != H.C1:
        raise ObjectMismatch("relation boundary does not match the groupoids' arrow objects")
    g = R.graph
    for a, b in R.pairs:
        if (G.i(a), H.i(b)) not in g or (G.id_dom(a), H.id_dom(b)) not in g:
            return (a, b)
    return None


def _subset(G: InternalGroupoid, S) -> frozenset[int]:
    if isinstance(S, Relation):
        if S.cod != G.C1 or S.dom.size != 1:
            raise ObjectMismatch("expected a state of the arrow object")
        return support(S)
    return frozenset(S)


def respects_inverses_subobject(S, G: InternalGroupoid) -> bool:
    S = _subset(G, S)
    return all(G.i(f) in S and G.id_dom(f) in S for f in S)


def is_subgroupoid_relation(S, G: InternalGroupoid) -> bool:
    """Closed under ``id_dom``, inverses and composition (and a subobject of C1)."""
    S = _subset(G, S)
    if not is_subobject(G.C1, S) or not respects_inverses_subobject(S, G):
        return False
    return all(G.m[(f, g)] in S for f in S for g in S if G.composable(f, g))


@dataclass(frozen=True)
class ClosureViolation:
    subobject: frozenset[int]
    f: int
    g: int


def closure_property_check(G: InternalGroupoid, limit: int = DEFAULT_ENUM_LIMIT) -> list[ClosureViolation]:
    """Inverse-respecting subobjects of C1 that are not closed under composition."""
    out = []
    for S in enumerate_subobjects(G.C1, limit):
        if not respects_inverses_subobject(S, G):
            continue
        bad = first((f, g) for f in sorted(S) for g in sorted(S)
                    if G.composable(f, g) and G.m[(f, g)] not in S)
        if bad is not None:
            out.append(ClosureViolation(S, *bad))
    return out


# -- enumeration -----------------------------------------------------------------

def finset_groupoids(max_arrows: int = 6) -> list[InternalGroupoid]:
    """One FinSet groupoid per isomorphism class with at most ``max_arrows`` arrows
    (the empty groupoid included).

    Connected groupoids are indiscrete-on-k times a vertex group G, with
    ``k*k*|G|`` arrows; a groupoid is a multiset of those.
    """
    from .catalog import small_groups

    comps = []  # (arrow count, builder key)
    groups = [(n, G) for n, G in small_groups(max(1, max_arrows)) if G.size <= max_arrows]
    for k in range(1, max_arrows + 1):
        for name, Gr in groups:
            if k * k * Gr.size <= max_arrows:
                comps.append((k * k * Gr.size, k, name, Gr))
    out = []

    def rec(start, budget, chosen):
        out.append(disjoint_union(*[_connected(k, Gr) for _, k, _, Gr in chosen]))
        for j in range(start, len(comps)):
            if comps[j][0] <= budget:
                rec(j, budget - comps[j][0], chosen + [comps[j]])

    rec(0, max_arrows, [])
    return out


def _connected(k: int, Gr: ObjectRef) -> InternalGroupoid:
    """Indiscrete groupoid on k objects with vertex group Gr, in FinSet.

    Arrow ``(a, g, b) : a -> b`` has index ``(a*|G| + g)*k + b``.
    """
    n = Gr.size
    C1 = ObjectRef(FINSET, k * n * k)

    def idx(a, g, b):
        return (a * n + g) * k + b

    arrows = [(a, g, b) for a in range(k) for g in range(n) for b in range(k)]
    s = [a for a, _, _ in arrows]
    t = [b for _, _, b in arrows]
    u = [idx(a, 0, a) for a in range(k)]
    i = [idx(b, Gr.inv(g), a) for a, g, b in arrows]
    # (b, h, c) after (a, g, b) is (a, h*g, c)
    m = {(idx(b, h, c), idx(a, g, b)): idx(a, Gr.mul(h, g), c)
         for a in range(k) for b in range(k) for c in range(k)
         for g in range(n) for h in range(n)}
    return make_groupoid(ObjectRef(FINSET, k), C1, s, t, u, i, m)
