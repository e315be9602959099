"""Exhaustive verification batteries, one per acceptance criterion.

Each criterion returns a CriterionResult with a verdict, counters describing
how much was checked, and any failures found.  The CLI ``suite`` verb groups
them by theme.
"""
from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass, field
from typing import Callable

from . import diagram as dg
from . import rel
from .backend import (
    DEFAULT_ENUM_LIMIT,
    FINGRP,
    FINSET,
    Kind,
    ObjectRef,
    enumerate_subobjects,
    prod,
    product,
)
from .catalog import (
    cyclic,
    finset,
    idempotent_quasigroup_table,
    is_abelian,
    klein,
    quasigroup,
    s3,
    small_groups,
    subtraction_quasigroup_table,
    vect,
)
from .cp import builder, cp_compose, CpMorphism, respects_inverses_equiv_check
from .crypto import check_correctness, check_security, identity_cipher, make_otp
from .frobenius import (
    copyable_states,
    enumerate_frobenius,
    frobenius_from_unital,
    from_groupoid,
    group_structure,
    indiscrete,
    is_commutative,
    tensor_structures,
    to_groupoid,
    unitality_counterexample,
)
from .groupoid import finset_groupoids, indiscrete_groupoid, one_object_groupoid, relabel
from .quantum import (
    bottleneck_instance,
    check_bottleneck,
    check_heisenberg_instance,
    check_state_projection,
    cp_states,
    is_broadcasting_map,
    disturbing_measurement_instance,
    s3_broadcast_instance,
    pinned_copyable_instances,
    search_broadcasting_map,
)
from .rel import Relation, enumerate_relations, pos_condition_violation, state


@dataclass
class CriterionResult:
    number: int
    title: str
    ok: bool = True
    counts: dict = field(default_factory=dict)
    failures: list = field(default_factory=list)
    elapsed: float = 0.0

    def fail(self, what):
        self.ok = False
        if len(self.failures) < 20:
            self.failures.append(what)

    def bump(self, key, k=1):
        self.counts[key] = self.counts.get(key, 0) + k

    def line(self, limit: float | None = None) -> str:
        within = limit is None or self.elapsed < limit
        verdict = "PASS" if self.ok and within else "FAIL"
        budget = f" (limit {limit:g}s)" if limit is not None else ""
        return f"[{verdict}] criterion {self.number}: {self.title} in {self.elapsed:.2f}s{budget}"

    def to_dict(self, timing: bool = False) -> dict:
        # wall-clock time is left out by default so reports stay reproducible
        out = {"criterion": self.number, "title": self.title, "ok": self.ok,
               "counts": dict(sorted(self.counts.items())),
               "failures": [repr(f) for f in self.failures]}
        if timing:
            out["elapsed"] = round(self.elapsed, 3)
        return out


def _timed(number: int, title: str):
    def wrap(fn: Callable[[CriterionResult, int], None]):
        def run(limit: int = DEFAULT_ENUM_LIMIT) -> CriterionResult:
            res = CriterionResult(number, title)
            t0 = time.perf_counter()
            fn(res, limit)
            res.elapsed = time.perf_counter() - t0
            return res
        run.__name__ = fn.__name__
        run.__doc__ = fn.__doc__
        return run
    return wrap


def _groups_up_to(order: int):
    return [(name, G) for name, G in small_groups(8) if G.size <= order]


# -- 1 -------------------------------------------------------------------------

@_timed(1, "Frobenius structures and groupoids round-trip exactly")
def criterion_1(res: CriterionResult, limit: int):
    def check_groupoid(label, G):
        res.bump("groupoids")
        if to_groupoid(from_groupoid(G)) != G:
            res.fail(("groupoid", label))

    def check_structure(label, F):
        res.bump("structures")
        if from_groupoid(to_groupoid(F)) != F:
            res.fail(("structure", label))

    for k, G in enumerate(finset_groupoids(6)):
        check_groupoid(f"finset#{k}", G)
        # every arrow relabelling that keeps identities in order, for small ones
        n = G.C1.size
        if n <= 4:
            for perm in itertools.permutations(range(n)):
                if list(perm[x] for x in G.u.table) == sorted(perm[x] for x in G.u.table):
                    check_groupoid(f"finset#{k}{perm}", relabel(G, list(perm)))
    for name, Gr in small_groups(8):
        if is_abelian(Gr):
            check_groupoid(f"fingrp:{name}", one_object_groupoid(Gr))
        check_groupoid(f"finset:{name}", one_object_groupoid(Gr, kind=FINSET))
    for A in (finset(0), finset(1), finset(2), finset(3), cyclic(2), cyclic(3), vect(2, 1), vect(3, 1)):
        check_groupoid(f"indiscrete:{A!r}", indiscrete_groupoid(A))
        check_structure(f"indiscrete:{A!r}", indiscrete(A))

    carriers = [finset(n) for n in range(4)] + [cyclic(2), cyclic(3), cyclic(4), klein(),
                                                vect(2, 1), vect(2, 2), vect(3, 1)]
    for A in carriers:
        for k, F in enumerate(enumerate_frobenius(A, limit)):
            res.bump(f"enumerated:{A!r}")
            check_structure(f"{A!r}#{k}", F)


# -- 2 -------------------------------------------------------------------------

@_timed(2, "is_positive agrees with the brute-force oracle")
def criterion_2(res: CriterionResult, limit: int):
    carriers = [finset(2)] + [G for _, G in _groups_up_to(4)]
    for A in carriers:
        for R in enumerate_relations(A, A, limit):
            res.bump("relations")
            w = rel.is_positive(R)
            oracle = rel.brute_force_positive(R, limit=limit)
            if (w is None) != (oracle is None):
                res.fail(("disagree", R))
            for wit in (w, oracle):
                if wit is not None and not wit.verify(R):
                    res.fail(("witness", R))
            if w is not None:
                res.bump("positive")


# -- 3 and 4 ---------------------------------------------------------------------

def _cp_instances():
    Z = group_structure(cyclic(2), kind=FINSET)
    I = indiscrete(finset(2))
    IG = indiscrete(cyclic(2))
    finset_pairs = [("Z2", Z), ("Ind2", I)]
    return finset_pairs, [("IndZ2", IG)]


@_timed(3, "CP iff respects inverses")
def criterion_3(res: CriterionResult, limit: int):
    fs, gs = _cp_instances()
    for family in (fs, gs):
        for (na, FA), (nb, FB) in itertools.product(family, repeat=2):
            rep = respects_inverses_equiv_check(FA, FB, limit)
            res.bump("relations", rep.total)
            res.bump("cp", rep.cp_count)
            res.counts[f"cp:{na}->{nb}"] = rep.cp_count
            for R in rep.disagreements:
                res.fail((na, nb, R))


@_timed(4, "CP morphisms compose, and Rel is positively monoidal")
def criterion_4(res: CriterionResult, limit: int):
    fs, gs = _cp_instances()
    for family in (fs, gs):
        homs = {}
        for (na, FA), (nb, FB) in itertools.product(family, repeat=2):
            b = builder(FA, FB)
            homs[(na, nb)] = [CpMorphism(FA, FB, R) for R in enumerate_relations(FA.carrier, FB.carrier, limit)
                              if pos_condition_violation(b.choi(R)) is None]
        names = [n for n, _ in family]
        for x, y, z in itertools.product(names, repeat=3):
            seen = set()
            for f in homs[(x, y)]:
                for g in homs[(y, z)]:
                    res.bump("pairs")
                    R = rel.compose(f.rel, g.rel)
                    if R in seen:
                        continue
                    seen.add(R)
                    res.bump("distinct_composites")
                    try:
                        cp_compose(f, g)
                    except Exception as e:  # InternalError signals a non-CP composite
                        res.fail((x, y, z, R, repr(e)))
        # positively monoidal: R (x) id positive implies R positive
        for name, F in family:
            A = F.carrier
            X = finset(2) if A.kind.tag is Kind.FINSET else cyclic(2)
            for R in enumerate_relations(A, A, limit):
                res.bump("monoidal")
                T = rel.tensor(R, rel.identity(X))
                if rel.is_positive(T) is not None and rel.is_positive(R) is None:
                    res.fail(("monoidal", name, R))


# -- 5 ---------------------------------------------------------------------------

def _malcev_carriers():
    return [
        ("Z2", cyclic(2)), ("Z3", cyclic(3)), ("Z2xZ2", klein()),
        ("F2^1", vect(2, 1)), ("F2^2", vect(2, 2)),
        ("Qidem3", quasigroup(idempotent_quasigroup_table(3))),
        ("Qsub3", quasigroup(subtraction_quasigroup_table(3))),
    ]


@_timed(5, "Mal'cev backends: reflexive means equivalence, all relations difunctional")
def criterion_5(res: CriterionResult, limit: int):
    carriers = _malcev_carriers()
    for (na, A), (nb, B) in itertools.product(carriers, repeat=2):
        if A.kind != B.kind:
            continue
        for R in enumerate_relations(A, B, limit):
            res.bump("relations")
            if not rel.is_difunctional(R):
                res.fail(("not difunctional", na, nb, R))
            if na == nb and rel.is_reflexive(R):
                res.bump("reflexive")
                if not rel.is_equivalence(R):
                    res.fail(("reflexive, not equivalence", na, R))
    pinned = Relation(finset(2), finset(2), [(0, 0), (1, 0), (1, 1)])
    if rel.is_difunctional(pinned):
        res.fail(("FinSet pinned relation is difunctional", pinned))
    res.counts["finset_pinned_difunctional"] = rel.is_difunctional(pinned)


# -- 6 ---------------------------------------------------------------------------

@_timed(6, "unitality suffices in Mal'cev backends")
def criterion_6(res: CriterionResult, limit: int):
    for A in (cyclic(2), klein(), vect(2, 1)):
        AA = prod(A, A)
        P = product(AA, A)
        units = list(enumerate_subobjects(A, limit))
        for S in enumerate_subobjects(P.obj, limit):
            M = Relation(AA, A, (P.unpair(z) for z in S), validate=False)
            for Uset in units:
                res.bump("pairs")
                if unitality_counterexample(M, Uset) is not None:
                    continue
                res.bump(f"unital:{A!r}")
                try:
                    frobenius_from_unital(M, state(A, Uset))
                except Exception as e:
                    res.fail((A, M, sorted(Uset), repr(e)))


# -- 7 ---------------------------------------------------------------------------

@_timed(7, "pinned counterexamples reproduce their verdicts")
def criterion_7(res: CriterionResult, limit: int):
    M, FB, FC = disturbing_measurement_instance()
    h = check_heisenberg_instance(M, FB, FC, limit)
    res.counts["heisenberg_holds"] = h.holds
    if h.holds or not h.payload["undisturbed"]:
        res.fail(("heisenberg", h))
    B, F = s3_broadcast_instance()
    broad = is_broadcasting_map(B, F)
    res.counts["broadcast_map"] = broad
    res.counts["s3_commutative"] = is_commutative(F)
    if not broad or is_commutative(F):
        res.fail(("broadcasting", B))
    bn = check_bottleneck(bottleneck_instance())
    res.counts["bottleneck_holds"] = bn.holds
    if bn.holds or not bn.payload["square_splits"]:
        res.fail(("bottleneck", bn))


# -- 8 ---------------------------------------------------------------------------

@_timed(8, "Mal'cev backends behave quantumly")
def criterion_8(res: CriterionResult, limit: int):
    IG = indiscrete(cyclic(2))
    B = IG.carrier
    # Heisenberg over every CP measurement into a small group structure
    for name, Gr in _groups_up_to(4):
        FC = group_structure(Gr)
        b = builder(IG, tensor_structures(IG, FC))
        for M in enumerate_relations(B, prod(B, FC.carrier), limit):
            res.bump("heisenberg_relations")
            if pos_condition_violation(b.choi(M)) is not None:
                continue
            res.bump("heisenberg_cp")
            rep = check_heisenberg_instance(M, IG, FC, limit)
            if rep.payload["undisturbed"]:
                res.bump("heisenberg_undisturbed")
            if not rep.holds:
                res.fail(("heisenberg", name, M))
    # no broadcasting for the noncommutative quantum structure
    found = search_broadcasting_map(IG, limit)
    res.counts["broadcast_found"] = found is not None
    if found is not None:
        res.fail(("broadcasting", found))
    # bottleneck for every subgroup relation
    groups = [G for _, G in small_groups(6)]
    for G, H in itertools.product(groups, repeat=2):
        for R in enumerate_relations(G, H, limit):
            res.bump("bottleneck_relations")
            if not check_bottleneck(R).holds:
                res.fail(("bottleneck", R))
    # CP states are projections
    structures = [IG, indiscrete(cyclic(3))] + [group_structure(G) for _, G in _groups_up_to(4)]
    for F in structures:
        for psi in cp_states(F, limit):
            res.bump("cp_states")
            if not check_state_projection(psi, F).holds:
                res.fail(("projection", psi))
    # copyable states: unique in entirely inhabited backends
    inhabited = structures + [group_structure(vect(2, 1)), group_structure(vect(2, 2)),
                              indiscrete(vect(2, 1))]
    for F in inhabited:
        n = len(copyable_states(F, limit))
        res.bump("copyable_structures")
        if n > 1:
            res.fail(("copyable not unique", F.carrier, n))
    for name, F in pinned_copyable_instances().items():
        nonempty = [h for h in copyable_states(F, limit) if h.graph]
        res.counts[f"copyable:{name}"] = len(nonempty)
        if len(nonempty) < 2:
            res.fail(("copyable unique", name))


# -- 9 ---------------------------------------------------------------------------

@_timed(9, "one-time pad is correct and secure")
def criterion_9(res: CriterionResult, limit: int):
    for G in (cyclic(2), cyclic(3), cyclic(4), s3()):
        for n in (1, 2):
            kinds = [None] + ([FINGRP] if is_abelian(G) else [])
            for kind in kinds:
                spec = make_otp(G, n, kind=kind)
                res.bump("protocols")
                if not check_correctness(spec).holds:
                    res.fail(("incorrect", G, n, kind))
                if not check_security(spec).holds:
                    res.fail(("insecure", G, n, kind))
    for A in (finset(2), finset(3), cyclic(2)):
        spec = identity_cipher(A)
        res.bump("identity_ciphers")
        if check_security(spec).holds or not check_correctness(spec).holds:
            res.fail(("identity cipher", A))


# -- 10 --------------------------------------------------------------------------

def _random_relation(rng: random.Random, A: ObjectRef, B: ObjectRef) -> Relation:
    if A.kind.tag is Kind.FINSET:
        return Relation(A, B, [(a, b) for a in A.elements for b in B.elements if rng.random() < 0.4])
    subs = list(enumerate_subobjects(product(A, B).obj))
    P = product(A, B)
    return Relation(A, B, (P.unpair(z) for z in rng.choice(subs)))


@_timed(10, "diagram evaluation is coherent")
def criterion_10(res: CriterionResult, limit: int, cases: int = 1000, seed: int = 20240501):
    rng = random.Random(seed)
    pools = [[finset(1), finset(2), finset(3)], [cyclic(2), cyclic(3)]]
    for case in range(cases):
        objs = pools[0] if case % 4 else pools[1]
        A, B, C, D = (rng.choice(objs) for _ in range(4))
        env = {"f": _random_relation(rng, A, B), "g": _random_relation(rng, C, D),
               "h": _random_relation(rng, B, A), "k": _random_relation(rng, D, C)}
        f = dg.gen("f", env["f"])
        g = dg.gen("g", env["g"])
        h = dg.gen("h", env["h"])
        k = dg.gen("k", env["k"])
        idA = dg.Id((A,))
        checks = {
            "snake_left": (dg.seq(dg.par(idA, dg.Cup(A)), dg.par(dg.Cap(A), idA)), idA),
            "snake_right": (dg.seq(dg.par(dg.Cup(A), idA), dg.par(idA, dg.Cap(A))), idA),
            "dagger_involution": (dg.Dagger(dg.Dagger(f)), f),
            "interchange": (dg.seq(dg.par(f, g), dg.par(h, k)), dg.par(dg.seq(f, h), dg.seq(g, k))),
            "dagger_cup": (dg.Dagger(dg.Cup(A)), dg.Cap(A)),
        }
        for name, (lhs, rhs) in checks.items():
            res.bump(name)
            if not dg.terms_equal(lhs, rhs, env):
                res.fail((name, case))
        res.bump("cases")


CRITERIA = {
    1: criterion_1, 2: criterion_2, 3: criterion_3, 4: criterion_4, 5: criterion_5,
    6: criterion_6, 7: criterion_7, 8: criterion_8, 9: criterion_9, 10: criterion_10,
}
TIME_LIMITS = {1: 60, 2: 30, 3: 120, 4: 120, 5: 30, 6: 120, 7: 5, 8: 600, 9: 60, 10: 30}
SUITES = {
    "roundtrip": (1,),
    "oracles": (2, 10),
    "cp-equivalence": (3, 4),
    "malcev": (5, 6),
    "quantum": (7, 8),
    "crypto": (9,),
}


def run_suite(name: str, limit: int = DEFAULT_ENUM_LIMIT) -> list[CriterionResult]:
    return [CRITERIA[k](limit) for k in SUITES[name]]
