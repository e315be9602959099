"""Relations over a finite backend: the category Rel(C).

A relation ``A -> B`` is a subobject of ``A x B``.  Graphs are stored as
explicit sets of index pairs whatever the backend, so one elementwise
composition routine serves every variety.
"""
from __future__ import annotations

import itertools
import os
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator

from .backend import (
    DEFAULT_ENUM_LIMIT,
    Hom,
    Kind,
    ObjectRef,
    enumerate_subobjects,
    is_subobject,
    prod,
    product,
    subobject_as_object,
    terminal,
)
from .errors import (
    EnumerationBudgetExceeded,
    IndexOutOfRange,
    InternalError,
    KindMismatch,
    NotASubobject,
    ObjectMismatch,
)

Pair = tuple[int, int]

# Composites, tensors, daggers and meets of subobjects are subobjects, so by
# default their graphs are not re-validated.  RELCAT_STRICT=1 (or setting this
# flag) turns the check back on as a guard against implementation bugs.
STRICT = os.environ.get("RELCAT_STRICT") == "1"


class Relation:
    """A validated subobject of ``dom x cod``."""

    __slots__ = ("dom", "cod", "graph", "_fwd", "_bwd", "_pairs")

    def __init__(self, dom: ObjectRef, cod: ObjectRef, pairs: Iterable[Pair], *, validate: bool = True):
        if dom.kind != cod.kind:
            raise KindMismatch(f"relation between {dom!r} and {cod!r}")
        self.dom = dom
        self.cod = cod
        self.graph = frozenset((int(a), int(b)) for a, b in pairs)
        self._fwd = self._bwd = self._pairs = None
        if validate:
            self._validate()

    def _validate(self):
        n, m = self.dom.size, self.cod.size
        for a, b in self.graph:
            if not (0 <= a < n and 0 <= b < m):
                raise IndexOutOfRange(f"pair ({a}, {b}) outside {self.dom!r} x {self.cod!r}")
        if self.dom.kind.tag is Kind.FINSET:
            return
        P = product(self.dom, self.cod)
        if not is_subobject(P.obj, (P.pair(a, b) for a, b in self.graph)):
            raise NotASubobject(f"graph is not a subobject of {self.dom!r} x {self.cod!r}")

    @property
    def kind(self):
        return self.dom.kind

    @property
    def pairs(self) -> tuple[Pair, ...]:
        if self._pairs is None:
            self._pairs = tuple(sorted(self.graph))
        return self._pairs

    def forward(self) -> dict[int, tuple[int, ...]]:
        """a -> sorted tuple of b with R(a, b)."""
        if self._fwd is None:
            fwd: dict[int, list[int]] = {}
            for a, b in self.pairs:
                fwd.setdefault(a, []).append(b)
            self._fwd = {a: tuple(bs) for a, bs in fwd.items()}
        return self._fwd

    def backward(self) -> dict[int, tuple[int, ...]]:
        if self._bwd is None:
            bwd: dict[int, list[int]] = {}
            for a, b in self.pairs:
                bwd.setdefault(b, []).append(a)
            self._bwd = {b: tuple(as_) for b, as_ in bwd.items()}
        return self._bwd

    def image(self, a: int) -> tuple[int, ...]:
        return self.forward().get(a, ())

    def preimage(self, b: int) -> tuple[int, ...]:
        return self.backward().get(b, ())

    def __call__(self, a: int, b: int) -> bool:
        return (a, b) in self.graph

    def __contains__(self, pair) -> bool:
        return tuple(pair) in self.graph

    def __iter__(self) -> Iterator[Pair]:
        return iter(self.pairs)

    def __len__(self) -> int:
        return len(self.graph)

    def __eq__(self, other):
        return (isinstance(other, Relation) and self.graph == other.graph
                and self.dom == other.dom and self.cod == other.cod)

    def __hash__(self):
        return hash((self.dom.size, self.cod.size, self.graph))

    def __repr__(self):
        shown = list(self.pairs[:8])
        more = ", ..." if len(self.graph) > 8 else ""
        return f"Relation({self.dom!r} -> {self.cod!r}, {shown}{more})"


@dataclass(frozen=True)
class PositivityWitness:
    """``s : A -> mid`` with ``s-dagger . s`` equal to the witnessed relation."""

    mid: ObjectRef
    s: Relation

    def verify(self, R: Relation) -> bool:
        return compose(self.s, dagger(self.s)) == R


# -- basic structure -----------------------------------------------------------

def _same(A: ObjectRef, B: ObjectRef, what: str):
    if A.kind != B.kind:
        raise KindMismatch(f"{what}: {A!r} vs {B!r}")
    if A != B:
        raise ObjectMismatch(f"{what}: {A!r} vs {B!r}")


def compose(R: Relation, S: Relation) -> Relation:
    """``S . R``: first R, then S."""
    _same(R.cod, S.dom, "compose")
    fwd = S.forward()
    out = set()
    for a, b in R.graph:
        cs = fwd.get(b)
        if cs:
            out.update((a, c) for c in cs)
    return Relation(R.dom, S.cod, out, validate=STRICT)


def compose_all(*rels: Relation) -> Relation:
    """Diagrammatic-order composite of a nonempty chain."""
    out = rels[0]
    for r in rels[1:]:
        out = compose(out, r)
    return out


def dagger(R: Relation) -> Relation:
    return Relation(R.cod, R.dom, ((b, a) for a, b in R.graph), validate=STRICT)


def tensor(R: Relation, S: Relation) -> Relation:
    if R.kind != S.kind:
        raise KindMismatch(f"tensor of {R.kind} and {S.kind} relations")
    nc, nd = S.dom.size, S.cod.size
    pairs = [(a * nc + c, b * nd + d) for a, b in R.graph for c, d in S.graph]
    return Relation(prod(R.dom, S.dom), prod(R.cod, S.cod), pairs, validate=STRICT)


def tensor_all(*rels: Relation, kind=None) -> Relation:
    if not rels:
        one = terminal(kind)
        return identity(one)
    out = rels[0]
    for r in rels[1:]:
        out = tensor(out, r)
    return out


def identity(A: ObjectRef) -> Relation:
    return Relation(A, A, ((a, a) for a in A.elements), validate=False)


def empty(A: ObjectRef, B: ObjectRef) -> Relation:
    return Relation(A, B, ())


def full(A: ObjectRef, B: ObjectRef) -> Relation:
    return Relation(A, B, itertools.product(A.elements, B.elements))


def cup(A: ObjectRef) -> Relation:
    """The state ``1 -> A x A`` picking out the diagonal."""
    n = A.size
    return Relation(terminal(A.kind), prod(A, A), ((0, a * n + a) for a in A.elements))


def cap(A: ObjectRef) -> Relation:
    return dagger(cup(A))


def swap(A: ObjectRef, B: ObjectRef) -> Relation:
    nb, na = B.size, A.size
    return Relation(prod(A, B), prod(B, A),
                    ((a * nb + b, b * na + a) for a in A.elements for b in B.elements))


def delete(A: ObjectRef) -> Relation:
    """Graph of the unique map ``A -> 1``."""
    return Relation(A, terminal(A.kind), ((a, 0) for a in A.elements))


def codelete(A: ObjectRef) -> Relation:
    return dagger(delete(A))


def graph_of(f: Hom) -> Relation:
    return Relation(f.dom, f.cod, enumerate(f.table))


def from_function(A: ObjectRef, B: ObjectRef, fn: Callable[[int], int]) -> Relation:
    return Relation(A, B, ((a, fn(a)) for a in A.elements))


def state(A: ObjectRef, elements: Iterable[int]) -> Relation:
    """The state ``1 -> A`` with the given support."""
    return Relation(terminal(A.kind), A, ((0, a) for a in elements))


def support(psi: Relation) -> frozenset[int]:
    """Elements picked out by a state."""
    return frozenset(b for _, b in psi.graph)


def leq(R: Relation, S: Relation) -> bool:
    _same(R.dom, S.dom, "leq")
    _same(R.cod, S.cod, "leq")
    return R.graph <= S.graph


def meet(R: Relation, S: Relation) -> Relation:
    _same(R.dom, S.dom, "meet")
    _same(R.cod, S.cod, "meet")
    return Relation(R.dom, R.cod, R.graph & S.graph, validate=STRICT)


# -- predicates ----------------------------------------------------------------

def _endo(R: Relation, what: str):
    if R.dom != R.cod:
        raise ObjectMismatch(f"{what} needs an endo-relation, got {R.dom!r} -> {R.cod!r}")


def is_reflexive(R: Relation) -> bool:
    _endo(R, "is_reflexive")
    return all((a, a) in R.graph for a in R.dom.elements)


def is_symmetric(R: Relation) -> bool:
    _endo(R, "is_symmetric")
    return all((b, a) in R.graph for a, b in R.graph)


def is_transitive(R: Relation) -> bool:
    _endo(R, "is_transitive")
    fwd = R.forward()
    return all((a, c) in R.graph for a, b in R.graph for c in fwd.get(b, ()))


def is_equivalence(R: Relation) -> bool:
    return is_reflexive(R) and is_symmetric(R) and is_transitive(R)


def is_difunctional(R: Relation) -> bool:
    """R(a,b), R(c,b), R(c,d) imply R(a,d)."""
    fwd, bwd, g = R.forward(), R.backward(), R.graph
    for a, b in g:
        for c in bwd[b]:
            for d in fwd[c]:
                if (a, d) not in g:
                    return False
    return True


def is_total(R: Relation) -> bool:
    fwd = R.forward()
    return all(a in fwd for a in R.dom.elements)


def is_single_valued(R: Relation) -> bool:
    return all(len(bs) <= 1 for bs in R.forward().values())


def is_map(R: Relation) -> bool:
    return is_total(R) and is_single_valued(R)


def pos_condition_violation(R: Relation) -> Pair | None:
    """First pair (a, b) of R lacking (a, a) or (b, a); None if there is none."""
    _endo(R, "satisfies_pos_condition")
    g = R.graph
    for a, b in R.pairs:
        if (a, a) not in g or (b, a) not in g:
            return (a, b)
    return None


def satisfies_pos_condition(R: Relation) -> bool:
    return pos_condition_violation(R) is None


def is_positive(R: Relation) -> PositivityWitness | None:
    """A witness ``s`` with ``R = s-dagger . s``, or None when R is not positive.

    Every backend here is positively regular, so the positivity condition is
    also sufficient and the witness is built directly.
    """
    if not satisfies_pos_condition(R):
        return None
    A = R.dom
    if A.kind.tag is Kind.FINSET:
        n = A.size
        pairs = set()
        for a, b in R.graph:
            pairs.add((a, a * n + b))
            pairs.add((a, b * n + a))
        mid = prod(A, A)
        s = Relation(A, mid, pairs)
    else:
        # on U = {a | R(a,a)} the relation is an equivalence, so it is its own witness
        U = sorted(a for a in A.elements if (a, a) in R.graph)
        mid, inc = subobject_as_object(A, U)
        back = {x: k for k, x in enumerate(inc.table)}
        s = Relation(A, mid, ((a, back[b]) for a, b in R.graph))
    w = PositivityWitness(mid, s)
    if not w.verify(R):
        raise InternalError("positivity witness failed to recompose")
    return w


def brute_force_positive(R: Relation, mid_size_budget: int | None = None,
                         limit: int = DEFAULT_ENUM_LIMIT) -> PositivityWitness | None:
    """Search for ``s`` with ``s-dagger . s = R`` without using the positivity condition.

    FinSet: every ``s : A -> FinSet(k)`` for ``k <= mid_size_budget``
    (default ``|A|``, which is exhaustive for ``|A| <= 4``).  Other backends:
    every subobject of ``A x X`` for X the terminal object, A itself, and
    ``A x A`` when it fits in the budget.
    """
    _endo(R, "brute_force_positive")
    A = R.dom
    target = R.graph
    if A.kind.tag is Kind.FINSET:
        budget = A.size if mid_size_budget is None else mid_size_budget
        spent = 0
        for k in range(budget + 1):
            X = ObjectRef(A.kind, k)
            cells = [(a, x) for a in A.elements for x in range(k)]
            spent += 2 ** len(cells)
            if spent > limit:
                raise EnumerationBudgetExceeded(f"brute force over A -> FinSet({k}) exceeds {limit}")
            for mask in range(2 ** len(cells)):
                chosen = [cells[i] for i in range(len(cells)) if mask >> i & 1]
                if _square(chosen) == target:
                    return PositivityWitness(X, Relation(A, X, chosen))
        return None
    budget = A.size if mid_size_budget is None else mid_size_budget
    candidates = [terminal(A.kind), A]
    if A.size * A.size <= budget:
        candidates.append(prod(A, A))
    for X in candidates:
        P = product(A, X)
        for S in enumerate_subobjects(P.obj, limit):
            chosen = [P.unpair(z) for z in S]
            if _square(chosen) == target:
                return PositivityWitness(X, Relation(A, X, chosen))
    return None


def _square(pairs) -> frozenset[Pair]:
    """Graph of ``s-dagger . s`` for s given by its pairs."""
    by_mid: dict[int, list[int]] = {}
    for a, x in pairs:
        by_mid.setdefault(x, []).append(a)
    return frozenset((a, c) for col in by_mid.values() for a in col for c in col)


# -- enumeration ---------------------------------------------------------------

def enumerate_relations(A: ObjectRef, B: ObjectRef, limit: int = DEFAULT_ENUM_LIMIT) -> Iterator[Relation]:
    """Every relation ``A -> B`` (every subobject of ``A x B``)."""
    P = product(A, B)
    for S in enumerate_subobjects(P.obj, limit):
        yield Relation(A, B, (P.unpair(z) for z in S), validate=False)
