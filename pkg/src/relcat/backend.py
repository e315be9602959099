"""Finite models of regular categories.

Four varieties are modelled: finite sets, finite groups, finite-dimensional
vector spaces over a prime field, and finite quasigroups (with both
divisions as operations).  Every carrier is the index range ``0..size-1``.

Products are mixed-radix: the pair ``(a, b)`` of ``A x B`` has index
``a * |B| + b``.  Group-like objects are stored as a tuple of *atoms*
(explicit operation tables), one per factor, so the product is strictly
associative and the terminal object is a strict unit.
"""
from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, NamedTuple, Sequence

from .errors import (
    BadPrime,
    EnumerationBudgetExceeded,
    IndexOutOfRange,
    KindMismatch,
    MalformedAlgebra,
)

DEFAULT_MAX_ELEMENTS = 256
DEFAULT_ENUM_LIMIT = 10**6
# full operation tables are materialised up to this carrier size
TABLE_LIMIT = 256


class Kind(str, enum.Enum):
    FINSET = "finset"
    FINGRP = "fingrp"
    FINVECT = "finvect"
    FINQGRP = "finqgrp"


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % d for d in range(2, int(n**0.5) + 1))


@dataclass(frozen=True)
class BackendKind:
    tag: Kind
    p: int | None = None

    def __post_init__(self):
        if self.tag is Kind.FINVECT:
            if self.p is None or not is_prime(self.p):
                raise BadPrime(f"FinVect needs a prime modulus, got {self.p!r}")
        elif self.p is not None:
            raise KindMismatch(f"{self.tag.value} takes no modulus")

    @property
    def is_malcev(self) -> bool:
        return self.tag is not Kind.FINSET

    @property
    def is_positively_regular(self) -> bool:
        # FinSet is coherent; the other three are regular Mal'cev.
        return True

    @property
    def is_entirely_inhabited(self) -> bool:
        return self.tag in (Kind.FINGRP, Kind.FINVECT)

    def __str__(self):
        if self.tag is Kind.FINVECT:
            return f"FinVect({self.p})"
        return {Kind.FINSET: "FinSet", Kind.FINGRP: "FinGrp", Kind.FINQGRP: "FinQGrp"}[self.tag]


FINSET = BackendKind(Kind.FINSET)
FINGRP = BackendKind(Kind.FINGRP)
FINQGRP = BackendKind(Kind.FINQGRP)


def finvect(p: int) -> BackendKind:
    return BackendKind(Kind.FINVECT, p)


class Atom:
    """One explicit finite algebra: a group or a quasigroup table."""

    __slots__ = ("size", "mul", "inv", "ldiv", "rdiv", "_hash")

    def __init__(self, mul, inv=None, ldiv=None, rdiv=None):
        self.mul = tuple(tuple(row) for row in mul)
        self.size = len(self.mul)
        self.inv = tuple(inv) if inv is not None else None
        self.ldiv = tuple(tuple(r) for r in ldiv) if ldiv is not None else None
        self.rdiv = tuple(tuple(r) for r in rdiv) if rdiv is not None else None
        self._hash = hash(self.mul)

    def __eq__(self, other):
        return isinstance(other, Atom) and (self is other or self.mul == other.mul)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Atom(size={self.size})"


def _validate_group_table(table) -> Atom:
    n = len(table)
    if n == 0:
        raise MalformedAlgebra("a group needs at least one element")
    if any(len(row) != n for row in table):
        raise MalformedAlgebra("group table must be square")
    if any(not isinstance(v, int) or not 0 <= v < n for row in table for v in row):
        raise MalformedAlgebra("group table entries out of range")
    for x in range(n):
        if table[0][x] != x or table[x][0] != x:
            raise MalformedAlgebra("index 0 must be the identity")
    inv = []
    for x in range(n):
        ys = [y for y in range(n) if table[x][y] == 0 and table[y][x] == 0]
        if not ys:
            raise MalformedAlgebra(f"element {x} has no inverse")
        inv.append(ys[0])
    for x in range(n):
        tx = table[x]
        for y in range(n):
            txy = table[tx[y]]
            ty = table[y]
            for z in range(n):
                if txy[z] != tx[ty[z]]:
                    raise MalformedAlgebra(f"not associative at ({x}, {y}, {z})")
    return Atom(table, inv=inv)


def _division_tables(table):
    n = len(table)
    ldiv = [[0] * n for _ in range(n)]
    rdiv = [[0] * n for _ in range(n)]
    for x in range(n):
        for z in range(n):
            y = table[x][z]
            ldiv[x][y] = z  # x * (x \ y) = y
            rdiv[table[z][x]][x] = z  # (y / x) * x = y
    return ldiv, rdiv


def _validate_quasigroup_table(table, ldiv=None, rdiv=None) -> Atom:
    n = len(table)
    if any(len(row) != n for row in table):
        raise MalformedAlgebra("quasigroup table must be square")
    full = set(range(n))
    for x in range(n):
        if set(table[x]) != full:
            raise MalformedAlgebra(f"row {x} is not a permutation")
        if {table[y][x] for y in range(n)} != full:
            raise MalformedAlgebra(f"column {x} is not a permutation")
    computed = _division_tables(table)
    if ldiv is not None and [list(r) for r in ldiv] != computed[0]:
        raise MalformedAlgebra("left division table violates x*(x\\y) = y")
    if rdiv is not None and [list(r) for r in rdiv] != computed[1]:
        raise MalformedAlgebra("right division table violates (y/x)*x = y")
    return Atom(table, ldiv=computed[0], rdiv=computed[1])


def _cyclic_atom(p: int) -> Atom:
    return Atom([[(x + y) % p for y in range(p)] for x in range(p)],
                inv=[(-x) % p for x in range(p)])


class ObjectRef:
    """A finite carrier with the algebraic structure of its backend."""

    __slots__ = ("kind", "size", "atoms", "dim", "_radices", "_mul", "_inv",
                 "_ldiv", "_rdiv", "_flat")

    def __init__(self, kind: BackendKind, size: int, atoms: tuple = (), dim: int | None = None):
        self.kind = kind
        self.size = size
        self.atoms = atoms
        self.dim = dim
        self._radices = tuple(a.size for a in atoms)
        self._mul = self._inv = self._ldiv = self._rdiv = self._flat = None

    # -- identity and equality -------------------------------------------------
    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, ObjectRef) or self.kind != other.kind or self.size != other.size:
            return False
        tag = self.kind.tag
        if tag is Kind.FINSET:
            return True
        if tag is Kind.FINVECT:
            return self.dim == other.dim
        if self.atoms == other.atoms:
            return True
        return self.flat_table() == other.flat_table()

    def __hash__(self):
        return hash((self.kind, self.size))

    def __repr__(self):
        tag = self.kind.tag
        if tag is Kind.FINSET:
            return f"FinSet({self.size})"
        if tag is Kind.FINVECT:
            return f"FinVect({self.kind.p}, dim={self.dim})"
        factors = "x".join(str(a.size) for a in self.atoms) or "1"
        name = "FinGrp" if tag is Kind.FINGRP else "FinQGrp"
        return f"{name}[{factors}]"

    @property
    def elements(self) -> range:
        return range(self.size)

    # -- mixed-radix coordinates -----------------------------------------------
    def digits(self, x: int) -> list[int]:
        out = []
        for r in reversed(self._radices):
            x, d = divmod(x, r)
            out.append(d)
        out.reverse()
        return out

    def undigits(self, ds: Sequence[int]) -> int:
        x = 0
        for r, d in zip(self._radices, ds):
            x = x * r + d
        return x

    def label(self, x: int):
        """Human-readable name of element ``x``."""
        if self.kind.tag is Kind.FINSET or len(self.atoms) <= 1:
            return x
        return tuple(self.digits(x))

    # -- operations ------------------------------------------------------------
    def _binary(self, name: str, x: int, y: int) -> int:
        xs, ys = self.digits(x), self.digits(y)
        return self.undigits([getattr(a, name)[dx][dy] for a, dx, dy in zip(self.atoms, xs, ys)])

    def _table(self, name: str):
        cache = getattr(self, "_" + name)
        if cache is None and self.size <= TABLE_LIMIT:
            cache = [[self._binary(name, x, y) for y in range(self.size)] for x in range(self.size)]
            setattr(self, "_" + name, cache)
        return cache

    def mul_table(self):
        """Materialised multiplication (or addition) table, or None if too large."""
        self._require(Kind.FINGRP, Kind.FINVECT, Kind.FINQGRP)
        return self._table("mul")

    def mul(self, x: int, y: int) -> int:
        t = self._mul if self._mul is not None else self._table("mul")
        return t[x][y] if t is not None else self._binary("mul", x, y)

    add = mul

    def inv(self, x: int) -> int:
        self._require(Kind.FINGRP, Kind.FINVECT)
        if self._inv is None:
            if self.size <= TABLE_LIMIT:
                self._inv = [self._inv_slow(v) for v in range(self.size)]
            else:
                return self._inv_slow(x)
        return self._inv[x]

    neg = inv

    def _inv_slow(self, x):
        return self.undigits([a.inv[d] for a, d in zip(self.atoms, self.digits(x))])

    def ldiv(self, x: int, y: int) -> int:
        self._require(Kind.FINQGRP)
        t = self._table("ldiv")
        return t[x][y] if t is not None else self._binary("ldiv", x, y)

    def rdiv(self, x: int, y: int) -> int:
        self._require(Kind.FINQGRP)
        t = self._table("rdiv")
        return t[x][y] if t is not None else self._binary("rdiv", x, y)

    def scale(self, c: int, x: int) -> int:
        self._require(Kind.FINVECT)
        p = self.kind.p
        return self.undigits([(c * d) % p for d in self.digits(x)])

    @property
    def identity(self) -> int:
        self._require(Kind.FINGRP, Kind.FINVECT)
        return 0

    def operations(self) -> list[tuple[int, Callable]]:
        """(arity, function) pairs generating the variety's term operations."""
        tag = self.kind.tag
        if tag is Kind.FINSET:
            return []
        if tag is Kind.FINQGRP:
            return [(2, self.mul), (2, self.ldiv), (2, self.rdiv)]
        ops = [(0, lambda: 0), (2, self.mul), (1, self.inv)]
        if tag is Kind.FINVECT:
            ops += [(1, (lambda c: lambda x: self.scale(c, x))(c)) for c in range(2, self.kind.p)]
        return ops

    def malcev(self, x: int, y: int, z: int) -> int:
        """The ternary Mal'cev term of the variety."""
        tag = self.kind.tag
        if tag is Kind.FINSET:
            raise KindMismatch("FinSet has no Mal'cev term")
        if tag is Kind.FINQGRP:
            return self.mul(self.rdiv(x, self.ldiv(y, y)), self.ldiv(y, z))
        return self.mul(self.mul(x, self.inv(y)), z)

    def flat_table(self):
        """Full multiplication table as a tuple (used for structural equality)."""
        if self._flat is None:
            n = self.size
            self._flat = tuple(tuple(self.mul(x, y) for y in range(n)) for x in range(n))
        return self._flat

    def _require(self, *tags):
        if self.kind.tag not in tags:
            raise KindMismatch(f"operation not available on {self!r}")


class Product(NamedTuple):
    obj: ObjectRef
    pair: Callable[[int, int], int]
    unpair: Callable[[int], tuple[int, int]]


@dataclass(frozen=True)
class MalcevWitness:
    term: Callable[[int, int, int], int]


@dataclass(frozen=True)
class Hom:
    dom: ObjectRef
    cod: ObjectRef
    table: tuple[int, ...]

    def __call__(self, x: int) -> int:
        return self.table[x]

    def then(self, other: "Hom") -> "Hom":
        return Hom(self.dom, other.cod, tuple(other.table[y] for y in self.table))


# -- construction --------------------------------------------------------------

def make_object(kind: BackendKind, data=None, *, max_elements: int = DEFAULT_MAX_ELEMENTS) -> ObjectRef:
    """Build and validate an object of ``kind``.

    ``data`` is the carrier size (FinSet), a multiplication table (FinGrp),
    the dimension (FinVect), or a Latin square, optionally with a pair of
    division tables (FinQGrp).
    """
    tag = kind.tag
    if tag is Kind.FINSET:
        n = int(data)
        if n < 0:
            raise MalformedAlgebra("negative carrier size")
        return ObjectRef(kind, n)
    if tag is Kind.FINVECT:
        dim = int(data)
        if dim < 0:
            raise MalformedAlgebra("negative dimension")
        size = kind.p**dim
        if size > max_elements:
            raise EnumerationBudgetExceeded(f"FinVect({kind.p}, dim={dim}) has {size} > {max_elements} elements")
        return ObjectRef(kind, size, (_cyclic_atom(kind.p),) * dim, dim)
    if tag is Kind.FINGRP:
        atom = _validate_group_table(data)
        return ObjectRef(kind, atom.size, (atom,) if atom.size > 1 else ())
    if isinstance(data, dict):
        atom = _validate_quasigroup_table(data["table"], data.get("ldiv"), data.get("rdiv"))
    else:
        atom = _validate_quasigroup_table(data)
    return ObjectRef(kind, atom.size, (atom,) if atom.size != 1 else ())


_PRODUCTS: dict = {}


def _combine(A: ObjectRef, B: ObjectRef) -> ObjectRef:
    if A.kind != B.kind:
        raise KindMismatch(f"cannot form product of {A!r} and {B!r}")
    if B.size == 1 and B.kind.tag is not Kind.FINSET and not B.atoms:
        return A
    if A.size == 1 and A.kind.tag is not Kind.FINSET and not A.atoms:
        return B
    tag = A.kind.tag
    size = A.size * B.size
    key = (A.kind, size, A.atoms + B.atoms)
    # interned so that lazily built operation tables are shared
    out = _PRODUCTS.get(key)
    if out is None:
        if tag is Kind.FINSET:
            out = ObjectRef(A.kind, size)
        elif tag is Kind.FINVECT:
            out = ObjectRef(A.kind, size, A.atoms + B.atoms, A.dim + B.dim)
        else:
            out = ObjectRef(A.kind, size, A.atoms + B.atoms)
        _PRODUCTS[key] = out
    return out


def product(A: ObjectRef, B: ObjectRef) -> Product:
    nb = B.size

    def pair(a, b):
        return a * nb + b

    def unpair(x):
        return divmod(x, nb) if nb else (0, 0)

    return Product(_combine(A, B), pair, unpair)


def prod(*objs: ObjectRef, kind: BackendKind | None = None) -> ObjectRef:
    """Left-folded product of a list of objects (terminal when empty)."""
    if not objs:
        if kind is None:
            raise KindMismatch("empty product needs an explicit kind")
        return terminal(kind)
    out = objs[0]
    for o in objs[1:]:
        out = _combine(out, o)
    return out


def terminal(kind: BackendKind) -> ObjectRef:
    if kind.tag is Kind.FINVECT:
        return ObjectRef(kind, 1, (), 0)
    return ObjectRef(kind, 1)


def power(A: ObjectRef, n: int) -> ObjectRef:
    return prod(*([A] * n), kind=A.kind)


# -- subobjects ----------------------------------------------------------------

def _check_indices(A: ObjectRef, S: Iterable[int]) -> frozenset[int]:
    S = frozenset(S)
    for x in S:
        if not isinstance(x, int) or not 0 <= x < A.size:
            raise IndexOutOfRange(f"{x!r} is not an element of {A!r}")
    return S


def _group_extend(A: ObjectRef, base: set[int], gens: Sequence[int]) -> set[int]:
    """Close ``base`` (already a subgroup, or {0}) under right multiplication by gens."""
    t = A.mul_table()
    mul = (lambda x, y: t[x][y]) if t is not None else A.mul
    out = set(base)
    frontier = list(out)
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = mul(x, g)
                if y not in out:
                    out.add(y)
                    nxt.append(y)
        frontier = nxt
    return out


def _quasigroup_closure(A: ObjectRef, seed: Iterable[int]) -> set[int]:
    out = set(seed)
    frontier = set(out)
    ops = (A.mul, A.ldiv, A.rdiv)
    while frontier:
        new = set()
        old = list(out)
        for x in frontier:
            for y in old:
                for op in ops:
                    for z in (op(x, y), op(y, x)):
                        if z not in out:
                            new.add(z)
        out |= new
        frontier = new
    return out


def is_subobject(A: ObjectRef, S: Iterable[int]) -> bool:
    """True iff ``S`` is closed under every operation of A's variety."""
    S = _check_indices(A, S)
    tag = A.kind.tag
    if tag is Kind.FINSET:
        return True
    if tag is Kind.FINQGRP:
        return _quasigroup_closure(A, S) == S
    if 0 not in S:
        return False
    # grow a subgroup one generator at a time; bail out as soon as it escapes S
    H: set[int] = {0}
    gens: list[int] = []
    for x in sorted(S):
        if x in H:
            continue
        gens.append(x)
        H = _group_extend(A, H, gens)
        if not H <= S:
            return False
    return len(H) == len(S)


def subobject_generated(A: ObjectRef, seed: Iterable[int]) -> frozenset[int]:
    seed = _check_indices(A, seed)
    tag = A.kind.tag
    if tag is Kind.FINSET:
        return seed
    if tag is Kind.FINQGRP:
        return frozenset(_quasigroup_closure(A, seed))
    return frozenset(_group_extend(A, {0}, sorted(seed)))


def _subobject_key(S):
    return (len(S), sorted(S))


_ENUM_CACHE: dict = {}


def _enumerate_group_like(A: ObjectRef, limit: int) -> list[frozenset[int]]:
    trivial = frozenset({0})
    found: dict[frozenset[int], tuple[int, ...]] = {trivial: ()}
    queue = [trivial]
    while queue:
        H = queue.pop()
        gens = found[H]
        covered = set(H)
        for g in range(A.size):
            if g in covered:
                continue
            # <H, g> depends only on the coset gH
            covered.update(A.mul(g, h) for h in H)
            K = frozenset(_group_extend(A, H, gens + (g,)))
            if K not in found:
                if len(found) >= limit:
                    raise EnumerationBudgetExceeded(f"more than {limit} subobjects of {A!r}")
                found[K] = gens + (g,)
                queue.append(K)
    return sorted(found, key=_subobject_key)


def _enumerate_quasigroup(A: ObjectRef, limit: int) -> list[frozenset[int]]:
    empty = frozenset()
    found = {empty}
    queue = [empty]
    while queue:
        H = queue.pop()
        for g in range(A.size):
            if g in H:
                continue
            K = frozenset(_quasigroup_closure(A, H | {g}))
            if K not in found:
                if len(found) >= limit:
                    raise EnumerationBudgetExceeded(f"more than {limit} subobjects of {A!r}")
                found.add(K)
                queue.append(K)
    return sorted(found, key=_subobject_key)


def enumerate_subobjects(A: ObjectRef, limit: int = DEFAULT_ENUM_LIMIT) -> Iterator[frozenset[int]]:
    """All subobjects of ``A``, sorted by size and then lexicographically."""
    if A.kind.tag is Kind.FINSET:
        if 2**A.size > limit:
            raise EnumerationBudgetExceeded(f"{A!r} has 2^{A.size} > {limit} subsets")
        return (frozenset(c) for k in range(A.size + 1)
                for c in itertools.combinations(range(A.size), k))
    key = (A.kind, A.size, A.atoms)
    cached = _ENUM_CACHE.get(key)
    if cached is None:
        if A.kind.tag is Kind.FINQGRP:
            cached = _enumerate_quasigroup(A, limit)
        else:
            cached = _enumerate_group_like(A, limit)
        _ENUM_CACHE[key] = cached
    if len(cached) > limit:
        raise EnumerationBudgetExceeded(f"more than {limit} subobjects of {A!r}")
    return iter(cached)


def is_entirely_inhabited(kind: BackendKind) -> bool:
    """Decided from the subobjects of the terminal object (not from the flag)."""
    one = terminal(kind)
    return all(len(S) == one.size for S in enumerate_subobjects(one))


# -- homomorphisms and witnesses -----------------------------------------------

def is_homomorphism(f: Hom) -> bool:
    A, B = f.dom, f.cod
    if len(f.table) != A.size or any(not 0 <= y < B.size for y in f.table):
        return False
    tag = A.kind.tag
    if tag is Kind.FINSET:
        return True
    t = f.table
    binary = [(A.mul, B.mul)]
    if tag is Kind.FINQGRP:
        binary += [(A.ldiv, B.ldiv), (A.rdiv, B.rdiv)]
    else:
        if A.size and t[0] != 0:
            return False
    for opa, opb in binary:
        for x in range(A.size):
            for y in range(A.size):
                if t[opa(x, y)] != opb(t[x], t[y]):
                    return False
    return True


def make_hom(dom: ObjectRef, cod: ObjectRef, table: Sequence[int]) -> Hom:
    if dom.kind != cod.kind:
        raise KindMismatch(f"{dom!r} and {cod!r} live in different backends")
    f = Hom(dom, cod, tuple(table))
    if not is_homomorphism(f):
        raise MalformedAlgebra(f"table does not define a homomorphism {dom!r} -> {cod!r}")
    return f


def identity_hom(A: ObjectRef) -> Hom:
    return Hom(A, A, tuple(range(A.size)))


def malcev_witness(A: ObjectRef) -> MalcevWitness:
    return MalcevWitness(A.malcev)


def check_malcev_witness(A: ObjectRef, w: MalcevWitness | None = None) -> bool:
    p = (w or malcev_witness(A)).term
    return all(p(x, y, y) == x and p(y, y, x) == x for x in A.elements for y in A.elements)


def check_variety_axioms(A: ObjectRef) -> bool:
    """Exhaustively re-check the algebraic laws on the whole carrier."""
    tag = A.kind.tag
    n = A.size
    if tag is Kind.FINSET:
        return True
    if tag is Kind.FINQGRP:
        return all(A.mul(x, A.ldiv(x, y)) == y and A.mul(A.rdiv(y, x), x) == y
                   for x in range(n) for y in range(n))
    for x in range(n):
        if A.mul(0, x) != x or A.mul(x, 0) != x or A.mul(x, A.inv(x)) != 0:
            return False
        for y in range(n):
            xy = A.mul(x, y)
            if tag is Kind.FINVECT and xy != A.mul(y, x):
                return False
            for z in range(n):
                if A.mul(xy, z) != A.mul(x, A.mul(y, z)):
                    return False
    return True


def _echelon_basis(p: int, vectors: Iterable[Sequence[int]]) -> list[list[int]]:
    """Reduced row echelon basis of the span of ``vectors`` over F_p."""
    rows: list[list[int]] = []
    pivots: list[int] = []
    for v in vectors:
        v = [x % p for x in v]
        for r, c in zip(rows, pivots):
            if v[c]:
                f = v[c]
                v = [(a - f * b) % p for a, b in zip(v, r)]
        lead = next((i for i, x in enumerate(v) if x), None)
        if lead is None:
            continue
        inv = pow(v[lead], p - 2, p)
        v = [(x * inv) % p for x in v]
        for k, r in enumerate(rows):
            if r[lead]:
                f = r[lead]
                rows[k] = [(a - f * b) % p for a, b in zip(r, v)]
        rows.append(v)
        pivots.append(lead)
    order = sorted(range(len(rows)), key=lambda k: pivots[k])
    return [rows[k] for k in order]


def echelon_basis(A: ObjectRef, S: Iterable[int]) -> list[list[int]]:
    A._require(Kind.FINVECT)
    return _echelon_basis(A.kind.p, (A.digits(x) for x in S))


def subobject_as_object(A: ObjectRef, S: Iterable[int]) -> tuple[ObjectRef, Hom]:
    """Present the subobject ``S`` of ``A`` as an object with its inclusion."""
    S = _check_indices(A, S)
    if not is_subobject(A, S):
        raise MalformedAlgebra(f"{sorted(S)} is not a subobject of {A!r}")
    if len(S) == A.size:
        return A, identity_hom(A)
    tag = A.kind.tag
    elems = sorted(S)
    if tag is Kind.FINSET:
        return ObjectRef(A.kind, len(elems)), Hom(ObjectRef(A.kind, len(elems)), A, tuple(elems))
    if tag is Kind.FINVECT:
        basis = echelon_basis(A, elems)
        sub = ObjectRef(A.kind, A.kind.p ** len(basis), A.atoms[:1] * len(basis), len(basis))
        p = A.kind.p
        table = []
        for x in range(sub.size):
            coeffs = sub.digits(x)
            v = [sum(c * b[i] for c, b in zip(coeffs, basis)) % p for i in range(A.dim)]
            table.append(A.undigits(v))
        return sub, Hom(sub, A, tuple(table))
    index = {x: k for k, x in enumerate(elems)}
    table = [[index[A.mul(x, y)] for y in elems] for x in elems]
    if tag is Kind.FINGRP:
        atom = Atom(table, inv=[index[A.inv(x)] for x in elems])
        sub = ObjectRef(A.kind, len(elems), (atom,) if len(elems) > 1 else ())
    else:
        ldiv, rdiv = _division_tables(table)
        atom = Atom(table, ldiv=ldiv, rdiv=rdiv)
        sub = ObjectRef(A.kind, len(elems), (atom,) if len(elems) != 1 else ())
    return sub, Hom(sub, A, tuple(elems))
