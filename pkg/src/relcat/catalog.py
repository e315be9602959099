"""Small named algebras used by the test batteries and the CLI."""
from __future__ import annotations

import itertools

from .backend import FINGRP, FINQGRP, FINSET, ObjectRef, finvect, make_object, power


def cyclic_table(n: int) -> list[list[int]]:
    return [[(x + y) % n for y in range(n)] for x in range(n)]


def _perm_group_table(perms: list[tuple[int, ...]]) -> list[list[int]]:
    index = {p: k for k, p in enumerate(perms)}
    # (p * q)(i) = p(q(i)): apply q first
    return [[index[tuple(p[q[i]] for i in range(len(p)))] for q in perms] for p in perms]


def symmetric_table(n: int) -> list[list[int]]:
    perms = sorted(itertools.permutations(range(n)))
    return _perm_group_table(perms)


def dihedral_table(n: int) -> list[list[int]]:
    """Symmetries of the n-gon: rotations r^k are 0..n-1, reflections s r^k are n..2n-1."""
    def mul(x, y):
        a, i = divmod(x, n)
        b, j = divmod(y, n)
        if a == 0:
            return (b * n) + ((i + j) % n if b == 0 else (j - i) % n)
        return ((1 - b) * n) + ((i + j) % n if b == 0 else (j - i) % n)
    return [[mul(x, y) for y in range(2 * n)] for x in range(2 * n)]


def quaternion_table() -> list[list[int]]:
    # elements: 1, -1, i, -i, j, -j, k, -k
    names = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
    base = {("1", u): u for u in "1ijk"} | {(u, "1"): u for u in "1ijk"}
    base |= {("i", "i"): "-1", ("j", "j"): "-1", ("k", "k"): "-1",
             ("i", "j"): "k", ("j", "k"): "i", ("k", "i"): "j",
             ("j", "i"): "-k", ("k", "j"): "-i", ("i", "k"): "-j"}

    def mul(x, y):
        sx, ux = (x[0] == "-"), x.lstrip("-")
        sy, uy = (y[0] == "-"), y.lstrip("-")
        r = base[(ux, uy)]
        neg = sx ^ sy ^ (r[0] == "-")
        r = r.lstrip("-")
        return ("-" + r) if neg else r

    return [[names.index(mul(x, y)) for y in names] for x in names]


def group(table) -> ObjectRef:
    return make_object(FINGRP, table)


def cyclic(n: int) -> ObjectRef:
    return group(cyclic_table(n))


def klein() -> ObjectRef:
    return power(cyclic(2), 2)


def s3() -> ObjectRef:
    return group(symmetric_table(3))


def finset(n: int) -> ObjectRef:
    return make_object(FINSET, n)


def vect(p: int, dim: int) -> ObjectRef:
    return make_object(finvect(p), dim)


def small_groups(max_order: int = 8) -> list[tuple[str, ObjectRef]]:
    """One representative of every group of order <= max_order (max 8)."""
    out = [(f"Z{n}", cyclic(n)) for n in range(1, max_order + 1)]
    extra = [
        ("Z2xZ2", 4, lambda: klein()),
        ("S3", 6, s3),
        ("Z2xZ4", 8, lambda: make_product(cyclic(2), cyclic(4))),
        ("Z2^3", 8, lambda: power(cyclic(2), 3)),
        ("D4", 8, lambda: group(dihedral_table(4))),
        ("Q8", 8, lambda: group(quaternion_table())),
    ]
    out += [(name, f()) for name, order, f in extra if order <= max_order]
    return sorted(out, key=lambda nf: (nf[1].size, nf[0]))


def make_product(A: ObjectRef, B: ObjectRef) -> ObjectRef:
    from .backend import prod
    return prod(A, B)


def is_abelian(G: ObjectRef) -> bool:
    return all(G.mul(x, y) == G.mul(y, x) for x in G.elements for y in G.elements)


def idempotent_quasigroup_table(n: int) -> list[list[int]]:
    """x * y = (x + y) / 2 mod n for odd n: an idempotent, commutative quasigroup."""
    half = pow(2, -1, n)
    return [[((x + y) * half) % n for y in range(n)] for x in range(n)]


def subtraction_quasigroup_table(n: int) -> list[list[int]]:
    """x * y = x - y mod n: a quasigroup without identity for n > 2."""
    return [[(x - y) % n for y in range(n)] for x in range(n)]


def quasigroup(table) -> ObjectRef:
    return make_object(FINQGRP, table)
