"""JSON descriptors for objects, relations, structures, groupoids and protocols.

Every top-level document carries ``"format_version": 1``.  Objects may also be
given by name: ``"Z4"``, ``"S3"``, ``"Z2xZ2"``, ``"D4"``, ``"Q8"``,
``"Z2^3"``, ``"Z2xZ4"`` (groups), ``"set3"`` (bare sets) or ``"F2^2"``
(vector spaces).
"""
from __future__ import annotations

import json
import re
from pathlib import Path
from typing import Any

from .backend import (
    FINGRP,
    FINQGRP,
    FINSET,
    BackendKind,
    Kind,
    ObjectRef,
    finvect,
    make_object,
    prod,
)
from .catalog import small_groups
from .crypto import ProtocolSpec
from .errors import DescriptorError
from .frobenius import FrobeniusStructure
from .groupoid import InternalGroupoid, make_groupoid
from .rel import Relation, state, support

FORMAT_VERSION = 1

_KINDS = {"finset": FINSET, "fingrp": FINGRP, "finqgrp": FINQGRP}


def _need(d: dict, key: str, what: str):
    if not isinstance(d, dict) or key not in d:
        raise DescriptorError(f"{what} descriptor needs a {key!r} field")
    return d[key]


# -- objects ---------------------------------------------------------------------

def object_from_name(name: str) -> ObjectRef:
    groups = dict(small_groups(8))
    if name in groups:
        return groups[name]
    if m := re.fullmatch(r"Z(\d+)", name):
        return make_object(FINGRP, [[(x + y) % int(m[1]) for y in range(int(m[1]))]
                                    for x in range(int(m[1]))])
    if m := re.fullmatch(r"set(\d+)", name):
        return make_object(FINSET, int(m[1]))
    if m := re.fullmatch(r"F(\d+)\^(\d+)", name):
        return make_object(finvect(int(m[1])), int(m[2]))
    raise DescriptorError(f"unknown object name {name!r}")


def object_from_json(d) -> ObjectRef:
    if isinstance(d, str):
        return object_from_name(d)
    if isinstance(d, dict) and "name" in d:
        return object_from_name(d["name"])
    tag = _need(d, "kind", "object")
    if tag == "finvect":
        return make_object(finvect(int(_need(d, "p", "finvect object"))), int(_need(d, "dim", "finvect object")))
    if tag not in _KINDS:
        raise DescriptorError(f"unknown backend kind {tag!r}")
    kind = _KINDS[tag]
    if tag == "finset":
        return make_object(kind, int(_need(d, "size", "finset object")))
    if "factors" in d:
        parts = [make_object(kind, t) for t in d["factors"]]
        return prod(*parts, kind=kind)
    return make_object(kind, _need(d, "table", f"{tag} object"))


def object_to_json(A: ObjectRef) -> dict:
    tag = A.kind.tag
    if tag is Kind.FINSET:
        return {"kind": "finset", "size": A.size}
    if tag is Kind.FINVECT:
        return {"kind": "finvect", "p": A.kind.p, "dim": A.dim}
    tables = [[list(row) for row in atom.mul] for atom in A.atoms]
    if len(tables) == 1:
        return {"kind": tag.value, "table": tables[0]}
    if not tables:
        return {"kind": tag.value, "table": [[0]]}
    return {"kind": tag.value, "factors": tables}


def kind_from_json(d) -> BackendKind:
    if isinstance(d, str):
        if d in _KINDS:
            return _KINDS[d]
        if m := re.fullmatch(r"finvect(\d+)", d):
            return finvect(int(m[1]))
    raise DescriptorError(f"unknown backend kind {d!r}")


# -- relations -------------------------------------------------------------------

def relation_from_json(d: dict) -> Relation:
    dom = object_from_json(_need(d, "dom", "relation"))
    cod = object_from_json(_need(d, "cod", "relation"))
    pairs = _need(d, "pairs", "relation")
    try:
        return Relation(dom, cod, (tuple(p) for p in pairs))
    except (TypeError, ValueError) as e:
        raise DescriptorError(f"bad pair list: {e}") from None


def relation_to_json(R: Relation) -> dict:
    return {"dom": object_to_json(R.dom), "cod": object_to_json(R.cod),
            "pairs": [list(p) for p in R.pairs]}


# -- Frobenius structures --------------------------------------------------------

def frobenius_from_json(d: dict) -> FrobeniusStructure:
    A = object_from_json(_need(d, "carrier", "structure"))
    AA = prod(A, A)
    if "triples" in d:
        n = A.size
        mult = Relation(AA, A, ((a * n + b, c) for a, b, c in d["triples"]))
    else:
        mult = relation_from_json(_need(d, "mult", "structure"))
    unit = state(A, _need(d, "unit", "structure"))
    return FrobeniusStructure(A, mult, unit)


def frobenius_to_json(F: FrobeniusStructure) -> dict:
    return {"carrier": object_to_json(F.carrier), "mult": relation_to_json(F.mult),
            "triples": [list(t) for t in F.triples()], "unit": sorted(support(F.unit))}


# -- groupoids ---------------------------------------------------------------------

def groupoid_from_json(d: dict) -> InternalGroupoid:
    C0 = object_from_json(_need(d, "objects", "groupoid"))
    C1 = object_from_json(_need(d, "arrows", "groupoid"))
    s, t, u, i = (list(_need(d, k, "groupoid")) for k in "stui")
    m = {(f, g): h for f, g, h in _need(d, "m", "groupoid")}
    return make_groupoid(C0, C1, s, t, u, i, m)


def groupoid_to_json(G: InternalGroupoid) -> dict:
    return {"objects": object_to_json(G.C0), "arrows": object_to_json(G.C1),
            "s": list(G.s.table), "t": list(G.t.table), "u": list(G.u.table),
            "i": list(G.i.table), "m": [[f, g, h] for (f, g), h in sorted(G.m.items())]}


# -- protocols ---------------------------------------------------------------------

def protocol_from_json(d: dict) -> ProtocolSpec:
    P, K, C = (object_from_json(_need(d, k, "protocol")) for k in ("P", "K", "C"))
    if "triples" in d:
        nk = K.size
        E = Relation(prod(P, K), C, ((p * nk + k, c) for p, k, c in d["triples"]))
    else:
        E = relation_from_json(_need(d, "E", "protocol"))
    return ProtocolSpec(P, K, C, E)


def protocol_to_json(spec: ProtocolSpec) -> dict:
    return {"P": object_to_json(spec.P), "K": object_to_json(spec.K), "C": object_to_json(spec.C),
            "E": relation_to_json(spec.E), "triples": [list(t) for t in spec.triples()]}


# -- generic values ------------------------------------------------------------------

def to_jsonable(x: Any) -> Any:
    """Render verdict payloads: relations and structures become descriptors."""
    if isinstance(x, Relation):
        return relation_to_json(x)
    if isinstance(x, FrobeniusStructure):
        return frobenius_to_json(x)
    if isinstance(x, InternalGroupoid):
        return groupoid_to_json(x)
    if isinstance(x, ProtocolSpec):
        return protocol_to_json(x)
    if isinstance(x, ObjectRef):
        return object_to_json(x)
    if isinstance(x, dict):
        return {str(k): to_jsonable(v) for k, v in x.items()}
    if isinstance(x, (frozenset, set)):
        return [to_jsonable(v) for v in sorted(x)]
    if isinstance(x, (list, tuple)):
        return [to_jsonable(v) for v in x]
    if hasattr(x, "to_dict"):
        return to_jsonable(x.to_dict())
    return x


def document(payload: dict) -> dict:
    return {"format_version": FORMAT_VERSION, **to_jsonable(payload)}


def dumps(doc: dict, human: bool = False) -> str:
    if human:
        return json.dumps(doc, indent=2, sort_keys=True)
    return json.dumps(doc, sort_keys=True, separators=(",", ":"))


def load(path: str | Path) -> dict:
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise DescriptorError(f"cannot read {path}: {e.strerror}") from None
    try:
        d = json.loads(text)
    except json.JSONDecodeError as e:
        raise DescriptorError(f"{path}: invalid JSON ({e.msg} at line {e.lineno})") from None
    if isinstance(d, dict):
        v = d.get("format_version", FORMAT_VERSION)
        if v != FORMAT_VERSION:
            raise DescriptorError(f"{path}: unsupported format_version {v!r}")
    return d


def save(path: str | Path, payload: dict, human: bool = True) -> None:
    Path(path).write_text(dumps(document(payload), human) + "\n")

