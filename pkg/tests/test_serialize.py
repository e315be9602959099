import json

import pytest
from hypothesis import given

from relcat import serialize as S
from relcat.backend import FINGRP, FINSET, prod
from relcat.catalog import cyclic, finset, klein, s3, small_groups, vect
from relcat.crypto import make_otp
from relcat.errors import DescriptorError, MalformedAlgebra, NotASubobject
from relcat.frobenius import group_structure, indiscrete
from relcat.groupoid import indiscrete_groupoid, one_object_groupoid
from relcat.rel import Relation

from strategies import algebra_relations, set_relations


def roundtrip(to, frm, x):
    return frm(json.loads(json.dumps(to(x))))


def test_named_objects():
    assert S.object_from_name("Z4") == cyclic(4)
    assert S.object_from_name("set3") == finset(3)
    assert S.object_from_name("F2^2") == vect(2, 2)
    assert S.object_from_name("Z5").size == 5
    for name, G in small_groups(8):
        assert S.object_from_name(name) == G
    with pytest.raises(DescriptorError):
        S.object_from_name("nope")


def test_object_roundtrips():
    for A in [finset(0), finset(3), cyclic(3), klein(), s3(), vect(3, 2), prod(cyclic(2), cyclic(3)),
              prod(finset(2), finset(2))]:
        assert roundtrip(S.object_to_json, S.object_from_json, A) == A


def test_bad_object_descriptors():
    for d in [{"kind": "monoid"}, {"size": 3}, {"kind": "fingrp"}]:
        with pytest.raises(DescriptorError):
            S.object_from_json(d)
    with pytest.raises(MalformedAlgebra):
        S.object_from_json({"kind": "fingrp", "table": [[0, 0], [0, 0]]})
    with pytest.raises(DescriptorError):
        S.kind_from_json("rings")
    assert S.kind_from_json("finvect5").p == 5


@given(set_relations())
def test_set_relation_roundtrip(R):
    assert roundtrip(S.relation_to_json, S.relation_from_json, R) == R


@given(algebra_relations())
def test_algebra_relation_roundtrip(R):
    assert roundtrip(S.relation_to_json, S.relation_from_json, R) == R


def test_relation_descriptor_is_validated():
    d = {"dom": "Z2", "cod": "Z2", "pairs": [[0, 1]]}
    with pytest.raises(NotASubobject):
        S.relation_from_json(d)
    with pytest.raises(DescriptorError):
        S.relation_from_json({"dom": "Z2", "cod": "Z2"})


def test_structure_groupoid_protocol_roundtrips():
    for F in [group_structure(cyclic(3)), indiscrete(finset(2)), group_structure(s3(), kind=FINSET)]:
        assert roundtrip(S.frobenius_to_json, S.frobenius_from_json, F) == F
    for G in [one_object_groupoid(klein()), indiscrete_groupoid(finset(3))]:
        H = roundtrip(S.groupoid_to_json, S.groupoid_from_json, G)
        assert S.groupoid_to_json(H) == S.groupoid_to_json(G)
    for spec in [make_otp(cyclic(2), 2), make_otp(cyclic(3), kind=FINGRP)]:
        assert roundtrip(S.protocol_to_json, S.protocol_from_json, spec) == spec


def test_structure_from_triples_only():
    d = {"carrier": "set2", "triples": [[0, 0, 0], [1, 1, 1]], "unit": [0, 1]}
    F = S.frobenius_from_json(d)
    assert F.triples() == [(0, 0, 0), (1, 1, 1)]


def test_documents(tmp_path):
    R = Relation(finset(2), finset(2), [(0, 1)])
    path = tmp_path / "r.json"
    S.save(path, {"relation": R})
    d = S.load(path)
    assert d["format_version"] == S.FORMAT_VERSION
    assert S.relation_from_json(d["relation"]) == R
    assert S.dumps(S.document({"b": 1, "a": frozenset({2, 1})})) == '{"a":[1,2],"b":1,"format_version":1}'


def test_load_errors(tmp_path):
    with pytest.raises(DescriptorError):
        S.load(tmp_path / "missing.json")
    bad = tmp_path / "bad.json"
    bad.write_text("{nope")
    with pytest.raises(DescriptorError):
        S.load(bad)
    future = tmp_path / "future.json"
    future.write_text('{"format_version": 99}')
    with pytest.raises(DescriptorError, match="format_version"):
        S.load(future)
