import itertools

import pytest
from hypothesis import given, strategies as st

from relcat.backend import FINGRP, prod
from relcat.catalog import cyclic, finset, klein, s3
from relcat.crypto import ProtocolSpec, check_correctness, check_security, copy, identity_cipher, make_otp
from relcat.errors import EnumerationBudgetExceeded, KindMismatch, ObjectMismatch
from relcat.rel import Relation


def words(G, n):
    return list(itertools.product(G.elements, repeat=n))


def encode(word, base):
    x = 0
    for d in word:
        x = x * base + d
    return x


def otp_oracle(G, n):
    """(p, k, c) with c the letterwise product, first letter most significant."""
    q = G.size
    return sorted((encode(p, q), encode(k, q), encode(tuple(G.mul(a, b) for a, b in zip(p, k)), q))
                  for p in words(G, n) for k in words(G, n))


def test_otp_z2_has_four_triples():
    spec = make_otp(cyclic(2))
    assert spec.triples() == [(0, 0, 0), (0, 1, 1), (1, 0, 1), (1, 1, 0)]
    assert check_correctness(spec).holds
    assert check_security(spec).holds


@pytest.mark.parametrize("G,n", [(cyclic(2), 1), (cyclic(2), 3), (cyclic(3), 2), (s3(), 1), (klein(), 1)])
def test_otp_matches_oracle_and_is_perfect(G, n):
    spec = make_otp(G, n)
    assert spec.triples() == otp_oracle(G, n)
    corr = check_correctness(spec)
    sec = check_security(spec)
    assert corr.holds and corr.payload["diagram"]
    assert sec.holds and sec.payload["diagram"]


def test_otp_over_groups():
    spec = make_otp(cyclic(3), 2, kind=FINGRP)
    assert spec.P.kind == FINGRP
    assert check_correctness(spec).holds and check_security(spec).holds
    with pytest.raises(KindMismatch):
        make_otp(s3(), kind=FINGRP)


def test_otp_limits():
    with pytest.raises(ValueError):
        make_otp(cyclic(2), 0)
    with pytest.raises(EnumerationBudgetExceeded):
        make_otp(cyclic(2), 10, max_elements=100)


def test_identity_cipher_is_correct_but_insecure():
    spec = identity_cipher(finset(3), finset(2))
    assert check_correctness(spec).holds
    rep = check_security(spec)
    assert not rep.holds
    assert rep.payload["unreachable"] == (0, 1)


def test_empty_cipher_is_not_total():
    A = finset(2)
    spec = ProtocolSpec(A, A, A, Relation(prod(A, A), A, []))
    rep = check_correctness(spec)
    assert not rep.holds
    assert rep.payload["untotal_at"] == (0, 0)
    assert not check_security(spec).holds


def test_colliding_cipher_is_not_injective():
    # E(p, k) = k forgets the plaintext.
    A = finset(2)
    spec = ProtocolSpec(A, A, A, Relation(prod(A, A), A, [(p * 2 + k, k) for p in range(2) for k in range(2)]))
    rep = check_correctness(spec)
    assert not rep.holds
    assert rep.payload["total"] and not rep.payload["injective"]
    assert rep.payload["clash"] == (0, 1, 0, 0)


def test_spec_validation():
    with pytest.raises(ObjectMismatch):
        ProtocolSpec(finset(2), finset(2), finset(2), Relation(finset(2), finset(2), []))
    with pytest.raises(KindMismatch):
        ProtocolSpec(finset(2), cyclic(2), finset(2), Relation(finset(4), finset(2), []))


def test_copy_is_diagonal():
    assert copy(finset(3)).pairs == ((0, 0), (1, 4), (2, 8))


@given(st.sampled_from([cyclic(2), cyclic(3), klein(), s3(), cyclic(4)]), st.integers(1, 2), st.data())
def test_otp_properties(G, n, data):
    spec = make_otp(G, n)
    assert check_correctness(spec).holds
    assert check_security(spec).holds
    # Dropping any single triple breaks totality.
    T = spec.triples()
    drop = data.draw(st.sampled_from(T))
    nk = spec.K.size
    cut = ProtocolSpec(spec.P, spec.K, spec.C,
                       Relation(spec.E.dom, spec.C, [(p * nk + k, c) for p, k, c in T if (p, k, c) != drop]))
    assert not check_correctness(cut).holds
