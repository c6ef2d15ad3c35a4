import random

import pytest
from hypothesis import given
from hypothesis import strategies as st
from strategies import words

from _independent import bs12_matrix, grigorchuk_moves_level
from hnnkit import (Endomorphism, IllFormedInput, SearchBudget, Verdict, Word, bounded_depth_oracle, bs_oracle,
                    free_oracle, grigorchuk_oracle, parse_expression)
from hnnkit.consequences import Certificate
from hnnkit.oracles import GRIGORCHUK_ROOTS, GRIGORCHUK_SIGMA

BS_PHI = Endomorphism({"a": "aa", "b": "b"})


@pytest.mark.parametrize("w, verdict", [("aA", Verdict.TRIVIAL), ("a", Verdict.NONTRIVIAL),
                                        ("abAB", Verdict.NONTRIVIAL)])
def test_free_oracle(w, verdict):
    assert free_oracle("ab").is_identity(w).value is verdict


def test_oracle_rejects_foreign_letters():
    with pytest.raises(IllFormedInput):
        free_oracle("ab").is_identity("ac")


def test_bs_examples():
    o = bs_oracle(2, 3)
    v = o.is_identity("BaabAAA")
    assert v.trivial and o.check_certificate(v.certificate)
    assert o.is_identity("BabaBAbA").nontrivial
    assert o.is_identity("aA").trivial
    assert o.exact


@given(words("aAbB", 10), words("aAbB", 5), st.booleans())
def test_bs_relator_insertion_preserves_verdicts(w, u, inverse):
    o = bs_oracle(2, 3)
    r = Word("BaabAAA")
    if inverse:
        r = r.inverse()
    assert o.is_identity(w).value is o.is_identity(r.conjugate(u) * w).value


@given(words("aAbB", 12))
def test_bs_certificates_recheck(w):
    o = bs_oracle(2, 3)
    v = o.is_identity(w)
    if v.trivial:
        assert v.certificate.target == Word(w) and o.check_certificate(v.certificate)


def test_bs_small_parameters():
    o = bs_oracle(1, 2)
    assert o.is_identity("BabAA").trivial
    assert o.is_identity("BAbaa").trivial
    assert o.is_identity("BabA").nontrivial


@given(words("aAbB", 14))
def test_bs12_oracle_matches_matrices(w):
    # <a, b | b^-1 a b = a^2> is the matrix group with b in the role of t
    want = bs12_matrix(w.replace("b", "t").replace("B", "T")) == bs12_matrix("")
    assert bs_oracle(1, 2).is_identity(w).trivial == want


def test_grigorchuk_examples():
    o = grigorchuk_oracle()
    assert o.is_identity("aa").trivial
    assert o.is_identity("adad").nontrivial
    assert o.is_identity("adadadad").trivial


def test_grigorchuk_roots_and_images_trivial():
    o = grigorchuk_oracle()
    for r in GRIGORCHUK_ROOTS:
        for n in range(3):
            assert o.is_identity(GRIGORCHUK_SIGMA(parse_expression(r), n)).trivial, (r, n)


def test_grigorchuk_two_letter_words():
    o = grigorchuk_oracle()
    for x in "acd":
        for y in "acd":
            want = Verdict.TRIVIAL if x == y else Verdict.NONTRIVIAL
            assert o.is_identity(x + y).value is want
    # cd is b, a nontrivial element; cd.dc cancels
    assert o.is_identity("cddc").trivial


def test_grigorchuk_orders():
    o = grigorchuk_oracle()
    assert o.is_identity("ac" * 8).trivial and o.is_identity("ac" * 4).nontrivial
    assert o.is_identity("ad" * 4).trivial and o.is_identity("ad" * 2).nontrivial


@given(st.text("acd", min_size=1, max_size=14))
def test_grigorchuk_agrees_with_tree_action(w):
    v = grigorchuk_oracle().is_identity(w)
    moves = grigorchuk_moves_level(w, 9)
    if moves:
        assert v.nontrivial
    if v.trivial:
        assert not moves


def test_bounded_oracle_examples():
    o = bounded_depth_oracle(["aa"], Endomorphism.identity("ab"), 0)
    v = o.is_identity("baaB")
    assert v.trivial
    assert len(v.certificate.factors) == 1 and str(v.certificate.factors[0].conjugator) == "b"
    o = bounded_depth_oracle(["BaabAAA"], BS_PHI, 1)
    v = o.is_identity("BabaBAbA")
    assert v.trivial and o.check_certificate(v.certificate)
    assert v.certificate.target == BS_PHI("BabaBAbA")


def test_bounded_oracle_unknown_beyond_budget():
    o = bounded_depth_oracle(["BaabAAA"], BS_PHI, 0, SearchBudget(max_nodes=50))
    assert o.is_identity("ab").unknown


def test_bounded_oracle_soundness_against_exact():
    rng = random.Random(11)
    o = bounded_depth_oracle(["BaabAAA"], BS_PHI, 0, SearchBudget(max_nodes=300))
    exact = bs_oracle(2, 3)
    trivial_seen = 0
    for i in range(500):
        if i % 2:
            w = Word("".join(rng.choice("aAbB") for _ in range(rng.randint(0, 12))))
        else:
            u = Word("".join(rng.choice("aAbB") for _ in range(rng.randint(0, 4))))
            w = Word("BaabAAA").conjugate(u) * Word("".join(rng.choice("aAbB") for _ in range(rng.randint(0, 4))))
        v = o.is_identity(w)
        assert not v.nontrivial
        if v.trivial:
            trivial_seen += 1
            assert exact.is_identity(w).trivial and o.check_certificate(v.certificate)
    assert trivial_seen > 50


def test_certificate_json_roundtrip_and_tamper():
    o = bs_oracle(2, 3)
    cert = o.is_identity(Word("BaabAAA").conjugate("ab") * Word("BaabAAA")).certificate
    assert Certificate.from_json(cert.to_json()) == cert
    assert o.check_certificate(cert)
    bad = Certificate(cert.target * Word("a"), cert.factors)
    assert not o.check_certificate(bad)
