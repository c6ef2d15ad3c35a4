import json

import pytest
from hypothesis import given
from hypothesis import strategies as st
from strategies import words

from _independent import bs12_matrix
from hnnkit import (HnnPresentation, IllFormedInput, Word, canonical_form, envelope, equal_in_G, in_coset_tNA,
                    level, preset)
from hnnkit.hnn import UnknownEnvelope
from hnnkit.presets import PRESETS, preset_json

BS12 = preset("bs12")
T_WORDS = "aAtT"


@pytest.mark.parametrize("w, lv", [("taT", 0), ("tta", 2), ("Tab", -1)])
def test_level_examples(w, lv):
    assert level(w) == lv


@pytest.mark.parametrize("w, form", [("taaT", (0, "a", 0)), ("Tat", (0, "aa", 0)), ("taT", (1, "a", 1)),
                                     ("TTa", (0, "aaaa", 2))])
def test_canonical_form_examples(w, form):
    cf = canonical_form(w, BS12)
    assert (cf.n, str(cf.w), cf.m) == form and cf.exact


def test_canonical_form_text():
    assert str(canonical_form("taaT", BS12)) == '(0, "a", 0) exact level=0'


def test_equal_examples(grig):
    assert equal_in_G("taaT", "a", BS12) is True
    assert equal_in_G("t", "a", BS12) is False
    assert equal_in_G("taT", "a", grig) is None


def test_coset_examples():
    assert in_coset_tNA("T", 0, BS12) is True
    assert in_coset_tNA("taTT", 0, BS12) is False
    assert in_coset_tNA("TTa", 0, BS12) is True


def test_envelope_examples():
    e = envelope([""], BS12)
    assert (e.N, e.M) == (0, 0)
    e = envelope(["taTT", "ttt"], BS12)
    assert (e.N, e.M) == (3, 4)
    assert e.table == {Word("taTT"): 4, Word("ttt"): 0}
    e = envelope(["aT"], BS12)
    assert (e.N, e.M) == (0, 1)


def test_envelope_needs_exact_forms(grig):
    with pytest.raises(UnknownEnvelope):
        envelope(["taT"], grig)


def test_bad_letters():
    with pytest.raises(IllFormedInput):
        canonical_form("tb", BS12)


@given(words(T_WORDS, 10), words(T_WORDS, 10))
def test_level_is_a_homomorphism(u, v):
    assert level(u + v) == level(u) + level(v)


def test_relations_have_level_zero(bs23, grig):
    for P in (BS12, bs23, grig):
        for r in P.relation_words():
            assert level(r, P.stable) == 0


@given(words(T_WORDS, 16))
def test_canonical_idempotent(w):
    cf = canonical_form(w, BS12)
    again = canonical_form(cf.word(), BS12)
    assert (again.n, again.w, again.m) == (cf.n, cf.w, cf.m)


@given(words(T_WORDS, 16))
def test_canonical_form_agrees_with_matrices(w):
    assert bs12_matrix(str(canonical_form(w, BS12).word())) == bs12_matrix(w)


@given(words(T_WORDS, 8), words(T_WORDS, 8))
def test_equality_matches_matrices(u, v):
    assert equal_in_G(u, v, BS12) == (bs12_matrix(u) == bs12_matrix(v))


@given(words(T_WORDS, 6), words(T_WORDS, 6), words(T_WORDS, 6), words(T_WORDS, 6))
def test_equality_congruence(u, x, y, g):
    v = u + g + "atAAT" + str(Word(g).inverse())
    assert equal_in_G(u, v, BS12) is True
    assert equal_in_G(x + u + y, x + v + y, BS12) is True


@given(words(T_WORDS, 8), words(T_WORDS, 8), st.booleans())
def test_relator_insertion_invariance(u, v, inverse):
    c = BS12.conjugation_boundary("a")
    if inverse:
        c = c.inverse()
    w = c.conjugate(u) * Word(v)
    a, b = canonical_form(w, BS12), canonical_form(v, BS12)
    assert (a.n, a.w, a.m) == (b.n, b.w, b.m)


@given(st.lists(words(T_WORDS, 8), min_size=1, max_size=5))
def test_envelope_lands_in_top_coset(C):
    e = envelope(C, BS12)
    for v, Mv in e.table.items():
        assert 0 <= Mv <= e.M
        assert in_coset_tNA(v * Word("t" * Mv), e.N, BS12) is True


def test_bs23_semi_equality(bs23):
    assert equal_in_G("BaabAAA", "", bs23) is True
    # [a^(2^i), b] never dies, but without a depth bound the search only says Unknown
    assert equal_in_G("ab", "ba", bs23) is None
    assert equal_in_G("t", "a", bs23) is False
    # a pinch needing the section: t b T is a base element
    assert equal_in_G("tbT", "b", bs23) is True


def test_presets_roundtrip():
    for name in PRESETS:
        P = HnnPresentation.from_json(preset_json(name))
        again = HnnPresentation.from_json(json.loads(json.dumps(P.to_json())))
        assert again.to_json() == P.to_json()


def test_presentation_validation():
    good = preset_json("bs12")
    with pytest.raises(Exception):
        HnnPresentation.from_json(dict(good, phi={"a": "ab"}))
    with pytest.raises(Exception):
        HnnPresentation.from_json(dict(good, base_oracle="free", relators=["aa"]))
    with pytest.raises(Exception):
        HnnPresentation.from_json({"generators": ["a"]})


def test_collapse_preset_uses_image_depth():
    P = preset("collapse")
    assert P.effective_depth == 1
    # a b^-1 dies under phi, so a = b in the base group
    assert equal_in_G("a", "b", P) is True
    assert equal_in_G("a", "", P) is False
    assert equal_in_G("tAbT", "", P) is True
