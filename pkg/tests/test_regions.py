import pytest
from hypothesis import given
from hypothesis import strategies as st
from strategies import words

from hnnkit import RegionLabel, build_ball, check_up_lemma, classify, components_minus, coset_geometry, in_D
from hnnkit.regions import ContractError, ancestor, same_coset


def test_in_D_examples(bs12):
    assert in_D("T", 0, 1, bs12) is True
    assert in_D("t", 0, 0, bs12) is False
    assert in_D("aT", 0, 1, bs12) is True


def test_classify_examples(bs12):
    assert classify("t", 0, 0, bs12).label is RegionLabel.SpecialK0
    assert classify("aT", 0, 0, bs12).label is RegionLabel.OtherComponent
    assert classify("taTT", 0, 0, bs12).label is RegionLabel.SpecialK0
    assert classify("", 0, 0, bs12).label is RegionLabel.InD
    assert str(classify("t", 0, 0, bs12)) == "SpecialK0 (level=1, window=[0,0], coset=n/a)"


def test_classify_unknown_on_semi_base(grig):
    assert classify("taTT", 0, 0, grig).label is RegionLabel.Unknown


def test_classify_examples_against_ball(bs12):
    ball = build_ball(bs12, 6)
    comps = components_minus(ball, lambda v: in_D(v.word, 0, 0, bs12) is True)
    where = {x: i for i, c in enumerate(comps) for x in c}
    ids = {str(v.word): v.id for v in ball.vertices}
    assert where[ids["taTT"]] == where[ids["t"]]
    assert where[ids["aT"]] != where[ids["t"]]


def test_up_lemma_examples(bs12):
    assert check_up_lemma("t", 0, 0, 4, bs12)
    assert check_up_lemma("taTT", 0, 0, 3, bs12)
    with pytest.raises(ContractError):
        check_up_lemma("aT", 0, 0, 3, bs12)


def test_coset_geometry_examples(bs12):
    assert coset_geometry("", "T", bs12) == 1
    assert coset_geometry("", "taTT", bs12) is None
    assert coset_geometry("taT", "taT", bs12) == 0
    assert coset_geometry("T", "", bs12) is None


def test_ancestor_and_fingerprint(bs12):
    assert str(ancestor("aTT", 0, 0, bs12)) == "aT"
    assert same_coset("aT", "aTa", bs12) is True
    assert same_coset("aT", "T", bs12) is False
    with pytest.raises(ContractError):
        ancestor("t", 0, 0, bs12)


@given(words("aAtT", 10), words("aA", 4), st.integers(0, 2), st.integers(0, 2))
def test_coset_saturation(v, u, N, M):
    from hnnkit import preset
    P = preset("bs12")
    assert classify(v, N, M, P).label is classify(v + u, N, M, P).label


@given(words("aAtT", 8), st.integers(0, 3), st.integers(0, 2))
def test_translation_equivariance(x, N, M):
    from hnnkit import preset
    P = preset("bs12")
    assert classify("t" * N + x, N, M, P).label is classify(x, 0, M, P).label


@given(words("aAtT", 8), st.integers(0, 2), st.integers(0, 2))
def test_labels_are_consistent(v, N, M):
    from hnnkit import level, preset
    P = preset("bs12")
    c = classify(v, N, M, P)
    assert (c.label is RegionLabel.InD) == (in_D(v, N, M, P) is True)
    if c.label is RegionLabel.OtherComponent:
        assert level(v) < N - M
    assert c.level == level(v)
