import pytest
from hypothesis import given
from hypothesis import strategies as st

from hnnkit import (HnnPresentation, build_ball, build_corner, build_push, build_string, preset, verify_levels)
from hnnkit.homotopy import CellularHomotopy, ContractViolation, HCell, LevelViolation, _cell_levels

BS12 = preset("bs12")
BS23 = preset("bs23")
KILL_B = HnnPresentation.from_json({"generators": ["a", "b"], "phi": {"a": "a", "b": ""}, "relators": [],
                                    "base_oracle": "free", "depth_bound": None})


def test_push_counts():
    H = build_push("", "a", 4, BS12)
    assert H.cell_counts() == [1, 2, 4, 8]
    cert = verify_levels(H, BS12)
    assert cert.intervals == [(0, 1), (1, 2), (2, 3), (3, 4)]


def test_push_grigorchuk_counts(grig):
    H = build_push("", "a", 3, grig)
    assert H.cell_counts() == [1, 3, 8]
    verify_levels(H, grig)


def test_degenerate_image():
    H = build_push("", "b", 1, KILL_B)
    assert H.labels == ["b", ""]
    assert [c.boundary(KILL_B) for c in H.cells[0]] == ["btT"]
    verify_levels(H, KILL_B)


def test_misplaced_cell_fails():
    H = build_push("", "a", 3, BS12)
    H.cells[2][0] = HCell(str(H.row_base(1, BS12)), "a")
    with pytest.raises(LevelViolation) as exc:
        verify_levels(H, BS12)
    assert "row 2" in str(exc.value)


def test_bad_recurrence_fails():
    H = build_push("", "a", 3, BS12)
    H.labels[2] = "aaa"
    with pytest.raises(LevelViolation):
        verify_levels(H, BS12)


def test_string_examples():
    H = build_string("aba", 3, BS23)
    verify_levels(H, BS23)
    assert H.labels[:2] == ["aba", "aabaa"]
    single = build_string("a", 4, BS12, "tA")
    push = build_push("tA", "a", 4, BS12)
    assert (single.labels, single.cells) == (push.labels, push.cells)
    H = build_string("aa", 2, BS12)
    assert H.labels[1] == "aaaa" and H.cell_counts() == [2, 4]
    with pytest.raises(ContractViolation):
        build_string("", 2, BS12)
    with pytest.raises(ContractViolation):
        build_string("at", 2, BS12)


def test_corner_examples():
    top = build_corner("ab", 3, BS23)
    assert top.stage1 == [] and top.labels == build_string("ab", 3, BS23).labels
    # the a-edge of t a t^-1 already sits on the top level of the path
    H = build_corner("taT", 3, BS12)
    assert H.stage1 == [] and H.labels[:3] == ["a", "aa", "aaaa"]
    verify_levels(H, BS12)
    # one slide lifts the a-edge of t^-1 a t
    H = build_corner("Tat", 3, BS12)
    assert len(H.stage1) == 1 and H.labels[:2] == ["aa", "aaaa"]
    assert verify_levels(H, BS12).stage1_interval == (-1, 0)
    with pytest.raises(ContractViolation):
        build_corner("taT", 2, BS12, interval=(-1, 0))


def test_stage1_cell_outside_interval_fails():
    H = build_corner("Tat", 2, BS12)
    H.stage1[0] = HCell("", "a")  # spans levels 0..1
    with pytest.raises(LevelViolation):
        verify_levels(H, BS12)


def test_json_roundtrip():
    H = build_corner("Tat", 3, BS12, v="a")
    again = CellularHomotopy.from_json(H.to_json(BS12))
    assert again == H


@given(st.text("ab", min_size=1, max_size=5), st.integers(1, 4), st.text("aAbBtT", max_size=4))
def test_string_recurrence_and_properness(s, K, v):
    H = build_string(s, K, BS23, v)
    cert = verify_levels(H, BS23)
    for k in range(K):
        assert H.labels[k + 1] == str(BS23.phi(H.labels[k]))
    assert all(last <= j for j, last in enumerate(cert.properness))


def test_straightness_on_ball():
    """Edges whose push meets a level window within K rows are exactly those K levels below it."""
    ball = build_ball(BS12, 4)
    W, K = 1, 3
    meets = 0
    predicted = 0
    for s, g, _ in ball.edges:
        if g != "a":
            continue
        H = build_push(ball.vertices[s].word, "a", K, BS12)
        if any(-W <= x <= W for row in H.cells for c in row for x in _cell_levels(c, BS12)):
            meets += 1
        if -W - K <= ball.level(s) <= W:
            predicted += 1
    assert meets == predicted
    assert meets < len(ball.edges)
