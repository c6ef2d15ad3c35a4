import json

import pytest

from hnnkit import SearchBudget, Word, fp_complement_trivialize, parse_expression, preset, replay, trivialize_bounded
from hnnkit.diagrams import Diagram, DiagramContractError, Move

BS23 = preset("bs23")
R = str(BS23.relators[0])


def test_relator_needs_one_cell():
    D = trivialize_bounded(R, 0, BS23)
    assert D.cell_counts() == {"relator": 1}
    assert replay(D, BS23).ok


def test_image_of_relator_descends_one_level():
    loop = str(BS23.phi(R))
    D = trivialize_bounded(loop, 0, BS23)
    counts = D.cell_counts()
    assert counts["relator"] == 1 and counts["conj"] > 0
    rep = replay(D, BS23)
    assert rep.ok and rep.max_level == 0 and rep.min_level == -1


def test_depth_one_word_lifts_once():
    w = str(parse_expression("[b^-1 a b, a]"))
    D = trivialize_bounded(w, 1, BS23)
    rep = replay(D, BS23)
    assert rep.ok and rep.max_level == 1
    starved = trivialize_bounded(w, 0, BS23, SearchBudget(max_nodes=500))
    assert not starved and starved.value == "Unknown"


def test_contract_errors():
    with pytest.raises(DiagramContractError):
        trivialize_bounded("t", 0, BS23)
    with pytest.raises(DiagramContractError):
        trivialize_bounded("t" + R + "T", 0, BS23)
    with pytest.raises(DiagramContractError):
        fp_complement_trivialize(R, 0, 1, BS23, start="")


def test_special_component_stays_above():
    D = fp_complement_trivialize(R, 0, 0, BS23, start="t")
    rep = replay(D, BS23)
    assert rep.ok and rep.min_level >= 1 and D.info["branch"] == "SpecialK0"


@pytest.mark.parametrize("start", ["TT", "TTT", "TTa", "TTab"])
def test_other_component_stays_below(start):
    D = fp_complement_trivialize(R, 0, 1, BS23, start=start)
    rep = replay(D, BS23)
    assert rep.ok and rep.max_level <= -2 and D.info["branch"] == "OtherComponent"


def test_replay_catches_tampering():
    D = fp_complement_trivialize(R, 0, 1, BS23, start="TT")
    mv = D.moves[0]
    broken = Diagram(D.start, D.loop, D.level_cap, D.forbidden, [Move(mv.at, mv.tether + "a", mv.cell)] + D.moves[1:])
    assert not replay(broken, BS23).ok
    assert not replay(Diagram(D.start, D.loop, D.level_cap, D.forbidden, D.moves[:-1]), BS23).ok
    moved_plug = Diagram(D.start, D.loop, D.level_cap, (0, 2), D.moves)
    rep = replay(moved_plug, BS23)
    assert not rep.ok and "lies in D" in rep.message


def test_json_roundtrip():
    D = fp_complement_trivialize(R, 0, 1, BS23, start="TTb")
    text = D.dumps(BS23)
    again, P = Diagram.from_json(text)
    assert again.dumps(P) == text
    assert json.loads(text)["kind"] == "diagram"
    assert replay(again, P).ok
    with pytest.raises(DiagramContractError):
        Diagram.from_json(dict(json.loads(text), schema="other"))


def test_conjugated_loop_at_vertex():
    loop = str(Word(R).conjugate("ab"))
    D = trivialize_bounded(loop, 0, BS23, start="b")
    assert replay(D, BS23).ok
