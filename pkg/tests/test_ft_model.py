import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from qft_mcs.ft_model import (
    AND,
    OR,
    BasicEvent,
    FaultTree,
    FaultTreeError,
    GateEvent,
    parse_fault_tree,
    serialize_fault_tree,
    validate,
)
from treegen import random_tree


def test_parse_demo_tree(three_mcs_tree):
    assert three_mcs_tree.n_be == 6
    assert three_mcs_tree.n_ie == 3
    assert three_mcs_tree.top.id == "TOP"
    assert three_mcs_tree.top.inputs == ("IE3", "BE6")


def test_single_input_gate_rejected():
    text = "basic B1 p=0.5\ngate TOP AND B1\ntop TOP\n"
    with pytest.raises(FaultTreeError, match="at least 2 inputs"):
        parse_fault_tree(text)


def test_not_operator_rejected():
    text = "basic B1 p=0.5\nbasic B2 p=0.5\ngate IE1 NOT B1\ngate TOP AND IE1 B2\ntop TOP\n"
    with pytest.raises(FaultTreeError, match="non-coherent tree unsupported"):
        parse_fault_tree(text)


@pytest.mark.parametrize(
    "text, fragment",
    [
        ("basic B1 q=0.5\n", "p=<float>"),
        ("basic B1 p=abc\n", "bad probability"),
        ("basic B1 p=1.5\n", "outside [0, 1]"),
        ("basic B1 p=-0.1\n", "outside [0, 1]"),
        ("basic 1B p=0.5\n", "invalid identifier"),
        ("widget B1 p=0.5\n", "unknown directive"),
        ("basic B1 p=0.5\nbasic B1 p=0.4\n", "duplicate id"),
        ("basic B1 p=0.5\nbasic B2 p=0.5\ngate G AND B1 B1\n", "duplicate input"),
        ("basic B1 p=0.5\nbasic B2 p=0.5\ngate G AND B1 B9\ntop G\n", "unknown event"),
        ("basic B1 p=0.5\nbasic B2 p=0.5\ngate G AND B1 B2\n", "missing 'top'"),
        ("basic B1 p=0.5\nbasic B2 p=0.5\ngate G AND B1 B2\ntop G\ntop G\n", "duplicate 'top'"),
        ("basic B1 p=0.5\nbasic B2 p=0.5\ngate G AND B1 B2\ntop B1\n", "not basic event"),
        ("basic B1 p=0.5\nbasic B2 p=0.5\ngate G AND B1 B2\ntop Z\n", "unknown gate"),
        ("basic B9 p=0.5\ngate G AND B1 B2\ntop G\n", "unknown event"),
        ("top G\n", "no basic events"),
    ],
)
def test_parse_errors(text, fragment):
    with pytest.raises(FaultTreeError, match=None) as err:
        parse_fault_tree(text)
    assert fragment in str(err.value)


def test_error_reports_line_and_column():
    text = "basic B1 p=0.5\nbasic B2 p=0.5\n  gate G XOR B1 B2\ntop G\n"
    with pytest.raises(FaultTreeError) as err:
        parse_fault_tree(text)
    assert err.value.line == 3
    assert err.value.column == 10
    assert "line 3" in str(err.value)


def test_cycle_detected():
    text = (
        "basic B1 p=0.5\nbasic B2 p=0.5\n"
        "gate G1 AND G2 B1\ngate G2 OR G1 B2\ngate TOP AND G1 G2\ntop TOP\n"
    )
    with pytest.raises(FaultTreeError, match="cycle detected"):
        parse_fault_tree(text)


def test_orphan_rejected():
    text = (
        "basic B1 p=0.5\nbasic B2 p=0.5\nbasic B3 p=0.5\n"
        "gate G1 AND B1 B2\n"
        "gate TOP OR B1 B2\ntop TOP\n"
    )
    with pytest.raises(FaultTreeError, match="orphan") as err:
        parse_fault_tree(text)
    assert "B3" in str(err.value) and "G1" in str(err.value)


def test_out_of_order_gates_are_resorted():
    text = (
        "basic B1 p=0.5\nbasic B2 p=0.5\nbasic B3 p=0.5\n"
        "gate G2 AND G1 B3\n"
        "gate G1 OR B1 B2\n"
        "gate TOP AND G2 B1\ntop TOP\n"
    )
    tree = parse_fault_tree(text)
    assert [g.id for g in tree.gate_events] == ["G1", "G2"]
    # Re-sorting keeps the gate definitions themselves untouched.
    by_id = {g.id: g for g in tree.gate_events}
    assert by_id["G2"].inputs == ("G1", "B3")
    assert by_id["G1"].inputs == ("B1", "B2")
    assert not validate(tree)


def test_comments_and_blank_lines_ignored():
    text = (
        "# header\n\n"
        "basic B1 p=0.5  # trailing\n"
        "basic B2 p=0.5\n\n"
        "gate TOP AND B1 B2\n"
        "top TOP\n"
    )
    tree = parse_fault_tree(text)
    assert tree.n_be == 2 and tree.n_ie == 0


def test_parse_accepts_stream(tmp_path):
    path = tmp_path / "t.ft"
    path.write_text("basic B1 p=0.5\nbasic B2 p=0.5\ngate TOP OR B1 B2\ntop TOP\n")
    with path.open() as fh:
        tree = parse_fault_tree(fh)
    assert tree.top.op == OR


def test_validate_ok_on_golden(three_mcs_tree, weighted4_tree, pairs8_tree):
    for tree in (three_mcs_tree, weighted4_tree, pairs8_tree):
        assert validate(tree) == []


def test_validate_self_loop():
    tree = FaultTree(
        basic_events=(BasicEvent("B1", 0.5), BasicEvent("B2", 0.5)),
        gate_events=(GateEvent("IE3", AND, ("IE3", "B1")),),
        top=GateEvent("TOP", AND, ("IE3", "B2")),
    )
    assert any("cycle" in v and "IE3" in v for v in validate(tree))


def test_validate_probability_range():
    tree = FaultTree(
        basic_events=(BasicEvent("B1", 0.5), BasicEvent("B2", 1.3)),
        gate_events=(),
        top=GateEvent("TOP", AND, ("B1", "B2")),
    )
    assert any("outside [0, 1]" in v and "B2" in v for v in validate(tree))


def test_validate_gate_order():
    tree = FaultTree(
        basic_events=(BasicEvent("B1", 0.5), BasicEvent("B2", 0.5)),
        gate_events=(
            GateEvent("G2", AND, ("G1", "B2")),
            GateEvent("G1", OR, ("B1", "B2")),
        ),
        top=GateEvent("TOP", AND, ("G2", "G1")),
    )
    assert any("order violation" in v for v in validate(tree))


def test_serialize_parse_fixed_point(three_mcs_tree, weighted4_tree, pairs8_tree):
    for tree in (three_mcs_tree, weighted4_tree, pairs8_tree):
        text = serialize_fault_tree(tree)
        reparsed = parse_fault_tree(text)
        assert reparsed == tree
        assert serialize_fault_tree(reparsed) == text


def test_serialize_parse_fixed_point_random():
    rng = np.random.default_rng(7)
    for _ in range(25):
        tree = random_tree(rng, int(rng.integers(2, 8)), int(rng.integers(0, 5)), random_probs=True)
        text = serialize_fault_tree(tree)
        reparsed = parse_fault_tree(text)
        assert reparsed == tree
        assert validate(reparsed) == []


@given(st.floats(min_value=0.0, max_value=1.0, allow_nan=False))
def test_probability_roundtrip_through_text(p):
    text = f"basic B1 p={p!r}\nbasic B2 p=0.5\ngate TOP AND B1 B2\ntop TOP\n"
    tree = parse_fault_tree(text)
    assert tree.basic_events[0].p == p


def test_shared_subtree_fanout_allowed():
    text = (
        "basic B1 p=0.5\nbasic B2 p=0.5\nbasic B3 p=0.5\n"
        "gate G1 OR B1 B2\n"
        "gate G2 AND G1 B3\n"
        "gate G3 AND G1 B1\n"
        "gate TOP OR G2 G3\ntop TOP\n"
    )
    tree = parse_fault_tree(text)
    assert tree.n_ie == 3
    assert validate(tree) == []


def test_ids_are_case_sensitive():
    text = (
        "basic be1 p=0.5\nbasic BE1 p=0.4\n"
        "gate TOP AND be1 BE1\ntop TOP\n"
    )
    tree = parse_fault_tree(text)
    assert tree.n_be == 2
