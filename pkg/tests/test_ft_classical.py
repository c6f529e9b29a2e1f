import io
import itertools
import math

import numpy as np
import pytest

from qft_mcs.ft_classical import (
    config_from_int,
    config_probability,
    config_to_int,
    enumerate_mcs,
    evaluate,
    is_mcs,
    mcs_table,
    monte_carlo_sample,
    truth_table,
    turn_off,
    write_enumeration_csv,
    write_sample_csv,
)
from qft_mcs.ft_model import AND, BasicEvent, FaultTree, GateEvent
from treegen import random_tree

CHI2_CRIT_DF15_999 = 37.697  # chi-square 0.999 quantile, 15 degrees of freedom


def and_pair_tree(p1=0.5, p2=0.5):
    return FaultTree(
        basic_events=(BasicEvent("B1", p1), BasicEvent("B2", p2)),
        gate_events=(),
        top=GateEvent("TOP", AND, ("B1", "B2")),
    )


def test_evaluate_demo_tree(three_mcs_tree):
    trace = evaluate(three_mcs_tree, (1, 1, 1, 0, 0, 1))
    assert trace.top == 1
    assert trace.ie_bits == (1, 1, 1)


def test_evaluate_all_zeros_never_fails(three_mcs_tree, weighted4_tree, pairs8_tree):
    for tree in (three_mcs_tree, weighted4_tree, pairs8_tree):
        assert evaluate(tree, (0,) * tree.n_be).top == 0


def test_evaluate_length_mismatch(three_mcs_tree):
    with pytest.raises(ValueError, match="length"):
        evaluate(three_mcs_tree, (1, 0))


def test_turn_off():
    assert turn_off((1, 1, 0), 0) == (0, 1, 0)
    assert turn_off((0, 1, 0), 0) == (0, 1, 0)
    assert turn_off((1, 1, 1, 0, 0, 1), 5) == (1, 1, 1, 0, 0, 0)
    with pytest.raises(IndexError):
        turn_off((1, 0), 2)


def test_is_mcs_examples(three_mcs_tree):
    assert is_mcs(three_mcs_tree, (1, 1, 1, 0, 0, 1))
    assert not is_mcs(three_mcs_tree, (1, 1, 1, 1, 0, 1))  # cut set, not minimal
    assert not is_mcs(three_mcs_tree, (0, 0, 0, 0, 0, 0))


def test_enumerate_demo_tree(three_mcs_tree):
    enumeration = enumerate_mcs(three_mcs_tree)
    assert set(enumeration.mcs) == {
        (1, 1, 1, 0, 0, 1),
        (1, 1, 0, 1, 0, 1),
        (1, 1, 0, 0, 1, 1),
    }
    assert enumeration.cut_set_count == 7
    assert enumeration.config_count == 64


def test_enumerate_pairs_tree(pairs8_tree):
    enumeration = enumerate_mcs(pairs8_tree)
    assert enumeration.mcs_count == 16
    assert enumeration.cut_set_count == 81
    assert enumeration.config_count == 256


def test_enumerate_and_pair():
    enumeration = enumerate_mcs(and_pair_tree())
    assert enumeration.mcs == ((1, 1),)


def test_enumerate_cap():
    rng = np.random.default_rng(0)
    tree = random_tree(rng, 5, 2)
    with pytest.raises(ValueError, match="cap"):
        enumerate_mcs(tree, cap=4)


def test_enumeration_consistent_with_predicate():
    rng = np.random.default_rng(3)
    for _ in range(10):
        tree = random_tree(rng, int(rng.integers(2, 6)), int(rng.integers(0, 4)))
        enumeration = enumerate_mcs(tree)
        members = {config_to_int(c) for c in enumeration.mcs}
        table = truth_table(tree)
        for value in range(enumeration.config_count):
            cfg = config_from_int(value, tree.n_be)
            assert is_mcs(tree, cfg) == (value in members)
            assert evaluate(tree, cfg).top == int(table[value])


def test_mcs_pairwise_non_dominated():
    rng = np.random.default_rng(11)
    for _ in range(10):
        tree = random_tree(rng, int(rng.integers(2, 7)), int(rng.integers(0, 4)))
        failed_sets = [frozenset(i for i, b in enumerate(c) if b) for c in enumerate_mcs(tree).mcs]
        for a, b in itertools.permutations(failed_sets, 2):
            assert not a < b


def test_monotone_coherence():
    rng = np.random.default_rng(5)
    for _ in range(8):
        tree = random_tree(rng, int(rng.integers(2, 7)), int(rng.integers(0, 4)))
        for _ in range(40):
            cfg = tuple(int(b) for b in rng.integers(0, 2, size=tree.n_be))
            top = evaluate(tree, cfg).top
            for i in range(tree.n_be):
                assert top >= evaluate(tree, turn_off(cfg, i)).top


def test_config_probability_uniform():
    tree = and_pair_tree()
    for cfg in itertools.product((0, 1), repeat=2):
        assert config_probability(tree, cfg) == 0.25


def test_config_probability_product(weighted4_tree):
    expected = 0.9 * 0.8 * 0.7 * 0.6
    assert math.isclose(config_probability(weighted4_tree, (0, 0, 0, 0)), expected)
    # every failure probability is below one half, so the all-operational
    # configuration is the single most likely outcome
    probs = [
        config_probability(weighted4_tree, config_from_int(v, 4)) for v in range(16)
    ]
    assert int(np.argmax(probs)) == 0


def test_config_probability_single_event():
    tree = FaultTree(
        basic_events=(BasicEvent("B1", 0.3),),
        gate_events=(),
        top=GateEvent("TOP", AND, ("B1", "B1")),
    )
    assert config_probability(tree, (1,)) == 0.3
    assert config_probability(tree, (0,)) == 0.7


def test_config_probabilities_sum_to_one():
    rng = np.random.default_rng(6)
    for _ in range(6):
        tree = random_tree(rng, int(rng.integers(2, 7)), int(rng.integers(0, 3)), random_probs=True)
        total = sum(
            config_probability(tree, config_from_int(v, tree.n_be))
            for v in range(1 << tree.n_be)
        )
        assert abs(total - 1.0) < 1e-12


def test_monte_carlo_deterministic(three_mcs_tree):
    first = list(monte_carlo_sample(three_mcs_tree, 500, seed=42))
    second = list(monte_carlo_sample(three_mcs_tree, 500, seed=42))
    assert first == second
    third = list(monte_carlo_sample(three_mcs_tree, 500, seed=43))
    assert first != third


def test_monte_carlo_zero_probability():
    tree = and_pair_tree(0.0, 0.0)
    for cfg, trace in monte_carlo_sample(tree, 50, seed=1):
        assert cfg == (0, 0)
        assert trace.top == 0


def test_monte_carlo_traces_match_evaluate(weighted4_tree):
    for cfg, trace in monte_carlo_sample(weighted4_tree, 300, seed=9):
        assert trace == evaluate(weighted4_tree, cfg)


def test_monte_carlo_mcs_frequency(pairs8_tree):
    shots = 100_000
    hits = sum(
        1 for cfg, _ in monte_carlo_sample(pairs8_tree, shots, seed=2024) if is_mcs(pairs8_tree, cfg)
    )
    p = 16 / 256
    sigma = math.sqrt(p * (1 - p) / shots)
    assert abs(hits / shots - p) < 3 * sigma


def test_monte_carlo_chi_square(weighted4_tree):
    shots = 100_000
    counts = np.zeros(16)
    for cfg, _ in monte_carlo_sample(weighted4_tree, shots, seed=77):
        counts[config_to_int(cfg)] += 1
    expected = np.array(
        [config_probability(weighted4_tree, config_from_int(v, 4)) for v in range(16)]
    ) * shots
    statistic = float(((counts - expected) ** 2 / expected).sum())
    assert statistic < CHI2_CRIT_DF15_999


def test_enumeration_csv(three_mcs_tree):
    buffer = io.StringIO()
    enumeration = write_enumeration_csv(three_mcs_tree, buffer)
    lines = buffer.getvalue().splitlines()
    assert lines[0] == "config_bits,is_cut_set,is_mcs,probability"
    assert len(lines) == 1 + 64
    assert enumeration.mcs_count == 3
    row = lines[1 + config_to_int((1, 1, 1, 0, 0, 1))].split(",")
    assert row[0] == "111001"
    assert row[1] == "1" and row[2] == "1"


def test_sample_csv(weighted4_tree):
    buffer = io.StringIO()
    n = write_sample_csv(weighted4_tree, monte_carlo_sample(weighted4_tree, 25, seed=3), buffer)
    lines = buffer.getvalue().splitlines()
    assert n == 25
    assert len(lines) == 26
    for line in lines[1:]:
        bits, cut, flag, prob = line.split(",")
        cfg = tuple(int(b) for b in bits)
        assert int(cut) == evaluate(weighted4_tree, cfg).top
        assert int(flag) == int(is_mcs(weighted4_tree, cfg))
        assert float(prob) == config_probability(weighted4_tree, cfg)


def test_mcs_table_matches_enumeration(pairs8_tree):
    table = mcs_table(pairs8_tree)
    assert int(table.sum()) == 16
    members = {config_to_int(c) for c in enumerate_mcs(pairs8_tree).mcs}
    assert set(np.nonzero(table)[0].tolist()) == members
