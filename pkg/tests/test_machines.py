import copy
import random

import pytest
from hypothesis import given, settings, strategies as st

from tapecheck.errors import ValidationError
from tapecheck.machines import (
    enumerate_inputs,
    run,
    run_multi,
    validate,
    word_from_string,
    word_to_string,
)

from fixtures import (
    m_right_doc,
    mt_const3_doc,
    m_right,
    m_loop,
    mt_const3,
)
from oracles import random_total_machine


def test_validate_minimal_machine():
    machine = m_right()
    assert machine.state_count == 3
    assert machine.blank == "_"


def test_validate_missing_transition():
    doc = m_right_doc()
    doc["delta"] = doc["delta"][1:]
    with pytest.raises(ValidationError, match="missing transition"):
        validate(doc)


def test_validate_stay_move():
    doc = m_right_doc()
    doc["delta"][0]["move"] = "S"
    with pytest.raises(ValidationError, match="stay move"):
        validate(doc)


def test_validate_blank_in_input_alphabet():
    doc = m_right_doc()
    doc["input_alphabet"].append("_")
    with pytest.raises(ValidationError, match="blank"):
        validate(doc)


def test_validate_duplicate_states():
    doc = m_right_doc()
    doc["states"].append("q0")
    with pytest.raises(ValidationError, match="duplicate states"):
        validate(doc)


def test_validate_halting_state_with_outgoing():
    doc = m_right_doc()
    doc["delta"].append(
        {"state": "qa", "read": "a", "write": "a", "move": "R", "next": "qa"}
    )
    with pytest.raises(ValidationError, match="halting"):
        validate(doc)


def test_validate_multitape_readonly_input():
    doc = mt_const3_doc()
    bad = copy.deepcopy(doc)
    bad["delta"][0]["write"] = ["_", bad["delta"][0]["write"][1]]
    bad["delta"][0]["read"] = ["a", bad["delta"][0]["read"][1]]
    with pytest.raises(ValidationError, match="read-only input tape"):
        validate(bad)


def test_run_right_machine():
    machine = m_right()
    out = run(machine, ("a", "a", "a"), 100)
    assert out.status == "accepted" and out.steps == 4
    out = run(machine, (), 100)
    assert out.status == "accepted" and out.steps == 1


def test_run_loop_budget():
    out = run(m_loop(), ("a",), 50)
    assert out.status == "budget-exceeded" and out.steps == 50


def test_halting_exactly_at_budget_reports_status():
    out = run(m_right(), ("a", "a"), 3)
    assert out.status == "accepted" and out.steps == 3


def test_run_multi_const3():
    out = run_multi(mt_const3(), ("a", "a"), 100)
    assert out.status == "accepted" and out.steps == 3


def test_enumerate_inputs_shortlex():
    assert list(enumerate_inputs(("a",), 2)) == [(), ("a",), ("a", "a")]
    assert list(enumerate_inputs(("a", "b"), 1)) == [(), ("a",), ("b",)]
    assert list(enumerate_inputs(("a", "b"), 0)) == [()]


def test_word_string_round_trip():
    assert word_from_string("aab", ("a", "b")) == ("a", "a", "b")
    assert word_from_string("", ("a",)) == ()
    assert word_to_string(("a", "b")) == "ab"
    with pytest.raises(ValidationError):
        word_from_string("xz", ("a", "b"))


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**9), st.integers(0, 4), st.integers(10, 60))
def test_run_invariants_on_random_machines(machine_seed, word_len, budget):
    """Determinism, budget monotonicity, and the head-extent bound."""
    rng = random.Random(machine_seed)
    machine = validate(random_total_machine(rng))
    word = tuple(rng.choice(machine.input_alphabet) for _ in range(word_len))

    first = run(machine, word, budget)
    again = run(machine, word, budget)
    assert first == again

    assert first.rightmost - first.leftmost + 1 <= first.steps + 1

    if first.halted:
        extended = run(machine, word, budget + 37)
        assert extended == first
    else:
        assert first.steps == budget
