import math

import pytest

from tapecheck.bounds import LinearBound, PolyBound
from tapecheck.errors import UnsupportedBound
from tapecheck.gadgets import (
    GadgetParams,
    build_counting_gadget,
    build_pass_gadget,
    gadget_params,
)
from tapecheck.machines import Tape, run, run_multi, run_on_tape

from fixtures import h_immediate, h_loop, h_two_step


def n_squared():
    return PolyBound([0, 0, 1])


def test_gadget_params_n_squared():
    params = gadget_params(n_squared())
    assert params.base == 6
    assert params.n0 == 10


def test_gadget_params_scan_oracle():
    """Float scan: n^2 >= 3n*log6(n) + 6n + 1 fails at 9, holds on [10, 10^6]."""
    def ok(n):
        return n * n >= 3 * n * math.log(n, 6) + 6 * n + 1

    assert not ok(9)
    assert all(ok(n) for n in range(10, 10**6, 997))
    assert all(ok(n) for n in range(10, 3000))


def test_gadget_params_rejects_linear():
    with pytest.raises(UnsupportedBound):
        gadget_params(LinearBound(1, 1))


def test_gadget_params_base_always_six():
    cubic = gadget_params(PolyBound([0, 0, 0, 1]))
    assert cubic.base == 6
    assert cubic.n0 == 6  # the threshold never drops below the erasure base


def test_counting_gadget_immediate():
    gadget = build_counting_gadget(h_immediate())
    out = run_multi(gadget, (), 100)
    assert out.accepted and out.steps == 1
    for n in range(1, 5):
        out = run_multi(gadget, ("a",) * n, 10_000)
        assert out.status == "budget-exceeded"


def test_counting_gadget_loop_exact():
    gadget = build_counting_gadget(h_loop())
    for n in range(0, 7):
        out = run_multi(gadget, ("a",) * n, 100)
        assert out.accepted and out.steps == n + 1


def test_counting_gadget_halting_time_threshold():
    """The gadget halts on w iff the source survives |w| steps on empty input."""
    for source, t_halt in ((h_immediate(), 1), (h_two_step(), 2)):
        gadget = build_counting_gadget(source)
        for n in range(0, 4):
            out = run_multi(gadget, ("a",) * n, 500)
            if n + 1 <= t_halt:
                assert out.accepted and out.steps == n + 1
            else:
                assert out.status == "budget-exceeded"


def test_pass_gadget_short_inputs_exact():
    params = gadget_params(n_squared())
    for source in (h_immediate(), h_loop(), h_two_step()):
        gadget = build_pass_gadget(source, params)
        for n in range(0, 10):
            out = run(gadget, ("a",) * n, n * n + 10)
            assert out.accepted and out.steps == n + 1


def test_pass_gadget_loop_source_within_budget():
    gadget = build_pass_gadget(h_loop(), gadget_params(n_squared()))
    for n in range(10, 61):
        out = run(gadget, ("a",) * n, n * n + 1)
        assert out.accepted and out.steps <= n * n, (n, out)


def test_pass_gadget_immediate_source_exceeds_at_40():
    gadget = build_pass_gadget(h_immediate(), gadget_params(n_squared()))
    out = run(gadget, ("a",) * 40, 1601)
    assert out.status == "budget-exceeded"


def _trace_run(gadget, word, budget):
    """Run with a trace hook; returns (outcome, positions, writes per cell)."""
    tape = Tape.from_word(word, gadget.blank)
    positions = [0]
    writes = []

    def hook(step, state_after, pos_before, pos_after, written):
        positions.append(pos_after)
        writes.append((pos_before, written))

    outcome = run_on_tape(gadget, tape, budget, on_step=hook)
    return outcome, positions, writes


def test_pass_gadget_brackets_never_rewritten():
    params = gadget_params(n_squared())
    for source in (h_loop(), h_immediate()):
        gadget = build_pass_gadget(source, params)
        hash_sym = next(s for s in gadget.tape_alphabet if s.startswith("#"))
        for n in (10, 13, 36, 40):
            budget = n * n + 1
            _, _, writes = _trace_run(gadget, ("a",) * n, budget)
            seen = {}
            for pos, written in writes:
                if pos in (0, n):
                    if pos in seen and seen[pos] == hash_sym:
                        assert written == hash_sym, (source, n, pos)
                    seen[pos] = written
            assert seen.get(0) == hash_sym and seen.get(n) == hash_sym


def test_pass_gadget_excursions_wall_to_wall():
    """After the brackets are written, every completed excursion is strictly
    monotone and runs from one bracket cell to the other."""
    params = gadget_params(n_squared())
    gadget = build_pass_gadget(h_loop(), params)
    for n in (10, 14, 40):
        outcome, positions, _ = _trace_run(gadget, ("a",) * n, n * n + 1)
        assert outcome.accepted
        # phase 1+2 ends after n+1 steps with the head at n-1
        visits = [i for i, p in enumerate(positions) if p in (0, n) and i > n + 1]
        for a, b in zip(visits, visits[1:]):
            leg = positions[a : b + 1]
            assert {leg[0], leg[-1]} == {0, n}
            deltas = {y - x for x, y in zip(leg, leg[1:])}
            assert deltas == {1} or deltas == {-1}


def test_pass_gadget_iff_contract():
    """Over the fixture set, the compiled machine overruns the bound on some
    tested input iff the source halts on the empty input (bound n^2, tested
    where n^2 admits machines at all)."""
    params = gadget_params(n_squared())
    halting = {"h_immediate": True, "h_loop": False, "h_two_step": True}
    sources = {
        "h_immediate": h_immediate(),
        "h_loop": h_loop(),
        "h_two_step": h_two_step(),
    }
    for name, source in sources.items():
        gadget = build_pass_gadget(source, params)
        overran = False
        for n in list(range(2, 61)) + [220, 224, 230]:
            out = run(gadget, ("a",) * n, n * n + 1)
            if not out.halted or out.steps > n * n:
                overran = True
                break
        assert overran == halting[name], name


def test_counting_gadget_iff_contract():
    bound = LinearBound(1, 1)
    halting = {"h_immediate": True, "h_loop": False, "h_two_step": True}
    sources = {
        "h_immediate": h_immediate(),
        "h_loop": h_loop(),
        "h_two_step": h_two_step(),
    }
    for name, source in sources.items():
        gadget = build_counting_gadget(source)
        overran = False
        for n in range(0, 7):
            floor = bound.floor_eval(n)
            out = run_multi(gadget, ("a",) * n, floor + 1)
            if not out.halted or out.steps > floor:
                overran = True
        assert overran == halting[name], name


def test_pass_gadget_params_validation():
    with pytest.raises(ValueError, match="6 <= C <= n0"):
        build_pass_gadget(h_loop(), GadgetParams(base=6, n0=3, bound_label="x"))
