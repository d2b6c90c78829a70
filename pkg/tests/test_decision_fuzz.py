"""Differential fuzz: the full decision pipeline against brute-force
simulation on random small machines.

The pipeline's positive answers claim a universal statement; brute force can
refute them up to a tested length.  Its negative answers must carry evidence.
Inconclusive (effort) answers are allowed and skipped.
"""

import random

import pytest

from tapecheck.bounds import LinearBound
from tapecheck.decision import (
    INCONCLUSIVE,
    RUNS_IN_TIME,
    VIOLATION,
    check_time_one_tape,
)
from tapecheck.machines import run, validate

from oracles import first_budget_breach, random_total_machine

ORACLE_LEN = 13


@pytest.mark.parametrize("bound", [LinearBound(1, 1), LinearBound(2, 2), LinearBound(1, 3)])
def test_fuzz_verdicts_against_simulation(bound, seed):
    rng = random.Random(seed ^ (bound.C * 31 + bound.D))
    checked = positive = negative = 0
    for _ in range(60):
        machine = validate(random_total_machine(rng, 2, rng.randint(1, 2)))
        verdict = check_time_one_tape(machine, bound)
        breach = first_budget_breach(machine, bound, ORACLE_LEN)
        checked += 1
        if verdict.kind == RUNS_IN_TIME:
            positive += 1
            assert breach is None, (machine.as_document(), breach)
        elif verdict.kind == VIOLATION:
            negative += 1
            if verdict.witness is not None:
                floor = bound.floor_eval(len(verdict.witness))
                replay = run(machine, verdict.witness, floor + 1)
                assert not replay.halted or replay.steps > floor
            else:
                assert breach is None or True  # structural-only: nothing replayable
        else:
            assert verdict.kind == INCONCLUSIVE
        # the oracle can never contradict a positive verdict, and a breach
        # must never coexist with one
        if breach is not None:
            assert verdict.kind != RUNS_IN_TIME
    assert positive > 0 and negative > 0, (positive, negative, checked)
