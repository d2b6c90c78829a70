"""Deterministic one-tape and multi-tape Turing machines with exact step accounting.

Machines are parsed from JSON documents (see ``validate``), are immutable after
validation, and every simulation owns its private tape, so independent runs of
the same machine never interfere.

Conventions: input word w occupies cells 0..|w|-1, the head starts on cell 0 in
the start state, every transition moves the head, and accept/reject states are
absorbing.  A machine that halts exactly at step = budget reports its halting
status, not a budget overrun.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator, Optional, Sequence

from .errors import ValidationError

Word = tuple[str, ...]

LEFT = "L"
RIGHT = "R"

ACCEPTED = "accepted"
REJECTED = "rejected"
BUDGET_EXCEEDED = "budget-exceeded"


@dataclass(frozen=True)
class RunOutcome:
    status: str
    steps: int
    leftmost: int
    rightmost: int

    @property
    def halted(self) -> bool:
        return self.status in (ACCEPTED, REJECTED)

    @property
    def accepted(self) -> bool:
        return self.status == ACCEPTED

    def as_dict(self) -> dict:
        return {
            "status": self.status,
            "steps": self.steps,
            "leftmost": self.leftmost,
            "rightmost": self.rightmost,
        }


class Tape:
    """Sparse both-way infinite tape; cell 0 is the start cell."""

    __slots__ = ("cells", "blank")

    def __init__(self, blank: str, cells: Optional[dict[int, str]] = None):
        self.blank = blank
        self.cells = {} if cells is None else dict(cells)

    @classmethod
    def from_word(cls, word: Sequence[str], blank: str) -> "Tape":
        return cls(blank, {i: s for i, s in enumerate(word) if s != blank})

    def read(self, i: int) -> str:
        return self.cells.get(i, self.blank)

    def write(self, i: int, sym: str) -> None:
        if sym == self.blank:
            self.cells.pop(i, None)
        else:
            self.cells[i] = sym

    def copy(self) -> "Tape":
        return Tape(self.blank, self.cells)

    def support(self) -> tuple[int, int]:
        """(lo, hi) such that all non-blank cells lie in [lo, hi); (0, 0) if blank."""
        if not self.cells:
            return (0, 0)
        return (min(self.cells), max(self.cells) + 1)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Tape)
            and self.blank == other.blank
            and self.cells == other.cells
        )


@dataclass(frozen=True, eq=False)
class OneTapeMachine:
    states: frozenset[str]
    input_alphabet: Word  # document order, drives shortlex enumeration
    tape_alphabet: frozenset[str]
    blank: str
    start: str
    accept: str
    reject: str
    delta: dict[tuple[str, str], tuple[str, str, str]] = field(repr=False)

    @property
    def state_count(self) -> int:
        return len(self.states)

    def is_halting(self, state: str) -> bool:
        return state == self.accept or state == self.reject

    def as_document(self) -> dict:
        return {
            "type": "one-tape",
            "states": sorted(self.states),
            "start": self.start,
            "accept": self.accept,
            "reject": self.reject,
            "input_alphabet": list(self.input_alphabet),
            "tape_alphabet": sorted(self.tape_alphabet),
            "blank": self.blank,
            "delta": [
                {"state": s, "read": r, "write": w, "move": m, "next": n}
                for (s, r), (n, w, m) in sorted(self.delta.items())
            ],
        }


@dataclass(frozen=True, eq=False)
class MultiTapeMachine:
    states: frozenset[str]
    input_alphabet: Word
    tape_alphabet: frozenset[str]
    blank: str
    start: str
    accept: str
    reject: str
    tape_count: int
    delta: dict[tuple[str, Word], tuple[str, Word, Word]] = field(repr=False)

    @property
    def state_count(self) -> int:
        return len(self.states)

    def is_halting(self, state: str) -> bool:
        return state == self.accept or state == self.reject

    def as_document(self) -> dict:
        return {
            "type": "multi-tape",
            "states": sorted(self.states),
            "start": self.start,
            "accept": self.accept,
            "reject": self.reject,
            "input_alphabet": list(self.input_alphabet),
            "tape_alphabet": sorted(self.tape_alphabet),
            "blank": self.blank,
            "tapes": self.tape_count,
            "delta": [
                {
                    "state": s,
                    "read": list(r),
                    "write": list(w),
                    "move": list(m),
                    "next": n,
                }
                for (s, r), (n, w, m) in sorted(self.delta.items())
            ],
        }


def _check_symbols(symbols: Iterable[str], what: str) -> list[str]:
    out = []
    for s in symbols:
        if not isinstance(s, str) or len(s) < 1:
            raise ValidationError(f"{what}: symbols must be strings of length >= 1, got {s!r}")
        out.append(s)
    if len(set(out)) != len(out):
        raise ValidationError(f"{what}: duplicate symbols")
    return out


def validate(doc: dict) -> OneTapeMachine | MultiTapeMachine:
    """Parse and validate a machine document; raises ValidationError on any defect."""
    if not isinstance(doc, dict):
        raise ValidationError("machine document must be a JSON object")
    kind = doc.get("type")
    if kind not in ("one-tape", "multi-tape"):
        raise ValidationError(f"unknown machine type {kind!r}")

    states = doc.get("states")
    if not isinstance(states, list) or not states:
        raise ValidationError("states must be a non-empty list")
    if len(set(states)) != len(states):
        raise ValidationError("duplicate states")
    state_set = frozenset(states)

    start, accept, reject = doc.get("start"), doc.get("accept"), doc.get("reject")
    for name, st in (("start", start), ("accept", accept), ("reject", reject)):
        if st not in state_set:
            raise ValidationError(f"{name} state {st!r} not in states")
    if len({start, accept, reject}) != 3:
        raise ValidationError("start, accept and reject must be pairwise distinct")

    input_alphabet = tuple(_check_symbols(doc.get("input_alphabet", []), "input_alphabet"))
    if not input_alphabet:
        raise ValidationError("input alphabet must be non-empty")
    tape_alphabet = frozenset(_check_symbols(doc.get("tape_alphabet", []), "tape_alphabet"))
    blank = doc.get("blank")
    if blank not in tape_alphabet:
        raise ValidationError("blank symbol must be in the tape alphabet")
    if blank in input_alphabet:
        raise ValidationError("blank symbol declared in the input alphabet")
    if not set(input_alphabet) <= tape_alphabet:
        raise ValidationError("input alphabet must be contained in the tape alphabet")

    entries = doc.get("delta")
    if not isinstance(entries, list):
        raise ValidationError("delta must be a list of transitions")

    non_halting = [s for s in states if s not in (accept, reject)]

    if kind == "one-tape":
        delta: dict[tuple[str, str], tuple[str, str, str]] = {}
        for e in entries:
            s, r, w, m, n = e.get("state"), e.get("read"), e.get("write"), e.get("move"), e.get("next")
            if s not in state_set or n not in state_set:
                raise ValidationError(f"transition references unknown state: {e!r}")
            if s in (accept, reject):
                raise ValidationError(f"transition out of halting state {s!r}")
            if r not in tape_alphabet or w not in tape_alphabet:
                raise ValidationError(f"transition references unknown symbol: {e!r}")
            if m not in (LEFT, RIGHT):
                raise ValidationError(f"stay move or bad direction {m!r} (head must move L or R)")
            if (s, r) in delta:
                raise ValidationError(f"duplicate transition for ({s!r}, {r!r})")
            delta[(s, r)] = (n, w, m)
        for s in non_halting:
            for a in tape_alphabet:
                if (s, a) not in delta:
                    raise ValidationError(f"missing transition for ({s!r}, {a!r})")
        return OneTapeMachine(
            states=state_set,
            input_alphabet=input_alphabet,
            tape_alphabet=tape_alphabet,
            blank=blank,
            start=start,
            accept=accept,
            reject=reject,
            delta=delta,
        )

    tape_count = doc.get("tapes")
    if not isinstance(tape_count, int) or tape_count < 2:
        raise ValidationError("multi-tape machine needs tapes >= 2")
    mdelta: dict[tuple[str, Word], tuple[str, Word, Word]] = {}
    for e in entries:
        s, n = e.get("state"), e.get("next")
        r, w, m = e.get("read"), e.get("write"), e.get("move")
        if s not in state_set or n not in state_set:
            raise ValidationError(f"transition references unknown state: {e!r}")
        if s in (accept, reject):
            raise ValidationError(f"transition out of halting state {s!r}")
        if not (isinstance(r, list) and isinstance(w, list) and isinstance(m, list)):
            raise ValidationError("multi-tape read/write/move must be arrays")
        if not (len(r) == len(w) == len(m) == tape_count):
            raise ValidationError(f"read/write/move arity must equal tape count {tape_count}")
        for sym in (*r, *w):
            if sym not in tape_alphabet:
                raise ValidationError(f"transition references unknown symbol: {sym!r}")
        for mv in m:
            if mv not in (LEFT, RIGHT):
                raise ValidationError(f"stay move or bad direction {mv!r}")
        if w[0] != r[0]:
            raise ValidationError("read-only input tape: transition rewrites tape 0")
        key = (s, tuple(r))
        if key in mdelta:
            raise ValidationError(f"duplicate transition for {key!r}")
        mdelta[key] = (n, tuple(w), tuple(m))
    for s in non_halting:
        for combo in itertools.product(sorted(tape_alphabet), repeat=tape_count):
            if (s, combo) not in mdelta:
                raise ValidationError(f"missing transition for ({s!r}, {combo!r})")
    return MultiTapeMachine(
        states=state_set,
        input_alphabet=input_alphabet,
        tape_alphabet=tape_alphabet,
        blank=blank,
        start=start,
        accept=accept,
        reject=reject,
        tape_count=tape_count,
        delta=mdelta,
    )


def load_machine(path: str) -> OneTapeMachine | MultiTapeMachine:
    with open(path, "r", encoding="utf-8") as fh:
        return validate(json.load(fh))


StepHook = Callable[[int, str, int, int, str], None]
# arguments: step index (1-based), state after the step, cell before, cell after, symbol written


def run_on_tape(
    machine: OneTapeMachine,
    tape: Tape,
    budget: int,
    on_step: Optional[StepHook] = None,
) -> RunOutcome:
    """Simulate up to ``budget`` steps on ``tape`` (mutated in place), head at cell 0."""
    if budget < 1:
        raise ValueError("budget must be >= 1")
    state = machine.start
    pos = 0
    lo = hi = 0
    delta = machine.delta
    read = tape.read
    write = tape.write
    for step in range(1, budget + 1):
        nxt, out, move = delta[(state, read(pos))]
        write(pos, out)
        new_pos = pos + 1 if move == RIGHT else pos - 1
        if on_step is not None:
            on_step(step, nxt, pos, new_pos, out)
        pos = new_pos
        if pos < lo:
            lo = pos
        elif pos > hi:
            hi = pos
        state = nxt
        if machine.is_halting(state):
            status = ACCEPTED if state == machine.accept else REJECTED
            return RunOutcome(status, step, lo, hi)
    return RunOutcome(BUDGET_EXCEEDED, budget, lo, hi)


def run(machine: OneTapeMachine, word: Sequence[str], budget: int) -> RunOutcome:
    return run_on_tape(machine, Tape.from_word(tuple(word), machine.blank), budget)


def run_multi(machine: MultiTapeMachine, word: Sequence[str], budget: int) -> RunOutcome:
    """Simulate a multi-tape machine; extent covers the union of all tape heads."""
    if budget < 1:
        raise ValueError("budget must be >= 1")
    k = machine.tape_count
    tapes = [Tape(machine.blank) for _ in range(k)]
    for i, s in enumerate(word):
        tapes[0].write(i, s)
    state = machine.start
    pos = [0] * k
    lo = hi = 0
    for step in range(1, budget + 1):
        reads = tuple(tapes[t].read(pos[t]) for t in range(k))
        nxt, writes, moves = machine.delta[(state, reads)]
        for t in range(k):
            tapes[t].write(pos[t], writes[t])
            pos[t] += 1 if moves[t] == RIGHT else -1
            if pos[t] < lo:
                lo = pos[t]
            elif pos[t] > hi:
                hi = pos[t]
        state = nxt
        if machine.is_halting(state):
            status = ACCEPTED if state == machine.accept else REJECTED
            return RunOutcome(status, step, lo, hi)
    return RunOutcome(BUDGET_EXCEEDED, budget, lo, hi)


def enumerate_inputs(alphabet: Sequence[str], max_len: int) -> Iterator[Word]:
    """Every word of length 0..max_len exactly once, shortlex in alphabet order."""
    symbols = tuple(alphabet)
    if not symbols:
        raise ValueError("alphabet must be non-empty")
    for n in range(max_len + 1):
        for combo in itertools.product(symbols, repeat=n):
            yield combo


def words_of_length(alphabet: Sequence[str], n: int) -> Iterator[Word]:
    yield from itertools.product(tuple(alphabet), repeat=n)


def word_from_string(text: str, alphabet: Sequence[str]) -> Word:
    """Parse a CLI word: comma-separated symbols, or one char per symbol."""
    if text == "":
        return ()
    if "," in text:
        parts = tuple(text.split(","))
    elif all(len(s) == 1 for s in alphabet):
        parts = tuple(text)
    else:
        parts = (text,)
    bad = [s for s in parts if s not in set(alphabet)]
    if bad:
        raise ValidationError(f"input symbols {bad!r} not in the machine's input alphabet")
    return parts


def word_to_string(word: Word) -> str:
    if all(len(s) == 1 for s in word):
        return "".join(word)
    return ",".join(word)
