"""The time-bound decision procedure for one-tape machines, plus the trivial
branch shared with multi-tape machines.

The main analysis keeps three tables.  X holds base words whose crossing
sequences at boundaries 1..|x| are pairwise distinct, together with exact step
counts.  S holds every crossing sequence observed at input boundaries.  For
each s in S, Y[s] holds the part words that fit between two occurrences of s
with pairwise-distinct internal sequences, found by a pretend simulation that
supplies the s-crossings at both ends of the part.  Inserting a part at a
matching boundary of a base word adds exactly part_time steps, so the whole
behavior of the machine on any constructible word is determined by the tables;
the coverage automaton checks that every word is constructible, and the family
inequalities check that every construction stays within the bound for every
insertion multiplicity.

Verdicts are three-valued and always sound: RunsInTime is only emitted when
the analysis certifies the bound for every input, Violation always carries a
replayable witness or a structural certificate, and Inconclusive reports which
cap ran out.  A certified pass does not require enumerating up to the
astronomically large word-length bound K: as soon as the tables explain every
word (coverage is universal) and every family inequality holds, every longer
input is a composition of table entries with exact, verified step counts.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Optional

from . import regular
from .bounds import (
    TimeBound,
    kobayashi_constant,
    sequence_count_bound,
)
from .crossing import record_crossings
from .errors import EffortExceeded, OutsideDecidableRange
from .machines import (
    MultiTapeMachine,
    OneTapeMachine,
    Tape,
    Word,
    enumerate_inputs,
    run,
    run_multi,
    word_to_string,
    words_of_length,
)

Seq = tuple[str, ...]

RUNS_IN_TIME = "runs-in-time"
VIOLATION = "violation"
INCONCLUSIVE = "inconclusive"

FAIL_MISMATCH = "mismatch"
FAIL_HALT_INSIDE = "halt-inside"
FAIL_LOOP_INSIDE = "loop-inside"
FAIL_OVER_CAP = "internal-sequence-over-cap"

DEFAULT_EFFORT = 5_000_000


def format_count(n: int) -> str:
    """Decimal string for small counts, order of magnitude for huge ones."""
    if n < 10**18:
        return str(n)
    digits = int(n.bit_length() * 0.30102999566398114) + 1
    return f"~10^{digits - 1}"


@dataclass(frozen=True)
class CompatResult:
    compatible: bool
    primitive: bool
    internal_sequences: tuple[Seq, ...]
    part_time: int
    failure_reason: Optional[str] = None


@dataclass(frozen=True)
class XEntry:
    word: Word
    seqs: tuple[Seq, ...]  # crossing sequences at boundaries 1..|word|
    steps: int
    accepted: bool


@dataclass(frozen=True)
class YEntry:
    word: Word
    internals: tuple[Seq, ...]  # sequences at boundaries 1..|word|-1
    part_time: int


@dataclass
class AnalysisTables:
    cap_c: int
    length_bound: int  # K, or the user cap when smaller
    X: dict[Word, XEntry] = field(default_factory=dict)
    S: set[Seq] = field(default_factory=set)
    Y: dict[Seq, dict[Word, YEntry]] = field(default_factory=dict)

    def parts_map(self) -> regular.PartsMap:
        return {
            s: {w: e.internals for w, e in ys.items()} for s, ys in self.Y.items()
        }

    def pair_count(self) -> int:
        return sum(len(ys) for ys in self.Y.values())

    def summary(self) -> dict:
        return {
            "base_words": len(self.X),
            "sequences": len(self.S),
            "parts": self.pair_count(),
            "crossing_cap": self.cap_c,
            "length_bound": format_count(self.length_bound),
        }


@dataclass(frozen=True)
class Verdict:
    kind: str
    witness: Optional[Word] = None
    detail: str = ""
    exhausted: Optional[str] = None
    caps: dict = field(default_factory=dict)
    tables: Optional[AnalysisTables] = None
    trivial_n0: Optional[int] = None

    def as_dict(self) -> dict:
        out = {
            "kind": self.kind,
            "witness": list(self.witness) if self.witness is not None else None,
            "detail": self.detail,
            "exhausted": self.exhausted,
            "caps": self.caps,
        }
        if self.tables is not None:
            out["tables"] = self.tables.summary()
        if self.trivial_n0 is not None:
            out["trivial_n0"] = self.trivial_n0
        return out

    @property
    def exit_code(self) -> int:
        return {RUNS_IN_TIME: 0, VIOLATION: 1, INCONCLUSIVE: 2}[self.kind]


class _Work:
    """Shared effort meter; one unit is roughly one simulated step."""

    def __init__(self, limit: int):
        self.limit = limit
        self.used = 0

    def spend(self, amount: int) -> None:
        self.used += amount
        if self.used > self.limit:
            raise EffortExceeded("analysis exceeded the configured effort limit")


# --- pretend simulation of a part between two s-crossings --------------------

def probe_primitive_compat(
    machine: OneTapeMachine,
    s: Seq,
    y: Word,
    cap_c: int,
    max_configs: int = 200_000,
) -> CompatResult:
    """Decide whether part word y fits between two occurrences of crossing
    sequence s, and whether it does so primitively.

    The pretend simulation drives the machine over the cells of y only.  Odd
    elements of s cross rightward, even ones leftward, at both ends of y.  The
    left pointer l counts elements of s consumed at the left end (the initial
    entry consumes element 1), the right pointer r at the right end.  An exit
    must match the next element on its side; if more elements remain, the head
    re-enters on the same side in the following element's state.  The part is
    compatible when both pointers finish exactly at |s|; it is primitive when
    additionally the internal sequences are pairwise distinct and none equals
    s.  A repeated (state, cell, region, l, r) configuration proves the head
    can never leave, so the part is rejected as looping.
    """
    k = len(s)
    n = len(y)
    if n < 1:
        raise ValueError("part words must be non-empty")
    internals_empty: tuple[Seq, ...] = tuple(() for _ in range(n - 1))
    if k == 0:
        # The head never enters the region; all internal boundaries carry the
        # empty sequence, which duplicates (and equals s) unless |y| = 1.
        return CompatResult(
            compatible=True,
            primitive=(n == 1),
            internal_sequences=internals_empty,
            part_time=0,
        )

    def fail(reason: str) -> CompatResult:
        return CompatResult(False, False, internals_empty, 0, failure_reason=reason)

    if any(st not in machine.states for st in s):
        return fail(FAIL_MISMATCH)  # no real run can produce a foreign state

    cells = list(y)
    internal: list[list[str]] = [[] for _ in range(n - 1)]  # boundary i+1 of y
    state = s[0]
    pos = 0
    l = 1
    r = 0
    seen: set = set()
    configs = 0
    while True:
        if machine.is_halting(state):
            return fail(FAIL_HALT_INSIDE)
        key = (state, pos, tuple(cells), l, r)
        if key in seen:
            return fail(FAIL_LOOP_INSIDE)
        seen.add(key)
        configs += 1
        if configs > max_configs:
            return fail(FAIL_LOOP_INSIDE)

        nxt, out, move = machine.delta[(state, cells[pos])]
        cells[pos] = out
        new_pos = pos + 1 if move == "R" else pos - 1

        if 0 <= new_pos <= n - 1:
            boundary = max(pos, new_pos)  # internal boundary of y, in 1..n-1
            internal[boundary - 1].append(nxt)
            if len(internal[boundary - 1]) > cap_c:
                return fail(FAIL_OVER_CAP)
            state = nxt
            pos = new_pos
            continue
        if new_pos == -1:
            # leftward exit: consumes element l+1
            if l + 1 > k or s[l] != nxt:
                return fail(FAIL_MISMATCH)
            l += 1
            if l == k:
                if r == k:
                    break
                return fail(FAIL_MISMATCH)
            state = s[l]  # re-entry consumes element l+1
            l += 1
            pos = 0
            continue
        # new_pos == n: rightward exit, consumes element r+1
        if r + 1 > k or s[r] != nxt:
            return fail(FAIL_MISMATCH)
        r += 1
        if r == k:
            if l == k:
                break
            return fail(FAIL_MISMATCH)
        state = s[r]  # re-entry consumes element r+1
        r += 1
        pos = n - 1

    internal_seqs = tuple(tuple(c) for c in internal)
    part_time = k + sum(len(c) for c in internal_seqs)
    primitive = len(set(internal_seqs)) == len(internal_seqs) and s not in internal_seqs
    return CompatResult(
        compatible=True,
        primitive=primitive,
        internal_sequences=internal_seqs,
        part_time=part_time,
    )


# --- word composition (insert parts into base words) -------------------------

def insert_part(word: Word, boundary: int, part: Word, copies: int = 1) -> Word:
    """Insert ``copies`` adjacent copies of ``part`` at a boundary of ``word``."""
    if not (0 < boundary <= len(word)):
        raise ValueError("insertion boundary out of range")
    return word[:boundary] + part * copies + word[boundary:]


def compose_witness(
    x_entry: XEntry,
    family: tuple[tuple[Seq, Word], ...],
    multiplicities: dict[tuple[Seq, Word], int],
    tables: AnalysisTables,
) -> tuple[Word, int]:
    """Build the concrete word for a family with the given insertion
    multiplicities, returning (word, expected step count).  Parts are inserted
    in chain-reaction order: a part becomes insertable once its sequence has a
    live boundary, which insertion of earlier parts can create."""
    word = x_entry.word
    slots: dict[Seq, int] = {}
    for i, seq in enumerate(x_entry.seqs):
        slots.setdefault(seq, i + 1)
    expected = x_entry.steps
    pending = list(family)
    while pending:
        progressed = False
        for item in list(pending):
            s, y = item
            if s not in slots:
                continue
            pos = slots[s]
            copies = multiplicities[item]
            entry = tables.Y[s][y]
            word = insert_part(word, pos, y, copies)
            expected += copies * entry.part_time
            shift = copies * len(y)
            slots = {
                seq: (p + shift if p > pos else p) for seq, p in slots.items()
            }
            for j, internal in enumerate(entry.internals):
                slots.setdefault(internal, pos + j + 1)
            pending.remove(item)
            progressed = True
        if not progressed:
            raise ValueError("family is not realizable from the base word")
    return word, expected


def realizable(
    x_entry: XEntry, family: Iterable[tuple[Seq, Word]], tables: AnalysisTables
) -> bool:
    """Monotone closure: a family of (sequence, part) pairs is usable from x
    when each part's sequence is available at insertion time, where availability
    starts with x's boundary sequences and grows by inserted parts' internals."""
    available = set(x_entry.seqs)
    pending = list(family)
    while pending:
        usable = [item for item in pending if item[0] in available]
        if not usable:
            return False
        for item in usable:
            pending.remove(item)
            available.update(tables.Y[item[0]][item[1]].internals)
    return True


def check_family_inequality(
    bound: TimeBound,
    x_entry: XEntry,
    family: tuple[tuple[Seq, Word], ...],
    tables: AnalysisTables,
) -> bool:
    """True iff the bound is respected for every insertion multiplicity >= 1.

    Substituting k = 1 + x turns the question into the manageability query:
    the bound fails for some multiplicities iff T(A0 + sum x_i A_i) <
    B0 + sum x_i B_i has a solution with A0 = |x| + sum|y_i|, A_i = |y_i|,
    B0 = T_x + sum T_i, B_i = T_i."""
    if not family:
        return x_entry.steps <= bound.floor_eval(len(x_entry.word))
    part_entries = [tables.Y[s][y] for s, y in family]
    a = [len(x_entry.word) + sum(len(e.word) for e in part_entries)]
    b = [x_entry.steps + sum(e.part_time for e in part_entries)]
    for e in part_entries:
        a.append(len(e.word))
        b.append(e.part_time)
    return not bound.decide_linear_inequality(tuple(a), tuple(b))


def _find_violating_multiplicities(
    bound: TimeBound,
    x_entry: XEntry,
    family: tuple[tuple[Seq, Word], ...],
    tables: AnalysisTables,
    cap: int = 1 << 20,
) -> Optional[dict[tuple[Seq, Word], int]]:
    """Concrete multiplicities k >= 1 whose composition overruns the bound, by
    escalating one coordinate at a time; None if none found within the cap."""
    entries = {item: tables.Y[item[0]][item[1]] for item in family}

    def overruns(mult: dict) -> bool:
        length = len(x_entry.word) + sum(
            mult[i] * len(entries[i].word) for i in family
        )
        steps = x_entry.steps + sum(mult[i] * entries[i].part_time for i in family)
        return steps > bound.floor_eval(length)

    ones = {item: 1 for item in family}
    if overruns(ones):
        return ones
    for item in family:
        k = 2
        while k <= cap:
            cand = dict(ones)
            cand[item] = k
            if overruns(cand):
                return cand
            k *= 2
    return None


# --- coverage plus inequalities ----------------------------------------------

_MAX_FAMILY_PAIRS = 14


@dataclass
class _CoverageOutcome:
    ok: bool
    gap: Optional[Word] = None
    violation: Optional[Verdict] = None


def _coverage_and_inequalities(
    machine: OneTapeMachine,
    bound: TimeBound,
    tables: AnalysisTables,
    caps: dict,
) -> _CoverageOutcome:
    cov = regular.coverage_automaton(
        ((e.word, e.seqs) for e in tables.X.values()),
        tables.parts_map(),
        frozenset(tables.S),
        machine.input_alphabet,
    )
    universal, gap = regular.is_universal(cov)
    if not universal:
        return _CoverageOutcome(False, gap=gap)

    pairs = sorted(
        (s, y) for s, ys in tables.Y.items() for y in ys
    )
    if len(pairs) > _MAX_FAMILY_PAIRS:
        raise EffortExceeded(
            f"family enumeration over {len(pairs)} parts exceeds the supported size"
        )
    for x_entry in tables.X.values():
        for size in range(len(pairs) + 1):
            for family in itertools.combinations(pairs, size):
                if family and not x_entry.word:
                    continue  # the empty word admits no insertions
                if family and not realizable(x_entry, family, tables):
                    continue
                if check_family_inequality(bound, x_entry, family, tables):
                    continue
                mult = _find_violating_multiplicities(bound, x_entry, family, tables)
                detail = (
                    "family inequality fails: base "
                    f"{word_to_string(x_entry.word) or 'empty word'} with parts "
                    f"{[word_to_string(y) for _, y in family]} admits unbounded overrun"
                )
                witness = None
                if mult is not None:
                    witness, expected = compose_witness(x_entry, family, mult, tables)
                    detail += f"; witness of length {len(witness)} runs {expected} steps"
                return _CoverageOutcome(
                    False,
                    violation=Verdict(
                        VIOLATION,
                        witness=witness,
                        detail=detail,
                        caps=caps,
                        tables=tables,
                    ),
                )
    return _CoverageOutcome(True)


# --- base tables and saturation ----------------------------------------------

@dataclass
class _Analysis:
    machine: OneTapeMachine
    bound: TimeBound
    tables: AnalysisTables
    certified: bool
    caps: dict
    work: _Work
    probed: set = field(default_factory=set)

    def overrun_violation(self, word: Word, steps: int) -> Verdict:
        floor = self.bound.floor_eval(len(word))
        return Verdict(
            VIOLATION,
            witness=word,
            detail=f"makes more than floor(T({len(word)})) = {floor} steps ({steps} observed)",
            caps=self.caps,
            tables=self.tables,
        )

    def cap_outcome(self, word: Word, length: int) -> Verdict:
        if self.certified:
            return Verdict(
                VIOLATION,
                witness=word,
                detail=(
                    f"produces a crossing sequence longer than the certified cap "
                    f"{self.tables.cap_c}; structural certificate"
                ),
                caps=self.caps,
                tables=self.tables,
            )
        return Verdict(
            INCONCLUSIVE,
            detail=f"crossing sequence longer than the cap {self.tables.cap_c} at length {length}",
            exhausted="cap_c",
            caps=self.caps,
            tables=self.tables,
        )


def _add_base_length(analysis: _Analysis, length: int) -> tuple[bool, Optional[Verdict]]:
    """Simulate every input of the given length; returns (tables changed, verdict)."""
    machine, bound, tables = analysis.machine, analysis.bound, analysis.tables
    changed = False
    budget = bound.floor_eval(length) + 1
    for word in words_of_length(machine.input_alphabet, length):
        analysis.work.spend(budget)
        outcome, record = record_crossings(
            machine, Tape.from_word(word, machine.blank), budget
        )
        if not outcome.halted or outcome.steps > bound.floor_eval(length):
            return changed, analysis.overrun_violation(word, outcome.steps)
        seqs = tuple(record.at(i) for i in range(1, length + 1))
        if any(len(seq) > tables.cap_c for seq in seqs):
            return changed, analysis.cap_outcome(word, length)
        for seq in seqs:
            if seq not in tables.S:
                tables.S.add(seq)
                changed = True
        if len(set(seqs)) == len(seqs) and word not in tables.X:
            tables.X[word] = XEntry(word, seqs, outcome.steps, outcome.accepted)
            changed = True
    return changed, None


def _saturate(analysis: _Analysis, part_len_limit: int) -> tuple[bool, Optional[Verdict]]:
    """Probe parts for every sequence in S up to the length limit, following
    internal sequences into S until the tables close."""
    machine, tables = analysis.machine, analysis.tables
    changed = False
    while True:
        round_changed = False
        for s in sorted(tables.S):
            for n in range(1, part_len_limit + 1):
                for y in words_of_length(machine.input_alphabet, n):
                    key = (s, y)
                    if key in analysis.probed:
                        continue
                    analysis.probed.add(key)
                    analysis.work.spend(32)
                    result = probe_primitive_compat(machine, s, y, tables.cap_c)
                    if not result.primitive:
                        continue
                    tables.Y.setdefault(s, {})[y] = YEntry(
                        y, result.internal_sequences, result.part_time
                    )
                    round_changed = True
                    for internal in result.internal_sequences:
                        if internal not in tables.S:
                            tables.S.add(internal)
        if not round_changed:
            return changed, None
        changed = True


# --- public checks ------------------------------------------------------------

def build_base_tables(
    machine: OneTapeMachine,
    bound: TimeBound,
    c: int,
    k_bound: int,
    max_len: Optional[int] = None,
    effort: int = DEFAULT_EFFORT,
    certified: bool = False,
) -> AnalysisTables | Verdict:
    """Simulate every input up to min(k_bound, max_len), populating X and S.
    Returns the partial tables, or a Verdict on an overrun or cap overflow."""
    limit = k_bound if max_len is None else min(k_bound, max_len)
    tables = AnalysisTables(cap_c=c, length_bound=limit)
    caps = {"crossing_cap": c, "certified": certified, "length_bound": format_count(limit)}
    analysis = _Analysis(machine, bound, tables, certified, caps, _Work(effort))
    for length in range(limit + 1):
        _, verdict = _add_base_length(analysis, length)
        if verdict is not None:
            return verdict
    return tables


def saturate_tables(
    machine: OneTapeMachine,
    bound: TimeBound,
    c: int,
    k_bound: int,
    max_len: Optional[int] = None,
    effort: int = DEFAULT_EFFORT,
    certified: bool = False,
) -> AnalysisTables | Verdict:
    """Base tables plus the worklist closure over parts: probe every part word
    up to the length limit for every sequence, chasing internal sequences into
    S until nothing changes."""
    limit = k_bound if max_len is None else min(k_bound, max_len)
    out = build_base_tables(machine, bound, c, k_bound, max_len, effort, certified)
    if isinstance(out, Verdict):
        return out
    caps = {"crossing_cap": c, "certified": certified, "length_bound": format_count(limit)}
    analysis = _Analysis(machine, bound, out, certified, caps, _Work(effort))
    _, verdict = _saturate(analysis, limit)
    if verdict is not None:
        return verdict
    return out


def check_time_one_tape(
    machine: OneTapeMachine,
    bound: TimeBound,
    cap_c: Optional[int] = None,
    max_len: Optional[int] = None,
    effort: int = DEFAULT_EFFORT,
) -> Verdict:
    """Decide whether the machine runs within the bound.

    With no caps supplied the crossing cap and length bound are the certified
    constants and a positive answer is definitive; user caps turn positive
    answers into Inconclusive while keeping every Violation sound."""
    n0 = bound.find_trivial_n0()
    if n0 is not None:
        return _trivial_branch(machine, bound, n0, simulate=run, effort=effort)

    # Fast rejection on very short inputs before paying for the certified
    # constants; a budget overrun is a sound verdict at any cap.
    for word in enumerate_inputs(machine.input_alphabet, 2):
        floor = bound.floor_eval(len(word))
        outcome = run(machine, word, floor + 1)
        if not outcome.halted or outcome.steps > floor:
            return Verdict(
                VIOLATION,
                witness=word,
                detail=f"makes more than floor(T({len(word)})) = {floor} steps "
                f"({outcome.steps} observed)",
                caps={"certified": True, "prescan": True},
            )

    q = machine.state_count
    if cap_c is None:
        kob = kobayashi_constant(q, bound)
        c = kob.c
        certified_c = True
    else:
        c = cap_c
        certified_c = False
    k_bound = sequence_count_bound(q, c)
    limit = k_bound if max_len is None else min(k_bound, max_len)
    certified = certified_c and limit == k_bound
    caps = {
        "crossing_cap": c,
        "certified": certified,
        "length_bound": format_count(limit),
        "effort": effort,
    }

    tables = AnalysisTables(cap_c=c, length_bound=limit)
    analysis = _Analysis(machine, bound, tables, certified, caps, _Work(effort))

    exhausted_cap = "max_len" if (max_len is not None and max_len < k_bound) else "cap_c"
    length = 0
    try:
        while length <= limit:
            changed_base, verdict = _add_base_length(analysis, length)
            if verdict is not None:
                return verdict
            changed_sat, verdict = _saturate(analysis, min(length, limit))
            if verdict is not None:
                return verdict
            if not (changed_base or changed_sat) and length > 0:
                outcome = _coverage_and_inequalities(machine, bound, tables, caps)
                if outcome.violation is not None:
                    return outcome.violation
                if outcome.ok:
                    if certified:
                        return Verdict(
                            RUNS_IN_TIME,
                            detail="coverage universal and all family inequalities hold",
                            caps=caps,
                            tables=tables,
                        )
                    return Verdict(
                        INCONCLUSIVE,
                        detail=(
                            "analysis passed under user caps; rerun without caps "
                            "for a certified answer"
                        ),
                        exhausted=exhausted_cap,
                        caps=caps,
                        tables=tables,
                    )
            length += 1
    except EffortExceeded as exc:
        return Verdict(
            INCONCLUSIVE, detail=str(exc), exhausted="effort", caps=caps, tables=tables
        )

    # Length cap ran out before the tables went quiet.
    try:
        outcome = _coverage_and_inequalities(machine, bound, tables, caps)
    except EffortExceeded as exc:
        return Verdict(
            INCONCLUSIVE, detail=str(exc), exhausted="effort", caps=caps, tables=tables
        )
    if outcome.violation is not None:
        return outcome.violation
    if outcome.ok:
        if certified:
            return Verdict(
                RUNS_IN_TIME,
                detail="coverage universal and all family inequalities hold",
                caps=caps,
                tables=tables,
            )
        return Verdict(
            INCONCLUSIVE,
            detail="analysis passed under user caps",
            exhausted=exhausted_cap,
            caps=caps,
            tables=tables,
        )
    if certified:
        return Verdict(
            VIOLATION,
            witness=outcome.gap,
            detail="structural: word not constructible from the saturated tables",
            caps=caps,
            tables=tables,
        )
    return Verdict(
        INCONCLUSIVE,
        witness=outcome.gap,
        detail="coverage gap under user caps; tables may be incomplete",
        exhausted=exhausted_cap,
        caps=caps,
        tables=tables,
    )


def check_time_multi_tape(
    machine: MultiTapeMachine, bound: TimeBound, effort: int = DEFAULT_EFFORT
) -> Verdict:
    """Decide the bound for a multi-tape machine; only the trivial regime,
    where T(n0) < n0 + 1 for some n0, is decidable."""
    n0 = bound.find_trivial_n0()
    if n0 is None:
        raise OutsideDecidableRange(
            "outside decidable range: the bound never falls below n+1, and "
            "multi-tape time-bound verification is undecidable there"
        )
    return _trivial_branch(machine, bound, n0, simulate=run_multi, effort=effort)


def _trivial_branch(
    machine, bound: TimeBound, n0: int, simulate, effort: int = DEFAULT_EFFORT
) -> Verdict:
    """Exhaustive check up to n0; beyond it the machine cannot read fresh input
    cells, so its settled maximum step count must stay under the bound."""
    caps = {"branch": "trivial", "n0": n0, "certified": True}
    best_steps = 0
    best_word: Word = ()
    work = _Work(effort)
    for word in enumerate_inputs(machine.input_alphabet, n0):
        floor = bound.floor_eval(len(word))
        try:
            work.spend(floor + 1)
        except EffortExceeded as exc:
            return Verdict(
                INCONCLUSIVE, detail=str(exc), exhausted="effort", caps=caps,
                trivial_n0=n0,
            )
        outcome = simulate(machine, word, floor + 1)
        if not outcome.halted or outcome.steps > floor:
            return Verdict(
                VIOLATION,
                witness=word,
                detail=f"makes more than floor(T({len(word)})) = {floor} steps",
                caps=caps,
                trivial_n0=n0,
            )
        if len(word) == n0 and outcome.steps > best_steps:
            best_steps, best_word = outcome.steps, word
    # Settled regime: does T ever dip below the settled step count beyond n0?
    if bound.decide_linear_inequality((n0 + 1, 1), (best_steps, 0)):
        n_star = _first_dip(bound, n0, best_steps)
        pad = machine.input_alphabet[0]
        witness = best_word + (pad,) * (n_star - n0)
        return Verdict(
            VIOLATION,
            witness=witness,
            detail=(
                f"settled step count {best_steps} exceeds floor(T({n_star})) = "
                f"{bound.floor_eval(n_star)}"
            ),
            caps=caps,
            trivial_n0=n0,
        )
    return Verdict(
        RUNS_IN_TIME,
        detail=f"all inputs up to length {n0} comply and the settled step count "
        f"{best_steps} never exceeds the bound beyond",
        caps=caps,
        trivial_n0=n0,
    )


def _first_dip(bound: TimeBound, n0: int, steps: int, cap: int = 1 << 22) -> int:
    for n in range(n0 + 1, n0 + cap):
        if bound.floor_eval(n) < steps:
            return n
    raise RuntimeError("inequality decision promised a dip but none was found")
