"""Crossing sequences, tape surgery (cut/splice) and subword pumping.

Boundary i sits between cells i-1 and i.  A step from cell p to cell p+1
crosses boundary p+1; a step from p to p-1 crosses boundary p.  The state
recorded for a crossing is the state the machine is in after making the step.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .machines import OneTapeMachine, RunOutcome, Tape, Word, run_on_tape

LEFT_INF = "left-infinite"
FINITE = "finite"
RIGHT_INF = "right-infinite"


@dataclass(frozen=True)
class CrossingRecord:
    """Crossing sequences per boundary; only non-empty sequences are stored."""

    boundaries: dict[int, tuple[str, ...]]
    total_steps: int

    def at(self, i: int) -> tuple[str, ...]:
        return self.boundaries.get(i, ())

    def as_dict(self) -> dict:
        return {str(i): list(seq) for i, seq in sorted(self.boundaries.items())}


def record_crossings(
    machine: OneTapeMachine, tape: Tape, budget: int
) -> tuple[RunOutcome, CrossingRecord]:
    """Run the machine on a copy of ``tape`` and record every boundary crossing.

    The step-sum identity (total steps == sum of crossing-sequence lengths) is
    checked on every call; it holds because each step crosses exactly one
    boundary.
    """
    sequences: dict[int, list[str]] = {}

    def hook(step: int, state_after: str, pos_before: int, pos_after: int, _written: str) -> None:
        boundary = max(pos_before, pos_after)
        sequences.setdefault(boundary, []).append(state_after)

    outcome = run_on_tape(machine, tape.copy(), budget, on_step=hook)
    total = sum(len(v) for v in sequences.values())
    if total != outcome.steps:
        raise RuntimeError(
            f"step-sum identity violated: {total} crossings vs {outcome.steps} steps"
        )
    record = CrossingRecord(
        boundaries={i: tuple(v) for i, v in sequences.items()}, total_steps=outcome.steps
    )
    return outcome, record


@dataclass(frozen=True)
class TapeSegment:
    """A piece of tape; ``origin`` is the index within ``content`` holding cell 0.

    Left-infinite segments anchor their content at the cut (content[-1] is the
    cell just left of it); right-infinite segments anchor content[0] at the cut.
    Cells outside ``content`` are blank.
    """

    kind: str
    content: Word
    origin: Optional[int] = None


def cut(tape: Tape, boundaries: Sequence[int]) -> list[TapeSegment]:
    """Cut a tape at strictly increasing boundaries into segments; inverse of splice."""
    cuts = list(boundaries)
    if not cuts or any(b >= c for b, c in zip(cuts, cuts[1:])):
        raise ValueError("boundaries must be a non-empty strictly increasing sequence")
    lo, hi = tape.support()
    lo = min(lo, 0, cuts[0] - 1)
    hi = max(hi, 1, cuts[-1] + 1)

    segments = []
    left_content = tuple(tape.read(i) for i in range(lo, cuts[0]))
    segments.append(
        TapeSegment(LEFT_INF, left_content, origin=(0 - lo) if 0 < cuts[0] else None)
    )
    for b, c in zip(cuts, cuts[1:]):
        content = tuple(tape.read(i) for i in range(b, c))
        segments.append(TapeSegment(FINITE, content, origin=(0 - b) if b <= 0 < c else None))
    last = cuts[-1]
    right_content = tuple(tape.read(i) for i in range(last, hi))
    segments.append(
        TapeSegment(RIGHT_INF, right_content, origin=(0 - last) if last <= 0 else None)
    )
    return segments


def splice(segments: Sequence[TapeSegment], blank: str) -> Tape:
    """Glue segments into a tape, numbering cells so the origin marker is cell 0."""
    if len(segments) < 2:
        raise ValueError("splice needs at least a left-infinite and a right-infinite segment")
    if segments[0].kind != LEFT_INF or segments[-1].kind != RIGHT_INF:
        raise ValueError("first segment must be left-infinite and last right-infinite")
    for seg in segments[1:-1]:
        if seg.kind != FINITE:
            raise ValueError("middle segments must be finite")
    marked = [i for i, seg in enumerate(segments) if seg.origin is not None]
    if len(marked) != 1:
        raise ValueError(f"exactly one segment must carry the origin marker, got {len(marked)}")
    idx = marked[0]
    seg = segments[idx]
    if not (0 <= seg.origin < max(len(seg.content), 1)):
        raise ValueError("origin marker outside segment content")

    # Absolute start of each segment's content, chaining left and right of the marked one.
    starts: dict[int, int] = {idx: -seg.origin}
    pos = starts[idx]
    for i in range(idx - 1, -1, -1):
        pos -= len(segments[i].content)
        starts[i] = pos
    pos = starts[idx] + len(seg.content)
    for i in range(idx + 1, len(segments)):
        starts[i] = pos
        pos += len(segments[i].content)

    tape = Tape(blank)
    for i, s in enumerate(segments):
        base = starts[i]
        for off, sym in enumerate(s.content):
            if sym != blank:
                tape.write(base + off, sym)
    return tape


def pump(word: Sequence[str], i: int, j: int, reps: int) -> Word:
    """Repeat the subword between boundaries i and j ``reps`` times (0 removes it)."""
    w = tuple(word)
    if i >= j:
        raise ValueError(f"need i < j, got i={i}, j={j}")
    if not (0 < i and j <= len(w)):
        raise ValueError(f"boundaries out of range for word of length {len(w)}")
    return w[:i] + w[i:j] * reps + w[j:]
