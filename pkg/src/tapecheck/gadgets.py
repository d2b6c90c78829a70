"""Reduction gadget compilers: machines whose time-bound compliance encodes
whether a source machine halts on the empty input.

The counting gadget is a two-tape machine that walks its read-only input head
one cell per step while simulating the source machine on a work tape, halting
after exactly |w|+1 steps unless the simulation finished early, in which case
it loops forever.

The pass gadget is a one-tape machine built in five phases: short inputs are
accepted in n+1 steps; longer inputs are overwritten with a bracketed unary
counter #1^(n-1)#; rightward passes erase the counter base-C down to a zero
countdown laid out as #_^m _' _ 0^(n-3-m)#; further passes burn the countdown
while simulating one source step per pass whenever the source head moves with
the pass; and the gadget halts when the countdown is exhausted, or bounces
between the brackets forever if the simulation finished first.  Between the
brackets every head excursion runs wall to wall, so total time stays within
(3m+3)n + 1 <= 3n*log_C(n) + 6n + 1 for m = ceil(log_C n).

State names are structured strings ("p3.erase|fresh=0|kill=3|kept=1", ...) so
traces read back to the phase logic directly.
"""

from __future__ import annotations

from dataclasses import dataclass

from .bounds import TimeBound
from .errors import UnsupportedBound
from .machines import (
    LEFT,
    RIGHT,
    MultiTapeMachine,
    OneTapeMachine,
    validate,
)
from .realnum import iv_int

ERASURE_BASE = 6


@dataclass(frozen=True)
class GadgetParams:
    base: int  # C, the per-pass erasure ratio
    n0: int  # inputs shorter than this are accepted outright
    bound_label: str


def _pass_margin_ok(bound: TimeBound, base: int, n: int) -> bool:
    """Certified check of T(n) >= 3n*log_base(n) + 6n + 1."""
    num, den = bound.eval_ratio(n)
    log_base_n = iv_int(n).log2().div_pos(iv_int(base).log2())
    rhs = iv_int(3 * n).mul_pos(log_base_n) + iv_int(6 * n + 1)
    lhs = iv_int(num).div_pos(iv_int(den))
    return lhs.lo >= rhs.hi


def gadget_params(bound: TimeBound, scan_limit: int = 100_000) -> GadgetParams:
    """C = 6 and the least n0 >= 6 from which T(n) >= 3n*log_C(n) + 6n + 1 holds
    for good; beyond the bound's declared anchor the margin only grows."""
    base = ERASURE_BASE
    anchor = bound.omega_nlogn_anchor(base)
    if anchor is None:
        raise UnsupportedBound(
            f"bound {bound.describe()} is not certified to grow at n*log(n) rate"
        )
    horizon = max(anchor, base)
    n0 = None
    for n in range(max(base, 2), scan_limit + 1):
        if _pass_margin_ok(bound, base, n):
            if n0 is None:
                n0 = n
        else:
            n0 = None
        if n0 is not None and n >= horizon:
            return GadgetParams(base=base, n0=max(n0, base), bound_label=bound.describe())
    raise UnsupportedBound(
        f"bound {bound.describe()} never satisfies the pass-gadget inequality below {scan_limit}"
    )


# --- counting gadget (multi-tape) --------------------------------------------

def build_counting_gadget(source: OneTapeMachine) -> MultiTapeMachine:
    """Two-tape machine halting after exactly |w|+1 steps iff the source does
    not halt on the empty input within |w| steps; loops forever otherwise."""
    blank = source.blank
    syms = sorted(source.tape_alphabet)
    sim = {q: f"sim.{q}" for q in sorted(source.states) if not source.is_halting(q)}
    accept, reject, loop = "acc", "rej", "loop"
    states = list(sim.values()) + [loop, accept, reject]

    delta = []

    def add(state, reads, writes, moves, nxt):
        delta.append(
            {"state": state, "read": list(reads), "write": list(writes),
             "move": list(moves), "next": nxt}
        )

    for q, name in sim.items():
        for a in syms:  # input-tape symbol
            for b in syms:  # work-tape symbol
                nxt, out, move = source.delta[(q, b)]
                if a == blank:
                    # step |w|+1: the countdown is over, halt now
                    add(name, (a, b), (a, b), (RIGHT, RIGHT), accept)
                elif source.is_halting(nxt):
                    # the source finished within |w| steps: never halt again
                    add(name, (a, b), (a, out), (RIGHT, move), loop)
                else:
                    add(name, (a, b), (a, out), (RIGHT, move), sim[nxt])
    for a in syms:
        for b in syms:
            add(loop, (a, b), (a, b), (RIGHT, RIGHT), loop)

    return validate(
        {
            "type": "multi-tape",
            "states": states,
            "start": sim[source.start],
            "accept": accept,
            "reject": reject,
            "input_alphabet": list(source.input_alphabet),
            "tape_alphabet": syms,
            "blank": blank,
            "tapes": 2,
            "delta": delta,
        }
    )


# --- pass gadget (one-tape) ---------------------------------------------------

def _fresh(base: str, taken: set[str]) -> str:
    name = base
    while name in taken:
        name += "~"
    taken.add(name)
    return name


def build_pass_gadget(source: OneTapeMachine, params: GadgetParams) -> OneTapeMachine:
    """Compile the five-phase head-pass gadget for the source machine."""
    C = params.base
    n0 = params.n0
    if n0 < C or C < 6:
        raise ValueError("params must satisfy 6 <= C <= n0")
    blank = source.blank
    gamma = sorted(source.tape_alphabet)
    taken = set(gamma)
    zero = _fresh("0", taken)
    one = _fresh("1", taken)
    hash_ = _fresh("#", taken)
    prime = {a: _fresh(a + "'", taken) for a in gamma}
    unprime = {p: a for a, p in prime.items()}
    alphabet = gamma + [zero, one, hash_] + [prime[a] for a in gamma]

    source_states = [q for q in sorted(source.states) if not source.is_halting(q)]

    accept, reject = "acc", "rej"
    states: set[str] = {accept, reject}
    delta: dict[tuple[str, str], tuple[str, str, str]] = {}

    def state(name: str) -> str:
        states.add(name)
        return name

    def rule(st: str, read: str, write: str, move: str, nxt: str) -> None:
        key = (st, read)
        if key in delta:
            raise AssertionError(f"duplicate gadget rule for {key}")
        delta[key] = (nxt, write, move)

    # phase 1+2: scan the input, counting up to n0, overwriting with #1...1#
    def scan_name(i: int) -> str:
        return state(f"scan|{i}") if i < n0 else state("scan|big")

    for i in list(range(n0)) + ["big"]:
        name = f"scan|{i}" if i != "big" else "scan|big"
        state(name)
        for sym in source.input_alphabet:
            mark = hash_ if i == 0 else one
            nxt = scan_name(i + 1) if i != "big" else "scan|big"
            rule(name, sym, mark, RIGHT, nxt)
        if i == "big":
            rule(name, blank, hash_, LEFT, state("p3.seek"))
        else:
            rule(name, blank, blank, RIGHT, accept)  # n = i < n0: accept in n+1 steps

    # phase 3, opening leftward travel back to the left bracket
    rule("p3.seek", one, one, LEFT, "p3.seek")
    rule("p3.seek", hash_, hash_, RIGHT, state("p3.erase|fresh=1|kill=0|kept=0"))

    # phase 3, rightward erasure passes: blank the first live cell, then zero
    # out C-1 of every C ones; kept tracks whether any one survived this pass
    for fresh in (0, 1):
        for kill in range(C):
            for kept in (0, 1):
                name = state(f"p3.erase|fresh={fresh}|kill={kill}|kept={kept}")
                if fresh:
                    rule(name, blank, blank, RIGHT, name)  # skip the blank prefix
                    for sym in (one, zero):
                        rule(name, sym, blank, RIGHT,
                             state(f"p3.erase|fresh=0|kill=0|kept={kept}"))
                else:
                    if kill < C - 1:
                        rule(name, one, zero, RIGHT,
                             state(f"p3.erase|fresh=0|kill={kill + 1}|kept={kept}"))
                    else:
                        rule(name, one, one, RIGHT,
                             state(f"p3.erase|fresh=0|kill=0|kept=1"))
                    rule(name, zero, zero, RIGHT, name)
                nxt = "p3.back" if kept else "p3.final"
                rule(name, hash_, hash_, LEFT, state(nxt))

    # interleaved leftward passes change nothing
    for sym in (one, zero, blank):
        rule("p3.back", sym, sym, LEFT, "p3.back")
    rule("p3.back", hash_, hash_, RIGHT, "p3.erase|fresh=1|kill=0|kept=0")

    # final leftward pass once the ones are gone, then the marker insertion pass
    for sym in (zero, blank):
        rule("p3.final", sym, sym, LEFT, "p3.final")
    rule("p3.final", hash_, hash_, RIGHT, state("p3.ins1"))
    rule("p3.ins1", blank, blank, RIGHT, "p3.ins1")
    rule("p3.ins1", zero, prime[blank], RIGHT, state("p3.ins2"))
    rule("p3.ins2", zero, blank, RIGHT, state("p3.ins3"))
    rule("p3.ins3", zero, zero, RIGHT, "p3.ins3")

    # phase 4: countdown passes with one simulated source step per pass
    def p4(direction: str, q: str, kill: int, kept: int, mark: int) -> str:
        return state(f"p4.{direction}|q={q}|kill={kill}|kept={kept}|mark={mark}")

    rule("p3.ins3", hash_, hash_, LEFT, p4(LEFT, source.start, 0, 0, 0))

    def loop_state(direction: str) -> str:
        return state(f"loop.{direction}")

    for direction in (LEFT, RIGHT):
        flip = RIGHT if direction == LEFT else LEFT
        for q in source_states:
            for kill in range(C):
                for kept in (0, 1):
                    for mark in (0, 1):
                        name = p4(direction, q, kill, kept, mark)
                        if mark:
                            # the source head is in hand; plant it on arrival
                            for sym in gamma:
                                rule(name, sym, prime[sym], direction,
                                     p4(direction, q, kill, kept, 0))
                            rule(name, zero, prime[blank], direction,
                                 p4(direction, q, kill, kept, 0))
                            # bracket reached while carrying the head: the
                            # countdown zone is spent, halt
                            rule(name, hash_, hash_, flip, accept)
                            continue
                        # countdown group logic on zeros
                        if kill < C - 1:
                            rule(name, zero, blank, direction,
                                 p4(direction, q, kill + 1, kept, 0))
                        else:
                            rule(name, zero, zero, direction,
                                 p4(direction, q, 0, 1, 0))
                        # plain simulation-zone symbols pass through
                        for sym in gamma:
                            rule(name, sym, sym, direction, name)
                        # the marked cell: simulate one source step iff the
                        # source would move with the pass
                        for sym in gamma:
                            nxt, out, move = source.delta[(q, sym)]
                            if move == direction:
                                if source.is_halting(nxt):
                                    rule(name, prime[sym], out, direction,
                                         loop_state(direction))
                                else:
                                    rule(name, prime[sym], out, direction,
                                         p4(direction, nxt, kill, kept, 1))
                            else:
                                rule(name, prime[sym], prime[sym], direction, name)
                        if kept:
                            rule(name, hash_, hash_, flip, p4(flip, q, 0, 0, 0))
                        else:
                            rule(name, hash_, hash_, flip, accept)  # zeros exhausted

    # phase 5 alternative: the source halted, bounce between brackets forever
    for direction in (LEFT, RIGHT):
        flip = RIGHT if direction == LEFT else LEFT
        name = loop_state(direction)
        for sym in alphabet:
            if sym == hash_:
                rule(name, sym, sym, flip, loop_state(flip))
            else:
                rule(name, sym, sym, direction, name)

    # totality: route unreachable (state, symbol) pairs to reject
    entries = []
    for st in sorted(states):
        if st in (accept, reject):
            continue
        for sym in alphabet:
            nxt, out, move = delta.get((st, sym), (reject, sym, RIGHT))
            entries.append(
                {"state": st, "read": sym, "write": out, "move": move, "next": nxt}
            )

    return validate(
        {
            "type": "one-tape",
            "states": sorted(states),
            "start": "scan|0" if n0 > 0 else "scan|big",
            "accept": accept,
            "reject": reject,
            "input_alphabet": list(source.input_alphabet),
            "tape_alphabet": alphabet,
            "blank": blank,
            "delta": entries,
        }
    )
