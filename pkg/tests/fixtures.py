"""Machine fixtures shared across the suite, as documents and validated machines."""

from tapecheck.machines import validate

BLANK = "_"


def one_tape_doc(delta_rows, states, start="q0", sigma=("a",), gamma=None):
    gamma = list(gamma) if gamma else sorted(set(sigma) | {BLANK})
    return {
        "type": "one-tape",
        "states": list(states),
        "start": start,
        "accept": "qa",
        "reject": "qr",
        "input_alphabet": list(sigma),
        "tape_alphabet": gamma,
        "blank": BLANK,
        "delta": [
            {"state": s, "read": r, "write": w, "move": m, "next": n}
            for s, r, w, m, n in delta_rows
        ],
    }


def m_right_doc():
    """Scans right over a's and accepts at the first blank; n+1 steps on a^n."""
    return one_tape_doc(
        [
            ("q0", "a", "a", "R", "q0"),
            ("q0", BLANK, BLANK, "R", "qa"),
        ],
        ["q0", "qa", "qr"],
    )


def m_loop_doc():
    """Moves right forever on every symbol."""
    return one_tape_doc(
        [
            ("q0", "a", "a", "R", "q0"),
            ("q0", BLANK, BLANK, "R", "q0"),
        ],
        ["q0", "qa", "qr"],
    )


def m_parity_doc():
    """Single left-to-right scan; accepts words over {a, b} with evenly many a's."""
    return one_tape_doc(
        [
            ("qe", "a", "a", "R", "qo"),
            ("qe", "b", "b", "R", "qe"),
            ("qe", BLANK, BLANK, "R", "qa"),
            ("qo", "a", "a", "R", "qe"),
            ("qo", "b", "b", "R", "qo"),
            ("qo", BLANK, BLANK, "R", "qr"),
        ],
        ["qe", "qo", "qa", "qr"],
        start="qe",
        sigma=("a", "b"),
    )


def m_sweep_doc():
    """Scans right to the first blank, sweeps back past the start, accepts;
    exactly 2n+2 steps on a^n, crossing sequences of length 2 inside the word."""
    return one_tape_doc(
        [
            ("q0", "a", "a", "R", "q0"),
            ("q0", BLANK, BLANK, "L", "ql"),
            ("ql", "a", "a", "L", "ql"),
            ("ql", BLANK, BLANK, "R", "qa"),
        ],
        ["q0", "ql", "qa", "qr"],
    )


def m_zigzag_doc():
    """Three full passes (right, left, right), then accept; exactly 3n+3
    steps on a^n, crossing sequences of length 3 at every input boundary."""
    return one_tape_doc(
        [
            ("q0", "a", "a", "R", "q0"),
            ("q0", BLANK, BLANK, "L", "ql"),
            ("ql", "a", "a", "L", "ql"),
            ("ql", BLANK, BLANK, "R", "q2"),
            ("q2", "a", "a", "R", "q2"),
            ("q2", BLANK, BLANK, "R", "qa"),
        ],
        ["q0", "ql", "q2", "qa", "qr"],
    )


def m_mod3_doc():
    """Single scan accepting words over {a, b} whose a-count is divisible by 3."""
    rows = []
    for i in range(3):
        rows.append((f"q{i}", "a", "a", "R", f"q{(i + 1) % 3}"))
        rows.append((f"q{i}", "b", "b", "R", f"q{i}"))
        rows.append((f"q{i}", BLANK, BLANK, "R", "qa" if i == 0 else "qr"))
    return one_tape_doc(
        rows, ["q0", "q1", "q2", "qa", "qr"], sigma=("a", "b")
    )


def m_reject_all_doc():
    """Rejects every input in one step."""
    return one_tape_doc(
        [
            ("q0", "a", "a", "R", "qr"),
            ("q0", BLANK, BLANK, "R", "qr"),
        ],
        ["q0", "qa", "qr"],
    )


def h_immediate_doc():
    """Halts (accepts) on its first step, whatever it reads."""
    return one_tape_doc(
        [
            ("q0", "a", "a", "R", "qa"),
            ("q0", BLANK, BLANK, "R", "qa"),
        ],
        ["q0", "qa", "qr"],
    )


def h_two_step_doc():
    """Halts on the empty input after exactly two steps."""
    return one_tape_doc(
        [
            ("q0", "a", "a", "R", "q1"),
            ("q0", BLANK, BLANK, "R", "q1"),
            ("q1", "a", "a", "R", "qa"),
            ("q1", BLANK, BLANK, "R", "qa"),
        ],
        ["q0", "q1", "qa", "qr"],
    )


def multi_tape_doc(states, delta_rows, start="s0", sigma=("a",)):
    gamma = sorted(set(sigma) | {BLANK})
    return {
        "type": "multi-tape",
        "states": list(states),
        "start": start,
        "accept": "qa",
        "reject": "qr",
        "input_alphabet": list(sigma),
        "tape_alphabet": gamma,
        "blank": BLANK,
        "tapes": 2,
        "delta": [
            {"state": s, "read": list(r), "write": list(w), "move": list(m), "next": n}
            for s, r, w, m, n in delta_rows
        ],
    }


def mt_const3_doc():
    """Two-tape machine that always halts after exactly 3 steps."""
    rows = []
    syms = ["a", BLANK]
    chain = {"s0": "s1", "s1": "s2", "s2": "qa"}
    for st, nxt in chain.items():
        for x in syms:
            for y in syms:
                rows.append((st, (x, y), (x, y), ("R", "R"), nxt))
    return multi_tape_doc(["s0", "s1", "s2", "qa", "qr"], rows)


def mt_scanner_doc():
    """Two-tape machine that walks its whole input: n+1 steps on a^n."""
    rows = []
    syms = ["a", BLANK]
    for x in syms:
        for y in syms:
            nxt = "qa" if x == BLANK else "s0"
            rows.append(("s0", (x, y), (x, y), ("R", "R"), nxt))
    return multi_tape_doc(["s0", "qa", "qr"], rows)


def m_right():
    return validate(m_right_doc())


def m_loop():
    return validate(m_loop_doc())


def m_parity():
    return validate(m_parity_doc())


def m_sweep():
    return validate(m_sweep_doc())


def m_zigzag():
    return validate(m_zigzag_doc())


def m_mod3():
    return validate(m_mod3_doc())


def m_reject_all():
    return validate(m_reject_all_doc())


def h_immediate():
    return validate(h_immediate_doc())


def h_loop():
    return validate(m_loop_doc())


def h_two_step():
    return validate(h_two_step_doc())


def mt_const3():
    return validate(mt_const3_doc())


def mt_scanner():
    return validate(mt_scanner_doc())


PARITY_REFERENCE = {
    "states": ("e", "o"),
    "alphabet": ("a", "b"),
    "start": "e",
    "accepting": frozenset({"e"}),
    "transitions": {
        ("e", "a"): "o",
        ("e", "b"): "e",
        ("o", "a"): "e",
        ("o", "b"): "o",
    },
}
