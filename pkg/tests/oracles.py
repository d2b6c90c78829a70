"""Independent oracles used to derive and cross-check expected values.

These deliberately avoid the production code paths they check: brute-force
enumeration instead of closed forms, mpmath instead of the gmpy2 interval
arithmetic, direct simulation instead of table composition.
"""

import itertools
import random

from mpmath import mp, mpf, log, sqrt, exp

from tapecheck.machines import enumerate_inputs, run, run_multi


def brute_force_linear_inequality(C, D, A, B, xmax=60):
    """Does T(A0 + sum x_i A_i) < B0 + sum x_i B_i hold for some x_i <= xmax?"""
    k = len(A) - 1
    for xs in itertools.product(range(xmax + 1), repeat=k):
        arg = A[0] + sum(x * a for x, a in zip(xs, A[1:]))
        rhs = B[0] + sum(x * b for x, b in zip(xs, B[1:]))
        if C * arg + D < rhs:
            return True
    return False


def sample_linear_inequality(C, D, A, B, rng, trials=2000, xmax=10**4):
    """Randomized search for a witness with larger coordinates."""
    k = len(A) - 1
    for _ in range(trials):
        xs = [rng.randint(0, xmax) for _ in range(k)]
        arg = A[0] + sum(x * a for x, a in zip(xs, A[1:]))
        rhs = B[0] + sum(x * b for x, b in zip(xs, B[1:]))
        if C * arg + D < rhs:
            return True
    return False


def crossing_inequality_violations(q, bound_eval, c, lo, hi, prec_bits=200):
    """Scan the crossing-length inequality at 200-bit precision with mpmath.

    bound_eval(n) must return T(n) as an exact int or Fraction.  Returns the
    list of violating n in [lo, hi].
    """
    old = mp.prec
    mp.prec = prec_bits
    try:
        qm = mpf(q)
        log2 = log(mpf(2))
        lq = log(qm) / log2
        bad = []
        for n in range(lo, hi + 1):
            nn = mpf(n)
            ln = log(nn) / log2
            t = bound_eval(n)
            g = nn * ln / mpf(t)
            sg = sqrt(g)
            lhs = 3 * (qm * exp(log(nn) * lq / sg) - 1) / (qm - 1)
            rhs = nn - 3 - nn / sg + c * sg / ln
            if lhs > rhs:
                bad.append(n)
        return bad
    finally:
        mp.prec = old


def first_budget_breach(machine, bound, max_len, multi=False):
    """Shortlex-first input whose run exceeds floor(T(n)) steps, or None."""
    simulate = run_multi if multi else run
    for word in enumerate_inputs(machine.input_alphabet, max_len):
        floor = bound.floor_eval(len(word))
        outcome = simulate(machine, word, floor + 1)
        if not outcome.halted or outcome.steps > floor:
            return word
    return None


def realizable_by_order_search(x_seqs, family, internals_of):
    """Exhaustive insertion-order search: is there an order in which every
    (sequence, part) pair finds its sequence available when inserted?"""
    for order in itertools.permutations(family):
        available = set(x_seqs)
        ok = True
        for s, y in order:
            if s not in available:
                ok = False
                break
            available.update(internals_of(s, y))
        if ok:
            return True
    return not family


def language_by_enumeration(dfa, max_len):
    """The accepted language up to max_len as a set of words."""
    return {
        w for w in enumerate_inputs(dfa.alphabet, max_len) if dfa.accepts(w)
    }


def random_total_machine(rng: random.Random, n_work_states=2, n_input_syms=2):
    """A random total one-tape machine document with small state/symbol counts."""
    from fixtures import BLANK, one_tape_doc

    sigma = ["a", "b", "c"][:n_input_syms]
    gamma = sigma + [BLANK]
    work = [f"q{i}" for i in range(n_work_states)]
    states = work + ["qa", "qr"]
    rows = []
    for s in work:
        for sym in gamma:
            rows.append(
                (
                    s,
                    sym,
                    rng.choice(gamma),
                    rng.choice(["L", "R"]),
                    rng.choice(states),
                )
            )
    return one_tape_doc(rows, states, start="q0", sigma=sigma, gamma=gamma)
