"""DFA toolkit: closure combinators, universality/equivalence with shortest
counterexamples, the per-sequence part languages, the coverage automaton, and
DFA extraction from verified linear-time machines.

Automata are immutable, total, and canonically relabelled (BFS order) after
every construction, so equal languages built along different routes produce
identical state graphs more often than not and comparisons stay cheap.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .errors import EffortExceeded, ExtractionPrecondition
from .machines import Word

Seq = tuple[str, ...]

_MAX_SUBSET_STATES = 50_000


@dataclass(frozen=True, eq=False)
class Dfa:
    states: tuple[str, ...]
    alphabet: tuple[str, ...]
    start: str
    accepting: frozenset[str]
    transitions: dict[tuple[str, str], str]

    def step(self, state: str, sym: str) -> str:
        return self.transitions[(state, sym)]

    def accepts(self, word: Sequence[str]) -> bool:
        state = self.start
        for sym in word:
            state = self.transitions[(state, sym)]
        return state in self.accepting

    def as_document(self) -> dict:
        return {
            "states": list(self.states),
            "alphabet": list(self.alphabet),
            "start": self.start,
            "accepting": sorted(self.accepting),
            "transitions": [
                {"state": s, "symbol": a, "next": t}
                for (s, a), t in sorted(self.transitions.items())
            ],
        }

    @classmethod
    def from_document(cls, doc: dict) -> "Dfa":
        states = tuple(doc["states"])
        alphabet = tuple(doc["alphabet"])
        trans = {(e["state"], e["symbol"]): e["next"] for e in doc["transitions"]}
        for s in states:
            for a in alphabet:
                if (s, a) not in trans:
                    raise ValueError(f"transition map not total at ({s!r}, {a!r})")
        return cls(
            states=states,
            alphabet=alphabet,
            start=doc["start"],
            accepting=frozenset(doc["accepting"]),
            transitions=trans,
        )

    def to_dot(self, name: str = "dfa") -> str:
        lines = [f"digraph {name} {{", "  rankdir=LR;", '  __start [shape=none, label=""];']
        for s in self.states:
            shape = "doublecircle" if s in self.accepting else "circle"
            lines.append(f'  "{s}" [shape={shape}];')
        lines.append(f'  __start -> "{self.start}";')
        merged: dict[tuple[str, str], list[str]] = {}
        for (s, a), t in sorted(self.transitions.items()):
            merged.setdefault((s, t), []).append(a)
        for (s, t), syms in merged.items():
            label = ",".join(syms)
            lines.append(f'  "{s}" -> "{t}" [label="{label}"];')
        lines.append("}")
        return "\n".join(lines)


class _Enfa:
    """Epsilon-NFA used internally by the combinators; states are ints."""

    __slots__ = ("n", "start", "accepts", "edges", "eps")

    def __init__(self, n, start, accepts, edges, eps):
        self.n = n
        self.start = start
        self.accepts = accepts  # set[int]
        self.edges = edges  # dict[(int, sym)] -> set[int]
        self.eps = eps  # dict[int] -> set[int]


def _enfa_from_dfa(dfa: Dfa) -> _Enfa:
    index = {s: i for i, s in enumerate(dfa.states)}
    edges: dict[tuple[int, str], set[int]] = {}
    for (s, a), t in dfa.transitions.items():
        edges.setdefault((index[s], a), set()).add(index[t])
    return _Enfa(
        n=len(dfa.states),
        start=index[dfa.start],
        accepts={index[s] for s in dfa.accepting},
        edges=edges,
        eps={},
    )


def _shift(enfa: _Enfa, off: int) -> _Enfa:
    return _Enfa(
        n=enfa.n,
        start=enfa.start + off,
        accepts={s + off for s in enfa.accepts},
        edges={(s + off, a): {t + off for t in ts} for (s, a), ts in enfa.edges.items()},
        eps={s + off: {t + off for t in ts} for s, ts in enfa.eps.items()},
    )


def _merge_edges(parts: Iterable[_Enfa]) -> tuple[dict, dict]:
    edges: dict[tuple[int, str], set[int]] = {}
    eps: dict[int, set[int]] = {}
    for p in parts:
        for k, ts in p.edges.items():
            edges.setdefault(k, set()).update(ts)
        for s, ts in p.eps.items():
            eps.setdefault(s, set()).update(ts)
    return edges, eps


def _enfa_union(parts: list[_Enfa]) -> _Enfa:
    shifted = []
    off = 1  # state 0 is the fresh start
    for p in parts:
        shifted.append(_shift(p, off))
        off += p.n
    edges, eps = _merge_edges(shifted)
    eps.setdefault(0, set()).update(p.start for p in shifted)
    accepts = set()
    for p in shifted:
        accepts.update(p.accepts)
    return _Enfa(off, 0, accepts, edges, eps)


def _enfa_concat(a: _Enfa, b: _Enfa) -> _Enfa:
    b2 = _shift(b, a.n)
    edges, eps = _merge_edges([a, b2])
    for s in a.accepts:
        eps.setdefault(s, set()).add(b2.start)
    return _Enfa(a.n + b2.n, a.start, set(b2.accepts), edges, eps)


def _enfa_star(a: _Enfa) -> _Enfa:
    a2 = _shift(a, 1)
    edges, eps = _merge_edges([a2])
    eps.setdefault(0, set()).add(a2.start)
    for s in a2.accepts:
        eps.setdefault(s, set()).add(0)
    return _Enfa(a2.n + 1, 0, {0}, edges, eps)


def _eps_closure(enfa: _Enfa, states: frozenset[int]) -> frozenset[int]:
    out = set(states)
    stack = list(states)
    while stack:
        s = stack.pop()
        for t in enfa.eps.get(s, ()):
            if t not in out:
                out.add(t)
                stack.append(t)
    return frozenset(out)


def _determinize(enfa: _Enfa, alphabet: tuple[str, ...]) -> Dfa:
    start = _eps_closure(enfa, frozenset([enfa.start]))
    names: dict[frozenset[int], int] = {start: 0}
    order = [start]
    trans: dict[tuple[int, str], int] = {}
    queue = deque([start])
    while queue:
        cur = queue.popleft()
        ci = names[cur]
        for a in alphabet:
            nxt = set()
            for s in cur:
                nxt.update(enfa.edges.get((s, a), ()))
            closed = _eps_closure(enfa, frozenset(nxt))
            if closed not in names:
                if len(names) >= _MAX_SUBSET_STATES:
                    raise EffortExceeded("subset construction exceeded the state limit")
                names[closed] = len(names)
                order.append(closed)
                queue.append(closed)
            trans[(ci, a)] = names[closed]
    states = tuple(f"s{i}" for i in range(len(order)))
    accepting = frozenset(
        f"s{names[sub]}" for sub in order if sub & enfa.accepts
    )
    transitions = {(f"s{si}", a): f"s{ti}" for (si, a), ti in trans.items()}
    return Dfa(states, alphabet, "s0", accepting, transitions)


def minimize(dfa: Dfa) -> Dfa:
    """Hopcroft partition refinement followed by canonical BFS relabelling."""
    reachable = _reachable_states(dfa)
    states = [s for s in dfa.states if s in reachable]
    accepting = {s for s in states if s in dfa.accepting}
    rest = set(states) - accepting
    partition: list[set[str]] = [blk for blk in (accepting, rest) if blk]
    if len(partition) <= 1:
        blocks = {s: 0 for s in states}
    else:
        preds: dict[tuple[str, str], set[str]] = {}
        for s in states:
            for a in dfa.alphabet:
                preds.setdefault((dfa.transitions[(s, a)], a), set()).add(s)
        work = [min(partition, key=len)]
        while work:
            splitter = work.pop()
            for a in dfa.alphabet:
                x = set()
                for t in splitter:
                    x.update(preds.get((t, a), ()))
                if not x:
                    continue
                new_partition = []
                for blk in partition:
                    inside = blk & x
                    outside = blk - x
                    if inside and outside:
                        new_partition.extend((inside, outside))
                        if blk in work:
                            work.remove(blk)
                            work.extend((inside, outside))
                        else:
                            work.append(min(inside, outside, key=len))
                    else:
                        new_partition.append(blk)
                partition = new_partition
        blocks = {}
        for i, blk in enumerate(partition):
            for s in blk:
                blocks[s] = i

    # Canonical relabel in BFS order from the start block.
    rep: dict[int, str] = {}
    for s in states:
        rep.setdefault(blocks[s], s)
    start_block = blocks[dfa.start]
    order = [start_block]
    seen = {start_block}
    i = 0
    btrans: dict[tuple[int, str], int] = {}
    while i < len(order):
        b = order[i]
        i += 1
        for a in dfa.alphabet:
            t = blocks[dfa.transitions[(rep[b], a)]]
            btrans[(b, a)] = t
            if t not in seen:
                seen.add(t)
                order.append(t)
    rename = {b: f"s{i}" for i, b in enumerate(order)}
    new_states = tuple(rename[b] for b in order)
    new_accepting = frozenset(
        rename[b] for b in order if rep[b] in dfa.accepting
    )
    new_trans = {
        (rename[b], a): rename[t] for (b, a), t in btrans.items() if b in rename and t in rename
    }
    return Dfa(new_states, dfa.alphabet, rename[start_block], new_accepting, new_trans)


def _reachable_states(dfa: Dfa) -> set[str]:
    seen = {dfa.start}
    queue = deque([dfa.start])
    while queue:
        s = queue.popleft()
        for a in dfa.alphabet:
            t = dfa.transitions[(s, a)]
            if t not in seen:
                seen.add(t)
                queue.append(t)
    return seen


def _finish(enfa: _Enfa, alphabet: tuple[str, ...]) -> Dfa:
    return minimize(_determinize(enfa, alphabet))


# --- atoms ------------------------------------------------------------------

def nothing_dfa(alphabet: Sequence[str]) -> Dfa:
    """The empty language."""
    alphabet = tuple(alphabet)
    trans = {("s0", a): "s0" for a in alphabet}
    return Dfa(("s0",), alphabet, "s0", frozenset(), trans)


def epsilon_dfa(alphabet: Sequence[str]) -> Dfa:
    """The language containing exactly the empty word."""
    return word_dfa((), alphabet)


def word_dfa(word: Sequence[str], alphabet: Sequence[str]) -> Dfa:
    """The singleton language {word}."""
    alphabet = tuple(alphabet)
    word = tuple(word)
    n = len(word)
    states = tuple(f"s{i}" for i in range(n + 1)) + ("dead",)
    trans: dict[tuple[str, str], str] = {}
    for i in range(n + 1):
        for a in alphabet:
            if i < n and a == word[i]:
                trans[(f"s{i}", a)] = f"s{i+1}"
            else:
                trans[(f"s{i}", a)] = "dead"
    for a in alphabet:
        trans[("dead", a)] = "dead"
    return minimize(Dfa(states, alphabet, "s0", frozenset({f"s{n}"}), trans))


def universal_dfa(alphabet: Sequence[str]) -> Dfa:
    alphabet = tuple(alphabet)
    trans = {("s0", a): "s0" for a in alphabet}
    return Dfa(("s0",), alphabet, "s0", frozenset({"s0"}), trans)


# --- combinators ------------------------------------------------------------

def _require_same_alphabet(a: Dfa, b: Dfa) -> None:
    if set(a.alphabet) != set(b.alphabet):
        raise ValueError(f"alphabet mismatch: {a.alphabet} vs {b.alphabet}")


def union(a: Dfa, b: Dfa) -> Dfa:
    _require_same_alphabet(a, b)
    return _finish(_enfa_union([_enfa_from_dfa(a), _enfa_from_dfa(b)]), a.alphabet)


def concat(a: Dfa, b: Dfa) -> Dfa:
    _require_same_alphabet(a, b)
    return _finish(_enfa_concat(_enfa_from_dfa(a), _enfa_from_dfa(b)), a.alphabet)


def star(a: Dfa) -> Dfa:
    return _finish(_enfa_star(_enfa_from_dfa(a)), a.alphabet)


def combine(kind: str, a: Dfa, b: Optional[Dfa] = None) -> Dfa:
    if kind == "star":
        return star(a)
    if b is None:
        raise ValueError(f"{kind} needs two automata")
    if kind == "union":
        return union(a, b)
    if kind == "concat":
        return concat(a, b)
    raise ValueError(f"unknown combinator {kind!r}")


def union_all(parts: Sequence[Dfa], alphabet: Sequence[str]) -> Dfa:
    if not parts:
        return nothing_dfa(alphabet)
    return _finish(_enfa_union([_enfa_from_dfa(p) for p in parts]), tuple(alphabet))


def concat_all(parts: Sequence[Dfa], alphabet: Sequence[str]) -> Dfa:
    if not parts:
        return epsilon_dfa(alphabet)
    acc = _enfa_from_dfa(parts[0])
    for p in parts[1:]:
        acc = _enfa_concat(acc, _enfa_from_dfa(p))
    return _finish(acc, tuple(alphabet))


# --- decision procedures ----------------------------------------------------

def is_universal(dfa: Dfa) -> tuple[bool, Optional[Word]]:
    """True iff every reachable state accepts; else the BFS-shortest rejected word."""
    parent: dict[str, tuple[str, str]] = {}
    seen = {dfa.start}
    queue = deque([dfa.start])
    while queue:
        s = queue.popleft()
        if s not in dfa.accepting:
            word: list[str] = []
            cur = s
            while cur in parent:
                prev, a = parent[cur]
                word.append(a)
                cur = prev
            return False, tuple(reversed(word))
        for a in dfa.alphabet:
            t = dfa.transitions[(s, a)]
            if t not in seen:
                seen.add(t)
                parent[t] = (s, a)
                queue.append(t)
    return True, None


def _product_search(a: Dfa, b: Dfa, mismatch) -> tuple[bool, Optional[Word]]:
    start = (a.start, b.start)
    parent: dict[tuple[str, str], tuple[tuple[str, str], str]] = {}
    seen = {start}
    queue = deque([start])
    while queue:
        pair = queue.popleft()
        if mismatch(pair):
            word: list[str] = []
            cur = pair
            while cur in parent:
                prev, sym = parent[cur]
                word.append(sym)
                cur = prev
            return False, tuple(reversed(word))
        for sym in a.alphabet:
            nxt = (a.transitions[(pair[0], sym)], b.transitions[(pair[1], sym)])
            if nxt not in seen:
                seen.add(nxt)
                parent[nxt] = (pair, sym)
                queue.append(nxt)
    return True, None


def equivalent(a: Dfa, b: Dfa) -> tuple[bool, Optional[Word]]:
    """Exact language equality; counterexample is BFS-shortest."""
    _require_same_alphabet(a, b)
    return _product_search(
        a, b, lambda pair: (pair[0] in a.accepting) != (pair[1] in b.accepting)
    )


def included_in(a: Dfa, b: Dfa) -> tuple[bool, Optional[Word]]:
    """L(a) subset of L(b); counterexample accepted by a, rejected by b."""
    _require_same_alphabet(a, b)
    return _product_search(
        a, b, lambda pair: pair[0] in a.accepting and pair[1] not in b.accepting
    )


# --- part languages and coverage --------------------------------------------

PartsMap = dict[Seq, dict[Word, tuple[Seq, ...]]]
# parts[s][y] = crossing sequences on the internal boundaries 1..|y|-1 of y


def language_of_sequence(
    s: Seq,
    s_tilde: frozenset[Seq],
    parts: PartsMap,
    alphabet: Sequence[str],
    memo: Optional[dict] = None,
) -> Dfa:
    """Automaton for the words that fit between two occurrences of sequence s
    while producing only crossing sequences from s_tilde.

    Recursion on |s_tilde|: each part word y usable under s contributes the
    concatenation y1 L(s1) y2 L(s2) ... y_k, where the sub-languages are taken
    over s_tilde minus s; the union of all contributions is starred.  With no
    usable parts the result is the {empty word} language (the star of an empty
    union), which keeps the recursion uniform.
    """
    if s not in s_tilde:
        raise ValueError("sequence must be a member of the sequence set")
    if memo is None:
        memo = {}
    key = (s, s_tilde)
    if key in memo:
        return memo[key]
    rest = s_tilde - {s}
    alphabet = tuple(alphabet)
    terms = []
    for y in sorted(parts.get(s, {})):
        internals = parts[s][y]
        if not all(t in rest for t in internals):
            continue
        pieces = []
        for i, sym in enumerate(y):
            pieces.append(word_dfa((sym,), alphabet))
            if i < len(y) - 1:
                pieces.append(language_of_sequence(internals[i], rest, parts, alphabet, memo))
        terms.append(concat_all(pieces, alphabet))
    dfa = star(union_all(terms, alphabet)) if terms else epsilon_dfa(alphabet)
    memo[key] = dfa
    return dfa


def _base_word_term(
    word: Word,
    seqs: tuple[Seq, ...],
    s_all: frozenset[Seq],
    parts: PartsMap,
    alphabet: tuple[str, ...],
    memo: dict,
) -> Dfa:
    pieces = []
    for i, sym in enumerate(word):
        pieces.append(word_dfa((sym,), alphabet))
        pieces.append(language_of_sequence(seqs[i], s_all, parts, alphabet, memo))
    return concat_all(pieces, alphabet)


def coverage_automaton(
    x_items: Iterable[tuple[Word, tuple[Seq, ...]]],
    parts: PartsMap,
    s_all: frozenset[Seq],
    alphabet: Sequence[str],
) -> Dfa:
    """Automaton for every word constructible from a base word by inserting
    parts at matching boundaries, plus the empty word."""
    alphabet = tuple(alphabet)
    memo: dict = {}
    terms = [epsilon_dfa(alphabet)]
    for word, seqs in sorted(x_items):
        if not word:
            continue
        terms.append(_base_word_term(word, seqs, s_all, parts, alphabet, memo))
    return union_all(terms, alphabet)


def acceptance_automaton(
    accepted_items: Iterable[tuple[Word, tuple[Seq, ...]]],
    parts: PartsMap,
    s_all: frozenset[Seq],
    alphabet: Sequence[str],
    accepts_epsilon: bool,
) -> Dfa:
    """Automaton for the accepted language of a verified machine: the union of
    the accepted base-word terms, plus the empty word iff it is accepted."""
    alphabet = tuple(alphabet)
    memo: dict = {}
    terms = [epsilon_dfa(alphabet)] if accepts_epsilon else []
    for word, seqs in sorted(accepted_items):
        if not word:
            continue
        terms.append(_base_word_term(word, seqs, s_all, parts, alphabet, memo))
    return union_all(terms, alphabet)


def extract_dfa(machine, C: int, D: int, effort: int = 5_000_000) -> Dfa:
    """Equivalent DFA for a one-tape machine verified to run within C*n + D.

    Raises ExtractionPrecondition when the verification does not come back
    positive (in particular for D = 0, where no machine can comply: it would
    have to make no step on the empty input).
    """
    from . import decision
    from .bounds import LinearBound

    bound = LinearBound(C, D)
    verdict = decision.check_time_one_tape(machine, bound, effort=effort)
    if verdict.kind != decision.RUNS_IN_TIME:
        raise ExtractionPrecondition(
            f"machine was not verified to run in time {C}n+{D}: {verdict.kind} ({verdict.detail})"
        )
    alphabet = tuple(machine.input_alphabet)
    if verdict.trivial_n0 is not None:
        return _prefix_table_dfa(machine, bound, verdict.trivial_n0, alphabet)
    tables = verdict.tables
    accepted = [
        (entry.word, entry.seqs) for entry in tables.X.values() if entry.accepted
    ]
    eps_accepted = tables.X[()].accepted
    return acceptance_automaton(
        accepted, tables.parts_map(), frozenset(tables.S), alphabet, eps_accepted
    )


def _prefix_table_dfa(machine, bound, n0: int, alphabet: tuple[str, ...]) -> Dfa:
    """Behavior table for the trivial branch: runs are settled by the first n0
    symbols, so a depth-n0 prefix trie with absorbing leaves is exact."""
    from .machines import run

    if len(alphabet) ** max(n0, 0) > 200_000:
        raise EffortExceeded("prefix table too large for the trivial-branch extraction")

    def accepted(prefix: Word) -> bool:
        return run(machine, prefix, bound.floor_eval(len(prefix)) + 1).accepted

    names: dict[Word, str] = {(): "p0"}
    trans: dict[tuple[str, str], str] = {}
    accepting = set()
    stack: list[Word] = [()]
    while stack:
        p = stack.pop()
        if accepted(p):
            accepting.add(names[p])
        for a in alphabet:
            child = p if len(p) == n0 else p + (a,)
            if child not in names:
                names[child] = f"p{len(names)}"
                stack.append(child)
            trans[(names[p], a)] = names[child]
    return minimize(
        Dfa(
            states=tuple(names.values()),
            alphabet=alphabet,
            start="p0",
            accepting=frozenset(accepting),
            transitions=trans,
        )
    )
