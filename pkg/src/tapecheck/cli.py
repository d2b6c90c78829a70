"""Command-line front end.

Exit codes: 0 the verdict is positive (or the command succeeded), 1 a
violation was found, 2 the analysis was inconclusive, 3 usage or input error,
4 a certified bound constant was infeasible to compute.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from typing import Optional

from . import decision, gadgets, regular
from .bounds import TimeBound, load_bound_table, parse_bound_spec
from .crossing import record_crossings
from .errors import (
    BoundComputationInfeasible,
    OutsideDecidableRange,
    TapecheckError,
    UnsupportedBound,
    ValidationError,
)
from .machines import (
    MultiTapeMachine,
    OneTapeMachine,
    Tape,
    enumerate_inputs,
    run,
    run_multi,
    validate,
    word_from_string,
    word_to_string,
)

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_INCONCLUSIVE = 2
EXIT_USAGE = 3
EXIT_INFEASIBLE = 4


def _load_machine(path: str) -> tuple[OneTapeMachine | MultiTapeMachine, str]:
    with open(path, "rb") as fh:
        raw = fh.read()
    digest = hashlib.sha256(raw).hexdigest()
    return validate(json.loads(raw.decode("utf-8"))), digest


def _load_bound(args) -> TimeBound:
    if getattr(args, "bound_table", None):
        with open(args.bound_table, "r", encoding="utf-8") as fh:
            return load_bound_table(json.load(fh))
    if getattr(args, "bound", None):
        return parse_bound_spec(args.bound)
    raise ValidationError("a bound is required: pass --bound C,D or --bound-table PATH")


def _emit(report: dict, args) -> None:
    text = json.dumps(report, indent=2, sort_keys=True)
    print(text)
    path = getattr(args, "report", None)
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")


def _report_scaffold(command: str, digest: Optional[str], started: float) -> dict:
    return {
        "command": command,
        "machine": {"sha256": digest} if digest else None,
        "wallTimeSec": round(time.perf_counter() - started, 6),
    }


def _cmd_simulate(args) -> int:
    started = time.perf_counter()
    machine, digest = _load_machine(args.machine)
    word = word_from_string(args.input, machine.input_alphabet)
    if isinstance(machine, MultiTapeMachine):
        outcome = run_multi(machine, word, args.budget)
    else:
        outcome = run(machine, word, args.budget)
    report = _report_scaffold("simulate", digest, started)
    report["input"] = word_to_string(word)
    report["outcome"] = outcome.as_dict()
    _emit(report, args)
    return EXIT_OK


def _cmd_crossings(args) -> int:
    started = time.perf_counter()
    machine, digest = _load_machine(args.machine)
    if not isinstance(machine, OneTapeMachine):
        raise ValidationError("crossing sequences are defined for one-tape machines only")
    word = word_from_string(args.input, machine.input_alphabet)
    outcome, record = record_crossings(
        machine, Tape.from_word(word, machine.blank), args.budget
    )
    report = _report_scaffold("crossings", digest, started)
    report["outcome"] = outcome.status
    report["steps"] = outcome.steps
    report["boundaries"] = record.as_dict()
    _emit(report, args)
    return EXIT_OK


def _verdict_report(command, digest, started, verdict, args) -> int:
    report = _report_scaffold(command, digest, started)
    report["verdict"] = verdict.as_dict()
    _emit(report, args)
    return verdict.exit_code


def _cmd_check(args) -> int:
    started = time.perf_counter()
    machine, digest = _load_machine(args.machine)
    if not isinstance(machine, OneTapeMachine):
        raise ValidationError("check handles one-tape machines; use check-multi")
    bound = _load_bound(args)
    verdict = decision.check_time_one_tape(
        machine, bound, cap_c=args.cap_c, max_len=args.max_len, effort=args.effort
    )
    return _verdict_report("check", digest, started, verdict, args)


def _cmd_check_multi(args) -> int:
    started = time.perf_counter()
    machine, digest = _load_machine(args.machine)
    if not isinstance(machine, MultiTapeMachine):
        raise ValidationError("check-multi handles multi-tape machines; use check")
    bound = _load_bound(args)
    verdict = decision.check_time_multi_tape(machine, bound)
    return _verdict_report("check-multi", digest, started, verdict, args)


def _cmd_oracle(args) -> int:
    """Necessary-condition check by brute force, independent of the decision
    pipeline: simulate every input up to --max-len under budget floor(T)+1."""
    started = time.perf_counter()
    machine, digest = _load_machine(args.machine)
    bound = _load_bound(args)
    simulate = run_multi if isinstance(machine, MultiTapeMachine) else run
    witness = None
    checked = 0
    for word in enumerate_inputs(machine.input_alphabet, args.max_len):
        floor = bound.floor_eval(len(word))
        outcome = simulate(machine, word, floor + 1)
        checked += 1
        if not outcome.halted or outcome.steps > floor:
            witness = word
            break
    report = _report_scaffold("oracle", digest, started)
    report["checked"] = checked
    report["maxLen"] = args.max_len
    if witness is None:
        report["result"] = "pass"
        _emit(report, args)
        return EXIT_OK
    report["result"] = "violation"
    report["witness"] = word_to_string(witness)
    _emit(report, args)
    return EXIT_VIOLATION


def _cmd_extract_dfa(args) -> int:
    started = time.perf_counter()
    machine, digest = _load_machine(args.machine)
    if not isinstance(machine, OneTapeMachine):
        raise ValidationError("extract-dfa handles one-tape machines only")
    dfa = regular.extract_dfa(machine, args.C, args.D, effort=args.effort)
    with open(args.out, "w", encoding="utf-8") as fh:
        json.dump(dfa.as_document(), fh, indent=2, sort_keys=True)
        fh.write("\n")
    if args.dot:
        with open(args.dot, "w", encoding="utf-8") as fh:
            fh.write(dfa.to_dot() + "\n")
    report = _report_scaffold("extract-dfa", digest, started)
    report["out"] = args.out
    report["dot"] = args.dot
    report["states"] = len(dfa.states)
    _emit(report, args)
    return EXIT_OK


def _cmd_gadget(args) -> int:
    started = time.perf_counter()
    machine, digest = _load_machine(args.machine)
    if not isinstance(machine, OneTapeMachine):
        raise ValidationError("gadgets compile one-tape source machines")
    if args.kind == "counting":
        compiled = gadgets.build_counting_gadget(machine)
        params = None
    else:
        bound = _load_bound(args)
        params = gadgets.gadget_params(bound)
        compiled = gadgets.build_pass_gadget(machine, params)
    with open(args.out, "w", encoding="utf-8") as fh:
        json.dump(compiled.as_document(), fh, indent=2, sort_keys=True)
        fh.write("\n")
    report = _report_scaffold("gadget", digest, started)
    report["kind"] = args.kind
    report["out"] = args.out
    report["states"] = len(compiled.states)
    if params is not None:
        report["params"] = {"C": params.base, "n0": params.n0}
    _emit(report, args)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tapecheck",
        description="Verify Turing machine time bounds, extract DFAs, compile gadgets.",
    )
    parser.add_argument("--seed", type=int, default=20240801,
                        help="seed recorded for reproducibility of randomized tooling")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, bound=False):
        p.add_argument("--machine", required=True, help="machine document (JSON)")
        p.add_argument("--report", help="also write the JSON report to this path")
        if bound:
            p.add_argument("--bound", help="linear bound as 'C,D'")
            p.add_argument("--bound-table", help="bound table document (JSON)")

    p = sub.add_parser("simulate", help="run a machine on one input")
    add_common(p)
    p.add_argument("--input", required=True)
    p.add_argument("--budget", type=int, required=True)
    p.set_defaults(fn=_cmd_simulate)

    p = sub.add_parser("crossings", help="record crossing sequences for one input")
    add_common(p)
    p.add_argument("--input", required=True)
    p.add_argument("--budget", type=int, required=True)
    p.set_defaults(fn=_cmd_crossings)

    p = sub.add_parser("check", help="decide whether a one-tape machine meets the bound")
    add_common(p, bound=True)
    p.add_argument("--cap-c", type=int, default=None, dest="cap_c",
                   help="user cap on crossing-sequence length (answers become inconclusive)")
    p.add_argument("--max-len", type=int, default=None, dest="max_len",
                   help="user cap on enumerated input length")
    p.add_argument("--effort", type=int, default=decision.DEFAULT_EFFORT)
    p.add_argument("--jobs", type=int, default=1, help="worker cap (simulations are cheap; kept for interface stability)")
    p.set_defaults(fn=_cmd_check)

    p = sub.add_parser("check-multi", help="decide the bound for a multi-tape machine")
    add_common(p, bound=True)
    p.set_defaults(fn=_cmd_check_multi)

    p = sub.add_parser("oracle", help="brute-force necessary-condition check")
    add_common(p, bound=True)
    p.add_argument("--max-len", type=int, required=True, dest="max_len")
    p.set_defaults(fn=_cmd_oracle)

    p = sub.add_parser("extract-dfa", help="extract an equivalent DFA from a verified machine")
    add_common(p)
    p.add_argument("--C", type=int, required=True)
    p.add_argument("--D", type=int, required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--dot", default=None)
    p.add_argument("--effort", type=int, default=decision.DEFAULT_EFFORT)
    p.set_defaults(fn=_cmd_extract_dfa)

    p = sub.add_parser("gadget", help="compile a reduction gadget from a source machine")
    add_common(p, bound=True)
    p.add_argument("--kind", choices=("counting", "pass"), required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(fn=_cmd_gadget)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else 0
    try:
        return args.fn(args)
    except BoundComputationInfeasible as exc:
        print(json.dumps({"error": str(exc), "kind": "infeasible-bound"}, indent=2))
        return EXIT_INFEASIBLE
    except (OutsideDecidableRange, UnsupportedBound, ValidationError, ValueError) as exc:
        print(json.dumps({"error": str(exc), "kind": "usage"}, indent=2))
        return EXIT_USAGE
    except TapecheckError as exc:
        print(json.dumps({"error": str(exc), "kind": "error"}, indent=2))
        return EXIT_USAGE
    except OSError as exc:
        print(json.dumps({"error": str(exc), "kind": "io"}, indent=2))
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
