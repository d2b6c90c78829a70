"""Time-bound verification toolkit for deterministic Turing machines.

Decides whether a one-tape machine runs within an explicit time bound (fully
for linear bounds C*n + D), extracts an equivalent DFA when it does, analyzes
crossing sequences, and compiles reduction gadgets.
"""

from .bounds import (
    KobayashiConstant,
    LinearBound,
    PiecewiseLinearBound,
    PolyBound,
    convergence_witness,
    decide_linear_inequality,
    find_trivial_n0,
    floor_eval,
    kobayashi_constant,
    sequence_count_bound,
)
from .crossing import CrossingRecord, TapeSegment, cut, pump, record_crossings, splice
from .decision import (
    AnalysisTables,
    CompatResult,
    Verdict,
    build_base_tables,
    check_family_inequality,
    check_time_multi_tape,
    check_time_one_tape,
    insert_part,
    probe_primitive_compat,
    realizable,
    saturate_tables,
)
from .errors import (
    BoundComputationInfeasible,
    EffortExceeded,
    ExtractionPrecondition,
    OutsideDecidableRange,
    TapecheckError,
    UnsupportedBound,
    ValidationError,
)
from .gadgets import GadgetParams, build_counting_gadget, build_pass_gadget, gadget_params
from .machines import (
    MultiTapeMachine,
    OneTapeMachine,
    RunOutcome,
    Tape,
    enumerate_inputs,
    load_machine,
    run,
    run_multi,
    validate,
)
from .regular import Dfa, combine, coverage_automaton, equivalent, extract_dfa, is_universal

__all__ = [name for name in dir() if not name.startswith("_")]
