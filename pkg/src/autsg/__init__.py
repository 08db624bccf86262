"""Transducer semigroups: act, decide, build, reduce.

Synchronous letter-to-letter transducers (Mealy automata) and the semigroups,
inverse semigroups and groups their states generate. The package computes
actions of signed state sequences on words, decides word problems under
rational constraints, ships the small example machines used throughout, and
compiles hardness reductions into checkable word-problem instances.
"""

from __future__ import annotations

from .errors import (
    AutomatonError,
    ConfigBudgetExceeded,
    LeftEdgeViolated,
    MalformedDfa,
    NotGAutomaton,
    NotInverseDeterministic,
    ParseError,
    ReservedTokenCollision,
    SpaceBoundViolated,
    UnknownLetter,
    UnknownState,
)
from .gadgets import (
    GADGET_NAMES,
    GadgetId,
    build_gadget,
    counter_sequence,
    separation_witness,
    separation_witness_dprime,
)
from .mealy import (
    BOTTOM_LETTER,
    ZERO_STATE,
    Acceptor,
    Defined,
    Letter,
    MealyAutomaton,
    PropertyReport,
    SignedState,
    State,
    StateSequence,
    UndefinedAt,
    Word,
    acceptor_accepts,
    acceptor_step,
    act_step,
    act_word,
    as_word,
    check_properties,
    complete_with_zero,
    dual,
    invert,
    union,
)
from .reductions import (
    DfaList,
    dfa_intersection_empty,
    reduce_dfa_emptiness,
    reduce_dfa_intersection,
)
from .textio import (
    DocumentSet,
    ParsedInstance,
    parse_file,
    parse_text,
    resolve_sequence,
    sequence_tokens,
    serialize_acceptor,
    serialize_automaton,
    serialize_instance,
    serialize_tm,
)
from .turing import (
    SimulationResult,
    TauTable,
    TmReductionParams,
    TuringMachineSpec,
    build_tm_automaton,
    checker_entry,
    checker_family_size,
    delta_alphabet,
    derive_tau,
    encode_computation,
    head_token,
    initial_configuration,
    reduce_tm,
    sigma_alphabet,
    simulate_tm,
    split_head,
    structured_words_acceptor,
)
from .wordproblem import (
    EQUAL,
    NOT_EQUAL,
    UNDEFINED,
    Verdict,
    WordProblemInstance,
    config_bound,
    decide,
    oracle_decide,
)

__version__ = "0.1.0"

__all__ = [
    "AutomatonError",
    "ConfigBudgetExceeded",
    "LeftEdgeViolated",
    "MalformedDfa",
    "NotGAutomaton",
    "NotInverseDeterministic",
    "ParseError",
    "ReservedTokenCollision",
    "SpaceBoundViolated",
    "UnknownLetter",
    "UnknownState",
    "GADGET_NAMES",
    "GadgetId",
    "build_gadget",
    "counter_sequence",
    "separation_witness",
    "separation_witness_dprime",
    "BOTTOM_LETTER",
    "ZERO_STATE",
    "Acceptor",
    "Defined",
    "Letter",
    "MealyAutomaton",
    "PropertyReport",
    "SignedState",
    "State",
    "StateSequence",
    "UndefinedAt",
    "Word",
    "acceptor_accepts",
    "acceptor_step",
    "act_step",
    "act_word",
    "as_word",
    "check_properties",
    "complete_with_zero",
    "dual",
    "invert",
    "union",
    "DfaList",
    "dfa_intersection_empty",
    "reduce_dfa_emptiness",
    "reduce_dfa_intersection",
    "DocumentSet",
    "ParsedInstance",
    "parse_file",
    "parse_text",
    "resolve_sequence",
    "sequence_tokens",
    "serialize_acceptor",
    "serialize_automaton",
    "serialize_instance",
    "serialize_tm",
    "SimulationResult",
    "TauTable",
    "TmReductionParams",
    "TuringMachineSpec",
    "build_tm_automaton",
    "checker_entry",
    "checker_family_size",
    "delta_alphabet",
    "derive_tau",
    "encode_computation",
    "head_token",
    "initial_configuration",
    "reduce_tm",
    "sigma_alphabet",
    "simulate_tm",
    "split_head",
    "structured_words_acceptor",
    "EQUAL",
    "NOT_EQUAL",
    "UNDEFINED",
    "Verdict",
    "WordProblemInstance",
    "config_bound",
    "decide",
    "oracle_decide",
    "__version__",
]
