"""Word problems with rational constraints.

Given two state sequences over one automaton and a set of constraint
acceptors, decide whether the sequences act identically (as partial maps) on
every word in the constraint intersection. Partial semantics: two sides agree
on a word when both are undefined, or both are defined with equal outputs;
a defined/undefined asymmetry is a difference.

decide() runs a breadth-first search over joint configurations
(per-side item states or a dead marker, one subset per constraint acceptor,
and a divergence flag). A configuration witnesses inequality when every
acceptor subset meets its final states and either both sides are alive with
diverged outputs or exactly one side is alive. Deduplication is sound because
the witness predicate and the successor relation depend only on the
configuration, and breadth-first order with letter-sorted expansion makes the
returned witness the length-then-lex least one.

oracle_decide() answers the same question bounded by a word length. Its
default implementation is the same deduplicated search cut at that depth,
which returns results bit-identical to literal length-then-lex enumeration
(if two words share a configuration, every extension of the earlier word
precedes the same extension of the later one, so pruning the later word never
skips the first witness). naive=True switches to the literal enumeration for
cross-validation at small bounds.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from typing import Iterable

from .errors import ConfigBudgetExceeded
from .mealy import (
    Acceptor,
    Defined,
    MealyAutomaton,
    SeqItem,
    SignedState,
    StateSequence,
    Word,
    acceptor_accepts,
    act_step,
    act_word,
)

EQUAL = "Equal"
NOT_EQUAL = "NotEqual"


class _UndefinedType:
    """Marker for an undefined side value in a Verdict."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "Undefined"


UNDEFINED = _UndefinedType()


@dataclass(frozen=True)
class WordProblemInstance:
    automaton: MealyAutomaton
    lhs: StateSequence
    rhs: StateSequence
    constraints: tuple[Acceptor, ...] = ()

    def __init__(
        self,
        automaton: MealyAutomaton,
        lhs: StateSequence | Iterable[SeqItem],
        rhs: StateSequence | Iterable[SeqItem],
        constraints: Iterable[Acceptor] = (),
    ):
        if not isinstance(lhs, StateSequence):
            lhs = StateSequence(lhs)
        if not isinstance(rhs, StateSequence):
            rhs = StateSequence(rhs)
        constraints = tuple(constraints)
        for seq in (lhs, rhs):
            for item in seq:
                if item.base not in automaton.states:
                    raise ValueError(
                        f"sequence item {item!r} is not a state of {automaton.name}"
                    )
        for acc in constraints:
            if acc.alphabet != automaton.alphabet:
                raise ValueError(
                    f"constraint {acc.name} alphabet differs from {automaton.name}'s"
                )
        object.__setattr__(self, "automaton", automaton)
        object.__setattr__(self, "lhs", lhs)
        object.__setattr__(self, "rhs", rhs)
        object.__setattr__(self, "constraints", constraints)


@dataclass(frozen=True)
class Verdict:
    """kind is Equal or NotEqual. For NotEqual, witness is the
    length-then-lex least differing word and lhs_value/rhs_value are the two
    sides' values on it (a Word, or UNDEFINED). bounded marks an Equal that
    was only established up to a length bound."""

    kind: str
    witness: Word | None = None
    lhs_value: object = None
    rhs_value: object = None
    bounded: bool = False


def config_bound(inst: WordProblemInstance) -> int:
    """Upper bound on distinct search configurations: each sequence item is
    one of |Q| states or dead, each acceptor contributes its subset lattice,
    and the divergence flag doubles everything."""
    n = len(inst.lhs) + len(inst.rhs)
    bound = (len(inst.automaton.states) + 1) ** n * 2
    for acc in inst.constraints:
        bound *= 2 ** len(acc.states)
    return bound


def _advance_side(automaton, items, letter):
    """Thread one input letter through a side, rightmost item first.
    items is a tuple of SignedState or None for an already-dead side.
    Returns (new items or None, output letter or None)."""
    if items is None:
        return None, None
    cur = letter
    new = list(items)
    trans = automaton.transitions
    for i in range(len(new) - 1, -1, -1):
        s = new[i]
        if not s.inverted:
            hit = trans.get((s.base, cur))
            if hit is None:
                return None, None
            cur, nxt = hit
            new[i] = SignedState(nxt)
        else:
            step = act_step(automaton, s, cur)
            if step is None:
                return None, None
            cur, new[i] = step
    return tuple(new), cur


def _is_witness(cfg, finals) -> bool:
    lhs, rhs, subs, diverged = cfg
    for sub, fin in zip(subs, finals):
        if not (sub & fin):
            return False
    if lhs is not None and rhs is not None:
        return diverged
    return True  # exactly one alive; both-dead configs are never enqueued


def _values(inst: WordProblemInstance, word: Word):
    lv = act_word(inst.automaton, inst.lhs, word)
    rv = act_word(inst.automaton, inst.rhs, word)
    lhs_value = lv.output if isinstance(lv, Defined) else UNDEFINED
    rhs_value = rv.output if isinstance(rv, Defined) else UNDEFINED
    return lhs_value, rhs_value


def _search(
    inst: WordProblemInstance,
    max_depth: int | None,
    max_configs: int | None,
    bounded_equal: bool,
) -> Verdict:
    automaton = inst.automaton
    letters = sorted(automaton.alphabet)
    accs = inst.constraints
    step_maps = [acc.step_map() for acc in accs]
    finals = [acc.final for acc in accs]
    init = (
        tuple(inst.lhs.items),
        tuple(inst.rhs.items),
        tuple(acc.initial for acc in accs),
        False,
    )
    parents: dict = {init: None}
    if _is_witness(init, finals):
        lhs_value, rhs_value = _values(inst, ())
        return Verdict(NOT_EQUAL, (), lhs_value, rhs_value)
    queue = deque([(init, 0)])
    while queue:
        cfg, depth = queue.popleft()
        if max_depth is not None and depth >= max_depth:
            continue
        lhs, rhs, subs, diverged = cfg
        for letter in letters:
            new_subs = []
            empty_language = False
            for m, sub in zip(step_maps, subs):
                nxt: set = set()
                for q in sub:
                    nxt.update(m.get((q, letter), ()))
                if not nxt:
                    empty_language = True
                    break
                new_subs.append(frozenset(nxt))
            if empty_language:
                continue
            lhs2, out_l = _advance_side(automaton, lhs, letter)
            rhs2, out_r = _advance_side(automaton, rhs, letter)
            if lhs2 is None and rhs2 is None:
                continue
            if lhs2 is not None and rhs2 is not None:
                diverged2 = diverged or (out_l != out_r)
            else:
                diverged2 = False
            child = (lhs2, rhs2, tuple(new_subs), diverged2)
            if child in parents:
                continue
            parents[child] = (cfg, letter)
            if _is_witness(child, finals):
                chain = []
                node = child
                while parents[node] is not None:
                    node, tok = parents[node]
                    chain.append(tok)
                witness = tuple(reversed(chain))
                lhs_value, rhs_value = _values(inst, witness)
                return Verdict(NOT_EQUAL, witness, lhs_value, rhs_value)
            if max_configs is not None and len(parents) > max_configs:
                raise ConfigBudgetExceeded(
                    f"more than {max_configs} configurations explored"
                )
            queue.append((child, depth + 1))
    return Verdict(EQUAL, bounded=bounded_equal)


def decide(inst: WordProblemInstance, max_configs: int | None = None) -> Verdict:
    """Decide the constrained word problem exactly.

    Raises ConfigBudgetExceeded when the explored configuration count passes
    the caller-supplied cap; with no cap, termination follows from the finite
    configuration space (see config_bound)."""
    return _search(inst, max_depth=None, max_configs=max_configs, bounded_equal=False)


def oracle_decide(
    inst: WordProblemInstance, max_len: int, naive: bool = False
) -> Verdict:
    """Bounded reference decision.

    Semantics: enumerate every word of length <= max_len in length-then-lex
    order (sorted letter tokens), keep those inside every constraint
    language, and report the first word on which the sides' partial values
    differ; Equal verdicts carry bounded=True. The default implementation is
    the deduplicated search (provably identical results); naive=True performs
    the literal enumeration and is only sensible for small bounds.
    """
    if max_len < 0:
        raise ValueError("max_len must be >= 0")
    if not naive:
        return _search(inst, max_depth=max_len, max_configs=None, bounded_equal=True)
    automaton = inst.automaton
    letters = sorted(automaton.alphabet)
    for length in range(max_len + 1):
        for combo in itertools.product(letters, repeat=length):
            if not all(acceptor_accepts(acc, combo) for acc in inst.constraints):
                continue
            lhs_value, rhs_value = _values(inst, combo)
            if lhs_value != rhs_value:
                return Verdict(NOT_EQUAL, combo, lhs_value, rhs_value)
    return Verdict(EQUAL, bounded=True)
