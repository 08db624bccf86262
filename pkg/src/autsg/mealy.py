"""Core transducer types and operations.

A Mealy automaton here is a letter-to-letter synchronous transducer over a
single alphabet: every transition reads one letter and emits one letter, so
each state induces a length-preserving partial map on words. Sequences of
(possibly inverted) states act by composition, with the rightmost item acting
first; that convention is global to the package and everything downstream
(word problems, gadgets, reductions) depends on it.

Partiality is first-class: transitions may be missing, and acting on a word
either yields Defined(output, advanced sequence) or UndefinedAt(index of the
offending input letter).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Union

from .errors import (
    NotInverseDeterministic,
    ReservedTokenCollision,
    UnknownLetter,
    UnknownState,
)

Letter = str
State = str
Word = tuple[Letter, ...]

ZERO_STATE = "_zero"
BOTTOM_LETTER = "_bot"


def _check_letter_token(tok: str) -> None:
    if not isinstance(tok, str) or not tok:
        raise ValueError(f"letter token must be a non-empty string, got {tok!r}")
    if any(c.isspace() for c in tok):
        raise ValueError(f"letter token may not contain whitespace: {tok!r}")
    if tok.startswith("~"):
        raise ValueError(f"letter token may not begin with '~': {tok!r}")


def _check_state_token(tok: str) -> None:
    if not isinstance(tok, str) or not tok:
        raise ValueError(f"state name must be a non-empty string, got {tok!r}")
    if any(c.isspace() for c in tok):
        raise ValueError(f"state name may not contain whitespace: {tok!r}")


def as_word(letters: Iterable[Letter] | str) -> Word:
    """Coerce a word argument. A plain str is split into characters, which is
    convenient for single-character alphabets; multi-character tokens must be
    passed as an iterable of tokens."""
    if isinstance(letters, str):
        return tuple(letters)
    return tuple(letters)


@dataclass(frozen=True)
class SignedState:
    """A state, possibly inverted. Inversion never changes during an action:
    stepping an inverted state yields an inverted state."""

    base: State
    inverted: bool = False

    def __repr__(self) -> str:
        return f"~{self.base}" if self.inverted else self.base


SeqItem = Union[SignedState, str]


def _coerce_item(item: SeqItem) -> SignedState:
    if isinstance(item, SignedState):
        return item
    if isinstance(item, str):
        return SignedState(item)
    raise TypeError(f"sequence item must be SignedState or str, got {item!r}")


@dataclass(frozen=True)
class StateSequence:
    """A (possibly empty) sequence of signed states. The empty sequence acts
    as the identity. The rightmost item acts first."""

    items: tuple[SignedState, ...] = ()

    def __init__(self, items: Iterable[SeqItem] = ()):
        object.__setattr__(self, "items", tuple(_coerce_item(i) for i in items))

    def __len__(self) -> int:
        return len(self.items)

    def __iter__(self) -> Iterator[SignedState]:
        return iter(self.items)

    def __getitem__(self, i):
        return self.items[i]

    def __repr__(self) -> str:
        return "[" + " ".join(repr(i) for i in self.items) + "]"


@dataclass(frozen=True)
class Defined:
    """Successful action: the full output word and the advanced sequence."""

    output: Word
    final: StateSequence


@dataclass(frozen=True)
class UndefinedAt:
    """Failed action: index (0-based) of the input letter with no transition."""

    index: int


@dataclass(frozen=True)
class MealyAutomaton:
    """A deterministic, possibly partial synchronous transducer.

    transitions maps (state, input letter) to (output letter, next state).
    Determinism is inherent to the representation; completeness is not
    required. Instances are immutable and safe to share.
    """

    name: str
    alphabet: frozenset[Letter]
    states: frozenset[State]
    transitions: Mapping[tuple[State, Letter], tuple[Letter, State]]

    def __init__(
        self,
        name: str,
        alphabet: Iterable[Letter],
        states: Iterable[State],
        transitions: Mapping[tuple[State, Letter], tuple[Letter, State]],
    ):
        _check_state_token(name)
        alphabet = frozenset(alphabet)
        states = frozenset(states)
        for tok in alphabet:
            _check_letter_token(tok)
        for tok in states:
            _check_state_token(tok)
        trans = dict(transitions)
        for (q, a), (b, p) in trans.items():
            if q not in states:
                raise ValueError(f"transition source {q!r} is not a declared state")
            if p not in states:
                raise ValueError(f"transition target {p!r} is not a declared state")
            if a not in alphabet:
                raise ValueError(f"transition input {a!r} is not in the alphabet")
            if b not in alphabet:
                raise ValueError(f"transition output {b!r} is not in the alphabet")
        object.__setattr__(self, "name", name)
        object.__setattr__(self, "alphabet", alphabet)
        object.__setattr__(self, "states", states)
        object.__setattr__(self, "transitions", trans)

    def __eq__(self, other) -> bool:
        if not isinstance(other, MealyAutomaton):
            return NotImplemented
        return (
            self.name == other.name
            and self.alphabet == other.alphabet
            and self.states == other.states
            and dict(self.transitions) == dict(other.transitions)
        )

    __hash__ = None  # mutable mapping inside; do not use as a dict key

    def same_structure(self, other: "MealyAutomaton") -> bool:
        """Equality ignoring the name."""
        return (
            self.alphabet == other.alphabet
            and self.states == other.states
            and dict(self.transitions) == dict(other.transitions)
        )


@dataclass(frozen=True)
class PropertyReport:
    deterministic: bool
    complete: bool
    inverse_deterministic: bool
    inverse_complete: bool
    reversible: bool
    bireversible: bool
    is_s_bar_automaton: bool
    is_g_automaton: bool


@dataclass(frozen=True)
class Acceptor:
    """A nondeterministic finite acceptor over the same kind of letter tokens.

    transitions is a set of (state, letter, state) triples; initial must be
    non-empty. Used both for rational constraints and as reduction input.
    """

    name: str
    alphabet: frozenset[Letter]
    states: frozenset[State]
    transitions: frozenset[tuple[State, Letter, State]]
    initial: frozenset[State]
    final: frozenset[State]

    def __init__(
        self,
        name: str,
        alphabet: Iterable[Letter],
        states: Iterable[State],
        transitions: Iterable[tuple[State, Letter, State]],
        initial: Iterable[State],
        final: Iterable[State],
    ):
        _check_state_token(name)
        alphabet = frozenset(alphabet)
        states = frozenset(states)
        for tok in alphabet:
            _check_letter_token(tok)
        for tok in states:
            _check_state_token(tok)
        transitions = frozenset(transitions)
        initial = frozenset(initial)
        final = frozenset(final)
        for (q, a, p) in transitions:
            if q not in states or p not in states:
                raise ValueError(f"acceptor transition ({q!r},{a!r},{p!r}) uses undeclared state")
            if a not in alphabet:
                raise ValueError(f"acceptor transition letter {a!r} not in alphabet")
        if not initial:
            raise ValueError("acceptor needs at least one initial state")
        if not initial <= states or not final <= states:
            raise ValueError("initial/final states must be declared states")
        object.__setattr__(self, "name", name)
        object.__setattr__(self, "alphabet", alphabet)
        object.__setattr__(self, "states", states)
        object.__setattr__(self, "transitions", transitions)
        object.__setattr__(self, "initial", initial)
        object.__setattr__(self, "final", final)

    def step_map(self) -> dict[tuple[State, Letter], set[State]]:
        m: dict[tuple[State, Letter], set[State]] = {}
        for (q, a, p) in self.transitions:
            m.setdefault((q, a), set()).add(p)
        return m


def acceptor_step(acc: Acceptor, subset: frozenset[State], letter: Letter) -> frozenset[State]:
    """One subset-construction step."""
    out: set[State] = set()
    for (q, a, p) in acc.transitions:
        if a == letter and q in subset:
            out.add(p)
    return frozenset(out)


def acceptor_accepts(acc: Acceptor, word: Iterable[Letter] | str) -> bool:
    cur = acc.initial
    for a in as_word(word):
        cur = acceptor_step(acc, cur, a)
        if not cur:
            return False
    return bool(cur & acc.final)


def act_step(
    automaton: MealyAutomaton, state: SeqItem, letter: Letter
) -> tuple[Letter, SignedState] | None:
    """One action step of a signed state on one input letter.

    Forward states follow the transition table. An inverted state ~q consumes
    letter a by running the unique q-transition whose *output* is a, swapping
    input and output; if several q-transitions share the output a the inverse
    is ill-defined and NotInverseDeterministic is raised. Returns None where
    the (partial) map is undefined.
    """
    s = _coerce_item(state)
    if letter not in automaton.alphabet:
        raise UnknownLetter(f"{letter!r} is not a letter of {automaton.name}")
    if s.base not in automaton.states:
        raise UnknownState(f"{s.base!r} is not a state of {automaton.name}")
    if not s.inverted:
        hit = automaton.transitions.get((s.base, letter))
        if hit is None:
            return None
        out, nxt = hit
        return out, SignedState(nxt)
    found = None
    for a in automaton.alphabet:
        hit = automaton.transitions.get((s.base, a))
        if hit is not None and hit[0] == letter:
            if found is not None:
                raise NotInverseDeterministic(
                    f"state {s.base!r} of {automaton.name} emits {letter!r} "
                    "on more than one transition"
                )
            found = (a, hit[1])
    if found is None:
        return None
    return found[0], SignedState(found[1], inverted=True)


def act_word(
    automaton: MealyAutomaton,
    seq: StateSequence | Iterable[SeqItem],
    word: Iterable[Letter] | str,
) -> Defined | UndefinedAt:
    """Act a sequence on a word, rightmost item first.

    Each input letter is threaded through the items right to left: the
    rightmost item transforms it, its output feeds the next item, and the
    leftmost item's output becomes the result letter. The empty sequence is
    the identity.
    """
    if not isinstance(seq, StateSequence):
        seq = StateSequence(seq)
    items = list(seq.items)
    for s in items:
        if s.base not in automaton.states:
            raise UnknownState(f"{s.base!r} is not a state of {automaton.name}")
    letters = as_word(word)
    trans = automaton.transitions
    out: list[Letter] = []
    for idx, letter in enumerate(letters):
        cur = letter
        for i in range(len(items) - 1, -1, -1):
            s = items[i]
            if not s.inverted:
                hit = trans.get((s.base, cur))
                if hit is None:
                    if cur not in automaton.alphabet:
                        raise UnknownLetter(f"{cur!r} is not a letter of {automaton.name}")
                    return UndefinedAt(idx)
                cur, nxt = hit
                items[i] = SignedState(nxt)
            else:
                step = act_step(automaton, s, cur)
                if step is None:
                    return UndefinedAt(idx)
                cur, items[i] = step
        if not items and cur not in automaton.alphabet:
            raise UnknownLetter(f"{cur!r} is not a letter of {automaton.name}")
        out.append(cur)
    return Defined(tuple(out), StateSequence(items))


def check_properties(automaton: MealyAutomaton) -> PropertyReport:
    """Classify the automaton. Determinism is true by representation (the
    transition table is a map); the other flags are computed.

    complete: every (state, letter) pair has a transition.
    inverse_deterministic: per state, output letters are pairwise distinct.
    inverse_complete: per state, every alphabet letter occurs as an output.
    reversible: per (target state, input letter), at most one incoming
    transition; bireversible additionally bounds (target, output) pairs.
    """
    n_letters = len(automaton.alphabet)
    complete = len(automaton.transitions) == len(automaton.states) * n_letters
    inv_det = True
    inv_complete = True
    outs: dict[State, set[Letter]] = {q: set() for q in automaton.states}
    for (q, _a), (b, _p) in automaton.transitions.items():
        if b in outs[q]:
            inv_det = False
        outs[q].add(b)
    for q in automaton.states:
        if len(outs[q]) != n_letters:
            inv_complete = False
            break
    in_by_input: set[tuple[State, Letter]] = set()
    in_by_output: set[tuple[State, Letter]] = set()
    reversible = True
    birev_half = True
    for (q, a), (b, p) in automaton.transitions.items():
        if (p, a) in in_by_input:
            reversible = False
        in_by_input.add((p, a))
        if (p, b) in in_by_output:
            birev_half = False
        in_by_output.add((p, b))
    return PropertyReport(
        deterministic=True,
        complete=complete,
        inverse_deterministic=inv_det,
        inverse_complete=inv_complete,
        reversible=reversible,
        bireversible=reversible and birev_half,
        is_s_bar_automaton=inv_det,
        is_g_automaton=complete and inv_det,
    )


def invert(automaton: MealyAutomaton) -> MealyAutomaton:
    """The inverse transducer on a fresh state copy named with a ~ prefix.

    Requires inverse determinism (otherwise the swapped table would be
    nondeterministic). For every q -a/b-> p the result has ~q -b/a-> ~p.
    """
    report = check_properties(automaton)
    if not report.inverse_deterministic:
        raise NotInverseDeterministic(
            f"{automaton.name} is not inverse-deterministic; cannot invert"
        )
    states = {f"~{q}" for q in automaton.states}
    trans = {
        (f"~{q}", b): (a, f"~{p}")
        for (q, a), (b, p) in automaton.transitions.items()
    }
    return MealyAutomaton(f"~{automaton.name}", automaton.alphabet, states, trans)


def union(a1: MealyAutomaton, a2: MealyAutomaton) -> MealyAutomaton:
    """Disjoint union over the merged alphabet.

    State names are kept when the two state sets are disjoint; on collision
    each side is prefixed with its automaton name (or l_/r_ when even the
    names coincide, as in union(A, A)).
    """
    if a1.states & a2.states:
        p1 = f"{a1.name}_" if a1.name != a2.name else "l_"
        p2 = f"{a2.name}_" if a1.name != a2.name else "r_"
    else:
        p1 = p2 = ""
    states = {p1 + q for q in a1.states} | {p2 + q for q in a2.states}
    trans: dict[tuple[State, Letter], tuple[Letter, State]] = {}
    for (q, a), (b, p) in a1.transitions.items():
        trans[(p1 + q, a)] = (b, p1 + p)
    for (q, a), (b, p) in a2.transitions.items():
        trans[(p2 + q, a)] = (b, p2 + p)
    return MealyAutomaton(
        f"{a1.name}+{a2.name}", a1.alphabet | a2.alphabet, states, trans
    )


def dual(automaton: MealyAutomaton) -> MealyAutomaton:
    """Exchange the roles of states and letters.

    For every q -a/b-> p the dual has a -q/p-> b: dual-state a reads the
    letter q, emits the letter p and moves to dual-state b. States must
    satisfy the letter token rules (no leading ~) for this to be well formed.
    """
    trans = {
        (a, q): (p, b)
        for (q, a), (b, p) in automaton.transitions.items()
    }
    return MealyAutomaton(
        f"dual_{automaton.name}",
        automaton.states,
        automaton.alphabet,
        trans,
    )


def complete_with_zero(automaton: MealyAutomaton) -> MealyAutomaton:
    """Adjoin a zero: a sink state and a fresh bottom letter.

    Every missing (state, letter) pair, every pair on the new letter, and
    everything at the sink maps to the bottom letter and the sink. Original
    state names are kept. Raises ReservedTokenCollision if the automaton
    already uses the reserved tokens.
    """
    if BOTTOM_LETTER in automaton.alphabet:
        raise ReservedTokenCollision(f"alphabet already contains {BOTTOM_LETTER!r}")
    if ZERO_STATE in automaton.states:
        raise ReservedTokenCollision(f"states already contain {ZERO_STATE!r}")
    alphabet = set(automaton.alphabet) | {BOTTOM_LETTER}
    states = set(automaton.states) | {ZERO_STATE}
    trans = dict(automaton.transitions)
    for q in automaton.states:
        for a in alphabet:
            if (q, a) not in trans:
                trans[(q, a)] = (BOTTOM_LETTER, ZERO_STATE)
    for a in alphabet:
        trans[(ZERO_STATE, a)] = (BOTTOM_LETTER, ZERO_STATE)
    return MealyAutomaton(f"{automaton.name}_hat", alphabet, states, trans)
