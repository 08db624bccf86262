"""Shared test utilities."""

from __future__ import annotations

from autsg import MealyAutomaton, SignedState, StateSequence


def W(s: str) -> tuple[str, ...]:
    """Word shorthand for single-character alphabets: W("010") == ("0","1","0")."""
    return tuple(s)


def S(*items) -> StateSequence:
    """Sequence shorthand. A leading ~ on a string marks inversion:
    S("+1", "~+0") has a forward +1 and an inverted +0."""
    out = []
    for it in items:
        if isinstance(it, SignedState):
            out.append(it)
        elif it.startswith("~"):
            out.append(SignedState(it[1:], inverted=True))
        else:
            out.append(SignedState(it))
    return StateSequence(out)


def rename_letters(
    automaton: MealyAutomaton, mapping: dict[str, str], name: str | None = None
) -> MealyAutomaton:
    """Rename alphabet letters through mapping (must cover the alphabet)."""
    trans = {
        (q, mapping[a]): (mapping[b], p)
        for (q, a), (b, p) in automaton.transitions.items()
    }
    return MealyAutomaton(
        name or automaton.name,
        {mapping[a] for a in automaton.alphabet},
        automaton.states,
        trans,
    )


def rename_states(
    automaton: MealyAutomaton, mapping: dict[str, str], name: str | None = None
) -> MealyAutomaton:
    trans = {
        (mapping[q], a): (b, mapping[p])
        for (q, a), (b, p) in automaton.transitions.items()
    }
    return MealyAutomaton(
        name or automaton.name,
        automaton.alphabet,
        {mapping[q] for q in automaton.states},
        trans,
    )
