"""Ready-made example automata and the exponential-separation family.

Five small machines, each interesting for a different reason:

* an adding machine whose carry state increments least-significant-first
  binary words,
* a two-state constant-output machine generating a free semigroup of rank
  two (optionally with one transition removed, making it properly partial),
* a three-state partial machine that is reversible and bireversible without
  being inverse-deterministic,
* the dual of the adding machine (states and letters exchanged), whose
  k-item state sequences behave as a width-k binary counter,
* the same dual extended by a constant state q.

The counter behaviour gives word-problem instances whose shortest witnesses
have length exponential in the sequence length; separation_witness and
separation_witness_dprime build those instances, run the decision procedure
and assert the expected 2**(n-1) witness length.
"""

from __future__ import annotations

from dataclasses import dataclass

from .mealy import MealyAutomaton, StateSequence, Word
from .wordproblem import NOT_EQUAL, WordProblemInstance, decide

_KINDS = ("AddingMachine", "FreeSemigroup", "BireversibleExample", "DualAdding")
_VARIANTS = ("D", "DPrime")


@dataclass(frozen=True)
class GadgetId:
    """Identifies one gadget. partial only matters for FreeSemigroup,
    variant only for DualAdding."""

    kind: str
    partial: bool = False
    variant: str = "D"

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ValueError(f"unknown gadget kind {self.kind!r}; expected one of {_KINDS}")
        if self.variant not in _VARIANTS:
            raise ValueError(f"unknown variant {self.variant!r}; expected one of {_VARIANTS}")


# CLI-facing names. Keys double as the generated automata's names.
GADGET_NAMES: dict[str, GadgetId] = {
    "adding": GadgetId("AddingMachine"),
    "free": GadgetId("FreeSemigroup"),
    "free-partial": GadgetId("FreeSemigroup", partial=True),
    "bireversible": GadgetId("BireversibleExample"),
    "dual-adding": GadgetId("DualAdding"),
    "dual-adding-prime": GadgetId("DualAdding", variant="DPrime"),
}


def _adding_machine() -> MealyAutomaton:
    # +1 adds one (with carry) to a least-significant-digit-first binary
    # word; +0 is the identity it decays to once the carry is absorbed.
    return MealyAutomaton(
        "adding",
        alphabet=("0", "1"),
        states=("+1", "+0"),
        transitions={
            ("+1", "1"): ("0", "+1"),
            ("+1", "0"): ("1", "+0"),
            ("+0", "0"): ("0", "+0"),
            ("+0", "1"): ("1", "+0"),
        },
    )


def _free_semigroup(partial: bool) -> MealyAutomaton:
    # State x emits x constantly and moves to the state named by its input,
    # so a state sequence acting on a long enough word spells itself out.
    trans = {
        ("a", "a"): ("a", "a"),
        ("a", "b"): ("a", "b"),
        ("b", "b"): ("b", "b"),
        ("b", "a"): ("b", "a"),
    }
    name = "free"
    if partial:
        del trans[("b", "a")]
        name = "free-partial"
    return MealyAutomaton(name, alphabet=("a", "b"), states=("a", "b"), transitions=trans)


def _bireversible_example() -> MealyAutomaton:
    # Two transitions out of r with equal outputs: reversible and
    # bireversible yet not inverse-deterministic.
    return MealyAutomaton(
        "bireversible",
        alphabet=("a", "b", "c"),
        states=("r", "s", "t"),
        transitions={
            ("r", "a"): ("b", "s"),
            ("r", "c"): ("b", "t"),
        },
    )


def _dual_adding(variant: str) -> MealyAutomaton:
    # Dual of the adding machine under the renaming +1 -> a, +0 -> b.
    # On input a, state 0 flips to 1 emitting b; state 1 flips to 0 emitting
    # a (the carry). Input b is the identity everywhere.
    trans = {
        ("0", "a"): ("b", "1"),
        ("0", "b"): ("b", "0"),
        ("1", "a"): ("a", "0"),
        ("1", "b"): ("b", "1"),
    }
    states = ["0", "1"]
    name = "dual-adding"
    if variant == "DPrime":
        states.append("q")
        trans[("q", "a")] = ("b", "q")
        trans[("q", "b")] = ("b", "q")
        name = "dual-adding-prime"
    return MealyAutomaton(name, alphabet=("a", "b"), states=states, transitions=trans)


def build_gadget(gid: GadgetId | str) -> MealyAutomaton:
    """Construct one of the example automata. Accepts a GadgetId or one of
    the GADGET_NAMES keys."""
    if isinstance(gid, str):
        try:
            gid = GADGET_NAMES[gid]
        except KeyError:
            raise ValueError(
                f"unknown gadget {gid!r}; expected one of {sorted(GADGET_NAMES)}"
            ) from None
    if gid.kind == "AddingMachine":
        return _adding_machine()
    if gid.kind == "FreeSemigroup":
        return _free_semigroup(gid.partial)
    if gid.kind == "BireversibleExample":
        return _bireversible_example()
    return _dual_adding(gid.variant)


def counter_sequence(value: int, width: int) -> StateSequence:
    """The width-item dual-adding sequence encoding value, least significant
    digit rightmost (the rightmost item acts first, so acting on letter a
    increments)."""
    if not 0 <= value < 2**width:
        raise ValueError(f"value {value} does not fit in {width} digits")
    digits = [str((value >> i) & 1) for i in range(width)]
    return StateSequence(reversed(digits))


def _separation(
    automaton: MealyAutomaton,
    lhs: StateSequence,
    rhs: StateSequence,
    n: int,
    max_configs: int | None,
) -> tuple[int, Word]:
    if n < 1:
        raise ValueError("n must be >= 1")
    verdict = decide(
        WordProblemInstance(automaton, lhs, rhs), max_configs=max_configs
    )
    assert verdict.kind == NOT_EQUAL and verdict.witness is not None
    length = len(verdict.witness)
    assert length == 2 ** (n - 1), (
        f"expected witness length {2 ** (n - 1)}, decide found {length}"
    )
    return length, verdict.witness


def separation_witness(n: int, max_configs: int | None = None) -> tuple[int, Word]:
    """Shortest word separating n copies of state 0 from n-1 copies, on the
    dual adding machine. Returns (length, witness) with length asserted to
    be 2**(n-1): the two sides are width-n and width-(n-1) counters that
    first disagree when the narrow one overflows."""
    d = build_gadget("dual-adding")
    return _separation(
        d,
        StateSequence(["0"] * n),
        StateSequence(["0"] * (n - 1)),
        n,
        max_configs,
    )


def separation_witness_dprime(
    n: int, max_configs: int | None = None
) -> tuple[int, Word]:
    """Shortest word separating n-1 copies of state 0 from the constant
    state q, on the extended dual adding machine. Returns (length, witness)
    with length asserted to be 2**(n-1): q always emits b, the counter first
    emits a when it overflows."""
    dp = build_gadget("dual-adding-prime")
    return _separation(
        dp,
        StateSequence(["0"] * (n - 1)),
        StateSequence(["q"]),
        n,
        max_configs,
    )
