"""Turing machine reduction to constrained word problems.

A machine configuration of fixed width p is a row of cells, exactly one of
which carries the head (token "symbol:state"). A run c0, c1, ..., cT is
encoded as the word

    c1' # c2' # ... # cT' $ 0^k $ 0

where each cell symbol is followed by a k-digit block, initially all zeros.
The compiled automaton's states implement, per sequence item:

* a check-marking state that increments (least significant digit first)
  every block of a segment up to and including the first all-zero one, so
  that after j passes block i encodes max(0, j - i);
* checker states that locate the first unmarked cell of each segment,
  verify its symbol evolves by the local transition map tau from the window
  remembered out of the previous segment, and carry the new window across
  the segment boundary (the missing neighbours at the borders are blanks);
* a shape checker for the virgin input form (q_c) and an all-marked checker
  (q_l) used by the inverse-semigroup instance;
* a final-state prober e that toggles the single trailing digit exactly
  when some final-state head token occurred and the counter block between
  the two $ signs is all zeros;
* in the group variant, a failure counter f that increments that counter
  block once per routed checker mismatch, plus an identity-preferring sink
  completion making every state a permutation.

The instance compares a sequence containing e against the same sequence
without it; outputs can then differ only in the trailing digit, and they do
exactly when the word encodes an accepting computation (group variant:
within the constraint language of well-shaped words).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .errors import (
    LeftEdgeViolated,
    NotGAutomaton,
    SpaceBoundViolated,
)
from .mealy import (
    Acceptor,
    MealyAutomaton,
    StateSequence,
    Word,
    check_properties,
)
from .wordproblem import WordProblemInstance

MOVES = ("L", "N", "R")
_RESERVED_LETTERS = ("0", "1", "#", "$")

CHECK_MARK_STATE = "mark"
FORM_ENTRY = "form0"
FULL_ENTRY = "full0"
PROBE_ENTRY = "probe0"
FAIL_ENTRY = "bump0"
SINK_STATE = "sink"


def _check_tm_token(tok: str, what: str) -> None:
    if not isinstance(tok, str) or not tok:
        raise ValueError(f"{what} must be a non-empty string, got {tok!r}")
    if any(c.isspace() for c in tok):
        raise ValueError(f"{what} may not contain whitespace: {tok!r}")
    if ":" in tok or "|" in tok:
        raise ValueError(f"{what} may not contain ':' or '|': {tok!r}")


def head_token(symbol: str, state: str) -> str:
    """The combined cell token for a head over `symbol` in `state`."""
    return f"{symbol}:{state}"


def split_head(token: str) -> tuple[str, str] | None:
    """Inverse of head_token; None for a plain tape symbol."""
    if ":" not in token:
        return None
    symbol, state = token.split(":", 1)
    return symbol, state


@dataclass(frozen=True)
class TuringMachineSpec:
    """A single-tape machine that never halts: missing rules are completed
    to stay-put self-loops on construction. Acceptance is entering a state
    in finals; the machine keeps running afterwards."""

    name: str
    tape_alphabet: frozenset[str]
    blank: str
    states: frozenset[str]
    initial: str
    finals: frozenset[str]
    rules: Mapping[tuple[str, str], tuple[str, str, str]]

    def __init__(
        self,
        name: str,
        tape_alphabet: Iterable[str],
        blank: str,
        states: Iterable[str],
        initial: str,
        finals: Iterable[str],
        rules: Mapping[tuple[str, str], tuple[str, str, str]],
    ):
        tape_alphabet = frozenset(tape_alphabet)
        states = frozenset(states)
        finals = frozenset(finals)
        for g in tape_alphabet:
            _check_tm_token(g, "tape symbol")
            if g in _RESERVED_LETTERS:
                raise ValueError(f"tape symbol {g!r} collides with a reserved letter")
            if g.startswith("~"):
                raise ValueError(f"tape symbol may not begin with '~': {g!r}")
        for z in states:
            _check_tm_token(z, "machine state")
        if blank not in tape_alphabet:
            raise ValueError(f"blank {blank!r} must be in the tape alphabet")
        if initial not in states:
            raise ValueError(f"initial state {initial!r} not declared")
        if not finals <= states:
            raise ValueError("final states must be declared states")
        total = dict(rules)
        for (z, g), (g2, z2, move) in total.items():
            if z not in states or g not in tape_alphabet:
                raise ValueError(f"rule key ({z!r}, {g!r}) uses undeclared tokens")
            if z2 not in states or g2 not in tape_alphabet:
                raise ValueError(f"rule value for ({z!r}, {g!r}) uses undeclared tokens")
            if move not in MOVES:
                raise ValueError(f"move must be one of {MOVES}, got {move!r}")
        for z in states:
            for g in tape_alphabet:
                total.setdefault((z, g), (g, z, "N"))
        object.__setattr__(self, "name", name)
        object.__setattr__(self, "tape_alphabet", tape_alphabet)
        object.__setattr__(self, "blank", blank)
        object.__setattr__(self, "states", states)
        object.__setattr__(self, "initial", initial)
        object.__setattr__(self, "finals", finals)
        object.__setattr__(self, "rules", total)


def delta_alphabet(tm: TuringMachineSpec) -> tuple[str, ...]:
    """Plain tape symbols followed by all head tokens, sorted within each
    group (deterministic order for reproducible builds)."""
    plain = sorted(tm.tape_alphabet)
    heads = [head_token(g, z) for g in plain for z in sorted(tm.states)]
    return tuple(plain) + tuple(heads)


def sigma_alphabet(tm: TuringMachineSpec) -> tuple[str, ...]:
    return delta_alphabet(tm) + _RESERVED_LETTERS


@dataclass(frozen=True)
class TmReductionParams:
    """Width and variant of one reduction instance.

    k is the digit-block length, computed as ceil(log2(p_val + 1)) so that
    the count p_val (the number of check-marking passes the first block
    receives) is representable."""

    p_val: int
    input_word: Word = ()
    group_variant: bool = False
    k: int = field(init=False)

    def __post_init__(self):
        if self.p_val < 1:
            raise ValueError("p_val must be >= 1")
        if len(self.input_word) > self.p_val:
            raise ValueError("input word longer than the space bound p_val")
        object.__setattr__(self, "input_word", tuple(self.input_word))
        object.__setattr__(self, "k", self.p_val.bit_length())


def _validate_input_word(tm: TuringMachineSpec, params: TmReductionParams) -> None:
    for tok in params.input_word:
        if tok not in tm.tape_alphabet or tok == tm.blank:
            raise ValueError(
                f"input token {tok!r} must be a non-blank tape symbol of {tm.name}"
            )


@dataclass(frozen=True)
class TauTable:
    """Local evolution map on cell windows: defined exactly on windows with
    at most one head token."""

    table: Mapping[tuple[str, str, str], str]

    def get(self, window: Iterable[str]) -> str | None:
        return self.table.get(tuple(window))

    def __len__(self) -> int:
        return len(self.table)


def derive_tau(tm: TuringMachineSpec) -> TauTable:
    """The middle cell of a window after one step, as a function of the
    window alone: a head on the middle rewrites (and stays only on N), a
    head on the left arrives exactly on R, a head on the right arrives
    exactly on L, and otherwise the middle is untouched."""
    delta = delta_alphabet(tm)
    table: dict[tuple[str, str, str], str] = {}
    for window in itertools.product(delta, repeat=3):
        heads = [(j, split_head(t)) for j, t in enumerate(window) if ":" in t]
        if len(heads) > 1:
            continue
        x, y, z = window
        if not heads:
            table[window] = y
            continue
        j, (symbol, state) = heads[0]
        write, nxt, move = tm.rules[(state, symbol)]
        if j == 1:
            table[window] = head_token(write, nxt) if move == "N" else write
        elif j == 0:
            table[window] = head_token(y, nxt) if move == "R" else y
        else:
            table[window] = head_token(y, nxt) if move == "L" else y
    return TauTable(table)


# ---------------------------------------------------------------------------
# simulation oracle


def initial_configuration(
    tm: TuringMachineSpec, params: TmReductionParams
) -> tuple[str, ...]:
    """Width-p_val row: the head sits on cell 0 over the first input symbol
    (or the blank for the empty input)."""
    w = params.input_word
    first = w[0] if w else tm.blank
    cells = [head_token(first, tm.initial)]
    cells.extend(w[1:])
    cells.extend([tm.blank] * (params.p_val - len(cells)))
    return tuple(cells)


@dataclass(frozen=True)
class SimulationResult:
    accepts_within: int | None
    trace: tuple[tuple[str, ...], ...]


def _head_position(cfg: tuple[str, ...]) -> int:
    for i, tok in enumerate(cfg):
        if ":" in tok:
            return i
    raise AssertionError("configuration lost its head")


def _step(tm: TuringMachineSpec, cfg: tuple[str, ...]) -> tuple[str, ...]:
    i = _head_position(cfg)
    symbol, state = split_head(cfg[i])
    write, nxt, move = tm.rules[(state, symbol)]
    new = list(cfg)
    if move == "N":
        new[i] = head_token(write, nxt)
    elif move == "R":
        if i + 1 >= len(cfg):
            raise SpaceBoundViolated(
                f"{tm.name} needs more than {len(cfg)} cells"
            )
        new[i] = write
        new[i + 1] = head_token(new[i + 1], nxt)
    else:
        if i == 0:
            raise LeftEdgeViolated(f"{tm.name} moved left of the first cell")
        new[i] = write
        new[i - 1] = head_token(new[i - 1], nxt)
    return tuple(new)


def simulate_tm(
    tm: TuringMachineSpec, params: TmReductionParams, max_steps: int
) -> SimulationResult:
    """Direct configuration-by-configuration run for max_steps steps.
    accepts_within is the first trace index whose configuration carries a
    final-state head, if any."""
    _validate_input_word(tm, params)
    cfg = initial_configuration(tm, params)
    trace = [cfg]
    for _ in range(max_steps):
        cfg = _step(tm, cfg)
        trace.append(cfg)
    accepts = None
    for t, c in enumerate(trace):
        head = split_head(c[_head_position(c)])
        if head[1] in tm.finals:
            accepts = t
            break
    return SimulationResult(accepts, tuple(trace))


def encode_computation(
    tm: TuringMachineSpec, params: TmReductionParams, T: int
) -> Word:
    """The canonical word for the first T steps: each configuration cell is
    followed by an all-zero k-block, configurations are separated by #, and
    the suffix is $ 0^k $ 0."""
    if T < 1:
        raise ValueError("need at least one computation step")
    sim = simulate_tm(tm, params, T)
    k = params.k
    parts: list[str] = []
    for t in range(1, T + 1):
        if t > 1:
            parts.append("#")
        for tok in sim.trace[t]:
            parts.append(tok)
            parts.extend(["0"] * k)
    parts.append("$")
    parts.extend(["0"] * k)
    parts.append("$")
    parts.append("0")
    return tuple(parts)


# ---------------------------------------------------------------------------
# automaton construction


def checker_entry(window: Iterable[str]) -> str:
    """Sequence-item state name for the checker seeded with this window."""
    x, y, z = tuple(window)
    return f"chk1|{x}|{y}|{z}||"


def _chk(tag: int, window: tuple[str, str, str], lower) -> str:
    l1, l2 = lower
    return f"chk{tag}|{window[0]}|{window[1]}|{window[2]}|{l1 or ''}|{l2 or ''}"


def _skip_name(window: tuple[str, str, str]) -> str:
    return f"skipc|{window[0]}|{window[1]}|{window[2]}"


def checker_family_size(n_delta: int) -> int:
    """Number of checker states before reachability pruning: both tags over
    window times lower-pair, the skip family, and the d1/d2/d3 tail."""
    return 2 * n_delta**3 * (n_delta + 1) ** 2 + n_delta**3 + 3


def build_tm_automaton(
    tm: TuringMachineSpec, params: TmReductionParams, prune: bool = False
) -> MealyAutomaton:
    """The full reduction automaton over sigma = Delta + {0,1,#,$}.

    prune=True keeps only states reachable from the sequence entry points
    (the emitted default is the whole family, unreachable checker states
    included). The group variant must pass the G-automaton check; failure
    raises NotGAutomaton."""
    delta = delta_alphabet(tm)
    sigma = sigma_alphabet(tm)
    group = params.group_variant
    tau = derive_tau(tm)
    trans: dict[tuple[str, str], tuple[str, str]] = {}
    states: set[str] = set()

    def add(q: str, a: str, b: str, p: str) -> None:
        states.add(q)
        states.add(p)
        trans[(q, a)] = (b, p)

    # --- check-marking: increment blocks up to the first all-zero one
    for g in delta:
        add("mark", g, g, "mark_inc")
        add("mark_new", g, g, "mark_skip")
        add("mark_old", g, g, "mark_inc")
    add("mark_inc", "0", "1", "mark_new")
    add("mark_inc", "1", "0", "mark_carry")
    add("mark_new", "0", "0", "mark_new")
    add("mark_new", "1", "1", "mark_old")
    add("mark_new", "#", "#", "mark")
    add("mark_new", "$", "$", "mark_end")
    add("mark_old", "0", "0", "mark_old")
    add("mark_old", "1", "1", "mark_old")
    add("mark_carry", "1", "0", "mark_carry")
    add("mark_carry", "0", "1", "mark_old")
    for x in delta + ("0", "1"):
        add("mark_skip", x, x, "mark_skip")
    add("mark_skip", "#", "#", "mark")
    add("mark_skip", "$", "$", "mark_end")
    for x in ("0", "1", "$"):
        add("mark_end", x, x, "mark_end")

    # --- checkers
    lowers = [None, *delta]
    blank = tm.blank
    for window in itertools.product(delta, repeat=3):
        sk = _skip_name(window)
        for x in delta + ("0", "1"):
            add(sk, x, x, sk)
        add(sk, "#", "#", _chk(1, window, (None, None)))
        add(sk, "$", "$", "d1")
        for l1 in lowers:
            for l2 in lowers:
                c0 = _chk(0, window, (l1, l2))
                c1 = _chk(1, window, (l1, l2))
                add(c0, "0", "0", c0)
                add(c0, "1", "1", c1)
                add(c1, "0", "0", c1)
                add(c1, "1", "1", c1)
                for g in delta:
                    add(c1, g, g, _chk(0, window, (l2, g)))
                # the first unmarked cell has been located: its symbol is
                # l2, which must match the stored window's evolution
                if l2 is not None and tau.get(window) == l2:
                    left = l1 if l1 is not None else blank
                    for g in delta:
                        add(c0, g, g, _skip_name((left, l2, g)))
                    add(c0, "#", "#", _chk(1, (left, l2, blank), (None, None)))
                    add(c0, "$", "$", "d1")
                elif group:
                    for g in delta:
                        add(c0, g, g, FAIL_ENTRY)
                    add(c0, "#", "#", FAIL_ENTRY)
                    add(c0, "$", "$", "bump1")
    add("d1", "0", "0", "d1")
    add("d1", "1", "1", "d1")
    add("d1", "$", "$", "d2")
    add("d2", "0", "0", "d3")
    states.add("d3")

    # --- q_c: virgin shape, every digit a 0
    for g in delta:
        add("form0", g, g, "form1")
        add("form1", g, g, "form1")
    add("form1", "0", "0", "form1")
    add("form1", "#", "#", "form0")
    add("form1", "$", "$", "form2")
    add("form2", "0", "0", "form2")
    add("form2", "$", "$", "form3")
    add("form3", "0", "0", "form4")
    states.add("form4")

    # --- q_l: every block marked
    for g in delta:
        add("full0", g, g, "full1")
        add("full2", g, g, "full1")
    add("full1", "0", "0", "full1")
    add("full1", "1", "1", "full2")
    add("full2", "0", "0", "full2")
    add("full2", "1", "1", "full2")
    add("full2", "#", "#", "full0")
    add("full2", "$", "$", "full3")
    add("full3", "0", "0", "full3")
    add("full3", "1", "1", "full3")
    add("full3", "$", "$", "full4")
    add("full4", "0", "0", "full5")
    states.add("full5")

    # --- e: the toggle
    final_heads = {
        head_token(g, z) for g in tm.tape_alphabet for z in tm.finals
    }
    for x in sigma:
        if x == "$":
            add("probe0", x, x, "probe1")
        elif x in final_heads:
            add("probe0", x, x, "probe4")
        else:
            add("probe0", x, x, "probe0")
    add("probe1", "0", "0", "probe1")
    add("probe1", "$", "$", "probe2")
    add("probe2", "0", "0", "probe3")
    states.add("probe3")
    for x in sigma:
        if x == "$":
            add("probe4", x, x, "probe5")
        else:
            add("probe4", x, x, "probe4")
    add("probe5", "0", "0", "probe5")
    add("probe5", "1", "1", "probe_dead")
    add("probe5", "$", "$", "probe6")
    add("probe6", "0", "1", "probe7")
    states.add("probe7")
    for x in sigma:
        add("probe_dead", x, x, "probe_dead")

    if group:
        # --- f: skip to the counter block and increment it once
        for x in sigma:
            if x == "$":
                add(FAIL_ENTRY, x, x, "bump1")
            else:
                add(FAIL_ENTRY, x, x, FAIL_ENTRY)
        add("bump1", "1", "0", "bump1")
        add("bump1", "0", "1", "bump2")
        add("bump2", "0", "0", "bump2")
        add("bump2", "1", "1", "bump2")
        add("bump2", "$", "$", "bump3")
        add("bump3", "0", "0", "bump4")
        states.add("bump4")
        # --- identity-preferring sink completion
        for x in sigma:
            add(SINK_STATE, x, x, SINK_STATE)
        have_input: dict[str, set[str]] = {q: set() for q in states}
        used_output: dict[str, set[str]] = {q: set() for q in states}
        for (q, a), (b, _p) in trans.items():
            have_input[q].add(a)
            used_output[q].add(b)
        sigma_sorted = sorted(sigma)
        for q in sorted(states):
            missing = [a for a in sigma_sorted if a not in have_input[q]]
            if not missing:
                continue
            used = used_output[q]
            for a in missing:
                if a not in used:
                    out = a
                else:
                    out = next(x for x in sigma_sorted if x not in used)
                used.add(out)
                trans[(q, a)] = (out, SINK_STATE)

    if prune:
        roots = {CHECK_MARK_STATE, FORM_ENTRY, FULL_ENTRY, PROBE_ENTRY}
        roots.update(
            _chk(1, w, (None, None)) for w in itertools.product(delta, repeat=3)
        )
        if group:
            roots.update({FAIL_ENTRY, SINK_STATE})
        reachable = set(roots)
        frontier = list(roots)
        targets: dict[str, list[str]] = {}
        for (q, _a), (_b, p) in trans.items():
            targets.setdefault(q, []).append(p)
        while frontier:
            q = frontier.pop()
            for p in targets.get(q, ()):
                if p not in reachable:
                    reachable.add(p)
                    frontier.append(p)
        states = reachable
        trans = {(q, a): v for (q, a), v in trans.items() if q in reachable}

    name = f"tm-{tm.name}-group" if group else f"tm-{tm.name}"
    aut = MealyAutomaton(name, sigma, states, trans)
    if group and not check_properties(aut).is_g_automaton:
        raise NotGAutomaton(
            f"group-variant automaton for {tm.name} failed the class check"
        )
    return aut


def structured_words_acceptor(
    tm: TuringMachineSpec, params: TmReductionParams
) -> Acceptor:
    """The constraint language of well-shaped words: one or more segments of
    exactly p_val cells with k-digit all-zero blocks, then $ 0^k $ 0."""
    delta = delta_alphabet(tm)
    sigma = sigma_alphabet(tm)
    k = params.k
    width = params.p_val * (k + 1)
    trans: set[tuple[str, str, str]] = set()
    states = {f"c{m}" for m in range(width + 1)}
    for m in range(width):
        if m % (k + 1) == 0:
            for g in delta:
                trans.add((f"c{m}", g, f"c{m + 1}"))
        else:
            trans.add((f"c{m}", "0", f"c{m + 1}"))
    trans.add((f"c{width}", "#", "c0"))
    trans.add((f"c{width}", "$", "s0"))
    for j in range(k):
        states.add(f"s{j}")
        trans.add((f"s{j}", "0", f"s{j + 1}"))
    states.update({f"s{k}", "t0", "acc"})
    trans.add((f"s{k}", "$", "t0"))
    trans.add(("t0", "0", "acc"))
    return Acceptor("structured", sigma, states, trans, ("c0",), ("acc",))


def reduce_tm(
    tm: TuringMachineSpec, params: TmReductionParams, prune: bool = False
) -> WordProblemInstance:
    """The full word-problem instance for this machine and width.

    Inverse-semigroup variant: [e, q_l, (check-mark, checker) * p_val, q_c]
    against the same without e. Group variant: [e] + pairs against the
    pairs, constrained to the structured-word language."""
    _validate_input_word(tm, params)
    aut = build_tm_automaton(tm, params, prune=prune)
    c0 = initial_configuration(tm, params)
    p = params.p_val
    blank = tm.blank
    pairs: list[str] = []
    for i in range(p - 1, -1, -1):
        left = c0[i - 1] if i > 0 else blank
        right = c0[i + 1] if i < p - 1 else blank
        pairs.append(CHECK_MARK_STATE)
        pairs.append(checker_entry((left, c0[i], right)))
    if params.group_variant:
        lhs = [PROBE_ENTRY] + pairs
        rhs = list(pairs)
        constraints = [structured_words_acceptor(tm, params)]
    else:
        lhs = [PROBE_ENTRY, FULL_ENTRY] + pairs + [FORM_ENTRY]
        rhs = [FULL_ENTRY] + pairs + [FORM_ENTRY]
        constraints = []
    return WordProblemInstance(
        aut, StateSequence(lhs), StateSequence(rhs), constraints
    )
