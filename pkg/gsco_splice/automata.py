from __future__ import annotations

import logging
import math
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, List, NamedTuple, Optional, Sequence, Set, Tuple

from pyformlang.finite_automaton import DeterministicFiniteAutomaton, Epsilon, EpsilonNFA, State, Symbol

logger = logging.getLogger(__name__)

Word = Tuple[str, ...]
Label = Optional[str]

EPSILON: Label = None
RESERVED_TOKENS = frozenset({"#", "$", "@eps", "~"})

DEFAULT_ENUMERATION_CAP = 100_000
DEFAULT_SUBSET_STATE_CAP = 20_000
DEFAULT_PAIR_STATE_CAP = 200_000


class AutomatonError(ValueError):
    """Raised when an automaton is built from inconsistent parts."""


class CapExceededError(RuntimeError):
    """Raised when a bounded computation outgrows its configured cap."""

    def __init__(self, what: str, cap: int) -> None:
        super().__init__(f"{what} exceeded the cap of {cap}")
        self.what = what
        self.cap = cap


def validate_symbol(symbol: object) -> str:
    if not isinstance(symbol, str) or not symbol:
        raise AutomatonError(f"Symbols must be non-empty strings, got {symbol!r}")
    if symbol in RESERVED_TOKENS:
        raise AutomatonError(f"Reserved token '{symbol}' cannot be used as a symbol")
    if not symbol.isprintable() or any(ch.isspace() for ch in symbol):
        raise AutomatonError(f"Symbol {symbol!r} must be a single printable token")
    return symbol


def as_word(word: Sequence[str]) -> Word:
    return tuple(word)


def spell(word: Sequence[str]) -> str:
    return "".join(word)


def length_lex_key(word: Sequence[str]) -> Tuple[int, Tuple[str, ...]]:
    return len(word), tuple(word)


def merge_alphabets(*alphabets: Iterable[str]) -> Tuple[str, ...]:
    ordered: Dict[str, None] = {}
    for alphabet in alphabets:
        for symbol in alphabet:
            ordered.setdefault(symbol, None)
    return tuple(ordered)


@dataclass(frozen=True)
class FiniteLanguage:
    words: FrozenSet[Word]
    alphabet: FrozenSet[str] = field(default=frozenset(), compare=False)

    def __post_init__(self) -> None:
        for word in self.words:
            for symbol in word:
                if symbol not in self.alphabet:
                    raise AutomatonError(f"Word {spell(word)!r} uses symbol '{symbol}' outside the alphabet")

    @classmethod
    def from_words(cls, words: Iterable[Sequence[str]], alphabet: Iterable[str] = ()) -> "FiniteLanguage":
        collected = frozenset(as_word(word) for word in words)
        symbols = set(alphabet)
        for word in collected:
            symbols.update(word)
        for symbol in symbols:
            validate_symbol(symbol)
        return cls(collected, frozenset(symbols))

    @classmethod
    def of(cls, *words: Sequence[str]) -> "FiniteLanguage":
        return cls.from_words(words)

    def ordered(self) -> List[Word]:
        return sorted(self.words, key=length_lex_key)

    def spelled(self) -> Set[str]:
        return {spell(word) for word in self.words}

    def restrict(self, max_len: int) -> "FiniteLanguage":
        return FiniteLanguage(frozenset(w for w in self.words if len(w) <= max_len), self.alphabet)

    def union(self, *others: "FiniteLanguage") -> "FiniteLanguage":
        words = set(self.words)
        alphabet = set(self.alphabet)
        for other in others:
            words.update(other.words)
            alphabet.update(other.alphabet)
        return FiniteLanguage(frozenset(words), frozenset(alphabet))

    @property
    def used_symbols(self) -> FrozenSet[str]:
        return frozenset(symbol for word in self.words for symbol in word)

    @property
    def longest(self) -> int:
        return max((len(word) for word in self.words), default=0)

    def __contains__(self, word: object) -> bool:
        if not isinstance(word, (str, tuple, list)):
            return False
        return tuple(word) in self.words

    def __iter__(self):
        return iter(self.ordered())

    def __len__(self) -> int:
        return len(self.words)


class Transition(NamedTuple):
    source: int
    label: Label
    target: int


@dataclass(frozen=True)
class Nfa:
    """Nondeterministic automaton with epsilon moves.

    Build instances with ``make_nfa`` so that states are range-checked and the
    transition relation is deduplicated and sorted by (source, label, target),
    labels ranked by alphabet order with epsilon first.
    """

    state_count: int
    alphabet: Tuple[str, ...]
    transitions: Tuple[Transition, ...]
    start: int
    finals: FrozenSet[int]

    @cached_property
    def symbol_index(self) -> Dict[str, int]:
        return {symbol: index for index, symbol in enumerate(self.alphabet)}

    @cached_property
    def _moves(self) -> List[Dict[str, List[int]]]:
        moves: List[Dict[str, List[int]]] = [{} for _ in range(self.state_count)]
        for source, label, target in self.transitions:
            if label is not None:
                moves[source].setdefault(label, []).append(target)
        return moves

    @cached_property
    def _epsilon_moves(self) -> List[List[int]]:
        moves: List[List[int]] = [[] for _ in range(self.state_count)]
        for source, label, target in self.transitions:
            if label is None:
                moves[source].append(target)
        return moves

    @cached_property
    def _by_label(self) -> Dict[Label, Tuple[Transition, ...]]:
        grouped: Dict[Label, List[Transition]] = {}
        for transition in self.transitions:
            grouped.setdefault(transition.label, []).append(transition)
        return {label: tuple(items) for label, items in grouped.items()}

    def transitions_on(self, label: Label) -> Tuple[Transition, ...]:
        return self._by_label.get(label, ())

    def epsilon_closure(self, states: Iterable[int]) -> FrozenSet[int]:
        closure = set(states)
        stack = list(closure)
        while stack:
            state = stack.pop()
            for target in self._epsilon_moves[state]:
                if target not in closure:
                    closure.add(target)
                    stack.append(target)
        return frozenset(closure)

    @cached_property
    def initial_states(self) -> FrozenSet[int]:
        return self.epsilon_closure((self.start,))

    def step(self, states: Iterable[int], symbol: str) -> FrozenSet[int]:
        targets: Set[int] = set()
        for state in states:
            targets.update(self._moves[state].get(symbol, ()))
        if not targets:
            return frozenset()
        return self.epsilon_closure(targets)

    def successors(self, state: int) -> List[int]:
        targets = list(self._epsilon_moves[state])
        for items in self._moves[state].values():
            targets.extend(items)
        return targets


def _label_rank(index: Dict[str, int], label: Label) -> int:
    return -1 if label is None else index[label]


def make_nfa(
    state_count: int,
    alphabet: Iterable[str],
    transitions: Iterable[Tuple[int, Label, int]],
    start: int,
    finals: Iterable[int],
) -> Nfa:
    if state_count < 1:
        raise AutomatonError("An automaton needs at least one state")
    symbols = merge_alphabets(alphabet)
    for symbol in symbols:
        validate_symbol(symbol)
    index = {symbol: position for position, symbol in enumerate(symbols)}

    def check(state: int) -> int:
        if not 0 <= state < state_count:
            raise AutomatonError(f"State {state} out of range (state_count={state_count})")
        return state

    check(start)
    final_states = frozenset(check(state) for state in finals)
    triples: Set[Transition] = set()
    for source, label, target in transitions:
        check(source)
        check(target)
        if label is not None and label not in index:
            raise AutomatonError(f"Label '{label}' is not in the alphabet")
        triples.add(Transition(source, label, target))
    ordered = sorted(triples, key=lambda t: (t.source, _label_rank(index, t.label), t.target))
    return Nfa(state_count, symbols, tuple(ordered), start, final_states)


def empty_nfa(alphabet: Iterable[str] = ()) -> Nfa:
    return make_nfa(1, alphabet, (), 0, ())


def with_alphabet(machine: Nfa, alphabet: Iterable[str]) -> Nfa:
    symbols = merge_alphabets(machine.alphabet, alphabet)
    if symbols == machine.alphabet:
        return machine
    return make_nfa(machine.state_count, symbols, machine.transitions, machine.start, machine.finals)


def member(machine: Nfa, word: Sequence[str]) -> bool:
    current = machine.initial_states
    for symbol in word:
        if symbol not in machine.symbol_index:
            return False
        current = machine.step(current, symbol)
        if not current:
            return False
    return bool(current & machine.finals)


def _forward_reachable(machine: Nfa) -> Set[int]:
    seen = {machine.start}
    stack = [machine.start]
    while stack:
        state = stack.pop()
        for target in machine.successors(state):
            if target not in seen:
                seen.add(target)
                stack.append(target)
    return seen


def _coaccessible(machine: Nfa) -> Set[int]:
    predecessors: List[List[int]] = [[] for _ in range(machine.state_count)]
    for source, _, target in machine.transitions:
        predecessors[target].append(source)
    seen = set(machine.finals)
    stack = list(seen)
    while stack:
        state = stack.pop()
        for source in predecessors[state]:
            if source not in seen:
                seen.add(source)
                stack.append(source)
    return seen


def is_empty(machine: Nfa) -> bool:
    return not (_forward_reachable(machine) & machine.finals)


def trim(machine: Nfa) -> Nfa:
    useful = _forward_reachable(machine) & _coaccessible(machine)
    if machine.start not in useful:
        return empty_nfa(machine.alphabet)
    renumber = {state: position for position, state in enumerate(sorted(useful))}
    transitions = [
        (renumber[source], label, renumber[target])
        for source, label, target in machine.transitions
        if source in useful and target in useful
    ]
    return make_nfa(
        len(renumber),
        machine.alphabet,
        transitions,
        renumber[machine.start],
        (renumber[state] for state in machine.finals if state in useful),
    )


def union_nfa(first: Nfa, second: Nfa) -> Nfa:
    shift_first = 1
    shift_second = 1 + first.state_count
    transitions: List[Tuple[int, Label, int]] = [
        (0, EPSILON, first.start + shift_first),
        (0, EPSILON, second.start + shift_second),
    ]
    transitions.extend((s + shift_first, label, t + shift_first) for s, label, t in first.transitions)
    transitions.extend((s + shift_second, label, t + shift_second) for s, label, t in second.transitions)
    finals = [state + shift_first for state in first.finals]
    finals.extend(state + shift_second for state in second.finals)
    return make_nfa(
        1 + first.state_count + second.state_count,
        merge_alphabets(first.alphabet, second.alphabet),
        transitions,
        0,
        finals,
    )


def _distance_to_final(machine: Nfa) -> List[float]:
    """Fewest symbols needed to reach a final state from each state; epsilon moves are free."""
    distance: List[float] = [math.inf] * machine.state_count
    incoming: List[List[Tuple[int, int]]] = [[] for _ in range(machine.state_count)]
    for source, label, target in machine.transitions:
        incoming[target].append((source, 0 if label is None else 1))
    queue: deque[int] = deque()
    for state in machine.finals:
        distance[state] = 0
        queue.append(state)
    while queue:
        state = queue.popleft()
        for source, cost in incoming[state]:
            if distance[state] + cost < distance[source]:
                distance[source] = distance[state] + cost
                if cost:
                    queue.append(source)
                else:
                    queue.appendleft(source)
    return distance


def enumerate_language(
    machine: Nfa,
    max_len: int,
    cap: int = DEFAULT_ENUMERATION_CAP,
) -> FiniteLanguage:
    """Return every accepted word of length at most ``max_len``.

    The walk is over subsets of the trimmed automaton, so each word is
    produced once. Prefixes that cannot reach a final state within the
    remaining length are dropped, so every kept prefix extends to at least
    one distinct output word and the frontier stays under ``cap`` whenever
    the output does.
    """
    if max_len < 0:
        raise ValueError("max_len must be non-negative")
    live = trim(machine)
    distance = _distance_to_final(live)
    found: List[Word] = []
    frontier: List[Tuple[Word, FrozenSet[int]]] = []
    if min(distance[state] for state in live.initial_states) <= max_len:
        frontier.append(((), live.initial_states))
    for length in range(max_len + 1):
        following: List[Tuple[Word, FrozenSet[int]]] = []
        for word, states in frontier:
            if states & live.finals:
                found.append(word)
                if len(found) > cap:
                    raise CapExceededError("Enumeration output", cap)
            if length == max_len:
                continue
            remaining = max_len - length - 1
            for symbol in live.alphabet:
                target = live.step(states, symbol)
                if target and min(distance[state] for state in target) <= remaining:
                    following.append((word + (symbol,), target))
        if len(following) > cap:
            raise CapExceededError("Enumeration frontier", cap)
        frontier = following
    return FiniteLanguage(frozenset(found), frozenset(machine.alphabet))


@dataclass(frozen=True)
class Dfa:
    """Complete deterministic automaton; ``delta[state][i]`` follows ``alphabet[i]``."""

    alphabet: Tuple[str, ...]
    delta: Tuple[Tuple[int, ...], ...]
    start: int
    finals: FrozenSet[int]
    sink: Optional[int] = None

    @property
    def state_count(self) -> int:
        return len(self.delta)

    @cached_property
    def symbol_index(self) -> Dict[str, int]:
        return {symbol: index for index, symbol in enumerate(self.alphabet)}

    def accepts(self, word: Sequence[str]) -> bool:
        state = self.start
        for symbol in word:
            position = self.symbol_index.get(symbol)
            if position is None:
                return False
            state = self.delta[state][position]
        return state in self.finals

    def to_nfa(self) -> Nfa:
        transitions = [
            (state, symbol, row[position])
            for state, row in enumerate(self.delta)
            for position, symbol in enumerate(self.alphabet)
        ]
        return make_nfa(self.state_count, self.alphabet, transitions, self.start, self.finals)


def to_epsilon_nfa(machine: Nfa) -> EpsilonNFA:
    """pyformlang copy of ``machine`` with each symbol keyed by its alphabet position."""
    automaton = EpsilonNFA()
    automaton.add_start_state(State(machine.start))
    for state in machine.finals:
        automaton.add_final_state(State(state))
    for source, label, target in machine.transitions:
        symbol = Epsilon() if label is None else Symbol(machine.symbol_index[label])
        automaton.add_transition(State(source), symbol, State(target))
    return automaton


def to_pyformlang_dfa(dfa: Dfa) -> DeterministicFiniteAutomaton:
    automaton = DeterministicFiniteAutomaton()
    automaton.add_start_state(State(dfa.start))
    for state in dfa.finals:
        automaton.add_final_state(State(state))
    for source, row in enumerate(dfa.delta):
        for position, target in enumerate(row):
            automaton.add_transition(State(source), Symbol(position), State(target))
    return automaton


def _single_target(targets) -> State:
    if isinstance(targets, State):
        return targets
    return next(iter(targets))


def _live_states(table: Dict[State, Dict[int, State]], finals: Iterable[State]) -> Set[State]:
    predecessors: Dict[State, Set[State]] = {}
    for source, moves in table.items():
        for target in moves.values():
            predecessors.setdefault(target, set()).add(source)
    live = set(finals)
    stack = list(live)
    while stack:
        for source in predecessors.get(stack.pop(), ()):
            if source not in live:
                live.add(source)
                stack.append(source)
    return live


def _canonical_dfa(automaton: DeterministicFiniteAutomaton, alphabet: Tuple[str, ...]) -> Dfa:
    """Number a pyformlang DFA breadth-first from its start, symbols in alphabet order.

    States that cannot reach a final state collapse into one explicit sink,
    which also receives every missing transition.
    """
    table = {
        state: {symbol.value: _single_target(targets) for symbol, targets in moves.items()}
        for state, moves in automaton.to_dict().items()
    }
    live = _live_states(table, automaton.final_states)
    origin = automaton.start_state if automaton.start_state in live else None
    numbering: Dict[Optional[State], int] = {origin: 0}
    queue: List[Optional[State]] = [origin]
    rows: List[Tuple[int, ...]] = []
    position = 0
    while position < len(queue):
        moves = table.get(queue[position], {}) if queue[position] is not None else {}
        row: List[int] = []
        for index in range(len(alphabet)):
            target = moves.get(index)
            if target not in live:
                target = None
            if target not in numbering:
                numbering[target] = len(queue)
                queue.append(target)
            row.append(numbering[target])
        rows.append(tuple(row))
        position += 1
    finals = frozenset(numbering[state] for state in automaton.final_states if state in numbering)
    return Dfa(tuple(alphabet), tuple(rows), 0, finals, numbering.get(None))


def _subset_automaton(machine: Nfa, state_cap: int) -> DeterministicFiniteAutomaton:
    automaton = to_epsilon_nfa(machine).to_deterministic()
    if len(automaton.states) > state_cap:
        raise CapExceededError("Determinization", state_cap)
    logger.debug("Determinized %d NFA states into %d DFA states", machine.state_count, len(automaton.states))
    return automaton


def determinize(machine: Nfa, state_cap: int = DEFAULT_SUBSET_STATE_CAP) -> Dfa:
    return _canonical_dfa(_subset_automaton(machine, state_cap), machine.alphabet)


def minimize(dfa: Dfa) -> Dfa:
    """Minimal complete DFA, numbered breadth-first from the start state."""
    return _canonical_dfa(to_pyformlang_dfa(dfa).minimize(), dfa.alphabet)


def minimal_dfa(machine: Nfa, state_cap: int = DEFAULT_SUBSET_STATE_CAP) -> Dfa:
    return minimize(determinize(machine, state_cap))


class Equivalence(NamedTuple):
    equivalent: bool
    witness: Optional[Word] = None

    def __bool__(self) -> bool:
        return self.equivalent


def equivalent(first: Nfa, second: Nfa, state_cap: int = DEFAULT_PAIR_STATE_CAP) -> Equivalence:
    """Compare languages over the union alphabet.

    Explores the product of both subset constructions breadth-first, so the
    first disagreement found is a shortest distinguishing word.
    """
    alphabet = merge_alphabets(first.alphabet, second.alphabet)
    origin = (first.initial_states, second.initial_states)
    parents: Dict[Tuple[FrozenSet[int], FrozenSet[int]], Optional[Tuple[Tuple[FrozenSet[int], FrozenSet[int]], str]]] = {
        origin: None
    }
    queue = deque([origin])
    while queue:
        pair = queue.popleft()
        left, right = pair
        if bool(left & first.finals) != bool(right & second.finals):
            return Equivalence(False, _trace_witness(parents, pair))
        for symbol in alphabet:
            following = (first.step(left, symbol), second.step(right, symbol))
            if following not in parents:
                if len(parents) >= state_cap:
                    raise CapExceededError("Equivalence product", state_cap)
                parents[following] = (pair, symbol)
                queue.append(following)
    return Equivalence(True, None)


def _trace_witness(parents, pair) -> Word:
    symbols: List[str] = []
    link = parents[pair]
    while link is not None:
        pair, symbol = link
        symbols.append(symbol)
        link = parents[pair]
    return tuple(reversed(symbols))
