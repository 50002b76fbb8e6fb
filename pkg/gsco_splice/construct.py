from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Dict, Iterable, List, Sequence, Tuple

from .automata import (
    EPSILON,
    Label,
    Nfa,
    Transition,
    empty_nfa,
    make_nfa,
    merge_alphabets,
    trim,
    union_nfa,
)
from .word_ops import ALL, Direction, OverlapSet

logger = logging.getLogger(__name__)

FORWARD = "1>2"
BACKWARD = "2>1"
SELF = "self"


@dataclass(frozen=True)
class BridgeEntry:
    """Bridges added for one crossover symbol.

    ``left_transitions`` counts the symbol's transitions that enter the hub,
    ``right_transitions`` those whose targets the hub hands control to.
    """

    symbol: str
    direction: str
    left_transitions: int
    right_transitions: int
    hub: int

    @property
    def bridges(self) -> int:
        return self.left_transitions + self.right_transitions


@dataclass(frozen=True)
class BridgeReport:
    entries: Tuple[BridgeEntry, ...] = ()

    def for_symbol(self, symbol: str) -> List[BridgeEntry]:
        return [entry for entry in self.entries if entry.symbol == symbol]

    @property
    def total_bridges(self) -> int:
        return sum(entry.bridges for entry in self.entries)

    def shifted(self, offset: int) -> "BridgeReport":
        return BridgeReport(
            tuple(
                BridgeEntry(e.symbol, e.direction, e.left_transitions, e.right_transitions, e.hub + offset)
                for e in self.entries
            )
        )

    def merged(self, other: "BridgeReport") -> "BridgeReport":
        return BridgeReport(self.entries + other.entries)

    def format_table(self) -> str:
        header = ("symbol", "direction", "left", "right", "hub", "bridges")
        rows = [
            (e.symbol, e.direction, str(e.left_transitions), str(e.right_transitions), str(e.hub), str(e.bridges))
            for e in self.entries
        ]
        widths = [max(len(row[i]) for row in [header, *rows]) for i in range(len(header))]
        lines = ["  ".join(cell.ljust(width) for cell, width in zip(row, widths)).rstrip() for row in [header, *rows]]
        lines.append(f"total bridges: {self.total_bridges}")
        return "\n".join(lines) + "\n"


def _symbol_transitions(machine: Nfa, symbols: Iterable[str]) -> Dict[str, Tuple[Transition, ...]]:
    found = {}
    for symbol in symbols:
        moves = machine.transitions_on(symbol)
        if moves:
            found[symbol] = moves
    return found


def _ordered_symbols(overlaps: OverlapSet, left: Nfa, right: Nfa) -> List[str]:
    allowed = overlaps.resolve(left.alphabet, right.alphabet)
    return [symbol for symbol in merge_alphabets(left.alphabet, right.alphabet) if symbol in allowed]


def _bridge_machine(left: Nfa, right: Nfa, symbols: Sequence[str], direction: str) -> Tuple[Nfa, BridgeReport]:
    """One-direction crossover machine: a prefix of ``left`` ending in a, then a suffix of ``right`` after a.

    Both operands must be trimmed. ``right`` is copied after ``left`` and each
    hub takes the next free state.
    """
    offset = left.state_count
    transitions: List[Tuple[int, Label, int]] = list(left.transitions)
    transitions.extend((s + offset, label, t + offset) for s, label, t in right.transitions)
    entering = _symbol_transitions(left, symbols)
    leaving = _symbol_transitions(right, symbols)
    hub = offset + right.state_count
    entries: List[BridgeEntry] = []
    for symbol in symbols:
        if symbol not in entering or symbol not in leaving:
            continue
        transitions.extend((source, symbol, hub) for source, _, _ in entering[symbol])
        transitions.extend((hub, EPSILON, target + offset) for _, _, target in leaving[symbol])
        entries.append(BridgeEntry(symbol, direction, len(entering[symbol]), len(leaving[symbol]), hub))
        hub += 1
    machine = make_nfa(
        hub,
        merge_alphabets(left.alphabet, right.alphabet),
        transitions,
        left.start,
        (state + offset for state in right.finals),
    )
    return machine, BridgeReport(tuple(entries))


def cross_nfa(
    m1: Nfa,
    m2: Nfa,
    overlaps: OverlapSet = ALL,
    direction: Direction = Direction.TWO_GSCO,
) -> Tuple[Nfa, BridgeReport]:
    """Automaton for GSCO_R(L(m1), L(m2)) with one hub per shared crossover symbol."""
    left, right = trim(m1), trim(m2)
    alphabet = merge_alphabets(m1.alphabet, m2.alphabet)
    symbols = _ordered_symbols(overlaps, left, right)
    forward, forward_report = _bridge_machine(left, right, symbols, FORWARD)
    if direction is Direction.ONE_GSCO:
        machine, report = forward, forward_report
    else:
        backward, backward_report = _bridge_machine(right, left, symbols, BACKWARD)
        machine = union_nfa(forward, backward)
        report = forward_report.shifted(1).merged(backward_report.shifted(1 + forward.state_count))
    if not report.entries:
        return empty_nfa(alphabet), report
    logger.debug(
        "Crossover product over %s: %d states, %d bridges", ",".join(symbols), machine.state_count, report.total_bridges
    )
    return machine, report


def _pairwise_family(left: Nfa, right: Nfa, symbols: Sequence[str]) -> List[Nfa]:
    machines: List[Nfa] = []
    offset = left.state_count
    alphabet = merge_alphabets(left.alphabet, right.alphabet)
    base: List[Tuple[int, Label, int]] = list(left.transitions)
    base.extend((s + offset, label, t + offset) for s, label, t in right.transitions)
    finals = [state + offset for state in right.finals]
    for symbol in symbols:
        for source, _, _ in left.transitions_on(symbol):
            for _, _, target in right.transitions_on(symbol):
                bridged = base + [(source, symbol, target + offset)]
                machines.append(make_nfa(offset + right.state_count, alphabet, bridged, left.start, finals))
    return machines


def cross_nfa_pairwise(
    m1: Nfa,
    m2: Nfa,
    overlaps: OverlapSet = ALL,
    direction: Direction = Direction.TWO_GSCO,
) -> Nfa:
    """One bridged machine per pair of same-symbol transitions, joined under a fresh start.

    The bridge of a pair jumps from the source of the first operand's
    transition straight to the target of the second's. Quadratic in the
    number of transitions; meant for checking ``cross_nfa``.
    """
    left, right = trim(m1), trim(m2)
    alphabet = merge_alphabets(m1.alphabet, m2.alphabet)
    symbols = _ordered_symbols(overlaps, left, right)
    family = _pairwise_family(left, right, symbols)
    if direction is Direction.TWO_GSCO:
        family += _pairwise_family(right, left, symbols)
    if not family:
        return empty_nfa(alphabet)
    transitions: List[Tuple[int, Label, int]] = []
    finals: List[int] = []
    state_count = 1
    for machine in family:
        transitions.append((0, EPSILON, machine.start + state_count))
        transitions.extend((s + state_count, label, t + state_count) for s, label, t in machine.transitions)
        finals.extend(state + state_count for state in machine.finals)
        state_count += machine.state_count
    logger.debug("Pairwise crossover family: %d machines, %d states", len(family), state_count)
    return make_nfa(state_count, alphabet, transitions, 0, finals)


def saturate_with_report(machine: Nfa, overlaps: OverlapSet = ALL) -> Tuple[Nfa, BridgeReport]:
    """Automaton for the closure GSCO*_R(L(machine)).

    Every transition on a crossover symbol also enters that symbol's hub, and
    the hub continues after any of the symbol's transitions.
    """
    live = trim(machine)
    symbols = _ordered_symbols(overlaps, live, live)
    moves = _symbol_transitions(live, symbols)
    transitions: List[Tuple[int, Label, int]] = list(live.transitions)
    hub = live.state_count
    entries: List[BridgeEntry] = []
    for symbol in symbols:
        if symbol not in moves:
            continue
        for source, _, target in moves[symbol]:
            transitions.append((source, symbol, hub))
            transitions.append((hub, EPSILON, target))
        count = len(moves[symbol])
        entries.append(BridgeEntry(symbol, SELF, count, count, hub))
        hub += 1
    saturated = make_nfa(hub, machine.alphabet, transitions, live.start, live.finals)
    report = BridgeReport(tuple(entries))
    logger.debug("Saturation: %d states, %d bridges", saturated.state_count, report.total_bridges)
    return saturated, report


def saturate(machine: Nfa, overlaps: OverlapSet = ALL) -> Nfa:
    return saturate_with_report(machine, overlaps)[0]


def build_star_pair(
    m1: Nfa,
    m2: Nfa,
    overlaps: OverlapSet = ALL,
    include_base: bool = True,
    direction: Direction = Direction.TWO_GSCO,
) -> Tuple[Nfa, BridgeReport]:
    """Crossover of the two closures, optionally together with both operands."""
    crossed, report = cross_nfa(saturate(m1, overlaps), saturate(m2, overlaps), overlaps, direction)
    if not include_base:
        return crossed, report
    combined = union_nfa(union_nfa(crossed, m1), m2)
    return combined, report.shifted(2)


def gsco_star_pair_nfa(
    m1: Nfa,
    m2: Nfa,
    overlaps: OverlapSet = ALL,
    include_base: bool = True,
    direction: Direction = Direction.TWO_GSCO,
) -> Nfa:
    return build_star_pair(m1, m2, overlaps, include_base, direction)[0]


def build_gs(
    m1: Nfa,
    m2: Nfa,
    overlaps: OverlapSet,
    include_base: bool = False,
) -> Tuple[Nfa, BridgeReport]:
    if overlaps.is_all:
        raise ValueError("Generalized splicing needs an explicit symbol set; 'all' is not accepted")
    return build_star_pair(m1, m2, overlaps, include_base)


def gs_nfa(m1: Nfa, m2: Nfa, overlaps: OverlapSet, include_base: bool = False) -> Nfa:
    return build_gs(m1, m2, overlaps, include_base)[0]
