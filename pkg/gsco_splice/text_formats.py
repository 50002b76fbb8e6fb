from __future__ import annotations

import re
from typing import Dict, Iterable, List, Optional, Tuple

from .automata import (
    AutomatonError,
    FiniteLanguage,
    Label,
    Nfa,
    Word,
    make_nfa,
    spell,
    validate_symbol,
)
from .word_ops import SplicingRule

EPSILON_TOKEN = "@eps"
_SECTIONS = ("alphabet", "states", "start", "finals", "trans")
_HEADER_RE = re.compile(r"^(\w+):(.*)$")


class FormatError(ValueError):
    """Raised for malformed automaton, word-list or rule text."""

    def __init__(self, message: str, line: Optional[int] = None) -> None:
        super().__init__(f"line {line}: {message}" if line is not None else message)
        self.line = line


def write_automaton(machine: Nfa) -> str:
    """Canonical text; the first triple shares the ``trans:`` line."""
    triples = [
        f"{source} {EPSILON_TOKEN if label is None else label} {target}"
        for source, label, target in machine.transitions
    ]
    lines = [
        f"alphabet: {' '.join(machine.alphabet)}".rstrip(),
        f"states: {machine.state_count}",
        f"start: {machine.start}",
        f"finals: {' '.join(str(state) for state in sorted(machine.finals))}".rstrip(),
        f"trans: {triples[0]}" if triples else "trans:",
    ]
    lines.extend(triples[1:])
    return "\n".join(lines) + "\n"


def _parse_int(token: str, what: str, line: int) -> int:
    try:
        return int(token)
    except ValueError:
        raise FormatError(f"{what} must be an integer, got '{token}'", line) from None


def read_automaton(text: str) -> Nfa:
    values: Dict[str, Tuple[str, int]] = {}
    triples: List[Tuple[str, int]] = []
    section: Optional[str] = None
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        header = _HEADER_RE.match(line)
        if header:
            section = header.group(1)
            if section not in _SECTIONS:
                raise FormatError(f"Unknown section '{section}'", number)
            if section in values:
                raise FormatError(f"Section '{section}' appears twice", number)
            values[section] = (header.group(2).strip(), number)
            if section == "trans" and values[section][0]:
                triples.append(values[section])
            continue
        if section != "trans":
            raise FormatError(f"Unexpected line '{line}'", number)
        triples.append((line, number))

    for required in ("alphabet", "states", "start", "finals"):
        if required not in values:
            raise FormatError(f"Missing section '{required}'")

    alphabet_text, alphabet_line = values["alphabet"]
    alphabet = alphabet_text.split()
    for symbol in alphabet:
        try:
            validate_symbol(symbol)
        except AutomatonError as exc:
            raise FormatError(str(exc), alphabet_line) from None
    declared = set(alphabet)

    states_text, states_line = values["states"]
    state_count = _parse_int(states_text, "states", states_line)
    if state_count < 1:
        raise FormatError("An automaton needs at least one state", states_line)

    def state(token: str, line: int) -> int:
        value = _parse_int(token, "state", line)
        if not 0 <= value < state_count:
            raise FormatError(f"State {value} out of range (states: {state_count})", line)
        return value

    start_text, start_line = values["start"]
    start = state(start_text, start_line)
    finals_text, finals_line = values["finals"]
    finals = [state(token, finals_line) for token in finals_text.split()]

    transitions: List[Tuple[int, Label, int]] = []
    for line, number in triples:
        tokens = line.split()
        if len(tokens) != 3:
            raise FormatError(f"Malformed transition '{line}'; expected 'src label dst'", number)
        source, label, target = tokens
        if label != EPSILON_TOKEN and label not in declared:
            raise FormatError(f"Symbol '{label}' is not declared in the alphabet", number)
        transitions.append(
            (state(source, number), None if label == EPSILON_TOKEN else label, state(target, number))
        )

    try:
        return make_nfa(state_count, alphabet, transitions, start, finals)
    except AutomatonError as exc:
        raise FormatError(str(exc)) from exc


def parse_word(text: str) -> Word:
    """``@eps`` is the empty word; whitespace separates tokens, otherwise every character is a symbol."""
    line = text.strip()
    if line == EPSILON_TOKEN:
        return ()
    if any(char.isspace() for char in line):
        return tuple(line.split())
    return tuple(line)


def format_word(word: Word) -> str:
    if not word:
        return EPSILON_TOKEN
    if any(len(symbol) > 1 for symbol in word):
        return " ".join(word)
    return spell(word)


def read_words(text: str, alphabet: Iterable[str] = ()) -> FiniteLanguage:
    """Parse a word list: one word per line, ``#`` comments, ``@eps`` for the empty word."""
    words: List[Word] = []
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = parse_word(line)
        for token in tokens:
            try:
                validate_symbol(token)
            except AutomatonError as exc:
                raise FormatError(str(exc), number) from None
        words.append(tokens)
    return FiniteLanguage.from_words(words, alphabet)


def write_words(language: FiniteLanguage) -> str:
    spaced = any(len(symbol) > 1 for symbol in language.alphabet)
    lines: List[str] = []
    for word in language.ordered():
        if not word:
            lines.append(EPSILON_TOKEN)
        elif spaced:
            if len(word) == 1 and len(word[0]) > 1:
                raise FormatError(f"Single-symbol word '{word[0]}' cannot be written unambiguously")
            lines.append(" ".join(word))
        else:
            lines.append(spell(word))
    return "".join(f"{line}\n" for line in lines)


def _rule_part(text: str, source: str) -> Word:
    word = tuple(text.strip())
    for symbol in word:
        try:
            validate_symbol(symbol)
        except AutomatonError as exc:
            raise FormatError(f"{exc} in rule '{source}'") from None
    return word


def parse_rule(text: str) -> SplicingRule:
    """Parse ``alpha#beta$alpha2#beta2``; a bare word ``x`` stands for ``x#$x#``."""
    source = text.strip()
    if "#" not in source and "$" not in source:
        overlap = _rule_part(source, source)
        if not overlap:
            raise FormatError("A rule needs at least one symbol")
        return SplicingRule.for_overlap(overlap)
    sides = source.split("$")
    if len(sides) != 2:
        raise FormatError(f"Rule '{source}' must contain exactly one '$'")
    parts: List[Word] = []
    for side in sides:
        halves = side.split("#")
        if len(halves) != 2:
            raise FormatError(f"Rule '{source}' must contain exactly one '#' on each side of '$'")
        parts.extend(_rule_part(half, source) for half in halves)
    return SplicingRule(*parts)


def format_rule(rule: SplicingRule) -> str:
    return str(rule)
