from __future__ import annotations

from pathlib import Path
from typing import Dict, List, Tuple

from .automata import FiniteLanguage, Label, Nfa, make_nfa
from .regex_parser import parse_regex, regex_to_nfa
from .text_formats import FormatError, parse_rule, read_automaton, read_words
from .word_ops import ALL, OverlapSet

_OPERAND_KINDS = ("auto", "re", "words")


class OperandError(ValueError):
    """Raised for operand specifiers that name no usable source."""


def nfa_from_words(language: FiniteLanguage) -> Nfa:
    """Trie automaton accepting exactly the words of ``language``."""
    children: List[Dict[str, int]] = [{}]
    transitions: List[Tuple[int, Label, int]] = []
    finals = []
    for word in language.ordered():
        node = 0
        for symbol in word:
            following = children[node].get(symbol)
            if following is None:
                following = len(children)
                children[node][symbol] = following
                children.append({})
                transitions.append((node, symbol, following))
            node = following
        finals.append(node)
    alphabet = sorted(language.alphabet)
    return make_nfa(len(children), alphabet, transitions, 0, finals)


def _read_text(path: Path) -> str:
    if not path.exists():
        raise OperandError(f"Operand file not found: {path}")
    return path.read_text(encoding="utf-8")


def load_operand(spec: str) -> Nfa:
    kind, separator, value = spec.partition(":")
    if not separator or kind not in _OPERAND_KINDS:
        raise OperandError(
            f"Unsupported operand '{spec}'. Expected auto:FILE.aut, re:EXPR, or words:FILE.words."
        )
    if kind == "re":
        return regex_to_nfa(parse_regex(value))
    text = _read_text(Path(value))
    if kind == "auto":
        return read_automaton(text)
    return nfa_from_words(read_words(text))


def load_rule_set(text: str) -> OverlapSet:
    """Parse ``all`` or a comma-separated list of crossover symbols."""
    stripped = text.strip()
    if stripped.lower() == "all":
        return ALL
    symbols = [entry.strip() for entry in stripped.split(",")]
    for symbol in symbols:
        if not symbol:
            raise ValueError("empty overlap forbidden")
        if symbol == "~":
            raise ValueError("The empty word cannot be a crossover symbol")
    return OverlapSet(frozenset(symbols))


def load_rule_file(path: str | Path) -> OverlapSet:
    """Read ``x#$x#`` rules (or bare symbols), one per line; ``//`` starts a comment line."""
    source = Path(path)
    if not source.exists():
        raise OperandError(f"Rule file not found: {source}")
    symbols: List[str] = []
    for number, raw in enumerate(source.read_text(encoding="utf-8").splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("//"):
            continue
        rule = parse_rule(line)
        overlap = rule.overlap
        if overlap is None or len(overlap) != 1:
            raise FormatError(f"Only single-symbol rules 'x#$x#' are supported, got '{rule}'", number)
        symbols.append(overlap[0])
    if not symbols:
        raise FormatError(f"Rule file {source} names no rules")
    return OverlapSet(frozenset(symbols))
