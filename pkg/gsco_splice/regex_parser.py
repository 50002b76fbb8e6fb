from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import List, Sequence, Set, Tuple, Union

from .automata import EPSILON, Label, Nfa, make_nfa, merge_alphabets

logger = logging.getLogger(__name__)

EMPTY_TEXT = "()"
EPSILON_TEXT = "~"
_RESERVED_CHARS = {"#", "$", "@"}
_POSTFIX = {"*", "+", "?"}


class RegexSyntaxError(ValueError):
    """Raised for malformed regular expressions; ``position`` is a 0-based offset."""

    def __init__(self, message: str, position: int) -> None:
        super().__init__(f"{message} at position {position}")
        self.position = position


@dataclass(frozen=True)
class Empty:
    pass


@dataclass(frozen=True)
class Epsilon:
    pass


@dataclass(frozen=True)
class Literal:
    symbol: str


@dataclass(frozen=True)
class Concat:
    parts: Tuple["Regex", ...]


@dataclass(frozen=True)
class Alt:
    options: Tuple["Regex", ...]


@dataclass(frozen=True)
class Star:
    child: "Regex"


@dataclass(frozen=True)
class Plus:
    child: "Regex"


@dataclass(frozen=True)
class Opt:
    child: "Regex"


Regex = Union[Empty, Epsilon, Literal, Concat, Alt, Star, Plus, Opt]


class _Parser:
    def __init__(self, text: str) -> None:
        self.text = text
        self.position = 0

    def _skip_space(self) -> None:
        while self.position < len(self.text) and self.text[self.position].isspace():
            self.position += 1

    def _peek(self) -> str:
        self._skip_space()
        return self.text[self.position] if self.position < len(self.text) else ""

    def parse(self) -> Regex:
        if not self._peek():
            raise RegexSyntaxError("Empty expression", self.position)
        node = self._alternation()
        if self._peek():
            raise RegexSyntaxError("Unbalanced ')'", self.position)
        return node

    def _alternation(self) -> Regex:
        options = [self._concatenation(after_bar=False)]
        while self._peek() == "|":
            self.position += 1
            options.append(self._concatenation(after_bar=True))
        return options[0] if len(options) == 1 else Alt(tuple(options))

    def _concatenation(self, after_bar: bool) -> Regex:
        parts: List[Regex] = []
        while True:
            char = self._peek()
            if not char or char in "|)":
                break
            parts.append(self._postfix())
        if not parts:
            char = self._peek()
            if after_bar or char == "|":
                raise RegexSyntaxError("Dangling '|'", self.position)
            if char == ")":
                raise RegexSyntaxError("Unbalanced ')'", self.position)
            raise RegexSyntaxError("Missing operand", self.position)
        return parts[0] if len(parts) == 1 else Concat(tuple(parts))

    def _postfix(self) -> Regex:
        node = self._atom()
        while self._peek() in _POSTFIX:
            operator = self.text[self.position]
            self.position += 1
            if operator == "*":
                node = Star(node)
            elif operator == "+":
                node = Plus(node)
            else:
                node = Opt(node)
        return node

    def _atom(self) -> Regex:
        char = self._peek()
        start = self.position
        if char == "(":
            self.position += 1
            if not self._peek():
                raise RegexSyntaxError("Unbalanced '('", start)
            if self._peek() == ")":
                self.position += 1
                return Empty()
            node = self._alternation()
            if self._peek() != ")":
                raise RegexSyntaxError("Unbalanced '('", start)
            self.position += 1
            return node
        if char == EPSILON_TEXT:
            self.position += 1
            return Epsilon()
        if char in _POSTFIX:
            raise RegexSyntaxError(f"Dangling operator '{char}'", start)
        if char in _RESERVED_CHARS:
            raise RegexSyntaxError(f"Reserved token '{char}' cannot be a literal", start)
        if char.isalnum():
            self.position += 1
            return Literal(char)
        raise RegexSyntaxError(f"Unexpected character '{char}'", start)


def parse_regex(text: str) -> Regex:
    return _Parser(text).parse()


def _precedence(node: Regex) -> int:
    if isinstance(node, Alt):
        if not node.options:
            return 3
        return 0 if len(node.options) > 1 else _precedence(node.options[0])
    if isinstance(node, Concat):
        return 1 if len(node.parts) > 1 else (_precedence(node.parts[0]) if node.parts else 3)
    if isinstance(node, (Star, Plus, Opt)):
        return 2
    return 3


def _wrapped(node: Regex, minimum: int) -> str:
    text = format_regex(node)
    return f"({text})" if _precedence(node) < minimum else text


def format_regex(node: Regex) -> str:
    if isinstance(node, Empty):
        return EMPTY_TEXT
    if isinstance(node, Epsilon):
        return EPSILON_TEXT
    if isinstance(node, Literal):
        return node.symbol
    if isinstance(node, Concat):
        if not node.parts:
            return EPSILON_TEXT
        return "".join(_wrapped(part, 1) for part in node.parts)
    if isinstance(node, Alt):
        if not node.options:
            return EMPTY_TEXT
        return "|".join(_wrapped(option, 0) for option in node.options)
    suffix = "*" if isinstance(node, Star) else "+" if isinstance(node, Plus) else "?"
    return _wrapped(node.child, 2) + suffix


def normalize_regex(node: Regex) -> Regex:
    """Flatten nested concatenations and alternations and unwrap single-member ones."""
    if isinstance(node, Concat):
        parts: List[Regex] = []
        for part in (normalize_regex(p) for p in node.parts):
            parts.extend(part.parts if isinstance(part, Concat) else (part,))
        if not parts:
            return Epsilon()
        return parts[0] if len(parts) == 1 else Concat(tuple(parts))
    if isinstance(node, Alt):
        options: List[Regex] = []
        for option in (normalize_regex(o) for o in node.options):
            options.extend(option.options if isinstance(option, Alt) else (option,))
        if not options:
            return Empty()
        return options[0] if len(options) == 1 else Alt(tuple(options))
    if isinstance(node, Star):
        return Star(normalize_regex(node.child))
    if isinstance(node, Plus):
        return Plus(normalize_regex(node.child))
    if isinstance(node, Opt):
        return Opt(normalize_regex(node.child))
    return node


def literals(node: Regex) -> List[str]:
    if isinstance(node, Literal):
        return [node.symbol]
    if isinstance(node, Concat):
        return [symbol for part in node.parts for symbol in literals(part)]
    if isinstance(node, Alt):
        return [symbol for option in node.options for symbol in literals(option)]
    if isinstance(node, (Star, Plus, Opt)):
        return literals(node.child)
    return []


class _ThompsonBuilder:
    def __init__(self) -> None:
        self.state_count = 0
        self.transitions: List[Tuple[int, Label, int]] = []

    def new_state(self) -> int:
        self.state_count += 1
        return self.state_count - 1

    def link(self, source: int, label: Label, target: int) -> None:
        self.transitions.append((source, label, target))

    def build(self, node: Regex, start: int, final: int) -> None:
        if isinstance(node, Empty):
            return
        if isinstance(node, Epsilon):
            self.link(start, EPSILON, final)
        elif isinstance(node, Literal):
            self.link(start, node.symbol, final)
        elif isinstance(node, Concat):
            current = start
            for part in node.parts:
                following = self.new_state()
                self.build(part, current, following)
                current = following
            self.link(current, EPSILON, final)
        elif isinstance(node, Alt):
            for option in node.options:
                inner_start, inner_final = self.new_state(), self.new_state()
                self.link(start, EPSILON, inner_start)
                self.build(option, inner_start, inner_final)
                self.link(inner_final, EPSILON, final)
        else:
            inner_start, inner_final = self.new_state(), self.new_state()
            self.link(start, EPSILON, inner_start)
            self.build(node.child, inner_start, inner_final)
            self.link(inner_final, EPSILON, final)
            if isinstance(node, (Star, Plus)):
                self.link(inner_final, EPSILON, inner_start)
            if isinstance(node, (Star, Opt)):
                self.link(start, EPSILON, final)


def regex_to_nfa(node: Regex) -> Nfa:
    builder = _ThompsonBuilder()
    start, final = builder.new_state(), builder.new_state()
    builder.build(node, start, final)
    machine = make_nfa(builder.state_count, merge_alphabets(literals(node)), builder.transitions, start, (final,))
    logger.debug("Compiled %s into %d states", format_regex(node), machine.state_count)
    return machine


def _ends(node: Regex, word: Sequence[str], position: int) -> Set[int]:
    if isinstance(node, Empty):
        return set()
    if isinstance(node, Epsilon):
        return {position}
    if isinstance(node, Literal):
        if position < len(word) and word[position] == node.symbol:
            return {position + 1}
        return set()
    if isinstance(node, Concat):
        current = {position}
        for part in node.parts:
            current = {end for start in current for end in _ends(part, word, start)}
            if not current:
                break
        return current
    if isinstance(node, Alt):
        return {end for option in node.options for end in _ends(option, word, position)}
    if isinstance(node, Opt):
        return {position} | _ends(node.child, word, position)
    reached = {position} if isinstance(node, Star) else set()
    frontier = [position]
    seen = {position}
    while frontier:
        start = frontier.pop()
        for end in _ends(node.child, word, start):
            reached.add(end)
            if end not in seen:
                seen.add(end)
                frontier.append(end)
    return reached


def regex_matches(node: Regex, word: Sequence[str]) -> bool:
    """Match ``word`` against the syntax tree directly, without building an automaton."""
    return len(word) in _ends(node, tuple(word), 0)
