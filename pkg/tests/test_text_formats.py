from __future__ import annotations

from pathlib import Path

import pytest

from corpus import lang, re_nfa, spelled, words_nfa
from gsco_splice.automata import FiniteLanguage, equivalent, make_nfa, minimal_dfa
from gsco_splice.text_formats import (
    FormatError,
    format_rule,
    format_word,
    parse_rule,
    parse_word,
    read_automaton,
    read_words,
    write_automaton,
    write_words,
)
from gsco_splice.word_ops import SplicingRule


def test_single_symbol_automaton_matches_golden_file(data_dir: Path) -> None:
    machine = make_nfa(2, "a", [(0, "a", 1)], 0, [1])
    golden = (data_dir / "single_a.aut").read_text(encoding="utf-8")
    assert write_automaton(machine) == golden
    assert golden.splitlines() == ["alphabet: a", "states: 2", "start: 0", "finals: 1", "trans: 0 a 1"]
    assert read_automaton(golden) == machine


def test_golden_automaton_round_trips(data_dir: Path) -> None:
    text = (data_dir / "alternating.aut").read_text(encoding="utf-8")
    machine = read_automaton(text)
    assert write_automaton(machine) == text
    assert spelled(machine, 4) == {"", "b", "ab", "bab", "abab"}


def test_written_automaton_is_canonical_for_minimal_dfas() -> None:
    first = write_automaton(minimal_dfa(re_nfa("a*b")).to_nfa())
    second = write_automaton(minimal_dfa(re_nfa("aa*b|b")).to_nfa())
    assert first == second


def test_read_automaton_ignores_comments_and_blank_lines() -> None:
    text = "# comment\nalphabet: a b\n\nstates: 2\nstart: 0\nfinals:\ntrans: 0 a 1\n1 b 0\n"
    machine = read_automaton(text)
    assert not machine.finals
    assert len(machine.transitions) == 2


@pytest.mark.parametrize(
    ("text", "message"),
    [
        ("alphabet: a\nstates: 2\nstart: 0\nfinals: 5\ntrans:\n", "line 4: State 5 out of range"),
        ("alphabet: a\nstates: 2\nstart: 0\nfinals: 1\ntrans:\n0 b 1\n", "line 6: Symbol 'b' is not declared"),
        ("alphabet: a\nstates: 2\nstart: 0\nfinals: 1\ntrans:\n0 a\n", "line 6: Malformed transition"),
        ("alphabet: a\nstates: two\nstart: 0\nfinals: 1\ntrans:\n", "line 2: states must be an integer"),
        ("alphabet: a\nalphabet: b\nstates: 1\nstart: 0\nfinals:\ntrans:\n", "line 2: Section 'alphabet' appears twice"),
        ("alphabet: a\nstates: 1\nstart: 0\ntrans:\n", "Missing section 'finals'"),
        ("alphabet: a\ncolors: 1\n", "line 2: Unknown section"),
        ("alphabet: a $\nstates: 1\nstart: 0\nfinals:\ntrans:\n", "line 1:"),
        ("0 a 1\n", "line 1: Unexpected line"),
    ],
)
def test_read_automaton_errors(text: str, message: str) -> None:
    with pytest.raises(FormatError, match=message):
        read_automaton(text)


def test_parse_and_format_words() -> None:
    assert parse_word("@eps") == ()
    assert parse_word("abc") == ("a", "b", "c")
    assert parse_word("x1 y2") == ("x1", "y2")
    assert format_word(()) == "@eps"
    assert format_word(("a", "b")) == "ab"
    assert format_word(("x1", "y2")) == "x1 y2"


def test_word_list_golden_file(data_dir: Path) -> None:
    language = read_words((data_dir / "sample.words").read_text(encoding="utf-8"))
    assert language == lang("", "a", "ab", "ba", "abab")
    assert write_words(language) == "@eps\na\nab\nba\nabab\n"


def test_read_words_rejects_reserved_symbols() -> None:
    with pytest.raises(FormatError, match="line 2"):
        read_words("ab\na$b\n")


def test_write_words_with_multi_character_symbols() -> None:
    language = FiniteLanguage.from_words([("x1", "y2"), ()])
    assert write_words(language) == "@eps\nx1 y2\n"
    with pytest.raises(FormatError):
        write_words(FiniteLanguage.from_words([("x1",)]))


def test_word_list_survives_automaton_round_trip() -> None:
    machine = read_automaton(write_automaton(words_nfa("ab", "ba", "b")))
    assert equivalent(machine, words_nfa("ab", "ba", "b"))


def test_parse_rule_forms() -> None:
    assert parse_rule("a#b$c#d") == SplicingRule(("a",), ("b",), ("c",), ("d",))
    assert parse_rule("a") == SplicingRule.for_overlap("a")
    assert parse_rule("ab#$ab#").overlap == ("a", "b")
    assert format_rule(parse_rule(" a#$a# ")) == "a#$a#"


@pytest.mark.parametrize("text", ["a#b", "a#b$c", "a#b$c#d$e", "a##b$c#d", ""])
def test_parse_rule_errors(text: str) -> None:
    with pytest.raises(FormatError):
        parse_rule(text)
