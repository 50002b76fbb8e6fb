from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from corpus import re_nfa, small_nfas, spelled, words, words_nfa
from gsco_splice.automata import (
    AutomatonError,
    CapExceededError,
    FiniteLanguage,
    Transition,
    determinize,
    empty_nfa,
    enumerate_language,
    equivalent,
    is_empty,
    make_nfa,
    member,
    minimal_dfa,
    minimize,
    to_epsilon_nfa,
    trim,
    union_nfa,
    with_alphabet,
)


def test_make_nfa_sorts_and_deduplicates_transitions() -> None:
    machine = make_nfa(2, "ab", [(1, "b", 0), (0, "a", 1), (0, None, 1), (0, "a", 1)], 0, [1])
    assert machine.transitions == (
        Transition(0, None, 1),
        Transition(0, "a", 1),
        Transition(1, "b", 0),
    )
    assert machine.alphabet == ("a", "b")


def test_make_nfa_rejects_out_of_range_state() -> None:
    with pytest.raises(AutomatonError, match="out of range"):
        make_nfa(2, "a", [(0, "a", 9)], 0, [1])


def test_make_nfa_rejects_unknown_label_and_reserved_symbol() -> None:
    with pytest.raises(AutomatonError, match="not in the alphabet"):
        make_nfa(2, "a", [(0, "b", 1)], 0, [1])
    with pytest.raises(AutomatonError, match="Reserved"):
        make_nfa(2, ["#"], [], 0, [1])


def test_finite_language_rejects_reserved_symbols() -> None:
    with pytest.raises(AutomatonError):
        FiniteLanguage.of("a$b")


def test_finite_language_orders_length_then_lexicographic() -> None:
    language = FiniteLanguage.of("ba", "b", "", "ab", "a")
    assert ["".join(word) for word in language] == ["", "a", "b", "ab", "ba"]
    assert "ab" in language
    assert "abc" not in language
    assert language.longest == 2
    assert len(language.restrict(1)) == 3


def test_member_follows_epsilon_moves() -> None:
    machine = make_nfa(3, "ab", [(0, None, 1), (1, "a", 1), (1, "b", 2)], 0, [2])
    assert member(machine, "aab")
    assert member(machine, "b")
    assert not member(machine, "aba")
    assert not member(machine, "")
    assert not member(machine, "c")


def test_trim_drops_useless_states_and_keeps_language() -> None:
    machine = make_nfa(4, "ab", [(0, "a", 1), (0, "b", 2), (3, "a", 1)], 0, [1])
    trimmed = trim(machine)
    assert trimmed.state_count == 2
    assert equivalent(machine, trimmed)


def test_trim_of_empty_language_is_canonical_empty_automaton() -> None:
    machine = make_nfa(3, "a", [(0, "a", 1)], 0, [2])
    trimmed = trim(machine)
    assert trimmed == empty_nfa("a")
    assert is_empty(machine)


def test_enumerate_language_lists_words_in_length_lex_order() -> None:
    language = enumerate_language(re_nfa("(a|b)*"), 2)
    assert ["".join(word) for word in language] == ["", "a", "b", "aa", "ab", "ba", "bb"]


def test_enumerate_language_enforces_cap() -> None:
    with pytest.raises(CapExceededError) as excinfo:
        enumerate_language(re_nfa("(a|b)*"), 10, cap=50)
    assert excinfo.value.cap == 50


def test_union_nfa_accepts_both_languages() -> None:
    combined = union_nfa(words_nfa("ab"), words_nfa("cd"))
    assert spelled(combined, 3) == {"ab", "cd"}
    assert combined.start == 0


def test_determinize_builds_complete_dfa_with_sink() -> None:
    dfa = determinize(re_nfa("a*b"))
    assert all(len(row) == 2 for row in dfa.delta)
    assert dfa.sink is not None
    assert dfa.accepts("aab")
    assert not dfa.accepts("ba")


def test_determinize_respects_state_cap() -> None:
    with pytest.raises(CapExceededError):
        determinize(re_nfa("(a|b)*a(a|b)(a|b)"), state_cap=4)


def test_minimal_dfa_is_canonical() -> None:
    first = minimal_dfa(re_nfa("a*b"))
    second = minimal_dfa(re_nfa("aa*b|b"))
    assert first.state_count == 3
    assert first == second
    assert minimize(first) == first


def test_equivalent_returns_shortest_witness() -> None:
    result = equivalent(re_nfa("a*b"), re_nfa("aa*b"))
    assert not result
    assert result.witness == ("b",)


def test_equivalent_compares_over_union_alphabet() -> None:
    assert equivalent(words_nfa("a"), with_alphabet(words_nfa("a"), "xyz"))
    differ = equivalent(words_nfa("a"), words_nfa("a", "x"))
    assert differ.witness == ("x",)


def test_dfa_to_nfa_preserves_language() -> None:
    machine = re_nfa("(ab|b)*a?")
    assert equivalent(machine, minimal_dfa(machine).to_nfa())


@given(small_nfas())
@settings(max_examples=60, deadline=None)
def test_trim_and_minimize_preserve_language(machine) -> None:
    assert equivalent(machine, trim(machine))
    dfa = minimal_dfa(machine)
    assert equivalent(machine, dfa.to_nfa())
    assert minimize(dfa) == dfa


@given(small_nfas(), small_nfas())
@settings(max_examples=40, deadline=None)
def test_equivalence_witness_is_accepted_by_exactly_one_side(first, second) -> None:
    result = equivalent(first, second)
    if result:
        assert enumerate_language(first, 4) == enumerate_language(second, 4)
    else:
        assert member(first, result.witness) != member(second, result.witness)


def test_enumerate_language_prunes_prefixes_that_cannot_finish() -> None:
    machine = re_nfa("(a|b)" * 18 + "c")
    assert enumerate_language(machine, 17) == FiniteLanguage.from_words((), "abc")
    assert len(enumerate_language(re_nfa("(a|b)" * 12 + "c"), 13)) == 2**12


def test_enumerate_language_frontier_cap_tracks_output() -> None:
    machine = re_nfa("(a|b)*c")
    assert len(enumerate_language(machine, 6, cap=63)) == 63
    with pytest.raises(CapExceededError):
        enumerate_language(machine, 7, cap=63)


def test_minimal_dfa_of_empty_language_is_single_sink() -> None:
    dfa = minimal_dfa(make_nfa(2, "ab", [(0, "a", 1)], 0, ()))
    assert dfa.delta == ((0, 0),)
    assert dfa.sink == 0
    assert not dfa.finals


def test_minimal_dfa_without_dead_state_has_no_sink() -> None:
    dfa = minimal_dfa(re_nfa("(a|b)*"))
    assert dfa.delta == ((0, 0),)
    assert dfa.sink is None
    assert dfa.finals == frozenset({0})


@given(small_nfas(), st.integers(min_value=0, max_value=4))
@settings(max_examples=60, deadline=None)
def test_enumeration_grows_with_length(machine, max_len: int) -> None:
    shorter = enumerate_language(machine, max_len)
    longer = enumerate_language(machine, max_len + 1)
    assert shorter.words <= longer.words
    assert shorter == longer.restrict(max_len)


@given(small_nfas(), words(max_size=4))
@settings(max_examples=80, deadline=None)
def test_membership_agrees_with_enumeration(machine, word: str) -> None:
    assert member(machine, word) == (word in enumerate_language(machine, len(word)))


@given(small_nfas())
@settings(max_examples=60, deadline=None)
def test_minimal_dfa_is_canonical_across_equivalent_machines(machine) -> None:
    expected = minimal_dfa(machine)
    reversed_numbering = make_nfa(
        machine.state_count,
        machine.alphabet,
        [(machine.state_count - 1 - s, label, machine.state_count - 1 - t) for s, label, t in machine.transitions],
        machine.state_count - 1 - machine.start,
        [machine.state_count - 1 - state for state in machine.finals],
    )
    for variant in (trim(machine), union_nfa(machine, machine), determinize(machine).to_nfa(), reversed_numbering):
        assert minimal_dfa(variant) == expected


@given(small_nfas(), small_nfas())
@settings(max_examples=40, deadline=None)
def test_equivalence_agrees_with_pyformlang(first, second) -> None:
    assert bool(equivalent(first, second)) == to_epsilon_nfa(first).is_equivalent_to(to_epsilon_nfa(second))
