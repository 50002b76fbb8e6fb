from __future__ import annotations

import logging
from collections import defaultdict
from dataclasses import dataclass
from enum import Enum
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

from .automata import FiniteLanguage, Word, as_word, spell, validate_symbol

logger = logging.getLogger(__name__)


class Direction(Enum):
    ONE_GSCO = "one"
    TWO_GSCO = "two"


class OverlapMode(Enum):
    SYMBOLS = "symbols"
    SUBSTRINGS = "substrings"


class ClosureIterationError(RuntimeError):
    """Raised when a bounded closure runs out of iterations before its fixed point."""

    def __init__(self, max_iter: int, partial: FiniteLanguage) -> None:
        super().__init__(f"Closure did not reach a fixed point within max_iter={max_iter}")
        self.max_iter = max_iter
        self.partial = partial


@dataclass(frozen=True)
class OverlapSet:
    """Crossover symbols; ``symbols=None`` is the ALL sentinel (common symbols per pair)."""

    symbols: Optional[FrozenSet[str]] = None

    def __post_init__(self) -> None:
        if self.symbols is None:
            return
        if not self.symbols:
            raise ValueError("Overlap set must name at least one symbol")
        for symbol in self.symbols:
            if symbol == "":
                raise ValueError("empty overlap forbidden")
            validate_symbol(symbol)

    @classmethod
    def of(cls, *symbols: str) -> "OverlapSet":
        return cls(frozenset(symbols))

    @property
    def is_all(self) -> bool:
        return self.symbols is None

    def resolve(self, first: Iterable[str], second: Iterable[str]) -> FrozenSet[str]:
        common = frozenset(first) & frozenset(second)
        if self.symbols is None:
            return common
        return self.symbols & common

    def __str__(self) -> str:
        return "all" if self.symbols is None else ",".join(sorted(self.symbols))


ALL = OverlapSet()


@dataclass(frozen=True)
class SplicingRule:
    alpha: Word = ()
    beta: Word = ()
    alpha2: Word = ()
    beta2: Word = ()

    @classmethod
    def for_overlap(cls, overlap: Sequence[str]) -> "SplicingRule":
        word = as_word(overlap)
        return cls(word, (), word, ())

    @property
    def overlap(self) -> Optional[Word]:
        """The x of a rule shaped x#$x#, else None."""
        if self.alpha and self.alpha == self.alpha2 and not self.beta and not self.beta2:
            return self.alpha
        return None

    def __str__(self) -> str:
        return f"{spell(self.alpha)}#{spell(self.beta)}${spell(self.alpha2)}#{spell(self.beta2)}"


@dataclass
class ClosureConfig:
    max_len: int
    intermediate_cap: Optional[int] = None
    max_iter: Optional[int] = None
    direction_mode: Direction = Direction.TWO_GSCO

    def __post_init__(self) -> None:
        if self.max_len < 0:
            raise ValueError("max_len must be non-negative")
        if self.intermediate_cap is None:
            self.intermediate_cap = 3 * self.max_len
        if self.intermediate_cap < self.max_len:
            raise ValueError("intermediate_cap must be at least max_len")
        if self.max_iter is not None and self.max_iter < 0:
            raise ValueError("max_iter must be non-negative")

    @property
    def length_cap(self) -> int:
        return int(self.intermediate_cap if self.intermediate_cap is not None else 3 * self.max_len)


def _language(words: Iterable[Word], *sources: Iterable[Sequence[str]]) -> FiniteLanguage:
    alphabet: Set[str] = set()
    for source in sources:
        for word in source:
            alphabet.update(word)
    return FiniteLanguage.from_words(words, alphabet)


def _occurrences(word: Word, factor: Word) -> List[int]:
    size = len(factor)
    return [i for i in range(len(word) - size + 1) if word[i : i + size] == factor]


def _crossings(first: Word, second: Word, overlap: Word, direction: Direction) -> Set[Word]:
    size = len(overlap)
    produced: Set[Word] = set()
    right_hits = _occurrences(second, overlap)
    if not right_hits:
        return produced
    for i in _occurrences(first, overlap):
        for j in right_hits:
            produced.add(first[: i + size] + second[j + size :])
            if direction is Direction.TWO_GSCO:
                produced.add(second[: j + size] + first[i + size :])
    return produced


def _require_overlap(x: Sequence[str]) -> Word:
    overlap = as_word(x)
    if not overlap:
        raise ValueError("empty overlap forbidden")
    return overlap


def gsco_at(w1: Sequence[str], w2: Sequence[str], x: Sequence[str]) -> FiniteLanguage:
    first, second, overlap = as_word(w1), as_word(w2), _require_overlap(x)
    return _language(_crossings(first, second, overlap, Direction.TWO_GSCO), (first, second))


def one_gsco_at(w1: Sequence[str], w2: Sequence[str], x: Sequence[str]) -> FiniteLanguage:
    first, second, overlap = as_word(w1), as_word(w2), _require_overlap(x)
    return _language(_crossings(first, second, overlap, Direction.ONE_GSCO), (first, second))


def _factors(word: Word) -> Set[Word]:
    return {word[i:j] for i in range(len(word)) for j in range(i + 1, len(word) + 1)}


def common_factors(w1: Sequence[str], w2: Sequence[str]) -> Set[Word]:
    return _factors(as_word(w1)) & _factors(as_word(w2))


def gsco_pair(w1: Sequence[str], w2: Sequence[str], mode: OverlapMode = OverlapMode.SYMBOLS) -> FiniteLanguage:
    first, second = as_word(w1), as_word(w2)
    if mode is OverlapMode.SYMBOLS:
        overlaps: Iterable[Word] = [(symbol,) for symbol in set(first) & set(second)]
    else:
        overlaps = common_factors(first, second)
    produced: Set[Word] = set()
    for overlap in overlaps:
        produced |= _crossings(first, second, overlap, Direction.TWO_GSCO)
    return _language(produced, (first, second))


def _cut_points(word: Word, left: Word, right: Word) -> List[int]:
    context = left + right
    return [i + len(left) for i in _occurrences(word, context)] if context else list(range(len(word) + 1))


def _splice_words(first: Word, second: Word, rule: SplicingRule) -> Set[Word]:
    produced: Set[Word] = set()
    right_cuts = _cut_points(second, rule.alpha2, rule.beta2)
    if not right_cuts:
        return produced
    for c1 in _cut_points(first, rule.alpha, rule.beta):
        for c2 in right_cuts:
            produced.add(first[:c1] + second[c2:])
            produced.add(second[:c2] + first[c1:])
    return produced


def splice_pair(w1: Sequence[str], w2: Sequence[str], r: SplicingRule) -> FiniteLanguage:
    first, second = as_word(w1), as_word(w2)
    return _language(_splice_words(first, second, r), (first, second))


def splice_lang(
    l1: FiniteLanguage,
    l2: FiniteLanguage,
    rules: Iterable[SplicingRule],
) -> FiniteLanguage:
    rule_list = list(rules)
    produced: Set[Word] = set()
    for first in l1.words:
        for second in l2.words:
            for rule in rule_list:
                produced |= _splice_words(first, second, rule)
    return FiniteLanguage.from_words(produced, l1.alphabet | l2.alphabet)


def symbol_rules(overlaps: OverlapSet) -> List[SplicingRule]:
    if overlaps.symbols is None:
        raise ValueError("Splicing needs an explicit rule set; 'all' is not accepted")
    return [SplicingRule.for_overlap((symbol,)) for symbol in sorted(overlaps.symbols)]


def _gsco_words(
    firsts: Iterable[Word],
    seconds: Iterable[Word],
    overlaps: OverlapSet,
    direction: Direction,
) -> Set[Word]:
    second_list = [word for word in seconds if word]
    produced: Set[Word] = set()
    for first in firsts:
        if not first:
            continue
        first_symbols = set(first)
        for second in second_list:
            for symbol in overlaps.resolve(first_symbols, second):
                produced |= _crossings(first, second, (symbol,), direction)
    return produced


def gsco_lang(
    l1: FiniteLanguage,
    l2: FiniteLanguage,
    overlaps: OverlapSet = ALL,
    direction: Direction = Direction.TWO_GSCO,
) -> FiniteLanguage:
    produced = _gsco_words(l1.words, l2.words, overlaps, direction)
    return FiniteLanguage.from_words(produced, l1.alphabet | l2.alphabet)


class _CutIndex:
    """Prefixes ending at, and suffixes following, every cut of every indexed word.

    For a symbol overlap ``a`` the cuts are the positions right after each
    ``a``; for a splicing rule side ``left#right`` they are the positions
    between an occurrence of ``left`` and ``right``.
    """

    def __init__(self) -> None:
        self.heads: Dict[object, Set[Word]] = defaultdict(set)
        self.tails: Dict[object, Dict[int, Set[Word]]] = defaultdict(lambda: defaultdict(set))

    def add_symbol_cuts(self, words: Iterable[Word]) -> None:
        for word in words:
            for position, symbol in enumerate(word):
                self.heads[symbol].add(word[: position + 1])
                tail = word[position + 1 :]
                self.tails[symbol][len(tail)].add(tail)

    def add_rule_cuts(self, words: Iterable[Word], rules: Sequence[SplicingRule]) -> None:
        for word in words:
            for number, rule in enumerate(rules):
                for cut in _cut_points(word, rule.alpha, rule.beta):
                    self.heads[(number, 0)].add(word[:cut])
                    tail = word[cut:]
                    self.tails[(number, 0)][len(tail)].add(tail)
                for cut in _cut_points(word, rule.alpha2, rule.beta2):
                    self.heads[(number, 1)].add(word[:cut])
                    tail = word[cut:]
                    self.tails[(number, 1)][len(tail)].add(tail)


def _join(heads: Iterable[Word], tails: Dict[int, Set[Word]], length_cap: int) -> Set[Word]:
    produced: Set[Word] = set()
    for head in heads:
        room = length_cap - len(head)
        for size in range(room + 1):
            for tail in tails.get(size, ()):
                produced.add(head + tail)
    return produced


def _symbol_keys(overlaps: OverlapSet, left: _CutIndex, right: _CutIndex) -> List[str]:
    keys = [key for key in left.heads if isinstance(key, str) and key in right.tails]
    if overlaps.symbols is not None:
        keys = [key for key in keys if key in overlaps.symbols]
    return keys


def _cross_step(
    left: _CutIndex,
    right: _CutIndex,
    overlaps: OverlapSet,
    direction: Direction,
    length_cap: int,
) -> Set[Word]:
    """GSCO of the indexed operands restricted to words of length <= length_cap.

    Crossing at ``a`` joins any prefix ending in an ``a`` of one word with any
    suffix after an ``a`` of the other, so both words necessarily share ``a``.
    """
    produced: Set[Word] = set()
    for symbol in _symbol_keys(overlaps, left, right):
        produced |= _join(left.heads[symbol], right.tails[symbol], length_cap)
    if direction is Direction.TWO_GSCO:
        for symbol in _symbol_keys(overlaps, right, left):
            produced |= _join(right.heads[symbol], left.tails[symbol], length_cap)
    return produced


def _splice_step(left: _CutIndex, right: _CutIndex, rule_count: int, length_cap: int) -> Set[Word]:
    produced: Set[Word] = set()
    for number in range(rule_count):
        produced |= _join(left.heads.get((number, 0), ()), right.tails.get((number, 1), {}), length_cap)
        produced |= _join(right.heads.get((number, 1), ()), left.tails.get((number, 0), {}), length_cap)
    return produced


def _check_budget(cfg: ClosureConfig, rounds: int, partial: Set[Word], alphabet: Iterable[str]) -> None:
    """Raise once more than ``max_iter`` rounds have changed the closure or its iterates.

    The round that confirms a fixed point is not counted, so ``max_iter=0``
    accepts a language that is already closed.
    """
    if cfg.max_iter is not None and rounds > cfg.max_iter:
        raise ClosureIterationError(
            cfg.max_iter,
            FiniteLanguage.from_words((w for w in partial if len(w) <= cfg.max_len), alphabet),
        )


def _report(words: Set[Word], cfg: ClosureConfig, alphabet: Iterable[str]) -> FiniteLanguage:
    return FiniteLanguage.from_words((w for w in words if len(w) <= cfg.max_len), alphabet)


def bounded_closure_u(lang: FiniteLanguage, overlaps: OverlapSet, cfg: ClosureConfig) -> FiniteLanguage:
    """Unrestricted closure: U(i+1) = U(i) | GSCO(U(i)), iterated to its bounded fixed point."""
    cap = cfg.length_cap
    closure: Set[Word] = set(lang.words)
    index = _CutIndex()
    index.add_symbol_cuts(closure)
    fresh = set(closure)
    rounds = 0
    while fresh:
        delta = _CutIndex()
        delta.add_symbol_cuts(fresh)
        produced = _cross_step(delta, index, overlaps, cfg.direction_mode, cap)
        produced |= _cross_step(index, delta, overlaps, cfg.direction_mode, cap)
        fresh = produced - closure
        if not fresh:
            break
        rounds += 1
        _check_budget(cfg, rounds, closure, lang.alphabet)
        closure |= fresh
        index.add_symbol_cuts(fresh)
        logger.debug("Unrestricted closure round %d added %d words", rounds, len(fresh))
    return _report(closure, cfg, lang.alphabet)


def bounded_closure_r(lang: FiniteLanguage, overlaps: OverlapSet, cfg: ClosureConfig) -> FiniteLanguage:
    """Restricted closure: union of R(i+1) = GSCO(R(i), L), with R(0) = L."""
    cap = cfg.length_cap
    base = _CutIndex()
    base.add_symbol_cuts(lang.words)
    closure: Set[Word] = set(lang.words)
    fresh = set(closure)
    rounds = 0
    while fresh:
        delta = _CutIndex()
        delta.add_symbol_cuts(fresh)
        fresh = _cross_step(delta, base, overlaps, cfg.direction_mode, cap) - closure
        if not fresh:
            break
        rounds += 1
        _check_budget(cfg, rounds, closure, lang.alphabet)
        closure |= fresh
        logger.debug("Restricted closure round %d added %d words", rounds, len(fresh))
    return _report(closure, cfg, lang.alphabet)


class _UnrestrictedRounds:
    """Steps U(i) -> U(i+1) of a single-language closure one round at a time."""

    def __init__(self, words: Iterable[Word], overlaps: OverlapSet, direction: Direction, cap: int) -> None:
        self.words: Set[Word] = set(words)
        self.index = _CutIndex()
        self.index.add_symbol_cuts(self.words)
        self.overlaps = overlaps
        self.direction = direction
        self.cap = cap
        self.stable = False

    def advance(self) -> bool:
        """Take one step; False once the iterate has stopped changing."""
        if self.stable:
            return False
        produced = _cross_step(self.index, self.index, self.overlaps, self.direction, self.cap)
        fresh = produced - self.words
        if not fresh:
            self.stable = True
            return False
        self.words |= fresh
        self.index.add_symbol_cuts(fresh)
        return True


def bounded_closure_pair(
    l1: FiniteLanguage,
    l2: FiniteLanguage,
    overlaps: OverlapSet,
    cfg: ClosureConfig,
) -> FiniteLanguage:
    """Two-language closure: P(0) = L1 | L2, P(i+1) = P(i) | GSCO(U1(i), U2(i)).

    U1 and U2 are the single-language unrestricted iterates of L1 and L2.
    """
    cap = cfg.length_cap
    alphabet = l1.alphabet | l2.alphabet
    first = _UnrestrictedRounds(l1.words, overlaps, cfg.direction_mode, cap)
    second = _UnrestrictedRounds(l2.words, overlaps, cfg.direction_mode, cap)
    closure: Set[Word] = set(l1.words) | set(l2.words)
    rounds = 0
    while True:
        produced = _cross_step(first.index, second.index, overlaps, cfg.direction_mode, cap)
        fresh = produced - closure
        changed = [first.advance(), second.advance()]
        if not fresh and not any(changed):
            break
        rounds += 1
        _check_budget(cfg, rounds, closure, alphabet)
        closure |= fresh
    logger.debug("Pair closure settled after %d rounds with %d words", rounds, len(closure))
    return _report(closure, cfg, alphabet)


class _SpliceRounds:
    """Single-language iterates S(0) = L, S(1) = sigma(L, L), S(i+1) = S(i) | sigma(S(i), S(i))."""

    def __init__(self, words: Iterable[Word], rules: Sequence[SplicingRule], cap: int) -> None:
        self.rules = rules
        self.cap = cap
        self.words: Set[Word] = set(words)
        self.stable = False
        self._first_round = True

    def index(self) -> _CutIndex:
        index = _CutIndex()
        index.add_rule_cuts(self.words, self.rules)
        return index

    def advance(self) -> bool:
        """Take one step; False once the iterate has stopped changing."""
        if self.stable:
            return False
        current = self.index()
        produced = _splice_step(current, current, len(self.rules), self.cap)
        if self._first_round:
            self._first_round = False
            changed = produced != self.words
            self.stable = not changed
            self.words = produced
            return changed
        fresh = produced - self.words
        if not fresh:
            self.stable = True
            return False
        self.words |= fresh
        return True


def bounded_gs(
    l1: FiniteLanguage,
    l2: FiniteLanguage,
    overlaps: OverlapSet,
    cfg: ClosureConfig,
) -> FiniteLanguage:
    """Iterated generalized splicing with the rules x#$x# for x in the overlap set.

    The result is the union of every iterate, so it always contains L1 | L2.
    """
    rules = symbol_rules(overlaps)
    cap = cfg.length_cap
    alphabet = l1.alphabet | l2.alphabet
    first = _SpliceRounds(l1.words, rules, cap)
    second = _SpliceRounds(l2.words, rules, cap)
    closure: Set[Word] = set(l1.words) | set(l2.words)
    rounds = 0
    while True:
        # The first pass is sigma^1(L1, L2), which splices the operands themselves.
        produced = _splice_step(first.index(), second.index(), len(rules), cap)
        fresh = produced - closure
        changed = [first.advance(), second.advance()]
        if not fresh and not any(changed):
            break
        rounds += 1
        _check_budget(cfg, rounds, closure, alphabet)
        closure |= fresh
    logger.debug("Generalized splicing settled after %d rounds with %d words", rounds, len(closure))
    return _report(closure, cfg, alphabet)


def _prefix_factor_suffix_sets(words: Iterable[Word]) -> Tuple[Set[Word], Set[Word], Set[Word]]:
    prefixes: Set[Word] = set()
    factors: Set[Word] = set()
    suffixes: Set[Word] = set()
    for word in words:
        for i in range(len(word) + 1):
            prefixes.add(word[:i])
            suffixes.add(word[i:])
        factors |= _factors(word)
    return prefixes, factors, suffixes


def closure_member_dp(w: Sequence[str], lang: FiniteLanguage, overlaps: OverlapSet = ALL) -> bool:
    """Decide membership in the GSCO closure of a finite language by stitching.

    w is in the closure iff w is in L or w = x0 a1 x1 ... ak xk (k >= 1, ai
    crossover symbols) where x0 a1 is a prefix of an L-word, every
    ai xi a(i+1) is a factor of an L-word, and ak xk is a suffix of an L-word.
    """
    word = as_word(w)
    if word in lang.words:
        return True
    if not word:
        return False
    allowed = set(lang.alphabet) if overlaps.symbols is None else set(overlaps.symbols)
    prefixes, factors, suffixes = _prefix_factor_suffix_sets(lang.words)
    size = len(word)
    reachable = [False] * size
    for j in range(size):
        if word[j] not in allowed:
            continue
        if word[: j + 1] in prefixes:
            reachable[j] = True
            continue
        for i in range(j):
            if reachable[i] and word[i : j + 1] in factors:
                reachable[j] = True
                break
    return any(reachable[j] and word[j:] in suffixes for j in range(size))
