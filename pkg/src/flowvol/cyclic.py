"""Cycle-lemma machinery on extended labeled words.

An extended word has one more up-step than it has down-steps, starts with
U, and keeps the weak-decrease condition on consecutive down-steps.
Repeatedly deleting cyclically adjacent (U, D) pairs leaves a single U
whose ordinal is the survivor index; rotating at the last U realizes the
cyclic shift, and together they give the many-to-one projection onto
labeled Dyck words.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .dyck import UP, LabeledDyckWord, tokenize_steps


@dataclass(frozen=True)
class ExtendedWord:
    """Word of odd length 2n+1 with n+1 up-steps, starting with U."""

    letters: tuple[int, ...]
    k: int

    def __post_init__(self) -> None:
        _validate_letters(self.letters, self.k)
        downs = sum(1 for s in self.letters if s != UP)
        if len(self.letters) != 2 * downs + 1:
            raise ValueError("extended word must have exactly one more U than down-steps")

    @property
    def n(self) -> int:
        return len(self.letters) // 2

    def __str__(self) -> str:
        return "".join("U" if s == UP else f"D{s}" for s in self.letters)


@dataclass(frozen=True)
class PrefixExtendedWord:
    """Word of length 2n-i+1 with n+1 up-steps, starting with U."""

    letters: tuple[int, ...]
    k: int

    def __post_init__(self) -> None:
        _validate_letters(self.letters, self.k)
        if self.height < 0:
            raise ValueError("prefix extended word has too many down-steps")

    @property
    def n(self) -> int:
        return sum(1 for s in self.letters if s == UP) - 1

    @property
    def height(self) -> int:
        # i in length 2n-i+1: the down-step deficit
        return 2 * self.n + 1 - len(self.letters)

    def __str__(self) -> str:
        return "".join("U" if s == UP else f"D{s}" for s in self.letters)


def _validate_letters(letters: tuple[int, ...], k: int) -> None:
    if k < 1:
        raise ValueError("label bound k must be >= 1")
    if not letters or letters[0] != UP:
        raise ValueError("word must start with U")
    for t, s in enumerate(letters):
        if s != UP:
            if not 0 <= s <= k:
                raise ValueError(f"position {t + 1}: label {s} outside 0..{k}")
            if t and letters[t - 1] != UP and letters[t - 1] < s:
                raise ValueError(f"position {t + 1}: down-run labels must weakly decrease")


def parse_extended_word(text: str, k: int) -> ExtendedWord:
    return ExtendedWord(tokenize_steps(text), k)


def survivor_index(word: ExtendedWord | PrefixExtendedWord, *, strategy: str = "leftmost") -> int:
    """Ordinal (1-based, among the original U's) of the U left by repeatedly
    deleting cyclically adjacent (U, D) pairs.

    The deletion order must not change the answer; strategy picks which
    deletable pair goes first so tests can compare orders.
    """
    survivors = _delete_pairs(word, target_ups=1, strategy=strategy)
    return survivors[0]


def _delete_pairs(
    word: ExtendedWord | PrefixExtendedWord, target_ups: int, strategy: str
) -> list[int]:
    if strategy not in ("leftmost", "rightmost"):
        raise ValueError(f"unknown strategy {strategy!r}")
    items: list[tuple[int, int]] = []  # (letter, original U ordinal or 0)
    ordinal = 0
    for s in word.letters:
        if s == UP:
            ordinal += 1
            items.append((UP, ordinal))
        else:
            items.append((s, 0))
    ups = ordinal
    while ups > target_ups:
        size = len(items)
        candidates = [
            t for t in range(size)
            if items[t][0] == UP and items[(t + 1) % size][0] != UP
        ]
        if not candidates:
            raise ValueError("no deletable pair although down-steps remain")
        t = candidates[0] if strategy == "leftmost" else candidates[-1]
        follow = (t + 1) % size
        for idx in sorted((t, follow), reverse=True):
            del items[idx]
        ups -= 1
    return sorted(ord_ for letter, ord_ in items if letter == UP)


def shift(word: ExtendedWord) -> ExtendedWord:
    """Rotate so the final U-started suffix moves to the front."""
    last_up = max(t for t, s in enumerate(word.letters) if s == UP)
    return ExtendedWord(word.letters[last_up:] + word.letters[:last_up], word.k)


def project(word: ExtendedWord) -> tuple[LabeledDyckWord, int]:
    """The unique rotation count j with shift^j(word) = w'U for a valid
    labeled Dyck word w'; returns (w', j).

    j is pinned by the survivor index (shifting increments it mod n+1, and
    dropping the final U of a valid word needs index n+1).
    """
    n = word.n
    j = (n + 1 - survivor_index(word)) % (n + 1)
    rotated = word
    for _ in range(j):
        rotated = shift(rotated)
    if rotated.letters[-1] != UP:
        raise ValueError("projection did not end with U; invalid extended word")
    base = LabeledDyckWord(rotated.letters[:-1], word.k)
    return base, j


def index_candidates(word: PrefixExtendedWord) -> frozenset[int]:
    """Ordinals of U's that can survive cyclic deletion down to i+1 U's,
    over every maximal deletion order."""
    target = word.height + 1
    memo: dict[tuple[tuple[int, int], ...], frozenset[int]] = {}

    def explore(items: tuple[tuple[int, int], ...]) -> frozenset[int]:
        cached = memo.get(items)
        if cached is not None:
            return cached
        size = len(items)
        candidates = [
            t for t in range(size)
            if items[t][0] == UP and items[(t + 1) % size][0] != UP
        ]
        if not candidates:
            result = frozenset(ord_ for letter, ord_ in items if letter == UP)
        else:
            result = frozenset()
            for t in candidates:
                follow = (t + 1) % size
                rest = tuple(
                    item for idx, item in enumerate(items) if idx != t and idx != follow
                )
                result |= explore(rest)
        memo[items] = result
        return result

    items = []
    ordinal = 0
    for s in word.letters:
        if s == UP:
            ordinal += 1
            items.append((UP, ordinal))
        else:
            items.append((s, 0))
    result = explore(tuple(items))
    if len(result) != target:
        raise AssertionError(
            f"expected {target} index candidates, found {len(result)} for {word}"
        )
    return result


def extended_words(n: int, k: int) -> Iterator[ExtendedWord]:
    """All extended words of length 2n+1, same order convention as the
    Dyck enumerations (high labels first, U last)."""
    yield from _words(n + 1, n, k, ExtendedWord)


def prefix_extended_words(n: int, i: int, k: int) -> Iterator[PrefixExtendedWord]:
    """All prefix extended words of length 2n-i+1 with n+1 up-steps."""
    if not 0 <= i <= n:
        raise ValueError("height i must lie in 0..n")
    yield from _words(n + 1, n - i, k, PrefixExtendedWord)


def _words(total_ups: int, total_downs: int, k: int, cls) -> Iterator:
    if k < 1:
        raise ValueError("label bound k must be >= 1")
    letters: list[int] = [UP]

    def walk(ups: int, downs: int) -> Iterator:
        if ups == total_ups and downs == total_downs:
            yield cls(tuple(letters), k)
            return
        in_run = letters[-1] != UP
        top = letters[-1] if in_run else k
        if downs < total_downs:
            for label in range(top, -1, -1):
                letters.append(label)
                yield from walk(ups, downs + 1)
                letters.pop()
        if ups < total_ups:
            letters.append(UP)
            yield from walk(ups + 1, downs)
            letters.pop()

    yield from walk(1, 0)
