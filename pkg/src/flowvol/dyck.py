"""Labeled Dyck words: validation, serialization, exhaustive enumeration.

A step is encoded as an int: UP (-1) for an up-step, or the label 0..k for
a labeled down-step.  Within every maximal run of consecutive down-steps
the labels must be weakly decreasing.  Enumeration order is decreasing
lexicographic with respect to U < D0 < ... < Dk, i.e. at each position
down-steps with high labels are tried first and U last; this int encoding
makes that plain tuple comparison reversed.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

UP = -1


@dataclass(frozen=True)
class LabeledDyckWord:
    """Balanced word over {U, D0..Dk} with the prefix and weak-decrease conditions."""

    steps: tuple[int, ...]
    k: int

    def __post_init__(self) -> None:
        if self.k < 1:
            raise ValueError("label bound k must be >= 1")
        _validate_steps(self.steps, self.k)
        ups = sum(1 for s in self.steps if s == UP)
        if 2 * ups != len(self.steps):
            raise ValueError(
                f"word has {ups} up-steps and {len(self.steps) - ups} down-steps; must balance"
            )

    @property
    def n(self) -> int:
        return len(self.steps) // 2

    def label_counts(self) -> tuple[int, ...]:
        counts = [0] * (self.k + 1)
        for s in self.steps:
            if s != UP:
                counts[s] += 1
        return tuple(counts)

    @property
    def zero_label_count(self) -> int:
        return sum(1 for s in self.steps if s == 0)

    def eligible_positions(self) -> tuple[int, ...]:
        """Positions (0-based) of up-steps and 0-labeled down-steps, in path order."""
        return tuple(t for t, s in enumerate(self.steps) if s == UP or s == 0)

    def __str__(self) -> str:
        return format_word(self)


@dataclass(frozen=True)
class DoublyLabeledDyckWord:
    """Labeled word plus a weakly increasing channel over up-steps and 0-labeled down-steps."""

    base: LabeledDyckWord
    extra: tuple[int, ...]

    def __post_init__(self) -> None:
        want = len(self.base.eligible_positions())
        if len(self.extra) != want:
            raise ValueError(f"extra channel has {len(self.extra)} labels; expected {want}")
        for t, e in enumerate(self.extra):
            if not 1 <= e <= self.base.k:
                raise ValueError(f"extra label {e} at slot {t + 1} outside 1..{self.base.k}")
            if t and e < self.extra[t - 1]:
                raise ValueError(f"extra labels must be weakly increasing; violated at slot {t + 1}")

    def __str__(self) -> str:
        return format_word(self)


@dataclass(frozen=True)
class DyckPrefixWord:
    """Word prefix with the same step conditions, ending at height i >= 0."""

    steps: tuple[int, ...]
    k: int

    def __post_init__(self) -> None:
        if self.k < 1:
            raise ValueError("label bound k must be >= 1")
        _validate_steps(self.steps, self.k)

    @property
    def n(self) -> int:
        return sum(1 for s in self.steps if s == UP)

    @property
    def height(self) -> int:
        return 2 * self.n - len(self.steps)

    def label_counts(self) -> tuple[int, ...]:
        counts = [0] * (self.k + 1)
        for s in self.steps:
            if s != UP:
                counts[s] += 1
        return tuple(counts)

    def __str__(self) -> str:
        return format_word(self)


def _validate_steps(steps: Sequence[int], k: int) -> None:
    height = 0
    for t, s in enumerate(steps):
        if s == UP:
            height += 1
            continue
        if not 0 <= s <= k:
            raise ValueError(f"step {t + 1}: label {s} outside 0..{k}")
        height -= 1
        if height < 0:
            raise ValueError(f"step {t + 1}: prefix has more down-steps than up-steps")
        if t and steps[t - 1] != UP and steps[t - 1] < s:
            raise ValueError(f"step {t + 1}: down-run labels must weakly decrease")


def tokenize_steps(text: str) -> tuple[int, ...]:
    """Turn ``U``/``D<decimal>`` text into the step encoding; no whitespace allowed."""
    steps = []
    pos = 0
    while pos < len(text):
        ch = text[pos]
        if ch == "U":
            steps.append(UP)
            pos += 1
            continue
        if ch == "D":
            end = pos + 1
            while end < len(text) and text[end].isdigit():
                end += 1
            if end == pos + 1:
                raise ValueError(f"position {pos + 1}: D needs a decimal label")
            steps.append(int(text[pos + 1 : end]))
            pos = end
            continue
        raise ValueError(f"position {pos + 1}: unexpected character {ch!r}")
    return tuple(steps)


def parse_word(text: str, k: int, *, doubly: bool = False) -> LabeledDyckWord | DoublyLabeledDyckWord:
    """Parse the word grammar, with the ``|extras`` channel required exactly
    when a doubly labeled word is requested."""
    body, bar, tail = text.partition("|")
    if doubly and not bar:
        raise ValueError("doubly labeled word needs a '|' extra-label channel")
    if not doubly and bar:
        raise ValueError("plain labeled word must not carry a '|' channel")
    base = LabeledDyckWord(tokenize_steps(body), k)
    if not doubly:
        return base
    extra = tuple(int(tok) for tok in tail.split(",")) if tail else ()
    return DoublyLabeledDyckWord(base, extra)


def format_word(word: LabeledDyckWord | DoublyLabeledDyckWord | DyckPrefixWord) -> str:
    if isinstance(word, DoublyLabeledDyckWord):
        extras = ",".join(str(e) for e in word.extra)
        return format_word(word.base) + "|" + extras
    return "".join("U" if s == UP else f"D{s}" for s in word.steps)


def labeled_dyck_words(
    n: int,
    k: int,
    *,
    zeros: int | None = None,
    label_counts: Sequence[int] | None = None,
) -> Iterator[LabeledDyckWord]:
    """All words of half-length n, optionally filtered by the number of
    0-labels or by the full label-count vector (a_0..a_k)."""
    if n < 0 or k < 1:
        raise ValueError("labeled_dyck_words requires n >= 0 and k >= 1")
    if zeros is not None and label_counts is not None:
        raise ValueError("give at most one of zeros and label_counts")
    remaining: list[int] | None = None
    if label_counts is not None:
        remaining = [int(c) for c in label_counts]
        if len(remaining) != k + 1 or any(c < 0 for c in remaining) or sum(remaining) != n:
            raise ValueError("label_counts must be k+1 nonnegative entries summing to n")
    if zeros is not None and not 0 <= zeros <= n:
        raise ValueError("zeros filter must lie in 0..n")

    steps: list[int] = []

    def walk(ups: int, downs: int, used_zeros: int) -> Iterator[LabeledDyckWord]:
        if ups == n and downs == n:
            yield LabeledDyckWord(tuple(steps), k)
            return
        in_run = steps and steps[-1] != UP
        top = steps[-1] if in_run else k
        if downs < ups:
            for label in range(top, -1, -1):
                if remaining is not None and remaining[label] == 0:
                    continue
                if label == 0 and zeros is not None:
                    if used_zeros == zeros:
                        continue
                elif label != 0 and zeros is not None:
                    # the zeros still owed must fit into the remaining down-steps
                    if (zeros - used_zeros) > (n - downs - 1):
                        continue
                steps.append(label)
                if remaining is not None:
                    remaining[label] -= 1
                yield from walk(ups, downs + 1, used_zeros + (label == 0))
                if remaining is not None:
                    remaining[label] += 1
                steps.pop()
        if ups < n:
            if zeros is not None and (zeros - used_zeros) > (n - downs):
                return
            steps.append(UP)
            yield from walk(ups + 1, downs, used_zeros)
            steps.pop()

    yield from walk(0, 0, 0)


def doubly_labeled_dyck_words(n: int, k: int) -> Iterator[DoublyLabeledDyckWord]:
    """All doubly labeled words, by base word then extra channel."""
    for base in labeled_dyck_words(n, k):
        slots = len(base.eligible_positions())
        for extra in weakly_increasing_tuples(slots, k):
            yield DoublyLabeledDyckWord(base, extra)


def weakly_increasing_tuples(length: int, hi: int) -> Iterator[tuple[int, ...]]:
    """Weakly increasing tuples over 1..hi in increasing lexicographic order."""
    if length == 0:
        yield ()
        return

    def walk(prefix: list[int], lo: int) -> Iterator[tuple[int, ...]]:
        if len(prefix) == length:
            yield tuple(prefix)
            return
        for v in range(lo, hi + 1):
            prefix.append(v)
            yield from walk(prefix, v)
            prefix.pop()

    yield from walk([], 1)


def dyck_prefixes(
    n: int, i: int, k: int, label_counts: Sequence[int]
) -> Iterator[DyckPrefixWord]:
    """All prefixes with n up-steps ending at height i, with the given
    down-label multiplicities (a_0..a_k summing to n-i)."""
    if not 0 <= i <= n:
        raise ValueError("height i must lie in 0..n")
    counts = [int(c) for c in label_counts]
    if len(counts) != k + 1 or any(c < 0 for c in counts) or sum(counts) != n - i:
        raise ValueError("label_counts must be k+1 nonnegative entries summing to n-i")
    steps: list[int] = []
    downs_total = n - i

    def walk(ups: int, downs: int) -> Iterator[DyckPrefixWord]:
        if ups == n and downs == downs_total:
            yield DyckPrefixWord(tuple(steps), k)
            return
        in_run = steps and steps[-1] != UP
        top = steps[-1] if in_run else k
        if downs < downs_total and downs < ups:
            for label in range(top, -1, -1):
                if counts[label] == 0:
                    continue
                steps.append(label)
                counts[label] -= 1
                yield from walk(ups, downs + 1)
                counts[label] += 1
                steps.pop()
        if ups < n:
            steps.append(UP)
            yield from walk(ups + 1, downs)
            steps.pop()

    yield from walk(0, 0)


def min_constrained_run_vectors(n: int, mins: Sequence[int]) -> Iterator[tuple[int, ...]]:
    """Run-length vectors (d_1..d_n) of Dyck words U D^{d_n} ... U D^{d_1}
    with d_i >= mins[i]; the word condition is dominance of (d_1..d_n) over
    all-ones."""
    mins = tuple(int(a) for a in mins)
    if len(mins) != n or any(a < 0 for a in mins):
        raise ValueError("mins must be n nonnegative integers")
    if sum(mins) > n:
        raise ValueError("mins must sum to at most n")

    def walk(prefix: list[int], total: int) -> Iterator[tuple[int, ...]]:
        idx = len(prefix)
        if idx == n:
            if total == n:
                yield tuple(prefix)
            return
        for d in range(n - total, max(mins[idx], idx + 1 - total) - 1, -1):
            prefix.append(d)
            yield from walk(prefix, total + d)
            prefix.pop()

    yield from walk([], 0)


def min_constrained_count(n: int, mins: Sequence[int]) -> int:
    return sum(1 for _ in min_constrained_run_vectors(n, mins))


def path_points(word: LabeledDyckWord | DyckPrefixWord) -> tuple[tuple[int, int], ...]:
    """Lattice points visited by the word, starting at (0, 0)."""
    points = [(0, 0)]
    x = y = 0
    for s in word.steps:
        x += 1
        y += 1 if s == UP else -1
        points.append((x, y))
    return tuple(points)


def down_labels(word: LabeledDyckWord | DyckPrefixWord) -> tuple[int, ...]:
    return tuple(s for s in word.steps if s != UP)


def word_from_path(
    points: Sequence[tuple[int, int]], labels: Sequence[int], k: int
) -> LabeledDyckWord:
    """Inverse of (path_points, down_labels): rebuild the word from geometry."""
    if not points or points[0] != (0, 0):
        raise ValueError("path must start at (0, 0)")
    steps: list[int] = []
    labels = list(labels)
    pos = 0
    for (x0, y0), (x1, y1) in zip(points, points[1:]):
        if x1 != x0 + 1 or abs(y1 - y0) != 1:
            raise ValueError(f"segment {(x0, y0)} -> {(x1, y1)} is not a unit step")
        if y1 > y0:
            steps.append(UP)
        else:
            if pos >= len(labels):
                raise ValueError("fewer labels than down-steps")
            steps.append(labels[pos])
            pos += 1
    if pos != len(labels):
        raise ValueError("more labels than down-steps")
    return LabeledDyckWord(tuple(steps), k)
