import pytest
from hypothesis import given, strategies as st

from flowvol.closedforms import labeled_dyck_count
from flowvol.dyck import (
    DoublyLabeledDyckWord,
    LabeledDyckWord,
    down_labels,
    doubly_labeled_dyck_words,
    dyck_prefixes,
    format_word,
    labeled_dyck_words,
    min_constrained_count,
    min_constrained_run_vectors,
    parse_word,
    path_points,
    tokenize_steps,
    word_from_path,
)

FIGURE_WORD = "UD0UUUUD5UD3D0UUUD4D2D0D0UD1D1"


def test_parse_figure_word():
    word = parse_word(FIGURE_WORD, 5)
    assert isinstance(word, LabeledDyckWord)
    assert word.n == 10
    assert word.zero_label_count == 4
    assert format_word(word) == FIGURE_WORD


def test_parse_doubly_labeled():
    word = parse_word("UD0UD1|1,1,1", 1, doubly=True)
    assert isinstance(word, DoublyLabeledDyckWord)
    assert word.base.eligible_positions() == (0, 1, 2)
    assert word.extra == (1, 1, 1)


def test_weak_decrease_violation_reports_position():
    with pytest.raises(ValueError, match="step 4"):
        parse_word("UUD1D2", 2)


def test_prefix_violation_reports_position():
    with pytest.raises(ValueError, match="step 3"):
        LabeledDyckWord(tokenize_steps("UD0D0U"), 1)


def test_malformed_tokens_report_position():
    with pytest.raises(ValueError, match="position 3"):
        tokenize_steps("UUX")
    with pytest.raises(ValueError, match="position 2"):
        tokenize_steps("UD")


def test_extra_channel_gating():
    with pytest.raises(ValueError):
        parse_word("UD0", 1, doubly=True)
    with pytest.raises(ValueError):
        parse_word("UD1|1", 1)


def test_extra_channel_validation():
    base = parse_word("UD0UD1", 2)
    with pytest.raises(ValueError):
        DoublyLabeledDyckWord(base, (1,))  # wrong length
    with pytest.raises(ValueError):
        DoublyLabeledDyckWord(base, (2, 1, 1))  # not weakly increasing
    with pytest.raises(ValueError):
        DoublyLabeledDyckWord(base, (1, 1, 3))  # label out of range


def test_run_with_decreasing_labels_is_valid():
    assert parse_word("UUD1D0", 2).label_counts() == (1, 1, 0)
    with pytest.raises(ValueError):
        parse_word("UUD0D1", 2)


def test_enumerate_golden_order():
    words = [format_word(w) for w in labeled_dyck_words(2, 1, zeros=0)]
    assert words == ["UD1UD1", "UUD1D1"]


def test_enumerate_full_ld21():
    words = [w.steps for w in labeled_dyck_words(2, 1)]
    assert len(words) == len(set(words)) == 7
    # decreasing lexicographic in the step encoding (U below all labels)
    assert words == sorted(words, reverse=True)
    assert words[0] == tokenize_steps("UD1UD1")


def test_enumerate_composition_filter():
    assert sum(1 for _ in labeled_dyck_words(3, 3, label_counts=(0, 1, 1, 1))) == 16


def test_enumerate_forced_zero():
    assert [format_word(w) for w in labeled_dyck_words(1, 2, zeros=1)] == ["UD0"]


def test_enumerate_empty_word():
    assert [w.steps for w in labeled_dyck_words(0, 2)] == [()]


def test_enumerate_filter_validation():
    with pytest.raises(ValueError):
        list(labeled_dyck_words(2, 1, zeros=3))
    with pytest.raises(ValueError):
        list(labeled_dyck_words(2, 1, label_counts=(1, 0)))
    with pytest.raises(ValueError):
        list(labeled_dyck_words(2, 1, zeros=0, label_counts=(0, 2)))


def test_doubly_labeled_counts():
    assert sum(1 for _ in doubly_labeled_dyck_words(2, 1)) == 7
    assert sum(1 for _ in doubly_labeled_dyck_words(1, 1)) == 2
    assert sum(1 for _ in doubly_labeled_dyck_words(0, 3)) == 1


def test_doubly_labeled_channel_lengths():
    for word in doubly_labeled_dyck_words(3, 2):
        assert len(word.extra) == word.base.n + word.base.zero_label_count


def test_prefix_golden():
    words = [format_word(w) for w in dyck_prefixes(2, 1, 1, (1, 0))]
    assert words == ["UD0U", "UUD0"]


def test_prefix_all_up():
    assert [format_word(w) for w in dyck_prefixes(2, 2, 1, (0, 0))] == ["UU"]


def test_prefix_count():
    assert sum(1 for _ in dyck_prefixes(3, 1, 2, (1, 1, 0))) == 8


def test_prefix_heights():
    for word in dyck_prefixes(4, 2, 2, (1, 1, 0)):
        assert word.height == 2
        assert word.n == 4
        assert word.label_counts() == (1, 1, 0)


def test_prefix_validation():
    with pytest.raises(ValueError):
        list(dyck_prefixes(2, 3, 1, (0, 0)))
    with pytest.raises(ValueError):
        list(dyck_prefixes(3, 1, 1, (1, 0)))  # counts sum != n - i


def test_min_constrained_examples():
    assert min_constrained_count(2, (0, 0)) == 2
    assert min_constrained_count(2, (1, 1)) == 1
    assert min_constrained_count(3, (0, 1, 0)) == 3


def test_min_constrained_run_vectors_are_dyck():
    for d in min_constrained_run_vectors(4, (0, 0, 0, 0)):
        assert sum(d) == 4
        assert all(sum(d[: j + 1]) >= j + 1 for j in range(4))
    assert min_constrained_count(4, (0, 0, 0, 0)) == 14  # Catalan


def test_min_constrained_validation():
    with pytest.raises(ValueError):
        min_constrained_count(2, (2, 1))
    with pytest.raises(ValueError):
        min_constrained_count(2, (1,))


def test_path_round_trip():
    word = parse_word(FIGURE_WORD, 5)
    rebuilt = word_from_path(path_points(word), down_labels(word), 5)
    assert rebuilt == word


def test_empty_path_round_trip():
    empty = LabeledDyckWord((), 1)
    assert path_points(empty) == ((0, 0),)
    assert word_from_path(((0, 0),), (), 1) == empty


def test_word_from_path_validation():
    with pytest.raises(ValueError):
        word_from_path(((0, 0), (2, 2)), (), 1)
    with pytest.raises(ValueError):
        word_from_path(((0, 0), (1, 1), (2, 0)), (), 1)  # missing label


@given(st.integers(min_value=0, max_value=4), st.integers(min_value=1, max_value=3))
def test_serialize_parse_round_trip(n, k):
    for word in labeled_dyck_words(n, k):
        assert parse_word(format_word(word), k) == word


def test_doubly_serialize_round_trip():
    for word in doubly_labeled_dyck_words(2, 2):
        assert parse_word(format_word(word), 2, doubly=True) == word


def test_enumeration_counts_match_closed_form_small():
    for n in range(0, 5):
        for k in (1, 2):
            buckets = {}
            for word in labeled_dyck_words(n, k):
                buckets[word.label_counts()] = buckets.get(word.label_counts(), 0) + 1
            for counts, size in buckets.items():
                assert size == labeled_dyck_count(n, k, counts)
