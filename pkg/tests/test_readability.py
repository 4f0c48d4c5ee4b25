import pytest
from hypothesis import given
from hypothesis import strategies as st

from readlab.readability import (
    ClassicScores,
    DegenerateTextError,
    TextStats,
    classic_scores,
    compute_text_stats,
)
from readlab.textseg import tokenize


def test_stats_simple_sentence():
    stats = compute_text_stats(tokenize("WNV is transmitted."))
    assert stats.words == 3
    assert stats.sentences == 1


def test_stats_empty():
    stats = compute_text_stats(tokenize(""))
    assert stats == TextStats(words=0, sentences=0, syllables=0, letters=0)


def test_stats_two_sentences():
    stats = compute_text_stats(tokenize("It works. Really."))
    assert stats.sentences == 2
    assert stats.words == 3


def test_stats_numbers_count_as_words():
    stats = compute_text_stats(tokenize("Cohort of 1300 people."))
    assert stats.words == 4
    assert stats.letters == len("Cohortofpeople")
    # the number contributes exactly one syllable; "people" has runs eo, e
    # with the final e dropped
    assert stats.syllables == 2 + 1 + 1 + 1


def test_fkg_hand_computed():
    scores = classic_scores(TextStats(words=10, sentences=1, syllables=15, letters=40))
    assert scores.fkg == pytest.approx(6.01, abs=1e-6)


def test_ari_hand_computed():
    scores = classic_scores(TextStats(words=10, sentences=1, syllables=10, letters=45))
    assert scores.ari == pytest.approx(4.765, abs=1e-6)


def test_cli_hand_computed():
    scores = classic_scores(TextStats(words=10, sentences=1, syllables=10, letters=45))
    assert scores.cli == pytest.approx(7.70, abs=1e-6)


def test_degenerate_text_raises():
    with pytest.raises(DegenerateTextError, match="degenerate text"):
        classic_scores(TextStats(words=0, sentences=0, syllables=0, letters=0))
    with pytest.raises(DegenerateTextError):
        classic_scores(TextStats(words=5, sentences=0, syllables=5, letters=20))


_stats = st.builds(
    TextStats,
    words=st.integers(min_value=1, max_value=500),
    sentences=st.integers(min_value=1, max_value=50),
    syllables=st.integers(min_value=1, max_value=1500),
    letters=st.integers(min_value=0, max_value=4000),
)


@given(_stats, st.integers(min_value=2, max_value=5))
def test_duplication_invariance(stats, k):
    doubled = TextStats(
        words=stats.words * k,
        sentences=stats.sentences * k,
        syllables=stats.syllables * k,
        letters=stats.letters * k,
    )
    a = classic_scores(stats)
    b = classic_scores(doubled)
    assert a.fkg == pytest.approx(b.fkg, abs=1e-9)
    assert a.cli == pytest.approx(b.cli, abs=1e-9)
    assert a.ari == pytest.approx(b.ari, abs=1e-9)


@given(_stats)
def test_scores_increase_with_letters_and_syllables(stats):
    more_letters = TextStats(stats.words, stats.sentences, stats.syllables, stats.letters + 10)
    more_syllables = TextStats(stats.words, stats.sentences, stats.syllables + 10, stats.letters)
    base = classic_scores(stats)
    assert classic_scores(more_letters).cli > base.cli
    assert classic_scores(more_letters).ari > base.ari
    assert classic_scores(more_syllables).fkg > base.fkg


def test_classic_scores_shape():
    scores = classic_scores(TextStats(words=30, sentences=2, syllables=50, letters=150))
    assert isinstance(scores, ClassicScores)
