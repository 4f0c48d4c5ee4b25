import pytest

from mlm_server.scoring import EmptySpanError, MaskScorer, SpanError

from tests.conftest import TINY_MODEL


def test_single_span_single_subtoken(scorer):
    outcome = scorer.score("the virus causes disease", [(4, 9)])
    assert len(outcome.spans) == 1
    assert len(outcome.spans[0].subtoken_probs) == 1
    assert 0.0 < outcome.spans[0].subtoken_probs[0] <= 1.0
    assert outcome.truncated is False


def test_span_covering_several_words_yields_several_subtokens(scorer):
    text = "west nile virus"
    outcome = scorer.score(text, [(0, len(text))])
    assert len(outcome.spans[0].subtoken_probs) == 3


def test_unknown_word_decomposes_into_wordpieces(scorer):
    # "encephalitis" is not in the tiny vocabulary, so it splits into pieces
    text = "the encephalitis spreads"
    outcome = scorer.score(text, [(4, 16)])
    assert len(outcome.spans[0].subtoken_probs) >= 2


def test_multiple_spans_align(scorer):
    text = "the virus causes disease in people"
    spans = [(4, 9), (17, 24), (28, 34)]
    outcome = scorer.score(text, spans)
    assert len(outcome.spans) == 3
    for scores in outcome.spans:
        assert all(0.0 < p <= 1.0 for p in scores.subtoken_probs)


def test_determinism(scorer):
    text = "the reelin gene causes disease"
    spans = [(4, 15)]
    a = scorer.score(text, spans)
    b = scorer.score(text, spans)
    assert a == b


def test_out_of_bounds_span_rejected(scorer):
    with pytest.raises(SpanError):
        scorer.score("short", [(0, 99)])
    with pytest.raises(SpanError):
        scorer.score("short", [(3, 2)])


def test_overlapping_spans_rejected(scorer):
    with pytest.raises(SpanError):
        scorer.score("the virus spreads", [(0, 7), (4, 9)])


def test_whitespace_only_span_is_empty(scorer):
    with pytest.raises(EmptySpanError):
        scorer.score("the virus", [(3, 4)])


def test_long_text_is_windowed_and_flagged(scorer):
    filler = "the virus causes disease in people and mice . " * 12
    text = filler + "west nile virus ends this text"
    start = len(filler)
    outcome = scorer.score(text, [(start, start + 15)])
    assert outcome.truncated is True
    assert len(outcome.spans[0].subtoken_probs) == 3


def test_window_keeps_probabilities_in_range(scorer):
    filler = "gene virus cell blood brain study risk host human model " * 10
    outcome = scorer.score(filler, [(0, 4), (5, 10)])
    assert outcome.truncated is True
    for scores in outcome.spans:
        assert all(0.0 < p <= 1.0 for p in scores.subtoken_probs)


def test_span_wider_than_context_rejected(scorer):
    text = "gene virus cell blood brain study risk host human model " * 10
    with pytest.raises(SpanError, match="context"):
        scorer.score(text, [(0, len(text) - 1)])


def test_model_version_names_checkpoint(scorer):
    assert TINY_MODEL in scorer.model_version


def test_max_context_respects_config(scorer):
    assert scorer.max_context == 64
