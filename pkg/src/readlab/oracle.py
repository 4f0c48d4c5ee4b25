"""Extractive oracle labeling and budgeted top-k sentence selection.

The greedy oracle repeatedly adds the document sentence that most improves
ROUGE-1 recall + ROUGE-2 recall of the selection (concatenated in document
order) against a reference summary, stopping when no sentence strictly
improves the score. Top-k selection fills a token budget in descending
score order.
"""

from __future__ import annotations

from typing import Sequence

from .overlap import rouge_n

__all__ = ["greedy_oracle", "greedy_oracle_trace", "topk_select"]


def _selection_score(
    doc_sentences: Sequence[Sequence[str]],
    selected: Sequence[int],
    reference_tokens: Sequence[str],
) -> float:
    tokens: list[str] = []
    for idx in sorted(selected):
        tokens.extend(doc_sentences[idx])
    r1 = rouge_n(tokens, reference_tokens, 1).recall
    r2 = rouge_n(tokens, reference_tokens, 2).recall
    return r1 + r2


def greedy_oracle_trace(
    doc_sentences: Sequence[Sequence[str]],
    reference_tokens: Sequence[str],
    max_sentences: int | None = None,
) -> tuple[list[int], list[float]]:
    """Greedy selection returning (indices in document order, step scores).

    Ties between candidate sentences break toward the lower index; the
    step score sequence is strictly increasing by construction.
    """
    if not doc_sentences:
        raise ValueError("no sentences to select from")
    if not reference_tokens:
        raise ValueError("empty reference")
    if max_sentences is not None and max_sentences < 1:
        raise ValueError("max_sentences must be >= 1")

    selected: list[int] = []
    step_scores: list[float] = []
    best = 0.0
    remaining = set(range(len(doc_sentences)))
    while remaining and (max_sentences is None or len(selected) < max_sentences):
        best_idx = -1
        best_score = best
        for idx in sorted(remaining):
            score = _selection_score(doc_sentences, selected + [idx], reference_tokens)
            if score > best_score:
                best_score = score
                best_idx = idx
        if best_idx < 0:
            break
        selected.append(best_idx)
        remaining.remove(best_idx)
        best = best_score
        step_scores.append(best_score)
    return sorted(selected), step_scores


def greedy_oracle(
    doc_sentences: Sequence[Sequence[str]],
    reference_tokens: Sequence[str],
    max_sentences: int | None = None,
) -> list[int]:
    """Indices of the greedily selected sentences, in document order."""
    indices, _ = greedy_oracle_trace(doc_sentences, reference_tokens, max_sentences)
    return indices


def topk_select(
    sentence_scores: Sequence[float],
    sentence_token_lengths: Sequence[int],
    token_budget: int,
) -> list[int]:
    """Take sentences in descending score order (ties toward the lower
    index) until the next one would exceed the token budget; the first
    sentence is always taken. Returns indices in document order.
    """
    if not sentence_scores:
        raise ValueError("no sentences to select from")
    if len(sentence_scores) != len(sentence_token_lengths):
        raise ValueError("scores and lengths must align")
    if token_budget <= 0:
        raise ValueError("token budget must be positive")

    order = sorted(range(len(sentence_scores)), key=lambda i: (-sentence_scores[i], i))
    selected: list[int] = []
    used = 0
    for idx in order:
        length = sentence_token_lengths[idx]
        if selected and used + length > token_budget:
            break
        selected.append(idx)
        used += length
    return sorted(selected)
