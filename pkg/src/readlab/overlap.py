"""Lexical similarity measures: ROUGE-1/2/L and the n-gram overlap fraction
between paired plain-language and technical summaries.

Tokens are lowercased by default; there is no stemming and no stop-word
removal. Multi-sentence inputs are treated as one token sequence, so
n-grams may cross sentence boundaries.
"""

from __future__ import annotations

from collections import Counter
from typing import NamedTuple, Sequence

__all__ = ["RougeScore", "ngrams", "ngram_overlap_fraction", "rouge_n", "rouge_l"]


class RougeScore(NamedTuple):
    precision: float
    recall: float
    f1: float


def _norm(tokens: Sequence[str], lowercase: bool) -> list[str]:
    return [t.lower() for t in tokens] if lowercase else list(tokens)


def ngrams(tokens: Sequence[str], n: int) -> Counter:
    """Multiset of token n-grams."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return Counter(tuple(tokens[i : i + n]) for i in range(len(tokens) - n + 1))


def ngram_overlap_fraction(
    pls_tokens: Sequence[str],
    tech_tokens: Sequence[str],
    n: int,
    lowercase: bool = True,
) -> float:
    """Fraction of n-gram occurrences in the plain summary whose n-gram also
    appears (at least once) in the technical summary.

    Occurrences, not types, are counted on the plain side; matching on the
    technical side is by membership. Raises ValueError when the plain
    summary is shorter than n tokens.
    """
    pls = _norm(pls_tokens, lowercase)
    tech = _norm(tech_tokens, lowercase)
    pls_grams = ngrams(pls, n)
    total = sum(pls_grams.values())
    if total == 0:
        raise ValueError("no n-grams")
    tech_types = set(ngrams(tech, n))
    matched = sum(count for gram, count in pls_grams.items() if gram in tech_types)
    return matched / total


def _f1(precision: float, recall: float) -> float:
    if precision + recall == 0.0:
        return 0.0
    return 2.0 * precision * recall / (precision + recall)


def rouge_n(
    candidate_tokens: Sequence[str],
    reference_tokens: Sequence[str],
    n: int,
    lowercase: bool = True,
) -> RougeScore:
    """ROUGE-N via clipped n-gram co-occurrence (multiset intersection).

    Empty candidate or reference gives zero scores rather than an error.
    """
    cand = ngrams(_norm(candidate_tokens, lowercase), n)
    ref = ngrams(_norm(reference_tokens, lowercase), n)
    cand_total = sum(cand.values())
    ref_total = sum(ref.values())
    match = sum((cand & ref).values())
    precision = match / cand_total if cand_total else 0.0
    recall = match / ref_total if ref_total else 0.0
    return RougeScore(precision=precision, recall=recall, f1=_f1(precision, recall))


def rouge_l(
    candidate_tokens: Sequence[str],
    reference_tokens: Sequence[str],
    lowercase: bool = True,
) -> RougeScore:
    """ROUGE-L from the longest common subsequence of the token sequences."""
    cand = _norm(candidate_tokens, lowercase)
    ref = _norm(reference_tokens, lowercase)
    lcs = _lcs_length(cand, ref)
    precision = lcs / len(cand) if cand else 0.0
    recall = lcs / len(ref) if ref else 0.0
    return RougeScore(precision=precision, recall=recall, f1=_f1(precision, recall))


def _lcs_length(a: Sequence[str], b: Sequence[str]) -> int:
    # One-row dynamic program; O(len(a) * len(b)) time, O(len(b)) space.
    if not a or not b:
        return 0
    row = [0] * (len(b) + 1)
    for x in a:
        prev_diag = 0
        for j, y in enumerate(b, start=1):
            prev_row = row[j]
            if x == y:
                row[j] = prev_diag + 1
            elif row[j - 1] > row[j]:
                row[j] = row[j - 1]
            prev_diag = prev_row
    return row[-1]
