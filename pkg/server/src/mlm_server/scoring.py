"""Masked-token probability scoring over a pretrained masked language model.

Given a text and character spans, every model subtoken overlapping a span is
replaced by the mask token in a single forward pass, and the probability the
model assigns to each original subtoken at its masked position is returned.
Inputs longer than the model context are windowed around the masked spans
and flagged as truncated.
"""

from __future__ import annotations

import os
import threading
from dataclasses import dataclass

import torch
from transformers import AutoModelForMaskedLM, AutoTokenizer

DEFAULT_MODEL = "bert-base-uncased"
PROB_FLOOR = 1e-12  # keep returned probabilities away from exact zero


class SpanError(ValueError):
    """Malformed or out-of-bounds spans (HTTP 400)."""


class EmptySpanError(ValueError):
    """A span that covers no model subtokens (HTTP 422)."""


@dataclass(frozen=True)
class SpanScores:
    subtoken_probs: list[float]


@dataclass(frozen=True)
class ScoreOutcome:
    spans: list[SpanScores]
    truncated: bool


class MaskScorer:
    """Loads the checkpoint once and serializes forward passes."""

    def __init__(self, model_name: str | None = None):
        self.model_name = model_name or os.environ.get("MODEL_NAME", DEFAULT_MODEL)
        self.tokenizer = AutoTokenizer.from_pretrained(self.model_name, use_fast=True)
        self.model = AutoModelForMaskedLM.from_pretrained(self.model_name)
        self.model.eval()
        limit = getattr(self.model.config, "max_position_embeddings", 512)
        tok_limit = getattr(self.tokenizer, "model_max_length", limit) or limit
        self.max_context = int(min(limit, tok_limit))
        self.mask_id = self.tokenizer.mask_token_id
        if self.mask_id is None:
            raise ValueError(f"{self.model_name} has no mask token")
        self.debug = bool(os.environ.get("MLM_SERVER_DEBUG"))
        self._lock = threading.Lock()

    @property
    def model_version(self) -> str:
        commit = getattr(self.model.config, "_commit_hash", None)
        return f"{self.model_name}@{commit}" if commit else self.model_name

    def validate_spans(self, text: str, spans: list[tuple[int, int]]) -> None:
        prev_end = 0
        for start, end in spans:
            if not (0 <= start < end <= len(text)):
                raise SpanError(f"span ({start}, {end}) out of bounds for text of length {len(text)}")
            if start < prev_end:
                raise SpanError("spans must be sorted and non-overlapping")
            prev_end = end

    def score(self, text: str, spans: list[tuple[int, int]]) -> ScoreOutcome:
        self.validate_spans(text, spans)
        encoded = self.tokenizer(
            text, add_special_tokens=False, return_offsets_mapping=True
        )
        ids: list[int] = list(encoded["input_ids"])
        offsets: list[tuple[int, int]] = [tuple(o) for o in encoded["offset_mapping"]]

        span_subtokens: list[list[int]] = []
        for start, end in spans:
            indices = [
                i for i, (a, b) in enumerate(offsets) if b > a and a < end and b > start
            ]
            if not indices:
                raise EmptySpanError(f"span ({start}, {end}) covers no model subtokens")
            span_subtokens.append(indices)

        window_start, window_ids, truncated = self._window(ids, span_subtokens)
        cls_id = self.tokenizer.cls_token_id
        sep_id = self.tokenizer.sep_token_id
        specials_prefix = 1 if cls_id is not None else 0
        full = ([cls_id] if cls_id is not None else []) + window_ids + (
            [sep_id] if sep_id is not None else []
        )

        masked = list(full)
        positions: list[list[int]] = []
        for indices in span_subtokens:
            row = []
            for i in indices:
                pos = i - window_start + specials_prefix
                masked[pos] = self.mask_id
                row.append(pos)
            positions.append(row)

        with self._lock, torch.no_grad():
            logits = self.model(input_ids=torch.tensor([masked])).logits[0]

        span_scores = []
        for indices, rows in zip(span_subtokens, positions):
            probs = []
            for original_index, pos in zip(indices, rows):
                dist = torch.softmax(logits[pos], dim=-1)
                if self.debug:
                    total = float(dist.sum())
                    assert abs(total - 1.0) < 1e-3, f"softmax sums to {total}"
                probs.append(max(float(dist[ids[original_index]]), PROB_FLOOR))
            span_scores.append(SpanScores(subtoken_probs=probs))
        return ScoreOutcome(spans=span_scores, truncated=truncated)

    def _window(
        self, ids: list[int], span_subtokens: list[list[int]]
    ) -> tuple[int, list[int], bool]:
        """Largest window of subtokens that fits the context and contains
        every masked position, centered on them."""
        budget = self.max_context - 2  # room for [CLS]/[SEP]
        if len(ids) <= budget:
            return 0, ids, False
        lo = min(min(row) for row in span_subtokens)
        hi = max(max(row) for row in span_subtokens) + 1
        if hi - lo > budget:
            raise SpanError(
                f"masked spans cover {hi - lo} subtokens, more than the "
                f"model context allows ({budget})"
            )
        desired = (lo + hi) // 2 - budget // 2
        start = max(0, min(desired, len(ids) - budget))
        start = min(start, lo)
        start = max(start, hi - budget)
        return start, ids[start : start + budget], True
