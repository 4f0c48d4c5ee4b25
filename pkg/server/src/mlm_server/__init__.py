"""HTTP sidecar exposing masked-token probability scoring."""

from .app import create_app
from .scoring import MaskScorer, ScoreOutcome, SpanScores

__version__ = "0.1.0"
