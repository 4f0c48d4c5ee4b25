"""Classic heuristic readability formulas over shallow text statistics:
Flesch-Kincaid Grade, Coleman-Liau Index, and the automated readability
index, with their standard published constants.
"""

from __future__ import annotations

from dataclasses import dataclass

from .textseg import TokenizedText, count_syllables

__all__ = ["TextStats", "ClassicScores", "DegenerateTextError", "compute_text_stats", "classic_scores"]


class DegenerateTextError(ValueError):
    """Raised when a formula's denominators would be zero."""


@dataclass(frozen=True)
class TextStats:
    words: int
    sentences: int
    syllables: int
    letters: int

    def __post_init__(self) -> None:
        if min(self.words, self.sentences, self.syllables, self.letters) < 0:
            raise ValueError("counts must be non-negative")


@dataclass(frozen=True)
class ClassicScores:
    fkg: float
    cli: float
    ari: float


def compute_text_stats(tt: TokenizedText) -> TextStats:
    """Count words, sentences, syllables, and letters.

    Number tokens count as words with one syllable and zero letters;
    punctuation contributes nothing.
    """
    words = 0
    syllables = 0
    letters = 0
    for tok in tt.tokens:
        if tok.kind == "word":
            words += 1
            syllables += count_syllables(tok.text)
            letters += sum(1 for c in tok.text if c.isalpha())
        elif tok.kind == "number":
            words += 1
            syllables += 1
    return TextStats(words=words, sentences=len(tt.sentences), syllables=syllables, letters=letters)


def classic_scores(stats: TextStats) -> ClassicScores:
    """Evaluate the three formulas; raises DegenerateTextError on empty text.

    fkg = 0.39*(words/sentences) + 11.8*(syllables/words) - 15.59
    cli = 0.0588*L - 0.296*S - 15.8   (L, S per 100 words)
    ari = 4.71*(letters/words) + 0.5*(words/sentences) - 21.43
    """
    if stats.words == 0 or stats.sentences == 0:
        raise DegenerateTextError("degenerate text")
    words = float(stats.words)
    sentences = float(stats.sentences)
    fkg = 0.39 * (words / sentences) + 11.8 * (stats.syllables / words) - 15.59
    letters_per_100 = 100.0 * stats.letters / words
    sentences_per_100 = 100.0 * sentences / words
    cli = 0.0588 * letters_per_100 - 0.296 * sentences_per_100 - 15.8
    ari = 4.71 * (stats.letters / words) + 0.5 * (words / sentences) - 21.43
    return ClassicScores(fkg=fkg, cli=cli, ari=ari)
