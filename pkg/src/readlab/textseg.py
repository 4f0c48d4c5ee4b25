"""Deterministic text segmentation: tokenization with character offsets,
rule-based sentence splitting, syllable estimation, and shallow noun-phrase
chunking over a pluggable part-of-speech tagger.

Everything here is pure and rule-based; no model downloads, no global state.
Input text is NFC-normalized before tokenization, and all character offsets
refer to the normalized string stored in ``TokenizedText.source``.
"""

from __future__ import annotations

import json
import re
import unicodedata
from dataclasses import dataclass
from typing import NamedTuple, Protocol, Sequence

__all__ = [
    "Token",
    "TokenizedText",
    "NpSpan",
    "Tagger",
    "HeuristicTagger",
    "PretaggedTagger",
    "tokenize",
    "count_syllables",
    "extract_noun_phrases",
    "filter_stopword_nps",
]

# POS tagset used throughout. Taggers must emit exactly these labels.
POS_TAGS = frozenset({"DET", "ADJ", "NOUN", "VERB", "ADP", "PRON", "NUM", "OTHER"})


class Token(NamedTuple):
    text: str
    char_start: int
    char_end: int
    kind: str  # "word" | "number" | "punct"


@dataclass(frozen=True)
class TokenizedText:
    """Tokens with offsets plus sentence boundaries over a source string.

    ``sentences`` holds half-open ``(token_start, token_end)`` index ranges
    that partition the token list.
    """

    source: str
    tokens: tuple[Token, ...]
    sentences: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        prev_end = 0
        for tok in self.tokens:
            if not (prev_end <= tok.char_start < tok.char_end <= len(self.source)):
                raise ValueError(f"token span out of order or out of bounds: {tok}")
            if self.source[tok.char_start : tok.char_end] != tok.text:
                raise ValueError(f"token text does not match source slice: {tok}")
            prev_end = tok.char_end
        pos = 0
        for start, end in self.sentences:
            if start != pos or end <= start:
                raise ValueError("sentence ranges must partition the token list")
            pos = end
        if pos != len(self.tokens):
            raise ValueError("sentence ranges must cover all tokens")

    def sentence_token_indices(self, sentence: int) -> range:
        start, end = self.sentences[sentence]
        return range(start, end)

    def words(self) -> list[str]:
        """Word and number token texts, in order."""
        return [t.text for t in self.tokens if t.kind != "punct"]


@dataclass(frozen=True)
class NpSpan:
    """A noun-phrase occurrence, as both a token range and a char range."""

    token_index_start: int
    token_index_end: int  # exclusive
    char_start: int
    char_end: int

    def __post_init__(self) -> None:
        if self.token_index_end <= self.token_index_start:
            raise ValueError("empty noun-phrase span")
        if self.char_end <= self.char_start:
            raise ValueError("empty noun-phrase char range")

    def text(self, tt: TokenizedText) -> str:
        return tt.source[self.char_start : self.char_end]


class Tagger(Protocol):
    def tag(self, tt: TokenizedText) -> list[str]:
        """One POS label per token, drawn from POS_TAGS."""
        ...


_WORD_RE = re.compile(r"[^\W_]+(?:['’\-][^\W_]+)*|\S")

_SENTENCE_FINAL = {".", "!", "?"}


def tokenize(text: str) -> TokenizedText:
    """Split text into word/number/punct tokens and sentence ranges.

    Words are maximal alphanumeric runs, keeping internal hyphens and
    apostrophes; every other non-space character becomes a single punct
    token. Sentences end at ``. ! ?`` followed by whitespace plus an
    uppercase letter (or end of text), except after single-letter words
    so dotted abbreviations like "e.g." do not split.
    """
    source = unicodedata.normalize("NFC", text)
    tokens: list[Token] = []
    for m in _WORD_RE.finditer(source):
        piece = m.group()
        if piece[0].isalnum():
            kind = "number" if not any(c.isalpha() for c in piece) else "word"
        else:
            kind = "punct"
        tokens.append(Token(piece, m.start(), m.end(), kind))

    sentences: list[tuple[int, int]] = []
    start = 0
    for i, tok in enumerate(tokens):
        if tok.kind != "punct" or tok.text not in _SENTENCE_FINAL:
            continue
        if tok.text == "." and i > 0:
            prev = tokens[i - 1]
            if prev.kind == "word" and len(prev.text) == 1:
                continue  # abbreviation guard: "e.g.", initials
        if _breaks_sentence(source, tok.char_end):
            sentences.append((start, i + 1))
            start = i + 1
    if start < len(tokens):
        sentences.append((start, len(tokens)))
    return TokenizedText(source, tuple(tokens), tuple(sentences))


def _breaks_sentence(source: str, pos: int) -> bool:
    rest = source[pos:]
    if not rest.strip():
        return True
    if not rest[0].isspace():
        return False
    return rest.lstrip()[0].isupper()


_VOWELS = frozenset("aeiouy")


def count_syllables(word: str) -> int:
    """Estimate syllables as vowel-letter runs (aeiouy), dropping a silent
    final "e" after a consonant, never returning less than 1.

    Input without any letter falls back to 1.
    """
    w = word.lower()
    if not any(c.isalpha() for c in w):
        return 1
    groups = 0
    prev_vowel = False
    for c in w:
        is_vowel = c in _VOWELS
        if is_vowel and not prev_vowel:
            groups += 1
        prev_vowel = is_vowel
    if len(w) >= 2 and w[-1] == "e" and w[-2].isalpha() and w[-2] not in _VOWELS:
        groups -= 1
    return max(1, groups)


# Closed-class lexicon for the built-in tagger. Deliberately small: unknown
# tokens default to NOUN, which keeps technical vocabulary inside noun
# phrases without an external model.
_DETERMINERS = frozenset(
    """a an the this that these those each every some any no all both either
    neither another such its his her their our your my most more few several
    many much""".split()
)
_PREPOSITIONS = frozenset(
    """of in on at by for with from to into onto through during over under
    between among within without after before about against along around
    across above below behind beyond despite except near off out per than
    toward towards until upon via""".split()
)
_PRONOUNS = frozenset(
    """i you he she it we they me him us them himself herself itself
    themselves myself yourself ourselves who whom whose which what mine yours
    hers ours theirs""".split()
)
_VERBS = frozenset(
    """is are was were be been being am has have had having do does did done
    can could will would shall should may might must use used uses using show
    shows showed shown find found finds suggest suggests suggested indicate
    indicates indicated demonstrate demonstrates demonstrated reveal reveals
    revealed remain remains remained include includes included require
    requires required provide provides provided perform performs performed
    conduct conducts conducted observe observes observed identify identifies
    identified cause causes caused compare compares compared examine examines
    examined investigate investigates investigated analyze analyzes analyzed
    report reports reported describe describes described develop develops
    developed occur occurs occurred affect affects affected infect infects
    infected transmit transmits transmitted become becomes became make makes
    made take takes taken took give gives given gave know known knows play
    plays played lead leads led allow allows allowed increase increases
    increased decrease decreases decreased reduce reduces reduced produce
    produces produced contain contains contained suffer suffers suffered
    receive receives received improve improves improved""".split()
)
_CLOSED_OTHER = frozenset(
    """and or but nor not however also very too when where why how if because
    while whether although though since unless yet then there here thus hence
    therefore moreover furthermore instead rather only even still already
    again never always often usually sometimes well as up down so now just
    both once""".split()
)

_NOUN_SUFFIXES = (
    "tion", "sion", "ness", "ity", "osis", "itis", "emia", "ism",
    "ment", "ance", "ence", "ology",
)
_ADJ_SUFFIXES = ("ous", "ive", "ical", "ic", "al", "ary", "able", "ible", "ful", "less")


class HeuristicTagger:
    """Lexicon plus suffix tagger; deterministic and dependency-free.

    Closed-class words come from a fixed lexicon; open-class words are
    guessed from suffixes, and everything unknown (including capitalized
    and technical tokens) defaults to NOUN.
    """

    def tag(self, tt: TokenizedText) -> list[str]:
        return [self._tag_token(tok) for tok in tt.tokens]

    @staticmethod
    def _tag_token(tok: Token) -> str:
        if tok.kind == "punct":
            return "OTHER"
        if tok.kind == "number":
            return "NUM"
        w = tok.text.lower()
        if w in _DETERMINERS:
            return "DET"
        if w in _PREPOSITIONS:
            return "ADP"
        if w in _PRONOUNS:
            return "PRON"
        if w in _VERBS:
            return "VERB"
        if w in _CLOSED_OTHER:
            return "OTHER"
        if w.endswith("ly") and len(w) > 3:
            return "OTHER"
        for suf in _NOUN_SUFFIXES:
            if w.endswith(suf) and len(w) > len(suf) + 1:
                return "NOUN"
        for suf in _ADJ_SUFFIXES:
            if w.endswith(suf) and len(w) > len(suf) + 1:
                return "ADJ"
        if (w.endswith("ed") or w.endswith("ing")) and len(w) > 4:
            return "VERB"
        if w.endswith("ize") or w.endswith("ise"):
            return "VERB"
        return "NOUN"


# External tag labels accepted by PretaggedTagger, mapped onto POS_TAGS.
# Covers this library's tagset, Universal POS, and Penn Treebank prefixes.
_EXTERNAL_TAG_MAP = {
    "DET": "DET", "DT": "DET", "PDT": "DET", "WDT": "DET",
    "ADJ": "ADJ", "JJ": "ADJ", "JJR": "ADJ", "JJS": "ADJ",
    "NOUN": "NOUN", "PROPN": "NOUN", "NN": "NOUN", "NNS": "NOUN",
    "NNP": "NOUN", "NNPS": "NOUN",
    "VERB": "VERB", "AUX": "VERB", "VB": "VERB", "VBD": "VERB",
    "VBG": "VERB", "VBN": "VERB", "VBP": "VERB", "VBZ": "VERB", "MD": "VERB",
    "ADP": "ADP", "IN": "ADP",
    "PRON": "PRON", "PRP": "PRON", "PRP$": "PRON", "WP": "PRON", "WP$": "PRON",
    "NUM": "NUM", "CD": "NUM",
}


class PretaggedTagger:
    """Tagger backed by an external JSONL tag stream.

    Each line is ``{"token": str, "pos": str}``, aligned one-to-one with the
    whitespace-split tokens of the source text. Finer-grained tokens emitted
    by :func:`tokenize` inherit the label of the whitespace chunk containing
    them; punct tokens are always OTHER.
    """

    def __init__(self, entries: Sequence[tuple[str, str]]):
        self.entries = [(tok, _EXTERNAL_TAG_MAP.get(pos.upper(), "OTHER")) for tok, pos in entries]

    @classmethod
    def from_jsonl(cls, path: str) -> "PretaggedTagger":
        entries = []
        with open(path, encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, start=1):
                if not line.strip():
                    continue
                try:
                    obj = json.loads(line)
                    entries.append((str(obj["token"]), str(obj["pos"])))
                except (json.JSONDecodeError, KeyError, TypeError) as exc:
                    raise ValueError(f"{path}: bad tag record at line {lineno}: {exc}") from exc
        return cls(entries)

    def tag(self, tt: TokenizedText) -> list[str]:
        chunks = []  # (start, end) of whitespace-split chunks
        for m in re.finditer(r"\S+", tt.source):
            chunks.append((m.start(), m.end()))
        if len(chunks) != len(self.entries):
            raise ValueError(
                f"tag stream has {len(self.entries)} entries but text has "
                f"{len(chunks)} whitespace tokens"
            )
        for (start, end), (tok_text, _) in zip(chunks, self.entries):
            if tt.source[start:end] != tok_text:
                raise ValueError(f"tag stream token {tok_text!r} does not match text {tt.source[start:end]!r}")
        tags = []
        ci = 0
        for tok in tt.tokens:
            while ci < len(chunks) and chunks[ci][1] <= tok.char_start:
                ci += 1
            if tok.kind == "punct":
                tags.append("OTHER")
            elif tok.kind == "number":
                tags.append("NUM")
            else:
                tags.append(self.entries[ci][1] if ci < len(chunks) else "NOUN")
        return tags


_NP_INNER = frozenset({"ADJ", "NOUN", "NUM"})


def extract_noun_phrases(tt: TokenizedText, tagger: Tagger) -> list[NpSpan]:
    """Chunk noun phrases as maximal ``DET? (ADJ|NOUN|NUM)* NOUN+`` matches
    over the POS sequence, scanned left to right without overlaps.
    """
    tags = tagger.tag(tt)
    if len(tags) != len(tt.tokens):
        raise ValueError("tagger output length does not match token count")
    unknown = set(tags) - POS_TAGS
    if unknown:
        raise ValueError(f"tagger emitted unknown labels: {sorted(unknown)}")

    spans: list[NpSpan] = []
    n = len(tags)
    i = 0
    while i < n:
        j = i + 1 if tags[i] == "DET" else i
        last_noun = -1
        k = j
        while k < n and tags[k] in _NP_INNER:
            if tags[k] == "NOUN":
                last_noun = k
            k += 1
        if last_noun < 0:
            i += 1
            continue
        end = last_noun + 1
        if any(tok.kind == "word" for tok in tt.tokens[i:end]):
            spans.append(
                NpSpan(i, end, tt.tokens[i].char_start, tt.tokens[end - 1].char_end)
            )
        i = end
    return spans


def filter_stopword_nps(
    nps: Sequence[NpSpan], tt: TokenizedText, stopwords: frozenset[str] | set[str]
) -> list[NpSpan]:
    """Drop noun phrases whose word tokens are all stop-words."""
    kept = []
    for np in nps:
        words = [
            tok.text.lower()
            for tok in tt.tokens[np.token_index_start : np.token_index_end]
            if tok.kind == "word"
        ]
        if any(w not in stopwords for w in words):
            kept.append(np)
    return kept
