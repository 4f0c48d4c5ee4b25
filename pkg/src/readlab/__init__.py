"""readlab: readability metrics and evaluation tooling for corpora pairing
technical summaries with plain-language summaries.
"""

from .complexity import (
    BackendError,
    ComplexityError,
    HttpBackend,
    MaskProbe,
    NpProbability,
    ProbeResult,
    StubBackend,
    load_stub_backend,
    mrttc,
    nptc,
    rnptc,
)
from .corpus import (
    Corpus,
    CorpusFormatError,
    CorpusStats,
    SplitSpec,
    SystemOutput,
    Triplet,
    corpus_stats,
    load_jsonl,
    load_outputs_jsonl,
    split_corpus,
    write_jsonl,
)
from .oracle import greedy_oracle, greedy_oracle_trace, topk_select
from .overlap import RougeScore, ngram_overlap_fraction, rouge_l, rouge_n
from .rankstats import spearman
from .readability import ClassicScores, DegenerateTextError, TextStats, classic_scores, compute_text_stats
from .report import MetricReport, group_means, readability_report, system_eval
from .stopwords import DEFAULT_STOPWORDS, load_stopwords
from .textseg import (
    HeuristicTagger,
    NpSpan,
    PretaggedTagger,
    Token,
    TokenizedText,
    count_syllables,
    extract_noun_phrases,
    filter_stopword_nps,
    tokenize,
)

__version__ = "0.1.0"
