"""Regenerate the committed test fixture: a 50-document synthetic corpus of
technical/plain summary pairs plus a stub probability table.

The stub table assigns low probabilities to the "technical" vocabulary and
high ones to the "common" vocabulary, so masked-phrase complexity scores
separate the two summary styles by construction. Output is deterministic;
run from the repository root:

    python scripts/make_fixture.py
"""

from __future__ import annotations

import json
import pathlib
import random

OUT_DIR = pathlib.Path(__file__).resolve().parent.parent / "tests" / "data"

TECH_NOUNS = [
    "pathogenesis", "cytokine", "genotype", "epitope", "serotype",
    "phenotype", "biomarker", "microbiome", "proteome", "neutrophil",
    "lymphocyte", "parasitemia", "encephalitis", "leishmaniasis", "trichiasis",
    "seroprevalence", "polymorphism", "methylation", "transcriptome", "virion",
]
COMMON_NOUNS = [
    "study", "people", "disease", "blood", "result", "drug", "test",
    "group", "risk", "cell", "gene", "virus", "mosquito", "water",
    "health", "body", "brain", "child", "family", "treatment",
]
TECH_MODIFIERS = [
    "visceral", "subclinical", "immunogenic", "recombinant", "intracellular",
    "phylogenetic", "serological", "histopathological", "antimicrobial", "genomic",
]
COMMON_MODIFIERS = [
    "new", "large", "small", "early", "common", "simple", "major", "rare",
    "strong", "clear",
]
VERBS = [
    "causes", "shows", "affects", "reduces", "increases", "reveals",
    "suggests", "indicates", "requires", "includes",
]
CONNECTORS = ["in", "of", "for", "with", "during", "after"]


def sentence(rng: random.Random, technical: bool) -> str:
    mods = TECH_MODIFIERS if technical else COMMON_MODIFIERS
    nouns = TECH_NOUNS if technical else COMMON_NOUNS
    # mix a little of the other register in so summaries share vocabulary
    other_nouns = COMMON_NOUNS if technical else TECH_NOUNS
    subject_noun = rng.choice(nouns if rng.random() < 0.8 else other_nouns)
    object_noun = rng.choice(nouns)
    tail_noun = rng.choice(nouns if rng.random() < 0.7 else other_nouns)
    words = [
        "The",
        rng.choice(mods),
        subject_noun,
        rng.choice(VERBS),
        "the",
        object_noun,
        rng.choice(CONNECTORS),
        "the",
        tail_noun,
    ]
    text = " ".join(words) + "."
    return text[0].upper() + text[1:]


def paragraph(rng: random.Random, n_sentences: int, technical: bool) -> str:
    return " ".join(sentence(rng, technical) for _ in range(n_sentences))


def main() -> None:
    rng = random.Random(20240901)
    OUT_DIR.mkdir(parents=True, exist_ok=True)

    with open(OUT_DIR / "fixture50.jsonl", "w", encoding="utf-8") as fh:
        for i in range(50):
            record = {
                "id": f"doc{i:03d}",
                "document": paragraph(rng, rng.randint(8, 14), technical=True),
                "technical_summary": paragraph(rng, rng.randint(3, 5), technical=True),
                "plain_summary": paragraph(rng, rng.randint(3, 5), technical=False),
            }
            fh.write(json.dumps(record, ensure_ascii=False) + "\n")

    table = {}
    for word in TECH_NOUNS + TECH_MODIFIERS:
        table[word] = round(rng.uniform(0.05, 0.35), 4)
    for word in COMMON_NOUNS + COMMON_MODIFIERS:
        table[word] = round(rng.uniform(0.55, 0.95), 4)
    with open(OUT_DIR / "stub_table.json", "w", encoding="utf-8") as fh:
        json.dump({"default": 0.7, "table": table}, fh, indent=2, sort_keys=True)
        fh.write("\n")
    print(f"wrote {OUT_DIR / 'fixture50.jsonl'} and {OUT_DIR / 'stub_table.json'}")


if __name__ == "__main__":
    main()
