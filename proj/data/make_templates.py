#!/usr/bin/env python3
"""Regenerates the bundled sentence-template files (templates_*.txt).

The template files double as the training corpus for the mock n-gram
scoring model, so this script also enforces the invariants the mock
pipeline depends on:

  * no template token appears in emotion_lexicon.tsv
  * every synonyms.tsv source word appears in the templates
  * no synonyms.tsv target word appears in the templates

Run from the repository root:  python3 data/make_templates.py
"""

import random
import string
from pathlib import Path

SEED = 20240601
LINES_PER_DOMAIN = 800
TWO_SENTENCE_FRACTION = 0.35

GRAMMAR = {
    "news": {
        "subjects": [
            "the government", "the ministry", "the central bank",
            "the city council", "the agency", "the committee",
            "the senate", "the parliament", "regulators", "officials",
            "lawmakers", "the commission",
        ],
        "verbs": [
            "announced", "approved", "reviewed", "published", "proposed",
            "confirmed", "reported", "released", "outlined", "discussed",
        ],
        "objects": [
            "a new policy", "the annual budget", "a trade agreement",
            "new regulations", "the quarterly report",
            "an infrastructure plan", "a draft proposal",
            "the revised forecast", "a funding measure",
            "the updated guidelines",
        ],
        "tails": [
            "on monday.", "this week.", "after the meeting.",
            "in the capital.", "during the session.", "late on tuesday.",
            "without further comment.", "before the recess.",
            "at a press briefing.", "earlier today.",
        ],
    },
    "code": {
        "subjects": [
            "the function", "the parser", "the compiler", "the module",
            "the test suite", "the scheduler", "the server", "the client",
            "the script", "the library", "the runtime", "the linker",
        ],
        "verbs": [
            "returns", "parses", "validates", "computes", "stores",
            "loads", "writes", "reads", "checks", "updates",
        ],
        "objects": [
            "a list of values", "the input buffer", "the configuration file",
            "a sorted array", "the request payload", "each record",
            "the output stream", "a status code", "the symbol table",
            "every entry",
        ],
        "tails": [
            "before exiting.", "in constant time.", "during startup.",
            "after each call.", "on every request.", "by default.",
            "in the main loop.", "across all threads.",
            "within the timeout.", "at shutdown.",
        ],
    },
    "review": {
        "subjects": [
            "the restaurant", "the hotel", "the cafe", "the staff",
            "the waiter", "the kitchen", "the menu", "the shop",
            "the bakery", "the bar", "the host", "the chef",
        ],
        "verbs": [
            "served", "offered", "prepared", "provided", "included",
            "delivered", "brought", "listed", "recommended", "arranged",
        ],
        "objects": [
            "fresh pasta", "a daily special", "local produce", "a set menu",
            "warm bread", "seasonal dishes", "a wide selection",
            "the house salad", "a tasting plate", "strong coffee",
        ],
        "tails": [
            "at lunch.", "in the evening.", "on weekends.",
            "for a fair price.", "with prompt service.", "near the station.",
            "during our visit.", "by the window.", "after a short wait.",
            "from the counter.", "quickly and politely.",
        ],
    },
}


def sentence(rng, g):
    return " ".join(
        [rng.choice(g["subjects"]), rng.choice(g["verbs"]),
         rng.choice(g["objects"]), rng.choice(g["tails"])]
    )


def normalize(token):
    return token.strip(string.punctuation).lower()


def template_vocab():
    vocab = set()
    for g in GRAMMAR.values():
        for pool in g.values():
            for phrase in pool:
                for tok in phrase.split():
                    vocab.add(normalize(tok))
    return vocab


def check_invariants(data_dir):
    vocab = template_vocab()
    lexicon = {
        line.split("\t")[0]
        for line in (data_dir / "emotion_lexicon.tsv").read_text().splitlines()
        if line.strip()
    }
    overlap = vocab & lexicon
    assert not overlap, f"template words present in lexicon: {sorted(overlap)}"

    sources, targets = set(), set()
    for line in (data_dir / "synonyms.tsv").read_text().splitlines():
        if not line.strip():
            continue
        src, dst = line.split("\t")
        sources.add(src)
        targets.add(dst)
    missing = sources - vocab
    assert not missing, f"synonym sources missing from templates: {sorted(missing)}"
    leaked = targets & vocab
    assert not leaked, f"synonym targets present in templates: {sorted(leaked)}"


def main():
    data_dir = Path(__file__).resolve().parent
    check_invariants(data_dir)
    rng = random.Random(SEED)
    for domain, g in GRAMMAR.items():
        lines = []
        for _ in range(LINES_PER_DOMAIN):
            line = sentence(rng, g)
            if rng.random() < TWO_SENTENCE_FRACTION:
                line = line + " " + sentence(rng, g)
            lines.append(line)
        out = data_dir / f"templates_{domain}.txt"
        out.write_text("\n".join(lines) + "\n")
        print(f"wrote {out} ({len(lines)} lines)")


if __name__ == "__main__":
    main()
