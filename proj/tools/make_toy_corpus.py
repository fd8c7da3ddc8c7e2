#!/usr/bin/env python3
"""Generates the bundled toy corpus, frequency list and dictionary.

Usage: make_toy_corpus.py [OUT_DIR]   (default: data/toy next to this script)
"""
import collections
import pathlib
import random
import re
import sys

NOUNS = """river lantern harbor meadow orchard garden window kettle letter
village market bridge forest mountain valley island cottage station captain
teacher sailor farmer painter baker doctor merchant traveler shepherd miller
candle basket blanket ladder wagon anchor compass journal pocket shelf""".split()
ADJS = """quiet narrow ancient golden pale crooked gentle hollow bright rusty
patient stubborn weary careful distant humble curious""".split()
VERBS = """carried watched followed repaired painted gathered crossed noticed
remembered borrowed polished counted""".split()
ADVS = """slowly quietly eagerly rarely gladly""".split()
PLACES = """north shore old mill east road upper field long wall""".split()
CONNECT = ["and then", "while", "because", "although", "until", "so"]
NAMES = ["Mara", "Tobin", "Elsa", "Jory", "Wren", "Hollis"]


def zipf_choice(rng, pool):
    weights = [1.0 / (i + 1) for i in range(len(pool))]
    return rng.choices(pool, weights)[0]


def clause(rng):
    subj = rng.choice([f"the {zipf_choice(rng, ADJS)} {zipf_choice(rng, NOUNS)}",
                       rng.choice(NAMES), f"the {zipf_choice(rng, NOUNS)}"])
    obj = f"the {zipf_choice(rng, NOUNS)}"
    tail = rng.choice(["", f" near the {zipf_choice(rng, NOUNS)}",
                       f" by the {rng.choice(PLACES)} {zipf_choice(rng, NOUNS)}",
                       f" {zipf_choice(rng, ADVS)}"])
    return f"{subj} {zipf_choice(rng, VERBS)} {obj}{tail}"


def sentence(rng):
    s = clause(rng)
    if rng.random() < 0.4:
        s += f" {rng.choice(CONNECT)} {clause(rng)}"
    return s[0].upper() + s[1:] + rng.choice([".", ".", ".", "!", "?"])


def document(rng, n_paragraphs):
    paras = []
    for _ in range(n_paragraphs):
        paras.append(" ".join(sentence(rng) for _ in range(rng.randint(4, 9))))
    return "\n\n".join(paras) + "\n"


def front_matter(rng):
    lines = ["CONTENTS"]
    for i in range(1, 40):
        lines.append(f"{i}. {zipf_choice(rng, NOUNS).title()} .... {rng.randint(1, 400)}")
    return "\n".join(lines) + "\n\n"


def main():
    out = pathlib.Path(sys.argv[1]) if len(sys.argv) > 1 else \
        pathlib.Path(__file__).resolve().parent.parent / "data" / "toy"
    rng = random.Random(42)
    corpus = out / "corpus"
    corpus.mkdir(parents=True, exist_ok=True)
    counts = collections.Counter()
    for d in range(8):
        text = document(rng, 40)
        if d == 0:
            text = front_matter(rng) + text
        (corpus / f"doc{d:02d}.txt").write_text(text, encoding="utf-8")
        counts.update(w.lower() for w in re.findall(r"[A-Za-z]+", text))

    ranked = sorted(counts.items(), key=lambda kv: (-kv[1], kv[0]))
    (out / "freq.tsv").write_text("".join(f"{w}\t{c}\n" for w, c in ranked), encoding="utf-8")
    vocab = set(NOUNS + ADJS + VERBS + ADVS)
    vocab.update(w for p in PLACES for w in p.split())
    (out / "dict.txt").write_text("".join(f"{w}\n" for w in sorted(vocab)), encoding="utf-8")


if __name__ == "__main__":
    main()
