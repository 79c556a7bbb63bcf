#!/usr/bin/env python3
"""Independent recount of the expected text-unit graph for the golden corpus.

Nodes are unigrams and bigrams; vectors hold natural-log PMI over sentence
counts against the top-k co-occurring units (by count, then payload);
edges join co-occurring units with positive cosine similarity. With a seed
file the lexicon from synchronous clamped propagation is printed instead.
"""

import itertools
import json
import math
import sys
from collections import Counter


def units(words):
    out = {"uni:" + w for w in words}
    out |= {"bi:%s_%s" % (a, b) for a, b in zip(words, words[1:])}
    return out


def propagate(nodes, edges, pos, neg, iterations=30, tol=1e-6):
    nbr = {t: [] for t in nodes}
    for a, b, w in edges:
        nbr[a].append((b, w))
        nbr[b].append((a, w))
    y = {t: 1.0 if t in pos else -1.0 if t in neg else 0.0 for t in nodes}
    for _ in range(iterations):
        new = {}
        for t in nodes:
            if t in pos or t in neg:
                new[t] = y[t]
                continue
            den = sum(w for _, w in nbr[t])
            new[t] = sum(w * y[u] for u, w in nbr[t]) / den if den > 0 else 0.0
        delta = max(abs(new[t] - y[t]) for t in nodes)
        y = new
        if delta < tol:
            break
    return y


def main(corpus, seeds=None, k=50):
    sentences = []
    for line in open(corpus, encoding="utf-8"):
        d = json.loads(line)
        for t in d["turns"]:
            for u in t["utterances"]:
                for s in u["sentences"]:
                    sentences.append(units([tok["lowercase"] for tok in s["tokens"]]))
    n = len(sentences)
    count = Counter(u for s in sentences for u in s)
    joint = Counter()
    for s in sentences:
        for a, b in itertools.permutations(sorted(s), 2):
            joint[a, b] += 1
    nodes = sorted(count)

    def vector(t):
        nbrs = sorted((u for u in nodes if u != t and joint[t, u] > 0), key=lambda u: (-joint[t, u], u))[:k]
        return {u: math.log(joint[t, u] * n / (count[t] * count[u])) for u in nbrs}

    vec = {t: vector(t) for t in nodes}
    edges = []
    for a, b in itertools.combinations(nodes, 2):
        if joint[a, b] == 0:
            continue
        va, vb = vec[a], vec[b]
        dot = sum(x * vb.get(u, 0.0) for u, x in va.items())
        na = math.sqrt(sum(x * x for x in va.values()))
        nb = math.sqrt(sum(x * x for x in vb.values()))
        cos = dot / (na * nb) if na > 0 and nb > 0 else 0.0
        if cos > 0:
            edges.append((a, b, min(cos, 1.0)))
    if seeds is None:
        for a, b, w in edges:
            print("%s\t%s\t%.6f" % (a, b, w))
        return
    pos, neg = set(), set()
    for line in open(seeds, encoding="utf-8"):
        word, mark = line.rstrip("\n").split("\t")
        if "uni:" + word in count:
            (pos if mark == "+" else neg).add("uni:" + word)
    y = propagate(nodes, edges, pos, neg)
    kinds = {"uni": "unigram", "bi": "bigram"}
    for t in sorted(nodes, key=lambda t: (-abs(round(y[t], 12)), t)):
        prov = "seed" if t in pos or t in neg else "propagated"
        print("%s\t%s\t%.6f\t%s" % (kinds[t.split(":")[0]], t, y[t], prov))


if __name__ == "__main__":
    main(sys.argv[1], sys.argv[2] if len(sys.argv) > 2 else None)
