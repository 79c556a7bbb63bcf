#!/usr/bin/env python3
"""Regenerates the synthetic toy corpora under data/toy/.

Everything is template-driven and seeded, so rerunning reproduces the
committed files byte for byte.
"""

import argparse
import json
import random
from pathlib import Path

# (tokens, pos tags, 1-based heads, relations) per template; {N} is a noun slot.
TEMPLATES = {
    "PP": [
        ("i completely agree , great point .", "PRP RB VBP , JJ NN .", "3 3 0 3 6 3 3",
         "nsubj advmod root punct amod dobj punct"),
        ("thanks , that is a great {N} .", "NNS , DT VBZ DT JJ NN .", "0 1 7 7 7 7 1 1",
         "root punct nsubj cop det amod dep punct"),
        ("excellent work on the {N} , thanks !", "JJ NN IN DT NN , NNS .", "2 0 5 5 2 2 2 2",
         "amod root case det nmod punct dep punct"),
    ],
    "P": [
        ("i agree with that .", "PRP VBP IN DT .", "2 0 4 2 2", "nsubj root case nmod punct"),
        ("good point about the {N} .", "JJ NN IN DT NN .", "2 0 5 5 2 2", "amod root case det nmod punct"),
        ("you are right about the {N} .", "PRP VBP JJ IN DT NN .", "3 3 0 6 6 3 3",
         "nsubj cop root case det nmod punct"),
    ],
    "O": [
        ("the {N} cites a source .", "DT NN VBZ DT NN .", "2 3 0 5 3 3", "det nsubj root det dobj punct"),
        ("i moved the paragraph to the {N} .", "PRP VBD DT NN TO DT NN .", "2 0 4 2 7 7 2 2",
         "nsubj root det dobj case det nmod punct"),
        ("maybe we should check the {N} ?", "RB PRP MD VB DT NN .", "4 4 4 0 6 4 4",
         "advmod nsubj aux root det dobj punct"),
        ("see the discussion above .", "VB DT NN RB .", "0 3 1 1 1", "root det dobj advmod punct"),
    ],
    "N": [
        ("i disagree with this {N} .", "PRP VBP IN DT NN .", "2 0 5 5 2 2", "nsubj root case det nmod punct"),
        ("that is wrong .", "DT VBZ JJ .", "3 3 0 3", "nsubj cop root punct"),
        ("the {N} is not correct here .", "DT NN VBZ RB JJ RB .", "2 5 5 5 0 5 5",
         "det nsubj cop neg root advmod punct"),
    ],
    "NN": [
        ("you are wrong , this is nonsense !", "PRP VBP JJ , DT VBZ NN .", "3 3 0 3 7 7 3 3",
         "nsubj cop root punct nsubj cop parataxis punct"),
        ("stop reverting , your {N} is terrible !!", "VB VBG , PRP$ NN VBZ JJ .", "0 1 1 5 7 7 1 1",
         "root xcomp punct poss nsubj cop parataxis punct"),
        ("this is complete nonsense and you know it .", "DT VBZ JJ NN CC PRP VBP PRP .",
         "4 4 4 0 4 7 4 7 4", "nsubj cop amod root cc nsubj conj dobj punct"),
    ],
}

NOUNS = ["article", "section", "edit", "citation", "lead", "policy", "history", "image", "template", "wording"]
SPEAKERS = ["alice", "bob", "carol", "dave", "erin", "frank"]
CATEGORIES = ["History of Poland", "Physics", "Living people", "Music of Canada", "Software",
              "Cities in France", "Political parties"]
LABELS = ["NN", "N", "O", "P", "PP"]


def sentence(rng, label):
    text, pos, heads, rels = rng.choice(TEMPLATES[label])
    noun = rng.choice(NOUNS)
    forms = text.replace("{N}", noun).split()
    tokens = []
    for form, p, h, r in zip(forms, pos.split(), heads.split(), rels.split()):
        tokens.append({"form": form, "lowercase": form.lower(), "pos": p, "head": int(h), "deprel": r})
    return {"tokens": tokens}, " ".join(forms)


def aawd_marks(rng, label):
    # Annotator marks reproducing the requested five-way label under the
    # span/turn induction rules.
    if label == "PP":
        return [{"annotator": a, "mark": "agree", "origin": "span"} for a in ("a1", "a2")]
    if label == "NN":
        return [{"annotator": a, "mark": "disagree", "origin": "span"} for a in ("a1", "a2")]
    if label == "P":
        return [{"annotator": "a1", "mark": "agree", "origin": "span"}]
    if label == "N":
        return [{"annotator": "a2", "mark": "disagree", "origin": "span"}]
    return []


def turn_labels(rng, n, mood):
    weights = {
        "hostile": [4, 4, 3, 1, 1],
        "friendly": [1, 1, 3, 4, 4],
        "mixed": [2, 2, 3, 2, 2],
        "calm": [0, 1, 8, 2, 1],
    }[mood]
    return rng.choices(LABELS, weights=weights, k=n)


def make_discussion(rng, did, source, mood, n_turns, n_speakers, dispute=None):
    speakers = rng.sample(SPEAKERS, n_speakers)
    turns = []
    for t in range(n_turns):
        labels = turn_labels(rng, rng.randint(1, 3), mood)
        utterances = []
        for u, lab in enumerate(labels):
            sent, text = sentence(rng, lab)
            utt = {"id": f"{did}.t{t}.u{u}", "text": text, "sentences": [sent], "quotes": []}
            if source == "aawd":
                utt["annotator_labels"] = aawd_marks(rng, lab)
            elif source == "iac":
                centre = {"NN": -4, "N": -2, "O": 0, "P": 2, "PP": 4}[lab]
                utt["annotator_labels"] = [
                    {"annotator": f"r{k}", "mark": str(centre + rng.choice([-0.5, 0, 0.5]))} for k in range(3)]
            else:
                utt["gold"] = {"label": lab, "provenance": "span"}
            utterances.append(utt)
        turn = {"speaker": speakers[t % n_speakers] if t < n_speakers else rng.choice(speakers),
                "ordinal": t, "reply_to": t - 1 if t > 0 else None, "turn_label": None,
                "utterances": utterances}
        # Some whole-turn annotations without span marks, for the soft metric.
        if source == "aawd" and all(lab == "O" for lab in labels) and rng.random() < 0.3:
            turn["turn_label"] = rng.choice(["agree", "disagree"])
        turns.append(turn)
    # Quote the previous turn's first tokens now and then.
    for t in range(1, len(turns)):
        if rng.random() < 0.2:
            first = turns[t]["utterances"][0]
            first["quotes"] = [{"start": 0, "end": min(2, len(first["sentences"][0]["tokens"])), "source_turn": t - 1}]
    return {"id": did, "source": source, "categories": rng.sample(CATEGORIES, rng.randint(0, 2)),
            "revision_count": rng.randint(1, 60), "dispute_gold": dispute, "turns": turns}


def write_jsonl(path, rows):
    with open(path, "w", encoding="utf-8") as f:
        for r in rows:
            f.write(json.dumps(r, separators=(",", ":")) + "\n")


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default=str(Path(__file__).resolve().parent.parent / "data" / "toy"))
    ap.add_argument("--seed", type=int, default=7)
    args = ap.parse_args()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    rng = random.Random(args.seed)

    moods = ["hostile", "friendly", "mixed", "calm"]
    aawd = [make_discussion(rng, f"aawd{i:02d}", "aawd", moods[i % 4], rng.randint(4, 8), rng.randint(2, 4))
            for i in range(20)]
    write_jsonl(out / "aawd.jsonl", aawd)

    iac = [make_discussion(rng, f"iac{i:02d}", "iac", moods[i % 4], rng.randint(2, 4), 2) for i in range(6)]
    write_jsonl(out / "iac.jsonl", iac)

    disputes = []
    for i in range(20):
        is_dispute = i % 2 == 0
        mood = "hostile" if is_dispute else "calm"
        gold = {"is_dispute": is_dispute, "subcategory": ["controversy", "rfc", "resolved"][i % 3] if is_dispute else None}
        disputes.append(make_discussion(rng, f"wiki{i:02d}", "wikitalk", mood, rng.randint(10, 14), rng.randint(3, 5), gold))
    write_jsonl(out / "disputes.jsonl", disputes)

    (out / "seeds.tsv").write_text(
        "# word\tpolarity\n"
        "agree\t+\ngreat\t+\ngood\t+\nthanks\t+\nright\t+\nexcellent\t+\n"
        "wrong\t-\ndisagree\t-\nnonsense\t-\nterrible\t-\nstop\t-\n", encoding="utf-8")
    (out / "seeds_scored.tsv").write_text(
        "# word\tpositive score\tnegative score\n"
        "correct\t0.875\t0.0\n"
        "helpful\t0.7\t0.0\n"
        "complete\t0.1\t0.1\n"
        "wrong\t0.0\t0.9\n"
        "great\t0.0\t0.8\n", encoding="utf-8")


if __name__ == "__main__":
    main()
