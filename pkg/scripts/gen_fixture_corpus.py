#!/usr/bin/env python3
"""Regenerate the fixture sentence corpus used by the test suite.

Builds 1200 template sentences over the fixture database vocabulary. Every
sentence carries at least three verb/adjective tokens with synonyms, at
least one with an antonym, and at least eight tokens so all perturbations
apply.  Output: tests/data/fixture_corpus.jsonl (committed).

Run from the repo root:  python scripts/gen_fixture_corpus.py
"""

import json
import os
import random
import sys

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from semprobe import wordnet as wn  # noqa: E402
from semprobe.perturb import Sentence, content_candidates  # noqa: E402
from semprobe.perturb import _pooled  # noqa: E402
from semprobe.stopwords import DEFAULT_STOPWORDS  # noqa: E402

OUT = os.path.join(os.path.dirname(__file__), "..", "tests", "data", "fixture_corpus.jsonl")

NAMES = [
    "Levin", "Hitchcock", "Morgan", "Avery", "Quinn", "Harper", "Reese",
    "Jordan", "Casey", "Rowan", "Ellis", "Blake", "Sasha", "Marlowe",
]
ROLES = ["attorney", "teacher", "doctor", "friend", "companion", "instructor", "lawyer"]
NOUNS = ["market", "bridge", "garden", "contract", "letter", "meeting", "question", "story", "river", "road"]
DAYS = ["Monday", "Tuesday", "Wednesday", "Thursday", "Friday", "Saturday", "Sunday"]
PLACES = ["the city", "the village", "the office", "the courtroom", "the station"]

# Inflections chosen so morphy detaches back to the fixture lemma.
VERB_PAST = [
    "declined", "accepted", "worsened", "improved", "commented", "loved", "hated",
    "increased", "decreased", "opened", "closed", "started", "stopped", "remembered",
    "agreed", "disagreed", "arrived", "departed", "succeeded", "failed", "laughed",
    "cried", "destroyed", "helped", "hindered", "praised", "criticized", "attacked",
    "defended", "borrowed", "lended", "expanded", "contracted", "lengthened",
    "shortened", "strengthened", "weakened", "appeared", "vanished", "connected",
    "disconnected", "entered", "exited", "exported", "imported", "inhaled",
    "exhaled", "tightened", "loosened", "simplified", "complicated", "encouraged",
    "discouraged", "approved", "rejected", "continued", "discontinued", "obeyed",
    "disobeyed", "included", "excluded", "ascended", "descended", "walked",
    "talked", "listened", "pushed", "pulled", "gathered", "scattered", "reported",
    "denied", "confirmed", "examined", "ignored", "noticed", "planned", "traveled",
    "delivered", "received", "reduced", "raised", "lowered",
]
VERB_ING = [
    "declining", "accepting", "improving", "commenting", "increasing", "decreasing",
    "opening", "closing", "starting", "stopping", "running", "walking", "talking",
    "pushing", "pulling", "throwing", "gathering", "reporting", "confirming",
    "examining", "noticing", "planning", "traveling", "delivering", "reducing",
    "raising", "lowering", "building", "laughing", "crying", "helping",
]
ADJS = [
    "good", "bad", "big", "small", "hot", "cold", "warm", "cool", "fast", "slow",
    "happy", "sad", "light", "heavy", "strong", "weak", "new", "old", "young",
    "rich", "poor", "clean", "dirty", "early", "late", "easy", "hard", "empty",
    "full", "safe", "dangerous", "loud", "quiet", "smooth", "rough", "wet", "dry",
    "wide", "narrow", "deep", "shallow", "bright", "dim", "brave", "calm", "last",
    "first", "cheap", "expensive", "polite", "rude", "tidy", "messy",
]

TEMPLATES = [
    "{name}'s {role}, {name2} {name3}, {vpast} to comment {adj} {day}",
    "The {adj} {noun} {vpast} while {name} {vpast2} near {place}",
    "{name} {vpast} the {adj} {noun} and {vpast2} a {adj2} {noun2}",
    'A {adj} {noun} was {ving} when {name} {vpast}: "{adj2} work"',
    "{name} and {name2} {vpast} the {noun}, then {vpast2} the {adj} {noun2}",
    "On {day}, the {adj} {role} {vpast} a {adj2} {noun} near {place}",
    "The {role} {vpast} that the {noun} {vpast2} after a {adj} {day}",
    "{name}'s {adj} {noun} kept {ving} until the {role} {vpast} it",
    "Why the {adj} {noun} {vpast} remains a {adj2} question, said {name}",
    "{name} {vpast}, {vpast2}, and finally {vpast3} the {adj} {noun}",
]


def main():
    rng = random.Random(20240817)
    db = wn.load_database(wn.fixture_path())

    def has_antonym(sentence):
        return any(
            _pooled(db, sentence.tokens[i], wn.antonyms)
            for i in content_candidates(sentence, db, DEFAULT_STOPWORDS)
        )

    def synonym_slots(sentence):
        return sum(
            1
            for i in content_candidates(sentence, db, DEFAULT_STOPWORDS)
            if _pooled(db, sentence.tokens[i], wn.synonyms)
        )

    rows = []
    seen = set()
    while len(rows) < 1200:
        template = rng.choice(TEMPLATES)
        text = template.format(
            name=rng.choice(NAMES), name2=rng.choice(NAMES), name3=rng.choice(NAMES),
            role=rng.choice(ROLES), noun=rng.choice(NOUNS), noun2=rng.choice(NOUNS),
            day=rng.choice(DAYS), place=rng.choice(PLACES),
            vpast=rng.choice(VERB_PAST), vpast2=rng.choice(VERB_PAST), vpast3=rng.choice(VERB_PAST),
            ving=rng.choice(VERB_ING),
            adj=rng.choice(ADJS), adj2=rng.choice(ADJS),
        )
        if text in seen:
            continue
        sent = Sentence(f"fx{len(rows):04d}", text)
        if len(sent.tokens) < 8 or synonym_slots(sent) < 3 or not has_antonym(sent):
            continue
        seen.add(text)
        rows.append(sent)

    os.makedirs(os.path.dirname(OUT), exist_ok=True)
    with open(OUT, "w", encoding="utf-8") as fh:
        for sent in rows:
            fh.write(json.dumps(sent.to_json(), ensure_ascii=False) + "\n")
    print(f"wrote {len(rows)} sentences to {os.path.normpath(OUT)}", file=sys.stderr)


if __name__ == "__main__":
    main()
