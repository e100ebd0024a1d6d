#!/usr/bin/env python3
"""Regenerate the bundled WordNet-format fixture database.

The fixture is hand-curated: ~200 synsets over common verbs and adjectives
with synonym groups and antonym pointer pairs, plus a few nouns/adverbs so
all four database files are non-trivial.  Output is committed under
src/semprobe/data/wordnet_fixture/ and treated as static test data.

Run from the repo root:  python scripts/gen_wordnet_fixture.py
"""

import os
import sys
from collections import defaultdict

OUT = os.path.join(os.path.dirname(__file__), "..", "src", "semprobe", "data", "wordnet_fixture")

# Verb synonym groups. Groups paired in VERB_ANTONYMS get mutual "!" pointers
# between their first members (lexical pointers, word index 1 <-> 1).
VERB_GROUPS = {
    "decline": ["decline", "refuse"],
    "accept": ["accept", "consent"],
    "worsen": ["worsen", "deteriorate"],
    "improve": ["improve", "better", "ameliorate"],
    "comment": ["comment", "remark"],
    "love": ["love", "adore"],
    "hate": ["hate", "detest"],
    "increase": ["increase", "grow"],
    "decrease": ["decrease", "diminish", "lessen"],
    "open": ["open"],
    "close": ["close", "shut"],
    "start": ["start", "begin", "commence"],
    "stop": ["stop", "halt"],
    "buy": ["buy", "purchase"],
    "sell": ["sell"],
    "win": ["win"],
    "lose": ["lose"],
    "rise": ["rise", "climb"],
    "fall": ["fall", "drop"],
    "remember": ["remember", "recall"],
    "forget": ["forget"],
    "agree": ["agree", "concur"],
    "disagree": ["disagree", "differ"],
    "arrive": ["arrive", "come"],
    "depart": ["depart", "leave"],
    "succeed": ["succeed", "prevail"],
    "fail": ["fail", "flop"],
    "laugh": ["laugh", "giggle"],
    "cry": ["cry", "weep"],
    "build": ["build", "construct", "assemble"],
    "destroy": ["destroy", "demolish", "raze"],
    "give": ["give", "donate"],
    "take": ["take", "grab"],
    "help": ["help", "assist", "aid"],
    "hinder": ["hinder", "impede", "obstruct"],
    "praise": ["praise", "applaud", "commend"],
    "criticize": ["criticize", "blame", "knock"],
    "attack": ["attack", "assail"],
    "defend": ["defend", "protect", "guard"],
    "borrow": ["borrow"],
    "lend": ["lend", "loan"],
    "expand": ["expand", "enlarge", "speed_up"],
    "contract": ["contract", "shrink", "narrow"],
    "lengthen": ["lengthen", "extend"],
    "shorten": ["shorten", "abbreviate", "truncate"],
    "strengthen": ["strengthen", "fortify", "beef_up"],
    "weaken": ["weaken", "sap"],
    "appear": ["appear", "emerge"],
    "vanish": ["vanish", "disappear"],
    "connect": ["connect", "link", "attach"],
    "disconnect": ["disconnect", "detach"],
    "enter": ["enter"],
    "exit": ["exit"],
    "export": ["export"],
    "import": ["import"],
    "inhale": ["inhale"],
    "exhale": ["exhale"],
    "tighten": ["tighten", "fasten"],
    "loosen": ["loosen", "relax"],
    "simplify": ["simplify"],
    "complicate": ["complicate", "refine"],
    "encourage": ["encourage", "promote", "boost"],
    "discourage": ["discourage", "deter"],
    "approve": ["approve", "sanction"],
    "reject": ["reject", "dismiss", "spurn"],
    "continue": ["continue", "persist"],
    "discontinue": ["discontinue", "cease"],
    "obey": ["obey", "heed"],
    "disobey": ["disobey", "defy"],
    "include": ["include", "admit"],
    "exclude": ["exclude", "omit"],
    "ascend": ["ascend", "mount"],
    "descend": ["descend", "sink"],
    "run": ["run", "sprint", "jog"],
    "walk": ["walk", "stroll", "amble"],
    "talk": ["talk", "speak", "chat"],
    "listen": ["listen", "hear"],
    "push": ["push", "shove"],
    "pull": ["pull", "drag", "tug"],
    "throw": ["throw", "toss", "hurl"],
    "catch": ["catch", "snag"],
    "gather": ["gather", "collect", "amass"],
    "scatter": ["scatter", "disperse"],
    "report": ["report", "describe", "announce"],
    "deny": ["deny", "contradict"],
    "confirm": ["confirm", "verify", "affirm"],
    "examine": ["examine", "inspect", "study"],
    "ignore": ["ignore", "disregard"],
    "notice": ["notice", "observe", "spot"],
    "plan": ["plan", "design"],
    "travel": ["travel", "journey", "move"],
    "deliver": ["deliver", "ship"],
    "receive": ["receive", "obtain"],
    "reduce": ["reduce", "trim", "cut"],
    "raise": ["raise", "lift", "elevate"],
    "lower": ["lower", "drop_down"],
}

VERB_ANTONYMS = [
    ("decline", "accept"),
    ("worsen", "improve"),
    ("love", "hate"),
    ("increase", "decrease"),
    ("open", "close"),
    ("start", "stop"),
    ("buy", "sell"),
    ("win", "lose"),
    ("rise", "fall"),
    ("remember", "forget"),
    ("agree", "disagree"),
    ("arrive", "depart"),
    ("succeed", "fail"),
    ("laugh", "cry"),
    ("build", "destroy"),
    ("give", "take"),
    ("help", "hinder"),
    ("praise", "criticize"),
    ("attack", "defend"),
    ("borrow", "lend"),
    ("expand", "contract"),
    ("lengthen", "shorten"),
    ("strengthen", "weaken"),
    ("appear", "vanish"),
    ("connect", "disconnect"),
    ("enter", "exit"),
    ("export", "import"),
    ("inhale", "exhale"),
    ("tighten", "loosen"),
    ("simplify", "complicate"),
    ("encourage", "discourage"),
    ("approve", "reject"),
    ("continue", "discontinue"),
    ("obey", "disobey"),
    ("include", "exclude"),
    ("ascend", "descend"),
    ("deny", "confirm"),
    ("reduce", "raise"),
]

ADJ_GROUPS = {
    "good": ["good", "fine"],
    "bad": ["bad", "awful"],
    "big": ["big", "large", "sizable"],
    "small": ["small", "little"],
    "hot": ["hot", "scorching"],
    "cold": ["cold", "frigid"],
    "warm": ["warm", "toasty"],
    "cool": ["cool", "chilly"],
    "fast": ["fast", "quick", "rapid"],
    "slow": ["slow", "sluggish"],
    "happy": ["happy", "glad", "cheerful"],
    "sad": ["sad", "unhappy", "gloomy"],
    "light": ["light", "lightweight"],
    "heavy": ["heavy", "weighty"],
    "strong": ["strong", "powerful", "sturdy"],
    "weak": ["weak", "feeble", "frail"],
    "new": ["new", "novel", "fresh"],
    "old": ["old", "ancient"],
    "young": ["young", "youthful"],
    "rich": ["rich", "wealthy", "affluent"],
    "poor": ["poor", "needy"],
    "clean": ["clean", "spotless"],
    "dirty": ["dirty", "filthy", "grimy"],
    "early": ["early"],
    "late": ["late", "tardy"],
    "easy": ["easy", "simple"],
    "hard": ["hard", "difficult", "tough"],
    "empty": ["empty", "vacant"],
    "full": ["full", "replete"],
    "safe": ["safe", "secure"],
    "dangerous": ["dangerous", "risky", "unsafe"],
    "loud": ["loud", "noisy"],
    "quiet": ["quiet", "silent", "hushed"],
    "smooth": ["smooth", "sleek"],
    "rough": ["rough", "coarse", "jagged"],
    "wet": ["wet", "damp", "soggy"],
    "dry": ["dry", "arid"],
    "wide": ["wide", "broad"],
    "narrow": ["narrow", "slim"],
    "deep": ["deep", "profound"],
    "shallow": ["shallow"],
    "bright": ["bright", "brilliant", "radiant"],
    "dim": ["dim", "faint"],
    "brave": ["brave", "bold", "fearless"],
    "cowardly": ["cowardly", "timid"],
    "calm": ["calm", "serene", "placid"],
    "agitated": ["agitated", "frantic"],
    "last": ["last", "final", "concluding"],
    "first": ["first", "initial"],
    "cheap": ["cheap", "inexpensive"],
    "expensive": ["expensive", "costly", "pricey"],
    "polite": ["polite", "courteous"],
    "rude": ["rude", "impolite", "brash"],
    "tidy": ["tidy", "neat", "orderly"],
    "messy": ["messy", "untidy"],
}

ADJ_ANTONYMS = [
    ("good", "bad"),
    ("big", "small"),
    ("hot", "cold"),
    ("warm", "cool"),
    ("fast", "slow"),
    ("happy", "sad"),
    ("light", "heavy"),
    ("strong", "weak"),
    ("new", "old"),
    ("young", "old"),
    ("rich", "poor"),
    ("clean", "dirty"),
    ("early", "late"),
    ("easy", "hard"),
    ("empty", "full"),
    ("safe", "dangerous"),
    ("loud", "quiet"),
    ("smooth", "rough"),
    ("wet", "dry"),
    ("wide", "narrow"),
    ("deep", "shallow"),
    ("bright", "dim"),
    ("brave", "cowardly"),
    ("calm", "agitated"),
    ("last", "first"),
    ("cheap", "expensive"),
    ("polite", "rude"),
    ("tidy", "messy"),
]

NOUN_GROUPS = {
    "attorney": ["attorney", "lawyer"],
    "dog": ["dog", "hound"],
    "house": ["house", "dwelling"],
    "car": ["car", "automobile", "auto"],
    "city": ["city", "metropolis"],
    "road": ["road", "route"],
    "job": ["job", "occupation"],
    "money": ["money", "cash"],
    "friend": ["friend", "companion"],
    "child": ["child", "kid", "youngster"],
    "story": ["story", "tale", "narrative"],
    "market": ["market", "marketplace"],
    "company": ["company", "firm"],
    "river": ["river"],
    "mountain": ["mountain", "mount"],
    "teacher": ["teacher", "instructor"],
    "doctor": ["doctor", "physician"],
    "garden": ["garden"],
    "bridge": ["bridge", "span"],
    "letter": ["letter", "missive"],
    "meeting": ["meeting", "gathering"],
    "contract_n": ["contract", "agreement"],
    "question": ["question", "query", "inquiry"],
    "answer": ["answer", "reply", "response"],
    "winter": ["winter", "wintertime"],
    "summer": ["summer", "summertime"],
}

ADV_GROUPS = {
    "quickly": ["quickly", "rapidly", "speedily"],
    "slowly": ["slowly", "easy"],
    "quietly": ["quietly", "softly"],
    "loudly": ["loudly", "aloud"],
    "often": ["often", "frequently"],
    "rarely": ["rarely", "seldom"],
}

VERB_EXCEPTIONS = {
    "ran": ["run"],
    "went": ["go"],
    "was": ["be"],
    "were": ["be"],
    "ate": ["eat"],
    "fell": ["fall"],
    "gave": ["give"],
    "took": ["take"],
    "threw": ["throw"],
    "caught": ["catch"],
    "sold": ["sell"],
    "bought": ["buy"],
    "won": ["win"],
    "lost": ["lose"],
    "rose": ["rise"],
    "came": ["come"],
    "left": ["leave"],
    "spoke": ["speak"],
    "heard": ["hear"],
    "wept": ["weep"],
}

ADJ_EXCEPTIONS = {
    "better": ["good"],
    "best": ["good"],
    "worse": ["bad"],
    "worst": ["bad"],
}


def build_pos(groups, antonym_pairs, ss_type, base_offset, lex_filenum):
    """Assign offsets, emit data/index line structures for one POS."""
    offsets = {}
    for i, key in enumerate(groups):
        offsets[key] = base_offset + 100 * i
    pointers = defaultdict(list)  # key -> [(symbol, target_key, src_word, tgt_word)]
    for a, b in antonym_pairs:
        pointers[a].append(("!", b, 1, 1))
        pointers[b].append(("!", a, 1, 1))
    data_lines = []
    for key, words in groups.items():
        off = offsets[key]
        parts = [f"{off:08d}", f"{lex_filenum:02d}", ss_type, f"{len(words):02x}"]
        for w in words:
            parts += [w, "0"]
        ptrs = pointers.get(key, [])
        parts.append(f"{len(ptrs):03d}")
        for symbol, target_key, src, tgt in ptrs:
            parts += [symbol, f"{offsets[target_key]:08d}", ss_type, f"{src:02x}{tgt:02x}"]
        if ss_type == "v":
            parts.append("00")
        data_lines.append(" ".join(parts) + f" | fixture gloss for {key}")
    lemma_offsets = defaultdict(list)
    lemma_ptrs = defaultdict(set)
    for key, words in groups.items():
        for w in words:
            lemma_offsets[w.lower()].append(offsets[key])
            for symbol, _, _, _ in pointers.get(key, []):
                lemma_ptrs[w.lower()].add(symbol)
    index_lines = []
    pos_char = {"n": "n", "v": "v", "a": "a", "r": "r"}[ss_type]
    for lemma in sorted(lemma_offsets):
        offs = lemma_offsets[lemma]
        syms = sorted(lemma_ptrs[lemma])
        parts = [lemma, pos_char, str(len(offs)), str(len(syms))]
        parts += syms
        parts += [str(len(offs)), "0"]
        parts += [f"{o:08d}" for o in offs]
        index_lines.append(" ".join(parts))
    return data_lines, index_lines, len(groups)


HEADER = (
    "  1 This file is part of the semprobe test fixture database.\n"
    "  2 It follows the WordNet 3.x plain-text layout; lines with two\n"
    "  3 leading spaces form the header and are skipped by the loader.\n"
)


def main():
    os.makedirs(OUT, exist_ok=True)
    total = 0
    specs = [
        ("verb", VERB_GROUPS, VERB_ANTONYMS, "v", 200, 29),
        ("adj", ADJ_GROUPS, ADJ_ANTONYMS, "a", 30000200, 0),
        ("noun", NOUN_GROUPS, [], "n", 60000200, 3),
        ("adv", ADV_GROUPS, [], "r", 90000200, 2),
    ]
    for suffix, groups, antos, ss, base, lexnum in specs:
        data_lines, index_lines, count = build_pos(groups, antos, ss, base, lexnum)
        total += count
        with open(os.path.join(OUT, f"data.{suffix}"), "w", encoding="utf-8") as fh:
            fh.write(HEADER)
            fh.write("".join(line + "\n" for line in data_lines))
        with open(os.path.join(OUT, f"index.{suffix}"), "w", encoding="utf-8") as fh:
            fh.write(HEADER)
            fh.write("".join(line + "\n" for line in index_lines))
    with open(os.path.join(OUT, "verb.exc"), "w", encoding="utf-8") as fh:
        for surface, lemmas in sorted(VERB_EXCEPTIONS.items()):
            fh.write(" ".join([surface] + lemmas) + "\n")
    with open(os.path.join(OUT, "adj.exc"), "w", encoding="utf-8") as fh:
        for surface, lemmas in sorted(ADJ_EXCEPTIONS.items()):
            fh.write(" ".join([surface] + lemmas) + "\n")
    print(f"wrote fixture with {total} synsets to {os.path.normpath(OUT)}", file=sys.stderr)


if __name__ == "__main__":
    main()
