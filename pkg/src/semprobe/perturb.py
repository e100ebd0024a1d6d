"""Sentence tokenization and seeded perturbations.

Three perturbations over a sentence: replace n words with synonyms, replace
exactly one verb/adjective with an antonym, or swap n random token pairs.
All draws come from a per-sentence substream seed, so results do not depend
on processing order.
"""

import random
import string
from dataclasses import dataclass, field

from . import wordnet
from ._util import mix_seed
from .errors import InsufficientCandidates, NoAntonymCandidate, UnjumblableSentence

__all__ = [
    "Sentence",
    "PerturbationRecord",
    "tokenize",
    "detokenize",
    "normalize_ws",
    "content_candidates",
    "synonym_replace",
    "antonym_replace",
    "jumble",
]

_PUNCT = set(string.punctuation)
# Tokens that attach to the preceding word when rebuilding text.
_CLOSERS = {",", ".", ";", ":", "!", "?", ")", "]", "}", "%", "…"}
# Tokens that attach to the following word.
_OPENERS = {"(", "[", "{", "$", "#", "@", "£", "€"}
# Straight quotes alternate opener/closer by running parity.
_PAIRED = {'"', "'", "`"}


def normalize_ws(text: str) -> str:
    return " ".join(text.split())


def tokenize(text: str) -> list:
    """Whitespace split, then peel leading/trailing punctuation characters
    off each chunk as separate tokens.  Internal punctuation (apostrophes,
    hyphens, "a.b") stays attached."""
    tokens = []
    for chunk in text.split():
        lead = []
        while chunk and chunk[0] in _PUNCT:
            lead.append(chunk[0])
            chunk = chunk[1:]
        trail = []
        while chunk and chunk[-1] in _PUNCT:
            trail.append(chunk[-1])
            chunk = chunk[:-1]
        tokens.extend(lead)
        if chunk:
            tokens.append(chunk)
        tokens.extend(reversed(trail))
    return tokens


def detokenize(tokens) -> str:
    """Rebuild normalized text from tokens; inverse of :func:`tokenize` on
    whitespace-normalized input."""
    out = []
    open_paired = {}  # paired quote char -> currently open?
    glue_next = False
    for tok in tokens:
        if tok in _PAIRED:
            is_open = not open_paired.get(tok, False)
            open_paired[tok] = is_open
            if is_open:
                out.append((" " if out and not glue_next else "") + tok)
                glue_next = True
            else:
                out.append(tok)
                glue_next = False
            continue
        if tok in _CLOSERS:
            out.append(tok)
            glue_next = False
        elif tok in _OPENERS:
            out.append((" " if out and not glue_next else "") + tok)
            glue_next = True
        else:
            out.append(("" if glue_next or not out else " ") + tok)
            glue_next = False
    return "".join(out)


@dataclass(frozen=True)
class Sentence:
    id: str
    text: str
    tokens: tuple = field(default=None, compare=False)

    def __post_init__(self):
        if self.tokens is None:
            object.__setattr__(self, "tokens", tuple(tokenize(self.text)))

    @classmethod
    def from_tokens(cls, sent_id: str, tokens) -> "Sentence":
        return cls(sent_id, detokenize(tokens), tuple(tokens))

    def to_json(self) -> dict:
        return {"id": self.id, "text": self.text}

    @classmethod
    def from_json(cls, obj) -> "Sentence":
        return cls(str(obj["id"]), obj["text"])


@dataclass(frozen=True)
class PerturbationRecord:
    original: Sentence
    perturbed: Sentence
    kind: str  # "synonym" | "antonym" | "jumble"
    n: int
    trace: tuple  # ((position, before, after), ...)
    seed: int  # substream seed that produced this record

    def __post_init__(self):
        positions = [pos for pos, _, _ in self.trace]
        if positions != sorted(set(positions)):
            raise ValueError("trace positions must be strictly increasing")
        orig, pert = self.original.tokens, self.perturbed.tokens
        if len(orig) != len(pert):
            raise ValueError("perturbation must preserve token count")
        changed = [i for i, (a, b) in enumerate(zip(orig, pert)) if a != b]
        if changed != positions:
            raise ValueError(f"trace {positions} disagrees with changed positions {changed}")
        if not positions:
            raise ValueError("perturbed tokens equal original tokens")

    def to_json(self) -> dict:
        return {
            "id": self.original.id,
            "kind": self.kind,
            "n": self.n,
            "seed": self.seed,
            "original": self.original.text,
            "perturbed": self.perturbed.text,
            "trace": [{"pos": p, "before": b, "after": a} for p, b, a in self.trace],
        }


def substream(master_seed: int, sentence_id: str, op: str) -> int:
    """Per-sentence, per-operation 64-bit seed."""
    return mix_seed(master_seed, sentence_id, op)


def _lemma_pos_options(token: str, db) -> list:
    """(lemma, pos, rule) for each verb/adjective reading of the token."""
    word = token.lower()
    options = []
    for pos in (wordnet.POS.VERB, wordnet.POS.ADJECTIVE):
        found = wordnet.lemmatize_with_rule(db, word, pos)
        if found:
            options.append((found[0], pos, found[1]))
    return options


def content_candidates(sentence: Sentence, db, stop) -> list:
    """Token indices eligible for replacement: non-stopword, alphabetic,
    and readable as a verb or adjective in the database."""
    out = []
    for i, token in enumerate(sentence.tokens):
        word = token.lower()
        if word in stop or not word.isalpha():
            continue
        if _lemma_pos_options(token, db):
            out.append(i)
    return out


# --- re-inflection ----------------------------------------------------------


def _match_case(replacement: str, original: str) -> str:
    if original.isupper() and len(original) > 1:
        return replacement.upper()
    if original[:1].isupper():
        return replacement[:1].upper() + replacement[1:]
    return replacement


def _implausible(word: str, suffix: str) -> bool:
    # Doubled suffix ("refuseded") or a triple letter betray a bad splice.
    if suffix and word.endswith(suffix * 2):
        return True
    return any(word[i] == word[i + 1] == word[i + 2] for i in range(len(word) - 2))


def reinflect(lemma: str, rule) -> str:
    """Mirror the detachment rule that matched the original surface onto a
    replacement lemma; fall back to the bare lemma when the splice looks
    wrong."""
    suffix, replacement, undoubled = rule
    if suffix is None or suffix == "exception":
        return lemma
    stem = lemma
    if replacement and stem.endswith(replacement):
        stem = stem[: len(stem) - len(replacement)]
    elif not replacement and suffix[0] in "aeiou" and stem.endswith("e"):
        # e-dropping mirror: refuse + ing -> refusing
        stem = stem[:-1]
    if undoubled and len(stem) >= 2 and stem[-1] not in "aeiou" and stem[-2] in "aeiou" and stem[-1] not in "wxy":
        stem = stem + stem[-1]
    candidate = stem + suffix
    if _implausible(candidate, suffix):
        return lemma
    return candidate


def _replacement_surface(choice: str, original_token: str, rule) -> str:
    return _match_case(reinflect(choice, rule), original_token)


# --- perturbations ----------------------------------------------------------


def _pooled(db, token: str, query) -> list:
    """Replacement surfaces pooled across verb/adjective readings of the
    token, sorted for deterministic sampling.

    Each entry is (lemma, surface) with the matched detachment rule already
    mirrored onto the surface; surfaces spelling the original token are
    dropped so a replacement always changes the position.
    """
    word = token.lower()
    pooled = {}
    for lemma, pos, rule in _lemma_pos_options(token, db):
        for candidate in query(db, lemma, pos):
            surface = _replacement_surface(candidate, token, rule)
            if surface.lower() != word and candidate not in pooled:
                pooled[candidate] = surface
    return sorted(pooled.items())


def _perturbed_sentence(original: Sentence, tokens, tag: str) -> Sentence:
    return Sentence.from_tokens(f"{original.id}#{tag}", tokens)


def synonym_replace(sentence: Sentence, n: int, db, stop, seed: int) -> PerturbationRecord:
    """Replace n distinct eligible words with synonyms, uniformly seeded.

    Candidates without usable synonyms are passed over and the draw
    continues; raises :class:`InsufficientCandidates` when fewer than n
    eligible words carry synonyms.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    rng = random.Random(seed)
    candidates = content_candidates(sentence, db, stop)
    order = candidates[:]
    rng.shuffle(order)
    chosen = []
    for idx in order:
        options = _pooled(db, sentence.tokens[idx], wordnet.synonyms)
        if options:
            chosen.append((idx, options))
            if len(chosen) == n:
                break
    if len(chosen) < n:
        available = sum(1 for i in candidates if _pooled(db, sentence.tokens[i], wordnet.synonyms))
        raise InsufficientCandidates(available, n)
    tokens = list(sentence.tokens)
    trace = []
    for idx, options in sorted(chosen):
        before = tokens[idx]
        _, surface = options[rng.randrange(len(options))]
        tokens[idx] = surface
        trace.append((idx, before, surface))
    perturbed = _perturbed_sentence(sentence, tokens, f"syn{n}")
    return PerturbationRecord(sentence, perturbed, "synonym", n, tuple(trace), seed)


def antonym_replace(sentence: Sentence, db, stop, seed: int) -> PerturbationRecord:
    """Replace exactly one verb/adjective with an antonym, uniformly seeded."""
    rng = random.Random(seed)
    candidates = [
        (i, _pooled(db, sentence.tokens[i], wordnet.antonyms))
        for i in content_candidates(sentence, db, stop)
    ]
    candidates = [(i, opts) for i, opts in candidates if opts]
    if not candidates:
        raise NoAntonymCandidate(sentence.id)
    idx, options = candidates[rng.randrange(len(candidates))]
    tokens = list(sentence.tokens)
    before = tokens[idx]
    _, surface = options[rng.randrange(len(options))]
    tokens[idx] = surface
    perturbed = _perturbed_sentence(sentence, tokens, "ant")
    return PerturbationRecord(sentence, perturbed, "antonym", 1, ((idx, before, surface),), seed)


_JUMBLE_RETRIES = 128


def jumble(sentence: Sentence, n: int, seed: int) -> PerturbationRecord:
    """Swap n disjoint position pairs, resampling until every swapped pair
    holds unequal tokens; the token multiset is preserved."""
    if n < 1:
        raise ValueError("n must be >= 1")
    tokens = list(sentence.tokens)
    if len(tokens) < 2 * n:
        raise UnjumblableSentence(sentence.id, f"{len(tokens)} tokens, need {2 * n}")
    if len(set(tokens)) < 2:
        raise UnjumblableSentence(sentence.id, "all tokens identical")
    rng = random.Random(seed)
    for _ in range(_JUMBLE_RETRIES):
        positions = rng.sample(range(len(tokens)), 2 * n)
        pairs = [(positions[2 * k], positions[2 * k + 1]) for k in range(n)]
        if all(tokens[i] != tokens[j] for i, j in pairs):
            break
    else:
        raise UnjumblableSentence(sentence.id, f"no unequal pairing after {_JUMBLE_RETRIES} tries")
    out = tokens[:]
    for i, j in pairs:
        out[i], out[j] = out[j], out[i]
    trace = tuple((p, tokens[p], out[p]) for p in sorted(positions))
    perturbed = _perturbed_sentence(sentence, out, f"jum{n}")
    return PerturbationRecord(sentence, perturbed, "jumble", n, trace, seed)
