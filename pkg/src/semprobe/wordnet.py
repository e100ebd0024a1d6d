"""Parser and query layer for WordNet 3.x plain-text database directories.

Reads ``index.{noun,verb,adj,adv}`` and ``data.{noun,verb,adj,adv}`` (plus
optional ``{pos}.exc`` exception lists), answers synonym/antonym queries for
a lemma and part of speech, and lemmatizes inflected surfaces with the
classic suffix-detachment rules.  The database is immutable after load and
safe for concurrent reads.
"""

import os
from dataclasses import dataclass, field
from enum import Enum

from .errors import DanglingPointer, MalformedLine

__all__ = [
    "POS",
    "Pointer",
    "Synset",
    "IndexEntry",
    "LexicalDatabase",
    "load_database",
    "serialize_database",
    "synonyms",
    "antonyms",
    "lemmatize",
    "lemmatize_with_rule",
    "validate",
]


class POS(Enum):
    NOUN = "n"
    VERB = "v"
    ADJECTIVE = "a"
    ADVERB = "r"


# File suffixes for index.* / data.* / *.exc.
_POS_FILE = {POS.NOUN: "noun", POS.VERB: "verb", POS.ADJECTIVE: "adj", POS.ADVERB: "adv"}

# Synset-type char -> POS; "s" (adjective satellite) folds into ADJECTIVE.
_SS_TYPE_POS = {"n": POS.NOUN, "v": POS.VERB, "a": POS.ADJECTIVE, "s": POS.ADJECTIVE, "r": POS.ADVERB}

ANTONYM = "!"


@dataclass(frozen=True)
class Pointer:
    symbol: str
    target_offset: int
    target_pos: POS
    # Word indices are 1-based into the lemma lists; 0 means "whole synset".
    source_word: int
    target_word: int
    target_ss_type: str = "n"  # raw char, kept for serialization


@dataclass(frozen=True)
class Synset:
    offset: int
    pos: POS
    lemmas: tuple
    pointers: tuple
    # Wire-layout fields retained so a parsed database serializes back to
    # the exact field structure it was read from.
    ss_type: str = "n"
    lex_filenum: int = 0
    lemma_ids: tuple = ()
    frames: tuple = ()
    gloss: str = ""

    def lemma_set(self):
        return {w.lower() for w in self.lemmas}


@dataclass(frozen=True)
class IndexEntry:
    lemma: str
    pos: POS
    offsets: tuple
    ptr_symbols: tuple = ()
    tagsense_cnt: int = 0


@dataclass
class LexicalDatabase:
    index: dict = field(default_factory=dict)  # (lemma, POS) -> IndexEntry
    synsets: dict = field(default_factory=dict)  # (offset, POS) -> Synset
    exceptions: dict = field(default_factory=dict)  # POS -> {surface: (lemmas...)}

    def __eq__(self, other):
        if not isinstance(other, LexicalDatabase):
            return NotImplemented
        return (
            self.index == other.index
            and self.synsets == other.synsets
            and self.exceptions == other.exceptions
        )

    def has_lemma(self, lemma: str, pos: POS) -> bool:
        return (lemma.lower(), pos) in self.index

    def synsets_for(self, lemma: str, pos: POS):
        entry = self.index.get((lemma.lower(), pos))
        if entry is None:
            return []
        return [self.synsets[(off, pos)] for off in entry.offsets if (off, pos) in self.synsets]


def _is_header_line(line: str) -> bool:
    # License preamble lines in the shipped databases start with two spaces.
    return line.startswith("  ") or not line.strip()


def _parse_index_line(path, line_no, line):
    fields = line.split()
    it = iter(fields)
    try:
        lemma = next(it)
        pos_char = next(it)
        pos = POS(pos_char)
        synset_cnt = int(next(it))
        p_cnt = int(next(it))
        ptr_symbols = []
        for _ in range(p_cnt):
            ptr_symbols.append(next(it))
        sense_cnt = int(next(it))
        tagsense_cnt = int(next(it))
        offsets = []
        for _ in range(synset_cnt):
            offsets.append(int(next(it)))
    except (StopIteration, ValueError) as exc:
        raise MalformedLine(path, line_no, str(exc)) from exc
    if sense_cnt != synset_cnt:
        raise MalformedLine(path, line_no, f"sense_cnt {sense_cnt} != synset_cnt {synset_cnt}")
    if next(it, None) is not None:
        raise MalformedLine(path, line_no, "trailing fields")
    return IndexEntry(lemma.lower(), pos, tuple(offsets), tuple(ptr_symbols), tagsense_cnt)


def _parse_data_line(path, line_no, line):
    body, sep, gloss = line.partition("|")
    fields = body.split()
    it = iter(fields)
    try:
        offset = int(next(it))
        lex_filenum = int(next(it))
        ss_type = next(it)
        pos = _SS_TYPE_POS[ss_type]
        w_cnt = int(next(it), 16)
        if w_cnt < 1:
            raise ValueError("word count must be >= 1")
        lemmas = []
        lemma_ids = []
        for _ in range(w_cnt):
            lemmas.append(next(it))
            lemma_ids.append(int(next(it), 16))
        p_cnt = int(next(it))
        pointers = []
        for _ in range(p_cnt):
            symbol = next(it)
            target_offset = int(next(it))
            target_ss = next(it)
            target_pos = _SS_TYPE_POS[target_ss]
            word_field = next(it)
            if len(word_field) != 4:
                raise ValueError(f"bad source/target field {word_field!r}")
            source_word = int(word_field[:2], 16)
            target_word = int(word_field[2:], 16)
            pointers.append(Pointer(symbol, target_offset, target_pos, source_word, target_word, target_ss))
        frames = []
        if pos is POS.VERB:
            nxt = next(it, None)
            if nxt is not None:
                f_cnt = int(nxt)
                for _ in range(f_cnt):
                    plus = next(it)
                    if plus != "+":
                        raise ValueError("expected '+' in frame list")
                    frames.append((int(next(it)), int(next(it), 16)))
    except (StopIteration, ValueError, KeyError) as exc:
        raise MalformedLine(path, line_no, str(exc)) from exc
    if next(it, None) is not None:
        raise MalformedLine(path, line_no, "trailing fields")
    for ptr in pointers:
        if ptr.source_word > w_cnt:
            raise MalformedLine(path, line_no, f"source word index {ptr.source_word} out of range")
    return Synset(
        offset=offset,
        pos=pos,
        lemmas=tuple(lemmas),
        pointers=tuple(pointers),
        ss_type=ss_type,
        lex_filenum=lex_filenum,
        lemma_ids=tuple(lemma_ids),
        frames=tuple(frames),
        gloss=gloss.strip() if sep else "",
    )


def load_database(dir_path) -> LexicalDatabase:
    """Load a WordNet-format directory into an in-memory database.

    Header lines (two leading spaces) are skipped; glosses after ``|`` are
    retained but unused.  Raises :class:`MalformedLine` on field-count or
    number-base failures; dangling pointers are only reported by
    :func:`validate`.
    """
    db = LexicalDatabase()
    for pos, suffix in _POS_FILE.items():
        index_path = os.path.join(dir_path, f"index.{suffix}")
        data_path = os.path.join(dir_path, f"data.{suffix}")
        with open(data_path, encoding="utf-8") as fh:
            for line_no, line in enumerate(fh, 1):
                if _is_header_line(line):
                    continue
                synset = _parse_data_line(data_path, line_no, line.rstrip("\n"))
                db.synsets[(synset.offset, synset.pos)] = synset
        with open(index_path, encoding="utf-8") as fh:
            for line_no, line in enumerate(fh, 1):
                if _is_header_line(line):
                    continue
                entry = _parse_index_line(index_path, line_no, line.rstrip("\n"))
                db.index[(entry.lemma, entry.pos)] = entry
        exc_path = os.path.join(dir_path, f"{suffix}.exc")
        if os.path.exists(exc_path):
            table = {}
            with open(exc_path, encoding="utf-8") as fh:
                for line_no, line in enumerate(fh, 1):
                    if _is_header_line(line):
                        continue
                    fields = line.split()
                    if len(fields) < 2:
                        raise MalformedLine(exc_path, line_no, "need surface + lemma(s)")
                    table[fields[0].lower()] = tuple(w.lower() for w in fields[1:])
            db.exceptions[pos] = table
    return db


def validate(db: LexicalDatabase) -> None:
    """Raise :class:`DanglingPointer` if any pointer target is unresolved,
    and assert index entries point at loaded synsets."""
    dangling = []
    for synset in db.synsets.values():
        for ptr in synset.pointers:
            target = db.synsets.get((ptr.target_offset, ptr.target_pos))
            if target is None or ptr.target_word > len(target.lemmas):
                dangling.append((synset.offset, synset.pos, ptr))
    for entry in db.index.values():
        for off in entry.offsets:
            if (off, entry.pos) not in db.synsets:
                dangling.append((off, entry.pos, None))
    if dangling:
        raise DanglingPointer(dangling)


def serialize_database(db: LexicalDatabase, dir_path) -> None:
    """Write the database back out in the wire field layout.

    Reparsing the output yields a structurally equal database; offsets are
    treated as opaque keys, not byte positions.
    """
    os.makedirs(dir_path, exist_ok=True)
    for pos, suffix in _POS_FILE.items():
        data_lines = []
        for (offset, spos), synset in sorted(db.synsets.items(), key=lambda kv: kv[0][0]):
            if spos is not pos:
                continue
            parts = [f"{synset.offset:08d}", f"{synset.lex_filenum:02d}", synset.ss_type, f"{len(synset.lemmas):02x}"]
            for lemma, lex_id in zip(synset.lemmas, synset.lemma_ids):
                parts += [lemma, f"{lex_id:x}"]
            parts.append(f"{len(synset.pointers):03d}")
            for ptr in synset.pointers:
                parts += [
                    ptr.symbol,
                    f"{ptr.target_offset:08d}",
                    ptr.target_ss_type,
                    f"{ptr.source_word:02x}{ptr.target_word:02x}",
                ]
            if pos is POS.VERB:
                parts.append(f"{len(synset.frames):02d}")
                for f_num, w_num in synset.frames:
                    parts += ["+", f"{f_num:02d}", f"{w_num:02x}"]
            data_lines.append(" ".join(parts) + " | " + synset.gloss)
        index_lines = []
        for (lemma, ipos), entry in sorted(db.index.items(), key=lambda kv: kv[0][0]):
            if ipos is not pos:
                continue
            parts = [entry.lemma, pos.value, str(len(entry.offsets)), str(len(entry.ptr_symbols))]
            parts += list(entry.ptr_symbols)
            parts += [str(len(entry.offsets)), str(entry.tagsense_cnt)]
            parts += [f"{off:08d}" for off in entry.offsets]
            index_lines.append(" ".join(parts))
        with open(os.path.join(dir_path, f"data.{suffix}"), "w", encoding="utf-8") as fh:
            fh.write("".join(line + "\n" for line in data_lines))
        with open(os.path.join(dir_path, f"index.{suffix}"), "w", encoding="utf-8") as fh:
            fh.write("".join(line + "\n" for line in index_lines))
        if pos in db.exceptions:
            with open(os.path.join(dir_path, f"{suffix}.exc"), "w", encoding="utf-8") as fh:
                for surface, lems in sorted(db.exceptions[pos].items()):
                    fh.write(" ".join((surface,) + lems) + "\n")


# --- morphy lemmatization -------------------------------------------------

# Classic suffix-detachment table, tried in order.
DETACHMENT_RULES = {
    POS.NOUN: [
        ("s", ""),
        ("ses", "s"),
        ("ves", "f"),
        ("xes", "x"),
        ("zes", "z"),
        ("ches", "ch"),
        ("shes", "sh"),
        ("men", "man"),
        ("ies", "y"),
    ],
    POS.VERB: [
        ("s", ""),
        ("ies", "y"),
        ("es", "e"),
        ("es", ""),
        ("ed", "e"),
        ("ed", ""),
        ("ing", "e"),
        ("ing", ""),
    ],
    POS.ADJECTIVE: [
        ("er", ""),
        ("est", ""),
        ("er", "e"),
        ("est", "e"),
    ],
    POS.ADVERB: [],
}

_VOWELS = set("aeiou")


def _undouble(candidate: str):
    # "runn" -> "run": detachment can leave a doubled final consonant behind.
    if len(candidate) >= 3 and candidate[-1] == candidate[-2] and candidate[-1] not in _VOWELS:
        return candidate[:-1]
    return None


def _rule_candidates(surface: str, pos: POS):
    """Yield (candidate, rule) pairs in table order.

    ``rule`` is (suffix, replacement, undoubled) and drives re-inflection of
    substituted words; the identity rule is (None, None, False).
    """
    for suffix, replacement in DETACHMENT_RULES[pos]:
        if surface.endswith(suffix) and len(surface) > len(suffix):
            candidate = surface[: len(surface) - len(suffix)] + replacement
            yield candidate, (suffix, replacement, False)
            undoubled = _undouble(candidate)
            if undoubled:
                yield undoubled, (suffix, replacement, True)


def lemmatize_with_rule(db: LexicalDatabase, surface: str, pos: POS):
    """Return (lemma, rule) for the first indexed candidate, or None.

    Checks the exception list first (when loaded), then the surface itself,
    then the detachment rules in table order.
    """
    word = surface.lower()
    exc = db.exceptions.get(pos, {})
    if word in exc:
        for lemma in exc[word]:
            if db.has_lemma(lemma, pos):
                return lemma, ("exception", "", False)
    if db.has_lemma(word, pos):
        return word, (None, None, False)
    for candidate, rule in _rule_candidates(word, pos):
        if db.has_lemma(candidate, pos):
            return candidate, rule
    return None


def lemmatize(db: LexicalDatabase, surface: str, pos: POS):
    """Map an inflected surface to an index lemma, or None if unknown."""
    found = lemmatize_with_rule(db, surface, pos)
    return found[0] if found else None


def _single_word(lemma: str) -> bool:
    return "_" not in lemma


def synonyms(db: LexicalDatabase, lemma: str, pos: POS) -> set:
    """Co-members of every synset containing the (lemmatized) query.

    Excludes the query lemma itself and multiword collocations; empty set
    for unknown lemmas.
    """
    base = lemmatize(db, lemma, pos)
    if base is None:
        return set()
    out = set()
    for synset in db.synsets_for(base, pos):
        for word in synset.lemmas:
            if word.lower() != base and _single_word(word):
                out.add(word.lower())
    return out


def antonyms(db: LexicalDatabase, lemma: str, pos: POS) -> set:
    """Lemmas reached over "!" pointers from synsets containing the query.

    Lexical pointers (nonzero word indices) apply only when the source word
    is the query itself and contribute just the indexed target word;
    synset-level pointers (0000) contribute every target lemma.
    """
    base = lemmatize(db, lemma, pos)
    if base is None:
        return set()
    out = set()
    for synset in db.synsets_for(base, pos):
        lowered = [w.lower() for w in synset.lemmas]
        for ptr in synset.pointers:
            if ptr.symbol != ANTONYM:
                continue
            if ptr.source_word != 0 and lowered[ptr.source_word - 1] != base:
                continue
            target = db.synsets.get((ptr.target_offset, ptr.target_pos))
            if target is None:
                continue
            if ptr.target_word == 0:
                words = target.lemmas
            else:
                words = target.lemmas[ptr.target_word - 1 : ptr.target_word]
            out.update(w.lower() for w in words if _single_word(w))
    return out


def fixture_path() -> str:
    """Directory of the bundled test database."""
    return os.path.join(os.path.dirname(__file__), "data", "wordnet_fixture")
