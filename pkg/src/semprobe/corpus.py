"""Dataset loading, validation, and seeded sampling.

Supports the three public paraphrase-pair TSV layouts (QQP, PAWS, MRPC),
a canonical JSONL pair format for internal interchange, plain JSONL
sentence lists, and the tab-separated probe-task layout.  Text is NFC
normalized at load so cache keys are stable across platforms.
"""

import csv
import json
import random
import unicodedata
from dataclasses import dataclass

from .criteria import NON_PARAPHRASE, PARAPHRASE, SentencePair
from .errors import (
    ConfigError,
    ExcessiveSkips,
    FormatError,
    InsufficientPairs,
    InsufficientSentences,
)
from .perturb import Sentence

__all__ = [
    "DatasetSpec",
    "load_pairs",
    "load_sentences_jsonl",
    "write_pairs_jsonl",
    "balanced_sample",
    "sample_singles",
    "load_probe_samples",
]

FORMATS = ("qqp", "paws", "mrpc", "jsonl_pairs")

# Fraction of malformed rows tolerated before the load aborts.
_SKIP_LIMIT = 0.01


@dataclass(frozen=True)
class DatasetSpec:
    id: str
    path: str
    format: str
    pairs_per_label: int | None = None
    singles: int | None = None
    seed: int = 0

    def __post_init__(self):
        if not self.id:
            raise ConfigError("dataset id must be non-empty")
        if self.format not in FORMATS:
            raise ConfigError(f"unknown dataset format {self.format!r}; expected one of {FORMATS}")


def _nfc(text: str) -> str:
    return unicodedata.normalize("NFC", text)


def _label_from(raw: str):
    if raw == "1":
        return PARAPHRASE
    if raw == "0":
        return NON_PARAPHRASE
    return None


def _open_text(path: str):
    try:
        return open(path, encoding="utf-8", newline="")
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc}") from exc


# Column layouts of the public distributions: (s1, s2, label) positions and
# expected column count.
_TSV_LAYOUT = {
    "qqp": (3, 4, 5, 6),
    "paws": (1, 2, 3, 4),
    "mrpc": (3, 4, 0, 5),
}


def _iter_tsv_rows(path: str, fmt: str):
    i1, i2, ilab, ncols = _TSV_LAYOUT[fmt]
    with _open_text(path) as fh:
        reader = csv.reader(fh, delimiter="\t", quoting=csv.QUOTE_NONE)
        header_budget = 4 if fmt == "mrpc" else 1
        row_no = 0
        for row in reader:
            row_no += 1
            if header_budget > 0:
                # Tolerate leading header/preamble lines that do not parse
                # as data (MRPC ships variants with up to four).
                if len(row) != ncols or _label_from(row[ilab].strip()) is None:
                    header_budget -= 1
                    continue
                header_budget = 0
            yield row_no, row, (i1, i2, ilab, ncols)


def load_pairs(spec: DatasetSpec) -> list:
    """Parse a pair dataset; malformed rows are counted and skipped, the
    load aborts if more than 1% of rows were bad; pairs deduplicate on
    (s1.text, s2.text)."""
    if spec.format == "jsonl_pairs":
        return _load_pairs_jsonl(spec)
    if spec.format not in _TSV_LAYOUT:
        raise FormatError(f"{spec.format!r} is not a pair format")
    pairs = []
    seen_texts = set()
    skipped = 0
    total = 0
    for row_no, row, (i1, i2, ilab, ncols) in _iter_tsv_rows(spec.path, spec.format):
        total += 1
        if len(row) != ncols:
            skipped += 1
            continue
        label = _label_from(row[ilab].strip())
        text1 = _nfc(row[i1].strip())
        text2 = _nfc(row[i2].strip())
        if label is None or not text1 or not text2:
            skipped += 1
            continue
        if (text1, text2) in seen_texts:
            continue
        seen_texts.add((text1, text2))
        pid = f"{spec.id}-{row_no:06d}"
        pairs.append(SentencePair(pid, Sentence(f"{pid}-a", text1), Sentence(f"{pid}-b", text2), label))
    if total and skipped / total > _SKIP_LIMIT:
        raise ExcessiveSkips(skipped, total)
    return pairs


def _load_pairs_jsonl(spec: DatasetSpec) -> list:
    pairs = []
    seen_texts = set()
    skipped = 0
    total = 0
    with _open_text(spec.path) as fh:
        for line in fh:
            if not line.strip():
                continue
            total += 1
            try:
                obj = json.loads(line)
                pair = SentencePair.from_json(obj)
            except (ValueError, KeyError, TypeError):
                skipped += 1
                continue
            key = (_nfc(pair.s1.text), _nfc(pair.s2.text))
            if key in seen_texts:
                continue
            seen_texts.add(key)
            pairs.append(
                SentencePair(pair.id, Sentence(pair.s1.id, key[0]), Sentence(pair.s2.id, key[1]), pair.label)
            )
    if total and skipped / total > _SKIP_LIMIT:
        raise ExcessiveSkips(skipped, total)
    return pairs


def write_pairs_jsonl(pairs, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for pair in pairs:
            fh.write(json.dumps(pair.to_json(), ensure_ascii=False) + "\n")


def load_sentences_jsonl(path: str) -> list:
    """Plain sentence list: one {"id", "text"} object per line."""
    sentences = []
    with _open_text(path) as fh:
        for line_no, line in enumerate(fh, 1):
            if not line.strip():
                continue
            try:
                obj = json.loads(line)
                sentences.append(Sentence(str(obj["id"]), _nfc(obj["text"])))
            except (ValueError, KeyError, TypeError) as exc:
                raise FormatError(f"{path}:{line_no}: {exc}") from exc
    return sentences


def balanced_sample(pairs, per_label: int, seed: int) -> list:
    """Exactly per_label pairs for each label, sampled uniformly without
    replacement; output sorted by pair id."""
    if per_label == 0:
        return []
    rng = random.Random(seed)
    out = []
    for label in (PARAPHRASE, NON_PARAPHRASE):
        subset = sorted((p for p in pairs if p.label == label), key=lambda p: p.id)
        if len(subset) < per_label:
            raise InsufficientPairs(label, len(subset), per_label)
        out.extend(rng.sample(subset, per_label))
    return sorted(out, key=lambda p: p.id)


def sample_singles(pairs, count: int, seed: int) -> list:
    """Seeded uniform sample of `count` distinct first sentences."""
    distinct = {}
    for pair in sorted(pairs, key=lambda p: p.id):
        if pair.s1.text not in distinct:
            distinct[pair.s1.text] = pair.s1
    population = [distinct[t] for t in sorted(distinct)]
    if count > len(population):
        raise InsufficientSentences(len(population), count)
    rng = random.Random(seed)
    sampled = rng.sample(population, count)
    return sorted(sampled, key=lambda s: s.id)


def load_probe_samples(path: str, task) -> list:
    """Probe-task rows: `<label>\\t<sentence>` or `<label>\\t<s1>\\t<s2>`.

    Returns (label, text) or (label, text1, text2) tuples; labels must be
    integers below the task's class count.
    """
    want_cols = 3 if task.arity == "sentence_pair" else 2
    samples = []
    with _open_text(path) as fh:
        for line_no, line in enumerate(fh, 1):
            line = line.rstrip("\n")
            if not line:
                continue
            cols = line.split("\t")
            if len(cols) != want_cols:
                raise FormatError(f"{path}:{line_no}: expected {want_cols} tab-separated fields")
            try:
                label = int(cols[0])
            except ValueError as exc:
                raise FormatError(f"{path}:{line_no}: bad label {cols[0]!r}") from exc
            if not 0 <= label < task.num_classes:
                raise FormatError(f"{path}:{line_no}: label {label} out of range for {task.name}")
            samples.append((label, *[_nfc(c) for c in cols[1:]]))
    return samples
