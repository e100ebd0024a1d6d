"""Small shared helpers: seed mixing, hashing, stable JSON, atomic writes."""

import hashlib
import json
import math
import os
import tempfile

MASK64 = (1 << 64) - 1


def mix_seed(master_seed: int, *parts: str) -> int:
    """Derive a 64-bit substream seed from a master seed and string labels.

    Independent of processing order: the same (master_seed, parts) always
    maps to the same substream, so per-item work can run in any order or in
    parallel without changing results.
    """
    h = hashlib.sha256()
    h.update((master_seed & MASK64).to_bytes(8, "little"))
    for part in parts:
        h.update(b"\x1f")
        h.update(part.encode("utf-8"))
    return int.from_bytes(h.digest()[:8], "little")


def sha256_hex(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


def canonical_json(obj) -> str:
    """Canonical JSON used for hashing and report files: sorted keys, no
    whitespace variance, full-precision floats via repr round-trip."""
    return json.dumps(obj, sort_keys=True, ensure_ascii=False, separators=(",", ":"))


def exact_mean(values) -> float:
    """Mean with exactly-rounded summation (math.fsum)."""
    values = list(values)
    if not values:
        raise ValueError("mean of empty sequence")
    return math.fsum(values) / len(values)


def atomic_write_text(path: str, text: str) -> None:
    """Write via temp file + rename so readers never observe partial files."""
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
