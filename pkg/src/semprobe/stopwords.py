"""Bundled English stop-word list (179 entries) with a stable content hash.

The hash is embedded in every report so runs can be compared knowing they
filtered the same words.
"""

import os

from ._util import sha256_hex

_BUNDLED = os.path.join(os.path.dirname(__file__), "data", "stopwords.txt")


def load_stopwords(path: str | None = None) -> frozenset:
    with open(path or _BUNDLED, encoding="utf-8") as fh:
        words = [line.strip().lower() for line in fh if line.strip()]
    return frozenset(words)


def stopword_hash(words) -> str:
    payload = "\n".join(sorted(words)).encode("utf-8")
    return sha256_hex(payload)


DEFAULT_STOPWORDS = load_stopwords()
DEFAULT_STOPWORD_HASH = stopword_hash(DEFAULT_STOPWORDS)
