"""Uniform embedding interface over external encoder backends.

Backends speak a one-line-JSON protocol (stdio subprocess or HTTP POST):

    request:   {"id": "<string>", "op": "encode", "texts": ["...", ...]}
    response:  {"id": "<string>", "dim": <int>, "vectors": [[<float>...], ...]}
               or {"id": "...", "error": "<msg>"}
    handshake: {"op": "info"} -> {"name": "<encoder_id>", "dim": <int>}

Vectors are cached by content key sha256(encoder_id \\x00 text); cache hits
never touch the backend.  All similarity math runs in float64.
"""

import hashlib
import json
import os
import shlex
import subprocess
import urllib.error
import urllib.request
from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import (
    BackendUnavailable,
    CacheMiss,
    ConfigError,
    DimMismatch,
    ProtocolError,
    ZeroVector,
)

__all__ = [
    "EmbeddingVector",
    "BackendSpec",
    "Gateway",
    "encode_batch",
    "cosine",
    "cosine_pairs",
    "cache_key",
]

KINDS = ("cache_file", "subprocess", "http", "mock")


@dataclass(frozen=True)
class EmbeddingVector:
    encoder_id: str
    dim: int
    values: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.values, dtype=np.float64)
        if arr.shape != (self.dim,):
            raise DimMismatch(self.dim, arr.shape[0] if arr.ndim == 1 else -1)
        if not np.all(np.isfinite(arr)):
            raise ProtocolError("non-finite embedding component")
        arr.setflags(write=False)
        object.__setattr__(self, "values", arr)

    def __eq__(self, other):
        if not isinstance(other, EmbeddingVector):
            return NotImplemented
        return (
            self.encoder_id == other.encoder_id
            and self.dim == other.dim
            and np.array_equal(self.values, other.values)
        )


@dataclass(frozen=True)
class BackendSpec:
    kind: str
    target: str
    encoder_id: str
    batch_size: int = 32
    options: tuple = ()  # sorted (key, value) pairs, e.g. mock dim/seed

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ConfigError(f"unknown backend kind {self.kind!r}")
        if self.batch_size < 1:
            raise ConfigError("batch_size must be >= 1")

    def option(self, key, default=None):
        return dict(self.options).get(key, default)

    @classmethod
    def parse(cls, text: str, encoder_id: str, batch_size: int = 32) -> "BackendSpec":
        """Parse a CLI backend string: "subprocess:CMD", "http:URL",
        "cache:PATH", or "mock:dim=64,seed=1"."""
        kind, sep, target = text.partition(":")
        if not sep:
            raise ConfigError(f"backend spec {text!r} needs '<kind>:<target>'")
        if kind == "cache":
            kind = "cache_file"
        if kind == "http":
            target = text  # keep the full URL including scheme
        options = ()
        if kind == "mock":
            pairs = []
            for item in target.split(","):
                key, _, value = item.partition("=")
                pairs.append((key.strip(), int(value)))
            options = tuple(sorted(pairs))
            target = ""
        return cls(kind, target, encoder_id, batch_size, options)


def cache_key(encoder_id: str, text: str) -> str:
    h = hashlib.sha256()
    h.update(encoder_id.encode("utf-8"))
    h.update(b"\x00")
    h.update(text.encode("utf-8"))
    return h.hexdigest()


def _format_vector(values) -> str:
    # repr() gives the shortest decimal that round-trips the float64.
    return "[" + ",".join(repr(float(v)) for v in values) + "]"


class VectorCache:
    """Content-addressed vector store, optionally persisted as JSON lines."""

    def __init__(self, path=None):
        self.path = path
        self._mem = {}
        if path and os.path.exists(path):
            with open(path, encoding="utf-8") as fh:
                for line in fh:
                    if not line.strip():
                        continue
                    obj = json.loads(line)
                    self._mem[obj["key"]] = np.array(obj["vector"], dtype=np.float64)

    def __contains__(self, key):
        return key in self._mem

    def __len__(self):
        return len(self._mem)

    def get(self, key):
        return self._mem.get(key)

    def put(self, key, values):
        values = np.asarray(values, dtype=np.float64)
        self._mem[key] = values
        if self.path:
            line = '{"key":"%s","dim":%d,"vector":%s}\n' % (key, values.size, _format_vector(values))
            with open(self.path, "a", encoding="utf-8") as fh:
                fh.write(line)


class _SubprocessBackend:
    def __init__(self, command: str):
        self.command = command
        self.proc = None

    def _ensure(self):
        if self.proc is None or self.proc.poll() is not None:
            try:
                self.proc = subprocess.Popen(
                    shlex.split(self.command),
                    stdin=subprocess.PIPE,
                    stdout=subprocess.PIPE,
                    text=True,
                    bufsize=1,
                )
            except OSError as exc:
                raise BackendUnavailable(str(exc)) from exc

    def request(self, payload: dict) -> dict:
        self._ensure()
        try:
            self.proc.stdin.write(json.dumps(payload) + "\n")
            self.proc.stdin.flush()
            line = self.proc.stdout.readline()
        except (BrokenPipeError, OSError) as exc:
            raise BackendUnavailable(f"backend process died: {exc}") from exc
        if not line:
            raise BackendUnavailable("backend closed its output stream")
        try:
            return json.loads(line)
        except json.JSONDecodeError as exc:
            raise ProtocolError(f"bad JSON from backend: {exc}") from exc

    def close(self):
        if self.proc is not None and self.proc.poll() is None:
            self.proc.stdin.close()
            self.proc.wait(timeout=10)
        self.proc = None


class _HttpBackend:
    def __init__(self, url: str):
        self.url = url

    def request(self, payload: dict) -> dict:
        data = json.dumps(payload).encode("utf-8")
        req = urllib.request.Request(self.url, data=data, headers={"Content-Type": "application/json"})
        try:
            with urllib.request.urlopen(req) as resp:
                body = resp.read()
        except urllib.error.URLError as exc:
            raise BackendUnavailable(str(exc)) from exc
        try:
            return json.loads(body)
        except json.JSONDecodeError as exc:
            raise ProtocolError(f"bad JSON from backend: {exc}") from exc

    def close(self):
        pass


class Gateway:
    """Per-backend embedding client with caching and order preservation."""

    def __init__(self, spec: BackendSpec, cache_path=None):
        self.spec = spec
        self.cache = VectorCache(cache_path)
        self.dim = None
        self._request_no = 0
        if spec.kind == "subprocess":
            self._backend = _SubprocessBackend(spec.target)
        elif spec.kind == "http":
            self._backend = _HttpBackend(spec.target)
        elif spec.kind == "mock":
            from . import mock_backend

            dim = int(spec.option("dim", 256))
            seed = int(spec.option("seed", 0))
            self._backend = mock_backend.MockBackend(dim=dim, seed=seed)
            self.dim = dim
        else:  # cache_file: the cache itself is the backend
            self._backend = None
            file_cache = VectorCache(spec.target)
            self.cache._mem.update(file_cache._mem)
            for values in self.cache._mem.values():
                self.dim = values.size
                break

    # -- protocol plumbing --------------------------------------------------

    def _check_response(self, payload, response, expected_texts):
        if "error" in response:
            raise BackendUnavailable(str(response["error"]))
        if response.get("id") != payload["id"]:
            raise ProtocolError(f"response id {response.get('id')!r} != request id {payload['id']!r}")
        vectors = response.get("vectors")
        dim = response.get("dim")
        if not isinstance(vectors, list) or not isinstance(dim, int):
            raise ProtocolError("response missing dim/vectors")
        if len(vectors) != len(expected_texts):
            raise ProtocolError(f"got {len(vectors)} vectors for {len(expected_texts)} texts")
        if self.dim is None:
            self.dim = dim
        elif dim != self.dim:
            raise DimMismatch(self.dim, dim)
        for vec in vectors:
            if len(vec) != dim:
                raise ProtocolError(f"vector length {len(vec)} != dim {dim}")
        return vectors

    def handshake(self) -> dict:
        if self.spec.kind in ("cache_file", "mock"):
            return {"name": self.spec.encoder_id, "dim": self.dim}
        info = self._backend.request({"op": "info"})
        if "error" in info:
            raise BackendUnavailable(str(info["error"]))
        if "name" not in info or "dim" not in info:
            raise ProtocolError("handshake missing name/dim")
        if self.dim is None:
            self.dim = int(info["dim"])
        return info

    def _encode_uncached(self, texts):
        if self.spec.kind == "cache_file":
            raise CacheMiss(cache_key(self.spec.encoder_id, texts[0]))
        if self.spec.kind == "mock":
            return [np.asarray(v, dtype=np.float64) for v in self._backend.encode(texts)]
        self._request_no += 1
        payload = {"id": f"r{self._request_no}", "op": "encode", "texts": list(texts)}
        response = self._backend.request(payload)
        vectors = self._check_response(payload, response, texts)
        return [np.asarray(v, dtype=np.float64) for v in vectors]

    # -- public surface -----------------------------------------------------

    def encode_batch(self, texts) -> list:
        """One vector per text, in input order; backend consulted only for
        cache misses, in chunks of spec.batch_size."""
        if not texts:
            raise ValueError("texts must be non-empty")
        keys = [cache_key(self.spec.encoder_id, t) for t in texts]
        missing = []
        seen = set()
        for text, key in zip(texts, keys):
            if key not in self.cache and key not in seen:
                missing.append((key, text))
                seen.add(key)
        for start in range(0, len(missing), self.spec.batch_size):
            chunk = missing[start : start + self.spec.batch_size]
            vectors = self._encode_uncached([t for _, t in chunk])
            for (key, _), values in zip(chunk, vectors):
                self.cache.put(key, values)
        out = []
        for key in keys:
            values = self.cache.get(key)
            if values is None:
                raise CacheMiss(key)
            if self.dim is None:
                self.dim = values.size
            if values.size != self.dim:
                raise DimMismatch(self.dim, values.size)
            out.append(EmbeddingVector(self.spec.encoder_id, values.size, values))
        return out

    def encode_one(self, text: str) -> EmbeddingVector:
        return self.encode_batch([text])[0]

    def close(self):
        if self._backend is not None:
            self._backend.close()

    def __enter__(self):
        return self

    def __exit__(self, *exc):
        self.close()


def encode_batch(spec: BackendSpec, texts, cache_path=None) -> list:
    """One-shot convenience wrapper around :class:`Gateway`."""
    with Gateway(spec, cache_path=cache_path) as gw:
        return gw.encode_batch(texts)


def cosine(a: EmbeddingVector, b: EmbeddingVector) -> float:
    """Cosine similarity in [-1, 1]; exactly 1.0 for bit-identical vectors."""
    if a.dim != b.dim:
        raise DimMismatch(a.dim, b.dim)
    return float(cosine_pairs([a], [b])[0])


def cosine_pairs(vecs_a, vecs_b) -> np.ndarray:
    """Row-wise cosine over two equal-length vector lists.

    Bit-identical pairs short-circuit to exactly 1.0 so multiset-identical
    sentences compare clean under deterministic encoders.
    """
    if len(vecs_a) != len(vecs_b):
        raise ValueError("vector lists differ in length")
    dims = {v.dim for v in vecs_a} | {v.dim for v in vecs_b}
    if len(dims) > 1:
        raise DimMismatch(*sorted(dims)[:2])
    a = np.stack([v.values for v in vecs_a])
    b = np.stack([v.values for v in vecs_b])
    out = kernels.cosine_many(a, b)
    if np.any(np.isnan(out)):
        raise ZeroVector("zero-norm vector in cosine")
    equal = np.all(a == b, axis=1)
    out[equal] = 1.0
    return out
