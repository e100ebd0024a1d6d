"""Deterministic bag-of-tokens encoder used as the model-free test backend.

Each lowercase token hashes (with the seed) onto a sparse random sign
pattern over the basis; a sentence embeds as the normalized mean of its
token vectors, summed in sorted-token order so identical token multisets
produce bit-identical vectors.  Word order is invisible by construction,
which is exactly why order-sensitivity checks need real encoders.

Runs in-process behind the gateway, or as a wire-protocol server:

    python -m semprobe.mock_backend --dim 4096 --seed 1            # stdio
    python -m semprobe.mock_backend --dim 64 --http-port 8089      # HTTP
"""

import argparse
import hashlib
import json
import sys

import numpy as np

from .perturb import tokenize

MIN_DIM = 8


def _token_vector(token: str, dim: int, seed: int) -> np.ndarray:
    digest = hashlib.sha256(f"{seed}\x00{token}".encode("utf-8")).digest()
    rng = np.random.default_rng(int.from_bytes(digest[:8], "little"))
    nnz = min(32, max(4, dim // 8))
    idx = rng.choice(dim, size=nnz, replace=False)
    signs = rng.integers(0, 2, size=nnz) * 2 - 1
    vec = np.zeros(dim, dtype=np.float64)
    vec[idx] = signs / np.sqrt(nnz)
    return vec


class MockBackend:
    """In-process backend; also the engine behind the wire server."""

    def __init__(self, dim: int, seed: int):
        if dim < MIN_DIM:
            raise ValueError(f"dim must be >= {MIN_DIM}")
        self.dim = dim
        self.seed = seed
        self._token_cache = {}

    def _token_vec(self, token: str) -> np.ndarray:
        vec = self._token_cache.get(token)
        if vec is None:
            vec = _token_vector(token, self.dim, self.seed)
            self._token_cache[token] = vec
        return vec

    def encode_text(self, text: str) -> np.ndarray:
        tokens = sorted(t.lower() for t in tokenize(text))
        if not tokens:
            vec = np.zeros(self.dim, dtype=np.float64)
            vec[0] = 1.0
            return vec
        total = np.zeros(self.dim, dtype=np.float64)
        for token in tokens:
            total += self._token_vec(token)
        norm = np.linalg.norm(total)
        if norm == 0.0:  # sign cancellation; fall back to a stable basis ray
            vec = np.zeros(self.dim, dtype=np.float64)
            vec[0] = 1.0
            return vec
        return total / norm

    def encode(self, texts) -> list:
        return [self.encode_text(t) for t in texts]

    def close(self):
        pass


def mock_encoder(texts, dim: int, seed: int) -> list:
    """Encode texts with the deterministic mock; returns EmbeddingVector."""
    from .gateway import EmbeddingVector

    backend = MockBackend(dim=dim, seed=seed)
    encoder_id = f"mock-d{dim}-s{seed}"
    return [EmbeddingVector(encoder_id, dim, v) for v in backend.encode(texts)]


# --- wire-protocol server -------------------------------------------------


def _handle(backend: MockBackend, name: str, request: dict) -> dict:
    op = request.get("op")
    if op == "info":
        return {"name": name, "dim": backend.dim}
    if op == "encode":
        texts = request.get("texts")
        if not isinstance(texts, list) or not all(isinstance(t, str) for t in texts):
            return {"id": request.get("id"), "error": "texts must be a list of strings"}
        vectors = [[float(x) for x in vec] for vec in backend.encode(texts)]
        return {"id": request.get("id"), "dim": backend.dim, "vectors": vectors}
    return {"id": request.get("id"), "error": f"unknown op {op!r}"}


def serve_stdio(backend: MockBackend, name: str, stdin=None, stdout=None) -> None:
    stdin = stdin or sys.stdin
    stdout = stdout or sys.stdout
    for line in stdin:
        if not line.strip():
            continue
        try:
            request = json.loads(line)
            response = _handle(backend, name, request)
        except json.JSONDecodeError as exc:
            response = {"error": f"bad request JSON: {exc}"}
        except Exception as exc:  # never crash the loop
            response = {"error": str(exc)}
        stdout.write(json.dumps(response) + "\n")
        stdout.flush()


def serve_http(backend: MockBackend, name: str, port: int) -> None:
    from http.server import BaseHTTPRequestHandler, HTTPServer

    class Handler(BaseHTTPRequestHandler):
        def do_POST(self):
            length = int(self.headers.get("Content-Length", 0))
            body = self.rfile.read(length)
            try:
                response = _handle(backend, name, json.loads(body))
            except Exception as exc:
                response = {"error": str(exc)}
            payload = json.dumps(response).encode("utf-8")
            self.send_response(200)
            self.send_header("Content-Type", "application/json")
            self.send_header("Content-Length", str(len(payload)))
            self.end_headers()
            self.wfile.write(payload)

        def log_message(self, *args):
            pass

    HTTPServer(("127.0.0.1", port), Handler).serve_forever()


def main(argv=None):
    parser = argparse.ArgumentParser(description="deterministic mock encoder server")
    parser.add_argument("--dim", type=int, default=256)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--name", default=None, help="encoder id reported by the handshake")
    parser.add_argument("--http-port", type=int, default=None, help="serve HTTP instead of stdio")
    args = parser.parse_args(argv)
    backend = MockBackend(dim=args.dim, seed=args.seed)
    name = args.name or f"mock-d{args.dim}-s{args.seed}"
    if args.http_port is not None:
        serve_http(backend, name, args.http_port)
    else:
        serve_stdio(backend, name)


if __name__ == "__main__":
    main()
