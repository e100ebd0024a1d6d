#!/usr/bin/env python3
"""Sentence-transformers bridge: loads one checkpoint, answers encode lines.

Protocol (one JSON object per line on stdout):
    startup: {"op": "ready"} or {"op": "load_error", "error": "..."}
    per request {"op": "encode", "texts": [...]}: {"vectors": [[...], ...]}
Weights cache honors SEMPROBE_MODEL_CACHE.
"""

import json
import os
import sys


def main():
    checkpoint = sys.argv[1] if len(sys.argv) > 1 else "paraphrase-MiniLM-L6-v2"
    cache = os.environ.get("SEMPROBE_MODEL_CACHE")
    try:
        from sentence_transformers import SentenceTransformer

        model = SentenceTransformer(checkpoint, device="cpu", cache_folder=cache)
    except Exception as exc:
        print(json.dumps({"op": "load_error", "error": f"{checkpoint}: {exc}"}), flush=True)
        return
    print(json.dumps({"op": "ready"}), flush=True)
    for line in sys.stdin:
        if not line.strip():
            continue
        try:
            req = json.loads(line)
            vectors = model.encode(req["texts"], convert_to_numpy=True, show_progress_bar=False)
            print(json.dumps({"vectors": [[float(x) for x in v] for v in vectors]}), flush=True)
        except Exception as exc:
            print(json.dumps({"error": str(exc)}), flush=True)


if __name__ == "__main__":
    main()
