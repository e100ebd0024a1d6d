#!/usr/bin/env python3
"""TF-Hub universal sentence encoder (v4) bridge.

Same line protocol as the other bridges; the hub cache honors
SEMPROBE_MODEL_CACHE (mapped to TFHUB_CACHE_DIR).
"""

import json
import os
import sys

USE_V4_URL = "https://tfhub.dev/google/universal-sentence-encoder/4"


def main():
    cache = os.environ.get("SEMPROBE_MODEL_CACHE")
    if cache:
        os.environ.setdefault("TFHUB_CACHE_DIR", cache)
    try:
        import tensorflow_hub as hub

        model = hub.load(os.environ.get("SEMPROBE_USE_URL", USE_V4_URL))
    except Exception as exc:
        print(json.dumps({"op": "load_error", "error": str(exc)}), flush=True)
        return
    print(json.dumps({"op": "ready"}), flush=True)
    for line in sys.stdin:
        if not line.strip():
            continue
        try:
            req = json.loads(line)
            vectors = model(req["texts"]).numpy()
            print(json.dumps({"vectors": [[float(x) for x in v] for v in vectors]}), flush=True)
        except Exception as exc:
            print(json.dumps({"error": str(exc)}), flush=True)


if __name__ == "__main__":
    main()
