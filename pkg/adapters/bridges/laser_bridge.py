#!/usr/bin/env python3
"""LASER bridge via the laserembeddings package (English, dim 1024)."""

import json
import os
import sys


def main():
    try:
        from laserembeddings import Laser

        kwargs = {}
        cache = os.environ.get("SEMPROBE_MODEL_CACHE")
        if cache and os.path.isdir(cache):
            bpe_codes = os.path.join(cache, "93langs.fcodes")
            bpe_vocab = os.path.join(cache, "93langs.fvocab")
            encoder = os.path.join(cache, "bilstm.93langs.2018-12-26.pt")
            if all(os.path.exists(p) for p in (bpe_codes, bpe_vocab, encoder)):
                kwargs = {"bpe_codes": bpe_codes, "bpe_vocab": bpe_vocab, "encoder": encoder}
        laser = Laser(**kwargs)
    except Exception as exc:
        print(json.dumps({"op": "load_error", "error": str(exc)}), flush=True)
        return
    print(json.dumps({"op": "ready"}), flush=True)
    for line in sys.stdin:
        if not line.strip():
            continue
        try:
            req = json.loads(line)
            vectors = laser.embed_sentences(req["texts"], lang="en")
            print(json.dumps({"vectors": [[float(x) for x in v] for v in vectors]}), flush=True)
        except Exception as exc:
            print(json.dumps({"error": str(exc)}), flush=True)


if __name__ == "__main__":
    main()
