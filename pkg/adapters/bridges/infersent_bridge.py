#!/usr/bin/env python3
"""InferSent v1 bridge: BiLSTM + max pooling over GloVe vectors (dim 4096).

Expects SEMPROBE_INFERSENT_DIR to contain:
    infersent1.pkl          the published v1 state dict
    glove.840B.300d.txt     word vectors (frequency-ordered)

The 100k most frequent GloVe words are loaded at startup; rarer words are
dropped at encode time, matching the checkpoint's published usage.
"""

import io
import json
import os
import sys

VOCAB_WORDS = 100_000


def build_encoder(state_path, glove_path):
    import numpy as np
    import torch
    import torch.nn as nn

    class BiLstmMaxEncoder(nn.Module):
        """Structure-compatible with the published v1 checkpoint."""

        def __init__(self, word_emb_dim=300, enc_lstm_dim=2048):
            super().__init__()
            self.enc_lstm_dim = enc_lstm_dim
            self.enc_lstm = nn.LSTM(word_emb_dim, enc_lstm_dim, 1, bidirectional=True)
            self.word_vec = {}

        def load_glove_top(self, path, limit):
            with io.open(path, encoding="utf-8") as fh:
                for count, line in enumerate(fh):
                    if count >= limit:
                        break
                    word, vec = line.split(" ", 1)
                    self.word_vec[word] = np.fromstring(vec, sep=" ")

        def encode(self, sentences):
            out = []
            for sent in sentences:
                words = ["<s>"] + sent.split() + ["</s>"]
                vecs = [self.word_vec[w] for w in words if w in self.word_vec]
                if not vecs:
                    out.append(np.zeros(2 * self.enc_lstm_dim))
                    continue
                batch = torch.FloatTensor(np.array(vecs)).unsqueeze(1)
                with torch.no_grad():
                    hidden, _ = self.enc_lstm(batch)
                out.append(torch.max(hidden.squeeze(1), 0)[0].numpy())
            return out

    encoder = BiLstmMaxEncoder()
    state = torch.load(state_path, map_location="cpu")
    encoder.load_state_dict({k: v for k, v in state.items() if k.startswith("enc_lstm")}, strict=False)
    encoder.eval()
    encoder.load_glove_top(glove_path, VOCAB_WORDS)
    return encoder


def main():
    base = os.environ.get("SEMPROBE_INFERSENT_DIR") or os.environ.get("SEMPROBE_MODEL_CACHE", "")
    state_path = os.path.join(base, "infersent1.pkl")
    glove_path = os.path.join(base, "glove.840B.300d.txt")
    try:
        if not (os.path.exists(state_path) and os.path.exists(glove_path)):
            raise FileNotFoundError(f"need {state_path} and {glove_path} (set SEMPROBE_INFERSENT_DIR)")
        encoder = build_encoder(state_path, glove_path)
    except Exception as exc:
        print(json.dumps({"op": "load_error", "error": str(exc)}), flush=True)
        return
    print(json.dumps({"op": "ready"}), flush=True)
    for line in sys.stdin:
        if not line.strip():
            continue
        try:
            req = json.loads(line)
            vectors = encoder.encode(req["texts"])
            print(json.dumps({"vectors": [[float(x) for x in v] for v in vectors]}), flush=True)
        except Exception as exc:
            print(json.dumps({"error": str(exc)}), flush=True)


if __name__ == "__main__":
    main()
