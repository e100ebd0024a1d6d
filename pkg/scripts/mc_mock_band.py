#!/usr/bin/env python3
"""Monte-Carlo check of the mock encoder's token-disjoint similarity band.

Estimates P(|cosine| < 0.1) over encoder seeds for two token-disjoint
sentences at dim 4096, and the dispersion of negative-pair means, before
those bands are frozen into the test suite.

Run from the repo root:  python scripts/mc_mock_band.py
"""

import os
import sys

import numpy as np

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from semprobe.gateway import cosine  # noqa: E402
from semprobe.mock_backend import mock_encoder  # noqa: E402

S1 = "the quick brown fox jumped over a lazy dog yesterday"
S2 = "purple clouds gather silently above nine cold mountains tonight"

SEEDS = 1000
DIM = 4096


def main():
    sims = []
    for seed in range(SEEDS):
        v1, v2 = mock_encoder([S1, S2], DIM, seed)
        sims.append(cosine(v1, v2))
    sims = np.array(sims)
    inside = float(np.mean(np.abs(sims) < 0.1))
    print(f"seeds={SEEDS} dim={DIM}")
    print(f"P(|cos| < 0.1)  = {inside:.4f}")
    print(f"max |cos|       = {np.abs(sims).max():.4f}")
    print(f"mean, sd        = {sims.mean():+.5f}, {sims.std():.5f}")


if __name__ == "__main__":
    main()
