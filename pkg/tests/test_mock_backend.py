import io
import json

import numpy as np

from semprobe.gateway import cosine
from semprobe.mock_backend import MockBackend, mock_encoder, serve_stdio
from semprobe.perturb import jumble


def test_identical_token_multisets_give_identical_vectors():
    v = mock_encoder(["the cat sat on the mat", "mat the on sat cat the"], 64, 1)
    assert np.array_equal(v[0].values, v[1].values)
    assert cosine(v[0], v[1]) == 1.0


def test_token_disjoint_band_at_dim_4096():
    # Band pre-verified by Monte-Carlo over 1000 seeds (scripts/mc_mock_band.py):
    # P(|cos| < 0.1) = 1.000, max |cos| = 0.056.  A 200-seed spot check keeps
    # the suite fast while asserting the >= 0.99 rate.
    s1 = "the quick brown fox jumped over a lazy dog yesterday"
    s2 = "purple clouds gather silently above nine cold mountains tonight"
    hits = 0
    for seed in range(200):
        v1, v2 = mock_encoder([s1, s2], 4096, seed)
        if abs(cosine(v1, v2)) < 0.1:
            hits += 1
    assert hits / 200 >= 0.99


def test_jumbled_sentence_has_cosine_exactly_one(corpus_sentences):
    for sentence in corpus_sentences[:50]:
        record = jumble(sentence, 2, 99)
        v = mock_encoder([sentence.text, record.perturbed.text], 256, 7)
        assert cosine(v[0], v[1]) == 1.0


def test_unit_norm_and_determinism():
    a = mock_encoder(["some words here"], 128, 5)[0]
    b = mock_encoder(["some words here"], 128, 5)[0]
    assert np.array_equal(a.values, b.values)
    assert abs(np.linalg.norm(a.values) - 1.0) < 1e-12


def test_empty_text_is_stable_basis_ray():
    a = mock_encoder([""], 32, 0)[0]
    assert a.values[0] == 1.0
    assert np.count_nonzero(a.values) == 1


def test_seed_changes_vectors():
    a = mock_encoder(["hello there"], 64, 1)[0]
    b = mock_encoder(["hello there"], 64, 2)[0]
    assert not np.array_equal(a.values, b.values)


def test_stdio_server_protocol():
    backend = MockBackend(dim=16, seed=0)
    requests = "\n".join(
        [
            json.dumps({"op": "info"}),
            "not json at all",
            json.dumps({"id": "r1", "op": "encode", "texts": ["a b", "c"]}),
            json.dumps({"id": "r2", "op": "bogus"}),
        ]
    )
    out = io.StringIO()
    serve_stdio(backend, "mockname", stdin=io.StringIO(requests), stdout=out)
    lines = [json.loads(line) for line in out.getvalue().splitlines()]
    assert lines[0] == {"name": "mockname", "dim": 16}
    assert "error" in lines[1]  # malformed request answered, server alive
    assert lines[2]["id"] == "r1" and len(lines[2]["vectors"]) == 2
    assert all(len(v) == 16 for v in lines[2]["vectors"])
    assert "error" in lines[3]
