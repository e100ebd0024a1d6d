"""Wire-level integration with the TypeScript adapter package.

Skipped unless adapters/dist/cli.js exists (run `npm run build` in
adapters/).  Uses the locally trainable doc2vec family so no model
downloads are involved.
"""

import json
import os
import shutil
import subprocess

import numpy as np
import pytest

from semprobe.errors import BackendUnavailable
from semprobe.gateway import BackendSpec, Gateway

ADAPTER_CLI = os.path.join(os.path.dirname(__file__), "..", "adapters", "dist", "cli.js")

pytestmark = pytest.mark.skipif(
    not (os.path.exists(ADAPTER_CLI) and shutil.which("node")),
    reason="adapters package not built (cd adapters && npm run build)",
)

CORPUS_LINES = [
    "the young dog ran across the green park",
    "a small dog ran through the quiet park",
    "markets rallied as traders bought shares",
    "investors sold shares when the market fell",
    "rain fell softly over the sleeping village",
    "the storm flooded the river near the village",
]


@pytest.fixture(scope="module")
def doc2vec_spec(tmp_path_factory):
    corpus = tmp_path_factory.mktemp("d2v") / "corpus.txt"
    corpus.write_text("\n".join(CORPUS_LINES) + "\n")
    command = f"node {ADAPTER_CLI} --model doc2vec_local --corpus {corpus} --epochs 5 --seed 3"
    return BackendSpec("subprocess", command, "doc2vec_local", batch_size=8)


def test_handshake_reports_dim_100(doc2vec_spec):
    with Gateway(doc2vec_spec) as gw:
        info = gw.handshake()
    assert info == {"name": "doc2vec_local", "dim": 100}


def test_encode_round_trip_and_determinism(doc2vec_spec):
    with Gateway(doc2vec_spec) as gw:
        first = gw.encode_batch(["dogs ran in the park", "markets fell sharply"])
    with Gateway(doc2vec_spec) as gw:
        second = gw.encode_batch(["dogs ran in the park", "markets fell sharply"])
    assert [v.dim for v in first] == [100, 100]
    for a, b in zip(first, second):
        assert np.max(np.abs(a.values - b.values)) <= 1e-6


def test_pretrained_family_errors_cleanly_offline(tmp_path):
    # sbert weights are not downloadable here: encode must surface a backend
    # error while the handshake still reports the registry dim.
    command = f"node {ADAPTER_CLI} --model sbert_paraphrase_minilm"
    spec = BackendSpec("subprocess", command, "sbert_paraphrase_minilm", batch_size=4)
    env_cache = os.environ.get("SEMPROBE_MODEL_CACHE")
    if env_cache and os.path.isdir(env_cache):
        pytest.skip("model cache present; offline error path not applicable")
    with Gateway(spec) as gw:
        assert gw.handshake() == {"name": "sbert_paraphrase_minilm", "dim": 384}
        with pytest.raises(BackendUnavailable):
            gw.encode_batch(["hello world"])


def test_adapter_survives_malformed_line(doc2vec_spec, tmp_path):
    corpus = tmp_path / "c.txt"
    corpus.write_text("\n".join(CORPUS_LINES) + "\n")
    proc = subprocess.Popen(
        ["node", ADAPTER_CLI, "--model", "doc2vec_local", "--corpus", str(corpus), "--epochs", "2"],
        stdin=subprocess.PIPE,
        stdout=subprocess.PIPE,
        text=True,
        bufsize=1,
    )
    try:
        proc.stdin.write("not json\n")
        proc.stdin.flush()
        error_line = json.loads(proc.stdout.readline())
        assert "error" in error_line
        proc.stdin.write(json.dumps({"op": "info"}) + "\n")
        proc.stdin.flush()
        info = json.loads(proc.stdout.readline())
        assert info == {"name": "doc2vec_local", "dim": 100}
    finally:
        proc.stdin.close()
        proc.wait(timeout=10)
