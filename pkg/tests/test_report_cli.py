import hashlib
import json
import os
import re

import pytest

from semprobe import cli
from semprobe.config import apply_overrides, parse_config
from semprobe.criteria import CriterionReport, MarginHistogram, default_epsilon_grid
from semprobe.errors import ConfigError, MissingHistogram
from semprobe.perturb import Sentence, jumble, substream
from semprobe.report import render_histogram_svg

from conftest import CORPUS_PATH


def hist_report(counts, total, grid=None, criterion="c3", n=None):
    grid = grid or default_epsilon_grid()[: len(counts)]
    return CriterionReport(
        criterion=criterion,
        encoder_id="enc",
        dataset_id="ds",
        n=n,
        histogram=MarginHistogram(tuple(grid), tuple(counts), total),
    )


# --- SVG ----------------------------------------------------------------------


def test_svg_has_one_rect_per_bin():
    grid = default_epsilon_grid()
    counts = tuple(range(len(grid), 0, -1))
    svg = render_histogram_svg(hist_report(counts, total=len(grid)))
    assert len(re.findall(r"<rect x=", svg)) == 13
    assert svg.startswith("<svg ")


def test_svg_all_zero_counts_valid():
    svg = render_histogram_svg(hist_report((0, 0, 0), total=5, grid=[-0.1, 0.0, 0.1]))
    heights = re.findall(r'height="([0-9.]+)" fill', svg)
    assert heights == ["0.00", "0.00", "0.00"]


def test_svg_bar_heights_hand_computed():
    # plot height 330; counts 3,2,1 with max 3 -> 330.00, 220.00, 110.00
    svg = render_histogram_svg(hist_report((3, 2, 1), total=3, grid=[-0.1, 0.0, 0.1]))
    heights = re.findall(r'height="([0-9.]+)" fill', svg)
    assert heights == ["330.00", "220.00", "110.00"]
    # bar geometry: slot = 540/3 = 180, width = 144, first bar x = 50 + 18
    assert 'x="68.00" y="30.00" width="144.00" height="330.00"' in svg


def test_svg_requires_histogram():
    with pytest.raises(MissingHistogram):
        render_histogram_svg(CriterionReport(criterion="c1", encoder_id="e"))


def test_svg_deterministic():
    report = hist_report((5, 4, 1), total=6, grid=[-0.1, 0.0, 0.1], criterion="c4", n=3)
    assert render_histogram_svg(report) == render_histogram_svg(report)


# --- config -------------------------------------------------------------------


def base_config(tmp_path, pairs_path, criteria=("c1",)):
    return {
        "datasets": [{"id": "fixa", "path": str(pairs_path), "format": "jsonl_pairs"}],
        "encoders": [{"kind": "mock", "encoder_id": "mock-a", "dim": 256, "seed": 5}],
        "criteria": list(criteria),
        "master_seed": 7,
        "output_dir": str(tmp_path / "out"),
        "cache_path": str(tmp_path / "cache.jsonl"),
    }


@pytest.fixture
def pairs_path(tmp_path, corpus_sentences):
    from semprobe.corpus import write_pairs_jsonl
    from semprobe.criteria import NON_PARAPHRASE, PARAPHRASE, SentencePair

    pairs = []
    for i in range(0, 24, 2):
        s = corpus_sentences[i]
        rec = jumble(s, 1, substream(9, s.id, "mkpos"))
        pairs.append(SentencePair(f"p{i:03d}", s, Sentence(s.id + "-p", rec.perturbed.text), PARAPHRASE))
        o = corpus_sentences[i + 1]
        pairs.append(SentencePair(f"n{i:03d}", o, Sentence(o.id + "-n", "zyx wvu tsr qpo nml"), NON_PARAPHRASE))
    path = tmp_path / "pairs.jsonl"
    write_pairs_jsonl(pairs, path)
    return path


def test_config_validation_rejects_empty_criteria(tmp_path, pairs_path):
    raw = base_config(tmp_path, pairs_path, criteria=())
    with pytest.raises(ConfigError):
        parse_config(raw)


def test_config_validation_rejects_unknown_criterion(tmp_path, pairs_path):
    with pytest.raises(ConfigError):
        parse_config(base_config(tmp_path, pairs_path, criteria=("c9",)))


def test_config_c1_alt_needs_two_datasets(tmp_path, pairs_path):
    with pytest.raises(ConfigError):
        parse_config(base_config(tmp_path, pairs_path, criteria=("c1_alt",)))


def test_config_hash_excludes_locations(tmp_path, pairs_path):
    raw1 = base_config(tmp_path, pairs_path)
    raw2 = dict(raw1, output_dir="elsewhere", cache_path="other.jsonl")
    assert parse_config(raw1).config_hash == parse_config(raw2).config_hash
    raw3 = dict(raw1, master_seed=8)
    assert parse_config(raw1).config_hash != parse_config(raw3).config_hash


def test_apply_overrides_dotted_and_json():
    raw = {"master_seed": 1, "thresholds": {"c1_min_diff": 0.1}}
    out = apply_overrides(raw, ["master_seed=9", "thresholds.c1_min_diff=0.2", "note=plain"])
    assert out["master_seed"] == 9
    assert out["thresholds"]["c1_min_diff"] == 0.2
    assert out["note"] == "plain"
    assert raw["master_seed"] == 1  # original untouched


def test_env_cache_override(tmp_path, pairs_path, monkeypatch):
    monkeypatch.setenv("SEMPROBE_CACHE", str(tmp_path / "env-cache.jsonl"))
    cfg = parse_config(base_config(tmp_path, pairs_path))
    assert cfg.cache_path == str(tmp_path / "env-cache.jsonl")


# --- cli run ------------------------------------------------------------------


def tree_digests(root):
    out = {}
    for r, _, files in os.walk(root):
        for f in files:
            p = os.path.join(r, f)
            with open(p, "rb") as fh:
                out[os.path.relpath(p, root)] = hashlib.sha256(fh.read()).hexdigest()
    return out


def run_cli(args):
    return cli.main(args)


def test_run_c1_produces_expected_artifacts(tmp_path, pairs_path):
    raw = base_config(tmp_path, pairs_path)
    cfg_path = tmp_path / "cfg.json"
    cfg_path.write_text(json.dumps(raw))
    assert run_cli(["run", "--config", str(cfg_path)]) == 0
    out = raw["output_dir"]
    files = tree_digests(out)
    assert set(files) == {
        "MANIFEST.json",
        "table_c1.csv",
        os.path.join("reports", "c1_mock-a_fixa.json"),
    }
    table = open(os.path.join(out, "table_c1.csv")).read().splitlines()
    assert table[0] == "dataset,stat,mock-a"
    pos, neg, diff = (float(line.split(",")[2]) for line in table[1:4])
    assert abs(diff - (pos - neg)) < 1e-9 + 0.005  # 2-decimal cells may round


def test_rerun_is_byte_identical(tmp_path, pairs_path):
    raw = base_config(tmp_path, pairs_path, criteria=("c1", "c2", "c3", "c4"))
    raw["n_values"] = [2]
    for out_name in ("out1", "out2"):
        cfg = dict(raw, output_dir=str(tmp_path / out_name))
        cfg_path = tmp_path / f"{out_name}.json"
        cfg_path.write_text(json.dumps(cfg))
        assert run_cli(["run", "--config", str(cfg_path)]) == 0
    assert tree_digests(tmp_path / "out1") == tree_digests(tmp_path / "out2")


def test_run_empty_criteria_fails_before_work(tmp_path, pairs_path):
    raw = base_config(tmp_path, pairs_path)
    raw["criteria"] = []
    cfg_path = tmp_path / "cfg.json"
    cfg_path.write_text(json.dumps(raw))
    assert run_cli(["run", "--config", str(cfg_path)]) == 2
    assert not os.path.exists(raw["output_dir"])


def test_run_missing_dataset_is_data_error(tmp_path, pairs_path):
    raw = base_config(tmp_path, pairs_path)
    raw["datasets"][0]["path"] = str(tmp_path / "missing.jsonl")
    cfg_path = tmp_path / "cfg.json"
    cfg_path.write_text(json.dumps(raw))
    rc = run_cli(["run", "--config", str(cfg_path)])
    assert rc != 0
    assert not os.path.exists(os.path.join(raw["output_dir"], "MANIFEST.json"))


def test_manifest_closure(tmp_path, pairs_path):
    raw = base_config(tmp_path, pairs_path, criteria=("c1", "c3"))
    cfg_path = tmp_path / "cfg.json"
    cfg_path.write_text(json.dumps(raw))
    assert run_cli(["run", "--config", str(cfg_path)]) == 0
    out = raw["output_dir"]
    manifest = json.load(open(os.path.join(out, "MANIFEST.json")))
    for rel in manifest["artifacts"]:
        assert os.path.exists(os.path.join(out, rel)), rel
    on_disk = {rel for rel in tree_digests(out) if rel != "MANIFEST.json"}
    assert set(manifest["artifacts"]) == on_disk
    assert manifest["config_hash"] == parse_config(raw).config_hash


def test_probe_criterion_through_run(tmp_path, pairs_path):
    raw = base_config(tmp_path, pairs_path, criteria=("probe",))
    task_file = tmp_path / "mr.tsv"
    lines = [f"0\tdull slow film {i}" for i in range(12)] + [f"1\tbright fun film {i}" for i in range(12)]
    task_file.write_text("\n".join(lines) + "\n")
    raw["datasets"].append({"id": "mr", "path": str(task_file), "format": "probe"})
    cfg_path = tmp_path / "cfg.json"
    cfg_path.write_text(json.dumps(raw))
    assert run_cli(["run", "--config", str(cfg_path)]) == 0
    out = raw["output_dir"]
    assert os.path.exists(os.path.join(out, "table_probe.csv"))
    payload = json.load(open(os.path.join(out, "reports", "probe_mock-a_mr.json")))
    assert payload["task"] == "MR"
    assert len(payload["fold_accuracies"]) == 10


# --- other subcommands ----------------------------------------------------------


def test_perturb_subcommand(tmp_path):
    out = tmp_path / "records.jsonl"
    rc = run_cli(
        ["perturb", "--kind", "synonym", "--n", "2", "--in", CORPUS_PATH, "--out", str(out), "--seed", "4"]
    )
    assert rc == 0
    lines = [json.loads(line) for line in open(out)]
    assert len(lines) == 1200
    assert all(obj["kind"] == "synonym" and obj["n"] == 2 and len(obj["trace"]) == 2 for obj in lines)


def test_encode_subcommand_and_cache(tmp_path):
    cache = tmp_path / "cache.jsonl"
    sent_file = tmp_path / "s.jsonl"
    sent_file.write_text('{"id": "x", "text": "hello world"}\n{"id": "y", "text": "more text"}\n')
    rc = run_cli(
        ["encode", "--backend", "mock:dim=32,seed=1", "--encoder-id", "m32",
         "--in", str(sent_file), "--cache", str(cache)]
    )
    assert rc == 0
    entries = [json.loads(line) for line in open(cache)]
    assert len(entries) == 2
    assert all(len(e["vector"]) == 32 for e in entries)


def test_probe_subcommand(tmp_path):
    data = tmp_path / "mr.tsv"
    lines = [f"0\talpha beta {i}" for i in range(12)] + [f"1\tgamma delta {i}" for i in range(12)]
    data.write_text("\n".join(lines) + "\n")
    out = tmp_path / "probe.json"
    rc = run_cli(
        ["probe", "--task", "MR", "--data", str(data), "--backend", "mock:dim=64,seed=0",
         "--encoder-id", "m", "--out", str(out)]
    )
    assert rc == 0
    payload = json.loads(out.read_text())
    assert payload["task"] == "MR" and len(payload["fold_accuracies"]) == 10


def test_report_subcommand_rebuilds_tables(tmp_path, pairs_path):
    raw = base_config(tmp_path, pairs_path)
    cfg_path = tmp_path / "cfg.json"
    cfg_path.write_text(json.dumps(raw))
    assert run_cli(["run", "--config", str(cfg_path)]) == 0
    out = raw["output_dir"]
    table = os.path.join(out, "table_c1.csv")
    original = open(table).read()
    os.unlink(table)
    assert run_cli(["report", "--from", out]) == 0
    assert open(table).read() == original


def test_set_override_changes_hash(tmp_path, pairs_path):
    raw = base_config(tmp_path, pairs_path)
    cfg_path = tmp_path / "cfg.json"
    cfg_path.write_text(json.dumps(raw))
    assert run_cli(["run", "--config", str(cfg_path), "--set", "master_seed=99"]) == 0
    manifest = json.load(open(os.path.join(raw["output_dir"], "MANIFEST.json")))
    assert manifest["master_seed"] == 99
