"""Command-line interface and run orchestration.

Subcommands:
    run      execute a configured evaluation grid and render all artifacts
    perturb  apply one perturbation kind to a JSONL sentence file
    encode   fill a vector cache from a backend
    probe    run one probing task against a backend
    report   rebuild tables and figures from existing report JSON files

Exit codes: 0 success, 2 config error, 3 data error, 4 backend error.
"""

import argparse
import json
import os
import re
import sys

import numpy as np

from . import __version__, corpus, criteria, kernels, perturb, probe, report, wordnet
from ._util import atomic_write_text, canonical_json, mix_seed
from .config import load_config
from .errors import (
    AllSkipped,
    BackendUnavailable,
    CacheMiss,
    ConfigError,
    DanglingPointer,
    DimMismatch,
    EmptyClass,
    ExcessiveSkips,
    FormatError,
    InsufficientCorpora,
    InsufficientPairs,
    InsufficientSamples,
    InsufficientSentences,
    MalformedLine,
    ProtocolError,
    SemprobeError,
)
from .gateway import BackendSpec, Gateway
from .stopwords import load_stopwords, stopword_hash

_CONFIG_ERRORS = (ConfigError,)
_DATA_ERRORS = (
    FormatError,
    ExcessiveSkips,
    InsufficientPairs,
    InsufficientSentences,
    InsufficientSamples,
    InsufficientCorpora,
    MalformedLine,
    DanglingPointer,
    EmptyClass,
    AllSkipped,
)
_BACKEND_ERRORS = (BackendUnavailable, ProtocolError, DimMismatch, CacheMiss)


def _exit_code(exc: Exception) -> int:
    if isinstance(exc, _CONFIG_ERRORS):
        return 2
    if isinstance(exc, _DATA_ERRORS):
        return 3
    if isinstance(exc, _BACKEND_ERRORS):
        return 4
    return 1


def _slug(text: str) -> str:
    return re.sub(r"[^A-Za-z0-9._-]+", "-", text)


class _ArtifactWriter:
    """Writes artifacts atomically and can roll back everything it created."""

    def __init__(self, root: str):
        self.root = root
        self.created = []

    def write(self, relpath: str, text: str) -> str:
        path = os.path.join(self.root, relpath)
        atomic_write_text(path, text)
        self.created.append(relpath)
        return path

    def rollback(self):
        for relpath in self.created:
            path = os.path.join(self.root, relpath)
            if os.path.exists(path):
                os.unlink(path)
        for sub in ("reports", "figures"):
            path = os.path.join(self.root, sub)
            if os.path.isdir(path) and not os.listdir(path):
                os.rmdir(path)


def _load_pair_dataset(ds, master_seed):
    pairs = corpus.load_pairs(ds)
    if ds.pairs_per_label is not None:
        pairs = corpus.balanced_sample(pairs, ds.pairs_per_label, mix_seed(master_seed, ds.id, "sample"))
    return pairs


def run(config) -> dict:
    """Execute the configured grid; returns {relpath: report dict} for the
    written report files.  Artifacts created before a failure are removed."""
    writer = _ArtifactWriter(config.output_dir)
    try:
        return _run_inner(config, writer)
    except Exception:
        writer.rollback()
        raise


def _run_inner(config, writer: _ArtifactWriter) -> dict:
    db = None
    if any(c in config.criteria for c in ("c2", "c3", "c4")):
        db = wordnet.load_database(config.wordnet_dir or wordnet.fixture_path())
    stops = load_stopwords(config.stopwords_path)
    stop_hash = stopword_hash(stops)
    config_hash = config.config_hash
    meta = {"config_hash": config_hash, "stopword_hash": stop_hash}

    pair_data = {}
    for ds in config.datasets:
        pair_data[ds.id] = _load_pair_dataset(ds, config.master_seed)

    gateways = {enc.encoder_id: Gateway(enc, cache_path=config.cache_path) for enc in config.encoders}
    encoder_ids = [enc.encoder_id for enc in config.encoders]
    reports = {}
    probe_results = []
    try:
        for criterion in config.criteria:
            if criterion == "probe":
                for ds in config.probe_datasets:
                    task = probe.ProbeTask.from_name(ds.task_name)
                    samples = corpus.load_probe_samples(ds.path, task)
                    for enc_id in encoder_ids:
                        result = probe.cross_validate(task, samples, gateways[enc_id], seed=config.master_seed)
                        probe_results.append(result)
                        rel = f"reports/probe_{_slug(enc_id)}_{_slug(ds.id)}.json"
                        payload = result.to_json()
                        payload.update(meta)
                        writer.write(rel, canonical_json(payload) + "\n")
                        reports[rel] = payload
                continue
            for ds in config.datasets:
                pairs = pair_data[ds.id]
                for enc_id in encoder_ids:
                    gw = gateways[enc_id]
                    produced = _eval_cell(config, criterion, ds, pairs, pair_data, gw, db, stops, meta)
                    for rep in produced:
                        suffix = f"_n{rep.n}" if rep.criterion == "c4" and rep.n is not None else ""
                        rel = f"reports/{rep.criterion}_{_slug(enc_id)}_{_slug(ds.id)}{suffix}.json"
                        writer.write(rel, canonical_json(rep.to_json()) + "\n")
                        reports[rel] = rep.to_json()
                        if rep.histogram is not None:
                            fig = rel.replace("reports/", "figures/hist_").replace(".json", ".svg")
                            writer.write(fig, report.render_histogram_svg(rep))
        _render_tables(config, writer, reports, probe_results, encoder_ids)
        manifest = {
            "config_hash": config_hash,
            "master_seed": config.master_seed,
            "package_version": __version__,
            "numpy_version": np.__version__,
            "kernel_lane": kernels.LANE,
            "stopword_hash": stop_hash,
            "artifacts": sorted(writer.created),
        }
        writer.write("MANIFEST.json", canonical_json(manifest) + "\n")
    finally:
        for gw in gateways.values():
            gw.close()
    return reports


def _eval_cell(config, criterion, ds, pairs, pair_data, gw, db, stops, meta):
    seed = config.master_seed
    thresholds = config.thresholds
    if criterion == "c1":
        return [
            criteria.eval_c1(pairs, gw, dataset_id=ds.id, thresholds=thresholds, seed=seed, **meta)
        ]
    if criterion == "c1_alt":
        positives = [p for p in pairs if p.label == criteria.PARAPHRASE]
        corpora = [(ds.id, [p.s1 for p in pair_data[ds.id]])]
        for other in config.datasets:
            if other.id != ds.id:
                corpora.append((other.id, [p.s1 for p in pair_data[other.id]]))
        negatives = criteria.make_cross_topic_negatives(
            corpora, k=len(positives), seed=mix_seed(seed, "c1_alt", ds.id)
        )
        return [
            criteria.eval_c1(
                positives + negatives, gw, criterion="c1_alt", dataset_id=ds.id,
                thresholds=thresholds, seed=seed, **meta,
            )
        ]
    if criterion == "c2":
        singles_spec = ds.singles
        singles = corpus.sample_singles(pairs, singles_spec, mix_seed(seed, ds.id, "singles")) \
            if singles_spec is not None else [p.s1 for p in pairs]
        return [
            criteria.eval_c2(
                singles, gw, db, stops, n_values=config.n_values, seed=seed,
                dataset_id=ds.id, thresholds=thresholds, **meta,
            )
        ]
    if criterion == "c3":
        positives = [p for p in pairs if p.label == criteria.PARAPHRASE]
        return [
            criteria.eval_margin(
                positives, gw, "antonym", db, stops, seed=seed,
                epsilon_grid=config.epsilon_grid, dataset_id=ds.id, thresholds=thresholds, **meta,
            )
        ]
    if criterion == "c4":
        positives = [p for p in pairs if p.label == criteria.PARAPHRASE]
        out = []
        for n in config.n_values:
            out.append(
                criteria.eval_margin(
                    positives, gw, "jumble", db, stops, seed=seed, n=n,
                    epsilon_grid=config.epsilon_grid, dataset_id=ds.id, thresholds=thresholds, **meta,
                )
            )
        return out
    raise ConfigError(f"unknown criterion {criterion!r}")


def _render_tables(config, writer, reports, probe_results, encoder_ids):
    def pick(criterion):
        rows = []
        for payload in reports.values():
            if payload.get("criterion") == criterion:
                rows.append(_ReportView(payload))
        return rows

    c1 = pick("c1")
    if c1:
        writer.write("table_c1.csv", report.render_c1_table(c1, encoder_ids))
    c1_alt = pick("c1_alt")
    if c1_alt:
        writer.write("table_c1_alt.csv", report.render_c1_table(c1_alt, encoder_ids))
    c2 = pick("c2")
    if c2:
        writer.write("table_c2.csv", report.render_c2_table(c2, encoder_ids))
    if probe_results:
        tasks = sorted({r.task.name for r in probe_results})
        writer.write("table_probe.csv", report.render_probe_table(probe_results, encoder_ids, tasks))


class _ReportView:
    """Attribute view over a report payload for the table renderers."""

    def __init__(self, payload: dict):
        self.__dict__.update(payload)


# --- subcommand implementations --------------------------------------------


def _cmd_run(args) -> int:
    config = load_config(args.config, args.set or ())
    if args.output_dir:
        config.output_dir = args.output_dir
    reports = run(config)
    print(f"wrote {len(reports)} report(s) under {config.output_dir}")
    return 0


def _cmd_perturb(args) -> int:
    sentences = corpus.load_sentences_jsonl(getattr(args, "in"))
    db = wordnet.load_database(args.wordnet or wordnet.fixture_path())
    stops = load_stopwords(args.stopwords)
    written = 0
    skipped = 0
    lines = []
    op_tag = {"synonym": f"syn{args.n}", "antonym": "ant", "jumble": f"jum{args.n}"}[args.kind]
    for sentence in sentences:
        sub = perturb.substream(args.seed, sentence.id, op_tag)
        try:
            if args.kind == "synonym":
                record = perturb.synonym_replace(sentence, args.n, db, stops, sub)
            elif args.kind == "antonym":
                record = perturb.antonym_replace(sentence, db, stops, sub)
            else:
                record = perturb.jumble(sentence, args.n, sub)
        except SemprobeError:
            skipped += 1
            continue
        lines.append(json.dumps(record.to_json(), ensure_ascii=False))
        written += 1
    atomic_write_text(args.out, "".join(line + "\n" for line in lines))
    print(f"perturbed {written} sentence(s), skipped {skipped}", file=sys.stderr)
    return 0


def _cmd_encode(args) -> int:
    sentences = corpus.load_sentences_jsonl(getattr(args, "in"))
    spec = BackendSpec.parse(args.backend, args.encoder_id, args.batch_size)
    cache_path = os.environ.get("SEMPROBE_CACHE") or args.cache
    with Gateway(spec, cache_path=cache_path) as gw:
        vectors = gw.encode_batch([s.text for s in sentences])
    print(f"encoded {len(vectors)} text(s) (dim {vectors[0].dim}) into {cache_path}", file=sys.stderr)
    return 0


def _cmd_probe(args) -> int:
    task = probe.ProbeTask.from_name(args.task)
    samples = corpus.load_probe_samples(args.data, task)
    spec = BackendSpec.parse(args.backend, args.encoder_id, args.batch_size)
    cache_path = os.environ.get("SEMPROBE_CACHE") or args.cache
    with Gateway(spec, cache_path=cache_path) as gw:
        result = probe.cross_validate(task, samples, gw, seed=args.seed)
    payload = canonical_json(result.to_json()) + "\n"
    if args.out:
        atomic_write_text(args.out, payload)
    else:
        sys.stdout.write(payload)
    return 0


def _cmd_report(args) -> int:
    src = os.path.join(args.from_dir, "reports")
    if not os.path.isdir(src):
        raise FormatError(f"no reports directory under {args.from_dir}")
    writer = _ArtifactWriter(args.from_dir)
    reports = {}
    encoder_ids = []
    for name in sorted(os.listdir(src)):
        if not name.endswith(".json"):
            continue
        with open(os.path.join(src, name), encoding="utf-8") as fh:
            payload = json.load(fh)
        reports[f"reports/{name}"] = payload
        enc = payload.get("encoder_id")
        if enc and enc not in encoder_ids:
            encoder_ids.append(enc)
    _render_tables_from_payloads(writer, reports, encoder_ids)
    print(f"rebuilt tables from {len(reports)} report(s)")
    return 0


def _render_tables_from_payloads(writer, reports, encoder_ids):
    views = {"c1": [], "c1_alt": [], "c2": []}
    for payload in reports.values():
        criterion = payload.get("criterion")
        if criterion in views:
            views[criterion].append(_ReportView(payload))
    if views["c1"]:
        writer.write("table_c1.csv", report.render_c1_table(views["c1"], encoder_ids))
    if views["c1_alt"]:
        writer.write("table_c1_alt.csv", report.render_c1_table(views["c1_alt"], encoder_ids))
    if views["c2"]:
        writer.write("table_c2.csv", report.render_c2_table(views["c2"], encoder_ids))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="semprobe", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"semprobe {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run a configured evaluation grid")
    p_run.add_argument("--config", required=True)
    p_run.add_argument("--set", action="append", metavar="KEY=VALUE", help="override a config key")
    p_run.add_argument("--output-dir", help="override the config output_dir")
    p_run.set_defaults(func=_cmd_run)

    p_pert = sub.add_parser("perturb", help="perturb a JSONL sentence file")
    p_pert.add_argument("--kind", required=True, choices=("synonym", "antonym", "jumble"))
    p_pert.add_argument("--n", type=int, default=1)
    p_pert.add_argument("--in", required=True, help="input sentences (JSONL: {id, text})")
    p_pert.add_argument("--out", required=True, help="output perturbation records (JSONL)")
    p_pert.add_argument("--seed", type=int, default=0)
    p_pert.add_argument("--wordnet", help="WordNet database directory (default: bundled fixture)")
    p_pert.add_argument("--stopwords", help="stop-word list path (default: bundled)")
    p_pert.set_defaults(func=_cmd_perturb)

    p_enc = sub.add_parser("encode", help="fill a vector cache from a backend")
    p_enc.add_argument("--backend", required=True, help='e.g. "subprocess:CMD", "http:URL", "mock:dim=64,seed=1"')
    p_enc.add_argument("--encoder-id", required=True)
    p_enc.add_argument("--in", required=True, help="input sentences (JSONL: {id, text})")
    p_enc.add_argument("--cache", required=True, help="cache file path (SEMPROBE_CACHE overrides)")
    p_enc.add_argument("--batch-size", type=int, default=32)
    p_enc.set_defaults(func=_cmd_encode)

    p_probe = sub.add_parser("probe", help="run one probing task")
    p_probe.add_argument("--task", required=True)
    p_probe.add_argument("--data", required=True, help="task data file (label<TAB>sentence)")
    p_probe.add_argument("--backend", required=True)
    p_probe.add_argument("--encoder-id", required=True)
    p_probe.add_argument("--cache", default=None)
    p_probe.add_argument("--batch-size", type=int, default=32)
    p_probe.add_argument("--seed", type=int, default=0)
    p_probe.add_argument("--out", default=None)
    p_probe.set_defaults(func=_cmd_probe)

    p_rep = sub.add_parser("report", help="rebuild tables from report JSON files")
    p_rep.add_argument("--from", dest="from_dir", required=True)
    p_rep.set_defaults(func=_cmd_report)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SemprobeError as exc:
        code = _exit_code(exc)
        print(f"error: {exc}", file=sys.stderr)
        return code


if __name__ == "__main__":
    sys.exit(main())
