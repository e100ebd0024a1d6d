"""Run configuration: a single JSON document describing datasets, encoder
backends, criteria, seeds, and output locations.

The config hash covers everything that affects results (locations like
output_dir and cache_path are excluded), so identical hashes plus a warm
cache imply byte-identical artifacts.
"""

import copy
import json
import os
from dataclasses import dataclass, field

from ._util import canonical_json, sha256_hex
from .corpus import DatasetSpec
from .criteria import VerdictConfig, default_epsilon_grid
from .errors import ConfigError
from .gateway import BackendSpec

__all__ = ["RunConfig", "load_config", "apply_overrides", "PROBE_TASK_IDS"]

CRITERIA = ("c1", "c1_alt", "c2", "c3", "c4", "probe")

# Dataset ids that map onto probing tasks when format == "probe".
PROBE_TASK_IDS = {
    "mr": "MR",
    "cr": "CR",
    "subj": "SUBJ",
    "mpqa": "MPQA",
    "sstb": "SSTb",
    "trec": "TREC",
    "mrpc": "MRPC",
}

PAIR_FORMATS = ("qqp", "paws", "mrpc", "jsonl_pairs")


@dataclass(frozen=True)
class ProbeDataset:
    id: str
    path: str
    task_name: str


@dataclass
class RunConfig:
    datasets: list
    encoders: list
    criteria: list
    probe_datasets: list = field(default_factory=list)
    n_values: list = field(default_factory=lambda: [1, 2, 3])
    epsilon_grid: list = field(default_factory=default_epsilon_grid)
    thresholds: VerdictConfig = field(default_factory=VerdictConfig)
    master_seed: int = 0
    output_dir: str = "out"
    cache_path: str | None = None
    wordnet_dir: str | None = None
    stopwords_path: str | None = None
    raw: dict = field(default_factory=dict)

    @property
    def config_hash(self) -> str:
        hashable = copy.deepcopy(self.raw)
        hashable.pop("output_dir", None)
        hashable.pop("cache_path", None)
        return sha256_hex(canonical_json(hashable).encode("utf-8"))


def _require(obj, key, kind, where):
    if key not in obj:
        raise ConfigError(f"{where}: missing {key!r}")
    value = obj[key]
    if not isinstance(value, kind):
        raise ConfigError(f"{where}: {key!r} must be {kind.__name__}")
    return value


def _parse_dataset(obj, where) -> DatasetSpec | ProbeDataset:
    ds_id = _require(obj, "id", str, where)
    path = _require(obj, "path", str, where)
    fmt = _require(obj, "format", str, where)
    if fmt == "probe":
        task = PROBE_TASK_IDS.get(ds_id.lower())
        if task is None:
            raise ConfigError(f"{where}: probe dataset id {ds_id!r} is not a known task")
        return ProbeDataset(ds_id, path, task)
    if fmt not in PAIR_FORMATS:
        raise ConfigError(f"{where}: unknown format {fmt!r}")
    sample = obj.get("sample", {})
    return DatasetSpec(
        id=ds_id,
        path=path,
        format=fmt,
        pairs_per_label=sample.get("pairs_per_label"),
        singles=sample.get("singles"),
        seed=int(obj.get("seed", 0)),
    )


def _parse_encoder(obj, where) -> BackendSpec:
    kind = _require(obj, "kind", str, where)
    encoder_id = _require(obj, "encoder_id", str, where)
    batch_size = int(obj.get("batch_size", 32))
    if kind == "mock":
        options = tuple(sorted({"dim": int(obj.get("dim", 256)), "seed": int(obj.get("seed", 0))}.items()))
        return BackendSpec("mock", "", encoder_id, batch_size, options)
    target_key = {"subprocess": "command", "http": "url", "cache_file": "path"}.get(kind)
    if target_key is None:
        raise ConfigError(f"{where}: unknown encoder kind {kind!r}")
    target = _require(obj, target_key, str, where)
    return BackendSpec(kind, target, encoder_id, batch_size)


def parse_config(raw: dict) -> RunConfig:
    if not isinstance(raw, dict):
        raise ConfigError("config root must be a JSON object")
    criteria = _require(raw, "criteria", list, "config")
    if not criteria:
        raise ConfigError("config: criteria must be non-empty")
    for criterion in criteria:
        if criterion not in CRITERIA:
            raise ConfigError(f"config: unknown criterion {criterion!r}")
    encoders_raw = _require(raw, "encoders", list, "config")
    if not encoders_raw:
        raise ConfigError("config: encoders must be non-empty")
    encoders = [_parse_encoder(e, f"encoders[{i}]") for i, e in enumerate(encoders_raw)]
    if len({e.encoder_id for e in encoders}) != len(encoders):
        raise ConfigError("config: encoder_id values must be unique")
    datasets_raw = _require(raw, "datasets", list, "config")
    parsed = [_parse_dataset(d, f"datasets[{i}]") for i, d in enumerate(datasets_raw)]
    pair_datasets = [d for d in parsed if isinstance(d, DatasetSpec)]
    probe_datasets = [d for d in parsed if isinstance(d, ProbeDataset)]
    if len({d.id for d in parsed}) != len(parsed):
        raise ConfigError("config: dataset ids must be unique")
    needs_pairs = [c for c in criteria if c != "probe"]
    if needs_pairs and not pair_datasets:
        raise ConfigError(f"config: criteria {needs_pairs} need at least one pair dataset")
    if "c1_alt" in criteria and len(pair_datasets) < 2:
        raise ConfigError("config: c1_alt needs at least two pair datasets")
    if "probe" in criteria and not probe_datasets:
        raise ConfigError("config: probe criterion needs at least one probe dataset")
    epsilon_grid = raw.get("epsilon_grid", default_epsilon_grid())
    if list(epsilon_grid) != sorted(epsilon_grid) or len(set(epsilon_grid)) != len(epsilon_grid):
        raise ConfigError("config: epsilon_grid must be strictly ascending")
    thresholds = VerdictConfig(**raw.get("thresholds", {}))
    n_values = [int(n) for n in raw.get("n_values", [1, 2, 3])]
    if any(n < 1 or n > 5 for n in n_values):
        raise ConfigError("config: n_values must lie in 1..5")
    return RunConfig(
        datasets=pair_datasets,
        encoders=encoders,
        criteria=list(criteria),
        probe_datasets=probe_datasets,
        n_values=n_values,
        epsilon_grid=list(epsilon_grid),
        thresholds=thresholds,
        master_seed=int(raw.get("master_seed", 0)),
        output_dir=raw.get("output_dir", "out"),
        cache_path=os.environ.get("SEMPROBE_CACHE") or raw.get("cache_path"),
        wordnet_dir=raw.get("wordnet_dir"),
        stopwords_path=raw.get("stopwords_path"),
        raw=raw,
    )


def apply_overrides(raw: dict, overrides) -> dict:
    """Apply --set key=value pairs; dotted keys descend into objects and
    values parse as JSON literals, falling back to strings."""
    out = copy.deepcopy(raw)
    for item in overrides:
        key, sep, value = item.partition("=")
        if not sep:
            raise ConfigError(f"--set needs key=value, got {item!r}")
        try:
            parsed = json.loads(value)
        except json.JSONDecodeError:
            parsed = value
        node = out
        parts = key.split(".")
        for part in parts[:-1]:
            node = node.setdefault(part, {})
            if not isinstance(node, dict):
                raise ConfigError(f"--set {key}: {part!r} is not an object")
        node[parts[-1]] = parsed
    return out


def load_config(path: str, overrides=()) -> RunConfig:
    try:
        with open(path, encoding="utf-8") as fh:
            raw = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config {path} is not valid JSON: {exc}") from exc
    if overrides:
        raw = apply_overrides(raw, overrides)
    return parse_config(raw)
