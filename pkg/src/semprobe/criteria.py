"""Criteria evaluation: paraphrase separation, synonym similarity, and
paraphrase-vs-perturbation margin histograms, with advisory verdicts.

Aggregation iterates pairs in id order so floating-point sums are
reproducible regardless of how the per-pair work was scheduled.
"""

import random
from dataclasses import dataclass, field

from . import kernels, perturb
from ._util import exact_mean
from .errors import AllSkipped, EmptyClass, InsufficientCorpora
from .gateway import BackendSpec, Gateway, cosine_pairs
from .perturb import Sentence

__all__ = [
    "PARAPHRASE",
    "NON_PARAPHRASE",
    "SentencePair",
    "MarginHistogram",
    "CriterionReport",
    "VerdictConfig",
    "default_epsilon_grid",
    "aggregate_c1",
    "eval_c1",
    "make_cross_topic_negatives",
    "eval_c2",
    "eval_margin",
    "verdict",
]

PARAPHRASE = "paraphrase"
NON_PARAPHRASE = "non_paraphrase"


@dataclass(frozen=True)
class SentencePair:
    id: str
    s1: Sentence
    s2: Sentence
    label: str

    def __post_init__(self):
        if self.label not in (PARAPHRASE, NON_PARAPHRASE):
            raise ValueError(f"bad label {self.label!r}")
        if self.s1.id == self.s2.id:
            raise ValueError(f"pair {self.id}: s1 and s2 share id {self.s1.id}")

    def to_json(self) -> dict:
        return {"id": self.id, "s1": self.s1.to_json(), "s2": self.s2.to_json(), "label": self.label}

    @classmethod
    def from_json(cls, obj) -> "SentencePair":
        return cls(str(obj["id"]), Sentence.from_json(obj["s1"]), Sentence.from_json(obj["s2"]), obj["label"])


def default_epsilon_grid() -> list:
    """-0.30 to +0.30 in 0.05 steps."""
    return [(-30 + 5 * i) / 100 for i in range(13)]


@dataclass(frozen=True)
class MarginHistogram:
    epsilon_grid: tuple
    cumulative_counts: tuple
    total: int

    def __post_init__(self):
        grid = list(self.epsilon_grid)
        if grid != sorted(grid) or len(set(grid)) != len(grid):
            raise ValueError("epsilon grid must be strictly ascending")
        counts = list(self.cumulative_counts)
        if len(counts) != len(grid):
            raise ValueError("counts and grid lengths differ")
        if any(c < 0 or c > self.total for c in counts):
            raise ValueError("counts must lie in [0, total]")
        if any(counts[i] < counts[i + 1] for i in range(len(counts) - 1)):
            raise ValueError("cumulative counts must be non-increasing")

    @classmethod
    def from_margins(cls, margins, epsilon_grid) -> "MarginHistogram":
        margins = list(margins)
        counts = kernels.count_exceeding(margins, list(epsilon_grid))
        return cls(tuple(epsilon_grid), tuple(int(c) for c in counts), len(margins))

    def fraction_at(self, epsilon: float) -> float:
        for g, c in zip(self.epsilon_grid, self.cumulative_counts):
            if abs(g - epsilon) <= 1e-12:
                return c / self.total
        raise ValueError(f"epsilon {epsilon} not on the histogram grid")

    def to_json(self) -> dict:
        return {
            "epsilon_grid": list(self.epsilon_grid),
            "cumulative_counts": list(self.cumulative_counts),
            "cumulative_fractions": [c / self.total if self.total else 0.0 for c in self.cumulative_counts],
            "total": self.total,
        }


@dataclass(frozen=True)
class VerdictConfig:
    c1_min_diff: float = 0.10
    c2_min_mean_at_n1: float = 0.85
    margin_epsilon: float = 0.10
    margin_min_pass_fraction: float = 0.50

    def to_json(self) -> dict:
        return {
            "c1_min_diff": self.c1_min_diff,
            "c2_min_mean_at_n1": self.c2_min_mean_at_n1,
            "margin_epsilon": self.margin_epsilon,
            "margin_min_pass_fraction": self.margin_min_pass_fraction,
        }


@dataclass
class CriterionReport:
    criterion: str  # c1 | c1_alt | c2 | c3 | c4
    encoder_id: str
    dataset_id: str = ""
    n: int | None = None
    pos_mean: float | None = None
    neg_mean: float | None = None
    diff: float | None = None
    per_n_means: dict | None = None
    histogram: MarginHistogram | None = None
    skipped: object = 0  # int, or {n: count} for c2
    verdict: str = "advisory_only"
    thresholds: VerdictConfig = field(default_factory=VerdictConfig)
    config_hash: str = ""
    stopword_hash: str = ""
    seed: int = 0

    def pass_fraction_at(self, epsilon: float) -> float:
        if self.histogram is None:
            raise ValueError("report has no histogram")
        return self.histogram.fraction_at(epsilon)

    def to_json(self) -> dict:
        out = {
            "criterion": self.criterion,
            "encoder_id": self.encoder_id,
            "dataset_id": self.dataset_id,
            "n": self.n,
            "pos_mean": self.pos_mean,
            "neg_mean": self.neg_mean,
            "diff": self.diff,
            "per_n_means": self.per_n_means,
            "histogram": self.histogram.to_json() if self.histogram else None,
            "skipped": self.skipped,
            "verdict": self.verdict,
            "verdict_note": "thresholds are advisory defaults",
            "thresholds": self.thresholds.to_json(),
            "config_hash": self.config_hash,
            "stopword_hash": self.stopword_hash,
            "seed": self.seed,
        }
        return out


def _gateway(spec_or_gateway):
    if isinstance(spec_or_gateway, Gateway):
        return spec_or_gateway, False
    if isinstance(spec_or_gateway, BackendSpec):
        return Gateway(spec_or_gateway), True
    raise TypeError("expected BackendSpec or Gateway")


def _pair_similarities(gw: Gateway, pairs) -> list:
    """Cosine per pair, pairs taken in id order; one encode per unique text."""
    ordered = sorted(pairs, key=lambda p: p.id)
    texts = []
    seen = {}
    for pair in ordered:
        for text in (pair.s1.text, pair.s2.text):
            if text not in seen:
                seen[text] = len(texts)
                texts.append(text)
    vectors = gw.encode_batch(texts)
    a = [vectors[seen[p.s1.text]] for p in ordered]
    b = [vectors[seen[p.s2.text]] for p in ordered]
    sims = cosine_pairs(a, b)
    return list(zip(ordered, sims))


def aggregate_c1(labeled_sims) -> tuple:
    """(pos_mean, neg_mean, diff) from (label, similarity) pairs."""
    pos = [s for label, s in labeled_sims if label == PARAPHRASE]
    neg = [s for label, s in labeled_sims if label == NON_PARAPHRASE]
    if not pos:
        raise EmptyClass(PARAPHRASE)
    if not neg:
        raise EmptyClass(NON_PARAPHRASE)
    pos_mean = exact_mean(pos)
    neg_mean = exact_mean(neg)
    return pos_mean, neg_mean, pos_mean - neg_mean


def eval_c1(pairs, spec, *, criterion="c1", dataset_id="", thresholds=None, **meta) -> CriterionReport:
    """Average similarity of paraphrase vs non-paraphrase pairs and their
    difference."""
    gw, owned = _gateway(spec)
    try:
        sims = _pair_similarities(gw, pairs)
    finally:
        if owned:
            gw.close()
    pos_mean, neg_mean, diff = aggregate_c1([(p.label, s) for p, s in sims])
    thresholds = thresholds or VerdictConfig()
    report = CriterionReport(
        criterion=criterion,
        encoder_id=gw.spec.encoder_id,
        dataset_id=dataset_id,
        pos_mean=float(pos_mean),
        neg_mean=float(neg_mean),
        diff=float(diff),
        thresholds=thresholds,
        **meta,
    )
    report.verdict = verdict(report, thresholds)
    return report


def make_cross_topic_negatives(corpora, k: int, seed: int) -> list:
    """k non-paraphrase pairs: s1 from the first corpus, s2 from another.

    corpora: [(dataset_id, [Sentence, ...]), ...], at least two entries.
    Pairs never repeat; sampling is uniform and seeded.
    """
    if len(corpora) < 2:
        raise InsufficientCorpora(f"need >= 2 corpora, got {len(corpora)}")
    if k < 1:
        raise ValueError("k must be >= 1")
    rng = random.Random(seed)
    first_id, first_sents = corpora[0]
    others = corpora[1:]
    pairs = []
    used = set()
    attempts = 0
    while len(pairs) < k:
        attempts += 1
        if attempts > 100 * k + 1000:
            raise InsufficientCorpora("cannot draw enough distinct cross-topic pairs")
        other_id, other_sents = others[rng.randrange(len(others))]
        s1 = first_sents[rng.randrange(len(first_sents))]
        s2 = other_sents[rng.randrange(len(other_sents))]
        key = (s1.id, s2.id)
        if key in used:
            continue
        used.add(key)
        pairs.append(
            SentencePair(
                id=f"xt-{first_id}-{other_id}-{len(pairs):06d}",
                s1=Sentence(f"{first_id}:{s1.id}", s1.text),
                s2=Sentence(f"{other_id}:{s2.id}", s2.text),
                label=NON_PARAPHRASE,
            )
        )
    return pairs


def eval_c2(sentences, spec, db, stop, n_values=(1, 2, 3), seed=0, *, dataset_id="", thresholds=None, **meta) -> CriterionReport:
    """Mean cosine between each sentence and its n-word synonym-replaced
    form, for each n; unperturbable sentences are excluded and counted."""
    gw, owned = _gateway(spec)
    thresholds = thresholds or VerdictConfig()
    per_n_means = {}
    skipped = {}
    try:
        ordered = sorted(sentences, key=lambda s: s.id)
        for n in n_values:
            pairs = []
            misses = 0
            for sentence in ordered:
                sub = perturb.substream(seed, sentence.id, f"syn{n}")
                try:
                    record = perturb.synonym_replace(sentence, n, db, stop, sub)
                except perturb.InsufficientCandidates:
                    misses += 1
                    continue
                pairs.append((sentence.text, record.perturbed.text))
            skipped[str(n)] = misses
            if not pairs:
                per_n_means[str(n)] = None
                continue
            texts = []
            seen = {}
            for a, b in pairs:
                for text in (a, b):
                    if text not in seen:
                        seen[text] = len(texts)
                        texts.append(text)
            vectors = gw.encode_batch(texts)
            sims = cosine_pairs([vectors[seen[a]] for a, _ in pairs], [vectors[seen[b]] for _, b in pairs])
            per_n_means[str(n)] = float(exact_mean(sims))
    finally:
        if owned:
            gw.close()
    report = CriterionReport(
        criterion="c2",
        encoder_id=gw.spec.encoder_id,
        dataset_id=dataset_id,
        per_n_means=per_n_means,
        skipped=skipped,
        thresholds=thresholds,
        seed=seed,
        **meta,
    )
    report.verdict = verdict(report, thresholds)
    return report


def eval_margin(pairs_pos, spec, perturb_kind, db, stop, seed=0, epsilon_grid=None, n=3, *, dataset_id="", thresholds=None, **meta) -> CriterionReport:
    """Margin histogram: cosine(S, paraphrase) - cosine(S, perturbed S).

    perturb_kind is "antonym" (one-word antonym swap) or "jumble" (n pair
    swaps).  Pairs whose perturbation fails are skipped and counted.
    """
    if perturb_kind not in ("antonym", "jumble"):
        raise ValueError(f"bad perturb_kind {perturb_kind!r}")
    for pair in pairs_pos:
        if pair.label != PARAPHRASE:
            raise ValueError(f"pair {pair.id} is not a paraphrase pair")
    grid = list(epsilon_grid) if epsilon_grid is not None else default_epsilon_grid()
    thresholds = thresholds or VerdictConfig()
    gw, owned = _gateway(spec)
    try:
        ordered = sorted(pairs_pos, key=lambda p: p.id)
        rows = []
        misses = 0
        for pair in ordered:
            s = pair.s1
            if perturb_kind == "antonym":
                sub = perturb.substream(seed, s.id, "ant")
                try:
                    record = perturb.antonym_replace(s, db, stop, sub)
                except perturb.NoAntonymCandidate:
                    misses += 1
                    continue
            else:
                sub = perturb.substream(seed, s.id, f"jum{n}")
                try:
                    record = perturb.jumble(s, n, sub)
                except perturb.UnjumblableSentence:
                    misses += 1
                    continue
            rows.append((s.text, pair.s2.text, record.perturbed.text))
        if not rows:
            raise AllSkipped(f"no pair was perturbable for {perturb_kind}")
        texts = []
        seen = {}
        for row in rows:
            for text in row:
                if text not in seen:
                    seen[text] = len(texts)
                    texts.append(text)
        vectors = gw.encode_batch(texts)
        sim_para = cosine_pairs([vectors[seen[s]] for s, _, _ in rows], [vectors[seen[p]] for _, p, _ in rows])
        sim_pert = cosine_pairs([vectors[seen[s]] for s, _, _ in rows], [vectors[seen[q]] for _, _, q in rows])
        margins = [float(a - b) for a, b in zip(sim_para, sim_pert)]
    finally:
        if owned:
            gw.close()
    report = CriterionReport(
        criterion="c3" if perturb_kind == "antonym" else "c4",
        encoder_id=gw.spec.encoder_id,
        dataset_id=dataset_id,
        n=None if perturb_kind == "antonym" else n,
        histogram=MarginHistogram.from_margins(margins, grid),
        skipped=misses,
        thresholds=thresholds,
        seed=seed,
        **meta,
    )
    report.verdict = verdict(report, thresholds)
    return report


def verdict(report: CriterionReport, thresholds: VerdictConfig) -> str:
    """Deterministic pass/fail against the configured thresholds.

    The thresholds are this toolkit's defaults, not published reference
    values, so reports flag every verdict as advisory.
    """
    if report.criterion in ("c1", "c1_alt"):
        return "pass" if report.diff >= thresholds.c1_min_diff else "fail"
    if report.criterion == "c2":
        mean_n1 = (report.per_n_means or {}).get("1")
        if mean_n1 is None:
            return "advisory_only"
        return "pass" if mean_n1 >= thresholds.c2_min_mean_at_n1 else "fail"
    if report.criterion in ("c3", "c4"):
        fraction = report.pass_fraction_at(thresholds.margin_epsilon)
        return "pass" if fraction >= thresholds.margin_min_pass_fraction else "fail"
    return "advisory_only"
