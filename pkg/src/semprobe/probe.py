"""Downstream probing: 10-fold cross-validated softmax regression over
frozen embeddings.

The trainer is deliberately deterministic: zero-initialized weights,
full-batch gradient descent with backtracking line search, and a canonical
row ordering so permuting the input rows cannot change the result.
"""

import hashlib
import random
from dataclasses import dataclass

import numpy as np

from . import kernels
from ._util import exact_mean, mix_seed
from .errors import DimMismatch, InsufficientSamples, NonFiniteLoss
from .gateway import Gateway

__all__ = [
    "ProbeTask",
    "ClassifierResult",
    "featurize",
    "train_logreg",
    "predict",
    "accuracy",
    "stratified_folds",
    "cross_validate",
    "cross_validate_features",
    "DEFAULT_LAMBDAS",
]

DEFAULT_LAMBDAS = (1e-4, 1e-3, 1e-2, 1e-1, 1.0)

_TASKS = {
    "MR": ("single_sentence", 2),
    "CR": ("single_sentence", 2),
    "SUBJ": ("single_sentence", 2),
    "MPQA": ("single_sentence", 2),
    "SSTb": ("single_sentence", 2),
    "TREC": ("single_sentence", 6),
    "MRPC": ("sentence_pair", 2),
}


@dataclass(frozen=True)
class ProbeTask:
    name: str
    arity: str
    num_classes: int

    @classmethod
    def from_name(cls, name: str) -> "ProbeTask":
        if name not in _TASKS:
            raise ValueError(f"unknown task {name!r}; expected one of {sorted(_TASKS)}")
        arity, num_classes = _TASKS[name]
        return cls(name, arity, num_classes)


@dataclass(frozen=True)
class ClassifierResult:
    task: ProbeTask
    encoder_id: str
    fold_accuracies: tuple
    mean_accuracy: float
    lambda_selected: float
    seed: int

    def to_json(self) -> dict:
        return {
            "task": self.task.name,
            "encoder_id": self.encoder_id,
            "fold_accuracies": list(self.fold_accuracies),
            "mean_accuracy": self.mean_accuracy,
            "mean_accuracy_pct": round(100.0 * self.mean_accuracy, 2),
            "lambda_selected": self.lambda_selected,
            "seed": self.seed,
        }


def featurize(task: ProbeTask, u, v=None) -> np.ndarray:
    """Feature vector for one sample: the embedding itself, or for sentence
    pairs concat(u, v, |u-v|, u*v)."""
    uv = np.asarray(u.values if hasattr(u, "values") else u, dtype=np.float64)
    if task.arity == "single_sentence":
        if v is not None:
            raise ValueError(f"task {task.name} takes a single sentence")
        return uv
    if v is None:
        raise ValueError(f"task {task.name} needs a sentence pair")
    vv = np.asarray(v.values if hasattr(v, "values") else v, dtype=np.float64)
    if uv.shape != vv.shape:
        raise DimMismatch(uv.shape[0], vv.shape[0])
    return np.concatenate([uv, vv, np.abs(uv - vv), uv * vv])


def _canonical_order(X: np.ndarray, y: np.ndarray) -> np.ndarray:
    # Sort rows by (label, content digest): the gradient is a sum over rows,
    # so a canonical order makes training invariant to input permutation.
    keys = [(int(y[i]), hashlib.sha256(X[i].tobytes()).digest()) for i in range(X.shape[0])]
    return np.array(sorted(range(X.shape[0]), key=keys.__getitem__), dtype=np.intp)


def _penalized_loss(X, y, W, b, lam: float) -> float:
    ce, _ = kernels.softmax_xent(X @ W + b, y, want_grad=False)
    return ce + 0.5 * lam * float(np.sum(W * W))


def train_logreg(X, y, num_classes: int, lam: float, seed: int = 0, max_iter: int = 2000, tol: float = 1e-7):
    """Minimize mean cross-entropy of softmax(W.x + b) + (lam/2)||W||^2.

    Full-batch gradient descent with backtracking line search from zero
    weights; the seed parameter is accepted for interface uniformity but the
    optimizer is deterministic.  Returns (W, b).
    """
    X = np.ascontiguousarray(X, dtype=np.float64)
    y = np.ascontiguousarray(y, dtype=np.int64)
    if not np.all(np.isfinite(X)):
        raise NonFiniteLoss("non-finite features")
    if y.min(initial=0) < 0 or y.max(initial=0) >= num_classes:
        raise ValueError("labels out of range")
    order = _canonical_order(X, y)
    X, y = X[order], y[order]
    n, d = X.shape
    W = np.zeros((d, num_classes), dtype=np.float64)
    b = np.zeros(num_classes, dtype=np.float64)
    step = 1.0
    loss = _penalized_loss(X, y, W, b, lam)
    for _ in range(max_iter):
        ce, g_logits = kernels.softmax_xent(X @ W + b, y)
        loss = ce + 0.5 * lam * float(np.sum(W * W))
        if not np.isfinite(loss):
            raise NonFiniteLoss(f"loss became {loss}")
        gW = X.T @ g_logits + lam * W
        gb = g_logits.sum(axis=0)
        gnorm2 = float(np.sum(gW * gW) + np.sum(gb * gb))
        if gnorm2 == 0.0:
            break
        t = step
        trial_loss = None
        while t >= 1e-14:
            trial_loss = _penalized_loss(X, y, W - t * gW, b - t * gb, lam)
            if trial_loss <= loss - 1e-4 * t * gnorm2:
                break
            t *= 0.5
        else:
            break  # no descent step exists at float64 resolution
        assert trial_loss <= loss, "line search must not increase the loss"
        W = W - t * gW
        b = b - t * gb
        improvement = loss - trial_loss
        loss = trial_loss
        step = t * 2.0
        if improvement < tol:
            break
    return W, b


def predict(W, b, X) -> np.ndarray:
    logits = np.asarray(X, dtype=np.float64) @ W + b
    return np.argmax(logits, axis=1)


def accuracy(W, b, X, y) -> float:
    return float(np.mean(predict(W, b, X) == np.asarray(y)))


def stratified_folds(labels, k: int = 10, seed: int = 0) -> list:
    """Partition indices into k folds with each class spread within +-1 of
    its proportional share; remainders land in seeded random folds."""
    labels = list(labels)
    rng = random.Random(seed)
    folds = [[] for _ in range(k)]
    for cls in sorted(set(labels)):
        idx = [i for i, label in enumerate(labels) if label == cls]
        rng.shuffle(idx)
        base, remainder = divmod(len(idx), k)
        extras = set(rng.sample(range(k), remainder))
        position = 0
        for f in range(k):
            take = base + (1 if f in extras else 0)
            folds[f].extend(idx[position : position + take])
            position += take
    return [sorted(fold) for fold in folds]


def _select_lambda(X, y, num_classes, lambdas, seed):
    """Hold out a stratified 10% of the training rows, score each lambda on
    it, and return the best (ties to the smaller lambda)."""
    inner = stratified_folds(y.tolist(), k=10, seed=seed)[0]
    inner_set = set(inner)
    train_idx = np.array([i for i in range(len(y)) if i not in inner_set], dtype=np.intp)
    val_idx = np.array(inner, dtype=np.intp)
    best_lam, best_acc = None, -1.0
    for lam in sorted(lambdas):
        W, b = train_logreg(X[train_idx], y[train_idx], num_classes, lam)
        acc = accuracy(W, b, X[val_idx], y[val_idx])
        if acc > best_acc:
            best_lam, best_acc = lam, acc
    return best_lam


def _features_for_samples(task: ProbeTask, samples, gw: Gateway) -> tuple:
    texts = []
    seen = {}
    for row in samples:
        for text in row[1:]:
            if text not in seen:
                seen[text] = len(texts)
                texts.append(text)
    vectors = gw.encode_batch(texts)
    feats = []
    labels = []
    for row in samples:
        label = int(row[0])
        if task.arity == "sentence_pair":
            feats.append(featurize(task, vectors[seen[row[1]]], vectors[seen[row[2]]]))
        else:
            feats.append(featurize(task, vectors[seen[row[1]]]))
        labels.append(label)
    return np.array(feats, dtype=np.float64), np.array(labels, dtype=np.int64)


def cross_validate_features(X, y, num_classes: int, lambdas=DEFAULT_LAMBDAS, seed: int = 0, tag: str = "") -> tuple:
    """10-fold CV over a prepared feature matrix.

    Returns (fold_accuracies, lambda_selected); lambda is chosen per fold on
    an inner stratified 90/10 split, ties resolved toward the smaller value,
    and the reported lambda is the mode across folds.
    """
    X = np.asarray(X, dtype=np.float64)
    y = np.asarray(y, dtype=np.int64)
    counts = {}
    for label in y.tolist():
        counts[label] = counts.get(label, 0) + 1
    for cls in range(num_classes):
        if counts.get(cls, 0) < 10:
            raise InsufficientSamples(cls, counts.get(cls, 0), 10)
    folds = stratified_folds(y.tolist(), k=10, seed=mix_seed(seed, tag, "folds"))
    fold_accuracies = []
    fold_lambdas = []
    for f, held_out in enumerate(folds):
        held_set = set(held_out)
        train_idx = np.array([i for i in range(len(y)) if i not in held_set], dtype=np.intp)
        val_idx = np.array(held_out, dtype=np.intp)
        lam = _select_lambda(X[train_idx], y[train_idx], num_classes, lambdas, mix_seed(seed, tag, f"inner{f}"))
        W, b = train_logreg(X[train_idx], y[train_idx], num_classes, lam)
        fold_accuracies.append(accuracy(W, b, X[val_idx], y[val_idx]))
        fold_lambdas.append(lam)
    tally = {}
    for lam in fold_lambdas:
        tally[lam] = tally.get(lam, 0) + 1
    lambda_selected = sorted(tally.items(), key=lambda kv: (-kv[1], kv[0]))[0][0]
    return tuple(fold_accuracies), lambda_selected


def cross_validate(task: ProbeTask, samples, spec, lambdas=DEFAULT_LAMBDAS, seed: int = 0) -> ClassifierResult:
    """Stratified 10-fold CV over encoder features for one probing task."""
    gw, owned = (spec, False) if isinstance(spec, Gateway) else (Gateway(spec), True)
    try:
        X, y = _features_for_samples(task, samples, gw)
        encoder_id = gw.spec.encoder_id
    finally:
        if owned:
            gw.close()
    fold_accuracies, lambda_selected = cross_validate_features(
        X, y, task.num_classes, lambdas=lambdas, seed=seed, tag=task.name
    )
    return ClassifierResult(
        task=task,
        encoder_id=encoder_id,
        fold_accuracies=fold_accuracies,
        mean_accuracy=exact_mean(fold_accuracies),
        lambda_selected=lambda_selected,
        seed=seed,
    )
