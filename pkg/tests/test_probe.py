import numpy as np
import pytest

from semprobe import kernels
from semprobe.errors import DimMismatch, InsufficientSamples, NonFiniteLoss
from semprobe.gateway import BackendSpec
from semprobe.probe import (
    DEFAULT_LAMBDAS,
    ProbeTask,
    accuracy,
    cross_validate,
    featurize,
    predict,
    stratified_folds,
    train_logreg,
)


def mock_spec(dim=64, seed=0):
    return BackendSpec("mock", "", f"mock-d{dim}-s{seed}", 64, (("dim", dim), ("seed", seed)))


def make_blobs(rng, n_per_class=20, gap=3.0):
    """Two clusters separated along x with margin >= 2*(gap-1)."""
    x0 = rng.uniform(-1, 1, size=(n_per_class, 2)) + np.array([-gap, 0.0])
    x1 = rng.uniform(-1, 1, size=(n_per_class, 2)) + np.array([gap, 0.0])
    X = np.vstack([x0, x1])
    y = np.array([0] * n_per_class + [1] * n_per_class)
    return X, y


def scan_separable(X, y) -> bool:
    """Brute-force check: some axis-aligned threshold splits the classes."""
    for axis in range(X.shape[1]):
        lo = X[y == 0][:, axis]
        hi = X[y == 1][:, axis]
        if lo.max() < hi.min() or hi.max() < lo.min():
            return True
    return False


# --- featurize ---------------------------------------------------------------


def test_featurize_single_is_identity():
    task = ProbeTask.from_name("MR")
    u = np.array([1.0, -2.0, 3.0])
    assert np.array_equal(featurize(task, u), u)


def test_featurize_pair_hand_example():
    task = ProbeTask.from_name("MRPC")
    out = featurize(task, np.array([1.0, 2.0]), np.array([3.0, 4.0]))
    assert np.array_equal(out, [1.0, 2.0, 3.0, 4.0, 2.0, 2.0, 3.0, 8.0])


def test_featurize_pair_identical_gives_zero_abs_block():
    task = ProbeTask.from_name("MRPC")
    u = np.array([0.5, -1.5])
    out = featurize(task, u, u)
    assert np.array_equal(out[4:6], [0.0, 0.0])


def test_featurize_dim_mismatch():
    task = ProbeTask.from_name("MRPC")
    with pytest.raises(DimMismatch):
        featurize(task, np.array([1.0]), np.array([1.0, 2.0]))


def test_featurize_arity_enforced():
    with pytest.raises(ValueError):
        featurize(ProbeTask.from_name("MR"), np.array([1.0]), np.array([1.0]))
    with pytest.raises(ValueError):
        featurize(ProbeTask.from_name("MRPC"), np.array([1.0]))


def test_task_table():
    assert ProbeTask.from_name("TREC").num_classes == 6
    assert ProbeTask.from_name("MRPC").arity == "sentence_pair"
    for name in ("MR", "CR", "SUBJ", "MPQA", "SSTb"):
        task = ProbeTask.from_name(name)
        assert task.num_classes == 2 and task.arity == "single_sentence"
    with pytest.raises(ValueError):
        ProbeTask.from_name("STS")


# --- trainer -----------------------------------------------------------------


def test_zero_init_gives_uniform_distribution():
    # At W = 0 the predictive distribution is uniform: loss = log(C).
    rng = np.random.default_rng(0)
    X = rng.normal(size=(12, 4))
    for c in (2, 6):
        y = rng.integers(0, c, size=12)
        loss, _ = kernels.softmax_xent(X @ np.zeros((4, c)) + np.zeros(c), y)
        assert abs(loss - np.log(c)) < 1e-12


@pytest.mark.parametrize("num_classes", [2, 6])
def test_gradient_matches_central_differences(num_classes):
    h = 1e-5
    for instance in range(20):
        rng = np.random.default_rng(100 + instance)
        X = rng.normal(size=(5, 8))
        y = rng.integers(0, num_classes, size=5)
        W = rng.normal(size=(8, num_classes)) * 0.5
        b = rng.normal(size=num_classes) * 0.5
        lam = 10.0 ** rng.uniform(-4, 0)

        def loss_at(Wm, bm):
            ce, _ = kernels.softmax_xent(X @ Wm + bm, y, want_grad=False)
            return ce + 0.5 * lam * np.sum(Wm * Wm)

        _, g_logits = kernels.softmax_xent(X @ W + b, y)
        gW = X.T @ g_logits + lam * W
        gb = g_logits.sum(axis=0)
        worst = 0.0
        for i in range(8):
            for j in range(num_classes):
                up, down = W.copy(), W.copy()
                up[i, j] += h
                down[i, j] -= h
                fd = (loss_at(up, b) - loss_at(down, b)) / (2 * h)
                denom = max(abs(fd), 1e-8)
                worst = max(worst, abs(fd - gW[i, j]) / denom)
        for j in range(num_classes):
            up, down = b.copy(), b.copy()
            up[j] += h
            down[j] -= h
            fd = (loss_at(W, up) - loss_at(W, down)) / (2 * h)
            worst = max(worst, abs(fd - gb[j]) / max(abs(fd), 1e-8))
        assert worst <= 1e-4


def test_separable_blobs_reach_full_training_accuracy():
    rng = np.random.default_rng(1)
    X, y = make_blobs(rng)
    assert scan_separable(X, y)
    W, b = train_logreg(X, y, 2, 1e-4)
    assert accuracy(W, b, X, y) == 1.0


def test_training_rejects_nonfinite_features():
    X = np.array([[1.0, np.inf]])
    with pytest.raises(NonFiniteLoss):
        train_logreg(X, np.array([0]), 2, 0.01)


def test_row_permutation_invariance():
    rng = np.random.default_rng(5)
    X, y = make_blobs(rng, n_per_class=25, gap=1.5)
    W1, b1 = train_logreg(X, y, 2, 1e-2)
    perm = rng.permutation(len(y))
    W2, b2 = train_logreg(X[perm], y[perm], 2, 1e-2)
    assert np.array_equal(W1, W2)
    assert np.array_equal(b1, b2)


def test_six_class_training_improves_over_uniform():
    rng = np.random.default_rng(8)
    centers = rng.normal(scale=5.0, size=(6, 4))
    X = np.vstack([centers[c] + rng.normal(scale=0.3, size=(30, 4)) for c in range(6)])
    y = np.repeat(np.arange(6), 30)
    W, b = train_logreg(X, y, 6, 1e-3)
    assert accuracy(W, b, X, y) > 0.95
    assert predict(W, b, X).shape == (180,)


# --- folds -------------------------------------------------------------------


def test_folds_partition_and_stratify():
    rng = np.random.default_rng(0)
    for trial in range(25):
        counts = rng.integers(10, 60, size=rng.integers(2, 7))
        labels = [c for c, n in enumerate(counts) for _ in range(n)]
        rng.shuffle(labels)
        folds = stratified_folds(labels, k=10, seed=trial)
        flat = sorted(i for fold in folds for i in fold)
        assert flat == list(range(len(labels)))  # disjoint union of all indices
        for c, n in enumerate(counts):
            per_fold = [sum(1 for i in fold if labels[i] == c) for fold in folds]
            assert max(per_fold) - min(per_fold) <= 1
            assert all(p in (n // 10, n // 10 + 1) for p in per_fold)


def test_fold_sizes_for_1005_samples():
    # 4 classes, 252+251+251+251 = 1005: remainders can stack so two folds
    # carry the extras; seed 36 realizes sizes {103, 102, 100 x 8}.
    labels = [0] * 252 + [1] * 251 + [2] * 251 + [3] * 251
    folds = stratified_folds(labels, k=10, seed=36)
    assert sorted(len(f) for f in folds) == [100] * 8 + [102, 103]


def test_folds_deterministic():
    labels = [0] * 40 + [1] * 30
    assert stratified_folds(labels, seed=3) == stratified_folds(labels, seed=3)


# --- cross validation ----------------------------------------------------------


def cv_samples(n_per_class=30):
    zeros = [(0, f"alpha beta gamma {i}") for i in range(n_per_class)]
    ones = [(1, f"delta epsilon zeta {i}") for i in range(n_per_class)]
    return zeros + ones


def test_cross_validate_blob_like_texts_hit_full_accuracy():
    result = cross_validate(ProbeTask.from_name("MR"), cv_samples(), mock_spec(dim=512))
    assert len(result.fold_accuracies) == 10
    assert result.mean_accuracy == 1.0
    assert result.lambda_selected in DEFAULT_LAMBDAS


def test_cross_validate_deterministic():
    a = cross_validate(ProbeTask.from_name("MR"), cv_samples(), mock_spec(), seed=9)
    b = cross_validate(ProbeTask.from_name("MR"), cv_samples(), mock_spec(), seed=9)
    assert a.fold_accuracies == b.fold_accuracies
    assert a.lambda_selected == b.lambda_selected


def test_cross_validate_mean_invariant():
    result = cross_validate(ProbeTask.from_name("MR"), cv_samples(), mock_spec(), seed=2)
    assert abs(result.mean_accuracy - sum(result.fold_accuracies) / 10) < 1e-12


def test_cross_validate_insufficient_samples():
    samples = [(0, f"text {i}") for i in range(9)] + [(1, f"other {i}") for i in range(20)]
    with pytest.raises(InsufficientSamples):
        cross_validate(ProbeTask.from_name("MR"), samples, mock_spec())


def test_cross_validate_pair_task():
    samples = []
    for i in range(15):
        samples.append((1, f"red shoes {i}", f"shoes red {i}"))  # multiset match
        samples.append((0, f"red shoes {i}", f"blue piano {i}"))
    result = cross_validate(ProbeTask.from_name("MRPC"), samples, mock_spec(dim=256))
    assert result.mean_accuracy > 0.8
