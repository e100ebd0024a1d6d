"""Numpy implementations of the hot numeric kernels.

Reference lane: always available, used when the compiled extension is
missing or disabled via SEMPROBE_KERNELS=python.
"""

import numpy as np

LANE = "python"


def softmax_xent(logits, labels, want_grad=True):
    """Mean softmax cross-entropy over rows and, optionally, its gradient
    with respect to the logits (already divided by the row count).

    logits: float64 (N, C); labels: int64 (N) in [0, C).
    Returns (loss, grad) with grad None when want_grad is False.
    """
    logits = np.asarray(logits, dtype=np.float64)
    labels = np.asarray(labels, dtype=np.int64)
    n = logits.shape[0]
    shifted = logits - logits.max(axis=1, keepdims=True)
    exp = np.exp(shifted)
    denom = exp.sum(axis=1, keepdims=True)
    log_probs = shifted - np.log(denom)
    loss = -log_probs[np.arange(n), labels].mean()
    if not want_grad:
        return float(loss), None
    grad = exp / denom
    grad[np.arange(n), labels] -= 1.0
    grad /= n
    return float(loss), grad


def cosine_many(a, b):
    """Row-wise cosine similarity between matching rows of a and b, clamped
    to [-1, 1].  Rows with zero norm yield nan; callers decide how to fail."""
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    dots = np.einsum("ij,ij->i", a, b)
    # sqrt(na)*sqrt(nb), not sqrt(na*nb): the product can underflow for
    # tiny-magnitude vectors whose norms are still positive.
    norms = np.sqrt(np.einsum("ij,ij->i", a, a)) * np.sqrt(np.einsum("ij,ij->i", b, b))
    with np.errstate(invalid="ignore", divide="ignore"):
        out = dots / norms
    out[norms == 0.0] = np.nan
    return np.clip(out, -1.0, 1.0)


def count_exceeding(values, grid):
    """For each grid point g, the number of values strictly greater than g."""
    values = np.sort(np.asarray(values, dtype=np.float64))
    grid = np.asarray(grid, dtype=np.float64)
    positions = np.searchsorted(values, grid, side="right")
    return (values.size - positions).astype(np.int64)
