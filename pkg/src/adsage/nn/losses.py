"""Loss functions with analytic gradients.

Every function returns ``(loss, gradient)`` where the gradient is taken
with respect to the prediction; targets are always treated as constants.
Batched row-wise variants (used by the training loops) return unreduced
per-row losses and gradients so callers control masking and weighting.
"""

import numpy as np

from ..errors import ConfigurationError, DegenerateInputError

_P_CLAMP = 1e-12
_NORM_EPS = 1e-12


def softmax(logits: np.ndarray) -> np.ndarray:
    """Numerically stable softmax over the last axis."""
    z = np.asarray(logits, dtype=np.float64)
    z = z - z.max(axis=-1, keepdims=True)
    e = np.exp(z)
    return e / e.sum(axis=-1, keepdims=True)


def mse_loss(prediction, target):
    """Mean squared error over all components."""
    p = np.asarray(prediction, dtype=np.float64)
    t = np.asarray(target, dtype=np.float64)
    if p.shape != t.shape:
        raise ConfigurationError(f"mse shape mismatch: {p.shape} vs {t.shape}")
    diff = p - t
    loss = float(np.mean(diff * diff))
    return loss, 2.0 * diff / diff.size


def cross_entropy_loss(logits, target_index):
    """Softmax cross-entropy for one logits vector and an integer class target."""
    z = np.asarray(logits, dtype=np.float64)
    if z.ndim != 1:
        raise ConfigurationError("cross_entropy expects a 1-d logits vector")
    i = int(target_index)
    if not 0 <= i < z.size:
        raise ConfigurationError(f"class index {i} out of range for {z.size} logits")
    shift = z - z.max()
    log_norm = np.log(np.exp(shift).sum())
    loss = float(log_norm - shift[i])
    grad = np.exp(shift - log_norm)
    grad[i] -= 1.0
    return loss, grad


def cosine_loss(prediction, target):
    """Cosine loss 1 - cos(prediction, target), in [0, 2]."""
    p = np.asarray(prediction, dtype=np.float64)
    t = np.asarray(target, dtype=np.float64)
    if p.shape != t.shape:
        raise ConfigurationError(f"cosine shape mismatch: {p.shape} vs {t.shape}")
    pn = float(np.linalg.norm(p))
    tn = float(np.linalg.norm(t))
    if pn < _NORM_EPS or tn < _NORM_EPS:
        raise DegenerateInputError("cosine loss undefined for zero-norm vectors")
    cos = float(p @ t) / (pn * tn)
    grad = -(t / (pn * tn) - cos * p / (pn * pn))
    return 1.0 - cos, grad


def binary_cross_entropy_loss(prediction, target):
    """Binary cross-entropy on probabilities, averaged over all components."""
    p = np.clip(np.asarray(prediction, dtype=np.float64), _P_CLAMP, 1.0 - _P_CLAMP)
    y = np.asarray(target, dtype=np.float64)
    if p.shape != y.shape:
        raise ConfigurationError(f"bce shape mismatch: {p.shape} vs {y.shape}")
    loss = float(np.mean(-(y * np.log(p) + (1.0 - y) * np.log1p(-p))))
    grad = (p - y) / (p * (1.0 - p)) / p.size
    return loss, grad


_LOSSES = {
    "mse": mse_loss,
    "cross_entropy": cross_entropy_loss,
    "cosine": cosine_loss,
    "binary_cross_entropy": binary_cross_entropy_loss,
}


def loss_and_grad(kind: str, prediction, target):
    """Dispatch on the loss kind; see the individual loss functions."""
    try:
        fn = _LOSSES[kind]
    except KeyError:
        raise ConfigurationError(f"unknown loss kind {kind!r}") from None
    return fn(prediction, target)


# Row-wise batched variants. Losses come back per row (unreduced) and the
# gradients are likewise unscaled; the caller applies its own 1/(rows*features)
# weighting and row masks.

def squared_error_rows(pred: np.ndarray, target: np.ndarray):
    diff = pred - target
    losses = np.mean(diff * diff, axis=1)
    return losses, 2.0 * diff / diff.shape[1]


def cross_entropy_rows(logits: np.ndarray, targets: np.ndarray):
    probs = softmax(logits)
    rows = np.arange(logits.shape[0])
    losses = -np.log(np.maximum(probs[rows, targets], _P_CLAMP))
    grad = probs
    grad[rows, targets] -= 1.0
    return losses, grad


def cosine_rows(pred: np.ndarray, target: np.ndarray):
    """Row-wise cosine loss; degenerate rows contribute zero loss and gradient."""
    pn = np.linalg.norm(pred, axis=1)
    tn = np.linalg.norm(target, axis=1)
    ok = (pn > _NORM_EPS) & (tn > _NORM_EPS)
    safe_pn = np.where(ok, pn, 1.0)
    safe_tn = np.where(ok, tn, 1.0)
    cos = np.einsum("ij,ij->i", pred, target) / (safe_pn * safe_tn)
    losses = np.where(ok, 1.0 - cos, 0.0)
    grad = -(target / (safe_pn * safe_tn)[:, None]
             - (cos / (safe_pn * safe_pn))[:, None] * pred)
    grad[~ok] = 0.0
    return losses, grad
