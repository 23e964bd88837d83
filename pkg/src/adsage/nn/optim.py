"""Adaptive-moment optimizer with plateau learning-rate decay.

Moment buffers live on the parameters themselves so that a parameter shared
by several training steps (e.g. embedding tables updated by both network
heads) keeps one consistent set of moments. The optimizer object owns the
learning-rate schedule: the rate halves after every epoch whose mean loss
fails to improve on the best epoch seen so far, and never increases.
"""

import numpy as np

from ..errors import ConfigurationError, NumericalError


class Param:
    """One trainable tensor together with its gradient and moment buffers."""

    __slots__ = ("value", "grad", "m", "v", "t")

    def __init__(self, value):
        self.value = np.asarray(value, dtype=np.float64)
        self.grad = np.zeros_like(self.value)
        self.m = np.zeros_like(self.value)
        self.v = np.zeros_like(self.value)
        self.t = 0

    def zero_grad(self):
        self.grad[...] = 0.0


class Optimizer:
    """Adam update with global-norm gradient clipping and plateau decay."""

    def __init__(self, learning_rate: float = 1e-3, decay_factor: float = 0.5,
                 beta1: float = 0.9, beta2: float = 0.999, epsilon: float = 1e-8,
                 clip_norm: float = 5.0):
        if learning_rate <= 0:
            raise ConfigurationError("learning_rate must be positive")
        self.learning_rate = float(learning_rate)
        self.decay_factor = float(decay_factor)
        self.beta1 = beta1
        self.beta2 = beta2
        self.epsilon = epsilon
        self.clip_norm = clip_norm
        self.best_epoch_loss = float("inf")
        self.epochs_without_improvement = 0

    def step(self, params: list[Param]):
        """Apply one Adam update to ``params`` and clear their gradients."""
        sq = 0.0
        for p in params:
            if not np.all(np.isfinite(p.grad)):
                raise NumericalError("non-finite gradient; training aborted")
            sq += float(np.sum(p.grad * p.grad))
        norm = np.sqrt(sq)
        scale = self.clip_norm / norm if (self.clip_norm and norm > self.clip_norm) else 1.0
        for p in params:
            g = p.grad * scale
            p.t += 1
            p.m = self.beta1 * p.m + (1.0 - self.beta1) * g
            p.v = self.beta2 * p.v + (1.0 - self.beta2) * g * g
            m_hat = p.m / (1.0 - self.beta1 ** p.t)
            v_hat = p.v / (1.0 - self.beta2 ** p.t)
            p.value -= self.learning_rate * m_hat / (np.sqrt(v_hat) + self.epsilon)
            p.zero_grad()

    def end_epoch(self, epoch_loss: float) -> bool:
        """Record one epoch's mean loss; halve the rate if it did not improve."""
        improved = epoch_loss < self.best_epoch_loss
        if improved:
            self.best_epoch_loss = epoch_loss
            self.epochs_without_improvement = 0
        else:
            self.epochs_without_improvement += 1
            self.learning_rate *= self.decay_factor
        return improved

    def state_dict(self) -> dict:
        return {
            "learning_rate": self.learning_rate,
            "best_epoch_loss": self.best_epoch_loss,
            "epochs_without_improvement": self.epochs_without_improvement,
        }

    def load_state_dict(self, state: dict):
        self.learning_rate = float(state["learning_rate"])
        self.best_epoch_loss = float(state["best_epoch_loss"])
        self.epochs_without_improvement = int(state["epochs_without_improvement"])
