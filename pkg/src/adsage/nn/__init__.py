"""Minimal neural-network engine: layers, LSTM, losses, optimizer, gradient checks."""

from .gradcheck import (GradCheckResult, finite_difference_gradients, gradient_check,
                        max_relative_error, run_standard_checks)
from .layers import (Dense, EmbeddingTable, FeedForwardNet, embedding_bag_mean,
                     embedding_lookup, ffnn_forward, glorot_uniform, sigmoid)
from .losses import (binary_cross_entropy_loss, cosine_loss, cross_entropy_loss,
                     loss_and_grad, mse_loss, softmax)
from .lstm import LstmParams, LstmSequence, lstm_step
from .optim import Optimizer, Param

__all__ = [
    "Dense", "EmbeddingTable", "FeedForwardNet", "GradCheckResult", "LstmParams",
    "LstmSequence", "Optimizer", "Param", "binary_cross_entropy_loss", "cosine_loss",
    "cross_entropy_loss", "embedding_bag_mean", "embedding_lookup", "ffnn_forward",
    "finite_difference_gradients", "glorot_uniform", "gradient_check", "loss_and_grad",
    "lstm_step", "max_relative_error", "mse_loss", "run_standard_checks", "sigmoid",
    "softmax",
]
