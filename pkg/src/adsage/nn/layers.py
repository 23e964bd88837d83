"""Dense, embedding and feed-forward layers with hand-written backward passes.

Layers cache their last forward activations, so a forward call must be
followed by at most one matching backward call (the training loops always
pair them). Gradients accumulate into ``Param.grad`` until an optimizer
step consumes them.
"""

import numpy as np

from ..errors import ConfigurationError
from .optim import Param


def glorot_uniform(rng: np.random.Generator, fan_in: int, fan_out: int) -> np.ndarray:
    limit = np.sqrt(6.0 / (fan_in + fan_out))
    return rng.uniform(-limit, limit, size=(fan_in, fan_out))


def sigmoid(x):
    return 1.0 / (1.0 + np.exp(-x))


class Dense:
    """Fully connected layer, optionally followed by an activation."""

    def __init__(self, input_dim: int, output_dim: int, activation: str = "linear",
                 rng: np.random.Generator | None = None, zero_init: bool = False):
        if activation not in ("linear", "relu", "sigmoid", "tanh"):
            raise ConfigurationError(f"unknown activation {activation!r}")
        if zero_init:
            w = np.zeros((input_dim, output_dim))
        else:
            if rng is None:
                raise ConfigurationError("Dense needs an rng unless zero_init is set")
            w = glorot_uniform(rng, input_dim, output_dim)
        self.W = Param(w)
        self.b = Param(np.zeros(output_dim))
        self.activation = activation
        self._x = None
        self._pre = None
        self._out = None

    @property
    def input_dim(self) -> int:
        return self.W.value.shape[0]

    @property
    def output_dim(self) -> int:
        return self.W.value.shape[1]

    def forward(self, x: np.ndarray) -> np.ndarray:
        x = np.atleast_2d(np.asarray(x, dtype=np.float64))
        if x.shape[1] != self.input_dim:
            raise ConfigurationError(
                f"dense input has {x.shape[1]} columns, expected {self.input_dim}")
        pre = x @ self.W.value + self.b.value
        if self.activation == "relu":
            out = np.maximum(pre, 0.0)
        elif self.activation == "sigmoid":
            out = sigmoid(pre)
        elif self.activation == "tanh":
            out = np.tanh(pre)
        else:
            out = pre
        self._x, self._pre, self._out = x, pre, out
        return out

    def backward(self, d_out: np.ndarray) -> np.ndarray:
        """Accumulate parameter gradients; return the gradient w.r.t. the input."""
        if self.activation == "relu":
            d_pre = d_out * (self._pre > 0.0)
        elif self.activation == "sigmoid":
            d_pre = d_out * self._out * (1.0 - self._out)
        elif self.activation == "tanh":
            d_pre = d_out * (1.0 - self._out * self._out)
        else:
            d_pre = d_out
        self.W.grad += self._x.T @ d_pre
        self.b.grad += d_pre.sum(axis=0)
        return d_pre @ self.W.value.T

    def params(self) -> list[Param]:
        return [self.W, self.b]


class EmbeddingTable:
    """Embedding table with row 0 reserved for the unknown entity."""

    def __init__(self, vocab_size: int, dim: int, rng: np.random.Generator | None = None,
                 scale: float = 0.05):
        if vocab_size < 1 or dim < 1:
            raise ConfigurationError("embedding table needs vocab_size >= 1 and dim >= 1")
        if rng is None:
            weights = np.zeros((vocab_size, dim))
        else:
            weights = rng.uniform(-scale, scale, size=(vocab_size, dim))
        self.weights = Param(weights)

    @property
    def vocab_size(self) -> int:
        return self.weights.value.shape[0]

    @property
    def dim(self) -> int:
        return self.weights.value.shape[1]

    def lookup(self, indices) -> np.ndarray:
        idx = np.asarray(indices, dtype=np.int64)
        if idx.size and (idx.min() < 0 or idx.max() >= self.vocab_size):
            raise ConfigurationError("embedding index out of range")
        return self.weights.value[idx]

    def bag_mean(self, index_lists) -> np.ndarray:
        """Average-pooled lookup over variable-size index lists; empty -> zeros."""
        out = np.zeros((len(index_lists), self.dim))
        for row, ids in enumerate(index_lists):
            if ids:
                out[row] = self.weights.value[list(ids)].mean(axis=0)
        return out

    def add_lookup_grad(self, indices, d_rows: np.ndarray):
        np.add.at(self.weights.grad, np.asarray(indices, dtype=np.int64), d_rows)

    def add_bag_grad(self, index_lists, d_rows: np.ndarray):
        for row, ids in enumerate(index_lists):
            if ids:
                # add.at accumulates over repeated indices within one bag
                np.add.at(self.weights.grad, np.asarray(list(ids), dtype=np.int64),
                          d_rows[row] / len(ids))


def embedding_lookup(table: EmbeddingTable, indices) -> np.ndarray:
    return table.lookup(indices)


def embedding_bag_mean(table: EmbeddingTable, index_lists) -> np.ndarray:
    return table.bag_mean(index_lists)


class FeedForwardNet:
    """Relu hidden stack with inverted dropout and a sigmoid output unit.

    The output layer starts at zero so an untrained network emits exactly 0.5
    for every input.
    """

    def __init__(self, input_dim: int, hidden_layers=(50, 30, 10), dropout_rate: float = 0.2,
                 rng: np.random.Generator | None = None):
        if not 0.0 <= dropout_rate < 1.0:
            raise ConfigurationError("dropout_rate must be in [0, 1)")
        self.dropout_rate = float(dropout_rate)
        self.hidden = []
        prev = input_dim
        for width in hidden_layers:
            self.hidden.append(Dense(prev, width, activation="relu", rng=rng))
            prev = width
        self.out = Dense(prev, 1, activation="linear", zero_init=True)
        self._masks = None

    @property
    def input_dim(self) -> int:
        return self.hidden[0].input_dim if self.hidden else self.out.input_dim

    def forward(self, x: np.ndarray, training: bool = False,
                rng: np.random.Generator | None = None) -> np.ndarray:
        """Return the per-row probability of the positive (invalid) class."""
        h = np.atleast_2d(np.asarray(x, dtype=np.float64))
        use_dropout = training and self.dropout_rate > 0.0
        if use_dropout and rng is None:
            raise ConfigurationError("training-mode forward with dropout needs an rng")
        self._masks = []
        keep = 1.0 - self.dropout_rate
        for layer in self.hidden:
            h = layer.forward(h)
            if use_dropout:
                mask = (rng.random(h.shape) < keep) / keep
                h = h * mask
                self._masks.append(mask)
            else:
                self._masks.append(None)
        z = self.out.forward(h)[:, 0]
        return sigmoid(z)

    def backward_from_logits(self, d_logits: np.ndarray) -> np.ndarray:
        """Backward pass given the gradient w.r.t. the pre-sigmoid output."""
        d = self.out.backward(np.asarray(d_logits, dtype=np.float64).reshape(-1, 1))
        for layer, mask in zip(reversed(self.hidden), reversed(self._masks)):
            if mask is not None:
                d = d * mask
            d = layer.backward(d)
        return d

    def predict_one(self, x: np.ndarray) -> float:
        return float(self.forward(x.reshape(1, -1), training=False)[0])

    def params(self) -> list[Param]:
        out = []
        for layer in self.hidden:
            out.extend(layer.params())
        out.extend(self.out.params())
        return out

    def named_params(self, prefix: str = "ffnn") -> dict[str, Param]:
        named = {}
        for i, layer in enumerate(self.hidden):
            named[f"{prefix}.{i}.W"] = layer.W
            named[f"{prefix}.{i}.b"] = layer.b
        named[f"{prefix}.out.W"] = self.out.W
        named[f"{prefix}.out.b"] = self.out.b
        return named


def ffnn_forward(input_vector: np.ndarray, net: FeedForwardNet, training: bool = False,
                 rng: np.random.Generator | None = None) -> float:
    """Probability output of the feed-forward classifier for one input vector."""
    x = np.asarray(input_vector, dtype=np.float64).reshape(1, -1)
    return float(net.forward(x, training=training, rng=rng)[0])
