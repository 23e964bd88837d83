"""LSTM cell and a fixed-length unrolled sequence runner.

Gate order in the fused weight matrices is (input, forget, candidate,
output). The sequence runner supports a per-step validity mask: masked
steps carry the hidden and cell state through unchanged, which is how
left-padded windows of short user histories are handled.
"""

import numpy as np

from ..errors import ConfigurationError
from .layers import glorot_uniform, sigmoid
from .optim import Param


class LstmParams:
    """Fused gate weights for one LSTM layer."""

    def __init__(self, input_dim: int, hidden_dim: int,
                 rng: np.random.Generator | None = None):
        if input_dim < 1 or hidden_dim < 1:
            raise ConfigurationError("lstm dims must be positive")
        self.input_dim = input_dim
        self.hidden_dim = hidden_dim
        if rng is None:
            wx = np.zeros((input_dim, 4 * hidden_dim))
            wh = np.zeros((hidden_dim, 4 * hidden_dim))
        else:
            limit = np.sqrt(6.0 / (input_dim + hidden_dim))
            wx = rng.uniform(-limit, limit, size=(input_dim, 4 * hidden_dim))
            wh = rng.uniform(-limit, limit, size=(hidden_dim, 4 * hidden_dim))
        self.Wx = Param(wx)
        self.Wh = Param(wh)
        self.b = Param(np.zeros(4 * hidden_dim))

    def params(self) -> list[Param]:
        return [self.Wx, self.Wh, self.b]

    def named_params(self, prefix: str = "lstm") -> dict[str, Param]:
        return {f"{prefix}.Wx": self.Wx, f"{prefix}.Wh": self.Wh, f"{prefix}.b": self.b}


def _gates(x, h, params):
    hd = params.hidden_dim
    z = x @ params.Wx.value + h @ params.Wh.value + params.b.value
    i = sigmoid(z[..., :hd])
    f = sigmoid(z[..., hd:2 * hd])
    g = np.tanh(z[..., 2 * hd:3 * hd])
    o = sigmoid(z[..., 3 * hd:])
    return i, f, g, o


def lstm_step(x, h, c, params: LstmParams):
    """One LSTM step; accepts single vectors or (batch, dim) matrices."""
    x = np.asarray(x, dtype=np.float64)
    h = np.asarray(h, dtype=np.float64)
    c = np.asarray(c, dtype=np.float64)
    if x.shape[-1] != params.input_dim or h.shape[-1] != params.hidden_dim:
        raise ConfigurationError(
            f"lstm_step dims {x.shape[-1]}/{h.shape[-1]} do not match "
            f"params {params.input_dim}/{params.hidden_dim}")
    i, f, g, o = _gates(x, h, params)
    c2 = f * c + i * g
    h2 = o * np.tanh(c2)
    return h2, c2


class _StepCache:
    __slots__ = ("x", "h_prev", "c_prev", "i", "f", "g", "o", "c_new", "mask")

    def __init__(self, x, h_prev, c_prev, i, f, g, o, c_new, mask):
        self.x = x
        self.h_prev = h_prev
        self.c_prev = c_prev
        self.i = i
        self.f = f
        self.g = g
        self.o = o
        self.c_new = c_new
        self.mask = mask


class LstmSequence:
    """Unrolled forward/backward passes over a (T, batch, dim) input block."""

    def __init__(self, params: LstmParams):
        self.params = params
        self._steps: list[_StepCache] = []
        self._h_T = None
        self._c_T = None

    def forward(self, X: np.ndarray, h0: np.ndarray, c0: np.ndarray,
                mask: np.ndarray | None = None):
        """Run T steps. ``mask[t, b] == 0`` carries state through unchanged.

        Returns the final (h, c); intermediate activations are cached for the
        matching backward call. The initial state is treated as a constant.
        """
        T, B, _ = X.shape
        if mask is None:
            mask = np.ones((T, B))
        self._steps = []
        h, c = h0, c0
        for t in range(T):
            x = X[t]
            i, f, g, o = _gates(x, h, self.params)
            c_new = f * c + i * g
            h_new = o * np.tanh(c_new)
            m = mask[t][:, None]
            h_next = m * h_new + (1.0 - m) * h
            c_next = m * c_new + (1.0 - m) * c
            self._steps.append(_StepCache(x, h, c, i, f, g, o, c_new, m))
            h, c = h_next, c_next
        self._h_T, self._c_T = h, c
        return h, c

    def backward(self, d_h: np.ndarray, d_c: np.ndarray | None = None) -> np.ndarray:
        """Backpropagate through the cached unroll; returns d_inputs (T, B, D).

        Parameter gradients accumulate into the LstmParams buffers. Gradients
        w.r.t. the initial state are dropped (states fetched from the store
        are constants for the step that consumes them).
        """
        p = self.params
        T = len(self._steps)
        dX = np.zeros((T,) + self._steps[0].x.shape)
        dh = np.asarray(d_h, dtype=np.float64)
        dc = np.zeros_like(dh) if d_c is None else np.asarray(d_c, dtype=np.float64)
        for t in range(T - 1, -1, -1):
            s = self._steps[t]
            dh_cell = dh * s.mask
            dc_cell = dc * s.mask
            dh_pass = dh * (1.0 - s.mask)
            dc_pass = dc * (1.0 - s.mask)
            tanh_c = np.tanh(s.c_new)
            d_o = dh_cell * tanh_c
            d_ct = dc_cell + dh_cell * s.o * (1.0 - tanh_c * tanh_c)
            d_f = d_ct * s.c_prev
            d_i = d_ct * s.g
            d_g = d_ct * s.i
            dz = np.concatenate([
                d_i * s.i * (1.0 - s.i),
                d_f * s.f * (1.0 - s.f),
                d_g * (1.0 - s.g * s.g),
                d_o * s.o * (1.0 - s.o),
            ], axis=1)
            p.Wx.grad += s.x.T @ dz
            p.Wh.grad += s.h_prev.T @ dz
            p.b.grad += dz.sum(axis=0)
            dX[t] = dz @ p.Wx.value.T
            dh = dz @ p.Wh.value.T + dh_pass
            dc = d_ct * s.f + dc_pass
        return dX
