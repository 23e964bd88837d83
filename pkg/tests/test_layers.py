import numpy as np
import pytest

from adsage.errors import ConfigurationError
from adsage.nn import (Dense, EmbeddingTable, FeedForwardNet, embedding_bag_mean,
                       embedding_lookup, ffnn_forward)


def test_dense_matches_matrix_arithmetic():
    rng = np.random.default_rng(0)
    layer = Dense(4, 3, activation="linear", rng=rng)
    x = rng.normal(size=(5, 4))
    np.testing.assert_allclose(layer.forward(x), x @ layer.W.value + layer.b.value)


def test_dense_dimension_mismatch():
    layer = Dense(4, 3, activation="linear", rng=np.random.default_rng(0))
    with pytest.raises(ConfigurationError):
        layer.forward(np.zeros((2, 5)))


def test_ffnn_zero_network_outputs_half():
    net = FeedForwardNet(7, hidden_layers=(5, 3), dropout_rate=0.2,
                         rng=np.random.default_rng(1))
    rng = np.random.default_rng(2)
    for _ in range(20):
        assert ffnn_forward(rng.normal(size=7), net) == 0.5


def test_ffnn_output_open_interval():
    rng = np.random.default_rng(3)
    net = FeedForwardNet(6, hidden_layers=(8, 4), dropout_rate=0.0, rng=rng)
    net.out.W.value[:] = rng.normal(size=net.out.W.value.shape)
    net.out.b.value[:] = 3.0
    p = net.forward(rng.normal(scale=5.0, size=(200, 6)))
    assert np.all(p > 0.0) and np.all(p < 1.0)


def test_ffnn_dropout_zero_rate_matches_eval():
    rng = np.random.default_rng(4)
    net = FeedForwardNet(5, hidden_layers=(6, 4), dropout_rate=0.0, rng=rng)
    net.out.W.value[:] = rng.normal(size=net.out.W.value.shape)
    x = rng.normal(size=(10, 5))
    train_out = net.forward(x, training=True, rng=np.random.default_rng(9))
    eval_out = net.forward(x, training=False)
    np.testing.assert_array_equal(train_out, eval_out)


def test_ffnn_matches_independent_layer_by_layer_evaluation():
    rng = np.random.default_rng(5)
    net = FeedForwardNet(4, hidden_layers=(6, 3), dropout_rate=0.0, rng=rng)
    net.out.W.value[:] = rng.normal(size=net.out.W.value.shape)
    net.out.b.value[:] = rng.normal(size=net.out.b.value.shape)
    x = rng.normal(size=(7, 4))
    h = x
    for layer in net.hidden:
        h = np.maximum(h @ layer.W.value + layer.b.value, 0.0)
    z = (h @ net.out.W.value + net.out.b.value)[:, 0]
    expected = 1.0 / (1.0 + np.exp(-z))
    np.testing.assert_allclose(net.forward(x), expected, atol=1e-12)


def test_ffnn_training_needs_rng_when_dropout_active():
    net = FeedForwardNet(3, hidden_layers=(4,), dropout_rate=0.5,
                         rng=np.random.default_rng(6))
    with pytest.raises(ConfigurationError):
        net.forward(np.zeros((1, 3)), training=True)


def test_embedding_bag_of_one_equals_lookup():
    rng = np.random.default_rng(7)
    table = EmbeddingTable(9, 5, rng=rng)
    for idx in range(9):
        bag = embedding_bag_mean(table, [[idx]])
        np.testing.assert_array_equal(bag[0], embedding_lookup(table, [idx])[0])


def test_embedding_bag_empty_is_zero():
    table = EmbeddingTable(4, 3, rng=np.random.default_rng(8))
    np.testing.assert_array_equal(embedding_bag_mean(table, [[]])[0], np.zeros(3))


def test_embedding_bag_is_average():
    table = EmbeddingTable(5, 2, rng=np.random.default_rng(9))
    bag = embedding_bag_mean(table, [[1, 3, 4]])
    np.testing.assert_allclose(bag[0], table.weights.value[[1, 3, 4]].mean(axis=0))


def test_embedding_index_out_of_range():
    table = EmbeddingTable(4, 3, rng=np.random.default_rng(10))
    with pytest.raises(ConfigurationError):
        table.lookup([4])


def test_forward_passes_stay_finite_under_fuzz():
    rng = np.random.default_rng(11)
    for _ in range(1000):
        din = int(rng.integers(1, 6))
        dout = int(rng.integers(1, 6))
        act = rng.choice(["linear", "relu", "sigmoid", "tanh"])
        layer = Dense(din, dout, activation=str(act), rng=rng)
        x = rng.normal(scale=10.0 ** rng.integers(0, 3), size=(2, din))
        y = layer.forward(x)
        assert np.all(np.isfinite(y))
        dx = layer.backward(rng.normal(size=y.shape))
        assert np.all(np.isfinite(dx))
        assert np.all(np.isfinite(layer.W.grad))
