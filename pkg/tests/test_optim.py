import numpy as np
import pytest

from adsage.errors import NumericalError
from adsage.nn import Optimizer, Param


def test_zero_gradient_leaves_parameters_unchanged():
    p = Param(np.array([1.0, -2.0, 3.0]))
    opt = Optimizer(learning_rate=0.1)
    before = p.value.copy()
    opt.step([p])
    np.testing.assert_array_equal(p.value, before)


def test_step_moves_against_gradient():
    p = Param(np.zeros(3))
    opt = Optimizer(learning_rate=0.01)
    p.grad[:] = np.array([1.0, -1.0, 2.0])
    opt.step([p])
    assert p.value[0] < 0 and p.value[1] > 0 and p.value[2] < 0


def test_plateau_decay_single_halving():
    opt = Optimizer(learning_rate=0.001)
    assert opt.end_epoch(1.0)        # first epoch always improves on +inf
    assert not opt.end_epoch(1.5)    # worse than best
    assert opt.learning_rate == pytest.approx(0.0005)


def test_plateau_decay_two_consecutive_halvings():
    opt = Optimizer(learning_rate=0.001)
    opt.end_epoch(1.0)
    opt.end_epoch(1.2)
    opt.end_epoch(1.1)  # still not better than 1.0
    assert opt.learning_rate == pytest.approx(0.00025)
    assert opt.epochs_without_improvement == 2


def test_learning_rate_never_increases():
    rng = np.random.default_rng(0)
    opt = Optimizer(learning_rate=0.01)
    rates = [opt.learning_rate]
    for _ in range(30):
        opt.end_epoch(float(rng.uniform(0.0, 2.0)))
        rates.append(opt.learning_rate)
    assert all(b <= a for a, b in zip(rates, rates[1:]))


def test_equal_losses_count_as_no_improvement():
    opt = Optimizer(learning_rate=0.001)
    opt.end_epoch(1.0)
    assert not opt.end_epoch(1.0)  # strictly-lower rule
    assert opt.learning_rate == pytest.approx(0.0005)


def test_non_finite_gradient_aborts():
    p = Param(np.zeros(2))
    p.grad[:] = np.array([np.nan, 0.0])
    with pytest.raises(NumericalError):
        Optimizer().step([p])


def test_gradient_clipping_bounds_update_direction():
    # a huge gradient must be scaled to the clip norm before the update
    p = Param(np.zeros(4))
    opt = Optimizer(learning_rate=1.0, clip_norm=5.0)
    p.grad[:] = np.full(4, 1e6)
    opt.step([p])
    assert np.all(np.isfinite(p.value))
    # effective first-step Adam update is lr * clipped/|clipped| elementwise
    assert np.max(np.abs(p.value)) <= 1.0 + 1e-9


def test_state_dict_round_trip():
    opt = Optimizer(learning_rate=0.004)
    opt.end_epoch(2.0)
    opt.end_epoch(3.0)
    other = Optimizer()
    other.load_state_dict(opt.state_dict())
    assert other.learning_rate == opt.learning_rate
    assert other.best_epoch_loss == opt.best_epoch_loss
    assert other.epochs_without_improvement == opt.epochs_without_improvement
