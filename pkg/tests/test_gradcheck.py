import numpy as np

from adsage.nn import (finite_difference_gradients, gradient_check,
                       max_relative_error, run_standard_checks)


def test_fd_on_known_quadratic():
    # loss = sum(w^2) has gradient 2w; the checker must recover it
    w = np.array([1.0, -2.0, 0.5])
    grads = finite_difference_gradients(lambda: float(np.sum(w * w)), {"w": w})
    np.testing.assert_allclose(grads["w"], 2.0 * w, atol=1e-8)


def test_relative_error_flags_wrong_gradient():
    a = {"w": np.array([1.0, 2.0])}
    wrong = {"w": np.array([1.0, 2.5])}
    assert max_relative_error(a, wrong) > 0.1
    assert max_relative_error(a, {"w": a["w"].copy()}) == 0.0


def test_gradient_check_catches_sign_error():
    w = np.array([0.7, -0.3])

    def loss():
        return float(np.sum(w * w))

    err = gradient_check(loss, {"w": w}, {"w": -2.0 * w})  # wrong sign
    assert err > 1.0


def test_standard_suite_passes():
    results = run_standard_checks(seed=7, configs_per_case=5)
    for r in results:
        assert r.passed, r.line()


def test_standard_suite_covers_required_fragments():
    names = {r.name for r in run_standard_checks(seed=1, configs_per_case=1)}
    required = {"dense_mse", "embedding_cosine", "embedding_bag_mse",
                "lstm3_cross_entropy", "loss_mse", "loss_cross_entropy",
                "loss_cosine", "loss_binary_cross_entropy"}
    assert required <= names
