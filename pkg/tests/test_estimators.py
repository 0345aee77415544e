import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError
from sklearn.pipeline import make_pipeline

from deformed_md.estimators import DeformedLogTransformer, OnlinePortfolio, SimplexRegressor
from deformed_md.exceptions import InvalidParams
from deformed_md.linkfn import Tsallis
from deformed_md.problems import synthetic_returns


def _data(seed=0):
    rng = np.random.default_rng(seed)
    X = rng.normal(size=(200, 4))
    w = np.array([0.1, 0.45, 0.05, 0.4])
    return X, X @ w, w


@pytest.mark.parametrize("variant", ["md", "mmd"])
@pytest.mark.parametrize("family,params", [("natural", None), ("tsallis", {"q": 0.7}), ("kaniadakis", {"kappa": 0.3})])
def test_simplex_regressor_recovers_weights(variant, family, params):
    X, y, w = _data()
    est = SimplexRegressor(family=family, family_params=params, variant=variant, max_iters=5000, grad_tol=1e-10)
    est.fit(X, y)
    assert est.coef_.sum() == pytest.approx(1.0, abs=1e-12)
    np.testing.assert_allclose(est.coef_, w, atol=1e-6)
    assert est.converged_
    assert est.score(X, y) > 0.999
    assert est.predict(X[:3]).shape == (3,)


def test_get_params_and_clone():
    est = SimplexRegressor(family="tsallis", family_params={"q": 0.5}, eta=0.3)
    params = est.get_params()
    assert params["family"] == "tsallis" and params["eta"] == 0.3
    twin = clone(est)
    assert twin.get_params() == params
    est.set_params(eta=0.1)
    assert est.eta == 0.1


def test_family_instance_accepted():
    X, y, _ = _data(1)
    est = SimplexRegressor(family=Tsallis(0.8)).fit(X, y)
    assert est.n_iter_ >= 1 and est.converged_


def test_invalid_family_params_raise():
    X, y, _ = _data()
    with pytest.raises(InvalidParams):
        SimplexRegressor(family="kaniadakis", family_params={"kappa": 2.0}).fit(X, y)


def test_predict_checks():
    X, y, _ = _data()
    with pytest.raises(NotFittedError):
        SimplexRegressor().predict(X)
    est = SimplexRegressor().fit(X, y)
    with pytest.raises(ValueError):
        est.predict(X[:, :2])


def test_online_portfolio_constant_returns():
    R = np.tile([2.0, 1.0], (500, 1))
    est = OnlinePortfolio(eta=0.1).fit(R)
    assert est.weights_[0] >= 0.99
    assert est.weights_history_.shape == (500, 2)
    np.testing.assert_allclose(est.weights_history_[0], [0.5, 0.5])
    direct = np.sum(np.log(R @ est.weights_history_.T).diagonal())
    assert est.log_wealth_ == pytest.approx(direct, rel=1e-12)


def test_online_portfolio_deformed():
    R = synthetic_returns(100, seed=3)
    est = OnlinePortfolio(family="kaniadakis", family_params={"kappa": 0.4}).fit(R)
    assert np.isfinite(est.log_wealth_)
    assert est.weights_.sum() == pytest.approx(1.0, abs=1e-12)


def test_transformer_round_trip():
    X = np.abs(np.random.default_rng(2).normal(size=(10, 3))) + 0.1
    tr = DeformedLogTransformer(family="kaniadakis", family_params={"kappa": 0.5})
    Z = tr.fit_transform(X)
    np.testing.assert_allclose(tr.inverse_transform(Z), X, rtol=1e-12)
    tr2 = DeformedLogTransformer(family="euler", family_params={"a": 0.5, "b": -0.2}).fit(X)
    np.testing.assert_allclose(tr2.inverse_transform(tr2.transform(X)), X, rtol=1e-10)


def test_transformer_in_pipeline():
    X = np.abs(np.random.default_rng(4).normal(size=(50, 2))) + 0.5
    y = np.log(X) @ np.array([0.3, 0.7])
    model = make_pipeline(DeformedLogTransformer(family="tsallis", family_params={"q": 1.0}), SimplexRegressor())
    model.fit(X, y)
    np.testing.assert_allclose(model[-1].coef_, [0.3, 0.7], atol=1e-4)
