"""scikit-learn compatible wrappers.

``SimplexRegressor`` fits convex-combination weights (non-negative, summing
to one) by least squares; ``OnlinePortfolio`` runs the online update over a
matrix of gross returns; ``DeformedLogTransformer`` applies a deformed
logarithm feature-wise.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, RegressorMixin, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted, check_X_y

from .descent import DescentConfig, run
from .inverse import deformed_exp
from .linkfn import LinkFamily, log_eval, make_family
from .problems import least_squares_problem, portfolio_problem


def _family(estimator) -> LinkFamily:
    family = estimator.family
    if isinstance(family, LinkFamily):
        return family
    return make_family(family, **dict(estimator.family_params or {}))


class _DescentParams(BaseEstimator):
    def _config(self) -> DescentConfig:
        return DescentConfig(
            variant=self.variant,
            family=_family(self),
            eta=self.eta,
            schedule=self.schedule,
            max_iters=self.max_iters,
            grad_tol=self.grad_tol,
            floor=self.floor,
            normalize_loss=self.normalize_loss,
        )


class SimplexRegressor(RegressorMixin, _DescentParams):
    """Least squares with coefficients constrained to the probability simplex.

    Minimizes ``||X w - y||**2 / (2 n)`` over ``w >= 0, sum(w) = 1`` with
    mirror descent (``variant="md"``) or mirror-less mirror descent
    (``variant="mmd"``) under a deformed-logarithm link.

    Parameters
    ----------
    family : str or LinkFamily, default="natural"
        Catalog tag (see ``deformed-md families``) or a family instance.
    family_params : dict, default=None
        Hyperparameters of the family when ``family`` is a tag.
    variant : {"md", "mmd"}, default="md"
    eta : float, default=0.5
        Learning rate.
    schedule : {"constant", "inv_sqrt"}, default="constant"
    max_iters : int, default=5000
    grad_tol : float, default=1e-8
        Stop when the tangent-space sup-norm of the gradient falls below this.
    floor : float, default=1e-12
        Smallest allowed weight.
    normalize_loss : bool, default=True

    Attributes
    ----------
    coef_ : ndarray of shape (n_features,)
    trace_ : Trace
    n_iter_ : int
    converged_ : bool
    """

    def __init__(
        self,
        family="natural",
        family_params=None,
        variant="md",
        eta=0.5,
        schedule="constant",
        max_iters=5000,
        grad_tol=1e-8,
        floor=1e-12,
        normalize_loss=True,
    ):
        self.family = family
        self.family_params = family_params
        self.variant = variant
        self.eta = eta
        self.schedule = schedule
        self.max_iters = max_iters
        self.grad_tol = grad_tol
        self.floor = floor
        self.normalize_loss = normalize_loss

    def fit(self, X, y):
        X, y = check_X_y(X, y, y_numeric=True)
        self.n_features_in_ = X.shape[1]
        problem = least_squares_problem(X, y)
        self.trace_ = run(self._config(), problem)
        self.coef_ = self.trace_.w_final
        self.n_iter_ = len(self.trace_) - 1
        self.converged_ = self.trace_.converged
        return self

    def predict(self, X):
        check_is_fitted(self, "coef_")
        X = check_array(X)
        if X.shape[1] != self.n_features_in_:
            raise ValueError(
                f"X has {X.shape[1]} features, but the model was fitted with {self.n_features_in_}"
            )
        return X @ self.coef_


class OnlinePortfolio(_DescentParams):
    """Online portfolio selection by deformed mirror descent on the log-loss.

    ``fit(R)`` consumes the ``(n_rounds, n_assets)`` gross-return matrix one
    row at a time.  With ``family="natural", variant="md"`` this is the
    exponentiated-gradient portfolio.

    Attributes
    ----------
    weights_ : ndarray of shape (n_assets,)
        Allocation after the last round.
    weights_history_ : ndarray of shape (n_rounds, n_assets)
        Allocation held during each round.
    log_wealth_ : float
        Cumulative ``sum_t ln(r_t . w_t)``.
    """

    def __init__(
        self,
        family="natural",
        family_params=None,
        variant="md",
        eta=0.1,
        schedule="constant",
        floor=1e-12,
        normalize_loss=True,
    ):
        self.family = family
        self.family_params = family_params
        self.variant = variant
        self.eta = eta
        self.schedule = schedule
        self.floor = floor
        self.normalize_loss = normalize_loss

    def _config(self):
        return DescentConfig(
            variant=self.variant,
            family=_family(self),
            eta=self.eta,
            schedule=self.schedule,
            max_iters=max(self._n_rounds, 1),
            floor=self.floor,
            normalize_loss=self.normalize_loss,
        )

    def fit(self, X, y=None):
        R = check_array(X)
        self._n_rounds = R.shape[0]
        self.n_features_in_ = R.shape[1]
        trace = run(self._config(), portfolio_problem(R))
        self.weights_history_ = trace.weights
        self.weights_ = trace.w_final
        self.log_wealth_ = trace.log_wealth
        self.trace_ = trace
        return self


class DeformedLogTransformer(TransformerMixin, BaseEstimator):
    """Apply a deformed logarithm elementwise; ``inverse_transform`` applies its exponential.

    Inputs must be strictly positive.  Families without a closed-form
    exponential are inverted numerically.
    """

    def __init__(self, family="tsallis", family_params=None):
        self.family = family
        self.family_params = family_params

    def fit(self, X, y=None):
        X = check_array(X)
        self.family_ = _family(self)
        log_eval(self.family_, np.ones(1))  # validates hyperparameters
        self.n_features_in_ = X.shape[1]
        return self

    def transform(self, X):
        check_is_fitted(self, "family_")
        X = check_array(X)
        return np.asarray(log_eval(self.family_, X))

    def inverse_transform(self, X):
        check_is_fitted(self, "family_")
        X = check_array(X)
        return np.asarray(deformed_exp(self.family_, X))
