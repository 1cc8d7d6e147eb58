"""scikit-learn style wrappers.

``EffectiveDistances`` is a transformer from base distances to the normalised
throughput-scaled matrix; ``HopfieldRouter`` fits a network to that matrix and
predicts a route.  They chain with :func:`sklearn.pipeline.make_pipeline`::

    pipe = make_pipeline(EffectiveDistances(throughput=table), HopfieldRouter())
    route = pipe.fit(D).predict(D)
"""

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .hopfield import SolverConfig, build_weights, lyapunov_energy, run_restarts
from .route import extract_route
from .traffic import RngStream, effective_distances, sample_gaussian_matrix
from .validation import check_square_matrix


class EffectiveDistances(TransformerMixin, BaseEstimator):
    """Scale base distances by a throughput table and normalise to max |d| = 1.

    When ``throughput`` is None a Gaussian table is drawn at fit time from
    ``random_state``.
    """

    def __init__(self, throughput=None, mode="code-faithful", clamp_negative=False,
                 mean=0.5, std=0.25, random_state=42):
        self.throughput = throughput
        self.mode = mode
        self.clamp_negative = clamp_negative
        self.mean = mean
        self.std = std
        self.random_state = random_state

    def fit(self, X, y=None):
        X = check_square_matrix(X)
        n = X.shape[0]
        if self.throughput is None:
            rng = RngStream(self.random_state).substream("throughput")
            self.throughput_ = sample_gaussian_matrix(rng, n, self.mean, self.std)
        else:
            self.throughput_ = check_square_matrix(self.throughput, "throughput")
            if self.throughput_.shape != X.shape:
                raise ValueError(
                    f"throughput is {self.throughput_.shape}, distances are {X.shape}"
                )
        self.n_features_in_ = n
        return self

    def transform(self, X):
        check_is_fitted(self, "throughput_")
        X = check_square_matrix(X)
        if X.shape[0] != self.n_features_in_:
            raise ValueError(f"X has {X.shape[0]} nodes, fitted on {self.n_features_in_}")
        return effective_distances(X, self.throughput_, self.mode, self.clamp_negative)


class HopfieldRouter(BaseEstimator):
    """Hop-constrained route finder driven by binary Hopfield dynamics.

    Parameters mirror :class:`~hoproute.hopfield.SolverConfig`; ``n_nodes``
    is taken from the matrix passed to ``fit``.

    Attributes set by ``fit``: ``config_``, ``weights_``, ``result_``,
    ``route_``, ``validity_``, ``energy_trace_``, ``best_energy_``,
    ``converged_``.
    """

    def __init__(self, n_hops=None, threshold=31.0, inhib_weight=-3.0, sweeps=36,
                 restarts=1, random_state=42, early_stop=False, n_jobs=1):
        self.n_hops = n_hops
        self.threshold = threshold
        self.inhib_weight = inhib_weight
        self.sweeps = sweeps
        self.restarts = restarts
        self.random_state = random_state
        self.early_stop = early_stop
        self.n_jobs = n_jobs

    def _config(self, n_nodes):
        return SolverConfig(
            n_nodes=n_nodes, n_hops=self.n_hops, threshold=self.threshold,
            inhib_weight=self.inhib_weight, sweeps=self.sweeps, restarts=self.restarts,
            seed=self.random_state, early_stop=self.early_stop, n_jobs=self.n_jobs,
        )

    def fit(self, X, y=None):
        X = check_square_matrix(X)
        self.config_ = self._config(X.shape[0])
        self.weights_ = build_weights(X, self.config_)
        self.result_ = run_restarts(self.config_, X)
        self.route_, self.validity_ = extract_route(self.result_.best_state, self.config_)
        self.energy_trace_ = self.result_.energy_trace
        self.best_energy_ = self.result_.best_energy
        self.converged_ = self.result_.converged
        self.n_features_in_ = X.shape[0]
        return self

    def _as_hops(self, route, report):
        # one entry per hop, -1 where the hop did not decode to a single node
        out = np.full(self.config_.n_hops, -1, dtype=int)
        bad = {v["hop"] for v in report.hop_violations}
        it = iter(route)
        for hop in range(self.config_.n_hops):
            if hop not in bad:
                out[hop] = next(it)
        return out

    def predict(self, X):
        """Node per hop for ``X`` (-1 for undecodable hops), using fitted parameters."""
        check_is_fitted(self, "config_")
        X = check_square_matrix(X)
        if X.shape[0] != self.n_features_in_:
            raise ValueError(f"X has {X.shape[0]} nodes, fitted on {self.n_features_in_}")
        result = run_restarts(self.config_, X)
        route, report = extract_route(result.best_state, self.config_)
        return self._as_hops(route, report)

    def fit_predict(self, X, y=None):
        self.fit(X)
        return self._as_hops(self.route_, self.validity_)

    def energy(self, state):
        check_is_fitted(self, "weights_")
        return lyapunov_energy(state, self.weights_, self.config_.threshold)

    def score(self, X, y=None):
        """Negative best energy reached on ``X``; higher is better."""
        check_is_fitted(self, "config_")
        return -run_restarts(self.config_, check_square_matrix(X)).best_energy
