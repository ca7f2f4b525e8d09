"""Shared domain types: panels, grids, configuration, and the fitted model.

Pure data module. Every type validates its invariants on construction and is
immutable afterwards (backing arrays are marked read-only), so instances can
be shared across concurrent workers without copying.

Units follow the monthly yield-curve convention: maturities in years, curve
and regressor values in percent, lags in sampling periods (months).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import TYPE_CHECKING, Optional

import numpy as np

if TYPE_CHECKING:
    from .warp import Warp


def _frozen(values, dtype=float) -> np.ndarray:
    out = np.array(values, dtype=dtype)
    out.flags.writeable = False
    return out


@dataclass(frozen=True)
class MaturityGrid:
    """Ordered quoted maturities tau_1 < ... < tau_I (years), I >= 3."""

    maturities: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.maturities, dtype=float)
        if m.ndim != 1:
            raise ValueError("maturities must be a one-dimensional sequence")
        if m.size < 3:
            raise ValueError(f"need at least 3 maturities for local-linear fits, got {m.size}")
        if not np.all(np.isfinite(m)):
            raise ValueError("maturities must all be finite")
        if m[0] < 0:
            raise ValueError("maturities must be nonnegative")
        if np.any(np.diff(m) <= 0):
            raise ValueError("maturities must be strictly increasing")
        object.__setattr__(self, "maturities", _frozen(m))

    def __len__(self) -> int:
        return self.maturities.size

    @property
    def n_maturities(self) -> int:
        return self.maturities.size

    @property
    def tau_min(self) -> float:
        return float(self.maturities[0])

    @property
    def tau_max(self) -> float:
        return float(self.maturities[-1])


@dataclass(frozen=True)
class SparseYieldPanel:
    """T x I panel of noisy curve observations on a fixed maturity grid.

    ``observed`` marks the available cells; ``values`` is NaN wherever a
    cell is missing.  Every row and every column must contain at least one
    observation.
    """

    values: np.ndarray
    observed: np.ndarray
    maturity_grid: MaturityGrid

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float)
        observed = np.asarray(self.observed, dtype=bool)
        if values.ndim != 2:
            raise ValueError("panel values must be a T x I matrix")
        if observed.shape != values.shape:
            raise ValueError("observed mask must match the shape of values")
        if values.shape[1] != self.maturity_grid.n_maturities:
            raise ValueError(
                f"panel has {values.shape[1]} columns but the maturity grid has "
                f"{self.maturity_grid.n_maturities} points"
            )
        if values.shape[0] < 1:
            raise ValueError("panel must contain at least one time point")
        if not observed.any(axis=1).all():
            t = int(np.flatnonzero(~observed.any(axis=1))[0])
            raise ValueError(f"every row needs at least one observation; row {t + 1} is empty")
        if not observed.any(axis=0).all():
            i = int(np.flatnonzero(~observed.any(axis=0))[0])
            raise ValueError(f"every maturity needs at least one observation; column {i + 1} is empty")
        if not np.all(np.isfinite(values[observed])):
            raise ValueError("observed values must all be finite")
        values = np.where(observed, values, np.nan)
        object.__setattr__(self, "values", _frozen(values))
        object.__setattr__(self, "observed", _frozen(observed, dtype=bool))

    @classmethod
    def from_values(cls, values, maturity_grid: MaturityGrid) -> "SparseYieldPanel":
        """Build a panel from a matrix where NaN encodes a missing cell."""
        values = np.asarray(values, dtype=float)
        return cls(values=values, observed=np.isfinite(values), maturity_grid=maturity_grid)

    @property
    def n_times(self) -> int:
        return self.values.shape[0]

    @property
    def n_maturities(self) -> int:
        return self.values.shape[1]


@dataclass(frozen=True)
class MacroPanel:
    """T x d panel of scalar regressor series, fully observed."""

    values: np.ndarray
    series_names: tuple[str, ...]

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float)
        if values.ndim != 2:
            raise ValueError("regressor values must be a T x d matrix")
        if values.shape[0] < 1 or values.shape[1] < 1:
            raise ValueError("regressor panel must be non-empty")
        if not np.all(np.isfinite(values)):
            raise ValueError("regressor panel admits no missing or non-finite entries")
        names = tuple(str(s) for s in self.series_names)
        if len(names) != values.shape[1]:
            raise ValueError(f"got {len(names)} series names for {values.shape[1]} series")
        object.__setattr__(self, "values", _frozen(values))
        object.__setattr__(self, "series_names", names)

    @property
    def n_times(self) -> int:
        return self.values.shape[0]

    @property
    def n_series(self) -> int:
        return self.values.shape[1]


@dataclass(frozen=True)
class FrequencyGrid:
    """Equispaced frequency nodes omega_k = -pi + 2*pi*k/N, k = 0..N-1.

    The grid covers [-pi, pi) with rectangle-rule weight 2*pi/N per node,
    which integrates e^{i*h*omega} exactly for |h| < N.  Callers that
    integrate up to lag H must therefore use N >= 2H + 2.
    """

    n_nodes: int

    def __post_init__(self):
        n = int(self.n_nodes)
        if n < 2 or n % 2 != 0:
            raise ValueError(f"frequency grid size must be even and >= 2, got {n}")
        object.__setattr__(self, "n_nodes", n)

    @property
    def nodes(self) -> np.ndarray:
        return -np.pi + 2.0 * np.pi * np.arange(self.n_nodes) / self.n_nodes

    @property
    def quadrature_weight(self) -> float:
        return 2.0 * np.pi / self.n_nodes


@dataclass(frozen=True)
class Config:
    """Estimation settings.

    b_mu, b_r      mean / cross-covariance smoother bandwidths, in warped
                   coordinates (fractions of [0, 1])
    q              spectral lag-window span (weights vanish for |h| >= q)
    n_omega        frequency grid size
    h_max          filter truncation lag: coefficients kept for |h| <= h_max
    n_eval         number of curve evaluation points (equispaced in warped
                   coordinates)
    cond_threshold condition-number ceiling for spectral matrix solves
    seed           RNG seed for the simulator
    """

    b_mu: float
    b_r: float
    q: int
    n_omega: int = 512
    h_max: int = 12
    n_eval: int = 101
    cond_threshold: float = 1e8
    seed: int = 0

    def __post_init__(self):
        if not (0.0 < self.b_mu <= 1.0):
            raise ValueError(f"b_mu must lie in (0, 1], got {self.b_mu}")
        if not (0.0 < self.b_r <= 1.0):
            raise ValueError(f"b_r must lie in (0, 1], got {self.b_r}")
        if self.q < 1:
            raise ValueError(f"q must be a positive integer, got {self.q}")
        if self.h_max < 0:
            raise ValueError(f"h_max must be nonnegative, got {self.h_max}")
        if self.n_eval < 2:
            raise ValueError(f"n_eval must be at least 2, got {self.n_eval}")
        if self.cond_threshold <= 1.0:
            raise ValueError(f"cond_threshold must exceed 1, got {self.cond_threshold}")
        if self.n_omega % 2 != 0 or self.n_omega < 2 * self.h_max + 2:
            raise ValueError(
                f"n_omega must be even and >= 2*h_max + 2 = {2 * self.h_max + 2}, got {self.n_omega}"
            )

    @classmethod
    def defaults(cls, n_times: int, n_maturities: int, **overrides) -> "Config":
        """Default settings for a T x I panel.

        q = ceil(sqrt(T)); bandwidths span two inter-point spacings of the
        equidistant warped maturity grid, so every window holds at least two
        support points.
        """
        base = dict(
            b_mu=2.0 / (n_maturities - 1),
            b_r=2.0 / (n_maturities - 1),
            q=math.ceil(math.sqrt(n_times)),
        )
        base.update(overrides)
        return cls(**base)


@dataclass(frozen=True)
class LaggedRegressionFit:
    """Fitted lagged-regression filter on a grid of evaluation points.

    filter_coef[l, r, j] holds the lag lags[l] coefficient of regressor j at
    evaluation point r.  The intercept is stored implicitly: together with
    ``mean_curve`` and ``macro_means`` it is recoverable via
    :meth:`intercept_curve`.
    """

    filter_coef: np.ndarray     # (2H+1, R, d)
    lags: np.ndarray            # (2H+1,), -H..H
    eval_tau: np.ndarray        # (R,) maturities
    eval_warped: np.ndarray     # (R,) warped coordinates in [0, 1]
    mean_curve: np.ndarray      # (R,) estimated mean at eval_tau
    macro_means: np.ndarray     # (d,)
    warp: "Warp"
    r_squared: Optional[float] = None

    def __post_init__(self):
        coef = np.asarray(self.filter_coef, dtype=float)
        lags = np.asarray(self.lags, dtype=int)
        eval_tau = np.asarray(self.eval_tau, dtype=float)
        eval_warped = np.asarray(self.eval_warped, dtype=float)
        mean_curve = np.asarray(self.mean_curve, dtype=float)
        macro_means = np.asarray(self.macro_means, dtype=float)
        if coef.ndim != 3:
            raise ValueError("filter_coef must have shape (n_lags, n_eval, n_series)")
        n_lags, n_eval, _ = coef.shape
        if lags.shape != (n_lags,):
            raise ValueError("lags must match the first axis of filter_coef")
        if eval_tau.shape != (n_eval,) or eval_warped.shape != (n_eval,) or mean_curve.shape != (n_eval,):
            raise ValueError("evaluation grids and mean curve must match filter_coef")
        if not np.all(np.isfinite(coef)):
            raise ValueError("filter coefficients must be finite")
        if not (np.all(np.isfinite(mean_curve)) and np.all(np.isfinite(macro_means))):
            raise ValueError("stored means must be finite")
        if self.r_squared is not None and not (self.r_squared <= 1.0):
            raise ValueError(f"r_squared cannot exceed 1, got {self.r_squared}")
        object.__setattr__(self, "filter_coef", _frozen(coef))
        object.__setattr__(self, "lags", _frozen(lags, dtype=int))
        object.__setattr__(self, "eval_tau", _frozen(eval_tau))
        object.__setattr__(self, "eval_warped", _frozen(eval_warped))
        object.__setattr__(self, "mean_curve", _frozen(mean_curve))
        object.__setattr__(self, "macro_means", _frozen(macro_means))

    @property
    def n_series(self) -> int:
        return self.filter_coef.shape[2]

    @property
    def h_max(self) -> int:
        return int(self.lags.max())

    def lag_index(self, h: int) -> int:
        idx = np.flatnonzero(self.lags == h)
        if idx.size == 0:
            raise ValueError(f"lag {h} outside the stored range {self.lags[0]}..{self.lags[-1]}")
        return int(idx[0])

    def intercept_curve(self) -> np.ndarray:
        """Implied intercept a(tau) = mean_curve - sum_j sum_h b_h^j * mean_X^j."""
        return self.mean_curve - self.filter_coef.sum(axis=0) @ self.macro_means
