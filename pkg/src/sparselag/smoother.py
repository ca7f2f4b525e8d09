"""Epanechnikov kernel and closed-form local-linear weighted least squares.

The minimizer of sum_m w_m |z_m - c0 - c1*(x0 - x_m)|^2 follows from the
2x2 normal equations: with S_p = sum w_m (x0 - x_m)^p and
T_p = sum w_m (x0 - x_m)^p z_m,

    c0 = (S2*T0 - S1*T1) / (S0*S2 - S1^2)
    c1 = (S0*T1 - S1*T0) / (S0*S2 - S1^2)

The same formula serves real and complex responses, because the weights and
the design are real.  The intercept c0 is the smoothed value.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import SingularDesign
from .model import SparseYieldPanel
from .warp import Warp, warp_inverse

# Relative determinant floor: catches exact collinearity, tolerates roundoff.
_SINGULAR_REL_TOL = 1e-12


def epanechnikov(v):
    """K(v) = 3/4*(1 - v^2) on [-1, 1], zero outside."""
    v = np.asarray(v, dtype=float)
    out = np.where(np.abs(v) <= 1.0, 0.75 * (1.0 - v * v), 0.0)
    return float(out) if out.ndim == 0 else out


@dataclass(frozen=True)
class LocalLinearProblem:
    """One local-linear fit: support x, responses z, outer weights, point x0.

    The effective weight of point m is outer_weights[m] * K((x0 - x_m)/bandwidth);
    points outside the bandwidth window get exactly zero weight.
    """

    x: np.ndarray
    z: np.ndarray
    x0: float
    bandwidth: float
    outer_weights: Optional[np.ndarray] = None

    def __post_init__(self):
        if self.bandwidth <= 0:
            raise ValueError(f"bandwidth must be positive, got {self.bandwidth}")
        x = np.asarray(self.x, dtype=float)
        z = np.asarray(self.z)
        if x.shape != z.shape or x.ndim != 1:
            raise ValueError("support and responses must be one-dimensional and equally long")
        if self.outer_weights is not None:
            ow = np.asarray(self.outer_weights, dtype=float)
            if ow.shape != x.shape:
                raise ValueError("outer weights must match the support")
            if np.any(ow < 0):
                raise ValueError("outer weights must be nonnegative")

    def weights(self) -> np.ndarray:
        w = epanechnikov((self.x0 - np.asarray(self.x, dtype=float)) / self.bandwidth)
        if self.outer_weights is not None:
            w = w * np.asarray(self.outer_weights, dtype=float)
        return w


def _min_bandwidth_hint(x0: float, x: np.ndarray, outer: Optional[np.ndarray]) -> Optional[float]:
    candidates = np.unique(np.abs(x0 - x[outer > 0])) if outer is not None else np.unique(np.abs(x0 - x))
    return float(candidates[1]) if candidates.size >= 2 else None


def solve_normal_equations(s0, s1, s2, t0, t1, context=""):
    """Solve the 2x2 local-linear system; raise SingularDesign if degenerate."""
    det = s0 * s2 - s1 * s1
    if det <= _SINGULAR_REL_TOL * s0 * s2:
        raise SingularDesign("local-linear design is singular" + context)
    c0 = (s2 * t0 - s1 * t1) / det
    c1 = (s0 * t1 - s1 * t0) / det
    return c0, c1


def locallin_fit(problem: LocalLinearProblem):
    """Weighted local-linear fit; returns (c0, c1) in the response's number field."""
    x = np.asarray(problem.x, dtype=float)
    z = np.asarray(problem.z)
    w = problem.weights()

    support = w > 0
    if np.unique(x[support]).size < 2:
        raise SingularDesign(
            "fewer than 2 distinct support points inside the bandwidth window",
            min_bandwidth=_min_bandwidth_hint(problem.x0, x, problem.outer_weights),
            eval_point=problem.x0,
        )

    u = problem.x0 - x
    s0 = float(np.sum(w))
    s1 = float(np.sum(w * u))
    s2 = float(np.sum(w * u * u))
    t0 = np.sum(w * z)
    t1 = np.sum(w * u * z)
    try:
        return solve_normal_equations(s0, s1, s2, t0, t1)
    except SingularDesign:
        raise SingularDesign(
            "local-linear normal matrix is numerically singular",
            min_bandwidth=_min_bandwidth_hint(problem.x0, x, problem.outer_weights),
            eval_point=problem.x0,
        ) from None


def mean_curve_warped(panel: SparseYieldPanel, b_mu: float, eval_warped) -> np.ndarray:
    """Local-linear mean curve at warped evaluation points.

    Smooths the pooled cloud {(tau_tilde_i, y_ti) : t, observed i}.  Because
    every time point shares the same warped support, the cloud collapses to
    per-maturity counts and sums without changing the fit.
    """
    eval_warped = np.atleast_1d(np.asarray(eval_warped, dtype=float))
    n_i = panel.observed.sum(axis=0).astype(float)
    sum_i = np.where(panel.observed, panel.values, 0.0).sum(axis=0)
    tau_tilde = np.linspace(0.0, 1.0, panel.n_maturities)

    out = np.empty(eval_warped.size)
    for r, x0 in enumerate(eval_warped):
        u = x0 - tau_tilde
        k = epanechnikov(u / b_mu)
        support = (k > 0) & (n_i > 0)
        if np.unique(tau_tilde[support]).size < 2:
            raise SingularDesign(
                "mean smoother window holds fewer than 2 observed maturities",
                min_bandwidth=_min_bandwidth_hint(x0, tau_tilde, n_i),
                eval_point=x0,
            )
        wk = k * n_i
        s0 = float(np.sum(wk))
        s1 = float(np.sum(wk * u))
        s2 = float(np.sum(wk * u * u))
        t0 = float(np.sum(k * sum_i))
        t1 = float(np.sum(k * u * sum_i))
        c0, _ = solve_normal_equations(s0, s1, s2, t0, t1, context=f" at warped point {x0:.6g}")
        out[r] = c0
    return out


def estimate_mean_curve(panel: SparseYieldPanel, warp: Warp, b_mu: float, eval_points) -> np.ndarray:
    """Mean curve mu_Y(tau) at the given maturities (smoothing happens in warped space)."""
    eval_points = np.atleast_1d(np.asarray(eval_points, dtype=float))
    eval_warped = np.asarray(warp_inverse(warp, eval_points), dtype=float)
    return mean_curve_warped(panel, b_mu, eval_warped)
