"""Independent reference implementations used to pin expected values.

Everything here is deliberately naive (plain loops, library least-squares)
and shares no code with the production paths it checks.
"""

import numpy as np


def naive_spectral_density(matrices, lags, weights, nodes):
    """Triple-loop lag-window spectral density, no vectorization."""
    n_lags, d, _ = matrices.shape
    out = np.zeros((len(nodes), d, d), dtype=complex)
    for k, omega in enumerate(nodes):
        acc = np.zeros((d, d), dtype=complex)
        for l in range(n_lags):
            phase = complex(np.cos(lags[l] * omega), -np.sin(lags[l] * omega))
            for a in range(d):
                for b in range(d):
                    acc[a, b] += weights[l] * matrices[l, a, b] * phase
        out[k] = acc / (2.0 * np.pi)
    return out


def lstsq_locallin(x, z, w, x0):
    """Weighted local-linear fit via library least squares on sqrt-weights."""
    keep = w > 0
    sw = np.sqrt(w[keep])
    design = np.column_stack([sw, sw * (x0 - x[keep])])
    if np.iscomplexobj(z):
        design = design.astype(complex)
    coef, *_ = np.linalg.lstsq(design, sw * z[keep], rcond=None)
    return coef[0], coef[1]


def loop_autocovariance(values, h):
    """Definition-level empirical autocovariance, divisor T."""
    t_len, d = values.shape
    mu = values.mean(axis=0)
    acc = np.zeros((d, d))
    if h >= 0:
        for t in range(t_len - h):
            acc += np.outer(values[t + h] - mu, values[t] - mu)
    else:
        return loop_autocovariance(values, -h).T
    return acc / t_len


def loop_prediction(fit, macro_values, macro_means, t_one_based):
    """Definition-level prediction with explicit mean imputation."""
    t_len = macro_values.shape[0]
    pred = fit.mean_curve.copy()
    for l, h in enumerate(fit.lags):
        s = t_one_based - int(h)
        if 1 <= s <= t_len:
            xc = macro_values[s - 1] - macro_means
        else:
            xc = np.zeros(macro_values.shape[1])
        for j in range(macro_values.shape[1]):
            pred = pred + fit.filter_coef[l, :, j] * xc[j]
    return pred
