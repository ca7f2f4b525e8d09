"""CSV and JSON persistence for panels, results, and diagnostics.

Formats are deliberately plain: UTF-8, LF line endings, comma separator,
dot decimal point, no locale dependence.  Numbers are written in Python's
shortest round-trip form, so save/load round trips are bit-exact.  The
yields format carries the maturity grid (decimal years) in its header and
encodes missing cells as empty fields; the regressor format has a name
header and admits no missing cells.
"""

from __future__ import annotations

import csv
import hashlib
import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import ParseError
from .lagreg import _eval_indices, predict_panel
from .model import MacroPanel, MaturityGrid, SparseYieldPanel
from .pipeline import AnalysisResult


def _fmt(x: float) -> str:
    return repr(float(x))


def _parse_float(text: str, row: int, column: int) -> float:
    try:
        value = float(text)
    except ValueError:
        raise ParseError(f"cannot parse {text!r} as a number", row=row, column=column) from None
    if not np.isfinite(value):
        raise ParseError(f"non-finite value {text!r}", row=row, column=column)
    return value


def _read_rows(path) -> list[list[str]]:
    path = Path(path)
    if not path.exists():
        raise ParseError(f"file not found: {path}")
    with path.open(newline="", encoding="utf-8") as fh:
        rows = [row for row in csv.reader(fh)]
    if not rows:
        raise ParseError(f"empty file: {path}")
    return rows


def load_yields_csv(path) -> SparseYieldPanel:
    """Load a curve panel; header = maturities in years, empty cell = missing."""
    rows = _read_rows(path)
    header = rows[0]
    maturities = [_parse_float(cell.strip(), 1, c + 1) for c, cell in enumerate(header)]
    if any(b <= a for a, b in zip(maturities, maturities[1:])):
        raise ParseError("header maturities must be strictly increasing", row=1)
    try:
        grid = MaturityGrid(np.asarray(maturities))
    except ValueError as exc:
        raise ParseError(f"invalid maturity header: {exc}", row=1) from None

    n_mat = len(maturities)
    values = np.full((len(rows) - 1, n_mat), np.nan)
    for r, row in enumerate(rows[1:], start=2):
        if len(row) != n_mat:
            raise ParseError(f"expected {n_mat} cells, found {len(row)}", row=r)
        for c, cell in enumerate(row):
            cell = cell.strip()
            if cell:
                values[r - 2, c] = _parse_float(cell, r, c + 1)
    try:
        return SparseYieldPanel.from_values(values, grid)
    except ValueError as exc:
        raise ParseError(f"invalid panel: {exc}") from None


def load_macro_csv(path) -> MacroPanel:
    """Load a regressor panel; header = series names, no missing cells."""
    rows = _read_rows(path)
    names = [cell.strip() for cell in rows[0]]
    if any(not name for name in names):
        raise ParseError("series names must be non-empty", row=1)
    values = np.empty((len(rows) - 1, len(names)))
    for r, row in enumerate(rows[1:], start=2):
        if len(row) != len(names):
            raise ParseError(f"expected {len(names)} cells, found {len(row)}", row=r)
        for c, cell in enumerate(row):
            cell = cell.strip()
            if not cell:
                raise ParseError("missing value in regressor panel", row=r, column=c + 1)
            values[r - 2, c] = _parse_float(cell, r, c + 1)
    try:
        return MacroPanel(values=values, series_names=tuple(names))
    except ValueError as exc:
        raise ParseError(f"invalid regressor panel: {exc}") from None


def write_yields_csv(panel: SparseYieldPanel, path) -> None:
    path = Path(path)
    with path.open("w", newline="\n", encoding="utf-8") as fh:
        fh.write(",".join(_fmt(m) for m in panel.maturity_grid.maturities) + "\n")
        for t in range(panel.n_times):
            cells = [_fmt(v) if o else "" for v, o in zip(panel.values[t], panel.observed[t])]
            fh.write(",".join(cells) + "\n")


def write_macro_csv(macro: MacroPanel, path) -> None:
    path = Path(path)
    with path.open("w", newline="\n", encoding="utf-8") as fh:
        fh.write(",".join(macro.series_names) + "\n")
        for t in range(macro.n_times):
            fh.write(",".join(_fmt(v) for v in macro.values[t]) + "\n")


def sha256_digest(path) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


@dataclass(frozen=True)
class ResultBundle:
    """Plot-ready tables plus a JSON summary; every table carries its grids."""

    mean_curve: tuple        # (columns, rows)
    filter_coefficients: tuple
    spectral_density: tuple
    cross_spectral: tuple
    frequency_response: tuple
    fitted: tuple
    summary: dict

    TABLES = (
        "mean_curve", "filter_coefficients", "spectral_density",
        "cross_spectral", "frequency_response", "fitted",
    )


def build_result_bundle(result: AnalysisResult, panel: SparseYieldPanel, macro: MacroPanel,
                        input_digests: dict | None = None) -> ResultBundle:
    """Flatten an analysis into self-describing long-format tables."""
    fit = result.fit
    names = macro.series_names
    omegas = result.spectral_density.grid.nodes

    mean_rows = [(_fmt(tau), _fmt(tw), _fmt(mu))
                 for tau, tw, mu in zip(fit.eval_tau, fit.eval_warped, fit.mean_curve)]

    filt_rows = [
        (names[j], str(int(h)), _fmt(tau), _fmt(fit.filter_coef[l, r, j]))
        for j in range(fit.n_series)
        for l, h in enumerate(fit.lags)
        for r, tau in enumerate(fit.eval_tau)
    ]

    spec_rows = [
        (_fmt(om), names[a], names[b],
         _fmt(result.spectral_density.matrices[k, a, b].real),
         _fmt(result.spectral_density.matrices[k, a, b].imag))
        for k, om in enumerate(omegas)
        for a in range(len(names))
        for b in range(len(names))
    ]

    def field_rows(values):
        return [
            (_fmt(om), _fmt(tau), names[j], _fmt(values[k, r, j].real), _fmt(values[k, r, j].imag))
            for k, om in enumerate(omegas)
            for r, tau in enumerate(fit.eval_tau)
            for j in range(len(names))
        ]

    cols = _eval_indices(fit, panel.maturity_grid.maturities)
    pred = predict_panel(fit, macro)[:, cols]
    fitted_rows = [
        (str(t + 1), _fmt(tau),
         _fmt(panel.values[t, i]) if panel.observed[t, i] else "",
         _fmt(pred[t, i]))
        for t in range(panel.n_times)
        for i, tau in enumerate(panel.maturity_grid.maturities)
    ]

    cfg = result.config
    summary = {
        "r_squared": fit.r_squared,
        "n_times": panel.n_times,
        "n_maturities": panel.n_maturities,
        "n_series": macro.n_series,
        "series_names": list(names),
        "config": {
            "b_mu": cfg.b_mu, "b_r": cfg.b_r, "q": cfg.q, "n_omega": cfg.n_omega,
            "h_max": cfg.h_max, "n_eval": cfg.n_eval,
            "cond_threshold": cfg.cond_threshold, "seed": cfg.seed,
        },
        "diagnostics": {
            "max_imag_residual": result.diagnostics.max_imag_residual,
            "truncation_tail_mass": result.diagnostics.truncation_tail_mass,
            "max_condition_number": result.diagnostics.max_condition_number,
        },
        "input_digests": input_digests or {},
    }

    return ResultBundle(
        mean_curve=(("tau", "tau_warped", "mean"), mean_rows),
        filter_coefficients=(("series", "lag", "tau", "coefficient"), filt_rows),
        spectral_density=(("omega", "row_series", "col_series", "real", "imag"), spec_rows),
        cross_spectral=(("omega", "tau", "series", "real", "imag"),
                        field_rows(result.cross_spectral.values)),
        frequency_response=(("omega", "tau", "series", "real", "imag"),
                            field_rows(result.frequency_response.values)),
        fitted=(("t", "tau", "observed", "fitted"), fitted_rows),
        summary=summary,
    )


def write_results(bundle: ResultBundle, out_dir) -> list[Path]:
    """Write one CSV per table plus summary.json; returns the manifest.

    Re-running with identical inputs reproduces byte-identical files.
    """
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    manifest = []
    for name in ResultBundle.TABLES:
        columns, rows = getattr(bundle, name)
        path = out_dir / f"{name}.csv"
        with path.open("w", newline="\n", encoding="utf-8") as fh:
            fh.write(",".join(columns) + "\n")
            for row in rows:
                fh.write(",".join(row) + "\n")
        manifest.append(path)
    summary_path = out_dir / "summary.json"
    summary_path.write_text(json.dumps(bundle.summary, indent=2, sort_keys=True) + "\n",
                            encoding="utf-8")
    manifest.append(summary_path)
    return manifest
