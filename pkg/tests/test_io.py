import json
from dataclasses import replace

import numpy as np
import pytest

from sparselag import (ParseError, analyze, build_result_bundle, load_macro_csv,
                       load_yields_csv, r_squared, recovery_spec, simulate_lagged_regression,
                       write_macro_csv, write_results, write_yields_csv)
from sparselag.io import sha256_digest
from conftest import random_macro_panel, random_sparse_panel


class TestLoadYields:
    def test_us_header_and_shape(self, tmp_path):
        header = "0.0833,0.5,1,2,3,5,7,10,30"
        body = "\n".join(",".join(str(5.0 + 0.01 * t + 0.1 * i) for i in range(9))
                         for t in range(192))
        path = tmp_path / "y.csv"
        path.write_text(header + "\n" + body + "\n")
        panel = load_yields_csv(path)
        assert panel.n_times == 192 and panel.n_maturities == 9
        assert panel.maturity_grid.tau_max == 30.0

    def test_toy_parse_with_missing_cell(self, tmp_path):
        path = tmp_path / "y.csv"
        path.write_text("1,2\n3.5,4.0\n5.0,\n")
        # two maturities fail the I >= 3 grid invariant; use three
        path.write_text("1,2,3\n3.5,4.0,4.5\n5.0,,6.0\n")
        panel = load_yields_csv(path)
        assert panel.n_times == 2 and panel.n_maturities == 3
        assert not panel.observed[1, 1]
        assert panel.values[1, 0] == 5.0

    def test_non_increasing_header_rejected(self, tmp_path):
        path = tmp_path / "y.csv"
        path.write_text("2,1,3\n1,2,3\n")
        with pytest.raises(ParseError, match="strictly increasing"):
            load_yields_csv(path)

    def test_bad_number_locates_cell(self, tmp_path):
        path = tmp_path / "y.csv"
        path.write_text("1,2,3\n1.0,oops,3.0\n")
        with pytest.raises(ParseError, match=r"row 2, column 2"):
            load_yields_csv(path)

    def test_ragged_row_rejected(self, tmp_path):
        path = tmp_path / "y.csv"
        path.write_text("1,2,3\n1.0,2.0\n")
        with pytest.raises(ParseError, match="row 2"):
            load_yields_csv(path)

    def test_missing_file(self, tmp_path):
        with pytest.raises(ParseError, match="not found"):
            load_yields_csv(tmp_path / "absent.csv")


class TestLoadMacro:
    def test_three_series(self, tmp_path):
        path = tmp_path / "m.csv"
        rows = "\n".join(f"{t},{t + 1},{t + 2}" for t in range(192))
        path.write_text("IP,INF,FFR\n" + rows + "\n")
        macro = load_macro_csv(path)
        assert macro.n_times == 192 and macro.n_series == 3
        assert macro.series_names == ("IP", "INF", "FFR")

    def test_single_column(self, tmp_path):
        path = tmp_path / "m.csv"
        path.write_text("X\n1\n2\n3\n4\n5\n")
        macro = load_macro_csv(path)
        assert macro.n_times == 5 and macro.n_series == 1

    def test_blank_cell_rejected_with_location(self, tmp_path):
        path = tmp_path / "m.csv"
        path.write_text("a,b\n1.0,2.0\n3.0,\n")
        with pytest.raises(ParseError, match=r"row 3, column 2"):
            load_macro_csv(path)


class TestRoundTrips:
    def test_yields_round_trip_bit_exact(self, rng, tmp_path):
        panel = random_sparse_panel(rng, 25, 5)
        path = tmp_path / "y.csv"
        write_yields_csv(panel, path)
        back = load_yields_csv(path)
        assert np.array_equal(back.observed, panel.observed)
        assert np.array_equal(back.values[back.observed], panel.values[panel.observed])
        assert np.array_equal(back.maturity_grid.maturities, panel.maturity_grid.maturities)

    def test_macro_round_trip_bit_exact(self, rng, tmp_path):
        macro = random_macro_panel(rng, 40, 3)
        path = tmp_path / "m.csv"
        write_macro_csv(macro, path)
        back = load_macro_csv(path)
        assert np.array_equal(back.values, macro.values)
        assert back.series_names == macro.series_names


@pytest.fixture(scope="module")
def small_analysis():
    spec = replace(recovery_spec(seed=8), n_times=160)
    panel, macro, _ = simulate_lagged_regression(spec)
    result = analyze(panel, macro)
    return result, panel, macro


class TestWriteResults:
    def test_manifest_lists_all_tables(self, small_analysis, tmp_path):
        result, panel, macro = small_analysis
        bundle = build_result_bundle(result, panel, macro, {"yields": "abc", "macro": "def"})
        manifest = write_results(bundle, tmp_path / "out")
        names = sorted(p.name for p in manifest)
        assert names == sorted([
            "mean_curve.csv", "filter_coefficients.csv", "spectral_density.csv",
            "cross_spectral.csv", "frequency_response.csv", "fitted.csv", "summary.json",
        ])

    def test_rerun_is_byte_identical(self, small_analysis, tmp_path):
        result, panel, macro = small_analysis
        bundle = build_result_bundle(result, panel, macro)
        first = {p.name: sha256_digest(p) for p in write_results(bundle, tmp_path / "a")}
        second = {p.name: sha256_digest(p) for p in write_results(bundle, tmp_path / "b")}
        assert first == second

    def test_summary_carries_config_and_diagnostics(self, small_analysis, tmp_path):
        result, panel, macro = small_analysis
        bundle = build_result_bundle(result, panel, macro, {"yields": "sha"})
        write_results(bundle, tmp_path / "out")
        summary = json.loads((tmp_path / "out" / "summary.json").read_text())
        assert summary["config"]["q"] == result.config.q
        assert summary["input_digests"]["yields"] == "sha"
        assert 0.0 < summary["r_squared"] <= 1.0
        assert summary["diagnostics"]["max_imag_residual"] >= 0.0

    def test_zeroed_filter_reports_r_squared_zero(self, small_analysis, tmp_path):
        result, panel, macro = small_analysis
        zero_fit = replace(result.fit, filter_coef=np.zeros_like(result.fit.filter_coef),
                           r_squared=None)
        zero_fit = replace(zero_fit, r_squared=r_squared(panel, zero_fit, macro))
        zeroed = replace(result, fit=zero_fit)
        bundle = build_result_bundle(zeroed, panel, macro)
        write_results(bundle, tmp_path / "out")
        summary = json.loads((tmp_path / "out" / "summary.json").read_text())
        assert summary["r_squared"] == 0.0

    def test_tables_carry_their_grids(self, small_analysis, tmp_path):
        result, panel, macro = small_analysis
        bundle = build_result_bundle(result, panel, macro)
        write_results(bundle, tmp_path / "out")
        first = (tmp_path / "out" / "filter_coefficients.csv").read_text().splitlines()
        assert first[0] == "series,lag,tau,coefficient"
        spec_head = (tmp_path / "out" / "spectral_density.csv").read_text().splitlines()[0]
        assert spec_head == "omega,row_series,col_series,real,imag"
