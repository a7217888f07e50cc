import json
from pathlib import Path

import numpy as np
import pytest

from avloc.cli import main
from avloc.scenarios import (ConfigError, bundled_config, load_config,
                             parse_overrides, reference_rmse, reproduce_figure,
                             run_scenario, sweep)

POINT_CONFIG = """
[scenario]
name = point
kind = point_decode

[network]
bias = 12.3

[stimuli]
auditory = 0
visual = 20

[outputs]
dir = point
"""

FIT_CONFIG = """
[scenario]
name = smallfit
kind = disparity_fit

[network]
bias = 10.5

[stimuli]
auditory = 0
visual_min = -30
visual_max = 30
visual_step = 10

[oracle]
p_common = 0.5
n_samples = 400
seed = 12

[outputs]
dir = smallfit
"""


def _write(tmp_path, text, name="scenario.ini"):
    path = tmp_path / name
    path.write_text(text)
    return path


def test_point_decode_scenario_row(tmp_path):
    summary = run_scenario(_write(tmp_path, POINT_CONFIG), tmp_path)
    assert summary["metrics"]["est_a"] == 13.0
    assert summary["metrics"]["est_v"] == 20.0
    table = (tmp_path / "point" / "estimates.csv").read_text().splitlines()
    assert table[0] == "s_a,s_v,bias,est_a,est_v"
    assert table[1] == "0.000000,20.000000,12.300000,13.000000,20.000000"


def test_scenario_output_is_byte_identical_across_runs(tmp_path):
    cfg = _write(tmp_path, FIT_CONFIG)
    run_scenario(cfg, tmp_path / "a")
    run_scenario(cfg, tmp_path / "b")
    for name in ("sweep.csv", "summary.json"):
        first = (tmp_path / "a" / "smallfit" / name).read_bytes()
        second = (tmp_path / "b" / "smallfit" / name).read_bytes()
        assert first == second


def test_disparity_fit_schema(tmp_path):
    run_scenario(_write(tmp_path, FIT_CONFIG), tmp_path)
    header = (tmp_path / "smallfit" / "sweep.csv").read_text().splitlines()[0]
    assert header == "p_common,bias,visual_loc,disparity,net_a,net_v,oracle_a,oracle_v"


def test_summary_echoes_resolved_network(tmp_path):
    run_scenario(_write(tmp_path, POINT_CONFIG), tmp_path)
    summary = json.loads((tmp_path / "point" / "summary.json").read_text())
    # defaults are injected and echoed alongside the overridden bias
    assert summary["network"]["bias"] == 12.3
    assert summary["network"]["gain_a"] == 140.0
    assert summary["network"]["scale_mv"] == 2.0


def test_missing_key_reports_field_path(tmp_path):
    broken = POINT_CONFIG.replace("visual = 20\n", "")
    with pytest.raises(ConfigError, match=r"stimuli\.visual"):
        run_scenario(_write(tmp_path, broken), tmp_path)


def test_unknown_network_key_reports_field_path(tmp_path):
    broken = POINT_CONFIG.replace("bias = 12.3", "blas = 12.3")
    with pytest.raises(ConfigError, match=r"network\.blas"):
        load_config(_write(tmp_path, broken))


def test_unknown_kind_rejected(tmp_path):
    broken = POINT_CONFIG.replace("kind = point_decode", "kind = mystery")
    with pytest.raises(ConfigError, match="scenario.kind"):
        load_config(_write(tmp_path, broken))


def test_bundled_configs_all_parse():
    for name in ("fig2", "fig3", "fig4", "fig5", "fig6_p05", "fig6_p95",
                 "fig6_p005", "fig7", "fig8", "fig9", "fig10_p05",
                 "fig10_p95", "fig10_p005", "fig11", "fig12"):
        cfg = bundled_config(name)
        assert cfg.name == name


def test_unknown_figure_id():
    with pytest.raises(ConfigError, match="unknown figure"):
        reproduce_figure("fig99")


def test_parse_overrides():
    parsed = parse_overrides(["network.gain_a=100,120", "oracle.seed=3"])
    assert parsed[("network", "gain_a")] == ["100", "120"]
    assert parsed[("oracle", "seed")] == ["3"]
    with pytest.raises(ConfigError):
        parse_overrides(["gain_a=100"])


def test_sweep_products_and_index(tmp_path):
    cfg = _write(tmp_path, FIT_CONFIG)
    summaries = sweep(cfg, ["oracle.seed=12,13"], tmp_path / "out")
    assert len(summaries) == 2
    index = (tmp_path / "out" / "sweep_index.csv").read_text().splitlines()
    assert index[0] == "point,oracle.seed,dir"
    assert len(index) == 3
    for i in range(2):
        assert (tmp_path / "out" / "smallfit" / f"point_{i:03d}" / "sweep.csv").exists()


def test_sweep_rejects_unknown_key(tmp_path):
    cfg = _write(tmp_path, FIT_CONFIG)
    with pytest.raises(ConfigError, match=r"oracle\.bogus"):
        sweep(cfg, ["oracle.bogus=1"], tmp_path)


def test_sweep_empty_overrides_equals_run(tmp_path):
    cfg = _write(tmp_path, FIT_CONFIG)
    summaries = sweep(cfg, [], tmp_path / "s")
    run_scenario(cfg, tmp_path / "r")
    single = json.loads(
        (tmp_path / "s" / "smallfit" / "point_000" / "summary.json").read_text())
    plain = json.loads((tmp_path / "r" / "smallfit" / "summary.json").read_text())
    assert len(summaries) == 1
    assert single["metrics"] == plain["metrics"]


def test_seed_override_only_changes_stochastic_columns(tmp_path):
    cfg = _write(tmp_path, FIT_CONFIG)
    sweep(cfg, ["oracle.seed=12,99"], tmp_path / "det")
    base = tmp_path / "det" / "smallfit"
    rows = [np.loadtxt(base / f"point_{i:03d}" / "sweep.csv", delimiter=",",
                       skiprows=1) for i in range(2)]
    net_cols = slice(4, 6)
    oracle_cols = slice(6, 8)
    assert np.array_equal(rows[0][:, net_cols], rows[1][:, net_cols])
    assert not np.array_equal(rows[0][:, oracle_cols], rows[1][:, oracle_cols])


def test_reference_rmse_with_synthetic_fixture(tmp_path):
    fixture = tmp_path / "ref.csv"
    fixture.write_text("trial,shift\n1,4.0\n2,6.0\n")
    rows = [(1, "train", 0, 0, 0.0, 8.0, 5.0, 5.0),
            (2, "train", 2, 0, 0.0, 8.0, 5.0, 5.0),
            (99, "probe", 40, 1, 0.0, None, 2.0, 2.0)]
    # residuals 1.0 and -1.0 over the two matched trials
    assert reference_rmse(fixture, rows) == pytest.approx(1.0)


def test_cli_run_exit_codes(tmp_path, capsys):
    cfg = _write(tmp_path, POINT_CONFIG)
    assert main(["run", str(cfg), "--out", str(tmp_path / "cli")]) == 0
    assert (tmp_path / "cli" / "point" / "estimates.csv").exists()

    broken = _write(tmp_path, POINT_CONFIG.replace("kind = point_decode",
                                                   "kind = nope"), "broken.ini")
    assert main(["run", str(broken), "--out", str(tmp_path)]) == 2
    assert "config error" in capsys.readouterr().err


def test_cli_numeric_error_exit_code(tmp_path, capsys):
    hot = POINT_CONFIG.replace("bias = 12.3", "bias = 12.3\ngain_a = 99999")
    cfg = _write(tmp_path, hot, "hot.ini")
    assert main(["run", str(cfg), "--out", str(tmp_path)]) == 3
    assert "numeric error" in capsys.readouterr().err


def test_cli_out_root_from_environment(tmp_path, monkeypatch):
    cfg = _write(tmp_path, POINT_CONFIG)
    monkeypatch.setenv("AVLOC_OUT", str(tmp_path / "envroot"))
    assert main(["run", str(cfg)]) == 0
    assert (tmp_path / "envroot" / "point" / "estimates.csv").exists()
