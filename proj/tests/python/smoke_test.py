"""Smoke tests for the harmonicchain Python module."""

import csv
import io
import math
import os
import sys
import tempfile

import numpy as np

import harmonicchain as hc


def close(a, b, tol=1e-9):
    assert abs(a - b) <= tol, f"{a} vs {b} (tol {tol})"


def test_bisection_closed_form():
    spec = hc.ChainSpec(8, [20.0])
    sel = hc.GroupSelection([0, 1, 2, 3], [4, 5, 6, 7])
    result = hc.chain_log_negativity(spec, sel)
    close(result.log_negativity, 0.5 * math.log2(81.0), 1e-8)
    close(result.log_negativity, hc.nn_closed_form(20.0), 1e-8)
    assert len(result.symplectic_spectrum) == 8


def test_energy_and_spectrum():
    spec = hc.ChainSpec(4, [])
    close(hc.ground_energy(hc.build_potential(spec)), 4.0, 1e-12)
    lam = hc.circulant_eigenvalues([41.0, -20.0, 0.0, -20.0])
    assert [round(v, 9) for v in lam] == [1.0, 41.0, 81.0, 41.0]


def test_numpy_round_trip():
    rng = np.random.default_rng(5)
    raw = rng.normal(size=(6, 6))
    m = hc.SymMatrix(raw)
    back = m.array()
    sym = (raw + raw.T) / 2
    assert np.max(np.abs(back - sym)) == 0.0
    e = hc.eigh_symmetric(m)
    lam_np = np.linalg.eigvalsh(sym)
    assert np.max(np.abs(np.array(e.eigenvalues) - lam_np)) <= 1e-9


def test_oracle_agreement():
    spec = hc.ChainSpec(12, [5.0], hc.Topology.Ring, 2.0)
    cov = hc.covariance_for(spec)
    red = hc.reduce(cov, hc.GroupSelection([0, 2], [5, 6, 7]))
    direct = hc.log_negativity(red.x_block, red.p_block, red.signs)
    oracle = hc.log_negativity_oracle(red.x_block, red.p_block, red.signs)
    close(direct.log_negativity, oracle.log_negativity, 1e-9)


def test_thermal_ground_limit():
    v = hc.build_potential(hc.ChainSpec(6, [3.0]))
    ground = hc.ground_covariance(v)
    frozen = hc.thermal_covariance(v, math.inf)
    assert np.array_equal(ground.x_block.array(), frozen.x_block.array())


def test_validation_errors_are_value_errors():
    try:
        hc.GroupSelection([0], [0])
    except ValueError as e:
        assert "overlap" in str(e)
    else:
        raise AssertionError("expected ValueError for overlapping groups")
    try:
        hc.build_potential(hc.ChainSpec(6, [-1.0]))
    except RuntimeError as e:
        assert "unstable" in str(e)
    else:
        raise AssertionError("expected RuntimeError for an unstable chain")


def test_scenario_csv():
    cfg = hc.default_scenario(hc.ScenarioKind.ThermalScan)
    cfg.temperatures = [0.0, 1.0, 2.0]
    table = hc.run_scenario(cfg)
    assert table.columns == ["alpha", "n", "T", "N", "status"]
    text = hc.csv_text(table)
    rows = list(csv.reader(io.StringIO(text)))
    assert rows[0] == table.columns
    assert len(rows) == 4
    close(float(rows[1][3]), hc.nn_closed_form(20.0), 1e-8)

    with tempfile.TemporaryDirectory() as tmp:
        path = os.path.join(tmp, "thermal.csv")
        hc.write_csv(table, path)
        with open(path, encoding="utf-8") as fh:
            assert fh.read() == text
        gp = os.path.join(tmp, "thermal.gp")
        hc.emit_plot_script(table, path, gp)
        with open(gp, encoding="utf-8") as fh:
            assert path in fh.read()


def test_scenario_json():
    cfg = hc.parse_scenario_json(
        '{"kind":"ThermalScan","n":20,"alpha":[20.0],"temperature_range":[0.0,50.0,51]}'
    )
    assert cfg.kind == hc.ScenarioKind.ThermalScan
    assert len(cfg.temperatures) == 51


def main():
    tests = [v for k, v in sorted(globals().items()) if k.startswith("test_")]
    for test in tests:
        test()
        print(f"ok {test.__name__}")
    print(f"{len(tests)} smoke tests passed")


if __name__ == "__main__":
    sys.exit(main())
