import json
import math
import os
from pathlib import Path

import numpy as np
import pytest

import helix

CONFIGS = Path(os.environ.get("HELIX_CONFIG_DIR", Path(__file__).resolve().parents[2] / "configs"))


def test_laguerre_examples():
    assert helix.laguerre(0, 3, 2.5) == 1.0
    assert helix.laguerre(1, 0, 1.0) == 0.0
    assert helix.laguerre(2, 1, 2.0) == pytest.approx(-1.0)
    with pytest.raises(ValueError):
        helix.laguerre(1, -1, 1.0)


def test_trajectory_closes_after_one_period():
    params = helix.natural_units(1.0)
    tp = helix.TrajectoryParams.nonrelativistic(helix.PhaseSpacePoint(x=1.0, py=0.5), params)
    start = tp.at(0.0).as_tuple()
    end = tp.at(tp.period()).as_tuple()
    for k in (0, 1, 3, 4):
        assert abs(end[k] - start[k]) < 1e-12
    rk = helix.trajectory_rk4(tp, 1.3, tp.period() / 1e4)
    assert abs(rk.x - tp.at(1.3).x) < 1e-10


def test_helical_density_and_centroid():
    params = helix.natural_units(1.0)
    tp = helix.TrajectoryParams.nonrelativistic(helix.PhaseSpacePoint(x=2.0, py=0.3, pz=0.5), params)
    psi = helix.helical_state(params, 1, 2, 1.0, tp, (1.5, 0.4, 0.2), 0.8)
    rho = helix.density_helical(params, 1, 2, 1.0, tp, (1.5, 0.4, 0.2), 0.8)
    assert rho == pytest.approx(abs(psi) ** 2, rel=1e-12)
    mean = helix.centroid(params, 1, 2, 1.0, tp, 0.8)
    q = tp.at(0.8)
    assert np.allclose(mean, (q.x, q.y, q.z), atol=1e-8)


def test_dirac_paths_agree_and_corrections_match_quadrature():
    params = helix.natural_units(1.0)
    kg = helix.KGHelicalParams(2, 1, 1.3, helix.PhaseSpacePoint(x=1.0, y=0.5, px=0.2))
    a = np.array(helix.dirac_helical(kg, params, (0.3, -0.2, 0.1), 0.7))
    b = np.array(helix.dirac_lift_of_kg(kg, params, (0.3, -0.2, 0.1), 0.7))
    assert np.max(np.abs(a - b)) <= 1e-12 * np.max(np.abs(b))
    closed = helix.dirac_corrections(kg, params, 0.0)
    quad = helix.corrections_oracle(kg, params, 0.0)
    assert np.allclose(closed, quad, rtol=1e-6, atol=0)


def test_positive_frequencies():
    params = helix.natural_units(0.1)
    kg = helix.KGHelicalParams(2, 1, 1.2, helix.PhaseSpacePoint(x=2.0, py=0.1))
    span = 16 * 2 * math.pi / params.cyclotron_frequency(1.2)
    assert helix.wrong_side_fraction(kg, params, (0.5, -0.3, 0.0), span) < 1e-8
    assert helix.wrong_side_fraction(kg, params, (0.5, -0.3, 0.0), span, conjugate=True) > 0.99


def test_splitstep_keeps_landau_modulus():
    params = helix.natural_units(1.0)
    grid = helix.Grid3.centered(2, 64, 10.0)
    xs = grid.origin[0] + grid.spacing[0] * np.arange(64)
    psi = np.array([[helix.landau_profile(0, 1, 1.0, x, y) for y in xs] for x in xs]).reshape(64, 64, 1)
    out = helix.splitstep_propagate(grid, psi, 1.0, params, 2.0, 500)
    assert out.shape == (64, 64, 1)
    assert np.allclose(np.abs(out), np.abs(psi), atol=1e-6)
    with pytest.raises(ValueError):
        helix.splitstep_propagate(grid, psi[:10], 1.0, params, 2.0, 500)


def test_run_config_and_load_field(tmp_path):
    code, log = helix.run_config(str(CONFIGS / "field.json"), str(tmp_path))
    assert code == 0
    values, grid, meta = helix.load_field(str(tmp_path / "density_0000.bin"))
    assert values.shape == (128 * 128,)
    assert grid.n == [128, 128, 1]
    assert json.loads(meta)["value"] == "real"
    assert values.sum() * grid.spacing[0] * grid.spacing[1] == pytest.approx(1.0, rel=1e-6)


def test_checks_report():
    report = json.loads(helix.run_checks(["classical_rk4", "energy_conservation"]))
    assert report["passed"]
    assert [c["name"] for c in report["checks"]] == ["classical_rk4", "energy_conservation"]
    with pytest.raises(ValueError):
        helix.run_checks(["nope"])
