"""Full-scale reproduction runs of the shipped plans (marked slow)."""

import os

import pytest

from distrank.bench import runner
from distrank.bench.plans import ExperimentPlan

CONFIGS = os.path.join(os.path.dirname(__file__), os.pardir, "configs")

pytestmark = pytest.mark.slow


def run(name, tmp_path, sweep=runner.run_simulation):
  plan = ExperimentPlan.load(os.path.join(CONFIGS, name))
  plan = plan.with_overrides(output_dir=str(tmp_path), jobs=os.cpu_count())
  return sweep(plan, timing=False)


def rates(summary):
  return {(row.scenario_id, row.mu0, row.a, row.outliers, row.mode):
          row.mean_rate for row in summary}


def test_heavy_tailed_two_class(tmp_path):
  _, summary = run("table2.yaml", tmp_path)
  got = rates(summary)
  assert got["S2", 4.0, 1.0, 0, "distance"] == pytest.approx(0.258, abs=0.06)
  assert got["S2", 4.0, 1.0, 0, "rank"] == pytest.approx(0.273, abs=0.06)
  assert got["S2", 0.0, 1.05, 0, "distance"] == pytest.approx(0.290, abs=0.06)
  assert got["S2", 0.0, 1.05, 0, "rank"] == pytest.approx(0.282, abs=0.06)


def test_two_class_scenarios(tmp_path):
  _, summary = run("table3.yaml", tmp_path)
  got = rates(summary)
  expected = {
    ("S1", 6.0, 1.0): (0.022, 0.027, 0.03),
    ("S1", 0.0, 1.1): (0.019, 0.020, 0.03),
    ("S4", 0.0, 1.0): (0.276, 0.278, 0.06),
  }
  for (scenario_id, mu0, a), (dist, rank, tol) in expected.items():
    assert got[scenario_id, mu0, a, 0, "distance"] == pytest.approx(dist,
                                                                    abs=tol)
    assert got[scenario_id, mu0, a, 0, "rank"] == pytest.approx(rank, abs=tol)


def test_multi_class_scenarios(tmp_path):
  _, summary = run("table4.yaml", tmp_path)
  got = rates(summary)
  assert got["S5", 12.0, 1.1, 0, "distance"] == pytest.approx(0.028, abs=0.03)
  assert got["S5", 12.0, 1.1, 0, "rank"] == pytest.approx(0.023, abs=0.03)
  for mode in ("distance", "rank"):
    assert got["S7", 12.0, 1.1, 0, mode] == pytest.approx(0.216, abs=0.06)


def test_network_scenarios(tmp_path):
  _, summary = run("table5.yaml", tmp_path, sweep=runner.run_network)
  got = rates(summary)
  assert got["S8", 0.0, 20.0, 0, "rank"] <= 0.01
  assert got["S9", 0.0, 16.0, 0, "rank"] <= 0.01
  assert got["S9", 0.0, 16.0, 0, "distance"] <= 0.01
  assert got["S8", 0.0, 5.0, 0, "rank"] < got["S8", 0.0, 5.0, 0, "distance"]


def test_analytic_tracks_simulation(tmp_path):
  records = run("figure4.yaml", tmp_path, sweep=runner.run_analytic)
  curves = {}
  for record in records:
    assert record["error"] == ""
    analytic = float(record["analyticRate"])
    simulated = float(record["simulatedDistRate"])
    assert abs(analytic - simulated) <= 0.05, record
    curves.setdefault(record["scenarioId"], []).append((analytic, simulated))
  for points in curves.values():
    for column in (0, 1):
      values = [p[column] for p in points]
      rises = [b - a for a, b in zip(values, values[1:]) if b > a]
      assert len(rises) <= 1 and all(r <= 0.02 for r in rises), values


def test_outlier_robustness(tmp_path):
  _, summary = run("table6.yaml", tmp_path, sweep=runner.run_robustness)
  got = rates(summary)
  configs = {key[:4] for key in got}
  for key in configs:
    assert got[key + ("rank",)] < got[key + ("distance",)], key
  assert got["S1", 0.0, 1.1, 1, "rank"] <= 0.08
  assert got["S1", 0.0, 1.1, 1, "distance"] >= 0.22
