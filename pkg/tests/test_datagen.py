import numpy as np
import pytest

from distrank.datagen import (ScenarioConfig, ar_factor, contaminate_outliers,
                              gen_multi_class, gen_two_class, generate,
                              random_unit_direction)
from distrank.errors import InvalidInputError


def small_config(scenario_id="S1", **fields):
  fields.setdefault("d", 6)
  for name in ("n_train", "m_train", "n_test", "m_test"):
    fields.setdefault(name, 8)
  fields.setdefault("trials", 3)
  return ScenarioConfig(scenario_id, **fields)


def test_ar_factor_small_cases():
  np.testing.assert_array_equal(ar_factor(1), [[1.0]])
  np.testing.assert_allclose(ar_factor(2, 0.1),
                             [[1.0, 0.0], [0.1, np.sqrt(0.99)]], atol=1e-15)


@pytest.mark.parametrize("d", [1, 2, 10, 100, 1000])
def test_ar_factor_reconstruction(d):
  A = ar_factor(d, 0.1)
  idx = np.arange(d)
  sigma = 0.1 ** np.abs(idx[:, None] - idx[None, :])
  assert np.max(np.abs(A @ A.T - sigma)) < 1e-10
  assert np.allclose(A, np.tril(A))


def test_ar_factor_range():
  with pytest.raises(InvalidInputError):
    ar_factor(3, 1.0)
  with pytest.raises(InvalidInputError):
    ar_factor(0)


def test_unit_direction():
  u = random_unit_direction(1000, 1)
  assert np.linalg.norm(u) == pytest.approx(1.0, abs=1e-12)
  np.testing.assert_array_equal(u, random_unit_direction(1000, 1))
  assert abs(u @ random_unit_direction(1000, 2)) < 0.15


def test_config_defaults():
  cfg = ScenarioConfig("S4")
  assert cfg.d == 1000
  assert str(cfg.base_y) == "student-t(5)"
  assert cfg.trials == 20
  assert ScenarioConfig("S5").mu0 == 12.0


@pytest.mark.parametrize("fields", [
  {"a": 0.0}, {"mu0": -1.0}, {"n_train": 1}, {"trials": 0}, {"d": 0},
  {"rho": 1.0}, {"outliers": 60},
])
def test_config_validation(fields):
  with pytest.raises(InvalidInputError):
    ScenarioConfig("S1", **fields)


def test_network_shift_range():
  assert ScenarioConfig("S9", a=40).a == 40
  with pytest.raises(InvalidInputError):
    ScenarioConfig("S8", a=21)
  with pytest.raises(InvalidInputError):
    ScenarioConfig("S8", a=2.5)


def test_unknown_scenario():
  with pytest.raises(InvalidInputError):
    ScenarioConfig("S14")


def test_replace_and_dict():
  cfg = small_config(mu0=2.0)
  assert cfg.replace(mu0=3.0).mu0 == 3.0
  assert ScenarioConfig(**cfg.to_dict()).to_dict() == cfg.to_dict()


def test_two_class_shapes_and_labels():
  train, test = gen_two_class(small_config(m_train=5), 0)
  assert train.data.shape == (13, 6)
  assert train.class_counts.tolist() == [8, 5]
  assert test.class_counts.tolist() == [8, 8]


def test_generators_are_reproducible():
  cfg = small_config(mu0=3.0, a=1.2)
  first = gen_two_class(cfg, 1)
  again = gen_two_class(cfg, 1)
  np.testing.assert_array_equal(first[0].data, again[0].data)
  np.testing.assert_array_equal(first[1].data, again[1].data)
  other = gen_two_class(cfg, 2)
  assert not np.array_equal(first[0].data, other[0].data)


def test_trial_range():
  with pytest.raises(InvalidInputError):
    gen_two_class(small_config(), 3)


def test_direction_redraw_and_pin():
  cfg = small_config(mu0=1.0)
  assert not np.allclose(cfg.direction(0), cfg.direction(1))
  pinned = cfg.replace(pin_direction=True)
  np.testing.assert_array_equal(pinned.direction(0), pinned.direction(2))


def test_class_x_covariance():
  cfg = ScenarioConfig("S1", d=5, n_train=50000, m_train=2, n_test=2,
                       m_test=2, trials=1, seed=3)
  train, _ = gen_two_class(cfg, 0)
  x = train.data[train.labels == 1]
  idx = np.arange(5)
  sigma = 0.1 ** np.abs(idx[:, None] - idx[None, :])
  np.testing.assert_allclose(np.cov(x, rowvar=False), sigma, atol=0.03)


def test_class_y_shift_and_scale():
  cfg = ScenarioConfig("S1", d=4, n_train=2, m_train=40000, n_test=2,
                       m_test=2, mu0=5.0, a=2.0, trials=1, seed=4)
  train, _ = gen_two_class(cfg, 0)
  y = train.data[train.labels == 2]
  np.testing.assert_allclose(y.mean(axis=0), 5.0 * cfg.direction(0),
                             atol=0.05)
  assert np.var(y[:, 0]) == pytest.approx(4.0, rel=0.05)


def test_multi_class_grid():
  cfg = ScenarioConfig("S5", d=5, n_train=20000, n_test=3, trials=1, seed=9)
  train, test = gen_multi_class(cfg, 0)
  assert train.n_classes == 4
  assert test.class_counts.tolist() == [3, 3, 3, 3]
  mu = 12.0 * cfg.direction(0)
  for label, center in ((1, 0.0), (2, 0.0), (3, mu), (4, mu)):
    rows = train.data[train.labels == label]
    np.testing.assert_allclose(rows.mean(axis=0), center + np.zeros(5),
                               atol=0.1)
  ratio = (train.data[train.labels == 2].var(axis=0)
           / train.data[train.labels == 1].var(axis=0))
  np.testing.assert_allclose(ratio, 1.21, rtol=0.08)


@pytest.mark.parametrize("scenario_id", ["S5", "S6", "S7"])
def test_multi_class_small_trial(scenario_id):
  cfg = small_config(scenario_id, d=5, seed=1)
  train, test = gen_multi_class(cfg, 0)
  assert train.class_counts.tolist() == [8, 8, 8, 8]
  assert test.class_counts.tolist() == [8, 8, 8, 8]
  assert train.data.shape == (32, 5)
  np.testing.assert_array_equal(train.labels, np.repeat([1, 2, 3, 4], 8))
  assert np.all(np.isfinite(train.data))
  again, _ = gen_multi_class(cfg, 0)
  np.testing.assert_array_equal(again.data, train.data)


def test_multi_class_means():
  cfg = ScenarioConfig("S5", d=5, n_train=4000, n_test=2, trials=1, seed=1)
  train, _ = gen_multi_class(cfg, 0)
  mu = cfg.mu0 * cfg.direction(0)
  means = [train.data[train.labels == label].mean(axis=0)
           for label in (1, 2, 3, 4)]
  for mean, center in zip(means, (np.zeros(5), np.zeros(5), mu, mu)):
    np.testing.assert_allclose(mean, center, atol=0.15)


def test_family_checks():
  with pytest.raises(InvalidInputError):
    gen_multi_class(small_config(), 0)
  with pytest.raises(InvalidInputError):
    gen_two_class(small_config("S6"), 0)


def test_no_outliers_keeps_the_dataset():
  cfg = small_config()
  train, _ = gen_two_class(cfg, 0)
  assert contaminate_outliers(train, cfg, 0, 1, np.zeros(6)) is train


def test_outliers_replace_leading_class_x_rows():
  cfg = small_config(mu0=1.0, a=1.1)
  train, _ = gen_two_class(cfg, 0)
  dirty = contaminate_outliers(train, cfg, 3, 7, cfg.direction(0))
  changed = np.any(dirty.data != train.data, axis=1)
  assert changed.tolist() == [True] * 3 + [False] * 13
  np.testing.assert_array_equal(dirty.labels, train.labels)


def test_outlier_law_is_far_away():
  cfg = small_config(d=50, mu0=4.0, a=1.1)
  mu = cfg.mu0 * cfg.direction(0)
  train, _ = gen_two_class(cfg, 0)
  dirty = contaminate_outliers(train, cfg, 2, 7, mu)
  # centered near 5 mu and 1.5 times as spread
  assert np.linalg.norm(dirty.data[0] - 5 * mu) < np.linalg.norm(dirty.data[0])


def test_too_many_outliers():
  cfg = small_config()
  train, _ = gen_two_class(cfg, 0)
  with pytest.raises(InvalidInputError):
    contaminate_outliers(train, cfg, 9, 1, np.zeros(6))


def test_config_outliers_are_applied():
  cfg = small_config(mu0=1.0)
  clean, _ = gen_two_class(cfg, 0)
  dirty, _ = gen_two_class(cfg.replace(outliers=2), 0)
  assert np.any(dirty.data[0] != clean.data[0])
  np.testing.assert_array_equal(dirty.data[2:], clean.data[2:])


def test_generate_dispatch():
  train, _ = generate(small_config("S7"), 0)
  assert train.n_classes == 4
  graphs, _ = generate(ScenarioConfig("S8", a=5, n_train=3, m_train=3,
                                      n_test=2, m_test=2, trials=1), 0)
  assert graphs.data.shape == (6, 1600)
