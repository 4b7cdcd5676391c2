import numpy as np
import pytest

import distrank
from distrank.constants import DISTANCE, EUCLIDEAN, RANK, SQUARED_EUCLIDEAN
from distrank.datagen import ScenarioConfig, gen_multi_class
from distrank.dataset import LabeledDataset
from distrank.errors import InvalidInputError


@pytest.mark.parametrize("mode", [DISTANCE, RANK])
def test_separated_classes(separated, mode):
  train, test = separated
  clf = distrank.fit(train, mode=mode)
  assert clf.misclassification_rate(test) == 0.0


def test_default_metrics(separated):
  train, _ = separated
  assert distrank.fit(train, mode=DISTANCE).metric == SQUARED_EUCLIDEAN
  assert distrank.fit(train, mode=RANK).metric == EUCLIDEAN


def test_query_vector(separated):
  train, test = separated
  clf = distrank.fit(train, mode=RANK)
  q = clf.query(test.data[0])
  assert q.distances.shape == (train.n_observations,)
  assert q.summary.shape == (2,)
  assert np.all(q.ranks >= 1.0)
  assert np.all(q.ranks <= train.n_observations + 0.5)


def test_distance_mode_has_no_ranks(separated):
  train, test = separated
  clf = distrank.fit(train, mode=DISTANCE)
  assert clf.ranks is None
  assert clf.query(test.data[0]).ranks is None


@pytest.mark.parametrize("mode", [DISTANCE, RANK])
def test_batch_predictions_match_single(separated, mode):
  train, test = separated
  clf = distrank.fit(train, mode=mode)
  assert clf.predict_many(test.data).tolist() == [clf.predict(w)
                                                  for w in test.data]


def test_rank_mode_ignores_monotone_metric_changes(separated):
  train, test = separated
  plain = distrank.fit(train, mode=RANK, metric=EUCLIDEAN)
  squared = distrank.fit(train, mode=RANK, metric=SQUARED_EUCLIDEAN)
  np.testing.assert_array_equal(plain.predict_many(test.data),
                                squared.predict_many(test.data))


def test_custom_callable_metric(separated):
  train, test = separated
  clf = distrank.fit(train, mode=RANK,
                     metric=lambda a, b: np.abs(a - b).sum())
  # a query rank can fall just outside the training rank range
  assert clf.misclassification_rate(test) <= 0.1
  assert set(clf.predict_many(test.data).tolist()) <= {1, 2}


@pytest.mark.parametrize("scenario_id", ["S5", "S6", "S7"])
@pytest.mark.parametrize("mode", [DISTANCE, RANK])
def test_four_class_scenarios(scenario_id, mode):
  cfg = ScenarioConfig(scenario_id, d=50, a=2.0, n_train=20, n_test=10,
                       trials=1, seed=3)
  train, test = gen_multi_class(cfg, 0)
  clf = distrank.fit(train, mode=mode)
  assert clf.summary.values.shape == (80, 4)
  assert clf.misclassification_rate(test) <= 0.25


@pytest.mark.parametrize("kwargs", [{"mode": "median"}])
def test_bad_mode(separated, kwargs):
  with pytest.raises(InvalidInputError):
    distrank.fit(separated[0], **kwargs)


def test_needs_two_classes():
  with pytest.raises(InvalidInputError):
    distrank.fit(LabeledDataset(np.zeros((4, 2)), [1, 1, 1, 1]))


def test_needs_two_points_per_class_on_average():
  ds = LabeledDataset(np.arange(6.0).reshape(3, 2), [1, 1, 2])
  with pytest.raises(InvalidInputError):
    distrank.fit(ds)


def test_empty_test_set(separated):
  clf = distrank.fit(separated[0])
  with pytest.raises(InvalidInputError):
    clf.misclassification_rate(None)
