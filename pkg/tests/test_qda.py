import logging

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from distrank.discriminants import BaseDiscriminant, QdaModel
from distrank.discriminants.qda import factorize
from distrank.errors import (ConfigError, DegenerateClassError,
                             InvalidInputError, SingularCovarianceError)

points = arrays(np.float64, (3,), elements=st.floats(-50, 50))


def test_fit_estimates():
  rows = np.array([[0.0, 0.0], [2.0, 0.0], [0.0, 2.0], [10.0, 10.0],
                   [12.0, 10.0], [10.0, 13.0]])
  labels = np.array([1, 1, 1, 2, 2, 2])
  model = QdaModel.fit(rows, labels)
  np.testing.assert_allclose(model.means[0], [2.0 / 3, 2.0 / 3])
  np.testing.assert_allclose(model.covariances[1],
                             np.cov(rows[3:], rowvar=False, ddof=1))
  np.testing.assert_allclose(model.priors, [0.5, 0.5])
  assert model.predict([1.0, 1.0]) == 1
  assert model.predict([11.0, 11.0]) == 2


def test_scores_match_the_discriminant_formula():
  mean = np.array([1.0, -1.0])
  cov = np.array([[2.0, 0.3], [0.3, 1.0]])
  model = QdaModel([mean, -mean], [cov, np.eye(2)], [0.25, 0.75])
  x = np.array([0.5, 0.2])
  diff = x - mean
  expected = (-0.5 * np.log(np.linalg.det(cov))
              - 0.5 * diff @ np.linalg.solve(cov, diff) + np.log(0.25))
  assert model.scores(x)[0] == pytest.approx(expected, rel=1e-12)


@settings(max_examples=100, deadline=None)
@given(points, points, points)
def test_equal_covariances_reduce_to_nearest_mean(a, b, x):
  distances = [np.sum((x - a) ** 2), np.sum((x - b) ** 2)]
  assume(abs(distances[0] - distances[1]) > 1e-6 * (1 + max(distances)))
  model = QdaModel([a, b], [np.eye(3), np.eye(3)], [0.5, 0.5])
  assert model.predict(x) == int(np.argmin(distances)) + 1


def test_batch_scores_match_single(separated):
  train, _ = separated
  rows = train.data[:, :3]
  model = QdaModel.fit(rows, train.labels)
  np.testing.assert_allclose(model.scores_many(rows[:4]),
                             [model.scores(r) for r in rows[:4]])


def test_zero_covariance_gets_a_ridge(caplog):
  with caplog.at_level(logging.WARNING, logger="distrank.discriminants.qda"):
    model = QdaModel([[0.0, 0.0], [1.0, 1.0]], [np.zeros((2, 2)), np.eye(2)],
                     [0.5, 0.5])
  assert model.regularization[0] > 0
  assert model.regularization[1] == 0
  assert "ridge" in caplog.text
  assert np.all(np.linalg.eigvalsh(model.regularized_covariances[0]) > 0)


def test_ridge_scale_follows_the_diagonal():
  cov = np.array([[4.0, 4.0], [4.0, 4.0]])
  factor, ridge = factorize(cov, "rank one")
  assert ridge > 0
  np.testing.assert_allclose(factor @ factor.T, cov + ridge * np.eye(2))


def test_non_finite_covariance_is_singular():
  with pytest.raises(SingularCovarianceError) as err:
    factorize(np.full((2, 2), np.nan), "class 1")
  assert isinstance(err.value, np.linalg.LinAlgError)


def test_indefinite_covariance_is_singular():
  with pytest.raises(SingularCovarianceError):
    factorize(np.array([[1.0, 0.0], [0.0, -1.0]]), "class 1")


def test_tiny_class_is_degenerate():
  with pytest.raises(DegenerateClassError):
    QdaModel.fit([[0.0], [1.0], [2.0]], [1, 1, 2])


def test_priors_are_validated():
  with pytest.raises(InvalidInputError):
    QdaModel([[0.0], [1.0]], [[[1.0]], [[1.0]]], [0.7, 0.7])


def test_shape_checks():
  model = QdaModel([[0.0], [1.0]], [[[1.0]], [[1.0]]], [0.5, 0.5])
  with pytest.raises(InvalidInputError):
    model.scores([1.0, 2.0])


def test_yaml_round_trip(tmp_path):
  model = QdaModel([[0.0, 1.0], [2.0, 3.0]],
                   [np.eye(2), [[2.0, 0.5], [0.5, 1.0]]], [0.4, 0.6])
  path = str(tmp_path / "model.yaml")
  model.dump(path)
  back = QdaModel.load(path)
  np.testing.assert_allclose(back.means, model.means)
  np.testing.assert_allclose(back.covariances, model.covariances)
  np.testing.assert_allclose(back.scores([1.0, 1.0]), model.scores([1.0, 1.0]))


def test_wrong_schema():
  with pytest.raises(ConfigError):
    QdaModel.from_document({"schema": "other/1", "classes": []})


def test_base_class_is_abstract():
  with pytest.raises(NotImplementedError):
    BaseDiscriminant.fit([[0.0]], [1])
