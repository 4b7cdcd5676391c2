import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from distrank.constants import EUCLIDEAN, SQUARED_EUCLIDEAN
from distrank.dataset import LabeledDataset
from distrank.distances import (CustomMetric, PairwiseDistances, column_ranks,
                                group_mean_matrix, pairwise_distances,
                                query_distances, query_distances_many,
                                query_ranks, query_summary)
from distrank.errors import DegenerateClassError, InvalidInputError

# Small integer coordinates keep squared distances exact
coordinates = arrays(np.float64, st.tuples(st.integers(6, 12), st.just(3)),
                     elements=st.integers(-5, 5).map(float))


def labeled(data):
  n = data.shape[0]
  return LabeledDataset(data, [1] * (n // 2) + [2] * (n - n // 2))


def test_pairwise_values(small):
  sq = pairwise_distances(small, SQUARED_EUCLIDEAN).values
  assert sq[0, 1] == 25.0
  assert sq[0, 2] == 1.0
  assert sq[1, 2] == 18.0
  plain = pairwise_distances(small, EUCLIDEAN).values
  assert plain[0, 1] == 5.0
  assert plain[0, 3] == 10.0


def test_matrix_is_read_only(small):
  dist = pairwise_distances(small)
  with pytest.raises(ValueError):
    dist.values[0, 1] = 3.0


def test_validation_of_matrices():
  with pytest.raises(InvalidInputError):
    PairwiseDistances([[0.0, 1.0], [2.0, 0.0]], SQUARED_EUCLIDEAN)
  with pytest.raises(InvalidInputError):
    PairwiseDistances([[1.0, 1.0], [1.0, 0.0]], SQUARED_EUCLIDEAN)


def test_single_observation_is_rejected():
  with pytest.raises(InvalidInputError):
    pairwise_distances(LabeledDataset([[1.0, 2.0]], [1]))


def test_column_ranks_with_ties():
  dist = PairwiseDistances([[0, 1, 1], [1, 0, 2], [1, 2, 0]], EUCLIDEAN)
  ranks = column_ranks(dist).values
  assert ranks[:, 0].tolist() == [1.0, 2.5, 2.5]
  assert ranks[:, 1].tolist() == [2.0, 1.0, 3.0]


def test_group_means(small):
  dist = pairwise_distances(small, SQUARED_EUCLIDEAN)
  means = group_mean_matrix(dist, small.labels).values
  # point 0: own class {1}, other class {2, 3}
  assert means[0].tolist() == [25.0, (1.0 + 100.0) / 2]
  # point 2: own class {3}
  assert means[2, 1] == dist.values[2, 3]


def test_single_member_class_is_degenerate():
  ds = LabeledDataset([[0.0], [1.0], [3.0]], [1, 1, 2])
  with pytest.raises(DegenerateClassError) as err:
    group_mean_matrix(pairwise_distances(ds), ds.labels)
  assert err.value.label == 2


def test_query_ranks_midrank_rule():
  dist = PairwiseDistances([[0, 1, 4], [1, 0, 2], [4, 2, 0]], EUCLIDEAN)
  ranks = query_ranks([1.0, 0.5, 4.0], dist)
  # column 0 = (0, 1, 4): one below 1, one tie
  assert ranks.tolist() == [0.5 + 1 + 0.5, 0.5 + 1, 0.5 + 2 + 0.5]


def test_query_length_mismatch(small):
  dist = pairwise_distances(small)
  with pytest.raises(InvalidInputError):
    query_ranks([1.0, 2.0], dist)
  with pytest.raises(InvalidInputError):
    query_distances([1.0, 2.0, 3.0], small)


def test_query_summary(small):
  summary = query_summary([1.0, 3.0, 10.0, 20.0], small.labels)
  assert summary.tolist() == [2.0, 15.0]


def test_batch_matches_single_queries(small):
  ws = np.array([[1.0, 1.0], [5.0, 5.0]])
  many = query_distances_many(ws, small, EUCLIDEAN)
  for w, row in zip(ws, many):
    np.testing.assert_allclose(row, query_distances(w, small, EUCLIDEAN))


def test_custom_metric_matches_builtin(small):
  metric = CustomMetric(lambda a, b: np.sum((a - b) ** 2), name="sq")
  custom = pairwise_distances(small, metric)
  np.testing.assert_array_equal(custom.values,
                                pairwise_distances(small).values)


def test_asymmetric_plugin_is_rejected(small):
  metric = CustomMetric(lambda a, b: float(np.sum(a - b) ** 2 + a[0]))
  with pytest.raises(InvalidInputError):
    pairwise_distances(small, metric)


def test_unknown_metric():
  with pytest.raises(InvalidInputError):
    pairwise_distances(LabeledDataset([[0.0], [1.0]], [1, 1]), "cosine")


@settings(max_examples=100, deadline=None)
@given(coordinates)
def test_rank_sum_law(data):
  n = data.shape[0]
  ranks = column_ranks(pairwise_distances(labeled(data), EUCLIDEAN)).values
  np.testing.assert_allclose(ranks.sum(axis=0), n * (n + 1) / 2.0)


@settings(max_examples=100, deadline=None)
@given(coordinates)
def test_ranks_ignore_monotone_transforms(data):
  ds = labeled(data)
  plain = column_ranks(pairwise_distances(ds, EUCLIDEAN)).values
  squared = column_ranks(pairwise_distances(ds, SQUARED_EUCLIDEAN)).values
  np.testing.assert_array_equal(plain, squared)


@settings(max_examples=100, deadline=None)
@given(coordinates, st.randoms(use_true_random=False))
def test_summaries_follow_permutations(data, random):
  ds = labeled(data)
  order = list(range(ds.n_observations))
  random.shuffle(order)
  base = group_mean_matrix(column_ranks(pairwise_distances(ds)),
                           ds.labels).values
  moved = ds.permuted(order)
  shuffled = group_mean_matrix(column_ranks(pairwise_distances(moved)),
                               moved.labels).values
  np.testing.assert_allclose(shuffled, base[order], rtol=1e-12)
