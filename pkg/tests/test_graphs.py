import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import distrank
from distrank.constants import DISTANCE, RANK
from distrank.datagen import ScenarioConfig
from distrank.errors import InvalidDegreeSequenceError, InvalidInputError
from distrank.graphs import (GraphSample, configuration_model, degree_sequence,
                             frobenius_metric, gen_network, read_edge_list,
                             vectorize_adjacency, write_edge_list)


def test_forced_matching():
  g = configuration_model([1, 1], seed=0)
  np.testing.assert_array_equal(g.adjacency, [[0, 1], [1, 0]])


@pytest.mark.parametrize("degrees", [[3], [1, 2], [-1, 1], [1.5, 0.5]])
def test_bad_degree_sequences(degrees):
  with pytest.raises(InvalidDegreeSequenceError):
    configuration_model(degrees)


def test_s8_sequences():
  x, y = degree_sequence("S8", 0)
  assert x.tolist() == [1] * 20 + [3] * 20
  assert x.sum() == 80
  x, y = degree_sequence("S8", 5)
  assert sorted(y.tolist()) == [1] * 15 + [2] * 5 + [3] * 15 + [4] * 5
  assert y.sum() == 90


def test_s9_sequences():
  x, y = degree_sequence("S9", 8)
  assert x.tolist() == [20] * 40
  assert y.tolist() == [20] * 32 + [30] * 8
  assert y.sum() == 880


@pytest.mark.parametrize("scenario_id,a", [("S8", 21), ("S9", -1), ("S1", 3)])
def test_sequence_range(scenario_id, a):
  with pytest.raises(InvalidInputError):
    degree_sequence(scenario_id, a)


@settings(max_examples=100, deadline=None)
@given(st.sampled_from(["S8", "S9"]), st.integers(0, 40))
def test_sequences_have_even_sums(scenario_id, a):
  a = min(a, 20) if scenario_id == "S8" else a
  for degrees in degree_sequence(scenario_id, a):
    assert degrees.sum() % 2 == 0
    assert degrees.size == 40


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 20), st.integers(0, 2 ** 31 - 1))
def test_erased_graphs_are_simple(a, seed):
  g = configuration_model(degree_sequence("S8", a)[1], seed=seed)
  adjacency = g.adjacency
  assert np.array_equal(adjacency, adjacency.T)
  assert np.all(np.diag(adjacency) == 0)
  assert set(np.unique(adjacency)) <= {0.0, 1.0}
  np.testing.assert_array_equal(adjacency.sum(axis=0), g.degrees)
  assert np.all(g.degrees <= g.degree_target)


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 40), st.integers(0, 2 ** 31 - 1))
def test_multigraphs_keep_every_stub(a, seed):
  target = degree_sequence("S9", a)[1]
  g = configuration_model(target, seed=seed, simple=False)
  assert g.degrees.sum() == target.sum()
  assert g.lost_degree == 0


def test_same_seed_same_graph():
  degrees = degree_sequence("S8", 10)[1]
  a = configuration_model(degrees, seed=4)
  b = configuration_model(degrees, seed=4)
  np.testing.assert_array_equal(a.adjacency, b.adjacency)


def test_graph_sample_validation():
  with pytest.raises(InvalidInputError):
    GraphSample([[1, 0], [0, 0]], [1, 0], [1, 0])
  with pytest.raises(InvalidInputError):
    GraphSample([[0, 1], [0, 0]], [1, 1], [1, 1])


def test_vectorize_empty_and_single_edge():
  assert vectorize_adjacency(np.zeros((3, 3))).tolist() == [0.0] * 9
  single = np.zeros((3, 3))
  single[0, 1] = single[1, 0] = 1
  flat = vectorize_adjacency(GraphSample(single, [1, 1, 0], [1, 1, 0]))
  assert np.flatnonzero(flat).tolist() == [1, 3]


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 2 ** 31 - 1), st.integers(0, 2 ** 31 - 1))
def test_vectorization_is_an_isometry(s1, s2):
  degrees = degree_sequence("S8", 7)[1]
  g = configuration_model(degrees, seed=s1).adjacency
  h = configuration_model(degrees, seed=s2).adjacency
  flat = np.linalg.norm(vectorize_adjacency(g) - vectorize_adjacency(h))
  sym_diff = np.sum(np.triu(g != h))
  assert flat == pytest.approx(np.sqrt(2.0 * sym_diff), abs=1e-12)
  assert frobenius_metric()(g, h) == flat
  assert frobenius_metric(squared=True)(g, h) == 2.0 * sym_diff


def test_edge_list_round_trip(tmp_path):
  g = configuration_model(degree_sequence("S8", 5)[1], seed=2)
  path = str(tmp_path / "graph.txt")
  write_edge_list(g, path)
  lines = open(path).read().split("\n")
  u, v = (int(t) for t in lines[0].split())
  assert 1 <= u < v <= 40
  np.testing.assert_array_equal(read_edge_list(path), g.adjacency)


def test_network_trial():
  cfg = ScenarioConfig("S9", a=16, n_train=4, m_train=3, n_test=2, m_test=2,
                       trials=2, seed=1)
  train, test = gen_network(cfg, 1)
  assert train.data.shape == (7, 40, 40)
  assert train.class_counts.tolist() == [4, 3]
  again, _ = gen_network(cfg, 1)
  np.testing.assert_array_equal(train.data, again.data)


@pytest.mark.parametrize("mode", [DISTANCE, RANK])
def test_graph_metric_path_equals_vectorized_path(mode):
  cfg = ScenarioConfig("S8", a=10, n_train=8, m_train=8, n_test=6, m_test=6,
                       trials=1, seed=5)
  train, test = gen_network(cfg, 0)
  direct = distrank.fit(train, mode=mode,
                        metric=frobenius_metric(squared=mode == DISTANCE))
  vector = distrank.fit(train.flattened(), mode=mode)
  np.testing.assert_array_equal(direct.dist.values, vector.dist.values)
  np.testing.assert_array_equal(direct.predict_many(test.data),
                                vector.predict_many(test.flattened().data))


def test_network_needs_graph_scenario():
  with pytest.raises(InvalidInputError):
    gen_network(ScenarioConfig("S1", trials=1), 0)
