"""
Configuration-model graphs for the network scenarios S8 and S9.

Each observation is a graph on :data:`distrank.constants.GRAPH_VERTICES`
vertices drawn from the configuration model with a prescribed degree
vector. By default the multigraph is erased into a simple graph: self-loops
are dropped and parallel edges collapse into one. Realized degrees can then
fall below their targets.

Degree vectors (v = 40)::

  S8  X: twenty 1s, twenty 3s
      Y: (20 - a) 1s, a 2s, a 4s, (20 - a) 3s
  S9  X: forty 20s
      Y: (40 - a) 20s, a 30s

Graphs are compared either through their vectorized adjacency matrices with
the built-in metrics, or directly through :func:`frobenius_metric`. The two
paths give identical distances.

--------
Examples
--------

::

  x_law, y_law = degree_sequence("S8", 5)
  g = configuration_model(y_law, seed=3)
  g.adjacency.sum() // 2     # number of edges after erasure
  write_edge_list(g, "graph.txt")
"""

import logging

import networkx as nx
import numpy as np

from .constants import GRAPH_A_RANGE, GRAPH_VERTICES, NETWORK
from .dataset import LabeledDataset
from .distances import CustomMetric
from .errors import InvalidDegreeSequenceError, InvalidInputError

log = logging.getLogger(__name__)


class GraphSample(object):
  """One sampled graph.

  :ivar adjacency: read-only v x v matrix. 0/1 and hollow for simple
                   graphs, edge multiplicities otherwise
  :ivar degree_target: the degree vector the graph was drawn from
  :ivar degrees: realized degrees (self-loops count twice)
  :ivar simple: whether the graph was erased
  """

  def __init__(self, adjacency, degree_target, degrees, simple=True):
    adjacency = np.array(adjacency, dtype=float)
    if adjacency.ndim != 2 or adjacency.shape[0] != adjacency.shape[1]:
      raise InvalidInputError("adjacency must be square")
    if not np.array_equal(adjacency, adjacency.T):
      raise InvalidInputError("adjacency must be symmetric")
    if simple and (np.any(np.diag(adjacency) != 0)
                   or not np.all(np.isin(adjacency, (0.0, 1.0)))):
      raise InvalidInputError("simple graphs need a hollow 0/1 adjacency")
    degree_target = np.array(degree_target, dtype=int)
    degrees = np.array(degrees, dtype=int)
    for a in (adjacency, degree_target, degrees):
      a.setflags(write=False)
    self.adjacency = adjacency
    self.degree_target = degree_target
    self.degrees = degrees
    self.simple = simple

  @property
  def n_vertices(self):
    """v"""
    return self.adjacency.shape[0]

  @property
  def lost_degree(self):
    """Total degree removed by erasure."""
    return int(self.degree_target.sum() - self.degrees.sum())

  def __repr__(self):
    return "GraphSample(v=%d, edges=%d, simple=%s)" % (
      self.n_vertices, int(np.triu(self.adjacency).sum()), self.simple)


def configuration_model(degrees, seed=None, simple=True):
  """Draw a graph by uniform stub matching.

  :param degrees: non-negative integer degree vector with an even sum
  :param seed: integer seed for the stub pairing
  :param simple: erase self-loops and parallel edges (default True)
  :rtype: :class:`GraphSample`
  :raises InvalidDegreeSequenceError: on negative entries or an odd sum
  """
  degrees = np.asarray(degrees)
  if degrees.ndim != 1 or np.any(degrees != np.round(degrees)):
    raise InvalidDegreeSequenceError("degrees must be an integer vector")
  degrees = degrees.astype(int)
  if np.any(degrees < 0):
    raise InvalidDegreeSequenceError("degrees must be non-negative")
  if degrees.sum() % 2:
    raise InvalidDegreeSequenceError("degree sum %d is odd" % degrees.sum())

  multigraph = nx.configuration_model(degrees.tolist(), seed=seed)
  if simple:
    graph = nx.Graph(multigraph)
    graph.remove_edges_from(list(nx.selfloop_edges(graph)))
  else:
    graph = multigraph
  order = range(degrees.size)
  adjacency = nx.to_numpy_array(graph, nodelist=order)
  realized = [graph.degree(v) for v in order]
  sample = GraphSample(adjacency, degrees, realized, simple=simple)
  if simple and sample.lost_degree:
    log.debug("erasure removed %d of %d stubs", sample.lost_degree,
              degrees.sum())
  return sample


def degree_sequence(scenario_id, a):
  """Degree vectors of the two classes of a network scenario.

  :param scenario_id: "S8" or "S9"
  :param a: integer shift, 0..20 for S8 and 0..40 for S9
  :returns: (x_degrees, y_degrees), integer vectors of length 40
  """
  if scenario_id not in GRAPH_A_RANGE:
    raise InvalidInputError("%r is not a network scenario" % (scenario_id,))
  low, high = GRAPH_A_RANGE[scenario_id]
  if a != int(a) or not low <= a <= high:
    raise InvalidInputError("%s needs an integer a in [%d, %d], got %s"
                            % (scenario_id, low, high, a))
  a = int(a)
  half = GRAPH_VERTICES // 2
  if scenario_id == "S8":
    x = [1] * half + [3] * half
    y = [1] * (half - a) + [2] * a + [4] * a + [3] * (half - a)
  else:
    x = [20] * GRAPH_VERTICES
    y = [20] * (GRAPH_VERTICES - a) + [30] * a
  return np.array(x), np.array(y)


def vectorize_adjacency(graph):
  """Row-major flattening of the full adjacency matrix (length v * v)."""
  adjacency = getattr(graph, "adjacency", graph)
  return np.asarray(adjacency, dtype=float).reshape(-1)


def frobenius_metric(squared=False):
  """Frobenius distance between adjacency matrices as a metric plugin.

  :param squared: return the squared distance, which matches the
                  squared-Euclidean distance of the vectorized graphs
  :rtype: :class:`distrank.distances.CustomMetric`
  """
  def frobenius(g, h):
    diff = np.asarray(g, dtype=float) - np.asarray(h, dtype=float)
    total = np.sum(diff * diff)
    return total if squared else np.sqrt(total)

  return CustomMetric(frobenius,
                      name="squared-frobenius" if squared else "frobenius")


def write_edge_list(graph, path):
  """Write one ``u v`` line per edge, vertices numbered from 1.

  Parallel edges are written once per multiplicity.
  """
  adjacency = getattr(graph, "adjacency", graph)
  rows, cols = np.nonzero(np.triu(adjacency))
  with open(path, "w") as f:
    for u, v in zip(rows, cols):
      for _ in range(int(adjacency[u, v])):
        f.write("%d %d\n" % (u + 1, v + 1))


def read_edge_list(path, n_vertices=GRAPH_VERTICES):
  """Read a file written by :func:`write_edge_list` into an adjacency."""
  adjacency = np.zeros((n_vertices, n_vertices))
  with open(path) as f:
    for line in f:
      if not line.strip():
        continue
      u, v = (int(t) - 1 for t in line.split())
      adjacency[u, v] += 1
      if u != v:
        adjacency[v, u] += 1
  return adjacency


def _seed(sequence):
  return int(sequence.generate_state(1)[0])


def gen_network(cfg, trial_index):
  """Training and test graphs of one S8/S9 trial.

  :param cfg: :class:`distrank.datagen.ScenarioConfig` of the network family
  :returns: (train, test) datasets of v x v adjacency matrices, labels 1/2
  """
  if cfg.family != NETWORK:
    raise InvalidInputError("%s is not a network scenario" % cfg.scenario_id)
  x_law, y_law = degree_sequence(cfg.scenario_id, cfg.a)
  streams = cfg.trial_streams(trial_index)

  def sample(n, m, stream):
    seeds = [_seed(s) for s in stream.spawn(n + m)]
    graphs = [configuration_model(x_law, seed) for seed in seeds[:n]]
    graphs += [configuration_model(y_law, seed) for seed in seeds[n:]]
    return LabeledDataset([g.adjacency for g in graphs],
                          np.repeat([1, 2], [n, m]), n_classes=2)

  return (sample(cfg.n_train, cfg.m_train, streams[1]),
          sample(cfg.n_test, cfg.m_test, streams[2]))
