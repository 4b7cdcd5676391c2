"""
Pairwise distances, column ranks and class-wise summaries.

This module covers the steps both classifiers share before the final
discriminant:

1. the N x N matrix of distances between training observations
   (:func:`pairwise_distances`),
2. the per-column mid-rank matrix of those distances (:func:`column_ranks`),
3. the N x k matrix of class-wise means of either one
   (:func:`group_mean_matrix`),
4. the same quantities for a new observation W (:func:`query_distances`,
   :func:`query_ranks`, :func:`query_summary`).

Ranks are taken over all N entries of a column, the zero diagonal included,
with ties sharing the average of their positions. Equality of distances is
exact float equality.

--------
Examples
--------

Rank-mean summaries of a training set::

  dist = pairwise_distances(train, EUCLIDEAN)
  summary = group_mean_matrix(column_ranks(dist), train.labels)

Distances to a graph-valued observation through a plugin::

  metric = CustomMetric(lambda g, h: np.linalg.norm(g - h), name="frobenius")
  dist = pairwise_distances(graphs, metric)
"""

import logging

import numpy as np
from scipy.spatial import distance as spdist
from scipy.stats import rankdata

from .constants import (CUSTOM, DISTANCE_MEAN, EUCLIDEAN, RANK_MEAN,
                        SQUARED_EUCLIDEAN)
from .errors import DegenerateClassError, InvalidInputError

log = logging.getLogger(__name__)

_SCIPY_NAMES = {SQUARED_EUCLIDEAN: "sqeuclidean", EUCLIDEAN: "euclidean"}

# Observations the custom-metric spot checks look at
_SPOT_CHECKS = 5


def _frozen(values):
  values = np.array(values, dtype=float)
  values.setflags(write=False)
  return values


class CustomMetric(object):
  """Distance plugin over pairs of observations.

  The callback must be symmetric and zero on identical inputs. Both
  properties are spot-checked whenever a matrix is built.
  """

  def __init__(self, func, name="custom"):
    """
    :param func: callable ``func(a, b) -> float`` on two observations
    :param name: label used in logs and reprs
    """
    if not callable(func):
      raise InvalidInputError("metric plugin must be callable")
    self.func = func
    self.name = name

  def __call__(self, a, b):
    return float(self.func(a, b))

  def __repr__(self):
    return "CustomMetric(%s)" % self.name

  def pairwise(self, data):
    """Return the N x N matrix of plugin distances between rows of data."""
    n = data.shape[0]
    values = np.zeros((n, n))
    for i in range(n):
      for j in range(i + 1, n):
        values[i, j] = values[j, i] = self(data[i], data[j])
    self.spot_check(data)
    return values

  def to(self, w, data):
    """Return the vector of plugin distances from w to each row of data."""
    return np.array([self(w, z) for z in data])

  def spot_check(self, data):
    """Check zero self-distance and symmetry on a few observations.

    :raises InvalidInputError: when either property fails
    """
    picks = range(min(_SPOT_CHECKS, data.shape[0]))
    for i in picks:
      if self(data[i], data[i]) != 0.0:
        raise InvalidInputError("%r is not zero on identical inputs" % self)
      j = data.shape[0] - 1 - i
      if self(data[i], data[j]) != self(data[j], data[i]):
        raise InvalidInputError("%r is not symmetric" % self)


def resolve_metric(metric):
  """Normalize a metric argument.

  :param metric: :const:`SQUARED_EUCLIDEAN`, :const:`EUCLIDEAN`, a
                 :class:`CustomMetric` or a plain callable
  :returns: a metric name or a :class:`CustomMetric`
  """
  if isinstance(metric, CustomMetric):
    return metric
  if metric in _SCIPY_NAMES:
    return metric
  if callable(metric):
    return CustomMetric(metric, name=getattr(metric, "__name__", "custom"))
  raise InvalidInputError("unknown metric %r" % (metric,))


def _metric_name(metric):
  return CUSTOM if isinstance(metric, CustomMetric) else metric


class PairwiseDistances(object):
  """Symmetric, hollow, non-negative N x N distance matrix.

  :ivar values: read-only matrix
  :ivar metric: metric name (:const:`CUSTOM` for plugins)
  :ivar plugin: the :class:`CustomMetric`, or None
  """

  def __init__(self, values, metric, plugin=None):
    values = _frozen(values)
    if values.ndim != 2 or values.shape[0] != values.shape[1]:
      raise InvalidInputError("distance matrix must be square")
    if not np.array_equal(values, values.T):
      raise InvalidInputError("distance matrix is not symmetric")
    if np.any(np.diag(values) != 0):
      raise InvalidInputError("distance matrix has a nonzero diagonal")
    if np.any(values < 0) or not np.all(np.isfinite(values)):
      raise InvalidInputError("distance matrix has negative or "
                              "non-finite entries")
    self.values = values
    self.metric = metric
    self.plugin = plugin

  @property
  def size(self):
    """N"""
    return self.values.shape[0]


class ColumnRanks(object):
  """Per-column mid-ranks of a distance matrix.

  ``values[i, j]`` is the rank of distance ``[i, j]`` among the N entries
  of column j.
  """

  def __init__(self, values):
    self.values = _frozen(values)

  @property
  def size(self):
    """N"""
    return self.values.shape[0]


class SummaryStats(object):
  """N x k class-wise means, one row per training observation.

  :ivar values: read-only matrix, row i is M(Z_i)
  :ivar kind: :const:`DISTANCE_MEAN` or :const:`RANK_MEAN`
  """

  def __init__(self, values, kind):
    self.values = _frozen(values)
    self.kind = kind


class QueryVector(object):
  """Everything computed for one new observation W.

  :ivar distances: length-N distances from W to the training points
  :ivar ranks: length-N rank vector R_W (rank path only, else None)
  :ivar summary: length-k class-wise means of ranks or distances
  """

  def __init__(self, distances, ranks, summary):
    self.distances = _frozen(distances)
    self.ranks = None if ranks is None else _frozen(ranks)
    self.summary = _frozen(summary)


def _as_matrix(dataset):
  data = dataset.data
  if data.ndim != 2:
    raise InvalidInputError("built-in metrics need vector observations; "
                            "flatten the dataset or pass a CustomMetric")
  return data


def pairwise_distances(dataset, metric=SQUARED_EUCLIDEAN):
  """Build the distance matrix of a training set.

  :param dataset: :class:`distrank.dataset.LabeledDataset` with N >= 2
  :param metric: see :func:`resolve_metric`
  :rtype: :class:`PairwiseDistances`
  """
  metric = resolve_metric(metric)
  if dataset.n_observations < 2:
    raise InvalidInputError("need at least two observations, got %d"
                            % dataset.n_observations)
  if isinstance(metric, CustomMetric):
    values = metric.pairwise(dataset.data)
  else:
    values = spdist.squareform(spdist.pdist(_as_matrix(dataset),
                                            _SCIPY_NAMES[metric]))
  log.debug("built %dx%d %s distance matrix", values.shape[0],
            values.shape[0], _metric_name(metric))
  plugin = metric if isinstance(metric, CustomMetric) else None
  return PairwiseDistances(values, _metric_name(metric), plugin=plugin)


def column_ranks(dist):
  """Mid-rank every column of a distance matrix.

  :param dist: :class:`PairwiseDistances`
  :rtype: :class:`ColumnRanks`
  """
  return ColumnRanks(rankdata(dist.values, method="average", axis=0))


def _label_matrix(labels, n_classes=None):
  labels = np.asarray(labels, dtype=int)
  if n_classes is None:
    n_classes = int(labels.max())
  return (labels[:, None] == np.arange(1, n_classes + 1)[None, :]).astype(float)


def group_mean_matrix(source, labels, n_classes=None):
  """Class-wise means of each row, excluding the row's own entry.

  ``M[i, j]`` is the mean of ``source[i, l]`` over training points l of
  class j with l != i.

  :param source: :class:`PairwiseDistances` or :class:`ColumnRanks`
  :param labels: length-N labels in 1..k
  :param n_classes: k (default: largest label)
  :rtype: :class:`SummaryStats`
  :raises DegenerateClassError: when a class has a single member
  """
  values = source.values
  onehot = _label_matrix(labels, n_classes)
  if onehot.shape[0] != values.shape[0]:
    raise InvalidInputError("got %d labels for an %dx%d matrix"
                            % (onehot.shape[0], values.shape[0],
                               values.shape[0]))
  counts = onehot.sum(axis=0)
  for j in np.flatnonzero(counts == 1):
    raise DegenerateClassError(j + 1, "class %d has a single member; its "
                               "own-class mean is undefined" % (j + 1))
  sums = values @ onehot - np.diag(values)[:, None] * onehot
  means = sums / (counts[None, :] - onehot)
  kind = RANK_MEAN if isinstance(source, ColumnRanks) else DISTANCE_MEAN
  return SummaryStats(means, kind)


def query_distances(w, dataset, metric=SQUARED_EUCLIDEAN):
  """Distances from a new observation to every training point.

  :param w: observation shaped like one entry of ``dataset.data``
  :param dataset: :class:`distrank.dataset.LabeledDataset`
  :param metric: see :func:`resolve_metric`
  :returns: length-N vector
  """
  metric = resolve_metric(metric)
  w = np.asarray(w, dtype=float)
  if w.shape != dataset.data.shape[1:]:
    raise InvalidInputError("query has shape %s, training observations %s"
                            % (w.shape, dataset.data.shape[1:]))
  if isinstance(metric, CustomMetric):
    return metric.to(w, dataset.data)
  return spdist.cdist(w[None, :], _as_matrix(dataset),
                      _SCIPY_NAMES[metric])[0]


def query_ranks(d_w, dist):
  """Rank of the query distance within each column of the training matrix.

  ``R[i] = 1/2 + #{t: D[t,i] < d_w[i]} + 1/2 #{t: D[t,i] == d_w[i]}``,
  counting all N training points (t = i included).

  :param d_w: length-N query distances, same metric as ``dist``
  :param dist: :class:`PairwiseDistances`
  :returns: length-N vector with entries in [1, N + 1/2]
  """
  d_w = np.asarray(d_w, dtype=float)
  if d_w.shape != (dist.size,):
    raise InvalidInputError("query vector has length %d, expected %d"
                            % (d_w.size, dist.size))
  below = (dist.values < d_w[None, :]).sum(axis=0)
  ties = (dist.values == d_w[None, :]).sum(axis=0)
  return 0.5 + below + 0.5 * ties


def query_summary(per_point, labels, n_classes=None):
  """Class-wise means of a per-training-point vector.

  :param per_point: length-N vector (distances or ranks of W)
  :param labels: length-N labels in 1..k
  :returns: length-k vector
  """
  per_point = np.asarray(per_point, dtype=float)
  onehot = _label_matrix(labels, n_classes)
  if onehot.shape[0] != per_point.shape[0]:
    raise InvalidInputError("got %d labels for a length-%d vector"
                            % (onehot.shape[0], per_point.shape[0]))
  return per_point @ onehot / onehot.sum(axis=0)


def query_distances_many(ws, dataset, metric=SQUARED_EUCLIDEAN):
  """Distances from each of M new observations to every training point.

  Row m equals ``query_distances(ws[m], dataset, metric)``.

  :returns: M x N matrix
  """
  metric = resolve_metric(metric)
  ws = np.asarray(ws, dtype=float)
  if ws.shape[1:] != dataset.data.shape[1:]:
    raise InvalidInputError("queries have shape %s, training observations %s"
                            % (ws.shape[1:], dataset.data.shape[1:]))
  if isinstance(metric, CustomMetric):
    return np.array([metric.to(w, dataset.data) for w in ws])
  return spdist.cdist(ws, _as_matrix(dataset), _SCIPY_NAMES[metric])
