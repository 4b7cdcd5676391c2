"""
Distance-based and rank-based classifiers.

Both classifiers summarize every observation by the k class-wise means of
its distances (distance mode) or of the column ranks of its distances
(rank mode). A quadratic discriminant fitted on the training summaries then
labels new observations. The fitted model keeps the whole training set,
because each query needs its distances to every training point.

--------
Examples
--------

Fit a rank-based classifier and score it on held-out data::

  clf = distrank.fit(train, mode=distrank.RANK)
  clf.predict(test.data[0])
  clf.misclassification_rate(test)

Graph observations through a plugin metric::

  clf = distrank.fit(graphs, mode=distrank.RANK,
                     metric=distrank.graphs.frobenius_metric())
"""

import logging

import numpy as np

from .constants import DEFAULT_METRIC, MODES, RANK
from .discriminants import QdaModel
from .distances import (QueryVector, column_ranks,
                        group_mean_matrix, pairwise_distances, query_distances,
                        query_distances_many, query_ranks, query_summary,
                        resolve_metric)
from .errors import DistrankError, InvalidInputError

log = logging.getLogger(__name__)


class FittedClassifier(object):
  """A trained distance- or rank-based classifier.

  Instances are immutable and safe to share between threads.

  :ivar mode: :const:`distrank.constants.DISTANCE` or
              :const:`distrank.constants.RANK`
  :ivar metric: metric name or :class:`distrank.distances.CustomMetric`
  :ivar training: the training :class:`distrank.dataset.LabeledDataset`
  :ivar dist: training :class:`distrank.distances.PairwiseDistances`
  :ivar ranks: :class:`distrank.distances.ColumnRanks` (rank mode) or None
  :ivar summary: training :class:`distrank.distances.SummaryStats`
  :ivar discriminant: the fitted final classifier (a
                      :class:`distrank.discriminants.QdaModel` by default)
  """

  def __init__(self, mode, metric, training, dist, ranks, summary,
               discriminant):
    self.mode = mode
    self.metric = metric
    self.training = training
    self.dist = dist
    self.ranks = ranks
    self.summary = summary
    self.discriminant = discriminant

  @property
  def qda(self):
    """Alias of :attr:`discriminant`."""
    return self.discriminant

  def __repr__(self):
    return "FittedClassifier(mode=%s, metric=%s, %r)" % (
      self.mode, self.metric, self.training)

  def _summarize(self, d_w):
    labels = self.training.labels
    k = self.training.n_classes
    if self.mode == RANK:
      r_w = query_ranks(d_w, self.dist)
      return QueryVector(d_w, r_w, query_summary(r_w, labels, k))
    return QueryVector(d_w, None, query_summary(d_w, labels, k))

  def query(self, w):
    """Compute the distance, rank and summary vectors of one observation.

    :rtype: :class:`distrank.distances.QueryVector`
    """
    return self._summarize(query_distances(w, self.training, self.metric))

  def predict(self, w):
    """Label a new observation.

    :param w: observation shaped like a training observation
    :rtype: int
    """
    return self.discriminant.predict(self.query(w).summary)

  def predict_many(self, ws):
    """Label a batch of observations, each one independently.

    :param ws: array whose first axis indexes observations
    :returns: integer vector of labels
    """
    d_ws = query_distances_many(ws, self.training, self.metric)
    summaries = np.array([self._summarize(d_w).summary for d_w in d_ws])
    return self.discriminant.predict_many(summaries)

  def misclassification_rate(self, test):
    """Fraction of test observations whose predicted label is wrong.

    :param test: :class:`distrank.dataset.LabeledDataset`
    :rtype: float
    """
    if test is None or test.n_observations == 0:
      raise InvalidInputError("test set is empty")
    predicted = self.predict_many(test.data)
    return float(np.mean(predicted != test.labels))


def fit(dataset, mode=RANK, metric=None, discriminant=QdaModel):
  """Train a classifier.

  :param dataset: :class:`distrank.dataset.LabeledDataset` with k >= 2
                  classes of at least 2 observations each
  :param mode: :const:`distrank.constants.DISTANCE` or
               :const:`distrank.constants.RANK` (default)
  :param metric: metric name, :class:`distrank.distances.CustomMetric` or
                 callable (default: squared Euclidean for the distance mode,
                 Euclidean for the rank mode)
  :param discriminant: final classifier class, a
                       :class:`distrank.discriminants.BaseDiscriminant`
                       subclass (default: QDA)
  :rtype: :class:`FittedClassifier`
  """
  if mode not in MODES:
    raise InvalidInputError("unknown mode %r" % (mode,))
  k = dataset.n_classes
  if k < 2:
    raise InvalidInputError("classification needs at least two classes")
  if dataset.n_observations < 2 * k:
    raise InvalidInputError("need N >= 2k observations, got N=%d, k=%d"
                            % (dataset.n_observations, k))
  metric = resolve_metric(DEFAULT_METRIC[mode] if metric is None else metric)

  try:
    dist = pairwise_distances(dataset, metric)
    ranks = column_ranks(dist) if mode == RANK else None
    summary = group_mean_matrix(ranks if mode == RANK else dist,
                                dataset.labels, k)
    model = discriminant.fit(summary, dataset.labels, n_classes=k)
  except DistrankError as e:
    log.warning("%s-mode fit on %r failed: %s", mode, dataset, e)
    raise
  log.debug("fitted %s-mode classifier on %r", mode, dataset)
  return FittedClassifier(mode, metric, dataset, dist, ranks, summary, model)
