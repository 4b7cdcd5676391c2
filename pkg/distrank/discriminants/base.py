import numpy as np

from ..errors import InvalidInputError


class BaseDiscriminant(object):
  """Base class from which all final classifiers inherit.

  The distance and rank summaries live in k dimensions, so any
  low-dimensional classifier can finish the job. Subclasses provide
  :meth:`fit` and :meth:`scores`. Prediction is the arg max of the scores,
  with ties going to the lowest class label.
  """

  #: number of classes and length of a summary vector, set by subclasses
  n_classes = 0
  dimension = 0

  @classmethod
  def fit(cls, summary, labels, n_classes=None):
    """Fit the classifier on training summaries.

    :param summary: :class:`distrank.distances.SummaryStats` or N x k array
    :param labels: length-N labels in 1..k
    :rtype: instance of the subclass
    """
    raise NotImplementedError("fit must be implemented in subclasses")

  def scores(self, x):
    """Return the length-k vector of class scores for one summary vector."""
    raise NotImplementedError("scores must be implemented in subclasses")

  def scores_many(self, xs):
    """Return an M x k matrix of scores, one row per summary vector."""
    xs = self._check_batch(xs)
    return np.array([self.scores(x) for x in xs])

  def predict(self, x):
    """Return the label (1..k) of the highest score.

    :param x: length-k summary vector
    :rtype: int
    """
    return int(np.argmax(self.scores(x))) + 1

  def predict_many(self, xs):
    """Return the predicted labels of an M x k batch."""
    return np.argmax(self.scores_many(xs), axis=1) + 1

  def _check_vector(self, x):
    x = np.asarray(x, dtype=float)
    if x.shape != (self.dimension,):
      raise InvalidInputError("summary vector has shape %s, expected (%d,)"
                              % (x.shape, self.dimension))
    return x

  def _check_batch(self, xs):
    xs = np.asarray(xs, dtype=float)
    if xs.ndim != 2 or xs.shape[1] != self.dimension:
      raise InvalidInputError("summary batch has shape %s, expected (M, %d)"
                              % (xs.shape, self.dimension))
    return xs
