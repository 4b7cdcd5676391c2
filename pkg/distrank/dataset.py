"""
Labeled observations and their delimited-text form.

A :class:`LabeledDataset` holds N observations and their class labels
1..k. Observations are usually rows of an N x d matrix. A stack of
matrices (N x v x v adjacency matrices, for instance) is accepted too, for
use with a custom metric.

--------
Examples
--------

Load a training file whose last column is the label::

  train = distrank.read_delimited("train.csv", header=True)
  train.class_counts     # array([50, 50])
"""

import logging

import numpy as np

from .errors import InvalidInputError

log = logging.getLogger(__name__)


class LabeledDataset(object):
  """Observations with class labels 1..k.

  :ivar data: read-only array, first axis indexes observations
  :ivar labels: read-only integer vector of labels in 1..k
  :ivar class_counts: read-only vector, ``class_counts[j-1]`` = n_j
  """

  def __init__(self, data, labels, n_classes=None):
    """
    :param data: array with one observation per entry of the first axis
    :param labels: integer labels, one per observation, values in 1..k
    :param n_classes: k (default: largest label)
    """
    data = np.array(data, dtype=float)
    labels = np.array(labels)
    if data.ndim == 1:
      data = data.reshape(-1, 1)
    if data.ndim < 2 or data.shape[0] == 0:
      raise InvalidInputError("dataset needs at least one observation")
    if data.size == 0:
      raise InvalidInputError("observations must have dimension d >= 1")
    if labels.ndim != 1 or labels.shape[0] != data.shape[0]:
      raise InvalidInputError("got %d labels for %d observations"
                              % (labels.size, data.shape[0]))
    if not np.all(np.equal(np.mod(labels, 1), 0)):
      raise InvalidInputError("labels must be integers")
    labels = labels.astype(int)
    if labels.min() < 1:
      raise InvalidInputError("labels must be in 1..k")
    if n_classes is None:
      n_classes = int(labels.max())
    if labels.max() > n_classes:
      raise InvalidInputError("label %d exceeds k = %d"
                              % (labels.max(), n_classes))
    counts = np.bincount(labels, minlength=n_classes + 1)[1:]
    empty = np.flatnonzero(counts == 0)
    if empty.size:
      raise InvalidInputError("class %d has no observations" % (empty[0] + 1))

    data.setflags(write=False)
    labels.setflags(write=False)
    counts.setflags(write=False)
    self.data = data
    self.labels = labels
    self.class_counts = counts

  @property
  def n_observations(self):
    """N"""
    return self.data.shape[0]

  @property
  def n_classes(self):
    """k"""
    return self.class_counts.shape[0]

  @property
  def dimension(self):
    """d, the number of scalar entries of one observation."""
    return int(np.prod(self.data.shape[1:]))

  def __len__(self):
    return self.n_observations

  def __repr__(self):
    return ("LabeledDataset(N=%d, d=%d, k=%d)"
            % (self.n_observations, self.dimension, self.n_classes))

  def subset(self, index):
    """Return the observations selected by ``index`` as a new dataset.

    Every class must remain non-empty.
    """
    return LabeledDataset(self.data[index], self.labels[index],
                          n_classes=self.n_classes)

  def permuted(self, order):
    """Return the dataset with observations reordered by ``order``."""
    order = np.asarray(order)
    if sorted(order.tolist()) != list(range(self.n_observations)):
      raise InvalidInputError("order is not a permutation")
    return self.subset(order)

  def with_labels(self, labels):
    """Return the same observations under different labels."""
    return LabeledDataset(self.data, labels, n_classes=self.n_classes)

  def flattened(self):
    """Return the dataset with each observation flattened to a vector."""
    return LabeledDataset(self.data.reshape(self.n_observations, -1),
                          self.labels, n_classes=self.n_classes)


def concatenate(parts, n_classes=None):
  """Stack several datasets into one.

  :param parts: iterable of :class:`LabeledDataset`
  :rtype: :class:`LabeledDataset`
  """
  parts = list(parts)
  if not parts:
    raise InvalidInputError("nothing to concatenate")
  if n_classes is None:
    n_classes = max(p.n_classes for p in parts)
  return LabeledDataset(np.concatenate([p.data for p in parts]),
                        np.concatenate([p.labels for p in parts]),
                        n_classes=n_classes)


def read_delimited(path, delimiter=",", header=False):
  """Read a delimited-text dataset.

  Each row is one observation: feature columns followed by an integer label.

  :param path: file path
  :param delimiter: column separator (default: ",")
  :param header: skip the first line when True
  :rtype: :class:`LabeledDataset`
  """
  table = np.loadtxt(path, delimiter=delimiter, skiprows=1 if header else 0,
                     ndmin=2)
  if table.shape[1] < 2:
    raise InvalidInputError("%s: need feature columns and a label column"
                            % path)
  log.debug("read %d rows x %d features from %s", table.shape[0],
            table.shape[1] - 1, path)
  return LabeledDataset(table[:, :-1], table[:, -1])


def write_delimited(dataset, path, delimiter=",", header=False):
  """Write a dataset in the format read by :func:`read_delimited`.

  Matrix observations are flattened row-major.

  :param dataset: :class:`LabeledDataset`
  :param path: file path
  :param header: write a ``x1,...,xd,label`` header line when True
  """
  flat = dataset.data.reshape(dataset.n_observations, -1)
  names = ""
  if header:
    names = delimiter.join(["x%d" % (i + 1) for i in range(flat.shape[1])]
                           + ["label"])
  table = np.column_stack([flat, dataset.labels])
  formats = ["%.17g"] * flat.shape[1] + ["%d"]
  np.savetxt(path, table, delimiter=delimiter, fmt=formats, header=names,
             comments="")
