"""
Quadratic discriminant analysis in the summary space.

For class j with mean mu_j, covariance S_j and prior p_j the discriminant is::

  delta_j(x) = -1/2 log|S_j| - 1/2 (x - mu_j)' S_j^-1 (x - mu_j) + log p_j

Covariances are factorized with a Cholesky decomposition. The
log-determinant comes from the factor's diagonal. A covariance that fails
the factorization gets a ridge ``eps * mean(diag S_j) * I``, with eps growing
from 1e-8 by factors of 10 up to 1e-2. If it still fails,
:class:`distrank.errors.SingularCovarianceError` is raised.

--------
Examples
--------

Fit on the rank summaries of a training set and save the model::

  model = QdaModel.fit(summary, train.labels)
  model.predict(query.summary)
  model.dump("model.yaml")
"""

import logging

import numpy as np
import yaml
from scipy import linalg

from ..constants import QDA_SCHEMA, RIDGE_START, RIDGE_STEP, RIDGE_STOP
from ..errors import (ConfigError, DegenerateClassError, InvalidInputError,
                      SingularCovarianceError)
from .base import BaseDiscriminant

log = logging.getLogger(__name__)


def factorize(covariance, label):
  """Cholesky-factorize a covariance, adding a ridge when needed.

  :param covariance: symmetric p x p matrix
  :param label: name used in logs and errors
  :returns: (lower factor, ridge amount added)
  :raises SingularCovarianceError: when the largest ridge is not enough
  """
  covariance = np.asarray(covariance, dtype=float)
  if not np.all(np.isfinite(covariance)):
    raise SingularCovarianceError(label, 0.0)
  try:
    return linalg.cholesky(covariance, lower=True), 0.0
  except linalg.LinAlgError:
    pass

  scale = np.mean(np.diag(covariance))
  if scale <= 0:
    scale = 1.0
  identity = np.eye(covariance.shape[0])
  eps = RIDGE_START
  while eps <= RIDGE_STOP * (1 + 1e-9):
    try:
      factor = linalg.cholesky(covariance + eps * scale * identity, lower=True)
    except linalg.LinAlgError:
      eps *= RIDGE_STEP
      continue
    log.warning("covariance of %s is singular; added ridge %.3g", label,
                eps * scale)
    return factor, eps * scale
  raise SingularCovarianceError(label, eps / RIDGE_STEP)


class QdaModel(BaseDiscriminant):
  """Per-class Gaussian model with its discriminant functions.

  :ivar means: k x p matrix, row j-1 is the mean of class j
  :ivar covariances: k x p x p estimates as given (before the ridge)
  :ivar priors: length-k class priors
  :ivar log_dets: length-k log-determinants after the ridge
  :ivar regularization: length-k ridge amounts (0 when none was needed)
  """

  def __init__(self, means, covariances, priors):
    """
    :param means: k x p class means
    :param covariances: k x p x p class covariances
    :param priors: length-k priors in (0, 1] summing to 1
    """
    means = np.array(means, dtype=float)
    covariances = np.array(covariances, dtype=float)
    priors = np.array(priors, dtype=float)
    if means.ndim != 2:
      raise InvalidInputError("means must be a k x p matrix")
    k, p = means.shape
    if covariances.shape != (k, p, p):
      raise InvalidInputError("covariances have shape %s, expected %s"
                              % (covariances.shape, (k, p, p)))
    if priors.shape != (k,) or np.any(priors <= 0) or np.any(priors > 1):
      raise InvalidInputError("priors must be k values in (0, 1]")
    if not np.isclose(priors.sum(), 1.0):
      raise InvalidInputError("priors sum to %g, not 1" % priors.sum())

    factors = []
    ridges = []
    for j in range(k):
      factor, ridge = factorize(covariances[j], "class %d" % (j + 1))
      factors.append(factor)
      ridges.append(ridge)

    self.n_classes = k
    self.dimension = p
    self.means = means
    self.covariances = covariances
    self.priors = priors
    self.regularization = np.array(ridges)
    self._factors = np.array(factors)
    self.log_dets = np.array([2.0 * np.sum(np.log(np.diag(f)))
                              for f in factors])
    self._log_priors = np.log(priors)
    for a in (self.means, self.covariances, self.priors, self.regularization,
              self._factors, self.log_dets):
      a.setflags(write=False)

  @property
  def regularized_covariances(self):
    """k x p x p covariances with the ridge added; all positive definite."""
    identity = np.eye(self.dimension)
    return np.array([c + r * identity for c, r in
                     zip(self.covariances, self.regularization)])

  @classmethod
  def fit(cls, summary, labels, n_classes=None):
    """Estimate class means, covariances (denominator n_j - 1) and priors.

    :param summary: :class:`distrank.distances.SummaryStats` or N x p array
    :param labels: length-N labels in 1..k
    :param n_classes: k (default: largest label)
    :rtype: :class:`QdaModel`
    :raises DegenerateClassError: when a class has fewer than 2 rows
    """
    rows = np.asarray(getattr(summary, "values", summary), dtype=float)
    labels = np.asarray(labels, dtype=int)
    if rows.ndim != 2 or rows.shape[0] != labels.shape[0]:
      raise InvalidInputError("summary must be an N x p matrix matching "
                              "the labels")
    if n_classes is None:
      n_classes = int(labels.max())
    means = []
    covariances = []
    for j in range(1, n_classes + 1):
      members = rows[labels == j]
      if members.shape[0] < 2:
        raise DegenerateClassError(j, "class %d has %d rows; QDA needs at "
                                   "least 2" % (j, members.shape[0]))
      means.append(members.mean(axis=0))
      covariances.append(np.atleast_2d(np.cov(members, rowvar=False, ddof=1)))
    priors = np.bincount(labels, minlength=n_classes + 1)[1:] / labels.size
    return cls(means, covariances, priors)

  def scores(self, x):
    """Return the k discriminants of one summary vector.

    :param x: length-p vector
    :returns: length-k vector, entry j-1 is delta_j(x)
    """
    return self.scores_many(self._check_vector(x)[None, :])[0]

  def scores_many(self, xs):
    """Return the M x k discriminants of a batch of summary vectors."""
    xs = self._check_batch(xs)
    out = np.empty((xs.shape[0], self.n_classes))
    for j in range(self.n_classes):
      z = linalg.solve_triangular(self._factors[j], (xs - self.means[j]).T,
                                  lower=True)
      out[:, j] = (-0.5 * self.log_dets[j] - 0.5 * np.sum(z * z, axis=0)
                   + self._log_priors[j])
    return out

  def to_document(self):
    """Return the model as a YAML-ready dict (schema ``distrank.qda/1``)."""
    classes = []
    for j in range(self.n_classes):
      classes.append({
        "label": j + 1,
        "prior": float(self.priors[j]),
        "mean": self.means[j].tolist(),
        "covariance": self.covariances[j].tolist(),
        "regularization": float(self.regularization[j]),
      })
    return {"schema": QDA_SCHEMA, "classes": classes}

  @classmethod
  def from_document(cls, document):
    """Rebuild a model from :meth:`to_document` output."""
    if not isinstance(document, dict) or document.get("schema") != QDA_SCHEMA:
      raise ConfigError("not a %s document" % QDA_SCHEMA)
    try:
      classes = sorted(document["classes"], key=lambda c: c["label"])
      return cls([c["mean"] for c in classes],
                 [c["covariance"] for c in classes],
                 [c["prior"] for c in classes])
    except (KeyError, TypeError) as e:
      raise ConfigError("malformed %s document: %s" % (QDA_SCHEMA, e))

  def dump(self, path):
    """Write the model to a YAML file."""
    with open(path, "w") as f:
      yaml.safe_dump(self.to_document(), f, sort_keys=False)

  @classmethod
  def load(cls, path):
    """Read a model written by :meth:`dump`."""
    with open(path) as f:
      return cls.from_document(yaml.safe_load(f))
