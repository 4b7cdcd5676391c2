"""
Analytic misclassification rate of the distance-based classifier.

Test summaries are drawn from the equal-weight mixture::

  0.5 N(mu_dwx, sig_dwx) + 0.5 N(mu_dwy, sig_dwy)

Each draw is labeled by its mixture component. It is then classified by the
quadratic discriminant built from the training-population moments
(mu_dx, sig_dx) and (mu_dy, sig_dy) with equal priors. The rate is the
fraction of draws whose label is wrong. Draws are independent of the
training-population parameters.

Borderline covariances get the ridge of :func:`distrank.discriminants.qda.factorize`.

--------
Examples
--------

::

  spec = MomentSpec.from_scenario(ScenarioConfig("S10", mu0=2.0, a=1.0))
  analytic_misclassification(summary_moments(spec), num_samples=100000)
"""

import logging

import numpy as np

from ..discriminants.qda import QdaModel, factorize
from ..errors import InvalidInputError

log = logging.getLogger(__name__)

MIN_SAMPLES = 10000
CHUNK = 100000


def _mixture(sm, rng, count):
  """Draw ``count`` labeled summaries from the test-point mixture."""
  labels = np.where(rng.random(count) < 0.5, 1, 2)
  out = np.empty((count, 2))
  for label, mean, sigma in ((1, sm.mu_dwx, sm.sig_dwx),
                             (2, sm.mu_dwy, sm.sig_dwy)):
    rows = labels == label
    factor, _ = factorize(sigma, "test-point class %d" % label)
    z = rng.standard_normal((int(rows.sum()), 2))
    out[rows] = z @ factor.T + mean
  return out, labels


def analytic_misclassification(sm, num_samples=100000, seed=0):
  """Estimate the misclassification rate implied by a set of moments.

  :param sm: :class:`distrank.theory.moments.SummaryMoments`
  :param num_samples: mixture draws, at least 10000
  :param seed: non-negative integer
  :returns: rate in [0, 1]
  :raises SingularCovarianceError: when a covariance stays singular after
                                   the largest ridge
  """
  if int(num_samples) != num_samples or num_samples < MIN_SAMPLES:
    raise InvalidInputError("num_samples must be an integer >= %d"
                            % MIN_SAMPLES)
  if int(seed) != seed or seed < 0:
    raise InvalidInputError("seed must be a non-negative integer")
  num_samples = int(num_samples)
  model = QdaModel([sm.mu_dx, sm.mu_dy], [sm.sig_dx, sm.sig_dy], [0.5, 0.5])

  sizes = [CHUNK] * (num_samples // CHUNK)
  if num_samples % CHUNK:
    sizes.append(num_samples % CHUNK)
  children = np.random.SeedSequence(int(seed)).spawn(len(sizes))
  wrong = 0
  for child, size in zip(children, sizes):
    draws, labels = _mixture(sm, np.random.default_rng(child), size)
    wrong += int(np.sum(model.predict_many(draws) != labels))
  rate = wrong / num_samples
  log.debug("analytic rate %.4f from %d draws", rate, num_samples)
  return rate


def rate_stderr(rate, num_samples):
  """Binomial standard error of an estimated rate."""
  return float(np.sqrt(rate * (1.0 - rate) / num_samples))
