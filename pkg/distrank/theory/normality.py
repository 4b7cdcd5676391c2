"""
Diagnostic for the asymptotic normality of D(X_i).

``A`` and ``B`` are banded Toeplitz matrices: ``A[i, j] = alpha[m0 - 1 + j - i]``
for ``|i - j| < m0``, likewise B from beta. For each dimension d the
diagnostic simulates ``(D(X_1) - mean) / sqrt(d)`` and reports Mardia's
multivariate skewness and kurtosis statistics with their p-values. The
output is descriptive: nothing is asserted about it.
"""

import logging

import numpy as np
from scipy import sparse, stats

from ..errors import InvalidInputError

log = logging.getLogger(__name__)

DEFAULT_ALPHA = (0.25, 0.5, 1.0, 0.5, 0.25)
DEFAULT_BETA = (0.3, 0.6, 1.2, 0.6, 0.3)


class NormalityReport(object):
  """Mardia statistics of the simulated summaries at one dimension.

  :ivar d: dimension
  :ivar reps: number of simulated summaries
  :ivar skewness: Mardia's b1 statistic
  :ivar skewness_p: chi-square p-value of ``reps * b1 / 6``
  :ivar kurtosis: Mardia's b2 statistic
  :ivar kurtosis_p: two-sided normal p-value of standardized b2
  """

  def __init__(self, d, reps, skewness, skewness_p, kurtosis, kurtosis_p):
    self.d = d
    self.reps = reps
    self.skewness = skewness
    self.skewness_p = skewness_p
    self.kurtosis = kurtosis
    self.kurtosis_p = kurtosis_p

  def __repr__(self):
    return ("NormalityReport(d=%d, skew p=%.3f, kurt p=%.3f)"
            % (self.d, self.skewness_p, self.kurtosis_p))


def band_matrix(d, band):
  """Sparse d x d Toeplitz matrix with the odd-length ``band`` on its
  central diagonals."""
  band = np.asarray(band, dtype=float)
  if band.ndim != 1 or band.size % 2 == 0:
    raise InvalidInputError("band must have odd length 2 m0 - 1")
  half = band.size // 2
  offsets = list(range(-half, half + 1))
  return sparse.diags(list(band), offsets, shape=(d, d), format="csr")


def mardia(samples):
  """Mardia's skewness and kurtosis of an R x p sample.

  :returns: (b1, p-value, b2, p-value)
  """
  samples = np.asarray(samples, dtype=float)
  r, p = samples.shape
  centered = samples - samples.mean(axis=0)
  cov = centered.T @ centered / r
  whitened = np.linalg.solve(cov, centered.T)
  gram = centered @ whitened
  b1 = np.sum(gram ** 3) / (r * r)
  b2 = np.mean(np.diag(gram) ** 2)
  skew_df = p * (p + 1) * (p + 2) / 6.0
  skew_p = float(stats.chi2.sf(r * b1 / 6.0, skew_df))
  z = (b2 - p * (p + 2)) / np.sqrt(8.0 * p * (p + 2) / r)
  kurt_p = float(2.0 * stats.norm.sf(abs(z)))
  return float(b1), skew_p, float(b2), kurt_p


def normality_diagnostic(d_values=(500, 5000), reps=500, seed=0, n=20, m=20,
                         alpha=DEFAULT_ALPHA, beta=DEFAULT_BETA, mu0=0.0):
  """Simulate the training summary D(X_1) under banded factors.

  :param d_values: dimensions to simulate
  :param reps: simulated summaries per dimension, at least 10
  :param seed: non-negative integer
  :param n: class-X training count
  :param m: class-Y training count
  :param alpha: band of A, length 2 m0 - 1
  :param beta: band of B, same length as alpha
  :param mu0: constant value of every coordinate of mu
  :returns: list of :class:`NormalityReport`, one per dimension
  """
  if reps < 10:
    raise InvalidInputError("reps must be >= 10")
  if len(alpha) != len(beta):
    raise InvalidInputError("alpha and beta must have the same length")
  reports = []
  children = np.random.SeedSequence(int(seed)).spawn(len(d_values))
  for d, child in zip(d_values, children):
    rng = np.random.default_rng(child)
    A = band_matrix(d, alpha)
    B = band_matrix(d, beta)
    summaries = np.empty((reps, 2))
    for r in range(reps):
      x = (A @ rng.standard_normal((d, n))).T
      y = (B @ rng.standard_normal((d, m))).T + mu0
      x1 = x[0]
      summaries[r, 0] = np.sum((x[1:] - x1) ** 2) / (n - 1)
      summaries[r, 1] = np.sum((y - x1) ** 2) / m
    scaled = (summaries - summaries.mean(axis=0)) / np.sqrt(d)
    report = NormalityReport(d, reps, *mardia(scaled))
    log.info("d=%d: %r", d, report)
    reports.append(report)
  return reports
