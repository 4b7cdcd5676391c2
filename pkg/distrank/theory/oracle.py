"""
Monte Carlo estimate of the summary moments.

Each replicate draws a fresh training set (n points ``A x``, m points
``B y + mu``) plus one independent test point from each class. It then
records D(X_1), D(Y_1), D(W_x) and D(W_y) in squared Euclidean distance.
Empirical means and covariances over the replicates estimate the
quantities of :func:`distrank.theory.moments.summary_moments`, with
standard errors attached.

Replicates are simulated in fixed-size chunks. Chunk i draws from child i
of ``SeedSequence(seed)``, so the result depends only on (seed, reps).
"""

import logging

import numpy as np

from ..distributions import parse_law
from ..errors import InvalidInputError
from .moments import SummaryMoments

log = logging.getLogger(__name__)

MIN_REPS = 1000
CHUNK = 5000


def _sampler(generator):
  """Turn a base law, its text form or a ``(rng, shape)`` callable into a
  sampling function."""
  if callable(generator) and not hasattr(generator, "sample"):
    return generator
  return parse_law(generator).sample


def _simulate(spec, draw_x, draw_y, rng, count):
  d, n, m = spec.dimension, spec.n, spec.m
  x = draw_x(rng, (count, n + 1, d)) @ spec.A.T
  y = draw_y(rng, (count, m + 1, d)) @ spec.B.T + spec.mu
  train_x, w_x = x[:, :n], x[:, n]
  train_y, w_y = y[:, :m], y[:, m]

  def mean_sq(points, target):
    diff = points - target[:, None, :]
    return np.einsum("rkd,rkd->rk", diff, diff)

  to_x1 = mean_sq(train_x, train_x[:, 0])
  to_y1 = mean_sq(train_y, train_y[:, 0])
  d_x = np.column_stack([to_x1[:, 1:].mean(axis=1),
                         mean_sq(train_y, train_x[:, 0]).mean(axis=1)])
  d_y = np.column_stack([mean_sq(train_x, train_y[:, 0]).mean(axis=1),
                         to_y1[:, 1:].mean(axis=1)])
  d_wx = np.column_stack([mean_sq(train_x, w_x).mean(axis=1),
                          mean_sq(train_y, w_x).mean(axis=1)])
  d_wy = np.column_stack([mean_sq(train_x, w_y).mean(axis=1),
                          mean_sq(train_y, w_y).mean(axis=1)])
  return d_x, d_y, d_wx, d_wy


def _estimate(samples):
  """Mean, covariance and their standard errors of an R x 2 sample."""
  reps = samples.shape[0]
  mean = samples.mean(axis=0)
  centered = samples - mean
  cov = np.cov(samples, rowvar=False, ddof=1)
  cov = (cov + cov.T) / 2
  products = centered[:, :, None] * centered[:, None, :]
  mean_se = samples.std(axis=0, ddof=1) / np.sqrt(reps)
  cov_se = products.std(axis=0, ddof=1) / np.sqrt(reps)
  return mean, cov, mean_se, cov_se


def mc_oracle_moments(spec, generator_x, generator_y, reps=MIN_REPS, seed=0):
  """Estimate the summary moments of a spec by simulation.

  The generators must produce mean-zero coordinates matching the spec's
  moments.

  :param spec: :class:`distrank.theory.moments.MomentSpec`
  :param generator_x: :class:`distrank.distributions.BaseLaw`, its text
                      form or a callable ``(rng, shape) -> array``
  :param generator_y: same for class Y
  :param reps: replicates, at least 1000
  :param seed: non-negative integer
  :returns: :class:`distrank.theory.moments.SummaryMoments` with
            ``stderr`` set
  """
  if int(reps) != reps or reps < MIN_REPS:
    raise InvalidInputError("reps must be an integer >= %d" % MIN_REPS)
  if int(seed) != seed or seed < 0:
    raise InvalidInputError("seed must be a non-negative integer")
  draw_x = _sampler(generator_x)
  draw_y = _sampler(generator_y)
  reps = int(reps)

  sizes = [CHUNK] * (reps // CHUNK)
  if reps % CHUNK:
    sizes.append(reps % CHUNK)
  children = np.random.SeedSequence(int(seed)).spawn(len(sizes))
  parts = [_simulate(spec, draw_x, draw_y, np.random.default_rng(child), size)
           for child, size in zip(children, sizes)]
  samples = [np.concatenate([p[i] for p in parts]) for i in range(4)]
  log.debug("simulated %d replicates of %r", reps, spec)

  estimates = [_estimate(s) for s in samples]
  means = [e[0] for e in estimates]
  covs = [e[1] for e in estimates]
  stderr = SummaryMoments(*([e[2] for e in estimates]
                            + [(e[3] + e[3].T) / 2 for e in estimates]))
  return SummaryMoments(*(means + covs), stderr=stderr)
