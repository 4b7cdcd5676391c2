"""
Synthetic data for the benchmark scenarios.

Vector scenarios draw ``X = A x`` and ``Y = B y + mu`` with ``A A' = Sigma``,
``Sigma[r, c] = rho^|r - c|``, ``B = a A`` and ``mu = mu0 * u``, where u is a
random unit direction. The coordinates of x and y are i.i.d. from the
scenario's base laws.

* S1-S4, S10-S13: two classes (:func:`gen_two_class`)
* S5-S7: four classes with scales (1, a, 1, a) and shifts (0, 0, mu, mu)
  (:func:`gen_multi_class`)
* outlier contamination of the first class-X training rows
  (:func:`contaminate_outliers`)

Graph scenarios S8 and S9 live in :mod:`distrank.graphs`.

Every generator is a pure function of ``(config.seed, trial_index)``. Each
trial spawns independent child streams from a
:class:`numpy.random.SeedSequence`. The unit direction u is redrawn per
trial unless ``pin_direction`` is set.

--------
Examples
--------

::

  cfg = ScenarioConfig("S1", mu0=6, a=1, seed=7)
  train, test = gen_two_class(cfg, trial_index=0)
"""

import functools
import logging

import numpy as np
from scipy import linalg

from . import constants
from .constants import MULTI_CLASS, NETWORK, SCENARIOS, TWO_CLASS
from .dataset import LabeledDataset
from .distributions import parse_law
from .errors import InvalidInputError

log = logging.getLogger(__name__)

# Spawn key of the direction stream when it is shared by all trials
_PINNED_KEY = 2 ** 32

# Child streams per trial
_STREAMS = 12


class ScenarioConfig(object):
  """Settings of one scenario configuration.

  Fields left as None take the defaults of
  :data:`distrank.constants.SCENARIOS`.

  :ivar scenario_id: "S1" .. "S13"
  :ivar d: dimension (v * v for graph scenarios)
  :ivar n_train: class-X (or per-class) training count
  :ivar m_train: class-Y training count
  :ivar n_test: class-X (or per-class) test count
  :ivar m_test: class-Y test count
  :ivar mu0: mean-shift length
  :ivar a: scale ratio (vector scenarios) or degree shift (S8, S9)
  :ivar base_x: :class:`distrank.distributions.BaseLaw` of class X
  :ivar base_y: :class:`distrank.distributions.BaseLaw` of class Y
  :ivar trials: number of trials
  :ivar seed: base seed
  :ivar outliers: number of contaminated class-X training rows
  :ivar rho: AR(1) correlation
  :ivar pin_direction: share one mean direction across all trials
  """

  _FIELDS = ("d", "n_train", "m_train", "n_test", "m_test", "mu0", "a",
             "base_x", "base_y", "trials")

  def __init__(self, scenario_id, d=None, n_train=None, m_train=None,
               n_test=None, m_test=None, mu0=None, a=None, base_x=None,
               base_y=None, trials=None, seed=0, outliers=0, rho=None,
               pin_direction=False):
    if scenario_id not in SCENARIOS:
      raise InvalidInputError("unknown scenario %r" % (scenario_id,))
    defaults = SCENARIOS[scenario_id]
    given = dict(d=d, n_train=n_train, m_train=m_train, n_test=n_test,
                 m_test=m_test, mu0=mu0, a=a, base_x=base_x, base_y=base_y,
                 trials=trials)
    for name in self._FIELDS:
      value = given[name]
      setattr(self, name, defaults[name] if value is None else value)

    self.scenario_id = scenario_id
    self.family = defaults["family"]
    self.seed = int(seed)
    self.outliers = int(outliers or 0)
    self.rho = constants.AR_RHO if rho is None else float(rho)
    self.pin_direction = bool(pin_direction)
    self.mu0 = float(self.mu0)
    if self.family != NETWORK:
      self.base_x = parse_law(self.base_x)
      self.base_y = parse_law(self.base_y)
    self._validate()

  def _validate(self):
    for name in ("d", "n_train", "m_train", "n_test", "m_test", "trials"):
      if int(getattr(self, name)) != getattr(self, name):
        raise InvalidInputError("%s must be an integer" % name)
      setattr(self, name, int(getattr(self, name)))
    if self.d < 1:
      raise InvalidInputError("d must be >= 1")
    if min(self.n_train, self.m_train, self.n_test, self.m_test) < 2:
      raise InvalidInputError("every class count must be >= 2")
    if self.trials < 1:
      raise InvalidInputError("trials must be >= 1")
    if self.mu0 < 0:
      raise InvalidInputError("mu0 must be >= 0")
    if not -1 < self.rho < 1:
      raise InvalidInputError("rho must lie in (-1, 1)")
    if self.family == NETWORK:
      low, high = constants.GRAPH_A_RANGE[self.scenario_id]
      if self.a != int(self.a) or not low <= self.a <= high:
        raise InvalidInputError("%s needs an integer a in [%d, %d], got %s"
                                % (self.scenario_id, low, high, self.a))
      self.a = int(self.a)
    else:
      self.a = float(self.a)
      if self.a <= 0:
        raise InvalidInputError("a must be > 0")
    if not 0 <= self.outliers <= self.n_train:
      raise InvalidInputError("outliers must lie in [0, n_train]")

  def __repr__(self):
    return ("ScenarioConfig(%s, mu0=%g, a=%g, d=%d, outliers=%d, seed=%d)"
            % (self.scenario_id, self.mu0, self.a, self.d, self.outliers,
               self.seed))

  def replace(self, **changes):
    """Return a copy with some fields changed."""
    fields = self.to_dict()
    fields.update(changes)
    return ScenarioConfig(**fields)

  def to_dict(self):
    """Return the configuration as plain YAML-ready values."""
    out = {"scenario_id": self.scenario_id}
    for name in self._FIELDS:
      value = getattr(self, name)
      out[name] = None if value is None else (
        str(value) if name.startswith("base_") else value)
    out.update(seed=self.seed, outliers=self.outliers, rho=self.rho,
               pin_direction=self.pin_direction)
    return out

  def trial_streams(self, trial_index):
    """Independent child seed sequences of one trial.

    :raises InvalidInputError: when trial_index is out of range
    """
    if not 0 <= trial_index < self.trials:
      raise InvalidInputError("trial %d outside 0..%d"
                              % (trial_index, self.trials - 1))
    root = np.random.SeedSequence(entropy=self.seed, spawn_key=(trial_index,))
    return root.spawn(_STREAMS)

  def direction(self, trial_index):
    """Unit mean direction used in one trial."""
    if self.pin_direction:
      seed = np.random.SeedSequence(entropy=self.seed,
                                    spawn_key=(_PINNED_KEY,))
    else:
      seed = self.trial_streams(trial_index)[0]
    return random_unit_direction(self.d, seed)


@functools.lru_cache(maxsize=8)
def _cached_factor(d, rho):
  idx = np.arange(d)
  sigma = rho ** np.abs(idx[:, None] - idx[None, :])
  factor = linalg.cholesky(sigma, lower=True)
  factor.setflags(write=False)
  return factor


def ar_factor(d, rho=constants.AR_RHO):
  """Lower-triangular A with ``A A' = Sigma``, ``Sigma[r, c] = rho^|r - c|``.

  :param d: dimension >= 1
  :param rho: correlation in (-1, 1)
  :returns: read-only d x d matrix
  """
  if int(d) != d or d < 1:
    raise InvalidInputError("d must be a positive integer")
  if not -1 < rho < 1:
    raise InvalidInputError("rho must lie in (-1, 1)")
  return _cached_factor(int(d), float(rho))


def random_unit_direction(d, seed):
  """A uniformly random unit vector: a standard normal draw, normalized.

  :param d: dimension >= 1
  :param seed: anything :func:`numpy.random.default_rng` accepts
  """
  if d < 1:
    raise InvalidInputError("d must be >= 1")
  v = np.random.default_rng(seed).standard_normal(d)
  return v / np.linalg.norm(v)


def _draw(law, factor, scale, shift, rng, count):
  """``count`` rows of ``scale * A z + shift`` with z i.i.d. from law."""
  z = law.sample(rng, (count, factor.shape[0]))
  return scale * (z @ factor.T) + shift


def gen_two_class(cfg, trial_index):
  """Training and test sets of one two-class trial.

  Class X (label 1) is ``A x``, class Y (label 2) is ``a A y + mu``. The
  first ``cfg.outliers`` class-X training rows are replaced by outliers.

  :param cfg: :class:`ScenarioConfig` of the two-class family
  :param trial_index: 0 .. cfg.trials - 1
  :returns: (train, test) :class:`distrank.dataset.LabeledDataset` pair
  """
  if cfg.family != TWO_CLASS:
    raise InvalidInputError("%s is not a two-class scenario" % cfg.scenario_id)
  streams = cfg.trial_streams(trial_index)
  rngs = [np.random.default_rng(s) for s in streams]
  factor = ar_factor(cfg.d, cfg.rho)
  mu = cfg.mu0 * cfg.direction(trial_index)

  def sample(n, m, rx, ry):
    x = _draw(cfg.base_x, factor, 1.0, 0.0, rx, n)
    y = _draw(cfg.base_y, factor, cfg.a, mu, ry, m)
    return LabeledDataset(np.vstack([x, y]),
                          np.repeat([1, 2], [n, m]), n_classes=2)

  train = sample(cfg.n_train, cfg.m_train, rngs[1], rngs[2])
  test = sample(cfg.n_test, cfg.m_test, rngs[3], rngs[4])
  if cfg.outliers:
    train = contaminate_outliers(train, cfg, cfg.outliers, rngs[5], mu)
  return train, test


def gen_multi_class(cfg, trial_index):
  """Training and test sets of one four-class trial (S5-S7).

  Class i is ``a_i A z + mu_i`` with ``(a_1..a_4) = (1, a, 1, a)`` and
  ``(mu_1..mu_4) = (0, 0, mu, mu)``. Every class gets ``cfg.n_train``
  training and ``cfg.n_test`` test rows.

  :returns: (train, test) with labels 1..4
  """
  if cfg.family != MULTI_CLASS:
    raise InvalidInputError("%s is not a multi-class scenario"
                            % cfg.scenario_id)
  streams = cfg.trial_streams(trial_index)
  rngs = [np.random.default_rng(s) for s in streams]
  factor = ar_factor(cfg.d, cfg.rho)
  mu = cfg.mu0 * cfg.direction(trial_index)
  grid = [(1.0, 0.0), (cfg.a, 0.0), (1.0, mu), (cfg.a, mu)]

  def sample(count, offset):
    rows = [_draw(cfg.base_x, factor, scale, shift, rngs[offset + i], count)
            for i, (scale, shift) in enumerate(grid)]
    return LabeledDataset(np.vstack(rows),
                          np.repeat(np.arange(1, 5), count), n_classes=4)

  return sample(cfg.n_train, 1), sample(cfg.n_test, 5)


def contaminate_outliers(train, cfg, n_outliers, seed, mu):
  """Replace the first class-X training rows by outliers.

  Outliers are ``(5 (a - 1) + 1) A x + 5 mu``. All other rows are kept.

  :param train: two-class training :class:`distrank.dataset.LabeledDataset`
  :param cfg: :class:`ScenarioConfig` the data came from
  :param n_outliers: number of rows to replace, at most n (class-X size)
  :param seed: anything :func:`numpy.random.default_rng` accepts
  :param mu: the trial's mean shift vector
  :rtype: :class:`distrank.dataset.LabeledDataset`
  """
  class_x = np.flatnonzero(train.labels == 1)
  if not 0 <= n_outliers <= class_x.size:
    raise InvalidInputError("cannot replace %d of %d class-X rows"
                            % (n_outliers, class_x.size))
  if n_outliers == 0:
    return train
  rng = np.random.default_rng(seed)
  factor = ar_factor(cfg.d, cfg.rho)
  scale = 5.0 * (cfg.a - 1.0) + 1.0
  data = np.array(train.data)
  data[class_x[:n_outliers]] = _draw(cfg.base_x, factor, scale,
                                     5.0 * np.asarray(mu), rng, n_outliers)
  log.debug("replaced %d class-X rows by outliers (scale %g)", n_outliers,
            scale)
  return LabeledDataset(data, train.labels, n_classes=train.n_classes)


def generate(cfg, trial_index):
  """Dispatch to the generator of the configuration's family.

  :returns: (train, test)
  """
  if cfg.family == TWO_CLASS:
    return gen_two_class(cfg, trial_index)
  if cfg.family == MULTI_CLASS:
    return gen_multi_class(cfg, trial_index)
  from .graphs import gen_network
  train, test = gen_network(cfg, trial_index)
  return train.flattened(), test.flattened()
