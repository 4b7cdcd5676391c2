"""
Closed-form moments of the distance summaries in the two-class model.

The model draws ``X = A x`` and ``Y = B y + mu``. The coordinates of x and
y are i.i.d. and mean-zero, with raw moments ``(m2, m3, m4)``. For a training
point X_i the distance summary is::

  D(X_i) = ( 1/(n-1) sum_{k != i} |X_k - X_i|^2 ,  1/m sum_j |Y_j - X_i|^2 )

and analogously for a training point Y_j and for independent test points W.
This module gives the exact mean and covariance of each of the four
summaries. It works in squared Euclidean distance.

Building blocks, with ``s_A = m2 |A|_F^2`` and ``c = column sums of A * A``:

* ``E|A x|^4 = (m4 - 3 m2^2) |c|^2 + m2^2 (|A|_F^4 + 2 |A A'|_F^2)``
  (:func:`quartic_sum`)
* ``sum_{i,j,k} a_ik^2 a_jk mu_j = c . (A' mu)`` (:func:`third_moment_sum`)
* ``h1 = E |U - X|^2 |V - X|^2`` for independent U, V, X (:func:`moment_h1`)
* ``h2 = E |U - X|^4`` (:func:`moment_h2`)

The covariance of a summary pairs h2 with weight 1 and h1 with weight
``n - 2`` (within-class entry) or ``m - 1`` (between-class entry). A test
point uses n + 1 in place of n.

Y-side quantities come from the substitution ``(A, B, mu, F_x, F_y, n, m)
-> (B, A, -mu, F_y, F_x, m, n)``. That substitution yields (own class,
other class) order; results are reported in (to-X, to-Y) order.

--------
Examples
--------

::

  spec = MomentSpec(np.eye(2), np.eye(2), np.zeros(2), (1, 0, 3), (1, 0, 3),
                    n=50, m=50)
  moment_f(spec, "X")         # array([4., 4.])
  summary_moments(spec).sig_dwx
"""

import logging

import numpy as np
import yaml

from ..constants import MOMENTS_SCHEMA, PSD_TOLERANCE, TWO_CLASS
from ..distributions import distribution_moments
from ..errors import ConfigError, InvalidInputError

log = logging.getLogger(__name__)

X_SIDE = "X"
Y_SIDE = "Y"
SIDES = (X_SIDE, Y_SIDE)


def _moments(values, name):
  m2, m3, m4 = (float(v) for v in values)
  if m2 <= 0:
    raise InvalidInputError("%s: m2 must be > 0, got %g" % (name, m2))
  if m4 < m2 * m2 * (1 - 1e-12):
    raise InvalidInputError("%s: m4 = %g is below m2^2 = %g"
                            % (name, m4, m2 * m2))
  return (m2, m3, m4)


class MomentSpec(object):
  """Inputs of the moment theory.

  :ivar A: d x d factor of class X
  :ivar B: d x d factor of class Y
  :ivar mu: length-d mean shift of class Y
  :ivar moments_x: (m2, m3, m4) of the class-X coordinates
  :ivar moments_y: (m2, m3, m4) of the class-Y coordinates
  :ivar n: class-X training count
  :ivar m: class-Y training count
  """

  def __init__(self, A, B, mu, moments_x, moments_y, n, m):
    A = np.array(A, dtype=float, ndmin=2)
    B = np.array(B, dtype=float, ndmin=2)
    mu = np.array(mu, dtype=float, ndmin=1)
    d = A.shape[0]
    if A.shape != (d, d) or B.shape != (d, d):
      raise InvalidInputError("A and B must be square of the same size, got "
                              "%s and %s" % (A.shape, B.shape))
    if mu.shape != (d,):
      raise InvalidInputError("mu has length %d, expected %d" % (mu.size, d))
    if n != int(n) or m != int(m) or n < 2 or m < 2:
      raise InvalidInputError("n and m must be integers >= 2")
    for a in (A, B, mu):
      a.setflags(write=False)
    self.A = A
    self.B = B
    self.mu = mu
    self.moments_x = _moments(moments_x, "moments_x")
    self.moments_y = _moments(moments_y, "moments_y")
    self.n = int(n)
    self.m = int(m)

  @property
  def dimension(self):
    """d"""
    return self.A.shape[0]

  def __repr__(self):
    return "MomentSpec(d=%d, n=%d, m=%d, |mu|=%g)" % (
      self.dimension, self.n, self.m, np.linalg.norm(self.mu))

  def swapped(self):
    """The spec with the roles of the two classes exchanged."""
    return MomentSpec(self.B, self.A, -self.mu, self.moments_y,
                      self.moments_x, self.m, self.n)

  @classmethod
  def from_scenario(cls, cfg, direction=None):
    """Build the spec of a two-class scenario configuration.

    ``A`` is the AR(1) factor, ``B = a A`` and ``mu = mu0 * direction``.

    :param cfg: :class:`distrank.datagen.ScenarioConfig`
    :param direction: unit vector (default: the direction of trial 0)
    """
    from ..datagen import ar_factor
    if cfg.family != TWO_CLASS:
      raise InvalidInputError("moment theory covers two-class scenarios only, "
                              "not %s" % cfg.scenario_id)
    if direction is None:
      direction = cfg.direction(0)
    A = ar_factor(cfg.d, cfg.rho)
    return cls(A, cfg.a * A, cfg.mu0 * np.asarray(direction),
               distribution_moments(cfg.base_x),
               distribution_moments(cfg.base_y), cfg.n_train, cfg.m_train)

  def to_document(self):
    """Explicit-matrix document (schema ``distrank.moments/1``)."""
    return {
      "schema": MOMENTS_SCHEMA,
      "A": self.A.tolist(),
      "B": self.B.tolist(),
      "mu": self.mu.tolist(),
      "moments_x": list(self.moments_x),
      "moments_y": list(self.moments_y),
      "n": self.n,
      "m": self.m,
    }

  @classmethod
  def from_document(cls, document):
    """Rebuild a spec from a document.

    Two forms are accepted: the explicit form written by
    :meth:`to_document`, and a scenario form::

      schema: distrank.moments/1
      scenario: {scenario_id: S10, mu0: 2.0, a: 1.0}
      trial: 0
    """
    if not isinstance(document, dict) or document.get("schema") != MOMENTS_SCHEMA:
      raise ConfigError("not a %s document" % MOMENTS_SCHEMA)
    try:
      if "scenario" in document:
        from ..datagen import ScenarioConfig
        cfg = ScenarioConfig(**document["scenario"])
        return cls.from_scenario(cfg, cfg.direction(document.get("trial", 0)))
      return cls(document["A"], document["B"], document["mu"],
                 document["moments_x"], document["moments_y"],
                 document["n"], document["m"])
    except (KeyError, TypeError) as e:
      raise ConfigError("malformed %s document: %s" % (MOMENTS_SCHEMA, e))

  def dump(self, path):
    with open(path, "w") as f:
      yaml.safe_dump(self.to_document(), f, sort_keys=False)

  @classmethod
  def load(cls, path):
    with open(path) as f:
      return cls.from_document(yaml.safe_load(f))


class SummaryMoments(object):
  """Means and covariances of D(X), D(Y), D(W_x) and D(W_y).

  Every vector is in (to-X, to-Y) order.

  :ivar mu_dx, mu_dy, mu_dwx, mu_dwy: length-2 means
  :ivar sig_dx, sig_dy, sig_dwx, sig_dwy: 2 x 2 covariances
  :ivar stderr: :class:`SummaryMoments` of standard errors (Monte Carlo
                estimates only), else None
  """

  NAMES = ("mu_dx", "mu_dy", "mu_dwx", "mu_dwy",
           "sig_dx", "sig_dy", "sig_dwx", "sig_dwy")

  def __init__(self, mu_dx, mu_dy, mu_dwx, mu_dwy,
               sig_dx, sig_dy, sig_dwx, sig_dwy, stderr=None):
    given = dict(mu_dx=mu_dx, mu_dy=mu_dy, mu_dwx=mu_dwx, mu_dwy=mu_dwy,
                 sig_dx=sig_dx, sig_dy=sig_dy, sig_dwx=sig_dwx,
                 sig_dwy=sig_dwy)
    for name in self.NAMES:
      value = np.array(given[name], dtype=float)
      shape = (2,) if name.startswith("mu") else (2, 2)
      if value.shape != shape:
        raise InvalidInputError("%s has shape %s, expected %s"
                                % (name, value.shape, shape))
      if value.ndim == 2 and not np.allclose(value, value.T, rtol=1e-12,
                                             atol=0.0):
        raise InvalidInputError("%s is not symmetric" % name)
      value.setflags(write=False)
      setattr(self, name, value)
    self.stderr = stderr

  def __getitem__(self, name):
    if name not in self.NAMES:
      raise KeyError(name)
    return getattr(self, name)

  def is_psd(self, tol=PSD_TOLERANCE):
    """True when every covariance has eigenvalues >= -tol * trace."""
    for name in self.NAMES[4:]:
      sigma = self[name]
      if np.linalg.eigvalsh(sigma).min() < -tol * abs(np.trace(sigma)):
        return False
    return True

  def swapped(self):
    """Exchange the X and Y sides (and the coordinates of each vector)."""
    flip = lambda v: v[::-1] if v.ndim == 1 else v[::-1, ::-1]
    return SummaryMoments(flip(self.mu_dy), flip(self.mu_dx),
                          flip(self.mu_dwy), flip(self.mu_dwx),
                          flip(self.sig_dy), flip(self.sig_dx),
                          flip(self.sig_dwy), flip(self.sig_dwx))

  def to_document(self):
    out = {"schema": MOMENTS_SCHEMA}
    for name in self.NAMES:
      out[name] = self[name].tolist()
    if self.stderr is not None:
      out["stderr"] = {name: self.stderr[name].tolist() for name in self.NAMES}
    return out


def _check_square(*matrices):
  d = matrices[0].shape[0]
  for a in matrices:
    if a.ndim != 2 or a.shape != (d, d):
      raise InvalidInputError("matrices must all be %dx%d, got %s"
                              % (d, d, a.shape))
  return d


def _check_vector(v, d):
  v = np.asarray(v, dtype=float)
  if v.shape != (d,):
    raise InvalidInputError("vector has shape %s, expected (%d,)"
                            % (v.shape, d))
  return v


def quartic_sum(A, m2, m4):
  """``E |A x|^4`` for i.i.d. mean-zero coordinates with moments m2, m4."""
  A = np.asarray(A, dtype=float)
  c = np.sum(A * A, axis=0)
  frob2 = np.sum(A * A)
  gram = A.T @ A
  return ((m4 - 3.0 * m2 * m2) * np.dot(c, c)
          + m2 * m2 * (frob2 * frob2 + 2.0 * np.sum(gram * gram)))


def quartic_sum_naive(A, m2, m4):
  """Index-by-index evaluation of :func:`quartic_sum`, for small d only."""
  A = np.asarray(A, dtype=float)
  d = A.shape[1]
  total = 0.0
  for i in range(A.shape[0]):
    for j in range(A.shape[0]):
      for k in range(d):
        for l in range(d):
          if k == l:
            total += m4 * A[i, k] ** 2 * A[j, k] ** 2
          else:
            total += m2 * m2 * (A[i, k] ** 2 * A[j, l] ** 2
                                + 2.0 * A[i, k] * A[i, l] * A[j, k] * A[j, l])
  return total


def third_moment_sum(A, mu):
  """``sum_{i,j,k} a_ik^2 a_jk mu_j``."""
  A = np.asarray(A, dtype=float)
  return float(np.sum(A * A, axis=0) @ (A.T @ np.asarray(mu, dtype=float)))


def third_moment_sum_naive(A, mu):
  A = np.asarray(A, dtype=float)
  d = A.shape[0]
  total = 0.0
  for i in range(d):
    for j in range(d):
      for k in range(A.shape[1]):
        total += A[i, k] ** 2 * A[j, k] * mu[j]
  return total


def moment_h1(A, C, D, mu_u, mu_v, moments_x, moments_u, moments_v,
              naive=False):
  """``E |U - X|^2 |V - X|^2`` for independent ``X = A x``,
  ``U = C u + mu_u`` and ``V = D v + mu_v``.

  :param moments_x: (m2, m3, m4) of x; likewise for u and v
  :param naive: evaluate the index sums by explicit loops
  """
  A, C, D = (np.asarray(a, dtype=float) for a in (A, C, D))
  d = _check_square(A, C, D)
  mu_u = _check_vector(mu_u, d)
  mu_v = _check_vector(mu_v, d)
  m2x, m3x, m4x = moments_x
  quartic = quartic_sum_naive if naive else quartic_sum
  third = third_moment_sum_naive if naive else third_moment_sum

  s_a = m2x * np.sum(A * A)
  s_c = moments_u[0] * np.sum(C * C)
  s_d = moments_v[0] * np.sum(D * D)
  nu = mu_u @ mu_u
  nv = mu_v @ mu_v
  return float((s_c + nu) * (s_d + nv)
               + (s_c + s_d + nu + nv) * s_a
               + quartic(A, m2x, m4x)
               - 2.0 * m3x * (third(A, mu_u) + third(A, mu_v))
               + 4.0 * m2x * (A.T @ mu_u) @ (A.T @ mu_v))


def moment_h2(A, C, mu_u, moments_x, moments_u, naive=False):
  """``E |U - X|^4`` for independent ``X = A x`` and ``U = C u + mu_u``."""
  A, C = (np.asarray(a, dtype=float) for a in (A, C))
  d = _check_square(A, C)
  mu = _check_vector(mu_u, d)
  m2x, m3x, m4x = moments_x
  m2u, m3u, m4u = moments_u
  quartic = quartic_sum_naive if naive else quartic_sum
  third = third_moment_sum_naive if naive else third_moment_sum

  s_a = m2x * np.sum(A * A)
  s_c = m2u * np.sum(C * C)
  norm2 = mu @ mu
  cross = A.T @ C
  a_mu = A.T @ mu
  c_mu = C.T @ mu
  return float(quartic(C, m2u, m4u) + quartic(A, m2x, m4x)
               + 2.0 * s_c * s_a
               + 4.0 * m2u * m2x * np.sum(cross * cross)
               + 4.0 * m2u * (c_mu @ c_mu) + 4.0 * m2x * (a_mu @ a_mu)
               + norm2 * norm2 + 2.0 * norm2 * (s_c + s_a)
               + 4.0 * m3u * third(C, mu) - 4.0 * m3x * third(A, mu))


def _own_f(A, B, mu, mx, my):
  """f in (own class, other class) order for a class-X point."""
  s_a = mx[0] * np.sum(A * A)
  s_b = my[0] * np.sum(B * B)
  return np.array([2.0 * s_a, s_a + s_b + mu @ mu])


def _own_g(n, m, A, B, mu, mx, my):
  """g in (own class, other class) order for a class-X point."""
  if n < 2 or m < 1:
    raise InvalidInputError("need n >= 2 and m >= 1, got n=%d, m=%d" % (n, m))
  f = _own_f(A, B, mu, mx, my)
  zero = np.zeros_like(mu)
  within = (moment_h2(A, A, zero, mx, mx)
            + (n - 2) * moment_h1(A, A, A, zero, zero, mx, mx, mx)) / (n - 1)
  between = (moment_h2(A, B, mu, mx, my)
             + (m - 1) * moment_h1(A, B, B, mu, mu, mx, my, my)) / m
  cross = moment_h1(A, A, B, zero, mu, mx, mx, my)
  g = np.array([[within, cross], [cross, between]]) - np.outer(f, f)
  return (g + g.T) / 2.0


def _side_args(spec, side):
  if side == X_SIDE:
    return (spec.n, spec.m, spec.A, spec.B, spec.mu, spec.moments_x,
            spec.moments_y)
  if side == Y_SIDE:
    return (spec.m, spec.n, spec.B, spec.A, -spec.mu, spec.moments_y,
            spec.moments_x)
  raise InvalidInputError("side must be %r or %r, got %r"
                          % (X_SIDE, Y_SIDE, side))


def moment_f(spec, side=X_SIDE):
  """Mean of the distance summary of a class-``side`` point.

  :param spec: :class:`MomentSpec`
  :param side: ``"X"`` or ``"Y"``
  :returns: length-2 vector in (to-X, to-Y) order
  """
  n, m, A, B, mu, mx, my = _side_args(spec, side)
  f = _own_f(A, B, mu, mx, my)
  return f if side == X_SIDE else f[::-1]


def moment_g(spec, side=X_SIDE, test_sample=False):
  """Covariance of the distance summary of a class-``side`` point.

  :param test_sample: use a point independent of the training set (the own
                      class count is raised by one)
  :returns: symmetric 2 x 2 matrix in (to-X, to-Y) order
  """
  n, m, A, B, mu, mx, my = _side_args(spec, side)
  g = _own_g(n + 1 if test_sample else n, m, A, B, mu, mx, my)
  return g if side == X_SIDE else g[::-1, ::-1]


def summary_moments(spec):
  """All eight summary moments of a spec.

  :rtype: :class:`SummaryMoments`
  """
  out = SummaryMoments(
    moment_f(spec, X_SIDE), moment_f(spec, Y_SIDE),
    moment_f(spec, X_SIDE), moment_f(spec, Y_SIDE),
    moment_g(spec, X_SIDE), moment_g(spec, Y_SIDE),
    moment_g(spec, X_SIDE, test_sample=True),
    moment_g(spec, Y_SIDE, test_sample=True))
  if not out.is_psd():
    log.warning("summary covariances of %r are not positive semidefinite",
                spec)
  return out
