"""
Mean-zero base laws for the coordinates of synthetic observations.

The following laws are supported:

* ``standard-normal``
* ``student-t(nu)`` - sampled as a standard normal over sqrt(chi2_nu / nu)
* ``centered-chi-square(nu)`` - sum of nu squared standard normals, minus nu

Each law has a :meth:`BaseLaw.sample` method and exact raw moments
(m2, m3, m4), which feed the closed-form moment theory.

--------
Examples
--------

::

  >>> parse_law("student-t(10)").moments()
  (1.25, 0.0, 6.25)
  >>> distribution_moments("centered-chi-square(5)")
  (10.0, 40.0, 540.0)
"""

import re

import numpy as np

from .constants import CENTERED_CHI_SQUARE, STANDARD_NORMAL, STUDENT_T
from .errors import InfiniteMomentError, InvalidInputError

_PATTERN = re.compile(r"^\s*([a-z\-]+)\s*(?:\(\s*([0-9.]+)\s*\))?\s*$")

# Short spellings accepted in plans
_ALIASES = {
  "normal": STANDARD_NORMAL,
  "n": STANDARD_NORMAL,
  "t": STUDENT_T,
  "chisq": CENTERED_CHI_SQUARE,
  "chi-square": CENTERED_CHI_SQUARE,
}


class BaseLaw(object):
  """A mean-zero law with finite fourth moment.

  :ivar family: one of the family names above
  :ivar df: degrees of freedom (None for the normal law)
  """

  def __init__(self, family, df=None):
    family = _ALIASES.get(family, family)
    if family == STANDARD_NORMAL:
      df = None
    elif family == STUDENT_T:
      if df is None or df <= 4:
        raise InfiniteMomentError("student-t needs nu > 4 for a finite "
                                  "fourth moment, got %s" % df)
    elif family == CENTERED_CHI_SQUARE:
      if df is None or df < 1 or df != int(df):
        raise InvalidInputError("centered-chi-square needs an integer "
                                "nu >= 1, got %s" % df)
      df = int(df)
    else:
      raise InvalidInputError("unknown base law %r" % family)
    self.family = family
    self.df = df

  def __eq__(self, other):
    return (isinstance(other, BaseLaw) and self.family == other.family
            and self.df == other.df)

  def __hash__(self):
    return hash((self.family, self.df))

  def __str__(self):
    if self.df is None:
      return self.family
    return "%s(%g)" % (self.family, self.df)

  def __repr__(self):
    return "BaseLaw(%s)" % self

  def moments(self):
    """Return the raw moments (m2, m3, m4)."""
    nu = self.df
    if self.family == STANDARD_NORMAL:
      return (1.0, 0.0, 3.0)
    if self.family == STUDENT_T:
      return (nu / (nu - 2.0), 0.0, 3.0 * nu * nu / ((nu - 2.0) * (nu - 4.0)))
    return (2.0 * nu, 8.0 * nu, 12.0 * nu * (nu + 4.0))

  def sample(self, rng, shape):
    """Draw an array of i.i.d. variates.

    :param rng: :class:`numpy.random.Generator`
    :param shape: output shape
    """
    if self.family == STANDARD_NORMAL:
      return rng.standard_normal(shape)
    if self.family == STUDENT_T:
      z = rng.standard_normal(shape)
      chi2 = rng.chisquare(self.df, size=shape)
      return z / np.sqrt(chi2 / self.df)
    z = rng.standard_normal(tuple(np.atleast_1d(shape)) + (self.df,))
    return np.sum(z * z, axis=-1) - self.df


def parse_law(spec):
  """Build a :class:`BaseLaw` from ``"student-t(5)"``-style text.

  A :class:`BaseLaw` is returned unchanged.
  """
  if isinstance(spec, BaseLaw):
    return spec
  match = _PATTERN.match(str(spec).lower())
  if not match:
    raise InvalidInputError("cannot parse base law %r" % (spec,))
  family, df = match.groups()
  return BaseLaw(family, None if df is None else float(df))


def distribution_moments(law):
  """Exact raw moments (m2, m3, m4) of a mean-zero base law.

  :param law: :class:`BaseLaw` or its text form
  :raises InfiniteMomentError: for student-t with nu <= 4
  """
  return tuple(float(m) for m in parse_law(law).moments())
