"""
Exceptions raised by distrank.

Every exception derives from :class:`DistrankError`. Input problems also
derive from :class:`ValueError` and factorization failures from
:class:`numpy.linalg.LinAlgError`, so callers can catch either the package
hierarchy or the builtin one.
"""

import numpy as np


class DistrankError(Exception):
  """Base class for all distrank errors."""


class InvalidInputError(DistrankError, ValueError):
  """Shape, dimension, length or parameter problem in caller input."""


class DegenerateClassError(InvalidInputError):
  """A class is too small for the requested statistic.

  :ivar label: offending class label
  """

  def __init__(self, label, message=None):
    self.label = label
    if message is None:
      message = "class %s has too few observations" % label
    super().__init__(message)


class SingularCovarianceError(DistrankError, np.linalg.LinAlgError):
  """A covariance matrix stayed singular after the largest ridge.

  :ivar label: class label (or component name) of the covariance
  :ivar ridge: last relative ridge amount that was tried
  """

  def __init__(self, label, ridge):
    self.label = label
    self.ridge = ridge
    super().__init__("covariance of %s is singular even with ridge %g"
                     % (label, ridge))


class InvalidDegreeSequenceError(InvalidInputError):
  """Degree sequence cannot be paired (odd sum or negative entries)."""


class InfiniteMomentError(InvalidInputError):
  """The requested base law has no finite fourth moment."""


class ConfigError(DistrankError):
  """Malformed plan, model or moment-spec document."""
