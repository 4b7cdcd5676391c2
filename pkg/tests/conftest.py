import numpy as np
import pytest

from distrank.dataset import LabeledDataset


@pytest.fixture
def separated():
  """Two well separated Gaussian clouds in 20 dimensions."""
  rng = np.random.default_rng(11)

  def draw(count):
    x = rng.standard_normal((count, 20))
    y = rng.standard_normal((count, 20)) + 10.0
    return LabeledDataset(np.vstack([x, y]), np.repeat([1, 2], count))

  return draw(15), draw(10)


@pytest.fixture
def small():
  """Four points with hand-checkable distances."""
  data = [[0.0, 0.0], [3.0, 4.0], [0.0, 1.0], [6.0, 8.0]]
  return LabeledDataset(data, [1, 1, 2, 2])
