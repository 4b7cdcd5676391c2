"""Final classifiers on the k-dimensional summary vectors."""

from .base import BaseDiscriminant
from .qda import QdaModel
