"""
Here is a simple example that classifies heavy-tailed data by rank means::

  import distrank
  from distrank.datagen import ScenarioConfig, gen_two_class


  def main():
    # class Y is 1.05 times more spread out than class X, same center
    cfg = ScenarioConfig("S2", mu0=0.0, a=1.05, seed=1)
    train, test = gen_two_class(cfg, trial_index=0)

    for mode in (distrank.DISTANCE, distrank.RANK):
      clf = distrank.fit(train, mode=mode)
      print(mode, clf.misclassification_rate(test))

    # the moment theory predicts the distance-based rate
    spec = distrank.theory.MomentSpec.from_scenario(cfg)
    sm = distrank.theory.summary_moments(spec)
    print("analytic", distrank.theory.analytic_misclassification(sm))


  if __name__ == "__main__":
    main()
"""

from . import constants
from .constants import DISTANCE, EUCLIDEAN, RANK, SQUARED_EUCLIDEAN

from .classifier import FittedClassifier, fit
from .dataset import (LabeledDataset, concatenate, read_delimited,
                      write_delimited)
from .distances import (CustomMetric, column_ranks, group_mean_matrix,
                        pairwise_distances, query_distances, query_ranks,
                        query_summary)
from .discriminants import BaseDiscriminant, QdaModel
from .errors import (ConfigError, DegenerateClassError, DistrankError,
                     InfiniteMomentError, InvalidDegreeSequenceError,
                     InvalidInputError, SingularCovarianceError)

from . import datagen
from . import distributions
from . import graphs
from . import theory
