"""Moment theory of the distance summaries in the two-class model."""

from .analytic import analytic_misclassification, rate_stderr
from .moments import (SIDES, X_SIDE, Y_SIDE, MomentSpec, SummaryMoments,
                      moment_f, moment_g, moment_h1, moment_h2,
                      quartic_sum, quartic_sum_naive, summary_moments,
                      third_moment_sum, third_moment_sum_naive)
from .normality import (NormalityReport, band_matrix, mardia,
                        normality_diagnostic)
from .oracle import mc_oracle_moments
