"""Seeded experiment plans, runner and command line."""

from .plans import PLAN_MODES, ExperimentPlan
from .rows import AggregateRow, ResultRow, aggregate
from .runner import (classify, moments, run_analytic, run_network,
                     run_robustness, run_simulation, snapshot)
