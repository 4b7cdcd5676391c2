"""
Experiment runner.

Every (configuration, mode, trial) is an independent job. Jobs run
sequentially or in a bounded process pool. Outputs are sorted by
(configuration, mode, trial), so they do not depend on completion order or
on the number of workers. A job that raises becomes a failed row carrying
the error message.

--------
Examples
--------

::

  plan = ExperimentPlan.load("configs/table3.yaml")
  rows, summary = run_simulation(plan.with_overrides(trials=2))
"""

import logging
import os
import time
from concurrent.futures import ProcessPoolExecutor

import numpy as np
import yaml

from .. import classifier
from ..constants import DISTANCE, MOMENTS_SCHEMA, NETWORK, RANK, TWO_CLASS
from ..datagen import generate
from ..dataset import LabeledDataset, read_delimited, write_delimited
from ..errors import ConfigError, DistrankError, InvalidInputError
from ..graphs import frobenius_metric, gen_network
from ..theory import MomentSpec, analytic_misclassification, summary_moments
from . import rows as rowio
from .plans import GRAPH_SUFFIX

log = logging.getLogger(__name__)

RESULTS_FILE = "results.csv"
AGGREGATE_FILE = "aggregate.csv"
ROBUSTNESS_FILE = "robustness.csv"
ANALYTIC_FILE = "analytic.csv"
MOMENTS_FILE = "moments.yaml"


class Job(object):
  """One trial of one configuration under one mode."""

  def __init__(self, cfg, mode, trial, timing=True):
    self.cfg = cfg
    self.mode = mode
    self.trial = trial
    self.timing = timing

  @property
  def key(self):
    cfg = self.cfg
    return (cfg.scenario_id, float(cfg.mu0), float(cfg.a), cfg.outliers,
            self.mode, self.trial, cfg.seed)


def _graph_rate(cfg, mode, trial):
  """Rate of the direct graph-metric path, checked against the vectorized
  path on every test graph."""
  base = mode[:-len(GRAPH_SUFFIX)]
  train, test = gen_network(cfg, trial)
  direct = classifier.fit(train, mode=base,
                          metric=frobenius_metric(squared=base == DISTANCE))
  vector = classifier.fit(train.flattened(), mode=base)
  predicted = direct.predict_many(test.data)
  vectorized = vector.predict_many(test.flattened().data)
  if not np.array_equal(predicted, vectorized):
    raise InvalidInputError("graph-metric and vectorized predictions differ "
                            "on %d test graphs"
                            % int(np.sum(predicted != vectorized)))
  return float(np.mean(predicted != test.labels))


def run_trial(job):
  """Run one job.

  :param job: :class:`Job`
  :rtype: :class:`distrank.bench.rows.ResultRow`
  """
  cfg = job.cfg
  start = time.perf_counter()
  rate = None
  error = ""
  try:
    if job.mode.endswith(GRAPH_SUFFIX):
      if cfg.family != NETWORK:
        raise InvalidInputError("mode %s needs a network scenario" % job.mode)
      rate = _graph_rate(cfg, job.mode, job.trial)
    else:
      train, test = generate(cfg, job.trial)
      rate = classifier.fit(train, mode=job.mode).misclassification_rate(test)
  except (DistrankError, np.linalg.LinAlgError, ValueError) as e:
    error = "%s: %s" % (type(e).__name__, e)
    log.warning("%r trial %d (%s) failed: %s", cfg, job.trial, job.mode, error)
  elapsed = int((time.perf_counter() - start) * 1000) if job.timing else 0
  return rowio.ResultRow(cfg.scenario_id, cfg.mu0, cfg.a, job.mode, job.trial,
                         rate, elapsed, cfg.seed, error, cfg.outliers)


def run_jobs(jobs, n_workers=1):
  """Run jobs and return their rows in job order.

  :param n_workers: process count; 1 runs in this process
  """
  jobs = list(jobs)
  if n_workers <= 1 or len(jobs) <= 1:
    return [run_trial(job) for job in jobs]
  with ProcessPoolExecutor(max_workers=n_workers) as pool:
    return list(pool.map(run_trial, jobs))


def plan_jobs(plan, modes=None, timing=True):
  """Jobs of a plan ordered by (configuration, mode, trial)."""
  modes = plan.modes if modes is None else modes
  return [Job(cfg, mode, trial, timing)
          for cfg in plan.scenarios
          for mode in modes
          for trial in range(cfg.trials)]


def _execute(plan, modes=None, resume=False, timing=True):
  jobs = plan_jobs(plan, modes, timing)
  results_path = plan.output_path(RESULTS_FILE)
  finished = {}
  if resume and os.path.exists(results_path):
    for row in rowio.read_results(results_path):
      if not row.failed:
        finished[row.job_key] = row
    log.info("resuming: %d finished rows in %s", len(finished), results_path)

  pending = [job for job in jobs if job.key not in finished]
  if resume:
    log.info("skipping %d finished jobs", len(jobs) - len(pending))
  log.info("running %d jobs of %r on %d workers", len(pending), plan,
           plan.jobs)
  fresh = dict(zip([job.key for job in pending],
                   run_jobs(pending, plan.jobs)))
  rows = [finished.get(job.key) or fresh[job.key] for job in jobs]

  summary = rowio.aggregate(rows)
  try:
    rowio.write_results(results_path, rows)
    rowio.write_aggregate(plan.output_path(AGGREGATE_FILE), summary)
  except OSError as e:
    raise ConfigError("cannot write results to %s: %s" % (plan.output_dir, e))
  failed = sum(row.failed for row in rows)
  log.info("finished %d rows (%d failed) in %s", len(rows), failed,
           plan.output_dir)
  return rows, summary


def run_simulation(plan, resume=False, timing=True):
  """Run every (configuration, mode, trial) of a plan.

  Writes ``results.csv`` and ``aggregate.csv`` to the plan's output
  directory.

  :returns: (result rows, aggregate rows)
  """
  return _execute(plan, resume=resume, timing=timing)


def run_robustness(plan, resume=False, timing=True):
  """Compare the distance and rank modes under outlier contamination.

  Writes ``robustness.csv`` in addition to the simulation files.
  """
  for mode in (DISTANCE, RANK):
    if mode not in plan.modes:
      raise ConfigError("robustness runs need both the distance and the "
                        "rank mode")
  rows, summary = _execute(plan, resume=resume, timing=timing)
  rowio.write_records(plan.output_path(ROBUSTNESS_FILE),
                      rowio.ROBUSTNESS_FIELDS,
                      rowio.robustness_records(summary))
  return rows, summary


def run_network(plan, resume=False, timing=True):
  """Run the graph scenarios under both the vectorized and the direct
  graph-metric path of every plan mode."""
  for cfg in plan.scenarios:
    if cfg.family != NETWORK:
      raise ConfigError("%s is not a network scenario" % cfg.scenario_id)
  modes = []
  for mode in plan.modes:
    base = mode.replace(GRAPH_SUFFIX, "")
    for name in (base, base + GRAPH_SUFFIX):
      if name not in modes:
        modes.append(name)
  return _execute(plan, modes=modes, resume=resume, timing=timing)


def run_analytic(plan, resume=False, timing=True):
  """Analytic misclassification rate of every two-class configuration.

  With ``analytic.simulate`` set in the plan, simulated rank and distance
  rates are added to each point. A failing point keeps its row with the
  error message.

  :returns: list of analytic records (also written to ``analytic.csv``)
  """
  simulated = {}
  if plan.analytic_simulate:
    _, summary = _execute(plan, modes=(DISTANCE, RANK), resume=resume,
                          timing=timing)
    for row in summary:
      simulated[row.config_key + (row.mode,)] = row.mean_rate

  records = []
  for cfg in plan.scenarios:
    key = (cfg.scenario_id, float(cfg.mu0), float(cfg.a), cfg.outliers)
    record = {"scenarioId": cfg.scenario_id, "mu0": repr(float(cfg.mu0)),
              "a": repr(float(cfg.a)), "analyticRate": "",
              "samples": str(plan.analytic_samples), "seed": str(plan.seed),
              "simulatedRankRate": "", "simulatedDistRate": "", "error": ""}
    try:
      if cfg.family != TWO_CLASS:
        raise InvalidInputError("%s is not a two-class scenario"
                                % cfg.scenario_id)
      sm = summary_moments(MomentSpec.from_scenario(cfg))
      rate = analytic_misclassification(sm, plan.analytic_samples, plan.seed)
      record["analyticRate"] = "%.6f" % rate
    except (DistrankError, np.linalg.LinAlgError) as e:
      record["error"] = "%s: %s" % (type(e).__name__, e)
      log.warning("analytic point %r failed: %s", cfg, record["error"])
    for mode, column in ((RANK, "simulatedRankRate"),
                         (DISTANCE, "simulatedDistRate")):
      value = simulated.get(key + (mode,))
      if value is not None:
        record[column] = "%.6f" % value
    records.append(record)
  rowio.write_records(plan.output_path(ANALYTIC_FILE), rowio.ANALYTIC_FIELDS,
                      records)
  return records


def _tag(index, cfg):
  return "%02d_%s" % (index, cfg.scenario_id)


def snapshot(plan):
  """Write the matrices behind distance heatmaps and summary scatter plots.

  For the first trial of each configuration and each vector mode:
  ``distances_<tag>_<mode>.csv`` (N x N training distances),
  ``summary_<tag>_<mode>.csv`` (N x k summaries plus labels) and
  ``qda_<tag>_<mode>.yaml`` (the fitted discriminant).

  :returns: list of written paths
  """
  written = []
  for index, cfg in enumerate(plan.scenarios):
    train, _ = generate(cfg, 0)
    for mode in plan.modes:
      if mode.endswith(GRAPH_SUFFIX):
        continue
      clf = classifier.fit(train, mode=mode)
      tag = "%s_%s" % (_tag(index, cfg), mode)
      path = plan.output_path("distances_%s.csv" % tag)
      np.savetxt(path, clf.dist.values, delimiter=",", fmt="%.17g")
      written.append(path)
      path = plan.output_path("summary_%s.csv" % tag)
      write_delimited(LabeledDataset(clf.summary.values, train.labels,
                                     n_classes=train.n_classes),
                      path, header=True)
      written.append(path)
      path = plan.output_path("qda_%s.yaml" % tag)
      clf.discriminant.dump(path)
      written.append(path)
  log.info("wrote %d snapshot files to %s", len(written), plan.output_dir)
  return written


def moments(plan):
  """Evaluate the summary moments of every two-class configuration.

  :returns: the document written to ``moments.yaml``
  """
  points = []
  for cfg in plan.scenarios:
    if cfg.family != TWO_CLASS:
      log.warning("skipping %r: moment theory covers two-class scenarios",
                  cfg)
      continue
    sm = summary_moments(MomentSpec.from_scenario(cfg))
    document = sm.to_document()
    del document["schema"]
    points.append({"scenario": cfg.to_dict(), "moments": document})
  out = {"schema": MOMENTS_SCHEMA, "points": points}
  with open(plan.output_path(MOMENTS_FILE), "w") as f:
    yaml.safe_dump(out, f, sort_keys=False)
  return out


def classify(train_path, test_path, mode=RANK, header=False, delimiter=",",
             save_model=None):
  """Fit on one delimited-text file and score another.

  :returns: misclassification rate on the test file
  """
  train = read_delimited(train_path, delimiter=delimiter, header=header)
  test = read_delimited(test_path, delimiter=delimiter, header=header)
  clf = classifier.fit(train, mode=mode)
  if save_model:
    clf.discriminant.dump(save_model)
  return clf.misclassification_rate(test)
