"""
Result rows and their CSV files.

Every file starts with a header line and uses ``,`` as delimiter. A failed
trial keeps its row with an empty rate and the error message. In
``aggregate.csv``, ``trials`` counts the successful trials and ``best`` is 1
when the mean rate is below the lowest mean rate of the configuration plus
0.01. Rows are never reordered after the runner sorts them. Writing a
parsed row gives back the same line.

--------
Examples
--------

``results.csv``, one row per (configuration, mode, trial)::

  scenarioId,mu0,a,mode,trial,rate,elapsedMillis,seed,error,outliers
  S1,6.0,1.0,rank,0,0.05,412,2024,,0

``aggregate.csv``, one row per (configuration, mode)::

  scenarioId,mu0,a,mode,meanRate,stderr,trials,best,outliers
  S1,6.0,1.0,rank,0.050000,0.004000,100,1,0

``robustness.csv``, one row per outlier configuration::

  scenarioId,mu0,a,outliers,rankRate,distanceRate,gap

``analytic.csv``, one row per configuration::

  scenarioId,mu0,a,analyticRate,samples,seed,simulatedRankRate,simulatedDistRate,error
"""

import csv
import logging

import numpy as np

from ..errors import ConfigError

log = logging.getLogger(__name__)

RESULT_FIELDS = ("scenarioId", "mu0", "a", "mode", "trial", "rate",
                 "elapsedMillis", "seed", "error", "outliers")
AGGREGATE_FIELDS = ("scenarioId", "mu0", "a", "mode", "meanRate", "stderr",
                    "trials", "best", "outliers")
ROBUSTNESS_FIELDS = ("scenarioId", "mu0", "a", "outliers", "rankRate",
                     "distanceRate", "gap")
ANALYTIC_FIELDS = ("scenarioId", "mu0", "a", "analyticRate", "samples", "seed",
                   "simulatedRankRate", "simulatedDistRate", "error")

# Margin of the "best" marker
BEST_MARGIN = 0.01


def _float(text):
  return None if text == "" else float(text)


def _text(value):
  return "" if value is None else repr(float(value))


class ResultRow(object):
  """Outcome of one trial.

  :ivar scenario_id, mu0, a, outliers: configuration
  :ivar mode: classifier mode
  :ivar trial: trial index
  :ivar rate: misclassification rate in [0, 1], None when failed
  :ivar elapsed_millis: wall time of the trial
  :ivar seed: plan seed
  :ivar error: error message, empty on success
  """

  def __init__(self, scenario_id, mu0, a, mode, trial, rate, elapsed_millis,
               seed, error="", outliers=0):
    if rate is not None and not 0.0 <= rate <= 1.0:
      raise ValueError("rate %r outside [0, 1]" % rate)
    self.scenario_id = scenario_id
    self.mu0 = float(mu0)
    self.a = float(a)
    self.mode = mode
    self.trial = int(trial)
    self.rate = None if rate is None else float(rate)
    self.elapsed_millis = int(elapsed_millis)
    self.seed = int(seed)
    self.error = error or ""
    self.outliers = int(outliers)

  @property
  def failed(self):
    return self.rate is None

  @property
  def config_key(self):
    """Key shared by all modes and trials of one configuration."""
    return (self.scenario_id, self.mu0, self.a, self.outliers)

  @property
  def job_key(self):
    return self.config_key + (self.mode, self.trial, self.seed)

  def __repr__(self):
    return "ResultRow(%s mu0=%g a=%g n_o=%d %s #%d: %s)" % (
      self.scenario_id, self.mu0, self.a, self.outliers, self.mode,
      self.trial, self.error or self.rate)

  def to_record(self):
    return {
      "scenarioId": self.scenario_id,
      "mu0": _text(self.mu0),
      "a": _text(self.a),
      "mode": self.mode,
      "trial": str(self.trial),
      "rate": _text(self.rate),
      "elapsedMillis": str(self.elapsed_millis),
      "seed": str(self.seed),
      "error": self.error,
      "outliers": str(self.outliers),
    }

  @classmethod
  def from_record(cls, record):
    return cls(record["scenarioId"], float(record["mu0"]), float(record["a"]),
               record["mode"], int(record["trial"]), _float(record["rate"]),
               int(record["elapsedMillis"]), int(record["seed"]),
               record["error"], int(record.get("outliers") or 0))


class AggregateRow(object):
  """Mean rate of one (configuration, mode)."""

  def __init__(self, scenario_id, mu0, a, mode, mean_rate, stderr, trials,
               best=False, outliers=0):
    self.scenario_id = scenario_id
    self.mu0 = float(mu0)
    self.a = float(a)
    self.mode = mode
    self.mean_rate = mean_rate
    self.stderr = stderr
    self.trials = int(trials)
    self.best = bool(best)
    self.outliers = int(outliers)

  @property
  def config_key(self):
    return (self.scenario_id, self.mu0, self.a, self.outliers)

  def to_record(self):
    fmt = lambda v: "" if v is None else "%.6f" % v
    return {
      "scenarioId": self.scenario_id,
      "mu0": _text(self.mu0),
      "a": _text(self.a),
      "mode": self.mode,
      "meanRate": fmt(self.mean_rate),
      "stderr": fmt(self.stderr),
      "trials": str(self.trials),
      "best": "1" if self.best else "0",
      "outliers": str(self.outliers),
    }

  @classmethod
  def from_record(cls, record):
    return cls(record["scenarioId"], float(record["mu0"]), float(record["a"]),
               record["mode"], _float(record["meanRate"]),
               _float(record["stderr"]), int(record["trials"]),
               record["best"] == "1", int(record.get("outliers") or 0))


def aggregate(rows):
  """Average the successful trials of each (configuration, mode).

  Output order follows the first appearance of each key in ``rows``.

  :param rows: iterable of :class:`ResultRow`
  :returns: list of :class:`AggregateRow`
  """
  groups = {}
  for row in rows:
    groups.setdefault(row.config_key + (row.mode,), []).append(row)

  out = []
  for key, members in groups.items():
    rates = np.array([r.rate for r in members if not r.failed])
    if rates.size:
      mean = float(np.mean(rates))
      stderr = (float(np.std(rates, ddof=1) / np.sqrt(rates.size))
                if rates.size > 1 else 0.0)
    else:
      mean = stderr = None
    scenario_id, mu0, a, outliers, mode = key
    out.append(AggregateRow(scenario_id, mu0, a, mode, mean, stderr,
                            rates.size, outliers=outliers))

  lowest = {}
  for row in out:
    if row.mean_rate is not None:
      current = lowest.get(row.config_key)
      lowest[row.config_key] = (row.mean_rate if current is None
                                else min(current, row.mean_rate))
  for row in out:
    if row.mean_rate is not None:
      row.best = row.mean_rate < lowest[row.config_key] + BEST_MARGIN
  return out


def write_records(path, fields, records):
  """Write dict records as CSV with a header line."""
  with open(path, "w", newline="") as f:
    writer = csv.DictWriter(f, fieldnames=fields, lineterminator="\n")
    writer.writeheader()
    for record in records:
      writer.writerow(record)


def read_records(path, fields):
  """Read a CSV written by :func:`write_records`.

  :raises ConfigError: when the header does not match ``fields``
  """
  with open(path, newline="") as f:
    reader = csv.DictReader(f)
    if tuple(reader.fieldnames or ()) != tuple(fields):
      raise ConfigError("%s: unexpected columns %s" % (path, reader.fieldnames))
    return list(reader)


def write_results(path, rows):
  write_records(path, RESULT_FIELDS, (r.to_record() for r in rows))


def read_results(path):
  return [ResultRow.from_record(r) for r in read_records(path, RESULT_FIELDS)]


def write_aggregate(path, rows):
  write_records(path, AGGREGATE_FIELDS, (r.to_record() for r in rows))


def read_aggregate(path):
  return [AggregateRow.from_record(r)
          for r in read_records(path, AGGREGATE_FIELDS)]


def robustness_records(aggregate_rows):
  """Pair the rank and distance rows of each configuration.

  :returns: records with ``gap = distanceRate - rankRate``
  """
  by_key = {}
  for row in aggregate_rows:
    by_key.setdefault(row.config_key, {})[row.mode] = row.mean_rate
  out = []
  for (scenario_id, mu0, a, outliers), rates in by_key.items():
    rank = rates.get("rank")
    dist = rates.get("distance")
    if rank is None or dist is None:
      continue
    out.append({
      "scenarioId": scenario_id, "mu0": _text(mu0), "a": _text(a),
      "outliers": str(outliers), "rankRate": "%.6f" % rank,
      "distanceRate": "%.6f" % dist, "gap": "%.6f" % (dist - rank),
    })
  return out
