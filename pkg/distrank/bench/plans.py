"""
Experiment plans.

A plan is a YAML document with schema ``distrank.plan/1``::

  schema: distrank.plan/1
  seed: 2024
  trials: 20
  jobs: 4
  modes: [distance, rank]
  output_dir: out/table3
  analytic:
    samples: 100000
    simulate: false
  scenarios:
    - scenario_id: S1
      grid:
        - {mu0: 6, a: 1}
        - {mu0: 0, a: 1.1}
    - scenario_id: S4
      d: 500

Each scenario entry overrides the defaults of
:data:`distrank.constants.SCENARIOS`. An entry with a ``grid`` expands into
one configuration per grid point, the point's fields overriding the
entry's. Every configuration of a plan shares the plan seed, so all
configurations and modes of a trial see common random numbers.
"""

import logging
import os

import yaml

from ..constants import DISTANCE, PLAN_SCHEMA, RANK
from ..datagen import ScenarioConfig
from ..errors import ConfigError, DistrankError

log = logging.getLogger(__name__)

GRAPH_SUFFIX = ":graph"

#: modes a plan may name; ``:graph`` modes use the direct graph metric
PLAN_MODES = (DISTANCE, RANK, DISTANCE + GRAPH_SUFFIX, RANK + GRAPH_SUFFIX)

DEFAULT_SAMPLES = 100000


class ExperimentPlan(object):
  """A validated list of scenario configurations plus run settings.

  :ivar scenarios: list of :class:`distrank.datagen.ScenarioConfig`
  :ivar modes: tuple of mode names from :data:`PLAN_MODES`
  :ivar output_dir: directory for result files
  :ivar trials: trials per configuration
  :ivar seed: base seed
  :ivar jobs: worker processes
  :ivar analytic_samples: mixture draws per analytic grid point
  :ivar analytic_simulate: add simulated rates to the analytic curve
  """

  def __init__(self, scenarios, modes=(DISTANCE, RANK), output_dir="out",
               trials=20, seed=0, jobs=1, analytic_samples=DEFAULT_SAMPLES,
               analytic_simulate=False):
    if int(trials) != trials or trials < 1:
      raise ConfigError("trials must be an integer >= 1")
    if int(jobs) != jobs or jobs < 1:
      raise ConfigError("jobs must be an integer >= 1")
    modes = tuple(modes)
    if not modes:
      raise ConfigError("a plan needs at least one mode")
    for mode in modes:
      if mode not in PLAN_MODES:
        raise ConfigError("unknown mode %r" % (mode,))
    if not scenarios:
      raise ConfigError("a plan needs at least one scenario")
    self.trials = int(trials)
    self.seed = int(seed)
    self.jobs = int(jobs)
    self.modes = modes
    self.output_dir = output_dir
    self.analytic_samples = int(analytic_samples)
    self.analytic_simulate = bool(analytic_simulate)
    self.scenarios = [cfg.replace(trials=self.trials, seed=self.seed)
                      for cfg in scenarios]

  def __repr__(self):
    return "ExperimentPlan(%d configurations, modes=%s, trials=%d, seed=%d)" % (
      len(self.scenarios), ",".join(self.modes), self.trials, self.seed)

  def with_overrides(self, seed=None, trials=None, jobs=None, output_dir=None):
    """Return a copy with command-line overrides applied."""
    return ExperimentPlan(
      self.scenarios, self.modes,
      self.output_dir if output_dir is None else output_dir,
      self.trials if trials is None else trials,
      self.seed if seed is None else seed,
      self.jobs if jobs is None else jobs,
      self.analytic_samples, self.analytic_simulate)

  def output_path(self, name):
    """Path of an output file, creating the output directory."""
    os.makedirs(self.output_dir, exist_ok=True)
    return os.path.join(self.output_dir, name)

  @classmethod
  def from_document(cls, document, source="<plan>"):
    """Build a plan from a parsed YAML document.

    :param source: file name used in error messages
    :raises ConfigError: on a wrong schema, a missing key or a bad value
    """
    if not isinstance(document, dict):
      raise ConfigError("%s: plan must be a mapping" % source)
    if document.get("schema") != PLAN_SCHEMA:
      raise ConfigError("%s: schema must be %r, got %r"
                        % (source, PLAN_SCHEMA, document.get("schema")))
    if "scenarios" not in document:
      raise ConfigError("%s: missing key 'scenarios'" % source)
    analytic = document.get("analytic") or {}

    configs = []
    try:
      for index, entry in enumerate(document["scenarios"]):
        entry = dict(entry)
        if "scenario_id" not in entry:
          raise ConfigError("%s: scenario %d has no 'scenario_id'"
                            % (source, index))
        grid = entry.pop("grid", None) or [{}]
        for point in grid:
          fields = dict(entry)
          fields.update(point)
          configs.append(ScenarioConfig(**fields))
      return cls(configs,
                 modes=document.get("modes", (DISTANCE, RANK)),
                 output_dir=document.get("output_dir", "out"),
                 trials=document.get("trials", 20),
                 seed=document.get("seed", 0),
                 jobs=document.get("jobs", 1),
                 analytic_samples=analytic.get("samples", DEFAULT_SAMPLES),
                 analytic_simulate=analytic.get("simulate", False))
    except ConfigError:
      raise
    except (DistrankError, TypeError, ValueError) as e:
      raise ConfigError("%s: %s" % (source, e))

  @classmethod
  def load(cls, path):
    """Read a plan file."""
    try:
      with open(path) as f:
        document = yaml.safe_load(f)
    except OSError as e:
      raise ConfigError("cannot read plan %s: %s" % (path, e))
    except yaml.YAMLError as e:
      raise ConfigError("%s is not valid YAML: %s" % (path, e))
    plan = cls.from_document(document, source=path)
    log.debug("loaded %r from %s", plan, path)
    return plan
