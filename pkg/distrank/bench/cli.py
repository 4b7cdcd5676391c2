"""
Command-line entry point.

::

  distrank simulate   --config configs/table3.yaml --out out/table3
  distrank robustness --config configs/table6.yaml --jobs 4
  distrank network    --config configs/table5.yaml --trials 5
  distrank analytic   --config configs/figure4.yaml
  distrank snapshot   --config configs/table2.yaml --out out/snap
  distrank moments    --config configs/figure4.yaml
  distrank classify   --train train.csv --test test.csv --mode rank

The exit status is 0 on success. It is 1 when a configuration failed in
every trial (or every analytic point failed), and 2 on a bad plan or
bad input.
"""

import argparse
import logging
import sys

from ..constants import MODES, RANK
from ..errors import DistrankError
from . import runner
from .plans import ExperimentPlan

log = logging.getLogger(__name__)

_SWEEPS = {
  "simulate": runner.run_simulation,
  "robustness": runner.run_robustness,
  "network": runner.run_network,
  "analytic": runner.run_analytic,
}


def _plan_arguments(parser, sweep):
  parser.add_argument("--config", required=True, help="plan file (YAML)")
  parser.add_argument("--out", help="output directory (overrides the plan)")
  parser.add_argument("--seed", type=int, help="base seed")
  parser.add_argument("--trials", type=int, help="trials per configuration")
  parser.add_argument("--jobs", type=int, help="worker processes")
  if sweep:
    parser.add_argument("--resume", action="store_true",
                        help="keep finished rows of an existing results.csv")
    parser.add_argument("--no-timing", dest="timing", action="store_false",
                        help="write elapsedMillis = 0")


def build_parser():
  parser = argparse.ArgumentParser(
    prog="distrank",
    description="Distance- and rank-based classification experiments")
  parser.add_argument("-v", "--verbose", action="store_true",
                      help="log debug messages")
  parser.add_argument("-q", "--quiet", action="store_true",
                      help="log warnings and errors only")
  commands = parser.add_subparsers(dest="command", required=True)

  for name in _SWEEPS:
    _plan_arguments(commands.add_parser(name, help="run the %s sweep" % name),
                    sweep=True)
  _plan_arguments(commands.add_parser(
    "snapshot", help="write distance and summary matrices of trial 0"),
    sweep=False)
  _plan_arguments(commands.add_parser(
    "moments", help="evaluate the closed-form summary moments"), sweep=False)

  classify = commands.add_parser("classify",
                                 help="fit on one file and score another")
  classify.add_argument("--train", required=True)
  classify.add_argument("--test", required=True)
  classify.add_argument("--mode", choices=MODES, default=RANK)
  classify.add_argument("--header", action="store_true",
                        help="files start with a header line")
  classify.add_argument("--delimiter", default=",")
  classify.add_argument("--save-model", help="write the fitted QDA as YAML")
  return parser


def _configure_logging(args):
  level = logging.INFO
  if args.verbose:
    level = logging.DEBUG
  elif args.quiet:
    level = logging.WARNING
  logging.basicConfig(level=level,
                      format="%(asctime)s %(levelname)s %(name)s: %(message)s")


def _load_plan(args):
  plan = ExperimentPlan.load(args.config)
  return plan.with_overrides(seed=args.seed, trials=args.trials,
                             jobs=args.jobs, output_dir=args.out)


def main(argv=None):
  """Run the command line and return the exit status."""
  args = build_parser().parse_args(argv)
  _configure_logging(args)
  try:
    if args.command == "classify":
      rate = runner.classify(args.train, args.test, mode=args.mode,
                             header=args.header, delimiter=args.delimiter,
                             save_model=args.save_model)
      print("misclassification rate: %.6f" % rate)
      return 0

    plan = _load_plan(args)
    if args.command == "snapshot":
      runner.snapshot(plan)
      return 0
    if args.command == "moments":
      runner.moments(plan)
      return 0

    result = _SWEEPS[args.command](plan, resume=args.resume,
                                   timing=args.timing)
  except (DistrankError, OSError) as e:
    log.error("%s", e)
    return 2

  if args.command == "analytic":
    dead = [r for r in result if r["error"]]
    if dead and len(dead) == len(result):
      log.error("every analytic point failed")
      return 1
    return 0
  dead = [row for row in result[1] if row.trials == 0]
  for row in dead:
    log.error("%s mu0=%g a=%g outliers=%d (%s) failed in every trial",
              row.scenario_id, row.mu0, row.a, row.outliers, row.mode)
  return 1 if dead else 0


if __name__ == "__main__":
  sys.exit(main())
