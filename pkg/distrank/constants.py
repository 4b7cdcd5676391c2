"""
Constants shared across the package.

-------
Metrics
-------

* :const:`SQUARED_EUCLIDEAN` (default for the distance path)
* :const:`EUCLIDEAN` (default for the rank path)
* :const:`CUSTOM` (a :class:`distrank.distances.CustomMetric` plugin)

-----
Modes
-----

* :const:`DISTANCE` - class-wise means of pairwise distances
* :const:`RANK` - class-wise means of column ranks of pairwise distances

---------
Scenarios
---------

:data:`SCENARIOS` maps a scenario id (``"S1"`` .. ``"S13"``) to its default
settings. A plan entry overrides only the fields it names::

  >>> SCENARIOS["S4"]["base_y"]
  'student-t(5)'
"""

# Metrics
SQUARED_EUCLIDEAN     = "squared-euclidean"
EUCLIDEAN             = "euclidean"
CUSTOM                = "custom-plugin"

METRICS               = (SQUARED_EUCLIDEAN, EUCLIDEAN, CUSTOM)

# Modes
DISTANCE              = "distance"
RANK                  = "rank"

MODES                 = (DISTANCE, RANK)

# Default metric per mode (squared for the distance path, plain for ranks)
DEFAULT_METRIC        = {DISTANCE: SQUARED_EUCLIDEAN, RANK: EUCLIDEAN}

# Summary kinds
DISTANCE_MEAN         = "distance-mean"
RANK_MEAN             = "rank-mean"

# Ridge policy for covariance factorization
RIDGE_START           = 1e-8
RIDGE_STOP            = 1e-2
RIDGE_STEP            = 10.0

# Tolerance for PSD checks on moment covariances (relative to trace)
PSD_TOLERANCE         = 1e-9

# AR(1) correlation used by every vector scenario
AR_RHO                = 0.1

# Document schemas
PLAN_SCHEMA           = "distrank.plan/1"
QDA_SCHEMA            = "distrank.qda/1"
MOMENTS_SCHEMA        = "distrank.moments/1"

# Base laws
STANDARD_NORMAL       = "standard-normal"
STUDENT_T             = "student-t"
CENTERED_CHI_SQUARE   = "centered-chi-square"

# Scenario families
TWO_CLASS             = "two-class"
MULTI_CLASS           = "multi-class"
NETWORK               = "network"

# Graph scenario shape
GRAPH_VERTICES        = 40
GRAPH_A_RANGE         = {"S8": (0, 20), "S9": (0, 40)}

_VECTOR = dict(d=1000, n_train=50, m_train=50, n_test=50, m_test=50,
               mu0=0.0, a=1.0, trials=20)
_ANALYTIC = dict(_VECTOR, d=2000)
_GRAPH = dict(d=GRAPH_VERTICES * GRAPH_VERTICES, n_train=30, m_train=30,
              n_test=20, m_test=20, mu0=0.0, trials=20)

SCENARIOS = {
  "S1":  dict(_VECTOR, family=TWO_CLASS, base_x="standard-normal",
              base_y="standard-normal"),
  "S2":  dict(_VECTOR, family=TWO_CLASS, base_x="student-t(5)",
              base_y="student-t(5)"),
  "S3":  dict(_VECTOR, family=TWO_CLASS, base_x="centered-chi-square(5)",
              base_y="centered-chi-square(5)"),
  "S4":  dict(_VECTOR, family=TWO_CLASS, base_x="standard-normal",
              base_y="student-t(5)"),
  "S5":  dict(_VECTOR, family=MULTI_CLASS, mu0=12.0, a=1.1,
              base_x="standard-normal", base_y="standard-normal"),
  "S6":  dict(_VECTOR, family=MULTI_CLASS, mu0=12.0, a=1.1,
              base_x="student-t(5)", base_y="student-t(5)"),
  "S7":  dict(_VECTOR, family=MULTI_CLASS, mu0=12.0, a=1.1,
              base_x="centered-chi-square(5)",
              base_y="centered-chi-square(5)"),
  "S8":  dict(_GRAPH, family=NETWORK, a=5, base_x=None, base_y=None),
  "S9":  dict(_GRAPH, family=NETWORK, a=4, base_x=None, base_y=None),
  "S10": dict(_ANALYTIC, family=TWO_CLASS, base_x="standard-normal",
              base_y="standard-normal"),
  "S11": dict(_ANALYTIC, family=TWO_CLASS, base_x="standard-normal",
              base_y="standard-normal"),
  "S12": dict(_ANALYTIC, family=TWO_CLASS, base_x="student-t(10)",
              base_y="student-t(10)"),
  "S13": dict(_ANALYTIC, family=TWO_CLASS, base_x="student-t(10)",
              base_y="student-t(10)"),
}

# Scenarios the analytic estimator supports
ANALYTIC_SCENARIOS    = ("S1", "S2", "S3", "S4", "S10", "S11", "S12", "S13")
