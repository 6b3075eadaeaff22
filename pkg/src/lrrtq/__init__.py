"""Fuzzy-inferred round-robin time quantum (LRRTQ) and a round-robin simulator."""

from .fuzzy import (
    AggregatedOutput,
    FisDefinition,
    FuzzyError,
    FuzzyRule,
    LinguisticVariable,
    MissingInputError,
    NoRuleFiredError,
    TrapezoidalMF,
    aggregate,
    defuzz_centroid,
    fire_rules,
    fuzzify,
    infer,
    membership,
)
from .preset import SurfaceGrid, build_lrrtq, sample_surface
from .scheduler import (
    Comparison,
    ExecutionSlice,
    ProcessSpec,
    ScheduleMetrics,
    SchedulingError,
    compare,
    compute_metrics,
    rr_fixed,
    rr_fuzzy,
    rr_sorted_fixed,
)
from .formats import FormatError, parse_fis, parse_workload, serialize_fis, serialize_workload

__version__ = "0.1.0"
