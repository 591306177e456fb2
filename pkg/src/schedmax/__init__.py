"""Exact preemptive scheduling of equal-length weighted jobs.

Given jobs with integer release times, deadlines and non-negative weights,
all requiring the same processing time p on one machine with preemption
allowed, the solver finds a maximum-weight set of jobs that can all be
completed, in O(n^4) time, together with a witness schedule.
"""

from .bench import BenchReport, run_bench
from .dp import (
    MAX_TABLE_JOBS,
    Tables,
    compute_tables,
    fit_count,
    reconstruct,
    released_after,
    released_at_or_after,
    solve,
)
from .edf import Block, blocks, edf_schedule, is_feasible, is_feasible_window
from .gen import FAMILIES, GenParams, SplitMix64, generate
from .model import (
    InputError,
    Instance,
    Job,
    ResourceLimitError,
    Schedule,
    Segment,
    Solution,
    ValidationReport,
    load_instance,
    normalize,
    parse_instance,
    validate,
)
from .oracle import OracleLimits, oracle_fill, oracle_prefix, oracle_solve, oracle_window

__version__ = "0.1.0"
