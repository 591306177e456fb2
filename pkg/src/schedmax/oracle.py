"""Brute-force reference answers by subset enumeration.

Everything here trades time for obviousness: enumerate candidate subsets,
simulate each one, keep the best.  Sizes are capped and the cap is enforced
with a refusal, never silently truncated.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .edf import _simulate, blocks, edf_schedule, is_feasible, is_feasible_window
from .model import InputError, Instance, ResourceLimitError, Schedule, Solution


@dataclass(frozen=True)
class OracleLimits:
    max_n: int = 20


def _require_small(count: int, limits: OracleLimits) -> None:
    if count > limits.max_n:
        raise ResourceLimitError(
            f"{count} candidate jobs exceed the enumeration limit of {limits.max_n}"
        )


def _candidates(instance: Instance, k: int, lo: int, hi: int) -> list[int]:
    """Real jobs with idx <= k released inside [lo, hi)."""
    return [
        j.idx for j in instance.jobs[:k] if j.id is not None and lo <= j.r < hi
    ]


def _check_level(instance: Instance, k: int) -> None:
    if not 0 <= k <= instance.n:
        raise InputError(f"level {k} out of range 0..{instance.n}")


def oracle_solve(instance: Instance, limits: OracleLimits | None = None) -> Solution:
    """Optimal solution by trying every subset of real jobs.

    Ties between equal-weight optima go to the lexicographically smallest
    index set, which makes the oracle deterministic.
    """
    limits = limits or OracleLimits()
    real = [j.idx for j in instance.jobs if j.id is not None]
    _require_small(len(real), limits)

    best_w = 0
    best: tuple[int, ...] = ()
    for mask in range(1 << len(real)):
        sub = tuple(real[b] for b in range(len(real)) if mask >> b & 1)
        if not is_feasible(instance, sub):
            continue
        w = sum(instance.job(idx).w for idx in sub)
        if w > best_w or (w == best_w and sub < best):
            best_w, best = w, sub
    schedule, completed = edf_schedule(instance, best)
    return Solution(
        completed=frozenset(completed),
        weight=best_w,
        schedule=schedule,
        method="oracle",
    )


def oracle_window(
    instance: Instance, k: int, i: int, j: int, limits: OracleLimits | None = None
) -> int:
    """Best weight of jobs with idx <= k, released in [r_i, r_j), feasible there."""
    limits = limits or OracleLimits()
    _check_level(instance, k)
    x, y = instance.job(i).r, instance.job(j).r
    if x > y:
        raise InputError(f"window rows {i}, {j} are reversed (releases {x} > {y})")
    cand = _candidates(instance, k, x, y)
    _require_small(len(cand), limits)
    best = 0
    for mask in range(1 << len(cand)):
        sub = [cand[b] for b in range(len(cand)) if mask >> b & 1]
        if is_feasible_window(instance, sub, x, y):
            best = max(best, sum(instance.job(idx).w for idx in sub))
    return best


def oracle_fill(
    instance: Instance, k: int, i: int, a: int, limits: OracleLimits | None = None
) -> int | None:
    """Best weight of an exactly-``a``-job single block covering [r_i, r_i + a*p).

    A qualifying subset has idx <= k and every release inside the window, and
    its windowed EDF schedule completes all ``a`` jobs as one block spanning
    the window exactly.  Busy throughout is not enough: a run splits at any
    interior completion time by which every earlier-released job has finished,
    even when the next job starts there with zero idle in between, and such a
    split disqualifies the subset.  Returns None when a > 0 and no subset
    qualifies.
    """
    limits = limits or OracleLimits()
    _check_level(instance, k)
    if a < 0:
        raise InputError(f"block size {a} is negative")
    if a == 0:
        return 0
    x = instance.job(i).r
    y = x + a * instance.p
    cand = _candidates(instance, k, x, y)
    _require_small(len(cand), limits)
    best: int | None = None
    for sub in combinations(cand, a):
        segments, completed = _simulate(instance, sub, cap=y)
        if len(completed) != a:
            continue
        parts = blocks(instance, Schedule(tuple(segments)))
        if len(parts) != 1 or parts[0].start != x or parts[0].end != y:
            continue
        w = sum(instance.job(idx).w for idx in sub)
        if best is None or w > best:
            best = w
    return best


def oracle_prefix(
    instance: Instance, k: int, i: int, j: int, limits: OracleLimits | None = None
) -> int | None:
    """Best window weight among subsets busy throughout [r_i, r_{k+1}).

    Candidates are the same as for ``oracle_window`` but the windowed EDF run
    must leave no idle unit between r_i and the release of job k+1.  Returns
    None when no subset qualifies (the empty set qualifies only when
    r_{k+1} = r_i).
    """
    limits = limits or OracleLimits()
    if not 0 <= k < instance.n:
        raise InputError(f"level {k} must lie in 0..{instance.n - 1}")
    x, y = instance.job(i).r, instance.job(j).r
    if x > y:
        raise InputError(f"window rows {i}, {j} are reversed (releases {x} > {y})")
    boundary = instance.job(k + 1).r
    if not x <= boundary <= y:
        raise InputError(
            f"release of job {k + 1} ({boundary}) lies outside the window [{x}, {y}]"
        )
    cand = _candidates(instance, k, x, y)
    _require_small(len(cand), limits)
    best: int | None = None
    for mask in range(1 << len(cand)):
        sub = [cand[b] for b in range(len(cand)) if mask >> b & 1]
        segments, completed = _simulate(instance, sub, cap=y)
        if len(completed) != len(sub):
            continue
        busy = sum(
            min(s.end, boundary) - max(s.start, x)
            for s in segments
            if s.start < boundary and s.end > x
        )
        if busy != boundary - x:
            continue
        w = sum(instance.job(idx).w for idx in sub)
        if best is None or w > best:
            best = w
    return best
