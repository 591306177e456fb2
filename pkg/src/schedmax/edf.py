"""Event-driven earliest-deadline-first scheduling of equal-length jobs.

The engine advances from event to event (releases, completions, deadline
expiries) instead of stepping unit by unit, so a run costs O(n log n) and
produces at most two segments per job.  At every moment the released,
uncompleted job with the smallest deadline runs; ties go to the lower index.
A job still incomplete when its deadline arrives is abandoned there and the
units it already consumed are discarded from the returned schedule.
"""

from __future__ import annotations

import heapq
from bisect import bisect_left
from dataclasses import dataclass

from .model import InputError, Instance, Schedule, Segment


@dataclass(frozen=True)
class Block:
    """Busy interval [start, end) whose jobs were all released inside it.

    ``end`` is the first completion time at which every scheduled job
    released before it has finished.  start and end bound the segments of
    exactly the jobs in ``jobs``.
    """

    start: int
    end: int
    jobs: frozenset[int]


def _simulate(instance: Instance, subset, cap: int | None = None):
    """Run EDF over ``subset``; returns (raw segments, completed idx set).

    ``cap`` clips every deadline to min(d, cap), which is how windowed
    feasibility questions are asked.
    """
    jobs = instance.jobs
    n = len(jobs)
    chosen = sorted(set(subset))
    for idx in chosen:
        if not isinstance(idx, int) or not 1 <= idx <= n:
            raise InputError(f"subset references unknown job index {idx!r}")
    p = instance.p

    releases = sorted((jobs[idx - 1].r, idx) for idx in chosen)
    deadline = {}
    for idx in chosen:
        d = jobs[idx - 1].d
        deadline[idx] = d if cap is None or d <= cap else cap
    remaining = {idx: p for idx in chosen}
    segs: dict[int, list[list[int]]] = {idx: [] for idx in chosen}
    completed: set[int] = set()

    heap: list[tuple[int, int]] = []
    pos, m = 0, len(releases)
    t = releases[0][0] if m else 0
    while pos < m or heap:
        if not heap:
            t = max(t, releases[pos][0])
        while pos < m and releases[pos][0] <= t:
            idx = releases[pos][1]
            heapq.heappush(heap, (deadline[idx], idx))
            pos += 1
        while heap and heap[0][0] <= t:
            _, idx = heapq.heappop(heap)
            segs[idx] = []  # deadline passed while incomplete: units discarded
        if not heap:
            continue
        d, idx = heap[0]
        run_end = t + remaining[idx]
        if d < run_end:
            run_end = d
        if pos < m and releases[pos][0] < run_end:
            run_end = releases[pos][0]
        runs = segs[idx]
        if runs and runs[-1][1] == t:
            runs[-1][1] = run_end
        else:
            runs.append([t, run_end])
        remaining[idx] -= run_end - t
        t = run_end
        if remaining[idx] == 0:
            heapq.heappop(heap)
            completed.add(idx)

    out = []
    for idx in completed:
        for start, end in segs[idx]:
            out.append(Segment(idx, start, end))
    out.sort(key=lambda s: s.start)
    return out, completed


def edf_schedule(instance: Instance, subset) -> tuple[Schedule, frozenset[int]]:
    """Schedule of ``subset`` under the deadline-then-index priority rule."""
    segments, completed = _simulate(instance, subset)
    return Schedule(tuple(segments)), frozenset(completed)


def is_feasible(instance: Instance, subset) -> bool:
    """True when every job of the subset completes under EDF."""
    _, completed = _simulate(instance, subset)
    return len(completed) == len(set(subset))


def is_feasible_window(instance: Instance, subset, x: int, y: int) -> bool:
    """True when the subset is released inside [x, y) and completes there.

    Deadlines are clipped to min(d, y) before simulating, so completion by
    the window end is required, not just by the original deadlines.
    """
    if x > y:
        raise InputError(f"window [{x}, {y}) is reversed")
    sub = set(subset)
    for idx in sub:
        job = instance.job(idx)
        if not x <= job.r < y:
            return False
    _, completed = _simulate(instance, sub, cap=y)
    return len(completed) == len(sub)


def blocks(instance: Instance, schedule: Schedule) -> list[Block]:
    """Decompose a valid schedule into blocks.

    A block closes at the first completion time by which every scheduled job
    released earlier has finished, so two blocks may touch: the second then
    starts at a release time equal to the first's end.
    """
    segs = sorted(schedule.segments, key=lambda s: (s.start, s.end, s.job))
    for s in segs:
        if s.end <= s.start:
            raise InputError(f"segment [{s.start}, {s.end}) of job {s.job} is empty or reversed")
        instance.job(s.job)
    for prev, cur in zip(segs, segs[1:]):
        if cur.start < prev.end:
            raise InputError(
                f"segments of jobs {prev.job} and {cur.job} overlap at time {cur.start}"
            )
    if not segs:
        return []

    last_end: dict[int, int] = {}
    for s in segs:
        last_end[s.job] = max(last_end.get(s.job, s.end), s.end)
    # prefix maxima of completion times in release order, so that "all jobs
    # released before C are done by C" is one binary search per boundary
    by_release = sorted((instance.job(idx).r, end) for idx, end in last_end.items())
    rel_values = [r for r, _ in by_release]
    running_max = []
    acc = 0
    for _, end in by_release:
        acc = max(acc, end)
        running_max.append(acc)

    def all_released_done(boundary: int) -> bool:
        cnt = bisect_left(rel_values, boundary)
        return cnt == 0 or running_max[cnt - 1] <= boundary

    result: list[Block] = []
    cur_start = segs[0].start
    cur_jobs: set[int] = set()
    for pos, s in enumerate(segs):
        cur_jobs.add(s.job)
        nxt = segs[pos + 1] if pos + 1 < len(segs) else None
        if nxt is not None and nxt.start == s.end and not all_released_done(s.end):
            continue
        result.append(Block(cur_start, s.end, frozenset(cur_jobs)))
        if nxt is not None:
            cur_start = nxt.start
            cur_jobs = set()
    return result
