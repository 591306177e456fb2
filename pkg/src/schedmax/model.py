"""Domain types for preemptive scheduling of equal-length weighted jobs.

All times are integers.  Every job needs exactly ``p`` consecutive-or-split
time units between its release and its deadline; a job counts only if it is
fully scheduled.  Instances are kept in deadline order with a zero-weight
closing job appended at the horizon, which the solver tables rely on.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

# Inputs are validated against these bounds so that window arithmetic and
# weight sums always fit in signed 64-bit integers inside the solver kernel.
MAX_ABS_TIME = 1 << 40
MAX_WEIGHT = 1 << 40
MAX_LENGTH = 1 << 30
MAX_TOTAL_WEIGHT = 1 << 60


class InputError(ValueError):
    """Malformed instance data, parameters, or files."""


class ResourceLimitError(RuntimeError):
    """Requested work exceeds a documented size ceiling."""


@dataclass(frozen=True)
class Job:
    """One unit of work with release time, deadline and weight.

    ``idx`` is the 1-based position after the deadline sort.  ``id`` is the
    caller-supplied label; ``None`` marks the internal horizon-closing job.
    """

    id: str | None
    idx: int
    r: int
    d: int
    w: int


@dataclass(frozen=True)
class Instance:
    """Deadline-sorted jobs with the horizon-closing job last.

    Invariants: p >= 1; deadlines non-decreasing by idx; d >= r + p for every
    kept job; the closing job has weight 0, release equal to the largest real
    deadline and deadline one job length later.  Jobs that can never complete
    (d < r + p) are kept aside in ``dropped``.
    """

    p: int
    jobs: tuple[Job, ...]
    dropped: tuple[Job, ...] = ()

    @property
    def n(self) -> int:
        return len(self.jobs)

    def job(self, idx: int) -> Job:
        if not 1 <= idx <= len(self.jobs):
            raise InputError(f"job index {idx} out of range 1..{len(self.jobs)}")
        return self.jobs[idx - 1]

    def real_jobs(self) -> tuple[Job, ...]:
        return tuple(j for j in self.jobs if j.id is not None)


@dataclass(frozen=True)
class Segment:
    """Maximal run of consecutive time units [start, end) given to one job."""

    job: int
    start: int
    end: int


@dataclass(frozen=True)
class Schedule:
    """Segments sorted by start time, pairwise disjoint.

    Every job present receives either 0 or exactly p units in total.
    """

    segments: tuple[Segment, ...]

    def units(self, idx: int) -> int:
        return sum(s.end - s.start for s in self.segments if s.job == idx)


@dataclass(frozen=True)
class Solution:
    """A claimed result: which jobs complete, their total weight, and how."""

    completed: frozenset[int]
    weight: int
    schedule: Schedule
    method: str


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    violations: tuple[str, ...]


def _check_int(name: str, value: object) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise InputError(f"{name} must be an integer, got {value!r}")
    return value


def _check_time(name: str, value: object) -> int:
    v = _check_int(name, value)
    if abs(v) > MAX_ABS_TIME:
        raise InputError(f"{name} = {v} exceeds the supported time range")
    return v


def normalize(raw_jobs, p: int) -> Instance:
    """Build an Instance from raw (label, release, deadline, weight) entries.

    Jobs with d < r + p can never complete and are moved to ``dropped``.
    Remaining jobs are sorted by (deadline, label) and numbered from 1; the
    horizon-closing job is appended last.  Labels must be unique strings.
    """
    _check_int("p", p)
    if p < 1:
        raise InputError(f"p must be at least 1, got {p}")
    if p > MAX_LENGTH:
        raise InputError(f"p = {p} exceeds the supported job length")

    kept: list[tuple[str, int, int, int]] = []
    dropped: list[tuple[str, int, int, int]] = []
    seen: set[str] = set()
    total_w = 0
    for entry in raw_jobs:
        try:
            label, r, d, w = entry
        except (TypeError, ValueError):
            raise InputError(
                f"job entry {entry!r} is not a (label, release, deadline, weight) quadruple"
            ) from None
        if not isinstance(label, str):
            raise InputError(f"job label {label!r} must be a string")
        if label in seen:
            raise InputError(f"duplicate job label {label!r}")
        seen.add(label)
        _check_time(f"release of {label!r}", r)
        _check_time(f"deadline of {label!r}", d)
        _check_int(f"weight of {label!r}", w)
        if w < 0:
            raise InputError(f"weight of {label!r} is negative")
        if w > MAX_WEIGHT:
            raise InputError(f"weight of {label!r} exceeds the supported range")
        total_w += w
        if total_w > MAX_TOTAL_WEIGHT:
            raise InputError("total weight exceeds the supported range")
        if d < r + p:
            dropped.append((label, r, d, w))
        else:
            kept.append((label, r, d, w))

    kept.sort(key=lambda t: (t[2], t[0]))
    jobs = tuple(
        Job(label, i + 1, r, d, w) for i, (label, r, d, w) in enumerate(kept)
    )
    horizon = max((j.d for j in jobs), default=0)
    closer = Job(None, len(jobs) + 1, horizon, horizon + p, 0)
    return Instance(
        p=p,
        jobs=jobs + (closer,),
        dropped=tuple(Job(label, 0, r, d, w) for (label, r, d, w) in dropped),
    )


def validate(instance: Instance, solution: Solution) -> ValidationReport:
    """Check a claimed solution against an instance; violations come back as data."""
    violations: list[str] = []
    n = instance.n
    p = instance.p

    segs = sorted(solution.schedule.segments, key=lambda s: (s.start, s.end, s.job))
    totals: dict[int, int] = {}
    for s in segs:
        if not 1 <= s.job <= n:
            violations.append(f"segment references unknown job index {s.job}")
            continue
        if s.end <= s.start:
            violations.append(f"segment [{s.start}, {s.end}) of job {s.job} is empty or reversed")
            continue
        job = instance.job(s.job)
        if s.start < job.r or s.end > job.d:
            violations.append(
                f"segment [{s.start}, {s.end}) of job {s.job} leaves its window [{job.r}, {job.d})"
            )
        totals[s.job] = totals.get(s.job, 0) + (s.end - s.start)
    for prev, cur in zip(segs, segs[1:]):
        if cur.start < prev.end:
            violations.append(
                f"segments of jobs {prev.job} and {cur.job} overlap at time {cur.start}"
            )

    for idx in sorted(solution.completed):
        if not 1 <= idx <= n:
            violations.append(f"completed set references unknown job index {idx}")

    claimed = {idx for idx in solution.completed if 1 <= idx <= n}
    for idx, got in sorted(totals.items()):
        if got not in (0, p):
            violations.append(f"job {idx} received {got} units, expected 0 or {p}")
        if got == p and idx not in claimed:
            violations.append(f"job {idx} received {p} units but is not marked completed")
    for idx in sorted(claimed):
        if totals.get(idx, 0) != p:
            violations.append(
                f"completed job {idx} received {totals.get(idx, 0)} units, expected {p}"
            )

    expected_weight = sum(instance.job(idx).w for idx in claimed)
    if solution.weight != expected_weight:
        violations.append(
            f"claimed weight {solution.weight} differs from completed-set weight {expected_weight}"
        )

    return ValidationReport(ok=not violations, violations=tuple(violations))


def parse_instance(data) -> Instance:
    """Turn a decoded instance document into a normalized Instance."""
    if not isinstance(data, dict):
        raise InputError("instance document must be a JSON object")
    for key in ("p", "jobs"):
        if key not in data:
            raise InputError(f"instance document is missing the {key!r} field")
    jobs = data["jobs"]
    if not isinstance(jobs, list):
        raise InputError("the 'jobs' field must be a list")
    raw = []
    for item in jobs:
        if not isinstance(item, dict):
            raise InputError(f"job entry {item!r} must be an object")
        for key in ("id", "r", "d", "w"):
            if key not in item:
                raise InputError(f"job entry {item!r} is missing the {key!r} field")
        raw.append((item["id"], item["r"], item["d"], item["w"]))
    return normalize(raw, data["p"])


def load_instance(path) -> Instance:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise InputError(f"{path}: not valid JSON ({exc})") from None
    return parse_instance(data)


def solution_to_dict(instance: Instance, solution: Solution) -> dict:
    ids = {}
    for idx in sorted(solution.completed):
        job = instance.job(idx)
        if job.id is None:
            raise InputError("the internal closing job cannot appear in a solution file")
        ids[idx] = job.id
    segments = []
    for s in solution.schedule.segments:
        job = instance.job(s.job)
        if job.id is None:
            raise InputError("the internal closing job cannot appear in a solution file")
        segments.append({"id": job.id, "start": s.start, "end": s.end})
    return {
        "weight": solution.weight,
        "completed": [ids[idx] for idx in sorted(solution.completed)],
        "segments": segments,
        "method": solution.method,
    }


def write_solution(path, instance: Instance, solution: Solution) -> None:
    write_json(path, solution_to_dict(instance, solution))


def write_json(path, data) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(data, fh, indent=2, sort_keys=True)
        fh.write("\n")


def parse_solution(instance: Instance, data) -> Solution:
    """Turn a decoded solution document back into idx-based form."""
    if not isinstance(data, dict):
        raise InputError("solution document must be a JSON object")
    for key in ("weight", "completed", "segments", "method"):
        if key not in data:
            raise InputError(f"solution document is missing the {key!r} field")
    by_id = {j.id: j.idx for j in instance.jobs if j.id is not None}

    def to_idx(label) -> int:
        if label not in by_id:
            raise UnknownJobError(f"solution references unknown job id {label!r}")
        return by_id[label]

    completed = frozenset(to_idx(label) for label in data["completed"])
    segments = []
    for item in data["segments"]:
        for key in ("id", "start", "end"):
            if key not in item:
                raise InputError(f"segment entry {item!r} is missing the {key!r} field")
        start = _check_int("segment start", item["start"])
        end = _check_int("segment end", item["end"])
        segments.append(Segment(to_idx(item["id"]), start, end))
    segments.sort(key=lambda s: (s.start, s.end, s.job))
    weight = _check_int("weight", data["weight"])
    return Solution(
        completed=completed,
        weight=weight,
        schedule=Schedule(tuple(segments)),
        method=str(data["method"]),
    )


def load_solution(path, instance: Instance) -> Solution:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise InputError(f"{path}: not valid JSON ({exc})") from None
    return parse_solution(instance, data)


class UnknownJobError(InputError):
    """A solution document references a job id the instance does not contain."""
