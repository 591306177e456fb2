"""Domain model: normalization, validation, and the file formats."""

from __future__ import annotations

import json

import pytest
from hypothesis import given

from conftest import instances, raw_instances
from schedmax.model import (
    InputError,
    Instance,
    Job,
    Schedule,
    Segment,
    Solution,
    UnknownJobError,
    load_instance,
    load_solution,
    normalize,
    parse_instance,
    parse_solution,
    solution_to_dict,
    validate,
    write_json,
    write_solution,
)

CONFLICT = [("a", 0, 2, 5), ("b", 0, 2, 3)]
PREEMPT = [("j1", 1, 3, 4), ("j2", 0, 4, 7)]


def test_normalize_sorts_by_deadline_then_label():
    inst = normalize([("b", 0, 9, 1), ("a", 5, 9, 2), ("c", 0, 4, 3)], 2)
    labels = [j.id for j in inst.real_jobs()]
    assert labels == ["c", "a", "b"]
    assert [j.idx for j in inst.jobs] == [1, 2, 3, 4]


def test_normalize_appends_horizon_closer():
    inst = normalize(PREEMPT, 2)
    closer = inst.jobs[-1]
    assert closer.id is None
    assert closer.r == 4  # largest real deadline
    assert closer.d == 4 + 2
    assert closer.w == 0
    assert inst.n == 3


def test_normalize_empty_input_keeps_only_closer():
    inst = normalize([], 3)
    assert inst.n == 1
    closer = inst.jobs[0]
    assert closer.id is None and (closer.r, closer.d, closer.w) == (0, 3, 0)


def test_normalize_drops_hopeless_jobs():
    inst = normalize([("a", 0, 1, 5), ("b", 0, 4, 1)], 2)
    assert [j.id for j in inst.real_jobs()] == ["b"]
    assert [j.id for j in inst.dropped] == ["a"]
    # dropped jobs do not shape the horizon
    assert inst.jobs[-1].r == 4


@pytest.mark.parametrize(
    "raw, p",
    [
        ([("a", 0, 2, 1), ("a", 1, 3, 1)], 1),  # duplicate label
        ([(1, 0, 2, 1)], 1),  # non-string label
        ([("a", 0.5, 2, 1)], 1),  # non-integer time
        ([("a", True, 2, 1)], 1),  # bool masquerading as int
        ([("a", 0, 2, -1)], 1),  # negative weight
        ([("a", 0, 2)], 1),  # not a quadruple
        ([("a", 0, 2, 1)], 0),  # p < 1
        ([("a", 1 << 50, 1 << 50, 1)], 1),  # time out of range
    ],
)
def test_normalize_rejects_bad_input(raw, p):
    with pytest.raises(InputError):
        normalize(raw, p)


@given(instances())
def test_normalize_invariants(inst: Instance):
    deadlines = [j.d for j in inst.jobs]
    assert deadlines == sorted(deadlines)
    assert [j.idx for j in inst.jobs] == list(range(1, inst.n + 1))
    closer = inst.jobs[-1]
    assert closer.id is None and closer.w == 0
    assert closer.d == closer.r + inst.p
    for job in inst.jobs:
        assert job.d >= job.r + inst.p


def test_job_lookup_bounds():
    inst = normalize(CONFLICT, 2)
    assert inst.job(1).id == "a"
    with pytest.raises(InputError):
        inst.job(0)
    with pytest.raises(InputError):
        inst.job(inst.n + 1)


def _solution(inst: Instance, completed, segments, weight=None, method="dp"):
    completed = frozenset(completed)
    if weight is None:
        weight = sum(inst.job(i).w for i in completed)
    return Solution(
        completed=completed,
        weight=weight,
        schedule=Schedule(tuple(Segment(*s) for s in segments)),
        method=method,
    )


def test_validate_accepts_preemptive_solution():
    inst = normalize(PREEMPT, 2)
    # j2 (idx 2) runs [0,1), is preempted by j1 (idx 1), then finishes.
    sol = _solution(inst, {1, 2}, [(2, 0, 1), (1, 1, 3), (2, 3, 4)])
    report = validate(inst, sol)
    assert report.ok and report.violations == ()


@pytest.mark.parametrize(
    "completed, segments, weight, fragment",
    [
        ({9}, [], 0, "unknown job index"),
        (set(), [(1, 2, 2)], 0, "empty or reversed"),
        ({1}, [(1, 0, 2)], 4, "leaves its window"),  # j1 released at 1
        ({1, 2}, [(1, 1, 3), (2, 2, 4)], 11, "overlap"),
        ({1}, [(1, 1, 2)], 4, "received 1 units"),
        (set(), [(1, 1, 3)], 0, "not marked completed"),
        ({2}, [], 7, "received 0 units"),
        ({1, 2}, [(2, 0, 1), (1, 1, 3), (2, 3, 4)], 10, "claimed weight 10"),
    ],
)
def test_validate_reports_each_violation(completed, segments, weight, fragment):
    inst = normalize(PREEMPT, 2)
    sol = _solution(inst, completed, segments, weight=weight)
    report = validate(inst, sol)
    assert not report.ok
    assert any(fragment in line for line in report.violations), report.violations


def test_parse_instance_shape_errors():
    with pytest.raises(InputError):
        parse_instance([])
    with pytest.raises(InputError):
        parse_instance({"p": 2})
    with pytest.raises(InputError):
        parse_instance({"p": 2, "jobs": {}})
    with pytest.raises(InputError):
        parse_instance({"p": 2, "jobs": ["x"]})
    with pytest.raises(InputError):
        parse_instance({"p": 2, "jobs": [{"id": "a", "r": 0, "d": 2}]})


def test_instance_file_round_trip(tmp_path):
    doc = {"p": 2, "jobs": [{"id": "a", "r": 0, "d": 2, "w": 5}]}
    path = tmp_path / "inst.json"
    write_json(path, doc)
    inst = load_instance(path)
    assert inst.p == 2 and [j.id for j in inst.real_jobs()] == ["a"]
    path.write_text("{not json", encoding="utf-8")
    with pytest.raises(InputError):
        load_instance(path)


def test_solution_file_round_trip(tmp_path):
    inst = normalize(PREEMPT, 2)
    sol = _solution(inst, {1, 2}, [(2, 0, 1), (1, 1, 3), (2, 3, 4)])
    path = tmp_path / "sol.json"
    write_solution(path, inst, sol)
    back = load_solution(path, inst)
    assert back == sol
    data = json.loads(path.read_text(encoding="utf-8"))
    assert data["completed"] == ["j1", "j2"]
    assert data["weight"] == 11


def test_solution_document_uses_labels_not_indices():
    inst = normalize(CONFLICT, 2)
    sol = _solution(inst, {1}, [(1, 0, 2)])
    doc = solution_to_dict(inst, sol)
    assert doc["completed"] == ["a"]
    assert doc["segments"] == [{"id": "a", "start": 0, "end": 2}]


def test_closer_job_cannot_be_serialized():
    inst = normalize(CONFLICT, 2)
    sol = _solution(inst, {inst.n}, [])
    with pytest.raises(InputError):
        solution_to_dict(inst, sol)


def test_parse_solution_rejects_unknown_ids():
    inst = normalize(CONFLICT, 2)
    doc = {"weight": 0, "completed": ["ghost"], "segments": [], "method": "dp"}
    with pytest.raises(UnknownJobError):
        parse_solution(inst, doc)
    doc = {"weight": 0, "completed": [], "segments": [], "method": "dp"}
    parse_solution(inst, doc)  # minimal document is fine
    with pytest.raises(InputError):
        parse_solution(inst, {"weight": 0, "completed": [], "segments": []})


@given(raw_instances())
def test_normalize_is_order_insensitive(raw_p):
    raw, p = raw_p
    forward = normalize(raw, p)
    backward = normalize(list(reversed(raw)), p)
    assert forward == backward
