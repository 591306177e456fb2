"""EDF engine: simulation, feasibility predicates, block decomposition."""

from __future__ import annotations

import pytest
from hypothesis import given

from conftest import instances_with_subset
from schedmax.edf import blocks, edf_schedule, is_feasible, is_feasible_window
from schedmax.model import InputError, Schedule, Segment, normalize

PREEMPT = normalize([("j1", 1, 3, 4), ("j2", 0, 4, 7)], 2)


def _completion_times(schedule: Schedule) -> dict[int, int]:
    done: dict[int, int] = {}
    for seg in schedule.segments:
        done[seg.job] = max(done.get(seg.job, seg.end), seg.end)
    return done


def test_edf_empty_subset():
    schedule, completed = edf_schedule(PREEMPT, ())
    assert schedule.segments == () and completed == frozenset()


def test_edf_preemption_example():
    schedule, completed = edf_schedule(PREEMPT, (1, 2))
    assert completed == {1, 2}
    assert [(s.job, s.start, s.end) for s in schedule.segments] == [
        (2, 0, 1),
        (1, 1, 3),
        (2, 3, 4),
    ]


def test_edf_tie_break_prefers_lower_idx():
    inst = normalize([("a", 0, 2, 1), ("b", 0, 2, 9)], 2)
    schedule, completed = edf_schedule(inst, (1, 2))
    assert completed == {1}
    assert all(s.job == 1 for s in schedule.segments)


def test_edf_discards_partial_units_at_expiry():
    # b gets the leftover unit [2,3) but needs two; at d=3 it is evicted and
    # the unit disappears from the returned schedule.
    inst = normalize([("a", 0, 3, 1), ("b", 1, 3, 1)], 2)
    schedule, completed = edf_schedule(inst, (1, 2))
    assert completed == {1}
    assert schedule.units(2) == 0
    assert schedule.units(1) == 2


def test_edf_rejects_unknown_idx():
    with pytest.raises(InputError):
        edf_schedule(PREEMPT, (99,))


def test_is_feasible_examples():
    assert is_feasible(PREEMPT, ())
    assert is_feasible(PREEMPT, (1, 2))
    clash = normalize([("a", 0, 2, 5), ("b", 0, 2, 3)], 2)
    assert is_feasible(clash, (1,))
    assert not is_feasible(clash, (1, 2))


def test_is_feasible_window_examples():
    one = normalize([("a", 0, 10, 1)], 2)
    assert is_feasible_window(one, (1,), 0, 2)
    assert not is_feasible_window(one, (1,), 1, 3)  # released outside [1,3)
    two = normalize([("a", 0, 10, 1), ("b", 0, 10, 1)], 2)
    assert not is_feasible_window(two, (1, 2), 0, 3)  # 4 units, 3 available
    assert is_feasible_window(two, (1, 2), 0, 4)
    assert is_feasible_window(two, (), 5, 5)


def test_blocks_empty_schedule():
    assert blocks(PREEMPT, Schedule(())) == []


def test_blocks_preemption_is_single_block():
    schedule, _ = edf_schedule(PREEMPT, (1, 2))
    parts = blocks(PREEMPT, schedule)
    assert [(b.start, b.end, set(b.jobs)) for b in parts] == [(0, 4, {1, 2})]


def test_blocks_split_across_gap():
    inst = normalize([("a", 0, 8, 1), ("b", 5, 13, 1)], 2)
    schedule, _ = edf_schedule(inst, (1, 2))
    parts = blocks(inst, schedule)
    assert [(b.start, b.end, set(b.jobs)) for b in parts] == [
        (0, 2, {1}),
        (5, 7, {2}),
    ]


def test_blocks_split_at_zero_length_gap():
    # b starts exactly when a completes; the busy run still decomposes into
    # two touching blocks because everything released before time 2 is done.
    inst = normalize([("a", 0, 10, 1), ("b", 2, 12, 1)], 2)
    schedule, _ = edf_schedule(inst, (1, 2))
    assert [(s.job, s.start, s.end) for s in schedule.segments] == [
        (1, 0, 2),
        (2, 2, 4),
    ]
    parts = blocks(inst, schedule)
    assert [(b.start, b.end, set(b.jobs)) for b in parts] == [
        (0, 2, {1}),
        (2, 4, {2}),
    ]


def test_blocks_no_split_while_an_earlier_release_is_pending():
    # Same shape, but a third job released at 1 is still incomplete at time 2,
    # so the busy run stays one block.
    inst = normalize([("a", 0, 10, 1), ("b", 2, 12, 1), ("c", 1, 14, 1)], 2)
    schedule, _ = edf_schedule(inst, (1, 2, 3))
    parts = blocks(inst, schedule)
    assert [(b.start, b.end, set(b.jobs)) for b in parts] == [(0, 6, {1, 2, 3})]


def test_blocks_rejects_overlapping_segments():
    bad = Schedule((Segment(1, 0, 2), Segment(2, 1, 3)))
    with pytest.raises(InputError):
        blocks(PREEMPT, bad)


@given(instances_with_subset())
def test_edf_schedule_is_valid_and_complete(pair):
    inst, subset = pair
    schedule, completed = edf_schedule(inst, subset)
    assert completed <= subset
    seen = sorted(schedule.segments, key=lambda s: s.start)
    for a, b in zip(seen, seen[1:]):
        assert a.end <= b.start
    for idx in subset:
        job = inst.job(idx)
        assert schedule.units(idx) == (inst.p if idx in completed else 0)
        for seg in schedule.segments:
            if seg.job == idx:
                assert job.r <= seg.start and seg.end <= job.d
    assert len(schedule.segments) <= 2 * len(subset)


@given(instances_with_subset())
def test_feasibility_is_subset_monotone(pair):
    inst, subset = pair
    if not is_feasible(inst, subset):
        return
    for drop in subset:
        assert is_feasible(inst, subset - {drop})


@given(instances_with_subset())
def test_block_structure_of_completed_sets(pair):
    inst, subset = pair
    schedule, completed = edf_schedule(inst, subset)
    if completed != subset:
        return
    parts = blocks(inst, schedule)
    done = _completion_times(schedule)
    covered: set[int] = set()
    releases = {inst.job(idx).r for idx in subset}
    prev_end = None
    for block in parts:
        # length law and ordering
        assert block.end - block.start == len(block.jobs) * inst.p
        if prev_end is not None:
            assert block.start >= prev_end
        prev_end = block.end
        # blocks start at a release and contain only jobs released inside
        assert block.jobs
        assert block.start in releases
        for idx in block.jobs:
            assert inst.job(idx).r >= block.start
        # the least urgent job of the block completes last, at the block end
        last = max(block.jobs)
        assert done[last] == block.end
        covered |= set(block.jobs)
    assert covered == set(subset)


@given(instances_with_subset())
def test_removing_least_urgent_job_preserves_the_rest(pair):
    inst, subset = pair
    schedule, completed = edf_schedule(inst, subset)
    if completed != subset or not subset:
        return
    for block in blocks(inst, schedule):
        least_urgent = max(block.jobs)
        rest = subset - {least_urgent}
        residual, completed_rest = edf_schedule(inst, rest)
        assert completed_rest == rest
        expected = tuple(s for s in schedule.segments if s.job != least_urgent)
        assert residual.segments == expected
