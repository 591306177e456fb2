"""Shared strategies and helpers for the test suite.

Instances drawn here stay small enough that every oracle in
``schedmax.oracle`` can enumerate them outright, so properties are checked
against exhaustive ground truth rather than against the solver itself.
"""

from __future__ import annotations

import hypothesis
from hypothesis import strategies as st

from schedmax.gen import GenParams, generate
from schedmax.model import Instance, normalize, parse_instance

hypothesis.settings.register_profile("default", deadline=None, max_examples=60)
hypothesis.settings.register_profile("thorough", deadline=None, max_examples=300)
hypothesis.settings.load_profile("default")


@st.composite
def raw_instances(draw, max_jobs: int = 6, max_p: int = 4):
    """A (raw_jobs, p) pair with small integral times and weights.

    Releases may be negative and deadlines always leave d >= r + p, so no
    job is dropped during normalization and subset enumeration stays exact.
    """
    p = draw(st.integers(1, max_p))
    count = draw(st.integers(0, max_jobs))
    raw = []
    for pos in range(count):
        r = draw(st.integers(-4, 12))
        slack = draw(st.integers(0, 6))
        w = draw(st.integers(0, 9))
        raw.append((f"j{pos + 1}", r, r + p + slack, w))
    return raw, p


@st.composite
def instances(draw, max_jobs: int = 6, max_p: int = 4) -> Instance:
    raw, p = draw(raw_instances(max_jobs=max_jobs, max_p=max_p))
    return normalize(raw, p)


@st.composite
def instances_with_subset(draw, max_jobs: int = 6, max_p: int = 4):
    """An instance together with an arbitrary subset of its real jobs."""
    instance = draw(instances(max_jobs=max_jobs, max_p=max_p))
    real = [j.idx for j in instance.real_jobs()]
    subset = draw(st.sets(st.sampled_from(real)) if real else st.just(set()))
    return instance, frozenset(subset)


def weight_of(instance: Instance, subset) -> int:
    return sum(instance.job(idx).w for idx in subset)


def gen_instance(
    family: str, n: int, p: int, seed: int, max_weight: int = 9
) -> Instance:
    """One deterministic generated instance with a crowded little horizon."""
    params = GenParams(
        n=n,
        p=p,
        horizon=2 * n + 2,
        max_window=p + 4,
        max_weight=max_weight,
        seed=seed,
        family=family,
    )
    return parse_instance(generate(params))
