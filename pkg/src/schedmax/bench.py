"""Runtime scaling measurements for the table-filling solver."""

from __future__ import annotations

import time
from dataclasses import dataclass
from statistics import median

import numpy as np

from .dp import MAX_TABLE_JOBS, compute_tables, reconstruct
from .gen import GenParams, SplitMix64, generate
from .model import InputError, ResourceLimitError, parse_instance

# Timings below this are dominated by fixed overhead, not table work.
MIN_RELIABLE_SECONDS = 0.010


@dataclass(frozen=True)
class BenchReport:
    sizes: tuple[int, ...]
    times: tuple[float, ...]  # median seconds per size
    fitted_exponent: float
    repeats: int
    seed: int


def run_bench(sizes, repeats: int, seed: int) -> BenchReport:
    """Time table fill plus reconstruction across sizes and fit a power law.

    The exponent is the least-squares slope of log(time) against log(n).
    If the smallest size finishes under 10 ms it is dropped from the fit
    (but still reported) as long as two points remain.
    """
    sizes = tuple(int(s) for s in sizes)
    if len(sizes) < 2:
        raise InputError("need at least two sizes to fit an exponent")
    if any(s < 1 for s in sizes):
        raise InputError("sizes must be positive")
    if any(b <= a for a, b in zip(sizes, sizes[1:])):
        raise InputError("sizes must be strictly increasing")
    if not isinstance(repeats, int) or repeats < 1:
        raise InputError(f"repeats must be a positive integer, got {repeats!r}")
    if max(sizes) + 1 > MAX_TABLE_JOBS:
        raise ResourceLimitError(
            f"size {max(sizes)} plus the closing job exceeds the table ceiling "
            f"of {MAX_TABLE_JOBS} jobs"
        )

    # warm the compiled kernel so the first measured size pays no build cost
    warm = parse_instance(
        generate(GenParams(n=3, p=2, horizon=6, max_window=4, max_weight=5, seed=1))
    )
    tables = compute_tables(warm)
    reconstruct(tables, warm)

    stream = SplitMix64(seed)
    times = []
    for size in sizes:
        inst_seed = stream.next_u64()
        params = GenParams(
            n=size,
            p=3,
            horizon=3 * size,
            max_window=30,
            max_weight=1000,
            seed=inst_seed,
            family="uniform",
        )
        instance = parse_instance(generate(params))
        samples = []
        for _ in range(repeats):
            t0 = time.perf_counter()
            tables = compute_tables(instance)
            reconstruct(tables, instance)
            samples.append(time.perf_counter() - t0)
        times.append(median(samples))

    fit_sizes, fit_times = list(sizes), list(times)
    if len(fit_sizes) > 2 and fit_times[0] < MIN_RELIABLE_SECONDS:
        fit_sizes, fit_times = fit_sizes[1:], fit_times[1:]
    slope = float(np.polyfit(np.log(fit_sizes), np.log(fit_times), 1)[0])

    return BenchReport(
        sizes=sizes,
        times=tuple(times),
        fitted_exponent=slope,
        repeats=repeats,
        seed=seed,
    )


def report_to_dict(report: BenchReport) -> dict:
    return {
        "sizes": list(report.sizes),
        "times": list(report.times),
        "fitted_exponent": report.fitted_exponent,
        "repeats": report.repeats,
        "seed": report.seed,
    }
