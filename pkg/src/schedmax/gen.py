"""Seeded instance generation with a portable deterministic stream.

The stream below (splitmix64) and the bounded-draw rule are part of the
file-format contract: the same seed must produce byte-identical instance
files on any platform or runtime, so nothing here touches the standard
library RNG.
"""

from __future__ import annotations

from dataclasses import dataclass

from .model import InputError

MASK64 = (1 << 64) - 1

FAMILIES = ("uniform", "tight", "nested", "staircase")


class SplitMix64:
    """64-bit mixing stream; the constants are load-bearing, do not edit.

    state += 0x9E3779B97F4A7C15
    z = state; z = (z ^ z>>30) * 0xBF58476D1CE4E5B9
    z = (z ^ z>>27) * 0x94D049BB133111EB; output z ^ z>>31
    Bounded draws are ``output % span``; the modulo bias is negligible for
    the spans used here and keeps the rule trivially portable.
    """

    GAMMA = 0x9E3779B97F4A7C15
    MIX1 = 0xBF58476D1CE4E5B9
    MIX2 = 0x94D049BB133111EB

    def __init__(self, seed: int):
        self._state = seed & MASK64

    def next_u64(self) -> int:
        self._state = (self._state + self.GAMMA) & MASK64
        z = self._state
        z = ((z ^ (z >> 30)) * self.MIX1) & MASK64
        z = ((z ^ (z >> 27)) * self.MIX2) & MASK64
        return z ^ (z >> 31)

    def rand_int(self, lo: int, hi: int) -> int:
        """Uniform draw from [lo, hi], both ends included."""
        if hi < lo:
            raise InputError(f"empty draw range [{lo}, {hi}]")
        return lo + self.next_u64() % (hi - lo + 1)


@dataclass(frozen=True)
class GenParams:
    """Knobs for one generated instance.

    horizon bounds releases, max_window bounds d - r (and must be >= p),
    max_weight bounds weights; all draws are inclusive of both ends.
    """

    n: int
    p: int
    horizon: int
    max_window: int
    max_weight: int
    seed: int
    family: str = "uniform"


def _validate(params: GenParams) -> None:
    if isinstance(params.n, bool) or not isinstance(params.n, int) or params.n < 0:
        raise InputError(f"n must be a non-negative integer, got {params.n!r}")
    if not isinstance(params.p, int) or params.p < 1:
        raise InputError(f"p must be a positive integer, got {params.p!r}")
    if not isinstance(params.horizon, int) or params.horizon < 0:
        raise InputError(f"horizon must be non-negative, got {params.horizon!r}")
    if not isinstance(params.max_window, int) or params.max_window < params.p:
        raise InputError(
            f"max_window must be at least p = {params.p}, got {params.max_window!r}"
        )
    if not isinstance(params.max_weight, int) or params.max_weight < 0:
        raise InputError(f"max_weight must be non-negative, got {params.max_weight!r}")
    if not isinstance(params.seed, int):
        raise InputError(f"seed must be an integer, got {params.seed!r}")
    if params.family not in FAMILIES:
        raise InputError(
            f"unknown family {params.family!r}; choose one of {', '.join(FAMILIES)}"
        )
    if params.n > 1 << 20 or params.horizon > 1 << 32 or params.max_window > 1 << 32:
        raise InputError("generation parameters exceed supported ranges")


def generate(params: GenParams) -> dict:
    """Raw instance document for the given parameters, ready to serialize."""
    _validate(params)
    rng = SplitMix64(params.seed)
    p = params.p
    width = max(1, len(str(params.n)))
    jobs = []

    if params.family == "nested":
        lo, hi = 0, max(p, params.horizon + params.max_window)
    for i in range(params.n):
        label = f"j{i + 1:0{width}d}"
        if params.family == "uniform":
            r = rng.rand_int(0, params.horizon)
            d = r + p + rng.rand_int(0, params.max_window - p)
        elif params.family == "tight":
            r = rng.rand_int(0, params.horizon)
            d = r + p
        elif params.family == "staircase":
            r = i * (p // 2)
            d = r + params.max_window
        else:  # nested: each interval sits inside the previous one
            r, d = lo, hi
            slack = (hi - lo) - p
            left = rng.rand_int(0, slack)
            right = rng.rand_int(0, slack - left)
            lo, hi = lo + left, hi - right
        w = rng.rand_int(0, params.max_weight)
        jobs.append({"id": label, "r": r, "d": d, "w": w})

    return {"p": p, "jobs": jobs}
