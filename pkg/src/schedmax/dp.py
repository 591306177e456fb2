"""Exact O(n^4) dynamic program over release-time windows.

Three tables are filled level by level, where level k means "only jobs with
index at most k may be used" (indices follow the deadline sort):

* ``window[k, i, j]``: best weight of a subset released in [r_i, r_j) that
  completes entirely inside that window.
* ``fill[k, i, a]``: best weight of exactly ``a`` jobs that fill
  [r_i, r_i + a*p) with no idle unit.
* ``prefix[k, i, j]``: like ``window`` but the machine must stay busy from
  r_i until the release of job k+1.  Cells are undefined when k = n or that
  release falls outside the window; cells whose candidate set is empty carry
  an explicit "unattained" state, and both are skipped wherever referenced.

A window either starts idle (shrink its left edge to the next release) or
starts with a filled block of ``a`` jobs followed by an independent window.
A filled block either does not use job k, or schedules job k in its final
slot, or weaves job k through the idle time left between a busy prefix and a
trailing filled block that starts at the release of the last job to
interrupt k.  Every cell records which alternative won so that an optimal
job set can be read back out of the tables.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numba import njit

from .edf import edf_schedule
from .model import Instance, ResourceLimitError, Solution, normalize

# Tables hold ~3*(n+1)^3 64-bit cells plus choice bytes; past this ceiling
# they outgrow roughly 1 GB of memory.
MAX_TABLE_JOBS = 250

# window cell choices
W_EMPTY, W_SKIP_START, W_SPLIT = 0, 1, 2
# fill cell choices
B_EMPTY, B_WITHOUT, B_LAST_SLOT, B_WEAVE = 0, 1, 2, 3
# prefix cell states
P_UNDEFINED, P_VALUE, P_UNATTAINED = 0, 1, 2


@dataclass(frozen=True)
class Tables:
    """Filled solver tables plus the lookup arrays reconstruction needs.

    Arrays are marked read-only after the fill; treat a Tables value as
    immutable and share it freely.
    """

    n: int
    p: int
    root: int  # row of the earliest-released job; the full answer lives at
    # window[n, root, n]
    releases: np.ndarray
    window: np.ndarray
    window_choice: np.ndarray
    window_split: np.ndarray
    fill: np.ndarray
    fill_choice: np.ndarray
    fill_weave: np.ndarray
    prefix: np.ndarray
    prefix_state: np.ndarray
    prefix_split: np.ndarray
    after_strict: np.ndarray
    at_or_after: np.ndarray

    @property
    def best_weight(self) -> int:
        return int(self.window[self.n, self.root, self.n])


def fit_count(x: int, y: int, instance: Instance) -> int:
    """How many jobs can run inside [x, y) without filling it, capped at n.

    Meaningful for y > x; at y = x the arithmetic yields -1 and callers are
    expected not to ask.
    """
    p = instance.p
    return min(instance.n, -((x - y) // p) - 1)


def released_at_or_after(x: int, instance: Instance) -> int:
    """Index of the first job released at or after x (lowest index on ties)."""
    best = None
    for job in instance.jobs:
        if job.r >= x and (best is None or (job.r, job.idx) < best):
            best = (job.r, job.idx)
    if best is None:
        raise ValueError(f"no job is released at or after {x}")
    return best[1]


def released_after(x: int, instance: Instance) -> int:
    """Index of the first job released strictly after x (lowest index on ties)."""
    best = None
    for job in instance.jobs:
        if job.r > x and (best is None or (job.r, job.idx) < best):
            best = (job.r, job.idx)
    if best is None:
        raise ValueError(f"no job is released after {x}")
    return best[1]


@njit(cache=True)
def _first_greater(vals, x):
    lo, hi = 0, vals.shape[0]
    while lo < hi:
        mid = (lo + hi) // 2
        if vals[mid] <= x:
            lo = mid + 1
        else:
            hi = mid
    return lo


@njit(cache=True)
def _first_at_least(vals, x):
    lo, hi = 0, vals.shape[0]
    while lo < hi:
        mid = (lo + hi) // 2
        if vals[mid] < x:
            lo = mid + 1
        else:
            hi = mid
    return lo


@njit(cache=True)
def _fill_kernel(
    n,
    p,
    r,
    d,
    w,
    order_desc,
    after_strict,
    at_or_after,
    rel_vals,
    rel_idx,
    window,
    wch,
    wsp,
    fill,
    fch,
    fwv,
    prefix,
    pst,
    psp,
):
    for k in range(n + 1):
        # fill table at level k; only level k-1 cells are read
        for i in range(1, n + 1):
            ri = r[i]
            for a in range(n + 1):
                if a == 0 or k == 0:
                    fill[k, i, a] = 0
                    fch[k, i, a] = B_EMPTY
                    continue
                end = ri + a * p
                best = fill[k - 1, i, a]
                ch = B_WITHOUT
                wit = 0
                if ri <= r[k] and r[k] <= ri + (a - 1) * p and d[k] >= end:
                    cand = fill[k - 1, i, a - 1] + w[k]
                    if cand > best:
                        best = cand
                        ch = B_LAST_SLOT
                    lo = _first_greater(rel_vals, r[k])
                    hi = _first_at_least(rel_vals, end)
                    for pos in range(lo, hi):
                        l = rel_idx[pos]
                        if pst[k - 1, i, l] != P_VALUE:
                            continue
                        b = (end - r[l] + p - 1) // p - 1
                        if b > n:
                            b = n
                        cand = prefix[k - 1, i, l] + fill[k - 1, l, b] + w[k]
                        if cand > best:
                            best = cand
                            ch = B_WEAVE
                            wit = l
                fill[k, i, a] = best
                fch[k, i, a] = ch
                fwv[k, i, a] = wit
        # window table at level k, rows by strictly decreasing release so
        # that every lookup lands on an already-filled row
        for oi in range(n):
            i = order_desc[oi]
            ri = r[i]
            for j in range(1, n + 1):
                rj = r[j]
                if rj < ri:
                    continue
                if rj == ri:
                    window[k, i, j] = 0
                    wch[k, i, j] = W_EMPTY
                    continue
                best = window[k, after_strict[i], j]
                ch = W_SKIP_START
                wit = 0
                amax = (rj - ri) // p
                if amax > n:
                    amax = n
                for a in range(1, amax + 1):
                    cand = fill[k, i, a] + window[k, at_or_after[i, a], j]
                    if cand > best:
                        best = cand
                        ch = W_SPLIT
                        wit = a
                window[k, i, j] = best
                wch[k, i, j] = ch
                wsp[k, i, j] = wit
        # prefix table at level k; reads this level's window and fill rows
        for i in range(1, n + 1):
            ri = r[i]
            for j in range(1, n + 1):
                rj = r[j]
                if rj < ri:
                    continue
                if rj == ri:
                    prefix[k, i, j] = 0
                    pst[k, i, j] = P_VALUE
                    psp[k, i, j] = 0
                    continue
                if k == n or r[k + 1] < ri or r[k + 1] > rj:
                    pst[k, i, j] = P_UNDEFINED
                    continue
                alo = (r[k + 1] - ri + p - 1) // p
                ahi = (rj - ri) // p
                if ahi > n:
                    ahi = n
                got = False
                best = 0
                wit = 0
                for a in range(alo, ahi + 1):
                    cand = fill[k, i, a] + window[k, at_or_after[i, a], j]
                    if not got or cand > best:
                        got = True
                        best = cand
                        wit = a
                if got:
                    prefix[k, i, j] = best
                    pst[k, i, j] = P_VALUE
                    psp[k, i, j] = wit
                else:
                    pst[k, i, j] = P_UNATTAINED


def compute_tables(instance: Instance) -> Tables:
    n = instance.n
    if n > MAX_TABLE_JOBS:
        raise ResourceLimitError(
            f"instance has {n} jobs (closing job included); the table ceiling is "
            f"{MAX_TABLE_JOBS} to stay within roughly 1 GB of memory"
        )
    p = instance.p
    r = np.zeros(n + 1, dtype=np.int64)
    d = np.zeros(n + 1, dtype=np.int64)
    w = np.zeros(n + 1, dtype=np.int64)
    for job in instance.jobs:
        r[job.idx] = job.r
        d[job.idx] = job.d
        w[job.idx] = job.w

    order_desc = np.array(
        sorted(range(1, n + 1), key=lambda t: (-r[t], t)), dtype=np.int64
    )
    pairs = sorted((int(r[idx]), idx) for idx in range(1, n + 1))
    rel_vals = np.array([pr[0] for pr in pairs], dtype=np.int64)
    rel_idx = np.array([pr[1] for pr in pairs], dtype=np.int64)

    after_strict = np.full(n + 1, -1, dtype=np.int64)
    for i in range(1, n + 1):
        pos = int(np.searchsorted(rel_vals, r[i], side="right"))
        if pos < n:
            after_strict[i] = rel_idx[pos]
    at_or_after = np.full((n + 1, n + 1), -1, dtype=np.int64)
    horizon = int(rel_vals[-1]) if n else 0
    for i in range(1, n + 1):
        starts = r[i] + np.arange(n + 1, dtype=np.int64) * p
        pos = np.searchsorted(rel_vals, starts, side="left")
        ok = starts <= horizon
        at_or_after[i, ok] = rel_idx[pos[ok]]

    shape = (n + 1, n + 1, n + 1)
    window = np.zeros(shape, dtype=np.int64)
    wch = np.zeros(shape, dtype=np.int8)
    wsp = np.zeros(shape, dtype=np.int32)
    fill = np.zeros(shape, dtype=np.int64)
    fch = np.zeros(shape, dtype=np.int8)
    fwv = np.zeros(shape, dtype=np.int32)
    prefix = np.zeros(shape, dtype=np.int64)
    pst = np.zeros(shape, dtype=np.int8)
    psp = np.zeros(shape, dtype=np.int32)

    _fill_kernel(
        n, p, r, d, w,
        order_desc, after_strict, at_or_after, rel_vals, rel_idx,
        window, wch, wsp, fill, fch, fwv, prefix, pst, psp,
    )

    arrays = (window, wch, wsp, fill, fch, fwv, prefix, pst, psp,
              r, after_strict, at_or_after)
    for arr in arrays:
        arr.flags.writeable = False

    return Tables(
        n=n,
        p=p,
        root=int(rel_idx[0]),
        releases=r,
        window=window,
        window_choice=wch,
        window_split=wsp,
        fill=fill,
        fill_choice=fch,
        fill_weave=fwv,
        prefix=prefix,
        prefix_state=pst,
        prefix_split=psp,
        after_strict=after_strict,
        at_or_after=at_or_after,
    )


_WIN, _FILL, _PRE = 0, 1, 2


def reconstruct(tables: Tables, instance: Instance) -> frozenset[int]:
    """Read an optimal job set back out of the tables.

    Cells with value zero expand to the empty set: weights are non-negative,
    so nothing of value is lost and zero-valued cells need no witness.
    """
    if instance.n != tables.n or instance.p != tables.p:
        raise ValueError("tables and instance do not belong together")
    n, p, r = tables.n, tables.p, tables.releases
    chosen: set[int] = set()
    stack = [(_WIN, n, tables.root, n)]
    while stack:
        kind, k, i, ja = stack.pop()
        if kind == _WIN:
            if tables.window[k, i, ja] == 0:
                continue
            ch = tables.window_choice[k, i, ja]
            if ch == W_SKIP_START:
                stack.append((_WIN, k, int(tables.after_strict[i]), ja))
            elif ch == W_SPLIT:
                a = int(tables.window_split[k, i, ja])
                stack.append((_FILL, k, i, a))
                stack.append((_WIN, k, int(tables.at_or_after[i, a]), ja))
            else:
                raise RuntimeError("window cell holds weight but no expansion")
        elif kind == _FILL:
            if tables.fill[k, i, ja] == 0:
                continue
            ch = tables.fill_choice[k, i, ja]
            if ch == B_WITHOUT:
                stack.append((_FILL, k - 1, i, ja))
            elif ch == B_LAST_SLOT:
                chosen.add(k)
                stack.append((_FILL, k - 1, i, ja - 1))
            elif ch == B_WEAVE:
                chosen.add(k)
                l = int(tables.fill_weave[k, i, ja])
                end = int(r[i]) + ja * p
                b = min(n, (end - int(r[l]) + p - 1) // p - 1)
                stack.append((_PRE, k - 1, i, l))
                stack.append((_FILL, k - 1, l, b))
            else:
                raise RuntimeError("fill cell holds weight but no expansion")
        else:
            if tables.prefix_state[k, i, ja] != P_VALUE:
                raise RuntimeError(
                    "reconstruction touched an undefined or unattained prefix cell"
                )
            if tables.prefix[k, i, ja] == 0:
                continue
            a = int(tables.prefix_split[k, i, ja])
            stack.append((_FILL, k, i, a))
            stack.append((_WIN, k, int(tables.at_or_after[i, a]), ja))
    return frozenset(chosen)


def solve(instance: Instance, tables: Tables | None = None) -> Solution:
    """Optimal weight plus a witness schedule for it."""
    if not instance.jobs or instance.jobs[-1].id is not None:
        instance = normalize(
            [(j.id, j.r, j.d, j.w) for j in instance.jobs], instance.p
        )
    if tables is None:
        tables = compute_tables(instance)
    chosen = reconstruct(tables, instance)
    if instance.n in chosen:
        raise RuntimeError("the horizon-closing job leaked into a solution")
    schedule, completed = edf_schedule(instance, chosen)
    weight = tables.best_weight
    if completed != chosen:
        raise RuntimeError(
            "reconstructed job set is not schedulable; the tables are inconsistent"
        )
    realized = sum(instance.job(idx).w for idx in completed)
    if realized != weight:
        raise RuntimeError(
            f"reconstructed weight {realized} differs from table optimum {weight}"
        )
    return Solution(
        completed=frozenset(chosen),
        weight=weight,
        schedule=schedule,
        method="dp",
    )


_W_NAMES = {W_EMPTY: "empty", W_SKIP_START: "later_start", W_SPLIT: "block_split"}
_B_NAMES = {
    B_EMPTY: "empty",
    B_WITHOUT: "without_level",
    B_LAST_SLOT: "level_at_end",
    B_WEAVE: "level_woven",
}


def tables_to_dict(tables: Tables) -> dict:
    """Debug dump of every defined cell; sizes grow with n cubed."""
    n = tables.n
    r = tables.releases
    out: dict = {"n": n, "p": tables.p, "root": tables.root}
    window = []
    prefix = []
    for k in range(n + 1):
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                if r[j] < r[i]:
                    continue
                cell = {
                    "k": k,
                    "i": i,
                    "j": j,
                    "value": int(tables.window[k, i, j]),
                    "choice": _W_NAMES[int(tables.window_choice[k, i, j])],
                }
                if cell["choice"] == "block_split":
                    cell["a"] = int(tables.window_split[k, i, j])
                window.append(cell)
                state = int(tables.prefix_state[k, i, j])
                if state == P_UNDEFINED:
                    continue
                pcell = {"k": k, "i": i, "j": j}
                if state == P_UNATTAINED:
                    pcell["value"] = None
                    pcell["choice"] = "unattained"
                else:
                    pcell["value"] = int(tables.prefix[k, i, j])
                    pcell["choice"] = "prefix_split"
                    pcell["a"] = int(tables.prefix_split[k, i, j])
                prefix.append(pcell)
    fill = []
    for k in range(n + 1):
        for i in range(1, n + 1):
            for a in range(n + 1):
                cell = {
                    "k": k,
                    "i": i,
                    "a": a,
                    "value": int(tables.fill[k, i, a]),
                    "choice": _B_NAMES[int(tables.fill_choice[k, i, a])],
                }
                if cell["choice"] == "level_woven":
                    cell["l"] = int(tables.fill_weave[k, i, a])
                fill.append(cell)
    out["window"] = window
    out["fill"] = fill
    out["prefix"] = prefix
    return out
