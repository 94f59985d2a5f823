"""Compiled single-run engine for the OneJumpZeroJump loop.

Consumes the same PCG64 stream as the pure-Python loop in ``emoa``, draw for
draw: n doubles per random bitstring, one integer draw for parent selection,
n doubles per mutation, one integer draw per subset-sample step, and one
integer draw on contribution ties only when there is more than one minimizer.
Any change here must preserve trace equality with the reference engine
(covered by tests/test_fast_engine.py).

Solutions are packed into single 64-bit words, so this engine handles
n <= 63; the reference engine has no size limit.
"""

from __future__ import annotations

import numpy as np
from numba import njit

MAX_FAST_N = 63


@njit(cache=True, nogil=True)
def _popcount(v):
    c = 0
    while v:
        v &= v - np.uint64(1)
        c += 1
    return c


@njit(cache=True, nogil=True)
def _front_slot(a, b, n, k, fsize):
    """Index of (a, b) in the ascending-f1 Pareto front, or -1."""
    if a + b != n + 2 * k:
        return -1
    if a == k:
        return 0
    if a == n + k:
        return fsize - 1
    if 2 * k <= a <= n:
        return a - 2 * k + 1
    return -1


@njit(cache=True, nogil=True)
def run_ojzj(
    rng,
    n,
    k,
    mu,
    budget,
    stop_on_coverage,
    stochastic,
    subset_fraction,
    r1,
    r2,
    bits,
    f1,
    f2,
    cov_counts,
    trace_mask,
    trace_valley,
    enable_trace,
):
    """Run one seeded SMS-EMOA trial; returns (generations, covered_count).

    ``bits`` (uint64[mu]) and ``f1``/``f2`` (int64[mu+1], last slot is
    offspring scratch) are filled in place and hold the final population on
    return. ``cov_counts`` must be a zeroed int64 array of front size.
    """
    inv_n = 1.0 / n
    fsize = n - 2 * k + 3
    covered = 0
    valley_count = 0

    for i in range(mu):
        v = np.uint64(0)
        for b in range(n):
            if rng.random() < 0.5:
                v |= np.uint64(1) << np.uint64(b)
        bits[i] = v
        ones = _popcount(v)
        zeros = n - ones
        f1[i] = k + ones if (ones <= n - k or ones == n) else n - ones
        f2[i] = k + zeros if (zeros <= n - k or zeros == n) else n - zeros
        slot = _front_slot(f1[i], f2[i], n, k, fsize)
        if slot >= 0:
            if cov_counts[slot] == 0:
                covered += 1
            cov_counts[slot] += 1
        if (1 <= ones <= k - 1) or (n - k + 1 <= ones <= n - 1):
            valley_count += 1

    covered_mask = np.uint64(0)
    if enable_trace:
        for slot in range(fsize):
            if cov_counts[slot] > 0:
                covered_mask |= np.uint64(1) << np.uint64(slot)
        trace_mask[0] = covered_mask
        trace_valley[0] = 1 if valley_count > 0 else 0

    s = mu + 1
    cand = np.empty(s, dtype=np.int64)
    rest = np.empty(s, dtype=np.int64)
    front = np.empty(s, dtype=np.int64)
    delta = np.empty(s, dtype=np.int64)
    ties = np.empty(s, dtype=np.int64)

    gen = 0
    while gen < budget and (not stop_on_coverage or covered < fsize):
        gen += 1

        parent = rng.integers(0, mu)
        child = bits[parent]
        for b in range(n):
            if rng.random() < inv_n:
                child ^= np.uint64(1) << np.uint64(b)
        ones = _popcount(child)
        zeros = n - ones
        f1[mu] = k + ones if (ones <= n - k or ones == n) else n - ones
        f2[mu] = k + zeros if (zeros <= n - k or zeros == n) else n - zeros

        # competing candidates, in draw order (whole multiset or a sample)
        if stochastic:
            nsub = int(s * subset_fraction)
            if nsub < 1:
                nsub = 1
            if nsub > s:
                nsub = s
            for i in range(s):
                cand[i] = i
            for i in range(nsub):
                j = i + rng.integers(0, s - i)
                t = cand[i]
                cand[i] = cand[j]
                cand[j] = t
            c = nsub
        else:
            for i in range(s):
                cand[i] = i
            c = s

        # stable insertion sort by (f1 desc, f2 desc) over candidate order
        for i in range(1, c):
            key = cand[i]
            kf1 = f1[key]
            kf2 = f2[key]
            j = i - 1
            while j >= 0 and (
                f1[cand[j]] < kf1 or (f1[cand[j]] == kf1 and f2[cand[j]] < kf2)
            ):
                cand[j + 1] = cand[j]
                j -= 1
            cand[j + 1] = key

        # peel sorted candidates front by front until the last one remains
        rem = c
        lf = 0
        while rem > 0:
            lf = 0
            nrest = 0
            maxf2 = np.int64(-(2**62))
            pf1 = np.int64(0)
            pf2 = np.int64(0)
            for ii in range(rem):
                i = cand[ii]
                if f2[i] > maxf2:
                    front[lf] = i
                    lf += 1
                    maxf2 = f2[i]
                    pf1 = f1[i]
                    pf2 = f2[i]
                elif f1[i] == pf1 and f2[i] == pf2:
                    front[lf] = i  # duplicate of the previous front member
                    lf += 1
                else:
                    rest[nrest] = i
                    nrest += 1
            for ii in range(nrest):
                cand[ii] = rest[ii]
            rem = nrest

        # exclusive rectangle per distinct member; duplicates contribute 0
        for i in range(lf):
            idx = front[i]
            dup = False
            if i > 0 and f1[front[i - 1]] == f1[idx] and f2[front[i - 1]] == f2[idx]:
                dup = True
            if i < lf - 1 and f1[front[i + 1]] == f1[idx] and f2[front[i + 1]] == f2[idx]:
                dup = True
            if dup:
                delta[i] = 0
            else:
                nxt_f1 = f1[front[i + 1]] if i < lf - 1 else r1
                prev_f2 = f2[front[i - 1]] if i > 0 else r2
                delta[i] = (f1[idx] - nxt_f1) * (f2[idx] - prev_f2)

        best = delta[0]
        for i in range(1, lf):
            if delta[i] < best:
                best = delta[i]
        t = 0
        for i in range(lf):
            if delta[i] == best:
                ties[t] = front[i]
                t += 1
        victim = ties[0] if t == 1 else ties[rng.integers(0, t)]

        # bookkeeping: offspring enters, victim leaves
        slot = _front_slot(f1[mu], f2[mu], n, k, fsize)
        if slot >= 0:
            if cov_counts[slot] == 0:
                covered += 1
                if enable_trace:
                    covered_mask |= np.uint64(1) << np.uint64(slot)
            cov_counts[slot] += 1
        if (1 <= ones <= k - 1) or (n - k + 1 <= ones <= n - 1):
            valley_count += 1

        vones = _popcount(bits[victim]) if victim < mu else ones
        slot = _front_slot(f1[victim], f2[victim], n, k, fsize)
        if slot >= 0:
            cov_counts[slot] -= 1
            if cov_counts[slot] == 0:
                covered -= 1
                if enable_trace:
                    covered_mask &= ~(np.uint64(1) << np.uint64(slot))
        if (1 <= vones <= k - 1) or (n - k + 1 <= vones <= n - 1):
            valley_count -= 1

        if victim < mu:
            bits[victim] = child
            f1[victim] = f1[mu]
            f2[victim] = f2[mu]

        if enable_trace:
            trace_mask[gen] = covered_mask
            trace_valley[gen] = 1 if valley_count > 0 else 0

    return gen, covered
