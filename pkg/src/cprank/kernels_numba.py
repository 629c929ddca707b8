"""numba-compiled sampling kernels.

Same stream protocol as :mod:`cprank._scalar`, so outputs are bitwise
identical to the reference and to :mod:`cprank.kernels_numpy`.  Ranks
are combined in int64, which is exact for n <= 8 (the 8-leaf rank bound
is c_8 - 1 < 2^42); :mod:`cprank.sampling` enforces that bound.
"""

from __future__ import annotations

import numpy as np
from numba import njit

U64 = np.uint64
_PHI = U64(0x9E3779B97F4A7C15)
_PHI2 = U64(0xC2B2AE3D27D4EB4F)
_M1 = U64(0xBF58476D1CE4E5B9)
_M2 = U64(0x94D049BB133111EB)


@njit(cache=True, inline="always")
def _mix64(z):
    z = (z ^ (z >> U64(30))) * _M1
    z = (z ^ (z >> U64(27))) * _M2
    return z ^ (z >> U64(31))


@njit(cache=True, inline="always")
def _child(base, q):
    return _mix64(base + _PHI2 * U64(q))


@njit(cache=True, inline="always")
def _draw(base, t):
    return _mix64(base + _PHI * U64(t + 1))


@njit(cache=True, inline="always")
def _uniform_below(base, m, t):
    # threshold rejection: accept u >= 2^64 mod m, then u mod m is unbiased
    thresh = (U64(0) - m) % m
    while True:
        u = _draw(base, t)
        t += 1
        if u >= thresh:
            return u % m, t


@njit(cache=True)
def sample_rank_height(model, n, count, seed, start, cat_cum, cat_off, ott_cum, ott_off):
    """Sample (rank, height) pairs; model 0 = yule, 1 = catalan, 2 = otter."""
    ranks = np.empty(count, np.int64)
    heights = np.empty(count, np.int64)
    depth = n + 2
    f_bn = np.empty(depth, np.uint64)
    f_s = np.empty(depth, np.int64)
    f_state = np.empty(depth, np.int64)
    f_j = np.empty(depth, np.int64)
    f_eq = np.empty(depth, np.int64)
    f_ts = np.empty(depth, np.int64)
    f_a = np.empty(depth, np.int64)
    f_r1 = np.empty(depth, np.int64)
    f_h1 = np.empty(depth, np.int64)

    for idx in range(count):
        bg = _mix64(U64(seed) + _PHI * U64(start + idx + 1))
        f_bn[0] = _child(bg, 1)
        f_s[0] = n
        f_state[0] = 0
        sp = 1
        ret_r = np.int64(1)
        ret_h = np.int64(0)
        while sp > 0:
            top = sp - 1
            st = f_state[top]
            if st == 0:
                s = f_s[top]
                if s == 1:
                    ret_r = 1
                    ret_h = 0
                    sp -= 1
                    continue
                bn = f_bn[top]
                eq = 0
                if model == 0:
                    v, t = _uniform_below(bn, U64(s - 1), 0)
                    j = np.int64(v) + 1
                elif model == 1:
                    off = cat_off[s]
                    v, t = _uniform_below(bn, cat_cum[off + s - 2], 0)
                    lo = np.int64(0)
                    hi = np.int64(s - 1)
                    while lo < hi:
                        mid = (lo + hi) // 2
                        if cat_cum[off + mid] > v:
                            hi = mid
                        else:
                            lo = mid + 1
                    j = lo + 1
                else:
                    off = ott_off[s]
                    w = s // 2
                    v, t = _uniform_below(bn, ott_cum[off + w - 1], 0)
                    lo = np.int64(0)
                    hi = np.int64(w)
                    while lo < hi:
                        mid = (lo + hi) // 2
                        if ott_cum[off + mid] > v:
                            hi = mid
                        else:
                            lo = mid + 1
                    j = lo + 1
                    if s % 2 == 0 and j == w:
                        eq = 1
                f_j[top] = j
                f_eq[top] = eq
                f_ts[top] = t
                f_a[top] = 0
                f_state[top] = 1
                f_bn[sp] = _child(bn, 1)
                f_s[sp] = j
                f_state[sp] = 0
                sp += 1
            elif st == 1:
                f_r1[top] = ret_r
                f_h1[top] = ret_h
                f_state[top] = 2
                second = f_j[top] if f_eq[top] == 1 else f_s[top] - f_j[top]
                f_bn[sp] = _child(f_bn[top], 2 * f_a[top] + 2)
                f_s[sp] = second
                f_state[sp] = 0
                sp += 1
            else:
                r1 = f_r1[top]
                h1 = f_h1[top]
                r2 = ret_r
                h2 = ret_h
                if f_eq[top] == 1 and r1 != r2 and (_draw(f_bn[top], f_ts[top] + f_a[top]) & U64(1)) == U64(1):
                    f_a[top] += 1
                    f_state[top] = 1
                    f_bn[sp] = _child(f_bn[top], 2 * f_a[top] + 1)
                    f_s[sp] = f_j[top]
                    f_state[sp] = 0
                    sp += 1
                    continue
                L = r1 if r1 >= r2 else r2
                r = r1 + r2 - L
                ret_r = L * (L - 1) // 2 + 1 + r
                ret_h = 1 + (h1 if h1 >= h2 else h2)
                sp -= 1
        ranks[idx] = ret_r
        heights[idx] = ret_h
    return ranks, heights


@njit(cache=True)
def yule_heights(n, count, seed, start):
    """Heights of yule trees via size splitting; O(n) per sample, no ranks."""
    out = np.empty(count, np.int64)
    cap = 2 * n
    q_bn = np.empty(cap, np.uint64)
    q_s = np.empty(cap, np.int64)
    q_d = np.empty(cap, np.int64)
    for idx in range(count):
        bg = _mix64(U64(seed) + _PHI * U64(start + idx + 1))
        q_bn[0] = _child(bg, 1)
        q_s[0] = n
        q_d[0] = 0
        head, tail = 0, 1
        hmax = np.int64(0)
        while head < tail:
            s = q_s[head]
            dd = q_d[head]
            if s == 1:
                if dd > hmax:
                    hmax = dd
            else:
                bn = q_bn[head]
                v, _ = _uniform_below(bn, U64(s - 1), 0)
                a = np.int64(v) + 1
                q_bn[tail] = _child(bn, 1)
                q_s[tail] = a
                q_d[tail] = dd + 1
                tail += 1
                q_bn[tail] = _child(bn, 2)
                q_s[tail] = s - a
                q_d[tail] = dd + 1
                tail += 1
            head += 1
        out[idx] = hmax
    return out


@njit(cache=True)
def remy_heights(n, count, seed, start):
    """Heights of uniform leaf-labeled trees via uniform branch attachment.

    Step k picks one of the 2k-1 existing nodes, splices a new internal
    node above it and hangs a new leaf off it; after n-1 steps every
    labeled topology is equally likely, so the height law matches the
    uniform-labeled (and uniform-ordered) model.
    """
    out = np.empty(count, np.int64)
    if n == 1:
        out[:] = 0
        return out
    total = 2 * n - 1
    parent = np.empty(total, np.int64)
    left = np.empty(total, np.int64)
    right = np.empty(total, np.int64)
    depth = np.empty(total, np.int64)
    stack = np.empty(total, np.int64)
    for idx in range(count):
        bg = _mix64(U64(seed) + _PHI * U64(start + idx + 1))
        parent[0] = -1
        left[0] = -1
        right[0] = -1
        root = 0
        for k in range(1, n):
            bk = _child(bg, k)
            v64, _ = _uniform_below(bk, U64(2 * k - 1), 0)
            v = np.int64(v64)
            w = 2 * k - 1
            unew = 2 * k
            p = parent[v]
            if p >= 0:
                if left[p] == v:
                    left[p] = w
                else:
                    right[p] = w
            else:
                root = w
            parent[w] = p
            left[w] = v
            right[w] = unew
            parent[v] = w
            parent[unew] = w
            left[unew] = -1
            right[unew] = -1
        hmax = np.int64(0)
        sp = 0
        stack[sp] = root
        depth[root] = 0
        sp = 1
        while sp > 0:
            sp -= 1
            v = stack[sp]
            dv = depth[v]
            if left[v] < 0:
                if dv > hmax:
                    hmax = dv
            else:
                depth[left[v]] = dv + 1
                stack[sp] = left[v]
                sp += 1
                depth[right[v]] = dv + 1
                stack[sp] = right[v]
                sp += 1
        out[idx] = hmax
    return out
