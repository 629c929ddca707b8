"""Pure-numpy sampling kernels (fallback when numba is unavailable or
disabled via ``CPRANK_BACKEND=numpy``).

Same stream protocol and outputs as :mod:`cprank.kernels_numba`: node
streams are derived hierarchically from their parents, so the draws are
independent of traversal order and the level-lockstep vectorization here
reproduces the numba DFS bit for bit.

The uniform-unordered model resamples equal-split subtrees until a
data-dependent acceptance, which defeats lockstep vectorization; that
model falls back to the scalar reference implementation.
"""

from __future__ import annotations

import numpy as np

from . import _scalar
from .ranking import _rank_of

U64 = np.uint64
_MASK = (1 << 64) - 1
_PHI = U64(0x9E3779B97F4A7C15)
_PHI2 = U64(0xC2B2AE3D27D4EB4F)
_PHI2_X2 = U64((2 * 0xC2B2AE3D27D4EB4F) & _MASK)
_M1 = U64(0xBF58476D1CE4E5B9)
_M2 = U64(0x94D049BB133111EB)

_BLOCK = 1 << 16


def _phi2_times(k: int) -> np.uint64:
    # scalar uint64 products overflow-warn in numpy; fold them in int space
    return U64((0xC2B2AE3D27D4EB4F * k) & _MASK)


def _mix64v(z: np.ndarray) -> np.ndarray:
    z = (z ^ (z >> U64(30))) * _M1
    z = (z ^ (z >> U64(27))) * _M2
    return z ^ (z >> U64(31))


def _uniform_below_vec(bases: np.ndarray, m: np.ndarray) -> np.ndarray:
    """Elementwise exact uniform in [0, m); same draw rule as the scalar."""
    thresh = (U64(0) - m) % m
    vals = np.zeros(bases.shape, U64)
    t = np.zeros(bases.shape, U64)
    pending = np.arange(bases.size)
    while pending.size:
        u = _mix64v(bases[pending] + _PHI * (t[pending] + U64(1)))
        t[pending] += U64(1)
        ok = u >= thresh[pending]
        hit = pending[ok]
        vals[hit] = u[ok] % m[hit]
        pending = pending[~ok]
    return vals


def _sample_bases(seed, start, b0, b1):
    g = np.arange(b0, b1, dtype=np.uint64) + U64(start)
    bg = _mix64v(U64(seed) + _PHI * (g + U64(1)))
    return bg


def sample_rank_height(model, n, count, seed, start, cat_cum, cat_off, ott_cum, ott_off):
    """Sample (rank, height) pairs; model 0 = yule, 1 = catalan, 2 = otter."""
    if model == 2:
        ranks = np.empty(count, np.int64)
        heights = np.empty(count, np.int64)
        for i in range(count):
            t = _scalar.sample_shape_at("uniform-unordered", n, int(seed), int(start) + i)
            ranks[i] = _rank_of(t)
            heights[i] = t.height
        return ranks, heights

    ranks = np.empty(count, np.int64)
    heights = np.empty(count, np.int64)
    for b0 in range(0, count, _BLOCK):
        b1 = min(b0 + _BLOCK, count)
        bg = _sample_bases(seed, start, b0, b1)
        cur_bn = _mix64v(bg + _PHI2)  # root stream, child q = 1
        cur_s = np.full(b1 - b0, n, np.int64)
        levels = []
        while True:
            internal = cur_s >= 2
            if not internal.any():
                break
            bni = cur_bn[internal]
            si = cur_s[internal]
            if model == 0:
                v = _uniform_below_vec(bni, (si - 1).astype(U64))
                a = v.astype(np.int64) + 1
            else:
                off = cat_off[si]
                v = _uniform_below_vec(bni, cat_cum[off + (si - 2)])
                lo = np.zeros(si.size, np.int64)
                hi = si - 1
                while np.any(lo < hi):
                    mid = (lo + hi) >> 1
                    gt = cat_cum[off + mid] > v
                    hi = np.where(gt, mid, hi)
                    lo = np.where(gt, lo, mid + 1)
                a = lo + 1
            levels.append((internal, a))
            child_bn = np.empty(2 * si.size, U64)
            child_bn[0::2] = _mix64v(bni + _PHI2)
            child_bn[1::2] = _mix64v(bni + _PHI2_X2)
            child_s = np.empty(2 * si.size, np.int64)
            child_s[0::2] = a
            child_s[1::2] = si - a
            cur_bn, cur_s = child_bn, child_s
        r = np.ones(cur_s.size, np.int64)
        h = np.zeros(cur_s.size, np.int64)
        for internal, _a in reversed(levels):
            r1, r2 = r[0::2], r[1::2]
            h1, h2 = h[0::2], h[1::2]
            big = np.maximum(r1, r2)
            small = np.minimum(r1, r2)
            rn = np.ones(internal.size, np.int64)
            hn = np.zeros(internal.size, np.int64)
            rn[internal] = big * (big - 1) // 2 + 1 + small
            hn[internal] = 1 + np.maximum(h1, h2)
            r, h = rn, hn
        ranks[b0:b1] = r
        heights[b0:b1] = h
    return ranks, heights


def yule_heights(n, count, seed, start):
    out = np.empty(count, np.int64)
    block = int(np.clip((1 << 23) // max(n, 1), 1, _BLOCK))
    for b0 in range(0, count, block):
        b1 = min(b0 + block, count)
        bg = _sample_bases(seed, start, b0, b1)
        cur_bn = _mix64v(bg + _PHI2)
        cur_s = np.full(b1 - b0, n, np.int64)
        cur_smp = np.arange(b1 - b0)
        hmax = np.zeros(b1 - b0, np.int64)
        level = 0
        while cur_s.size:
            hmax[cur_smp] = level  # deepest level reached so far
            internal = cur_s >= 2
            bni = cur_bn[internal]
            si = cur_s[internal]
            smpi = cur_smp[internal]
            v = _uniform_below_vec(bni, (si - 1).astype(U64))
            a = v.astype(np.int64) + 1
            child_bn = np.empty(2 * si.size, U64)
            child_bn[0::2] = _mix64v(bni + _PHI2)
            child_bn[1::2] = _mix64v(bni + _PHI2_X2)
            child_s = np.empty(2 * si.size, np.int64)
            child_s[0::2] = a
            child_s[1::2] = si - a
            child_smp = np.repeat(smpi, 2)
            cur_bn, cur_s, cur_smp = child_bn, child_s, child_smp
            level += 1
        out[b0:b1] = hmax
    return out


def remy_heights(n, count, seed, start):
    out = np.empty(count, np.int64)
    if n == 1:
        out[:] = 0
        return out
    total = 2 * n - 1
    block = int(np.clip((1 << 20) // total, 1, _BLOCK))
    for b0 in range(0, count, block):
        b1 = min(b0 + block, count)
        B = b1 - b0
        bg = _sample_bases(seed, start, b0, b1)
        rows = np.arange(B)
        parent = np.empty((B, total), np.int64)
        left = np.empty((B, total), np.int64)
        right = np.empty((B, total), np.int64)
        parent[:, 0] = -1
        left[:, 0] = -1
        right[:, 0] = -1
        root = np.zeros(B, np.int64)
        for k in range(1, n):
            bk = _mix64v(bg + _phi2_times(k))
            m = np.full(B, 2 * k - 1, U64)
            v = _uniform_below_vec(bk, m).astype(np.int64)
            w = 2 * k - 1
            unew = 2 * k
            p = parent[rows, v]
            has = p >= 0
            rp, pp, vv = rows[has], p[has], v[has]
            isl = left[rp, pp] == vv
            left[rp[isl], pp[isl]] = w
            right[rp[~isl], pp[~isl]] = w
            root[~has] = w
            parent[:, w] = p
            left[:, w] = v
            right[:, w] = unew
            parent[rows, v] = w
            parent[:, unew] = w
            left[:, unew] = -1
            right[:, unew] = -1
        hmax = np.zeros(B, np.int64)
        f_rows = rows
        f_nodes = root
        level = 0
        while f_rows.size:
            hmax[f_rows] = level
            l = left[f_rows, f_nodes]
            internal = l >= 0
            rp = f_rows[internal]
            f_nodes = np.concatenate([l[internal], right[rp, f_nodes[internal]]])
            f_rows = np.concatenate([rp, rp])
            level += 1
        out[b0:b1] = hmax
    return out
