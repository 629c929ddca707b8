"""The Colijn-Plazzotta bijection and rank-height machinery.

Every shape t gets a distinct positive integer: the leaf has rank 1, and
an internal node whose children have ranks L >= R has rank

    f = L(L-1)/2 + 1 + R.

This is a bijection onto the positive integers.  Ranks grow doubly
exponentially with height (the n-leaf caterpillar already has a rank
with ~0.05 * 2^n decimal digits), so everything here is arbitrary
precision.

Heights organize ranks into contiguous blocks: with c_0 = 1 and
c_{h+1} = C(c_h, 2) + 2 (the caterpillar ranks), every shape of height h
has rank in [c_h, c_{h+1} - 1].  The pseudocaterpillar ranks d_h follow
the same recursion from d_2 = 4.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .trees import TreeShape, leaf, node, postorder_unique

__all__ = [
    "rank",
    "unrank",
    "ExtremalSeqs",
    "extremal_seqs",
    "height_rank_bounds",
    "count_by_height",
    "double_log_rank",
]

_LN2 = math.log(2.0)

# ranks are materialized exactly up to this height; above it
# double_log_rank switches to a log-domain recursion (a height-25 rank
# already spans ~5 million bits)
_EXACT_HEIGHT_MAX = 24
_EXACT_BITS_MAX = 512


def _rank_of(t: TreeShape) -> int:
    """Rank with per-node memoization on the shared representation."""
    r = t._rank
    if r is not None:
        return r
    for u in postorder_unique(t):
        if u._rank is None:
            if u.first is None:
                u._rank = 1
            else:
                L = u.first._rank
                R = u.second._rank
                u._rank = L * (L - 1) // 2 + 1 + R
    return t._rank


def rank(t: TreeShape) -> int:
    """The Colijn-Plazzotta rank of a shape (>= 1; 1 only for the leaf)."""
    return _rank_of(t)


def _left_rank_for(k: int) -> int:
    # unique L >= 1 with T(L) + 2 <= k <= T(L) + 1 + L, T(L) = L(L-1)/2;
    # integer sqrt plus a +-1 adjustment, exact for any precision
    L = (1 + math.isqrt(8 * (k - 2) + 1)) // 2
    while L * (L - 1) // 2 + 2 > k:
        L -= 1
    while L * (L - 1) // 2 + 1 + L < k:
        L += 1
    return L


def unrank(k: int) -> TreeShape:
    """The unique shape with rank ``k`` (k >= 1)."""
    if k < 1:
        raise ValueError("rank values start at 1")
    memo: dict[int, TreeShape] = {}

    def build(m: int) -> TreeShape:
        if m == 1:
            return leaf()
        t = memo.get(m)
        if t is None:
            L = _left_rank_for(m)
            R = m - L * (L - 1) // 2 - 1
            t = node(build(L), build(R))
            memo[m] = t
        return t

    return build(k)


@dataclass(frozen=True)
class ExtremalSeqs:
    """Caterpillar ranks ``c`` (indexed by height from 0) and
    pseudocaterpillar ranks ``d`` (indexed by height from 2)."""

    c: tuple[int, ...]
    d: tuple[int, ...]

    def caterpillar_rank(self, h: int) -> int:
        return self.c[h]

    def pseudocaterpillar_rank(self, h: int) -> int:
        if h < 2:
            raise ValueError("pseudocaterpillar ranks start at height 2")
        return self.d[h - 2]


_C_CACHE: list[int] = [1]
_D_CACHE: list[int] = [4]


def _c_upto(h: int) -> list[int]:
    while len(_C_CACHE) <= h:
        v = _C_CACHE[-1]
        _C_CACHE.append(v * (v - 1) // 2 + 2)
    return _C_CACHE


def _d_upto(h: int) -> list[int]:
    while len(_D_CACHE) <= h - 2:
        v = _D_CACHE[-1]
        _D_CACHE.append(v * (v - 1) // 2 + 2)
    return _D_CACHE


def extremal_seqs(h_max: int) -> ExtremalSeqs:
    """The sequences c_0..c_{h_max} and d_2..d_{h_max}."""
    if h_max < 0:
        raise ValueError("h_max must be >= 0")
    c = tuple(_c_upto(h_max)[: h_max + 1])
    d = tuple(_d_upto(h_max)[: max(0, h_max - 1)])
    return ExtremalSeqs(c, d)


def height_rank_bounds(h: int) -> tuple[int, int]:
    """Inclusive rank range of the shapes of height exactly ``h``."""
    if h < 0:
        raise ValueError("height must be >= 0")
    c = _c_upto(h + 1)
    return c[h], c[h + 1] - 1


def count_by_height(h: int, mode: str = "exactly") -> int:
    """Number of shapes with height exactly ``h`` or at most ``h``.

    ``mode`` is "exactly" (c_{h+1} - c_h) or "at_most" (c_{h+1} - 1).
    """
    if h < 0:
        raise ValueError("height must be >= 0")
    c = _c_upto(h + 1)
    if mode == "at_most":
        return c[h + 1] - 1
    if mode == "exactly":
        return c[h + 1] - c[h]
    raise ValueError(f"mode must be 'exactly' or 'at_most', got {mode!r}")


def ln_big(k: int) -> float:
    """Natural log of a positive integer of any size.

    Uses the bit length plus the leading 64 bits, never a lossy full
    conversion to float; relative error is at the float64 rounding level.
    """
    if k <= 0:
        raise ValueError("ln_big requires a positive integer")
    nb = k.bit_length()
    if nb <= 64:
        return math.log(k)
    top = k >> (nb - 64)
    return math.log(top) + (nb - 64) * _LN2


def double_log_rank(t: TreeShape) -> float:
    """log2(ln f(t)) for any non-leaf shape.

    For heights up to 24 the exact rank is materialized and its log taken
    from the bit length plus leading bits.  Taller shapes (whose ranks
    cannot be materialized) are handled by carrying ln f through the rank
    recursion: children are exact integers while they stay below 512 bits
    and float logs after that, with the cross terms folded in via log1p.
    The log-domain path keeps the relative error of ln f below ~1e-12.
    """
    if t.first is None:
        raise ValueError("double_log_rank is undefined for the single leaf")
    if t.height <= _EXACT_HEIGHT_MAX:
        return math.log2(ln_big(_rank_of(t)))

    # value per node: (exact int, None) or (None, ln of the rank)
    vals: dict[int, tuple[int | None, float]] = {}
    for u in postorder_unique(t):
        if u.first is None:
            vals[id(u)] = (1, 0.0)
            continue
        le, ll = vals[id(u.first)]
        re_, rl = vals[id(u.second)]
        if le is not None and re_ is not None:
            f = le * (le - 1) // 2 + 1 + re_
            if f.bit_length() <= _EXACT_BITS_MAX:
                vals[id(u)] = (f, 0.0)
            else:
                vals[id(u)] = (None, ln_big(f))
            continue
        ln_l = ll if le is None else ln_big(le)
        ln_r = rl if re_ is None else ln_big(re_)
        # f = (L^2/2) (1 - 1/L + 2(1+R)/L^2); the correction underflows
        # harmlessly once L is large
        delta = 2.0 * math.exp(-2.0 * ln_l) + 2.0 * math.exp(ln_r - 2.0 * ln_l)
        delta -= math.exp(-ln_l)
        vals[id(u)] = (None, 2.0 * ln_l - _LN2 + math.log1p(delta))
    ve, vl = vals[id(t)]
    return math.log2(ln_big(ve) if ve is not None else vl)
