"""Reference tree samplers in pure Python.

These implement the per-model recursive constructions directly on the
stream protocol of :mod:`cprank.rng` and work for any n (weights are
exact big integers).  The accelerated kernels reproduce these streams
draw for draw; tests compare them elementwise.

Split rules at a node of ``s`` leaves:

* yule: left leaf count uniform on {1..s-1};
* catalan (uniform-labeled / uniform-ordered shape law): left leaf count
  i with weight K_{i-1} K_{s-1-i} (ordered-tree counts), canonicalized
  afterwards;
* otter (uniform-unordered): unordered size pair {j, s-j} weighted by
  U_j U_{s-j} for j < s/2 and U_{s/2}(U_{s/2}+1)/2 at the even split;
  subtrees of an equal split are resampled until they are equal shapes
  or a fair coin accepts an unequal pair, which makes every unordered
  multiset of two subtrees equally likely.

The retry at an equal split is local to that node: its subtree streams
are indexed by the attempt number, so the rest of the tree is untouched.
"""

from __future__ import annotations

from bisect import bisect_right

from .trees import TreeShape, leaf, node
from .enumeration import catalan_tree_count, wedderburn
from .rng import child_stream, draw, sample_base, uniform_below

__all__ = ["sample_shape_at", "catalan_split_row", "otter_split_row"]

_MODEL_YULE = 0
_MODEL_CATALAN = 1
_MODEL_OTTER = 2

_CAT_ROWS: dict[int, list[int]] = {}
_OTT_ROWS: dict[int, list[int]] = {}


def catalan_split_row(s: int) -> list[int]:
    """Cumulative weights of the left leaf count (1..s-1) for ordered trees."""
    row = _CAT_ROWS.get(s)
    if row is None:
        row, acc = [], 0
        for i in range(1, s):
            acc += catalan_tree_count(i) * catalan_tree_count(s - i)
            row.append(acc)
        _CAT_ROWS[s] = row
    return row


def otter_split_row(s: int) -> list[int]:
    """Cumulative weights of the unordered size pair {j, s-j}, j = 1..s//2."""
    row = _OTT_ROWS.get(s)
    if row is None:
        row, acc = [], 0
        for j in range(1, s // 2 + 1):
            if 2 * j == s:
                u = wedderburn(j)
                acc += u * (u + 1) // 2
            else:
                acc += wedderburn(j) * wedderburn(s - j)
            row.append(acc)
        _OTT_ROWS[s] = row
    return row


def _draw_split(model: int, bn: int, s: int) -> tuple[int, bool, int]:
    """Draw the left child size; returns (size, is_equal_split, draws used)."""
    if model == _MODEL_YULE:
        v, t = uniform_below(bn, s - 1, 0)
        return v + 1, False, t
    if model == _MODEL_CATALAN:
        row = catalan_split_row(s)
        v, t = uniform_below(bn, row[-1], 0)
        return bisect_right(row, v) + 1, False, t
    row = otter_split_row(s)
    v, t = uniform_below(bn, row[-1], 0)
    j = bisect_right(row, v) + 1
    return j, (s % 2 == 0 and j == s // 2), t


_MODEL_IDS = {
    "yule": _MODEL_YULE,
    "uniform-labeled": _MODEL_CATALAN,
    "uniform-ordered": _MODEL_CATALAN,
    "uniform-unordered": _MODEL_OTTER,
}


def _sample_subtree(model: int, base: int, size: int) -> TreeShape:
    # explicit stack; deep yule trees would overflow Python recursion.
    # frame: [bn, s, state, jleft, eq, tsplit, attempt, first_child]
    if size == 1:
        return leaf()
    ret: TreeShape | None = None
    stack: list[list] = [[base, size, 0, 0, False, 0, 0, None]]
    while stack:
        fr = stack[-1]
        state = fr[2]
        if state == 0:
            if fr[1] == 1:
                ret = leaf()
                stack.pop()
                continue
            jleft, eq, tsplit = _draw_split(model, fr[0], fr[1])
            fr[3], fr[4], fr[5], fr[6] = jleft, eq, tsplit, 0
            fr[2] = 1
            stack.append([child_stream(fr[0], 1), jleft, 0, 0, False, 0, 0, None])
        elif state == 1:
            fr[7] = ret
            fr[2] = 2
            second = fr[3] if fr[4] else fr[1] - fr[3]
            stack.append([child_stream(fr[0], 2 * fr[6] + 2), second, 0, 0, False, 0, 0, None])
        else:
            t1, t2 = fr[7], ret
            if fr[4] and t1 is not t2 and draw(fr[0], fr[5] + fr[6]) & 1:
                fr[6] += 1
                fr[2] = 1
                stack.append([child_stream(fr[0], 2 * fr[6] + 1), fr[3], 0, 0, False, 0, 0, None])
                continue
            ret = node(t1, t2)
            stack.pop()
    assert ret is not None
    return ret


def sample_shape_at(model_name: str, n: int, seed: int, g: int) -> TreeShape:
    """The g-th canonical shape of the (seed, model, n) sample stream."""
    if n < 1:
        raise ValueError("sample size must be >= 1")
    model = _MODEL_IDS[model_name]
    root = child_stream(sample_base(seed, g), 1)
    return _sample_subtree(model, root, n)
