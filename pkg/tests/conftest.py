"""Shared oracles for the test suite.

The brute-force helpers here re-derive quantities straight from their
definitions, independently of the library code paths they are used to
check.
"""

from fractions import Fraction

import pytest

from cprank import Model, enumerate_shapes, leaf, node

ALL_MODELS = (
    Model.UNIFORM_UNORDERED,
    Model.UNIFORM_LABELED,
    Model.YULE_HARDING,
    Model.UNIFORM_ORDERED,
)

SHAPE_MODELS = (Model.UNIFORM_UNORDERED, Model.UNIFORM_LABELED, Model.YULE_HARDING)


def brute_rank(t) -> int:
    """Rank straight from the defining recursion (no memoization)."""
    if t.is_leaf:
        return 1
    a = brute_rank(t.first)
    b = brute_rank(t.second)
    big, small = max(a, b), min(a, b)
    return big * (big - 1) // 2 + 1 + small


def shapes_by_height(h_max: int):
    """All shapes of height <= h_max, built by height (not leaf count)."""
    by_height = [[leaf()]]
    for h in range(1, h_max + 1):
        lower = [t for level in by_height for t in level]
        exact = by_height[h - 1]
        new = set()
        for a in exact:
            for b in lower:
                new.add(node(a, b))
        by_height.append(sorted(new, key=brute_rank))
    return by_height


def total_variation(hist: dict, exact: dict[int, Fraction], samples: int) -> float:
    keys = set(hist) | set(exact)
    return float(
        sum(abs(Fraction(hist.get(k, 0), samples) - exact.get(k, Fraction(0))) for k in keys) / 2
    )


@pytest.fixture(scope="session")
def shapes8():
    return {n: enumerate_shapes(n) for n in range(1, 9)}
