import itertools

import pytest

from cprank import (
    EQ,
    GT,
    LT,
    caterpillar,
    compare_shapes,
    enumerate_shapes,
    leaf,
    metrics,
    node,
    pseudocaterpillar,
    rank,
)
from cprank.trees import is_canonical

from conftest import brute_rank


def test_leaf_basics():
    t = leaf()
    assert t.is_leaf and t.leaves == 1 and t.height == 0
    assert rank(t) == 1
    assert leaf() is leaf()


def test_node_canonicalizes_child_order():
    cherry = node(leaf(), leaf())
    assert rank(cherry) == 2
    assert node(leaf(), cherry) is node(cherry, leaf())
    assert rank(node(cherry, leaf())) == 3


def test_node_on_balanced_four_gives_pseudocaterpillar():
    balanced4 = node(node(leaf(), leaf()), node(leaf(), leaf()))
    assert rank(balanced4) == 4
    t = node(balanced4, leaf())
    assert t is pseudocaterpillar(5)
    assert rank(t) == 8


def test_compare_reflexive_and_leaf_least():
    cherry = node(leaf(), leaf())
    assert compare_shapes(cherry, cherry) == EQ
    assert compare_shapes(leaf(), leaf()) == EQ
    assert compare_shapes(cherry, leaf()) == GT
    assert compare_shapes(leaf(), cherry) == LT


def test_compare_matches_big_integer_ranks_up_to_8_leaves(shapes8):
    pool = [t for n in range(1, 9) for t in shapes8[n]]
    ranks = {id(t): brute_rank(t) for t in pool}
    for a, b in itertools.product(pool, repeat=2):
        want = (ranks[id(a)] > ranks[id(b)]) - (ranks[id(a)] < ranks[id(b)])
        assert compare_shapes(a, b) == want


def test_compare_is_a_total_order_up_to_7_leaves(shapes8):
    pool = [t for n in range(1, 8) for t in shapes8[n]]
    for a, b in itertools.combinations(pool, 2):
        assert compare_shapes(a, b) == -compare_shapes(b, a)
    for a, b, c in itertools.permutations(pool, 3):
        if compare_shapes(a, b) <= 0 and compare_shapes(b, c) <= 0:
            assert compare_shapes(a, c) <= 0


def test_metrics_caterpillar_8():
    m = metrics(caterpillar(8))
    assert m.leaves == 8 and m.height == 7
    assert m.symmetric_nodes == 1  # the bottom cherry
    assert m.subtree_leaf_counts == {2: 1, 3: 1, 4: 1, 5: 1, 6: 1, 7: 1, 8: 1}


def test_metrics_balanced_8():
    b = node(
        node(node(leaf(), leaf()), node(leaf(), leaf())),
        node(node(leaf(), leaf()), node(leaf(), leaf())),
    )
    m = metrics(b)
    assert m.symmetric_nodes == 7
    # 8!/2^7 = 315 labelings; 315/135135 = 1/429 under the uniform model
    import math
    from fractions import Fraction

    assert Fraction(math.factorial(8), 2 ** m.symmetric_nodes * 135135) == Fraction(1, 429)


def test_metrics_leaf():
    m = metrics(leaf())
    assert (m.leaves, m.height, m.symmetric_nodes) == (1, 0, 0)
    assert m.subtree_leaf_counts == {}


@pytest.mark.parametrize("n", range(1, 11))
def test_metrics_identities(n, shapes8):
    for t in enumerate_shapes(n):
        m = metrics(t)
        assert sum(m.subtree_leaf_counts.values()) == n - 1
        if n >= 2:
            assert m.subtree_leaf_counts[n] == 1  # the root
        assert 0 <= m.symmetric_nodes <= n - 1


@pytest.mark.parametrize("n", [1, 2, 3, 4, 7, 12, 40])
def test_caterpillar_shape(n):
    t = caterpillar(n)
    assert t.leaves == n and t.height == n - 1
    if n >= 3:
        assert metrics(t).symmetric_nodes == 1
    if n == 1:
        assert t is leaf()


@pytest.mark.parametrize("n", [4, 5, 8, 12])
def test_pseudocaterpillar_shape(n):
    t = pseudocaterpillar(n)
    assert t.leaves == n and t.height == n - 2


def test_constructor_domain_errors():
    with pytest.raises(ValueError):
        caterpillar(0)
    with pytest.raises(ValueError):
        pseudocaterpillar(3)


def test_everything_constructed_is_canonical(shapes8):
    for n in range(1, 9):
        for t in shapes8[n]:
            assert is_canonical(t)
    assert is_canonical(caterpillar(30))
    assert is_canonical(pseudocaterpillar(17))
