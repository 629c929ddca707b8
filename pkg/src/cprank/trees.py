"""Canonical binary tree shapes.

A *shape* is an unlabeled, unordered, rooted binary tree: every internal
node has exactly two children and children carry no order.  Shapes are
kept in a canonical form where the first child of every internal node
compares greater than or equal to the second child under
:func:`compare_shapes`.  In that form structural equality, canonical
form, and the Colijn-Plazzotta rank order all coincide.

Shapes are immutable and hash-consed: :func:`leaf` returns a singleton
and :func:`node` interns every internal node, so equal shapes are the
same object.  This keeps enumeration of hundreds of thousands of shapes
cheap (shared substructure) and makes equality an identity check.  The
interning is an implementation detail; no public behaviour depends on
it beyond ordinary value semantics.
"""

from __future__ import annotations

from dataclasses import dataclass

__all__ = [
    "TreeShape",
    "ShapeMetrics",
    "LT",
    "EQ",
    "GT",
    "leaf",
    "node",
    "compare_shapes",
    "metrics",
    "caterpillar",
    "pseudocaterpillar",
]

LT, EQ, GT = -1, 0, 1


class TreeShape:
    """A canonical unlabeled binary rooted tree.

    Attributes
    ----------
    first, second : TreeShape | None
        Children of an internal node, ordered so that
        ``compare_shapes(first, second) >= 0``.  Both are None for a leaf.
    leaves : int
        Number of leaves.
    height : int
        Edges on the longest root-to-leaf path; 0 exactly for a leaf.

    Instances are created only through :func:`leaf` and :func:`node` (or
    the parsers built on top of them) and are interned, so `a is b` holds
    whenever `a` and `b` are structurally equal.
    """

    __slots__ = ("first", "second", "leaves", "height", "_rank", "_sym", "_ydenom")

    first: "TreeShape | None"
    second: "TreeShape | None"
    leaves: int
    height: int

    def __init__(self, first: "TreeShape | None", second: "TreeShape | None"):
        self.first = first
        self.second = second
        if first is None:
            self.leaves = 1
            self.height = 0
        else:
            assert second is not None
            self.leaves = first.leaves + second.leaves
            self.height = 1 + max(first.height, second.height)
        # lazily filled caches (see ranking / enumeration)
        self._rank = None
        self._sym = None
        self._ydenom = None

    @property
    def is_leaf(self) -> bool:
        return self.first is None

    def __repr__(self) -> str:
        return f"<TreeShape leaves={self.leaves} height={self.height}>"


_LEAF = TreeShape(None, None)
_INTERN: dict[tuple[int, int], TreeShape] = {}


def leaf() -> TreeShape:
    """The one-leaf shape (the tree consisting of a single node)."""
    return _LEAF


def compare_shapes(a: TreeShape, b: TreeShape) -> int:
    """Order two shapes by their rank without computing the rank.

    Returns -1, 0 or 1 (module constants LT/EQ/GT) with the same sign as
    comparing the big-integer ranks of ``a`` and ``b``.  The recursion
    f = L(L-1)/2 + 1 + R is strictly increasing in (L, R) on the domain
    L >= R >= 1, so rank order equals the structural order: a leaf sorts
    below any internal node, and internal nodes compare by first child,
    then second child.  Shapes of different height never interleave
    (ranks of height h fill a contiguous block), which gives the height
    short-circuit below.
    """
    stack = [(a, b)]
    while stack:
        x, y = stack.pop()
        if x is y:
            continue
        if x.height != y.height:
            return LT if x.height < y.height else GT
        # same height and not identical: both internal (the leaf is unique)
        stack.append((x.second, y.second))
        stack.append((x.first, y.first))
    return EQ


def node(a: TreeShape, b: TreeShape) -> TreeShape:
    """Join two shapes under a new root, canonicalizing child order."""
    if compare_shapes(a, b) < 0:
        a, b = b, a
    key = (id(a), id(b))
    cached = _INTERN.get(key)
    if cached is not None:
        return cached
    return _INTERN.setdefault(key, TreeShape(a, b))


def caterpillar(n: int) -> TreeShape:
    """The n-leaf caterpillar: every internal node has a leaf child.

    Height n - 1; the shape of maximal rank among n-leaf shapes.
    """
    if n < 1:
        raise ValueError("caterpillar requires n >= 1")
    t = _LEAF
    for _ in range(n - 1):
        t = node(t, _LEAF)
    return t


def pseudocaterpillar(n: int) -> TreeShape:
    """The n-leaf pseudocaterpillar (n >= 4): a caterpillar chain whose
    bottom node carries two cherries.  Height n - 2; the shape of maximal
    rank among n-leaf shapes of height at most n - 2.
    """
    if n < 4:
        raise ValueError("pseudocaterpillar requires n >= 4")
    cherry = node(_LEAF, _LEAF)
    t = node(cherry, cherry)
    for _ in range(n - 4):
        t = node(t, _LEAF)
    return t


def postorder_unique(t: TreeShape) -> list[TreeShape]:
    """Distinct subtrees of ``t`` in bottom-up order (children first).

    Shared substructure appears once; iterative, so arbitrarily deep
    chains do not hit the recursion limit.
    """
    out: list[TreeShape] = []
    seen: set[int] = set()
    stack: list[tuple[TreeShape, bool]] = [(t, False)]
    while stack:
        u, done = stack.pop()
        if done:
            out.append(u)
            continue
        if id(u) in seen:
            continue
        seen.add(id(u))
        stack.append((u, True))
        if u.first is not None:
            stack.append((u.first, False))
            stack.append((u.second, False))
    return out


@dataclass(frozen=True)
class ShapeMetrics:
    """Per-shape summary statistics.

    ``symmetric_nodes`` counts internal nodes whose two child subtrees
    are equal shapes.  ``subtree_leaf_counts`` maps r to the number of
    internal nodes with exactly r descendant leaves (r >= 2); its values
    sum to ``leaves - 1`` and the root contributes the r = leaves entry.
    """

    leaves: int
    height: int
    symmetric_nodes: int
    subtree_leaf_counts: dict[int, int]


def metrics(t: TreeShape) -> ShapeMetrics:
    """Compute all shape metrics in one bottom-up traversal.

    Works on the shared (interned) representation: each distinct subtree
    is visited once and weighted by its multiplicity in the tree.
    """
    order = postorder_unique(t)
    mult = {id(u): 0 for u in order}
    mult[id(t)] = 1
    for u in reversed(order):  # parents precede children here
        m = mult[id(u)]
        if u.first is not None:
            mult[id(u.first)] += m
            mult[id(u.second)] += m
    d: dict[int, int] = {}
    sym = 0
    for u in order:
        if u.first is not None:
            m = mult[id(u)]
            d[u.leaves] = d.get(u.leaves, 0) + m
            if u.first is u.second:
                sym += m
    return ShapeMetrics(t.leaves, t.height, sym, d)


def is_canonical(t: TreeShape) -> bool:
    """True if every internal node satisfies the canonical-order invariant."""
    for u in postorder_unique(t):
        if u.first is not None and compare_shapes(u.first, u.second) < 0:
            return False
    return True
