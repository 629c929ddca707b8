"""Exact counting, exhaustive enumeration, and exact model probabilities.

Three distributions on n-leaf shapes are supported:

* uniform over unordered shapes (Wedderburn-Etherington counted),
* uniform over leaf-labeled trees (equivalently uniform ordered trees:
  both push forward to the same shape law, so the "uniform-ordered"
  model id is an alias at shape level),
* Yule-Harding, where a labeled tree's probability is proportional to
  its number of labeled histories.

All probabilities and moments are exact rationals; only the expected
double log of the rank is a float (its terms are irrational).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction

from .trees import TreeShape, leaf, node, postorder_unique
from .ranking import _rank_of, double_log_rank

__all__ = [
    "Model",
    "DEFAULT_ENUMERATION_CAP",
    "MAX_ENUMERATION_LEAVES",
    "wedderburn",
    "catalan_tree_count",
    "labeled_tree_count",
    "enumerate_shapes",
    "shape_probability",
    "labeled_histories",
    "caterpillar_probability",
    "exact_moments",
    "MomentsReport",
]

#: Rank moments stay exactly representable and fast up to here.
DEFAULT_ENUMERATION_CAP = 16
#: Hard ceiling: height/log-log moments are supported up to here.
MAX_ENUMERATION_LEAVES = 20


class Model(enum.Enum):
    """Random-tree model identifiers (values are the CLI spellings)."""

    UNIFORM_UNORDERED = "uniform-unordered"
    UNIFORM_LABELED = "uniform-labeled"
    YULE_HARDING = "yule"
    UNIFORM_ORDERED = "uniform-ordered"

    @classmethod
    def from_name(cls, name: str) -> "Model":
        try:
            return cls(name)
        except ValueError:
            valid = ", ".join(m.value for m in cls)
            raise ValueError(f"unknown model {name!r}; expected one of: {valid}") from None


_U_CACHE: list[int] = [0, 1]


def wedderburn(n: int) -> int:
    """The number of unordered binary tree shapes with n leaves (U_n)."""
    if n < 1:
        raise ValueError("wedderburn requires n >= 1")
    while len(_U_CACHE) <= n:
        m = len(_U_CACHE)
        total = 0
        for j in range(1, (m - 1) // 2 + 1):
            total += _U_CACHE[j] * _U_CACHE[m - j]
        if m % 2 == 0:
            half = _U_CACHE[m // 2]
            total += half * (half + 1) // 2
        _U_CACHE.append(total)
    return _U_CACHE[n]


def catalan_tree_count(n: int) -> int:
    """The number of ordered binary trees with n leaves (Catalan K_{n-1})."""
    if n < 1:
        raise ValueError("catalan_tree_count requires n >= 1")
    return math.comb(2 * n - 2, n - 1) // n


def labeled_tree_count(n: int) -> int:
    """The number of leaf-labeled binary trees with n leaves, (2n-3)!!."""
    if n < 1:
        raise ValueError("labeled_tree_count requires n >= 1")
    out = 1
    for k in range(1, 2 * n - 2, 2):
        out *= k
    return out


_SHAPES_CACHE: dict[int, tuple[TreeShape, ...]] = {1: (leaf(),)}

_SORTKEY: dict[int, tuple] = {id(leaf()): (0,)}


def _sort_key(t: TreeShape) -> tuple:
    # nested tuples compare exactly like compare_shapes (height first,
    # then first child, then second) but at C speed; shared bottom-up
    k = _SORTKEY.get(id(t))
    if k is None:
        k = (t.height, _sort_key(t.first), _sort_key(t.second))
        _SORTKEY[id(t)] = k
    return k


def enumerate_shapes(n: int, cap: int = DEFAULT_ENUMERATION_CAP) -> tuple[TreeShape, ...]:
    """All n-leaf shapes, sorted ascending by rank.

    Built by pairing shape lists of smaller sizes; for the even split the
    unordered pairs with repetition are taken once.  ``cap`` guards
    against accidental blowup (U_n grows like 2.48^n).
    """
    if n < 1:
        raise ValueError("enumerate_shapes requires n >= 1")
    if n > cap:
        raise ValueError(f"n={n} exceeds the enumeration cap {cap}")
    for m in range(2, n + 1):
        if m in _SHAPES_CACHE:
            continue
        out: list[TreeShape] = []
        for j in range(1, m // 2 + 1):
            small = _SHAPES_CACHE[j]
            big = _SHAPES_CACHE[m - j]
            if j < m - j:
                out.extend(node(a, b) for a in small for b in big)
            else:
                for i, a in enumerate(small):
                    for b in small[i:]:
                        out.append(node(a, b))
        out.sort(key=_sort_key)
        _SHAPES_CACHE[m] = tuple(out)
    return _SHAPES_CACHE[n]


def _sym_of(t: TreeShape) -> int:
    # number of symmetric internal nodes, cached on the shared nodes
    s = t._sym
    if s is not None:
        return s
    for u in postorder_unique(t):
        if u._sym is None:
            if u.first is None:
                u._sym = 0
            else:
                u._sym = u.first._sym + u.second._sym + (1 if u.first is u.second else 0)
    return t._sym


def _history_denom(t: TreeShape) -> int:
    # prod over internal nodes of (leaves - 1), cached; divides (n-1)!
    v = t._ydenom
    if v is not None:
        return v
    for u in postorder_unique(t):
        if u._ydenom is None:
            if u.first is None:
                u._ydenom = 1
            else:
                u._ydenom = (u.leaves - 1) * u.first._ydenom * u.second._ydenom
    return t._ydenom


def labeled_histories(t: TreeShape) -> int:
    """Number of bifurcation orders producing a labeling of ``t``:
    (n-1)! / prod over internal nodes of (descendant leaves - 1)."""
    q, r = divmod(math.factorial(t.leaves - 1), _history_denom(t))
    assert r == 0, "labeled-history product must divide (n-1)!"
    return q


def shape_probability(t: TreeShape, model: Model) -> Fraction:
    """Exact probability of shape ``t`` under ``model``.

    Uniform-ordered is the uniform-labeled shape law; both use the number
    of labelings n!/2^s over (2n-3)!!.  Yule-Harding reduces to
    2^(n-1-s) / prod (r-1)^{d_r}, kept in exact integers throughout.
    """
    n = t.leaves
    if model is Model.UNIFORM_UNORDERED:
        return Fraction(1, wedderburn(n))
    if model in (Model.UNIFORM_LABELED, Model.UNIFORM_ORDERED):
        return Fraction(math.factorial(n), (1 << _sym_of(t)) * labeled_tree_count(n))
    if model is Model.YULE_HARDING:
        return Fraction(1 << (n - 1 - _sym_of(t)), _history_denom(t))
    raise ValueError(f"unknown model {model!r}")


def caterpillar_probability(n: int, model: Model) -> Fraction:
    """Exact probability that an n-leaf tree is the caterpillar (n >= 2),
    computed from closed forms without enumeration."""
    if n < 2:
        raise ValueError("caterpillar_probability requires n >= 2")
    if model is Model.UNIFORM_UNORDERED:
        return Fraction(1, wedderburn(n))
    if model in (Model.UNIFORM_LABELED, Model.UNIFORM_ORDERED):
        return Fraction(1 << (n - 2), catalan_tree_count(n))
    if model is Model.YULE_HARDING:
        return Fraction(1 << (n - 2), math.factorial(n - 1))
    raise ValueError(f"unknown model {model!r}")


@dataclass(frozen=True)
class MomentsReport:
    """Exact moments of rank and height for fixed n under a model.

    Rank moments (``e_f``, ``e_f2``, ``v_f``) are present only when
    requested and within the exact-rank range; ``e_loglog_f`` is a float
    accumulated with compensated summation in ascending rank order.
    """

    n: int
    model: Model
    e_f: Fraction | None
    e_f2: Fraction | None
    v_f: Fraction | None
    e_loglog_f: float
    e_height: Fraction
    caterpillar_prob: Fraction


def _weight_numerators(shapes: tuple[TreeShape, ...], n: int, model: Model) -> tuple[list[int], int]:
    # per-shape probability numerators over one common denominator
    if model is Model.UNIFORM_UNORDERED:
        return [1] * len(shapes), wedderburn(n)
    if model in (Model.UNIFORM_LABELED, Model.UNIFORM_ORDERED):
        nf = math.factorial(n)
        return [nf >> _sym_of(t) for t in shapes], labeled_tree_count(n)
    if model is Model.YULE_HARDING:
        nums = [
            (1 << (n - 1 - _sym_of(t))) * (math.factorial(n - 1) // _history_denom(t))
            for t in shapes
        ]
        return nums, math.factorial(n - 1)
    raise ValueError(f"unknown model {model!r}")


_LOGLOG_CACHE: dict[int, float] = {}


def _loglog_of(t: TreeShape) -> float:
    # model-independent, so shared across the per-model moment sweeps;
    # keying by id is safe because shapes are interned for the process
    v = _LOGLOG_CACHE.get(id(t))
    if v is None:
        v = double_log_rank(t)
        _LOGLOG_CACHE[id(t)] = v
    return v


def exact_moments(n: int, model: Model, include_rank_moments: bool | None = None) -> MomentsReport:
    """Exact moments over all n-leaf shapes (2 <= n <= 20).

    Rank moments are computed by default up to n = 16 and must be
    disabled above that; height and log-log moments work for the full
    range.
    """
    if not 2 <= n <= MAX_ENUMERATION_LEAVES:
        raise ValueError(f"exact_moments requires 2 <= n <= {MAX_ENUMERATION_LEAVES}")
    if include_rank_moments is None:
        include_rank_moments = n <= DEFAULT_ENUMERATION_CAP
    if include_rank_moments and n > DEFAULT_ENUMERATION_CAP:
        raise ValueError(f"rank moments are limited to n <= {DEFAULT_ENUMERATION_CAP}")

    shapes = enumerate_shapes(n, cap=max(DEFAULT_ENUMERATION_CAP, n))
    nums, den = _weight_numerators(shapes, n, model)
    assert sum(nums) == den, "model probabilities must sum to exactly 1"

    e_height = Fraction(sum(w * t.height for w, t in zip(nums, shapes)), den)
    fden = float(den)
    e_loglog = math.fsum((w / fden) * _loglog_of(t) for w, t in zip(nums, shapes))

    e_f = e_f2 = v_f = None
    if include_rank_moments:
        ranks = [_rank_of(t) for t in shapes]
        e_f = Fraction(sum(w * r for w, r in zip(nums, ranks)), den)
        e_f2 = Fraction(sum(w * r * r for w, r in zip(nums, ranks)), den)
        v_f = e_f2 - e_f * e_f

    return MomentsReport(
        n=n,
        model=model,
        e_f=e_f,
        e_f2=e_f2,
        v_f=v_f,
        e_loglog_f=e_loglog,
        e_height=e_height,
        caterpillar_prob=caterpillar_probability(n, model),
    )
