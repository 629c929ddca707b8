"""Seeded random shape generation and Monte Carlo estimation.

Every sample has its own counter-based substream derived from
(seed, sample index), so results are bit-identical for a given seed no
matter how work is partitioned and which kernel backend runs it; see
:mod:`cprank.rng` for the fixed generator.  Estimates are reduced from
materialized per-sample arrays in index order.

Dispatch: shapes with at most 8 leaves are sampled by the compiled
kernels with ranks carried in int64; larger n falls back to the exact
big-integer reference sampler.  Height-only runs avoid materializing
ranks entirely and scale to millions of leaves (yule splitting, or
uniform branch attachment for the uniform-labeled height law).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import _scalar, backend
from .asymptotics import CONSTANTS
from .enumeration import Model
from .ranking import _rank_of, double_log_rank
from .trees import TreeShape

__all__ = [
    "KERNEL_RANK_MAX_N",
    "RngState",
    "McReport",
    "sample_shape",
    "monte_carlo",
    "height_scaled_samples",
]

#: int64 rank combination is exact up to this leaf count (c_8 - 1 < 2^42).
KERNEL_RANK_MAX_N = 8

_MODEL_ID = {
    Model.YULE_HARDING: 0,
    Model.UNIFORM_LABELED: 1,
    Model.UNIFORM_ORDERED: 1,
    Model.UNIFORM_UNORDERED: 2,
}

_EMPTY_U64 = np.zeros(1, np.uint64)


@dataclass
class RngState:
    """Seed plus the index of the next sample substream to hand out."""

    seed: int
    index: int = 0

    def __post_init__(self):
        self.seed &= (1 << 64) - 1


@dataclass(frozen=True)
class McReport:
    """Monte Carlo estimates with standard errors.

    ``se_*`` are sample standard deviations (ddof=1) over sqrt(samples).
    ``mean_loglog``/``se_loglog`` are None for height-only runs, and
    ``shape_histogram`` maps canonical rank to count when requested.
    """

    model: Model
    n: int
    samples: int
    mean_loglog: float | None
    se_loglog: float | None
    mean_height: float
    se_height: float
    caterpillar_freq: float
    shape_histogram: dict[int, int] | None = field(default=None)


def sample_shape(model: Model, n: int, rng: RngState) -> TreeShape:
    """Draw one canonical shape; advances ``rng`` to the next substream."""
    if n < 1:
        raise ValueError("sample_shape requires n >= 1")
    t = _scalar.sample_shape_at(model.value, n, rng.seed, rng.index)
    rng.index += 1
    return t


_TABLES: dict[int, tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]] = {}


def _kernel_tables(n: int):
    """Flattened uint64 cumulative split-weight tables for sizes <= n."""
    cached = _TABLES.get(n)
    if cached is not None:
        return cached
    cat_off = np.zeros(n + 1, np.int64)
    ott_off = np.zeros(n + 1, np.int64)
    cat_parts: list[int] = []
    ott_parts: list[int] = []
    for s in range(2, n + 1):
        cat_off[s] = len(cat_parts)
        cat_parts.extend(_scalar.catalan_split_row(s))
        ott_off[s] = len(ott_parts)
        ott_parts.extend(_scalar.otter_split_row(s))
    cat_cum = np.array(cat_parts, np.uint64) if cat_parts else _EMPTY_U64
    ott_cum = np.array(ott_parts, np.uint64) if ott_parts else _EMPTY_U64
    out = (cat_cum, cat_off, ott_cum, ott_off)
    _TABLES[n] = out
    return out


def _sample_rank_height_arrays(model: Model, n: int, samples: int, seed: int):
    cat_cum, cat_off, ott_cum, ott_off = _kernel_tables(n)
    k = backend.kernels()
    return k.sample_rank_height(
        _MODEL_ID[model], n, samples, np.uint64(seed), 0,
        cat_cum, cat_off, ott_cum, ott_off,
    )


def _heights_array(model: Model, n: int, samples: int, seed: int) -> np.ndarray:
    k = backend.kernels()
    if model is Model.YULE_HARDING:
        return k.yule_heights(n, samples, np.uint64(seed), 0)
    if model in (Model.UNIFORM_LABELED, Model.UNIFORM_ORDERED):
        return k.remy_heights(n, samples, np.uint64(seed), 0)
    # uniform-unordered has no height-only shortcut; sample shapes
    heights = np.empty(samples, np.int64)
    for g in range(samples):
        heights[g] = _scalar.sample_shape_at(model.value, n, seed, g).height
    return heights


def _mean_se(values: np.ndarray) -> tuple[float, float]:
    mean = float(np.mean(values))
    se = float(np.std(values, ddof=1) / math.sqrt(values.size))
    return mean, se


def monte_carlo(
    model: Model,
    n: int,
    samples: int,
    seed: int = 0,
    with_histogram: bool = False,
    height_only: bool = False,
) -> McReport:
    """Sample ``samples`` trees and report rank/height statistics.

    ``height_only`` skips rank materialization (loglog statistics and the
    histogram become unavailable) and is the path that scales to very
    large n for the yule and uniform-labeled/ordered models.
    """
    if n < 2:
        raise ValueError("monte_carlo requires n >= 2")
    if samples < 2:
        raise ValueError("monte_carlo requires samples >= 2")
    seed &= (1 << 64) - 1

    if height_only:
        if with_histogram:
            raise ValueError("the shape histogram requires full sampling, not height-only")
        heights = _heights_array(model, n, samples, seed)
        mean_h, se_h = _mean_se(heights.astype(np.float64))
        cat_freq = float(np.count_nonzero(heights == n - 1)) / samples
        return McReport(model, n, samples, None, None, mean_h, se_h, cat_freq)

    if n <= KERNEL_RANK_MAX_N:
        ranks, heights = _sample_rank_height_arrays(model, n, samples, seed)
        loglog = np.log2(np.log(ranks.astype(np.float64)))
        histogram = None
        if with_histogram:
            uniq, counts = np.unique(ranks, return_counts=True)
            histogram = {int(r): int(c) for r, c in zip(uniq, counts)}
    else:
        # exact big-integer path; ranks are only materialized when the
        # histogram asks for them (double_log_rank goes log-domain for
        # shapes too tall to materialize)
        heights = np.empty(samples, np.int64)
        loglog = np.empty(samples, np.float64)
        loglog_by_shape: dict[int, float] = {}
        histogram = {} if with_histogram else None
        for g in range(samples):
            t = _scalar.sample_shape_at(model.value, n, seed, g)
            heights[g] = t.height
            v = loglog_by_shape.get(id(t))
            if v is None:
                v = double_log_rank(t)
                loglog_by_shape[id(t)] = v
            loglog[g] = v
            if histogram is not None:
                r = _rank_of(t)
                histogram[r] = histogram.get(r, 0) + 1
        if histogram is not None:
            histogram = dict(sorted(histogram.items()))

    mean_h, se_h = _mean_se(heights.astype(np.float64))
    # only the caterpillar reaches height n - 1
    cat_freq = float(np.count_nonzero(heights == n - 1)) / samples
    mean_ll, se_ll = _mean_se(loglog)
    return McReport(model, n, samples, mean_ll, se_ll, mean_h, se_h, cat_freq, histogram)


def height_scaled_samples(model: Model, n: int, samples: int, seed: int = 0) -> list[float]:
    """Scaled heights for limit-law comparisons.

    Scaling per model: uniform-labeled/ordered H/(2 sqrt n), uniform-
    unordered H/(kappa sqrt(n/pi)), yule H/ln n.
    """
    if n < 2:
        raise ValueError("height_scaled_samples requires n >= 2")
    if samples < 2:
        raise ValueError("height_scaled_samples requires samples >= 2")
    seed &= (1 << 64) - 1
    heights = _heights_array(model, n, samples, seed).astype(np.float64)
    if model in (Model.UNIFORM_LABELED, Model.UNIFORM_ORDERED):
        scale = 2.0 * math.sqrt(n)
    elif model is Model.UNIFORM_UNORDERED:
        scale = CONSTANTS.kappa * math.sqrt(n / math.pi)
    else:
        scale = math.log(n)
    return (heights / scale).tolist()
