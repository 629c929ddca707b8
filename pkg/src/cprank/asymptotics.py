"""Constants, the theta distribution, and asymptotic approximations.

The display constants are fixed to their published five-to-six digit
values; the derivation routines (:func:`solve_alpha`,
:func:`estimate_gamma`, :func:`estimate_rho`) recompute them
independently and the test suite checks agreement, so call sites stay
deterministic while the values stay honest.

Internally the caterpillar-rank logarithm is carried to full float
precision (not via the rounded display gamma): ln c_h doubles per level
up to an additive ln 2, so beyond the exactly-materialized range it is
propagated by ln c_{h+1} = 2 ln c_h - ln 2 with a one-off exact anchor.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from .enumeration import Model, caterpillar_probability, wedderburn
from .ranking import _c_upto, ln_big

__all__ = [
    "PublishedConstants",
    "CONSTANTS",
    "theta_cdf",
    "solve_alpha",
    "estimate_gamma",
    "estimate_rho",
    "PiAsymptotic",
    "pi_asymptotic",
    "loglog_asymptotic",
    "MeanRankAsymptotic",
    "mean_rank_asymptotic",
]

_LN2 = math.log(2.0)
_SQRT_PI = math.sqrt(math.pi)

#: ln c_h is exact (big-integer) up to this height, then doubled per level;
#: the dropped correction ln(1 - 1/c_h + ...) is ~1e-50000 there
_LN_C_EXACT_MAX = 20

#: mean_rank_asymptotic materializes pi_n * c_{n-1} exactly up to here;
#: c_26 already has ~3.2 million digits and each further level triples
#: the big-integer cost
_EXACT_MEAN_MAX_N = 26


@dataclass(frozen=True)
class PublishedConstants:
    """Published constants; kappa and beta are derived so the identities
    kappa * lam == 1 and beta == 3 alpha / (2 alpha - 2) hold exactly."""

    gamma: float = 1.11625
    lam: float = 0.31878
    rho: float = 0.40270
    alpha: float = 4.31107

    @property
    def kappa(self) -> float:
        return 1.0 / self.lam

    @property
    def beta(self) -> float:
        return 3.0 * self.alpha / (2.0 * self.alpha - 2.0)


CONSTANTS = PublishedConstants()


def theta_cdf(x: float) -> float:
    """Distribution function of the theta (tree-height limit) law.

    Two equivalent series cover the two tails; the switch at sqrt(pi) is
    where their terms decay equally fast, so at most ~10 terms are needed
    anywhere.  Terms are added until they drop below 1e-17; non-positive
    x maps to 0.
    """
    if x <= 0.0:
        return 0.0
    if x < _SQRT_PI:
        pref = 4.0 * math.pi ** 2.5 / (x * x * x)
        total = 0.0
        j = 1
        while j < 500:
            term = pref * j * j * math.exp(-((math.pi * j / x) ** 2))
            total += term
            if term < 1e-17:
                break
            j += 1
        return min(total, 1.0)
    total = 1.0
    j = 1
    while j < 500:
        term = 2.0 * (1.0 - 2.0 * j * j * x * x) * math.exp(-(j * j * x * x))
        total += term
        if abs(term) < 1e-17:
            break
        j += 1
    return min(max(total, 0.0), 1.0)


def solve_alpha() -> float:
    """Root of a*ln(2e/a) = 1 on (2, inf), by bisection to 1e-12."""

    def g(a: float) -> float:
        return a * math.log(2.0 * math.e / a) - 1.0

    lo, hi = 2.0, 100.0
    while hi - lo > 1e-13:
        mid = 0.5 * (lo + hi)
        if g(mid) > 0.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def estimate_gamma(depth: int) -> float:
    """(c_depth / 2)^(2^-depth): the growth base of the caterpillar ranks."""
    if depth < 4:
        raise ValueError("estimate_gamma requires depth >= 4")
    c = _c_upto(depth)[depth]
    return math.exp((ln_big(c) - _LN2) / float(1 << depth))


def estimate_rho(n_max: int) -> float:
    """Limit of U_n / U_{n+1} with one Aitken extrapolation step.

    The ratio differences are formed in exact rationals so the
    acceleration does not lose precision to cancellation.
    """
    if n_max < 100:
        raise ValueError("estimate_rho requires n_max >= 100")
    wedderburn(n_max + 1)
    s0, s1, s2 = (
        Fraction(wedderburn(m), wedderburn(m + 1))
        for m in (n_max - 2, n_max - 1, n_max)
    )
    denom = (s2 - s1) - (s1 - s0)
    return float(s2 - (s2 - s1) ** 2 / denom)


class PiAsymptotic(NamedTuple):
    value: float
    log_value: float


def pi_asymptotic(n: int, model: Model) -> PiAsymptotic:
    """Leading-order caterpillar probability; also returned in log form
    since the value itself underflows for moderate n."""
    if n < 2:
        raise ValueError("pi_asymptotic requires n >= 2")
    ln_n = math.log(n)
    if model in (Model.UNIFORM_LABELED, Model.UNIFORM_ORDERED):
        ln_pi = 1.5 * ln_n + 0.5 * math.log(math.pi) - n * _LN2
    elif model is Model.UNIFORM_UNORDERED:
        ln_pi = 1.5 * ln_n + n * math.log(CONSTANTS.rho) - math.log(CONSTANTS.lam)
    elif model is Model.YULE_HARDING:
        ln_pi = n * (_LN2 + 1.0 - ln_n) + 0.5 * ln_n - math.log(4.0 * math.sqrt(2.0 * math.pi))
    else:
        raise ValueError(f"unknown model {model!r}")
    return PiAsymptotic(math.exp(ln_pi) if ln_pi > -745.0 else 0.0, ln_pi)


def loglog_asymptotic(n: int, model: Model) -> float:
    """Leading-order expected log2 log rank."""
    if n < 2:
        raise ValueError("loglog_asymptotic requires n >= 2")
    if model in (Model.UNIFORM_LABELED, Model.UNIFORM_ORDERED):
        return 2.0 * math.sqrt(math.pi * n)
    if model is Model.UNIFORM_UNORDERED:
        return CONSTANTS.kappa * math.sqrt(n)
    if model is Model.YULE_HARDING:
        return CONSTANTS.alpha * math.log(n)
    raise ValueError(f"unknown model {model!r}")


def ln_caterpillar_rank(h: int) -> float:
    """ln c_h to float precision for any height."""
    if h < 0:
        raise ValueError("height must be >= 0")
    if h <= _LN_C_EXACT_MAX:
        return ln_big(_c_upto(h)[h])
    # ln c_{h+1} = 2 ln c_h - ln 2 once the correction term is below 1 ulp
    anchor = ln_big(_c_upto(_LN_C_EXACT_MAX)[_LN_C_EXACT_MAX]) - _LN2
    return _LN2 + math.ldexp(anchor, h - _LN_C_EXACT_MAX)


def _ln_fraction(q: Fraction) -> float:
    return ln_big(q.numerator) - ln_big(q.denominator)


def _ln_pi_exact(n: int, model: Model) -> float:
    """ln of the exact caterpillar probability, safe for large n."""
    if model is Model.UNIFORM_UNORDERED:
        return -ln_big(wedderburn(n))
    if model in (Model.UNIFORM_LABELED, Model.UNIFORM_ORDERED):
        # pi = n! / (2 (2n-3)!!) with (2n-3)!! = (2n-2)! / (2^(n-1) (n-1)!)
        return (
            math.lgamma(n + 1)
            + math.lgamma(n)
            + (n - 2) * _LN2
            - math.lgamma(2 * n - 1)
        )
    if model is Model.YULE_HARDING:
        return (n - 2) * _LN2 - math.lgamma(n)
    raise ValueError(f"unknown model {model!r}")


class MeanRankAsymptotic(NamedTuple):
    log2log_mean: float
    exact_available: bool
    mean: Fraction | None


def _log2log_logdomain(n: int, model: Model, variance: bool) -> float:
    k = 2 if variance else 1
    return math.log2(_ln_pi_exact(n, model) + k * ln_caterpillar_rank(n - 1))


def mean_rank_asymptotic(n: int, model: Model, variance: bool = False) -> MeanRankAsymptotic:
    """The caterpillar-dominated approximation pi_n * c_{n-1} of the mean
    rank (or pi_n * c_{n-1}^2 of the second moment when ``variance``).

    Materialized exactly up to n = 26; beyond that only log2 log of the
    value is returned, computed fully in the log domain.
    """
    if n < 4:
        raise ValueError("mean_rank_asymptotic requires n >= 4")
    if n <= _EXACT_MEAN_MAX_N:
        c = _c_upto(n - 1)[n - 1]
        mean = caterpillar_probability(n, model) * (c * c if variance else c)
        return MeanRankAsymptotic(math.log2(_ln_fraction(mean)), True, mean)
    return MeanRankAsymptotic(_log2log_logdomain(n, model, variance), False, None)
