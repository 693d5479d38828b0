"""Exact and log-space moments of X_k, the concentration window, and g.

X_k counts induced rooted forests on k vertices of G(n, p). With
``q = 1 / (1 - p)``::

    E[X_k] = C(n, k) * q^(-C(k, 2)) * (k p q + 1)^(k - 1)

Exact values are ``fractions.Fraction``; nothing is rounded until an
explicit float conversion.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial, fsum, lgamma, log, log1p
from typing import Iterator, Optional

import numpy as np
from mpmath import iv

from .counting import ForestShape, cayley_tree_count, forest_extension_count
from .errors import ParameterError
from .rational import parse_rational, probability

WINDOW_INTEGER_TOLERANCE = 1e-12
G_BOUND_RTOL = 1e-9


def _check_nk(n: int, k: int) -> None:
    if not 1 <= k <= n:
        raise ParameterError(f"need 1 <= k <= n, got n={n}, k={k}")


def per_set_forest_probability(k: int, p: Fraction) -> Fraction:
    """Expected number of rootings of a fixed k-set, i.e. E[X_k] / C(n, k)."""
    q = 1 / (1 - p)
    return q ** -comb(k, 2) * (k * p * q + 1) ** (k - 1)


def expected_Xk_exact(n: int, k: int, p) -> Fraction:
    _check_nk(n, k)
    p = probability(p)
    return comb(n, k) * per_set_forest_probability(k, p)


def _log_binom(n: int, k: int) -> float:
    k = min(k, n - k)
    if k <= 100_000:
        return fsum(log(n - i) for i in range(k)) - lgamma(k + 1)
    return lgamma(n + 1) - lgamma(k + 1) - lgamma(n - k + 1)


def expected_Xk_log(n: int, k: int, p) -> float:
    """Natural log of E[X_k] from the closed form (no Stirling approximation)."""
    _check_nk(n, k)
    p = float(p)
    if not 0 < p < 1:
        raise ParameterError("p must lie strictly between 0 and 1")
    log_q = -log1p(-p)
    return _log_binom(n, k) - comb(k, 2) * log_q + (k - 1) * log1p(k * p / (1 - p))


@dataclass(frozen=True)
class Window:
    """Concentration interval ``[k_minus, k_plus]`` for F(G(n, p))."""

    n: int
    p: Fraction
    eps: Fraction
    k_minus: int
    k_plus: int
    arg_minus: float
    arg_plus: float
    widened: bool = False

    @property
    def np(self) -> float:
        # the lower threshold C_eps / n is never made explicit; np lets
        # callers judge how far into the asymptotic regime they are
        return self.n * float(self.p)

    def contains(self, f: int) -> bool:
        return self.k_minus <= f <= self.k_plus


def _window_arg(n: int, p: Fraction, factor: Fraction):
    iv.dps = 50
    P = iv.mpf(p.numerator) / p.denominator
    scale = iv.mpf(factor.numerator) / factor.denominator
    return 2 * iv.log(iv.e * n * P * scale) / iv.log(1 / (1 - P)) + 3


def window(n: int, p, eps) -> Window:
    """``k_minus = floor(2 log_q(e n p (1 - eps)) + 3)``, ``k_plus`` with ceil and ``1 + eps``.

    Both arguments are bracketed with 50-digit interval arithmetic. If a
    bracket comes within ``WINDOW_INTEGER_TOLERANCE`` of an integer the
    endpoint is moved outward, so a rounding error can only widen the window.
    """
    p = probability(p)
    eps = parse_rational(eps)
    if n < 1:
        raise ParameterError("n must be positive")
    if eps <= 0:
        raise ParameterError("eps must be positive")
    if math.e * n * float(p) * float(1 - eps) <= 1:
        raise ParameterError("need e*n*p*(1 - eps) > 1")
    lo = _window_arg(n, p, 1 - eps)
    hi = _window_arg(n, p, 1 + eps)
    tol = WINDOW_INTEGER_TOLERANCE
    k_minus = math.floor(float(lo.a) - tol)
    k_plus = math.ceil(float(hi.b) + tol)
    widened = (k_minus != math.floor(float(lo.b) + tol)) or (k_plus != math.ceil(float(hi.a) - tol))
    return Window(n, p, eps, k_minus, k_plus, float(lo.mid), float(hi.mid), widened)


# -- second moment -------------------------------------------------------------

def partitions(total: int, largest: Optional[int] = None) -> Iterator[tuple[int, ...]]:
    """Integer partitions of ``total`` in non-increasing order."""
    if largest is None:
        largest = total
    if total == 0:
        yield ()
        return
    for first in range(min(total, largest), 0, -1):
        for rest in partitions(total - first, first):
            yield (first,) + rest


def _multinomial(*parts: int) -> int:
    if any(x < 0 for x in parts):
        return 0
    out = factorial(sum(parts))
    for x in parts:
        out //= factorial(x)
    return out


@dataclass(frozen=True)
class PairTerm:
    ell: int
    value: Fraction


@lru_cache(maxsize=4096)
def _overlap_weight(k: int, ell: int, p: Fraction) -> Fraction:
    """Everything in the pair term except the outer vertex-split multinomial."""
    r = p / (1 - p)
    inv_r = 1 / r
    free_pairs = 2 * comb(k, 2) - comb(ell, 2)
    total = Fraction(0)
    for parts in partitions(ell):
        shape = ForestShape(parts)
        m = shape.m
        # 1/m! over ordered (f_1..f_m) equals 1/prod(mult!) over partitions
        mult = 1
        for c in Counter(parts).values():
            mult *= factorial(c)
        labelled = _multinomial(*parts)
        for f in parts:
            labelled *= cayley_tree_count(f)
        # p^E (1-p)^(P-E) with E = 2k - h1 - h2 - l + m splits into a factor
        # per forest, so the double sum over (h1, h2) is a square
        half = sum(forest_extension_count(k, h, shape) * inv_r ** h
                   for h in range(1, k - ell + m + 1))
        total += Fraction(labelled, mult) * half * half * r ** (2 * k - ell + m)
    return total * (1 - p) ** free_pairs


def pair_term_exact(n: int, k: int, ell: int, p) -> PairTerm:
    """Expected number of ordered pairs of induced rooted k-forests sharing ell vertices."""
    p = probability(p)
    if not 1 <= ell <= k:
        raise ParameterError("need 1 <= ell <= k")
    if n < 2 * k - ell:
        raise ParameterError("need n >= 2k - ell")
    split = _multinomial(ell, k - ell, k - ell, n - 2 * k + ell)
    return PairTerm(ell, split * _overlap_weight(k, ell, p))


def second_moment_exact(n: int, k: int, p) -> Fraction:
    """E[X_k^2]: disjoint pairs (independent) plus every overlap size."""
    _check_nk(n, k)
    p = probability(p)
    single = per_set_forest_probability(k, p)
    total = comb(n, k) * comb(n - k, k) * single * single
    for ell in range(max(1, 2 * k - n), k + 1):
        total += pair_term_exact(n, k, ell, p).value
    return total


def variance_ratio(n: int, k: int, p) -> float:
    """Var[X_k] / E[X_k]^2, computed exactly then rounded."""
    mean = expected_Xk_exact(n, k, p)
    return float((second_moment_exact(n, k, p) - mean * mean) / (mean * mean))


# -- g(x, y, z, alpha) -----------------------------------------------------------

@dataclass(frozen=True)
class GParams:
    x: float
    y: float
    z: float
    alpha: float

    def __post_init__(self):
        if self.x < 0 or self.y <= 0 or self.z <= 0 or self.alpha <= 0:
            raise ParameterError("need x >= 0 and y, z, alpha > 0")


def g_log(x: float, y: float, z: float, alpha: float) -> float:
    if x == 0:
        return 0.0
    return x * (log(y) + x * log(z) - alpha * log(x))


def g_eval(params: GParams) -> float:
    """``(y z^x / x^alpha)^x`` with the continuous limit 1 at x = 0."""
    try:
        return math.exp(g_log(params.x, params.y, params.z, params.alpha))
    except OverflowError:
        return math.inf


def _g_log_grid(xs: np.ndarray, y: float, z: float, alpha: float) -> np.ndarray:
    safe = np.where(xs > 0, xs, 1.0)
    vals = xs * (np.log(y) + xs * np.log(z) - alpha * np.log(safe))
    return np.where(xs > 0, vals, 0.0)


@dataclass(frozen=True)
class GBoundReport:
    grid_max_log: float
    bound0_log: float
    bound1_log: Optional[float]
    holds0: bool
    holds1: Optional[bool]

    @property
    def passed(self) -> bool:
        return self.holds0 and self.holds1 is not False


def verify_g_bounds(A: float, B: float, y: float, z: float, alpha: float,
                    grid_points: int = 10_000) -> GBoundReport:
    """Compare the grid maximum of g on [A, B] with both upper bounds.

    Work is done in log space; a bound holds when
    ``log(grid max) <= log(bound) + log(1 + G_BOUND_RTOL)``. The second bound
    applies only when ``A >= y^(1/alpha)`` and is reported as ``None``
    otherwise.
    """
    if not B >= A >= 0:
        raise ParameterError("need B >= A >= 0")
    GParams(A, y, z, alpha)
    if grid_points < 1:
        raise ParameterError("grid_points must be positive")
    xs = np.linspace(A, B, grid_points) if grid_points > 1 else np.array([float(A)])
    vals = _g_log_grid(xs, y, z, alpha)
    ends = _g_log_grid(np.array([float(A), float(B)]), y, z, alpha)
    grid_max = float(vals.max())
    tol = log1p(G_BOUND_RTOL)
    bound0 = max(alpha / 2 * y ** (1 / alpha), float(ends.max()))
    bound1 = None
    holds1 = None
    if A > 0 and A >= y ** (1 / alpha):
        peak = A / 2 * (log(y) + alpha * (1 - log(A)))
        bound1 = max(peak, float(ends.max()))
        holds1 = grid_max <= bound1 + tol
    return GBoundReport(grid_max, bound0, bound1, grid_max <= bound0 + tol, holds1)
