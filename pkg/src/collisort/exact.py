"""Exact (high-precision) laws of bubble-sort passes and birthday collisions.

Two numeric backends back every quantity: `fractions.Fraction` for exact
rational oracles (practical up to n of a few hundred) and double-double
HPReal for production evaluation at any n.  Probabilities are built from
the finite product forms

    collision survival  P{C_n > m+1} = prod_{k=1..m} (1 - k/n)
    pass-count CDF      P{P_n <= n-m} = prod_{k=1..m} (1 - k/(n-m+k))

plus log-series forms that extend the collision survival to non-integer
year lengths.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .hpreal import HPReal, hp
from .powersums import power_sum

SERIES_MAX_DEPTH = 64
SURVIVAL_FLOOR = 1e-40  # truncation threshold for moment sums


@dataclass(frozen=True)
class ProblemSize:
    """Year length / sequence length n and probe depth m."""

    n: int
    m: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"n must be >= 1, got {self.n}")
        if not 0 <= self.m <= self.n:
            raise ValueError(f"m must satisfy 0 <= m <= n, got m={self.m}, n={self.n}")


@dataclass(frozen=True)
class EstimateReport:
    """Cross-estimation report: exact probability ratio vs asymptotic formula."""

    exact_ratio: HPReal
    asymptotic_formula_value: float
    relative_error: float  # float(exact_ratio) - 1


# ---------------------------------------------------------------------------
# product forms
# ---------------------------------------------------------------------------


# below this digit count the whole product fits one exact integer ratio;
# beyond it the numerator would overflow float conversion
_INT_RATIO_DIGITS = 280


def collision_sf(n: int, m: int) -> HPReal:
    """P{C_n > m+1}: the first m+1 draws from n days are all distinct.

    The product prod_{k=1..m} (1 - k/n) is grouped as the exact integer
    ratio (n-1)...(n-m) / n^m when that fits float range (one rounding
    step); otherwise it is accumulated factor by factor.  Empty product 1
    at m=0; exactly 0 once m >= n (pigeonhole).
    """
    if n < 1 or m < 0:
        raise ValueError("collision_sf needs n >= 1 and m >= 0")
    if m >= n:
        return hp(0.0)
    if m == 0:
        return hp(1.0)
    if m * math.log10(n) < _INT_RATIO_DIGITS:
        num = 1
        for k in range(1, m + 1):
            num *= n - k
        return HPReal.from_int(num) / HPReal.from_int(n ** m)
    prod = hp(1.0)
    n_hp = hp(n)
    for k in range(1, m + 1):
        prod = prod * (hp(n - k) / n_hp)
    return prod


def pass_cdf(n: int, m: int) -> HPReal:
    """P{P_n <= n-m} for bubble sort of n distinct elements.

    Equals (n-m)^m (n-m)!/n!, grouped as the exact integer ratio
    (n-m)^m / ((n-m+1)...(n)) when that fits float range; otherwise the
    factors (n-m)/(n-m+k) are accumulated to stay in range.
    """
    if n < 1 or m < 0:
        raise ValueError("pass_cdf needs n >= 1 and m >= 0")
    if m >= n:
        raise ValueError(f"pass_cdf requires m < n (P_n >= 1 always); got m={m}, n={n}")
    if m == 0:
        return hp(1.0)
    if m * math.log10(n) < _INT_RATIO_DIGITS:
        den = 1
        for k in range(1, m + 1):
            den *= n - m + k
        return HPReal.from_int((n - m) ** m) / HPReal.from_int(den)
    prod = hp(1.0)
    base = hp(n - m)
    for k in range(1, m + 1):
        prod = prod * (base / (n - m + k))
    return prod


def collision_sf_fraction(n: int, m: int) -> Fraction:
    """Exact rational collision survival (oracle backend)."""
    if m >= n:
        return Fraction(0)
    prod = Fraction(1)
    for k in range(1, m + 1):
        prod *= Fraction(n - k, n)
    return prod


def pass_cdf_fraction(n: int, m: int) -> Fraction:
    """Exact rational pass-count CDF (oracle backend)."""
    if m >= n:
        raise ValueError("pass_cdf_fraction requires m < n")
    prod = Fraction(1)
    for k in range(1, m + 1):
        prod *= Fraction(n - m, n - m + k)
    return prod


# ---------------------------------------------------------------------------
# log-series forms
# ---------------------------------------------------------------------------


def _series_exponent_terms(m: int, base: Fraction, alternating: bool, depth: int):
    """Exact terms power_sum(k, m) / (sign_k * k * base^k), k = 1..depth."""
    terms = []
    bp = Fraction(1)
    for k in range(1, depth + 1):
        bp *= base
        t = Fraction(power_sum(k, m)) / (k * bp)
        if alternating:
            t = t if k % 2 == 0 else -t
        else:
            t = -t
        terms.append(t)
    return terms


def _auto_depth(m: int, base: Fraction) -> int:
    """Smallest depth whose next term is below 1e-16 of the partial sum."""
    total = Fraction(0)
    bp = Fraction(1)
    for k in range(1, SERIES_MAX_DEPTH + 1):
        bp *= base
        term = Fraction(power_sum(k, m)) / (k * bp)
        total += term
        nxt = Fraction(power_sum(k + 1, m)) / ((k + 1) * bp * base)
        if total and abs(nxt) < Fraction(1, 10 ** 16) * abs(total):
            return k
    return SERIES_MAX_DEPTH


def collision_sf_series(n: float, m: int, depth: int | None = None) -> HPReal:
    """Collision survival via exp of the truncated log series.

    Accepts non-integer year length n (the shifted estimators need it);
    reduces to the product form for integer n as depth grows.
    """
    if m < 0:
        raise ValueError("m must be >= 0")
    if not n > m:
        raise ValueError(f"series form requires n > m, got n={n}, m={m}")
    if m == 0:
        return hp(1.0)
    base = Fraction(n)
    if depth is None:
        depth = _auto_depth(m, base)
    if not 1 <= depth <= SERIES_MAX_DEPTH:
        raise ValueError(f"depth must be in 1..{SERIES_MAX_DEPTH}")
    exponent = hp(0.0)
    for t in _series_exponent_terms(m, base, alternating=False, depth=depth):
        exponent = exponent + HPReal.from_fraction(t)
    return exponent.exp()


def pass_cdf_series(n: float, m: int, depth: int | None = None) -> HPReal:
    """Pass-count CDF via exp of the truncated alternating log series."""
    if m < 0:
        raise ValueError("m must be >= 0")
    if not n > m:
        raise ValueError(f"series form requires n > m, got n={n}, m={m}")
    if m == 0:
        return hp(1.0)
    base = Fraction(n) - m
    if depth is None:
        depth = _auto_depth(m, base)
    if not 1 <= depth <= SERIES_MAX_DEPTH:
        raise ValueError(f"depth must be in 1..{SERIES_MAX_DEPTH}")
    exponent = hp(0.0)
    for t in _series_exponent_terms(m, base, alternating=True, depth=depth):
        exponent = exponent + HPReal.from_fraction(t)
    return exponent.exp()


# ---------------------------------------------------------------------------
# sandwich bound, cross-estimation, optimal shift
# ---------------------------------------------------------------------------


def sandwich_bounds(n: int, m: int) -> tuple[HPReal, HPReal]:
    """(collision_sf(n-(m-1), m), collision_sf(n, m)), bracketing pass_cdf(n, m)."""
    if not 1 <= m < n:
        raise ValueError(f"sandwich_bounds needs 1 <= m < n, got m={m}, n={n}")
    if n - (m - 1) < m + 1:
        raise ValueError(
            f"lower bound degenerate: n-(m-1)={n - (m - 1)} < m+1={m + 1}"
        )
    return collision_sf(n - (m - 1), m), collision_sf(n, m)


def relative_error_common(n: int, m: int) -> EstimateReport:
    """Error of estimating the pass CDF by the same-n collision survival.

    Asymptotically (m-1)m(m+1) / (6 (n - m/2)^2).
    """
    if not 1 <= m < n:
        raise ValueError(f"needs 1 <= m < n, got m={m}, n={n}")
    denom = pass_cdf(n, m)
    if float(denom) == 0.0:
        raise ZeroDivisionError("pass_cdf vanished; ratio undefined")
    ratio = collision_sf(n, m) / denom
    formula = (m - 1) * m * (m + 1) / (6.0 * (n - m / 2.0) ** 2)
    return EstimateReport(ratio, formula, float(ratio) - 1.0)


def relative_error_shifted(n: int, m: int) -> EstimateReport:
    """Error of the collision estimate at shifted year length n - (m-1)/3.

    Asymptotically -(m-1)m(m+1)(m+2)(2m+1) / (270 (n - (4m-1)/6)^4).
    """
    if not 1 <= m < n:
        raise ValueError(f"needs 1 <= m < n, got m={m}, n={n}")
    shifted = n - (m - 1) / 3.0
    if not shifted > m:
        raise ValueError(f"shifted year length {shifted} must exceed m={m}")
    denom = pass_cdf(n, m)
    if float(denom) == 0.0:
        raise ZeroDivisionError("pass_cdf vanished; ratio undefined")
    ratio = collision_sf_series(shifted, m) / denom
    formula = (
        -(m - 1) * m * (m + 1) * (m + 2) * (2 * m + 1)
        / (270.0 * (n - (4 * m - 1) / 6.0) ** 4)
    )
    return EstimateReport(ratio, formula, float(ratio) - 1.0)


def optimal_shift(n: int, m: int) -> tuple[int, float]:
    """Best integer year-length shift k for the collision estimate.

    Brute-force argmin over k in [0, m) of |collision_sf(n-k, m)/pass_cdf(n, m) - 1|,
    paired with the asymptotic value (m-1)/3.
    """
    if not 1 <= m < n:
        raise ValueError(f"needs 1 <= m < n, got m={m}, n={n}")
    target = pass_cdf(n, m)
    best_k = 0
    best_dev = math.inf
    for k in range(0, m):
        if n - k <= m:
            continue  # collision estimate degenerate below year length m+1
        dev = abs(float(collision_sf(n - k, m) / target) - 1.0)
        if dev < best_dev:
            best_dev = dev
            best_k = k
    return best_k, (m - 1) / 3.0


# ---------------------------------------------------------------------------
# survival sequences and moments of the scaled statistics
# ---------------------------------------------------------------------------


def pass_survival_sequence(n: int, floor: float = SURVIVAL_FLOOR):
    """Yield (m, P{P_n <= n-m}) for m = 0, 1, ... until below ``floor``.

    Uses the exact ratio (( n-m-1)/(n-m))^(m+1) between consecutive m,
    so the whole sequence costs O(log m) multiplications per step.
    """
    rho = hp(1.0)
    m = 0
    while m < n:
        yield m, rho
        if rho.hi < floor:
            return
        rho = rho * (hp(n - m - 1) / (n - m)).pow_int(m + 1)
        m += 1


def collision_survival_sequence(n: int, floor: float = SURVIVAL_FLOOR):
    """Yield (m, P{C_n > m+1}) for m = 0, 1, ... until below ``floor``."""
    sf = hp(1.0)
    m = 0
    while m < n:
        yield m, sf
        if sf.hi < floor:
            return
        sf = sf * (hp(n - m - 1) / n)
        m += 1


@lru_cache(maxsize=256)
def scaled_pass_moment(n: int, k: int) -> HPReal:
    """k-th moment of (n - P_n)/sqrt(n), by Abel-transformed summation.

    E = (-1/sqrt n)^k + sum_m ((m/sqrt n)^k - ((m-1)/sqrt n)^k) * rho(m)
    with rho(m) = P{P_n <= n-m}; the tail below the survival floor is
    bounded by telescoping and folded into the err field.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if not 0 <= k <= 8:
        raise ValueError("moment order supported for 0 <= k <= 8")
    if k == 0:
        return hp(1.0)
    inv_sqrt_n = hp(1.0) / hp(n).sqrt()
    total = (-inv_sqrt_n).pow_int(k)
    truncated = False
    for m, rho in pass_survival_sequence(n):
        xk = (inv_sqrt_n * m).pow_int(k)
        xk_prev = (inv_sqrt_n * (m - 1)).pow_int(k)
        total = total + (xk - xk_prev) * rho
        truncated = m < n - 1
    if truncated:
        # remaining terms telescope below the survival floor times max(x)^k
        tail = SURVIVAL_FLOOR * float(n) ** (k / 2.0)
        total = HPReal(total.hi, total.lo, total.err + tail)
    return total


def scaled_pass_variance(n: int) -> HPReal:
    """Variance of (n - P_n)/sqrt(n)."""
    first = scaled_pass_moment(n, 1)
    second = scaled_pass_moment(n, 2)
    return second - first * first


def scaled_pass_charfn_exact(n: int, t: float) -> complex:
    """E exp(i t X) for X = (n - passes)/sqrt(n), from the exact lattice pmf.

    The pmf at lattice point m/sqrt(n) is the survival difference
    rho(m) - rho(m+1); the tail below the survival floor contributes
    less than the floor itself.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    sq = math.sqrt(n)
    total = 0.0 + 0.0j
    prev_m = None
    prev_rho = None
    for m, rho in pass_survival_sequence(n):
        if prev_m is not None:
            pmf = prev_rho - float(rho)
            total += cmath.exp(1j * t * prev_m / sq) * pmf
        prev_m, prev_rho = m, float(rho)
    # last lattice point keeps its full remaining mass
    total += cmath.exp(1j * t * prev_m / sq) * prev_rho
    return total


@lru_cache(maxsize=256)
def scaled_collision_moment(n: int, k: int) -> HPReal:
    """k-th moment of (C_n - 1)/sqrt(n), by Abel-transformed summation.

    E = sum_{j=1..n} ((j/sqrt n)^k - ((j-1)/sqrt n)^k) * P{C_n > j}
    with P{C_n > j} = collision_sf(n, j-1).
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if not 0 <= k <= 8:
        raise ValueError("moment order supported for 0 <= k <= 8")
    if k == 0:
        return hp(1.0)
    inv_sqrt_n = hp(1.0) / hp(n).sqrt()
    total = hp(0.0)
    truncated = False
    for m, sf in collision_survival_sequence(n):
        j = m + 1  # survival P{C > j} = collision_sf(n, j-1)
        xk = (inv_sqrt_n * j).pow_int(k)
        xk_prev = (inv_sqrt_n * (j - 1)).pow_int(k)
        total = total + (xk - xk_prev) * sf
        truncated = m < n - 1
    if truncated:
        tail = SURVIVAL_FLOOR * float(n) ** (k / 2.0)
        total = HPReal(total.hi, total.lo, total.err + tail)
    return total
