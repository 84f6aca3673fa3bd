"""Closed-form reference laws: Poisson, exponential, Rayleigh.

Also provides erfi and the standard normal CDF evaluated at purely
imaginary arguments, which the characteristic-function formulas need.
The Rayleigh scale parameter is named ``sigma``; note it is a scale, not
a rate like the exponential law's ``lam``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .hpreal import HPReal, PI, hp

SQRT2 = math.sqrt(2.0)
_TWO_OVER_SQRT_PI = 2.0 / math.sqrt(math.pi)

ERFI_MAX_ARG = 12.0


@dataclass(frozen=True)
class PoissonLaw:
    lam: float

    def __post_init__(self):
        if not self.lam >= 0.0:
            raise ValueError(f"Poisson rate must be >= 0, got {self.lam}")


@dataclass(frozen=True)
class ExponentialLaw:
    lam: float

    def __post_init__(self):
        if not self.lam > 0.0:
            raise ValueError(f"exponential rate must be > 0, got {self.lam}")


@dataclass(frozen=True)
class RayleighLaw:
    sigma: float

    def __post_init__(self):
        if not self.sigma > 0.0:
            raise ValueError(f"Rayleigh scale must be > 0, got {self.sigma}")


def poisson_pmf(law: PoissonLaw, k: int) -> float:
    """P{W = k} for W ~ Poisson(lam).

    Direct product below k = 30, log space above to dodge factorial
    overflow.
    """
    if k < 0:
        raise ValueError("Poisson support is the nonnegative integers")
    lam = law.lam
    if lam == 0.0:
        return 1.0 if k == 0 else 0.0
    if k <= 30:
        return lam ** k * math.exp(-lam) / math.factorial(k)
    return math.exp(k * math.log(lam) - lam - math.lgamma(k + 1))


def poisson_pmf_vector(law: PoissonLaw, kmax: int) -> list[float]:
    """PMF values for k = 0..kmax, by stable upward recurrence."""
    if kmax < 0:
        raise ValueError("kmax must be >= 0")
    lam = law.lam
    if lam == 0.0:
        return [1.0] + [0.0] * kmax
    out = [math.exp(-lam)]
    for k in range(1, kmax + 1):
        out.append(out[-1] * lam / k)
    return out


def exponential_sf(law: ExponentialLaw, w: float) -> float:
    """P{W > w} = exp(-lam * w)."""
    if w < 0:
        raise ValueError("exponential survival needs w >= 0")
    return math.exp(-law.lam * w)


def rayleigh_sf(law: RayleighLaw, w: float) -> float:
    """P{W > w} = exp(-w^2 / (2 sigma^2)).

    Delegates to the exponential survival with rate 1/sigma^2 at w^2/2,
    so rayleigh_sf(Ray(1), w) == exponential_sf(Exp(1), w^2/2) bit for
    bit.
    """
    if w < 0:
        raise ValueError("Rayleigh survival needs w >= 0")
    rate = 1.0 / (law.sigma * law.sigma)
    return exponential_sf(ExponentialLaw(rate), w * w / 2.0)


def rayleigh_moment(k: int) -> float:
    """k-th moment of the standard Rayleigh law: sqrt(2)^k Gamma(k/2 + 1)."""
    if k < 0:
        raise ValueError("moment order must be >= 0")
    return SQRT2 ** k * math.gamma(k / 2.0 + 1.0)


def erfi(x: float) -> float:
    """Imaginary error function (2/sqrt(pi)) * integral_0^x exp(t^2) dt.

    Taylor series in double-double over the whole supported range; every
    term has the sign of x, so there is no cancellation and the only
    limit is overflow of exp(x^2), guarded at |x| = 12.
    """
    if abs(x) > ERFI_MAX_ARG:
        raise ValueError(f"erfi supported for |x| <= {ERFI_MAX_ARG}, got {x}")
    if x == 0.0:
        return 0.0
    if x < 0.0:
        return -erfi(-x)
    xx = hp(x) * x
    term = hp(x)
    total = hp(x)
    k = 1
    while True:
        # term_k = x^(2k+1) / k!(2k+1); keep the running x^(2k+1)/k! part
        term = term * xx / k
        contrib = term / (2 * k + 1)
        total = total + contrib
        if abs(contrib.hi) <= 1e-34 * abs(total.hi):
            break
        k += 1
        if k > 400:  # unreachable within the guarded range
            raise RuntimeError("erfi series failed to converge")
    return float(total * _TWO_OVER_SQRT_PI)


def erfi_hp(x: float) -> HPReal:
    """erfi at double-double precision (used by characteristic functions)."""
    if abs(x) > ERFI_MAX_ARG:
        raise ValueError(f"erfi supported for |x| <= {ERFI_MAX_ARG}, got {x}")
    if x == 0.0:
        return hp(0.0)
    sign = 1.0
    if x < 0.0:
        sign, x = -1.0, -x
    xx = hp(x) * x
    term = hp(x)
    total = hp(x)
    k = 1
    while True:
        term = term * xx / k
        contrib = term / (2 * k + 1)
        total = total + contrib
        if abs(contrib.hi) <= 1e-34 * abs(total.hi):
            break
        k += 1
    return total * 2.0 / PI.sqrt() * sign


def normal_cdf_imag(t: float) -> complex:
    """Standard normal CDF at the purely imaginary point i*t.

    Phi(i t) = (1 + i erfi(t / sqrt 2)) / 2.
    """
    return complex(0.5, 0.5 * erfi(t / SQRT2))


def rayleigh_charfn(t: float) -> complex:
    """Characteristic function of the standard Rayleigh law.

    sqrt(2 pi) exp(-t^2/2) * (i t) * Phi(i t) + 1.
    """
    return (
        math.sqrt(2.0 * math.pi)
        * math.exp(-t * t / 2.0)
        * complex(0.0, t)
        * normal_cdf_imag(t)
        + 1.0
    )
