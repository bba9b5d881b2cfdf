"""Gaussian forward-price toolkit: censored and option-payoff moments.

The forward price is modelled as X ~ Normal(mean, sd^2) in currency units.
This module owns the closed forms for the moments the pricing engines need:

    E[min(K, X)]  = mu - [(mu - K) * Phi(d) + sd * phi(d)],  d = (mu - K) / sd
    E[max(K, X)]  = K + mu - E[min(K, X)]
    E[(K - X)^+]  = (K - mu) * Phi(d') + sd * phi(d'),       d' = (K - mu) / sd
    Var[min(K,X)] via the lower partial moments of (c - Z)^+, c = (K - mu)/sd

The normal model admits negative prices; no truncation is applied.  That is
a deliberate model caveat, not an oversight.

All functions are pure and safe for unlimited concurrent callers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ValidationError

SQRT_2 = math.sqrt(2.0)
INV_SQRT_2PI = 1.0 / math.sqrt(2.0 * math.pi)


@dataclass(frozen=True)
class GaussianParams:
    """Mean and absolute standard deviation of the forward price."""

    mean: float
    sd: float

    def __post_init__(self):
        if not math.isfinite(self.mean):
            raise ValidationError(f"forward mean must be finite, got {self.mean!r}")
        if not (math.isfinite(self.sd) and self.sd >= 0.0):
            raise ValidationError(f"forward sd must be finite and >= 0, got {self.sd!r}")


def std_normal_pdf(x: float) -> float:
    """Standard normal density phi(x) = exp(-x^2/2) / sqrt(2*pi)."""
    return INV_SQRT_2PI * math.exp(-0.5 * x * x)


def std_normal_cdf(x: float) -> float:
    """Standard normal CDF via erfc, accurate to well below 1e-12 absolute.

    Phi(x) = erfc(-x / sqrt(2)) / 2.  The erfc form keeps the lower tail
    accurate in relative terms instead of cancelling against 1.
    """
    return 0.5 * math.erfc(-x / SQRT_2)


def censored_min_mean(strike: float, g: GaussianParams) -> float:
    """E[min(strike, X)] for X ~ Normal(g.mean, g.sd^2).

    Uses min(K, X) = X - (X - K)^+ with the call-payoff mean
    E[(X-K)^+] = (mu - K) * Phi(d) + sd * phi(d),  d = (mu - K) / sd.
    """
    if g.sd == 0.0:
        return min(strike, g.mean)
    d = (g.mean - strike) / g.sd
    # payoff mean is >= 0 by definition; guard the floating-point dust
    excess = max((g.mean - strike) * std_normal_cdf(d) + g.sd * std_normal_pdf(d), 0.0)
    return g.mean - excess


def censored_max_mean(strike: float, g: GaussianParams) -> float:
    """E[max(strike, X)]; complementary to censored_min_mean.

    max(K, X) = K + (X - K)^+, so the same call-payoff mean applies and
    E[min] + E[max] = K + mu holds by construction.
    """
    if g.sd == 0.0:
        return max(strike, g.mean)
    d = (g.mean - strike) / g.sd
    excess = max((g.mean - strike) * std_normal_cdf(d) + g.sd * std_normal_pdf(d), 0.0)
    return strike + excess


def censored_min_sd(strike: float, g: GaussianParams) -> float:
    """Standard deviation of min(strike, X).

    Standardize with c = (strike - mean) / sd and write
    min(c, Z) = c - (c - Z)^+.  The partial moments

        E[(c-Z)^+]     = c * Phi(c) + phi(c)
        E[((c-Z)^+)^2] = (1 + c^2) * Phi(c) + c * phi(c)

    give Var[min(c, Z)] as a difference of two small quantities, which
    stays accurate precisely in the heavily censored regime the repo
    pipeline lives in (strike several sigmas below the mean).
    """
    if g.sd == 0.0:
        return 0.0
    c = (strike - g.mean) / g.sd
    cdf_c = std_normal_cdf(c)
    pdf_c = std_normal_pdf(c)
    first = c * cdf_c + pdf_c
    second = (1.0 + c * c) * cdf_c + c * pdf_c
    var = second - first * first
    # censoring can only shrink variance: clamp to [0, 1] against rounding
    var = min(max(var, 0.0), 1.0)
    return g.sd * math.sqrt(var)


def put_payoff_mean(strike: float, g: GaussianParams) -> float:
    """E[(strike - X)^+], the mean payoff of a put struck at `strike`.

    Closed form: (K - mu) * Phi(d) + sd * phi(d) with d = (K - mu) / sd.
    """
    if g.sd == 0.0:
        return max(strike - g.mean, 0.0)
    d = (strike - g.mean) / g.sd
    return max((strike - g.mean) * std_normal_cdf(d) + g.sd * std_normal_pdf(d), 0.0)
