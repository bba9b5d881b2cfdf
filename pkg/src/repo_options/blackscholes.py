"""Black-Scholes European call/put comparator.

Classical lognormal model, used as the benchmark the implicit-option
haircuts are compared against:

    d1 = [ln(S/K) + (r + vol^2/2) T] / (vol sqrt(T))
    d2 = d1 - vol sqrt(T)
    call = S Phi(d1) - K e^{-rT} Phi(d2)
    put  = K e^{-rT} Phi(-d2) - S Phi(-d1)

At vol = 0 both prices collapse to their deterministic discounted
intrinsic values.  No dividends, no American exercise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ValidationError
from .stochastic import std_normal_cdf

@dataclass(frozen=True)
class BsInputs:
    """Inputs of the lognormal pricer; tenor in years, rates per annum."""

    spot: float
    strike: float
    rate: float
    vol: float
    tenor: float

    def __post_init__(self):
        if not (math.isfinite(self.spot) and self.spot > 0.0):
            raise ValidationError(f"spot must be > 0, got {self.spot!r}")
        if not (math.isfinite(self.strike) and self.strike > 0.0):
            raise ValidationError(f"strike must be > 0, got {self.strike!r}")
        if not math.isfinite(self.rate):
            raise ValidationError(f"rate must be finite, got {self.rate!r}")
        if not (math.isfinite(self.vol) and self.vol >= 0.0):
            raise ValidationError(f"vol must be >= 0, got {self.vol!r}")
        if not (math.isfinite(self.tenor) and self.tenor > 0.0):
            raise ValidationError(f"tenor must be > 0 years, got {self.tenor!r}")


def _d1_d2(b: BsInputs) -> tuple[float, float]:
    srt = b.vol * math.sqrt(b.tenor)
    d1 = (math.log(b.spot / b.strike) + (b.rate + 0.5 * b.vol * b.vol) * b.tenor) / srt
    return d1, d1 - srt


def bs_call(b: BsInputs) -> float:
    """European call price; max(S - K e^{-rT}, 0) when vol = 0."""
    discounted_strike = b.strike * math.exp(-b.rate * b.tenor)
    if b.vol == 0.0:
        return max(b.spot - discounted_strike, 0.0)
    d1, d2 = _d1_d2(b)
    return max(b.spot * std_normal_cdf(d1) - discounted_strike * std_normal_cdf(d2), 0.0)


def bs_put(b: BsInputs) -> float:
    """European put price; max(K e^{-rT} - S, 0) when vol = 0."""
    discounted_strike = b.strike * math.exp(-b.rate * b.tenor)
    if b.vol == 0.0:
        return max(discounted_strike - b.spot, 0.0)
    d1, d2 = _d1_d2(b)
    return max(discounted_strike * std_normal_cdf(-d2) - b.spot * std_normal_cdf(-d1), 0.0)
