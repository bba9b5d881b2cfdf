"""Special repo analytics: lender-fail put pricing and fee/haircut algebra.

Two sign conventions coexist and are kept in separate types on purpose:

* SpecialLenderQuote (lender-fail): the specialness shows up as a premium
  ADDED to the loan, lent_amount = spot + premium.  The securities lender
  is long an implicit European put struck at the repurchase price.
* SpecialRepoRelations (dealer-fail): the specialness shows up as a
  haircut SUBTRACTED from the loan, client loan = spot * (1 - special_haircut).

Never mix fields across the two conventions.

The relations algebra is pure per-period arithmetic.  Feed it per-period
rates only; annualize at the reporting layer.  Given consistent inputs:

    (1 + special_rate) * (1 - special_haircut)
        = (1 + general_rate) * (1 - general_haircut)         [balance]
    fee_rate = (general_rate - special_rate) * (1 - general_haircut)
               / (1 + special_rate)                          [auction fee]
    fee_rate = general_haircut - special_haircut             [equivalent]
    max_fee  = spot * (1 - special_haircut)
               * (general_rate - special_rate) / (1 + general_rate)
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .blackscholes import BsInputs, bs_put
from .errors import ValidationError
from .general_repo import MarketParams, forward_gaussian
from .stochastic import put_payoff_mean

REGIME_TOLERANCE = 1e-9


@dataclass(frozen=True)
class SpecialLenderQuote:
    """Lender-fail pricing output (premium convention).

    premium and put_value_mean are currency units; special_rate is per
    annum; trader_return is per period.  lent_amount = spot + premium.
    """

    premium: float
    premium_rate: float
    lent_amount: float
    repurchase_price: float
    special_rate: float
    put_value_mean: float
    trader_return: float


@dataclass(frozen=True)
class SpecialRepoRelations:
    """Consistent (rates, haircuts, fee) tuple in per-period terms.

    general_rate, special_rate, general_haircut, special_haircut and
    fee_rate are per-period fractions; max_fee and general_lend are
    currency amounts for the given spot value.
    """

    general_rate: float
    special_rate: float
    general_haircut: float
    special_haircut: float
    fee_rate: float
    max_fee: float
    general_lend: float

    def balance_residual(self) -> float:
        """(1+special_rate)(1-special_haircut) - (1+general_rate)(1-general_haircut)."""
        return ((1.0 + self.special_rate) * (1.0 - self.special_haircut)
                - (1.0 + self.general_rate) * (1.0 - self.general_haircut))

    def validate(self, tolerance: float = REGIME_TOLERANCE) -> None:
        residual = self.balance_residual()
        if abs(residual) > tolerance:
            raise ValidationError(f"inconsistent special-repo relations: balance "
                                  f"residual {residual:.3e} exceeds {tolerance:.0e}")


def price_lender_fail(m: MarketParams, repurchase_price: float) -> SpecialLenderQuote:
    """Price the securities lender's implicit put (lender-fail model).

    The premium is the Black-Scholes put struck at the repurchase price;
    the loan is spot + premium, which drives the special rate down (deeply
    negative near the forward mean).  put_value_mean is the Gaussian-model
    mean payoff of the same put.  trader_return = put_value_mean/premium - 1
    per period, defined as 0 when the premium is zero (no premium at risk).
    """
    premium = bs_put(BsInputs(spot=m.spot_price, strike=repurchase_price,
                              rate=m.risk_free_rate, vol=m.volatility,
                              tenor=m.period_years))
    lent_amount = m.spot_price + premium
    special_rate_pa = (repurchase_price / lent_amount - 1.0) / m.period_years
    put_value = put_payoff_mean(repurchase_price, forward_gaussian(m))
    trader_return = put_value / premium - 1.0 if premium > 0.0 else 0.0
    return SpecialLenderQuote(
        premium=premium,
        premium_rate=premium / m.spot_price,
        lent_amount=lent_amount,
        repurchase_price=repurchase_price,
        special_rate=special_rate_pa,
        put_value_mean=put_value,
        trader_return=trader_return,
    )


def _check_finite(**values: float) -> None:
    for name, value in values.items():
        if not math.isfinite(value):
            raise ValidationError(f"{name} must be finite, got {value!r}")


def fed_fee_rate(general_rate: float, special_rate: float,
                 general_haircut: float) -> float:
    """Auction fee rate (fraction of collateral value), per period.

    (general_rate - special_rate) * (1 - general_haircut) / (1 + special_rate)
    """
    _check_finite(general_rate=general_rate, special_rate=special_rate,
                  general_haircut=general_haircut)
    if special_rate <= -1.0:
        raise ValidationError(f"special_rate must be > -1, got {special_rate!r}")
    return (general_rate - special_rate) * (1.0 - general_haircut) / (1.0 + special_rate)


def max_fed_fee(spot_price: float, special_haircut: float, general_rate: float,
                special_rate: float) -> float:
    """Largest auction fee the dealer can fund, in currency units.

    spot * (1 - special_haircut) * (general_rate - special_rate) / (1 + general_rate)
    """
    _check_finite(spot_price=spot_price, special_haircut=special_haircut,
                  general_rate=general_rate, special_rate=special_rate)
    if spot_price <= 0.0:
        raise ValidationError(f"spot_price must be > 0, got {spot_price!r}")
    if special_haircut >= 1.0:
        raise ValidationError(f"special_haircut must be < 1, got {special_haircut!r}")
    if general_rate <= -1.0:
        raise ValidationError(f"general_rate must be > -1, got {general_rate!r}")
    return (spot_price * (1.0 - special_haircut) * (general_rate - special_rate)
            / (1.0 + general_rate))


def special_haircut(general_haircut: float, general_rate: float,
                    special_rate: float) -> float:
    """Special haircut consistent with the balance identity.

    (general_haircut * (1 + general_rate) - (general_rate - special_rate))
        / (1 + special_rate)
    """
    _check_finite(general_haircut=general_haircut, general_rate=general_rate,
                  special_rate=special_rate)
    if special_rate <= -1.0:
        raise ValidationError(f"special_rate must be > -1, got {special_rate!r}")
    return ((general_haircut * (1.0 + general_rate) - (general_rate - special_rate))
            / (1.0 + special_rate))


def special_rate(general_haircut: float, special_haircut: float,
                 general_rate: float) -> float:
    """Special rate consistent with the balance identity, per period.

    (general_rate - general_haircut * (1 + general_rate) + special_haircut)
        / (1 - special_haircut)
    """
    _check_finite(general_haircut=general_haircut, special_haircut=special_haircut,
                  general_rate=general_rate)
    if special_haircut >= 1.0:
        raise ValidationError(f"special_haircut must be < 1, got {special_haircut!r}")
    return ((general_rate - general_haircut * (1.0 + general_rate) + special_haircut)
            / (1.0 - special_haircut))


# the builder's keyword arguments shadow the two operation names above
_haircut_from_rates = special_haircut
_rate_from_haircuts = special_rate


def build_special_relations(spot_price: float, general_haircut: float,
                            general_rate: float, *,
                            special_haircut: float | None = None,
                            special_rate: float | None = None) -> SpecialRepoRelations:
    """Complete a consistent relations tuple from one special-side input.

    Exactly one of special_haircut / special_rate may be omitted; it is
    derived from the balance identity.  If both are given they must already
    satisfy the identity to within 1e-9.
    """
    if special_haircut is None and special_rate is None:
        raise ValidationError("need special_haircut or special_rate (or both)")
    if spot_price <= 0.0 or not math.isfinite(spot_price):
        raise ValidationError(f"spot_price must be > 0, got {spot_price!r}")
    if special_rate is None:
        special_rate = _rate_from_haircuts(general_haircut, special_haircut, general_rate)
    elif special_haircut is None:
        special_haircut = _haircut_from_rates(general_haircut, general_rate, special_rate)
    rel = SpecialRepoRelations(
        general_rate=general_rate,
        special_rate=special_rate,
        general_haircut=general_haircut,
        special_haircut=special_haircut,
        fee_rate=fed_fee_rate(general_rate, special_rate, general_haircut),
        max_fee=max_fed_fee(spot_price, special_haircut, general_rate, special_rate),
        general_lend=spot_price * (1.0 - general_haircut),
    )
    rel.validate()
    return rel


def classify_regime(rel: SpecialRepoRelations) -> str:
    """Name the market regime of a consistent relations tuple.

    guaranteed_delivery: special_haircut = 0 (delivery certain, the
        special rate sinks to roughly minus the general haircut);
    stressed: special_rate = 0 with a positive auction fee;
    no_demand: auction fee = 0, so special and general rates coincide;
    normal: anything else.  Ties resolve in that priority order, each
    zero test at 1e-9 absolute.
    """
    rel.validate()
    if abs(rel.special_haircut) <= REGIME_TOLERANCE:
        return "guaranteed_delivery"
    if abs(rel.special_rate) <= REGIME_TOLERANCE and rel.fee_rate > 0.0:
        return "stressed"
    if abs(rel.fee_rate) <= REGIME_TOLERANCE:
        return "no_demand"
    return "normal"
