"""Deterministic ledger for the nine-step dealer fail scenario.

The dealer takes a client's cash against specific notes it has not yet
delivered, finances a bonds-versus-bonds borrowing at the auction, sells
and later repurchases the notes, and unwinds everything at the closing
leg.  One period, per-period rates, a single scenario-supplied
intermediate price (no path model).

Steps, executed strictly in order:

1. receive client cash: loan = spot_value * (1 - special_haircut)
2. lend cash against general collateral: pay spot_value * (1 - general_haircut)
3. borrow the specific notes at the auction, pledge the general
   collateral, pay the fee
4. sell the specific notes at the spot price
5. repurchase the specific notes at the intermediate price
6. deliver the specific notes to the client (curing the starting-leg fail)
7. closing leg: receive the notes back, repay the client loan with interest
8. closing leg: return the notes to the auction, recover the collateral
9. closing leg: collect the general loan repayment, release the collateral

Funding discipline: during steps 1-6 the dealer has no cash source other
than the scenario itself, so the running balance must stay non-negative
(the fee-funding condition binds at step 3).  The closing-leg steps 7-9
settle together; their net is covered when the closing condition holds —
interest-and-fee carry alone in strict mode, carry plus the realized
trading gain in non-strict mode.  Timing inside the closing leg does not
change the final cash, only whether an intra-leg balance dips below zero,
which is why the leg is assessed as a net.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import LiquidityError, ValidationError

RELATIVE_TOLERANCE = 1e-9


@dataclass(frozen=True)
class DealerScenario:
    """Inputs of one dealer fail scenario; rates are per period."""

    note_count: int
    note_spot: float
    intermediate_price: float
    special_rate: float
    general_rate: float
    special_haircut: float
    general_haircut: float
    fed_fee: float

    def __post_init__(self):
        if not isinstance(self.note_count, int) or isinstance(self.note_count, bool) \
                or self.note_count < 1:
            raise ValidationError(f"note_count must be an integer >= 1, "
                                  f"got {self.note_count!r}")
        for name in ("note_spot", "intermediate_price"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0.0):
                raise ValidationError(f"{name} must be > 0, got {value!r}")
        for name in ("special_rate", "general_rate"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > -1.0):
                raise ValidationError(f"{name} must be a finite per-period rate > -1, "
                                      f"got {value!r}")
        for name in ("special_haircut", "general_haircut"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value < 1.0):
                raise ValidationError(f"{name} must be < 1, got {value!r}")
        if not (math.isfinite(self.fed_fee) and self.fed_fee >= 0.0):
            raise ValidationError(f"fed_fee must be >= 0, got {self.fed_fee!r}")

    @property
    def spot_value(self) -> float:
        """Value of the specific notes at the starting leg."""
        return self.note_spot * self.note_count

    @property
    def intermediate_value(self) -> float:
        """Cost of repurchasing the notes at the intermediate leg."""
        return self.intermediate_price * self.note_count

    @property
    def client_loan(self) -> float:
        return self.spot_value * (1.0 - self.special_haircut)

    @property
    def general_lend(self) -> float:
        return self.spot_value * (1.0 - self.general_haircut)

    @property
    def client_repayment(self) -> float:
        return self.client_loan * (1.0 + self.special_rate)

    @property
    def general_repayment(self) -> float:
        return self.general_lend * (1.0 + self.general_rate)


@dataclass(frozen=True)
class LedgerStep:
    """One executed step with deltas and the balances after it."""

    step: int
    label: str
    cash_delta: float
    note_delta: int
    collateral_delta: float
    cash: float
    notes: int
    collateral: float

    def to_record(self) -> dict:
        return {
            "step": self.step,
            "label": self.label,
            "cash_delta": self.cash_delta,
            "note_delta": self.note_delta,
            "collateral_delta": self.collateral_delta,
            "cash": self.cash,
            "notes": self.notes,
            "collateral": self.collateral,
        }


@dataclass
class LedgerState:
    """Cash and securities positions plus the ordered step log."""

    cash: float = 0.0
    specific_notes: int = 0
    general_collateral: float = 0.0
    step_log: list[LedgerStep] = field(default_factory=list)

    def apply(self, step: int, label: str, cash_delta: float = 0.0,
              note_delta: int = 0, collateral_delta: float = 0.0) -> None:
        self.cash += cash_delta
        self.specific_notes += note_delta
        self.general_collateral += collateral_delta
        self.step_log.append(LedgerStep(
            step=step, label=label, cash_delta=cash_delta, note_delta=note_delta,
            collateral_delta=collateral_delta, cash=self.cash,
            notes=self.specific_notes, collateral=self.general_collateral))

    def to_records(self) -> list[dict]:
        return [entry.to_record() for entry in self.step_log]


def replay_step_log(records: list[dict]) -> LedgerState:
    """Rebuild a LedgerState by re-applying serialized step records."""
    state = LedgerState()
    for record in records:
        state.apply(record["step"], record["label"], record["cash_delta"],
                    record["note_delta"], record["collateral_delta"])
    return state


@dataclass(frozen=True)
class LiquidityCondition:
    """One funding condition with its slack (negative slack = violated)."""

    name: str
    slack: float
    satisfied: bool
    enforced: bool


@dataclass(frozen=True)
class CashflowReport:
    """Decomposition of the dealer's final cash position.

    interest_and_fees = general_lend * general_rate
                        - client_loan * special_rate - fed_fee
    speculative       = spot_value - intermediate_value
    total             = interest_and_fees + speculative
    ledger_cash       = final cash from replaying the nine steps
    """

    interest_and_fees: float
    speculative: float
    total: float
    ledger_cash: float

    @property
    def decomposition_gap(self) -> float:
        return self.ledger_cash - self.total


def _conditions(s: DealerScenario, strict: bool) -> dict[str, float]:
    carry = -s.fed_fee + s.general_lend * s.general_rate - s.client_loan * s.special_rate
    return {
        "fee_funding": s.client_loan - s.general_lend - s.fed_fee,
        "note_repurchase": s.spot_value - s.intermediate_value,
        "closing_strict": carry,
        "closing_weak": s.spot_value - s.intermediate_value + carry,
    }


def check_liquidity(s: DealerScenario, strict: bool = True) -> list[LiquidityCondition]:
    """Evaluate all four funding conditions without running the ledger.

    fee_funding must hold in either mode; the closing condition that
    `strict` selects is marked enforced; note_repurchase is advisory
    (the running balance governs the repurchase step, since earlier
    slack may legitimately fund a price above the starting spot).
    """
    tolerance = RELATIVE_TOLERANCE * s.spot_value
    enforced = {
        "fee_funding": True,
        "note_repurchase": False,
        "closing_strict": strict,
        "closing_weak": not strict,
    }
    return [LiquidityCondition(name=name, slack=slack,
                               satisfied=slack >= -tolerance, enforced=enforced[name])
            for name, slack in _conditions(s, strict).items()]


def run_dealer_scenario(s: DealerScenario,
                        strict: bool = True) -> tuple[LedgerState, CashflowReport]:
    """Execute the nine steps, enforcing the funding discipline.

    Raises LiquidityError naming the first unfundable step: steps 1-6 if
    the running cash balance would go negative, step 7 if the applicable
    closing condition fails.  strict=True (default) requires the carry
    alone to cover the closing leg; strict=False also counts the realized
    trading gain.
    """
    tolerance = RELATIVE_TOLERANCE * s.spot_value
    conditions = _conditions(s, strict)
    state = LedgerState()

    opening = [
        (1, "receive client loan against promised specific notes",
         dict(cash_delta=s.client_loan)),
        (2, "lend cash against general collateral",
         dict(cash_delta=-s.general_lend, collateral_delta=s.spot_value)),
        (3, "borrow specific notes at the auction, pledge collateral, pay fee",
         dict(cash_delta=-s.fed_fee, note_delta=s.note_count,
              collateral_delta=-s.spot_value)),
        (4, "sell specific notes at the starting spot price",
         dict(cash_delta=s.spot_value, note_delta=-s.note_count)),
        (5, "repurchase specific notes at the intermediate price",
         dict(cash_delta=-s.intermediate_value, note_delta=s.note_count)),
        (6, "deliver specific notes to the client", dict(note_delta=-s.note_count)),
    ]
    for step, label, deltas in opening:
        state.apply(step, label, **deltas)
        if state.cash < -tolerance:
            raise LiquidityError(
                f"step {step} ({label}) would drive cash to {state.cash:.6g}",
                step=step, condition="running_balance", slack=state.cash)

    closing_name = "closing_strict" if strict else "closing_weak"
    closing_slack = conditions[closing_name]
    if closing_slack < -tolerance:
        raise LiquidityError(
            f"closing leg underfunded: {closing_name} slack {closing_slack:.6g}",
            step=7, condition=closing_name, slack=closing_slack)

    state.apply(7, "closing leg: receive notes back, repay client loan with interest",
                cash_delta=-s.client_repayment, note_delta=s.note_count)
    state.apply(8, "closing leg: return notes to the auction, recover collateral",
                note_delta=-s.note_count, collateral_delta=s.spot_value)
    state.apply(9, "closing leg: collect general loan repayment, release collateral",
                cash_delta=s.general_repayment, collateral_delta=-s.spot_value)

    interest_and_fees = (s.general_lend * s.general_rate
                         - s.client_loan * s.special_rate - s.fed_fee)
    speculative = s.spot_value - s.intermediate_value
    report = CashflowReport(interest_and_fees=interest_and_fees,
                            speculative=speculative,
                            total=interest_and_fees + speculative,
                            ledger_cash=state.cash)
    return state, report
