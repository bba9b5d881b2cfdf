"""Command-line front end: scenario files in, structured reports out.

Commands
--------

``price-general <scenario>``
    Full collateralised-lending quote (haircut, rates, implicit-call
    yield) plus the option-pricing benchmark for the same strike.
``price-special <scenario>``
    Lender-fail quote (``special_lender`` scenarios) or rate/haircut
    relations with regime classification (``special_relations``).
``dealer-sim <scenario> [--no-strict]``
    Nine-step dealer ledger with liquidity slacks and the cash
    decomposition; strict mode (default) requires the closing carry to be
    self-funding on its own.
``reproduce-examples [--mc] [--day-count {360,365}]``
    Recompute every bundled reference figure and compare to tolerance;
    ``--mc`` adds seeded simulation cross-checks; ``--day-count 365``
    demonstrates convention sensitivity (reference values assume 360).
``compare-bs <scenario> --strikes <list>``
    Haircut vs option-pricing benchmark across a comma-separated list of
    repurchase prices.

Global flags: ``--format json|csv|table`` (default table), ``--seed``
(simulation seed override; also enables the oracle section on pricing
commands), ``--out PATH``.

Exit codes: 0 success, 2 parse error, 3 validation error, 4 pricing or
tolerance failure, 5 liquidity failure.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import __version__
from .dealer import check_liquidity, run_dealer_scenario
from .errors import (
    EXIT_OK,
    EXIT_PARSE,
    EXIT_PRICING,
    ParseError,
    RepoOptionsError,
    ToleranceError,
    ValidationError,
)
from .general_repo import (
    bs_haircut,
    forward_gaussian,
    haircut_identity_residual,
    lender_rate_from_bs,
    price_general_repo,
)
from .montecarlo import McEstimate, mc_sample_stats
from .reference import DEFAULT_MC_N, DEFAULT_MC_SEED, build_reference_rows
from .reports import FORMATS, build_report, rate_per_annum, rate_per_period, render
from .scenarios import (
    Scenario,
    dealer_from_scenario,
    load_scenario,
    relations_from_scenario,
    resolve_strike,
)
from .special_repo import classify_regime, price_lender_fail

#: Identity residual beyond this is a computation fault, not rounding.
IDENTITY_TOLERANCE = 1e-10

#: Oracle sample size when --seed is given without an mc section.
DEFAULT_ORACLE_N = 1_000_000


def _require_kind(scenario: Scenario, *kinds: str) -> None:
    if scenario.kind not in kinds:
        expected = " or ".join(repr(k) for k in kinds)
        raise ValidationError(
            f"scenario kind {scenario.kind!r} not supported by this command "
            f"(expected {expected})"
        )


def _oracle_settings(scenario: Scenario, seed_override: int | None) -> tuple[int, int] | None:
    """Resolve (n, seed) for the simulation cross-check, or None to skip it."""

    if scenario.mc is not None:
        seed = seed_override if seed_override is not None else scenario.mc.seed
        return scenario.mc.n, seed
    if seed_override is not None:
        return DEFAULT_ORACLE_N, seed_override
    return None


def _z_score(delta: float, se: float) -> float:
    return delta / se if se > 0.0 else 0.0


def _oracle_section(
    mode: str,
    strike: float,
    scenario: Scenario,
    closed_mean: float,
    closed_sd: float | None,
    settings: tuple[int, int],
) -> tuple[dict, McEstimate]:
    n, seed = settings
    est = mc_sample_stats(strike, forward_gaussian(scenario.market), n, seed, mode)
    section: dict = {
        "mode": mode,
        "n": est.n_samples,
        "seed": est.seed,
        "estimate": {
            "mean": est.mean,
            "sd": est.sd,
            "se_mean": est.se_mean,
            "se_sd": est.se_sd,
        },
        "closed_form": {"mean": closed_mean},
        "delta_mean": closed_mean - est.mean,
        "z_mean": _z_score(closed_mean - est.mean, est.se_mean),
    }
    if closed_sd is not None:
        section["closed_form"]["sd"] = closed_sd
        section["delta_sd"] = closed_sd - est.sd
        section["z_sd"] = _z_score(closed_sd - est.sd, est.se_sd)
    return section, est


def general_report(scenario: Scenario, seed_override: int | None = None) -> dict:
    """Report document for a ``general`` scenario."""

    market = scenario.market
    strike = resolve_strike(scenario)
    quote = price_general_repo(market, strike)
    benchmark = bs_haircut(market, strike)
    residual = haircut_identity_residual(quote, market)
    if abs(residual) > IDENTITY_TOLERANCE:
        raise ToleranceError(
            f"haircut identity residual {residual:.3e} exceeds {IDENTITY_TOLERANCE:.0e}"
        )
    dc, td = market.day_count, market.tenor_days
    outputs = {
        "currency": scenario.currency,
        "quote": {
            "repurchase_price": quote.repurchase_price,
            "lent_amount": quote.lent_amount,
            "haircut": quote.haircut,
            "haircut_rate": quote.haircut_rate,
            "repo_rate": rate_per_annum(quote.repo_rate, dc),
            "lender_rate": rate_per_annum(quote.lender_rate, dc),
            "revenue_mean": quote.revenue_mean,
            "revenue_sd_abs": quote.revenue_sd_abs,
            "revenue_sd_pct_of_spot": 100.0 * quote.revenue_sd,
            "option_value_mean": quote.option_value_mean,
            "option_yield": rate_per_period(quote.option_yield, td),
            "forward_mean": quote.forward_mean,
        },
        "benchmark": {
            "bs_haircut": benchmark,
            "haircut_gap": quote.haircut - benchmark,
            "lender_rate_bs": rate_per_annum(lender_rate_from_bs(market, strike), dc),
        },
        "identity_residual": residual,
    }
    oracle = None
    seed = None
    settings = _oracle_settings(scenario, seed_override)
    if settings is not None:
        oracle, est = _oracle_section(
            "min", strike, scenario, quote.revenue_mean, quote.revenue_sd_abs, settings
        )
        seed = est.seed
    return build_report(
        command="price-general",
        inputs=scenario.raw,
        outputs=outputs,
        oracle=oracle,
        seed=seed,
    )


def special_lender_report(scenario: Scenario, seed_override: int | None = None) -> dict:
    """Report document for a ``special_lender`` scenario."""

    market = scenario.market
    strike = resolve_strike(scenario)
    quote = price_lender_fail(market, strike)
    dc, td = market.day_count, market.tenor_days
    outputs = {
        "currency": scenario.currency,
        "quote": {
            "premium": quote.premium,
            "premium_rate": quote.premium_rate,
            "lent_amount": quote.lent_amount,
            "repurchase_price": quote.repurchase_price,
            "special_rate": rate_per_annum(quote.special_rate, dc),
            "put_value_mean": quote.put_value_mean,
            "trader_return": rate_per_period(quote.trader_return, td),
        },
    }
    oracle = None
    seed = None
    settings = _oracle_settings(scenario, seed_override)
    if settings is not None:
        oracle, est = _oracle_section(
            "put-payoff", strike, scenario, quote.put_value_mean, None, settings
        )
        seed = est.seed
    return build_report(
        command="price-special",
        inputs=scenario.raw,
        outputs=outputs,
        oracle=oracle,
        seed=seed,
    )


def special_relations_report(scenario: Scenario) -> dict:
    """Report document for a ``special_relations`` scenario."""

    market = scenario.market
    rel = relations_from_scenario(scenario)
    regime = classify_regime(rel)
    dc, td = market.day_count, market.tenor_days
    per_year = 1.0 / market.period_years
    outputs = {
        "currency": scenario.currency,
        "relations": {
            "general_haircut": rel.general_haircut,
            "special_haircut": rel.special_haircut,
            "general_rate": rate_per_period(rel.general_rate, td),
            "special_rate": rate_per_period(rel.special_rate, td),
            "general_rate_pa": rate_per_annum(rel.general_rate * per_year, dc),
            "special_rate_pa": rate_per_annum(rel.special_rate * per_year, dc),
            "fee_rate": rate_per_period(rel.fee_rate, td),
            "max_fee": rel.max_fee,
            "general_lend": rel.general_lend,
            "balance_residual": rel.balance_residual(),
            "regime": regime,
        },
    }
    return build_report(command="price-special", inputs=scenario.raw, outputs=outputs)


def dealer_report(scenario: Scenario, strict: bool) -> dict:
    """Report document for a ``dealer`` scenario (raises on liquidity failure)."""

    ds = dealer_from_scenario(scenario)
    state, cashflow = run_dealer_scenario(ds, strict)
    conditions = check_liquidity(ds, strict)
    td = scenario.market.tenor_days
    outputs = {
        "currency": scenario.currency,
        "strict": strict,
        "resolved_fed_fee": ds.fed_fee,
        "rates": {
            "special_rate": rate_per_period(ds.special_rate, td),
            "general_rate": rate_per_period(ds.general_rate, td),
        },
        "steps": state.to_records(),
        "liquidity": [
            {
                "name": c.name,
                "slack": c.slack,
                "satisfied": c.satisfied,
                "enforced": c.enforced,
            }
            for c in conditions
        ],
        "cashflow": {
            "interest_and_fees": cashflow.interest_and_fees,
            "speculative": cashflow.speculative,
            "total": cashflow.total,
            "ledger_cash": cashflow.ledger_cash,
            "decomposition_gap": cashflow.decomposition_gap,
        },
    }
    return build_report(command="dealer-sim", inputs=scenario.raw, outputs=outputs)


def reproduce_report(day_count: int, mc: bool, seed: int, n: int) -> dict:
    """Report document for ``reproduce-examples``."""

    rows = build_reference_rows(day_count, mc=mc, seed=seed, n=n)
    failures = [row.name for row in rows if not row.within]
    outputs = {
        "rows": [row.to_record() for row in rows],
        "all_within": not failures,
        "failures": failures,
    }
    inputs = {"day_count": day_count, "mc": {"enabled": mc, "n": n if mc else None, "seed": seed if mc else None}}
    return build_report(
        command="reproduce-examples",
        inputs=inputs,
        outputs=outputs,
        seed=seed if mc else None,
    )


def compare_bs_report(scenario: Scenario, strikes: list[float]) -> dict:
    """Report document for ``compare-bs``: haircut vs benchmark per strike."""

    market = scenario.market
    rows = []
    for strike in strikes:
        quote = price_general_repo(market, strike)
        benchmark = bs_haircut(market, strike)
        rows.append(
            {
                "strike": strike,
                "haircut": quote.haircut,
                "bs_haircut": benchmark,
                "gap": quote.haircut - benchmark,
            }
        )
    outputs = {"currency": scenario.currency, "rows": rows}
    return build_report(command="compare-bs", inputs=scenario.raw, outputs=outputs)


def _emit(doc: dict, args: argparse.Namespace) -> None:
    text = render(doc, args.format)
    if args.out:
        Path(args.out).write_text(text, "utf-8")
    else:
        sys.stdout.write(text)


def cmd_price_general(args: argparse.Namespace) -> int:
    scenario = load_scenario(args.scenario)
    _require_kind(scenario, "general")
    _emit(general_report(scenario, seed_override=args.seed), args)
    return EXIT_OK


def cmd_price_special(args: argparse.Namespace) -> int:
    scenario = load_scenario(args.scenario)
    _require_kind(scenario, "special_lender", "special_relations")
    if scenario.kind == "special_lender":
        doc = special_lender_report(scenario, seed_override=args.seed)
    else:
        doc = special_relations_report(scenario)
    _emit(doc, args)
    return EXIT_OK


def cmd_dealer_sim(args: argparse.Namespace) -> int:
    scenario = load_scenario(args.scenario)
    _require_kind(scenario, "dealer")
    _emit(dealer_report(scenario, strict=not args.no_strict), args)
    return EXIT_OK


def cmd_reproduce_examples(args: argparse.Namespace) -> int:
    seed = args.seed if args.seed is not None else DEFAULT_MC_SEED
    doc = reproduce_report(args.day_count, args.mc, seed, DEFAULT_MC_N)
    _emit(doc, args)
    failures = doc["outputs"]["failures"]
    if failures:
        print("tolerance failure: " + ", ".join(failures), file=sys.stderr)
        return EXIT_PRICING
    return EXIT_OK


def _parse_strikes(text: str) -> list[float]:
    try:
        values = [float(token) for token in text.split(",") if token.strip()]
    except ValueError as exc:
        raise ParseError(f"cannot parse --strikes list {text!r}: {exc}") from exc
    if not values:
        raise ParseError("--strikes list is empty")
    return values


def cmd_compare_bs(args: argparse.Namespace) -> int:
    scenario = load_scenario(args.scenario)
    _require_kind(scenario, "general")
    _emit(compare_bs_report(scenario, _parse_strikes(args.strikes)), args)
    return EXIT_OK


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="repo-options",
        description="Price the options implicit in collateralised lending: "
        "general-repo haircuts, lender-fail premiums, rate/haircut algebra, "
        "and the dealer financing ledger.",
    )
    parser.add_argument(
        "--version", action="version", version=f"%(prog)s {__version__}"
    )

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--format", choices=FORMATS, default="table", help="output format (default: table)"
    )
    common.add_argument(
        "--seed",
        type=int,
        default=None,
        help="simulation seed; on pricing commands also enables the oracle section",
    )
    common.add_argument("--out", default=None, metavar="PATH", help="write output to a file")

    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser(
        "price-general",
        parents=[common],
        help="price a general-collateral loan and its implicit call",
    )
    p.add_argument("scenario", help="path to a scenario JSON file (kind: general)")
    p.set_defaults(handler=cmd_price_general)

    p = sub.add_parser(
        "price-special",
        parents=[common],
        help="price a lender-fail loan or check special/general rate relations",
    )
    p.add_argument(
        "scenario",
        help="path to a scenario JSON file (kind: special_lender or special_relations)",
    )
    p.set_defaults(handler=cmd_price_special)

    p = sub.add_parser(
        "dealer-sim",
        parents=[common],
        help="run the nine-step dealer financing ledger",
    )
    p.add_argument("scenario", help="path to a scenario JSON file (kind: dealer)")
    p.add_argument(
        "--no-strict",
        action="store_true",
        help="let the realized trading gain count toward funding the closing leg",
    )
    p.set_defaults(handler=cmd_dealer_sim)

    p = sub.add_parser(
        "reproduce-examples",
        parents=[common],
        help="recompute all bundled reference figures and check tolerances",
    )
    p.add_argument(
        "--mc", action="store_true", help="add seeded simulation cross-check rows"
    )
    p.add_argument(
        "--day-count",
        type=int,
        choices=(360, 365),
        default=360,
        help="rate-year convention (reference values assume 360)",
    )
    p.set_defaults(handler=cmd_reproduce_examples)

    p = sub.add_parser(
        "compare-bs",
        parents=[common],
        help="compare pipeline haircuts against the option-pricing benchmark",
    )
    p.add_argument("scenario", help="path to a scenario JSON file (kind: general)")
    p.add_argument(
        "--strikes",
        required=True,
        help="comma-separated repurchase prices (currency units)",
    )
    p.set_defaults(handler=cmd_compare_bs)

    return parser


def main(argv: list[str] | None = None) -> int:
    """CLI entry point; returns the process exit code."""

    try:
        args = _build_parser().parse_args(argv)
    except SystemExit as exc:
        code = exc.code
        if code in (0, None):
            return EXIT_OK
        return EXIT_PARSE
    try:
        return args.handler(args)
    except RepoOptionsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
