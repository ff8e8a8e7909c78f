"""Command-line surface.

Subcommands:
  compute    single value (exact text, decimal, JSON or CSV)
  table      (n, k) grid of one quantity as CSV/JSON
  verify     closed form vs quadrature oracle comparison report
  asymptote  exact vs leading-order values with their ratio
  density    CSV samples of a position/momentum density for plotting

Exit codes: 0 success, 1 computation failure (including failed
verification cells), 2 usage error.
"""

from __future__ import annotations

import json
import sys
from fractions import Fraction

import click
from mpmath import mp

from . import __version__
from .dirichlet import IntegralIndex, asymptotic_ink, theorem1_ink
from .exact import PiPolynomial, format_exact, pi_poly_eval
from .measures import (
    OrderError,
    momentum_entropic_moment,
    momentum_renyi_entropy,
    momentum_renyi_length,
    momentum_tsallis_entropy,
    position_renyi_entropy,
    position_renyi_length,
    position_tsallis_entropy,
    uncertainty_product,
    uncertainty_quotient,
    uncertainty_sum,
)
from .oracle import PrecisionError, run_verification
from .well import WellState, density_grid, energy, singular_points

QUANTITIES = ("ink", "w", "renyi", "tsallis", "length", "usum", "uquot", "uprod", "energy")


def _parse_range(text: str) -> tuple[int, int]:
    s = text.strip()
    if ".." in s:
        lo_s, hi_s = s.split("..", 1)
        lo, hi = int(lo_s), int(hi_s)
    else:
        lo = hi = int(s)
    if lo < 1 or hi < lo:
        raise click.UsageError(f"invalid range {text!r} (want 'lo..hi' with 1 <= lo <= hi)")
    return lo, hi


def _parse_rational(text: str) -> Fraction:
    try:
        value = Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise click.UsageError(f"invalid rational {text!r} (want 'p/q' or an integer)") from exc
    if value <= 0:
        raise click.UsageError(f"box half-width must be positive, got {text!r}")
    return value


def _evaluate(quantity, n, k, l, a, space, digits):
    """Compute one quantity; returns (exact PiPolynomial or None, DecimalValue)."""
    state = WellState(n, a)
    if quantity == "ink":
        poly = theorem1_ink(IntegralIndex(n, k))
        return poly, pi_poly_eval(poly, digits)
    if quantity == "energy":
        poly = energy(state)
        return poly, pi_poly_eval(poly, digits)
    if quantity == "w":
        mv = momentum_entropic_moment(state, k, digits)
    elif quantity == "renyi":
        fn = momentum_renyi_entropy if space == "momentum" else position_renyi_entropy
        mv = fn(state, k, digits)
    elif quantity == "tsallis":
        fn = momentum_tsallis_entropy if space == "momentum" else position_tsallis_entropy
        mv = fn(state, k, digits)
    elif quantity == "length":
        fn = momentum_renyi_length if space == "momentum" else position_renyi_length
        mv = fn(state, k, digits)
    elif quantity == "usum":
        mv = uncertainty_sum(state, k, l, digits)
    elif quantity == "uquot":
        mv = uncertainty_quotient(state, k, l, digits)
    elif quantity == "uprod":
        mv = uncertainty_product(state, k, l, digits)
    else:  # pragma: no cover - guarded by click.Choice
        raise click.UsageError(f"unknown quantity {quantity!r}")
    return mv.exact_part, mv.decimal


def _emit(text: str, output) -> None:
    if output:
        with open(output, "w") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
    else:
        click.echo(text)


@click.group()
@click.version_option(version=__version__, prog_name="infowell")
def main():
    """Exact kernel integrals and information measures of the 1D infinite well."""


@main.command("compute")
@click.option("--quantity", type=click.Choice(QUANTITIES), required=True)
@click.option("--n", type=int, default=1, show_default=True, help="Quantum number.")
@click.option("--k", type=int, default=1, show_default=True, help="Order / kernel power.")
@click.option("--l", "l_order", type=int, default=None, help="Momentum order for usum/uquot/uprod (defaults to k).")
@click.option("--a", "a_text", default="1", show_default=True, help="Box half-width as 'p/q'.")
@click.option("--space", type=click.Choice(["momentum", "position"]), default="momentum", show_default=True)
@click.option("--digits", type=int, default=25, show_default=True)
@click.option("--format", "fmt", type=click.Choice(["exact", "decimal", "json", "csv"]), default=None,
              help="Default: exact text when a closed form exists, else decimal.")
@click.option("--output", type=click.Path(dir_okay=False), default=None)
def cmd_compute(quantity, n, k, l_order, a_text, space, digits, fmt, output):
    """Compute a single value for one state and order."""
    a = _parse_rational(a_text)
    l = l_order if l_order is not None else k
    try:
        exact, decimal = _evaluate(quantity, n, k, l, a, space, digits)
    except OrderError as exc:
        raise click.UsageError(str(exc))
    except (ValueError, PrecisionError) as exc:
        raise click.ClickException(str(exc))

    if fmt is None:
        fmt = "exact" if exact is not None else "decimal"
    if fmt == "exact":
        if exact is None:
            raise click.UsageError(
                f"{quantity} has no exact closed form here; use --format decimal/json"
            )
        _emit(format_exact(exact), output)
    elif fmt == "decimal":
        _emit(mp.nstr(decimal.value, digits), output)
    elif fmt == "json":
        payload = {
            "quantity": quantity,
            "n": n,
            "k": k,
            "l": l,
            "a": str(a),
            "space": space,
            "exact": exact.to_json_dict() if exact is not None else None,
            "decimal": mp.nstr(decimal.value, digits),
            "digits": digits,
        }
        _emit(json.dumps(payload, indent=2), output)
    else:  # csv
        exact_text = format_exact(exact) if exact is not None else ""
        _emit(
            "quantity,n,k,l,a,exact,decimal\n"
            f"{quantity},{n},{k},{l},{a},{exact_text},{mp.nstr(decimal.value, digits)}",
            output,
        )


@main.command("table")
@click.option("--quantity", type=click.Choice(QUANTITIES), required=True)
@click.option("--n-range", default="1..5", show_default=True)
@click.option("--k-range", default="1..5", show_default=True)
@click.option("--l", "l_order", type=int, default=None)
@click.option("--a", "a_text", default="1", show_default=True)
@click.option("--space", type=click.Choice(["momentum", "position"]), default="momentum", show_default=True)
@click.option("--digits", type=int, default=25, show_default=True)
@click.option("--format", "fmt", type=click.Choice(["csv", "json"]), default="csv", show_default=True)
@click.option("--output", type=click.Path(dir_okay=False), default=None)
def cmd_table(quantity, n_range, k_range, l_order, a_text, space, digits, fmt, output):
    """Tabulate a quantity over an (n, k) grid, n-major."""
    n_lo, n_hi = _parse_range(n_range)
    k_lo, k_hi = _parse_range(k_range)
    a = _parse_rational(a_text)
    rows = []
    any_failed = False
    for n in range(n_lo, n_hi + 1):
        for k in range(k_lo, k_hi + 1):
            l = l_order if l_order is not None else k
            try:
                exact, decimal = _evaluate(quantity, n, k, l, a, space, digits)
                rows.append(
                    {
                        "n": n,
                        "k": k,
                        "exact": format_exact(exact) if exact is not None else "",
                        "decimal": mp.nstr(decimal.value, digits),
                        "error": "",
                    }
                )
            except (OrderError, ValueError, PrecisionError) as exc:
                any_failed = True
                rows.append({"n": n, "k": k, "exact": "", "decimal": "", "error": str(exc)})
    if fmt == "csv":
        lines = ["n,k,exact,decimal,error"]
        lines += [f"{r['n']},{r['k']},{r['exact']},{r['decimal']},{r['error']}" for r in rows]
        _emit("\n".join(lines), output)
    else:
        _emit(json.dumps({"quantity": quantity, "a": str(a), "rows": rows}, indent=2), output)
    if any_failed:
        sys.exit(1)


@main.command("verify")
@click.option("--n-range", default="1..8", show_default=True)
@click.option("--k-range", default="1..5", show_default=True)
@click.option("--tol", type=float, default=1e-8, show_default=True, help="Relative tolerance per cell.")
@click.option("--digits", type=int, default=30, show_default=True, help="Oracle working precision.")
@click.option("--a", "a_text", default="1", show_default=True)
@click.option("--format", "fmt", type=click.Choice(["csv", "json"]), default="csv", show_default=True)
@click.option("--output", type=click.Path(dir_okay=False), default=None)
def cmd_verify(n_range, k_range, tol, digits, a_text, fmt, output):
    """Run the closed-form vs quadrature verification grid."""
    n_lo, n_hi = _parse_range(n_range)
    k_lo, k_hi = _parse_range(k_range)
    if n_lo != 1 or k_lo != 1:
        raise click.UsageError("verification grids start at n=1, k=1 (use 1..N ranges)")
    if tol <= 0:
        raise click.UsageError("--tol must be positive")
    a = _parse_rational(a_text)
    report = run_verification(n_hi, k_hi, tol, dps=digits, a=a)
    if fmt == "csv":
        _emit(report.to_csv_text().rstrip("\n"), output)
    else:
        _emit(json.dumps(report.to_json_dict(), indent=2), output)
    failed = report.failed_entries()
    click.echo(
        f"verified {len(report.entries)} cells: "
        f"{len(report.entries) - len(failed)} passed, {len(failed)} failed",
        err=True,
    )
    if failed:
        sys.exit(1)


@main.command("asymptote")
@click.option("--n-range", default="1..10", show_default=True)
@click.option("--k-range", default="1..4", show_default=True)
@click.option("--digits", type=int, default=25, show_default=True)
@click.option("--format", "fmt", type=click.Choice(["csv", "json"]), default="csv", show_default=True)
@click.option("--output", type=click.Path(dir_okay=False), default=None)
def cmd_asymptote(n_range, k_range, digits, fmt, output):
    """Compare exact I(n, k) against its leading large-n term."""
    n_lo, n_hi = _parse_range(n_range)
    k_lo, k_hi = _parse_range(k_range)
    rows = []
    for n in range(n_lo, n_hi + 1):
        for k in range(k_lo, k_hi + 1):
            idx = IntegralIndex(n, k)
            exact_dec = pi_poly_eval(theorem1_ink(idx), digits)
            asym_dec = pi_poly_eval(asymptotic_ink(idx), digits)
            with mp.workdps(digits + 10):
                ratio = mp.nstr(exact_dec.value / asym_dec.value, digits)
            rows.append(
                {
                    "n": n,
                    "k": k,
                    "exact": mp.nstr(exact_dec.value, digits),
                    "asymptotic": mp.nstr(asym_dec.value, digits),
                    "ratio": ratio,
                }
            )
    if fmt == "csv":
        lines = ["n,k,exact,asymptotic,ratio"]
        lines += [f"{r['n']},{r['k']},{r['exact']},{r['asymptotic']},{r['ratio']}" for r in rows]
        _emit("\n".join(lines), output)
    else:
        _emit(json.dumps({"rows": rows}, indent=2), output)


@main.command("density")
@click.option("--space", type=click.Choice(["position", "momentum"]), required=True)
@click.option("--n", type=int, default=1, show_default=True)
@click.option("--a", "a_text", default="1", show_default=True)
@click.option("--min", "lo", type=float, default=None, help="Grid start (default: -a or left of the momentum peaks).")
@click.option("--max", "hi", type=float, default=None, help="Grid end (mirrors --min by default).")
@click.option("--points", type=int, default=512, show_default=True)
@click.option("--output", type=click.Path(dir_okay=False), default=None)
def cmd_density(space, n, a_text, lo, hi, points, output):
    """Export density samples as CSV columns (p_or_x, density)."""
    a = _parse_rational(a_text)
    state = WellState(n, a)
    if lo is None or hi is None:
        if space == "position":
            half = float(a)
        else:
            half = singular_points(state)[1] + 6.0 * 3.141592653589793 / float(a)
        lo = -half if lo is None else lo
        hi = half if hi is None else hi
    if points < 2 or not lo < hi:
        raise click.UsageError("need --points >= 2 and --min < --max")
    samples = density_grid(state, space, lo, hi, points)
    lines = ["p_or_x,density"]
    lines += [f"{x!r},{y!r}" for x, y in samples]
    _emit("\n".join(lines), output)


if __name__ == "__main__":
    main()
