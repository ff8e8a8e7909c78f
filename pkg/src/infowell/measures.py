"""Information-theoretic measures of the infinite-well densities.

Momentum-space entropic moments, Renyi and Tsallis entropies and Renyi
spreading lengths are built on the exact kernel integrals I(n, k); their
position-space counterparts reduce to rationals through the half-integer
gamma identity 2*Gamma(k+1/2)/(sqrt(pi)*Gamma(k+1)) = 2*C(2k,k)/4^k.  The
position-momentum uncertainty-like sum, quotient and product combine the
two spaces.

Orders are restricted to integers k >= 2 for the entropies and lengths;
k = 1 is the Shannon limit, which these closed forms do not cover, and
non-integer orders are out of scope.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import comb
from typing import Optional

from mpmath import mp

from .dirichlet import IntegralIndex, theorem1_ink
from .exact import DecimalValue, PiPolynomial, pi_poly_eval, pi_poly_log
from .well import WellState

DEFAULT_DIGITS = 25


class OrderError(ValueError):
    """Raised for entropy orders outside the supported integer range k >= 2."""


def _require_order(k: int, name: str = "k") -> None:
    if not isinstance(k, int) or k <= 1:
        raise OrderError(
            f"order {name}={k!r} is not supported: {name}=1 is the Shannon limit "
            f"(not given by these closed forms) and only integer orders {name}>=2 "
            "are defined here"
        )


class Space(str, Enum):
    POSITION = "position"
    MOMENTUM = "momentum"
    JOINT = "joint"


class Kind(str, Enum):
    ENTROPIC_MOMENT = "entropic_moment"
    RENYI_ENTROPY = "renyi_entropy"
    TSALLIS_ENTROPY = "tsallis_entropy"
    RENYI_LENGTH = "renyi_length"
    UNCERTAINTY_SUM = "uncertainty_sum"
    UNCERTAINTY_QUOTIENT = "uncertainty_quotient"
    UNCERTAINTY_PRODUCT = "uncertainty_product"


@dataclass(frozen=True)
class MeasureValue:
    """A computed measure: exact symbolic part (when one exists) plus a
    decimal evaluation with precision metadata."""

    kind: Kind
    state: WellState
    space: Space
    order_k: int
    decimal: DecimalValue
    exact_part: Optional[PiPolynomial] = None
    order_l: Optional[int] = None

    def to_json_dict(self) -> dict:
        return {
            "kind": self.kind.value,
            "n": self.state.n,
            "a": str(self.state.a),
            "k": self.order_k,
            "l": self.order_l,
            "space": self.space.value,
            "exact": self.exact_part.to_json_dict() if self.exact_part is not None else None,
            "decimal": mp.nstr(self.decimal.value, self.decimal.requested_digits),
            "digits": self.decimal.requested_digits,
        }


# -- momentum space ---------------------------------------------------------


def momentum_entropic_moment(s: WellState, k: int, digits: int = DEFAULT_DIGITS) -> MeasureValue:
    """W_k of the momentum density: (pi n^2 / 2)^k a^(k-1) I(n, k), exact.

    k = 1 gives exactly 1 (normalization).
    """
    if not isinstance(k, int) or k < 1:
        raise OrderError(f"entropic moment order must be an integer >= 1, got {k!r}")
    scale = Fraction(s.n**2, 2) ** k * s.a ** (k - 1)
    w = PiPolynomial.monomial(k, scale) * theorem1_ink(IntegralIndex(s.n, k))
    return MeasureValue(
        kind=Kind.ENTROPIC_MOMENT,
        state=s,
        space=Space.MOMENTUM,
        order_k=k,
        exact_part=w,
        decimal=pi_poly_eval(w, digits),
    )


def momentum_renyi_entropy(s: WellState, k: int, digits: int = DEFAULT_DIGITS) -> MeasureValue:
    """Renyi entropy of order k of the momentum density: ln(W_k) / (1 - k)."""
    _require_order(k)
    w = momentum_entropic_moment(s, k, digits).exact_part
    ln_w = pi_poly_log(w, digits + 5)
    with mp.workdps(digits + 10):
        value = ln_w.value / (1 - k)
        bound = ln_w.error_bound / (k - 1) + abs(value) * mp.mpf(10) ** (-(digits + 8))
        value = +value
        bound = +bound
    return MeasureValue(
        kind=Kind.RENYI_ENTROPY,
        state=s,
        space=Space.MOMENTUM,
        order_k=k,
        decimal=DecimalValue(value, digits, bound),
    )


def momentum_renyi_length(s: WellState, k: int, digits: int = DEFAULT_DIGITS) -> MeasureValue:
    """Renyi spreading length W_k^(1/(1-k)) = exp(R_k) of the momentum density."""
    _require_order(k)
    w = momentum_entropic_moment(s, k, digits).exact_part
    w_dec = pi_poly_eval(w, digits + 5)
    with mp.workdps(digits + 10):
        value = w_dec.value ** (mp.mpf(1) / (1 - k))
        rel = w_dec.error_bound / w_dec.value / (k - 1) + mp.mpf(10) ** (-(digits + 7))
        bound = abs(value) * rel
        value = +value
        bound = +bound
    return MeasureValue(
        kind=Kind.RENYI_LENGTH,
        state=s,
        space=Space.MOMENTUM,
        order_k=k,
        decimal=DecimalValue(value, digits, bound),
    )


def momentum_tsallis_entropy(s: WellState, k: int, digits: int = DEFAULT_DIGITS) -> MeasureValue:
    """Tsallis entropy (1 - W_k) / (k - 1) of the momentum density, exact."""
    _require_order(k)
    w = momentum_entropic_moment(s, k, digits).exact_part
    t = (1 - w) * Fraction(1, k - 1)
    return MeasureValue(
        kind=Kind.TSALLIS_ENTROPY,
        state=s,
        space=Space.MOMENTUM,
        order_k=k,
        exact_part=t,
        decimal=pi_poly_eval(t, digits),
    )


# -- position space ---------------------------------------------------------


def position_entropic_moment_exact(s: WellState, k: int) -> Fraction:
    """W_k of the position density: a^(1-k) * 2 * C(2k, k) / 4^k, a rational.

    Independent of n; k = 1 gives 1.
    """
    if not isinstance(k, int) or k < 1:
        raise OrderError(f"entropic moment order must be an integer >= 1, got {k!r}")
    return s.a ** (1 - k) * Fraction(2 * comb(2 * k, k), 4**k)


def position_renyi_entropy(s: WellState, k: int, digits: int = DEFAULT_DIGITS) -> MeasureValue:
    """Renyi entropy of the position density: ln a + ln(2 C(2k,k)/4^k)/(1-k).

    The gamma ratio reduces to an exact rational for integer k, so only the
    final logarithms are inexact.  Independent of n.
    """
    _require_order(k)
    ratio = Fraction(2 * comb(2 * k, k), 4**k)
    with mp.workdps(digits + 10):
        ln_a = mp.log(mp.mpf(s.a.numerator) / s.a.denominator)
        ln_ratio = mp.log(mp.mpf(ratio.numerator) / ratio.denominator)
        value = ln_a + ln_ratio / (1 - k)
        scale = abs(ln_a) + abs(ln_ratio) / (k - 1) + 1
        bound = scale * mp.mpf(10) ** (-(digits + 7))
        value = +value
        bound = +bound
    return MeasureValue(
        kind=Kind.RENYI_ENTROPY,
        state=s,
        space=Space.POSITION,
        order_k=k,
        decimal=DecimalValue(value, digits, bound),
    )


def position_tsallis_entropy(s: WellState, k: int, digits: int = DEFAULT_DIGITS) -> MeasureValue:
    """Tsallis entropy of the position density: (1 - W_k)/(k-1), an exact
    rational in a, independent of n."""
    _require_order(k)
    t = Fraction(1 - position_entropic_moment_exact(s, k), k - 1)
    poly = PiPolynomial.constant(t)
    return MeasureValue(
        kind=Kind.TSALLIS_ENTROPY,
        state=s,
        space=Space.POSITION,
        order_k=k,
        exact_part=poly,
        decimal=pi_poly_eval(poly, digits),
    )


def _exact_nth_root(q: Fraction, r: int) -> Optional[Fraction]:
    """q**(1/r) when it is rational, else None (q > 0, r >= 1)."""
    if r == 1:
        return q

    def int_root(m: int) -> Optional[int]:
        if m == 0:
            return 0
        root = round(m ** (1.0 / r))
        for cand in (root - 1, root, root + 1):
            if cand >= 0 and cand**r == m:
                return cand
        return None

    num = int_root(q.numerator)
    den = int_root(q.denominator)
    if num is None or den is None:
        return None
    return Fraction(num, den)


def position_renyi_length(s: WellState, k: int, digits: int = DEFAULT_DIGITS) -> MeasureValue:
    """Renyi length of the position density: 2^(2+1/(k-1)) a C(2k,k)^(-1/(k-1)).

    Exact (a rational multiple of a) whenever (2/C(2k,k))^(1/(k-1)) is
    rational, which holds at k = 2; otherwise decimal-only.
    """
    _require_order(k)
    ratio = Fraction(2, comb(2 * k, k))
    root = _exact_nth_root(ratio, k - 1)
    exact = PiPolynomial.constant(4 * s.a * root) if root is not None else None
    if exact is not None:
        decimal = pi_poly_eval(exact, digits)
    else:
        with mp.workdps(digits + 10):
            a_mp = mp.mpf(s.a.numerator) / s.a.denominator
            value = 4 * a_mp * (mp.mpf(ratio.numerator) / ratio.denominator) ** (
                mp.mpf(1) / (k - 1)
            )
            bound = abs(value) * mp.mpf(10) ** (-(digits + 6))
            value = +value
            bound = +bound
        decimal = DecimalValue(value, digits, bound)
    return MeasureValue(
        kind=Kind.RENYI_LENGTH,
        state=s,
        space=Space.POSITION,
        order_k=k,
        exact_part=exact,
        decimal=decimal,
    )


# -- position-momentum combinations ------------------------------------------


def uncertainty_sum(s: WellState, k: int, l: int, digits: int = DEFAULT_DIGITS) -> MeasureValue:
    """R_k[position] + R_l[momentum]; the ln(a) terms cancel, so the sum is
    independent of the box half-width."""
    _require_order(k, "k")
    _require_order(l, "l")
    rp = position_renyi_entropy(s, k, digits + 3)
    rg = momentum_renyi_entropy(s, l, digits + 3)
    with mp.workdps(digits + 10):
        value = rp.decimal.value + rg.decimal.value
        bound = rp.decimal.error_bound + rg.decimal.error_bound + mp.mpf(10) ** (
            -(digits + 8)
        ) * max(mp.mpf(1), abs(value))
        value = +value
        bound = +bound
    return MeasureValue(
        kind=Kind.UNCERTAINTY_SUM,
        state=s,
        space=Space.JOINT,
        order_k=k,
        order_l=l,
        decimal=DecimalValue(value, digits, bound),
    )


def uncertainty_quotient(s: WellState, k: int, l: int, digits: int = DEFAULT_DIGITS) -> MeasureValue:
    """Tsallis-type quotient [1+(1-k)T_k[pos]]^(1/2k) [1+(1-l)T_l[mom]]^(-1/2l).

    Since 1 + (1-k)T_k = W_k in each space, this equals
    W_k[position]^(1/(2k)) * W_l[momentum]^(-1/(2l)).  Note the quotient is
    *not* independent of a: it scales as a^((1-k)/(2k) - (l-1)/(2l)), which
    vanishes only for conjugate orders 1/k + 1/l = 2.
    """
    _require_order(k, "k")
    _require_order(l, "l")
    wp = position_entropic_moment_exact(s, k)
    wg = momentum_entropic_moment(s, l, digits).exact_part
    wg_dec = pi_poly_eval(wg, digits + 5)
    with mp.workdps(digits + 10):
        wp_mp = mp.mpf(wp.numerator) / wp.denominator
        value = wp_mp ** (mp.mpf(1) / (2 * k)) * wg_dec.value ** (-mp.mpf(1) / (2 * l))
        rel = wg_dec.error_bound / wg_dec.value / (2 * l) + mp.mpf(10) ** (-(digits + 6))
        bound = abs(value) * rel
        value = +value
        bound = +bound
    return MeasureValue(
        kind=Kind.UNCERTAINTY_QUOTIENT,
        state=s,
        space=Space.JOINT,
        order_k=k,
        order_l=l,
        decimal=DecimalValue(value, digits, bound),
    )


def uncertainty_product(s: WellState, k: int, l: int, digits: int = DEFAULT_DIGITS) -> MeasureValue:
    """Product of Renyi lengths L_k[position] * L_l[momentum]; the factors
    scale as a and 1/a, so the product is independent of a."""
    _require_order(k, "k")
    _require_order(l, "l")
    lp = position_renyi_length(s, k, digits + 3)
    lg = momentum_renyi_length(s, l, digits + 3)
    with mp.workdps(digits + 10):
        value = lp.decimal.value * lg.decimal.value
        rel = (
            lp.decimal.error_bound / abs(lp.decimal.value)
            + lg.decimal.error_bound / abs(lg.decimal.value)
            + mp.mpf(10) ** (-(digits + 8))
        )
        bound = abs(value) * rel
        value = +value
        bound = +bound
    return MeasureValue(
        kind=Kind.UNCERTAINTY_PRODUCT,
        state=s,
        space=Space.JOINT,
        order_k=k,
        order_l=l,
        decimal=DecimalValue(value, digits, bound),
    )
