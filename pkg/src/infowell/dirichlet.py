"""Closed-form evaluation of the Dirichlet-like kernel integrals

    I(n, k) = integral over R of [ sin^2(t - pi n/2) / (t^2 - pi^2 n^2/4)^2 ]^k dt

for integer quantum number n >= 1 and integer power k >= 1, together with the
partial-fraction expansion of the kernel denominator, the sine-power moment
integrals it reduces to, and the large-n asymptotic coefficients.

Everything here is exact: values are PiPolynomials whose coefficients are
big rationals.  The inner alternating sums cancel catastrophically (terms of
size ~ k^(2k) collapse by a factor ~ (4/e^2)^k), which is why a
double-precision reference path is provided only to demonstrate the failure
mode, never to produce values.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial

from mpmath import mp

from .exact import PiPolynomial, binomial


@dataclass(frozen=True)
class IntegralIndex:
    """Index pair (n, k): quantum number and kernel power, both >= 1."""

    n: int
    k: int

    def __post_init__(self):
        if not (isinstance(self.n, int) and self.n >= 1):
            raise ValueError(f"quantum number n must be an integer >= 1, got {self.n!r}")
        if not (isinstance(self.k, int) and self.k >= 1):
            raise ValueError(f"power k must be an integer >= 1, got {self.k!r}")


@dataclass(frozen=True)
class PartialFractionTerm:
    """One simple fraction coeff * (t - pole_sign*pi*n/2)**multiplicity_exponent.

    ``pole_sign`` is +1 for the pole at +pi*n/2 and -1 for the pole at
    -pi*n/2; ``multiplicity_exponent`` lies in [-2k, -1].
    """

    pole_sign: int
    multiplicity_exponent: int
    coefficient: PiPolynomial


def inner_alternating_sum(k: int, j: int) -> int:
    """Exact value of sum_{i=0}^{k-1} (-1)^i C(2k, i) (k-i)^(2k-2j-1)."""
    total = 0
    for i in range(k):
        term = comb(2 * k, i) * (k - i) ** (2 * k - 2 * j - 1)
        total += -term if i % 2 else term
    return total


def inner_alternating_sum_float(k: int, j: int) -> float:
    """The same alternating sum accumulated in IEEE doubles.

    Loses roughly 0.27*k digits to cancellation; used only to document why
    the exact path is required.
    """
    total = 0.0
    for i in range(k):
        term = float(comb(2 * k, i)) * float(k - i) ** (2 * k - 2 * j - 1)
        total += -term if i % 2 else term
    return total


def theorem1_ink(idx: IntegralIndex) -> PiPolynomial:
    """Exact closed form of I(n, k) as a k-term polynomial in odd negative
    powers of pi (exponents 1-2k, -1-2k, ..., 3-4k)."""
    n, k = idx.n, idx.k
    terms: dict[int, Fraction] = {}
    for j in range(k):
        coeff = (
            binomial(2 * j + 2 * k - 1, 2 * k - 1)
            * 2
            * Fraction(-1, 4) ** j
            / factorial(2 * k - 2 * j - 1)
            * inner_alternating_sum(k, j)
        )
        terms[1 - 2 * k - 2 * j] = coeff / Fraction(n) ** (2 * k + 2 * j)
    return PiPolynomial(terms)


def lemma3_k_integral(k: int, j: int) -> PiPolynomial:
    """Exact value of integral over R of sin(u)^(2k) / u^(2(k-j)) du.

    Defined for 0 <= j <= k-1; the result is a single term rational * pi,
    e.g. pi for (k=1, j=0) -- the classical Dirichlet integral.
    """
    if k < 1:
        raise ValueError(f"power k must be >= 1, got {k}")
    if not 0 <= j <= k - 1:
        raise ValueError(f"moment index j must satisfy 0 <= j <= k-1, got j={j}")
    coeff = (
        Fraction(-1, 4) ** j
        / factorial(2 * k - 2 * j - 1)
        * inner_alternating_sum(k, j)
    )
    return PiPolynomial.monomial(1, coeff)


def lemma2_ink(idx: IntegralIndex) -> PiPolynomial:
    """I(n, k) assembled from the sine-power moment integrals.

    Reduces the kernel via the partial-fraction expansion and periodicity,
    then substitutes the closed sine-moment values; term-for-term identical
    to :func:`theorem1_ink`.
    """
    n, k = idx.n, idx.k
    total = PiPolynomial.zero()
    for j in range(k):
        prefactor = PiPolynomial.monomial(
            -2 * k - 2 * j,
            2 * binomial(2 * j + 2 * k - 1, 2 * k - 1) / Fraction(n) ** (2 * k + 2 * j),
        )
        total = total + prefactor * lemma3_k_integral(k, j)
    return total


def lemma1_expand(idx: IntegralIndex) -> list[PartialFractionTerm]:
    """Partial-fraction expansion of 1 / [(t - pi n/2)(t + pi n/2)]^(2k).

    Returns 4k simple-fraction terms (2k multiplicities at each of the two
    poles).  Exposed for verification; production paths never evaluate the
    kernel near its poles.
    """
    n, k = idx.n, idx.k
    out: list[PartialFractionTerm] = []
    for j in range(2 * k):
        base = binomial(j + 2 * k - 1, 2 * k - 1) / Fraction(n) ** (2 * k + j)
        coeff_minus = PiPolynomial.monomial(-(2 * k + j), base)
        coeff_plus = coeff_minus * ((-1) ** j)
        out.append(PartialFractionTerm(-1, j - 2 * k, coeff_minus))
        out.append(PartialFractionTerm(+1, j - 2 * k, coeff_plus))
    return out


def _require_away_from_poles(idx: IntegralIndex, t) -> None:
    c = mp.pi * idx.n / 2
    threshold = mp.mpf(10) ** (8 - mp.dps) * max(mp.mpf(1), abs(t), c)
    if min(abs(t - c), abs(t + c)) <= threshold:
        raise ValueError(
            f"evaluation refused at/near a pole t = +-pi*{idx.n}/2 (t={mp.nstr(mp.mpf(t), 8)})"
        )


def lemma1_reconstruct(idx: IntegralIndex, t) -> object:
    """Numerically sum the partial-fraction terms at a point t.

    Runs at the caller's mpmath working precision; refuses points at or
    near the poles.
    """
    t = mp.mpf(t)
    _require_away_from_poles(idx, t)
    c = mp.pi * idx.n / 2
    total = mp.mpf(0)
    for term in lemma1_expand(idx):
        coeff = term.coefficient.eval(mp.dps).value
        total += coeff * (t - term.pole_sign * c) ** term.multiplicity_exponent
    return total


def lemma1_direct(idx: IntegralIndex, t) -> object:
    """Direct product form 1 / [(t - pi n/2)(t + pi n/2)]^(2k) at a point."""
    t = mp.mpf(t)
    _require_away_from_poles(idx, t)
    c = mp.pi * idx.n / 2
    return ((t - c) * (t + c)) ** (-2 * idx.k)


def asymptotic_bk(k: int) -> Fraction:
    """Leading large-n coefficient b_k = 4k sum_i (-1)^i (k-i)^(2k-1)/(i!(2k-i)!)."""
    if k < 1:
        raise ValueError(f"power k must be >= 1, got {k}")
    total = Fraction(0)
    for i in range(k):
        term = Fraction((k - i) ** (2 * k - 1), factorial(i) * factorial(2 * k - i))
        total += -term if i % 2 else term
    return 4 * k * total


def asymptotic_ink(idx: IntegralIndex) -> PiPolynomial:
    """Leading-order approximation b_k * pi^(1-2k) * n^(-2k) of I(n, k).

    Equals the exact value's first term; exact for k = 1.
    """
    b = asymptotic_bk(idx.k)
    return PiPolynomial.monomial(1 - 2 * idx.k, b / Fraction(idx.n) ** (2 * idx.k))
