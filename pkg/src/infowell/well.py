"""Physics layer: eigenstates of the 1D infinite well on [-a, a].

Energies are exact (pi^2 n^2 / (8 a^2)); the position and momentum
probability densities evaluate in floating point, with the removable
singularities of the momentum density handled by a series switch.

Normalization note: the sin^2 / quartic momentum-density form is sometimes
written without the leading factor ``a``, in which case it integrates to
1/a instead of 1.  This module includes the factor, the unique choice under
which the density is unit-normalized and its k-th power integrates to
(pi n^2 / 2)^k a^(k-1) I(n, k).  The quadrature checks in the verification
suite confirm this normalization independently.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from mpmath import mp

from .exact import PiPolynomial, RationalLike, as_rational

# Series switch threshold for sin(u)^2/u^2 about u = 0; below it the direct
# quotient is replaced by the Taylor series to avoid 0/0 at the exact zero.
SERIES_SWITCH = 1e-4


@dataclass(frozen=True)
class WellState:
    """Eigenstate of the infinite well: quantum number n >= 1, half-width a > 0."""

    n: int
    a: Fraction = Fraction(1)

    def __post_init__(self):
        if not (isinstance(self.n, int) and self.n >= 1):
            raise ValueError(f"quantum number n must be an integer >= 1, got {self.n!r}")
        object.__setattr__(self, "a", as_rational(self.a))
        if self.a <= 0:
            raise ValueError(f"half-width a must be positive, got {self.a}")


def make_state(n: int, a: RationalLike = 1) -> WellState:
    return WellState(n, as_rational(a))


def energy(s: WellState) -> PiPolynomial:
    """Exact eigenenergy pi^2 n^2 / (8 a^2)."""
    return PiPolynomial.monomial(2, Fraction(s.n**2) / (8 * s.a**2))


def _sinc_sq_float(u: float) -> float:
    """(sin u / u)^2 in doubles, 4th-order series below the switch threshold."""
    if abs(u) < SERIES_SWITCH:
        u2 = u * u
        return 1.0 - u2 / 3.0 + 2.0 * u2 * u2 / 45.0
    s = math.sin(u) / u
    return s * s


def _sinc_sq_mp(u):
    """(sin u / u)^2 at the current mpmath precision.

    Below the switch threshold the series (1 - cos 2u)/(2u^2) =
    sum_{m>=1} (-1)^(m+1) 2^(2m-1) u^(2m-2) / (2m)! is summed to working
    precision (the terms alternate, so truncation is bounded by the first
    omitted term).
    """
    u = mp.mpf(u)
    if abs(u) >= SERIES_SWITCH:
        s = mp.sin(u) / u
        return s * s
    eps = mp.mpf(10) ** (-mp.dps - 3)
    total = mp.mpf(1)
    term = mp.mpf(1)
    m = 1
    u2 = u * u
    while True:
        term = -term * 4 * u2 / ((2 * m + 1) * (2 * m + 2))
        m += 1
        total += term
        if abs(term) < eps:
            return total


def position_density(s: WellState, x: float) -> float:
    """Probability density (1/a) sin^2(pi n (x-a) / (2a)) on [-a, a], else 0."""
    a = float(s.a)
    if abs(x) > a:
        return 0.0
    u = math.pi * s.n * (x - a) / (2.0 * a)
    return math.sin(u) ** 2 / a


def position_density_mp(s: WellState, x):
    """position_density at the current mpmath working precision."""
    a = mp.mpf(s.a.numerator) / s.a.denominator
    x = mp.mpf(x)
    if abs(x) > a:
        return mp.mpf(0)
    u = mp.pi * s.n * (x - a) / (2 * a)
    return mp.sin(u) ** 2 / a


def momentum_density(s: WellState, p: float) -> float:
    """Momentum probability density

        (a pi n^2 / 2) sin^2(ap - pi n/2) / (a^2 p^2 - pi^2 n^2/4)^2

    with the removable singularities at p = +-pi n/(2a) evaluated by their
    finite limits.  Writing u = ap - pi n/2 and v = ap + pi n/2, the sine
    is periodic so sin^2(u) = sin^2(v); the branch with the smaller of
    |u|, |v| folds that factor into a sinc^2 and removes both singularities.
    """
    n = s.n
    a = float(s.a)
    half = math.pi * n / 2.0
    u = a * p - half
    v = a * p + half
    c = a * math.pi * n * n / 2.0
    if abs(u) <= abs(v):
        return c * _sinc_sq_float(u) / (v * v)
    return c * _sinc_sq_float(v) / (u * u)


def momentum_density_mp(s: WellState, p):
    """momentum_density at the current mpmath working precision."""
    n = s.n
    a = mp.mpf(s.a.numerator) / s.a.denominator
    half = mp.pi * n / 2
    ap = a * mp.mpf(p)
    u = ap - half
    v = ap + half
    c = a * mp.pi * n * n / 2
    if abs(u) <= abs(v):
        return c * _sinc_sq_mp(u) / (v * v)
    return c * _sinc_sq_mp(v) / (u * u)


def singular_points(s: WellState) -> tuple[float, float]:
    """The two removable singularities +-pi n / (2a) of the momentum density."""
    d = math.pi * s.n / (2.0 * float(s.a))
    return (-d, d)


def density_grid(
    s: WellState, space: str, lo: float, hi: float, points: int
) -> list[tuple[float, float]]:
    """Sample a density on an even grid for export/plotting."""
    if points < 2:
        raise ValueError("need at least 2 grid points")
    if not lo < hi:
        raise ValueError("grid requires lo < hi")
    if space == "position":
        f = lambda x: position_density(s, x)  # noqa: E731
    elif space == "momentum":
        f = lambda p: momentum_density(s, p)  # noqa: E731
    else:
        raise ValueError(f"unknown space {space!r}")
    step = (hi - lo) / (points - 1)
    return [(lo + i * step, f(lo + i * step)) for i in range(points)]
