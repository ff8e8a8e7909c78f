"""Exact arithmetic layer: big rationals, generalized binomials, and
polynomials in pi with rational coefficients.

Every closed-form value produced by this package is a finite sum

    sum_m  c_m * pi**m,      c_m rational, m any integer,

held exactly as a :class:`PiPolynomial`.  Addition and multiplication never
round; decimals only appear when a polynomial is *evaluated* at a requested
number of digits, and each evaluation carries a certified error bound.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Iterable, Mapping, Union

from mpmath import mp

# Arbitrary-size exact rational: numerator any integer, denominator positive,
# always stored reduced.  fractions.Fraction guarantees both invariants.
BigRational = Fraction

RationalLike = Union[int, Fraction, str]


def as_rational(value: RationalLike) -> Fraction:
    """Coerce ints, Fractions and "p/q" strings to an exact rational."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def binomial(n: int, r: int) -> Fraction:
    """Generalized binomial coefficient C(n, r) = n(n-1)...(n-r+1) / r!.

    Valid for negative upper argument, e.g. C(-4, 2) = (-4)(-5)/2 = 10.
    Raises ValueError for r < 0.
    """
    if r < 0:
        raise ValueError(f"binomial lower index must be nonnegative, got r={r}")
    num = 1
    for i in range(r):
        num *= n - i
    return Fraction(num, factorial(r))


def _mpf_to_fraction(x) -> Fraction:
    """Exact rational value of an mpf (mpf values are dyadic rationals)."""
    sign, man, exp, _ = x._mpf_
    if man == 0:
        return Fraction(0)
    frac = Fraction(int(man), 1) * Fraction(2) ** int(exp)
    return -frac if sign else frac


@dataclass(frozen=True)
class DecimalValue:
    """A high-precision decimal with a certified absolute error bound.

    ``value`` is an mpmath float carrying at least ``requested_digits``
    correct digits; ``error_bound`` bounds |true - value| and satisfies
    error_bound <= 10**(1 - requested_digits) * max(1, |value|).
    """

    value: object
    requested_digits: int
    error_bound: object

    def __str__(self) -> str:
        return mp.nstr(self.value, self.requested_digits)


class PiPolynomial:
    """Finite sum of rational coefficients times integer powers of pi.

    Immutable; zero coefficients are never stored, so equality of term maps
    is exact value equality.  Supports +, -, * with other polynomials and
    with ints/Fractions.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[int, RationalLike] | Iterable[tuple[int, RationalLike]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        cleaned: dict[int, Fraction] = {}
        for exp, coeff in items:
            c = as_rational(coeff)
            if c:
                cleaned[int(exp)] = cleaned.get(int(exp), Fraction(0)) + c
        self._terms = {e: c for e, c in cleaned.items() if c}

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls) -> "PiPolynomial":
        return cls()

    @classmethod
    def one(cls) -> "PiPolynomial":
        return cls({0: 1})

    @classmethod
    def constant(cls, c: RationalLike) -> "PiPolynomial":
        return cls({0: c})

    @classmethod
    def monomial(cls, exponent: int, coeff: RationalLike = 1) -> "PiPolynomial":
        return cls({exponent: coeff})

    # -- inspection --------------------------------------------------------

    @property
    def terms(self) -> dict[int, Fraction]:
        """Copy of the exponent -> coefficient map (no zero coefficients)."""
        return dict(self._terms)

    def exponents(self) -> list[int]:
        """Exponents present, descending."""
        return sorted(self._terms, reverse=True)

    def coefficient(self, exponent: int) -> Fraction:
        return self._terms.get(exponent, Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return set(self._terms) <= {0}

    def constant_value(self) -> Fraction:
        """The rational value, if the polynomial has no pi dependence."""
        if not self.is_constant():
            raise ValueError("polynomial has pi-dependent terms")
        return self._terms.get(0, Fraction(0))

    # -- ring operations ---------------------------------------------------

    def _coerce(self, other) -> "PiPolynomial | None":
        if isinstance(other, PiPolynomial):
            return other
        if isinstance(other, (int, Fraction)):
            return PiPolynomial.constant(other)
        return None

    def __add__(self, other):
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        out = dict(self._terms)
        for e, c in rhs._terms.items():
            out[e] = out.get(e, Fraction(0)) + c
        return PiPolynomial(out)

    __radd__ = __add__

    def __neg__(self):
        return PiPolynomial({e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        return self + (-rhs)

    def __rsub__(self, other):
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        return rhs + (-self)

    def __mul__(self, other):
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        out: dict[int, Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in rhs._terms.items():
                e = e1 + e2
                out[e] = out.get(e, Fraction(0)) + c1 * c2
        return PiPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int) or exponent < 0:
            return NotImplemented
        result = PiPolynomial.one()
        for _ in range(exponent):
            result = result * self
        return result

    def __eq__(self, other):
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        return self._terms == rhs._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __bool__(self):
        return bool(self._terms)

    def __repr__(self):
        return f"PiPolynomial({format_exact(self)!r})"

    def __str__(self):
        return format_exact(self)

    # -- evaluation --------------------------------------------------------

    def eval(self, digits: int) -> DecimalValue:
        return pi_poly_eval(self, digits)

    def log(self, digits: int) -> DecimalValue:
        return pi_poly_log(self, digits)

    # -- serialization -----------------------------------------------------

    def to_json_dict(self) -> dict:
        return {
            "terms": [
                {
                    "pi_exp": e,
                    "num": str(self._terms[e].numerator),
                    "den": str(self._terms[e].denominator),
                }
                for e in self.exponents()
            ]
        }

    @classmethod
    def from_json_dict(cls, data: Mapping) -> "PiPolynomial":
        terms = {}
        for entry in data["terms"]:
            e = int(entry["pi_exp"])
            terms[e] = Fraction(int(entry["num"]), int(entry["den"]))
        return cls(terms)


def pi_poly_eval(p: PiPolynomial, digits: int) -> DecimalValue:
    """Evaluate sum c_m pi**m to ``digits`` digits with a certified bound.

    pi is taken at ``digits + 10`` guard digits (escalated automatically if
    the bound would not satisfy the DecimalValue contract, which can only
    happen under heavy cancellation between terms).
    """
    if digits < 1:
        raise ValueError("digits must be >= 1")
    if p.is_zero():
        return DecimalValue(mp.mpf(0), digits, mp.mpf(0))

    terms = p.terms
    # A pure rational constant may be exactly representable in binary.
    if set(terms) == {0}:
        c = terms[0]
        with mp.workdps(digits + 10):
            v = mp.mpf(c.numerator) / c.denominator
            if _mpf_to_fraction(v) == c:
                return DecimalValue(v, digits, mp.mpf(0))

    max_exp = max(abs(e) for e in terms)
    # Per-term relative rounding <= (|m| + a few ops) ulp; the factor 10**2
    # on top of the op count keeps the bound safely on the certified side.
    op_factor = max_exp + len(terms) + 8
    guard = digits + 10
    while True:
        with mp.workdps(guard):
            pi = +mp.pi
            total = mp.mpf(0)
            absum = mp.mpf(0)
            for e in sorted(terms, reverse=True):
                c = terms[e]
                t = mp.mpf(c.numerator) / c.denominator * pi**e
                total += t
                absum += abs(t)
            bound = absum * op_factor * mp.mpf(10) ** (2 - guard)
            ceiling = mp.mpf(10) ** (1 - digits) * max(mp.mpf(1), abs(total))
            value = +total
            bound = +bound
        if bound <= ceiling:
            return DecimalValue(value, digits, bound)
        guard += 10


def pi_poly_log(p: PiPolynomial, digits: int) -> DecimalValue:
    """Natural log of an exactly-represented positive value.

    Raises ValueError when the polynomial does not evaluate to a provably
    positive real.
    """
    if digits < 1:
        raise ValueError("digits must be >= 1")
    ev = pi_poly_eval(p, digits + 5)
    if ev.value <= 0 or ev.value <= ev.error_bound:
        raise ValueError("logarithm requires a provably positive value")
    if ev.value == 1 and ev.error_bound == 0:
        return DecimalValue(mp.mpf(0), digits, mp.mpf(0))
    guard = digits + 10
    while True:
        with mp.workdps(guard):
            ln = mp.log(ev.value)
            # |d ln x| = |dx|/x, plus rounding of the log itself.
            bound = ev.error_bound / ev.value + mp.mpf(10) ** (2 - guard) * max(
                mp.mpf(1), abs(ln)
            )
            ceiling = mp.mpf(10) ** (1 - digits) * max(mp.mpf(1), abs(ln))
            ln = +ln
            bound = +bound
        if bound <= ceiling:
            return DecimalValue(ln, digits, bound)
        # The bound is dominated by the evaluation error; re-evaluate tighter.
        ev = pi_poly_eval(p, digits + (guard - digits))
        guard += 10


# -- canonical text form ----------------------------------------------------
#
# Grammar: terms joined by " + " / " - ", exponents descending; each term is
#   <num>[/<den>][*pi^<exp>]
# with "/1" and "*pi^0" omitted, e.g. "2*pi^-1", "1/12*pi^-3 + 5/32*pi^-5".

_TERM_RE = re.compile(r"^(?P<num>-?\d+)(?:/(?P<den>\d+))?(?:\*pi\^(?P<exp>-?\d+))?$")


def _format_term(coeff: Fraction, exponent: int) -> str:
    text = str(coeff.numerator)
    if coeff.denominator != 1:
        text += f"/{coeff.denominator}"
    if exponent != 0:
        text += f"*pi^{exponent}"
    return text


def format_exact(p: PiPolynomial) -> str:
    """Render a PiPolynomial in the canonical machine-parsable text form."""
    if p.is_zero():
        return "0"
    parts: list[str] = []
    for e in p.exponents():
        c = p.coefficient(e)
        if not parts:
            parts.append(_format_term(c, e))
        else:
            parts.append(" + " if c > 0 else " - ")
            parts.append(_format_term(abs(c), e))
    return "".join(parts)


def parse_exact(text: str) -> PiPolynomial:
    """Parse the canonical text form back into a PiPolynomial."""
    s = text.strip()
    if s == "0":
        return PiPolynomial.zero()
    # Normalize to a flat token stream: term (op term)*
    tokens = s.split(" ")
    terms: dict[int, Fraction] = {}
    sign = 1
    expect_term = True
    for tok in tokens:
        if not expect_term:
            if tok == "+":
                sign = 1
            elif tok == "-":
                sign = -1
            else:
                raise ValueError(f"expected '+' or '-' between terms, got {tok!r}")
            expect_term = True
            continue
        m = _TERM_RE.match(tok)
        if not m:
            raise ValueError(f"malformed exact-value term: {tok!r}")
        num = int(m.group("num"))
        den = int(m.group("den") or 1)
        exp = int(m.group("exp") or 0)
        if den == 0:
            raise ValueError(f"zero denominator in term {tok!r}")
        terms[exp] = terms.get(exp, Fraction(0)) + sign * Fraction(num, den)
        expect_term = False
    if expect_term:
        raise ValueError(f"dangling operator in exact value: {text!r}")
    return PiPolynomial(terms)
