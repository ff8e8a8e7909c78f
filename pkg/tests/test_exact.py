"""Tests for the exact arithmetic layer: rationals, binomials, PiPolynomial."""

import random
from fractions import Fraction

import pytest
from mpmath import mp

from infowell.exact import (
    PiPolynomial,
    binomial,
    format_exact,
    parse_exact,
    pi_poly_eval,
    pi_poly_log,
)


# -- binomial ----------------------------------------------------------------


@pytest.mark.parametrize(
    "n, r, expected",
    [
        (5, 2, 10),
        (-4, 2, 10),  # (-4)(-5)/2, generalized upper argument
        (7, 0, 1),
        (3, 5, 0),
        (-1, 3, -1),
    ],
)
def test_binomial_values(n, r, expected):
    assert binomial(n, r) == Fraction(expected)


def test_binomial_rejects_negative_lower_index():
    with pytest.raises(ValueError):
        binomial(5, -1)


def test_binomial_times_factorial_is_falling_factorial():
    from math import factorial

    for n in range(-20, 21):
        for r in range(0, 21):
            falling = 1
            for i in range(r):
                falling *= n - i
            assert binomial(n, r) * factorial(r) == falling


# -- PiPolynomial ring structure ----------------------------------------------


def random_poly(rng: random.Random) -> PiPolynomial:
    terms = {}
    for _ in range(rng.randint(0, 5)):
        exp = rng.randint(-8, 8)
        terms[exp] = Fraction(rng.randint(-50, 50), rng.randint(1, 30))
    return PiPolynomial(terms)


def test_ring_laws():
    rng = random.Random(20120815)
    for _ in range(200):
        a, b, c = random_poly(rng), random_poly(rng), random_poly(rng)
        assert (a + b) + c == a + (b + c)
        assert a + b == b + a
        assert a * b == b * a
        assert a * (b + c) == a * b + a * c
        assert (a * b) * c == a * (b * c)
        assert a + PiPolynomial.zero() == a
        assert a * PiPolynomial.one() == a
        assert (a - a).is_zero()


def test_zero_coefficients_are_never_stored():
    p = PiPolynomial({2: Fraction(1, 3), 5: 0})
    assert p.exponents() == [2]
    q = p - PiPolynomial({2: Fraction(1, 3)})
    assert q.is_zero() and q.terms == {}


def test_scalar_arithmetic_and_constant_value():
    p = PiPolynomial({-1: Fraction(1, 3)})
    assert 1 - (1 - p) == p
    assert (2 * p).coefficient(-1) == Fraction(2, 3)
    assert PiPolynomial.constant(Fraction(3, 4)).constant_value() == Fraction(3, 4)
    with pytest.raises(ValueError):
        p.constant_value()


# -- evaluation ---------------------------------------------------------------


def test_eval_two_over_pi():
    d = pi_poly_eval(PiPolynomial({-1: 2}), 15)
    with mp.workdps(40):
        ref = 2 / mp.pi
        assert abs(d.value - ref) <= mp.mpf("1e-14")
    assert d.error_bound <= mp.mpf("1e-14")
    assert d.requested_digits == 15


def test_eval_exact_constant_has_zero_error():
    d = pi_poly_eval(PiPolynomial({0: 1}), 5)
    assert d.value == 1
    assert d.error_bound == 0


def test_eval_matches_independent_high_precision_pi():
    # value of the n=2, k=2 kernel integral: pi^-3/12 + 5 pi^-5/32
    p = PiPolynomial({-3: Fraction(1, 12), -5: Fraction(5, 32)})
    d = pi_poly_eval(p, 10)
    with mp.workdps(50):
        ref = 1 / (12 * mp.pi**3) + 5 / (32 * mp.pi**5)
        assert abs(d.value - ref) <= mp.mpf("1e-13")
    assert mp.nstr(d.value, 8) == "0.0031982159"


def test_eval_rejects_bad_digits():
    with pytest.raises(ValueError):
        pi_poly_eval(PiPolynomial.one(), 0)


def test_decimal_value_error_bound_contract():
    rng = random.Random(7)
    for _ in range(30):
        p = random_poly(rng)
        for digits in (3, 12, 25):
            d = pi_poly_eval(p, digits)
            ceiling = mp.mpf(10) ** (1 - digits) * max(1, abs(d.value))
            assert d.error_bound <= ceiling


def test_eval_precision_monotonicity():
    rng = random.Random(99)
    for _ in range(20):
        p = random_poly(rng)
        d1 = pi_poly_eval(p, 8)
        d2 = pi_poly_eval(p, 30)
        assert abs(d1.value - d2.value) <= d1.error_bound


# -- logarithm ----------------------------------------------------------------


def test_log_of_one_is_exactly_zero():
    d = pi_poly_log(PiPolynomial({0: 1}), 10)
    assert d.value == 0
    assert d.error_bound == 0


def test_log_two_over_pi():
    d = pi_poly_log(PiPolynomial({-1: 2}), 12)
    with mp.workdps(40):
        ref = mp.log(2 / mp.pi)
        assert abs(d.value - ref) <= mp.mpf("1e-11")
    assert mp.nstr(d.value, 12) == "-0.451582705289"


def test_log_rejects_nonpositive_values():
    with pytest.raises(ValueError):
        pi_poly_log(PiPolynomial({0: -3}), 10)
    with pytest.raises(ValueError):
        pi_poly_log(PiPolynomial.zero(), 10)


# -- text form ----------------------------------------------------------------


def test_format_spec_examples():
    assert format_exact(PiPolynomial({-1: 2})) == "2*pi^-1"
    assert format_exact(PiPolynomial({-3: Fraction(1, 12), -5: Fraction(5, 32)})) == (
        "1/12*pi^-3 + 5/32*pi^-5"
    )
    assert format_exact(PiPolynomial({0: 1})) == "1"
    assert format_exact(PiPolynomial.zero()) == "0"
    assert format_exact(PiPolynomial({0: 1, -1: Fraction(-1, 3)})) == "1 - 1/3*pi^-1"


def test_format_orders_exponents_descending():
    p = PiPolynomial({2: 1, -5: Fraction(1, 2), 0: -3})
    assert format_exact(p) == "1*pi^2 - 3 + 1/2*pi^-5"


def test_parse_round_trip():
    rng = random.Random(4242)
    for _ in range(100):
        p = random_poly(rng)
        assert parse_exact(format_exact(p)) == p


def test_parse_rejects_malformed_text():
    for bad in ("2*pi", "1/0*pi^2", "1 +", "+ 1", "pi^2", "1 * 2"):
        with pytest.raises(ValueError):
            parse_exact(bad)


# -- JSON ----------------------------------------------------------------------


def test_json_round_trip_with_huge_integers():
    big = 10**60 + 7
    p = PiPolynomial({-41: Fraction(big, big + 2), 3: Fraction(-5, 9)})
    data = p.to_json_dict()
    assert all(isinstance(t["num"], str) and isinstance(t["den"], str) for t in data["terms"])
    assert [t["pi_exp"] for t in data["terms"]] == [3, -41]
    assert PiPolynomial.from_json_dict(data) == p
