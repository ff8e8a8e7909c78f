"""Tests for entropic moments, Renyi/Tsallis entropies, lengths and the
position-momentum uncertainty combinations."""

from fractions import Fraction

import pytest
from mpmath import mp

from infowell.dirichlet import asymptotic_bk, asymptotic_ink, IntegralIndex
from infowell.exact import PiPolynomial, pi_poly_eval
from infowell.measures import (
    Kind,
    OrderError,
    Space,
    momentum_entropic_moment,
    momentum_renyi_entropy,
    momentum_renyi_length,
    momentum_tsallis_entropy,
    position_entropic_moment_exact,
    position_renyi_entropy,
    position_renyi_length,
    position_tsallis_entropy,
    uncertainty_product,
    uncertainty_quotient,
    uncertainty_sum,
)
from infowell.well import WellState

A_GRID = (Fraction(1, 2), Fraction(1), Fraction(2))


def w2_reference_poly(n: int, a: Fraction) -> PiPolynomial:
    # known closed form of the second momentum moment:
    # (a/(3 pi)) (1 + 15/(2 pi^2 n^2))
    return PiPolynomial({-1: a / 3, -3: Fraction(5, 2) * a / n**2})


# -- momentum entropic moments ---------------------------------------------------


def test_w1_is_exactly_one():
    for n in (1, 2, 7, 20):
        for a in (Fraction(1), Fraction(3, 7)):
            w = momentum_entropic_moment(WellState(n, a), 1)
            assert w.exact_part == PiPolynomial.one()
            assert w.decimal.value == 1


def test_w2_matches_known_closed_form():
    for n in range(1, 11):
        for a in A_GRID:
            w = momentum_entropic_moment(WellState(n, a), 2)
            assert w.exact_part == w2_reference_poly(n, a)
    w11 = momentum_entropic_moment(WellState(1), 2)
    assert w11.exact_part == PiPolynomial({-1: Fraction(1, 3), -3: Fraction(5, 2)})
    assert mp.nstr(w11.decimal.value, 20) == "0.18673213147759561347"


def test_w3_approaches_asymptotic_level():
    # W_k -> b_k a^(k-1) / (2^k pi^(k-1)) as n grows; the gap shrinks like n^-2
    b3 = asymptotic_bk(3)
    gaps = []
    with mp.workdps(30):
        for n in (10, 50, 100):
            w = pi_poly_eval(momentum_entropic_moment(WellState(n), 3).exact_part, 30)
            limit = mp.mpf(b3.numerator) / b3.denominator / (8 * mp.pi**2)
            gaps.append(abs(w.value / limit - 1))
    assert gaps[0] > gaps[1] > gaps[2]
    assert gaps[2] < 1e-3


def test_moment_rejects_bad_order():
    with pytest.raises(OrderError):
        momentum_entropic_moment(WellState(1), 0)


# -- momentum Renyi entropy -------------------------------------------------------


def test_momentum_renyi_against_paper_route():
    # independent route: -ln W_2 with W_2 from the known display formula
    r = momentum_renyi_entropy(WellState(1), 2)
    with mp.workdps(40):
        w2 = 1 / (3 * mp.pi) + 5 / (2 * mp.pi**3)
        assert abs(r.decimal.value + mp.log(w2)) < mp.mpf("1e-20")
    assert mp.nstr(r.decimal.value, 20) == "1.6780801410591838114"


def test_momentum_renyi_against_quadrature():
    from infowell.oracle import quad_entropic_moment

    r = momentum_renyi_entropy(WellState(1), 2)
    qr = quad_entropic_moment(WellState(1), 2, 1e-10, dps=30)
    assert abs(r.decimal.value + mp.log(qr.value)) < 1e-9


def test_momentum_renyi_a_shift():
    r1 = momentum_renyi_entropy(WellState(1), 2, digits=30)
    r2 = momentum_renyi_entropy(WellState(1, Fraction(2)), 2, digits=30)
    with mp.workdps(40):
        assert abs(r2.decimal.value - (r1.decimal.value - mp.log(2))) < mp.mpf("1e-25")


def test_momentum_renyi_rejects_order_one():
    with pytest.raises(OrderError, match="Shannon"):
        momentum_renyi_entropy(WellState(1), 1)


# -- momentum Renyi length ---------------------------------------------------------


def test_momentum_length_is_reciprocal_moment_at_k2():
    le = momentum_renyi_length(WellState(1), 2)
    w = momentum_entropic_moment(WellState(1), 2, digits=30)
    with mp.workdps(40):
        assert abs(le.decimal.value - 1 / w.decimal.value) < mp.mpf("1e-22")
    assert mp.nstr(le.decimal.value, 20) == "5.3552647425329765555"


def test_momentum_length_scales_inversely_with_a():
    l1 = momentum_renyi_length(WellState(1), 2, digits=30)
    l2 = momentum_renyi_length(WellState(1, Fraction(2)), 2, digits=30)
    with mp.workdps(40):
        assert abs(l2.decimal.value - l1.decimal.value / 2) < mp.mpf("1e-25")


def test_momentum_length_k3_is_inverse_sqrt_of_w3():
    le = momentum_renyi_length(WellState(1), 3)
    w3 = momentum_entropic_moment(WellState(1), 3, digits=35)
    with mp.workdps(40):
        assert abs(le.decimal.value - w3.decimal.value ** mp.mpf("-0.5")) < mp.mpf("1e-22")


# -- momentum Tsallis ---------------------------------------------------------------


def test_momentum_tsallis_exact_poly():
    t = momentum_tsallis_entropy(WellState(1), 2)
    assert t.exact_part == PiPolynomial(
        {0: 1, -1: Fraction(-1, 3), -3: Fraction(-5, 2)}
    )
    assert mp.nstr(t.decimal.value, 20) == "0.81326786852240438653"


def test_momentum_tsallis_definitional_identity():
    for n in (1, 3, 8):
        for k in range(2, 9):
            s = WellState(n, Fraction(1, 2))
            t = momentum_tsallis_entropy(s, k).exact_part
            w = momentum_entropic_moment(s, k).exact_part
            assert (k - 1) * t == 1 - w


def test_momentum_tsallis_k3_against_quadrature():
    from infowell.oracle import quad_entropic_moment

    t = momentum_tsallis_entropy(WellState(1), 3)
    qr = quad_entropic_moment(WellState(1), 3, 1e-10, dps=30)
    assert abs(t.decimal.value - (1 - qr.value) / 2) < 1e-9


def test_momentum_tsallis_rejects_order_one():
    with pytest.raises(OrderError):
        momentum_tsallis_entropy(WellState(1), 1)


# -- position space ------------------------------------------------------------------


def test_position_renyi_values():
    r2 = position_renyi_entropy(WellState(1), 2)
    r3 = position_renyi_entropy(WellState(5), 3)  # independent of n
    with mp.workdps(40):
        assert abs(r2.decimal.value - mp.log(mp.mpf(4) / 3)) < mp.mpf("1e-25")
        assert abs(r3.decimal.value - mp.log(mp.mpf(8) / 5) / 2) < mp.mpf("1e-25")
    assert mp.nstr(r2.decimal.value, 15) == "0.287682072451781"
    assert mp.nstr(r3.decimal.value, 15) == "0.235001814622868"


def test_position_renyi_a_shift():
    # the ln(a) offset is the only a-dependence (checked with rational a)
    for a in (Fraction(2), Fraction(7, 3)):
        r = position_renyi_entropy(WellState(1, a), 2, digits=30)
        base = position_renyi_entropy(WellState(1), 2, digits=30)
        with mp.workdps(40):
            ln_a = mp.log(mp.mpf(a.numerator) / a.denominator)
            assert abs(r.decimal.value - base.decimal.value - ln_a) < mp.mpf("1e-25")


def test_position_tsallis_exact_rationals():
    assert position_tsallis_entropy(WellState(1), 2).exact_part == PiPolynomial.constant(
        Fraction(1, 4)
    )
    assert position_tsallis_entropy(WellState(4), 3).exact_part == PiPolynomial.constant(
        Fraction(3, 16)
    )
    assert position_tsallis_entropy(WellState(1, Fraction(2)), 2).exact_part == (
        PiPolynomial.constant(Fraction(5, 8))
    )


def test_position_length_values():
    l2 = position_renyi_length(WellState(1), 2)
    assert l2.exact_part == PiPolynomial.constant(Fraction(4, 3))
    l2b = position_renyi_length(WellState(2, Fraction(3)), 2)
    assert l2b.exact_part == PiPolynomial.constant(Fraction(4))
    l3 = position_renyi_length(WellState(1), 3)
    assert l3.exact_part is None
    with mp.workdps(40):
        assert abs(l3.decimal.value - mp.sqrt(mp.mpf(8) / 5)) < mp.mpf("1e-22")
    assert mp.nstr(l3.decimal.value, 15) == "1.26491106406735"


def test_position_length_equals_exp_of_entropy():
    for k in (2, 3, 5):
        le = position_renyi_length(WellState(1), k, digits=30)
        r = position_renyi_entropy(WellState(1), k, digits=30)
        with mp.workdps(40):
            assert abs(le.decimal.value - mp.exp(r.decimal.value)) < mp.mpf("1e-25")


def test_position_orders_rejected():
    for fn in (position_renyi_entropy, position_tsallis_entropy, position_renyi_length):
        with pytest.raises(OrderError):
            fn(WellState(1), 1)


# -- uncertainty combinations ----------------------------------------------------------


def test_uncertainty_sum_value_and_a_independence():
    u = uncertainty_sum(WellState(1), 2, 2)
    assert mp.nstr(u.decimal.value, 20) == "1.9657622135109647389"
    base = uncertainty_sum(WellState(1), 2, 2, digits=30).decimal.value
    for a in (Fraction(1, 2), Fraction(2), Fraction(7), Fraction(10)):
        other = uncertainty_sum(WellState(1, a), 2, 2, digits=30).decimal.value
        assert abs(other - base) < mp.mpf("1e-24")


def test_uncertainty_sum_position_part_independent_of_n():
    u1 = uncertainty_sum(WellState(2), 3, 2, digits=30)
    with mp.workdps(40):
        expected = (
            position_renyi_entropy(WellState(1), 3, digits=33).decimal.value
            + momentum_renyi_entropy(WellState(2), 2, digits=33).decimal.value
        )
        assert abs(u1.decimal.value - expected) < mp.mpf("1e-25")


def test_uncertainty_quotient_value_and_w_form():
    q = uncertainty_quotient(WellState(1), 2, 2)
    assert mp.nstr(q.decimal.value, 20) == "1.4156651865721221644"
    with mp.workdps(40):
        wp = mp.mpf(3) / 4
        wg = 1 / (3 * mp.pi) + 5 / (2 * mp.pi**3)
        ref = wp ** (mp.mpf(1) / 4) * wg ** (-mp.mpf(1) / 4)
        assert abs(q.decimal.value - ref) < mp.mpf("1e-20")


def test_uncertainty_quotient_scaling_law():
    # the quotient scales as a^((1-k)/(2k) - (l-1)/(2l)); for k = l = 2 the
    # exponent is -1/2 (scale-invariance would need conjugate orders).
    base = uncertainty_quotient(WellState(1), 2, 2, digits=30).decimal.value
    with mp.workdps(40):
        for a in (Fraction(2), Fraction(10)):
            got = uncertainty_quotient(WellState(1, a), 2, 2, digits=30).decimal.value
            scale = (mp.mpf(a.numerator) / a.denominator) ** mp.mpf("-0.5")
            assert abs(got / (base * scale) - 1) < mp.mpf("1e-20")


def test_uncertainty_product_value_and_a_independence():
    u = uncertainty_product(WellState(1), 2, 2)
    assert mp.nstr(u.decimal.value, 20) == "7.1403529900439687406"
    base = uncertainty_product(WellState(1), 2, 2, digits=30).decimal.value
    for a in (Fraction(1, 2), Fraction(2), Fraction(5), Fraction(10)):
        got = uncertainty_product(WellState(1, a), 2, 2, digits=30).decimal.value
        assert abs(got - base) < mp.mpf("1e-24")


def test_uncertainty_product_approaches_asymptotic_form():
    u = uncertainty_product(WellState(10), 2, 2, digits=30)
    with mp.workdps(40):
        asym = pi_poly_eval(asymptotic_ink(IntegralIndex(10, 2)), 35).value
        l_gamma_asym = ((mp.pi * 100 / 2) ** 2 * asym) ** (-1)
        ref = mp.mpf(4) / 3 * l_gamma_asym
        assert abs(u.decimal.value / ref - 1) < 1e-2


def test_uncertainty_orders_rejected():
    for fn in (uncertainty_sum, uncertainty_quotient, uncertainty_product):
        with pytest.raises(OrderError):
            fn(WellState(1), 1, 2)
        with pytest.raises(OrderError):
            fn(WellState(1), 2, 1)


# -- cross-cutting invariants ------------------------------------------------------------


def test_definitional_consistency_grid():
    # exp(R_k) = L_k and (k-1) T_k = 1 - W_k over the full working grid
    with mp.workdps(40):
        for n in range(1, 11):
            for a in A_GRID:
                s = WellState(n, a)
                for k in range(2, 9):
                    r = momentum_renyi_entropy(s, k, digits=20).decimal.value
                    le = momentum_renyi_length(s, k, digits=20).decimal.value
                    assert abs(mp.exp(r) - le) <= mp.mpf("1e-12") * le
                    t = momentum_tsallis_entropy(s, k).exact_part
                    w = momentum_entropic_moment(s, k).exact_part
                    assert (k - 1) * t == 1 - w


def test_renyi_entropy_monotone_in_order():
    for n in range(1, 11):
        values = [
            momentum_renyi_entropy(WellState(n), k, digits=20).decimal.value
            for k in range(2, 11)
        ]
        assert all(values[i] >= values[i + 1] for i in range(len(values) - 1))


def test_scale_covariance():
    # R(a) + ln a and L(a) * a are independent of a
    with mp.workdps(40):
        for n in (1, 4):
            for k in (2, 5):
                shifted = []
                scaled = []
                for a in (Fraction(1, 2), Fraction(1), Fraction(2), Fraction(10)):
                    s = WellState(n, a)
                    a_mp = mp.mpf(a.numerator) / a.denominator
                    r = momentum_renyi_entropy(s, k, digits=30).decimal.value
                    le = momentum_renyi_length(s, k, digits=30).decimal.value
                    shifted.append(r + mp.log(a_mp))
                    scaled.append(le * a_mp)
                assert max(shifted) - min(shifted) <= mp.mpf("1e-12")
                assert (max(scaled) - min(scaled)) / scaled[0] <= mp.mpf("1e-12")


def test_measure_value_metadata_and_json():
    s = WellState(2, Fraction(1, 2))
    w = momentum_entropic_moment(s, 3)
    data = w.to_json_dict()
    assert data["kind"] == "entropic_moment"
    assert data["n"] == 2 and data["a"] == "1/2" and data["k"] == 3
    assert data["space"] == "momentum" and data["l"] is None
    assert data["exact"] is not None and data["digits"] == 25
    r = momentum_renyi_entropy(s, 3)
    assert r.exact_part is None and r.kind is Kind.RENYI_ENTROPY
    assert r.space is Space.MOMENTUM
    u = uncertainty_sum(s, 2, 3)
    assert u.space is Space.JOINT and u.order_l == 3
    assert u.to_json_dict()["exact"] is None


def test_position_moment_exact_values():
    assert position_entropic_moment_exact(WellState(1), 1) == 1
    assert position_entropic_moment_exact(WellState(9), 2) == Fraction(3, 4)
    assert position_entropic_moment_exact(WellState(1, Fraction(2)), 2) == Fraction(3, 8)
