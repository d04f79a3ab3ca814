import random
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pelljac.ball import (
    BallDomainError,
    CertReal,
    Sign,
    certify_sign,
    const_delta,
    const_gamma,
    const_ln,
    const_ln_gamma,
    dyadic_to_decimal,
    exp,
    from_json,
    ln,
    pow_int,
    sign_certain,
    sqrt,
    to_json,
)

mpmath.mp.prec = 600


def mpf_to_fraction(x: mpmath.mpf) -> Fraction:
    man, e = x.man_exp
    return Fraction(man) * Fraction(2) ** e


def encloses(ball: CertReal, x: mpmath.mpf, slack_bits: int = 580) -> bool:
    # the oracle itself is only good to ~600 bits, so allow that much
    v = mpf_to_fraction(x)
    tol = abs(v) * Fraction(1, 2**slack_bits) + Fraction(1, 2**slack_bits)
    return ball.lo - tol <= v <= ball.hi + tol


# constants ---------------------------------------------------------------


def test_gamma_rejects_coarse_precision():
    with pytest.raises(ValueError):
        const_gamma(16)


def test_gamma_characteristic_polynomial():
    g = const_gamma(64)
    assert abs(float(g) - 2.4142135623730951) < 1e-15
    residual = g.mid * g.mid - 2 * g.mid - 1
    assert abs(residual) <= 3 * g.rad * (2 * abs(g.mid) + 2)
    assert g.rad <= Fraction(2, 2**64) * abs(g.mid)


def test_gamma_refines():
    coarse, fine = const_gamma(64), const_gamma(256)
    assert coarse.contains(fine)


def test_gamma_delta_product_and_sum():
    assert (const_gamma(128) * const_delta(128)).contains(-1)
    assert (const_gamma(128) + const_delta(128)).contains(2)


def test_gamma_matches_mpmath():
    assert encloses(const_gamma(512), 1 + mpmath.sqrt(2))


# arithmetic ----------------------------------------------------------------


def test_self_subtraction_contains_zero():
    d = CertReal.exact(2) - CertReal.exact(2)
    assert d.contains(0) and d.rad >= 0


def test_one_third():
    assert (CertReal.exact(1, 64) / CertReal.exact(3, 64)).contains(Fraction(1, 3))


def test_division_by_ball_containing_zero():
    z = CertReal.from_interval(Fraction(-1, 10), Fraction(1, 10), 64)
    with pytest.raises(ZeroDivisionError):
        CertReal.exact(1) / z


def test_floats_are_rejected():
    with pytest.raises(TypeError):
        CertReal.exact(1) + 0.5


def test_negative_radius_rejected():
    with pytest.raises(ValueError):
        CertReal(Fraction(1), Fraction(-1), 64)


# transcendental ------------------------------------------------------------


def test_ln_one_is_zero():
    assert ln(CertReal.exact(1, 64)).contains(0)


def test_exp_ln_round_trip():
    assert exp(ln(const_gamma(256))).contains(const_gamma(256).mid)


def test_tau_between_one_and_two_at_two_precisions():
    a = const_ln_gamma(128) / const_ln(2, 128)
    b = const_ln_gamma(512) / const_ln(2, 512)
    assert a.overlaps(b)
    assert 1 < a.lo and a.hi < 2 and 1 < b.lo and b.hi < 2


@pytest.mark.parametrize("bad", [Fraction(0), Fraction(-3)])
def test_ln_sqrt_domain(bad):
    with pytest.raises(BallDomainError):
        ln(CertReal.exact(bad))
    if bad < 0:
        with pytest.raises(BallDomainError):
            sqrt(CertReal.exact(bad))


def test_ln_rejects_ball_straddling_zero():
    with pytest.raises(BallDomainError):
        ln(CertReal.from_interval(Fraction(-1, 100), Fraction(1, 100), 64))


@pytest.mark.parametrize("seed", range(40))
def test_transcendentals_against_mpmath(seed):
    rng = random.Random(seed)
    x = Fraction(rng.randint(1, 10**12), rng.randint(1, 10**9))
    mx = mpmath.mpf(x.numerator) / x.denominator
    ball = CertReal.exact(x, 512)
    assert encloses(ln(ball), mpmath.log(mx))
    assert encloses(sqrt(ball), mpmath.sqrt(mx))
    y = Fraction(rng.randint(-4000, 4000), rng.randint(1, 100))
    assert encloses(exp(CertReal.exact(y, 512)), mpmath.exp(mpmath.mpf(y.numerator) / y.denominator))


def test_ln_near_one_keeps_relative_accuracy():
    x = 1 + Fraction(1, 2**300)
    v = ln(CertReal.exact(x, 512))
    assert v.sign() is Sign.POSITIVE
    assert encloses(v, mpmath.log(1 + mpmath.mpf(2) ** -300), slack_bits=1100)


def test_wide_ball_monotone_functions_cover_endpoints():
    b = CertReal.from_interval(Fraction(2), Fraction(3), 64)
    assert ln(b).contains(ln(CertReal.exact(2, 64)).mid)
    assert ln(b).contains(ln(CertReal.exact(3, 64)).mid)


# refinement -----------------------------------------------------------------


@pytest.mark.parametrize("expr", [
    lambda p: const_ln_gamma(p) / const_ln(2, p),
    lambda p: exp(const_ln(3, p)) - 3,
    lambda p: pow_int(const_gamma(p), 77),
])
def test_doubling_precision_refines(expr):
    prev = expr(64)
    for p in (128, 256, 512, 1024):
        cur = expr(p)
        assert cur.rad <= prev.rad
        assert prev.lo - prev.rad <= cur.lo and cur.hi <= prev.hi + prev.rad
        prev = cur


# sign -------------------------------------------------------------------------


@pytest.mark.parametrize("mid,rad,expected", [
    (Fraction(1, 10), Fraction(1, 100), Sign.POSITIVE),
    (Fraction(0), Fraction(1), Sign.UNCERTAIN),
    (Fraction(-3, 10), Fraction(5, 100), Sign.NEGATIVE),
])
def test_sign_certain(mid, rad, expected):
    assert sign_certain(CertReal.make(mid, rad, 64)) is expected


def test_certify_sign_escalates():
    # ln 3 * 2^-100 is invisible at 64 bits after the cancellation
    sign, ball = certify_sign(lambda p: const_ln(3, p) - const_ln(3, p) * (1 - Fraction(1, 2**100)), 64, 1024)
    assert sign is Sign.POSITIVE and ball.prec > 64


def test_certify_sign_reports_uncertain_at_cap():
    sign, ball = certify_sign(lambda p: const_ln(3, p) - const_ln(3, p), 64, 256)
    assert sign is Sign.UNCERTAIN and ball.prec == 256


# enclosure property ------------------------------------------------------------

rationals = st.fractions(min_value=-10**6, max_value=10**6, max_denominator=10**6)


@st.composite
def expressions(draw, depth=4):
    """(exact value, ball) pairs built from random operations."""
    prec = draw(st.sampled_from([32, 53, 64, 128, 256]))
    leaf = draw(rationals)
    value, ball = leaf, CertReal.exact(leaf, prec)
    for _ in range(draw(st.integers(1, depth))):
        op = draw(st.sampled_from("+-*/^"))
        r = draw(rationals)
        rb = CertReal.exact(r, prec)
        if op == "+":
            value, ball = value + r, ball + rb
        elif op == "-":
            value, ball = value - r, ball - rb
        elif op == "*":
            value, ball = value * r, ball * rb
        elif op == "/":
            if rb.contains(0):
                continue
            value, ball = value / r, ball / rb
        else:
            k = draw(st.integers(0, 5))
            value, ball = value**k, pow_int(ball, k)
    return value, ball


@settings(max_examples=500, deadline=None)
@given(expressions())
def test_enclosure(pair):
    value, ball = pair
    assert ball.contains(value)
    assert ball.rad >= 0


@settings(max_examples=200, deadline=None)
@given(st.fractions(min_value=Fraction(1, 10**4), max_value=10**6, max_denominator=10**4))
def test_exp_ln_inverse(x):
    b = CertReal.exact(x, 128)
    assert exp(ln(b)).contains(x)


# interchange --------------------------------------------------------------------


def test_dyadic_decimal_exact():
    assert dyadic_to_decimal(Fraction(-5, 8)) == "-0.625"
    assert dyadic_to_decimal(Fraction(12)) == "12"
    with pytest.raises(ValueError):
        dyadic_to_decimal(Fraction(1, 3))


def test_json_round_trip():
    for b in (const_gamma(512), const_ln_gamma(1024) / const_ln(2, 1024), CertReal.exact(0)):
        assert from_json(to_json(b)) == b
