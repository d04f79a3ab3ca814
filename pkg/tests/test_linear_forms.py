import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pelljac.ball import CertReal, Sign, const_ln, const_ln_gamma
from pelljac.linear_forms import (
    FORMS,
    A_admissible,
    Equation,
    FormLabel,
    LinearFormInstance,
    QuadraticNumber,
    RationalShift,
    absolute_bound_n,
    eta1,
    eval_linear_form,
    form_upper_bound,
    height_bound_eta1,
    height_quadratic,
    height_slack,
    instance,
    k_less_than_2n_from,
    k_upper_bound,
    linear_form_sign,
    matveev_constant,
    matveev_first_coefficient,
    matveev_lower_bound,
    published_A,
)
from pelljac.pipeline import search_box

L1, L2, L3, L4 = FormLabel.LAMBDA1, FormLabel.LAMBDA2, FormLabel.LAMBDA3, FormLabel.LAMBDA4


# quadratic numbers and heights ----------------------------------------------


def test_canonical_form():
    x = QuadraticNumber(4, 6, -8)
    assert (x.a, x.b, x.denom) == (-2, -3, 4)
    assert QuadraticNumber(1, 1, 1).conjugate() == QuadraticNumber(1, -1, 1)


def test_gamma_is_a_unit():
    g = QuadraticNumber(1, 1, 1)
    assert g * g.conjugate() == QuadraticNumber(-1, 0, 1)
    assert g.inverse() == QuadraticNumber(-1, 1, 1)


def test_rational_shift():
    assert RationalShift(3, 2).to_fraction() == Fraction(12, 5)
    assert RationalShift(3, 0).to_fraction() == Fraction(3, 2)


@pytest.mark.parametrize("x,expected", [
    (QuadraticNumber(2, 0, 1), lambda p: const_ln(2, p)),
    (QuadraticNumber(1, 1, 1), lambda p: const_ln_gamma(p) / 2),
    (QuadraticNumber(1, 0, 1), lambda p: CertReal.exact(0, p)),
    (QuadraticNumber(3, 0, 1), lambda p: const_ln(3, p)),
])
def test_height_examples(x, expected):
    assert height_quadratic(x, 256).overlaps(expected(256))


def test_height_of_zero_rejected():
    with pytest.raises(ValueError):
        height_quadratic(QuadraticNumber(0, 0, 1))


quadratics = st.builds(
    QuadraticNumber,
    st.integers(-50, 50),
    st.integers(-50, 50),
    st.integers(1, 50),
).filter(lambda x: not x.is_zero())


@settings(max_examples=150, deadline=None)
@given(quadratics, quadratics)
def test_height_subadditive(x, y):
    hxy = height_quadratic(x * y, 256)
    assert hxy.lo <= (height_quadratic(x, 256) + height_quadratic(y, 256)).hi


@settings(max_examples=100, deadline=None)
@given(quadratics, st.integers(-4, 4))
def test_height_of_power(x, s):
    assert height_quadratic(x**s, 512).overlaps(abs(s) * height_quadratic(x, 512))


def test_height_bound_examples():
    p = 256
    assert height_bound_eta1(L3, 5, p).overlaps(const_ln(3, p))
    assert height_bound_eta1(L1, 0, p).overlaps(const_ln(3, p) + Fraction(3, 2) * const_ln(2, p))
    assert height_bound_eta1(L4, 0, p).overlaps(const_ln(3, p) + const_ln(2, p))
    with pytest.raises(ValueError):
        height_bound_eta1(L2, -1)


@pytest.mark.parametrize("label", list(FormLabel))
@pytest.mark.parametrize("d", [0, 1, 2, 7, 60, 118])
def test_published_height_bounds_are_valid(label, d):
    slack = height_slack(label, d)
    if label is L3:
        assert slack.contains(0)  # h(3) = log 3 exactly
    else:
        assert slack.lo > 0


@pytest.mark.parametrize("label", list(FormLabel))
@pytest.mark.parametrize("d", [0, 1, 5, 117])
def test_published_A_is_admissible(label, d):
    assert A_admissible(label, d)


# Matveev ------------------------------------------------------------------------


def test_matveev_first_coefficients():
    assert matveev_first_coefficient(Equation.PELL).hi <= 6 * 10**12
    assert matveev_first_coefficient(Equation.PELL_LUCAS).hi <= 3 * 10**12


@pytest.mark.parametrize("n", [1, 2, 10, 10**6, 10**28])
def test_matveev_lower_bound_against_rounded(n):
    for label, coeff in ((L1, 6 * 10**12), (L3, 3 * 10**12)):
        bound = matveev_lower_bound(instance(label, n))
        published = -coeff * (1 + const_ln(2 * n))
        assert bound.lo >= published.hi


def test_doubling_an_A_makes_bound_more_negative():
    inst = instance(L3, 1000)
    A = list(inst.A)
    A[1] = 2 * A[1]
    doubled = LinearFormInstance(L3, 3, 2, inst.B, tuple(A))
    assert matveev_lower_bound(doubled).hi < matveev_lower_bound(inst).lo


def test_instance_validation():
    p = 128
    A = published_A(L3, 0, p)
    with pytest.raises(ValueError):
        LinearFormInstance(L3, 3, 2, CertReal.exact(1, p), (CertReal.exact(Fraction(1, 10), p),) + A[1:])
    with pytest.raises(ValueError):
        LinearFormInstance(L3, 3, 2, CertReal.exact(Fraction(1, 2), p), A)


def test_matveev_constant_closed_form():
    A = [CertReal.exact(1, 256)] * 3
    expected = 1.4 * 30**6 * 3**4.5 * 4 * (1 + math.log(2))
    assert abs(float(matveev_constant(3, 2, A, 256)) / expected - 1) < 1e-12


@pytest.mark.parametrize("seed", range(6))
def test_matveev_conclusion_on_samples(seed):
    rng = random.Random(seed)
    for label in FormLabel:
        n = rng.randint(3, 60)
        m = rng.randint(0, n)
        k = rng.randint(0, 2 * n - 1)
        sign, val = linear_form_sign(label, k, n, m)
        if sign is Sign.UNCERTAIN:
            continue
        # log|Lambda| >= Matveev bound, with the n - m dependent A1
        bound = matveev_lower_bound(instance(label, n, n - m))
        assert val.sign() is not Sign.UNCERTAIN
        assert abs(float(val)) > 0 and math.log(abs(float(val))) > float(bound.hi)


def test_absolute_bounds():
    pell = absolute_bound_n(Equation.PELL)
    assert pell <= 2 * 10**29
    assert absolute_bound_n(Equation.PELL_LUCAS) < pell


# k < 2n ---------------------------------------------------------------------------


def test_k_less_than_2n_threshold():
    assert k_less_than_2n_from(Equation.PELL) == 2
    assert k_less_than_2n_from(Equation.PELL_LUCAS) == 1


@pytest.mark.parametrize("eq", list(Equation))
def test_index_relation_holds_at_solutions(eq):
    for s in search_box(eq, 80, 40, 40):
        if s.n >= 3:
            assert s.k <= k_upper_bound(eq, s.n).lo


# evaluation -----------------------------------------------------------------------


def test_lambda3_example():
    # 3 gamma^2 / 16 - 1 = (6 sqrt2 - 7) / 16, computed exactly in Q(sqrt2)
    g2 = QuadraticNumber(1, 1, 1) ** 2
    assert g2 == QuadraticNumber(3, 2, 1)
    exact = QuadraticNumber(3 * g2.a - 16, 3 * g2.b, 16)
    v = eval_linear_form(L3, 2, 4, 1, 256)
    assert v.sign() is Sign.POSITIVE
    assert v.overlaps(exact.value(256))


def test_lambda1_bound_at_110():
    v = eval_linear_form(L1, 1, 1, 0)
    assert abs(v).hi < form_upper_bound(L1, 1, 0) == 2


def test_lambda3_trivial():
    assert eval_linear_form(L3, 0, 0, 0).contains(2)


def test_form_domain():
    with pytest.raises(ValueError):
        eval_linear_form(L1, 1, 1, 2)


@pytest.mark.parametrize("eq", list(Equation))
def test_forms_at_solutions(eq):
    for s in search_box(eq, 480, 240, 122):
        if s.n < 1:
            continue
        for label in FORMS[eq]:
            sign, val = linear_form_sign(label, s.k, s.n, s.m)
            assert sign is not Sign.UNCERTAIN
            assert abs(val).hi < form_upper_bound(label, s.n, s.m)


def test_lambda4_vanishes_only_at_k_zero():
    sign, val = linear_form_sign(L4, 0, 1, 0)
    assert sign is Sign.UNCERTAIN and val.is_exact() and val.mid == 0
    assert eta1(L4, 1) == QuadraticNumber(2, 0, 1)
