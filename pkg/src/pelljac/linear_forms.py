"""Logarithmic heights in Q(sqrt 2) and Matveev lower bounds for the four linear forms.

The forms, with d = n - m:

    LAMBDA1 = 3 gamma^k 2^-n / (2 sqrt 2) - 1
    LAMBDA2 = 3 gamma^k 2^-n / (2 sqrt 2 (1 + 2^-d)) - 1
    LAMBDA3 = 3 gamma^k 2^-n - 1
    LAMBDA4 = 3 gamma^k 2^-n / (1 + 2^-d) - 1

LAMBDA1/2 come from P_k = J_n + J_m and LAMBDA3/4 from Q_k = J_n + J_m.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .ball import (
    DEFAULT_PRECISION,
    PRECISION_CAP,
    CertReal,
    Sign,
    UncertainError,
    certainly_le,
    certify_sign,
    const_gamma,
    const_ln,
    const_ln_gamma,
    const_sqrt2,
    ln,
    pow_int,
    sqrt,
)


class FormLabel(enum.Enum):
    LAMBDA1 = "Lambda1"
    LAMBDA2 = "Lambda2"
    LAMBDA3 = "Lambda3"
    LAMBDA4 = "Lambda4"


class Equation(enum.Enum):
    PELL = "pell"
    PELL_LUCAS = "pell-lucas"


# (first form, second form) for each equation
FORMS = {
    Equation.PELL: (FormLabel.LAMBDA1, FormLabel.LAMBDA2),
    Equation.PELL_LUCAS: (FormLabel.LAMBDA3, FormLabel.LAMBDA4),
}


@dataclass(frozen=True)
class QuadraticNumber:
    """(a + b*sqrt(2)) / denom in lowest terms with denom > 0."""

    a: int
    b: int
    denom: int = 1

    def __post_init__(self):
        if self.denom == 0:
            raise ZeroDivisionError("denominator is zero")
        g = math.gcd(self.a, self.b, self.denom)
        s = -1 if self.denom < 0 else 1
        object.__setattr__(self, "a", s * self.a // g)
        object.__setattr__(self, "b", s * self.b // g)
        object.__setattr__(self, "denom", s * self.denom // g)

    @classmethod
    def rational(cls, q: Fraction | int) -> QuadraticNumber:
        q = Fraction(q)
        return cls(q.numerator, 0, q.denominator)

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def conjugate(self) -> QuadraticNumber:
        return QuadraticNumber(self.a, -self.b, self.denom)

    def __mul__(self, other: QuadraticNumber) -> QuadraticNumber:
        return QuadraticNumber(
            self.a * other.a + 2 * self.b * other.b,
            self.a * other.b + self.b * other.a,
            self.denom * other.denom,
        )

    def inverse(self) -> QuadraticNumber:
        norm = self.a * self.a - 2 * self.b * self.b
        if norm == 0:
            raise ZeroDivisionError("inverse of zero")
        # 1/x = denom * conj / (a^2 - 2b^2)
        return QuadraticNumber(self.denom * self.a, -self.denom * self.b, norm)

    def __truediv__(self, other: QuadraticNumber) -> QuadraticNumber:
        return self * other.inverse()

    def __pow__(self, s: int) -> QuadraticNumber:
        base = self if s >= 0 else self.inverse()
        out = QuadraticNumber(1, 0, 1)
        for _ in range(abs(s)):
            out = out * base
        return out

    def minimal_polynomial(self) -> tuple[int, ...]:
        """Primitive integer minimal polynomial, leading coefficient first."""
        if self.b == 0:
            return (self.denom, -self.a)
        d = self.denom
        coeffs = (d * d, -2 * self.a * d, self.a * self.a - 2 * self.b * self.b)
        g = math.gcd(*coeffs)
        return tuple(c // g for c in coeffs)

    def value(self, prec: int = DEFAULT_PRECISION) -> CertReal:
        return (self.a + self.b * const_sqrt2(prec)) / self.denom


@dataclass(frozen=True)
class RationalShift:
    """numerator * 2^shift / (2^shift + 1), i.e. numerator / (1 + 2^-shift)."""

    numerator: int
    shift: int

    def __post_init__(self):
        if self.numerator <= 0 or self.shift < 0:
            raise ValueError("RationalShift needs a positive numerator and shift >= 0")

    def to_fraction(self) -> Fraction:
        return Fraction(self.numerator * 2**self.shift, 2**self.shift + 1)

    def as_quadratic(self) -> QuadraticNumber:
        return QuadraticNumber.rational(self.to_fraction())


def _max_one(x: CertReal) -> CertReal:
    x = abs(x)
    if x.lo >= 1:
        return x
    if x.hi <= 1:
        return CertReal.exact(1, x.prec)
    return CertReal.from_interval(Fraction(1), x.hi, x.prec)


def height_quadratic(x: QuadraticNumber, prec: int = DEFAULT_PRECISION) -> CertReal:
    """Absolute logarithmic height h(x)."""
    if x.is_zero():
        raise ValueError("height of zero is undefined")
    if x.b == 0:
        return const_ln(max(abs(x.a), x.denom), prec)
    lead = x.minimal_polynomial()[0]
    s = const_ln(lead, prec) + ln(_max_one(x.value(prec))) + ln(_max_one(x.conjugate().value(prec)))
    return s / 2


def eta1(label: FormLabel, n_minus_m: int = 0) -> QuadraticNumber:
    """The algebraic coefficient multiplying gamma^k 2^-n in each form."""
    root2 = QuadraticNumber(0, 1, 1)
    if label is FormLabel.LAMBDA1:
        return QuadraticNumber(3, 0, 2) / root2
    if label is FormLabel.LAMBDA3:
        return QuadraticNumber(3, 0, 1)
    shifted = RationalShift(3, n_minus_m).as_quadratic()
    if label is FormLabel.LAMBDA4:
        return shifted
    return shifted / QuadraticNumber(0, 2, 1)


def height_bound_eta1(label: FormLabel, n_minus_m: int = 0, prec: int = DEFAULT_PRECISION) -> CertReal:
    """The published upper bound for h(eta1), as used for A1 = 2 h(eta1).

    For LAMBDA2 the published decomposition over-counts by one log 2; the
    bound is still valid, see :func:`height_slack`.
    """
    if n_minus_m < 0:
        raise ValueError("n_minus_m must be non-negative")
    l2, l3 = const_ln(2, prec), const_ln(3, prec)
    if label is FormLabel.LAMBDA1:
        return l3 + l2 * Fraction(3, 2)
    if label is FormLabel.LAMBDA2:
        return l3 + l2 * (Fraction(5, 2) + n_minus_m)
    if label is FormLabel.LAMBDA3:
        return l3
    return l3 + l2 * (1 + n_minus_m)


def height_slack(label: FormLabel, n_minus_m: int = 0, prec: int = DEFAULT_PRECISION) -> CertReal:
    """Published bound minus the exact height of eta1 (non-negative when valid)."""
    return height_bound_eta1(label, n_minus_m, prec) - height_quadratic(eta1(label, n_minus_m), prec)


@dataclass(frozen=True)
class LinearFormInstance:
    label: FormLabel
    l: int
    D: int
    B: CertReal
    A: tuple[CertReal, ...]

    def __post_init__(self):
        if self.l < 2 or self.D < 1 or len(self.A) != self.l:
            raise ValueError("need l >= 2, D >= 1 and one A_i per multiplicand")
        floor_a = CertReal.exact(Fraction(16, 100), self.A[0].prec)
        if not all(certainly_le(floor_a, a) for a in self.A):
            raise ValueError("every A_i must be certainly >= 0.16")
        if not certainly_le(CertReal.exact(1, self.B.prec), self.B):
            raise ValueError("B must be certainly >= 1")


def matveev_constant(l: int, D: int, A: Sequence[CertReal], prec: int = DEFAULT_PRECISION) -> CertReal:
    """1.4 * 30^(l+3) * l^4.5 * D^2 * (1 + log D) * A_1 ... A_l."""
    c = CertReal.exact(Fraction(14, 10) * 30 ** (l + 3) * l**4 * D * D, prec)
    c = c * sqrt(CertReal.exact(l, prec)) * (1 + const_ln(D, prec))
    for a in A:
        c = c * a
    return c


def matveev_lower_bound(inst: LinearFormInstance) -> CertReal:
    """Lower bound for log|Lambda| (a negative number)."""
    prec = inst.B.prec
    return -matveev_constant(inst.l, inst.D, inst.A, prec) * (1 + ln(inst.B))


def published_A(label: FormLabel, n_minus_m: int = 0, prec: int = DEFAULT_PRECISION) -> tuple[CertReal, ...]:
    """(A1, A2, A3) = (2 h-bound(eta1), log gamma, 2 log 2)."""
    return (
        2 * height_bound_eta1(label, n_minus_m, prec),
        const_ln_gamma(prec),
        2 * const_ln(2, prec),
    )


def instance(label: FormLabel, n: int, n_minus_m: int = 0, prec: int = DEFAULT_PRECISION) -> LinearFormInstance:
    """The instance with B = 2n used for every form."""
    return LinearFormInstance(label, 3, 2, CertReal.exact(2 * n, prec), published_A(label, n_minus_m, prec))


def _le_or_same(x: CertReal, a: CertReal) -> bool:
    # identical balls arise only from the identities 2h(gamma) = log gamma,
    # 2h(2) = 2 log 2 and h(3) = log 3, which are evaluated by the same operations
    return certainly_le(x, a) or (x.mid == a.mid and x.rad == a.rad)


def A_admissible(label: FormLabel, n_minus_m: int = 0, prec: int = DEFAULT_PRECISION) -> bool:
    """Certify A_i >= max(D h(eta_i), |log eta_i|, 0.16) for the published A_i."""
    etas = (eta1(label, n_minus_m), QuadraticNumber(1, 1, 1), QuadraticNumber(2, 0, 1))
    floor_a = CertReal.exact(Fraction(16, 100), prec)
    for a, eta in zip(published_A(label, n_minus_m, prec), etas):
        need = (2 * height_quadratic(eta, prec), abs(ln(eta.value(prec))), floor_a)
        if not all(_le_or_same(x, a) for x in need):
            return False
    return True


def matveev_first_coefficient(equation: Equation, prec: int = DEFAULT_PRECISION) -> CertReal:
    """Coefficient C with log|Lambda_first| > -C (1 + log 2n)."""
    label = FORMS[equation][0]
    return matveev_constant(3, 2, published_A(label, 0, prec), prec)


def matveev_base(prec: int = DEFAULT_PRECISION) -> CertReal:
    """Matveev constant for the second form with A1 factored out."""
    return matveev_constant(3, 2, published_A(FormLabel.LAMBDA3, 0, prec)[1:], prec)


# absolute bound on n --------------------------------------------------


@dataclass(frozen=True)
class ChainCoefficients:
    """n log 2 < c0 + c1 (1 + log 2n) + c2 (1 + log 2n)^2."""

    c0: CertReal
    c1: CertReal
    c2: CertReal


# upper bounds on |Lambda| * 2^(n-m) and |Lambda| * 2^m
FIRST_FORM_FACTOR = 4
SECOND_FORM_FACTOR = 5


def chain_coefficients(equation: Equation, prec: int = DEFAULT_PRECISION) -> ChainCoefficients:
    """Combine the two Matveev applications into one inequality in n.

    First form:  (n-m) log 2 < log 4 + C (1 + L)            with L = log 2n
    Second form: m log 2 < log 5 + K (1 + L)(a1 + 2 (n-m) log 2)
    where K is the Matveev constant without A1 and a1 the constant part of A1.
    """
    C = matveev_first_coefficient(equation, prec)
    K = matveev_base(prec)
    a1 = 2 * height_bound_eta1(FORMS[equation][1], 0, prec)
    l4 = const_ln(FIRST_FORM_FACTOR, prec)
    l5 = const_ln(SECOND_FORM_FACTOR, prec)
    return ChainCoefficients(
        c0=l4 + l5,
        c1=C + K * (a1 + 2 * l4),
        c2=2 * K * C,
    )


def _chain_excess(coeffs: ChainCoefficients, n: int, prec: int) -> tuple[CertReal, CertReal]:
    """(f(n), f'(n)*n) for f(n) = c0 + c1 (1+L) + c2 (1+L)^2 - n log 2."""
    L1 = 1 + const_ln(2 * n, prec)
    l2 = const_ln(2, prec)
    f = coeffs.c0 + coeffs.c1 * L1 + coeffs.c2 * L1 * L1 - l2 * n
    df = coeffs.c1 + 2 * coeffs.c2 * L1 - l2 * n
    return f, df


def chain_closes_at(coeffs: ChainCoefficients, n: int, prec: int = DEFAULT_PRECISION) -> bool:
    """Certify f(N) < 0 and f'(N) < 0; f' decreases for n >= 1, so no solution n >= N."""
    f, df = _chain_excess(coeffs, n, prec)
    return f.sign() is Sign.NEGATIVE and df.sign() is Sign.NEGATIVE


def _round_up_one_digit(x: int) -> int:
    e = len(str(x)) - 1
    unit = 10**e
    lead = -(-x // unit)
    return lead * unit


def solve_chain(coeffs: ChainCoefficients, prec: int = DEFAULT_PRECISION, hi: int = 10**40) -> int:
    """Smallest N of the form c * 10^e (one significant digit) with the chain closed at N."""
    if not chain_closes_at(coeffs, hi, prec):
        raise UncertainError(f"bound chain does not close below {hi}", precision=prec)
    lo = 1
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if chain_closes_at(coeffs, mid, prec):
            hi = mid
        else:
            lo = mid
    N = _round_up_one_digit(hi)
    if not chain_closes_at(coeffs, N, prec):
        raise UncertainError(f"bound chain fails at rounded bound {N}", precision=prec)
    return N


def absolute_bound_n(equation: Equation, prec: int = DEFAULT_PRECISION) -> int:
    """Certified N with n < N for every solution (n >= 2)."""
    return solve_chain(chain_coefficients(equation, prec), prec)


def published_chain_coefficients(equation: Equation, prec: int = DEFAULT_PRECISION) -> ChainCoefficients:
    """The rounded coefficients as published."""
    c = {
        Equation.PELL: (3, 6 * 10**13, 24 * 10**27),
        Equation.PELL_LUCAS: (3, 11 * 10**12, 12 * 10**24),
    }[equation]
    return ChainCoefficients(*(CertReal.exact(x, prec) for x in c))


def k_less_than_2n_from(equation: Equation, prec: int = DEFAULT_PRECISION) -> int:
    """Smallest n0 with k < 2n certified for all n >= n0.

    Uses k <= n log2/log(gamma) + 2 (Pell) and k <= (n-1) log2/log(gamma) + 1
    (Pell-Lucas); both are linear in n with slope < 2.
    """
    r = const_ln(2, prec) / const_ln_gamma(prec)
    # k_max(n) = r*n + c; need (2 - r) n > c
    c = 2 if equation is Equation.PELL else 1 - r
    threshold = c / (2 - r)
    fl = threshold.floor()
    if fl is None:
        raise UncertainError("cannot certify the k < 2n threshold", precision=prec)
    return fl + 1


def k_upper_bound(equation: Equation, n: int, prec: int = DEFAULT_PRECISION) -> CertReal:
    r = const_ln(2, prec) / const_ln_gamma(prec)
    if equation is Equation.PELL:
        return r * n + 2
    return r * (n - 1) + 1


# evaluation -------------------------------------------------------------


def eval_linear_form(label: FormLabel, k: int, n: int, m: int, prec: int = DEFAULT_PRECISION) -> CertReal:
    if min(k, n, m) < 0 or m > n:
        raise ValueError("need k, n, m >= 0 and m <= n")
    x = pow_int(const_gamma(prec), k) * 3 / CertReal.exact(2**n, prec)
    if label in (FormLabel.LAMBDA1, FormLabel.LAMBDA2):
        x = x / (2 * const_sqrt2(prec))
    if label in (FormLabel.LAMBDA2, FormLabel.LAMBDA4):
        x = x / CertReal.exact(1 + Fraction(1, 2 ** (n - m)), prec)
    return x - 1


def linear_form_sign(
    label: FormLabel, k: int, n: int, m: int, prec: int = DEFAULT_PRECISION, cap: int = PRECISION_CAP
) -> tuple[Sign, CertReal]:
    """Sign of the form with precision escalation; UNCERTAIN only for an exact zero or at the cap."""
    return certify_sign(lambda p: eval_linear_form(label, k, n, m, p), prec, cap)


def form_upper_bound(label: FormLabel, n: int, m: int) -> Fraction:
    """The published bound on |Lambda|: 4/2^(n-m) for first forms, 5/2^m for second."""
    if label in (FormLabel.LAMBDA1, FormLabel.LAMBDA3):
        return Fraction(FIRST_FORM_FACTOR, 2 ** (n - m))
    return Fraction(SECOND_FORM_FACTOR, 2**m)
