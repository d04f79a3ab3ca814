"""Midpoint-radius balls over exact dyadic rationals.

A :class:`CertReal` stores a dyadic midpoint rounded to ``prec`` significant
bits and a radius rounded *up* to a short dyadic.  Every operation returns a
ball that contains the exact result whenever the inputs contain their exact
values.  Transcendental functions are evaluated in integer fixed point with an
explicit error count, never through hardware floats.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Union

DEFAULT_PRECISION = 512
PRECISION_CAP = 16384
MIN_PRECISION = 32

_RAD_BITS = 32
_GUARD = 24

Number = Union[int, Fraction]


class BallDomainError(ValueError):
    """Function argument is outside the domain, or not certainly inside it."""


class UncertainError(ArithmeticError):
    """A sign, floor or comparison could not be certified at the precision cap."""

    def __init__(self, message: str, *, precision: int | None = None, index: int | None = None):
        super().__init__(message)
        self.precision = precision
        self.index = index


class Sign(enum.Enum):
    POSITIVE = "positive"
    NEGATIVE = "negative"
    UNCERTAIN = "uncertain"


def _is_pow2(n: int) -> bool:
    return n & (n - 1) == 0


def _scale(num: int, den: int, shift: int) -> tuple[int, int]:
    """Return (num * 2**shift, den) as integers without fractional shifts."""
    if shift >= 0:
        return num << shift, den
    return num, den << -shift


def _round_mid(x: Fraction, prec: int) -> tuple[Fraction, Fraction]:
    """Round ``x`` to ``prec`` significant bits; return (rounded, |error|)."""
    num, den = x.numerator, x.denominator
    if num == 0 or (_is_pow2(den) and abs(num).bit_length() <= prec):
        return x, Fraction(0)
    e = abs(num).bit_length() - den.bit_length()
    shift = prec - e
    a, b = _scale(num, den, shift)
    n = (2 * a + b) // (2 * b)
    r = Fraction(n, 1 << shift) if shift >= 0 else Fraction(n << -shift)
    return r, abs(x - r)


def _up(r: Fraction) -> Fraction:
    """Smallest short dyadic >= r (r >= 0)."""
    num, den = r.numerator, r.denominator
    if num == 0 or (_is_pow2(den) and num.bit_length() <= _RAD_BITS):
        return r
    e = num.bit_length() - den.bit_length()
    shift = _RAD_BITS - e
    a, b = _scale(num, den, shift)
    n = -(-a // b)
    return Fraction(n, 1 << shift) if shift >= 0 else Fraction(n << -shift)


@dataclass(frozen=True)
class CertReal:
    """The closed interval ``[mid - rad, mid + rad]``."""

    mid: Fraction
    rad: Fraction
    prec: int

    def __post_init__(self):
        if self.rad < 0:
            raise ValueError("radius must be non-negative")
        if self.prec < 1:
            raise ValueError("precision must be positive")

    # construction -----------------------------------------------------

    @classmethod
    def make(cls, mid: Fraction, rad: Fraction, prec: int) -> CertReal:
        m, err = _round_mid(Fraction(mid), prec)
        return cls(m, _up(Fraction(rad) + err), prec)

    @classmethod
    def exact(cls, value: Number | str, prec: int = DEFAULT_PRECISION) -> CertReal:
        return cls.make(Fraction(value), Fraction(0), prec)

    @classmethod
    def from_interval(cls, lo: Fraction, hi: Fraction, prec: int) -> CertReal:
        if lo > hi:
            raise ValueError("empty interval")
        return cls.make((lo + hi) / 2, (hi - lo) / 2, prec)

    # inspection -------------------------------------------------------

    @property
    def lo(self) -> Fraction:
        return self.mid - self.rad

    @property
    def hi(self) -> Fraction:
        return self.mid + self.rad

    def is_exact(self) -> bool:
        return self.rad == 0

    def contains(self, x: Number | CertReal) -> bool:
        if isinstance(x, CertReal):
            return self.lo <= x.lo and x.hi <= self.hi
        return self.lo <= x <= self.hi

    def overlaps(self, other: CertReal) -> bool:
        return self.lo <= other.hi and other.lo <= self.hi

    def sign(self) -> Sign:
        if self.lo > 0:
            return Sign.POSITIVE
        if self.hi < 0:
            return Sign.NEGATIVE
        return Sign.UNCERTAIN

    def floor(self) -> int | None:
        """The common floor of every point in the ball, or None."""
        f = math.floor(self.lo)
        return f if math.floor(self.hi) == f else None

    def __float__(self) -> float:
        return float(self.mid)

    def __repr__(self) -> str:
        return f"CertReal({float(self.mid)!r} +/- {float(self.rad):.3g}, prec={self.prec})"

    def with_prec(self, prec: int) -> CertReal:
        return CertReal.make(self.mid, self.rad, prec)

    # arithmetic -------------------------------------------------------

    def _coerce(self, other) -> CertReal:
        if isinstance(other, CertReal):
            return other
        if isinstance(other, (int, Fraction)):
            return CertReal.exact(other, self.prec)
        return NotImplemented

    def __neg__(self) -> CertReal:
        return CertReal(-self.mid, self.rad, self.prec)

    def __abs__(self) -> CertReal:
        if self.sign() is Sign.UNCERTAIN:
            return CertReal.from_interval(Fraction(0), max(-self.lo, self.hi), self.prec)
        return self if self.mid >= 0 else -self

    def __add__(self, other) -> CertReal:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return CertReal.make(self.mid + other.mid, self.rad + other.rad, max(self.prec, other.prec))

    __radd__ = __add__

    def __sub__(self, other) -> CertReal:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return CertReal.make(self.mid - other.mid, self.rad + other.rad, max(self.prec, other.prec))

    def __rsub__(self, other) -> CertReal:
        return (-self).__add__(other)

    def __mul__(self, other) -> CertReal:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        rad = abs(self.mid) * other.rad + abs(other.mid) * self.rad + self.rad * other.rad
        return CertReal.make(self.mid * other.mid, rad, max(self.prec, other.prec))

    __rmul__ = __mul__

    def __truediv__(self, other) -> CertReal:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        bm = abs(other.mid)
        if bm <= other.rad:
            raise ZeroDivisionError(f"division by a ball containing zero: {other!r}")
        rad = (abs(self.mid) * other.rad + bm * self.rad) / (bm * (bm - other.rad))
        return CertReal.make(self.mid / other.mid, rad, max(self.prec, other.prec))

    def __rtruediv__(self, other) -> CertReal:
        return CertReal.exact(other, self.prec) / self

    def __pow__(self, k: int) -> CertReal:
        return pow_int(self, k)


Real = Union[CertReal, Callable[[int], CertReal]]


def at(x: Real, prec: int) -> CertReal:
    """Evaluate a lazily specified real at ``prec`` bits; fixed balls pass through."""
    return x(prec) if callable(x) else x


def hull(a: CertReal, b: CertReal) -> CertReal:
    return CertReal.from_interval(min(a.lo, b.lo), max(a.hi, b.hi), max(a.prec, b.prec))


def pow_int(a: CertReal, k: int) -> CertReal:
    if k < 0:
        return CertReal.exact(1, a.prec) / pow_int(a, -k)
    result = CertReal.exact(1, a.prec)
    base = a
    while k:
        if k & 1:
            result = result * base
        k >>= 1
        if k:
            base = base * base
    return result


# fixed-point kernels --------------------------------------------------
#
# Each kernel returns (v, e) with |f(x) * 2**w - v| <= e.


def _atanh_fixed(num: int, den: int, w: int) -> tuple[int, int]:
    """atanh(num/den) for |num/den| <= 1/2."""
    t2n, t2d = num * num, den * den
    p = (num << w) // den
    perr = 1
    total = 0
    err = 0
    j = 0
    while True:
        total += p // (2 * j + 1)
        err += perr + 1
        p = p * t2n // t2d
        perr += 1
        j += 1
        if abs(p) <= perr:
            # tail <= |t|^(2j+1) / (1 - t^2), and t^2 <= 1/4
            return total, err + 2 * (abs(p) + perr)


@lru_cache(maxsize=64)
def _ln2_fixed(w: int) -> tuple[int, int]:
    s, e = _atanh_fixed(1, 3, w)
    return 2 * s, 2 * e


def _ln_point(x: Fraction, w: int) -> tuple[int, int]:
    num, den = x.numerator, x.denominator
    k = num.bit_length() - den.bit_length()
    yn, yd = _scale(num, den, -k)
    # y = yn/yd in (1/2, 2), so t = (y-1)/(y+1) has |t| < 1/3
    s, se = _atanh_fixed(yn - yd, yn + yd, w)
    l2, l2e = _ln2_fixed(w)
    return k * l2 + 2 * s, abs(k) * l2e + 2 * se


def _exp_point(x: Fraction, w: int) -> tuple[Fraction, Fraction]:
    """exp(x) as (value, abs error) Fractions."""
    l2, l2e = _ln2_fixed(w)
    k = round(x * (1 << w) / l2)
    r = x - Fraction(k * l2, 1 << w)
    delta = Fraction(abs(k) * l2e, 1 << w)
    rn, rd = _scale(r.numerator, r.denominator, w)
    rf = rn // rd
    one = 1 << w
    term = one
    total = one
    terr = 0
    err = 0
    j = 1
    while True:
        term = term * rf // (j << w)
        terr += 2
        total += term
        err += terr
        j += 1
        if abs(term) <= terr:
            err += 2 * (abs(term) + terr)
            break
    value = Fraction(total, one)
    abs_err = Fraction(err, one) + (value + Fraction(err, one)) * 2 * delta
    scale = Fraction(2) ** k
    return value * scale, abs_err * scale


def _work_bits(prec: int) -> int:
    return prec + _GUARD


def _sqrt_point(x: Fraction, prec: int) -> tuple[Fraction, Fraction]:
    """Return (lower, upper) bounds on sqrt(x)."""
    if x == 0:
        return x, x
    e = x.numerator.bit_length() - x.denominator.bit_length()
    w = _work_bits(prec) + max(0, -e) // 2 + 1
    a, b = _scale(x.numerator, x.denominator, 2 * w)
    s = math.isqrt(a // b)
    return Fraction(s, 1 << w), Fraction(s + 1, 1 << w)


def _monotone(a: CertReal, point: Callable[[Fraction], tuple[Fraction, Fraction]]) -> CertReal:
    lo_lo, lo_hi = point(a.lo)
    if a.is_exact():
        return CertReal.from_interval(lo_lo, lo_hi, a.prec)
    hi_lo, hi_hi = point(a.hi)
    return CertReal.from_interval(lo_lo, hi_hi, a.prec)


def sqrt(a: CertReal) -> CertReal:
    if a.lo < 0:
        raise BallDomainError(f"sqrt of a ball that is not certainly non-negative: {a!r}")
    return _monotone(a, lambda x: _sqrt_point(x, a.prec))


def ln(a: CertReal) -> CertReal:
    if a.lo <= 0:
        raise BallDomainError(f"ln of a ball that is not certainly positive: {a!r}")
    if a.is_exact() and a.mid == 1:
        return CertReal(Fraction(0), Fraction(0), a.prec)

    def point(x: Fraction) -> tuple[Fraction, Fraction]:
        # absolute error target: 2**-(prec + guard) relative to |ln x| >= ~2**-bits
        w = _work_bits(a.prec) + max(0, _closeness_to_one(x))
        v, e = _ln_point(x, w)
        return Fraction(v - e, 1 << w), Fraction(v + e, 1 << w)

    return _monotone(a, point)


def _closeness_to_one(x: Fraction) -> int:
    """Roughly -log2|x - 1|, so ln near 1 keeps relative precision."""
    d = x - 1
    if d == 0:
        return 0
    return d.denominator.bit_length() - abs(d.numerator).bit_length()


def exp(a: CertReal) -> CertReal:
    def point(x: Fraction) -> tuple[Fraction, Fraction]:
        k_bits = abs(math.floor(x)).bit_length()
        v, e = _exp_point(x, _work_bits(a.prec) + k_bits)
        return v - e, v + e

    return _monotone(a, point)


# constants ------------------------------------------------------------


def _check_prec(prec: int) -> None:
    if prec < MIN_PRECISION:
        raise ValueError(f"precision_bits must be >= {MIN_PRECISION}, got {prec}")


@lru_cache(maxsize=256)
def const_ln(n: int, prec: int = DEFAULT_PRECISION) -> CertReal:
    """ln of a positive integer or exact rational at ``prec`` bits."""
    return ln(CertReal.exact(n, prec))


@lru_cache(maxsize=64)
def const_sqrt2(prec: int = DEFAULT_PRECISION) -> CertReal:
    return sqrt(CertReal.exact(2, prec))


def const_gamma(prec: int = DEFAULT_PRECISION) -> CertReal:
    """The dominant root 1 + sqrt(2) of x^2 - 2x - 1."""
    _check_prec(prec)
    return const_sqrt2(prec) + 1


def const_delta(prec: int = DEFAULT_PRECISION) -> CertReal:
    """The conjugate root 1 - sqrt(2)."""
    _check_prec(prec)
    return 1 - const_sqrt2(prec)


@lru_cache(maxsize=64)
def const_ln_gamma(prec: int = DEFAULT_PRECISION) -> CertReal:
    return ln(const_gamma(prec))


def sign_certain(a: CertReal) -> Sign:
    return a.sign()


def certify(
    expr: Callable[[int], CertReal],
    accept: Callable[[CertReal], bool],
    prec: int = DEFAULT_PRECISION,
    cap: int = PRECISION_CAP,
) -> tuple[CertReal, bool]:
    """Evaluate ``expr`` at doubling precision until ``accept`` holds or ``cap`` is hit."""
    _check_prec(prec)
    while True:
        value = expr(prec)
        if accept(value) or value.is_exact() or prec >= cap:
            return value, accept(value)
        prec = min(2 * prec, cap)


def certify_sign(
    expr: Callable[[int], CertReal],
    prec: int = DEFAULT_PRECISION,
    cap: int = PRECISION_CAP,
) -> tuple[Sign, CertReal]:
    value, _ = certify(expr, lambda v: v.sign() is not Sign.UNCERTAIN, prec, cap)
    return value.sign(), value


def certainly_le(a: CertReal, b: CertReal) -> bool:
    return a.hi <= b.lo


def certainly_lt(a: CertReal, b: CertReal) -> bool:
    return a.hi < b.lo


# exact decimal interchange ---------------------------------------------


def dyadic_to_decimal(x: Fraction) -> str:
    """Exact decimal string for a dyadic rational."""
    den = x.denominator
    if not _is_pow2(den):
        raise ValueError(f"{x} is not dyadic")
    e = den.bit_length() - 1
    digits = abs(x.numerator) * 5**e
    sign = "-" if x < 0 else ""
    if e == 0:
        return f"{sign}{digits}"
    s = str(digits).rjust(e + 1, "0")
    return f"{sign}{s[:-e]}.{s[-e:]}"


def to_json(a: CertReal) -> dict:
    return {
        "midpoint_decimal": dyadic_to_decimal(a.mid),
        "radius_decimal": dyadic_to_decimal(a.rad),
        "bits": a.prec,
    }


def from_json(d: dict) -> CertReal:
    return CertReal(Fraction(d["midpoint_decimal"]), Fraction(d["radius_decimal"]), int(d["bits"]))
