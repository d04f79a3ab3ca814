"""Pell, Pell-Lucas and Jacobsthal numbers: exact terms, Binet forms, growth bounds."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .ball import (
    DEFAULT_PRECISION,
    PRECISION_CAP,
    CertReal,
    UncertainError,
    certainly_le,
    certainly_lt,
    const_delta,
    const_gamma,
    const_sqrt2,
    pow_int,
)


class SequenceKind(enum.Enum):
    PELL = "pell"
    PELL_LUCAS = "pell-lucas"
    JACOBSTHAL = "jacobsthal"


# (x0, x1), (c1, c2) for x_{i+1} = c1*x_i + c2*x_{i-1}
_RECURRENCES = {
    SequenceKind.PELL: ((0, 1), (2, 1)),
    SequenceKind.PELL_LUCAS: ((2, 2), (2, 1)),
    SequenceKind.JACOBSTHAL: ((0, 1), (1, 2)),
}


@dataclass(frozen=True)
class SequenceTerm:
    kind: SequenceKind
    index: int
    value: int


def _iterate(kind: SequenceKind):
    (a, b), (c1, c2) = _RECURRENCES[kind]
    while True:
        yield a
        a, b = b, c1 * b + c2 * a


@lru_cache(maxsize=8)
def _table(kind: SequenceKind, count: int) -> tuple[int, ...]:
    gen = _iterate(kind)
    return tuple(next(gen) for _ in range(count))


def terms(kind: SequenceKind, count: int) -> list[int]:
    """The first ``count`` terms."""
    return list(_table(kind, count))


def term(kind: SequenceKind, index: int) -> int:
    if index < 0:
        raise ValueError(f"index must be non-negative, got {index}")
    gen = _iterate(kind)
    for _ in range(index):
        next(gen)
    return next(gen)


def terms_up_to(kind: SequenceKind, value_bound: int) -> list[SequenceTerm]:
    """All terms with value <= value_bound, in index order; ties are kept."""
    if value_bound < 0:
        raise ValueError("value_bound must be non-negative")
    out = []
    for i, v in enumerate(_iterate(kind)):
        if v > value_bound:
            # every sequence here is non-decreasing, so nothing later fits either
            return out
        out.append(SequenceTerm(kind, i, v))


def binet(kind: SequenceKind, index: int, prec: int = DEFAULT_PRECISION) -> CertReal:
    """Ball for the closed-form value of the term."""
    if index < 0:
        raise ValueError(f"index must be non-negative, got {index}")
    if kind is SequenceKind.JACOBSTHAL:
        return CertReal.exact(Fraction(2**index - (-1) ** index, 3), prec)
    g = pow_int(const_gamma(prec), index)
    d = pow_int(const_delta(prec), index)
    if kind is SequenceKind.PELL:
        return (g - d) / (2 * const_sqrt2(prec))
    return g + d


def binet_check(kind: SequenceKind, index: int, prec: int = DEFAULT_PRECISION) -> bool:
    """True iff the Binet ball pins down the recurrence value uniquely.

    Raises UncertainError when the ball is too wide (radius >= 1/2) to
    identify an integer; the caller should retry at a higher precision.
    """
    ball = binet(kind, index, prec)
    if ball.rad >= Fraction(1, 2):
        raise UncertainError(
            f"Binet ball for {kind.value}[{index}] too wide at {prec} bits", precision=prec
        )
    return ball.contains(term(kind, index))


_GROWTH_MIN_INDEX = {SequenceKind.PELL: 1, SequenceKind.PELL_LUCAS: 2, SequenceKind.JACOBSTHAL: 1}


def growth_bounds(kind: SequenceKind, index: int, prec: int) -> tuple[CertReal, CertReal, bool]:
    """(lower, upper, strict) of the growth inequality for one term."""
    if index < _GROWTH_MIN_INDEX[kind]:
        raise ValueError(
            f"growth inequality for {kind.value} holds from index "
            f"{_GROWTH_MIN_INDEX[kind]}, got {index}"
        )
    if kind is SequenceKind.JACOBSTHAL:
        two = CertReal.exact(2, prec)
        return pow_int(two, index - 2), pow_int(two, index - 1), False
    g = const_gamma(prec)
    if kind is SequenceKind.PELL:
        return pow_int(g, index - 2), pow_int(g, index - 1), False
    return pow_int(g, index - 1), pow_int(g, index + 1), True


def growth_bounds_check(
    kind: SequenceKind, index: int, prec: int = DEFAULT_PRECISION, cap: int = PRECISION_CAP
) -> bool:
    """Certify lower <= term <= upper (strict for Pell-Lucas)."""
    value = term(kind, index)

    def holds(p: int) -> bool:
        lower, upper, strict = growth_bounds(kind, index, p)
        cmp = certainly_lt if strict else certainly_le
        v = CertReal.exact(value, p)
        return cmp(lower, v) and cmp(v, upper)

    # escalate until both comparisons certify; the inequality is false only if
    # they fail at the cap too
    p = prec
    while True:
        if holds(p):
            return True
        if p >= cap:
            return False
        p = min(2 * p, cap)

