"""Continued fractions and the Dujella-Petho / Legendre reduction steps.

Partial quotients are certified by expanding both endpoints of a ball with
exact rational arithmetic: the reals sharing a prefix a_0..a_i form an
interval, so a quotient shared by both endpoints is shared by every point of
the ball.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Hashable, Iterator, Mapping

from .ball import (
    DEFAULT_PRECISION,
    PRECISION_CAP,
    CertReal,
    Real,
    Sign,
    at,
    certify_sign,
    ln,
)


class RationalExpansionError(ValueError):
    """The expansion terminated (x is rational) before reaching the requested size."""


class CertificationFailure(ArithmeticError):
    """A partial quotient could not be certified before the precision cap."""

    def __init__(self, message: str, index: int, precision: int):
        super().__init__(message)
        self.index = index
        self.precision = precision


def _quotients(x: Fraction) -> Iterator[int]:
    num, den = x.numerator, x.denominator
    while den:
        a, r = divmod(num, den)
        yield a
        num, den = den, r


def convergents(quotients: list[int] | tuple[int, ...]) -> list[tuple[int, int]]:
    p0, q0, p1, q1 = 0, 1, 1, 0
    out = []
    for a in quotients:
        p0, q0, p1, q1 = p1, q1, a * p1 + p0, a * q1 + q0
        out.append((p1, q1))
    return out


def rational_cfrac(x: Fraction) -> list[int]:
    return list(_quotients(Fraction(x)))


@dataclass(frozen=True)
class ContinuedFraction:
    x: CertReal
    quotients: tuple[int, ...]
    convergents: tuple[tuple[int, int], ...]
    precision: int

    def q(self, i: int) -> int:
        return self.convergents[i][1]

    def p(self, i: int) -> int:
        return self.convergents[i][0]

    def index_above(self, bound: int) -> int:
        """Smallest i with q_i > bound."""
        for i, (_, q) in enumerate(self.convergents):
            if q > bound:
                return i
        raise IndexError(f"no convergent denominator exceeds {bound}")


def _common_prefix(lo: Fraction, hi: Fraction) -> tuple[list[int], bool]:
    """Longest shared prefix of both expansions.

    Returns (prefix, terminated) where terminated means both endpoints are
    the same rational and its expansion ended.
    """
    prefix: list[int] = []
    ga, gb = _quotients(lo), _quotients(hi)
    while True:
        a, b = next(ga, None), next(gb, None)
        if a is None or a != b:
            return prefix, a is None and b is None
        prefix.append(a)


def expand_cfrac(
    x: Real,
    min_q: int = 1,
    *,
    min_terms: int = 1,
    prec: int = DEFAULT_PRECISION,
    cap: int = PRECISION_CAP,
) -> ContinuedFraction:
    """Every quotient certified at the working precision.

    Precision is raised until the last q_i >= min_q and there are at least
    ``min_terms`` quotients.  ``x`` may be a ball or a callable
    ``prec -> ball``; only the latter can be refined when the ball is too wide.
    """
    while True:
        ball = at(x, prec)
        prefix, terminated = _common_prefix(ball.lo, ball.hi)
        conv = convergents(prefix)
        if conv and conv[-1][1] >= min_q and len(prefix) >= min_terms:
            return ContinuedFraction(ball, tuple(prefix), tuple(conv), prec)
        if terminated:
            raise RationalExpansionError(
                f"expansion of a rational terminates after {len(prefix)} quotients "
                f"with q = {conv[-1][1] if conv else 0} < {min_q}"
            )
        if not callable(x) or prec >= cap:
            raise CertificationFailure(
                f"partial quotient {len(prefix)} not certified at {prec} bits",
                index=len(prefix),
                precision=prec,
            )
        prec = min(2 * prec, cap)


def nearest_int_distance(x: CertReal) -> CertReal:
    """Ball for ||x||, the distance to the nearest integer; always inside [0, 1/2]."""

    def dist(t: Fraction) -> Fraction:
        return abs(t - math.floor(t + Fraction(1, 2)))

    lo, hi = x.lo, x.hi
    dmin, dmax = sorted((dist(lo), dist(hi)))
    if math.floor(hi) > math.floor(lo) or math.floor(lo) == lo:
        dmin = Fraction(0)
    if math.floor(hi - Fraction(1, 2)) > math.floor(lo - Fraction(1, 2)):
        dmax = Fraction(1, 2)
    return CertReal.from_interval(dmin, dmax, x.prec)


# Dujella-Petho ---------------------------------------------------------


class ReductionStatus(enum.Enum):
    REDUCED = "Reduced"
    EPSILON_NONPOSITIVE = "EpsilonNonpositive"
    UNCERTAIN = "Uncertain"


@dataclass(frozen=True)
class ReductionInput:
    """0 < |n tau - m + mu| < A / B^omega with n <= M."""

    tau: Real
    mu: Real
    M: int
    A: Fraction | int
    B: Fraction | int
    label: str = ""

    def __post_init__(self):
        if self.M < 1 or self.A <= 0 or self.B <= 1:
            raise ValueError("need M >= 1, A > 0, B > 1")


@dataclass(frozen=True)
class ReductionOutcome:
    label: str
    status: ReductionStatus
    q_index: int
    q: int
    epsilon: CertReal
    omega_bound: int | None = None
    attempts: tuple[int, ...] = ()

    @property
    def epsilon_lower(self) -> Fraction:
        return self.epsilon.lo


def epsilon(tau: CertReal, mu: CertReal, q: int, M: int) -> CertReal:
    """||mu q|| - M ||tau q||."""
    return nearest_int_distance(mu * q) - M * nearest_int_distance(tau * q)


def omega_bound(A: Fraction | int, B: Fraction | int, q: int, eps_lower: Fraction, prec: int) -> int:
    """Integer W with omega < W, the ceiling of the upper end of log(Aq/eps)/log B."""
    w = ln(CertReal.exact(Fraction(A) * q / eps_lower, prec)) / ln(CertReal.exact(Fraction(B), prec))
    return math.ceil(w.hi)


def dujella_petho(
    inp: ReductionInput,
    *,
    q_index: int | None = None,
    max_tries: int = 8,
    cf: ContinuedFraction | None = None,
    prec: int = DEFAULT_PRECISION,
    cap: int = PRECISION_CAP,
) -> ReductionOutcome:
    """Run the reduction lemma starting at the first q > 6M (or at ``q_index``).

    Convergents after the starting one are tried when epsilon is not
    certainly positive; ``attempts`` records every index examined.
    """
    six_m = 6 * inp.M
    if cf is None:
        cf = expand_cfrac(inp.tau, six_m + 1, prec=prec, cap=cap)
    start = cf.index_above(six_m) if q_index is None else q_index
    need = start + max_tries
    if len(cf.quotients) < need:
        cf = expand_cfrac(inp.tau, min_terms=need, prec=max(prec, cf.precision), cap=cap)
    if cf.q(start) <= six_m:
        raise ValueError(f"q_{start} = {cf.q(start)} does not exceed 6M = {six_m}")

    tried: list[int] = []
    first: ReductionOutcome | None = None
    saw_uncertain = False
    for i in range(start, need):
        q = cf.q(i)
        tried.append(i)
        sign, eps = certify_sign(
            lambda p, q=q: epsilon(at(inp.tau, p), at(inp.mu, p), q, inp.M), prec, cap
        )
        if sign is Sign.POSITIVE:
            w = omega_bound(inp.A, inp.B, q, eps.lo, prec)
            return ReductionOutcome(inp.label, ReductionStatus.REDUCED, i, q, eps, w, tuple(tried))
        status = ReductionStatus.EPSILON_NONPOSITIVE if sign is Sign.NEGATIVE else ReductionStatus.UNCERTAIN
        saw_uncertain |= status is ReductionStatus.UNCERTAIN
        if first is None:
            first = ReductionOutcome(inp.label, status, i, q, eps)
    assert first is not None
    final = ReductionStatus.UNCERTAIN if saw_uncertain else first.status
    return ReductionOutcome(inp.label, final, first.q_index, first.q, first.epsilon, None, tuple(tried))


@dataclass(frozen=True)
class FamilyOutcome:
    members: dict[Hashable, ReductionOutcome] = field(default_factory=dict)

    @property
    def reduced(self) -> dict[Hashable, ReductionOutcome]:
        return {k: o for k, o in self.members.items() if o.status is ReductionStatus.REDUCED}

    @property
    def nonpositive(self) -> list[Hashable]:
        return [k for k, o in self.members.items() if o.status is ReductionStatus.EPSILON_NONPOSITIVE]

    @property
    def uncertain(self) -> list[Hashable]:
        return [k for k, o in self.members.items() if o.status is ReductionStatus.UNCERTAIN]

    @property
    def omega_bound(self) -> int | None:
        bounds = [o.omega_bound for o in self.reduced.values()]
        return max(bounds) if bounds else None

    @property
    def min_epsilon(self) -> Fraction | None:
        eps = [o.epsilon_lower for o in self.reduced.values()]
        return min(eps) if eps else None


def dujella_petho_family(
    base: ReductionInput,
    mu_family: Mapping[Hashable, Real],
    *,
    q_index: int | None = None,
    max_tries: int = 8,
    prec: int = DEFAULT_PRECISION,
    cap: int = PRECISION_CAP,
) -> FamilyOutcome:
    """Run the lemma once per mu, sharing the expansion of tau."""
    if not mu_family:
        raise ValueError("empty mu family")
    cf = expand_cfrac(base.tau, 6 * base.M + 1, prec=prec, cap=cap)
    start = cf.index_above(6 * base.M) if q_index is None else q_index
    cf = expand_cfrac(base.tau, min_terms=start + max_tries, prec=cf.precision, cap=cap)
    members = {}
    for key, mu in mu_family.items():
        inp = ReductionInput(base.tau, mu, base.M, base.A, base.B, f"{base.label}[{key}]")
        members[key] = dujella_petho(inp, q_index=q_index, max_tries=max_tries, cf=cf, prec=prec, cap=cap)
    return FamilyOutcome(members)


# Legendre -------------------------------------------------------------


@dataclass(frozen=True)
class LegendreBound:
    index: int
    q: int
    b: int


def legendre_bound(x: Real, M: int, *, prec: int = DEFAULT_PRECISION, cap: int = PRECISION_CAP) -> LegendreBound:
    """Index n with q_{n-1} <= M < q_n, and b = max(a_0..a_n)."""
    if M < 1:
        raise ValueError("M must be >= 1")
    cf = expand_cfrac(x, M + 1, prec=prec, cap=cap)
    n = cf.index_above(M)
    return LegendreBound(n, cf.q(n), max(cf.quotients[: n + 1]))


def is_legendre_approximation(p: int, q: int, x: CertReal) -> bool:
    """Certify |p/q - x| < 1/(2 q^2), which forces p/q to be a convergent of x."""
    err = abs(CertReal.exact(Fraction(p, q), x.prec) - x)
    return err.hi < Fraction(1, 2 * q * q)


def legendre_lower_bound(b: int, q: int) -> Fraction:
    """1/((b+2) q^2): no convergent p/q with q <= q_n approximates x better."""
    return Fraction(1, (b + 2) * q * q)
