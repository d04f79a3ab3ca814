"""End-to-end resolution of P_k = J_n + J_m and Q_k = J_n + J_m.

The stages are: absolute bound on n from two Matveev applications, a first
Dujella-Petho reduction bounding n - m, a family of reductions bounding m
(with the Pell-Lucas member n - m = 1 settled by Legendre's criterion), and
an exact search of the resulting box.  Every published number the run
depends on is compared against the certified value; mismatches are kept as
discrepancies in the certificate rather than silently absorbed.
"""

from __future__ import annotations

import json
import math
from collections import defaultdict
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from importlib import resources
from typing import Any

from . import __version__
from .ball import (
    DEFAULT_PRECISION,
    PRECISION_CAP,
    CertReal,
    Sign,
    UncertainError,
    certainly_le,
    const_ln,
    const_ln_gamma,
    from_json,
    ln,
    to_json,
)
from .linear_forms import (
    FORMS,
    Equation,
    FormLabel,
    chain_coefficients,
    eta1,
    form_upper_bound,
    height_slack,
    k_less_than_2n_from,
    k_upper_bound,
    linear_form_sign,
    matveev_first_coefficient,
    published_chain_coefficients,
    solve_chain,
    A_admissible,
)
from .reduction import (
    CertificationFailure,
    ReductionInput,
    ReductionOutcome,
    ReductionStatus,
    dujella_petho,
    dujella_petho_family,
    expand_cfrac,
    legendre_bound,
)
from .sequences import SequenceKind, term, terms

SCHEMA_VERSION = 1

_SEQUENCE = {Equation.PELL: SequenceKind.PELL, Equation.PELL_LUCAS: SequenceKind.PELL_LUCAS}

# |Gamma| < 2 |Lambda| turns the bounds 4/2^(n-m) and 5/2^m (times 1/log 2)
# into these reduction constants
FIRST_A = 12
FAMILY_A = 15


@dataclass(frozen=True)
class PublishedClaims:
    """Numbers the published proof relies on, checked one by one during a run."""

    matveev_first: int
    absolute_bound: int
    M: int
    q_index: int
    q: int | None
    first_epsilon: Fraction
    first_bound: int  # n - m < first_bound
    family_epsilon: Fraction
    m_bound: int
    box: tuple[int, int, int]  # k <, n <, m <
    nonpositive: frozenset[int] = frozenset()
    legendre_index: int | None = None
    legendre_b_below: int | None = None
    case_two_m_max: int | None = None


Q65 = 2427228558134035529638808203392547

CLAIMS = {
    Equation.PELL: PublishedClaims(
        matveev_first=6 * 10**12,
        absolute_bound=2 * 10**29,
        M=4 * 10**29,
        q_index=65,
        q=Q65,
        first_epsilon=Fraction(1, 10),
        first_bound=118,
        family_epsilon=Fraction(1, 100),
        m_bound=122,
        box=(480, 240, 122),
    ),
    Equation.PELL_LUCAS: PublishedClaims(
        matveev_first=3 * 10**12,
        absolute_bound=3 * 10**28,
        M=6 * 10**28,
        q_index=65,
        q=None,
        first_epsilon=Fraction(3, 10),
        first_bound=117,
        family_epsilon=Fraction(1, 100),
        m_bound=122,
        box=(478, 239, 122),
        nonpositive=frozenset({1}),
        legendre_index=54,
        legendre_b_below=2,
        case_two_m_max=100,
    ),
}


# exact part --------------------------------------------------------------


@dataclass(frozen=True, order=True)
class SolutionTriple:
    k: int
    n: int
    m: int
    equation: Equation = field(default=Equation.PELL, compare=False)

    def __post_init__(self):
        if min(self.k, self.n, self.m) < 0 or self.n < self.m:
            raise ValueError(f"need k, n, m >= 0 and n >= m, got {(self.k, self.n, self.m)}")

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.k, self.n, self.m)


def verify_solution(equation: Equation, k: int, n: int, m: int) -> bool:
    return term(_SEQUENCE[equation], k) == term(SequenceKind.JACOBSTHAL, n) + term(SequenceKind.JACOBSTHAL, m)


def search_box(equation: Equation, k_max: int, n_max: int, m_max: int) -> list[SolutionTriple]:
    """All solutions with k < k_max, n < n_max, m < m_max and n >= m, sorted."""
    if min(k_max, n_max, m_max) < 0:
        raise ValueError("box bounds must be non-negative")
    J = terms(SequenceKind.JACOBSTHAL, n_max)
    sums: dict[int, list[tuple[int, int]]] = defaultdict(list)
    for n in range(n_max):
        for m in range(min(n + 1, m_max)):
            sums[J[n] + J[m]].append((n, m))
    found = [
        SolutionTriple(k, n, m, equation)
        for k, v in enumerate(terms(_SEQUENCE[equation], k_max))
        for n, m in sums.get(v, ())
    ]
    return sorted(found)


def power_of_two_case(m_max: int) -> list[tuple[int, int]]:
    """All (k, m) with m <= m_max and Q_k = 2^m."""
    if m_max < 0:
        raise ValueError("m_max must be non-negative")
    out = []
    for k, v in enumerate(terms(SequenceKind.PELL_LUCAS, 2 * m_max + 4)):
        if v > 2**m_max:
            break
        if v & (v - 1) == 0:
            out.append((k, v.bit_length() - 1))
    return out


def legendre_m_max(b: int, M: int) -> int:
    """Largest m with 2^m < 4 (b + 2) M."""
    return (4 * (b + 2) * M - 1).bit_length() - 1


def legendre_applies_from(cap: int = 4096) -> int:
    """Smallest m0 with 4/2^m < 1/(2 (2m)^2) for every m >= m0 (k < 2m).

    32 m^2 < 2^m is monotone once it first holds, since the ratio
    (m+1)^2/m^2 < 2 from m = 3 on.
    """
    for m in range(3, cap):
        if 32 * m * m < 2**m:
            return m
    raise ValueError("no threshold found")


def load_expected(equation: Equation) -> list[tuple[int, int, int]]:
    """The published solution list, verbatim (duplicates included)."""
    raw = resources.files("pelljac").joinpath("data/expected.json").read_text()
    return [tuple(t) for t in json.loads(raw)[equation.value]]


# certified stages ----------------------------------------------------------


def tau(prec: int) -> CertReal:
    return const_ln_gamma(prec) / const_ln(2, prec)


def mu_for(label: FormLabel, n_minus_m: int = 0):
    eta = eta1(label, n_minus_m)

    def mu(prec: int) -> CertReal:
        return ln(eta.value(prec)) / const_ln(2, prec)

    return mu


@dataclass(frozen=True)
class TraceEntry:
    stage: str
    M: int
    A: int
    outcome: ReductionOutcome


@dataclass(frozen=True)
class Discrepancy:
    claim: str
    published: str
    computed: str
    resolution: str


@dataclass(frozen=True)
class CaseTwo:
    legendre_index: int
    q: int
    b: int
    m_max: int
    applies_from: int
    pairs: tuple[tuple[int, int], ...]


@dataclass
class Certificate:
    equation: Equation
    precision_bits: int
    precision_cap: int
    status: str
    absolute_bound_n: int | None = None
    M_published: int | None = None
    M_used: int | None = None
    k_lt_2n_from: int | None = None
    first_omega: int | None = None
    family_omega: int | None = None
    family_range: tuple[int, int] | None = None
    reduction_trace: list[TraceEntry] = field(default_factory=list)
    case_two: CaseTwo | None = None
    derived_box: tuple[int, int, int] | None = None
    search_box: tuple[int, int, int] | None = None
    solutions: list[SolutionTriple] = field(default_factory=list)
    expected: list[tuple[int, int, int]] | None = None
    checks: dict[str, CertReal] = field(default_factory=dict)
    discrepancies: list[Discrepancy] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    tool_version: str = __version__
    schema: int = SCHEMA_VERSION

    @property
    def closed(self) -> bool:
        return self.status == "closed"

    @property
    def exit_code(self) -> int:
        if not self.closed:
            return 2
        return 1 if self.discrepancies else 0

    def solution_tuples(self) -> list[tuple[int, int, int]]:
        return [s.as_tuple() for s in self.solutions]

    def to_dict(self) -> dict[str, Any]:
        return _encode_certificate(self)

    def to_json(self, indent: int | None = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent)

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> Certificate:
        return _decode_certificate(d)

    @classmethod
    def from_json(cls, text: str) -> Certificate:
        return cls.from_dict(json.loads(text))


def _certify_below(x: CertReal, bound: int | Fraction) -> bool:
    return x.hi < bound


def run_pipeline(
    equation: Equation,
    *,
    prec: int = DEFAULT_PRECISION,
    cap: int = PRECISION_CAP,
    check_expected: bool = True,
) -> Certificate:
    claims = CLAIMS[equation]
    first_label, second_label = FORMS[equation]
    cert = Certificate(equation, prec, cap, status="closed", M_published=claims.M)
    disc, notes, checks = cert.discrepancies, cert.notes, cert.checks

    def fail(why: str) -> Certificate:
        cert.status = "failed"
        notes.append(f"stopped: {why}")
        return cert

    # Matveev coefficients and the absolute bound
    C = matveev_first_coefficient(equation, prec)
    checks["matveev_first_coefficient"] = C
    if not _certify_below(C, claims.matveev_first):
        disc.append(Discrepancy("Matveev coefficient", str(claims.matveev_first), _sci(C), "unresolved"))
    coeffs = chain_coefficients(equation, prec)
    published = published_chain_coefficients(equation, prec)
    for name, mine, theirs in zip(("c0", "c1", "c2"), (coeffs.c0, coeffs.c1, coeffs.c2),
                                  (published.c0, published.c1, published.c2)):
        checks[f"chain_{name}"] = mine
        if not certainly_le(mine, theirs):
            notes.append(f"published chain coefficient {name} = {_sci(theirs)} is below the certified {_sci(mine)}")
    try:
        N = solve_chain(coeffs, prec)
        N_from_published = solve_chain(published, prec)
    except UncertainError as exc:
        return fail(str(exc))
    cert.absolute_bound_n = N
    if N_from_published > claims.absolute_bound:
        notes.append(
            f"the published chain coefficients only give n < {N_from_published:.0e}; "
            f"n < {N:.0e} follows from the unrounded constants"
        )
    if N > claims.absolute_bound:
        disc.append(Discrepancy("absolute bound on n", f"n < {claims.absolute_bound:.0e}", f"n < {N:.0e}",
                                "resolved: M recomputed from the certified bound"))
    for d in (0, claims.first_bound):
        if not A_admissible(second_label, d, prec):
            disc.append(Discrepancy(f"A_i admissible for {second_label.value}, n-m={d}", "yes", "no", "unresolved"))
    slack = height_slack(second_label, 0, prec)
    if slack.lo > 0:
        notes.append(f"published height bound for eta1 in {second_label.value} exceeds the exact height by {_sci(slack)}")
    cert.k_lt_2n_from = k_less_than_2n_from(equation, prec)
    notes.append(f"k < 2n certified for n >= {cert.k_lt_2n_from}; smaller n lie inside the search box")
    if equation is Equation.PELL_LUCAS:
        notes.append("growth relation printed with R_k and alpha is read as Q_k and gamma")

    M = claims.M if claims.M >= 2 * N else 2 * N
    cert.M_used = M
    if M != claims.M:
        disc.append(Discrepancy("reduction parameter M", f"{claims.M:.0e}", f"needs M >= 2N = {2 * N:.0e}",
                                f"resolved: reductions rerun with M = {M:.0e}"))

    log2 = const_ln(2, prec)
    checks["bridge_first"] = 8 / log2
    checks["bridge_family"] = 10 / log2
    if not (_certify_below(8 / log2, FIRST_A) and _certify_below(10 / log2, FAMILY_A)):
        return fail("Gamma-to-Lambda constants not certified")

    # first reduction: n - m
    first_mu = mu_for(first_label)

    def first(M_: int, q_index: int | None, stage: str) -> ReductionOutcome:
        out = dujella_petho(ReductionInput(tau, first_mu, M_, FIRST_A, 2, first_label.value),
                            q_index=q_index, prec=prec, cap=cap)
        cert.reduction_trace.append(TraceEntry(stage, M_, FIRST_A, out))
        return out

    try:
        if M != claims.M:
            reproduced = first(claims.M, claims.q_index, "first/published-M")
            _compare_first(reproduced, claims, disc, "published M")
        main = first(M, claims.q_index, "first")
        earliest = first(M, None, "first/earliest-q")
    except CertificationFailure as exc:
        return fail(str(exc))
    if main.status is not ReductionStatus.REDUCED:
        return fail(f"first reduction {main.status.value}")
    _compare_first(main, claims, disc, f"M = {M:.0e}")
    if earliest.status is ReductionStatus.REDUCED and earliest.q_index != main.q_index:
        notes.append(
            f"the first q > 6M is q_{earliest.q_index}, giving n - m < {earliest.omega_bound}; "
            f"q_{main.q_index} is used to reproduce the published box"
        )
    cert.first_omega = main.omega_bound
    assert main.omega_bound is not None

    # family: m
    top = max(main.omega_bound, claims.first_bound)
    cert.family_range = (0, top)
    mus = {d: mu_for(second_label, d) for d in range(top + 1)}
    try:
        family = dujella_petho_family(ReductionInput(tau, mus[0], M, FAMILY_A, 2, second_label.value), mus,
                                      q_index=claims.q_index, prec=prec, cap=cap)
    except CertificationFailure as exc:
        return fail(str(exc))
    for d, out in family.members.items():
        cert.reduction_trace.append(TraceEntry(f"family[{d}]", M, FAMILY_A, out))
    if family.uncertain:
        return fail(f"family members uncertain: {family.uncertain}")
    nonpositive = set(family.nonpositive)
    if nonpositive - claims.nonpositive:
        return fail(f"unexpected non-positive epsilon for n-m in {sorted(nonpositive - claims.nonpositive)}")
    if claims.nonpositive - nonpositive:
        notes.append(f"n-m in {sorted(claims.nonpositive - nonpositive)} reduced directly")
    cert.family_omega = family.omega_bound
    min_eps = family.min_epsilon
    assert cert.family_omega is not None and min_eps is not None
    if not min_eps > claims.family_epsilon:
        disc.append(Discrepancy("family epsilon", f"> {float(claims.family_epsilon)}", f"{float(min_eps):.6f}",
                                "unresolved"))
    if cert.family_omega > claims.m_bound:
        disc.append(Discrepancy("bound on m", f"m < {claims.m_bound}", f"m < {cert.family_omega}", "unresolved"))
    m_bound = cert.family_omega

    # n - m = 1 for Pell-Lucas: Q_k = 2^m and Legendre
    if nonpositive:
        try:
            lb = legendre_bound(tau, M, prec=prec, cap=cap)
        except CertificationFailure as exc:
            return fail(str(exc))
        m2 = legendre_m_max(lb.b, M)
        pairs = power_of_two_case(m2)
        cert.case_two = CaseTwo(lb.index, lb.q, lb.b, m2, legendre_applies_from(), tuple(pairs))
        notes.append("the Legendre step is applied with q^2 in the denominator; the printed step drops the square")
        if claims.legendre_b_below is not None and lb.b >= claims.legendre_b_below:
            disc.append(Discrepancy(f"max partial quotient up to index {lb.index}", f"b < {claims.legendre_b_below}",
                                    f"b = {lb.b}", f"resolved: bound recomputed with b = {lb.b}"))
        if claims.case_two_m_max is not None and m2 > claims.case_two_m_max:
            disc.append(Discrepancy("bound on m when n - m = 1", f"m <= {claims.case_two_m_max}", f"m <= {m2}",
                                    "resolved: Q_k = 2^m solved for every m up to the recomputed bound"))
        m_bound = max(m_bound, m2 + 1)

    # box: m < m_bound, n - m < first_omega, k < 2n
    n_bound = m_bound + main.omega_bound - 1
    cert.derived_box = (2 * n_bound, n_bound, m_bound)
    cert.search_box = tuple(max(a, b) for a, b in zip(cert.derived_box, claims.box))  # type: ignore[assignment]
    if cert.derived_box[1] > claims.box[1] or cert.derived_box[2] > claims.box[2]:
        disc.append(Discrepancy("search box", str(claims.box), str(cert.derived_box),
                                "resolved: the larger box is searched"))

    cert.solutions = search_box(equation, *cert.search_box)
    bad = [s for s in cert.solutions if not verify_solution(equation, s.k, s.n, s.m)]
    if bad:
        return fail(f"search returned non-solutions {bad}")
    if cert.case_two is not None:
        for k, m in cert.case_two.pairs:
            if SolutionTriple(k, m + 1, m, equation) not in cert.solutions:
                return fail(f"Q_{k} = 2^{m} gives a solution missing from the search")

    _check_solutions(cert, prec, cap)
    _note_vanishing(equation, notes, prec)

    if check_expected:
        _compare_expected(cert)
    return cert


def _compare_first(out: ReductionOutcome, claims: PublishedClaims, disc: list[Discrepancy], where: str) -> None:
    if claims.q is not None and out.q != claims.q:
        disc.append(Discrepancy(f"q_{claims.q_index}", str(claims.q), str(out.q), "unresolved"))
    if out.status is not ReductionStatus.REDUCED:
        disc.append(Discrepancy(f"first epsilon ({where})", f"> {float(claims.first_epsilon)}", out.status.value,
                                "unresolved"))
        return
    if not out.epsilon_lower > claims.first_epsilon:
        disc.append(Discrepancy(f"first epsilon ({where})", f"> {float(claims.first_epsilon)}",
                                f"{float(out.epsilon_lower):.6f}", "unresolved"))
    if out.omega_bound is not None and out.omega_bound > claims.first_bound:
        disc.append(Discrepancy(f"bound on n - m ({where})", f"< {claims.first_bound}", f"< {out.omega_bound}",
                                "unresolved"))


def _check_solutions(cert: Certificate, prec: int, cap: int) -> None:
    """Nonvanishing and size of both forms, and the k-n relation, at every solution."""
    eq = cert.equation
    for s in cert.solutions:
        if s.n >= 1:
            for label in FORMS[eq]:
                sign, val = linear_form_sign(label, s.k, s.n, s.m, prec, cap)
                if sign is Sign.UNCERTAIN or not abs(val).hi < form_upper_bound(label, s.n, s.m):
                    cert.discrepancies.append(Discrepancy(
                        f"{label.value} at {s.as_tuple()}", "nonzero and within bound", _sci(val), "unresolved"))
        if s.n >= 3 and not s.k <= k_upper_bound(eq, s.n, prec).lo:
            cert.discrepancies.append(Discrepancy(
                f"index relation at {s.as_tuple()}", "k <= n log2/log gamma + c", "violated", "unresolved"))


def _note_vanishing(equation: Equation, notes: list[str], prec: int) -> None:
    # a form can only vanish when gamma^k is rational, i.e. k = 0
    for label in FORMS[equation]:
        zeros = [(0, n, m) for n in range(64) for m in range(n + 1)
                 if linear_form_sign(label, 0, n, m, prec, prec)[0] is Sign.UNCERTAIN]
        if zeros:
            notes.append(f"{label.value} vanishes at (k, n, m) in {zeros}; none is a solution, "
                         f"and the nonvanishing argument needs k >= 1")


def _compare_expected(cert: Certificate) -> None:
    listed = load_expected(cert.equation)
    cert.expected = listed
    distinct = sorted(set(listed))
    dupes = sorted({t for t in listed if listed.count(t) > 1})
    if dupes:
        cert.notes.append(f"published list has {len(listed)} entries, {len(distinct)} distinct; repeated: {dupes}")
    found = set(cert.solution_tuples())
    for t in sorted(set(distinct) - found):
        cert.discrepancies.append(Discrepancy("published solution", str(t), "not a solution in the box", "unresolved"))
    for t in sorted(found - set(distinct)):
        cert.discrepancies.append(Discrepancy("published solution list", "omits it", f"{t} is a solution",
                                              "reported"))


def _sci(x: CertReal) -> str:
    return f"{float(x.mid):.6g}"


# JSON ----------------------------------------------------------------------


def _encode_outcome(o: ReductionOutcome) -> dict[str, Any]:
    return {
        "label": o.label,
        "status": o.status.value,
        "q_index": o.q_index,
        "q": str(o.q),
        "epsilon": to_json(o.epsilon),
        "omega_bound": o.omega_bound,
        "attempts": list(o.attempts),
    }


def _decode_outcome(d: dict[str, Any]) -> ReductionOutcome:
    return ReductionOutcome(
        d["label"], ReductionStatus(d["status"]), d["q_index"], int(d["q"]), from_json(d["epsilon"]),
        d["omega_bound"], tuple(d["attempts"]),
    )


def _int_or_none(x: int | None) -> str | None:
    return None if x is None else str(x)


def _encode_certificate(c: Certificate) -> dict[str, Any]:
    return {
        "schema": c.schema,
        "tool_version": c.tool_version,
        "equation": c.equation.value,
        "status": c.status,
        "precision_bits": c.precision_bits,
        "precision_cap": c.precision_cap,
        "absolute_bound_n": _int_or_none(c.absolute_bound_n),
        "M_published": _int_or_none(c.M_published),
        "M_used": _int_or_none(c.M_used),
        "k_lt_2n_from": c.k_lt_2n_from,
        "first_omega": c.first_omega,
        "family_omega": c.family_omega,
        "family_range": None if c.family_range is None else list(c.family_range),
        "reduction_trace": [
            {"stage": t.stage, "M": str(t.M), "A": t.A, "outcome": _encode_outcome(t.outcome)}
            for t in c.reduction_trace
        ],
        "case_two": None if c.case_two is None else {
            **{k: v for k, v in asdict(c.case_two).items() if k != "pairs"},
            "q": str(c.case_two.q),
            "pairs": [list(p) for p in c.case_two.pairs],
        },
        "derived_box": None if c.derived_box is None else list(c.derived_box),
        "search_box": None if c.search_box is None else list(c.search_box),
        "solutions": [list(s.as_tuple()) for s in c.solutions],
        "expected": None if c.expected is None else [list(t) for t in c.expected],
        "checks": {k: to_json(v) for k, v in c.checks.items()},
        "discrepancies": [asdict(d) for d in c.discrepancies],
        "notes": list(c.notes),
    }


def _tuple_or_none(x):
    return None if x is None else tuple(x)


def _decode_certificate(d: dict[str, Any]) -> Certificate:
    if d.get("schema") != SCHEMA_VERSION:
        raise ValueError(f"unsupported certificate schema {d.get('schema')!r}")
    eq = Equation(d["equation"])
    ct = d["case_two"]
    return Certificate(
        equation=eq,
        precision_bits=d["precision_bits"],
        precision_cap=d["precision_cap"],
        status=d["status"],
        absolute_bound_n=None if d["absolute_bound_n"] is None else int(d["absolute_bound_n"]),
        M_published=None if d["M_published"] is None else int(d["M_published"]),
        M_used=None if d["M_used"] is None else int(d["M_used"]),
        k_lt_2n_from=d["k_lt_2n_from"],
        first_omega=d["first_omega"],
        family_omega=d["family_omega"],
        family_range=_tuple_or_none(d["family_range"]),
        reduction_trace=[
            TraceEntry(t["stage"], int(t["M"]), t["A"], _decode_outcome(t["outcome"])) for t in d["reduction_trace"]
        ],
        case_two=None if ct is None else CaseTwo(
            ct["legendre_index"], int(ct["q"]), ct["b"], ct["m_max"], ct["applies_from"],
            tuple(tuple(p) for p in ct["pairs"]),
        ),
        derived_box=_tuple_or_none(d["derived_box"]),
        search_box=_tuple_or_none(d["search_box"]),
        solutions=[SolutionTriple(*t, equation=eq) for t in d["solutions"]],
        expected=None if d["expected"] is None else [tuple(t) for t in d["expected"]],
        checks={k: from_json(v) for k, v in d["checks"].items()},
        discrepancies=[Discrepancy(**x) for x in d["discrepancies"]],
        notes=list(d["notes"]),
        tool_version=d["tool_version"],
        schema=d["schema"],
    )


def expand_tau(min_q: int, prec: int = DEFAULT_PRECISION, cap: int = PRECISION_CAP):
    """Certified expansion of log(gamma)/log 2."""
    return expand_cfrac(tau, min_q, prec=prec, cap=cap)


__all__ = [
    "CLAIMS",
    "Certificate",
    "CaseTwo",
    "Discrepancy",
    "PublishedClaims",
    "SolutionTriple",
    "TraceEntry",
    "expand_tau",
    "legendre_m_max",
    "load_expected",
    "mu_for",
    "power_of_two_case",
    "run_pipeline",
    "search_box",
    "tau",
    "verify_solution",
]
