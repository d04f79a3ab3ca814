"""Command-line entry point.

Exit codes: 0 success, 1 discrepancies (or a false verification), 2 a
certification failure, 64 a usage or configuration error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from typing import Any, Sequence

from .ball import DEFAULT_PRECISION, MIN_PRECISION, PRECISION_CAP, UncertainError, to_json
from .linear_forms import FORMS, Equation, chain_coefficients, matveev_first_coefficient, solve_chain
from .pipeline import (
    CLAIMS,
    FAMILY_A,
    FIRST_A,
    Certificate,
    mu_for,
    run_pipeline,
    search_box,
    tau,
    verify_solution,
)
from .reduction import (
    CertificationFailure,
    ReductionInput,
    ReductionOutcome,
    ReductionStatus,
    dujella_petho,
    dujella_petho_family,
)
from .sequences import SequenceKind, terms

EXIT_OK, EXIT_DISCREPANCY, EXIT_UNCERTIFIED, EXIT_USAGE = 0, 1, 2, 64
PRECISION_ENV = "SOLVER_PRECISION_BITS"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


@dataclass(frozen=True)
class RunConfig:
    precision_bits: int = DEFAULT_PRECISION
    precision_cap: int = PRECISION_CAP
    output_path: str | None = None
    format: str = "json"

    def __post_init__(self):
        if not MIN_PRECISION <= self.precision_bits <= self.precision_cap:
            raise UsageError(
                f"need {MIN_PRECISION} <= precision bits ({self.precision_bits}) "
                f"<= precision cap ({self.precision_cap})"
            )


def _default_precision() -> int:
    raw = os.environ.get(PRECISION_ENV)
    if raw is None:
        return DEFAULT_PRECISION
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"{PRECISION_ENV} must be an integer, got {raw!r}") from None


def _equation(s: str) -> Equation:
    try:
        return Equation(s)
    except ValueError:
        raise argparse.ArgumentTypeError(f"unknown equation {s!r}") from None


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--precision-bits", type=int, default=None,
                        help=f"working precision (default ${PRECISION_ENV} or {DEFAULT_PRECISION})")
    common.add_argument("--precision-cap", type=int, default=PRECISION_CAP)
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--output", "-o", default=None, help="write the result here instead of stdout")

    eq = _Parser(add_help=False)
    eq.add_argument("--equation", type=_equation, required=True, metavar="{pell,pell-lucas}")

    p = _Parser(prog="pelljac", description="Certified solver for P_k = J_n + J_m and Q_k = J_n + J_m.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sp = sub.add_parser("pipeline", parents=[common, eq], help="run every stage and emit a certificate")
    sp.add_argument("--no-expected", action="store_true",
                    help="do not compare against the embedded published solution lists")

    sp = sub.add_parser("sequences", parents=[common], help="print the first terms of a sequence")
    sp.add_argument("--kind", choices=[k.value for k in SequenceKind], required=True)
    sp.add_argument("--count", type=int, required=True)

    sub.add_parser("bound", parents=[common, eq], help="absolute bound on n from the Matveev chain")

    sp = sub.add_parser("reduce", parents=[common, eq], help="run a Dujella-Petho reduction")
    which = sp.add_mutually_exclusive_group(required=True)
    which.add_argument("--first", action="store_true", help="reduce n - m")
    which.add_argument("--family", action="store_true", help="reduce m over every n - m")
    sp.add_argument("--q-index", type=int, default=None, help="convergent index (default: the published one)")
    sp.add_argument("--earliest", action="store_true", help="start at the first q > 6M instead")
    sp.add_argument("--M", type=int, default=None, dest="M", help="bound on k (default: the published M)")
    sp.add_argument("--max-omega", type=int, default=None, help="family covers n - m in 0..max-omega")

    sp = sub.add_parser("search", parents=[common, eq], help="exhaustive search of a box (exclusive bounds)")
    sp.add_argument("--k-max", type=int, default=None)
    sp.add_argument("--n-max", type=int, default=None)
    sp.add_argument("--m-max", type=int, default=None)

    sp = sub.add_parser("verify", parents=[common, eq], help="check one triple exactly")
    for name in ("k", "n", "m"):
        sp.add_argument(f"--{name}", type=int, required=True)
    return p


# commands -------------------------------------------------------------


def _outcome_dict(o: ReductionOutcome) -> dict[str, Any]:
    return {
        "label": o.label,
        "status": o.status.value,
        "q_index": o.q_index,
        "q": str(o.q),
        "epsilon_lower": str(float(o.epsilon_lower)),
        "epsilon": to_json(o.epsilon),
        "omega_bound": o.omega_bound,
        "attempts": list(o.attempts),
    }


def cmd_pipeline(args, cfg: RunConfig) -> tuple[dict | str, int]:
    cert = run_pipeline(args.equation, prec=cfg.precision_bits, cap=cfg.precision_cap,
                        check_expected=not args.no_expected)
    if cfg.format == "text":
        return render_certificate(cert), cert.exit_code
    return cert.to_dict(), cert.exit_code


def cmd_sequences(args, cfg: RunConfig) -> tuple[dict | str, int]:
    if args.count < 0:
        raise UsageError("--count must be non-negative")
    values = terms(SequenceKind(args.kind), args.count)
    if cfg.format == "text":
        return " ".join(map(str, values)), EXIT_OK
    return {"kind": args.kind, "terms": [str(v) for v in values]}, EXIT_OK


def cmd_bound(args, cfg: RunConfig) -> tuple[dict | str, int]:
    prec = cfg.precision_bits
    coeffs = chain_coefficients(args.equation, prec)
    n = solve_chain(coeffs, prec)
    claims = CLAIMS[args.equation]
    out = {
        "equation": args.equation.value,
        "absolute_bound_n": str(n),
        "published_bound": str(claims.absolute_bound),
        "matveev_first_coefficient": to_json(matveev_first_coefficient(args.equation, prec)),
        "chain": {name: to_json(getattr(coeffs, name)) for name in ("c0", "c1", "c2")},
    }
    code = EXIT_OK if n <= claims.absolute_bound else EXIT_DISCREPANCY
    if cfg.format == "text":
        return f"n < {n} (published: n < {claims.absolute_bound})", code
    return out, code


def cmd_reduce(args, cfg: RunConfig) -> tuple[dict | str, int]:
    claims = CLAIMS[args.equation]
    first_label, second_label = FORMS[args.equation]
    M = claims.M if args.M is None else args.M
    if M < 1:
        raise UsageError("--M must be positive")
    q_index = None if args.earliest else (claims.q_index if args.q_index is None else args.q_index)
    kw = dict(q_index=q_index, prec=cfg.precision_bits, cap=cfg.precision_cap)
    try:
        if args.first:
            out = dujella_petho(ReductionInput(tau, mu_for(first_label), M, FIRST_A, 2, first_label.value), **kw)
            result = _outcome_dict(out)
            code = {ReductionStatus.REDUCED: EXIT_OK, ReductionStatus.EPSILON_NONPOSITIVE: EXIT_DISCREPANCY}.get(
                out.status, EXIT_UNCERTIFIED)
            text = (f"q_{out.q_index} = {out.q}\nepsilon > {float(out.epsilon_lower):.6g}\n"
                    f"n - m < {out.omega_bound}")
        else:
            top = claims.first_bound if args.max_omega is None else args.max_omega
            mus = {d: mu_for(second_label, d) for d in range(top + 1)}
            fam = dujella_petho_family(
                ReductionInput(tau, mus[0], M, FAMILY_A, 2, second_label.value), mus, **kw)
            result = {
                "members": {str(d): _outcome_dict(o) for d, o in fam.members.items()},
                "omega_bound": fam.omega_bound,
                "min_epsilon_lower": None if fam.min_epsilon is None else str(float(fam.min_epsilon)),
                "nonpositive": fam.nonpositive,
                "uncertain": fam.uncertain,
            }
            code = EXIT_UNCERTIFIED if fam.uncertain else EXIT_OK
            text = (f"m < {fam.omega_bound}\nmin epsilon > {float(fam.min_epsilon or 0):.6g}\n"
                    f"non-positive epsilon for n - m in {fam.nonpositive}")
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    return (text if cfg.format == "text" else result), code


def cmd_search(args, cfg: RunConfig) -> tuple[dict | str, int]:
    box = list(CLAIMS[args.equation].box)
    for i, v in enumerate((args.k_max, args.n_max, args.m_max)):
        if v is not None:
            if v < 0:
                raise UsageError("box bounds must be non-negative")
            box[i] = v
    sols = search_box(args.equation, *box)
    if cfg.format == "text":
        return "\n".join(str(s.as_tuple()) for s in sols), EXIT_OK
    return {"equation": args.equation.value, "box": box, "solutions": [list(s.as_tuple()) for s in sols]}, EXIT_OK


def cmd_verify(args, cfg: RunConfig) -> tuple[dict | str, int]:
    if min(args.k, args.n, args.m) < 0:
        raise UsageError("k, n, m must be non-negative")
    ok = verify_solution(args.equation, args.k, args.n, args.m)
    code = EXIT_OK if ok else EXIT_DISCREPANCY
    if cfg.format == "text":
        return "true" if ok else "false", code
    return {"equation": args.equation.value, "k": args.k, "n": args.n, "m": args.m, "holds": ok}, code


COMMANDS = {
    "pipeline": cmd_pipeline,
    "sequences": cmd_sequences,
    "bound": cmd_bound,
    "reduce": cmd_reduce,
    "search": cmd_search,
    "verify": cmd_verify,
}


def render_certificate(cert: Certificate) -> str:
    """Plain-text view built from the same dictionary as the JSON output."""
    d = cert.to_dict()
    lines = [
        f"equation        {d['equation']}",
        f"status          {d['status']} (exit {cert.exit_code})",
        f"precision       {d['precision_bits']} bits, cap {d['precision_cap']}",
        f"absolute bound  n < {d['absolute_bound_n']}",
        f"M used          {d['M_used']} (published {d['M_published']})",
        f"n - m bound     {d['first_omega']}",
        f"m bound         {d['family_omega']}",
        f"search box      k, n, m < {d['search_box']} (derived {d['derived_box']})",
    ]
    if d["case_two"]:
        ct = d["case_two"]
        lines.append(f"n - m = 1       b = {ct['b']}, m <= {ct['m_max']}, Q_k = 2^m at {ct['pairs']}")
    lines.append(f"solutions       {len(d['solutions'])}")
    lines += [f"  {tuple(s)}" for s in d["solutions"]]
    lines.append(f"discrepancies   {len(d['discrepancies'])}")
    lines += [f"  {x['claim']}: published {x['published']}; computed {x['computed']} [{x['resolution']}]"
              for x in d["discrepancies"]]
    lines.append("notes")
    lines += [f"  {n}" for n in d["notes"]]
    return "\n".join(lines)


def _emit(payload: dict | str, path: str | None) -> None:
    text = payload if isinstance(payload, str) else json.dumps(payload, indent=2)
    if path is None:
        print(text)
        return
    try:
        with open(path, "w") as fh:
            fh.write(text + "\n")
    except OSError as exc:
        raise UsageError(f"cannot write {path}: {exc.strerror}") from None


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        bits = args.precision_bits if args.precision_bits is not None else _default_precision()
        cfg = RunConfig(bits, args.precision_cap, args.output, args.format)
        if cfg.output_path is not None:
            parent = os.path.dirname(os.path.abspath(cfg.output_path))
            if not os.access(parent, os.W_OK):
                raise UsageError(f"cannot write to {cfg.output_path}")
        payload, code = COMMANDS[args.command](args, cfg)
        _emit(payload, cfg.output_path)
    except UsageError as exc:
        print(f"pelljac: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (UncertainError, CertificationFailure) as exc:
        print(f"pelljac: not certified: {exc}", file=sys.stderr)
        return EXIT_UNCERTIFIED
    return code


if __name__ == "__main__":
    sys.exit(main())
