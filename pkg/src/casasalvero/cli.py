"""Command-line front-end: every library capability behind one invocation,
with human-readable text output and a versioned JSON schema.

Exit codes: 0 = completed (and any expectation flag satisfied);
1 = completed but an --expect-* flag was violated; 2 = usage error
(bad flags, malformed field or polynomial spec); 3 = resource budget
refusal.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
import time

from . import casas, multipoly, unipoly
from .arith import FieldDescriptor, PrimeField, find_irreducible, is_prime
from .casas import SearchOptions
from .errors import (BudgetExceededError, DomainError, NormalizationError,
                     PolyParseError, UnsupportedFieldError)
from .multipoly import WeightedOrder, is_weighted_homogeneous
from .unipoly import UniPoly, format_poly, hasse_derivative, parse_poly

SCHEMA_VERSION = 1

EXIT_OK = 0
EXIT_EXPECTATION = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3


def default_budget() -> int:
    return int(os.environ.get("CASASALVERO_BUDGET",
                              casas.DEFAULT_SEARCH_BUDGET))


def parse_field(spec: str) -> FieldDescriptor:
    """Field spec grammar: `q` (rationals), `p=<prime>`, or
    `p=<prime>,m=<ext-degree>[,mod=<poly expression>]`.

    An omitted modulus is filled in deterministically by find_irreducible
    and echoed back in reports, so extension-field runs are reproducible."""
    spec = spec.strip()
    if spec == "q":
        return FieldDescriptor(tag="rationals")
    if spec == "z":
        return FieldDescriptor(tag="integers")
    parts = {}
    for tok in spec.split(","):
        if "=" not in tok:
            raise DomainError(f"bad field spec token {tok!r} in {spec!r}")
        k, v = tok.split("=", 1)
        parts[k.strip()] = v.strip()
    unknown = set(parts) - {"p", "m", "mod"}
    if unknown or "p" not in parts:
        raise DomainError(f"bad field spec {spec!r}: expected q, p=N, or "
                          f"p=N,m=M[,mod=...]")
    p = int(parts["p"])
    if not is_prime(p):
        raise DomainError(f"field characteristic {p} is not prime")
    m = int(parts.get("m", "1"))
    if m == 1:
        if "mod" in parts:
            raise DomainError("mod= is only meaningful with m > 1")
        return FieldDescriptor(tag="prime", p=p)
    if "mod" in parts:
        mod_poly = parse_poly(parts["mod"], PrimeField(p))
        if mod_poly.degree != m:
            raise DomainError(f"modulus degree {mod_poly.degree} != m={m}")
        modulus = tuple(mod_poly.monic().coeffs)
    else:
        modulus = find_irreducible(p, m)
    return FieldDescriptor(tag="extension", p=p, m=m, modulus=modulus)


class _Report:
    """Accumulates the invocation's output: text lines for humans, one
    payload object for --json."""

    def __init__(self, args, argv, field_desc=None):
        self.args = args
        self.argv = list(argv)
        self.field_desc = field_desc
        self.lines = []
        self.payload = None
        self.t0 = time.perf_counter()

    def say(self, line, quiet_too=False):
        if not self.args.quiet or quiet_too:
            self.lines.append(line)

    def verdict_line(self, line):
        self.say(line, quiet_too=True)

    def emit(self, stream=sys.stdout):
        if self.args.json:
            doc = {"schema_version": SCHEMA_VERSION,
                   "command": self.argv,
                   "field": (self.field_desc.to_json()
                             if self.field_desc else None),
                   "payload": self.payload,
                   "timings": {"wall_time": time.perf_counter() - self.t0}}
            json.dump(doc, stream, indent=2, sort_keys=True)
            stream.write("\n")
        else:
            for line in self.lines:
                stream.write(line + "\n")


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="casasalvero",
        description="Counterexample detection, searches, cascades and "
                    "symbolic resultants for the Casas-Alvero problem.")
    ap.add_argument("--version", action="version",
                    version="%(prog)s " + __import__("casasalvero").__version__)
    sub = ap.add_subparsers(dest="subcommand", required=True)

    def common(p):
        p.add_argument("--json", action="store_true",
                       help="emit the versioned JSON schema instead of text")
        p.add_argument("--quiet", action="store_true",
                       help="print only the verdict line")
        p.add_argument("--seed", type=int, default=None,
                       help="seed the global RNG (all built-in randomized "
                            "subroutines are already deterministically "
                            "seeded; this covers user extensions)")

    p = sub.add_parser("check", help="counterexample verdict for one polynomial")
    p.add_argument("--field", required=True)
    p.add_argument("--poly", required=True)
    common(p)

    p = sub.add_parser("hasse", help="Hasse derivatives of a polynomial")
    p.add_argument("--field", required=True)
    p.add_argument("--poly", required=True)
    p.add_argument("--order", type=int, default=None,
                   help="single derivative order i (default: all 1..d-1)")
    common(p)

    p = sub.add_parser("search", help="exhaustive counterexample search")
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--field", required=True)
    p.add_argument("--budget", type=int, default=None)
    p.add_argument("--threads", type=int, default=None)
    p.add_argument("--block-size", type=int, default=1 << 18)
    p.add_argument("--checkpoint", default=None,
                   help="checkpoint file for long runs (resumes if present)")
    p.add_argument("--no-kernel", action="store_true",
                   help="force the pure-Python scan path")
    p.add_argument("--expect-empty", action="store_true")
    p.add_argument("--expect-hits", action="store_true")
    common(p)

    p = sub.add_parser("cascade", help="elimination cascade certificate")
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--p", type=int, required=True)
    common(p)

    p = sub.add_parser("coverage", help="theorem coverage of a degree")
    p.add_argument("--degree", type=int, default=None)
    p.add_argument("--max", type=int, default=None,
                   help="report all degrees 1..max-1")
    common(p)

    p = sub.add_parser("symbolic",
                       help="generic resultants, weighted homogeneity, "
                            "leading monomials and Groebner checks")
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--index", type=int, default=None,
                   help="single derivative index i (default: all 1..d-1)")
    p.add_argument("--char", type=int, default=0)
    p.add_argument("--max-degree", type=int, default=None,
                   help="override the symbolic degree ceiling")
    p.add_argument("--gb", action="store_true",
                   help="run the Buchberger certificate on the generators "
                        "(requires --char p)")
    common(p)

    p = sub.add_parser("quad", help="degree-6 quadrinomial family scans")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--budget", type=int, default=None)
    p.add_argument("--closure", action="store_true",
                   help="locate points over the algebraic closure in "
                        "explicit extension fields, not just F_p-rational "
                        "ones")
    p.add_argument("--point", default=None, metavar="A,B",
                   help="verify the single point (a, b) instead of scanning")
    p.add_argument("--expect-empty", action="store_true")
    p.add_argument("--expect-hits", action="store_true")
    common(p)

    p = sub.add_parser("verify-m", help="reconstruct and check the integer M")
    common(p)

    return ap


# ---------------------------------------------------------------------------
# Subcommand bodies: each returns an exit code
# ---------------------------------------------------------------------------

def _cmd_check(args, rep):
    field = rep.field_desc.build()
    P = parse_poly(args.poly, field)
    verdict = casas.check_ca(casas.CAInstance(field, P))
    rep.payload = verdict.to_json(field)
    rep.say(f"P = {format_poly(P)} over {rep.field_desc}")
    rep.say(f"gcd degrees: {verdict.gcd_profile.degrees}")
    if verdict.linear_power_root is not None:
        rep.say(f"P is a d-th power of a linear polynomial (root "
                f"{verdict.linear_power_root})")
    rep.verdict_line("verdict: counterexample" if verdict.is_counterexample
                     else "verdict: not a counterexample")
    return EXIT_OK


def _cmd_hasse(args, rep):
    field = rep.field_desc.build()
    P = parse_poly(args.poly, field)
    orders = ([args.order] if args.order is not None
              else list(range(1, max(P.degree, 1))))
    out = {}
    for i in orders:
        Pi = hasse_derivative(P, i)
        out[i] = Pi
        rep.say(f"P_{i} = {format_poly(Pi)}", quiet_too=(args.order is not None))
    rep.payload = {str(i): format_poly(Pi) for i, Pi in out.items()}
    return EXIT_OK


def _cmd_search(args, rep):
    field = rep.field_desc.build()
    opts = SearchOptions(budget=args.budget or default_budget(),
                         threads=args.threads,
                         block_size=args.block_size,
                         checkpoint_path=args.checkpoint,
                         use_kernel=not args.no_kernel)
    report = casas.exhaustive_search(args.degree, field, opts)
    rep.payload = report.to_json()
    rep.say(f"degree {args.degree} over {rep.field_desc}: "
            f"{report.candidates_tested} candidates, "
            f"{len(report.hits)} hit(s), {report.wall_time:.2f}s")
    for h in report.hits:
        poly = casas.vector_to_poly(h.coeffs, args.degree, field)
        rep.say(f"  hit: {format_poly(poly)}")
    rep.verdict_line(f"hits: {len(report.hits)}")
    return _expectation_exit(args, bool(report.hits))


def _cmd_cascade(args, rep):
    trace = casas.elimination_cascade(args.degree, args.p)
    rep.payload = trace.to_json()
    rep.say(f"d = {trace.degree} = {trace.n} * {trace.p}^{trace.k}")
    rep.say(f"forced indices: {trace.forced_indices}")
    rep.say(f"residual indices: {trace.residual_indices}")
    if trace.complete_certificate:
        rep.verdict_line("verdict: complete certificate (n = 1)")
    elif trace.reduces_to_quadratic:
        rep.verdict_line("verdict: reduces to the quadratic base case (n = 2)")
    else:
        rep.verdict_line(f"verdict: residual problem of degree {trace.n}")
    return EXIT_OK


def _cmd_coverage(args, rep):
    if (args.degree is None) == (args.max is None):
        raise DomainError("coverage needs exactly one of --degree / --max")
    degrees = [args.degree] if args.degree is not None else range(1, args.max)
    verdicts = [casas.theorem_coverage(d) for d in degrees]
    rep.payload = [v.to_json() for v in verdicts]
    for v in verdicts:
        if v.covered and v.rule:
            rep.say(f"d = {v.degree}: covered ({v.rule}: n={v.n}, "
                    f"p={v.p}, k={v.k})")
        elif v.covered:
            rep.say(f"d = {v.degree}: covered")
        else:
            rep.say(f"d = {v.degree}: open")
    open_degrees = [v.degree for v in verdicts if not v.covered]
    rep.verdict_line(f"open: {open_degrees}")
    return EXIT_OK


def _cmd_symbolic(args, rep):
    d = args.degree
    indices = ([args.index] if args.index is not None
               else list(range(1, d)))
    order = WeightedOrder(d - 1)
    gens = []
    payload = {"degree": d, "char": args.char, "resultants": []}
    for i in indices:
        R = multipoly.generic_resultant(d, i, args.char,
                                        max_degree=args.max_degree)
        gens.append(R)
        w = is_weighted_homogeneous(R)
        entry = {"i": i, "terms": len(R.terms),
                 "weighted_degree": None if not isinstance(w, int) else w,
                 "expected_weighted_degree": d * (d - i)}
        line = (f"Res(P, P_{i}): {len(R.terms)} terms, "
                f"weighted degree {w} (expected {d * (d - i)})")
        if args.char:
            lm = R.leading_monomial(order)
            entry["leading_monomial"] = list(lm)
            expected = tuple(d if j == d - i - 1 else 0 for j in range(d - 1))
            entry["leading_monomial_is_a_dmi_pow_d"] = (lm == expected)
            line += f", LM exponents {lm}"
        payload["resultants"].append(entry)
        rep.say(line)
    if args.gb:
        if not args.char:
            raise DomainError("--gb requires --char p (characteristic 0 "
                              "Groebner checks are out of scope)")
        cert = multipoly.buchberger_is_gb([g for g in gens if not g.is_zero],
                                          order)
        payload["groebner"] = cert.to_json()
        rep.verdict_line(f"groebner basis: {cert.is_groebner}")
    rep.payload = payload
    return EXIT_OK


def _cmd_quad(args, rep):
    p = args.p
    if args.point is not None:
        try:
            a_str, b_str = args.point.split(",")
            a, b = int(a_str), int(b_str)
        except ValueError:
            raise DomainError(f"--point wants A,B integers, got {args.point!r}")
        verdict = casas.verify_quad_point(p, a, b)
        rep.payload = {"p": p, "a": a, "b": b,
                       "verdict": verdict.to_json(PrimeField(p))}
        rep.verdict_line("verdict: counterexample" if verdict.is_counterexample
                         else "verdict: not a counterexample")
        return EXIT_OK
    if args.closure:
        report = casas.quad_closure_scan(p)
        rep.payload = report.to_json()
        for h in report.hits:
            K = h.field.build()
            rep.say(f"  point over {h.field}: a = {casas.encode_elt(K, h.a)}, "
                    f"b = {casas.encode_elt(K, h.b)}, counterexample = "
                    f"{h.verdict.is_counterexample}")
        rep.verdict_line(f"closure hits: {len(report.hits)} "
                         f"(rational: {len(report.rational_hits)})")
        return _expectation_exit(args, bool(report.hits))
    report = casas.quad_scan(p, budget=args.budget or default_budget())
    rep.payload = report.to_json()
    for h in report.hits:
        rep.say(f"  hit: a = {h.coeffs[1]}, b = {h.coeffs[3]}")
    rep.verdict_line(f"hits: {len(report.hits)}")
    return _expectation_exit(args, bool(report.hits))


def _cmd_verify_m(args, rep):
    report = casas.verify_m()
    rep.payload = report.to_json()
    rep.say("M = " + " * ".join(f"{p}^{e}" if e > 1 else str(p)
                                for p, e in report.factorization))
    rep.say(f"  = {report.decimal}")
    rep.verdict_line(f"all factors prime: {report.all_factors_prime}")
    return EXIT_OK


def _expectation_exit(args, has_hits: bool) -> int:
    if getattr(args, "expect_empty", False) and has_hits:
        return EXIT_EXPECTATION
    if getattr(args, "expect_hits", False) and not has_hits:
        return EXIT_EXPECTATION
    return EXIT_OK


_COMMANDS = {"check": _cmd_check, "hasse": _cmd_hasse, "search": _cmd_search,
             "cascade": _cmd_cascade, "coverage": _cmd_coverage,
             "symbolic": _cmd_symbolic, "quad": _cmd_quad,
             "verify-m": _cmd_verify_m}


def run(argv=None, stream=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    stream = stream or sys.stdout
    ap = _build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code not in (0, None) else 0
    if getattr(args, "expect_empty", False) and getattr(args, "expect_hits",
                                                        False):
        print("error: --expect-empty and --expect-hits are exclusive",
              file=sys.stderr)
        return EXIT_USAGE
    if args.seed is not None:
        random.seed(args.seed)
    field_desc = None
    try:
        if getattr(args, "field", None) is not None:
            field_desc = parse_field(args.field)
        rep = _Report(args, argv, field_desc)
        code = _COMMANDS[args.subcommand](args, rep)
        rep.emit(stream)
        return code
    except PolyParseError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetExceededError as e:
        print(f"refused: {e} (required {e.required}, budget {e.budget})",
              file=sys.stderr)
        return EXIT_BUDGET
    except (DomainError, UnsupportedFieldError, NormalizationError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
