"""Command-line interface.

Every successful invocation prints exactly one JSON envelope on stdout:

    {"schema_version": "1", "command": ..., "params": ..., "result": ...,
     "timing_ms": ...}

Counts are serialized as decimal strings so no output value is ever clamped
to a machine integer.  Errors go to stderr as a single ``error:<kind>:...``
line with exit code 1 (domain), 2 (usage), or 3 (budget); ``--repro`` pins
timing_ms to 0 so output is byte-stable for fixed inputs and seed.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time

from . import census as census_mod
from .canonical import rcf
from .centralizer import (DEFAULT_SPAN_BUDGET, centralizer,
                          centralizer_unit_count, is_polynomial_centralizer)
from .census import (DEFAULT_ENUMERATION_BUDGET, census_bruteforce,
                     count_irreducible_case, count_with_charpoly, gl_order,
                     orbit_stabilizer_report, verify_partition)
from .errors import BudgetError, ParseError
from .factor import factorize, is_irreducible
from .field import (DEFAULT_FIELD_ORDER_BUDGET, field_from_order, is_prime,
                    make_field)
from .matrix import format_matrix, parse_matrix
from .poly import format_poly, parse_poly

ENV_THREADS = "MATRIX_CENSUS_THREADS"


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _build_parser() -> _Parser:
    top = _Parser(
        prog="matrix-census",
        description="Exact matrix counts over finite fields by "
                    "characteristic polynomial.",
        epilog="Text formats: field elements are decimal indices in [0, q); "
               "polynomials are sums like x^2+2*x+1; matrices are rows "
               "joined by ';' with ',' between entries, e.g. 0,1;1,1.")
    sub = top.add_subparsers(dest="command", required=True)

    def common(p, matrix=False, poly=False, needs_n=False):
        p.add_argument("--q", type=int, required=True,
                       help="field order (prime, or prime power without --k)")
        p.add_argument("--k", type=int, default=None,
                       help="extension degree over the prime field")
        if needs_n:
            p.add_argument("--n", type=int, default=None,
                           help="matrix dimension")
        if matrix:
            p.add_argument("--matrix", required=True,
                           help="matrix text, rows ';'-separated")
        if poly is not False:
            p.add_argument("--poly", required=(poly == "required"),
                           help="polynomial text")
        p.add_argument("--seed", type=int, default=0,
                       help="seed for the factorization splitter")
        p.add_argument("--field-budget", type=int,
                       default=DEFAULT_FIELD_ORDER_BUDGET,
                       help="largest permitted field order")
        p.add_argument("--repro", action="store_true",
                       help="pin timing_ms to 0 for byte-stable output")
        return p

    p = sub.add_parser("count", help="count matrices with a given charpoly")
    common(p, poly=True, needs_n=True)

    p = sub.add_parser("verify", help="check census against closed forms")
    common(p, needs_n=True)
    p.add_argument("--mode", choices=("formula", "bruteforce", "both"),
                   default="both")
    p.add_argument("--budget", type=int, default=DEFAULT_ENUMERATION_BUDGET,
                   help="enumeration budget")
    p.add_argument("--threads", type=int, default=None,
                   help=f"census worker count (default {ENV_THREADS} "
                        "or machine parallelism)")
    p.add_argument("--format", choices=("json", "csv"), default="json",
                   help="csv prints the count table instead of the envelope")

    p = sub.add_parser("rcf", help="rational canonical form")
    common(p, matrix=True)

    p = sub.add_parser("centralizer", help="centralizer of a matrix")
    common(p, matrix=True)
    p.add_argument("--budget", type=int, default=DEFAULT_SPAN_BUDGET,
                   help="span-enumeration budget for unit counting")

    p = sub.add_parser("factor", help="factor a polynomial")
    common(p, poly="required")

    p = sub.add_parser("orbit", help="orbit/stabilizer report for a matrix "
                                     "with irreducible charpoly")
    common(p, matrix=True)
    return top


def _resolve_field(args):
    q, k = args.q, args.k
    budget = args.field_budget
    if k is not None:
        if k < 1:
            raise _UsageError("--k must be a positive integer")
        if not is_prime(q):
            raise _UsageError("--q must be prime when --k is given")
        return make_field(q, k, max_order=budget)
    try:
        return field_from_order(q, max_order=budget)
    except ValueError as exc:
        raise _UsageError(str(exc)) from None


def _field_params(field):
    mod = None
    if field.modulus is not None:
        base = make_field(field.p)
        from .poly import Polynomial
        mod = format_poly(Polynomial(base, list(field.modulus)))
    return {"p": field.p, "k": field.k, "q": field.q, "modulus": mod}


def _threads(args):
    if getattr(args, "threads", None) is not None:
        if args.threads < 1:
            raise _UsageError("--threads must be a positive integer")
        return args.threads
    env = os.environ.get(ENV_THREADS)
    if env is not None:
        try:
            v = int(env)
        except ValueError:
            raise _UsageError(f"{ENV_THREADS} must be an integer") from None
        if v < 1:
            raise _UsageError(f"{ENV_THREADS} must be a positive integer")
        return v
    return os.cpu_count() or 1


def _cmd_count(args):
    field = _resolve_field(args)
    params = {"field": _field_params(field), "seed": args.seed}
    if args.poly is not None:
        g = parse_poly(args.poly, field)
        if args.n is not None and args.n != g.degree:
            raise ValueError(
                f"--n {args.n} does not match the polynomial degree {g.degree}")
        if g.degree < 1 or not g.is_monic:
            raise ValueError("count needs a monic polynomial of degree >= 1")
        fact = factorize(g, seed=args.seed)
        irred = len(fact.factors) == 1 and fact.factors[0][1] == 1
        count = count_with_charpoly(g, seed=args.seed)
        params["n"] = g.degree
        params["poly"] = format_poly(g)
        result = {
            "count": str(count),
            "formula": "theorem1" if irred else "general",
            "factorization": [[format_poly(f), m] for f, m in fact.factors],
        }
    else:
        if args.n is None:
            raise _UsageError("count needs --n when --poly is omitted")
        if args.n < 1:
            raise _UsageError("--n must be a positive integer")
        params["n"] = args.n
        params["poly"] = None
        result = {
            "count": str(count_irreducible_case(field.q, args.n)),
            "formula": "theorem1",
            "factorization": None,
        }
    return params, result


def _cmd_verify(args):
    field = _resolve_field(args)
    if args.n is None:
        raise _UsageError("verify needs --n")
    if args.n < 1:
        raise _UsageError("--n must be a positive integer")
    n = args.n
    threads = _threads(args)
    params = {"field": _field_params(field), "n": n, "mode": args.mode,
              "seed": args.seed, "budget": args.budget, "threads": threads}
    q = field.q
    expected_total = q ** (n * n)
    mismatches = []
    rows = []  # (poly text, census count or None, formula count or None)
    census = None
    partition = None
    if args.mode in ("bruteforce", "both"):
        census = census_bruteforce(field, n, budget=args.budget,
                                   threads=threads)
    if args.mode in ("formula", "both"):
        partition = verify_partition(field, n, budget=args.budget,
                                     seed=args.seed)
    if args.mode == "formula":
        ok = partition.equal
        total = partition.lhs_total
        if not ok:
            mismatches.append({
                "charpoly": None,
                "census": None,
                "formula": str(partition.lhs_total),
                "expected": str(partition.rhs_total)})
        rows = [(format_poly(g), None, str(c))
                for g, c in partition.entries.items()]
    elif args.mode == "bruteforce":
        total = census.total
        ok = total == expected_total
        rows = [(format_poly(g), str(c), None)
                for g, c in census.entries.items()]
    else:
        total = census.total
        ok = total == expected_total and partition.equal
        for g, formula_count in partition.entries.items():
            got = census.entries.get(g, 0)
            row_ok = got == formula_count
            if is_irreducible(g):
                row_ok = row_ok and got == count_irreducible_case(q, n)
            if not row_ok:
                ok = False
                mismatches.append({
                    "charpoly": format_poly(g),
                    "census": str(got),
                    "formula": str(formula_count)})
            rows.append((format_poly(g), str(got), str(formula_count)))
        for g in census.entries:
            if g not in partition.entries:
                ok = False
                mismatches.append({
                    "charpoly": format_poly(g),
                    "census": str(census.entries[g]),
                    "formula": None})
    result = {"pass": ok, "total": str(total),
              "expected_total": str(expected_total),
              "mismatches": mismatches}
    return params, result, rows


def _cmd_rcf(args):
    field = _resolve_field(args)
    M = parse_matrix(args.matrix, field)
    form = rcf(M)
    params = {"field": _field_params(field), "n": M.n,
              "matrix": format_matrix(M), "seed": args.seed}
    result = {
        "blocks": [format_poly(b) for b in form.blocks],
        "transition": format_matrix(form.transition),
        "dimension": form.dimension,
    }
    return params, result


def _cmd_centralizer(args):
    field = _resolve_field(args)
    M = parse_matrix(args.matrix, field)
    desc = centralizer(M)
    try:
        units = centralizer_unit_count(M, budget=args.budget)
    except BudgetError:
        units = None
    params = {"field": _field_params(field), "n": M.n,
              "matrix": format_matrix(M), "seed": args.seed,
              "budget": args.budget}
    result = {
        "dimension": desc.dimension,
        "order": str(desc.order),
        "basis": [format_matrix(b) for b in desc.basis],
        "unit_count": None if units is None else str(units),
        "is_polynomial_centralizer": is_polynomial_centralizer(M),
    }
    return params, result


def _cmd_factor(args):
    field = _resolve_field(args)
    g = parse_poly(args.poly, field)
    fact = factorize(g, seed=args.seed)
    params = {"field": _field_params(field), "poly": format_poly(g),
              "seed": args.seed}
    result = {
        "leading": str(fact.leading.index),
        "factors": [[format_poly(f), m] for f, m in fact.factors],
    }
    return params, result


def _cmd_orbit(args):
    field = _resolve_field(args)
    M = parse_matrix(args.matrix, field)
    report = orbit_stabilizer_report(M)
    params = {"field": _field_params(field), "n": M.n,
              "matrix": format_matrix(M), "seed": args.seed}
    result = {
        "charpoly": format_poly(report.charpoly),
        "gl_order": str(report.gl_order),
        "stabilizer_order": str(report.stabilizer_order),
        "orbit_size": str(report.orbit_size),
        "formula_count": str(report.formula_count),
        "consistent": report.consistent,
    }
    return params, result


def _emit(command, params, result, started, repro):
    ms = 0 if repro else int((time.perf_counter() - started) * 1000)
    envelope = {
        "schema_version": "1",
        "command": command,
        "params": params,
        "result": result,
        "timing_ms": ms,
    }
    sys.stdout.write(
        json.dumps(envelope, sort_keys=True, separators=(",", ":")) + "\n")


def run(argv=None) -> int:
    parser = _build_parser()
    started = time.perf_counter()
    try:
        try:
            args = parser.parse_args(argv)
        except SystemExit as exc:  # argparse -h or similar
            return int(exc.code or 0)
        if args.command == "count":
            params, result = _cmd_count(args)
        elif args.command == "verify":
            params, result, rows = _cmd_verify(args)
            if args.format == "csv":
                header = {"formula": "charpoly,formula",
                          "bruteforce": "charpoly,census",
                          "both": "charpoly,census,formula"}[args.mode]
                lines = [header]
                for text, brute, formula in rows:
                    cells = [text]
                    if args.mode in ("bruteforce", "both"):
                        cells.append(brute)
                    if args.mode in ("formula", "both"):
                        cells.append(formula)
                    lines.append(",".join(cells))
                sys.stdout.write("\n".join(lines) + "\n")
                return 0 if result["pass"] else 1
            _emit("verify", params, result, started, args.repro)
            return 0 if result["pass"] else 1
        elif args.command == "rcf":
            params, result = _cmd_rcf(args)
        elif args.command == "centralizer":
            params, result = _cmd_centralizer(args)
        elif args.command == "factor":
            params, result = _cmd_factor(args)
        elif args.command == "orbit":
            params, result = _cmd_orbit(args)
        else:  # pragma: no cover
            raise _UsageError(f"unknown command {args.command!r}")
        _emit(args.command, params, result, started, args.repro)
        return 0
    except _UsageError as exc:
        sys.stderr.write(f"error:usage:{exc}\n")
        return 2
    except ParseError as exc:
        sys.stderr.write(f"error:usage:{exc}\n")
        return 2
    except BudgetError as exc:
        sys.stderr.write(f"error:budget:{exc}\n")
        return 3
    except (ValueError, ZeroDivisionError) as exc:
        sys.stderr.write(f"error:domain:{exc}\n")
        return 1


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
