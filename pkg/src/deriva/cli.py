"""Command-line entry point: ``deriva <verb> [options]``.

Exit codes: 0 success or pass, 1 failure with a witness, 2 usage or
validation error, 3 enumeration budget refused.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import checkers, solvers, symbolic
from .errors import BudgetExceededError, DerivaError, MixedRingError, NotASolutionError, PreconditionError
from .ring import parse_ring_spec
from .tables import FunctionTable, TwoPlaceTable, cauchy_diff, leibniz_diff, read_table, tabulate

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="deriva", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="verb", required=True)

    def common(p, functions=True):
        p.add_argument("--ring", help="carrier, e.g. GF:3, GF:9:poly=1,0,1, Z:6")
        p.add_argument("--out", type=Path, help="write the JSON report here")
        p.add_argument("--json", action="store_true", help="print JSON instead of text")
        if functions:
            p.add_argument("--f", help="expression in x for f")
            p.add_argument("--g", help="expression in x for g")
            p.add_argument("--f-table", type=Path)
            p.add_argument("--g-table", type=Path)

    def scalars(p):
        p.add_argument("--lambda", dest="lam", default="1")
        p.add_argument("--mu", default="1")

    common(sub.add_parser("ring-info", help="describe a carrier"), functions=False)

    p = sub.add_parser("check", help="verify an equation for given functions")
    common(p)
    scalars(p)
    p.add_argument(
        "--equation",
        default="E",
        choices=["E", "corollary", "additive", "leibniz", "derivation", "trace"],
    )
    p.add_argument("--count", action="store_true", help="scan the whole tuple space")

    p = sub.add_parser("enumerate", help="all solutions over a finite field")
    common(p, functions=False)
    scalars(p)
    p.add_argument("--equation", default="E", choices=["E", "corollary"])
    p.add_argument("--method", default="bruteforce", choices=["bruteforce", "linear"])
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--budget", type=int)

    common(sub.add_parser("decompose", help="split a solution (f, g)"))

    p = sub.add_parser("cocycle", help="check (F, G) and recover a representing f")
    common(p)
    p.add_argument("--F-table", dest="F_table", type=Path)
    p.add_argument("--G-table", dest="G_table", type=Path)

    common(sub.add_parser("derivations", help="list all derivations"), functions=False)

    p = sub.add_parser("symbolic", help="sample-check the formal derivative")
    common(p, functions=False)
    scalars(p)
    p.add_argument("--equation", default="derivation", choices=["derivation", "corollary"])
    p.add_argument("--samples", type=int, default=500)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-degree", type=int, default=8)
    return parser


# --- argument resolution ------------------------------------------------------------


def _ring(args, *tables):
    ring = parse_ring_spec(args.ring) if args.ring else None
    for t in tables:
        if t is None:
            continue
        if ring is None:
            ring = t.ring
        elif t.ring != ring:
            raise MixedRingError(f"table over {t.ring} but --ring is {ring}")
    if ring is None:
        raise PreconditionError("--ring is required")
    return ring


def _load(path, kind):
    if path is None:
        return None
    table = read_table(path)
    if not isinstance(table, kind):
        raise PreconditionError(f"{path} does not hold a {kind.__name__}")
    return table


def _function(args, name, ring, required=True) -> FunctionTable | None:
    expr, path = getattr(args, name), getattr(args, f"{name}_table")
    if expr is not None and path is not None:
        raise PreconditionError(f"give either --{name} or --{name}-table, not both")
    if path is not None:
        return _load(path, FunctionTable)
    if expr is not None:
        return tabulate(expr, ring)
    if required:
        raise PreconditionError(f"missing --{name} or --{name}-table")
    return None


def _tables_ring(args, names):
    tables = [_load(getattr(args, f"{n}_table", None), FunctionTable) for n in names]
    return _ring(args, *tables)


# --- verbs ------------------------------------------------------------------------------


def _cmd_ring_info(args):
    ring = _ring(args)
    out = {
        "ring": str(ring),
        "kind": ring.kind,
        "characteristic": str(ring.characteristic),
        "order": None if ring.order is None else str(ring.order),
        "is_field": ring.is_field,
        "is_finite": ring.is_finite,
    }
    if ring.kind == "GF":
        out["poly"] = list(ring.poly)
    if ring.is_finite and ring.order <= 1024:
        out["elements"] = [str(x) for x in ring.elements()]
    text = [f"{k}: {v}" for k, v in out.items() if k != "elements"]
    if "elements" in out:
        text.append("elements: " + " ".join(out["elements"]))
    return EXIT_OK, out, "\n".join(text)


def _cmd_check(args):
    ring = _tables_ring(args, ["f", "g"])
    f = _function(args, "f", ring)
    eq = args.equation
    if eq == "E":
        report = checkers.check_equation_E(f, _function(args, "g", ring), args.count)
    elif eq == "corollary":
        report = checkers.check_corollary(f, ring.parse_element(args.lam), ring.parse_element(args.mu), args.count)
    elif eq == "additive":
        report = checkers.check_additive(f, args.count)
    elif eq == "leibniz":
        report = checkers.check_leibniz(f, args.count)
    elif eq == "derivation":
        report = checkers.check_derivation(f, args.count)
    else:
        report = checkers.check_trace_identity(f, args.count)
    return (EXIT_OK if report.passed else EXIT_FAIL), report.to_dict(), report.summary()


def _cmd_enumerate(args):
    ring = _ring(args)
    equation = solvers.E
    if args.equation == "corollary":
        equation = solvers.Corollary(ring.parse_element(args.lam), ring.parse_element(args.mu))
    if args.method == "linear":
        result = solvers.solve_linear_solutions(ring, equation)
    else:
        result = solvers.enumerate_bruteforce(ring, equation, budget=args.budget, jobs=args.jobs)
    text = f"{result.equation} over {ring} ({result.method}): {result.count} solutions, nullity {result.nullity}"
    for note in result.notes:
        text += f"\nnote: {note}"
    return EXIT_OK, result.to_dict(), text


def _cmd_decompose(args):
    ring = _tables_ring(args, ["f", "g"])
    dec = solvers.decompose(_function(args, "f", ring), _function(args, "g", ring))
    out = dec.to_dict()
    text = "\n".join(f"{k}: {'; '.join(out[k])}" for k in ("alpha", "beta", "phi"))
    return EXIT_OK, out, text


def _cmd_cocycle(args):
    F, G = _load(args.F_table, TwoPlaceTable), _load(args.G_table, TwoPlaceTable)
    f = None
    if F is None and G is None:
        ring = _tables_ring(args, ["f"])
        f = _function(args, "f", ring)
        F, G = cauchy_diff(f), leibniz_diff(f)
    elif F is None or G is None:
        raise PreconditionError("give both --F-table and --G-table, or --f")
    ring = _ring(args, F, G)
    report = checkers.check_cocycle_system(F, G)
    out = report.to_dict()
    lines = [r.summary() for r in report.sub_reports]
    if report.passed and ring.is_field and ring.characteristic != 2:
        rep = solvers.represent_cocycle(F, G)
        out["representation"] = rep.to_strings()
        lines.append("representing f: " + "; ".join(out["representation"]))
    return (EXIT_OK if report.passed else EXIT_FAIL), out, "\n".join(lines)


def _cmd_derivations(args):
    ring = _ring(args)
    ds = solvers.enumerate_derivations(ring)
    out = {"ring": str(ring), "count": str(len(ds)), "derivations": [d.to_strings() for d in ds]}
    text = f"{len(ds)} derivation(s) on {ring}\n" + "\n".join("; ".join(d) for d in out["derivations"])
    return EXIT_OK, out, text


def _cmd_symbolic(args):
    domain = symbolic.parse_domain(args.ring or "Q[t]")
    if args.equation == "corollary":
        report = symbolic.sample_check_corollary(
            symbolic.derivative,
            Fraction(args.lam),
            Fraction(args.mu),
            samples=args.samples,
            seed=args.seed,
            max_degree=args.max_degree,
            domain=domain,
        )
    else:
        report = symbolic.sample_check_derivation(
            symbolic.derivative, domain, samples=args.samples, max_degree=args.max_degree, seed=args.seed
        )
    return (EXIT_OK if report.passed else EXIT_FAIL), report.to_dict(), report.summary()


_COMMANDS = {
    "ring-info": _cmd_ring_info,
    "check": _cmd_check,
    "enumerate": _cmd_enumerate,
    "decompose": _cmd_decompose,
    "cocycle": _cmd_cocycle,
    "derivations": _cmd_derivations,
    "symbolic": _cmd_symbolic,
}


def _dump(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def run(argv=None, stdout=None, stderr=None) -> int:
    """Run one command; returns the exit code."""
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        code, report, text = _COMMANDS[args.verb](args)
    except DerivaError as exc:
        code = EXIT_BUDGET if isinstance(exc, BudgetExceededError) else EXIT_FAIL if isinstance(exc, NotASolutionError) else EXIT_USAGE
        report = {"error": exc.to_dict()}
        text = f"error [{exc.kind}]: {exc}"
        if isinstance(exc, NotASolutionError):
            text += "\n" + exc.report.summary()
        print(text, file=stderr)
        text = None
    if getattr(args, "out", None) is not None:
        args.out.write_text(_dump(report))
    if text is not None:
        stdout.write(_dump(report) if args.json else text + "\n")
    return code


def main() -> None:
    sys.exit(run())
