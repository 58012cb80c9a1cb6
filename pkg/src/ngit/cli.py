"""Command-line interface.

The payload goes to stdout (deterministic JSON with ``--format json``);
timing and step-budget usage go to stderr.  Exit codes: 0 success,
1 malformed input, 2 step budget exceeded, 3 internal inconsistency
(criterion and oracle disagree).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from fractions import Fraction

from . import linrep, lnd, series, stability
from .exactalg import Budget, BudgetExceeded, PolynomialSyntaxError, polynomial_to_json
from .exactalg.groebner import DEFAULT_BUDGET

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_BUDGET = 2
EXIT_MISMATCH = 3


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(message)


class Report:
    def __init__(self, payload: dict, text: str, code: int = EXIT_OK):
        self.payload = payload
        self.text = text
        self.code = code


def _poly(f) -> dict:
    return {"text": str(f), **polynomial_to_json(f)}


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.replace(" ", "").split(",") if x]
    except ValueError:
        raise InputError(f"expected a comma-separated list of integers, got {text!r}") from None


def _weights(text: str) -> stability.TorusWeightSet:
    try:
        text = text.replace(" ", "")
        if ";" not in text:
            return stability.TorusWeightSet([Fraction(x) for x in text.split(",") if x])
        vecs = [[Fraction(x) for x in chunk.split(",")] for chunk in text.split(";") if chunk]
        return stability.TorusWeightSet(vecs)
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"bad weights {text!r}: {exc}") from None


def _read_json(path: str):
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from None


# -- subcommands --------------------------------------------------------------


def cmd_invariants(args, budget) -> Report:
    pres = lnd.invariant_presentation(args.n, budget=budget)
    payload = {
        "n": args.n,
        "ambient": pres.ambient,
        "degrees": pres.degrees,
        "tags": pres.tags,
        "generators": [_poly(g) for g in pres.generators],
        "relations": [_poly(r) for r in pres.relations],
    }
    lines = [f"ambient {pres.ambient}"]
    lines += [f"{t} = {g}  (degree {d})" for t, g, d in zip(pres.tags, pres.generators, pres.degrees)]
    lines += [f"relation {r} = 0" for r in pres.relations] or ["no relations"]
    return Report(payload, "\n".join(lines))


def cmd_nullcone(args, budget) -> Report:
    ideal = lnd.nullcone_check(args.n, budget=budget)
    names = [str(g) for g in ideal]
    return Report({"n": args.n, "ideal": names}, "(" + ", ".join(names) + ")")


def cmd_kernel(args, budget) -> Report:
    try:
        D = lnd.Derivation.from_json(_read_json(args.derivation))
    except (ValueError, PolynomialSyntaxError) as exc:
        raise InputError(str(exc)) from None
    gens = lnd.kernel_generators(D, witness=args.witness, budget=budget)
    return Report({"generators": [_poly(g) for g in gens]}, "\n".join(map(str, gens)))


def cmd_torus(args, budget) -> Report:
    w = _weights(args.weights)
    try:
        verdict = stability.torus_status(w, _int_list(args.support))
    except ValueError as exc:
        raise InputError(str(exc)) from None
    return Report({"verdict": verdict.value}, verdict.value)


def _config(args) -> stability.PointConfiguration:
    try:
        c = stability.parse_configuration(args.points)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    if getattr(args, "n", None) is not None and c.n != args.n:
        raise InputError(f"--n {args.n} but the points have total multiplicity {c.n}")
    return c


def _lin(args) -> stability.LinearizationPair:
    try:
        return stability.LinearizationPair(args.p, args.q)
    except ValueError as exc:
        raise InputError(str(exc)) from None


def cmd_config(args, budget) -> Report:
    c, lin = _config(args), _lin(args)
    crit = stability.config_status(c, lin)
    oracle = stability.config_status_oracle(c, lin)
    match = crit is oracle
    payload = {"points": str(c), "n": c.n, "p": lin.p, "q": lin.q,
               "verdict": crit.value, "oracle": oracle.value, "match": match}
    text = f"verdict {crit.value}\noracle {oracle.value}\nmatch {str(match).lower()}"
    return Report(payload, text, EXIT_OK if match else EXIT_MISMATCH)


def cmd_gstatus(args, budget) -> Report:
    c = _config(args)
    verdict = stability.g_status_binary_forms(c)
    return Report({"points": str(c), "verdict": verdict.value}, verdict.value)


def cmd_fg_check(args, budget) -> Report:
    lin = _lin(args)
    if args.n < 1:
        raise InputError("--n must be positive")
    value = stability.boundary_unstable(args.n, lin)
    payload = {"n": args.n, "p": lin.p, "q": lin.q, "boundary_unstable": value}
    text = f"boundary unstable {str(value).lower()}"
    code = EXIT_OK
    if args.oracle:
        oracle = stability.boundary_unstable_oracle(args.n, lin)
        payload["oracle"] = oracle
        payload["match"] = oracle == value
        text += f"\noracle {str(oracle).lower()}"
        code = EXIT_OK if oracle == value else EXIT_MISMATCH
    return Report(payload, text, code)


def cmd_poincare(args, budget) -> Report:
    n, N = args.n, args.trunc
    kind = args.kind or ("odd" if n % 2 else "intersection")
    funcs = {
        "odd": series.poincare_quotient_odd,
        "intersection": series.intersection_poincare,
        "partial": series.poincare_partial_desing,
        "stable": series.poincare_stable_quotient,
        "gquotient": series.poincare_binary_quotient,
        "equivariant": series.equivariant_series_yss,
    }
    try:
        s = funcs[kind](n, N)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    top = s.degree()
    table = [(d, s[d]) for d in range(0, top + 1, 2)] if kind != "equivariant" else s.betti_table()
    payload = {"n": n, "kind": kind, "series": s.to_json(), "betti": [list(r) for r in table]}
    return Report(payload, "\n".join(f"{d} {b}" for d, b in table))


def _substitution(path: str) -> linrep.SubstitutionAutomorphism:
    try:
        return linrep.SubstitutionAutomorphism.from_json(_read_json(path))
    except (ValueError, PolynomialSyntaxError) as exc:
        raise InputError(str(exc)) from None


def cmd_represent(args, budget) -> Report:
    s = _substitution(args.map)
    weights = _int_list(args.weights) if args.weights else list(s.weights)
    if tuple(weights) != s.weights:
        raise InputError(f"--weights {weights} disagree with the map's weights {list(s.weights)}")
    try:
        basis = linrep.monomial_basis(weights, args.degree, s.names)
        M = linrep.substitution_matrix(s, basis)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    payload = {"basis": basis.labels(), "matrix": M.to_json()}
    width = max(len(str(e)) for r in M.rows for e in r)
    lines = ["basis " + " ".join(basis.labels())]
    lines += [" ".join(str(e).rjust(width) for e in r) for r in M.rows]
    return Report(payload, "\n".join(lines))


def cmd_grouplaw(args, budget) -> Report:
    s = _substitution(args.map)
    basis = None
    if args.degree is not None:
        try:
            basis = linrep.monomial_basis(s.weights, args.degree, s.names)
        except ValueError as exc:
            raise InputError(str(exc)) from None
    holds = linrep.group_law_check(s, basis)
    return Report({"group_law": holds}, f"group law {'holds' if holds else 'fails'}")


# -- parser ---------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default=argparse.SUPPRESS)
    common.add_argument("--budget", type=int, default=argparse.SUPPRESS, help="S-pair reduction budget")

    parser = _Parser(prog="ngit", description="Exact computations for unipotent invariants and stability.",
                     parents=[common])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("invariants", parents=[common], help="invariant generators and presentation for binary forms")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("nullcone", parents=[common], help="zero locus of all invariants")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_nullcone)

    p = sub.add_parser("kernel", parents=[common], help="kernel generators of a derivation given as JSON")
    p.add_argument("--derivation", required=True, help="JSON file or - for stdin")
    p.add_argument("--witness", help="variable v with D(v) != 0 and D(D(v)) = 0")
    p.set_defaults(func=cmd_kernel)

    st = sub.add_parser("stability", parents=[common], help="Hilbert-Mumford stability tests")
    ssub = st.add_subparsers(dest="test", required=True, parser_class=_Parser)
    p = ssub.add_parser("torus", parents=[common])
    p.add_argument("--weights", required=True, help="'3,3,1' for rank one or '1,0;0,1;-1,-1'")
    p.add_argument("--support", required=True, help="comma-separated coordinate indices")
    p.set_defaults(func=cmd_torus)
    p = ssub.add_parser("config", parents=[common])
    p.add_argument("--n", type=int)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--points", required=True, help="'a:b^m,c:d^k'")
    p.set_defaults(func=cmd_config)
    p = ssub.add_parser("gstatus", parents=[common])
    p.add_argument("--n", type=int)
    p.add_argument("--points", required=True)
    p.set_defaults(func=cmd_gstatus)

    p = sub.add_parser("fg-check", parents=[common], help="instability of the boundary divisor")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--oracle", action="store_true", help="also run the exhaustive oracle")
    p.set_defaults(func=cmd_fg_check)

    p = sub.add_parser("poincare", parents=[common], help="Poincare series and Betti numbers")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--trunc", type=int)
    kinds = p.add_mutually_exclusive_group()
    for flag, kind in [("--intersection", "intersection"), ("--partial", "partial"), ("--stable", "stable"),
                       ("--gquotient", "gquotient"), ("--equivariant", "equivariant")]:
        kinds.add_argument(flag, dest="kind", action="store_const", const=kind)
    p.set_defaults(func=cmd_poincare, kind=None)

    p = sub.add_parser("represent", parents=[common], help="matrix of a substitution on a graded piece")
    p.add_argument("--weights")
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--map", required=True, help="substitution JSON file or - for stdin")
    p.set_defaults(func=cmd_represent)

    p = sub.add_parser("grouplaw", parents=[common], help="check the additive group law of a family")
    p.add_argument("--map", required=True)
    p.add_argument("--degree", type=int)
    p.set_defaults(func=cmd_grouplaw)
    return parser


def _budget(args) -> Budget:
    limit = getattr(args, "budget", None)
    if limit is None:
        env = os.environ.get("NGIT_BUDGET")
        if env:
            try:
                limit = int(env)
            except ValueError:
                raise InputError(f"NGIT_BUDGET={env!r} is not an integer") from None
    if limit is None:
        limit = DEFAULT_BUDGET
    if limit < 1:
        raise InputError("budget must be positive")
    return Budget(limit)


def main(argv=None) -> int:
    start = time.perf_counter()
    budget = None
    try:
        args = build_parser().parse_args(argv)
        budget = _budget(args)
        report = args.func(args, budget)
    except InputError as exc:
        print(f"ngit: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except BudgetExceeded as exc:
        print(f"ngit: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    if getattr(args, "format", "text") == "json":
        print(json.dumps(report.payload, sort_keys=True))
    else:
        print(report.text)
    elapsed = (time.perf_counter() - start) * 1000
    print(f"ngit: {elapsed:.1f} ms, {budget.used} of {budget.limit} budget steps", file=sys.stderr)
    return report.code


if __name__ == "__main__":
    sys.exit(main())
