"""Command line front end.

One binary with subcommands; every report is printable as text or JSON and
can be written to a file.  Domain errors exit with status 2 and a one-line
message on stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .catalog import (
    NotProjectiveSymmetry,
    SocleNotPreserved,
    fold,
    load_catalog,
    match,
    reproduce_p8,
    reproduce_table1,
    reproduce_table2,
    reproduce_table3,
    spectrum_of,
)
from .dual import NotQuasiEuler, dualize, eulerize, involution_check
from .exact import phase
from .milnor import MilnorRing, NoSolution, NonIsolated, Underdetermined
from .orbifold import build_module, check_axioms, reconstruct_structure
from .poly import ParseError, parse_polynomial
from .reports import (
    analyze_report,
    axioms_report,
    dualize_report,
    emit,
    fold_report,
    orbifold_report,
    tables_report,
)
from .symmetry import GroupOrderExceeded, enumerate_sigma, generate_group


def _parse_vars(text: str):
    out = tuple(v.strip() for v in text.split(",") if v.strip())
    if not out:
        raise ValueError("no variables given")
    return out


def _parse_fractions(text: str):
    return tuple(Fraction(t.strip()) for t in text.split(","))


def _parse_gens(text: str):
    s = "".join(text.split())
    if not (s.startswith("[[") and s.endswith("]]")):
        raise ValueError('generators must look like "[[1/4],[0,1/2]]"')
    return [
        tuple(Fraction(tok) for tok in part.split(","))
        for part in s[2:-2].split("],[")
    ]


def _parse_params(text: str) -> dict:
    """"n=3..8" or "n=5", comma separated."""
    out = {}
    for piece in text.split(","):
        key, _, val = piece.partition("=")
        if not val:
            raise ValueError(f"bad parameter {piece!r}")
        if ".." in val:
            lo, _, hi = val.partition("..")
            out[key.strip()] = list(range(int(lo), int(hi) + 1))
        else:
            out[key.strip()] = [int(val)]
    return out


def _load_eps(path: str):
    """JSON array of [g, h, theta] triples with rational strings."""
    with open(path) as fh:
        raw = json.load(fh)
    table = {}
    for g, h, theta in raw:
        key = (tuple(Fraction(x) for x in g), tuple(Fraction(x) for x in h))
        table[key] = phase(Fraction(theta))
    return table


def _catalog(args):
    return load_catalog(args.catalog) if args.catalog else None


def _module(args):
    variables = _parse_vars(args.vars)
    f = parse_polynomial(args.poly, variables)
    gens = _parse_gens(args.gens)
    weights = _parse_fractions(args.weights) if args.weights else None
    sigma = None
    if args.sigma is not None:
        group = generate_group(gens, len(variables), bound=args.max_group_order)
        sigmas = enumerate_sigma(group)
        if not 0 <= args.sigma < len(sigmas):
            raise ValueError(
                f"--sigma index {args.sigma} out of range 0..{len(sigmas) - 1}")
        sigma = sigmas[args.sigma]
    eps = _load_eps(args.eps) if getattr(args, "eps", None) else None
    return build_module(f, gens, weights=weights, sigma=sigma,
                        eps_table=eps, bound=args.max_group_order)


def _echo(args, command, **extra):
    echo = {"command": command}
    for key in ("poly", "vars", "weights", "gens", "sigma", "eps", "which",
                "params", "input", "catalog"):
        val = getattr(args, key, None)
        if val is not None:
            echo[key] = val
    echo.update(extra)
    return echo


def cmd_analyze(args):
    variables = _parse_vars(args.vars)
    f = parse_polynomial(args.poly, variables)
    weights = _parse_fractions(args.weights) if args.weights else None
    ring = MilnorRing(f, weights)
    return analyze_report(ring, _echo(args, "analyze"))


def cmd_orbifold(args):
    mod = _module(args)
    spec = spectrum_of(mod.invariants(), mod.group)
    return orbifold_report(mod, spec, match(spec, "cc", _catalog(args)),
                           _echo(args, "orbifold"))


def cmd_dualize(args):
    mod = _module(args)
    if mod.j in mod.group:
        classification = "Euler (j in G)"
        dual = dualize(mod)
    else:
        eul = eulerize(mod)
        classification = (
            f"quasi-Euler (Eulerized through order {eul.group.order},"
            f" sigma(j) = {eul.sigma[mod.j]})")
        dual = dualize(mod, eul)
    spec = spectrum_of(dual.invariants(), dual.group)
    return dualize_report(
        mod, dual, classification, spec, match(spec, "ac", _catalog(args)),
        involution_check(mod), _echo(args, "dualize"))


def cmd_tables(args):
    params = _parse_params(args.params) if args.params else {}
    n_values = params.get("n")
    cat = _catalog(args)
    results = {}
    if args.which in ("1", "all"):
        results["1"] = reproduce_table1(cat, n_values=n_values)
    if args.which in ("2", "all"):
        results["2"] = reproduce_table2(cat, n_values=n_values)
    if args.which in ("3", "all"):
        results["3"] = reproduce_table3(cat)
    if args.which in ("p8", "all"):
        results["p8"] = reproduce_p8(cat)
    return tables_report(results, _echo(args, "tables"))


def cmd_fold(args):
    variables = _parse_vars(args.vars)
    f = parse_polynomial(args.poly, variables)
    gens = _parse_gens(args.gens)
    weights = _parse_fractions(args.weights) if args.weights else None
    res = fold(f, gens, weights=weights, catalog=_catalog(args))
    return fold_report(res, _echo(args, "fold"))


def cmd_axioms(args):
    with open(args.input) as fh:
        spec = json.load(fh)
    variables = tuple(spec["vars"])
    f = parse_polynomial(spec["poly"], variables)
    gens = [tuple(Fraction(x) for x in g) for g in spec["gens"]]
    weights = (tuple(Fraction(x) for x in spec["weights"])
               if spec.get("weights") else None)
    sigma = None
    if spec.get("sigma") is not None:
        group = generate_group(gens, len(variables), bound=args.max_group_order)
        sigmas = enumerate_sigma(group)
        sigma = sigmas[int(spec["sigma"])]
    eps = None
    if spec.get("eps"):
        eps = {}
        for g, h, theta in spec["eps"]:
            key = (tuple(Fraction(x) for x in g), tuple(Fraction(x) for x in h))
            eps[key] = phase(Fraction(theta))
    mod = build_module(f, gens, weights=weights, sigma=sigma,
                       eps_table=eps, bound=args.max_group_order)
    ax = check_axioms(reconstruct_structure(mod))
    return axioms_report(ax, _echo(args, "axioms"))


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text",
                        help="output format (default text)")
    common.add_argument("--out", metavar="FILE", help="write the report to FILE")
    common.add_argument("--max-group-order", type=int, default=10000,
                        metavar="N", help="abort group generation beyond N elements")
    common.add_argument("--catalog", metavar="FILE",
                        help="override the shipped spectrum catalog")

    parser = argparse.ArgumentParser(
        prog="orbifrob",
        description="Orbifold Frobenius data for quasi-homogeneous singularities"
                    " with diagonal symmetries: sectors, invariants, mirror duals,"
                    " classification tables, foldings.")
    sub = parser.add_subparsers(dest="command", required=True)

    pa = sub.add_parser("analyze", parents=[common],
                        help="weights, Milnor ring, degrees, pairing")
    pa.add_argument("--poly", required=True, help='polynomial, e.g. "x^3+x*y^3"')
    pa.add_argument("--vars", required=True, help="comma separated variables")
    pa.add_argument("--weights", help="comma separated rational weights"
                                      " (required when not determined by f)")
    pa.set_defaults(func=cmd_analyze)

    def add_module_flags(p):
        p.add_argument("--poly", required=True)
        p.add_argument("--vars", required=True)
        p.add_argument("--weights")
        p.add_argument("--gens", required=True,
                       help='generator phase vectors, e.g. "[[1/4],[0,1/2]]"')
        p.add_argument("--sigma", type=int, metavar="K",
                       help="index into the deterministic enumeration of"
                            " supergradings Hom(G, Z/2); omit for sigma = 0")
        p.add_argument("--eps", metavar="FILE",
                       help="JSON file of discrete-torsion values [g, h, theta],"
                            " validated as a bicharacter")

    po = sub.add_parser("orbifold", parents=[common],
                        help="sector table, invariants, spectrum, catalog match")
    add_module_flags(po)
    po.set_defaults(func=cmd_orbifold)

    pd = sub.add_parser("dualize", parents=[common],
                        help="mirror dual module, invariants, ac-match,"
                             " Euler classification, involution check")
    add_module_flags(pd)
    pd.set_defaults(func=cmd_dualize)

    pt = sub.add_parser("tables", parents=[common],
                        help="reproduce the classification tables")
    pt.add_argument("--which", choices=("1", "2", "3", "p8", "all"),
                    default="all")
    pt.add_argument("--params", metavar="SPEC",
                    help='sweep override, e.g. "n=3..8"')
    pt.set_defaults(func=cmd_tables)

    pf = sub.add_parser("fold", parents=[common],
                        help="projective-symmetry folding of a Milnor ring")
    pf.add_argument("--poly", required=True)
    pf.add_argument("--vars", required=True)
    pf.add_argument("--weights")
    pf.add_argument("--gens", required=True)
    pf.set_defaults(func=cmd_fold)

    px = sub.add_parser("axioms", parents=[common],
                        help="reconstruct the twisted multiplication and check"
                             " the G-Frobenius axioms")
    px.add_argument("--input", required=True, metavar="FILE",
                    help="JSON module spec: poly, vars, gens,"
                         " optional weights/sigma/eps")
    px.set_defaults(func=cmd_axioms)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        rep = args.func(args)
    except (ParseError, NonIsolated, NoSolution, Underdetermined,
            GroupOrderExceeded, NotQuasiEuler, NotProjectiveSymmetry,
            SocleNotPreserved, OSError, ValueError, KeyError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    text = emit(rep, args.format, args.out)
    if not args.out:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
