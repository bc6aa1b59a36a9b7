"""Command line driver: ``mullat <subcommand> [options]``.

Exit status 0 on success, 1 on a domain error (message on stderr), 2 on a
usage error.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction

from . import __version__
from .compos import build_scenario, locally_free_probe, specialize
from .epmod import EpLattice, canonical_lattice, is_simple, pure_hull, saturation_index, snf
from .errors import MullatError
from .kummer import check_finite_determination, determination_constant, kummer_group
from .multfield import BaseField, factor, independent_mod_constants, pure_hull_basis_mod_constants
from .puiseux import newton_puiseux, parse_series, parse_ypoly, prime_field
from .puiseux.fields import QQ


class UsageError(Exception):
    pass


def _json_arg(text, what):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"{what} is not valid JSON: {exc}") from None


def _split_top(text, sep=","):
    """Split on ``sep`` outside parentheses."""
    out, depth, cur = [], 0, ""
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == sep and depth == 0:
            out.append(cur)
            cur = ""
        else:
            cur += ch
    out.append(cur)
    return [s.strip() for s in out if s.strip()]


def _elems(text, p):
    if text is None:
        return []
    return [factor(s, BaseField(p)) for s in _split_top(text)]


def _lattice(text, p, ambient=None):
    if text.startswith("identity"):
        try:
            k = int(text[len("identity"):])
        except ValueError:
            raise UsageError(f"bad lattice name {text!r}") from None
        return EpLattice.full(p, k)
    data = _json_arg(text, "lattice")
    if isinstance(data, dict):
        return EpLattice.from_json(data)
    if not data:
        if ambient is None:
            raise UsageError("empty lattice needs a known dimension")
        return EpLattice.zero(p, ambient)
    return canonical_lattice(p, len(data[0]), data)


def _series_field(p):
    return prime_field(p) if p else QQ


def _emit(args, payload, text):
    if args.json:
        print(json.dumps(payload, sort_keys=True, default=str))
    else:
        print(text)


# ---------------------------------------------------------------------------
# subcommands


def cmd_snf(args):
    mat = _json_arg(args.matrix, "matrix")
    res = snf(mat)
    payload = {"invariants": list(res.invariants), "U": [list(r) for r in res.U], "V": [list(r) for r in res.V]}
    _emit(args, payload, f"invariants: {list(res.invariants)}")


def cmd_saturate(args):
    a = _lattice(args.lattice, args.p)
    within = _lattice(args.within, args.p) if args.within else EpLattice.full(args.p, a.ambient)
    hull = pure_hull(a, within)
    si = saturation_index(a, within)
    payload = {"hull": hull.to_json(), "invariant_factors": list(si.invariant_factors), "index": si.index}
    text = f"hull basis: {[list(r) for r in hull.rows]}\ninvariant factors: {list(si.invariant_factors)}\nindex: {si.index}"
    _emit(args, payload, text)


def cmd_simple(args):
    vec = _json_arg(args.vector, "vector")
    lat = _lattice(args.lattice, args.p, len(vec))
    res = is_simple(vec, lat)
    payload = {"simple": res.simple}
    text = "simple: " + ("true" if res.simple else "false")
    if not res.simple:
        root = [str(x) for x in res.root]
        payload.update(prime=res.prime, root=root)
        text += f" ({res.prime} * {root})"
    _emit(args, payload, text)


def cmd_factor(args):
    e = factor(args.elem, BaseField(args.p))
    _emit(args, e.to_json(), str(e))


def cmd_independent(args):
    elems = _elems(args.elems, args.p)
    ind = independent_mod_constants(elems)
    payload = {"independent": ind}
    text = f"independent: {'true' if ind else 'false'}"
    if ind and elems:
        hb = pure_hull_basis_mod_constants(elems)
        payload.update(hull_basis=[str(b) for b in hb.basis], invariant_factors=list(hb.invariant_factors), m=hb.m)
        text += f"\npure hull basis: {[str(b) for b in hb.basis]}\ninvariant factors: {list(hb.invariant_factors)}"
    _emit(args, payload, text)


def cmd_kummer_degree(args):
    elems = _elems(args.elems, args.p)
    g = kummer_group(elems, args.n)
    payload = {"n": args.n, "invariants": list(g.invariants), "degree": g.order}
    _emit(args, payload, f"kummer group: {list(g.invariants)}\ndegree: {g.order}")


def cmd_det_constant(args):
    a, b = _elems(args.a, args.p), _elems(args.b, args.p)
    dc = determination_constant(a, b)
    payload = {"m": dc.m, "invariant_factors": list(dc.invariant_factors)}
    _emit(args, payload, f"m: {dc.m}\ninvariant factors: {list(dc.invariant_factors)}")


def cmd_twist_check(args):
    a, b = _elems(args.a, args.p), _elems(args.b, args.p)
    report = check_finite_determination(a, b, args.n_max)
    payload = report.to_json()
    if args.trials:
        # spot-check with seeded random twists: every m-multiple must be realizable
        from .kummer import realizable_twists, split_inclusion, _tuple_rows

        rows, p = _tuple_rows(a, b)
        split = split_inclusion(rows, len(a), p)
        rng = random.Random(args.seed)
        bad = 0
        for _ in range(args.trials):
            n = rng.choice([lv.n for lv in report.levels])
            v = [split.m * rng.randrange(n) % n for _ in b]
            if v not in realizable_twists(split.E_a, split.E_b, n, p):
                bad += 1
        payload["random_trials"] = {"seed": args.seed, "count": args.trials, "failures": bad}
    lines = [f"m: {report.m} (minimal: {str(report.minimal).lower()})", f"twist exponent: {report.twist_exponent}"]
    lines.append("all levels ok" if report.ok else f"violations at n = {report.violations}")
    if "random_trials" in payload:
        lines.append(f"random trials: {payload['random_trials']['failures']} failures of {args.trials}")
    _emit(args, payload, "\n".join(lines))
    return 0 if report.ok else 1


def cmd_puiseux_eval(args):
    s = parse_series(args.expr, _series_field(args.p), rel_prec=args.trunc)
    if args.trunc is not None:
        s = s.truncate(args.trunc)
    payload = {"series": str(s), "valuation": str(s.valuation()), "ram": s.ram}
    _emit(args, payload, str(s))


def cmd_puiseux_roots(args):
    K = _series_field(args.p)
    coeffs = parse_ypoly(args.poly, K, rel_prec=args.trunc)
    roots = newton_puiseux(coeffs, args.prec)
    payload = {
        "degree": len(coeffs) - 1,
        "roots": [
            {"series": str(r.series), "multiplicity": r.multiplicity, "conjugates": r.conjugates, "field": repr(r.field)}
            for r in roots
        ],
    }
    _emit(args, payload, "\n".join(str(r) for r in roots) or "no roots")


def cmd_residue(args):
    s = parse_series(args.expr, _series_field(args.p), rel_prec=args.trunc)
    r = s.residue()
    txt = s.field.format(r)
    _emit(args, {"residue": txt}, f"residue: {txt}")


def _scenario(args):
    if args.scenario:
        data = _json_arg(args.scenario, "scenario")
        if "p" not in data:
            data["p"] = args.p
        return build_scenario(data["p"], data.get("vars"), data["blocks"], unsafe=args.unsafe)
    if not args.blocks:
        raise UsageError("give --blocks or --scenario")
    blocks = [[v.strip() for v in b.split(",") if v.strip()] for b in args.blocks.split(";")]
    variables = [v.strip() for v in args.vars.split(",")] if args.vars else None
    return build_scenario(args.p, variables, blocks, unsafe=args.unsafe)


def cmd_scenario_probe(args):
    s = _scenario(args)
    report = locally_free_probe(s, _elems(args.elems, s.p))
    payload = report.to_json()
    lines = [
        f"# {payload['model']}" + (" [unsafe: blocks do not cover the variables]" if s.uncovered() else ""),
        f"rank: {payload['rank']}",
        f"pure hull basis: {payload['hull_basis']}",
        f"invariant factors: {payload['invariant_factors']}",
        f"m: {payload['m']}",
        f"free: {str(payload['free']).lower()}",
    ]
    for e in payload["elements"]:
        lines.append(f"  {e['class']}: simple={e['simple']} index={e['index']}")
    _emit(args, payload, "\n".join(lines))


def cmd_specialize(args):
    s = _scenario(args)
    keep = [v.strip() for v in args.keep.split(",") if v.strip()] if args.keep else []
    res = specialize(s, keep, _elems(args.elems, s.p))
    text = f"assignment: {res.assignment}\n" + "\n".join(str(e) for e in res.elements)
    _emit(args, res.to_json(), text)


# ---------------------------------------------------------------------------


def _fraction(text):
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational: {text!r}") from None


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--p", type=int, default=0, help="characteristic (0 or a prime)")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--trunc", type=_fraction, default=None, help="series truncation order")
    common.add_argument("--prec", type=_fraction, default=Fraction(8), help="root precision")
    common.add_argument("--json", action="store_true", help="JSON output")

    parser = argparse.ArgumentParser(prog="mullat", description="Exact multiplicative-lattice toolkit")
    parser.add_argument("--version", action="version", version=f"mullat {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, help_text):
        sp = sub.add_parser(name, parents=[common], help=help_text)
        sp.set_defaults(fn=fn)
        return sp

    sp = add("snf", cmd_snf, "Smith normal form of an integer matrix")
    sp.add_argument("--matrix", required=True, help="JSON rows")

    sp = add("saturate", cmd_saturate, "pure hull of a lattice")
    sp.add_argument("--lattice", required=True, help="JSON rows, lattice JSON, or identityN")
    sp.add_argument("--within", help="ambient lattice (default: all of E_p^k)")

    sp = add("simple", cmd_simple, "is a vector simple in a lattice")
    sp.add_argument("--vector", required=True)
    sp.add_argument("--lattice", required=True)

    sp = add("factor", cmd_factor, "factor a rational function")
    sp.add_argument("--elem", required=True)

    sp = add("independent", cmd_independent, "multiplicative independence modulo constants")
    sp.add_argument("--elems", required=True, help="comma separated")

    sp = add("kummer-degree", cmd_kummer_degree, "Kummer group of adjoining n-th roots")
    sp.add_argument("--elems", required=True)
    sp.add_argument("--n", type=int, required=True)

    sp = add("det-constant", cmd_det_constant, "finite-determination constant m of (a, b)")
    sp.add_argument("--a", default="")
    sp.add_argument("--b", default="")

    sp = add("twist-check", cmd_twist_check, "check realizable twists up to a level")
    sp.add_argument("--a", default="")
    sp.add_argument("--b", default="")
    sp.add_argument("--n-max", type=int, default=30)
    sp.add_argument("--trials", type=int, default=0, help="extra seeded random spot checks")

    sp = add("puiseux-eval", cmd_puiseux_eval, "evaluate a series expression")
    sp.add_argument("--expr", required=True)

    sp = add("puiseux-roots", cmd_puiseux_roots, "Newton-Puiseux roots of a polynomial in y")
    sp.add_argument("--poly", required=True)

    sp = add("residue", cmd_residue, "residue of a series")
    sp.add_argument("--expr", required=True)

    for name, fn, help_text in (
        ("scenario-probe", cmd_scenario_probe, "local-freeness probe for a composite scenario"),
        ("specialize", cmd_specialize, "specialize variables outside a kept set"),
    ):
        sp = add(name, fn, help_text)
        sp.add_argument("--blocks", help="blocks separated by ';', variables by ','")
        sp.add_argument("--vars", help="all variables (default: union of blocks)")
        sp.add_argument("--scenario", help="scenario JSON")
        sp.add_argument("--elems", default="")
        sp.add_argument("--unsafe", action="store_true", help="allow blocks that do not cover the variables")
        if name == "specialize":
            sp.add_argument("--keep", default="")
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.fn(args) or 0
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except MullatError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
