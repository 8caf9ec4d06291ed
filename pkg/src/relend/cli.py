"""``relend`` command line.

Exit codes: 0 success, 1 a mathematical check failed, 2 bad input.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import registry as R
from .adjoint import (ModelMismatch, NotClosed, algebra_to_json, build_algebra, checks_pass, run_checks,
                      verify_coinvariant_model, verify_deligne)
from .ends import NotSurjective, ValidationFailed, end_at_generator, end_to_json, relative_end, validation_depth
from .exactla import NoSolution, NotUnique
from .groups import NotAGroup, NotNormal, NotSubgroup
from .hopf import (FormatError, HopfAlgebra, InvalidHopfAlgebra, NotAHopfMap, check_axioms, group_algebra,
                   group_from_json, hopf_from_json, hopfmap_from_json, quotient_by_normal_subgroup)
from .verify import run_suite, tower

INPUT_ERRORS = (FormatError, NotAGroup, NotNormal, NotSubgroup, NotAHopfMap, NotSurjective, KeyError,
                FileNotFoundError, json.JSONDecodeError, InvalidHopfAlgebra)
FALSIFICATIONS = (ModelMismatch, ValidationFailed, NotClosed, NoSolution, NotUnique)


class Falsified(Exception):
    def __init__(self, report: dict):
        super().__init__("check failed")
        self.report = report


def _emit(obj: dict, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(obj, indent=2, sort_keys=True))
    else:
        _print_text(obj)


def _print_text(obj, indent: int = 0) -> None:
    pad = "  " * indent
    if isinstance(obj, dict):
        for k in sorted(obj):
            v = obj[k]
            if isinstance(v, (dict, list)) and v and not _flat_list(v):
                print(f"{pad}{k}:")
                _print_text(v, indent + 1)
            else:
                print(f"{pad}{k:<22} {_short(v)}")
    elif isinstance(obj, list):
        for item in obj:
            if isinstance(item, dict):
                print(f"{pad}-")
                _print_text(item, indent + 1)
            else:
                print(f"{pad}- {_short(item)}")


def _flat_list(v) -> bool:
    return isinstance(v, list) and all(not isinstance(x, (dict, list)) for x in v)


def _short(v) -> str:
    if isinstance(v, list):
        return "[" + ", ".join(str(x) for x in v) + "]"
    return str(v)


def _load_json(path: str) -> dict:
    with open(path) as fh:
        data = json.load(fh)
    if not isinstance(data, dict):
        raise FormatError("top-level JSON value must be an object")
    return data


def _hopf_from_data(data: dict, validate: bool = True) -> HopfAlgebra:
    if data.get("schema") == "group-v1" or ("elements" in data and "table" in data):
        return group_algebra(group_from_json(data))
    return hopf_from_json(data, validate=validate)


def _resolve(entry) -> HopfAlgebra:
    if isinstance(entry, str):
        return R.hopf(entry)
    if isinstance(entry, dict) and "builtin" in entry:
        return R.hopf(entry["builtin"])
    if isinstance(entry, dict):
        return _hopf_from_data(entry)
    raise FormatError("source/target must be a builtin name or an inline object")


def load_hopf(args) -> HopfAlgebra:
    if args.builtin:
        return R.hopf(args.builtin)
    if not args.input:
        raise FormatError("give an input file or --builtin NAME")
    return _hopf_from_data(_load_json(args.input))


def load_group(args):
    if args.builtin:
        return R.group(args.builtin)
    data = _load_json(args.input)
    return group_from_json(data)


# --------------------------------------------------------------------------
# commands


def cmd_check(args) -> dict:
    if args.builtin:
        h = R.hopf(args.builtin)
    else:
        data = _load_json(args.input)
        if data.get("schema") == "group-v1" or ("elements" in data and "table" in data):
            h = group_algebra(group_from_json(data))
        else:
            h = hopf_from_json(data, validate=False)
    rep = check_axioms(h)
    out = {"command": "check", "hopf": h.name, "dim": h.dim, "axioms": rep.as_dict(), "pass": rep.ok,
           "failing": rep.failures}
    if not rep.ok:
        raise Falsified(out)
    return out


def _algebra_report(e, with_simple: bool, model=None) -> tuple[dict, bool]:
    a = build_algebra(e)
    run_checks(a, with_simple=with_simple)
    return algebra_to_json(a, model), checks_pass(a.checks)


def cmd_adjoint(args) -> dict:
    h = load_hopf(args)
    e = end_at_generator(h)
    alg, ok = _algebra_report(e, args.simple)
    out = {"command": "adjoint", "hopf": h.name, "end": end_to_json(e), "algebra": alg, "pass": ok}
    if not ok:
        raise Falsified(out)
    return out


def _quotient_for(args, h: HopfAlgebra):
    if args.normal_subgroup:
        g = h.group if h.group is not None else None
        if g is None:
            raise FormatError("--normal-subgroup needs a group algebra input")
        p = quotient_by_normal_subgroup(g, args.normal_subgroup)
        # use the loaded instance as the source
        from .hopf import HopfMap

        return HopfMap(h, p.target, p.matrix, p.name)
    if args.quotient:
        data = _load_json(args.quotient)

        def resolve(entry):
            r = _resolve(entry)
            return h if r.structure_equal(h) else r

        p = hopfmap_from_json(data, resolve)
        if p.source is not h:
            raise FormatError("the quotient map does not start at the given Hopf algebra")
        return p
    if args.pair:
        return R.pair(args.pair)
    raise FormatError("give --normal-subgroup, --quotient or --pair")


def cmd_relative(args) -> dict:
    if args.pair and not (args.builtin or args.input):
        p = R.pair(args.pair)
        h = p.source
    else:
        h = load_hopf(args)
        p = _quotient_for(args, h)
    e = relative_end(h, p, depth=validation_depth())
    model = verify_coinvariant_model(h, p, e)
    alg, ok = _algebra_report(e, args.simple, model.change_of_basis)
    out = {"command": "relative", "hopf": h.name, "quotient": p.name, "dim_Q": p.target.dim,
           "end": end_to_json(e), "algebra": alg,
           "dimension_formula": e.dim * p.target.dim == h.dim, "pass": ok}
    if not ok:
        raise Falsified(out)
    return out


def cmd_compare(args) -> dict:
    if args.deligne:
        a, b = args.deligne
        rep = verify_deligne(R.hopf(a), R.hopf(b))
        return {"command": "compare", "deligne": {"h1": a, "h2": b, "dim_relative": rep.dim_relative,
                                                   "dim_second": rep.dim_second, "invertible": rep.invertible,
                                                   "structure_preserved": rep.structure_preserved},
                "pass": True}
    g, *subs = args.tower
    grp = R.group(g)
    for sp in subs:
        grp.check_normal(grp.parse_subset(sp))
    rep = tower(g, subs)
    out = {"command": "compare", "tower": rep, "pass": rep["pass"]}
    if not rep["pass"]:
        raise Falsified(out)
    return out


def cmd_verify(args) -> dict:
    rep = run_suite(args.suite)
    out = {"command": "verify", **rep}
    if not rep["pass"]:
        raise Falsified(out)
    return out


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="relend", description="Adjoint and relative adjoint algebras of Rep(H).")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, needs_input=True):
        if needs_input:
            p.add_argument("input", nargs="?", help="hopf-v1 or group-v1 JSON file")
            p.add_argument("--builtin", help=f"builtin name ({', '.join(R.HOPF_NAMES)})")
        p.add_argument("--format", choices=("json", "text"), default="json")

    p = sub.add_parser("check", help="verify the Hopf algebra axioms")
    common(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("adjoint", help="ordinary adjoint algebra")
    common(p)
    p.add_argument("--simple", action="store_true", help="also run the optional simplicity check")
    p.set_defaults(func=cmd_adjoint)

    p = sub.add_parser("relative", help="relative adjoint algebra for a Hopf quotient")
    common(p)
    p.add_argument("--normal-subgroup", help="named subgroup or literal like {e,(12)}")
    p.add_argument("--quotient", help="hopfmap-v1 JSON file")
    p.add_argument("--pair", help=f"builtin pair ({', '.join(R.PAIRS)})")
    p.add_argument("--simple", action="store_true")
    p.set_defaults(func=cmd_relative)

    p = sub.add_parser("compare", help="Deligne factorization or a tower of quotients")
    common(p, needs_input=False)
    grp = p.add_mutually_exclusive_group(required=True)
    grp.add_argument("--deligne", nargs=2, metavar=("H1", "H2"))
    grp.add_argument("--tower", nargs="+", metavar="G_OR_N", help="group name followed by normal subgroups")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("verify", help="run the verification suite")
    p.add_argument("--suite", choices=("fast", "all"), default="fast")
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.set_defaults(func=cmd_verify)
    return ap


def _error(kind: str, exc: BaseException) -> dict:
    msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else str(exc)
    return {"error": {"type": kind, "message": str(msg)}}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    fmt = getattr(args, "format", "json")
    try:
        _emit(args.func(args), fmt)
        return 0
    except Falsified as f:
        _emit(f.report, fmt)
        return 1
    except INPUT_ERRORS as exc:
        _emit(_error(type(exc).__name__, exc), fmt)
        return 2
    except FALSIFICATIONS as exc:
        _emit(_error(type(exc).__name__, exc), fmt)
        return 1
    except ValueError as exc:
        _emit(_error(type(exc).__name__, exc), fmt)
        return 2


if __name__ == "__main__":
    sys.exit(main())
