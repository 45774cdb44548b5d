"""Command-line surface: classify, conj, member, fix, h2, eval, order,
picard, builtin.  All output is machine-readable JSON; exit codes are 2 for
parse errors, 3 for tower-frontier failures, 4 for undecided answers and 5
for domain errors."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import classify as routing
from .errors import (
    BirsphereError,
    ParseError,
    UndecidedExact,
    UnsupportedExtension,
)
from .etatwist import h2_invariant
from .involutions import fixed_curve
from .parsing import parse_scalar
from .picard import (
    DP4Surface,
    alpha1_matrix,
    alpha2_matrix,
    conic_pairs,
    g1_matrix,
    g2_matrix,
    geiser_matrix,
    image_rho_check,
    invariant_rank,
    is_lattice_aut,
    lattice_make,
    minus_one_classes,
    rejected_half_integer_matrices,
    sign_map_preserves_quadric,
    verify_anticanonical_dataset,
)
from .sphere import (
    BUILTIN_NAMES,
    SphereFormula,
    in_diffeo_group,
    in_reality_group,
)

EXIT_PARSE = 2
EXIT_UNSUPPORTED = 3
EXIT_UNDECIDED = 4
EXIT_DOMAIN = 5


def _load_element(text: str):
    if text == "-":
        return routing.spheremap_from_json(json.load(sys.stdin))
    path = Path(text)
    if not text.startswith(("builtin:", "[[", "{", "diag(")) and path.is_file():
        return routing.spheremap_from_json(json.loads(path.read_text()))
    return routing.parse_element(text)


def _emit(payload) -> None:
    json.dump(payload, sys.stdout, indent=2, sort_keys=True)
    sys.stdout.write("\n")


def cmd_classify(args) -> int:
    if args.element.startswith("dp4:") or args.element.startswith("geiser"):
        op = args.element.split(":", 1)[-1] if ":" in args.element else "geiser"
        report = routing.classify_dp4_datum(op, mu=args.mu)
        _emit(report.to_json())
        return 0
    g = _load_element(args.element)
    report = routing.classify_spheremap(g, args.max_order)
    _emit(report.to_json())
    return 4 if report.family in ("linear-stratum",) and not args.allow_undecided else 0


def cmd_conj(args) -> int:
    g1 = _load_element(args.first)
    g2 = _load_element(args.second)
    result = routing.decide_conjugacy(g1, g2)
    _emit(result)
    return 0


def cmd_member(args) -> int:
    g = _load_element(args.element)
    if args.group in ("H", "H0") and g.base.kind != "id":
        part = g.trivial_base_part()
        mat = part.fiber
    else:
        mat = g.fiber
    if args.group == "G":
        ok = g.reality_check() if g.base.kind != "id" else in_reality_group(mat)
    elif args.group == "H":
        ok = g.reality_check() and in_diffeo_group(mat)
    else:
        ok = g.reality_check() and g.is_orientation_preserving_diffeo()
    _emit({"group": args.group, "member": ok})
    return 0


def cmd_fix(args) -> int:
    g = _load_element(args.element)
    if g.base.kind != "id":
        raise UnsupportedExtension("fixed curves are computed for trivial base action")
    model = fixed_curve(g.fiber)
    _emit(routing.model_to_json(model) | {"genus": model.genus()})
    return 0


def cmd_h2(args) -> int:
    g = _load_element(args.element)
    cls = h2_invariant(g)
    _emit(cls.to_json())
    return 0


def cmd_eval(args) -> int:
    g = _load_element(args.element)
    coords = [parse_scalar(c) for c in args.point.split(",")]
    if len(coords) != 4:
        raise ParseError("point must have four comma-separated coordinates w,x,y,z")
    formula = SphereFormula(g)
    from .errors import BasePointHit

    try:
        image = formula.eval(tuple(coords))
    except BasePointHit as exc:
        _emit({"defined": False, "reason": str(exc)})
        return 0
    _emit({"defined": True, "image": [str(c) for c in image]})
    return 0


def cmd_order(args) -> int:
    g = _load_element(args.element)
    n = g.order(args.max_order)
    _emit({"order": n})
    return 0


def cmd_builtin(args) -> int:
    _emit({"builtins": list(BUILTIN_NAMES)})
    return 0


def cmd_picard(args) -> int:
    if args.picard_cmd == "counts":
        lat = lattice_make(args.degree)
        payload = {
            "degree": args.degree,
            "minus_one_classes": len(minus_one_classes(lat)),
            "k_square": int(lat.k_square()),
        }
        if args.degree == 4:
            payload["conic_pairs"] = len(conic_pairs(lat))
        _emit(payload)
        return 0
    if args.picard_cmd == "dp4":
        mats = {
            "alpha1": alpha1_matrix,
            "alpha2": alpha2_matrix,
            "g1": g1_matrix,
            "g2": g2_matrix,
        }
        lat = lattice_make(4)
        if args.check == "rank":
            mat = mats[args.op]()
            _emit({"op": args.op, "invariant_rank": invariant_rank(lat, [mat, lat.sigma])})
            return 0
        if args.check == "aut":
            if args.op in mats:
                mat = mats[args.op]()
            else:
                idx = {"rejected1": 0, "rejected2": 1}[args.op]
                mat = rejected_half_integer_matrices()[idx]
            _emit({"op": args.op, "lattice_automorphism": is_lattice_aut(lat, mat)})
            return 0
        if args.check == "preserves":
            mu = parse_scalar(args.mu)
            surface = DP4Surface(mu)
            q1, q2 = surface.quadrics()
            ok = sign_map_preserves_quadric(args.op, q1) and sign_map_preserves_quadric(args.op, q2)
            _emit({"op": args.op, "preserves_quadrics": ok})
            return 0
        if args.check == "dataset":
            mu = parse_scalar(args.mu)
            _emit({"dataset_verifies": verify_anticanonical_dataset(mu)})
            return 0
        if args.check == "rho":
            mu = parse_scalar(args.mu)
            _emit({"mu": args.mu, "extra_symmetry": image_rho_check(mu)})
            return 0
        raise ParseError(f"unknown check {args.check!r}")
    if args.picard_cmd == "geiser":
        lat = lattice_make(2)
        nu = geiser_matrix(lat)
        classes = minus_one_classes(lat)
        from .picard import geiser_action

        ok = all(
            geiser_action(lat, c) == tuple(-k - ci for k, ci in zip(lat.canonical, c))
            for c in classes
        )
        _emit(
            {
                "minus_one_classes": len(classes),
                "swaps_with_minus_k": ok,
                "invariant_rank": invariant_rank(lat, [nu, lat.sigma]),
            }
        )
        return 0
    raise ParseError(f"unknown picard subcommand {args.picard_cmd!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="birsphere",
        description="Exact classification toolkit for birational maps of the real sphere "
        "compatible with its conic-bundle projection.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="conjugacy family of an element")
    p.add_argument("element", help="builtin:NAME, matrix literal, JSON file, dp4:OP or geiser")
    p.add_argument("--mu", help="surface parameter for dp4 data")
    p.add_argument("--max-order", type=int, default=None)
    p.add_argument("--allow-undecided", action="store_true")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("conj", help="decide conjugacy of two involutions")
    p.add_argument("first")
    p.add_argument("second")
    p.set_defaults(func=cmd_conj)

    p = sub.add_parser("member", help="group membership tests")
    p.add_argument("--group", choices=("G", "H", "H0"), required=True)
    p.add_argument("element")
    p.set_defaults(func=cmd_member)

    p = sub.add_parser("fix", help="fixed-curve model of an involution")
    p.add_argument("element")
    p.set_defaults(func=cmd_fix)

    p = sub.add_parser("h2", help="twist class of a base-flip involution")
    p.add_argument("element")
    p.set_defaults(func=cmd_h2)

    p = sub.add_parser("eval", help="evaluate the sphere formula at a point")
    p.add_argument("element")
    p.add_argument("--point", required=True, help="w,x,y,z in the scalar grammar")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("order", help="projective order of an element")
    p.add_argument("element")
    p.add_argument("--max-order", type=int, default=None)
    p.set_defaults(func=cmd_order)

    p = sub.add_parser("builtin", help="list builtin element tokens")
    p.set_defaults(func=cmd_builtin)

    p = sub.add_parser("picard", help="lattice computations for the blown-up sphere")
    psub = p.add_subparsers(dest="picard_cmd", required=True)
    pc = psub.add_parser("counts")
    pc.add_argument("degree", type=int, choices=(8, 6, 4, 2))
    pc.set_defaults(func=cmd_picard)
    pd = psub.add_parser("dp4")
    pd.add_argument("--op", default="alpha1")
    pd.add_argument("--check", default="rank", choices=("rank", "aut", "preserves", "dataset", "rho"))
    pd.add_argument("--mu", default="1/2+i")
    pd.set_defaults(func=cmd_picard)
    pg = psub.add_parser("geiser")
    pg.set_defaults(func=cmd_picard)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except UnsupportedExtension as exc:
        print(f"outside the quadratic tower: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except UndecidedExact as exc:
        print(f"undecided: {exc}", file=sys.stderr)
        return EXIT_UNDECIDED
    except (BirsphereError, ValueError, ZeroDivisionError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
