"""Command-line entry point: ``logk3 <subcommand> ...`` writes one JSON document.

Exit codes: 0 on success, 2 on invalid input, 3 when an internal
certification fails.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Optional, Sequence

from . import brauer, charclass, pell, petersen, points, structures
from .dihedral import CycleAction, DihedralElement
from .groups import FiniteGroup, extend_homomorphism, named_group

EXIT_OK, EXIT_INPUT, EXIT_CERT = 0, 2, 3


class InputError(ValueError):
    pass


# -- input helpers ------------------------------------------------------------

def _load_input(args) -> dict:
    if args.json is not None:
        text = args.json
    elif args.input is not None:
        with open(args.input, encoding="utf-8") as fh:
            text = fh.read()
    else:
        raise InputError("give a structure with --input FILE or --json TEXT")
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON: {exc}") from None


def _group_from(obj) -> FiniteGroup:
    if isinstance(obj, str):
        return named_group(obj)
    return FiniteGroup.from_json(obj)


def parse_action(obj: dict, n: int) -> CycleAction:
    """Read an action given either by all images or by images of the group generators.

    ``group`` may be a name such as ``"Z2"`` or a full multiplication table.
    """
    group = _group_from(obj["group"])
    if "images" in obj:
        images = [DihedralElement.from_json(im, n) for im in obj["images"]]
    elif "generator_images" in obj:
        gens = [DihedralElement.from_json(im, n) for im in obj["generator_images"]]
        images = extend_homomorphism(group, gens, lambda a, b: a * b, DihedralElement.identity(n))
        if images is None:
            raise InputError("generator images do not define a homomorphism")
    else:
        raise InputError("an action needs 'images' or 'generator_images'")
    return CycleAction(group, n, tuple(images))


def parse_structure(obj: dict) -> structures.LogK3Structure:
    try:
        seq = [int(a) for a in obj["seq"]]
        degree = int(obj["degree"])
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"a structure needs integer 'degree' and 'seq': {exc}") from None
    action = None
    if obj.get("action") is not None:
        action = parse_action(obj["action"], len(seq))
    s = structures.LogK3Structure(degree, seq, action, bool(obj.get("ample", True)))
    msg = structures.structure_violation(s)
    if msg:
        raise InputError(f"invalid structure: {msg}")
    return s


def _parse_coeffs(text: str) -> dict:
    out = {}
    for part in text.split(","):
        if not part.strip():
            continue
        key, sep, val = part.partition("=")
        if not sep:
            raise InputError(f"coefficient {part!r} is not of the form name=value")
        out[key.strip()] = Fraction(val.strip())
    return out


# -- commands -----------------------------------------------------------------

def cmd_reduce(args) -> dict:
    s = parse_structure(_load_input(args))
    final, trace = structures.reduce_to_degree5(s)
    return {"input": s.to_json(), "result": final.to_json(), "trace": [r.to_json() for r in trace]}


def cmd_classify(args) -> dict:
    s = parse_structure(_load_input(args))
    final, trace = structures.reduce_to_degree5(s)
    cls = charclass.class_from_action(final.action)
    model = charclass.model_from_class(cls, args.a)
    return {
        "input": s.to_json(),
        "class": cls.to_json(),
        "trivial": cls.is_trivial(),
        "image_order": charclass.image_order(cls),
        "character": list(charclass.sign_pushforward(cls)),
        "model": model.to_json(),
        "trace": [r.to_json() for r in trace],
    }


def cmd_sequences(args) -> dict:
    degrees = [args.degree] if args.degree is not None else [8, 7, 6, 5]
    for d in degrees:
        if not 5 <= d <= 8:
            raise InputError("degree must be between 5 and 8")
    return {str(d): [list(s) for s in sorted(structures.enumerate_admissible(d))] for d in degrees}


def cmd_petersen(args) -> dict:
    return petersen.report(full=args.full)


def cmd_h1(args) -> dict:
    G = named_group(args.group)
    classes = charclass.h1_enumerate(G)
    homs = charclass.h1_homomorphisms(G)
    return {
        "group": args.group,
        "order": G.order,
        "homomorphisms": len(homs),
        "classes": len(classes),
        "orbit_sizes": [c.orbit_size() for c in classes],
        "orbit_sum_matches": sum(c.orbit_size() for c in classes) == len(homs),
        "representatives": [
            {"rep": [g.to_json() for g in c.rep], "image_order": charclass.image_order(c),
             "character": list(charclass.sign_pushforward(c))}
            for c in classes
        ],
    }


def _model_from_args(args) -> points.SurfaceModel:
    if args.family == "counterexample":
        return points.counterexample_model()
    if args.family == "trivial":
        return points.trivial_model()
    if args.coeffs is None:
        if args.family == "normform" and args.a is not None:
            return points.quadratic_model(args.a)
        raise InputError(f"family {args.family} needs --coeffs")
    return points.SurfaceModel(args.family, _parse_coeffs(args.coeffs))


def cmd_points(args) -> dict:
    if args.mode == "certify":
        return points.nondensity_certificate(args.M, args.box)
    model = _model_from_args(args)
    found = sorted(points.search_box(model, args.M, args.box))
    return {
        "model": model.to_json(),
        "equation": model.text(),
        "M": args.M,
        "box": args.box,
        "count": len(found),
        "points": [p.to_json() for p in found[: args.limit]],
    }


def cmd_density(args) -> dict:
    report = pell.density_experiment(args.a, args.primes, args.points, args.prime_bound)
    if report["verification_failures"]:
        raise points.CertificationError(f"{report['verification_failures']} points failed verification")
    if args.growth:
        datum = pell.surjective_primes(args.a, args.prime_bound)[0]
        report["growth"] = pell.growth_profile(args.a, datum, range(3, 31))
    return report


def cmd_brauer(args) -> dict:
    if args.mode == "hilbert":
        if args.a is None or args.b is None:
            raise InputError("brauer hilbert needs --a and --b")
        alpha, beta = Fraction(args.a), Fraction(args.b)
        return {
            "a": str(alpha),
            "b": str(beta),
            "place": str(brauer.HilbertPlace.parse(args.place)),
            "symbol": brauer.hilbert_symbol(alpha, beta, args.place),
        }
    return brauer.counterexample_report(box=args.box, places=args.places)


# -- parser -------------------------------------------------------------------

def _positive(text: str) -> int:
    val = int(text)
    if val < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return val


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="logk3", description=__doc__.splitlines()[0])
    parser.add_argument("--out", help="write JSON here instead of stdout")
    sub = parser.add_subparsers(dest="command", required=True)

    def with_input(p):
        p.add_argument("--input", help="JSON file with the structure")
        p.add_argument("--json", help="inline JSON structure")

    p = sub.add_parser("classify", help="reduce a structure and name its class and model")
    with_input(p)
    p.add_argument("--a", type=int, help="square-free a for a quadratic class")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("reduce", help="rewrite a structure down to degree 5")
    with_input(p)
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("sequences", help="admissible self-intersection sequences")
    p.add_argument("--degree", type=int)
    p.set_defaults(func=cmd_sequences)

    p = sub.add_parser("petersen", help="five-cycles and symmetries of the Petersen graph")
    p.add_argument("--full", action="store_true", help="include the cycles themselves")
    p.set_defaults(func=cmd_petersen)

    p = sub.add_parser("h1", help="classes of homomorphisms G -> D5 up to conjugacy")
    p.add_argument("--group", required=True, help="e.g. Z2, Z5, S3, Z2xZ4")
    p.set_defaults(func=cmd_h1)

    p = sub.add_parser("points", help="M-integral point search or non-density certificate")
    p.add_argument("mode", choices=["search", "certify"])
    p.add_argument("--family", default="trivial",
                   choices=["trivial", "counterexample"] + sorted(points.FAMILIES))
    p.add_argument("--coeffs", help="comma separated name=value pairs")
    p.add_argument("--a", type=int, help="shortcut for the normform (x^2 - ay^2)t = y - 1")
    p.add_argument("--M", type=_positive, default=1)
    p.add_argument("--box", type=_positive, default=100)
    p.add_argument("--limit", type=int, default=100, help="at most this many points in the output")
    p.set_defaults(func=cmd_points)

    p = sub.add_parser("density", help="Pell-generated points on (x^2 - ay^2)t = y - 1")
    p.add_argument("--a", type=int, default=2)
    p.add_argument("--primes", type=_positive, default=3)
    p.add_argument("--points", type=_positive, default=3)
    p.add_argument("--prime-bound", type=_positive, default=10_000)
    p.add_argument("--growth", action="store_true", help="add the point-count growth fit on the first curve")
    p.set_defaults(func=cmd_density)

    p = sub.add_parser("brauer", help="Hilbert symbols and the counterexample verdict")
    p.add_argument("mode", choices=["hilbert", "counterexample"])
    p.add_argument("--a")
    p.add_argument("--b")
    p.add_argument("--place", default="inf")
    p.add_argument("--box", type=_positive, default=1000)
    p.add_argument("--places", type=_positive, default=100, help="prime bound for local witnesses")
    p.set_defaults(func=cmd_brauer)
    return parser


def run(argv: Optional[Sequence[str]] = None) -> tuple[int, dict, Optional[str]]:
    """Parse and execute; returns the exit code, the JSON document and the output path."""
    args = build_parser().parse_args(argv)
    try:
        return EXIT_OK, args.func(args), args.out
    except points.CertificationError as exc:
        return EXIT_CERT, {"error": "certification failure", "detail": str(exc)}, args.out
    except (ValueError, KeyError, TypeError, OSError) as exc:
        return EXIT_INPUT, {"error": "invalid input", "detail": str(exc)}, args.out


def main(argv: Optional[Sequence[str]] = None) -> int:
    code, doc, out = run(argv)
    text = json.dumps(doc, indent=2, ensure_ascii=False)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
