"""Command-line interface.

Exit codes: 0 all checks pass, 1 a verification was falsified, 2 input
error.  Output is JSON with sorted keys (byte-deterministic given the
inputs); --human switches to an indented text rendering.
"""

from __future__ import annotations

import argparse
import hashlib
import sys
from typing import Optional

from .crossed import (center_basis, is_full_matrix_algebra, trace_form_rank,
                      twisted_group_algebra, verify_invariant_ring)
from .errors import (CotwistError, DegreeBoundExceeded, FalsificationError,
                     ParseError, ValidationError)
from .freealg import GenMap, Presentation, embed_presentation
from .gbasis import hilbert_coeffs, truncated_gb, verify_iso
from .groups import AbGroup, schur_order
from .jsonio import (SpecBundle, basis_to_dict, cocycle_from_dict,
                     cocycle_to_dict, dump_json, gb_to_dict,
                     genmap_from_dict, grading_to_dict, load_json,
                     presentation_from_dict, presentation_to_dict,
                     spec_bundle_from_dict, verdict_to_dict)
from .presets import full_report, preset, run_twist_suite
from .twist import twist_presentation

_PRESET_SCHEME = "preset:"


def _load_presentation(arg: str, conductor: Optional[int]) -> Presentation:
    if arg.startswith(_PRESET_SCHEME):
        return preset(arg[len(_PRESET_SCHEME):]).presentation
    return presentation_from_dict(load_json(arg), conductor)


def _load_bundle(arg: str, conductor: Optional[int]) -> SpecBundle:
    if arg.startswith(_PRESET_SCHEME):
        p = preset(arg[len(_PRESET_SCHEME):])
        return SpecBundle(p.presentation, p.group, p.duality, p.cocycle,
                          p.action, None, p.grading(), p.twist_spec())
    return spec_bundle_from_dict(load_json(arg), conductor)


def _input_digest(arg: str) -> str:
    if arg.startswith(_PRESET_SCHEME):
        return hashlib.sha256(arg.encode("utf-8")).hexdigest()
    with open(arg, "rb") as handle:
        return hashlib.sha256(handle.read()).hexdigest()


def _emit(data: dict, human: bool) -> None:
    if human:
        _render(data, 0)
    else:
        sys.stdout.write(dump_json(data))


def _render(node, depth: int, label: str = "") -> None:
    pad = "  " * depth
    if isinstance(node, dict):
        if label:
            print(f"{pad}{label}:")
        for key in sorted(node):
            _render(node[key], depth + (1 if label else 0), key)
    elif isinstance(node, list):
        if label:
            print(f"{pad}{label}:")
        for item in node:
            if isinstance(item, (dict, list)):
                _render(item, depth + 1)
                print()
            else:
                print(f"{pad}  - {item}")
    else:
        print(f"{pad}{label}: {node}")


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def _cmd_validate(args) -> int:
    if args.input.startswith(_PRESET_SCHEME):
        bundle = _load_bundle(args.input, args.conductor)
        violations: list = []
    else:
        data = load_json(args.input)
        bundle = None
        try:
            bundle = spec_bundle_from_dict(data, args.conductor)
            violations = []
        except ValidationError as exc:
            violations = [str(exc)]
    out: dict = {"valid": not violations, "violations": violations}
    if bundle is not None:
        out["grading"] = grading_to_dict(bundle.grading)
        out["presentation"] = presentation_to_dict(bundle.grading.presentation)
        if bundle.basis is not None:
            out["basis"] = basis_to_dict(bundle.basis, bundle.group)
        out["relation_degrees"] = [
            bundle.group.describe(bundle.grading.poly_degree(r))
            for r in bundle.grading.presentation.relations]
    _emit(out, args.human)
    return 0 if not violations else 1


def _cmd_twist(args) -> int:
    bundle = _load_bundle(args.input, args.conductor)
    twisted = twist_presentation(bundle.spec)
    out = {
        "presentation": presentation_to_dict(twisted.presentation),
        "grading": grading_to_dict(twisted),
        "provenance": {
            "input_sha256": _input_digest(args.input),
            "cocycle": cocycle_to_dict(bundle.cocycle),
            "basis_matrix": (basis_to_dict(bundle.basis, bundle.group)["matrix"]
                             if bundle.basis is not None else None),
            "duality": [[str(x) for x in row] for row in bundle.duality.table],
        },
    }
    text = dump_json(out)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)
    return 0


def _cmd_gb(args) -> int:
    pres = _load_presentation(args.input, args.conductor)
    gb = truncated_gb(pres, args.degree)
    out = gb_to_dict(gb)
    out["hilbert"] = list(hilbert_coeffs(pres, args.degree))
    _emit(out, args.human)
    return 0


def _cmd_hilbert(args) -> int:
    pres = _load_presentation(args.input, args.conductor)
    out = {"degree": args.degree,
           "hilbert": list(hilbert_coeffs(pres, args.degree))}
    _emit(out, args.human)
    return 0


def _cmd_iso_check(args) -> int:
    lhs = _load_presentation(args.lhs, args.conductor)
    rhs = _load_presentation(args.rhs, args.conductor)
    conductor = max(lhs.conductor, rhs.conductor)
    if lhs.conductor != rhs.conductor:
        from .cyclo import lcm
        conductor = lcm(lhs.conductor, rhs.conductor)
        lhs = embed_presentation(lhs, conductor)
        rhs = embed_presentation(rhs, conductor)
    if args.map:
        genmap = genmap_from_dict(load_json(args.map), lhs, rhs)
    else:
        if [g.degree for g in lhs.generators] != [g.degree for g in rhs.generators]:
            raise ValidationError(
                "default identity map needs matching generator degrees")
        genmap = GenMap(lhs.generators,
                        tuple(rhs.gen_poly(j) for j in range(len(rhs.generators))))
    verdict = verify_iso(lhs, rhs, genmap, args.degree)
    _emit(verdict_to_dict(verdict), args.human)
    return 0 if verdict.ok else 1


def _cmd_invariants(args) -> int:
    bundle = _load_bundle(args.input, args.conductor)
    report = verify_invariant_ring(bundle.spec, args.degree)
    out = {
        "degree": report.bound,
        "dims": [{"degree": d, "invariants": inv, "algebra": alg,
                  "twisted": tw} for d, inv, alg, tw in report.dims_match],
        "relations_vanish": report.relations_vanish,
        "embedding_injective": report.embedding_injective,
        "multiplicative": report.multiplicative,
        "images_invariant": report.images_invariant,
        "pass": report.ok,
    }
    _emit(out, args.human)
    return 0 if report.ok else 1


def _cmd_kgmu(args) -> int:
    group = AbGroup(tuple(int(n) for n in args.group.split(",")))
    spec = args.cocycle
    if spec == "klein":
        data = {"group": list(group.factors), "cocycle": {"builtin": "klein"}}
    elif spec == "trivial":
        data = {"group": list(group.factors), "cocycle": {"builtin": "trivial"}}
    elif spec.endswith(".json"):
        data = load_json(spec)
        data["group"] = list(group.factors)
    else:
        data = {"group": list(group.factors), "cocycle": {"formula": spec}}
    mu = cocycle_from_dict(data, group)
    alg = twisted_group_algebra(group, mu)
    structure = {}
    for a, la in enumerate(alg.labels):
        for b, lb in enumerate(alg.labels):
            coords = alg.table[a][b]
            terms = []
            for d in range(alg.dim):
                if coords[d].is_zero():
                    continue
                if coords[d].is_one():
                    terms.append(alg.labels[d])
                elif (-coords[d]).is_one():
                    terms.append(f"-{alg.labels[d]}")
                else:
                    terms.append(f"({coords[d]})*{alg.labels[d]}")
            structure[f"{la}*{lb}"] = " + ".join(terms) if terms else "0"
    out = {
        "dimension": alg.dim,
        "structure_constants": structure,
        "center_dimension": len(center_basis(alg)),
        "trace_form_rank": trace_form_rank(alg),
        "is_full_matrix_algebra": is_full_matrix_algebra(alg),
        "cocycle": cocycle_to_dict(mu),
    }
    _emit(out, args.human)
    return 0


def _cmd_schur(args) -> int:
    group = AbGroup(tuple(int(n) for n in args.group.split(",")))
    out = {"group": list(group.factors), "schur_order": schur_order(group)}
    _emit(out, args.human)
    return 0


def _cmd_theorem55(args) -> int:
    report = run_twist_suite(args.degree)
    _emit(report, args.human)
    return 0 if report["passed"] else 1


def _cmd_report(args) -> int:
    report = full_report(bound=args.degree)
    _emit(report, args.human)
    return 0 if report["passed"] else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cotwist",
        description="Exact cocycle twists of finitely presented graded "
                    "algebras under finite abelian group actions.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, needs_degree=True):
        if needs_degree:
            p.add_argument("--degree", type=int, default=6,
                           help="truncation degree (default 6)")
        p.add_argument("--conductor", type=int, default=None,
                       help="force a larger computation conductor")
        p.add_argument("--human", action="store_true",
                       help="indented text output instead of JSON")

    p = sub.add_parser("validate", help="validate an action and print the "
                                        "homogeneous basis and degree table")
    p.add_argument("--input", required=True)
    common(p)
    p.set_defaults(func=_cmd_validate)

    p = sub.add_parser("twist", help="twist a presentation by its cocycle")
    p.add_argument("--input", required=True)
    p.add_argument("--output", default=None)
    common(p)
    p.set_defaults(func=_cmd_twist)

    p = sub.add_parser("gb", help="truncated Groebner basis and Hilbert prefix")
    p.add_argument("--input", required=True)
    common(p)
    p.set_defaults(func=_cmd_gb)

    p = sub.add_parser("hilbert", help="Hilbert prefix of a presentation")
    p.add_argument("--input", required=True)
    common(p)
    p.set_defaults(func=_cmd_hilbert)

    p = sub.add_parser("iso-check", help="verify a generator map between "
                                         "presentations to a degree bound")
    p.add_argument("--lhs", required=True)
    p.add_argument("--rhs", required=True)
    p.add_argument("--map", default=None,
                   help="JSON file with generator images (default: identity)")
    common(p)
    p.set_defaults(func=_cmd_iso_check)

    p = sub.add_parser("invariants", help="invariant ring of the crossed "
                                          "product vs the twisted presentation")
    p.add_argument("--input", required=True)
    p.add_argument("--degree", type=int, default=4)
    p.add_argument("--conductor", type=int, default=None)
    p.add_argument("--human", action="store_true")
    p.set_defaults(func=_cmd_invariants)

    p = sub.add_parser("kgmu", help="twisted group algebra structure "
                                    "constants and center")
    p.add_argument("--group", required=True, help="cyclic factors, e.g. 2,2")
    p.add_argument("--cocycle", default="trivial",
                   help="'klein', 'trivial', a formula, or a JSON file")
    p.add_argument("--human", action="store_true")
    p.set_defaults(func=_cmd_kgmu)

    p = sub.add_parser("schur", help="order of the Schur multiplier")
    p.add_argument("--group", required=True, help="cyclic factors, e.g. 3,3")
    p.add_argument("--human", action="store_true")
    p.set_defaults(func=_cmd_schur)

    p = sub.add_parser("theorem55", help="run the built-in twist-equivalence "
                                         "suite on the preset families")
    common(p)
    p.set_defaults(func=_cmd_theorem55)

    p = sub.add_parser("report", help="run the full verification battery")
    common(p)
    p.set_defaults(func=_cmd_report)
    return parser


def main(argv: Optional[list] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except FalsificationError as exc:
        print(f"falsified: {exc}", file=sys.stderr)
        return 1
    except (ParseError, ValidationError, DegreeBoundExceeded, OSError,
            ZeroDivisionError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    except CotwistError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
