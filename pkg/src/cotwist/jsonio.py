"""JSON schemas for presentations, group data and twist specifications.

A presentation file is `{conductor, generators: [{name, degree}], relations:
[string]}` with relation strings in the parser grammar.  A full spec file
adds `group` (the cyclic factor list), `duality` (an r x r scalar table or
{"builtin": "standard"|"klein"}), `cocycle` ({"table": ...}, {"formula":
...} or {"builtin": "klein"|"trivial"}) and either `action` (one matrix per
group generator) or `g_degrees` (declared generator degrees, meaning the
diagonal action).

The computation conductor is the lcm of every conductor appearing in the
file (plus any --conductor override); all scalars are embedded into it once
at load time.  All dumps render scalars canonically and sort keys, so output
bytes are a function of input bytes.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Optional

from .action import (GGrading, GradedAction, HomogBasis, diagonal_action,
                     grading_from_degrees, isotypic_basis,
                     regrade_presentation, validate_action)
from .cyclo import lcm, parse_scalar
from .errors import ParseError, ValidationError
from .freealg import (GenMap, NcPoly, Presentation, make_alphabet,
                      make_presentation, parse_ncpoly, scalar_conductor_needed)
from .gbasis import IsoVerdict, TruncGB
from .groups import (AbGroup, Cocycle, Duality, cocycle_from_formula,
                     embed_cocycle, embed_duality, klein_duality, klein_mu,
                     make_duality, standard_duality, trivial_cocycle,
                     validate_cocycle)
from .twist import TwistSpec


def load_json(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            return json.load(handle)
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseError(f"cannot read JSON from {path}: {exc}") from exc


def dump_json(data) -> str:
    return json.dumps(data, indent=2, sort_keys=True) + "\n"


# ---------------------------------------------------------------------------
# loading
# ---------------------------------------------------------------------------

def _require(data: dict, key: str):
    if key not in data:
        raise ParseError(f"missing {key!r} in input")
    return data[key]


def generators_from_dict(data: dict):
    gens = _require(data, "generators")
    pairs = []
    for item in gens:
        if isinstance(item, str):
            pairs.append((item, 1))
        else:
            pairs.append((str(item["name"]), int(item.get("degree", 1))))
    return make_alphabet(pairs)


def presentation_conductor_needed(data: dict) -> int:
    need = int(data.get("conductor", 1))
    for text in data.get("relations", []):
        need = lcm(need, scalar_conductor_needed(text))
    return need


def presentation_from_dict(data: dict, conductor: Optional[int] = None) -> Presentation:
    gens = generators_from_dict(data)
    final = lcm(presentation_conductor_needed(data), conductor or 1)
    relations = [parse_ncpoly(text, gens, final)
                 for text in data.get("relations", [])]
    return make_presentation(final, gens, relations)


def group_from_dict(data: dict) -> AbGroup:
    factors = _require(data, "group")
    return AbGroup(tuple(int(n) for n in factors))


def _parse_scalar_table(rows) -> list:
    return [[parse_scalar(str(x)) for x in row] for row in rows]


def duality_from_dict(data: dict, group: AbGroup) -> Duality:
    block = data.get("duality", {"builtin": "standard"})
    if isinstance(block, dict):
        builtin = block.get("builtin")
        if builtin == "standard":
            return standard_duality(group)
        if builtin == "klein":
            if group.factors != (2, 2):
                raise ValidationError("the klein duality needs the group [2,2]")
            return klein_duality(1)
        raise ParseError(f"unknown builtin duality {builtin!r}")
    return make_duality(group, _parse_scalar_table(block))


def cocycle_from_dict(data: dict, group: AbGroup) -> Cocycle:
    block = data.get("cocycle", {"builtin": "trivial"})
    if "builtin" in block:
        name = block["builtin"]
        if name == "trivial":
            return trivial_cocycle(group)
        if name == "klein":
            if group.factors != (2, 2):
                raise ValidationError("the klein cocycle needs the group [2,2]")
            return klein_mu(1)
        raise ParseError(f"unknown builtin cocycle {name!r}")
    if "formula" in block:
        return cocycle_from_formula(group, str(block["formula"]))
    if "table" in block:
        elements = group.elements()
        rows = block["table"]
        if len(rows) != len(elements) or any(len(r) != len(elements) for r in rows):
            raise ParseError("cocycle table must be |G| x |G| in element "
                             "enumeration order")
        parsed = _parse_scalar_table(rows)
        table = {(g, h): parsed[a][b]
                 for a, g in enumerate(elements) for b, h in enumerate(elements)}
        return validate_cocycle(group, table)
    raise ParseError("cocycle block needs one of: builtin, formula, table")


@dataclass
class SpecBundle:
    """Everything loaded from a full spec file, at one shared conductor."""

    presentation: Presentation        # as given in the file
    group: AbGroup
    duality: Duality
    cocycle: Cocycle
    action: GradedAction
    basis: Optional[HomogBasis]       # None when g_degrees were declared
    grading: GGrading                 # over the homogeneous generators
    spec: TwistSpec


def spec_bundle_from_dict(data: dict, conductor: Optional[int] = None) -> SpecBundle:
    group = group_from_dict(data)
    duality = duality_from_dict(data, group)
    cocycle = cocycle_from_dict(data, group)

    need = lcm(presentation_conductor_needed(data), conductor or 1)
    need = lcm(need, duality.conductor)
    need = lcm(need, cocycle.conductor)
    action_block = data.get("action")
    matrices = None
    if action_block is not None:
        by_name = {str(item["generator"]): item["matrix"] for item in action_block}
        expected = [f"g{j + 1}" for j in range(group.rank)]
        if set(by_name) != set(expected):
            raise ParseError(f"action block must name exactly {expected}")
        matrices = [_parse_scalar_table(by_name[name]) for name in expected]
        for m in matrices:
            for row in m:
                for x in row:
                    need = lcm(need, x.conductor)

    presentation = presentation_from_dict(data, need)
    final = presentation.conductor
    duality = embed_duality(duality, final)
    cocycle = embed_cocycle(cocycle, final)

    if matrices is not None:
        action = validate_action(presentation, group, matrices)
        basis = isotypic_basis(action, duality)
        grading = regrade_presentation(presentation, basis, group)
    elif "g_degrees" in data:
        degrees = [tuple(int(x) for x in vec) for vec in data["g_degrees"]]
        if len(degrees) != len(presentation.generators):
            raise ParseError("g_degrees must list one group element per generator")
        action = diagonal_action(presentation, group, duality, degrees)
        basis = None
        grading = grading_from_degrees(presentation, group, degrees)
    else:
        raise ParseError("spec needs either an action block or g_degrees")
    spec = TwistSpec(grading, duality, cocycle)
    return SpecBundle(presentation, group, duality, cocycle, action, basis,
                      grading, spec)


def genmap_from_dict(data: dict, source: Presentation,
                     target: Presentation) -> GenMap:
    images_block = _require(data, "images")
    if isinstance(images_block, dict):
        texts = [images_block[g.name] for g in source.generators]
    else:
        texts = list(images_block)
    if len(texts) != len(source.generators):
        raise ParseError("one image per source generator required")
    images = tuple(parse_ncpoly(str(t), target.generators, target.conductor)
                   for t in texts)
    return GenMap(source.generators, images)


# ---------------------------------------------------------------------------
# dumping
# ---------------------------------------------------------------------------

def presentation_to_dict(p: Presentation) -> dict:
    return {
        "conductor": p.conductor,
        "generators": [{"name": g.name, "degree": g.degree}
                       for g in p.generators],
        "relations": [str(r) for r in p.relations],
    }


def grading_to_dict(grading: GGrading) -> dict:
    group = grading.group
    return {
        "group": list(group.factors),
        "g_degrees": [list(g) for g in grading.g_degrees],
        "named_degrees": {gen.name: group.describe(g)
                          for gen, g in zip(grading.presentation.generators,
                                            grading.g_degrees)},
    }


def duality_to_dict(d: Duality) -> dict:
    return {"table": [[str(x) for x in row] for row in d.table]}


def cocycle_to_dict(c: Cocycle) -> dict:
    return {
        "elements": [c.group.describe(g) for g in c.group.elements()],
        "table": [[str(x) for x in row] for row in c.values],
    }


def basis_to_dict(basis: HomogBasis, group: AbGroup) -> dict:
    return {
        "names": list(basis.names),
        "matrix": [[str(x) for x in row] for row in basis.matrix],
        "g_degrees": [group.describe(g) for g in basis.g_degrees],
    }


def gb_to_dict(gb: TruncGB) -> dict:
    return {
        "bound": gb.bound,
        "elements": [str(g) for g in gb.elements],
        "leading_words": [str(NcPoly.from_word(gb.presentation.generators,
                                               gb.presentation.conductor, w))
                          for w in sorted(gb.lead_map)],
    }


def verdict_to_dict(v: IsoVerdict) -> dict:
    return {
        "status": v.status,
        "degree": v.degree,
        "syntactic": v.syntactic,
        "relations_in_ideal": v.relations_in_ideal,
        "hilbert_lhs": list(v.hilbert_lhs),
        "hilbert_rhs": list(v.hilbert_rhs),
        "hilbert_equal": v.hilbert_equal,
        "scalars": [str(s) for s in v.scalars] if v.scalars else None,
        "inverse_checked": v.inverse_checked,
        "failure": v.failure,
    }
