"""The cocycle twist engine.

A twist never builds a second multiplication: a relation written in the old
product is re-expressed in star-product monomials by dividing each word's
coefficient by the accumulated cocycle scalar of its letter degrees.  Note
the direction: for a word with G-degrees h_1..h_k the left-associated scalar
is c = prod_j mu(h_1...h_j, h_{j+1}) and (old product) = c^(-1) (star
product), so `twist_poly` multiplies coefficients by c^(-1).  Using c
instead of c^(-1) is the classic off-by-conjugation mistake.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .action import GGrading, GradedAction, isotypic_basis, regrade_presentation
from .cyclo import CycNum
from .errors import FalsificationError, ValidationError
from .freealg import GenMap, NcPoly, Presentation, make_presentation
from .groups import (AbGroup, Cocycle, Duality, Element, GroupAut,
                     all_automorphisms, cocycle_inverse, cocycle_pullback,
                     coboundary, embed_cocycle)


@dataclass(frozen=True)
class TwistSpec:
    """Everything a twist needs: a G-grading, the fixed duality that induced
    it, and a 2-cocycle, all over one group and one conductor."""

    grading: GGrading
    duality: Duality
    cocycle: Cocycle

    def __post_init__(self):
        if not (self.grading.group == self.duality.group == self.cocycle.group):
            raise ValidationError("grading, duality and cocycle use different groups")
        conductor = self.grading.presentation.conductor
        if self.cocycle.conductor != conductor or self.duality.conductor != conductor:
            raise ValidationError(
                "grading, duality and cocycle must share one conductor; "
                "embed the inputs first")

    @property
    def group(self) -> AbGroup:
        return self.grading.group

    @property
    def presentation(self) -> Presentation:
        return self.grading.presentation


def word_twist_scalar(degrees: Sequence[Element], cocycle: Cocycle) -> CycNum:
    """prod_{j=1}^{k-1} mu(h_1...h_j, h_{j+1}) for letter degrees h_1..h_k.

    Any bracketing of the star product yields the same scalar by the cocycle
    identity; this left association is the stored convention."""
    if not degrees:
        raise ValidationError("a word twist scalar needs at least one letter")
    group = cocycle.group
    prefix = degrees[0]
    scalar = CycNum.one(cocycle.conductor)
    for h in degrees[1:]:
        scalar = scalar * cocycle.value(prefix, h)
        prefix = group.mul(prefix, h)
    return scalar


def twist_poly(p: NcPoly, grading: GGrading, cocycle: Cocycle) -> NcPoly:
    """Re-express p (old-product monomials) in star-product monomials."""

    def convert(word, coeff):
        if not word:
            return coeff
        degrees = [grading.g_degrees[letter] for letter in word]
        return coeff * word_twist_scalar(degrees, cocycle).inverse()

    return p.map_coeffs(convert)


def twist_presentation(spec: TwistSpec) -> GGrading:
    """The twisted algebra, presented on the same generators with each
    relation rewritten in star monomials; the G-grading carries over."""
    pres = spec.presentation
    twisted = [twist_poly(r, spec.grading, spec.cocycle) for r in pres.relations]
    new_pres = make_presentation(pres.conductor, pres.generators, twisted)
    return GGrading(spec.group, new_pres, spec.grading.g_degrees)


def double_twist(spec: TwistSpec) -> GGrading:
    """Twist by mu, then by the pointwise inverse cocycle on the carried-over
    grading; the composite is the identity on presentations."""
    first = twist_presentation(spec)
    inv = embed_cocycle(cocycle_inverse(spec.cocycle),
                        first.presentation.conductor)
    return twist_presentation(TwistSpec(first, spec.duality, inv))


def regraded_spec(spec: TwistSpec, sigma: GroupAut) -> TwistSpec:
    """The same twist data with the G-grading twisted by sigma: a generator
    of old degree d gets new degree sigma^(-1)(d)."""
    inv = sigma.inverse()
    new_degrees = tuple(inv.apply(g) for g in spec.grading.g_degrees)
    grading = GGrading(spec.group, spec.presentation, new_degrees)
    return TwistSpec(grading, spec.duality, spec.cocycle)


def verify_regrade_compat(spec: TwistSpec, sigma: GroupAut) -> bool:
    """Check that twisting the sigma-regraded algebra with mu agrees with
    twisting the original grading with the pullback mu^(sigma^-1):
    the two twisted presentations must coincide exactly."""
    lhs = twist_presentation(regraded_spec(spec, sigma))
    pulled = embed_cocycle(cocycle_pullback(spec.cocycle, sigma.inverse()),
                           spec.presentation.conductor)
    rhs = twist_presentation(TwistSpec(spec.grading, spec.duality, pulled))
    return lhs.presentation == rhs.presentation


def regrade_under_duality(action: GradedAction, base: Duality,
                          other: Duality) -> tuple:
    """Gradings induced by the same action under two dualities, on one shared
    homogeneous basis (so the twisted presentations are directly comparable).

    Returns (grading under `base`, grading under `other`)."""
    basis = isotypic_basis(action, base)
    group = action.group
    conductor = action.presentation.conductor
    base_grading = regrade_presentation(action.presentation, basis, group)

    def pattern(duality: Duality, g: Element) -> tuple:
        g_inv = group.inv(g)
        return tuple(duality.char_eval(g_inv, group.generator(j)).embed(conductor)
                     for j in range(group.rank))

    lookup = {pattern(other, g): g for g in group.elements()}
    relabeled = []
    for g in basis.g_degrees:
        pat = pattern(base, g)
        if pat not in lookup:
            raise FalsificationError(
                "eigenvalue pattern matches no character of the second duality")
        relabeled.append(lookup[pat])
    other_grading = GGrading(group, base_grading.presentation, tuple(relabeled))
    return base_grading, other_grading


def verify_duality_benign(action: GradedAction, phi: Duality, rho: Duality,
                          mu: Cocycle) -> GroupAut:
    """Search Aut(G) for tau making the twist under (phi, mu) equal to the
    twist under (rho, mu^(tau^-1)); existence is guaranteed, so an exhausted
    search is a falsification."""
    group = action.group
    conductor = action.presentation.conductor
    if mu.conductor != conductor:
        raise ValidationError("cocycle conductor differs from the presentation")
    grading_phi, grading_rho = regrade_under_duality(action, phi, rho)
    target = twist_presentation(TwistSpec(grading_phi, phi, mu))
    candidates = sorted(all_automorphisms(group),
                        key=lambda aut: not aut.is_identity())
    for tau in candidates:
        pulled = embed_cocycle(cocycle_pullback(mu, tau.inverse()), conductor)
        candidate = twist_presentation(TwistSpec(grading_rho, rho, pulled))
        if candidate.presentation == target.presentation:
            return tau
    raise FalsificationError(
        "no group automorphism reconciles the two dualities; the duality "
        "choice failed to be benign on this input")


def coboundary_rescale_matches(spec: TwistSpec, rho: dict) -> bool:
    """Twisting by the coboundary of rho must agree with the diagonal
    generator rescaling v -> rho(deg v) v, up to canonical relation scaling."""
    group = spec.group
    conductor = spec.presentation.conductor
    delta = embed_cocycle(coboundary(group, rho), conductor)
    twisted = twist_presentation(TwistSpec(spec.grading, spec.duality, delta))
    scalars = [rho[g].embed(conductor) for g in spec.grading.g_degrees]
    rescale = GenMap.scaling(spec.presentation.generators, conductor, scalars)
    rescaled = [rescale.apply(r) for r in twisted.presentation.relations]
    back = make_presentation(conductor, spec.presentation.generators, rescaled)
    return back == spec.presentation
