"""Finite abelian groups, fixed dualities G ~ G^, 2-cocycles and coboundaries.

Group elements are residue vectors, enumerated in itertools.product order
(last coordinate fastest).  Cocycle values are restricted to roots of unity:
every cohomology class has such a representative over an algebraically
closed field, and the restriction makes the coboundary decision exactly
finite.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import gcd
from typing import Mapping, Optional, Sequence

from .cyclo import CycNum, common_conductor, lcm, parse_scalar
from .errors import FalsificationError, ValidationError
from .linalg import solve_mod

Element = tuple


@dataclass(frozen=True)
class AbGroup:
    """Direct product of cyclic groups C_{n_1} x ... x C_{n_r}."""

    factors: tuple

    def __post_init__(self):
        if not self.factors or any(n < 2 for n in self.factors):
            raise ValidationError("group factors must all be at least 2")

    @property
    def rank(self) -> int:
        return len(self.factors)

    @property
    def order(self) -> int:
        out = 1
        for n in self.factors:
            out *= n
        return out

    def exponent(self) -> int:
        out = 1
        for n in self.factors:
            out = lcm(out, n)
        return out

    def elements(self) -> list:
        return [tuple(v) for v in itertools.product(*(range(n) for n in self.factors))]

    def identity(self) -> Element:
        return (0,) * self.rank

    def generator(self, j: int) -> Element:
        return tuple(1 if k == j else 0 for k in range(self.rank))

    def mul(self, a: Element, b: Element) -> Element:
        return tuple((x + y) % n for x, y, n in zip(a, b, self.factors))

    def inv(self, a: Element) -> Element:
        return tuple((-x) % n for x, n in zip(a, self.factors))

    def order_of(self, a: Element) -> int:
        out = 1
        for x, n in zip(a, self.factors):
            out = lcm(out, n // gcd(x, n) if x else 1)
        return out

    def index(self, a: Element) -> int:
        idx = 0
        for x, n in zip(a, self.factors):
            idx = idx * n + (x % n)
        return idx

    def describe(self, a: Element) -> str:
        parts = [f"g{j + 1}" if x == 1 else f"g{j + 1}^{x}"
                 for j, x in enumerate(a) if x]
        return "*".join(parts) if parts else "e"


def format_element(group: AbGroup, a: Element) -> str:
    return group.describe(a)


# ---------------------------------------------------------------------------
# dualities
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Duality:
    """A fixed isomorphism g -> chi_g given by the bicharacter values on
    the chosen cyclic generators: table[j][k] = chi_{e_j}(e_k)."""

    group: AbGroup
    conductor: int
    table: tuple

    def char_eval(self, g: Element, h: Element) -> CycNum:
        value = CycNum.one(self.conductor)
        for j, gj in enumerate(g):
            if not gj:
                continue
            for k, hk in enumerate(h):
                if hk:
                    value = value * (self.table[j][k] ** (gj * hk))
        return value

    def char_pattern(self, g: Element) -> tuple:
        """Values of chi_g on the group generators."""
        return tuple(self.char_eval(g, self.group.generator(k))
                     for k in range(self.group.rank))


def make_duality(group: AbGroup, table: Sequence[Sequence[CycNum]]) -> Duality:
    r = group.rank
    if len(table) != r or any(len(row) != r for row in table):
        raise ValidationError("duality table must be rank x rank")
    conductor = common_conductor(*(x for row in table for x in row))
    embedded = tuple(tuple(x.embed(conductor) for x in row) for row in table)
    d = Duality(group, conductor, embedded)
    for j in range(r):
        for k in range(r):
            v = embedded[j][k]
            if (v ** group.factors[j]) != CycNum.one(conductor) \
                    or (v ** group.factors[k]) != CycNum.one(conductor):
                raise ValidationError(
                    f"duality entry ({j + 1},{k + 1}) is not killed by the "
                    f"generator orders")
    identity = group.identity()
    for g in group.elements():
        if g == identity:
            continue
        if all(d.char_eval(g, group.generator(k)).is_one() for k in range(r)):
            raise ValidationError(
                f"duality is degenerate: chi trivial at {group.describe(g)}")
    return d


def standard_duality(group: AbGroup, conductor: Optional[int] = None) -> Duality:
    """The bilinear pairing chi_{e_j}(e_k) = zeta_{n_j} if j == k else 1."""
    need = 1
    for n in group.factors:
        need = lcm(need, n)
    conductor = lcm(conductor or 1, need)
    table = [[CycNum.zeta(group.factors[j]).embed(conductor) if j == k
              else CycNum.one(conductor)
              for k in range(group.rank)] for j in range(group.rank)]
    return make_duality(group, table)


def klein_duality(conductor: int = 4) -> Duality:
    """The Klein four-group pairing with chi_g(h) = 1 exactly when g = e or
    h lies in {e, g}; generator table [[1,-1],[-1,1]]."""
    group = AbGroup((2, 2))
    one = CycNum.one(conductor)
    table = [[one, -one], [-one, one]]
    return make_duality(group, table)


# ---------------------------------------------------------------------------
# cocycles
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Cocycle:
    """A normalized 2-cocycle with root-of-unity values, stored as a full
    |G| x |G| table in element enumeration order."""

    group: AbGroup
    conductor: int
    values: tuple

    def value(self, g: Element, h: Element) -> CycNum:
        return self.values[self.group.index(g)][self.group.index(h)]


def validate_cocycle(group: AbGroup, table: Mapping) -> Cocycle:
    """Accept a mapping (g, h) -> CycNum iff it satisfies the cocycle
    identity and normalization; the error names the first violation."""
    elements = group.elements()
    conductor = common_conductor(*(table[(g, h)] for g in elements for h in elements))
    vals = {(g, h): table[(g, h)].embed(conductor) for g in elements for h in elements}
    one = CycNum.one(conductor)
    for g in elements:
        for h in elements:
            v = vals[(g, h)]
            if v.is_zero() or v.root_order() is None:
                raise ValidationError(
                    f"cocycle value at ({group.describe(g)},{group.describe(h)}) "
                    f"is not a root of unity; this implementation restricts "
                    f"cocycle values to roots of unity")
    identity = group.identity()
    for g in elements:
        if vals[(identity, g)] != one:
            raise ValidationError(
                f"normalization at (e,{group.describe(g)})")
        if vals[(g, identity)] != one:
            raise ValidationError(
                f"normalization at ({group.describe(g)},e)")
    for g in elements:
        for h in elements:
            gh = group.mul(g, h)
            for l in elements:
                lhs = vals[(g, h)] * vals[(gh, l)]
                rhs = vals[(g, group.mul(h, l))] * vals[(h, l)]
                if lhs != rhs:
                    raise ValidationError(
                        "cocycle identity fails at "
                        f"({group.describe(g)},{group.describe(h)},{group.describe(l)})")
    rows = tuple(tuple(vals[(g, h)] for h in elements) for g in elements)
    return Cocycle(group, conductor, rows)


def trivial_cocycle(group: AbGroup, conductor: int = 1) -> Cocycle:
    one = CycNum.one(conductor)
    n = group.order
    return Cocycle(group, conductor, tuple((one,) * n for _ in range(n)))


def embed_cocycle(mu: Cocycle, conductor: int) -> Cocycle:
    if mu.conductor == conductor:
        return mu
    return Cocycle(mu.group, conductor, tuple(
        tuple(v.embed(conductor) for v in row) for row in mu.values))


def embed_duality(d: Duality, conductor: int) -> Duality:
    if d.conductor == conductor:
        return d
    return Duality(d.group, conductor, tuple(
        tuple(v.embed(conductor) for v in row) for row in d.table))


def cocycle_from_formula(group: AbGroup, formula: str) -> Cocycle:
    """Expand an exponent formula over generator coordinates to a table.

    Coordinates of the first argument bind to a1..ar, of the second to
    b1..br; for rank <= 2 the aliases p,q (first) and r,s (second) are
    also provided, matching the usual (p,q,r,s) notation."""
    elements = group.elements()
    table = {}
    for g in elements:
        for h in elements:
            variables = {}
            for j, x in enumerate(g):
                variables[f"a{j + 1}"] = x
            for j, x in enumerate(h):
                variables[f"b{j + 1}"] = x
            if group.rank <= 2:
                alias = dict(zip(("p", "q"), g))
                alias.update(zip(("r", "s"), h))
                variables.update(alias)
            table[(g, h)] = parse_scalar(formula, variables)
    conductor = common_conductor(*table.values())
    table = {k: v.embed(conductor) for k, v in table.items()}
    return validate_cocycle(group, table)


def klein_mu(conductor: int = 4) -> Cocycle:
    """The Klein cocycle mu(g1^p g2^q, g1^r g2^s) = (-1)^(p*s)."""
    group = AbGroup((2, 2))
    one = CycNum.one(conductor)
    table = {}
    for g in group.elements():
        for h in group.elements():
            table[(g, h)] = -one if (g[0] * h[1]) % 2 else one
    return validate_cocycle(group, table)


def cocycle_product(a: Cocycle, b: Cocycle) -> Cocycle:
    if a.group != b.group:
        raise ValidationError("cocycles over different groups")
    n = lcm(a.conductor, b.conductor)
    elements = a.group.elements()
    table = {(g, h): a.value(g, h).embed(n) * b.value(g, h).embed(n)
             for g in elements for h in elements}
    return validate_cocycle(a.group, table)


def cocycle_inverse(a: Cocycle) -> Cocycle:
    elements = a.group.elements()
    table = {(g, h): a.value(g, h).inverse() for g in elements for h in elements}
    return validate_cocycle(a.group, table)


def coboundary(group: AbGroup, rho: Mapping) -> Cocycle:
    """delta(rho)(g,h) = rho(g) rho(h) rho(gh)^(-1) for rho with rho(e) = 1."""
    identity = group.identity()
    if not rho[identity].is_one():
        raise ValidationError("coboundary witness must send e to 1")
    conductor = common_conductor(*rho.values())
    rv = {g: rho[g].embed(conductor) for g in group.elements()}
    table = {}
    for g in group.elements():
        for h in group.elements():
            table[(g, h)] = rv[g] * rv[h] * rv[group.mul(g, h)].inverse()
    return validate_cocycle(group, table)


def cocycle_pullback(mu: Cocycle, sigma: "GroupAut") -> Cocycle:
    """mu^sigma(g,h) = mu(sigma(g), sigma(h))."""
    if mu.group != sigma.group:
        raise ValidationError("automorphism and cocycle over different groups")
    elements = mu.group.elements()
    table = {(g, h): mu.value(sigma.apply(g), sigma.apply(h))
             for g in elements for h in elements}
    return validate_cocycle(mu.group, table)


def is_coboundary(mu: Cocycle):
    """Decide whether mu is a coboundary; returns (flag, witness-or-None).

    A cocycle on a finite abelian group is a coboundary exactly when its
    alternating bicharacter beta(g,h) = mu(g,h)/mu(h,g) is trivial.  The
    witness is recovered by solving the exponent system rho(g) + rho(h) -
    rho(gh) = t(g,h) over residues: any witness of a mu_m-valued coboundary
    takes values in mu_{m * exp(G)}, so the system is finite."""
    group = mu.group
    elements = group.elements()
    for g in elements:
        for h in elements:
            if mu.value(g, h) != mu.value(h, g):
                return False, None
    m = 1
    for g in elements:
        for h in elements:
            m = lcm(m, mu.value(g, h).root_order())
    modulus = m * group.exponent()
    conductor = lcm(mu.conductor, modulus)
    zeta = CycNum.zeta(modulus).embed(conductor)
    log = {}
    power = CycNum.one(conductor)
    for k in range(modulus):
        log[power] = k
        power = power * zeta
    identity = group.identity()
    unknowns = [g for g in elements if g != identity]
    col = {g: j for j, g in enumerate(unknowns)}
    rows, rhs = [], []
    for g in elements:
        for h in elements:
            row = [0] * len(unknowns)
            for el, sign in ((g, 1), (h, 1), (group.mul(g, h), -1)):
                if el != identity:
                    row[col[el]] += sign
            rows.append(row)
            rhs.append(log[mu.value(g, h).embed(conductor)])
    solution = solve_mod(rows, rhs, modulus)
    if solution is None:
        raise FalsificationError(
            "symmetric cocycle admitted no exponent witness; this contradicts "
            "the coboundary criterion")
    rho = {identity: CycNum.one(conductor)}
    for g, e in zip(unknowns, solution):
        rho[g] = zeta ** e
    delta = coboundary(group, rho)
    check = lcm(delta.conductor, conductor)
    for g in elements:
        for h in elements:
            assert delta.value(g, h).embed(check) == mu.value(g, h).embed(check), \
                "witness failed to reproduce the cocycle"
    return True, rho


def cohomologous(a: Cocycle, b: Cocycle) -> bool:
    """True iff a and b differ by a coboundary."""
    return is_coboundary(cocycle_product(a, cocycle_inverse(b)))[0]


def schur_order(group: AbGroup) -> int:
    """Order of H^2(G, k^x) for abelian G over an algebraically closed field
    of coprime characteristic: the product of gcd(n_j, n_k) over j < k."""
    out = 1
    for j in range(group.rank):
        for k in range(j + 1, group.rank):
            out *= gcd(group.factors[j], group.factors[k])
    return out


# ---------------------------------------------------------------------------
# group automorphisms
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GroupAut:
    """An automorphism given by the images of the chosen cyclic generators."""

    group: AbGroup
    images: tuple

    def apply(self, a: Element) -> Element:
        out = self.group.identity()
        for j, x in enumerate(a):
            img = self.images[j]
            scaled = tuple((x * y) % n for y, n in zip(img, self.group.factors))
            out = self.group.mul(out, scaled)
        return out

    def is_identity(self) -> bool:
        return all(self.images[j] == self.group.generator(j)
                   for j in range(self.group.rank))

    def compose(self, inner: "GroupAut") -> "GroupAut":
        return GroupAut(self.group,
                        tuple(self.apply(img) for img in inner.images))

    def inverse(self) -> "GroupAut":
        perm = {self.apply(g): g for g in self.group.elements()}
        return GroupAut(self.group,
                        tuple(perm[self.group.generator(j)]
                              for j in range(self.group.rank)))


def make_group_aut(group: AbGroup, images: Sequence[Element]) -> GroupAut:
    if len(images) != group.rank:
        raise ValidationError("one image per group generator required")
    for j, img in enumerate(images):
        if group.order_of(img) not in _divisors_of(group.factors[j]):
            raise ValidationError(
                f"image of g{j + 1} has order not dividing {group.factors[j]}")
    aut = GroupAut(group, tuple(tuple(x) for x in images))
    seen = {aut.apply(g) for g in group.elements()}
    if len(seen) != group.order:
        raise ValidationError("generator images do not define a bijection")
    return aut


def _divisors_of(n: int) -> set:
    return {d for d in range(1, n + 1) if n % d == 0}


def identity_aut(group: AbGroup) -> GroupAut:
    return GroupAut(group, tuple(group.generator(j) for j in range(group.rank)))


def all_automorphisms(group: AbGroup) -> list:
    """Every automorphism, by exhausting generator-image candidates."""
    out = []
    candidates = []
    for j in range(group.rank):
        ok = [g for g in group.elements()
              if group.order_of(g) in _divisors_of(group.factors[j])]
        candidates.append(ok)
    for images in itertools.product(*candidates):
        try:
            out.append(make_group_aut(group, images))
        except ValidationError:
            continue
    return out
