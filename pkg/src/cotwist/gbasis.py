"""Degree-truncated two-sided Groebner bases in free algebras.

Completion runs overlap (obstruction) processing under deglex through a fixed
degree bound; every conclusion drawn downstream is therefore "to degree D"
and the tool never claims global completeness.  The monomial order is deglex
over the generator order as listed in the presentation, which makes runs
byte-deterministic.
"""

from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

from .cyclo import CycNum
from .errors import DegreeBoundExceeded, ValidationError
from .freealg import (GenMap, NcPoly, Presentation, Word, deglex_key,
                      word_degree)
from .linalg import rank as mat_rank
from .linalg import row_spaces_equal


class TruncGB:
    """A reduced Groebner basis, complete through `bound`."""

    def __init__(self, presentation: Presentation, bound: int,
                 elements: Sequence[NcPoly]):
        self.presentation = presentation
        self.bound = bound
        self.elements = tuple(elements)
        self.lead_map = {g.leading_word(): g for g in self.elements}
        self.lead_lengths = sorted({len(w) for w in self.lead_map})
        self._words_by_degree: Optional[list] = None

    def __repr__(self) -> str:
        return f"TruncGB(bound={self.bound}, elements={len(self.elements)})"

    # -- normal words --------------------------------------------------------

    def _suffix_reducible(self, word: Word) -> bool:
        for length in self.lead_lengths:
            if length <= len(word) and word[-length:] in self.lead_map:
                return True
        return False

    def normal_words_by_degree(self) -> list:
        """Irreducible words grouped by N-degree, degrees 0..bound."""
        if self._words_by_degree is not None:
            return self._words_by_degree
        gens = self.presentation.generators
        levels: list = [[()]]
        for d in range(1, self.bound + 1):
            level = []
            for gen in gens:
                prev = d - gen.degree
                if prev < 0:
                    continue
                for w in levels[prev]:
                    cand = w + (gen.index,)
                    if not self._suffix_reducible(cand):
                        level.append(cand)
            level.sort()
            levels.append(level)
        self._words_by_degree = levels
        return levels

    def normal_words(self, degree: int) -> list:
        if degree > self.bound:
            raise DegreeBoundExceeded(
                f"degree {degree} exceeds the truncation bound {self.bound}")
        return self.normal_words_by_degree()[degree]


def _contains_subword(haystack: Word, needle: Word) -> bool:
    n = len(needle)
    if n > len(haystack):
        return False
    return any(haystack[i:i + n] == needle for i in range(len(haystack) - n + 1))


def _reduce(p: NcPoly, lead_map: dict, lead_lengths: Sequence[int],
            chooser: Optional[Callable] = None) -> NcPoly:
    gens = p.gens
    terms = dict(p.terms)

    def matches(word: Word):
        found = []
        for pos in range(len(word)):
            for length in lead_lengths:
                if pos + length > len(word):
                    break
                sub = word[pos:pos + length]
                if sub in lead_map:
                    found.append((pos, length))
                    if chooser is None:
                        return found
        return found

    while True:
        target = None
        if chooser is None:
            for word in sorted(terms, key=lambda w: deglex_key(w, gens),
                               reverse=True):
                found = matches(word)
                if found:
                    target = (word, found[0])
                    break
        else:
            candidates = []
            for word in terms:
                for pos, length in matches(word):
                    candidates.append((word, (pos, length)))
            if candidates:
                candidates.sort()
                target = chooser(candidates)
        if target is None:
            break
        word, (pos, length) = target
        coeff = terms.pop(word)
        g = lead_map[word[pos:pos + length]]
        left, right = word[:pos], word[pos + length:]
        lead = word[pos:pos + length]
        for tw, tc in g.terms.items():
            if tw == lead:
                continue
            new_word = left + tw + right
            delta = coeff * tc
            if new_word in terms:
                s = terms[new_word] - delta
                if s.is_zero():
                    del terms[new_word]
                else:
                    terms[new_word] = s
            else:
                terms[new_word] = -delta
    return NcPoly(gens, p.conductor, terms)


def normal_form(p: NcPoly, gb: TruncGB,
                chooser: Optional[Callable] = None) -> NcPoly:
    """Fully reduce p; zero iff p lies in the ideal through the bound.

    `chooser` overrides the deterministic reduction strategy (used by the
    confluence tests); it receives the sorted candidate list of
    (word, (position, lead length)) rewrites and picks one."""
    deg = p.degree()
    if deg is not None and deg > gb.bound:
        raise DegreeBoundExceeded(
            f"polynomial degree {deg} exceeds the truncation bound {gb.bound}")
    return _reduce(p, gb.lead_map, gb.lead_lengths, chooser)


def _overlap_spolys(p: NcPoly, q: NcPoly, bound: int) -> list:
    """S-polynomials of the proper overlaps between the leading words."""
    u = p.leading_word()
    v = q.leading_word()
    out = []
    gens = p.gens
    for k in range(1, min(len(u), len(v))):
        if u[len(u) - k:] == v[:k]:
            common = u + v[k:]
            degree = word_degree(common, gens)
            if degree <= bound:
                s = p.word_mul_right(v[k:]) - q.word_mul_left(u[:len(u) - k])
                out.append((degree, s))
    return out


_GB_CACHE: dict = {}


def clear_cache() -> None:
    _GB_CACHE.clear()


def truncated_gb(presentation: Presentation, bound: int,
                 use_cache: bool = True) -> TruncGB:
    """Reduced two-sided Groebner basis through `bound` via overlap completion."""
    if bound < presentation.max_relation_degree():
        raise DegreeBoundExceeded(
            f"bound {bound} is below the maximum relation degree "
            f"{presentation.max_relation_degree()}")
    key = (presentation.canonical_key(), bound)
    if use_cache and key in _GB_CACHE:
        return _GB_CACHE[key]

    gens = presentation.generators
    seq = itertools.count()
    heap: list = []
    for rel in presentation.relations:
        heapq.heappush(heap, (rel.degree(), next(seq), rel))

    basis: list = []
    lead_map: dict = {}

    def lengths() -> list:
        return sorted({len(w) for w in lead_map})

    while heap:
        _, _, p = heapq.heappop(heap)
        h = _reduce(p, lead_map, lengths())
        if h.is_zero():
            continue
        h = h.monic()
        lead_h = h.leading_word()
        kept = []
        for g in basis:
            if _contains_subword(g.leading_word(), lead_h):
                del lead_map[g.leading_word()]
                heapq.heappush(heap, (g.degree(), next(seq), g))
            else:
                kept.append(g)
        basis = kept
        for g in basis + [h]:
            for degree, s in _overlap_spolys(h, g, bound):
                heapq.heappush(heap, (degree, next(seq), s))
            if g is not h:
                for degree, s in _overlap_spolys(g, h, bound):
                    heapq.heappush(heap, (degree, next(seq), s))
        basis.append(h)
        lead_map[lead_h] = h

    # interreduce tails; leading words are already an antichain
    changed = True
    while changed:
        changed = False
        for idx, g in enumerate(basis):
            others = {w: e for w, e in lead_map.items() if e is not g}
            red = _reduce(g, others, sorted({len(w) for w in others}))
            red = red.monic()
            if red != g:
                basis[idx] = red
                lead_map[red.leading_word()] = red
                changed = True

    basis.sort(key=lambda g: deglex_key(g.leading_word(), gens))
    result = TruncGB(presentation, bound, basis)
    if use_cache:
        _GB_CACHE[key] = result
    return result


def hilbert_coeffs(presentation: Presentation, bound: int) -> tuple:
    """dim A_0 .. dim A_bound, counted on Groebner normal words."""
    gb = truncated_gb(presentation, max(bound, presentation.max_relation_degree()))
    levels = gb.normal_words_by_degree()
    return tuple(len(levels[d]) for d in range(bound + 1))


def ideal_contains(p: NcPoly, presentation: Presentation, bound: int) -> bool:
    """True iff p reduces to zero modulo the relation ideal through `bound`."""
    deg = p.degree()
    if deg is not None and deg > bound:
        raise DegreeBoundExceeded(
            f"polynomial degree {deg} exceeds the bound {bound}")
    gb = truncated_gb(presentation,
                      max(bound, presentation.max_relation_degree()))
    return normal_form(p, gb).is_zero()


# ---------------------------------------------------------------------------
# regular and normal elements, checked degreewise
# ---------------------------------------------------------------------------

def _coords(p: NcPoly, index: dict, zero: CycNum) -> list:
    row = [zero] * len(index)
    for w, c in p.terms.items():
        row[index[w]] = c
    return row


def _multiplication_rows(a: NcPoly, gb: TruncGB, degree: int, side: str) -> list:
    deg_a = a.homogeneous_degree()
    source = gb.normal_words(degree)
    target = gb.normal_words(degree + deg_a)
    index = {w: i for i, w in enumerate(target)}
    zero = CycNum.zero(a.conductor)
    rows = []
    for w in source:
        word_poly = NcPoly.from_word(a.gens, a.conductor, w)
        prod = a * word_poly if side == "left" else word_poly * a
        rows.append(_coords(normal_form(prod, gb), index, zero))
    return rows


def is_regular_to_degree(a: NcPoly, presentation: Presentation,
                         bound: int) -> tuple:
    """(left-regular, right-regular) through `bound`: multiplication by a is
    injective on every component of degree <= bound - deg(a)."""
    deg_a = a.homogeneous_degree()
    if deg_a is None or a.is_zero():
        raise ValidationError("regularity check needs a homogeneous nonzero element")
    gb = truncated_gb(presentation, bound)
    left_ok = right_ok = True
    for d in range(0, bound - deg_a + 1):
        dim = len(gb.normal_words(d))
        if dim == 0:
            continue
        if left_ok:
            left_ok = mat_rank(_multiplication_rows(a, gb, d, "left")) == dim
        if right_ok:
            right_ok = mat_rank(_multiplication_rows(a, gb, d, "right")) == dim
        if not (left_ok or right_ok):
            break
    return left_ok, right_ok


def is_normal_to_degree(a: NcPoly, presentation: Presentation,
                        bound: int) -> bool:
    """True iff a*A_d and A_d*a span the same subspace for every d <= bound - deg(a)."""
    deg_a = a.homogeneous_degree()
    if deg_a is None or a.is_zero():
        raise ValidationError("normality check needs a homogeneous nonzero element")
    gb = truncated_gb(presentation, bound)
    for d in range(0, bound - deg_a + 1):
        left = _multiplication_rows(a, gb, d, "left")
        right = _multiplication_rows(a, gb, d, "right")
        if left and not row_spaces_equal(left, right):
            return False
    return True


# ---------------------------------------------------------------------------
# presentation isomorphism verification
# ---------------------------------------------------------------------------

@dataclass
class IsoVerdict:
    status: str                      # SYNTACTIC | VERIFIED | FAILED
    degree: int
    syntactic: bool
    relations_in_ideal: list
    hilbert_lhs: tuple
    hilbert_rhs: tuple
    hilbert_equal: bool
    scalars: Optional[list]
    inverse_checked: Optional[bool]
    failure: Optional[str] = None

    @property
    def ok(self) -> bool:
        return self.status != "FAILED"


def verify_iso(lhs: Presentation, rhs: Presentation, genmap: GenMap,
               bound: int, inverse: Optional[GenMap] = None) -> IsoVerdict:
    """Certify the necessary conditions for `genmap` to define an isomorphism
    lhs -> rhs through `bound`: mapped relations lie in the target ideal and
    the Hilbert prefixes agree.  When the mapped relation set equals the
    target relation set up to scalars the verdict is SYNTACTIC and the
    per-relation scalars are reported."""
    if bound < max(lhs.max_relation_degree(), rhs.max_relation_degree()):
        raise DegreeBoundExceeded(
            "degree bound is smaller than the relation degrees")
    if genmap.source != lhs.generators or genmap.target != rhs.generators:
        raise ValidationError("generator map does not connect the presentations")
    mapped = [genmap.apply(r) for r in lhs.relations]

    syntactic = False
    scalars: Optional[list] = None
    if len(mapped) == len(rhs.relations) and all(not m.is_zero() for m in mapped):
        remaining = list(range(len(rhs.relations)))
        pairing = []
        for m in mapped:
            canon = m.monic()
            hit = next((j for j in remaining if rhs.relations[j] == canon), None)
            if hit is None:
                pairing = None
                break
            remaining.remove(hit)
            pairing.append(m.leading_coeff())
        if pairing is not None:
            syntactic = True
            scalars = pairing

    gb_rhs = truncated_gb(rhs, bound)
    relations_in_ideal = []
    failure = None
    for k, m in enumerate(mapped):
        nf = normal_form(m, gb_rhs)
        ok = nf.is_zero()
        relations_in_ideal.append(ok)
        if not ok and failure is None:
            failure = (f"image of relation {k + 1} is nonzero in the target: "
                       f"{nf}")

    hl = hilbert_coeffs(lhs, bound)
    hr = hilbert_coeffs(rhs, bound)
    hilbert_equal = hl == hr
    if not hilbert_equal and failure is None:
        failure = f"Hilbert prefixes differ: {hl} vs {hr}"

    inverse_checked = None
    if inverse is not None:
        gb_lhs = truncated_gb(lhs, bound)
        inverse_checked = all(
            normal_form(inverse.apply(r), gb_lhs).is_zero()
            for r in rhs.relations)
        if not inverse_checked and failure is None:
            failure = "inverse map does not send relations into the source ideal"

    if failure is not None:
        status = "FAILED"
    elif syntactic:
        status = "SYNTACTIC"
    else:
        status = "VERIFIED"
    return IsoVerdict(status, bound, syntactic, relations_in_ideal,
                      hl, hr, hilbert_equal, scalars, inverse_checked, failure)
