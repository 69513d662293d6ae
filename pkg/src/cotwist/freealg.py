"""Words, noncommutative polynomials and graded presentations of free algebras.

Words are tuples of 0-based generator indices ordered by deglex (total
weight first, then lexicographic on the index sequence).  Polynomials are
sparse maps word -> CycNum with no zero terms, tied to a generator alphabet
and a conductor.  Presentations keep their relations N-homogeneous and
scaled so the leading deglex coefficient is 1, which turns "equal up to a
nonzero scalar" into literal equality.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Callable, Iterable, Mapping, Optional, Sequence

from .cyclo import CycNum, lcm
from .errors import AlphabetMismatch, ParseError, ValidationError

Word = tuple

_RESERVED_NAMES = {"i", "zeta"}
_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z_0-9]*\Z")


@dataclass(frozen=True)
class GeneratorInfo:
    index: int
    name: str
    degree: int


def make_alphabet(pairs: Sequence[tuple[str, int]]) -> tuple:
    """Build a generator alphabet from (name, degree) pairs."""
    names = [name for name, _ in pairs]
    if len(set(names)) != len(names):
        raise ValidationError("generator names must be unique")
    for name in names:
        if not _NAME_RE.match(name) or name in _RESERVED_NAMES:
            raise ValidationError(f"bad generator name {name!r}")
    gens = []
    for idx, (name, degree) in enumerate(pairs):
        if degree < 1:
            raise ValidationError(f"generator {name!r} needs a positive degree")
        gens.append(GeneratorInfo(idx, name, degree))
    return tuple(gens)


def word_degree(word: Word, gens: Sequence[GeneratorInfo]) -> int:
    return sum(gens[i].degree for i in word)


def deglex_key(word: Word, gens: Sequence[GeneratorInfo]):
    return (word_degree(word, gens), word)


class NcPoly:
    """A noncommutative polynomial over a fixed alphabet and conductor."""

    __slots__ = ("gens", "conductor", "terms", "_key")

    def __init__(self, gens: tuple, conductor: int, terms: Mapping[Word, CycNum]):
        clean = {}
        for word, coeff in terms.items():
            if coeff.conductor != conductor:
                raise AlphabetMismatch(
                    f"coefficient conductor {coeff.conductor} != {conductor}")
            if any(i < 0 or i >= len(gens) for i in word):
                raise AlphabetMismatch(f"word {word} has letters outside the alphabet")
            if not coeff.is_zero():
                clean[word] = coeff
        object.__setattr__(self, "gens", gens)
        object.__setattr__(self, "conductor", conductor)
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "_key", None)

    def __setattr__(self, name, value):
        raise AttributeError("NcPoly is immutable")

    # -- constructors --------------------------------------------------------

    @staticmethod
    def zero(gens: tuple, conductor: int) -> "NcPoly":
        return NcPoly(gens, conductor, {})

    @staticmethod
    def one(gens: tuple, conductor: int) -> "NcPoly":
        return NcPoly(gens, conductor, {(): CycNum.one(conductor)})

    @staticmethod
    def gen(gens: tuple, conductor: int, index: int) -> "NcPoly":
        return NcPoly(gens, conductor, {(index,): CycNum.one(conductor)})

    @staticmethod
    def from_word(gens: tuple, conductor: int, word: Word,
                  coeff: Optional[CycNum] = None) -> "NcPoly":
        return NcPoly(gens, conductor,
                      {tuple(word): coeff if coeff is not None else CycNum.one(conductor)})

    # -- canonical identity --------------------------------------------------

    def key(self):
        cached = self._key
        if cached is None:
            cached = tuple(sorted(
                ((w, c.coeffs) for w, c in self.terms.items()),
                key=lambda item: deglex_key(item[0], self.gens), reverse=True))
            object.__setattr__(self, "_key", cached)
        return cached

    def __eq__(self, other) -> bool:
        if not isinstance(other, NcPoly):
            return NotImplemented
        return (self.gens == other.gens and self.conductor == other.conductor
                and self.key() == other.key())

    def __hash__(self) -> int:
        return hash((self.gens, self.conductor, self.key()))

    # -- inspection ----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> Optional[int]:
        """Maximum N-degree of the terms; None for the zero polynomial."""
        if not self.terms:
            return None
        return max(word_degree(w, self.gens) for w in self.terms)

    def homogeneous_degree(self) -> Optional[int]:
        """Common N-degree of all terms, or None if mixed or zero."""
        degrees = {word_degree(w, self.gens) for w in self.terms}
        if len(degrees) != 1:
            return None
        return degrees.pop()

    def leading_word(self) -> Word:
        if not self.terms:
            raise ValueError("zero polynomial has no leading word")
        return max(self.terms, key=lambda w: deglex_key(w, self.gens))

    def leading_coeff(self) -> CycNum:
        return self.terms[self.leading_word()]

    def sorted_terms(self) -> list:
        return sorted(self.terms.items(),
                      key=lambda item: deglex_key(item[0], self.gens), reverse=True)

    # -- arithmetic ----------------------------------------------------------

    def _check(self, other: "NcPoly") -> None:
        if self.gens != other.gens:
            raise AlphabetMismatch("polynomials over different alphabets")
        if self.conductor != other.conductor:
            raise AlphabetMismatch(
                f"polynomials over conductors {self.conductor} and {other.conductor}")

    def __add__(self, other: "NcPoly") -> "NcPoly":
        self._check(other)
        terms = dict(self.terms)
        for w, c in other.terms.items():
            if w in terms:
                s = terms[w] + c
                if s.is_zero():
                    del terms[w]
                else:
                    terms[w] = s
            else:
                terms[w] = c
        return NcPoly(self.gens, self.conductor, terms)

    def __sub__(self, other: "NcPoly") -> "NcPoly":
        return self + (-other)

    def __neg__(self) -> "NcPoly":
        return NcPoly(self.gens, self.conductor,
                      {w: -c for w, c in self.terms.items()})

    def scale(self, scalar: CycNum) -> "NcPoly":
        if scalar.conductor != self.conductor:
            raise AlphabetMismatch("scalar conductor mismatch")
        if scalar.is_zero():
            return NcPoly.zero(self.gens, self.conductor)
        return NcPoly(self.gens, self.conductor,
                      {w: c * scalar for w, c in self.terms.items()})

    def __mul__(self, other: "NcPoly") -> "NcPoly":
        self._check(other)
        terms: dict = {}
        for wa, ca in self.terms.items():
            for wb, cb in other.terms.items():
                w = wa + wb
                c = ca * cb
                if w in terms:
                    s = terms[w] + c
                    if s.is_zero():
                        del terms[w]
                    else:
                        terms[w] = s
                else:
                    terms[w] = c
        return NcPoly(self.gens, self.conductor, terms)

    def __pow__(self, exponent: int) -> "NcPoly":
        if exponent < 0:
            raise ValueError("negative powers are not defined in a free algebra")
        result = NcPoly.one(self.gens, self.conductor)
        for _ in range(exponent):
            result = result * self
        return result

    def monic(self) -> "NcPoly":
        if self.is_zero():
            return self
        inv = self.leading_coeff().inverse()
        return self.scale(inv)

    def word_mul_left(self, word: Word) -> "NcPoly":
        return NcPoly(self.gens, self.conductor,
                      {word + w: c for w, c in self.terms.items()})

    def word_mul_right(self, word: Word) -> "NcPoly":
        return NcPoly(self.gens, self.conductor,
                      {w + word: c for w, c in self.terms.items()})

    def with_conductor(self, conductor: int) -> "NcPoly":
        if conductor == self.conductor:
            return self
        return NcPoly(self.gens, conductor,
                      {w: c.embed(conductor) for w, c in self.terms.items()})

    def map_coeffs(self, fn: Callable[[Word, CycNum], CycNum]) -> "NcPoly":
        return NcPoly(self.gens, self.conductor,
                      {w: fn(w, c) for w, c in self.terms.items()})

    # -- display -------------------------------------------------------------

    def _word_str(self, word: Word) -> str:
        if not word:
            return "1"
        parts = []
        run_idx, run_len = word[0], 1
        for i in word[1:]:
            if i == run_idx:
                run_len += 1
            else:
                parts.append((run_idx, run_len))
                run_idx, run_len = i, 1
        parts.append((run_idx, run_len))
        return "*".join(
            self.gens[i].name if e == 1 else f"{self.gens[i].name}^{e}"
            for i, e in parts)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        chunks = []
        for word, coeff in self.sorted_terms():
            text = str(coeff)
            simple = " " not in text
            if not word:
                body = text if simple else f"({text})"
            elif coeff.is_one():
                body = self._word_str(word)
            elif (-coeff).is_one():
                body = "-" + self._word_str(word)
            elif simple:
                body = f"{text}*{self._word_str(word)}"
            else:
                body = f"({text})*{self._word_str(word)}"
            chunks.append(body)
        out = chunks[0]
        for body in chunks[1:]:
            if body.startswith("-") and not body.startswith("-("):
                out += " - " + body[1:]
            else:
                out += " + " + body
        return out

    def __repr__(self) -> str:
        return f"NcPoly({self})"


@dataclass(frozen=True)
class Presentation:
    """A connected graded algebra given by generators and homogeneous relations."""

    conductor: int
    generators: tuple
    relations: tuple

    def canonical_key(self):
        return (self.conductor, self.generators,
                tuple(r.key() for r in self.relations))

    def gen_poly(self, index: int) -> NcPoly:
        return NcPoly.gen(self.generators, self.conductor, index)

    def gen_named(self, name: str) -> NcPoly:
        for g in self.generators:
            if g.name == name:
                return self.gen_poly(g.index)
        raise KeyError(name)

    def max_relation_degree(self) -> int:
        return max((r.degree() for r in self.relations), default=0)

    def parse(self, text: str) -> NcPoly:
        return parse_ncpoly(text, self.generators, self.conductor)


def make_presentation(conductor: int, generators: tuple,
                      relations: Iterable[NcPoly]) -> Presentation:
    """Validate and canonicalize; idempotent on already-canonical input."""
    rels = []
    for k, rel in enumerate(relations):
        if rel.gens != generators:
            raise AlphabetMismatch(f"relation {k} uses a different alphabet")
        rel = rel.with_conductor(lcm(conductor, rel.conductor))
        if rel.conductor != conductor:
            raise ValidationError(
                f"relation {k} needs conductor {rel.conductor}, got {conductor}")
        if rel.is_zero():
            raise ValidationError(f"relation {k} is zero")
        if rel.homogeneous_degree() is None:
            raise ValidationError(
                f"relation {k} is not homogeneous: {rel}")
        rels.append(rel.monic())
    return Presentation(conductor, generators, tuple(rels))


def embed_presentation(p: Presentation, conductor: int) -> Presentation:
    """The same presentation with all coefficients at a larger conductor."""
    if conductor == p.conductor:
        return p
    return make_presentation(conductor, p.generators,
                             [r.with_conductor(conductor) for r in p.relations])


@dataclass(frozen=True)
class GenMap:
    """A degree-preserving assignment of a polynomial to each source generator."""

    source: tuple
    images: tuple

    def __post_init__(self):
        if len(self.images) != len(self.source):
            raise ValidationError("one image per generator required")
        for g, img in zip(self.source, self.images):
            if img.is_zero():
                continue
            if img.homogeneous_degree() != g.degree:
                raise ValidationError(
                    f"image of {g.name} is not homogeneous of degree {g.degree}")

    @property
    def target(self) -> tuple:
        return self.images[0].gens

    @property
    def conductor(self) -> int:
        return self.images[0].conductor

    def apply(self, p: NcPoly) -> NcPoly:
        if p.gens != self.source:
            raise AlphabetMismatch("polynomial is over a different source alphabet")
        out = NcPoly.zero(self.target, self.conductor)
        for word, coeff in p.terms.items():
            factor = NcPoly.one(self.target, self.conductor)
            for letter in word:
                factor = factor * self.images[letter]
            out = out + factor.scale(coeff.embed(self.conductor))
        return out

    def compose(self, inner: "GenMap") -> "GenMap":
        """self after inner: source of inner, images mapped through self."""
        return GenMap(inner.source, tuple(self.apply(img) for img in inner.images))

    @staticmethod
    def from_matrix(source: tuple, target: tuple, conductor: int,
                    matrix) -> "GenMap":
        """Column j of the matrix holds the target coordinates of the image
        of source generator j."""
        n = len(source)
        if len(matrix) != len(target) or any(len(row) != n for row in matrix):
            raise ValidationError("matrix shape does not match the alphabets")
        images = []
        for j in range(n):
            terms = {}
            for i in range(len(target)):
                c = matrix[i][j].embed(conductor) if matrix[i][j].conductor != conductor \
                    else matrix[i][j]
                if not c.is_zero():
                    terms[(i,)] = c
            images.append(NcPoly(target, conductor, terms))
        return GenMap(source, tuple(images))

    @staticmethod
    def identity(gens: tuple, conductor: int) -> "GenMap":
        return GenMap(gens, tuple(NcPoly.gen(gens, conductor, j)
                                  for j in range(len(gens))))

    @staticmethod
    def scaling(gens: tuple, conductor: int, scalars) -> "GenMap":
        return GenMap(gens, tuple(
            NcPoly.gen(gens, conductor, j).scale(s.embed(conductor))
            for j, s in enumerate(scalars)))


def change_basis(p: NcPoly, matrix, new_names: Optional[Sequence[str]] = None) -> NcPoly:
    """Rewrite p in the alphabet defined by an invertible change of generators.

    Column k of the matrix gives the old coordinates of new generator k, so
    the substitution applied here uses the matrix inverse."""
    from .linalg import mat_inverse
    gens = p.gens
    if new_names is None:
        new_gens = gens
    else:
        new_gens = make_alphabet([(n, g.degree) for n, g in zip(new_names, gens)])
    conductor = p.conductor
    inv = mat_inverse([[x.embed(conductor) for x in row] for row in matrix])
    # x_i = sum_k inv[k][i] v_k
    images = []
    for i in range(len(gens)):
        terms = {(k,): inv[k][i] for k in range(len(gens)) if not inv[k][i].is_zero()}
        images.append(NcPoly(new_gens, conductor, terms))
    return GenMap(gens, tuple(images)).apply(p)


# ---------------------------------------------------------------------------
# relation parser
#
# Accepts the scalar grammar of the cyclo module plus generator names, ^ with
# nonnegative integer exponents, and the commutator shorthands [a,b] and
# [a,b]_+ (an anticommutator may also be written [a,b]+ when the plus sign
# immediately follows the bracket).
# ---------------------------------------------------------------------------

_POLY_TOKEN_RE = re.compile(r"(\d+|[A-Za-z_][A-Za-z_0-9]*|\*\*|\]_\+|[-+*/^()\[\],])")


def _poly_tokenize(text: str) -> list[str]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        m = _POLY_TOKEN_RE.match(text, pos)
        if not m:
            raise ParseError(f"bad character in relation: {text[pos:]!r}")
        tok = m.group(1)
        pos = m.end()
        if tok == "**":
            tok = "^"
        if tok == "]" and pos < len(text) and text[pos] == "+":
            # adjacent ']+' means the anticommutator bracket
            tok = "]_+"
            pos += 1
        tokens.append(tok)
    return tokens


class _PolyParser:
    def __init__(self, tokens: list[str], gens: tuple, conductor: int):
        self.tokens = tokens
        self.pos = 0
        self.gens = gens
        self.conductor = conductor
        self.by_name = {g.name: g.index for g in gens}

    def peek(self) -> Optional[str]:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self) -> str:
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of relation")
        self.pos += 1
        return tok

    def expect(self, tok: str) -> None:
        got = self.take()
        if got != tok:
            raise ParseError(f"expected {tok!r}, got {got!r}")

    def parse(self) -> NcPoly:
        p = self.expr()
        if self.peek() is not None:
            raise ParseError(f"trailing input in relation: {self.peek()!r}")
        return p

    def expr(self) -> NcPoly:
        p = self.term()
        while self.peek() in ("+", "-"):
            op = self.take()
            q = self.term()
            p = p + q if op == "+" else p - q
        return p

    def term(self) -> NcPoly:
        p = self.unary()
        while self.peek() in ("*", "/"):
            op = self.take()
            q = self.unary()
            if op == "*":
                p = p * q
            else:
                if q.terms.keys() != {()} and not q.is_zero():
                    raise ParseError("division only by scalars")
                if q.is_zero():
                    raise ParseError("division by zero")
                p = p.scale(q.terms[()].inverse())
        return p

    def unary(self) -> NcPoly:
        if self.peek() == "-":
            self.take()
            return -self.unary()
        if self.peek() == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self) -> NcPoly:
        base = self.atom()
        if self.peek() == "^":
            self.take()
            exp_tok = self.take()
            negative = False
            if exp_tok == "-":
                negative = True
                exp_tok = self.take()
            if not exp_tok.isdigit():
                raise ParseError(f"integer exponent expected, got {exp_tok!r}")
            e = int(exp_tok)
            if negative:
                if base.terms.keys() != {()}:
                    raise ParseError("negative powers only on scalars")
                return NcPoly(self.gens, self.conductor,
                              {(): base.terms[()] ** (-e)})
            return base ** e
        return base

    def scalar(self, value: CycNum) -> NcPoly:
        return NcPoly(self.gens, self.conductor,
                      {(): value.embed(self.conductor)})

    def atom(self) -> NcPoly:
        tok = self.take()
        if tok.isdigit():
            return self.scalar(CycNum.rational(int(tok)))
        if tok == "i":
            return self.scalar(CycNum.i())
        if tok == "zeta":
            self.expect("(")
            n_tok = self.take()
            if not n_tok.isdigit() or int(n_tok) < 1:
                raise ParseError(f"zeta() needs a positive integer, got {n_tok!r}")
            self.expect(")")
            return self.scalar(CycNum.zeta(int(n_tok)))
        if tok == "(":
            p = self.expr()
            self.expect(")")
            return p
        if tok == "[":
            a = self.expr()
            self.expect(",")
            b = self.expr()
            closing = self.take()
            if closing == "]":
                return a * b - b * a
            if closing == "]_+":
                return a * b + b * a
            raise ParseError(f"expected ']' or ']_+', got {closing!r}")
        if tok in self.by_name:
            return NcPoly.gen(self.gens, self.conductor, self.by_name[tok])
        raise ParseError(f"unknown name in relation: {tok!r}")


def parse_ncpoly(text: str, gens: tuple, conductor: int) -> NcPoly:
    """Parse a relation string over the given alphabet at a fixed conductor.

    The conductor must already cover every scalar appearing in the text."""
    tokens = _poly_tokenize(text)
    if not tokens:
        raise ParseError("empty relation")
    return _PolyParser(tokens, gens, conductor).parse()


def scalar_conductor_needed(text: str) -> int:
    """Smallest conductor that can host every scalar in a relation string."""
    need = 1
    for tok in _poly_tokenize(text):
        if tok == "i":
            need = lcm(need, 4)
    for m in re.finditer(r"zeta\s*\(\s*(\d+)\s*\)", text):
        need = lcm(need, int(m.group(1)))
    return need
