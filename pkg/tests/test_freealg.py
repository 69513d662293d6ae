import random
from fractions import Fraction

import pytest

from cotwist.cyclo import CycNum
from cotwist.errors import AlphabetMismatch, ParseError, ValidationError
from cotwist.freealg import (GenMap, NcPoly, change_basis, make_alphabet,
                             make_presentation, parse_ncpoly)
from cotwist.linalg import mat_inverse
from oracles import add_expanded, expand_product

X3 = make_alphabet([("x1", 1), ("x2", 1), ("x3", 1)])


def poly(text, gens=X3, conductor=4):
    return parse_ncpoly(text, gens, conductor)


def random_poly(rng, gens=X3, conductor=4, max_degree=3, terms=3):
    out = NcPoly.zero(gens, conductor)
    for _ in range(terms):
        word = tuple(rng.randrange(len(gens))
                     for _ in range(rng.randrange(max_degree + 1)))
        coeff = CycNum.rational(rng.randrange(-3, 4), conductor)
        out = out + NcPoly.from_word(gens, conductor, word, coeff)
    return out


def test_product_of_generators():
    assert str(poly("x1") * poly("x2")) == "x1*x2"


def test_additive_inverse():
    p = poly("x1*x2")
    assert (p + (-p)).is_zero()


def test_bilinear_expansion():
    p = poly("(x1 + x2)*(x1 - x2)")
    assert p == poly("x1^2 - x1*x2 + x2*x1 - x2^2")


def test_alphabet_mismatch_raises():
    other = make_alphabet([("y", 1)])
    with pytest.raises(AlphabetMismatch):
        poly("x1") * NcPoly.gen(other, 4, 0)


def test_mul_associates_and_distributes():
    rng = random.Random(7)
    for _ in range(25):
        a, b, c = (random_poly(rng) for _ in range(3))
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c


def swap_map():
    return GenMap(X3, (NcPoly.gen(X3, 4, 1), NcPoly.gen(X3, 4, 0),
                       NcPoly.gen(X3, 4, 2)))


def test_genmap_swap_flips_commutator():
    commutator = poly("x1*x2 - x2*x1")
    assert swap_map().apply(commutator) == -commutator


def test_genmap_negation_even_power():
    negate = GenMap(X3, (NcPoly.gen(X3, 4, 0), NcPoly.gen(X3, 4, 1),
                         -NcPoly.gen(X3, 4, 2)))
    p = poly("x3^2*x2")
    assert negate.apply(p) == p


def test_genmap_fixes_symmetric_combination():
    assert swap_map().apply(poly("x1 + x2")) == poly("x1 + x2")


def test_genmap_composition():
    rng = random.Random(11)
    negate = GenMap(X3, (NcPoly.gen(X3, 4, 0), -NcPoly.gen(X3, 4, 1),
                         NcPoly.gen(X3, 4, 2)))
    comp = swap_map().compose(negate)
    for _ in range(10):
        p = random_poly(rng)
        assert comp.apply(p) == swap_map().apply(negate.apply(p))


def w_basis_matrix():
    one = CycNum.one(4)
    zero = CycNum.zero(4)
    return [[one, one, zero], [one, -one, zero], [zero, zero, one]]


def test_change_basis_against_expansion_oracle():
    gens = make_alphabet([("w1", 1), ("w2", 1), ("w3", 1)])
    p = parse_ncpoly("w1^2 - w2^2", gens, 4)
    # rewrite to the x-alphabet: w1 = x1+x2, w2 = x1-x2, w3 = x3, i.e. the
    # matrix argument holds x-generators in w-coordinates
    inv = mat_inverse(w_basis_matrix())
    result = change_basis(p, inv, new_names=["x1", "x2", "x3"])
    w1 = {0: Fraction(1), 1: Fraction(1)}
    w2 = {0: Fraction(1), 1: Fraction(-1)}
    expected = add_expanded(expand_product([w1, w1]),
                            expand_product([w2, w2]), sign=-1)
    assert {w: c.as_fraction() for w, c in result.terms.items()} == expected
    assert result == parse_ncpoly("2*(x1*x2 + x2*x1)", result.gens, 4)


def test_change_basis_single_generator():
    p = poly("x3")
    result = change_basis(p, w_basis_matrix(), new_names=["w1", "w2", "w3"])
    assert str(result) == "w3"


def test_change_basis_identity():
    rng = random.Random(3)
    one = CycNum.one(4)
    zero = CycNum.zero(4)
    eye = [[one if i == j else zero for j in range(3)] for i in range(3)]
    for _ in range(5):
        p = random_poly(rng)
        assert change_basis(p, eye) == p


def test_change_basis_round_trip():
    rng = random.Random(5)
    m = w_basis_matrix()
    inv = mat_inverse(m)
    for _ in range(10):
        p = random_poly(rng)
        there = change_basis(p, m)
        assert change_basis(there, inv) == p


def test_change_basis_rejects_singular_matrix():
    one = CycNum.one(4)
    singular = [[one, one, one]] * 3
    with pytest.raises(Exception):
        change_basis(poly("x1"), singular)


def test_presentation_canonicalization_idempotent():
    rels = [poly("2*x1*x2 + 2*x2*x1"), poly("x3*x1 - x1*x3")]
    pres = make_presentation(4, X3, rels)
    again = make_presentation(4, X3, pres.relations)
    assert pres == again
    assert all(r.leading_coeff().is_one() for r in pres.relations)


def test_presentation_rejects_inhomogeneous_relation():
    with pytest.raises(ValidationError, match="not homogeneous"):
        make_presentation(4, X3, [poly("x1 + x1*x2")])


def test_presentation_rejects_zero_relation():
    with pytest.raises(ValidationError, match="zero"):
        make_presentation(4, X3, [NcPoly.zero(X3, 4)])


def test_commutator_shorthands():
    assert poly("[x1,x2]") == poly("x1*x2 - x2*x1")
    assert poly("[x1,x2]_+") == poly("x1*x2 + x2*x1")
    assert poly("[x1,x2]+") == poly("x1*x2 + x2*x1")
    nested = poly("[x3,[x1,x2]_+]")
    assert nested == poly("x3*x1*x2 + x3*x2*x1 - x1*x2*x3 - x2*x1*x3")


def test_parser_scalar_coefficients():
    p = poly("i*x1*x2 - (1/2)*x2*x1")
    assert p.terms[(0, 1)] == CycNum.i()
    assert p.terms[(1, 0)] == CycNum.rational(Fraction(-1, 2), 4)


def test_parser_rejects_unknown_names_and_bad_input():
    with pytest.raises(ParseError):
        poly("x1*q")
    with pytest.raises(ParseError):
        poly("x1 +")
    with pytest.raises(ParseError):
        poly("x1 / x2")


def test_poly_string_round_trip():
    rng = random.Random(13)
    for _ in range(20):
        p = random_poly(rng)
        if p.is_zero():
            continue
        assert parse_ncpoly(str(p), X3, 4) == p


def test_reserved_generator_names_rejected():
    with pytest.raises(ValidationError):
        make_alphabet([("i", 1)])
    with pytest.raises(ValidationError):
        make_alphabet([("x", 1), ("x", 2)])
