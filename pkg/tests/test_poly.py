import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from degenpoly import Poly, UnboundVariable, VAR_NAMES, ZERO, ONE, LAM, X, Y, P
from degenpoly.poly import as_poly


def test_falling_product_expands():
    assert X * (X - LAM) * (X - LAM * 2) == X ** 3 - LAM * X ** 2 * 3 + LAM ** 2 * X * 2


def test_scalar_arithmetic():
    assert Poly.const(Fraction(1, 2)) * 2 == ONE
    assert LAM * 0 == ZERO
    assert ONE - 1 == ZERO
    assert (X + 1) - X == ONE


def test_constant_helpers():
    assert ZERO.is_constant() and ZERO.constant_value() == 0
    assert not (X + 1).is_constant()
    with pytest.raises(ValueError):
        (X + 1).constant_value()


def test_substitute_lambda_to_zero():
    beta2 = Fraction(1, 6) - LAM ** 2 / 6
    assert beta2.substitute({"λ": 0}) == Poly.const(Fraction(1, 6))


def test_substitute_halving():
    p = X ** 2 - LAM * X
    halved = p.substitute({"λ": LAM / 2, "x": X / 2})
    assert halved == X ** 2 / 4 - LAM * X / 4


def test_substitute_at_zero():
    beta1_x = X - Fraction(1, 2) + LAM / 2
    assert beta1_x.substitute({"x": 0}) == LAM / 2 - Fraction(1, 2)


def test_substitute_accepts_alias():
    assert LAM.substitute({"lambda": 3}) == Poly.const(3)


def test_evaluate():
    p = Fraction(1, 6) - LAM ** 2 / 6
    assert p.evaluate({"λ": 1}) == 0
    q = X - Fraction(1, 2) + LAM / 2
    assert q.evaluate({"x": Fraction(1, 2), "λ": 0}) == 0
    assert ONE.evaluate({}) == 1


def test_evaluate_unbound():
    with pytest.raises(UnboundVariable):
        (X + LAM).evaluate({"x": 1})


def test_degree_and_coefficient_of():
    p = X ** 3 * LAM - X * 2 + 5
    assert p.degree() == 4
    assert p.degree("x") == 3
    assert p.coefficient_of("x", 3) == LAM
    assert p.coefficient_of("x", 1) == Poly.const(-2)
    assert p.coefficient_of("x", 0) == Poly.const(5)


def test_power():
    assert (X + 1) ** 2 == X ** 2 + X * 2 + 1
    assert X ** 0 == ONE
    with pytest.raises(ValueError):
        X ** -1


def test_str_golden():
    p = LAM ** 4 * Fraction(-19, 30) + LAM ** 2 * Fraction(2, 3) - Fraction(1, 30)
    assert str(p) == "-19/30*λ^4 + 2/3*λ^2 - 1/30"
    assert str(ZERO) == "0"
    assert str(X - 1) == "x - 1"
    assert str(-X) == "-x"


def test_parse_round_trip_examples():
    for text in [
        "-19/30*λ^4 + 2/3*λ^2 - 1/30",
        "x^3 - 3*λ*x^2 + 2*λ^2*x",
        "0",
        "1/2",
        "-x",
        "p",
    ]:
        p = Poly.parse(text)
        assert str(p) == text or Poly.parse(str(p)) == p


def test_parse_aliases_and_errors():
    assert Poly.parse("lambda^2") == LAM ** 2
    assert Poly.parse("lam") == LAM
    with pytest.raises(ValueError):
        Poly.parse("2 +")
    with pytest.raises(ValueError):
        Poly.parse("x^(2)")
    with pytest.raises(ValueError):
        Poly.parse("")


def test_parse_unknown_character():
    with pytest.raises(ValueError):
        Poly.parse("q + 1")


coefficients = st.fractions(min_value=-4, max_value=4, max_denominator=6)


@st.composite
def polys(draw, var_names=("λ", "x"), max_terms=4, max_exp=3):
    indices = [VAR_NAMES.index(v) for v in var_names]
    terms = {}
    for _ in range(draw(st.integers(0, max_terms))):
        exps = [0] * len(VAR_NAMES)
        for i in indices:
            exps[i] = draw(st.integers(0, max_exp))
        terms[tuple(exps)] = draw(coefficients)
    return Poly(terms)


@settings(max_examples=60, deadline=None)
@given(polys(), polys(), polys())
def test_ring_axioms(p, q, r):
    assert p + q == q + p
    assert p * q == q * p
    assert (p + q) + r == p + (q + r)
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert p + ZERO == p
    assert p * ONE == p


@settings(max_examples=40, deadline=None)
@given(polys(), polys())
def test_substitution_is_a_homomorphism(p, q):
    mapping = {"x": LAM + 1, "λ": Y * 2}
    assert (p * q).substitute(mapping) == p.substitute(mapping) * q.substitute(mapping)
    assert (p + q).substitute(mapping) == p.substitute(mapping) + q.substitute(mapping)


@settings(max_examples=30, deadline=None)
@given(polys())
def test_substitute_identity_map(p):
    assert p.substitute({"x": X, "λ": LAM}) == p
    assert p.substitute({}) == p


@settings(max_examples=30, deadline=None)
@given(polys(var_names=("λ", "x", "y")))
def test_canonical_construction_order(p):
    pieces = [Poly({exps: c}) for exps, c in p.terms.items()]
    random.Random(0).shuffle(pieces)
    total = ZERO
    for piece in pieces:
        total = total + piece
    assert total == p
    assert hash(total) == hash(p)
    assert str(total) == str(p)


@settings(max_examples=40, deadline=None)
@given(polys())
def test_text_round_trip(p):
    assert Poly.parse(str(p)) == p


def test_as_poly_coercion():
    assert as_poly(3) == Poly.const(3)
    assert as_poly(Fraction(2, 5)) == Poly.const(Fraction(2, 5))
    assert as_poly(P) is P
    with pytest.raises(TypeError):
        as_poly(0.5)
