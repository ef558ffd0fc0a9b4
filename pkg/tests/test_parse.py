"""Expression grammar tests."""

from fractions import Fraction

import pytest

from heavenly.errors import NotInSpan, ParseError
from heavenly.grassmann import MAEquation, uvar
from heavenly.parse import parse_equation, parse_lax_field, parse_polynomial
from heavenly.poly import Polynomial


def test_first_heavenly_expression():
    eq = parse_equation("u13*u24 - u14*u23 - 1", 4)
    assert eq.poly == uvar(1, 3) * uvar(2, 4) - uvar(1, 4) * uvar(2, 3) - 1


def test_hess_keyword():
    from heavenly.catalog import hess_poly

    eq = parse_equation("HESS - 1", 3)
    assert eq.poly == hess_poly(3) - 1


def test_rational_literals_and_powers():
    p = parse_polynomial("1/2*u11^2 - 3/4", 2)
    assert p == Fraction(1, 2) * uvar(1, 1) ** 2 - Fraction(3, 4)


def test_index_normalization():
    assert parse_polynomial("u21", 2) == uvar(1, 2)
    assert parse_polynomial("u43*u12", 4) == uvar(3, 4) * uvar(1, 2)


def test_parentheses_and_unary():
    p = parse_polynomial("-(u11 - u22)*2", 2)
    assert p == -2 * uvar(1, 1) + 2 * uvar(2, 2)


def test_not_in_span_with_monomials():
    with pytest.raises(NotInSpan) as err:
        parse_equation("u11 + u11^2", 4)
    assert any("u11" in m for m in err.value.monomials)


def test_syntax_errors_carry_positions():
    with pytest.raises(ParseError) as err:
        parse_polynomial("u11 + ", 2)
    assert err.value.position == len("u11 + ")
    with pytest.raises(ParseError):
        parse_polynomial("u11 ? u22", 2)
    with pytest.raises(ParseError):
        parse_polynomial("u11/u22", 2)
    with pytest.raises(ParseError):
        parse_polynomial("u15", 4)
    with pytest.raises(ParseError):
        parse_polynomial("", 3)
    with pytest.raises(ParseError):
        parse_polynomial("u11^(2)", 2)
    with pytest.raises(ParseError):
        parse_polynomial("u11 u22", 2)


def test_round_trip_print_parse():
    from random import Random

    from heavenly.grassmann import minor_basis

    rng = Random(77)
    for n in (2, 3, 4):
        basis = minor_basis(n)
        for _ in range(5):
            coords = [Fraction(rng.randint(-4, 4), rng.randint(1, 3))
                      for _ in range(basis.dimension)]
            if not any(coords):
                continue
            eq = MAEquation.from_coords(n, coords)
            again = parse_equation(str(eq.poly), n)
            assert again.coords == eq.coords


def test_lax_field_parsing():
    field = parse_lax_field("u13*d4 - u14*d3 + lam*d1", 4)
    assert field.components[0] == Polynomial.variable("lam")
    assert field.components[1].is_zero()
    assert field.components[2] == -uvar(1, 4)
    assert field.components[3] == uvar(1, 3)


def test_lax_field_rejects_nonlinear_directions():
    with pytest.raises(ParseError):
        parse_lax_field("d1*d2", 4)
    with pytest.raises(ParseError):
        parse_lax_field("u11 + d1", 4)
    with pytest.raises(ParseError):
        parse_lax_field("u11", 4)
