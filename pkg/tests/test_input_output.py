import json
import re
from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given
from hypothesis import strategies as st

from conftest import BROUGHTON, CUSP_FIVE, TWO_POINTS, X, Y, analysis, to_sympy
from milnor_index.exact_algebra import BiPoly
from milnor_index.input_output import (
    SCHEMA,
    ParseError,
    emit_json,
    emit_svg,
    format_polynomial,
    parse_polynomial,
    report_to_dict,
)


def test_parse_reads_terms():
    assert parse_polynomial("x^2*y + x").terms == {(2, 1): 1, (1, 0): 1}


def test_parse_expands_products():
    p = parse_polynomial("(x - y^2)*((x - y^2)*(y^2 + 1) - 1)")
    assert p.degree == 6
    assert p.top_form() == parse_polynomial("y^6")
    assert to_sympy(p) == sp.expand((X - Y**2) * ((X - Y**2) * (Y**2 + 1) - 1))


def test_parse_degree_four_example():
    p = parse_polynomial("x^2 + (x*y - 1)^2")
    assert p.degree == 4
    assert p.top_form() == parse_polynomial("x^2*y^2")


def test_rational_coefficients():
    p = parse_polynomial("-(5/3)*y^3 + y^2 - 2*y + 4*x^2 + x")
    assert p.terms[(0, 3)] == sp.Rational(-5, 3)


@pytest.mark.parametrize("text,pos", [
    ("2x y", 1),
    ("x**2", 2),
    ("3.5*x", 1),
    ("x^", 2),
    ("(x+1", 4),
    ("x+*y", 2),
    ("z+1", 0),
    ("x^-1", 2),
    ("", 0),
])
def test_parse_errors_carry_position(text, pos):
    with pytest.raises(ParseError) as err:
        parse_polynomial(text)
    assert err.value.offset == pos
    assert f"byte {pos}" in str(err.value)


@st.composite
def polys(draw):
    terms = {}
    for _ in range(draw(st.integers(0, 6))):
        i, j = draw(st.integers(0, 5)), draw(st.integers(0, 5))
        terms[(i, j)] = draw(st.fractions(-20, 20, max_denominator=7))
    return BiPoly(terms)


@given(polys())
def test_format_parse_round_trip(p):
    assert parse_polynomial(format_polynomial(p)) == p


@given(polys(), polys())
def test_parse_agrees_with_sympy_on_products(p, q):
    text = f"({format_polynomial(p)})*({format_polynomial(q)}) - ({format_polynomial(q)})^2"
    expected = sp.expand(to_sympy(p) * to_sympy(q) - to_sympy(q) ** 2)
    assert sp.expand(to_sympy(parse_polynomial(text)) - expected) == 0


def test_json_broughton_indices():
    d = json.loads(emit_json(analysis(BROUGHTON)))
    assert d["schema"] == SCHEMA
    assert (d["index_winding"], d["index_arcs"], d["index_clusters"]) == (0, 0, 0)


def test_json_empty_atypical_set():
    d = report_to_dict(analysis("x^2 + y^2"))
    assert d["atypical_at_infinity"] == []


def test_json_points_of_fibres():
    d = report_to_dict(analysis(TWO_POINTS))
    assert d["L_f"] == ["[1:0:0]", "[0:1:0]"]


def test_json_is_deterministic():
    a = emit_json(analysis(CUSP_FIVE))
    b = emit_json(analysis.__wrapped__(CUSP_FIVE))
    assert a == b


def test_json_ignores_earlier_refinement():
    rep = analysis.__wrapped__(TWO_POINTS)
    before = emit_json(rep)
    for arc in rep.arcs:
        arc.anchor.t.refine_to_width(Fraction(1, 2**120))
    assert emit_json(rep) == before


def _svg(text):
    return emit_svg(analysis(text)).decode()


def test_svg_layout_for_five_arc_example():
    svg = _svg(CUSP_FIVE)
    assert svg.count('class="arc"') == 6
    assert re.findall(r'class="tag">(\w+)<', svg).count("Sp") == 4
    limits = re.findall(r'class="limit">([^<]+)<', svg)
    assert sorted(limits) == ["+inf", "-inf", "0", "0", "0", "0"]


def test_svg_two_arcs_for_round_fibres():
    rep = analysis("x^2 + y^2", center=(1, 0))
    assert emit_svg(rep).decode().count('class="arc"') == 2


def test_svg_eight_arcs_two_vanishing_tags():
    svg = _svg(TWO_POINTS)
    assert svg.count('class="arc"') == 8
    tags = re.findall(r'class="tag">([^<]+)<', svg)
    assert tags.count("Va") == 2
