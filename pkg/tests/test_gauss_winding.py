import random

import numpy as np
import pytest
import sympy as sp
from hypothesis import given
from hypothesis import strategies as st

from conftest import GOLDEN, X, Y, to_sympy
from milnor_index.exact_algebra import UniPoly
from milnor_index.gauss_winding import SingularPointOnCircle, circle_pullback, winding_index
from milnor_index.input_output import parse_polynomial
from milnor_index.milnor_arcs import NonIsolatedSingularities, singular_radius
from milnor_index.pipeline_cli import random_polynomial

t = sp.Symbol("t")


def _sym(p: UniPoly):
    return sp.Add(*[sp.Rational(c.numerator, c.denominator) * t**k for k, c in enumerate(p.c)])


def _proportional(pair, expected):
    a, b = (sp.sympify(e, locals={"t": t}) for e in expected)
    return sp.expand(_sym(pair[0]) * b - _sym(pair[1]) * a) == 0


@pytest.mark.parametrize("text,expected", [
    ("x^2 + y^2", ("1 - t**2", "2*t")),
    ("x*y", ("2*t", "1 - t**2")),
])
def test_pullback_directions(text, expected):
    assert _proportional(circle_pullback(parse_polynomial(text), 1), expected)


def test_pullback_broughton_has_no_common_zero():
    P, Q = circle_pullback(parse_polynomial("x^2*y + x"), 5)
    assert P.degree <= 4 and Q.degree <= 4
    g = sp.Poly(sp.gcd(_sym(P), _sym(Q)), t)
    assert g.degree() == 0 or not g.real_roots()


@pytest.mark.parametrize("text,index", [
    ("x^2 + y^2", 1),
    ("x*y", -1),
    ("x^2*y + x", 0),
    ("y^5 + x^2*y^3 - y", 2),
    ("x^3 - 3*x*y^2", -2),
])
def test_small_indices(text, index):
    f = parse_polynomial(text)
    assert winding_index(f, singular_radius(f) + 1) == index


def test_singular_point_on_circle():
    # the minimum (1, 0) sits on the unit circle
    with pytest.raises(SingularPointOnCircle, match="singular point on circle"):
        winding_index(parse_polynomial("(x - 1)^2 + y^2"), 1)


def numeric_winding(f, R, n=200_000):
    fx = sp.lambdify((X, Y), sp.diff(to_sympy(f), X), "numpy")
    fy = sp.lambdify((X, Y), sp.diff(to_sympy(f), Y), "numpy")
    th = np.linspace(0.0, 2 * np.pi, n + 1)
    x, y = float(R) * np.cos(th), float(R) * np.sin(th)
    u = np.broadcast_to(fx(x, y), th.shape).astype(float)
    v = np.broadcast_to(fy(x, y), th.shape).astype(float)
    ang = np.unwrap(np.arctan2(v, u))
    return round((ang[-1] - ang[0]) / (2 * np.pi))


@given(st.integers(0, 10_000), st.integers(2, 4))
def test_winding_matches_numeric_oracle(seed, degree):
    f = random_polynomial(random.Random(seed), degree, 4)
    try:
        R = singular_radius(f) + 1
    except NonIsolatedSingularities:
        return
    assert winding_index(f, R) == numeric_winding(f, R)


@pytest.mark.parametrize("text", GOLDEN)
def test_golden_winding_matches_numeric_oracle(golden_reports, text):
    rep = golden_reports[text]
    assert rep.index_winding == numeric_winding(rep.poly, rep.radius)
