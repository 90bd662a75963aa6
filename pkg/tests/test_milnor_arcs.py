from fractions import Fraction

import mpmath
import pytest
import sympy as sp

from conftest import CUSP_FIVE, GOLDEN, PARABOLA, TWO_POINTS, X, Y, analysis, same_up_to_constant, to_sympy
from milnor_index.exact_algebra import refine_to_sign
from milnor_index.input_output import parse_polynomial
from milnor_index.milnor_arcs import (
    DegenerateCenter,
    choose_radius,
    enumerate_arcs,
    index_polynomial,
    is_generic_center,
    milnor_polynomial,
)
from milnor_index.pipeline_cli import arc_table, radius_stable

HALF = Fraction(1, 2)


@pytest.mark.parametrize("text,center,expected", [
    (CUSP_FIVE, (0, 0), X * (1 - 3 * X**2 * Y**2 - 3 * Y**4)),
    (TWO_POINTS, (0, 0), X**2 + X * Y - X**3 * Y - Y**2 + X * Y**3),
    ("x^2 + y^2", (1, 0), Y),
])
def test_milnor_polynomial(text, center, expected):
    h = milnor_polynomial(parse_polynomial(text), center)
    assert same_up_to_constant(to_sympy(h), expected)


def test_radial_polynomial_has_no_milnor_curve():
    with pytest.raises(DegenerateCenter):
        milnor_polynomial(parse_polynomial("x^2 + y^2"), (0, 0))


@pytest.mark.parametrize("text,center,accepted", [
    ("x^2 + y^2", (0, 0), False),
    ("x^2 + y^2", (1, 0), True),
    (TWO_POINTS, (0, 0), True),
])
def test_center_certificate(text, center, accepted):
    assert is_generic_center(parse_polynomial(text), center).accepted is accepted


def test_shifted_round_radius():
    # every exceptional point of the shifted round example lies within distance 2
    R = choose_radius(parse_polynomial("x^2 + y^2"), (1, 0))
    assert R > 2


def test_radius_stability_broughton():
    rep = analysis("x^2*y + x")
    assert radius_stable(rep.poly, rep)


def test_degenerate_radius_request():
    with pytest.raises(DegenerateCenter):
        choose_radius(parse_polynomial("x^2 + y^2"), (0, 0))


@pytest.mark.parametrize("text,count", [(CUSP_FIVE, 6), (TWO_POINTS, 8), (PARABOLA, 8)])
def test_arc_counts(text, count):
    assert len(analysis(text).arcs) == count


def test_shifted_round_indices():
    f = parse_polynomial("x^2 + y^2")
    arcs = enumerate_arcs(f, (1, 0), choose_radius(f, (1, 0)))
    by_side = {round(a.approx()[0]) > 1: a.arc_index for a in arcs}
    # the far side of the fibre circles bends inward, the near side outward
    assert by_side == {False: HALF, True: -HALF}


def test_two_point_example_indices():
    idx = [a.arc_index for a in analysis(TWO_POINTS).arcs]
    assert idx == [HALF, -HALF, -HALF, -HALF, HALF, -HALF, -HALF, -HALF]


# finite-difference oracle for the sign of W along the fibre through an anchor

mpmath.mp.dps = 90


def _anchor_point(arc):
    t = arc.anchor.t
    t.refine_to_width(Fraction(1, 2**280))
    m = t.mid
    d = arc.anchor.D(m)
    x, y = arc.anchor.X(m) / d, arc.anchor.Y(m) / d
    return mpmath.mpf(x.numerator) / x.denominator, mpmath.mpf(y.numerator) / y.denominator


def _fibre_rho_curvature(f, a, q0, s):
    F = sp.lambdify((X, Y), to_sympy(f), "mpmath")
    Fx = sp.lambdify((X, Y), sp.diff(to_sympy(f), X), "mpmath")
    Fy = sp.lambdify((X, Y), sp.diff(to_sympy(f), Y), "mpmath")
    c = F(*q0)
    gx, gy = Fx(*q0), Fy(*q0)
    n = mpmath.sqrt(gx**2 + gy**2)
    tx, ty = -gy / n, gx / n

    def on_fibre(step):
        x, y = q0[0] + step * tx, q0[1] + step * ty
        for _ in range(60):
            gx, gy = Fx(x, y), Fy(x, y)
            r = (F(x, y) - c) / (gx**2 + gy**2)
            x, y = x - r * gx, y - r * gy
            if abs(r) < mpmath.mpf(10) ** -50:
                break
        return (x - a[0]) ** 2 + (y - a[1]) ** 2

    rho0 = (q0[0] - a[0]) ** 2 + (q0[1] - a[1]) ** 2
    return (on_fibre(s) - 2 * rho0 + on_fibre(-s)) / s**2


def _converged_curvature(f, a, q0):
    """Second difference of rho along the fibre, halving the step until two
    successive estimates agree to 10%; their gap bounds the truncation error."""
    scale = max(1, abs(q0[0]) + abs(q0[1]))
    prev = _fibre_rho_curvature(f, a, q0, mpmath.mpf(10) ** -4 * scale)
    for e in range(5, 30):
        cur = _fibre_rho_curvature(f, a, q0, mpmath.mpf(10) ** -e * scale)
        if abs(cur - prev) * 10 < abs(cur):
            return cur
        prev = cur
    raise AssertionError("finite differences did not settle")


@pytest.mark.parametrize("text", GOLDEN)
def test_w_sign_matches_fibre_curvature(text):
    rep = analysis(text)
    f, a = rep.poly, tuple(mpmath.mpf(float(v)) for v in rep.center)
    W = index_polynomial(f, rep.center)
    for arc in rep.arcs:
        d = _converged_curvature(f, a, _anchor_point(arc))
        w = refine_to_sign(W, arc.anchor)
        assert w == mpmath.sign(d)
        assert arc.arc_index == (HALF if w < 0 else -HALF)


def test_arc_table_rows():
    rows = arc_table(analysis(TWO_POINTS))
    assert [r[0] for r in rows] == ["1/2", "-1/2", "-1/2", "-1/2", "1/2", "-1/2", "-1/2", "-1/2"]
