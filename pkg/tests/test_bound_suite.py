from fractions import Fraction
from types import SimpleNamespace

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import BROUGHTON, CUSP_FIVE, GOLDEN, PARABOLA, TWO_POINTS, analysis
from milnor_index.bound_suite import evaluate_bounds, nn_floor


def profile(R=1, S=0, K=0, delta=0, r=0, s=0, exact=True):
    return SimpleNamespace(deg_R_red=R, deg_S=S, deg_K=K, delta=delta, r_p=r, s_p=s, exact=exact)


@pytest.mark.parametrize("x,expected", [
    (Fraction(-1, 2), 0), (Fraction(-3), 0), (0, 0), (Fraction(5, 2), 2), (Fraction(7, 3), 2),
])
def test_nn_floor(x, expected):
    assert nn_floor(x) == expected


def _bounds(text):
    return analysis(text).bounds


def test_five_arc_example_refined_equality():
    b = _bounds(CUSP_FIVE)
    assert b.value("refined") == 2 == analysis(CUSP_FIVE).index


def test_parabola_example_refined_and_sign_gap():
    b = _bounds(PARABOLA)
    assert b.value("refined") == 3
    assert b.value("signgap") == 2
    assert b["signgap"].hard


def test_two_points_linear_bound():
    b = _bounds(TWO_POINTS)
    assert [b.value(n) for n in ("linear", "refined", "delta")] == [1, 1, 1]


def test_two_points_sign_gap():
    assert _bounds(TWO_POINTS).value("signgap") == -1


def test_broughton_single_point_case():
    rep = analysis(BROUGHTON)
    assert rep.bounds.value("l1_case") == 0 and rep.index == 0


@pytest.mark.parametrize("text", GOLDEN)
def test_durfee_and_bezout(text):
    rep = analysis(text)
    assert rep.bounds["durfee"].satisfied and rep.bounds["bezout"].satisfied
    assert rep.index <= max(1, rep.degree - 3)


def test_formula_with_two_transversal_points():
    # two smooth transversal germs, one real line each, both points in the fibre closure
    b = evaluate_bounds(-1, [profile(r=1, s=1), profile(r=1, s=1)], 2, 4, 4)
    assert [b.value(n) for n in ("linear", "refined", "refined2", "delta")] == [1, 1, 1, 1]


def test_formula_sign_gap_counts_one_side_pairs():
    b = evaluate_bounds(1, [profile(R=2, S=2, r=5, s=1)], 1, 6, 6)
    assert b.value("refined") == 3 and b.value("signgap") == 2


def test_inexact_profile_makes_sign_gap_soft():
    b = evaluate_bounds(5, [profile(r=None, s=None, exact=False)], 0, 4, 2)
    assert not b["signgap"].hard
    assert b["signgap"] not in b.violations


def test_empty_fibre_closure_forces_index_one():
    assert evaluate_bounds(1, [], 0, 2, 0)["l1_case"].satisfied
    assert not evaluate_bounds(-1, [], 0, 2, 0)["l1_case"].satisfied


@given(
    st.lists(st.tuples(st.integers(0, 5), st.integers(0, 3), st.integers(0, 3), st.integers(0, 6)),
             max_size=4),
    st.integers(0, 3), st.integers(2, 8), st.integers(-8, 8),
)
def test_refinements_never_exceed_linear(raw, n_Lf, d, index):
    profs = [profile(R, S, K, delta) for R, S, K, delta in raw]
    d_Re = sum(R + S for R, S, _, _ in raw)
    b = evaluate_bounds(index, profs, n_Lf, d, d_Re)
    for name in ("refined", "refined2", "delta", "signgap"):
        assert b.value(name) <= b.value("linear")
    for bound in b.bounds:
        if bound.name not in ("bezout", "l1_case"):
            assert bound.satisfied == (index <= bound.value)
