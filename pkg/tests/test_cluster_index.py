from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import BROUGHTON, CUSP_FIVE, PARABOLA, TWO_POINTS, analysis
from milnor_index.cluster_index import (
    ClusterContradiction,
    ParityViolation,
    Tally,
    build_clusters,
    index_via_arcs,
    index_via_clusters,
    tally,
)
from milnor_index.exact_algebra import RealRoot
from milnor_index.infinity_analysis import MINUS_INF, PLUS_INF, LimitValue, ProjectivePoint
from milnor_index.milnor_arcs import ArcRecord

HALF = Fraction(1, 2)
ZERO = LimitValue("finite", RealRoot.rational(Fraction(0)))
P_X, P_Y = ProjectivePoint(1, 0), ProjectivePoint(0, 1)


def arc(k, idx, direction=1, limit=PLUS_INF, point=P_X):
    return ArcRecord(k, None, Fraction(1), Fraction(idx), direction, 0.0, limit, point)


def test_two_points_clusters():
    clusters = analysis(TWO_POINTS).clusters
    assert sorted(c.positions for c in clusters) == [[2], [3, 4, 5], [6], [7, 0, 1]]
    by_pos = {tuple(c.positions): c for c in clusters}
    assert by_pos[(7, 0, 1)].kind == "vanishing_at_infinity"
    assert by_pos[(7, 0, 1)].total_index == -HALF
    assert by_pos[(2,)].kind == "vanishing"
    assert by_pos[(2,)].attached_point == P_Y


def test_cusp_five_single_arc_clusters():
    clusters = analysis(CUSP_FIVE).clusters
    assert len(clusters) == 6
    assert all(len(c.members) == 1 for c in clusters)
    finite = [c for c in clusters if c.limit.is_finite]
    assert len(finite) == 4 and all(c.kind == "splitting" for c in finite)


def test_one_cluster_when_everything_agrees():
    arcs = [arc(k, i) for k, i in enumerate([HALF, -HALF, HALF, -HALF])]
    clusters = build_clusters(arcs)
    assert len(clusters) == 1 and clusters[0].kind == "even"


def test_cyclic_wrap_joins_first_and_last():
    arcs = [arc(0, -HALF), arc(1, HALF, -1, ZERO), arc(2, -HALF, -1, MINUS_INF), arc(3, HALF)]
    assert sorted(c.positions for c in build_clusters(arcs)) == [[1], [2], [3, 0]]


@pytest.mark.parametrize("indices", [[HALF, HALF], [HALF, HALF, HALF]])
def test_cluster_contradiction(indices):
    arcs = [arc(k, i, limit=ZERO) for k, i in enumerate(indices)]
    with pytest.raises(ClusterContradiction, match="cluster index contradiction"):
        build_clusters(arcs)


def test_positive_cluster_at_infinity_is_rejected():
    with pytest.raises(ClusterContradiction):
        build_clusters([arc(0, HALF)])


@pytest.mark.parametrize("text,which,point,count,Va_inf", [
    (BROUGHTON, "Sp", P_Y, 2, 4),
    (CUSP_FIVE, "Sp", P_X, 4, 2),
    (TWO_POINTS, "Va", P_Y, 2, 2),
])
def test_tallies(text, which, point, count, Va_inf):
    t = analysis(text).tally
    assert t.get(which, point, 0) == count
    assert t.Va_inf == Va_inf
    other = "Va" if which == "Sp" else "Sp"
    assert sum(k for *_, k in getattr(t, other)) == 0


@pytest.mark.parametrize("text,index", [(BROUGHTON, 0), (CUSP_FIVE, 2), (TWO_POINTS, -1), (PARABOLA, 1)])
def test_index_from_clusters(text, index):
    assert index_via_clusters(analysis(text).tally) == index


def test_parity_violation():
    with pytest.raises(ParityViolation, match="parity violation"):
        index_via_clusters(Tally(Va_inf=1))


def test_no_arcs_means_index_one():
    assert index_via_arcs([]) == 1


def _labels(vals):
    return [round(float(v), 9) for v in vals]


@pytest.mark.parametrize("text,at_inf,critical", [
    (BROUGHTON, [0.0], []),
    (PARABOLA, [0.0], [-0.25]),
    ("x^2 + y^2", [], [0.0]),
])
def test_atypical_values(text, at_inf, critical):
    rep = analysis(text)
    assert _labels(rep.atypical_at_infinity) == at_inf
    assert _labels(rep.critical_values) == critical


@st.composite
def cluster_layouts(draw):
    """Arcs built cluster by cluster so every run obeys the parity rules."""
    arcs, k = [], 0
    prev = None
    for _ in range(draw(st.integers(1, 6))):
        kind = draw(st.sampled_from(["inf", "split", "van", "even"]))
        direction = draw(st.sampled_from([1, -1]))
        lim = {"inf": PLUS_INF if direction > 0 else MINUS_INF}.get(kind, ZERO)
        if (lim, direction) == prev:
            direction = -direction
            lim = PLUS_INF if kind == "inf" and direction > 0 else (MINUS_INF if kind == "inf" else ZERO)
        prev = (lim, direction)
        if kind == "even":
            m = 2 * draw(st.integers(1, 2))
            idx = [HALF if j % 2 else -HALF for j in range(m)]
        else:
            total = HALF if kind == "split" else -HALF
            idx = [total] + [HALF, -HALF] * draw(st.integers(0, 1))
        for i in idx:
            arcs.append(arc(k, i, direction, lim, P_X))
            k += 1
    return arcs


@given(cluster_layouts())
def test_cluster_sum_matches_arc_sum(arcs):
    if len(arcs) > 1 and arcs[0].direction == arcs[-1].direction and arcs[0].limit.same_as(arcs[-1].limit):
        return
    ind_arcs = 1 + sum(a.arc_index for a in arcs)
    if ind_arcs.denominator != 1:
        return
    assert index_via_clusters(tally(build_clusters(arcs))) == ind_arcs
