"""Milnor set of the distance function, generic centers, large radii and arcs."""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Optional

from .exact_algebra import (
    AlgebraError,
    BiPoly,
    ParamPoint,
    RealRoot,
    UniPoly,
    real_roots,
    refine_to_sign,
    resultant,
    root_radius_bound,
    sign,
)
from .gauss_winding import ROTATIONS, CircleChart

HALF = Fraction(1, 2)


class DegenerateCenter(AlgebraError):
    pass


class NonIsolatedSingularities(AlgebraError):
    pass


class NonTransverseCircle(AlgebraError):
    pass


def _center(a) -> tuple[Fraction, Fraction]:
    return (Fraction(a[0]), Fraction(a[1]))


def milnor_polynomial(f: BiPoly, a=(0, 0)) -> BiPoly:
    """(y - a2) f_x - (x - a1) f_y, divided by its content."""
    a1, a2 = _center(a)
    X, Y = BiPoly.x() - a1, BiPoly.y() - a2
    h = Y * f.diff("x") - X * f.diff("y")
    if h.is_zero():
        raise DegenerateCenter("degenerate center")
    return h.primitive()


def index_polynomial(f: BiPoly, a=(0, 0)) -> BiPoly:
    """W: half the second derivative of the squared distance along the fibre."""
    a1, a2 = _center(a)
    X, Y = BiPoly.x() - a1, BiPoly.y() - a2
    fx, fy = f.diff("x"), f.diff("y")
    fxx, fxy, fyy = fx.diff("x"), fx.diff("y"), fy.diff("y")
    return (fx * fx + fy * fy - fy * (Y * fxx - X * fxy) + fx * (Y * fxy - X * fyy))


def direction_polynomial(f: BiPoly, a=(0, 0)) -> BiPoly:
    """Radial derivative (q - a) . grad f; its sign on an arc says whether f
    increases outward."""
    a1, a2 = _center(a)
    return (BiPoly.x() - a1) * f.diff("x") + (BiPoly.y() - a2) * f.diff("y")


def tangency_polynomial(h: BiPoly, a=(0, 0)) -> BiPoly:
    a1, a2 = _center(a)
    return (BiPoly.y() - a2) * h.diff("x") - (BiPoly.x() - a1) * h.diff("y")


def system_radius(p: BiPoly, q: BiPoly, a=(0, 0)) -> Fraction:
    """Distance from a beyond which p = q = 0 has no real solution.

    Raises DegenerateResultant-like AlgebraError when the system has a
    common curve."""
    a1, a2 = _center(a)
    rx = resultant(p, q, "y")
    ry = resultant(p, q, "x")
    if rx.is_zero() or ry.is_zero():
        raise AlgebraError("resultant vanishes identically")
    bx = root_radius_bound(rx) if rx.degree > 0 else Fraction(0)
    by = root_radius_bound(ry) if ry.degree > 0 else Fraction(0)
    return bx + abs(a1) + by + abs(a2)


def singular_radius(f: BiPoly, a=(0, 0)) -> Fraction:
    fx, fy = f.diff("x"), f.diff("y")
    a1, a2 = _center(a)
    if fx.is_zero() or fy.is_zero():
        g = fy if fx.is_zero() else fx
        # f depends on one variable: any zero of g, real or not, is a line
        # of critical points of the complexification
        if g.degree > 0:
            raise NonIsolatedSingularities("non-isolated singularities")
        return Fraction(0)
    try:
        return system_radius(fx, fy, a)
    except AlgebraError:
        raise NonIsolatedSingularities("non-isolated singularities") from None


def has_isolated_singularities(f: BiPoly) -> bool:
    try:
        singular_radius(f)
    except NonIsolatedSingularities:
        return False
    return True


@dataclass(frozen=True)
class CenterCertificate:
    center: tuple[Fraction, Fraction]
    accepted: bool
    reason: str = ""
    # radius bounds of the certified systems, keyed by name
    radii: tuple = ()

    @property
    def radius(self) -> Fraction:
        return max((r for _, r in self.radii), default=Fraction(0))


def is_generic_center(f: BiPoly, a=(0, 0)) -> CenterCertificate:
    a = _center(a)
    try:
        h = milnor_polynomial(f, a)
    except DegenerateCenter:
        return CenterCertificate(a, False, "h vanishes identically")
    if h.degree <= 0:
        return CenterCertificate(a, False, "h is constant")
    W = index_polynomial(f, a)
    T = tangency_polynomial(h, a)
    radii = []
    try:
        radii.append(("singular", singular_radius(f, a)))
    except NonIsolatedSingularities:
        return CenterCertificate(a, False, "non-isolated singularities")
    for name, q in (("index", W), ("tangency", T)):
        try:
            radii.append((name, system_radius(h, q, a)))
        except AlgebraError:
            # also catches non-squarefree h through the tangency system
            return CenterCertificate(a, False, f"{name} system not finite")
    return CenterCertificate(a, True, "", tuple(radii))


def center_sequence():
    """Deterministic list of candidate centers."""
    yield from [(0, 0), (1, 0), (0, 1), (1, 1), (2, 1)]
    k = 2
    while True:
        yield (Fraction(k, 2 * k - 1), Fraction(1, k + 1))
        yield (Fraction(-k, 3), Fraction(k + 1, 2))
        k += 1


def choose_center(f: BiPoly, center=None, attempts: int = 40) -> CenterCertificate:
    if center is not None:
        cert = is_generic_center(f, center)
        if not cert.accepted:
            if cert.reason == "non-isolated singularities":
                raise NonIsolatedSingularities(cert.reason)
            raise DegenerateCenter(f"center rejected: {cert.reason}")
        return cert
    seq = center_sequence()
    for _ in range(attempts):
        cert = is_generic_center(f, next(seq))
        if cert.accepted:
            return cert
        if cert.reason == "non-isolated singularities":
            raise NonIsolatedSingularities(cert.reason)
    raise DegenerateCenter("no generic center found")


def choose_radius(f: BiPoly, a=(0, 0), cert: CenterCertificate | None = None) -> Fraction:
    """Integer radius beyond every exceptional point of the Milnor set."""
    if cert is None or not cert.accepted:
        cert = is_generic_center(f, a)
        if not cert.accepted:
            raise DegenerateCenter(cert.reason)
    return Fraction(math.floor(cert.radius) + 1)


# ---------------------------------------------------------------------------
# arcs


@dataclass(frozen=True)
class ArcRecord:
    cyclic_position: int
    anchor: ParamPoint
    radius: Fraction
    arc_index: Fraction
    direction: int  # +1 if f increases outward, -1 otherwise
    angle: float
    limit: object = None
    point_at_infinity: object = None
    side: int = 0
    tangent: object = None
    outer_anchor: Optional[ParamPoint] = None

    @property
    def increasing(self) -> bool:
        return self.direction > 0

    def approx(self) -> tuple[float, float]:
        return self.anchor.approx()


def _pull_to_circle(p: BiPoly, chart: CircleChart) -> UniPoly:
    return p.substitute(chart.X, chart.Y, chart.D)


def circle_chart(h: BiPoly, a, R, avoid=(), avoid_dirs=()) -> CircleChart:
    """A chart whose missing point is not on {h = 0} (nor on the extra curves)
    and whose missing direction is none of ``avoid_dirs``."""
    a = _center(a)
    for c, s in ROTATIONS:
        ch = CircleChart(a, Fraction(R), c, s)
        mx, my = ch.missing_point()
        if (-c, -s) in avoid_dirs:
            continue
        if h(mx, my) != 0 and all(q(mx, my) != 0 for q in avoid):
            return ch
    raise AlgebraError("no admissible chart")


def circle_anchors(h: BiPoly, chart: CircleChart) -> list[RealRoot]:
    H = _pull_to_circle(h, chart)
    if H.is_zero():
        raise NonTransverseCircle("circle contained in the Milnor set")
    roots = real_roots(H)
    for r in roots:
        if r.multiplicity > 1:
            raise NonTransverseCircle("non-transverse circle")
    return roots


def order_from_direction(roots: list[RealRoot], t0: Fraction) -> list[int]:
    """Indices of roots in counterclockwise order starting at parameter t0."""
    after = [i for i, r in enumerate(roots) if r.compare(t0) >= 0]
    before = [i for i, r in enumerate(roots) if r.compare(t0) < 0]
    return after + before


def arc_index(f: BiPoly, a, anchor: ParamPoint, W: BiPoly | None = None,
              budget: int = 4000) -> Fraction:
    W = index_polynomial(f, a) if W is None else W
    s = refine_to_sign(W, anchor, budget)
    if s == 0:
        raise AlgebraError("index-0 arc: center not generic")
    return HALF if s < 0 else -HALF


def enumerate_arcs(f: BiPoly, a=(0, 0), R=None, h: BiPoly | None = None,
                   budget: int = 4000) -> list[ArcRecord]:
    """Arcs of the Milnor set met by the circle of radius R, counterclockwise
    from the positive x direction."""
    a = _center(a)
    h = milnor_polynomial(f, a) if h is None else h
    if R is None:
        R = choose_radius(f, a)
    chart = circle_chart(h, a, R)
    roots = circle_anchors(h, chart)
    W = index_polynomial(f, a)
    E = direction_polynomial(f, a)
    t0 = _start_param(chart)
    out = []
    for pos, i in enumerate(order_from_direction(roots, t0)):
        pt = chart.anchor(roots[i])
        idx = arc_index(f, a, pt, W, budget)
        e = refine_to_sign(E, pt, budget)
        if e == 0:
            raise AlgebraError("arc anchor at a critical point")
        out.append(ArcRecord(pos, pt, Fraction(R), idx, e,
                             chart.angle(float(roots[i].mid))))
    return out


def _start_param(chart: CircleChart) -> Fraction:
    try:
        return chart.param_of_direction((Fraction(1), Fraction(0)))
    except ValueError:
        # the positive x direction is the missing point: start just after it
        return -Fraction(10) ** 12


# ---------------------------------------------------------------------------
# following arcs outward

PYTHAGOREAN = tuple(
    (Fraction(1 - q * q, 1 + q * q), Fraction(2 * q, 1 + q * q))
    for q in (Fraction(1, 3), Fraction(2, 7), Fraction(-3, 5), Fraction(5, 11),
              Fraction(-1, 4), Fraction(4, 9), Fraction(7, 3), Fraction(-7, 2))
)


def ray_crossings(h: BiPoly, a, w, r0: Fraction, r1: Fraction) -> int:
    """Signed number of Milnor-set crossings of the ray a + u w, r0 < u < r1;
    a crossing counts +1 when the arc, followed outward, passes the ray
    counterclockwise.  Assumes no exceptional points beyond r0."""
    a1, a2 = _center(a)
    wx, wy = w
    # restriction to the ray, as polynomials in u
    xs, ys = UniPoly([a1, wx]), UniPoly([a2, wy])
    g = h.substitute(xs, ys)
    hperp = (h.diff("x") * (-wy) + h.diff("y") * wx).substitute(xs, ys)
    if g.is_zero():
        raise AlgebraError("ray inside the Milnor set")
    total = 0
    for r in real_roots(g):
        if r.compare(r0) <= 0 or r.compare(r1) >= 0:
            continue
        if r.multiplicity % 2 == 0:
            continue
        # sign of g just after the root, from the odd-order derivative
        gk = g
        for _ in range(r.multiplicity):
            gk = gk.derivative()
        sigma = r.sign_of(gk)
        hv = r.sign_of(hperp)
        if sigma == 0 or hv == 0:
            raise AlgebraError("degenerate ray crossing")
        total += -sigma * hv
    return total


def transport_anchors(h: BiPoly, a, r0: Fraction, r1: Fraction,
                      inner: CircleChart, inner_roots: list[RealRoot],
                      outer: CircleChart, outer_roots: list[RealRoot]) -> list[int]:
    """For each inner root, the index of the outer root on the same arc."""
    n = len(inner_roots)
    if n != len(outer_roots):
        raise AlgebraError("arc count changed between radii")
    if n == 0:
        return []
    a = _center(a)
    for w in PYTHAGOREAN:
        p0 = (a[0] + r0 * w[0], a[1] + r0 * w[1])
        p1 = (a[0] + r1 * w[0], a[1] + r1 * w[1])
        if h(*p0) == 0 or h(*p1) == 0:
            continue
        try:
            ti = inner.param_of_direction(w)
            to = outer.param_of_direction(w)
        except ValueError:
            continue
        N = ray_crossings(h, a, w, r0, r1)
        oi = order_from_direction(inner_roots, ti)
        oo = order_from_direction(outer_roots, to)
        out = [0] * n
        for k in range(n):
            out[oi[(k - N) % n]] = oo[k]
        return out
    raise AlgebraError("no admissible ray")


def with_outer_anchors(arcs: list[ArcRecord], h: BiPoly, a, R1: Fraction,
                       chart_avoid=(), avoid_dirs=()) -> tuple[list[ArcRecord], CircleChart]:
    """Attach to every arc its anchor on the larger circle of radius R1."""
    if not arcs:
        return arcs, circle_chart(h, a, R1, chart_avoid, avoid_dirs)
    R0 = arcs[0].radius
    inner = circle_chart(h, a, R0)
    inner_roots = circle_anchors(h, inner)
    # arcs store their own roots; match them to this chart by position
    t0 = _start_param(inner)
    order = order_from_direction(inner_roots, t0)
    outer = circle_chart(h, a, R1, chart_avoid, avoid_dirs)
    outer_roots = circle_anchors(h, outer)
    if R1 == R0 and not avoid_dirs:
        mapping = list(range(len(inner_roots)))
        outer, outer_roots = inner, inner_roots
    else:
        mapping = transport_anchors(h, a, R0, R1, inner, inner_roots, outer, outer_roots)
    res = []
    for arc in arcs:
        i = order[arc.cyclic_position]
        res.append(replace(arc, outer_anchor=outer.anchor(outer_roots[mapping[i]])))
    return res, outer


def winding_from_arcs(arcs: list[ArcRecord]) -> Fraction:
    return 1 + sum((arc.arc_index for arc in arcs), Fraction(0))
