"""Degree of the Gauss map of grad f on a large circle, by exact quadrant counting."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exact_algebra import (
    AlgebraError,
    BiPoly,
    ParamPoint,
    RealRoot,
    UniPoly,
    poly_gcd,
    real_roots,
    sign,
    squarefree_part,
)

# rational unit vectors used to rotate the chart's missing point
ROTATIONS: tuple[tuple[Fraction, Fraction], ...] = (
    (Fraction(1), Fraction(0)),
    (Fraction(0), Fraction(1)),
    (Fraction(3, 5), Fraction(4, 5)),
    (Fraction(-4, 5), Fraction(3, 5)),
    (Fraction(5, 13), Fraction(-12, 13)),
    (Fraction(-1), Fraction(0)),
    (Fraction(8, 17), Fraction(15, 17)),
)


class SingularPointOnCircle(AlgebraError):
    pass


@dataclass(frozen=True)
class CircleChart:
    """Rational parametrisation of the circle |q - center| = R.

    t = 0 maps to center + R*(c, s) and increasing t runs counterclockwise;
    the point center - R*(c, s) is reached only at t = infinity.
    """

    center: tuple[Fraction, Fraction]
    R: Fraction
    c: Fraction = Fraction(1)
    s: Fraction = Fraction(0)

    @property
    def X(self) -> UniPoly:
        a1 = self.center[0]
        R, c, s = self.R, self.c, self.s
        # a1(1+t^2) + R(c(1-t^2) - 2 s t)
        return UniPoly([a1 + R * c, -2 * R * s, a1 - R * c])

    @property
    def Y(self) -> UniPoly:
        a2 = self.center[1]
        R, c, s = self.R, self.c, self.s
        return UniPoly([a2 + R * s, 2 * R * c, a2 - R * s])

    @property
    def D(self) -> UniPoly:
        return UniPoly([1, 0, 1])

    def missing_point(self) -> tuple[Fraction, Fraction]:
        return (self.center[0] - self.R * self.c, self.center[1] - self.R * self.s)

    def point(self, t: Fraction) -> tuple[Fraction, Fraction]:
        d = 1 + t * t
        return (self.X(t) / d, self.Y(t) / d)

    def param_of_direction(self, w: tuple[Fraction, Fraction]) -> Fraction:
        """Chart parameter of the circle point in the direction of the
        rational unit vector w (w must not be the missing direction)."""
        # rotate w back by (c, s): u = (c*wx + s*wy, -s*wx + c*wy); t = tan(angle/2)
        ux = self.c * w[0] + self.s * w[1]
        uy = -self.s * w[0] + self.c * w[1]
        if ux == -1:
            raise ValueError("direction is the chart's missing point")
        return uy / (1 + ux)

    def angle(self, t: float) -> float:
        import math
        return (math.atan2(float(self.s), float(self.c)) + 2 * math.atan(t)) % (2 * math.pi)

    def anchor(self, t: RealRoot) -> ParamPoint:
        return ParamPoint(self.X, self.Y, self.D, t)


def circle_pullback(f: BiPoly, R, center=(0, 0), rotation: int = 0) -> tuple[UniPoly, UniPoly]:
    """Numerators P(t), Q(t) of f_x and f_y on the circle, denominators
    cleared by (1+t^2)^(d-1).  ``rotation`` picks the chart (0 standard,
    1 rotated by 90 degrees)."""
    c, s = ROTATIONS[rotation]
    chart = CircleChart((Fraction(center[0]), Fraction(center[1])), Fraction(R), c, s)
    return pullback_pair(f, chart)


def pullback_pair(f: BiPoly, chart: CircleChart) -> tuple[UniPoly, UniPoly]:
    d = max(f.degree, 1)
    fx, fy = f.diff("x"), f.diff("y")
    return (_pull(fx, chart, d - 1), _pull(fy, chart, d - 1))


def _pull(p: BiPoly, chart: CircleChart, k: int) -> UniPoly:
    """p on the circle times (1+t^2)^k, for k >= deg p."""
    base = p.substitute(chart.X, chart.Y, chart.D)
    extra = k - max(p.degree, 0)
    return base * chart.D ** extra if extra > 0 else base


def _quadrant(sx: int, sy: int) -> int:
    if sx > 0 and sy > 0:
        return 0
    if sx < 0 and sy > 0:
        return 1
    if sx < 0 and sy < 0:
        return 2
    return 3


@dataclass(frozen=True)
class CircleSignSequence:
    radius: Fraction
    samples: tuple[Fraction, ...]
    quadrants: tuple[int, ...]
    quarter_turns: int


def sample_points(roots: list[RealRoot]) -> list[Fraction]:
    """Rational points strictly separating sorted disjoint roots, plus one
    below and one above."""
    from .exact_algebra import rational_between
    if not roots:
        return [Fraction(0)]
    out = [roots[0].lo - 1]
    for a, b in zip(roots, roots[1:]):
        while not a.hi <= b.lo:
            a.tighten()
            b.tighten()
        out.append(a.hi if a.hi == b.lo else rational_between(a.hi, b.lo))
    out.append(roots[-1].hi + 1)
    return out


def sign_sequence(P: UniPoly, Q: UniPoly, chart: CircleChart) -> CircleSignSequence:
    if P.is_zero() or Q.is_zero():
        raise ValueError("rotate the vector field first")
    g = poly_gcd(P, Q)
    if g.degree > 0 and real_roots(g):
        raise SingularPointOnCircle("singular point on circle")
    prod = squarefree_part(P * Q)
    roots = real_roots(prod)
    samples = sample_points(roots)
    quads = []
    for s in samples:
        sp, sq = sign(P(s)), sign(Q(s))
        if sp == 0 or sq == 0:
            raise AlgebraError("sample hit a root")
        quads.append(_quadrant(sp, sq))
    total = 0
    n = len(quads)
    for i in range(n):
        a, b = quads[i], quads[(i + 1) % n]
        step = (b - a) % 4
        if step == 1:
            total += 1
        elif step == 3:
            total -= 1
        elif step == 2:
            raise SingularPointOnCircle("singular point on circle")
    return CircleSignSequence(chart.R, tuple(samples), tuple(quads), total)


def winding_index(f: BiPoly, R, center=(0, 0)) -> int:
    """Degree of grad f / |grad f| on the circle of radius R about center."""
    center = (Fraction(center[0]), Fraction(center[1]))
    fx, fy = f.diff("x"), f.diff("y")
    mp_ok = None
    for c, s in ROTATIONS:
        chart = CircleChart(center, Fraction(R), c, s)
        mx, my = chart.missing_point()
        if fx(mx, my) != 0 or fy(mx, my) != 0:
            mp_ok = chart
            break
    if mp_ok is None:
        raise SingularPointOnCircle("singular point on circle")
    P, Q = pullback_pair(f, mp_ok)
    if P.is_zero() or Q.is_zero():
        # rotate the field by (3/5, 4/5); the degree is unchanged
        P, Q = P * Fraction(3, 5) - Q * Fraction(4, 5), P * Fraction(4, 5) + Q * Fraction(3, 5)
    if P.is_zero() and Q.is_zero():
        raise SingularPointOnCircle("gradient vanishes identically")
    seq = sign_sequence(P, Q, mp_ok)
    if seq.quarter_turns % 4:
        raise AlgebraError("quarter-turn total not divisible by 4")
    return seq.quarter_turns // 4
