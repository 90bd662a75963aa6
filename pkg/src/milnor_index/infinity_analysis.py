"""Behaviour at the line at infinity: points of {f_d = 0}, germs and tangent
cones of the Milnor curve there, limits and endpoints of Milnor arcs, and the
set of points at infinity reached by the fibres of f.

Directions at infinity are handled through *sectors*: rational unit vectors
are placed between consecutive directions, and beyond a computed radius no
relevant curve meets the rays through them.  Everything that is decided on a
large circle then persists all the way to infinity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import cmp_to_key
from math import gcd

from .branches import (
    ConeLine,
    TangentCone,
    classify_lines,
    germ_at_infinity,
    intersection_with_infinity,
    line_label,
    tangent_cone as _cone_of_germ,
)
from .critical_values import critical_values
from .exact_algebra import (
    AlgebraError,
    BiPoly,
    ParamPoint,
    RealRoot,
    UndecidedSign,
    UniPoly,
    _quot_range,
    _range_of,
    detect_rational,
    format_rational,
    real_roots,
    refine_to_sign,
    root_radius_bound,
    sign,
    squarefree_part,
    fibre_resultant,
)
from .gauss_winding import ROTATIONS, CircleChart, sample_points
from .milnor_arcs import (
    ArcRecord,
    circle_anchors,
    circle_chart,
    milnor_polynomial,
    with_outer_anchors,
)


class LimitUndecided(AlgebraError):
    """The sign budget ran out before an arc's limit was pinned down."""

    def __init__(self, position: int, candidates: list["LimitValue"]):
        names = ", ".join(c.label() for c in candidates)
        super().__init__(f"limit undecided for arc {position}; candidates: {names}")
        self.position = position
        self.candidates = candidates


# ---------------------------------------------------------------------------
# points and directions at infinity


class ProjectivePoint:
    """A real point [a:b:0].  Rational points keep coprime integers with
    b > 0, or b = 0 and a > 0; irrational ones are [1:m:0] with m a real
    algebraic slope."""

    __slots__ = ("a", "b", "slope")

    def __init__(self, a: int = 1, b: int = 0, slope: RealRoot | None = None):
        self.slope = slope
        if slope is not None:
            self.a, self.b = 1, None
            return
        if a == 0 and b == 0:
            raise ValueError("[0:0:0] is not a point")
        g = gcd(a, b)
        a, b = a // g, b // g
        if b < 0 or (b == 0 and a < 0):
            a, b = -a, -b
        self.a, self.b = a, b

    @classmethod
    def from_slope(cls, m: RealRoot) -> "ProjectivePoint":
        if m.exact is not None:
            return cls(m.exact.denominator, m.exact.numerator)
        return cls(slope=m)

    @property
    def is_rational(self) -> bool:
        return self.slope is None

    def label(self) -> str:
        if self.slope is None:
            return f"[{self.a}:{self.b}:0]"
        return f"[1:{float(self.slope):.12g}:0]"

    __str__ = label

    def __repr__(self) -> str:
        return f"ProjectivePoint({self.label()})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, ProjectivePoint):
            return NotImplemented
        if self.slope is None or other.slope is None:
            return self.slope is None and other.slope is None \
                and (self.a, self.b) == (other.a, other.b)
        return self.slope.same_as(other.slope)

    def __hash__(self) -> int:
        if self.slope is None:
            return hash((self.a, self.b))
        return hash(self.slope.poly)

    def sort_key(self):
        """Angle of the representative direction in [0, pi)."""
        if self.slope is None:
            return math.atan2(self.b, self.a) % math.pi
        return math.atan(float(self.slope)) % math.pi

    def direction_key(self, side: int):
        if self.slope is not None:
            return (0 if side > 0 else 2, self.slope)
        return _vec_key((Fraction(side * self.a), Fraction(side * self.b)))


def _vec_key(w):
    x, y = w
    if x > 0:
        return (0, Fraction(y) / x)
    if x < 0:
        return (2, Fraction(y) / x)
    return (1, None) if y > 0 else (3, None)


def _cmp_key(k1, k2) -> int:
    if k1[0] != k2[0]:
        return -1 if k1[0] < k2[0] else 1
    if k1[0] in (1, 3):
        return 0
    s1, s2 = k1[1], k2[1]
    r1, r2 = isinstance(s1, RealRoot), isinstance(s2, RealRoot)
    if not r1 and not r2:
        return sign(s1 - s2)
    if r1 and not r2:
        return s1.compare(s2)
    if r2 and not r1:
        return -s2.compare(s1)
    if s1.same_as(s2):
        return 0
    return -1 if s1.less_than(s2) else 1


def _key_angle(k) -> float:
    cls, s = k
    if cls == 1:
        return math.pi / 2
    if cls == 3:
        return 3 * math.pi / 2
    v = math.atan(float(s))
    return v if cls == 0 else math.pi + v


@dataclass
class Direction:
    """A semi-direction at infinity: the point p approached with a*x + b*y
    of the sign ``side``."""
    point: ProjectivePoint
    side: int

    @property
    def key(self):
        return self.point.direction_key(self.side)

    @property
    def angle(self) -> float:
        return _key_angle(self.key)


def unit_vector(theta: float, den: int) -> tuple[Fraction, Fraction]:
    """A rational point of the unit circle near angle theta."""
    theta = math.remainder(theta, 2 * math.pi)
    if abs(theta) > math.pi / 2:
        w = unit_vector(theta - math.pi, den)
        return (-w[0], -w[1])
    q = Fraction(math.tan(theta / 2)).limit_denominator(den)
    d = 1 + q * q
    return ((1 - q * q) / d, 2 * q / d)


@dataclass
class SectorMap:
    """Rational unit boundary vectors in counterclockwise order; region j
    lies between boundary j and boundary j+1 and holds at most one
    direction."""
    boundaries: list[tuple[Fraction, Fraction]]
    region_direction: list[Direction | None]

    def region_of(self, d: Direction) -> int:
        for j, dd in enumerate(self.region_direction):
            if dd is not None and dd.point == d.point and dd.side == d.side:
                return j
        raise KeyError(d)

    def region_bounds(self, j: int):
        n = len(self.boundaries)
        return self.boundaries[j], self.boundaries[(j + 1) % n]

    def locate(self, chart: CircleChart, t: RealRoot) -> int:
        """Region of the circle point with chart parameter t."""
        params = [chart.param_of_direction(w) for w in self.boundaries]
        order = sorted(range(len(params)), key=lambda j: params[j])
        k = 0
        for j in order:
            c = t.compare(params[j])
            if c == 0:
                raise AlgebraError("point on a sector boundary")
            if c > 0:
                k += 1
        n = len(order)
        return order[k - 1] if 0 < k else order[n - 1]


def _strictly_between(k_lo, k, k_hi, single: bool) -> bool:
    if single:
        return _cmp_key(k, k_lo) != 0
    a, b = _cmp_key(k_lo, k), _cmp_key(k, k_hi)
    if _cmp_key(k_lo, k_hi) < 0:
        return a < 0 and b < 0
    return a < 0 or b < 0


def build_sectors(directions: list[Direction], spread: float = math.radians(40)) -> SectorMap:
    dirs = sorted(directions, key=cmp_to_key(lambda u, v: _cmp_key(u.key, v.key)))
    n = len(dirs)
    if n == 0:
        q = [(Fraction(3, 5), Fraction(4, 5)), (Fraction(-4, 5), Fraction(3, 5)),
             (Fraction(-3, 5), Fraction(-4, 5)), (Fraction(4, 5), Fraction(-3, 5))]
        return SectorMap(q, [None] * 4)
    keys = [d.key for d in dirs]
    angles = [d.angle for d in dirs]
    cands = []
    for i in range(n):
        a0 = angles[i]
        a1 = angles[(i + 1) % n] if n > 1 else a0 + 2 * math.pi
        if a1 <= a0:
            a1 += 2 * math.pi
        if a1 - a0 < 1e-13:
            raise AlgebraError("directions at infinity too close to separate")
        mid = (a0 + a1) / 2
        den = 16
        while True:
            w = unit_vector(mid, den)
            if _strictly_between(keys[i], _vec_key(w), keys[(i + 1) % n], n == 1):
                cands.append(w)
                break
            den *= 16
            if den > 2 ** 64:
                raise AlgebraError("could not place a sector boundary")
        for sgn in (-1, 1):
            w = unit_vector(angles[i] + sgn * spread, 64)
            cands.append(w)
    # drop boundaries through a direction, deduplicate, sort by angle
    uniq = []
    for w in cands:
        k = _vec_key(w)
        if any(_cmp_key(k, kd) == 0 for kd in keys):
            continue
        if any(_cmp_key(k, _vec_key(u)) == 0 for u in uniq):
            continue
        uniq.append(w)
    uniq.sort(key=cmp_to_key(lambda u, v: _cmp_key(_vec_key(u), _vec_key(v))))
    m = len(uniq)
    region: list[Direction | None] = [None] * m
    for d in dirs:
        for j in range(m):
            lo, hi = _vec_key(uniq[j]), _vec_key(uniq[(j + 1) % m])
            if _strictly_between(lo, d.key, hi, m == 1):
                if region[j] is not None:
                    raise AlgebraError("two directions in one sector")
                region[j] = d
                break
    return SectorMap(uniq, region)


def _form_points(form: BiPoly) -> list[tuple[ProjectivePoint, int]]:
    """Real zeros of a binary form on L^infinity, with multiplicities."""
    if form.is_zero() or form.degree <= 0:
        return []
    k = form.degree
    F = form.binary_form_dehomog()
    out = []
    if F.degree < k:
        out.append((ProjectivePoint(0, 1), k - F.degree))
    if F.degree > 0:
        for r in real_roots(F):
            out.append((ProjectivePoint.from_slope(detect_rational(r)), r.multiplicity))
    out.sort(key=lambda pm: pm[0].sort_key())
    return out


def points_at_infinity(f: BiPoly) -> tuple[list[tuple[ProjectivePoint, int]], int]:
    """Real points of {f_d = 0} with d_p, and d_Re."""
    pts = _form_points(f.top_form())
    return pts, sum(m for _, m in pts)


def _directions(points) -> list[Direction]:
    return [Direction(p, s) for p, _ in points for s in (1, -1)]


# ---------------------------------------------------------------------------
# germs at infinity


def milnor_germ(f: BiPoly, a, p: ProjectivePoint) -> BiPoly:
    if not p.is_rational:
        raise AlgebraError("germ charts need a rational point")
    h = milnor_polynomial(f, a)
    return germ_at_infinity(h, p.a, p.b)


def tangent_cone(germ: BiPoly) -> TangentCone:
    return classify_lines(germ, _cone_of_germ(germ))


def mult_at_Linf(germ: BiPoly) -> int:
    try:
        return intersection_with_infinity(germ)
    except ValueError:
        raise AlgebraError("L^infinity is a component") from None


@dataclass
class InfinityProfile:
    point: ProjectivePoint
    d_p: int
    mult_Linf: int
    germ: BiPoly | None = None
    cone: TangentCone | None = None
    deg_R_red: int | None = None
    deg_S: int | None = None
    deg_K: int | None = None
    delta: int | None = None
    r_p: int | None = None
    s_p: int | None = None
    in_Lf: bool = False
    exact: bool = True
    # values t for which the fibre {f = t} reaches this point
    witnesses: list = field(default_factory=list)

    def cone_lines(self) -> list[tuple[str, int]]:
        if self.cone is None or not self.point.is_rational:
            return []
        return [(line_label(L, self.point.a, self.point.b), L.multiplicity)
                for L in self.cone.lines]


def classify_branches(profile: InfinityProfile) -> InfinityProfile:
    """Fill deg R^red, deg S, deg K and delta from the classified cone."""
    cone = profile.cone
    if cone is None:
        return profile
    R = [L for L in cone.lines if L.real_branches > 0]
    profile.deg_R_red = len(R)
    profile.deg_S = sum(L.multiplicity for L in R if L.singular_real or L.at_infinity)
    profile.deg_K = sum(L.multiplicity for L in cone.lines if L.nonreal) \
        + sum(2 * k for k in cone.complex_pairs)
    profile.delta = len(cone.lines) + sum(2 * k for k in cone.complex_pairs)
    profile.exact = all(L.exact for L in cone.lines)
    return profile


def _profile(h: BiPoly, p: ProjectivePoint, d_p: int, h_points) -> InfinityProfile:
    if p.is_rational:
        g = germ_at_infinity(h, p.a, p.b)
        prof = InfinityProfile(p, d_p, mult_at_Linf(g), germ=g)
        prof.cone = tangent_cone(g)
        return classify_branches(prof)
    mult = next((m for q, m in h_points if q == p), 0)
    prof = InfinityProfile(p, d_p, mult, exact=(mult == 0))
    if mult == 0:
        prof.deg_R_red = prof.deg_S = prof.deg_K = prof.delta = 0
        prof.r_p = prof.s_p = 0
    return prof


# ---------------------------------------------------------------------------
# limits


@dataclass
class LimitValue:
    tag: str  # "finite", "plus_infinity" or "minus_infinity"
    value: RealRoot | None = None

    @classmethod
    def finite(cls, v: RealRoot) -> "LimitValue":
        return cls("finite", v)

    @property
    def is_finite(self) -> bool:
        return self.tag == "finite"

    def same_as(self, other: "LimitValue") -> bool:
        if self.tag != other.tag:
            return False
        return not self.is_finite or self.value.same_as(other.value)

    def label(self) -> str:
        if self.tag == "plus_infinity":
            return "+inf"
        if self.tag == "minus_infinity":
            return "-inf"
        if self.value.exact is not None:
            return format_rational(self.value.exact)
        return f"~{float(self.value):.12g}"

    def __float__(self) -> float:
        if self.tag == "plus_infinity":
            return math.inf
        if self.tag == "minus_infinity":
            return -math.inf
        return float(self.value)


PLUS_INF = LimitValue("plus_infinity")
MINUS_INF = LimitValue("minus_infinity")


def _sorted_roots(rs: list[RealRoot]) -> list[RealRoot]:
    return sorted(rs, key=cmp_to_key(lambda u, v: 0 if u.same_as(v) else (-1 if u.less_than(v) else 1)))


def limit_candidates(Ky: list[UniPoly], Kx: list[UniPoly]) -> list[RealRoot]:
    """Values t at which a point of {f = t} on the Milnor curve escapes to
    infinity: real roots of the leading coefficients of both fibre
    resultants."""
    prod = UniPoly([1])
    for K in (Ky, Kx):
        if K and K[-1].degree > 0:
            prod = prod * K[-1]
    if prod.degree <= 0:
        return []
    return real_roots(squarefree_part(prod))


def _resultant_bound_rational(K: list[UniPoly], t: Fraction) -> Fraction | None:
    at_t = UniPoly([c(t) for c in K])
    if at_t.is_zero():
        return None
    return root_radius_bound(at_t) if at_t.degree > 0 else Fraction(0)


def _resultant_bound_root(K: list[UniPoly], t: RealRoot) -> Fraction | None:
    """Cauchy bound on the roots of sum_k K[k](t) X^k at an algebraic t."""
    if t.exact is not None:
        return _resultant_bound_rational(K, t.exact)
    top = None
    for k in range(len(K) - 1, -1, -1):
        if t.sign_of(K[k]) != 0:
            top = k
            break
    if top is None:
        return None
    if top == 0:
        return Fraction(0)
    while True:
        encl = [_range_of(c, t.lo, t.hi) for c in K[:top + 1]]
        lo, hi = encl[top]
        if lo > 0 or hi < 0:
            m = min(abs(lo), abs(hi))
            return 1 + max(max(abs(u), abs(v)) for u, v in encl[:top]) / m
        t.tighten()


def _fibre_radius(Ky, Kx, t, a) -> Fraction:
    """Radius about a beyond which {f = t} misses the Milnor curve."""
    bounds = []
    for K in (Ky, Kx):
        b = _resultant_bound_rational(K, t) if isinstance(t, Fraction) else _resultant_bound_root(K, t)
        if b is None:
            raise AlgebraError("a fibre component lies in the Milnor set")
        bounds.append(b)
    return bounds[0] + bounds[1] + abs(a[0]) + abs(a[1])


def _ray_poly(p: BiPoly, a, w) -> UniPoly:
    return p.substitute(UniPoly([a[0], w[0]]), UniPoly([a[1], w[1]]))


def _rays_radius(p: BiPoly, a, boundaries) -> Fraction:
    """Beyond this distance no ray a + u w (w a boundary) meets {p = 0}."""
    best = Fraction(0)
    for w in boundaries:
        g = _ray_poly(p, a, w)
        if g.is_zero():
            raise AlgebraError("a sector boundary ray lies in the curve")
        if g.degree > 0:
            best = max(best, root_radius_bound(g))
    return best


def _level_rays_radius(f: BiPoly, a, boundaries, t) -> Fraction:
    """Same for {f = t}, with t rational or algebraic."""
    tb = abs(t) if isinstance(t, Fraction) else max(abs(t.lo), abs(t.hi), abs(t.mid))
    best = Fraction(0)
    for w in boundaries:
        g = _ray_poly(f, a, w)
        if g.degree <= 0:
            raise AlgebraError("f is constant along a sector boundary")
        lc = abs(g.lc)
        m = max([abs(v) for v in g.c[1:-1]] + [abs(g.c[0]) + tb])
        best = max(best, 1 + m / lc)
    return best


def _pick_between(lo: Fraction, hi: Fraction, ok) -> Fraction:
    """A rational in (lo, hi) accepted by ``ok``."""
    k = 2
    while k < 4096:
        for i in range(1, k):
            if i * 2 == k and k > 2:
                continue
            c = lo + (hi - lo) * Fraction(i, k)
            if ok(c):
                return c
        k *= 2
    raise AlgebraError("no admissible separator")


def separators(roots: list[RealRoot], ok=lambda c: True) -> list[Fraction]:
    """s_0 < r_1 < s_1 < ... < r_m < s_m with every s_k accepted by ``ok``."""
    base = sample_points(roots)
    out = []
    for k, s in enumerate(base):
        if ok(s):
            out.append(s)
            continue
        lo = roots[k - 1].hi if k > 0 else s - 1
        hi = roots[k].lo if k < len(roots) else s + 1
        if k > 0 and roots[k - 1].exact is not None:
            lo = max(lo, roots[k - 1].exact)
        if k < len(roots) and roots[k].exact is not None:
            hi = min(hi, roots[k].exact)
        out.append(_pick_between(lo, hi, ok))
    return out


# ---------------------------------------------------------------------------
# strips: which tangent line at a rational point an arc follows


@dataclass
class StripData:
    point: ProjectivePoint
    mus: list[RealRoot]          # offsets of the transverse real cone lines
    cuts: list[Fraction]         # separators between them
    bound: Fraction              # |X| beyond which no cut line meets M
    radius: dict                 # side -> radius needed for the strip test


def _strip_data(h: BiPoly, a, p: ProjectivePoint, cone: TangentCone,
                sectors: SectorMap) -> StripData:
    A, B = p.a, p.b
    n2 = A * A + B * B
    mus = _sorted_roots([L.mu for L in cone.lines if not L.at_infinity])
    X = UniPoly([0, 1])

    def line_poly(c: Fraction) -> UniPoly:
        return h.substitute(X * A - B * c, X * B + A * c)

    cuts = separators(mus, lambda c: not line_poly(c).is_zero())
    bound = Fraction(0)
    for c in cuts:
        g = line_poly(c)
        if g.degree > 0:
            bound = max(bound, root_radius_bound(g))
    radius = {}
    for side in (1, -1):
        try:
            j = sectors.region_of(Direction(p, side))
        except KeyError:
            continue
        w0, w1 = sectors.region_bounds(j)
        kappa = min(side * (A * w[0] + B * w[1]) for w in (w0, w1))
        if kappa <= 0:
            raise AlgebraError("sector too wide for the strip test")
        proj = side * (A * Fraction(a[0]) + B * Fraction(a[1]))
        radius[side] = max(Fraction(0), (n2 * bound - proj) / kappa)
    return StripData(p, mus, cuts, bound, radius)


@dataclass
class ArcTangent:
    """The tangent of an arc at its rational endpoint: a transverse line
    Y = mu (in coordinates rotated so the point is [1:0:0]) or L^infinity
    approached from above (+1) or below (-1)."""
    at_infinity: bool
    mu: RealRoot | None = None
    sign: int = 0

    def label(self) -> str:
        if self.at_infinity:
            return "L_inf" + ("+" if self.sign > 0 else "-")
        if self.mu.exact is not None:
            return f"Y={format_rational(self.mu.exact)}"
        return f"Y=~{float(self.mu):.12g}"


def _strip_of(pt: ParamPoint, strip: StripData, budget: int) -> ArcTangent:
    A, B = strip.point.a, strip.point.b
    n2 = A * A + B * B
    lin = BiPoly({(1, 0): -B, (0, 1): A})
    k = 0
    for c in strip.cuts:
        s = refine_to_sign(lin - n2 * c, pt, budget)
        if s == 0:
            raise AlgebraError("arc anchor on a strip cut")
        if s > 0:
            k += 1
    if k == 0:
        return ArcTangent(True, sign=-1)
    if k == len(strip.cuts):
        return ArcTangent(True, sign=1)
    return ArcTangent(False, strip.mus[k - 1])


# ---------------------------------------------------------------------------
# the full analysis


@dataclass
class InfinityAnalysis:
    points: list[tuple[ProjectivePoint, int]]
    d_Re: int
    profiles: list[InfinityProfile]
    arcs: list[ArcRecord]
    candidates: list[RealRoot]
    critical_values: list[RealRoot]
    Lf: list[ProjectivePoint]
    outer_radius: Fraction
    test_values: list = field(default_factory=list)

    def profile(self, p: ProjectivePoint) -> InfinityProfile:
        for prof in self.profiles:
            if prof.point == p:
                return prof
        raise KeyError(p)


class _Context:
    """Shared data for one polynomial and center."""

    def __init__(self, f: BiPoly, a, h: BiPoly | None = None):
        self.f = f
        self.a = (Fraction(a[0]), Fraction(a[1]))
        self.h = milnor_polynomial(f, self.a) if h is None else h
        self.f_points, self.d_Re = points_at_infinity(f)
        self.h_points = _form_points(self.h.top_form())
        self.arc_sectors = build_sectors(_directions(self.h_points))
        self.fibre_sectors = build_sectors(_directions(self.f_points))
        self.Ky = fibre_resultant(f, self.h, "y")
        self.Kx = fibre_resultant(f, self.h, "x")
        if not self.Ky or not self.Kx:
            raise AlgebraError("a fibre component lies in the Milnor set")
        self.candidates = _sorted_roots(limit_candidates(self.Ky, self.Kx))
        self.separators = separators(
            self.candidates,
            lambda s: not UniPoly([c(s) for c in self.Ky]).is_zero()
            and not UniPoly([c(s) for c in self.Kx]).is_zero())


def arc_limit(arc: ArcRecord, ctx: _Context, budget: int = 4000) -> LimitValue:
    """Limit of f along an arc, read off at its outer anchor."""
    pt = arc.outer_anchor
    seps = ctx.separators
    m = len(ctx.candidates)
    f = ctx.f
    lo, hi = 0, len(seps)  # answer j = #{k : s_k < f(pt)} lies in [lo, hi]
    try:
        while lo < hi:
            mid = (lo + hi) // 2
            s = refine_to_sign(f - seps[mid], pt, budget)
            if s == 0:
                raise AlgebraError("outer anchor on a separator level")
            if s > 0:
                lo = mid + 1
            else:
                hi = mid
    except UndecidedSign:
        raise LimitUndecided(arc.cyclic_position,
                             _surviving(ctx, lo, hi, arc.direction)) from None
    j = lo
    inc = arc.direction > 0
    if inc and j == m + 1:
        return PLUS_INF
    if not inc and j == 0:
        return MINUS_INF
    if 1 <= j <= m:
        return LimitValue.finite(ctx.candidates[j - 1])
    raise AlgebraError("arc limit inconsistent with its direction")


def _surviving(ctx: _Context, lo: int, hi: int, direction: int) -> list[LimitValue]:
    m = len(ctx.candidates)
    out = []
    for j in range(lo, hi + 1):
        if 1 <= j <= m:
            out.append(LimitValue.finite(ctx.candidates[j - 1]))
        elif j == m + 1 and direction > 0:
            out.append(PLUS_INF)
        elif j == 0 and direction < 0:
            out.append(MINUS_INF)
    return out


def _outer_radius(ctx: _Context, R: Fraction, strips: list[StripData]) -> Fraction:
    rad = max(Fraction(R), _rays_radius(ctx.h, ctx.a, ctx.arc_sectors.boundaries))
    for s in ctx.separators:
        rad = max(rad, _fibre_radius(ctx.Ky, ctx.Kx, s, ctx.a))
    for st in strips:
        for r in st.radius.values():
            rad = max(rad, r)
    return Fraction(math.floor(rad) + 1)


def analyze_infinity(f: BiPoly, a, R, arcs: list[ArcRecord], h: BiPoly | None = None,
                     tracking_budget: int = 4000, with_Lf: bool = True) -> InfinityAnalysis:
    ctx = _Context(f, a, h)
    profiles = [_profile(ctx.h, p, d, ctx.h_points) for p, d in ctx.f_points]
    strips = []
    for prof in profiles:
        if prof.point.is_rational and prof.mult_Linf > 0:
            strips.append(_strip_data(ctx.h, ctx.a, prof.point, prof.cone, ctx.arc_sectors))
    R1 = _outer_radius(ctx, Fraction(R), strips)
    arcs, chart = with_outer_anchors(arcs, ctx.h, ctx.a, R1,
                                     avoid_dirs=tuple(ctx.arc_sectors.boundaries))
    out_arcs = []
    for arc in arcs:
        lim = arc_limit(arc, ctx, tracking_budget)
        j = ctx.arc_sectors.locate(chart, arc.outer_anchor.t)
        d = ctx.arc_sectors.region_direction[j]
        if d is None:
            raise AlgebraError("arc outside every direction sector")
        tangent = None
        strip = next((s for s in strips if s.point == d.point), None)
        if strip is not None:
            tangent = _strip_of(arc.outer_anchor, strip, tracking_budget)
        out_arcs.append(replace(arc, limit=lim, point_at_infinity=d.point,
                                side=d.side, tangent=tangent))
    for prof in profiles:
        _semi_line_counts(prof, out_arcs)
    crit = critical_values(f)
    res = InfinityAnalysis(ctx.f_points, ctx.d_Re, profiles, out_arcs,
                           ctx.candidates, crit, [], R1)
    if with_Lf:
        res.Lf, res.test_values = compute_Lf(ctx, Fraction(R), profiles, crit)
    return res


def _semi_line_counts(prof: InfinityProfile, arcs: list[ArcRecord]) -> None:
    """r_p and s_p: tangent semi-lines carrying arcs on each side."""
    if not prof.point.is_rational:
        return
    mine = [arc for arc in arcs if arc.point_at_infinity == prof.point]
    for side in (1, -1):
        here = [arc for arc in mine if arc.side == side]
        lines: list[RealRoot] = []
        tangent_to_Linf = 0
        for arc in here:
            t = arc.tangent
            if t is None:
                continue
            if t.at_infinity:
                tangent_to_Linf += 1
            elif not any(t.mu.same_as(m) for m in lines):
                lines.append(t.mu)
        n = len(lines) + tangent_to_Linf
        if side > 0:
            prof.r_p = n
        else:
            prof.s_p = n


# ---------------------------------------------------------------------------
# points at infinity of the fibres


def _merge_params(anchors: list[RealRoot], bparams: list[tuple[Fraction, int]]):
    """Anchors and boundary parameters merged in increasing parameter order."""
    out = []
    bs = sorted(bparams)
    i = j = 0
    while i < len(anchors) or j < len(bs):
        if j == len(bs) or (i < len(anchors) and anchors[i].compare(bs[j][0]) < 0):
            out.append(("anchor", anchors[i], None))
            i += 1
        else:
            out.append(("boundary", bs[j][0], bs[j][1]))
            j += 1
    return out


def _sign_vs_level(ctx: _Context, pt: ParamPoint, t, budget: int = 100_000) -> int:
    """Sign of f(pt) - t for an algebraic point and a rational or algebraic t."""
    if isinstance(t, Fraction):
        return refine_to_sign(ctx.f - t, pt, budget)
    if t.exact is not None:
        return refine_to_sign(ctx.f - t.exact, pt, budget)
    N = pt.pullback(ctx.f)
    Dk = pt.D ** max(ctx.f.degree, 0)
    for _ in range(budget):
        s = pt.t
        lo, hi = (s.lo, s.hi) if s.exact is None else (s.exact, s.exact)
        vl, vh = _quot_range(N, Dk, lo, hi)
        if vl > t.hi:
            return 1
        if vh < t.lo:
            return -1
        s.tighten()
        t.tighten()
    raise UndecidedSign("undecided sign against an algebraic level")


def fibre_reach(ctx: _Context, R: Fraction, t) -> set:
    """Semi-directions (point, side) reached by the fibre {f = t}."""
    sectors = ctx.fibre_sectors
    Rt = max(R, _fibre_radius(ctx.Ky, ctx.Kx, t, ctx.a),
             _level_rays_radius(ctx.f, ctx.a, sectors.boundaries, t))
    Rt = Fraction(math.floor(Rt) + 1)
    chart = circle_chart(ctx.h, ctx.a, Rt, avoid_dirs=tuple(sectors.boundaries))
    anchors = circle_anchors(ctx.h, chart)
    bparams = [(chart.param_of_direction(w), j) for j, w in enumerate(sectors.boundaries)]
    items = _merge_params(anchors, bparams)
    signs = []
    for kind, val, j in items:
        if kind == "anchor":
            s = _sign_vs_level(ctx, chart.anchor(val), t)
        else:
            w = sectors.boundaries[j]
            v = ctx.f(ctx.a[0] + Rt * w[0], ctx.a[1] + Rt * w[1])
            s = sign(v - t) if isinstance(t, Fraction) else -t.compare(v)
        if s == 0:
            raise AlgebraError("level attained at a breakpoint")
        signs.append(s)
    first = next(i for i, it in enumerate(items) if it[0] == "boundary")
    order = list(range(first, len(items))) + list(range(first))
    reached = set()
    n = len(order)
    k = 0
    while k < n:
        j = items[order[k]][2]
        run = [signs[order[k]]]
        k += 1
        while k < n and items[order[k]][0] != "boundary":
            run.append(signs[order[k]])
            k += 1
        run.append(signs[order[k % n]])
        d = sectors.region_direction[j]
        if d is not None and any(u != v for u, v in zip(run, run[1:])):
            reached.add((d.point.label(), d.side))
    return reached


def compute_Lf(ctx: _Context, R: Fraction, profiles: list[InfinityProfile],
               crit: list[RealRoot]):
    """Points at infinity of the fibres, tested at every candidate or
    critical value and at one value inside each gap between them."""
    special = list(ctx.candidates)
    for c in crit:
        if not any(c.same_as(b) for b in special):
            special.append(c)
    special = _sorted_roots(special)
    values: list = separators(
        special,
        lambda s: not UniPoly([c(s) for c in ctx.Ky]).is_zero()
        and not UniPoly([c(s) for c in ctx.Kx]).is_zero())
    tests = []
    for k, s in enumerate(values):
        tests.append(s)
        if k < len(special):
            r = special[k]
            tests.append(r.exact if r.exact is not None else r)
    by_label = {prof.point.label(): prof for prof in profiles}
    for t in tests:
        for lab, _side in fibre_reach(ctx, R, t):
            prof = by_label[lab]
            if not prof.in_Lf:
                prof.in_Lf = True
            if not any(_same_value(t, w) for w in prof.witnesses):
                prof.witnesses.append(t)
    Lf = [prof.point for prof in profiles if prof.in_Lf]
    return Lf, tests


def _same_value(u, v) -> bool:
    if isinstance(u, Fraction) and isinstance(v, Fraction):
        return u == v
    if isinstance(u, Fraction):
        return v.compare(u) == 0
    if isinstance(v, Fraction):
        return u.compare(v) == 0
    return u.same_as(v)
