"""Clusters of consecutive Milnor arcs, their classification, the Sp/Va
tallies and the index computed from arcs and from clusters."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .exact_algebra import AlgebraError, RealRoot
from .infinity_analysis import LimitValue, ProjectivePoint
from .milnor_arcs import ArcRecord

HALF = Fraction(1, 2)


class ClusterContradiction(AlgebraError):
    pass


class ParityViolation(AlgebraError):
    pass


@dataclass
class Cluster:
    members: list[ArcRecord]
    limit: LimitValue
    direction: int
    total_index: Fraction = Fraction(0)
    kind: str = ""
    attached_point: ProjectivePoint | None = None

    @property
    def parity(self) -> str:
        return "odd" if len(self.members) % 2 else "even"

    @property
    def positions(self) -> list[int]:
        return [a.cyclic_position for a in self.members]


def _same_class(u: ArcRecord, v: ArcRecord) -> bool:
    return u.direction == v.direction and u.limit.same_as(v.limit)


def build_clusters(arcs: list[ArcRecord]) -> list[Cluster]:
    """Maximal cyclic runs of arcs sharing limit and direction."""
    n = len(arcs)
    if n == 0:
        return []
    if any(a.limit is None for a in arcs):
        raise ValueError("arcs need limits")
    breaks = [i for i in range(n) if not _same_class(arcs[i - 1], arcs[i])]
    if not breaks:
        runs = [list(range(n))]
    else:
        runs = []
        for k, start in enumerate(breaks):
            end = breaks[(k + 1) % len(breaks)]
            run = []
            i = start
            while True:
                run.append(i)
                i = (i + 1) % n
                if i == end:
                    break
            runs.append(run)
        runs.sort(key=lambda r: r[0])
    out = []
    for run in runs:
        members = [arcs[i] for i in run]
        c = Cluster(members, members[0].limit, members[0].direction)
        out.append(classify_cluster(c))
    return out


def classify_cluster(c: Cluster) -> Cluster:
    c.total_index = sum((a.arc_index for a in c.members), Fraction(0))
    pts = [a.point_at_infinity for a in c.members]
    if pts and all(p is not None and p == pts[0] for p in pts):
        c.attached_point = pts[0]
    if c.parity == "even":
        if c.total_index != 0:
            raise ClusterContradiction(f"cluster index contradiction: even cluster with total {c.total_index}")
        c.kind = "even"
        return c
    if abs(c.total_index) != HALF:
        raise ClusterContradiction(f"cluster index contradiction: odd cluster with total {c.total_index}")
    if not c.limit.is_finite:
        if c.total_index != -HALF:
            raise ClusterContradiction("cluster index contradiction: cluster at infinity with total +1/2")
        c.kind = "vanishing_at_infinity"
    else:
        c.kind = "splitting" if c.total_index > 0 else "vanishing"
    return c


@dataclass
class Tally:
    # entries (point, limit value, count)
    Sp: list = field(default_factory=list)
    Va: list = field(default_factory=list)
    Va_inf: int = 0

    def get(self, which: str, p: ProjectivePoint, value) -> int:
        for q, lam, k in getattr(self, which):
            if q == p and _value_eq(lam, value):
                return k
        return 0


def _value_eq(lam: RealRoot, value) -> bool:
    if isinstance(value, RealRoot):
        return lam.same_as(value)
    return lam.compare(Fraction(value)) == 0


def _bump(entries: list, p, lam: RealRoot) -> None:
    for i, (q, mu, k) in enumerate(entries):
        if q == p and mu.same_as(lam):
            entries[i] = (q, mu, k + 1)
            return
    entries.append((p, lam, 1))


def tally(clusters: list[Cluster]) -> Tally:
    t = Tally()
    for c in clusters:
        if c.kind == "vanishing_at_infinity":
            t.Va_inf += 1
        elif c.kind == "splitting":
            _bump(t.Sp, c.attached_point, c.limit.value)
        elif c.kind == "vanishing":
            _bump(t.Va, c.attached_point, c.limit.value)
    return t


def index_via_clusters(t: Tally) -> int:
    v = 1 + HALF * sum(k for *_, k in t.Sp) - HALF * sum(k for *_, k in t.Va) - HALF * t.Va_inf
    if v.denominator != 1:
        raise ParityViolation(f"parity violation: cluster formula gives {v}")
    return int(v)


def index_via_arcs(arcs: list[ArcRecord]) -> int:
    v = 1 + sum((a.arc_index for a in arcs), Fraction(0))
    if v.denominator != 1:
        raise ParityViolation(f"parity violation: arc sum gives {v}")
    return int(v)


def atypical_values(clusters: list[Cluster], critical: list[RealRoot]):
    """(values where an odd cluster has a finite limit, critical values)."""
    at_inf: list[RealRoot] = []
    for c in clusters:
        if c.parity == "odd" and c.limit.is_finite:
            if not any(c.limit.value.same_as(v) for v in at_inf):
                at_inf.append(c.limit.value)
    at_inf.sort(key=float)
    return at_inf, list(critical)
