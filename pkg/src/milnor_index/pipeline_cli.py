"""End-to-end analysis of one polynomial, batch and fuzz drivers, and the
command line entry point."""

from __future__ import annotations

import argparse
import logging
import random
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from .bound_suite import BoundReport, evaluate_bounds
from .cluster_index import (
    Cluster,
    Tally,
    atypical_values,
    build_clusters,
    index_via_arcs,
    index_via_clusters,
    tally,
)
from .exact_algebra import AlgebraError, BiPoly, RealRoot
from .gauss_winding import winding_index
from .infinity_analysis import InfinityAnalysis, LimitUndecided, analyze_infinity
from .input_output import ParseError, emit_json, emit_svg, parse_polynomial
from .milnor_arcs import (
    CenterCertificate,
    choose_center,
    choose_radius,
    enumerate_arcs,
    has_isolated_singularities,
)

log = logging.getLogger("milnor_index")

EXIT_OK, EXIT_USAGE, EXIT_FAILURE, EXIT_BOUND = 0, 1, 2, 3


@dataclass
class IndexReport:
    source: str
    poly: BiPoly | None = None
    degree: int = 0
    center: tuple | None = None
    radius: Fraction | None = None
    index_winding: int | None = None
    index_arcs: int | None = None
    index_clusters: int | None = None
    infinity: InfinityAnalysis | None = None
    clusters: list[Cluster] = field(default_factory=list)
    tally: Tally | None = None
    atypical_at_infinity: list[RealRoot] = field(default_factory=list)
    critical_values: list[RealRoot] = field(default_factory=list)
    bounds: BoundReport | None = None
    invariants: dict = field(default_factory=dict)
    # stage name, message, surviving limit candidates (labels)
    error: tuple | None = None
    instance: int = 0

    @property
    def consistent(self) -> bool:
        vals = {self.index_winding, self.index_arcs, self.index_clusters}
        return None not in vals and len(vals) == 1

    @property
    def index(self) -> int | None:
        return self.index_winding if self.consistent else None

    @property
    def arcs(self):
        return self.infinity.arcs if self.infinity else []

    @property
    def Lf(self):
        return self.infinity.Lf if self.infinity else []

    def status(self, strict: bool = False) -> int:
        if self.error is not None or not self.consistent:
            return EXIT_FAILURE
        if self.bounds is not None and self.bounds.violations:
            return EXIT_BOUND
        if any(v is False for v in self.invariants.values()):
            return EXIT_FAILURE
        if strict and self.infinity and not all(p.exact for p in self.infinity.profiles):
            return EXIT_FAILURE
        return EXIT_OK


def analyze_polynomial(f: BiPoly, source: str = "", center=None, radius=None,
                       tracking_budget: int = 4000, with_Lf: bool = True) -> IndexReport:
    """Run every stage; failures are recorded in ``report.error``."""
    rep = IndexReport(source or f.to_str(), f, f.degree)
    stage = "center"
    try:
        if f.degree < 1:
            raise AlgebraError("constant polynomial")
        cert = choose_center(f, center)
        rep.center = cert.center
        stage = "radius"
        R = choose_radius(f, cert.center, cert)
        if radius is not None:
            if Fraction(radius) < R:
                raise AlgebraError(f"radius {radius} below the certified radius {R}")
            R = Fraction(radius)
        rep.radius = R
        stage = "winding"
        rep.index_winding = winding_index(f, R, cert.center)
        stage = "arcs"
        arcs = enumerate_arcs(f, cert.center, R)
        rep.index_arcs = index_via_arcs(arcs)
        stage = "infinity"
        rep.infinity = analyze_infinity(f, cert.center, R, arcs,
                                        tracking_budget=tracking_budget, with_Lf=with_Lf)
        stage = "clusters"
        rep.clusters = build_clusters(rep.infinity.arcs)
        rep.tally = tally(rep.clusters)
        rep.index_clusters = index_via_clusters(rep.tally)
        rep.atypical_at_infinity, rep.critical_values = atypical_values(
            rep.clusters, rep.infinity.critical_values)
        stage = "bounds"
        idx = rep.index_winding
        rep.bounds = evaluate_bounds(idx, rep.infinity.profiles, len(rep.Lf),
                                     f.degree, rep.infinity.d_Re)
        rep.invariants = check_invariants(rep)
    except LimitUndecided as exc:
        rep.error = (stage, str(exc), [c.label() for c in exc.candidates])
    except (AlgebraError, ValueError, ZeroDivisionError) as exc:
        rep.error = (stage, str(exc), None)
    return rep


def _semi_line(arc):
    t = arc.tangent
    tl = None if t is None else (t.at_infinity, t.sign if t.at_infinity else float(t.mu))
    return (arc.point_at_infinity.label(), arc.side, tl)


def check_invariants(rep: IndexReport) -> dict:
    inf = rep.infinity
    arcs = inf.arcs
    out = {}
    out["three_way_equality"] = rep.consistent
    out["mult_equals_d_p_minus_1"] = all(p.mult_Linf == p.d_p - 1 for p in inf.profiles)
    out["d_Re_sum"] = inf.d_Re == sum(d for _, d in inf.points)
    fpts = [p for p, _ in inf.points]
    out["finite_limit_endpoints_on_f_d"] = all(
        a.point_at_infinity in fpts for a in arcs if a.limit.is_finite)
    out["va_inf_at_least_2Lf"] = rep.tally.Va_inf >= 2 * len(inf.Lf)
    out["empty_Lf_gives_index_1"] = bool(inf.Lf) or rep.index_winding == 1
    out["odd_cluster_single_point"] = all(
        c.attached_point is not None for c in rep.clusters
        if c.parity == "odd" and c.limit.is_finite)
    exact = all(p.exact for p in inf.profiles)
    if exact:
        out["splitting_common_semi_line"] = all(
            len({_semi_line(a) for a in c.members}) == 1
            for c in rep.clusters if c.kind == "splitting")
        pos_kind = {}
        for c in rep.clusters:
            for a in c.members:
                pos_kind[a.cyclic_position] = c.kind
        ok = True
        n = len(arcs)
        for i in range(n):
            u, v = arcs[i], arcs[(i + 1) % n]
            if n > 1 and pos_kind[u.cyclic_position] == "splitting" == pos_kind[v.cyclic_position]:
                if _semi_line(u) != _semi_line(v) and _cluster_of(rep, u) is not _cluster_of(rep, v):
                    ok = False
        out["consecutive_splitting_share_tangent"] = ok
    out["alternating_indices_in_cluster"] = all(
        all(x.arc_index != y.arc_index for x, y in zip(c.members, c.members[1:]))
        for c in rep.clusters)
    out["bounds_satisfied"] = not rep.bounds.violations
    return out


def _cluster_of(rep: IndexReport, arc):
    for c in rep.clusters:
        if any(a.cyclic_position == arc.cyclic_position for a in c.members):
            return c
    return None


def arc_table(rep: IndexReport) -> list[tuple]:
    return [(str(a.arc_index), a.direction, a.limit.label(), a.point_at_infinity.label(), a.side,
             a.tangent.label() if a.tangent else None) for a in rep.arcs]


def same_cyclic_table(t1: list, t2: list) -> bool:
    if len(t1) != len(t2):
        return False
    if not t1:
        return True
    return any(t1 == t2[k:] + t2[:k] for k in range(len(t2)))


def radius_stable(f: BiPoly, rep: IndexReport, factor: int = 2) -> bool:
    """Recompute at factor * R and compare the arc tables up to rotation."""
    other = analyze_polynomial(f, rep.source, rep.center, rep.radius * factor, with_Lf=False)
    if other.error is not None:
        return False
    return other.index_winding == rep.index_winding and same_cyclic_table(arc_table(rep), arc_table(other))


# ---------------------------------------------------------------------------
# fuzzing


def random_polynomial(rng: random.Random, degree: int, coeff_bound: int,
                      max_terms: int = 6) -> BiPoly:
    """Sparse polynomial of exact degree ``degree`` with small integer
    coefficients."""
    monos = [(i, k - i) for k in range(degree + 1) for i in range(k + 1)]
    top = [m for m in monos if sum(m) == degree]
    while True:
        terms = {}
        for _ in range(rng.randint(1, 2)):
            terms[rng.choice(top)] = rng.choice([c for c in range(-coeff_bound, coeff_bound + 1) if c])
        for _ in range(rng.randint(1, max_terms)):
            m = rng.choice(monos)
            if m not in terms:
                terms[m] = rng.randint(-coeff_bound, coeff_bound)
        p = BiPoly(terms)
        if p.degree == degree:
            return p


def fuzz_polynomials(n: int, degree: int, coeff_bound: int, seed: int):
    """Deterministic stream of polynomials with isolated singularities;
    returns the list and the number of rejected draws."""
    rng = random.Random(seed)
    out, rejected = [], 0
    while len(out) < n:
        d = rng.randint(2, degree)
        p = random_polynomial(rng, d, coeff_bound)
        if has_isolated_singularities(p):
            out.append(p)
        else:
            rejected += 1
    return out, rejected


def generic_arrangement(rng: random.Random, d: int, coeff_bound: int = 5) -> BiPoly:
    """Product of d real lines in general position."""
    while True:
        lines = []
        for _ in range(d):
            a, b = 0, 0
            while a == 0 and b == 0:
                a, b = rng.randint(-coeff_bound, coeff_bound), rng.randint(-coeff_bound, coeff_bound)
            lines.append((a, b, rng.randint(-coeff_bound, coeff_bound)))
        if _general_position(lines):
            p = BiPoly.const(1)
            for a, b, c in lines:
                p = p * BiPoly({(1, 0): a, (0, 1): b, (0, 0): c})
            return p


def _general_position(lines) -> bool:
    for i in range(len(lines)):
        for j in range(i):
            a1, b1, _ = lines[i]
            a2, b2, _ = lines[j]
            if a1 * b2 - a2 * b1 == 0:
                return False
    for i in range(len(lines)):
        for j in range(i):
            for k in range(j):
                m = [lines[i], lines[j], lines[k]]
                det = (m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
                       - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
                       + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]))
                if det == 0:
                    return False
    return True


# ---------------------------------------------------------------------------
# command line


@dataclass
class RunConfig:
    polys: list[str] = field(default_factory=list)
    center: tuple | None = None
    radius: Fraction | None = None
    json_path: str | None = None
    svg_path: str | None = None
    fuzz: int = 0
    degree: int = 5
    coeff_bound: int = 5
    seed: int = 0
    strict: bool = False
    tracking_budget: int = 4000
    stability: bool = False
    jobs: int = 1


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="milnor-index",
                description="Index at infinity of the gradient of a real bivariate polynomial.")
    src = p.add_mutually_exclusive_group()
    src.add_argument("--poly", help="polynomial in x and y, e.g. 'x^2*y + x'")
    src.add_argument("--file", help="file with one polynomial per line")
    p.add_argument("--json", dest="json_path", help="write the JSON report here ('-' for stdout)")
    p.add_argument("--svg", dest="svg_path", help="write the disk diagram here")
    p.add_argument("--center", help="center as A1,A2 (rationals allowed)")
    p.add_argument("--radius", help="circle radius (must pass the certificate)")
    p.add_argument("--fuzz", type=int, default=0, metavar="N", help="analyze N random polynomials")
    p.add_argument("--degree", type=int, default=5, metavar="D")
    p.add_argument("--coeff-bound", type=int, default=5, metavar="B")
    p.add_argument("--seed", type=int, default=0, metavar="S")
    p.add_argument("--strict", action="store_true",
                   help="treat inexact branch data as a failure")
    p.add_argument("--tracking-budget", type=int, default=4000, metavar="K",
                   help="refinement steps allowed per sign decision while finding limits")
    p.add_argument("--stability", action="store_true",
                   help="also recompute every instance at twice the radius")
    p.add_argument("--jobs", type=int, default=1, help="worker processes for batches")
    p.add_argument("-v", "--verbose", action="store_true")
    return p


def _config(args, parser) -> RunConfig:
    cfg = RunConfig(json_path=args.json_path, svg_path=args.svg_path, fuzz=args.fuzz,
                    degree=args.degree, coeff_bound=args.coeff_bound, seed=args.seed,
                    strict=args.strict, tracking_budget=args.tracking_budget,
                    stability=args.stability, jobs=max(1, args.jobs))
    if args.poly is not None:
        cfg.polys = [args.poly]
    elif args.file is not None:
        try:
            with open(args.file, encoding="utf-8") as fh:
                cfg.polys = [ln.strip() for ln in fh if ln.strip() and not ln.startswith("#")]
        except OSError as exc:
            parser.error(str(exc))
    elif not args.fuzz:
        parser.error("one of --poly, --file or --fuzz is required")
    try:
        if args.center is not None:
            a1, a2 = args.center.split(",")
            cfg.center = (Fraction(a1.strip()), Fraction(a2.strip()))
        if args.radius is not None:
            cfg.radius = Fraction(args.radius)
            if cfg.radius <= 0:
                raise ValueError
    except ValueError:
        parser.error("bad --center or --radius")
    if args.fuzz and cfg.degree < 2:
        parser.error("--degree must be at least 2")
    return cfg


def _run_one(job) -> IndexReport:
    idx, text, poly, cfg = job
    if poly is None:
        try:
            poly = parse_polynomial(text)
        except ParseError as exc:
            rep = IndexReport(text)
            rep.error = ("parse", str(exc), None)
            rep.instance = idx
            return rep
    rep = analyze_polynomial(poly, text, cfg.center, cfg.radius, cfg.tracking_budget)
    rep.instance = idx
    if cfg.stability and rep.error is None:
        rep.invariants["radius_stable"] = radius_stable(poly, rep)
    return rep


def run(cfg: RunConfig) -> tuple[list[IndexReport], int]:
    jobs = []
    if cfg.fuzz:
        polys, rejected = fuzz_polynomials(cfg.fuzz, cfg.degree, cfg.coeff_bound, cfg.seed)
        log.info("fuzz: %d instances, %d rejected draws", len(polys), rejected)
        jobs = [(i, p.to_str(), p, cfg) for i, p in enumerate(polys)]
    else:
        jobs = [(i, t, None, cfg) for i, t in enumerate(cfg.polys)]
    if cfg.jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(cfg.jobs) as ex:
            reports = list(ex.map(_run_one, jobs))
    else:
        reports = [_run_one(j) for j in jobs]
    code = max((r.status(cfg.strict) for r in reports), default=EXIT_OK)
    return reports, code


def _summary(rep: IndexReport) -> str:
    if rep.error is not None:
        stage, msg, cands = rep.error
        line = f"[{rep.instance}] {rep.source}: FAILED in {stage}: {msg}"
        if cands:
            line += " | surviving candidates: " + ", ".join(cands)
        return line
    bad = [k for k, v in rep.invariants.items() if v is False]
    lf = "{" + ", ".join(p.label() for p in rep.Lf) + "}"
    line = (f"[{rep.instance}] {rep.source}: index {rep.index_winding} (winding) "
            f"{rep.index_arcs} (arcs) {rep.index_clusters} (clusters); "
            f"{len(rep.arcs)} arcs; L_f = {lf}")
    if bad:
        line += " | failed checks: " + ", ".join(bad)
    return line


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    cfg = _config(args, parser)
    reports, code = run(cfg)
    quiet_stdout = cfg.json_path == "-"
    for rep in reports:
        ok = rep.error is None and not quiet_stdout
        print(_summary(rep), file=sys.stdout if ok else sys.stderr)
    if cfg.json_path:
        data = emit_json(reports[0] if len(reports) == 1 and not cfg.fuzz else reports)
        if cfg.json_path == "-":
            sys.stdout.write(data.decode("utf-8"))
        else:
            with open(cfg.json_path, "wb") as fh:
                fh.write(data)
    if cfg.svg_path:
        ok = [r for r in reports if r.error is None]
        if ok:
            with open(cfg.svg_path, "wb") as fh:
                fh.write(emit_svg(ok[0]))
    return code


if __name__ == "__main__":
    sys.exit(main())
