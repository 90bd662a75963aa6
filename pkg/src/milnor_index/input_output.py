"""Polynomial parsing and pretty-printing, JSON reports and SVG diagrams."""

from __future__ import annotations

import json
import math
from fractions import Fraction

from .exact_algebra import BiPoly, RealRoot, format_rational

SCHEMA = "milnor-index/1"


class ParseError(ValueError):
    """Syntax error with the byte offset of the offending token."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at byte {offset}")
        self.offset = offset
        self.reason = message


_MINUS_SIGNS = {"-", "−"}


class _Lexer:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0
        # byte offset for every character index
        self._bytes = [0]
        for ch in text:
            self._bytes.append(self._bytes[-1] + len(ch.encode("utf-8")))

    def offset(self, i: int | None = None) -> int:
        return self._bytes[self.pos if i is None else i]

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take(self) -> str:
        ch = self.peek()
        self.pos += 1
        return ch

    def integer(self) -> int:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            raise ParseError("expected an integer", self.offset())
        return int(self.text[start:self.pos])


def parse_polynomial(text: str) -> BiPoly:
    """Parse a polynomial in x and y with rational coefficients.

    Grammar: sums of terms, ``*`` for products, ``^`` with non-negative
    integer exponents (right associative), unary minus binding weaker than
    ``*`` and ``^``, parentheses, and literals ``7`` or ``7/3``.
    """
    lx = _Lexer(text)
    if not text.strip():
        raise ParseError("empty input", 0)
    p = _sum(lx)
    if lx.peek():
        raise ParseError(f"unexpected {lx.peek()!r}", lx.offset())
    return p


def _sum(lx: _Lexer) -> BiPoly:
    acc = _signed(lx)
    while True:
        ch = lx.peek()
        if ch == "+":
            lx.take()
            acc = acc + _signed(lx)
        elif ch in _MINUS_SIGNS:
            lx.take()
            acc = acc - _signed(lx)
        else:
            return acc


def _signed(lx: _Lexer) -> BiPoly:
    ch = lx.peek()
    if ch in _MINUS_SIGNS:
        lx.take()
        return -_signed(lx)
    if ch == "+":
        lx.take()
        return _signed(lx)
    return _product(lx)


def _product(lx: _Lexer) -> BiPoly:
    acc = _power(lx)
    while lx.peek() == "*":
        lx.take()
        if lx.peek() == "*":
            raise ParseError("use '^' for powers", lx.offset())
        acc = acc * _power(lx)
    return acc


def _power(lx: _Lexer) -> BiPoly:
    base = _atom(lx)
    if lx.peek() == "^":
        lx.take()
        return base ** _exponent(lx)
    return base


def _exponent(lx: _Lexer) -> int:
    ch = lx.peek()
    if ch == "(":
        lx.take()
        e = _exponent(lx)
        if lx.peek() != ")":
            raise ParseError("expected ')'", lx.offset())
        lx.take()
    elif ch.isdigit():
        e = lx.integer()
    elif ch in _MINUS_SIGNS:
        raise ParseError("negative exponent", lx.offset())
    else:
        raise ParseError("expected a non-negative integer exponent", lx.offset())
    if lx.peek() == "^":
        lx.take()
        e = e ** _exponent(lx)
    return e


def _atom(lx: _Lexer) -> BiPoly:
    ch = lx.peek()
    at = lx.offset()
    if ch == "x":
        lx.take()
        return BiPoly.x()
    if ch == "y":
        lx.take()
        return BiPoly.y()
    if ch.isdigit():
        num = lx.integer()
        if lx.peek() == "/":
            lx.take()
            if not lx.peek().isdigit():
                raise ParseError("expected a denominator", lx.offset())
            den = lx.integer()
            if den == 0:
                raise ParseError("zero denominator", at)
            return BiPoly.const(Fraction(num, den))
        nxt = lx.peek()
        if nxt.isalpha() or nxt == "(":
            raise ParseError("missing '*'", lx.offset())
        return BiPoly.const(num)
    if ch == "(":
        lx.take()
        inner = _sum(lx)
        if lx.peek() != ")":
            raise ParseError("expected ')'", lx.offset())
        lx.take()
        return inner
    if not ch:
        raise ParseError("unexpected end of input", lx.offset())
    raise ParseError(f"unexpected {ch!r}", at)


def format_polynomial(p: BiPoly) -> str:
    """Canonical text form; parse_polynomial(format_polynomial(p)) == p."""
    return p.to_str()


# ---------------------------------------------------------------------------
# JSON


def _q(v) -> str:
    return format_rational(Fraction(v))


def _root(r: RealRoot):
    if r.exact is not None:
        return _q(r.exact)
    r.refine_to_width(Fraction(1, 2 ** 40))
    return {"approx": f"{float(r):.12g}",
            "poly": [str(c) for c in r.poly],
            "interval": [_q(r.lo), _q(r.hi)]}


def _limit(lim):
    if lim is None:
        return None
    if not lim.is_finite:
        return "+inf" if lim.tag == "plus_infinity" else "-inf"
    return _root(lim.value)


def _value(v):
    return _root(v) if isinstance(v, RealRoot) else _q(v)


def _dyadic_cell(r, bits: int = 32) -> tuple[Fraction, Fraction]:
    """The grid cell [k/2^bits, (k+1)/2^bits] holding the root, or the exact
    value twice.  Independent of how far the root was refined before."""
    if r.exact is not None:
        return r.exact, r.exact
    scale = 2 ** bits
    r.refine_to_width(Fraction(1, 4 * scale))
    k = math.floor(r.lo * scale)
    for j in (k + 1, k + 2):
        g = Fraction(j, scale)
        c = r.compare(g)
        if c == 0:
            return g, g
        if c < 0:
            return Fraction(j - 1, scale), g
    return Fraction(k + 2, scale), Fraction(k + 3, scale)


def _angle_interval(anchor, center) -> list[str]:
    # the circle chart is monotone in t, so the cell ends bracket the anchor
    a1, a2 = (float(c) for c in center)
    angs = []
    for t in _dyadic_cell(anchor.t):
        d = anchor.D(t)
        x, y = anchor.X(t) / d, anchor.Y(t) / d
        angs.append(math.degrees(math.atan2(float(y) - a2, float(x) - a1)) % 360)
    lo, hi = min(angs), max(angs)
    if hi - lo > 180:  # straddles 0 degrees
        angs = [a - 360 if a > 180 else a for a in angs]
        lo, hi = min(angs), max(angs)
    return [f"{lo:.9f}", f"{hi:.9f}"]


def _profile(p) -> dict:
    cone = None
    if p.cone is not None:
        cone = {
            "form": p.cone.form.to_str(),
            "lines": [{"line": lab, "multiplicity": k,
                       "real_branches": L.real_branches,
                       "singular_real": L.singular_real,
                       "nonreal_branch": L.nonreal}
                      for (lab, k), L in zip(p.cone_lines(), p.cone.lines)],
            "complex_pairs": list(p.cone.complex_pairs),
        }
    status = "exact" if p.exact else ("numeric-certified" if p.cone is not None else "unavailable")
    return {
        "point": p.point.label(),
        "d_p": p.d_p,
        "mult_Linf": p.mult_Linf,
        "germ": p.germ.to_str() if p.germ is not None else None,
        "cone": cone,
        "deg_R_red": p.deg_R_red,
        "deg_S": p.deg_S,
        "deg_K": p.deg_K,
        "delta": p.delta,
        "r_p": p.r_p,
        "s_p": p.s_p,
        "in_Lf": p.in_Lf,
        "branch_data": status,
        "Lf_witnesses": [_value(w) for w in p.witnesses],
    }


def report_to_dict(rep) -> dict:
    """Plain-data view of an analysis report (see pipeline_cli.IndexReport)."""
    d = {
        "schema": SCHEMA,
        "instance": rep.instance,
        "input": rep.source,
        "polynomial": rep.poly.to_str() if rep.poly is not None else None,
        "degree": rep.degree,
        "error": None,
    }
    if rep.error is not None:
        stage, msg, cands = rep.error
        d["error"] = {"stage": stage, "message": msg, "surviving_candidates": cands}
    d["center"] = [_q(c) for c in rep.center] if rep.center else None
    d["radius"] = _q(rep.radius) if rep.radius is not None else None
    d["index_winding"] = rep.index_winding
    d["index_arcs"] = rep.index_arcs
    d["index_clusters"] = rep.index_clusters
    d["indices_agree"] = rep.consistent
    inf = rep.infinity
    if inf is not None:
        d["outer_radius"] = _q(inf.outer_radius)
        d["d_Re"] = inf.d_Re
        d["points_at_infinity"] = [_profile(p) for p in inf.profiles]
        d["L_f"] = [p.label() for p in inf.Lf]
        d["limit_candidates"] = [_root(r) for r in inf.candidates]
        d["Lf_test_values"] = [_value(t) for t in inf.test_values]
        d["arcs"] = [{
            "position": a.cyclic_position,
            "angle_deg": _angle_interval(a.anchor, rep.center),
            "index": _q(a.arc_index),
            "direction": "increasing" if a.direction > 0 else "decreasing",
            "limit": _limit(a.limit),
            "point_at_infinity": a.point_at_infinity.label() if a.point_at_infinity else None,
            "side": a.side,
            "tangent": a.tangent.label() if a.tangent else None,
        } for a in inf.arcs]
    if rep.tally is not None:
        d["clusters"] = [{
            "members": c.positions,
            "lambda": _limit(c.limit),
            "direction": "increasing" if c.direction > 0 else "decreasing",
            "kind": c.kind,
            "total_index": _q(c.total_index),
            "attached_point": c.attached_point.label() if c.attached_point else None,
        } for c in rep.clusters]
        d["tallies"] = {
            "Sp": [{"point": p.label() if p else None, "lambda": _root(v), "count": k} for p, v, k in rep.tally.Sp],
            "Va": [{"point": p.label() if p else None, "lambda": _root(v), "count": k} for p, v, k in rep.tally.Va],
            "Va_inf": rep.tally.Va_inf,
        }
        d["atypical_at_infinity"] = [_root(v) for v in rep.atypical_at_infinity]
        d["critical_values"] = [_root(v) for v in rep.critical_values]
    if rep.bounds is not None:
        d["bounds"] = {b.name: {"value": _q(b.value), "satisfied": b.satisfied,
                                "hard": b.hard} for b in rep.bounds.bounds}
    d["checks"] = dict(rep.invariants)
    return d


def emit_json(report) -> bytes:
    """Deterministic UTF-8 JSON for one report or a list of reports."""
    if isinstance(report, list):
        data = {"schema": SCHEMA, "instances": [report_to_dict(r) for r in report]}
    else:
        data = report_to_dict(report)
    return (json.dumps(data, sort_keys=True, indent=2, ensure_ascii=False) + "\n").encode("utf-8")


# ---------------------------------------------------------------------------
# SVG


def _direction_angle(point, side: int) -> float:
    if point.is_rational:
        return math.atan2(side * point.b, side * point.a)
    return math.atan2(side * float(point.slope), side)


def emit_svg(report) -> bytes:
    """Schematic disk picture: dashed inner circle through the arc anchors,
    outer circle standing for infinity, one curve per arc."""
    W = 520
    cx = cy = W / 2
    r_in, r_out = 120.0, 210.0

    def at(r, th):
        return cx + r * math.cos(th), cy - r * math.sin(th)

    out = [f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{W}" height="{W}" '
           f'viewBox="0 0 {W} {W}" font-family="sans-serif" font-size="11">',
           f'<circle cx="{cx}" cy="{cy}" r="{r_out}" fill="none" stroke="black" stroke-width="1.5"/>',
           f'<circle cx="{cx}" cy="{cy}" r="{r_in}" fill="none" stroke="gray" stroke-dasharray="5,4"/>']
    arcs = report.arcs
    angles = {}
    for a in arcs:
        th = math.radians(float(_angle_interval(a.anchor, report.center)[0]))
        angles[a.cyclic_position] = th
        ph = _direction_angle(a.point_at_infinity, a.side) if a.point_at_infinity else th
        x0, y0 = at(r_in, th)
        x1, y1 = at(r_in + 45, th)
        x2, y2 = at(r_out - 25, ph)
        x3, y3 = at(r_out, ph)
        colour = "#1f5fa8" if a.arc_index > 0 else "#b23a2a"
        out.append(f'<path class="arc" d="M {x0:.2f} {y0:.2f} C {x1:.2f} {y1:.2f} {x2:.2f} {y2:.2f} {x3:.2f} {y3:.2f}" '
                   f'fill="none" stroke="{colour}" stroke-width="1.6"/>')
        lx, ly = at(r_out + 18, ph)
        lab = a.limit.label() if a.limit is not None else "?"
        out.append(f'<text x="{lx:.2f}" y="{ly:.2f}" text-anchor="middle" class="limit">{_esc(lab)}</text>')
        ix, iy = at(r_in - 16, th)
        sgn = "+" if a.arc_index > 0 else "-"
        out.append(f'<text x="{ix:.2f}" y="{iy:.2f}" text-anchor="middle">{sgn}1/2</text>')
        gx, gy = at(r_in - 32, th)
        out.append(f'<text x="{gx:.2f}" y="{gy:.2f}" text-anchor="middle" fill="gray">'
                   f'&#947;{a.cyclic_position + 1}</text>')
    for c in report.clusters:
        ths = [angles[p] for p in c.positions]
        tag = {"splitting": "Sp", "vanishing": "Va", "vanishing_at_infinity": "Va(inf)"}.get(c.kind)
        if len(ths) > 1:
            start, end = ths[0], ths[-1]
            sweep = (end - start) % (2 * math.pi)
            x0, y0 = at(r_in, start)
            x1, y1 = at(r_in, end)
            large = 1 if sweep > math.pi else 0
            out.append(f'<path class="cluster" d="M {x0:.2f} {y0:.2f} A {r_in} {r_in} 0 {large} 0 {x1:.2f} {y1:.2f}" '
                       f'fill="none" stroke="black" stroke-width="4" stroke-opacity="0.5"/>')
            mid = start + sweep / 2
        else:
            mid = ths[0]
        if tag:
            tx, ty = at(r_in + 22, mid)
            out.append(f'<text x="{tx:.2f}" y="{ty:.2f}" text-anchor="middle" font-weight="bold" class="tag">{tag}</text>')
    out.append("</svg>")
    return ("\n".join(out) + "\n").encode("utf-8")


def _esc(s: str) -> str:
    return s.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")
