"""Exact real critical points and critical values of f.

After a shear x -> x + lam*y that makes both partials monic-like in y, the
gcd of f_x(xi, y) and f_y(xi, y) at a root xi of their resultant is read off
the first non-vanishing subresultant, which in generic position is a power
of a linear form.  Values are then algebraic numbers given by a univariate
defining polynomial and an isolating interval.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key
from math import comb

from .exact_algebra import (
    AlgebraError,
    BiPoly,
    RealRoot,
    UniPoly,
    _det_int,
    _hval,
    _interpolate,
    _range_of,
    _scaled_rows,
    real_roots,
    resultant,
)

SHEARS = (Fraction(0), Fraction(1), Fraction(-1), Fraction(2), Fraction(1, 2),
          Fraction(-2), Fraction(3), Fraction(-1, 3), Fraction(5, 2))


def _subres_matrix(p: list[int], q: list[int], j: int) -> list[list[int]]:
    """Rows of the j-th subresultant matrix (highest power first)."""
    m, n = len(p) - 1, len(q) - 1
    width = m + n - j
    rows = []
    for i in range(n - j):
        row = [0] * width
        for k, c in enumerate(reversed(p)):
            row[i + k] = c
        rows.append(row)
    for i in range(m - j):
        row = [0] * width
        for k, c in enumerate(reversed(q)):
            row[i + k] = c
        rows.append(row)
    return rows


def subresultant_coeff(p: list[int], q: list[int], j: int, k: int) -> int:
    """Coefficient of y^k in the j-th subresultant of p, q (lowest first lists)."""
    rows = _subres_matrix(p, q, j)
    m, n = len(p) - 1, len(q) - 1
    width = m + n - j
    keep = list(range(m + n - 2 * j - 1)) + [width - 1 - k]
    return _det_int([[r[c] for c in keep] for r in rows])


def subresultant_poly(P: BiPoly, Q: BiPoly, j: int, k: int) -> UniPoly:
    """S_{j,k} as a polynomial in x, for P, Q viewed in y.  Both leading
    coefficients in y must be nonzero constants."""
    pr, _ = _scaled_rows(P, "y")
    qr, _ = _scaled_rows(Q, "y")
    m, n = len(pr) - 1, len(qr) - 1
    bound = (n - j) * max(P.degree_in("x"), 0) + (m - j) * max(Q.degree_in("x"), 0)
    xs = [t - bound // 2 for t in range(bound + 1)]
    vals = []
    for xv in xs:
        pe = [_hval(c, xv) for c in pr]
        qe = [_hval(c, xv) for c in qr]
        vals.append(subresultant_coeff(pe, qe, j, k))
    return _interpolate(xs, vals)


@dataclass(frozen=True)
class CriticalPoint:
    x_approx: float
    y_approx: float
    value: RealRoot


def _lc_const(P: BiPoly, var: str) -> bool:
    rows = P.coeffs_in(var)
    return bool(rows) and rows[-1].degree == 0 and not rows[-1].is_zero()


def _value_root(G: list[int], xi: RealRoot, num: UniPoly, den: UniPoly) -> RealRoot:
    """The real number num(xi)/den(xi) as a root of an integer polynomial."""
    Gp = UniPoly(G)
    num, den = num % Gp, den % Gp
    if xi.exact is not None:
        return RealRoot.rational(num(xi.exact) / den(xi.exact))
    if den.degree <= 0 and num.degree <= 0:
        return RealRoot.rational(num.coeff(0) / den.coeff(0))
    T = BiPoly.y()
    gx = BiPoly({(i, 0): c for i, c in enumerate(Gp.c)})
    q = T * BiPoly({(i, 0): c for i, c in enumerate(den.c)}) - \
        BiPoly({(i, 0): c for i, c in enumerate(num.c)})
    phi = resultant(gx, q, "x")
    cands = real_roots(phi)
    while True:
        lo, hi = (xi.lo, xi.hi) if xi.exact is None else (xi.exact, xi.exact)
        nl, nh = _range_of(num, lo, hi)
        dl, dh = _range_of(den, lo, hi)
        if dl > 0 or dh < 0:
            qs = [nl / dl, nl / dh, nh / dl, nh / dh]
            vl, vh = min(qs), max(qs)
            hits = [r for r in cands if not (r.hi <= vl or r.lo >= vh)
                    and not (r.exact is not None and not vl <= r.exact <= vh)]
            if len(hits) == 1:
                r = hits[0]
                # make sure the enclosure really pins this root down
                if all(not (o.hi > vl and o.lo < vh) for o in cands if o is not r):
                    return r
        xi.tighten()
        for r in cands:
            r.tighten()


def critical_points(f: BiPoly) -> list[CriticalPoint]:
    fx0, fy0 = f.diff("x"), f.diff("y")
    if fx0.is_zero() and fy0.is_zero():
        return []
    if (fx0.degree == 0 and not fx0.is_zero()) or (fy0.degree == 0 and not fy0.is_zero()):
        return []
    for lam in SHEARS:
        try:
            return _critical_points_sheared(f, lam)
        except _NotGeneric:
            continue
    raise AlgebraError("no generic shear for critical points")


class _NotGeneric(Exception):
    pass


def _critical_points_sheared(f: BiPoly, lam: Fraction) -> list[CriticalPoint]:
    X, Y = BiPoly.x(), BiPoly.y()
    g = f.compose(X + Y * lam, Y)
    P, Q = g.diff("x"), g.diff("y")
    if P.is_zero() or Q.is_zero():
        raise _NotGeneric
    if not (_lc_const(P, "y") and _lc_const(Q, "y")):
        raise _NotGeneric
    if P.degree_in("y") == 0 or Q.degree_in("y") == 0:
        raise _NotGeneric
    R0 = resultant(P, Q, "y")
    if R0.is_zero():
        raise AlgebraError("non-isolated singularities")
    if R0.degree <= 0:
        return []
    mdeg = min(P.degree_in("y"), Q.degree_in("y"))
    cache: dict[tuple[int, int], UniPoly] = {}

    low = Q if Q.degree_in("y") <= P.degree_in("y") else P
    low_rows = low.coeffs_in("y")

    def S(j: int, k: int) -> UniPoly:
        if (j, k) not in cache:
            if j == mdeg:
                # the top subresultant is the lower-degree input itself
                cache[(j, k)] = low_rows[k] if k < len(low_rows) else UniPoly()
            else:
                cache[(j, k)] = subresultant_poly(P, Q, j, k)
        return cache[(j, k)]

    gy = g.coeffs_in("y")
    K = len(gy) - 1
    out = []
    for xi in real_roots(R0):
        j = 1
        while True:
            if j > mdeg:
                raise _NotGeneric
            sjj = S(j, j)
            if xi.sign_of(sjj) != 0:
                break
            j += 1
        N1 = S(j, j - 1)
        D1 = sjj * j
        # generic position: the gcd must be s_j (y - eta)^j, i.e.
        # s_k (j s_j)^(j-k) = s_j C(j,k) s_(j-1)^(j-k) for every k
        for k in range(j - 1):
            test = S(j, k) * (D1 ** (j - k)) - sjj * comb(j, k) * (N1 ** (j - k))
            if xi.sign_of(test) != 0:
                raise _NotGeneric
        # eta = -N1 / D1; value g(xi, eta) = sum gy_k(xi) (-N1)^k D1^(K-k) / D1^K
        num = UniPoly()
        for k, ck in enumerate(gy):
            num = num + ck * ((-N1) ** k) * (D1 ** (K - k))
        den = D1 ** K
        G = list(xi.poly)
        val = _value_root(G, xi, num, den)
        xi.refine_to_width(Fraction(1, 2 ** 30))
        xa = float(xi.mid)
        eta = -float(N1(xi.mid)) / float(D1(xi.mid)) if float(D1(xi.mid)) else 0.0
        out.append(CriticalPoint(xa + float(lam) * eta, eta, val))
    return out


def critical_values(f: BiPoly) -> list[RealRoot]:
    """Distinct real critical values, sorted."""
    vals: list[RealRoot] = []
    for cp in critical_points(f):
        if not any(cp.value.same_as(v) for v in vals):
            vals.append(cp.value)
    return sorted(vals, key=cmp_to_key(lambda a, b: 0 if a.same_as(b) else (-1 if a.less_than(b) else 1)))
