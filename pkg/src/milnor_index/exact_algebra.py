"""Exact polynomial algebra over the rationals.

Dense univariate polynomials, sparse bivariate polynomials, Sylvester
resultants, Sturm sequences, real root isolation, real algebraic numbers
given by isolating intervals, and exact sign evaluation at algebraic points.

Everything here is immutable and deterministic.  Hot loops run on primitive
integer coefficient lists; ``Fraction`` is the public coefficient type.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Callable, Iterable, Sequence

Rational = Fraction


class AlgebraError(Exception):
    """Base error for the exact layer."""


class DegenerateResultant(AlgebraError):
    pass


class UndecidedSign(AlgebraError):
    pass


def as_fraction(v) -> Fraction:
    if isinstance(v, Fraction):
        return v
    if isinstance(v, int):
        return Fraction(v)
    if isinstance(v, str):
        return Fraction(v)
    raise TypeError(f"not an exact rational: {v!r}")


def sign(v) -> int:
    return (v > 0) - (v < 0)


def format_rational(q: Fraction) -> str:
    q = as_fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


# ---------------------------------------------------------------------------
# integer coefficient lists (lowest degree first)


def z_trim(c: list[int]) -> list[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


def z_content(c: Sequence[int]) -> int:
    g = 0
    for v in c:
        g = gcd(g, v)
        if g == 1:
            break
    return g


def z_primitive(c: Sequence[int]) -> list[int]:
    """Divide by the content and make the leading coefficient positive."""
    c = z_trim(list(c))
    if not c:
        return c
    g = z_content(c)
    if c[-1] < 0:
        g = -g
    return [v // g for v in c]


def z_scale_positive(c: Sequence[int]) -> list[int]:
    """Divide by the positive content, keeping signs."""
    c = z_trim(list(c))
    if not c:
        return c
    g = z_content(c)
    return [v // g for v in c]


def z_derivative(c: Sequence[int]) -> list[int]:
    return [i * c[i] for i in range(1, len(c))]


def z_prem(a: Sequence[int], b: Sequence[int]) -> tuple[list[int], int]:
    """Pseudo-remainder: returns (r, s) with lc(b)**s * a = q*b + r."""
    r = list(a)
    lb = b[-1]
    nb = len(b)
    s = 0
    while len(r) >= nb and r:
        lr = r[-1]
        shift = len(r) - nb
        r = [lb * v for v in r]
        for i, bv in enumerate(b):
            if bv:
                r[i + shift] -= lr * bv
        r.pop()
        z_trim(r)
        s += 1
    return r, s


def z_gcd(a: Sequence[int], b: Sequence[int]) -> list[int]:
    a = z_primitive(a)
    b = z_primitive(b)
    if not a:
        return b
    if not b:
        return a
    if len(a) < len(b):
        a, b = b, a
    while b:
        r, _ = z_prem(a, b)
        a, b = b, z_primitive(r)
    return z_primitive(a)


def z_divexact(a: Sequence[int], b: Sequence[int]) -> list[int]:
    """Quotient a/b when b divides a over Q, returned primitive."""
    q = UniPoly(a).divmod(UniPoly(b))[0]
    return q.primitive_int()


def z_quot(a: Sequence[int], b: Sequence[int]) -> list[int]:
    """Exact quotient a/b over Z (b must divide a with integer quotient)."""
    r = list(a)
    nb = len(b)
    q = [0] * max(len(r) - nb + 1, 0)
    lb = b[-1]
    while len(r) >= nb and r:
        c, rem = divmod(r[-1], lb)
        if rem:
            raise AlgebraError("inexact integer division")
        k = len(r) - nb
        q[k] = c
        for i, bv in enumerate(b):
            r[i + k] -= c * bv
        r.pop()
        z_trim(r)
    if r:
        raise AlgebraError("inexact integer division")
    return q


def z_eval_sign(c: Sequence[int], x: Fraction) -> int:
    """Sign of c(x) for rational x, by homogenised integer evaluation."""
    return _hom_sign(c, x.numerator, x.denominator) if c else 0


def _hom_sign(c: Sequence[int], p: int, q: int) -> int:
    # sign of sum c_i p^i q^(n-i), which has the sign of c(p/q) since q > 0
    n = len(c) - 1
    if n < 0:
        return 0
    acc = c[n]
    qk = 1
    for i in range(n - 1, -1, -1):
        qk *= q
        acc = acc * p + c[i] * qk
    return (acc > 0) - (acc < 0)


def z_eval_exact(c: Sequence[int], x: Fraction) -> Fraction:
    acc = Fraction(0)
    for v in reversed(c):
        acc = acc * x + v
    return acc


def z_sturm(c: Sequence[int]) -> list[list[int]]:
    """Sturm sequence of a squarefree integer polynomial, contents stripped."""
    p0 = z_scale_positive(c)
    seq = [p0]
    if len(p0) <= 1:
        return seq
    p1 = z_scale_positive(z_derivative(p0))
    seq.append(p1)
    a, b = p0, p1
    while len(b) > 1:
        r, s = z_prem(a, b)
        if not r:
            break
        if b[-1] < 0 and s % 2 == 1:
            r = [-v for v in r]
        nxt = z_scale_positive([-v for v in r])
        seq.append(nxt)
        a, b = b, nxt
    return seq


def _variations(signs: Iterable[int]) -> int:
    v = 0
    last = 0
    for s in signs:
        if s == 0:
            continue
        if last and s != last:
            v += 1
        last = s
    return v


def sturm_variations(seq: Sequence[Sequence[int]], x) -> int:
    """Sign variations of a Sturm sequence at x (Fraction, or +-inf as 'inf'/'-inf')."""
    if x == "inf":
        return _variations(sign(s[-1]) for s in seq if s)
    if x == "-inf":
        return _variations(sign(s[-1]) * (-1) ** (len(s) - 1) for s in seq if s)
    x = as_fraction(x)
    return _variations(_hom_sign(s, x.numerator, x.denominator) for s in seq if s)


def sturm_count(seq: Sequence[Sequence[int]], lo, hi) -> int:
    """Number of distinct roots in (lo, hi]."""
    return sturm_variations(seq, lo) - sturm_variations(seq, hi)


# ---------------------------------------------------------------------------
# dense univariate polynomials


class UniPoly:
    """Dense univariate polynomial, coefficients lowest degree first."""

    __slots__ = ("c", "_zp")

    def __init__(self, coeffs: Iterable = ()):
        c = [Fraction(v) if isinstance(v, int) else v for v in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.c = tuple(c)
        self._zp = None

    @classmethod
    def x(cls) -> "UniPoly":
        return cls([0, 1])

    @classmethod
    def const(cls, v) -> "UniPoly":
        return cls([v])

    @property
    def degree(self) -> int:
        return len(self.c) - 1

    def is_zero(self) -> bool:
        return not self.c

    @property
    def lc(self):
        return self.c[-1] if self.c else Fraction(0)

    def coeff(self, k: int):
        return self.c[k] if 0 <= k < len(self.c) else Fraction(0)

    def __eq__(self, other) -> bool:
        if not isinstance(other, UniPoly):
            other = UniPoly([other])
        return self.c == other.c

    def __hash__(self) -> int:
        return hash(self.c)

    def __repr__(self) -> str:
        return f"UniPoly({[format_rational(v) if isinstance(v, Fraction) else v for v in self.c]})"

    def __call__(self, x):
        acc = 0
        for v in reversed(self.c):
            acc = acc * x + v
        return acc

    def __neg__(self) -> "UniPoly":
        return UniPoly([-v for v in self.c])

    def __add__(self, other) -> "UniPoly":
        if not isinstance(other, UniPoly):
            other = UniPoly([other])
        a, b = self.c, other.c
        if len(a) < len(b):
            a, b = b, a
        return UniPoly([a[i] + b[i] if i < len(b) else a[i] for i in range(len(a))])

    __radd__ = __add__

    def __sub__(self, other) -> "UniPoly":
        if not isinstance(other, UniPoly):
            other = UniPoly([other])
        return self + (-other)

    def __rsub__(self, other) -> "UniPoly":
        return UniPoly([other]) - self

    def __mul__(self, other) -> "UniPoly":
        if not isinstance(other, UniPoly):
            return UniPoly([v * other for v in self.c])
        a, b = self.c, other.c
        if not a or not b:
            return UniPoly()
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, u in enumerate(a):
            if u == 0:
                continue
            for j, v in enumerate(b):
                out[i + j] += u * v
        return UniPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "UniPoly":
        out = UniPoly([1])
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def divmod(self, other: "UniPoly") -> tuple["UniPoly", "UniPoly"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.c)
        db = other.degree
        lb = other.lc
        q = [Fraction(0)] * max(len(r) - db, 0)
        while len(r) - 1 >= db and r:
            k = len(r) - 1 - db
            f = r[-1] / lb
            q[k] = f
            for i, v in enumerate(other.c):
                r[i + k] -= f * v
            r.pop()
            while r and r[-1] == 0:
                r.pop()
        return UniPoly(q), UniPoly(r)

    def __floordiv__(self, other: "UniPoly") -> "UniPoly":
        return self.divmod(other)[0]

    def __mod__(self, other: "UniPoly") -> "UniPoly":
        return self.divmod(other)[1]

    def derivative(self) -> "UniPoly":
        return UniPoly([i * self.c[i] for i in range(1, len(self.c))])

    def monic(self) -> "UniPoly":
        if not self.c:
            return self
        return UniPoly([v / self.c[-1] for v in self.c])

    def compose(self, other: "UniPoly") -> "UniPoly":
        acc = UniPoly()
        for v in reversed(self.c):
            acc = acc * other + v
        return acc

    def taylor_shift(self, s) -> "UniPoly":
        """Coefficients of p(x + s)."""
        c = list(self.c)
        n = len(c)
        for i in range(n):
            for j in range(n - 2, i - 1, -1):
                c[j] += s * c[j + 1]
        return UniPoly(c)

    def primitive_int(self) -> list[int]:
        """Positive multiple with coprime integer coefficients and positive lc."""
        if self._zp is None:
            if not self.c:
                self._zp = []
            else:
                den = 1
                for v in self.c:
                    den = den * v.denominator // gcd(den, v.denominator)
                self._zp = z_primitive([v.numerator * (den // v.denominator) for v in self.c])
        return self._zp

    def integer_scaled(self) -> tuple[list[int], int]:
        """(c, D) with D*self == c as integer list, D > 0 minimal."""
        den = 1
        for v in self.c:
            den = den * v.denominator // gcd(den, v.denominator)
        return [v.numerator * (den // v.denominator) for v in self.c], den

    def sign_at(self, x: Fraction) -> int:
        c, _ = self.integer_scaled()
        return _hom_sign(c, x.numerator, x.denominator) if c else 0


def upoly_from_int(c: Sequence[int]) -> UniPoly:
    return UniPoly(list(c))


def poly_gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    """Monic gcd over Q."""
    g = z_gcd(a.primitive_int(), b.primitive_int())
    return UniPoly(g).monic() if g else UniPoly()


def squarefree_decomposition(p: UniPoly) -> list[tuple[UniPoly, int]]:
    """Yun's algorithm: [(g_k, k)] with p = c * prod g_k**k, g_k squarefree, coprime."""
    if p.degree <= 0:
        return []
    a = p.primitive_int()
    out: list[tuple[UniPoly, int]] = []
    da = z_derivative(a)
    b = z_gcd(a, da)
    if len(b) <= 1:
        return [(UniPoly(a), 1)]
    c = z_quot(a, b)
    d = z_quot(da, b)
    k = 1
    # y = d - c'
    while len(c) > 1:
        y = _z_sub(d, z_derivative(c))
        g = z_gcd(c, y) if any(y) else list(c)
        if len(g) > 1:
            out.append((UniPoly(g), k))
        c_new = z_quot(c, g)
        d = z_quot(y, g) if any(y) else []
        c = c_new
        k += 1
    return out


def _z_sub(a: Sequence[int], b: Sequence[int]) -> list[int]:
    n = max(len(a), len(b))
    out = [(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)]
    return z_trim(out)


def squarefree_part(p: UniPoly) -> UniPoly:
    if p.degree <= 0:
        return UniPoly([1]) if not p.is_zero() else p
    a = p.primitive_int()
    g = z_gcd(a, z_derivative(a))
    return UniPoly(z_divexact(a, g)) if len(g) > 1 else UniPoly(a)


def cauchy_root_bound(p: UniPoly) -> Fraction:
    """1 + max |c_i / c_n|: every real root lies in [-B, B]."""
    if p.is_zero():
        raise AlgebraError("root bound of the zero polynomial")
    lc = abs(p.lc)
    if p.degree == 0:
        return Fraction(1)
    return 1 + max(abs(v) for v in p.c[:-1]) / lc


def root_radius_bound(p: UniPoly) -> Fraction:
    """Upper bound for the modulus of every root: min of Cauchy and a
    power-of-two Fujiwara bound.  Exact zero roots are ignored."""
    if p.is_zero():
        raise AlgebraError("root bound of the zero polynomial")
    c = list(p.c)
    while c and c[0] == 0:
        c.pop(0)
    n = len(c) - 1
    if n <= 0:
        return Fraction(0)
    q = UniPoly(c)
    best = cauchy_root_bound(q)
    lc = abs(c[-1])
    e_max = None
    for i in range(1, n + 1):
        r = abs(c[n - i]) / lc
        if r == 0:
            continue
        if i == n:
            r = r / 2
        # smallest e with (2**e)**i >= r
        e = _ceil_log2_root(r, i)
        e_max = e if e_max is None else max(e_max, e)
    if e_max is None:
        return Fraction(0)
    fuj = 2 * (Fraction(2) ** e_max)
    return min(best, fuj)


def _ceil_log2_root(r: Fraction, i: int) -> int:
    # approximate then correct
    import math
    e = math.ceil((math.log2(r.numerator) - math.log2(r.denominator)) / i) if r else 0
    while Fraction(2) ** (e * i) < r:
        e += 1
    while Fraction(2) ** ((e - 1) * i) >= r:
        e -= 1
    return e


# ---------------------------------------------------------------------------
# real algebraic numbers


@dataclass(frozen=True)
class IsolatingInterval:
    lo: Fraction
    hi: Fraction
    multiplicity: int = 1

    def __post_init__(self):
        if not self.lo < self.hi:
            raise ValueError("isolating interval needs lo < hi")


class RealRoot:
    """A real root of a squarefree integer polynomial, given by an open
    isolating interval whose endpoints are not roots.  Once a bisection hits
    the root exactly, ``exact`` holds its rational value."""

    __slots__ = ("poly", "lo", "hi", "exact", "multiplicity", "_slo")

    def __init__(self, poly: Sequence[int], lo: Fraction, hi: Fraction,
                 multiplicity: int = 1, exact: Fraction | None = None):
        self.poly = tuple(poly)
        self.lo = as_fraction(lo)
        self.hi = as_fraction(hi)
        if exact is None and len(self.poly) == 2:
            exact = Fraction(-self.poly[0], self.poly[1])
        self.exact = exact
        self.multiplicity = multiplicity
        self._slo = None

    @classmethod
    def rational(cls, v: Fraction) -> "RealRoot":
        v = as_fraction(v)
        return cls((-v.numerator, v.denominator), v - 1, v + 1, exact=v)

    def __repr__(self) -> str:
        if self.exact is not None:
            return f"RealRoot({format_rational(self.exact)})"
        return f"RealRoot(~{float(self):.10g})"

    @property
    def mid(self) -> Fraction:
        if self.exact is not None:
            return self.exact
        return (self.lo + self.hi) / 2

    def __float__(self) -> float:
        if self.exact is None:
            self.refine_to_width(max(abs(self.lo), abs(self.hi), Fraction(1)) / 2 ** 52)
        return float(self.mid)

    @property
    def width(self) -> Fraction:
        return Fraction(0) if self.exact is not None else self.hi - self.lo

    def _sign_lo(self) -> int:
        if self._slo is None:
            self._slo = _hom_sign(self.poly, self.lo.numerator, self.lo.denominator)
        return self._slo

    def refine(self, steps: int = 1) -> None:
        for _ in range(steps):
            if self.exact is not None:
                return
            m = (self.lo + self.hi) / 2
            s = _hom_sign(self.poly, m.numerator, m.denominator)
            if s == 0:
                self.exact = m
                return
            if s == self._sign_lo():
                self.lo = m
            else:
                self.hi = m

    def tighten(self) -> None:
        """Halve the interval, also for roots already known exactly."""
        if self.exact is None:
            self.refine()
        else:
            w = (self.hi - self.lo) / 4
            self.lo, self.hi = self.exact - w, self.exact + w

    def refine_to_width(self, w: Fraction, budget: int = 10_000) -> None:
        n = 0
        while self.exact is None and self.hi - self.lo > w:
            self.refine()
            n += 1
            if n > budget:
                raise UndecidedSign("refinement budget exceeded")

    def compare(self, q: Fraction, budget: int = 100_000) -> int:
        """Sign of (self - q)."""
        q = as_fraction(q)
        n = 0
        while True:
            if self.exact is not None:
                return sign(self.exact - q)
            if q <= self.lo:
                return 1
            if q >= self.hi:
                return -1
            s = _hom_sign(self.poly, q.numerator, q.denominator)
            if s == 0:
                return 0
            # root is on the side where sign differs from sign at lo
            return -1 if s != self._sign_lo() else 1

    def sign_of(self, p: UniPoly, budget: int = 4000) -> int:
        """Exact sign of p at this root."""
        if p.is_zero():
            return 0
        if self.exact is not None:
            return sign(p(self.exact))
        if p.degree == 0:
            return sign(p.c[0])
        g = z_gcd(p.primitive_int(), self.poly)
        if len(g) > 1:
            s_lo = _hom_sign(g, self.lo.numerator, self.lo.denominator)
            s_hi = _hom_sign(g, self.hi.numerator, self.hi.denominator)
            if s_lo * s_hi < 0:
                return 0
        zp = p.primitive_int()
        scale_sign = 1 if p.lc > 0 else -1
        steps = 0
        while True:
            if self.exact is not None:
                return sign(p(self.exact))
            if excludes_root(zp, self.lo, self.hi):
                m = self.mid
                return scale_sign * _hom_sign(zp, m.numerator, m.denominator)
            self.refine()
            steps += 1
            if steps > budget:
                raise UndecidedSign("undecided sign: refinement budget exceeded")

    def same_as(self, other: "RealRoot") -> bool:
        if self.exact is not None and other.exact is not None:
            return self.exact == other.exact
        if self.exact is not None:
            return other.compare(self.exact) == 0
        if other.exact is not None:
            return self.compare(other.exact) == 0
        g = z_gcd(self.poly, other.poly)
        while True:
            if self.hi <= other.lo or other.hi <= self.lo:
                return False
            lo, hi = max(self.lo, other.lo), min(self.hi, other.hi)
            if len(g) > 1:
                # a common root inside the overlap makes them equal
                slo = _hom_sign(g, lo.numerator, lo.denominator)
                shi = _hom_sign(g, hi.numerator, hi.denominator)
                if slo * shi < 0 and self.lo <= lo and hi <= self.hi \
                        and _single_in(self, lo, hi) and _single_in(other, lo, hi):
                    return True
            self.refine()
            other.refine()
            if self.exact is not None or other.exact is not None:
                return self.same_as(other)

    def less_than(self, other: "RealRoot") -> bool:
        if self.same_as(other):
            return False
        while True:
            if self.exact is not None:
                return other.compare(self.exact) > 0
            if other.exact is not None:
                return self.compare(other.exact) < 0
            if self.hi <= other.lo:
                return True
            if other.hi <= self.lo:
                return False
            self.refine()
            other.refine()


def detect_rational(r: RealRoot) -> RealRoot:
    """Mark r exact when it is rational: a rational root's denominator
    divides the leading coefficient, so a fine enough interval pins it."""
    if r.exact is not None:
        return r
    lc = abs(r.poly[-1])
    r.refine_to_width(Fraction(1, 4 * lc * lc + 4))
    if r.exact is not None:
        return r
    cand = r.mid.limit_denominator(lc)
    # the candidate must be a root and sit inside the isolating interval
    if r.lo <= cand <= r.hi and _hom_sign(r.poly, cand.numerator, cand.denominator) == 0:
        r.exact = cand
    return r


def _single_in(r: RealRoot, lo: Fraction, hi: Fraction) -> bool:
    # r's polynomial changes sign on [lo, hi] iff its unique root is inside
    s1 = _hom_sign(r.poly, lo.numerator, lo.denominator)
    s2 = _hom_sign(r.poly, hi.numerator, hi.denominator)
    return s1 * s2 < 0


def excludes_root(zp: Sequence[int], lo: Fraction, hi: Fraction) -> bool:
    """Certify that the integer polynomial has no root in [lo, hi] by a
    Taylor bound at the midpoint."""
    m = (lo + hi) / 2
    r = (hi - lo) / 2
    t = UniPoly(list(zp)).taylor_shift(m).c
    if not t:
        return False
    head = abs(t[0])
    if head == 0:
        return False
    tail = Fraction(0)
    rk = Fraction(1)
    for v in t[1:]:
        rk *= r
        tail += abs(v) * rk
        if tail >= head:
            return False
    return True


def real_roots(p: UniPoly) -> list[RealRoot]:
    """Sorted distinct real roots with multiplicities."""
    if p.is_zero():
        raise AlgebraError("real roots of the zero polynomial")
    if p.degree <= 0:
        return []
    parts = squarefree_decomposition(p)
    out: list[RealRoot] = []
    for g, k in parts:
        for lo, hi in _isolate_squarefree(g.primitive_int()):
            out.append(RealRoot(g.primitive_int(), lo, hi, multiplicity=k))
    # intervals of different factors may overlap: separate them
    out = _separate(out)
    out.sort(key=lambda r: r.lo)
    return out


def _separate(roots: list[RealRoot]) -> list[RealRoot]:
    changed = True
    while changed:
        changed = False
        roots.sort(key=lambda r: r.lo)
        for a, b in zip(roots, roots[1:]):
            if b.lo < a.hi:
                a.refine()
                b.refine()
                if a.exact is not None:
                    a.lo, a.hi = _tight_interval(a)
                if b.exact is not None:
                    b.lo, b.hi = _tight_interval(b)
                changed = True
    return roots


def _tight_interval(r: RealRoot) -> tuple[Fraction, Fraction]:
    w = (r.hi - r.lo) / 4
    return r.exact - w, r.exact + w


def _isolate_squarefree(zp: list[int]) -> list[tuple[Fraction, Fraction]]:
    if len(zp) <= 1:
        return []
    seq = z_sturm(zp)
    B = cauchy_root_bound(UniPoly(zp)) + 1
    B = Fraction(_ceil(B))
    total = sturm_count(seq, -B, B)
    out: list[tuple[Fraction, Fraction]] = []
    stack = [(-B, B, total)]
    while stack:
        lo, hi, n = stack.pop()
        if n == 0:
            continue
        if n == 1:
            out.append((lo, hi))
            continue
        m = _nonroot_mid(zp, lo, hi)
        left = sturm_count(seq, lo, m)
        stack.append((m, hi, n - left))
        stack.append((lo, m, left))
    out.sort()
    return out


def _nonroot_mid(zp: Sequence[int], lo: Fraction, hi: Fraction) -> Fraction:
    m = (lo + hi) / 2
    k = 2
    while _hom_sign(zp, m.numerator, m.denominator) == 0:
        m = lo + (hi - lo) * (Fraction(1, 2) + Fraction(1, 2 ** k))
        k += 1
    return m


def _ceil(q: Fraction) -> int:
    return -((-q.numerator) // q.denominator)


def isolate_real_roots(p: UniPoly) -> list[IsolatingInterval]:
    """One isolating interval per distinct real root, with multiplicity."""
    return [IsolatingInterval(r.lo, r.hi, r.multiplicity) if r.exact is None
            else IsolatingInterval(*_tight_interval(r), r.multiplicity)
            for r in real_roots(p)]


def count_real_roots(p: UniPoly, lo: Fraction, hi: Fraction) -> int:
    """Distinct real roots of p in (lo, hi]."""
    sq = squarefree_part(p)
    return sturm_count(z_sturm(sq.primitive_int()), lo, hi)


def rational_between(a: Fraction, b: Fraction) -> Fraction:
    """A rational in (a, b) with small denominator."""
    if not a < b:
        raise ValueError("empty interval")
    # Stern-Brocot style search for the simplest fraction
    from math import floor
    fa = floor(a) + 1
    if fa < b:
        # an integer is available; pick the one nearest zero
        lo_int, hi_int = floor(a) + 1, _ceil(b) - 1
        if lo_int <= 0 <= hi_int:
            return Fraction(0)
        return Fraction(lo_int if lo_int > 0 else hi_int)
    den = 2
    while True:
        k = floor(a * den) + 1
        q = Fraction(k, den)
        if a < q < b:
            return q
        den *= 2


# ---------------------------------------------------------------------------
# sparse bivariate polynomials


class BiPoly:
    """Sparse bivariate polynomial: {(i, j): coefficient of x^i y^j}."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: dict | None = None):
        t = {}
        if terms:
            for k, v in terms.items():
                v = as_fraction(v) if isinstance(v, (int, Fraction)) else v
                if v != 0:
                    t[(int(k[0]), int(k[1]))] = v
        self.terms = t
        self._hash = None

    @classmethod
    def const(cls, v) -> "BiPoly":
        return cls({(0, 0): v})

    @classmethod
    def x(cls) -> "BiPoly":
        return cls({(1, 0): 1})

    @classmethod
    def y(cls) -> "BiPoly":
        return cls({(0, 1): 1})

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def degree(self) -> int:
        return max((i + j for i, j in self.terms), default=-1)

    def degree_in(self, var: str) -> int:
        k = 0 if var == "x" else 1
        return max((e[k] for e in self.terms), default=-1)

    def __eq__(self, other) -> bool:
        if not isinstance(other, BiPoly):
            other = BiPoly.const(other)
        return self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __repr__(self) -> str:
        return f"BiPoly({self.to_str()})"

    def to_str(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for (i, j) in sorted(self.terms, key=lambda e: (-(e[0] + e[1]), -e[0])):
            v = self.terms[(i, j)]
            mono = "*".join(m for m in (_pow_str("x", i), _pow_str("y", j)) if m)
            neg = v < 0
            a = abs(v)
            if mono:
                coef = "" if a == 1 else (format_rational(a) if a.denominator == 1
                                          else f"({format_rational(a)})")
                body = f"{coef}*{mono}" if coef else mono
            else:
                body = format_rational(a) if a.denominator == 1 else f"({format_rational(a)})"
            parts.append(("- " if neg else "+ ") + body)
        s = " ".join(parts)
        return s[2:] if s.startswith("+ ") else "-" + s[2:]

    def __neg__(self) -> "BiPoly":
        return BiPoly({k: -v for k, v in self.terms.items()})

    def __add__(self, other) -> "BiPoly":
        if not isinstance(other, BiPoly):
            other = BiPoly.const(other)
        t = dict(self.terms)
        for k, v in other.terms.items():
            t[k] = t.get(k, 0) + v
        return BiPoly(t)

    __radd__ = __add__

    def __sub__(self, other) -> "BiPoly":
        if not isinstance(other, BiPoly):
            other = BiPoly.const(other)
        return self + (-other)

    def __rsub__(self, other) -> "BiPoly":
        return BiPoly.const(other) - self

    def __mul__(self, other) -> "BiPoly":
        if not isinstance(other, BiPoly):
            return BiPoly({k: v * other for k, v in self.terms.items()})
        t: dict = {}
        for (i, j), u in self.terms.items():
            for (k, l), v in other.terms.items():
                key = (i + k, j + l)
                t[key] = t.get(key, 0) + u * v
        return BiPoly(t)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "BiPoly":
        if k < 0:
            raise ValueError("negative exponent")
        out = BiPoly.const(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def diff(self, var: str) -> "BiPoly":
        if var == "x":
            return BiPoly({(i - 1, j): i * v for (i, j), v in self.terms.items() if i})
        if var == "y":
            return BiPoly({(i, j - 1): j * v for (i, j), v in self.terms.items() if j})
        raise ValueError(f"unknown variable {var!r}")

    def __call__(self, x, y):
        return sum((v * x ** i * y ** j for (i, j), v in self.terms.items()), Fraction(0))

    def homogeneous_part(self, k: int) -> "BiPoly":
        return BiPoly({e: v for e, v in self.terms.items() if e[0] + e[1] == k})

    def top_form(self) -> "BiPoly":
        return self.homogeneous_part(self.degree)

    def content(self) -> Fraction:
        """Positive rational c with self/c primitive integral (lex-leading term positive)."""
        if not self.terms:
            return Fraction(0)
        num = 0
        den = 1
        for v in self.terms.values():
            num = gcd(num, v.numerator)
            den = den * v.denominator // gcd(den, v.denominator)
        return Fraction(num, den)

    def primitive(self) -> "BiPoly":
        """Divide by content; sign normalised so the leading term (highest
        degree, then highest x power) is positive."""
        if not self.terms:
            return self
        c = self.content()
        lead = max(self.terms, key=lambda e: (e[0] + e[1], e[0]))
        if self.terms[lead] < 0:
            c = -c
        return BiPoly({k: v / c for k, v in self.terms.items()})

    def coeffs_in(self, var: str) -> list[UniPoly]:
        """Coefficients as polynomials in the other variable, indexed by the
        power of ``var``."""
        k = 0 if var == "x" else 1
        n = self.degree_in(var)
        rows: list[dict] = [dict() for _ in range(n + 1)]
        for e, v in self.terms.items():
            rows[e[k]][e[1 - k]] = v
        out = []
        for r in rows:
            m = max(r, default=-1)
            out.append(UniPoly([r.get(i, 0) for i in range(m + 1)]))
        return out

    def substitute(self, X: UniPoly, Y: UniPoly, D: UniPoly | None = None) -> UniPoly:
        """Numerator of self(X/D, Y/D) times D**deg; D defaults to 1."""
        n = self.degree
        if n < 0:
            return UniPoly()
        one = UniPoly([1])
        D = D if D is not None else one
        xp = [one]
        yp = [one]
        dp = [one]
        for _ in range(n):
            xp.append(xp[-1] * X)
            yp.append(yp[-1] * Y)
            dp.append(dp[-1] * D)
        acc = UniPoly()
        for (i, j), v in self.terms.items():
            acc = acc + xp[i] * yp[j] * dp[n - i - j] * v
        return acc

    def compose(self, X: "BiPoly", Y: "BiPoly") -> "BiPoly":
        """self(X(x,y), Y(x,y))."""
        n = max(self.degree, 0)
        xp = [BiPoly.const(1)]
        yp = [BiPoly.const(1)]
        mx = max((i for i, _ in self.terms), default=0)
        my = max((j for _, j in self.terms), default=0)
        for _ in range(mx):
            xp.append(xp[-1] * X)
        for _ in range(my):
            yp.append(yp[-1] * Y)
        acc = BiPoly()
        for (i, j), v in self.terms.items():
            acc = acc + xp[i] * yp[j] * v
        del n
        return acc

    def restrict_x(self, x0) -> UniPoly:
        """Polynomial in y after x := x0."""
        return UniPoly([c(x0) for c in self.coeffs_in("y")])

    def restrict_y(self, y0) -> UniPoly:
        return UniPoly([c(y0) for c in self.coeffs_in("x")])

    def binary_form_dehomog(self) -> UniPoly:
        """For a form F(x,y) of degree k: F(1, t) as a polynomial in t."""
        k = self.degree
        return UniPoly([self.terms.get((k - j, j), 0) for j in range(k + 1)])


def _pow_str(v: str, k: int) -> str:
    if k == 0:
        return ""
    if k == 1:
        return v
    return f"{v}^{k}"


X = BiPoly.x()
Y = BiPoly.y()


def differentiate(p: BiPoly, var: str) -> BiPoly:
    return p.diff(var)


# ---------------------------------------------------------------------------
# resultants


def _det_int(m: list[list[int]]) -> int:
    """Bareiss fraction-free determinant."""
    n = len(m)
    if n == 0:
        return 1
    a = [row[:] for row in m]
    s = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    s = -s
                    break
            else:
                return 0
        akk = a[k][k]
        rowk = a[k]
        for i in range(k + 1, n):
            ai = a[i]
            aik = ai[k]
            for j in range(k + 1, n):
                ai[j] = (ai[j] * akk - aik * rowk[j]) // prev
            ai[k] = 0
        prev = akk
    return s * a[n - 1][n - 1]


def sylvester_int(p: Sequence[int], q: Sequence[int]) -> int:
    """Sylvester determinant of integer coefficient lists (lowest first) with
    formal degrees len-1; rows of p first."""
    m = len(p) - 1
    n = len(q) - 1
    if m < 0 or n < 0:
        raise DegenerateResultant("degenerate resultant")
    size = m + n
    if size == 0:
        return 1
    rows = []
    ph = list(reversed(p))
    qh = list(reversed(q))
    for i in range(n):
        rows.append([0] * i + ph + [0] * (size - i - m - 1))
    for i in range(m):
        rows.append([0] * i + qh + [0] * (size - i - n - 1))
    return _det_int(rows)


def resultant_univariate(p: UniPoly, q: UniPoly) -> Fraction:
    if p.is_zero() and q.is_zero():
        raise DegenerateResultant("degenerate resultant")
    if p.is_zero() or q.is_zero():
        return Fraction(0)
    pc, dp = p.integer_scaled()
    qc, dq = q.integer_scaled()
    r = sylvester_int(pc, qc)
    return Fraction(r, dp ** q.degree * dq ** p.degree)


def _interpolate(xs: Sequence[int], ys: Sequence) -> UniPoly:
    """Newton interpolation through integer nodes."""
    n = len(xs)
    coef = [Fraction(v) for v in ys]
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    acc = UniPoly([coef[-1]])
    for i in range(n - 2, -1, -1):
        acc = acc * UniPoly([-xs[i], 1]) + coef[i]
    return acc


def _scaled_rows(p: BiPoly, var: str) -> tuple[list[list[int]], int]:
    rows = p.coeffs_in(var)
    den = 1
    for r in rows:
        for v in r.c:
            den = den * v.denominator // gcd(den, v.denominator)
    return [[v.numerator * (den // v.denominator) for v in r.c] for r in rows], den


def _hval(c: Sequence[int], x: int) -> int:
    acc = 0
    for v in reversed(c):
        acc = acc * x + v
    return acc


def resultant(p: BiPoly, q: BiPoly, var: str = "y") -> UniPoly:
    """Sylvester resultant Res_var(p, q) as a polynomial in the other
    variable (rows of p first).  Computed by evaluation at integer nodes and
    interpolation."""
    if p.is_zero() and q.is_zero():
        raise DegenerateResultant("degenerate resultant")
    if p.is_zero() or q.is_zero():
        return UniPoly()
    other = "y" if var == "x" else "x"
    pr, dp = _scaled_rows(p, var)
    qr, dq = _scaled_rows(q, var)
    m, n = len(pr) - 1, len(qr) - 1
    bound = n * max(p.degree_in(other), 0) + m * max(q.degree_in(other), 0)
    bound = min(bound, p.degree * q.degree)
    xs = [k - bound // 2 for k in range(bound + 1)]
    vals = []
    for xv in xs:
        pe = [_hval(c, xv) for c in pr]
        qe = [_hval(c, xv) for c in qr]
        vals.append(sylvester_int(pe, qe))
    r = _interpolate(xs, vals)
    return r * Fraction(1, dp ** n * dq ** m)


def fibre_resultant(f: BiPoly, h: BiPoly, var: str) -> list[UniPoly]:
    """Res_var(f - t, h) as a list of coefficient polynomials in t, indexed by
    the power of the other variable."""
    other = "y" if var == "x" else "x"
    n = max(h.degree_in(var), 0)
    m = max(f.degree_in(var), 0)
    bound = n * max(f.degree_in(other), 0) + m * max(h.degree_in(other), 0)
    bound = min(bound, max(f.degree, 1) * h.degree)
    # the t-degree is at most deg_var h
    ts = [k - n // 2 for k in range(n + 1)]
    specs = [resultant(f - t, h, var) for t in ts]
    coeffs = [_interpolate(ts, [s.coeff(k) for s in specs]) for k in range(bound + 1)]
    while coeffs and coeffs[-1].is_zero():
        coeffs.pop()
    return coeffs


def fibre_resultant_lc(f: BiPoly, h: BiPoly, var: str) -> UniPoly:
    """Leading coefficient, as a polynomial in t, of Res_var(f - t, h) viewed
    as a polynomial in the other variable."""
    coeffs = fibre_resultant(f, h, var)
    return coeffs[-1] if coeffs else UniPoly()


# ---------------------------------------------------------------------------
# algebraic points given by a rational parametrisation


@dataclass(frozen=True)
class IntervalBox:
    x_lo: Fraction
    x_hi: Fraction
    y_lo: Fraction
    y_hi: Fraction

    def __post_init__(self):
        if self.x_lo > self.x_hi or self.y_lo > self.y_hi:
            raise ValueError("empty box")

    @property
    def width(self) -> Fraction:
        return max(self.x_hi - self.x_lo, self.y_hi - self.y_lo)


def _range_of(p: UniPoly, lo: Fraction, hi: Fraction) -> tuple[Fraction, Fraction]:
    """Rational enclosure of p over [lo, hi] (Taylor form at the midpoint)."""
    m = (lo + hi) / 2
    r = (hi - lo) / 2
    t = p.taylor_shift(m).c
    if not t:
        return Fraction(0), Fraction(0)
    spread = sum((abs(v) * r ** k for k, v in enumerate(t) if k), Fraction(0))
    return t[0] - spread, t[0] + spread


class ParamPoint:
    """The real point (X(t)/D(t), Y(t)/D(t)) at a real algebraic t, with D
    positive near t."""

    __slots__ = ("X", "Y", "D", "t", "_cache")

    def __init__(self, X: UniPoly, Y: UniPoly, D: UniPoly, t: RealRoot):
        self.X, self.Y, self.D, self.t = X, Y, D, t
        self._cache: dict = {}

    def pullback(self, p: BiPoly) -> UniPoly:
        key = p
        got = self._cache.get(key)
        if got is None:
            got = p.substitute(self.X, self.Y, self.D)
            self._cache[key] = got
        return got

    def box(self) -> IntervalBox:
        lo, hi = self.t.lo, self.t.hi
        if self.t.exact is not None:
            lo = hi = self.t.exact
        xl, xh = _quot_range(self.X, self.D, lo, hi)
        yl, yh = _quot_range(self.Y, self.D, lo, hi)
        return IntervalBox(xl, xh, yl, yh)

    def approx(self, width: Fraction = Fraction(1, 2 ** 40)) -> tuple[float, float]:
        self.t.refine_to_width(width)
        t = self.t.mid
        d = self.D(t)
        return float(self.X(t) / d), float(self.Y(t) / d)


def _quot_range(N: UniPoly, D: UniPoly, lo: Fraction, hi: Fraction):
    nl, nh = _range_of(N, lo, hi)
    dl, dh = _range_of(D, lo, hi)
    if dl <= 0:
        return -Fraction(10) ** 30, Fraction(10) ** 30
    cands = [nl / dl, nl / dh, nh / dl, nh / dh]
    return min(cands), max(cands)


def refine_to_sign(p: BiPoly, point: ParamPoint, budget: int = 4000) -> int:
    """Exact sign of p at an algebraic point.  The point's defining
    polynomial in t gives the zero certificate; otherwise the isolating
    interval is refined until the pulled-back polynomial is certified
    root-free on it."""
    N = point.pullback(p)
    s = point.t.sign_of(N, budget=budget)
    if s == 0:
        return 0
    k = max(p.degree, 0)
    if k % 2 == 1:
        s *= point.t.sign_of(point.D, budget=budget)
    return s


def sign_at_rational_point(p: BiPoly, x: Fraction, y: Fraction) -> int:
    return sign(p(x, y))
