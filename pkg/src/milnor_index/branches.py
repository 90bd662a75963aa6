"""Local germs of the Milnor curve at a rational point at infinity, tangent
cones and Newton-Puiseux branch data."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .exact_algebra import (
    BiPoly,
    RealRoot,
    UniPoly,
    detect_rational,
    real_roots,
    squarefree_decomposition,
)

MAX_DEPTH = 12


def rotate_to_x_axis(p: BiPoly, a: int, b: int) -> BiPoly:
    """p(aX - bY, bX + aY): the direction (a, b) becomes the X axis."""
    X, Y = BiPoly.x(), BiPoly.y()
    return p.compose(X * a - Y * b, X * b + Y * a)


def germ_at_infinity(h: BiPoly, a: int, b: int) -> BiPoly:
    """Dehomogenised h at [a:b:0] in the chart (u, z) = (Y/X, 1/X), stored
    with x standing for u and y for z."""
    g = rotate_to_x_axis(h, a, b)
    k = g.degree
    terms = {}
    for (i, j), c in g.terms.items():
        terms[(j, k - i - j)] = c
    return BiPoly(terms).primitive()


def lowest_form(g: BiPoly) -> BiPoly:
    m = min(i + j for (i, j) in g.terms)
    return g.homogeneous_part(m)


@dataclass
class ConeLine:
    """A real line of the tangent cone: z = 0 (``at_infinity``) or u = mu*z."""
    at_infinity: bool
    mu: RealRoot | None
    multiplicity: int
    real_branches: int = 0
    singular_real: bool = False
    nonreal: bool = False
    exact: bool = True

    @property
    def rational_mu(self) -> Fraction | None:
        if self.mu is None:
            return None
        if self.mu.exact is not None:
            return self.mu.exact
        return None


@dataclass
class TangentCone:
    form: BiPoly
    lines: list[ConeLine] = field(default_factory=list)
    # multiplicities of conjugate pairs of complex lines
    complex_pairs: list[int] = field(default_factory=list)

    @property
    def degree(self) -> int:
        return self.form.degree


def _as_exact(r: RealRoot) -> RealRoot:
    return detect_rational(r)


def tangent_cone(g: BiPoly) -> TangentCone:
    """Real lines (with multiplicity) and complex pairs of the lowest form."""
    C = lowest_form(g)
    m = C.degree
    # C(u, z) = sum c_j u^j z^(m - j); as a polynomial in mu = u/z
    cm = UniPoly([C.terms.get((j, m - j), 0) for j in range(m + 1)])
    k_inf = m - cm.degree
    cone = TangentCone(C)
    if k_inf > 0:
        cone.lines.append(ConeLine(True, None, k_inf))
    if cm.degree > 0:
        for part, k in squarefree_decomposition(cm):
            rr = real_roots(part)
            for r in rr:
                r.multiplicity = k
                cone.lines.append(ConeLine(False, _as_exact(r), k))
            pairs = (part.degree - len(rr)) // 2
            cone.complex_pairs.extend([k] * pairs)
    return cone


@dataclass(frozen=True)
class Branch:
    real: bool | None
    multiplicity: int
    exact: bool


def _divide_u(G: BiPoly) -> tuple[BiPoly, int]:
    k = 0
    while G.terms and all(i > 0 for (i, _) in G.terms):
        G = BiPoly({(i - 1, j): c for (i, j), c in G.terms.items()})
        k += 1
    return G, k


def _divide_v(G: BiPoly) -> BiPoly:
    m = min(j for (_, j) in G.terms)
    if m == 0:
        return G
    return BiPoly({(i, j - m): c for (i, j), c in G.terms.items()})


def _edges(G: BiPoly):
    """Edges of the Newton polygon responsible for roots U(V) -> 0, as
    (q, start_point, end_point)."""
    pts = G.terms
    j0 = min(j for (i, j) in pts if i == 0)
    cur = (0, j0)
    out = []
    while True:
        best = None
        for (i, j) in pts:
            if i > cur[0] and j < cur[1]:
                q = Fraction(cur[1] - j, i - cur[0])
                if best is None or q > best[0] or (q == best[0] and i > best[1][0]):
                    best = (q, (i, j))
        if best is None:
            return out
        out.append((best[0], cur, best[1]))
        cur = best[1]


def puiseux_branches(G: BiPoly, threshold: Fraction, depth: int = 0) -> list[Branch]:
    """Branches U = c V^q + ... of G(U, V) = 0 with q > threshold."""
    G, k = _divide_u(G)
    out = [Branch(True, 1, True) for _ in range(k)]
    if not G.terms:
        return out
    for q, start, end in _edges(G):
        if q <= threshold:
            continue
        n, e = q.numerator, q.denominator
        ci, cj = start
        const = ci * n + cj * e
        coeffs = []
        for kk in range((end[0] - ci) // e + 1):
            i = ci + kk * e
            num = const - i * n
            j = num // e if num % e == 0 else None
            coeffs.append(G.terms.get((i, j), Fraction(0)) if j is not None else Fraction(0))
        phi = UniPoly(coeffs)
        for part, mu in squarefree_decomposition(phi):
            rr = [_as_exact(r) for r in real_roots(part)]
            ncomplex = part.degree - len(rr)
            if mu == 1:
                out.extend(Branch(True, e, True) for _ in rr)
                # each conjugate pair of roots w gives two non-real branches
                out.extend(Branch(False, e, True) for _ in range(ncomplex))
                continue
            out.extend(Branch(False, e, True) for _ in range(ncomplex))
            for r in rr:
                if e == 1 and r.exact is not None and depth < MAX_DEPTH:
                    out.extend(_recurse(G, n, r.exact, depth))
                else:
                    out.append(Branch(None, e, False))
    return out


def _recurse(G: BiPoly, n: int, w0: Fraction, depth: int) -> list[Branch]:
    """Branches with leading term w0 V^n: substitute U = V^n (w0 + U1)."""
    V = BiPoly.y()
    U1 = BiPoly.x()
    Vn = V ** n
    G1 = G.compose(Vn * w0 + Vn * U1, V)
    G1 = _divide_v(G1)
    return puiseux_branches(G1, Fraction(0), depth + 1)


def _shear(G: BiPoly, mu: Fraction) -> BiPoly:
    """G(U + mu V, V)."""
    U, V = BiPoly.x(), BiPoly.y()
    return G.compose(U + V * mu, V)


def _swap(G: BiPoly) -> BiPoly:
    return BiPoly({(j, i): c for (i, j), c in G.terms.items()})


def classify_lines(g: BiPoly, cone: TangentCone) -> TangentCone:
    """Fill branch data for every real line of the cone."""
    for line in cone.lines:
        if line.at_infinity:
            br = puiseux_branches(_swap(g), Fraction(1))
        elif line.multiplicity == 1:
            br = [Branch(True, 1, True)]
        elif line.rational_mu is not None:
            br = puiseux_branches(_shear(g, line.rational_mu), Fraction(1))
        else:
            br = [Branch(None, 1, False)]
        line.real_branches = sum(1 for b in br if b.real)
        line.singular_real = any(b.real and b.multiplicity > 1 for b in br)
        line.nonreal = any(b.real is False for b in br)
        line.exact = all(b.exact for b in br)
    return cone


def intersection_with_infinity(g: BiPoly) -> int:
    """Order in u of g(u, 0)."""
    orders = [i for (i, j) in g.terms if j == 0]
    if not orders:
        raise ValueError("L^infinity is a component")
    return min(orders)


def line_label(line: ConeLine, a: int, b: int) -> str:
    """The cone line as a projective line through [a:b:0]."""
    if line.at_infinity:
        return "z=0"
    # u - mu z = 0 with u = (-b x + a y)/(a x + b y), z = 1/(a x + b y) in
    # the rotated scale: (-b x + a y) - mu (a^2 + b^2) z = 0
    p, q = -b, a
    flip = -1 if (p < 0 or (p == 0 and q < 0)) else 1
    lin = _lin(flip * p, "x", flip * q, "y")
    mu = line.rational_mu
    if mu is None:
        return f"{lin}{_fmt_coef(-flip * (a * a + b * b) * float(line.mu))}*z=0"
    c = -flip * (a * a + b * b) * mu
    if c == 0:
        return f"{lin}=0"
    return f"{lin}{_fmt_coef(c)}*z=0"


def _lin(p: int, x: str, q: int, y: str) -> str:
    parts = []
    for c, v in ((p, x), (q, y)):
        if c == 0:
            continue
        s = v if abs(c) == 1 else f"{abs(c)}*{v}"
        parts.append(("-" if c < 0 else "+") + s)
    txt = "".join(parts)
    return txt[1:] if txt.startswith("+") else txt


def _fmt_coef(c) -> str:
    if isinstance(c, Fraction):
        s = str(abs(c)) if c.denominator == 1 else f"({abs(c)})"
    else:
        s = f"{abs(c):.6g}"
    return ("-" if c < 0 else "+") + s
