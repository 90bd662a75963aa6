from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

import pytest
import sympy as sp
from hypothesis import settings

from milnor_index.exact_algebra import BiPoly, UniPoly
from milnor_index.input_output import parse_polynomial
from milnor_index.pipeline_cli import analyze_polynomial

# sympy calls make per-example timing noisy
settings.register_profile("exact", deadline=None, max_examples=60)
settings.load_profile("exact")

X, Y, T = sp.symbols("x y t")

BROUGHTON = "x^2*y + x"
CUSP_FIVE = "y^5 + x^2*y^3 - y"
PARABOLA = "(x - y^2)*((x - y^2)*(y^2 + 1) - 1)"
TWO_POINTS = "x^2 + (x*y - 1)^2"
GOLDEN = [BROUGHTON, CUSP_FIVE, PARABOLA, TWO_POINTS]


def to_sympy(p: BiPoly):
    return sp.Add(*[sp.Rational(v.numerator, v.denominator) * X**i * Y**j
                    for (i, j), v in p.terms.items()])


def uni_to_sympy(p: UniPoly, var=T):
    return sp.Add(*[sp.Rational(c.numerator, c.denominator) * var**k for k, c in enumerate(p.c)])


def from_sympy(e) -> BiPoly:
    poly = sp.Poly(sp.expand(e), X, Y)
    return BiPoly({m: Fraction(int(c.p), int(c.q)) for m, c in poly.terms()})


def same_up_to_constant(a, b) -> bool:
    q = sp.cancel(sp.expand(a) / sp.expand(b))
    return q.is_number and q != 0


@lru_cache(maxsize=None)
def analysis(text: str, center=None):
    return analyze_polynomial(parse_polynomial(text), text, center=center)


@pytest.fixture(scope="session")
def golden_reports():
    return {s: analysis(s) for s in GOLDEN}


FUZZ_COUNT, FUZZ_DEGREE, FUZZ_COEFF, FUZZ_SEED = 200, 5, 5, 7


@lru_cache(maxsize=None)
def fuzz_run():
    """One shared fuzz batch with the doubled-radius recomputation; returns
    the reports and the wall time in seconds."""
    import time

    from milnor_index.pipeline_cli import RunConfig, run

    cfg = RunConfig(fuzz=FUZZ_COUNT, degree=FUZZ_DEGREE, coeff_bound=FUZZ_COEFF,
                    seed=FUZZ_SEED, stability=True)
    start = time.perf_counter()
    reports, _ = run(cfg)
    return reports, time.perf_counter() - start


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
