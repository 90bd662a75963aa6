"""Upper bounds for the index at infinity and their check against the
computed index."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

HALF = Fraction(1, 2)


def nn_floor(x) -> int:
    """Floor, replaced by 0 when negative."""
    return max(0, math.floor(x))


@dataclass(frozen=True)
class Bound:
    name: str
    value: Fraction
    satisfied: bool
    # hard bounds are theorems; a violation means an upstream bug
    hard: bool = True


@dataclass
class BoundReport:
    bounds: list[Bound] = field(default_factory=list)

    def __getitem__(self, name: str) -> Bound:
        for b in self.bounds:
            if b.name == name:
                return b
        raise KeyError(name)

    def value(self, name: str) -> Fraction:
        return self[name].value

    @property
    def violations(self) -> list[Bound]:
        return [b for b in self.bounds if b.hard and not b.satisfied]


def _z(v) -> int:
    return 0 if v is None else v


def evaluate_bounds(index: int, profiles, n_Lf: int, d: int, d_Re: int) -> BoundReport:
    """All bounds, with the non-negative floor convention.  Profiles whose
    branch data is unknown contribute nothing (which only weakens a bound);
    the sign-gap value then becomes informational."""
    base = 1 + d_Re - 2 * n_Lf
    refined = refined2 = delta = signgap = Fraction(base)
    sign_exact = True
    for p in profiles:
        R, S, K = _z(p.deg_R_red), _z(p.deg_S), _z(p.deg_K)
        refined -= HALF * nn_floor(Fraction(R - 1, 2)) + S + K
        refined2 -= nn_floor(Fraction(R, 2)) + K
        delta -= nn_floor(Fraction(_z(p.delta), 2))
        if p.r_p is None or p.s_p is None or not p.exact:
            sign_exact = False
        signgap -= HALF * (nn_floor(Fraction(_z(p.r_p), 2)) + nn_floor(Fraction(_z(p.s_p), 2))) + S + K
    if n_Lf >= 2:
        l1 = d - 3
    elif n_Lf == 1:
        l1 = d - 3 if d >= 4 else 0
    else:
        l1 = 1
    rep = BoundReport()
    add = rep.bounds.append
    add(Bound("bezout", Fraction(d - 1), abs(index) <= d - 1))
    add(Bound("durfee", Fraction(max(1, d - 3)), index <= max(1, d - 3)))
    add(Bound("linear", Fraction(base), index <= base))
    add(Bound("refined", refined, index <= refined))
    add(Bound("refined2", refined2, index <= refined2))
    add(Bound("delta", delta, index <= delta))
    add(Bound("signgap", signgap, index <= signgap, hard=sign_exact))
    add(Bound("l1_case", Fraction(l1), index == 1 if n_Lf == 0 else index <= l1))
    return rep
