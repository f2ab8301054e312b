"""Exact feasibility of mixed equality / strict-inequality rational systems.

Constraints are ``(coeffs, const)`` pairs read as ``coeffs . x + const``
compared against zero.  Equalities are removed by substitution; the
remaining inequalities go through Fourier-Motzkin elimination, tracking
strictness, and a witness point is rebuilt by back substitution.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Row = tuple  # (tuple of Fraction coefficients, Fraction const, strict: bool)


def _normalize(coeffs, const, strict):
    # scale so the first nonzero coefficient has absolute value 1
    for c in coeffs:
        if c:
            s = abs(c)
            return tuple(x / s for x in coeffs), const / s, strict
    return tuple(coeffs), const, strict


def _value(coeffs, const, x) -> Fraction:
    return sum((c * v for c, v in zip(coeffs, x)), Fraction(0)) + const


def _solve_ineqs(rows: list, nvars: int):
    """A point satisfying every row (``> 0`` if strict else ``>= 0``), or None."""
    rows = list(dict.fromkeys(_normalize(*r) for r in rows))
    if nvars == 0:
        for _, const, strict in rows:
            if const < 0 or (strict and const == 0):
                return None
        return ()
    v = nvars - 1
    lower, upper, rest = [], [], []
    for coeffs, const, strict in rows:
        a = coeffs[v]
        if a > 0:
            lower.append((coeffs, const, strict))
        elif a < 0:
            upper.append((coeffs, const, strict))
        else:
            rest.append((coeffs[:v], const, strict))
    # a*x_v + r(x) > 0 with a>0: x_v > -r/a ; with a<0: x_v < r/|a|
    combined = list(rest)
    for lc, lk, ls in lower:
        for uc, uk, us in upper:
            la, ua = lc[v], -uc[v]
            coeffs = tuple(lc[i] * ua + uc[i] * la for i in range(v))
            combined.append((coeffs, lk * ua + uk * la, ls or us))
    sub = _solve_ineqs(combined, v)
    if sub is None:
        return None
    lo = hi = None
    lo_strict = hi_strict = False
    for coeffs, const, strict in lower:
        bound = -(_value(coeffs[:v], const, sub)) / coeffs[v]
        if lo is None or bound > lo or (bound == lo and strict):
            lo, lo_strict = bound, strict
    for coeffs, const, strict in upper:
        bound = _value(coeffs[:v], const, sub) / -coeffs[v]
        if hi is None or bound < hi or (bound == hi and strict):
            hi, hi_strict = bound, strict
    if lo is not None and hi is not None:
        if lo == hi:
            if lo_strict or hi_strict:
                return None
            x = lo
        elif lo > hi:
            return None
        else:
            x = (lo + hi) / 2
    elif lo is not None:
        x = lo + 1
    elif hi is not None:
        x = hi - 1
    else:
        x = Fraction(0)
    return sub + (x,)


def feasible_point(equalities: Sequence, strict: Sequence, dim: int, nonstrict: Sequence = ()):
    """Rational point with every equality ``= 0`` and every strict row ``> 0``.

    Returns a tuple of Fractions, or None when the system is infeasible.
    """
    eqs = [([Fraction(c) for c in co], Fraction(k)) for co, k in equalities]
    ineqs = [([Fraction(c) for c in co], Fraction(k), True) for co, k in strict]
    ineqs += [([Fraction(c) for c in co], Fraction(k), False) for co, k in nonstrict]
    # substitutions: x_j = sum(s_i x_i) + s0, stored in elimination order
    subs = []
    free = list(range(dim))
    while eqs:
        coeffs, const = eqs.pop()
        j = next((i for i in free if coeffs[i]), None)
        if j is None:
            if const != 0:
                return None
            continue
        a = coeffs[j]
        expr = [-c / a for c in coeffs]
        expr[j] = Fraction(0)
        e0 = -const / a
        subs.append((j, expr, e0))
        free.remove(j)

        def sub(row_c, row_k):
            f = row_c[j]
            if not f:
                return row_c, row_k
            new = [c + f * e for c, e in zip(row_c, expr)]
            new[j] = Fraction(0)
            return new, row_k + f * e0

        eqs = [sub(c, k) for c, k in eqs]
        ineqs = [(*sub(c, k), s) for c, k, s in ineqs]
    index = {v: i for i, v in enumerate(free)}
    rows = [(tuple(c[v] for v in free), k, s) for c, k, s in ineqs]
    point = _solve_ineqs(rows, len(free))
    if point is None:
        return None
    x = [Fraction(0)] * dim
    for v in free:
        x[v] = point[index[v]]
    for j, expr, e0 in reversed(subs):
        x[j] = _value(expr, e0, x)
    return tuple(x)
