"""Sparse multivariate polynomials with exact rational coefficients.

A monomial is a tuple of ``(variable, exponent)`` pairs sorted by variable
name, with every exponent positive; the empty tuple is the monomial 1.
A polynomial maps monomials to nonzero coefficients.  Integral coefficients
are stored as ``int`` and the rest as ``Fraction`` so that the common case of
integer matrices stays on fast machine arithmetic.

Text syntax::

    3/10  0.25      constants
    1 - q           terms joined by + / -
    2*a+*b-^3       coefficient, then factors joined by *

Variable names match ``[A-Za-z][A-Za-z0-9_]*`` optionally followed by a run
of ``+``/``-`` characters (``a+``, ``h1-``).  Such a suffix belongs to the
name only when the next character is ``*``, ``^``, whitespace or the end of
input, so ``1-q`` is a difference while ``a+*a-`` is a product.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Union

from .errors import DivisionByZero, NotDivisible, ParseError, UnboundVariable

Monomial = tuple  # tuple[tuple[str, int], ...]
Coefficient = Union[int, Fraction]
Scalar = Union[int, Fraction]

ONE_MONO: Monomial = ()

_VAR_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*")
_SUFFIX_RE = re.compile(r"[+-]+(?=$|[\s*^])")
_RAT_RE = re.compile(r"\d+(?:\.\d+|/\d+)?")
_INT_RE = re.compile(r"\d+")
VARIABLE_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*[+-]*\Z")


def _norm(c):
    if type(c) is Fraction and c.denominator == 1:
        return c.numerator
    return c


def _cdiv(c, d):
    if type(c) is int and type(d) is int and c % d == 0:
        return c // d
    return _norm(Fraction(c) / d)


def as_rational(value) -> Fraction:
    """Coerce int, Fraction, decimal string or ``p/q`` string to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"not a rational number: {value!r}") from exc
    if isinstance(value, Polynomial):
        if not value.is_constant():
            raise TypeError(f"{value} is not a constant")
        return Fraction(value.constant_term())
    raise TypeError(f"cannot interpret {value!r} as a rational")


@lru_cache(maxsize=1 << 16)
def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    out = []
    i = j = 0
    la, lb = len(a), len(b)
    while i < la and j < lb:
        va, ea = a[i]
        vb, eb = b[j]
        if va == vb:
            out.append((va, ea + eb))
            i += 1
            j += 1
        elif va < vb:
            out.append(a[i])
            i += 1
        else:
            out.append(b[j])
            j += 1
    out.extend(a[i:])
    out.extend(b[j:])
    return tuple(out)


def mono_div(a: Monomial, b: Monomial):
    """Return a / b as a monomial, or None when b does not divide a."""
    da = dict(a)
    for v, e in b:
        have = da.get(v, 0)
        if have < e:
            return None
        if have == e:
            del da[v]
        else:
            da[v] = have - e
    return tuple(sorted(da.items()))


def mono_degree(m: Monomial) -> int:
    return sum(e for _, e in m)


def make_monomial(exponents: Mapping[str, int]) -> Monomial:
    for v, e in exponents.items():
        if not v:
            raise ValueError("variable names must be nonempty")
        if e < 0:
            raise ValueError(f"negative exponent for {v}")
    return tuple(sorted((v, e) for v, e in exponents.items() if e))


def _grlex_key(m: Monomial, order: Mapping[str, int]):
    # higher key = larger monomial; earlier names dominate within a degree
    vec = [0] * len(order)
    for v, e in m:
        vec[order[v]] = e
    return (mono_degree(m), vec)


def _mono_str(m: Monomial) -> str:
    return "*".join(v if e == 1 else f"{v}^{e}" for v, e in m)


class Polynomial:
    """Immutable sparse polynomial over Q in string-named variables."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, Scalar] | None = None):
        clean = {}
        if terms:
            for m, c in terms.items():
                if c:
                    clean[m] = _norm(c)
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict) -> "Polynomial":
        p = object.__new__(cls)
        p._terms = terms
        p._hash = None
        return p

    @classmethod
    def const(cls, value) -> "Polynomial":
        c = _norm(as_rational(value)) if not isinstance(value, int) else value
        return cls._raw({ONE_MONO: c} if c else {})

    @classmethod
    def var(cls, name: str, power: int = 1) -> "Polynomial":
        if not VARIABLE_RE.match(name):
            raise ValueError(f"illegal variable name {name!r}")
        if power < 0:
            raise ValueError("negative power")
        if power == 0:
            return ONE
        return cls._raw({((name, power),): 1})

    @classmethod
    def monomial(cls, exponents: Mapping[str, int], coef: Scalar = 1) -> "Polynomial":
        return cls({make_monomial(exponents): coef})

    @classmethod
    def parse(cls, text: str) -> "Polynomial":
        return parse_poly(text)

    # -- inspection --------------------------------------------------------

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and ONE_MONO in self._terms)

    def constant_term(self) -> Coefficient:
        return self._terms.get(ONE_MONO, 0)

    def is_monomial(self) -> bool:
        """True for a single term with coefficient 1 (constant 1 included)."""
        if len(self._terms) != 1:
            return False
        (c,) = self._terms.values()
        return c == 1

    def as_monomial(self) -> Monomial:
        if not self.is_monomial():
            raise ValueError(f"{self} is not a monomial")
        (m,) = self._terms
        return m

    def variables(self) -> frozenset:
        return frozenset(v for m in self._terms for v, _ in m)

    def degree(self) -> int:
        return max((mono_degree(m) for m in self._terms), default=-1)

    def coefficient(self, exponents: Mapping[str, int] | Monomial) -> Coefficient:
        key = exponents if isinstance(exponents, tuple) else make_monomial(exponents)
        return self._terms.get(key, 0)

    # -- arithmetic --------------------------------------------------------

    @staticmethod
    def _coerce(other) -> "Polynomial":
        if isinstance(other, Polynomial):
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return Polynomial.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not other._terms:
            return self
        if not self._terms:
            return other
        out = dict(self._terms)
        for m, c in other._terms.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = _norm(s)
            else:
                out.pop(m, None)
        return Polynomial._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw({m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self._terms, other._terms
        if not a or not b:
            return ZERO
        if len(a) < len(b):
            a, b = b, a
        out: dict = {}
        get = out.get
        for mb, cb in b.items():
            for ma, ca in a.items():
                m = mono_mul(ma, mb)
                s = get(m, 0) + ca * cb
                if s:
                    out[m] = s
                else:
                    del out[m]
        if any(type(c) is Fraction for c in out.values()):
            out = {m: _norm(c) for m, c in out.items()}
        return Polynomial._raw(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("only non-negative integer powers")
        result, base = ONE, self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def scale(self, c: Scalar) -> "Polynomial":
        c = _norm(as_rational(c)) if not isinstance(c, int) else c
        if not c:
            return ZERO
        return Polynomial._raw({m: _norm(v * c) for m, v in self._terms.items()})

    def exact_div(self, divisor: "Polynomial") -> "Polynomial":
        return poly_exact_div(self, divisor)

    def __truediv__(self, other):
        if isinstance(other, Polynomial):
            return poly_exact_div(self, other)
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            if other == 0:
                raise DivisionByZero("division by zero")
            return self.scale(Fraction(1) / other)
        return NotImplemented

    # -- evaluation --------------------------------------------------------

    def eval(self, assignment: Mapping[str, Scalar]) -> Fraction:
        return poly_eval(self, assignment)

    def subs(self, assignment: Mapping[str, "Polynomial | Scalar"]) -> "Polynomial":
        """Substitute polynomials for some variables; the rest stay symbolic."""
        images = {v: (p if isinstance(p, Polynomial) else Polynomial.const(p))
                  for v, p in assignment.items()}
        out = ZERO
        for m, c in self._terms.items():
            term = Polynomial.const(c)
            rest = []
            for v, e in m:
                if v in images:
                    term = term * images[v] ** e
                else:
                    rest.append((v, e))
            out = out + term * Polynomial._raw({tuple(rest): 1})
        return out

    # -- comparison / hashing ---------------------------------------------

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self._terms == Polynomial.const(other)._terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # -- text --------------------------------------------------------------

    def sorted_terms(self) -> list:
        """Terms in graded-lex descending order over sorted variable names."""
        order = {v: i for i, v in enumerate(sorted(self.variables()))}
        return sorted(self._terms.items(), key=lambda t: _grlex_key(t[0], order), reverse=True)

    def serialize(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for i, (m, c) in enumerate(self.sorted_terms()):
            neg = c < 0
            a = -c if neg else c
            if not m:
                body = str(a)
            elif a == 1:
                body = _mono_str(m)
            else:
                body = f"{a}*{_mono_str(m)}"
            if i == 0:
                parts.append(("-" if neg else "") + body)
            else:
                parts.append((" - " if neg else " + ") + body)
        return "".join(parts)

    __str__ = serialize

    def __repr__(self):
        return f"Polynomial({self.serialize()!r})"


ZERO = Polynomial._raw({})
ONE = Polynomial._raw({ONE_MONO: 1})


def poly(value) -> Polynomial:
    """Coerce a string, number or Polynomial into a Polynomial."""
    if isinstance(value, Polynomial):
        return value
    if isinstance(value, str):
        return parse_poly(value)
    return Polynomial.const(value)


def parse_poly(text: str) -> Polynomial:
    if not isinstance(text, str):
        raise ParseError(f"expected polynomial text, got {type(text).__name__}")
    s = text
    n = len(s)
    pos = 0
    terms: dict = {}
    first = True

    def skip_ws(i):
        while i < n and s[i].isspace():
            i += 1
        return i

    pos = skip_ws(pos)
    if pos == n:
        raise ParseError("empty polynomial text")
    while True:
        pos = skip_ws(pos)
        sign = 1
        if pos < n and s[pos] in "+-":
            sign = -1 if s[pos] == "-" else 1
            pos = skip_ws(pos + 1)
        elif not first:
            raise ParseError(f"expected + or - at offset {pos} in {text!r}")
        first = False
        coef = Fraction(sign)
        exps: dict = {}
        factor_index = 0
        while True:
            pos = skip_ws(pos)
            if pos < n and s[pos].isdigit():
                if factor_index:
                    raise ParseError(f"coefficient must lead the term at offset {pos} in {text!r}")
                mt = _RAT_RE.match(s, pos)
                try:
                    coef *= Fraction(mt.group())
                except ZeroDivisionError as exc:
                    raise ParseError(f"zero denominator in {text!r}") from exc
                pos = mt.end()
            else:
                mt = _VAR_RE.match(s, pos)
                if not mt:
                    raise ParseError(f"unexpected character at offset {pos} in {text!r}")
                pos = mt.end()
                name = mt.group()
                suf = _SUFFIX_RE.match(s, pos)
                if suf:
                    name += suf.group()
                    pos = suf.end()
                exp = 1
                if pos < n and s[pos] == "^":
                    me = _INT_RE.match(s, pos + 1)
                    if not me or int(me.group()) == 0:
                        raise ParseError(f"bad exponent at offset {pos} in {text!r}")
                    exp = int(me.group())
                    pos = me.end()
                exps[name] = exps.get(name, 0) + exp
            factor_index += 1
            look = skip_ws(pos)
            if look < n and s[look] == "*":
                pos = look + 1
                continue
            break
        m = make_monomial(exps)
        val = terms.get(m, 0) + coef
        if val:
            terms[m] = val
        else:
            terms.pop(m, None)
        pos = skip_ws(pos)
        if pos == n:
            break
    return Polynomial(terms)


def poly_exact_div(p: Polynomial, q: Polynomial) -> Polynomial:
    """Return r with r*q == p, by multivariate division in graded-lex order."""
    if not q._terms:
        raise DivisionByZero("polynomial division by zero")
    if not p._terms:
        return ZERO
    if len(q._terms) == 1:
        ((mq, cq),) = q._terms.items()
        out = {}
        for m, c in p._terms.items():
            r = mono_div(m, mq)
            if r is None:
                raise NotDivisible(f"{p} is not divisible by {q}")
            out[r] = _cdiv(c, cq)
        return Polynomial._raw(out)
    order = {v: i for i, v in enumerate(sorted(p.variables() | q.variables()))}
    key = lambda m: _grlex_key(m, order)  # noqa: E731
    lead_q = max(q._terms, key=key)
    lc_q = q._terms[lead_q]
    rem = dict(p._terms)
    quot: dict = {}
    while rem:
        lead = max(rem, key=key)
        mdiv = mono_div(lead, lead_q)
        if mdiv is None:
            raise NotDivisible(f"{p} is not divisible by {q}")
        c = rem[lead]
        t = _cdiv(c, lc_q)
        quot[mdiv] = t
        for mq, cq in q._terms.items():
            m = mono_mul(mdiv, mq)
            s = rem.get(m, 0) - t * cq
            if s:
                rem[m] = _norm(s)
            else:
                rem.pop(m, None)
    return Polynomial._raw(quot)


def poly_eval(p: Polynomial, assignment: Mapping[str, Scalar]) -> Fraction:
    values = {}
    total = Fraction(0)
    for m, c in p._terms.items():
        term = Fraction(c)
        for v, e in m:
            if v not in values:
                if v not in assignment:
                    raise UnboundVariable(f"no value for variable {v!r}")
                values[v] = as_rational(assignment[v])
            term *= values[v] ** e
        total += term
    return total


def product(factors: Iterable[Polynomial]) -> Polynomial:
    out = ONE
    for f in factors:
        out = out * f
    return out
