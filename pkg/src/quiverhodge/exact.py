"""Exact arithmetic kernel.

Everything here is over the rationals and never touches floating point.
Rationals are :class:`fractions.Fraction` (exported as :data:`BigRat`);
integral coefficients are kept as plain ``int`` because that is several
times faster and compares equal to the corresponding ``Fraction``.

The types:

* :class:`LaurentPoly` -- univariate Laurent polynomial in a named variable.
* :class:`RatFunc` -- univariate rational function in canonical form
  (coprime numerator and denominator, monic denominator).
* :class:`BiPoly` -- polynomial in ``q`` and ``t`` with exact division.

Partitions are plain weakly decreasing tuples of positive ints.
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import gcd
from functools import lru_cache
from itertools import product
from typing import Dict, Iterable, Iterator, Mapping, Tuple, Union

from .errors import NotDivisible, ParseError

BigRat = Fraction
Number = Union[int, Fraction]
Partition = Tuple[int, ...]
MultiPartition = Tuple[Partition, ...]


def _clean(c: Number) -> Number:
    if type(c) is Fraction and c.denominator == 1:
        return c.numerator
    return c


def _div(a: Number, b: Number) -> Number:
    if b == 1:
        return a
    if b == -1:
        return -a
    if type(a) is int and type(b) is int:
        quo, rem = divmod(a, b)
        if rem == 0:
            return quo
        return Fraction(a, b)
    return _clean(Fraction(a) / b)


def _as_number(c) -> Number:
    if isinstance(c, bool):
        return int(c)
    if isinstance(c, int):
        return c
    if isinstance(c, Fraction):
        return _clean(c)
    raise TypeError(f"not an exact rational: {c!r}")


def _fmt_coeff(c: Number) -> str:
    return str(c.numerator) if type(c) is int or c.denominator == 1 else str(c)


# ---------------------------------------------------------------------------
# Laurent polynomials
# ---------------------------------------------------------------------------

class LaurentPoly:
    """Univariate Laurent polynomial with exact rational coefficients.

    >>> t = LaurentPoly.gen("t")
    >>> (1 - t**2) * (1 + t**2)
    1 - t^4
    """

    __slots__ = ("var", "_terms", "_hash")

    def __init__(self, terms: Union[Mapping[int, Number], Number, None] = None, var: str = "q"):
        self.var = var
        self._hash = None
        if terms is None:
            self._terms: Dict[int, Number] = {}
        elif isinstance(terms, Mapping):
            self._terms = {int(e): _as_number(c) for e, c in terms.items() if c != 0}
        else:
            c = _as_number(terms)
            self._terms = {0: c} if c != 0 else {}

    @classmethod
    def _raw(cls, terms: Dict[int, Number], var: str) -> "LaurentPoly":
        p = cls.__new__(cls)
        p.var = var
        p._terms = terms
        p._hash = None
        return p

    @classmethod
    def gen(cls, var: str = "q") -> "LaurentPoly":
        return cls._raw({1: 1}, var)

    @classmethod
    def monomial(cls, exponent: int, coeff: Number = 1, var: str = "q") -> "LaurentPoly":
        return cls({exponent: coeff}, var)

    @classmethod
    def from_coeffs(cls, coeffs: Iterable[Number], var: str = "q", shift: int = 0) -> "LaurentPoly":
        """Build from a dense list, lowest exponent (``shift``) first."""
        return cls({i + shift: c for i, c in enumerate(coeffs)}, var)

    # -- inspection --------------------------------------------------------

    @property
    def terms(self) -> Dict[int, Number]:
        return dict(self._terms)

    def items(self):
        return sorted(self._terms.items())

    def coeff(self, exponent: int) -> Number:
        return self._terms.get(exponent, 0)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and 0 in self._terms)

    def degree(self) -> int:
        if not self._terms:
            raise ValueError("degree of the zero polynomial")
        return max(self._terms)

    def valuation(self) -> int:
        if not self._terms:
            raise ValueError("valuation of the zero polynomial")
        return min(self._terms)

    def leading_coeff(self) -> Number:
        return self._terms[self.degree()]

    def is_integral(self) -> bool:
        return all(type(c) is int for c in self._terms.values())

    def dense(self) -> list:
        """Coefficients ``[c_0, c_1, ..., c_deg]``; requires no negative exponents."""
        if not self._terms:
            return []
        if self.valuation() < 0:
            raise ValueError("dense() needs non-negative exponents")
        out = [0] * (self.degree() + 1)
        for e, c in self._terms.items():
            out[e] = c
        return out

    # -- arithmetic --------------------------------------------------------

    def _coerce(self, other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            if other.var != self.var and other._terms and not other.is_constant():
                raise ValueError(f"variable mismatch: {self.var} vs {other.var}")
            return other
        if isinstance(other, (int, Fraction)):
            return LaurentPoly(other, self.var)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self._terms)
        for e, c in other._terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = _clean(v)
            else:
                out.pop(e, None)
        return LaurentPoly._raw(out, self.var)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw({e: -c for e, c in self._terms.items()}, self.var)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return LaurentPoly._raw({}, self.var)
            return LaurentPoly._raw({e: _clean(c * other) for e, c in self._terms.items()}, self.var)
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out: Dict[int, Number] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = e1 + e2
                out[e] = out.get(e, 0) + c1 * c2
        return LaurentPoly._raw({e: _clean(c) for e, c in out.items() if c}, self.var)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return LaurentPoly._raw({e: _div(c, other) for e, c in self._terms.items()}, self.var)
        return NotImplemented

    def __pow__(self, n: int):
        if n < 0:
            if len(self._terms) == 1:
                (e, c), = self._terms.items()
                return LaurentPoly._raw({e * n: _clean(Fraction(1) / Fraction(c) ** (-n))}, self.var)
            raise ValueError("negative power of a non-monomial")
        result = LaurentPoly._raw({0: 1}, self.var)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by ``var**k``."""
        return LaurentPoly._raw({e + k: c for e, c in self._terms.items()}, self.var)

    def adams(self, s: int) -> "LaurentPoly":
        """The Adams operation ``var -> var**s``."""
        return LaurentPoly._raw({e * s: c for e, c in self._terms.items()}, self.var)

    def reflect(self) -> "LaurentPoly":
        """Substitute ``var -> 1/var``."""
        return LaurentPoly._raw({-e: c for e, c in self._terms.items()}, self.var)

    def rename(self, var: str) -> "LaurentPoly":
        return LaurentPoly._raw(dict(self._terms), var)

    def __call__(self, x: Number) -> Number:
        x = Fraction(x) if any(e < 0 for e in self._terms) else x
        return _clean(sum((c * x ** e for e, c in self._terms.items()), 0))

    evaluate = __call__

    # -- comparison / display ----------------------------------------------

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            if self._terms != other._terms:
                return False
            return self.var == other.var or self.is_constant()
        if isinstance(other, (int, Fraction)):
            return self._terms == ({0: other} if other != 0 else {})
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            if self.is_constant():
                self._hash = hash(self._terms.get(0, 0))
            else:
                self._hash = hash((self.var, frozenset(self._terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self._terms)

    def pretty(self, ascending: bool = True) -> str:
        """Human form, e.g. ``1 + t^2`` or ``q + 4``."""
        if not self._terms:
            return "0"
        items = sorted(self._terms.items(), reverse=not ascending)
        out = []
        for e, c in items:
            mono = "" if e == 0 else (self.var if e == 1 else f"{self.var}^{e}")
            out.append(_signed_term(c, mono, first=not out))
        return "".join(out)

    def __repr__(self):
        return self.pretty()

    def to_terms(self) -> str:
        """Canonical serialization ``coeff * var^e + ...`` (ascending)."""
        if not self._terms:
            return "0"
        return " + ".join(f"{_fmt_coeff(c)} * {self.var}^{e}" for e, c in sorted(self._terms.items()))


def _signed_term(c: Number, mono: str, first: bool) -> str:
    neg = c < 0
    a = -c if neg else c
    if mono:
        body = mono if a == 1 else f"{_fmt_coeff(a)} {mono}" if type(a) is int else f"({a}) {mono}"
    else:
        body = _fmt_coeff(a)
    if first:
        return f"-{body}" if neg else body
    return f" - {body}" if neg else f" + {body}"


# -- dense polynomial helpers (lists low -> high, non-negative exponents) ----

def _trim(a: list) -> list:
    while a and a[-1] == 0:
        a.pop()
    return a


def _dense_divmod(a: list, b: list) -> Tuple[list, list]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    db = len(b) - 1
    lb = b[-1]
    if len(a) <= db:
        return [], _trim(a)
    quo = [0] * (len(a) - db)
    for i in range(len(a) - 1 - db, -1, -1):
        c = a[i + db]
        if c == 0:
            continue
        c = _div(c, lb)
        quo[i] = c
        for k in range(db + 1):
            bk = b[k]
            if bk:
                a[i + k] = _clean(a[i + k] - c * bk)
    return _trim(quo), _trim(a[:db])


def _dense_monic(a: list) -> list:
    lc = a[-1]
    return a if lc == 1 else [_div(c, lc) for c in a]


def _dense_gcd(a: list, b: list) -> list:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        _, r = _dense_divmod(a, b)
        a, b = b, (_dense_monic(r) if r else r)
    return _dense_monic(a) if a else a


def poly_divmod(a: LaurentPoly, b: LaurentPoly) -> Tuple[LaurentPoly, LaurentPoly]:
    """Euclidean division of ordinary polynomials (no negative exponents)."""
    quo, rem = _dense_divmod(a.dense(), b.dense())
    return LaurentPoly.from_coeffs(quo, a.var), LaurentPoly.from_coeffs(rem, a.var)


def poly_gcd(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """Monic gcd of ordinary polynomials; ``gcd(0, 0) = 0``."""
    return LaurentPoly.from_coeffs(_dense_gcd(a.dense(), b.dense()), a.var)


# ---------------------------------------------------------------------------
# Rational functions
# ---------------------------------------------------------------------------

class RatFunc:
    """Univariate rational function ``num/den`` in canonical form.

    Numerator and denominator carry no negative exponents, are coprime,
    and the denominator is monic, so ``==`` is structural equality.

    >>> q = RatFunc.gen()
    >>> (q**2 - 1) / (q - 1)
    q + 1
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num=0, den=1, var: str = "q"):
        num = num if isinstance(num, LaurentPoly) else LaurentPoly(num, var)
        den = den if isinstance(den, LaurentPoly) else LaurentPoly(den, var)
        var = num.var if not num.is_constant() else den.var if not den.is_constant() else var
        self._hash = None
        self.num, self.den = _normalize(num.rename(var), den.rename(var))

    @classmethod
    def _raw(cls, num: LaurentPoly, den: LaurentPoly) -> "RatFunc":
        r = cls.__new__(cls)
        r.num, r.den, r._hash = num, den, None
        return r

    @classmethod
    def gen(cls, var: str = "q") -> "RatFunc":
        return cls._raw(LaurentPoly.gen(var), LaurentPoly(1, var))

    @property
    def var(self) -> str:
        return self.num.var

    def _coerce(self, other) -> "RatFunc":
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, (int, Fraction)):
            return RatFunc._raw(LaurentPoly(other, self.var), LaurentPoly(1, self.var))
        if isinstance(other, LaurentPoly):
            return RatFunc(other.rename(self.var) if other.is_constant() else other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not other.num:
            return self
        if not self.num:
            return other
        if self.den == other.den:
            return RatFunc._from(self.num + other.num, self.den)
        # a polynomial summand keeps the other denominator coprime
        if self.den == 1:
            return RatFunc._raw(self.num * other.den + other.num, other.den)
        if other.den == 1:
            return RatFunc._raw(self.num + other.num * self.den, self.den)
        return RatFunc._from(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc._raw(-self.num, self.den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return RatFunc._raw(LaurentPoly(0, self.var), LaurentPoly(1, self.var))
            return RatFunc._raw(self.num * other, self.den)
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not self.num or not other.num:
            return RatFunc._raw(LaurentPoly(0, self.var), LaurentPoly(1, self.var))
        if self.den == 1 and other.den == 1:
            return RatFunc._raw(self.num * other.num, self.den)
        return RatFunc._from(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        if not self.num:
            raise ZeroDivisionError("inverse of zero rational function")
        return RatFunc._from(self.den, self.num)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return RatFunc._raw(self.num / other, self.den)
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        return RatFunc._raw(self.num ** n, self.den ** n)

    def adams(self, s: int) -> "RatFunc":
        """``q -> q**s``; canonical form is preserved."""
        return RatFunc._raw(self.num.adams(s), self.den.adams(s))

    def is_polynomial(self) -> bool:
        return self.den == 1

    def to_poly(self) -> LaurentPoly:
        if not self.is_polynomial():
            raise ValueError(f"not a polynomial: {self}")
        return self.num

    def __call__(self, x: Number) -> Number:
        d = self.den(x)
        if d == 0:
            raise ZeroDivisionError(f"pole at {x}")
        return _div(self.num(x), d)

    evaluate = __call__

    def __eq__(self, other):
        if isinstance(other, RatFunc):
            return self.num == other.num and self.den == other.den
        if isinstance(other, (int, Fraction, LaurentPoly)):
            return self.den == 1 and self.num == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.num) if self.den == 1 else hash((self.num, self.den))
        return self._hash

    def __bool__(self):
        return bool(self.num)

    def __repr__(self):
        if self.den == 1:
            return self.num.pretty(ascending=False)
        return f"({self.num.pretty(ascending=False)})/({self.den.pretty(ascending=False)})"

    @classmethod
    def _from(cls, num: LaurentPoly, den: LaurentPoly) -> "RatFunc":
        n, d = _normalize(num, den)
        return cls._raw(n, d)


def _normalize(num: LaurentPoly, den: LaurentPoly) -> Tuple[LaurentPoly, LaurentPoly]:
    var = num.var
    if not den:
        raise ZeroDivisionError("zero denominator")
    if not num:
        return LaurentPoly._raw({}, var), LaurentPoly._raw({0: 1}, var)
    k = min(num.valuation(), den.valuation())
    if k:
        num, den = num.shift(-k), den.shift(-k)
    if den.is_constant():
        c = den.coeff(0)
        return (num if c == 1 else num / c), LaurentPoly._raw({0: 1}, var)
    nd, dd = _integral(num.dense(), den.dense())
    g = _int_gcd(nd, dd)
    if len(g) > 1:
        nd = _int_exact_div(nd, g)
        dd = _int_exact_div(dd, g)
    lc = dd[-1]
    if lc != 1:
        nd = [_div(c, lc) for c in nd]
        dd = [_div(c, lc) for c in dd]
    return LaurentPoly.from_coeffs(nd, var), LaurentPoly.from_coeffs(dd, var)


def _integral(a: list, b: list) -> Tuple[list, list]:
    """Scale the pair ``(a, b)`` by one rational so both become integer lists
    with no common content."""
    dens = {c.denominator for c in a + b if type(c) is Fraction}
    if dens:
        m = 1
        for d in dens:
            m = m * d // gcd(m, d)
        a = [_clean(c * m) for c in a]
        b = [_clean(c * m) for c in b]
    g = 0
    for c in a + b:
        g = gcd(g, c)
        if g == 1:
            return a, b
    return [c // g for c in a], [c // g for c in b]


def _content(a: list) -> int:
    g = 0
    for c in a:
        g = gcd(g, c)
        if g == 1:
            break
    return g


def _primitive(a: list) -> list:
    g = _content(a)
    if a[-1] < 0:
        g = -g
    return a if g == 1 else [c // g for c in a]


def _int_gcd(a: list, b: list) -> list:
    """Primitive gcd of integer polynomials (primitive remainder sequence)."""
    a, b = _trim(list(a)), _trim(list(b))
    if len(a) < len(b):
        a, b = b, a
    if not b:
        return _primitive(a) if a else a
    a, b = _primitive(a), _primitive(b)
    while len(b) > 1:
        r = _pseudo_rem(a, b)
        if not r:
            return b
        a, b = b, _primitive(r)
    return [1]


def _pseudo_rem(a: list, b: list) -> list:
    a = list(a)
    db, lb = len(b) - 1, b[-1]
    while len(a) - 1 >= db and a:
        lead = a[-1]
        shift = len(a) - 1 - db
        a = [c * lb for c in a]
        for k in range(db + 1):
            a[shift + k] -= lead * b[k]
        _trim(a)
    return a


def _int_exact_div(a: list, b: list) -> list:
    a = list(a)
    db, lb = len(b) - 1, b[-1]
    quo = [0] * (len(a) - db)
    for i in range(len(a) - 1 - db, -1, -1):
        c, r = divmod(a[i + db], lb)
        if r:
            raise ArithmeticError("inexact integer polynomial division")
        quo[i] = c
        if c:
            for k in range(db + 1):
                a[i + k] -= c * b[k]
    if any(a[:db]):
        raise ArithmeticError("inexact integer polynomial division")
    return quo


# ---------------------------------------------------------------------------
# Bivariate polynomials in (q, t)
# ---------------------------------------------------------------------------

Exp2 = Tuple[int, int]


class BiPoly:
    """Polynomial in ``q`` and ``t``; keys are ``(q_degree, t_degree)``."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Union[Mapping[Exp2, Number], Number, None] = None):
        if terms is None:
            self._terms: Dict[Exp2, Number] = {}
        elif isinstance(terms, Mapping):
            self._terms = {(int(a), int(b)): _as_number(c) for (a, b), c in terms.items() if c != 0}
        else:
            c = _as_number(terms)
            self._terms = {(0, 0): c} if c else {}

    @classmethod
    def _raw(cls, terms):
        p = cls.__new__(cls)
        p._terms = terms
        return p

    @classmethod
    def q(cls) -> "BiPoly":
        return cls._raw({(1, 0): 1})

    @classmethod
    def t(cls) -> "BiPoly":
        return cls._raw({(0, 1): 1})

    @classmethod
    def monomial(cls, a: int, b: int, coeff: Number = 1) -> "BiPoly":
        return cls({(a, b): coeff})

    @property
    def terms(self) -> Dict[Exp2, Number]:
        return dict(self._terms)

    def items(self):
        return sorted(self._terms.items())

    def coeff(self, a: int, b: int) -> Number:
        return self._terms.get((a, b), 0)

    def is_zero(self) -> bool:
        return not self._terms

    def __len__(self):
        return len(self._terms)

    def _coerce(self, other):
        if isinstance(other, BiPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return BiPoly(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self._terms)
        for k, c in other._terms.items():
            v = out.get(k, 0) + c
            if v:
                out[k] = _clean(v)
            else:
                out.pop(k, None)
        return BiPoly._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return BiPoly._raw({k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return BiPoly._raw({})
            return BiPoly._raw({k: _clean(c * other) for k, c in self._terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out: Dict[Exp2, Number] = {}
        for (a1, b1), c1 in self._terms.items():
            for (a2, b2), c2 in other._terms.items():
                k = (a1 + a2, b1 + b2)
                out[k] = out.get(k, 0) + c1 * c2
        return BiPoly._raw({k: _clean(c) for k, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result, base = BiPoly(1), self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, BiPoly):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self._terms == ({(0, 0): other} if other else {})
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __bool__(self):
        return bool(self._terms)

    def exact_divide(self, other: "BiPoly") -> "BiPoly":
        return exact_divide(self, other)

    def filter(self, keep) -> "BiPoly":
        """Sub-polynomial of the monomials ``(a, b)`` with ``keep(a, b)`` true."""
        return BiPoly._raw({k: c for k, c in self._terms.items() if keep(*k)})

    def specialize_t(self, value: Number) -> LaurentPoly:
        """Set ``t = value``; result is a polynomial in ``q``."""
        out: Dict[int, Number] = {}
        for (a, b), c in self._terms.items():
            out[a] = out.get(a, 0) + c * Fraction(value) ** b
        return LaurentPoly(out, "q")

    def specialize_q(self, value: Number) -> LaurentPoly:
        """Set ``q = value``; result is a polynomial in ``t``."""
        out: Dict[int, Number] = {}
        for (a, b), c in self._terms.items():
            out[b] = out.get(b, 0) + c * Fraction(value) ** a
        return LaurentPoly(out, "t")

    def __call__(self, q: Number, t: Number) -> Number:
        return _clean(sum((c * Fraction(q) ** a * Fraction(t) ** b for (a, b), c in self._terms.items()), 0))

    def pretty(self, ascending: bool = False) -> str:
        """Human form in the usual ``t^12 q^12 + ...`` style, grouped by total degree."""
        if not self._terms:
            return "0"
        order = sorted(self._terms, key=lambda k: (k[0] + k[1], k[0], k[1]), reverse=not ascending)
        out = []
        for a, b in order:
            parts = [("q" if a == 1 else f"q^{a}") if a else "", ("t" if b == 1 else f"t^{b}") if b else ""]
            mono = " ".join(p for p in parts if p)
            out.append(_signed_term(self._terms[(a, b)], mono, first=not out))
        return "".join(out)

    def __repr__(self):
        return self.pretty()

    def to_terms(self) -> str:
        """Canonical serialization ``coeff * q^a * t^b + ...``."""
        if not self._terms:
            return "0"
        return " + ".join(f"{_fmt_coeff(c)} * q^{a} * t^{b}" for (a, b), c in sorted(self._terms.items()))


def exact_divide(a: BiPoly, b: BiPoly) -> BiPoly:
    """Return ``c`` with ``b * c == a``; raise :class:`NotDivisible` otherwise.

    Division by the lex-leading term; when ``b`` divides ``a`` the leading
    term of every intermediate remainder is divisible by that of ``b``.
    """
    if not b:
        raise ZeroDivisionError("division by the zero polynomial")
    rem = dict(a._terms)
    lead = max(b._terms)
    lc = b._terms[lead]
    quo: Dict[Exp2, Number] = {}
    while rem:
        top = max(rem)
        if top[0] < lead[0] or top[1] < lead[1]:
            raise NotDivisible(f"remainder term q^{top[0]} t^{top[1]} not divisible by q^{lead[0]} t^{lead[1]}")
        m = (top[0] - lead[0], top[1] - lead[1])
        c = _div(rem[top], lc)
        quo[m] = c
        for (x, y), cb in b._terms.items():
            k = (x + m[0], y + m[1])
            v = _clean(rem.get(k, 0) - c * cb)
            if v:
                rem[k] = v
            else:
                rem.pop(k, None)
    return BiPoly._raw(quo)


# -- parsing of the canonical serialization ---------------------------------

_TERM = re.compile(r"^\s*(-?\d+(?:/\d+)?)((?:\s*\*\s*[a-z]\^-?\d+)*)\s*$")
_FACTOR = re.compile(r"\*\s*([a-z])\^(-?\d+)")


def parse_terms(text: str):
    """Inverse of ``to_terms``: a :class:`BiPoly` if both ``q`` and ``t`` appear
    in some term, otherwise a :class:`LaurentPoly` in the single variable."""
    text = text.strip()
    if text == "0":
        return LaurentPoly(0)
    rows = []
    seen = set()
    for chunk in text.split(" + "):
        m = _TERM.match(chunk)
        if not m:
            raise ParseError(f"bad term {chunk!r}")
        exps = {v: int(e) for v, e in _FACTOR.findall(m.group(2))}
        seen.update(exps)
        rows.append((Fraction(m.group(1)), exps))
    if seen <= {"q", "t"} and len(seen) == 2 or any(len(e) == 2 for _, e in rows):
        return BiPoly({(e.get("q", 0), e.get("t", 0)): c for c, e in rows})
    var = next(iter(seen)) if seen else "q"
    out: Dict[int, Number] = {}
    for c, e in rows:
        k = e.get(var, 0)
        out[k] = out.get(k, 0) + c
    return LaurentPoly(out, var)


# ---------------------------------------------------------------------------
# Partitions
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def partitions(n: int) -> Tuple[Partition, ...]:
    """All partitions of ``n``, largest first part first: (3), (2,1), (1,1,1)."""
    if n < 0:
        return ()
    return tuple(_partitions(n, n))


def _partitions(n: int, largest: int) -> Iterator[Partition]:
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for rest in _partitions(n - first, first):
            yield (first,) + rest


def multipartitions(v: Iterable[int]) -> Iterator[MultiPartition]:
    """Tuples ``(lambda^1, ..., lambda^n)`` with ``|lambda^i| = v_i``."""
    return product(*(partitions(x) for x in v))


def is_partition(parts) -> bool:
    parts = tuple(parts)
    return all(isinstance(p, int) and p > 0 for p in parts) and all(
        parts[i] >= parts[i + 1] for i in range(len(parts) - 1))


def conjugate(la: Partition) -> Partition:
    if not la:
        return ()
    return tuple(sum(1 for part in la if part >= k) for k in range(1, la[0] + 1))


@lru_cache(maxsize=None)
def pairing(la: Partition, mu: Partition) -> int:
    """``<la, mu> = sum_k la'_k mu'_k`` over the conjugate partitions."""
    return sum(a * b for a, b in zip(conjugate(la), conjugate(mu)))


def multiplicity(la: Partition, k: int) -> int:
    return sum(1 for part in la if part == k)


def hook_factor(la: Partition, var: str = "t") -> LaurentPoly:
    """``prod_k prod_{j=1}^{m_k(la)} (1 - var^(2j))``."""
    out = LaurentPoly(1, var)
    for k in set(la):
        for j in range(1, multiplicity(la, k) + 1):
            out = out * LaurentPoly({0: 1, 2 * j: -1}, var)
    return out
