"""Power series graded by dimension vectors, truncated to a box.

A :class:`GradedSeries` stores coefficients ``c_v`` for ``0 <= v <= cap``
(componentwise).  Coefficients may be ``int``/``Fraction`` or any exact
ring element with an ``adams(s)`` method (``LaurentPoly``, ``RatFunc``).
The Adams operation on a series acts on both the coefficient and the
grading, ``c_v T^v -> psi_s(c_v) T^(s v)``, which is what plethystic
``Exp`` and ``Log`` are built from.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Dict, Iterable, Mapping, Optional, Sequence, Tuple

from .errors import CapMismatch, ConstantTermNotOne, NonUnitConstantTerm, NonzeroConstantTerm
from .exact import LaurentPoly, RatFunc, _clean

Key = Tuple[int, ...]


# -- coefficient helpers -----------------------------------------------------

def _is_scalar(c) -> bool:
    return isinstance(c, (int, Fraction))


def _adams(c, s: int):
    return c if _is_scalar(c) else c.adams(s)


def _scale(c, r: Fraction):
    if _is_scalar(c):
        return _clean(Fraction(c) * r)
    return c * r


def _invert(c):
    if _is_scalar(c):
        if c == 0:
            raise NonUnitConstantTerm("constant term is zero")
        return _clean(Fraction(1) / Fraction(c))
    if isinstance(c, RatFunc):
        if not c:
            raise NonUnitConstantTerm("constant term is zero")
        return c.inverse()
    if isinstance(c, LaurentPoly):
        if len(c.terms) != 1:
            raise NonUnitConstantTerm(f"constant term {c} is not a unit")
        return c ** -1
    raise NonUnitConstantTerm(f"cannot invert {c!r}")


def _norm(c):
    return _clean(c) if type(c) is Fraction else c


def _domain(c):
    return None if _is_scalar(c) else type(c)


@lru_cache(maxsize=None)
def mobius(n: int) -> int:
    if n < 1:
        raise ValueError("mobius needs n >= 1")
    result, m, p = 1, n, 2
    while p * p <= m:
        if m % p == 0:
            m //= p
            if m % p == 0:
                return 0
            result = -result
        p += 1
    return -result if m > 1 else result


@lru_cache(maxsize=None)
def box_keys(cap: Key) -> Tuple[Key, ...]:
    """All ``v <= cap``, ordered by total degree then lexicographically."""
    keys = list(product(*(range(c + 1) for c in cap)))
    keys.sort(key=lambda v: (sum(v), v))
    return tuple(keys)


def _leq(v: Key, cap: Key) -> bool:
    return all(a <= b for a, b in zip(v, cap))


class GradedSeries:
    """Truncated series ``sum_v c_v T^v`` over the box ``v <= cap``.

    >>> s = GradedSeries((2,), {(0,): 1, (1,): -1})
    >>> s.invert()
    GradedSeries((2,), {(0,): 1, (1,): 1, (2,): 1})
    """

    __slots__ = ("cap", "_c", "domain")

    def __init__(self, cap: Sequence[int], coeffs: Optional[Mapping[Sequence[int], object]] = None):
        cap = tuple(int(c) for c in cap)
        if any(c < 0 for c in cap):
            raise ValueError(f"cap entries must be non-negative: {cap}")
        self.cap = cap
        self._c: Dict[Key, object] = {}
        self.domain = None
        for v, c in (coeffs or {}).items():
            v = tuple(v)
            if len(v) != len(cap):
                raise CapMismatch(f"key {v} has wrong length for cap {cap}")
            if not _leq(v, cap) or any(x < 0 for x in v):
                continue
            if c:
                self._c[v] = c
                self.domain = self.domain or _domain(c)

    @classmethod
    def _raw(cls, cap: Key, coeffs: Dict[Key, object], domain=None) -> "GradedSeries":
        s = cls.__new__(cls)
        s.cap, s._c = cap, coeffs
        s.domain = domain
        if domain is None:
            for c in coeffs.values():
                s.domain = _domain(c)
                if s.domain:
                    break
        return s

    @classmethod
    def one(cls, cap: Sequence[int]) -> "GradedSeries":
        cap = tuple(cap)
        return cls._raw(cap, {(0,) * len(cap): 1})

    @classmethod
    def monomial(cls, cap: Sequence[int], v: Sequence[int], coeff=1) -> "GradedSeries":
        return cls(cap, {tuple(v): coeff})

    # -- access ------------------------------------------------------------

    def __getitem__(self, v: Sequence[int]):
        return self._c.get(tuple(v), 0)

    def coefficients(self) -> Dict[Key, object]:
        return dict(self._c)

    def support(self) -> Iterable[Key]:
        return sorted(self._c, key=lambda v: (sum(v), v))

    @property
    def constant_term(self):
        return self._c.get((0,) * len(self.cap), 0)

    def restrict(self, cap: Sequence[int]) -> "GradedSeries":
        cap = tuple(cap)
        if len(cap) != len(self.cap) or not _leq(cap, self.cap):
            raise CapMismatch(f"cannot restrict cap {self.cap} to {cap}")
        return GradedSeries._raw(cap, {v: c for v, c in self._c.items() if _leq(v, cap)}, self.domain)

    def map_coefficients(self, f) -> "GradedSeries":
        out = {}
        for v, c in self._c.items():
            c = f(c)
            if c:
                out[v] = c
        return GradedSeries._raw(self.cap, out)

    # -- arithmetic --------------------------------------------------------

    def _check(self, other: "GradedSeries"):
        if not isinstance(other, GradedSeries):
            raise TypeError(f"expected GradedSeries, got {type(other).__name__}")
        if other.cap != self.cap:
            raise CapMismatch(f"caps differ: {self.cap} vs {other.cap}")
        if self.domain and other.domain and self.domain is not other.domain:
            raise CapMismatch(f"coefficient domains differ: {self.domain.__name__} vs {other.domain.__name__}")

    def __add__(self, other: "GradedSeries") -> "GradedSeries":
        self._check(other)
        out = dict(self._c)
        for v, c in other._c.items():
            s = out.get(v, 0) + c
            if s:
                out[v] = _norm(s)
            else:
                out.pop(v, None)
        return GradedSeries._raw(self.cap, out)

    def __neg__(self) -> "GradedSeries":
        return GradedSeries._raw(self.cap, {v: -c for v, c in self._c.items()}, self.domain)

    def __sub__(self, other: "GradedSeries") -> "GradedSeries":
        return self + (-other)

    def scale(self, r) -> "GradedSeries":
        return self.map_coefficients(lambda c: _scale(c, r) if isinstance(r, Fraction) else c * r)

    def __mul__(self, other):
        if not isinstance(other, GradedSeries):
            return self.scale(other)
        return self.mul(other)

    def mul(self, other: "GradedSeries") -> "GradedSeries":
        """Cauchy product truncated at the cap."""
        self._check(other)
        cap = self.cap
        out: Dict[Key, object] = {}
        for u, a in self._c.items():
            for w, b in other._c.items():
                v = tuple(x + y for x, y in zip(u, w))
                if _leq(v, cap):
                    out[v] = out.get(v, 0) + a * b
        return GradedSeries._raw(cap, {v: _norm(c) for v, c in out.items() if c})

    def invert(self) -> "GradedSeries":
        """Multiplicative inverse up to the cap."""
        inv0 = _invert(self.constant_term)
        zero = (0,) * len(self.cap)
        terms = [(u, a) for u, a in self._c.items() if u != zero]
        out: Dict[Key, object] = {zero: inv0}
        for v in box_keys(self.cap)[1:]:
            acc = 0
            for u, a in terms:
                w = tuple(x - y for x, y in zip(v, u))
                if min(w) >= 0:
                    f = out.get(w)
                    if f is not None:
                        acc = acc + a * f
            if acc:
                out[v] = _norm(-(acc * inv0))
        return GradedSeries._raw(self.cap, out)

    def __truediv__(self, other: "GradedSeries") -> "GradedSeries":
        return self.mul(other.invert())

    def adams(self, s: int) -> "GradedSeries":
        """``c_v T^v -> psi_s(c_v) T^(s v)``, dropping keys beyond the cap."""
        out = {}
        for v, c in self._c.items():
            sv = tuple(s * x for x in v)
            if _leq(sv, self.cap):
                out[sv] = _adams(c, s)
        return GradedSeries._raw(self.cap, out, self.domain)

    def log(self) -> "GradedSeries":
        """Ordinary logarithm; requires constant term 1."""
        if self.constant_term != 1:
            raise ConstantTermNotOne(f"constant term is {self.constant_term}")
        zero = (0,) * len(self.cap)
        terms = [(u, a) for u, a in self._c.items() if u != zero]
        out: Dict[Key, object] = {}
        # |v| f_v = sum_{0 < u <= v} |u| L_u f_{v-u}
        for v in box_keys(self.cap)[1:]:
            acc = self._c.get(v, 0)
            n = sum(v)
            for w, a in terms:
                if w == v:
                    continue
                u = tuple(x - y for x, y in zip(v, w))
                if min(u) >= 0:
                    lu = out.get(u)
                    if lu is not None:
                        acc = acc - _scale(lu * a, Fraction(sum(u), n))
            if acc:
                out[v] = _norm(acc)
        return GradedSeries._raw(self.cap, out)

    def exp(self) -> "GradedSeries":
        """Ordinary exponential; requires zero constant term."""
        if self.constant_term != 0:
            raise NonzeroConstantTerm(f"constant term is {self.constant_term}")
        zero = (0,) * len(self.cap)
        terms = list(self._c.items())
        out: Dict[Key, object] = {zero: 1}
        for v in box_keys(self.cap)[1:]:
            acc = 0
            n = sum(v)
            for u, g in terms:
                w = tuple(x - y for x, y in zip(v, u))
                if min(w) >= 0:
                    f = out.get(w)
                    if f is not None:
                        acc = acc + _scale(g * f, Fraction(sum(u), n))
            if acc:
                out[v] = _norm(acc)
        return GradedSeries._raw(self.cap, out)

    def _max_adams(self) -> int:
        return max(self.cap) if self.cap else 0

    def pleth_exp(self) -> "GradedSeries":
        """``Exp(g) = exp(sum_{s>=1} psi_s(g)/s)``."""
        if self.constant_term != 0:
            raise NonzeroConstantTerm(f"constant term is {self.constant_term}")
        acc = GradedSeries._raw(self.cap, {})
        for s in range(1, self._max_adams() + 1):
            acc = acc + self.adams(s).scale(Fraction(1, s))
        return acc.exp()

    def pleth_log(self) -> "GradedSeries":
        """``Log(f) = sum_{s>=1} mu(s)/s psi_s(log f)``, the inverse of :meth:`pleth_exp`."""
        if self.constant_term != 1:
            raise ConstantTermNotOne(f"constant term is {self.constant_term}")
        lg = self.log()
        acc = GradedSeries._raw(self.cap, {})
        for s in range(1, self._max_adams() + 1):
            m = mobius(s)
            if m:
                acc = acc + lg.adams(s).scale(Fraction(m, s))
        return acc

    # -- comparison --------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, GradedSeries):
            return NotImplemented
        return self.cap == other.cap and self._c == other._c

    def __repr__(self):
        body = ", ".join(f"{v}: {self._c[v]!r}" for v in self.support())
        return f"GradedSeries({self.cap}, {{{body}}})"


def mul(a: GradedSeries, b: GradedSeries) -> GradedSeries:
    return a.mul(b)


def invert(a: GradedSeries) -> GradedSeries:
    return a.invert()


def pleth_exp(g: GradedSeries) -> GradedSeries:
    return g.pleth_exp()


def pleth_log(f: GradedSeries) -> GradedSeries:
    return f.pleth_log()
