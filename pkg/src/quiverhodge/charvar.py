"""Twisted rank-2 character varieties.

Point counts of ``M_B^1(PGL_2)`` come from the Frobenius-type character
sum over ``Irr(GL_2(F_q))``; the mixed Hodge polynomial comes from the
closed four-term formula.  The two meet through the E-polynomial.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import List, Optional, Tuple

from .errors import EvenQ, NonIntegral, NonIntegralCount, NotDivisible, NotPrimePower
from .exact import BiPoly, LaurentPoly, exact_divide
from .kacpoly import kac_polynomial
from .quiver import crab_dimension, loop_quiver


@dataclass(frozen=True)
class CharFamily:
    """One family of irreducible characters of ``GL_2(F_q)``.

    ``plus``/``minus`` count the members whose central character takes the
    value +1 / -1 at ``-Id``.
    """

    kind: str
    degree: int
    plus: int
    minus: int

    @property
    def size(self) -> int:
        return self.plus + self.minus


@dataclass(frozen=True)
class MixedHodgePoly:
    """``H(M; x, y, t)`` on the diagonal ``q = xy``."""

    poly: BiPoly
    genus: int

    @property
    def dim(self) -> int:
        return 6 * self.genus - 6


def prime_power(q: int) -> Tuple[int, int]:
    """``(p, e)`` with ``q = p^e``; raises :class:`NotPrimePower` otherwise."""
    if q < 2:
        raise NotPrimePower(f"{q} is not a prime power")
    p = next(d for d in range(2, q + 1) if q % d == 0)
    e, m = 0, q
    while m % p == 0:
        m //= p
        e += 1
    if m != 1:
        raise NotPrimePower(f"{q} is not a prime power")
    return p, e


def gl2_order(q: int) -> int:
    return q * (q - 1) ** 2 * (q + 1)


def gl2_character_families(q: int) -> List[CharFamily]:
    """The four families with their degrees and central signs at ``-Id``.

    Characters of ``F_q^*`` are ``theta^a`` (``a mod q-1``) and those of
    ``F_{q^2}^*`` are ``Theta^a`` (``a mod q^2-1``); both generators send
    ``-1`` to ``-1``, so a sign is just a parity.
    """
    prime_power(q)
    if q % 2 == 0:
        raise EvenQ(f"q={q} is even; -Id = Id there")
    linear = CharFamily("linear", 1, q - 1, 0)
    steinberg = CharFamily("steinberg", q, q - 1, 0)
    # principal series: unordered pairs {a, b}, a != b, sign (-1)^(a+b)
    half = (q - 1) // 2
    odd_pairs = half * half
    total_pairs = (q - 1) * (q - 2) // 2
    principal = CharFamily("principal", q + 1, total_pairs - odd_pairs, odd_pairs)
    # cuspidal: Frobenius orbits {a, qa} with qa != a mod q^2-1, sign (-1)^a
    n = q * q - 1
    plus = minus = 0
    for a in range(n):
        b = (a * q) % n
        if b == a or b < a:
            continue
        if a % 2:
            minus += 1
        else:
            plus += 1
    cuspidal = CharFamily("cuspidal", q - 1, plus, minus)
    return [linear, steinberg, principal, cuspidal]


def count_char_variety_pgl2(g: int, q: int) -> int:
    """``#M_B^1(PGL_2)(F_q)``, exact.

    ``#M_B^1(GL_2) = (q-1) |G|^(2g-2) sum_chi chi(-Id) / chi(1)^(2g-1)``,
    then divide by ``(q-1)^(2g)`` for the torus ``GL_1^(2g)``.
    """
    if g < 1:
        raise ValueError("genus must be at least 1")
    order = gl2_order(q)
    s = Fraction(0)
    for fam in gl2_character_families(q):
        s += Fraction((fam.plus - fam.minus) * order ** (2 * g - 2), fam.degree ** (2 * g - 2))
    gl_count = (q - 1) * s
    if gl_count.denominator != 1:
        raise NonIntegralCount(f"GL_2 count {gl_count} is not an integer")
    count, rem = divmod(int(gl_count), (q - 1) ** (2 * g))
    if rem:
        raise NonIntegralCount(f"GL_2 count {gl_count} not divisible by (q-1)^{2 * g}")
    return count


@lru_cache(maxsize=None)
def mixed_hodge_pgl2(g: int) -> MixedHodgePoly:
    """Combine the four character-type terms and divide exactly."""
    if g < 2:
        raise ValueError("the closed form is used for g >= 2")
    q, t = BiPoly.q(), BiPoly.t()
    one = BiPoly(1)
    shift = q ** (2 * g - 2) * t ** (4 * g - 4)
    terms = [
        ((q * q * t ** 3 + 1) ** (2 * g), (q * q * t * t - one) * (q * q * t ** 4 - one)),
        (shift * (q * q * t + 1) ** (2 * g), (q * q - one) * (q * q * t * t - one)),
        (shift * (q * t + 1) ** (2 * g) * -1, (q * t * t - one) * (q - one) * 2),
        (shift * (q * t - 1) ** (2 * g) * -1, (q + one) * (q * t * t + one) * 2),
    ]
    num = BiPoly(0)
    for i, (n_i, _) in enumerate(terms):
        part = n_i
        for j, (_, d_j) in enumerate(terms):
            if j != i:
                part = part * d_j
        num = num + part
    den = one
    for _, d in terms:
        den = den * d
    try:
        h = exact_divide(num, den)
    except NotDivisible as exc:
        raise NotDivisible(f"H for g={g} is not a polynomial: {exc}") from None
    if h.coeff(0, 0) != 1:
        raise NotDivisible(f"H for g={g} has constant term {h.coeff(0, 0)}")
    return MixedHodgePoly(h, g)


def poincare_from_H(h: MixedHodgePoly) -> LaurentPoly:
    """``P(t) = H(1, 1, t)``."""
    return h.poly.specialize_q(1)


def e_polynomial(h: MixedHodgePoly) -> LaurentPoly:
    """``E(q) = q^dim H(1/q, -1)``."""
    e = h.poly.specialize_t(-1).reflect().shift(h.dim)
    if not e.is_integral() or (e and e.valuation() < 0):
        raise NonIntegral(f"E-polynomial {e} is not an integer polynomial")
    return e


def pure_part(h: MixedHodgePoly) -> BiPoly:
    """Monomials ``q^j t^(2j)``: weight equal to cohomological degree."""
    return h.poly.filter(lambda a, b: b == 2 * a)


def chi_l2_pgl2(g: int) -> int:
    """Pure middle-degree coefficient ``[q^(3g-3) t^(6g-6)]``; the intersection
    form on middle compactly supported cohomology lives there."""
    return pure_part(mixed_hodge_pgl2(g)).coeff(3 * g - 3, 6 * g - 6)


@dataclass(frozen=True)
class PurityReport:
    genus: int
    half_dim: int
    pure: LaurentPoly
    predicted: LaurentPoly
    agree: bool
    mismatched_degrees: Tuple[int, ...]


def purity_check(g: int, half_dim: Optional[int] = None) -> PurityReport:
    """Compare the collapsed pure part with ``q^(d/2) A(v, 1/q)``.

    One central puncture ``mu = ((2))``: the crab quiver is ``g`` loops on
    one vertex with ``v = (2)``.  By default ``d`` is the dimension of the
    ``GL_2`` character variety, ``8g - 6``; pass ``half_dim`` to test
    another normalization (``3g - 3`` gives a non-polynomial right side).
    """
    h = mixed_hodge_pgl2(g)
    collapsed = {a: c for (a, _), c in pure_part(h).items()}
    left = LaurentPoly(collapsed, "q")
    half = crab_dimension(g, [(2,)]) // 2 if half_dim is None else half_dim
    a = kac_polynomial(loop_quiver(g), (2,)).poly
    right = a.reflect().shift(half)
    diff = left - right
    return PurityReport(g, half, left, right, not diff, tuple(sorted(diff.terms)))
