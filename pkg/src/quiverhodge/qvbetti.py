"""Betti numbers of Nakajima quiver varieties from their generating function.

All series arithmetic is done in ``q = t^(-2)``.  For a multipartition
``lambda`` of ``v`` the summand is::

    prod_{(i,j) in E} q^<l^i,l^j>  /  prod_i q^<l^i,l^i> prod_k prod_{j<=m_k(l^i)} (1 - q^-j)

The numerator series additionally carries ``q^<l^i,(1^w_i)>``.  The
coefficient of ``T^v`` in numerator/denominator, multiplied by
``t^d(v,w)``, is the Poincare polynomial of ``M(v, w)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, Optional, Sequence, Tuple

from .errors import BudgetExceeded, EmptyVariety, NonPolynomialCoefficient
from .exact import LaurentPoly, RatFunc, pairing, partitions
from .quiver import DimVector, Quiver, dim_quiver_variety
from .series import GradedSeries, box_keys

DEFAULT_BUDGET = 2_000_000


@dataclass(frozen=True)
class PoincarePoly:
    """Betti numbers ``b_d`` of a variety of complex dimension ``dim``."""

    coefficients: Tuple[Tuple[int, int], ...]
    dim: int

    @classmethod
    def from_dict(cls, coeffs: Dict[int, int], dim: int) -> "PoincarePoly":
        return cls(tuple(sorted((d, b) for d, b in coeffs.items() if b)), dim)

    def betti(self, degree: int) -> int:
        return dict(self.coefficients).get(degree, 0)

    @property
    def middle(self) -> int:
        return self.betti(self.dim)

    def as_poly(self) -> LaurentPoly:
        return LaurentPoly(dict(self.coefficients), "t")

    def euler_characteristic(self) -> int:
        return sum(b for d, b in self.coefficients)

    def __str__(self):
        return self.as_poly().pretty()


@dataclass(frozen=True)
class BettiEntry:
    """One row of :func:`betti_table`; ``poincare`` is ``None`` for an empty variety."""

    v: DimVector
    dim: int
    poincare: Optional[PoincarePoly] = field(default=None)

    @property
    def empty(self) -> bool:
        return self.poincare is None


# -- per-partition building blocks -------------------------------------------

@lru_cache(maxsize=None)
def _vertex_data(la: Tuple[int, ...]):
    """(self pairing, q-exponent of the hook factor, prod (q^j - 1))."""
    mults: Dict[int, int] = {}
    for part in la:
        mults[part] = mults.get(part, 0) + 1
    poly = LaurentPoly(1, "q")
    shift = 0
    for m in mults.values():
        for j in range(1, m + 1):
            poly = poly * LaurentPoly({j: 1, 0: -1}, "q")
            shift += j
    return pairing(la, la), shift, poly


@lru_cache(maxsize=None)
def _qfactorial(n: int) -> LaurentPoly:
    out = LaurentPoly(1, "q")
    for j in range(1, n + 1):
        out = out * LaurentPoly({j: 1, 0: -1}, "q")
    return out


@lru_cache(maxsize=None)
def _cofactor(la: Tuple[int, ...]) -> LaurentPoly:
    """``prod_{j<=|la|} (q^j - 1)`` divided by the hook product of ``la``."""
    from .exact import poly_divmod
    quo, rem = poly_divmod(_qfactorial(sum(la)), _vertex_data(la)[2])
    assert rem.is_zero()
    return quo


def _multipartition_count(v: Sequence[int]) -> int:
    out = 1
    for x in v:
        out *= len(partitions(x))
    return out


def _enumeration_size(cap: Sequence[int]) -> int:
    return sum(_multipartition_count(v) for v in box_keys(tuple(cap)))


def _coefficient(quiver: Quiver, v: DimVector, w: Optional[DimVector]) -> RatFunc:
    """Sum over multipartitions of ``v`` on the common denominator ``prod_i [v_i]!``."""
    from itertools import product

    num: Dict[int, int] = {}
    den = LaurentPoly(1, "q")
    for x in v:
        den = den * _qfactorial(x)
    per_vertex = [partitions(x) for x in v]
    for lam in product(*per_vertex):
        e = 0
        for i, j in quiver.edges:
            e += pairing(lam[i], lam[j])
        factor = None
        for i, la in enumerate(lam):
            self_pair, shift, _ = _vertex_data(la)
            e += shift - self_pair
            if w is not None:
                e += len(la) * w[i]
            cof = _cofactor(la)
            factor = cof if factor is None else factor * cof
        for k, c in factor.shift(e).terms.items():
            num[k] = num.get(k, 0) + c
    return RatFunc(LaurentPoly(num, "q"), den)


def _series(quiver: Quiver, cap: DimVector, w: Optional[DimVector], budget: int) -> GradedSeries:
    size = _enumeration_size(cap)
    if size > budget:
        raise BudgetExceeded(f"{size} multipartitions exceed the budget {budget}")
    coeffs = {v: _coefficient(quiver, v, w) for v in box_keys(cap)}
    return GradedSeries(cap, coeffs)


@lru_cache(maxsize=64)
def _denominator_cached(quiver: Quiver, cap: DimVector, budget: int) -> GradedSeries:
    return _series(quiver, cap, None, budget)


def denominator_series(quiver: Quiver, cap: Sequence[int], budget: int = DEFAULT_BUDGET) -> GradedSeries:
    """Denominator of the generating function as a series over ``RatFunc`` in ``q``.

    >>> from .quiver import jordan_quiver
    >>> denominator_series(jordan_quiver(), (1,))[(1,)]
    (q)/(q - 1)
    """
    return _denominator_cached(quiver, quiver.check(cap, "cap"), budget)


def numerator_series(quiver: Quiver, w: Sequence[int], cap: Sequence[int],
                     budget: int = DEFAULT_BUDGET) -> GradedSeries:
    return _series(quiver, quiver.check(cap, "cap"), quiver.check(w, "w"), budget)


def _to_poincare(coeff: RatFunc, dim: int, v: DimVector) -> PoincarePoly:
    den_terms = coeff.den.terms
    if len(den_terms) != 1 or den_terms.get(next(iter(den_terms))) != 1:
        raise NonPolynomialCoefficient(f"T^{v} coefficient {coeff} is not a Laurent polynomial in q")
    shift = -next(iter(den_terms))
    out: Dict[int, int] = {}
    for k, c in coeff.num.terms.items():
        k += shift
        degree = dim - 2 * k
        if type(c) is not int or c < 0:
            raise NonPolynomialCoefficient(f"T^{v}: coefficient {c} of q^{k} is not a non-negative integer")
        if degree < 0 or degree > dim:
            raise NonPolynomialCoefficient(f"T^{v}: q^{k} lands in degree {degree} outside 0..{dim}")
        out[degree] = c
    return PoincarePoly.from_dict(out, dim)


@lru_cache(maxsize=64)
def _betti_cached(quiver: Quiver, w: DimVector, cap: DimVector, budget: int):
    den = denominator_series(quiver, cap, budget)
    num = numerator_series(quiver, w, cap, budget)
    ratio = num.mul(den.invert())
    table = {}
    for v in box_keys(cap):
        dim = dim_quiver_variety(quiver, v, w)
        coeff = ratio[v]
        if not coeff:
            table[v] = BettiEntry(v, dim, None)
            continue
        if dim < 0:
            raise NonPolynomialCoefficient(f"T^{v} coefficient {coeff} is nonzero but dim is {dim}")
        table[v] = BettiEntry(v, dim, _to_poincare(coeff, dim, v))
    return table


def betti_table(quiver: Quiver, w: Sequence[int], cap: Sequence[int],
                budget: int = DEFAULT_BUDGET) -> Dict[DimVector, BettiEntry]:
    """Poincare polynomials of ``M(v, w)`` for every ``v <= cap``."""
    return dict(_betti_cached(quiver, quiver.check(w, "w"), quiver.check(cap, "cap"), budget))


def poincare_polynomial(quiver: Quiver, v: Sequence[int], w: Sequence[int],
                        budget: int = DEFAULT_BUDGET) -> PoincarePoly:
    v = quiver.check(v, "v")
    entry = betti_table(quiver, w, v, budget)[v]
    if entry.empty:
        raise EmptyVariety(f"M(v={v}, w={tuple(w)}) is empty")
    return entry.poincare


def middle_betti(quiver: Quiver, v: Sequence[int], w: Sequence[int], budget: int = DEFAULT_BUDGET) -> int:
    """``b_d`` with ``d = dim M(v, w)``, the middle degree."""
    return poincare_polynomial(quiver, v, w, budget).middle


def chi_l2_quiver(quiver: Quiver, v: Sequence[int], w: Sequence[int], budget: int = DEFAULT_BUDGET) -> int:
    """Dimension of the image of compactly supported middle cohomology.

    The intersection form on middle cohomology of a quiver variety is
    definite, so this is the middle Betti number; it is the predicted
    dimension of the space of middle-degree L2 harmonic forms.
    """
    return middle_betti(quiver, v, w, budget)
