"""Kac A-polynomials via Hua's formula.

The denominator series of the Betti generating function equals
``Exp( sum_v A(v, q) T^v / (q - 1) )``, so ``A(v, q)`` is read off as the
``T^v`` coefficient of ``(q - 1) Log(denominator)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Sequence, Tuple

from .errors import NonPolynomialResult
from .exact import LaurentPoly, RatFunc
from .qvbetti import DEFAULT_BUDGET, denominator_series
from .quiver import DimVector, Quiver
from .series import GradedSeries


@dataclass(frozen=True)
class KacPolynomial:
    quiver: Quiver
    v: DimVector
    poly: LaurentPoly

    @property
    def coefficients(self) -> Tuple[int, ...]:
        """Coefficients by q-degree, constant term first."""
        if self.poly.is_zero():
            return (0,)
        return tuple(self.poly.dense())

    @property
    def connected_support(self) -> bool:
        return self.quiver.connected_support(self.v)

    def __call__(self, q):
        return self.poly(q)

    def __str__(self):
        return self.poly.pretty(ascending=False)


@dataclass(frozen=True)
class WeightMultiplicity:
    value: int
    formal: bool


@dataclass(frozen=True)
class PositivityReport:
    quiver: Quiver
    v: DimVector
    coefficients: Tuple[int, ...]
    nonnegative: bool
    negative_degrees: Tuple[int, ...]


@lru_cache(maxsize=32)
def _log_denominator(quiver: Quiver, cap: DimVector, budget: int) -> GradedSeries:
    return denominator_series(quiver, cap, budget).pleth_log()


def kac_polynomial(quiver: Quiver, v: Sequence[int], cap: Optional[Sequence[int]] = None,
                   budget: int = DEFAULT_BUDGET) -> KacPolynomial:
    """``A_Gamma(v, q)``, the number of absolutely indecomposable representations.

    >>> from .quiver import jordan_quiver
    >>> str(kac_polynomial(jordan_quiver(), (1,)))
    'q'
    """
    v = quiver.check(v, "v")
    cap = v if cap is None else quiver.check(cap, "cap")
    if any(a > b for a, b in zip(v, cap)):
        raise ValueError(f"cap {cap} does not cover v={v}")
    coeff = _log_denominator(quiver, cap, budget)[v]
    a = coeff * RatFunc(LaurentPoly({1: 1, 0: -1}, "q")) if coeff else RatFunc(0)
    if not a.is_polynomial():
        raise NonPolynomialResult(f"A(v={v}) = {a} is not a polynomial")
    poly = a.to_poly()
    if not poly.is_integral() or (poly and poly.valuation() < 0):
        raise NonPolynomialResult(f"A(v={v}) = {poly} does not have integer coefficients")
    return KacPolynomial(quiver, v, poly)


def weight_multiplicity(quiver: Quiver, v: Sequence[int], budget: int = DEFAULT_BUDGET) -> WeightMultiplicity:
    """``m_v = A(v, 0)``; flagged ``formal`` when the quiver has loops."""
    a = kac_polynomial(quiver, v, budget=budget)
    return WeightMultiplicity(a.poly.coeff(0), quiver.has_loops())


def kac_positivity_report(quiver: Quiver, v: Sequence[int], budget: int = DEFAULT_BUDGET) -> PositivityReport:
    a = kac_polynomial(quiver, v, budget=budget)
    coeffs = a.coefficients
    negative = tuple(i for i, c in enumerate(coeffs) if c < 0)
    return PositivityReport(quiver, a.v, coeffs, not negative, negative)
