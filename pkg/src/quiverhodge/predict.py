"""L2 cohomology predictions.

Every value returned here is tagged with where it comes from; only the
Segal-Selby bound and the charge-2 Sen statement are theorems.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Union

from .kacpoly import weight_multiplicity
from .qvbetti import DEFAULT_BUDGET, chi_l2_quiver
from .quiver import ParabolicType, Quiver, _as_parabolic, crab_quiver, dim_quiver_variety


@dataclass(frozen=True)
class L2Prediction:
    target: str
    degree: Union[int, str]
    dimension: int
    provenance: str

    def __str__(self):
        return str(self.dimension)


def euler_phi(k: int) -> int:
    """Number of ``1 <= i <= k`` coprime to ``k``.

    >>> euler_phi(12)
    4
    """
    if k < 1:
        raise ValueError("euler_phi needs k >= 1")
    out, n, p = k, k, 2
    while p * p <= n:
        if n % p == 0:
            while n % p == 0:
                n //= p
            out -= out // p
        p += 1
    if n > 1:
        out -= out // n
    return out


def sen_l2_dim(k: int, d: int) -> L2Prediction:
    """L2 harmonic ``d``-forms on the reduced charge-``k`` monopole space,
    whose half dimension is ``2k - 2``."""
    if k < 1 or d < 0:
        raise ValueError("need k >= 1 and d >= 0")
    value = euler_phi(k) if d == 2 * k - 2 else 0
    return L2Prediction(f"reduced monopole moduli, charge {k}", d, value, "Sen conjecture")


def segal_selby_bound(k: int) -> int:
    """Topological lower bound ``phi(k)`` on middle L2 cohomology (a theorem)."""
    if k < 1:
        raise ValueError("need k >= 1")
    return euler_phi(k)


def conjecture_main(g: int, mu: Union[ParabolicType, Sequence[Sequence[int]]],
                    budget: int = DEFAULT_BUDGET) -> L2Prediction:
    """``chi_L2`` of the parabolic character variety of type ``mu``:
    0 for ``g > 1``, 1 for ``g = 1`` and the weight multiplicity of the crab
    quiver for ``g = 0``."""
    mu = _as_parabolic(mu)
    if g < 0:
        raise ValueError("genus must be non-negative")
    target = f"M_B(g={g}, mu={mu})"
    if g > 1:
        value = 0
    elif g == 1:
        value = 1
    else:
        quiver, v = crab_quiver(0, mu)
        value = weight_multiplicity(quiver, v, budget=budget).value
    return L2Prediction(target, "middle", value, "character-variety L2 conjecture")


def vafa_witten(quiver: Quiver, v: Sequence[int], w: Sequence[int],
                budget: int = DEFAULT_BUDGET) -> L2Prediction:
    """Middle L2 dimension of ``M(v, w)``, which equals its middle Betti number."""
    value = chi_l2_quiver(quiver, v, w, budget)
    dim = dim_quiver_variety(quiver, quiver.check(v, "v"), quiver.check(w, "w"))
    return L2Prediction(f"M(v={tuple(v)}, w={tuple(w)})", dim, value, "Vafa-Witten prediction")
