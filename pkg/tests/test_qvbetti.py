import pytest

from quiverhodge.errors import BudgetExceeded, EmptyVariety
from quiverhodge.exact import LaurentPoly, RatFunc
from quiverhodge.quiver import Quiver, dim_quiver_variety, jordan_quiver, path_quiver
from quiverhodge.qvbetti import (betti_table, chi_l2_quiver, denominator_series, middle_betti,
                                 numerator_series, poincare_polynomial)
from quiverhodge.series import GradedSeries

q = RatFunc.gen("q")
t = LaurentPoly.gen("t")
A1 = Quiver(1)


def test_denominator_examples():
    assert denominator_series(jordan_quiver(), (1,)) == GradedSeries((1,), {(0,): 1, (1,): q / (q - 1)})
    assert denominator_series(A1, (1,)) == GradedSeries((1,), {(0,): 1, (1,): 1 / (q - 1)})
    a2 = denominator_series(path_quiver(2), (1, 1))
    assert a2[(1, 0)] == 1 / (q - 1)
    assert a2[(0, 1)] == 1 / (q - 1)
    assert a2[(1, 1)] == q / (q - 1) ** 2


def test_numerator_at_zero_framing_is_denominator():
    for quiver, cap in [(jordan_quiver(), (3,)), (path_quiver(2), (2, 2)), (Quiver(2, ((0, 1), (0, 1))), (2, 1))]:
        assert numerator_series(quiver, (0,) * quiver.n, cap) == denominator_series(quiver, cap)
        table = betti_table(quiver, (0,) * quiver.n, cap)
        assert table[(0,) * quiver.n].poincare.as_poly() == LaurentPoly(1, "t")
        assert all(e.empty for v, e in table.items() if any(v))


def test_betti_examples():
    assert poincare_polynomial(A1, (1,), (2,)).as_poly() == 1 + t ** 2
    assert poincare_polynomial(A1, (1,), (1,)).as_poly() == LaurentPoly(1, "t")
    assert poincare_polynomial(jordan_quiver(), (1,), (1,)).as_poly() == LaurentPoly(1, "t")


def test_middle_betti_and_chi_examples():
    for v, w, quiver, expected in [((1,), (2,), A1, 1), ((1,), (1,), jordan_quiver(), 0), ((1,), (1,), A1, 1)]:
        assert middle_betti(quiver, v, w) == expected
        assert chi_l2_quiver(quiver, v, w) == expected


def test_grassmannian_cotangent_bundles():
    # T*Gr(k, n): Poincare polynomial is the Gaussian binomial in t^2
    assert poincare_polynomial(A1, (1,), (3,)).as_poly() == 1 + t ** 2 + t ** 4
    assert poincare_polynomial(A1, (2,), (4,)).as_poly() == 1 + t ** 2 + 2 * t ** 4 + t ** 6 + t ** 8


def test_hilbert_schemes_of_points():
    # Hilb^n(C^2): b_{2i} = number of partitions of n with n - i parts
    expected = {1: [1], 2: [1, 1], 3: [1, 1, 1], 4: [1, 1, 2, 1], 5: [1, 1, 2, 2, 1]}
    table = betti_table(jordan_quiver(), (1,), (5,))
    for n, coeffs in expected.items():
        p = table[(n,)].poincare
        assert [p.betti(2 * i) for i in range(len(coeffs))] == coeffs


def test_empty_variety():
    with pytest.raises(EmptyVariety):
        poincare_polynomial(A1, (2,), (1,))
    assert betti_table(A1, (1,), (3,))[(3,)].empty


def test_budget():
    with pytest.raises(BudgetExceeded):
        betti_table(jordan_quiver(), (1,), (20,), budget=100)


@pytest.mark.parametrize("quiver,w,cap", [
    (jordan_quiver(), (1,), (5,)),
    (jordan_quiver(), (2,), (3,)),
    (path_quiver(2), (1, 1), (2, 2)),
    (path_quiver(3), (1, 0, 1), (2, 2, 2)),
    (Quiver(2, ((0, 1), (0, 1))), (1, 0), (2, 2)),
    (A1, (4,), (4,)),
])
def test_poincare_shape(quiver, w, cap):
    for v, entry in betti_table(quiver, w, cap).items():
        assert entry.dim == dim_quiver_variety(quiver, v, w)
        if entry.empty:
            continue
        for degree, b in entry.poincare.coefficients:
            assert degree % 2 == 0 and 0 <= degree <= entry.dim and b > 0
        assert entry.poincare.betti(0) == 1


def test_cap_growth_stability():
    small = betti_table(path_quiver(2), (1, 1), (1, 2))
    big = betti_table(path_quiver(2), (1, 1), (2, 3))
    for v, entry in small.items():
        assert big[v] == entry
