import random
from fractions import Fraction

import pytest

from quiverhodge.errors import CapMismatch, ConstantTermNotOne, NonUnitConstantTerm, NonzeroConstantTerm
from quiverhodge.exact import LaurentPoly, RatFunc
from quiverhodge.series import GradedSeries, box_keys, invert, mobius, mul, pleth_exp, pleth_log

q = RatFunc.gen("q")


def geometric(cap, ratio):
    """``1/(1 - ratio T)`` in one variable."""
    return GradedSeries(cap, {(k,): ratio ** k for k in range(cap[0] + 1)})


def test_mul_examples():
    a = GradedSeries((2,), {(0,): 1, (1,): 1})
    b = GradedSeries((2,), {(0,): 1, (1,): -1})
    assert mul(a, b) == GradedSeries((2,), {(0,): 1, (2,): -1})
    assert mul(a, GradedSeries.one((2,))) == a
    x = GradedSeries((1, 1), {(0, 0): 1, (1, 0): 1})
    y = GradedSeries((1, 1), {(0, 0): 1, (0, 1): 1})
    assert mul(x, y) == GradedSeries((1, 1), {(0, 0): 1, (1, 0): 1, (0, 1): 1, (1, 1): 1})


def test_invert_examples():
    assert invert(GradedSeries((4,), {(0,): 1, (1,): -1})) == geometric((4,), 1)
    assert invert(GradedSeries.one((3,))) == GradedSeries.one((3,))
    assert invert(GradedSeries((2,), {(0,): 2})) == GradedSeries((2,), {(0,): Fraction(1, 2)})
    with pytest.raises(NonUnitConstantTerm):
        invert(GradedSeries((2,), {(1,): 1}))


def test_pleth_exp_examples():
    assert pleth_exp(GradedSeries((5,), {(1,): 1})) == geometric((5,), 1)
    assert pleth_exp(GradedSeries((4,), {(1,): q})) == geometric((4,), q)
    two = pleth_exp(GradedSeries((2, 2), {(1, 0): 1, (0, 1): 1}))
    expected = mul(GradedSeries((2, 2), {(i, 0): 1 for i in range(3)}),
                   GradedSeries((2, 2), {(0, j): 1 for j in range(3)}))
    assert two == expected


def test_pleth_log_examples():
    assert pleth_log(geometric((5,), 1)) == GradedSeries((5,), {(1,): 1})
    assert pleth_log(geometric((4,), q)) == GradedSeries((4,), {(1,): q})
    f = mul(GradedSeries((2, 2), {(i, 0): 1 for i in range(3)}),
            GradedSeries((2, 2), {(0, j): 1 for j in range(3)}))
    assert pleth_log(f) == GradedSeries((2, 2), {(1, 0): 1, (0, 1): 1})


def test_constant_term_guards():
    with pytest.raises(NonzeroConstantTerm):
        pleth_exp(GradedSeries.one((2,)))
    with pytest.raises(ConstantTermNotOne):
        pleth_log(GradedSeries((2,), {(0,): 2}))
    with pytest.raises(CapMismatch):
        mul(GradedSeries.one((2,)), GradedSeries.one((3,)))


def test_mobius():
    assert [mobius(n) for n in range(1, 13)] == [1, -1, -1, 0, -1, 1, -1, 0, 0, 1, -1, 0]


def test_adams_drops_beyond_cap():
    s = GradedSeries((3,), {(1,): q, (2,): 1})
    assert s.adams(2) == GradedSeries((3,), {(2,): q.adams(2)})


def test_box_keys_graded_order():
    assert box_keys((1, 2)) == ((0, 0), (0, 1), (1, 0), (0, 2), (1, 1), (1, 2))


# -- random property suites ---------------------------------------------------

CAPS = [(6,), (3, 3), (2, 2, 2), (4, 2), (1, 2, 3), (5, 1)]


def random_coeff(rng):
    kind = rng.randrange(3)
    if kind == 0:
        return Fraction(rng.randint(-6, 6), rng.randint(1, 4))
    poly = LaurentPoly({k: rng.randint(-3, 3) for k in range(rng.randint(1, 3))}, "q")
    if kind == 1:
        return RatFunc(poly)
    den = LaurentPoly({0: rng.choice([-1, 1, 2]), rng.randint(1, 2): 1}, "q")
    return RatFunc(poly, den)


def random_series(rng, cap, constant=None, density=0.6):
    coeffs = {}
    for v in box_keys(cap):
        if sum(v) == 0:
            if constant is not None:
                coeffs[v] = constant
            continue
        if rng.random() < density:
            coeffs[v] = random_coeff(rng)
    return GradedSeries(cap, {v: RatFunc(c) if not isinstance(c, RatFunc) else c for v, c in coeffs.items()})


@pytest.mark.parametrize("seed", range(50))
def test_pleth_round_trip(seed):
    rng = random.Random(seed)
    cap = CAPS[seed % len(CAPS)]
    g = random_series(rng, cap, density=0.4)
    assert pleth_log(pleth_exp(g)) == g


@pytest.mark.parametrize("seed", range(50))
def test_invert_identity(seed):
    rng = random.Random(1000 + seed)
    cap = CAPS[seed % len(CAPS)]
    a = random_series(rng, cap, constant=RatFunc(rng.choice([1, -2, 3])), density=0.5)
    prod = mul(a, invert(a))
    assert list(prod.support()) == [(0,) * len(cap)]
    assert prod.constant_term == 1


@pytest.mark.parametrize("seed", range(20))
def test_mul_associative_commutative(seed):
    rng = random.Random(2000 + seed)
    cap = CAPS[seed % len(CAPS)]
    a, b, c = (random_series(rng, cap, constant=RatFunc(1), density=0.3) for _ in range(3))
    assert mul(a, b) == mul(b, a)
    assert mul(mul(a, b), c) == mul(a, mul(b, c))


@pytest.mark.parametrize("seed", range(10))
def test_truncation_consistency(seed):
    rng = random.Random(3000 + seed)
    big = (4, 3)
    small = (2, 2)
    g = random_series(rng, big, density=0.3)
    f = pleth_exp(g)
    assert f.restrict(small) == pleth_exp(g.restrict(small))
    assert pleth_log(f).restrict(small) == pleth_log(f.restrict(small))
