import itertools
from math import gcd

import pytest

from quiverhodge.charvar import chi_l2_pgl2
from quiverhodge.exact import partitions
from quiverhodge.kacpoly import weight_multiplicity
from quiverhodge.predict import conjecture_main, euler_phi, segal_selby_bound, sen_l2_dim, vafa_witten
from quiverhodge.quiver import ParabolicType, Quiver, crab_quiver, jordan_quiver
from quiverhodge.qvbetti import chi_l2_quiver


def test_euler_phi_small():
    assert [euler_phi(k) for k in range(1, 13)] == [1, 1, 2, 2, 4, 2, 6, 4, 6, 4, 10, 4]
    with pytest.raises(ValueError):
        euler_phi(0)


def test_euler_phi_by_definition():
    for k in range(1, 101):
        assert euler_phi(k) == sum(1 for i in range(1, k + 1) if gcd(i, k) == 1)


def test_euler_phi_multiplicative():
    for a in range(1, 51):
        for b in range(1, 51):
            if gcd(a, b) == 1:
                assert euler_phi(a * b) == euler_phi(a) * euler_phi(b)


def test_sen_examples():
    assert sen_l2_dim(2, 2).dimension == 1
    assert sen_l2_dim(5, 8).dimension == 4
    assert sen_l2_dim(4, 3).dimension == 0
    assert sen_l2_dim(2, 2).provenance == "Sen conjecture"


def test_sen_single_degree():
    for k in range(1, 21):
        nonzero = [d for d in range(0, 4 * k) if sen_l2_dim(k, d).dimension]
        assert nonzero == [2 * k - 2]


def test_segal_selby():
    assert [segal_selby_bound(k) for k in (2, 3, 1)] == [1, 2, 1]
    assert all(segal_selby_bound(k) == euler_phi(k) for k in range(1, 21))


def test_main_examples():
    assert conjecture_main(2, [(2,)]).dimension == 0
    assert conjecture_main(1, [(1, 1)]).dimension == 1
    toy = conjecture_main(0, [(1, 1)] * 4)
    assert toy.dimension == 4
    assert toy.provenance == "character-variety L2 conjecture"
    assert conjecture_main(0, ParabolicType.parse("1,1;1,1;1,1;1,1")) == toy


def _types(n, k):
    return itertools.combinations_with_replacement(partitions(n), k)


@pytest.mark.parametrize("n,kmax", [(1, 4), (2, 4), (3, 3)])
def test_main_genus_zero_is_weight_multiplicity(n, kmax):
    for k in range(1, kmax + 1):
        for mu in _types(n, k):
            quiver, v = crab_quiver(0, mu)
            assert conjecture_main(0, mu).dimension == weight_multiplicity(quiver, v).value


@pytest.mark.parametrize("g", range(2, 7))
def test_main_agrees_with_character_variety(g):
    assert conjecture_main(g, [(2,)]).dimension == chi_l2_pgl2(g) == 0


def test_vafa_witten_forwards():
    a1 = Quiver(1)
    for quiver, v, w in [(a1, (1,), (2,)), (jordan_quiver(), (2,), (1,)), (a1, (2,), (4,))]:
        pred = vafa_witten(quiver, v, w)
        assert pred.dimension == chi_l2_quiver(quiver, v, w)
    assert vafa_witten(a1, (1,), (2,)).dimension == 1
    # middle degree of T*Gr(2,4) is 8, the top class of Gr(2,4)
    assert vafa_witten(a1, (2,), (4,)).dimension == 1
