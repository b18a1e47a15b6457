"""Acceptance criteria 1-9, each at its stated tolerance and time limit.

Every criterion prints one line ``[PASS]`` or ``[FAIL]``.  Run under pytest,
or directly with ``python tests/test_acceptance.py`` for the summary alone.
"""

import itertools
import json
import random
import subprocess
import sys
import time
from pathlib import Path

import pytest

from quiverhodge.charvar import (chi_l2_pgl2, count_char_variety_pgl2, e_polynomial, gl2_character_families,
                                 gl2_order, mixed_hodge_pgl2, prime_power, pure_part)
from quiverhodge.errors import NotPrimePower
from quiverhodge.exact import BiPoly, LaurentPoly, RatFunc, parse_terms, partitions
from quiverhodge.fforacle import brute_kac, load_default_manifest, oracle_poincare
from quiverhodge.kacpoly import kac_polynomial
from quiverhodge.predict import euler_phi, segal_selby_bound, sen_l2_dim
from quiverhodge.quiver import Quiver, crab_quiver, dim_quiver_variety, jordan_quiver, path_quiver
from quiverhodge.qvbetti import poincare_polynomial
from quiverhodge.series import GradedSeries, box_keys

ROOT = Path(__file__).resolve().parents[1]
Q, T = BiPoly.q(), BiPoly.t()

# the displayed genus-3 polynomial, monomial by monomial: (coefficient, q-degree, t-degree)
GENUS_THREE = [
    (1, 12, 12), (1, 10, 12), (6, 10, 11), (1, 8, 12), (1, 10, 10), (6, 8, 11), (16, 8, 10),
    (6, 8, 9), (1, 6, 10), (1, 8, 8), (26, 6, 9), (16, 6, 8), (6, 6, 7), (1, 4, 8), (1, 6, 6),
    (6, 4, 7), (16, 4, 6), (6, 4, 5), (1, 4, 4), (1, 2, 4), (6, 2, 3), (1, 2, 2), (1, 0, 0),
]


def report(number, title, ok, seconds, limit, detail=""):
    status = "PASS" if ok else "FAIL"
    line = f"[{status}] criterion {number}: {title} ({seconds:.2f}s, limit {limit})"
    if detail:
        line += f" -- {detail}"
    return line


def cli(*argv):
    proc = subprocess.run([sys.executable, "-m", "quiverhodge.cli", *argv], capture_output=True, text=True)
    return proc.returncode, proc.stdout


# -- criteria ----------------------------------------------------------------------

def criterion_1():
    start = time.perf_counter()
    code, out = cli("kac", "--quiver", str(ROOT / "quivers" / "d4tilde.quiver"), "--v", "2,1,1,1,1")
    lines = out.splitlines()
    elapsed = time.perf_counter() - start
    ok = code == 0 and "A = q + 4" in lines and "m_v = 4" in lines and elapsed < 30
    return ok, report(1, "D4 affine Kac polynomial q + 4, m_v = 4", ok, elapsed, "30s", " | ".join(lines[:2]))


def criterion_2():
    start = time.perf_counter()
    code, out = cli("predict", "main", "--g", "0", "--mu", "1,1;1,1;1,1;1,1")
    elapsed = time.perf_counter() - start
    value = out.splitlines()[0] if out else ""
    ok = code == 0 and value == "4" and elapsed < 30
    return ok, report(2, "toy example chi_L2 = m_v = 4", ok, elapsed, "30s", f"output {value}")


def criterion_3():
    start = time.perf_counter()
    code, out = cli("charvar", "--g", "3", "--format", "json")
    elapsed = time.perf_counter() - start
    res = json.loads(out)["results"] if code == 0 else {}
    expected = BiPoly({(a, b): c for c, a, b in GENUS_THREE})
    h = parse_terms(res["H"]["terms"]) if res else None
    pure = parse_terms(res["pure"]["terms"]) if res else None
    ok = (code == 0 and h == expected and pure == 1 + Q ** 2 * T ** 4 + Q ** 4 * T ** 8
          and res["chi_L2"] == 0 and elapsed < 10)
    detail = f"{len(h) if h else 0} monomials match, pure = {res.get('pure', {}).get('pretty')}, chi_L2 = {res.get('chi_L2')}"
    return ok, report(3, "genus-3 mixed Hodge polynomial, pure part, chi_L2", ok, elapsed, "10s", detail)


def criterion_4():
    start = time.perf_counter()
    rows = []
    ok = True
    for entry in load_default_manifest():
        dim = dim_quiver_variety(entry.quiver, entry.v, entry.w)
        formula = poincare_polynomial(entry.quiver, entry.v, entry.w).as_poly()
        records, oracle = oracle_poincare(entry, dim)
        ok &= formula == oracle and entry.primes == (2, 3, 5, 7)
        stable = [r.p for r in records if r.level == "stable"]
        rows.append(f"{entry.name}: {oracle.pretty()}" + (f" (stable count at p={stable})" if stable else ""))
    elapsed = time.perf_counter() - start
    ok &= elapsed < 300
    return ok, report(4, "Betti formula = finite-field interpolation on the manifest", ok, elapsed, "5min",
                      "; ".join(rows))


def criterion_5():
    start = time.perf_counter()
    cases = [(jordan_quiver(), (1,)), (path_quiver(2), (1, 1)), (Quiver(1), (1,))]
    ok = True
    for quiver, v in cases:
        a = kac_polynomial(quiver, v).poly
        for p in (2, 3, 5):
            ok &= brute_kac(quiver, v, p) == a(p)
    elapsed = time.perf_counter() - start
    ok &= elapsed < 60
    return ok, report(5, "A(v, p) = brute-force count at p = 2, 3, 5", ok, elapsed, "1min")


def criterion_6():
    start = time.perf_counter()
    ok = True
    for g in (2, 3):
        e = e_polynomial(mixed_hodge_pgl2(g))
        for q in (3, 5, 7, 9):
            ok &= count_char_variety_pgl2(g, q) == e(q)
    elapsed = time.perf_counter() - start
    ok &= elapsed < 60
    return ok, report(6, "character sum = E-polynomial for g = 2, 3 and q = 3, 5, 7, 9", ok, elapsed, "1min")


def criterion_7():
    start = time.perf_counter()
    values = (count_char_variety_pgl2(1, 3), count_char_variety_pgl2(1, 5))
    ok = values == (1, 1)
    return ok, report(7, "genus-1 twisted PGL_2 variety is a point", ok, time.perf_counter() - start, "exact",
                      f"counts {values}")


def criterion_8():
    start = time.perf_counter()
    ok = sen_l2_dim(2, 2).dimension == 1 and all(segal_selby_bound(k) == euler_phi(k) for k in range(1, 21))
    return ok, report(8, "Sen 2-form and Segal-Selby = phi(k) for k <= 20", ok, time.perf_counter() - start, "exact")


def _random_series(rng, cap, constant=None):
    coeffs = {}
    for v in box_keys(cap):
        if not any(v):
            if constant is not None:
                coeffs[v] = RatFunc(constant)
            continue
        if rng.random() < 0.4:
            num = LaurentPoly({k: rng.randint(-3, 3) for k in range(rng.randint(1, 3))}, "q")
            den = LaurentPoly({0: rng.choice([-1, 1, 2]), rng.randint(0, 2): 1}, "q")
            if den.is_zero():
                den = LaurentPoly(1, "q")
            coeffs[v] = RatFunc(num, den)
    return GradedSeries(cap, coeffs)


def criterion_9():
    start = time.perf_counter()
    rng = random.Random(20260101)
    caps = [(6,), (3, 3), (2, 2, 2), (4, 2), (1, 2, 3)]
    checks = {}
    round_trip = True
    for i in range(50):
        g = _random_series(rng, caps[i % 5])
        round_trip &= g.pleth_exp().pleth_log() == g
    checks["Exp/Log round trip (50 series)"] = round_trip
    inverse = True
    for i in range(50):
        a = _random_series(rng, caps[i % 5], constant=rng.choice([1, -2, 3]))
        prod = a.mul(a.invert())
        inverse &= list(prod.support()) == [(0,) * len(a.cap)] and prod.constant_term == 1
    checks["series inverse (50 series)"] = inverse
    burnside = True
    for q in range(3, 50, 2):
        try:
            prime_power(q)
        except NotPrimePower:
            continue
        fams = gl2_character_families(q)
        burnside &= sum(f.size * f.degree ** 2 for f in fams) == gl2_order(q)
        burnside &= sum(f.size for f in fams) == q * q - 1
    checks["Burnside and class count"] = burnside
    newstead = True
    for g in range(2, 7):
        newstead &= pure_part(mixed_hodge_pgl2(g)) == sum((Q ** (2 * j) * T ** (4 * j) for j in range(g)), BiPoly(0))
        newstead &= chi_l2_pgl2(g) == 0
    checks["Newstead truncation, chi_L2 = 0 for g = 2..6"] = newstead
    crab = True
    for n in (1, 2, 3):
        for k in (1, 2, 3):
            for mu in itertools.combinations_with_replacement(partitions(n), k):
                quiver, v = crab_quiver(1, mu)
                crab &= kac_polynomial(quiver, v).poly.coeff(1) == 1
    checks["g = 1 crab quivers: [q] A = 1 (n <= 3, up to 3 punctures)"] = crab
    elapsed = time.perf_counter() - start
    ok = all(checks.values()) and elapsed < 300
    failed = [k for k, v in checks.items() if not v]
    return ok, report(9, "property suites", ok, elapsed, "5min",
                      "all hold" if not failed else "failed: " + ", ".join(failed))


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
            criterion_6, criterion_7, criterion_8, criterion_9]


@pytest.mark.parametrize("criterion", CRITERIA, ids=[f"criterion_{i}" for i in range(1, 10)])
def test_acceptance(criterion, capsys):
    ok, line = criterion()
    with capsys.disabled():
        print("\n" + line)
    assert ok, line


if __name__ == "__main__":
    results = [c() for c in CRITERIA]
    for _, line in results:
        print(line)
    sys.exit(0 if all(ok for ok, _ in results) else 1)
