"""Brute-force oracles over small prime fields.

Two independent counts:

* :func:`count_moment_fiber` enumerates the points of the moment-map fibre
  at level ``1_v`` and divides by ``|GL_v(F_p)|``, giving ``#M(v, w)(F_p)``.
* :func:`brute_kac` counts isomorphism classes of absolutely
  indecomposable representations by direct enumeration.

:func:`counts_to_poincare` turns point counts into Betti numbers.  None of
this shares code with the generating-function side.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, List, Sequence, Tuple

import numpy as np

from .errors import (BudgetExceeded, InsufficientPoints, NonIntegralCount,
                     NonIntegralInterpolant)
from .exact import LaurentPoly
from .quiver import DimVector, Quiver

DEFAULT_BUDGET = 20_000_000
_CHUNK = 1 << 16


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % d for d in range(2, int(n ** 0.5) + 1))


@dataclass(frozen=True)
class PrimeField:
    p: int

    def __post_init__(self):
        if not is_prime(self.p) or self.p > 13:
            raise ValueError(f"need a prime p <= 13, got {self.p}")

    def inverse(self, a: int) -> int:
        return pow(a, -1, self.p)


@dataclass(frozen=True)
class CountRecord:
    p: int
    raw: int
    group_order: int
    quotient: int
    level: str = "identity"


def is_generic_level(v: Sequence[int], p: int) -> bool:
    """Whether the level ``1_v`` is generic in characteristic ``p``.

    Genericity needs ``sum(v') != 0 mod p`` for every ``0 < v' <= v``; the
    sums ``sum(v')`` run through ``1..sum(v)``.
    """
    return p > sum(v)


def gl_order(n: int, q: int) -> int:
    out = 1
    for i in range(n):
        out *= q ** n - q ** i
    return out


def gaussian_binomial(n: int, k: int, q: int) -> int:
    if k < 0 or k > n:
        return 0
    num = den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


@lru_cache(maxsize=None)
def factorization_count(v: int, w: int, r: int, q: int) -> int:
    """Number of pairs ``(A, B)``, ``A: F^w -> F^v`` and ``B: F^v -> F^w``,
    with ``A B`` equal to a fixed ``v x v`` matrix of rank ``r``.

    ``B`` must have rank ``s >= r`` with kernel inside the kernel of the
    target; ``A`` is then fixed on the image of ``B`` and free elsewhere.
    """
    total = 0
    for s in range(r, min(v, w) + 1):
        injective = 1
        for i in range(s):
            injective *= q ** w - q ** i
        total += gaussian_binomial(v - r, s - r, q) * injective * q ** (v * (w - s))
    return total


# -- batched linear algebra mod p ---------------------------------------------

def batched_rank(mats: np.ndarray, p: int) -> np.ndarray:
    """Rank over ``F_p`` of each matrix in a ``(B, n, m)`` integer array."""
    a = np.array(mats, dtype=np.int64) % p
    batch, n, m = a.shape
    rank = np.zeros(batch, dtype=np.int64)
    if n == 0 or m == 0:
        return rank
    inv = np.zeros(p, dtype=np.int64)
    for x in range(1, p):
        inv[x] = pow(x, -1, p)
    rows = np.arange(n)
    for col in range(m):
        mask = (a[:, :, col] != 0) & (rows[None, :] >= rank[:, None])
        has = mask.any(axis=1)
        idx = np.nonzero(has)[0]
        if idx.size == 0:
            continue
        piv = mask[idx].argmax(axis=1)
        r0 = rank[idx]
        top = a[idx, r0].copy()
        a[idx, r0] = a[idx, piv]
        a[idx, piv] = top
        pivot_row = (a[idx, r0] * inv[a[idx, r0, col]][:, None]) % p
        a[idx, r0] = pivot_row
        factors = a[idx, :, col].copy()
        factors[np.arange(idx.size), r0] = 0
        a[idx] = (a[idx] - factors[:, :, None] * pivot_row[:, None, :]) % p
        rank[idx] += 1
    return rank


def _digits(start: int, stop: int, p: int, width: int) -> np.ndarray:
    """Base-``p`` digits of ``start..stop-1`` as a ``(stop-start, width)`` array."""
    idx = np.arange(start, stop, dtype=np.int64)
    out = np.empty((idx.size, width), dtype=np.int64)
    for k in range(width):
        out[:, k] = idx % p
        idx //= p
    return out


# -- moment-map fibre --------------------------------------------------------

def _edge_layout(quiver: Quiver, v: DimVector):
    """Offsets of the matrices ``x_a: V_i -> V_j`` and ``y_a: V_j -> V_i`` per edge."""
    layout = []
    off = 0
    for i, j in quiver.edges:
        nx = v[j] * v[i]
        layout.append((i, j, off, off + nx))
        off += 2 * nx
    return layout, off


def _moment_parts(entries: np.ndarray, quiver: Quiver, v: DimVector, layout) -> List[np.ndarray]:
    """Per vertex ``k``: ``sum_{a: i->k} x_a y_a - sum_{a: k->j} y_a x_a``."""
    batch = entries.shape[0]
    parts = [np.zeros((batch, n, n), dtype=np.int64) for n in v]
    for (i, j, ox, oy) in layout:
        if v[i] == 0 or v[j] == 0:
            continue
        x = entries[:, ox:ox + v[j] * v[i]].reshape(batch, v[j], v[i])
        y = entries[:, oy:oy + v[i] * v[j]].reshape(batch, v[i], v[j])
        parts[j] += np.einsum("bik,bkl->bil", x, y)
        parts[i] -= np.einsum("bik,bkl->bil", y, x)
    return parts


def _fibre_chunk(args) -> int:
    quiver, v, w, p, start, stop = args
    layout, width = _edge_layout(quiver, v)
    entries = _digits(start, stop, p, width)
    parts = _moment_parts(entries, quiver, v, layout)
    batch = stop - start
    # histogram of rank tuples of 1 - C_k, weighted by factorization counts
    codes = np.zeros(batch, dtype=np.int64)
    for k, n in enumerate(v):
        if n == 0:
            continue
        target = (np.eye(n, dtype=np.int64)[None] - parts[k]) % p
        codes = codes * (n + 1) + batched_rank(target, p)
    total = 0
    values, counts = np.unique(codes, return_counts=True)
    for code, cnt in zip(values.tolist(), counts.tolist()):
        weight = 1
        for k in reversed(range(len(v))):
            n = v[k]
            if n == 0:
                continue
            code, r = divmod(code, n + 1)
            weight *= factorization_count(n, w[k], r, p)
            if not weight:
                break
        total += weight * cnt
    return total


def _brute_chunk(args) -> int:
    quiver, v, w, p, start, stop = args
    layout, width = _edge_layout(quiver, v)
    frame = []
    off = width
    for k in range(len(v)):
        frame.append((off, off + v[k] * w[k]))
        off += 2 * v[k] * w[k]
    entries = _digits(start, stop, p, off)
    parts = _moment_parts(entries, quiver, v, layout)
    batch = stop - start
    ok = np.ones(batch, dtype=bool)
    for k, n in enumerate(v):
        if n == 0:
            continue
        oi, oj = frame[k]
        i_k = entries[:, oi:oi + n * w[k]].reshape(batch, n, w[k])
        j_k = entries[:, oj:oj + w[k] * n].reshape(batch, w[k], n)
        mu = parts[k] + np.einsum("bik,bkl->bil", i_k, j_k)
        ok &= (((mu - np.eye(n, dtype=np.int64)[None]) % p) == 0).all(axis=(1, 2))
    return int(ok.sum())


def _run_chunks(fn, quiver, v, w, p, size, workers):
    jobs = [(quiver, v, w, p, s, min(s + _CHUNK, size)) for s in range(0, size, _CHUNK)]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return sum(pool.map(fn, jobs))
    return sum(fn(job) for job in jobs)


def count_moment_fiber(quiver: Quiver, v: Sequence[int], w: Sequence[int], p: int, *,
                       budget: int = DEFAULT_BUDGET, shortcut: bool = True,
                       workers: int = 1, level: str = "auto") -> CountRecord:
    """Count ``M(v, w)(F_p)`` from the moment-map fibre.

    ``level="identity"`` counts ``mu^{-1}(1_v)`` and divides by
    ``|GL_v(F_p)|``.  With ``shortcut`` only the edge matrices are
    enumerated; the framing pairs ``(i_k, j_k)`` solving ``i_k j_k = 1 - C_k``
    are counted in closed form from ``rank(1 - C_k)``.

    ``level="stable"`` counts the points of ``mu^{-1}(0)`` whose framing
    image generates ``V`` (the stability-side construction of the same
    variety); it is valid in every characteristic.  ``"auto"`` uses the
    identity level when it is generic at ``p`` and the stable count otherwise.
    """
    PrimeField(p)
    v = quiver.check(v, "v")
    w = quiver.check(w, "w")
    if level == "auto":
        level = "identity" if is_generic_level(v, p) else "stable"
    if level == "stable":
        return count_stable_fiber(quiver, v, w, p, budget=budget)
    if level != "identity":
        raise ValueError(f"unknown level {level!r}")
    _, width = _edge_layout(quiver, v)
    if not shortcut:
        width += 2 * sum(a * b for a, b in zip(v, w))
    size = p ** width
    if size > budget:
        raise BudgetExceeded(f"{p}^{width} = {size} points exceed the budget {budget}")
    raw = _run_chunks(_fibre_chunk if shortcut else _brute_chunk, quiver, v, w, p, size, workers)
    return _record(p, raw, v, "identity")


def _record(p: int, raw: int, v: DimVector, level: str) -> CountRecord:
    order = 1
    for n in v:
        order *= gl_order(n, p)
    quotient, rem = divmod(raw, order)
    if rem:
        raise NonIntegralCount(f"raw count {raw} not divisible by |GL_v(F_{p})| = {order}")
    return CountRecord(p, raw, order, quotient, level)


def _column_rank(cols: List[List[int]], p: int) -> int:
    return _rank_mod_p(cols, p) if cols else 0


def _column_basis(cols: List[List[int]], p: int) -> List[List[int]]:
    basis: List[List[int]] = []
    for c in cols:
        if _column_rank(basis + [c], p) > len(basis):
            basis.append(c)
    return basis


def count_stable_fiber(quiver: Quiver, v: Sequence[int], w: Sequence[int], p: int, *,
                       budget: int = DEFAULT_BUDGET) -> CountRecord:
    """Count stable points of ``mu^{-1}(0)`` over ``F_p`` and divide by ``|GL_v|``.

    A point is stable when the images of the framing maps ``i_k`` generate
    ``V`` under all edge maps.  ``j`` is not enumerated: ``i_k j_k = -C_k``
    is linear in ``j_k`` with ``p^(v_k (w_k - rank i_k))`` solutions when
    solvable.
    """
    PrimeField(p)
    v = quiver.check(v, "v")
    w = quiver.check(w, "w")
    layout, width = _edge_layout(quiver, v)
    iw = sum(a * b for a, b in zip(v, w))
    size = p ** (width + iw)
    if size > budget:
        raise BudgetExceeded(f"{p}^{width + iw} = {size} points exceed the budget {budget}")
    total_dim = sum(v)
    offs = [sum(v[:k]) for k in range(len(v))]

    def block(flat, start, rows, cols):
        return [list(flat[start + r * cols: start + (r + 1) * cols]) for r in range(rows)]

    def matmul(a, b):
        return [[sum(a[r][k] * b[k][c] for k in range(len(b))) % p for c in range(len(b[0]))]
                for r in range(len(a))]

    raw = 0
    for flat in itertools.product(range(p), repeat=width + iw):
        ops = []
        comm = [[[0] * n for _ in range(n)] for n in v]
        for (i, j, ox, oy) in layout:
            if v[i] == 0 or v[j] == 0:
                continue
            x = block(flat, ox, v[j], v[i])
            y = block(flat, oy, v[i], v[j])
            ops.append((i, j, x))
            ops.append((j, i, y))
            xy, yx = matmul(x, y), matmul(y, x)
            for r in range(v[j]):
                for c in range(v[j]):
                    comm[j][r][c] += xy[r][c]
            for r in range(v[i]):
                for c in range(v[i]):
                    comm[i][r][c] -= yx[r][c]
        # framing images as columns of the total space
        cols = []
        off = width
        weight = 1
        for k, n in enumerate(v):
            if n == 0:
                continue
            ik = block(flat, off, n, w[k])
            off += n * w[k]
            for c in range(w[k]):
                col = [0] * total_dim
                for r in range(n):
                    col[offs[k] + r] = ik[r][c]
                cols.append(col)
            # solvability of i_k j_k = -C_k
            rank_i = _column_rank([[ik[r][c] for r in range(n)] for c in range(w[k])], p) if w[k] else 0
            target = [[(-comm[k][r][c]) % p for r in range(n)] for c in range(n)]
            joint = [[ik[r][c] for r in range(n)] for c in range(w[k])] + target
            if _column_rank(joint, p) != rank_i:
                weight = 0
                break
            weight *= p ** (n * (w[k] - rank_i))
        if not weight:
            continue
        span = _column_basis(cols, p)
        while len(span) < total_dim:
            grown = list(span)
            for src, dst, m in ops:
                for col in span:
                    piece = col[offs[src]: offs[src] + v[src]]
                    if not any(piece):
                        continue
                    image = [0] * total_dim
                    for r in range(v[dst]):
                        image[offs[dst] + r] = sum(m[r][c] * piece[c] for c in range(v[src])) % p
                    grown.append(image)
            grown = _column_basis(grown, p)
            if len(grown) == len(span):
                break
            span = grown
        if len(span) == total_dim:
            raw += weight
    return _record(p, raw, v, "stable")


def counts_to_poincare(records: Iterable[CountRecord], dim: int) -> LaurentPoly:
    """Recover ``P(t)`` from point counts of a pure variety of complex dimension ``dim``.

    The count is ``E(q) = sum_i b_{2i} q^(dim - i)`` with ``2i <= dim``, so
    ``E(q) / q^(dim/2)`` is a polynomial of degree ``dim/2``; it is
    interpolated from the first ``dim/2 + 1`` primes and checked against
    the rest.
    """
    if dim < 0 or dim % 2:
        raise ValueError(f"dimension must be even and non-negative, got {dim}")
    half = dim // 2
    points: Dict[int, int] = {}
    for rec in records:
        value = rec.quotient if isinstance(rec, CountRecord) else rec[1]
        prime = rec.p if isinstance(rec, CountRecord) else rec[0]
        if points.get(prime, value) != value:
            raise NonIntegralInterpolant(f"two different counts at p={prime}")
        points[prime] = value
    if len(points) < half + 1:
        raise InsufficientPoints(f"need {half + 1} primes, have {len(points)}")
    reduced = {}
    for prime, value in points.items():
        r, rem = divmod(value, prime ** half)
        if rem:
            raise NonIntegralInterpolant(f"count {value} at p={prime} not divisible by p^{half}")
        reduced[prime] = r
    xs = sorted(reduced)
    coeffs = lagrange_coefficients([(x, reduced[x]) for x in xs[:half + 1]])
    for x in xs[half + 1:]:
        if sum(c * x ** k for k, c in enumerate(coeffs)) != reduced[x]:
            raise NonIntegralInterpolant(f"count at p={x} is off the interpolating polynomial")
    betti: Dict[int, int] = {}
    for k, c in enumerate(coeffs):
        if c.denominator != 1 or c < 0:
            raise NonIntegralInterpolant(f"interpolated coefficient {c} is not a non-negative integer")
        if c:
            betti[2 * (half - k)] = int(c)
    return LaurentPoly(betti, "t")


def lagrange_coefficients(points: Sequence[Tuple[int, int]]) -> List[Fraction]:
    """Coefficients (low to high) of the interpolating polynomial through ``points``."""
    n = len(points)
    out = [Fraction(0)] * n
    for i, (xi, yi) in enumerate(points):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j, (xj, _) in enumerate(points):
            if j == i:
                continue
            basis = [Fraction(0)] + basis
            for k in range(len(basis) - 1):
                basis[k] -= xj * basis[k + 1]
            denom *= xi - xj
        for k in range(n):
            out[k] += yi * basis[k] / denom
    return out


# -- absolutely indecomposable representations --------------------------------

def _nullspace_mod_p(rows: List[List[int]], ncols: int, p: int) -> List[List[int]]:
    """Basis of ``{x : A x = 0}`` over ``F_p``."""
    a = [[x % p for x in r] for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(a)) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = pow(a[r][c], -1, p)
        a[r] = [(x * inv) % p for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [(x - f * y) % p for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == len(a):
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [0] * ncols
        vec[fc] = 1
        for i, pc in enumerate(pivots):
            vec[pc] = (-a[i][fc]) % p
        basis.append(vec)
    return basis


def _rank_mod_p(rows: List[List[int]], p: int) -> int:
    if not rows:
        return 0
    return len(rows[0]) - len(_nullspace_mod_p(rows, len(rows[0]), p))


def _det_mod_p(m: List[List[int]], p: int) -> int:
    n = len(m)
    a = [[x % p for x in r] for r in m]
    det = 1
    for c in range(n):
        piv = next((i for i in range(c, n) if a[i][c]), None)
        if piv is None:
            return 0
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = -det
        det = det * a[c][c] % p
        inv = pow(a[c][c], -1, p)
        for i in range(c + 1, n):
            if a[i][c]:
                f = a[i][c] * inv % p
                a[i] = [(x - f * y) % p for x, y in zip(a[i], a[c])]
    return det % p


def _matrices(quiver: Quiver, v: DimVector, flat: Sequence[int]):
    mats = []
    off = 0
    for i, j in quiver.edges:
        rows, cols = v[j], v[i]
        mats.append([list(flat[off + r * cols: off + (r + 1) * cols]) for r in range(rows)])
        off += rows * cols
    return mats


def _endomorphism_equations(quiver: Quiver, v: DimVector, mats) -> Tuple[List[List[int]], List[int]]:
    """Linear equations ``phi_j x_a - x_a phi_i = 0`` on the blocks ``phi_k``."""
    offsets = []
    off = 0
    for n in v:
        offsets.append(off)
        off += n * n
    eqs = []
    for (i, j), x in zip(quiver.edges, mats):
        for r in range(v[j]):
            for c in range(v[i]):
                row = [0] * off
                # (phi_j x)[r][c] = sum_s phi_j[r][s] x[s][c]
                for s in range(v[j]):
                    row[offsets[j] + r * v[j] + s] += x[s][c]
                # (x phi_i)[r][c] = sum_s x[r][s] phi_i[s][c]
                for s in range(v[i]):
                    row[offsets[i] + s * v[i] + c] -= x[r][s]
                eqs.append(row)
    return eqs, offsets


def _is_unit(vec: Sequence[int], v: DimVector, offsets: List[int], p: int) -> bool:
    for k, n in enumerate(v):
        if n == 0:
            continue
        block = [list(vec[offsets[k] + r * n: offsets[k] + (r + 1) * n]) for r in range(n)]
        if _det_mod_p(block, p) == 0:
            return False
    return True


def endomorphism_profile(quiver: Quiver, v: DimVector, flat: Sequence[int], p: int) -> Tuple[int, bool]:
    """``(dim End(R), R absolutely indecomposable)`` for the representation ``flat``.

    ``R`` is absolutely indecomposable iff the non-invertible endomorphisms
    form a subspace (hence an ideal) of codimension one.
    """
    mats = _matrices(quiver, v, flat)
    eqs, offsets = _endomorphism_equations(quiver, v, mats)
    total = sum(n * n for n in v)
    basis = _nullspace_mod_p(eqs, total, p) if eqs else [
        [int(i == j) for j in range(total)] for i in range(total)]
    e = len(basis)
    nonunits = []
    for coeffs in itertools.product(range(p), repeat=e):
        vec = [0] * total
        for c, b in zip(coeffs, basis):
            if c:
                vec = [(x + c * y) % p for x, y in zip(vec, b)]
        if not _is_unit(vec, v, offsets, p):
            nonunits.append(vec)
            if len(nonunits) > p ** (e - 1):
                return e, False
    if len(nonunits) != p ** (e - 1):
        return e, False
    return e, _rank_mod_p(nonunits, p) == e - 1


@dataclass(frozen=True)
class KacCount:
    p: int
    classes: int
    raw_tuples: int
    group_order: int


def brute_kac_details(quiver: Quiver, v: Sequence[int], p: int, *,
                      budget: int = 2_000_000) -> KacCount:
    PrimeField(p)
    v = quiver.check(v, "v")
    width = sum(v[i] * v[j] for i, j in quiver.edges)
    endo = sum(n * n for n in v)
    cost = p ** width * p ** endo
    if cost > budget:
        raise BudgetExceeded(f"about {cost} steps exceed the budget {budget}")
    order = 1
    for n in v:
        order *= gl_order(n, p)
    if sum(v) == 0:
        return KacCount(p, 0, 0, order)
    raw = 0
    weighted = Fraction(0)
    for flat in itertools.product(range(p), repeat=width):
        e, absind = endomorphism_profile(quiver, v, flat, p)
        if absind:
            raw += 1
            # |Aut R| = (p - 1) p^(e-1); each orbit has |G| / |Aut R| points
            weighted += Fraction((p - 1) * p ** (e - 1), order)
    if weighted.denominator != 1:
        raise NonIntegralCount(f"orbit count {weighted} is not an integer")
    return KacCount(p, int(weighted), raw, order)


def brute_kac(quiver: Quiver, v: Sequence[int], p: int, *, budget: int = 2_000_000) -> int:
    """Number of absolutely indecomposable representations of dimension ``v`` over ``F_p``."""
    return brute_kac_details(quiver, v, p, budget=budget).classes


# -- oracle manifest -----------------------------------------------------------

@dataclass(frozen=True)
class ManifestEntry:
    name: str
    quiver: Quiver
    v: DimVector
    w: DimVector
    primes: Tuple[int, ...]


def parse_manifest(text: str) -> List[ManifestEntry]:
    """Lines ``name  n  edges  v  w  primes``; edges as ``i-j`` joined by ``;`` or ``-``."""
    from .errors import ParseError
    out = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        words = line.split()
        if len(words) != 6:
            raise ParseError(f"expected 6 fields, got {len(words)}", lineno)
        name, n, edges, v, w, primes = words
        try:
            edge_list = [] if edges == "-" else [tuple(int(x) for x in e.split("-")) for e in edges.split(";")]
            quiver = Quiver(int(n), tuple(edge_list))
            out.append(ManifestEntry(name, quiver,
                                     tuple(int(x) for x in v.split(",")),
                                     tuple(int(x) for x in w.split(",")),
                                     tuple(int(x) for x in primes.split(","))))
        except ValueError as exc:
            raise ParseError(str(exc), lineno) from None
    return out


def load_default_manifest() -> List[ManifestEntry]:
    from importlib.resources import files
    return parse_manifest(files("quiverhodge.data").joinpath("oracle_manifest.txt").read_text())


def oracle_poincare(entry: ManifestEntry, dim: int, *, budget: int = DEFAULT_BUDGET,
                    workers: int = 1) -> Tuple[List[CountRecord], LaurentPoly]:
    records = [count_moment_fiber(entry.quiver, entry.v, entry.w, p, budget=budget, workers=workers)
               for p in entry.primes]
    return records, counts_to_poincare(records, dim)
