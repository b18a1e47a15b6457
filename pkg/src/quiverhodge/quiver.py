"""Quivers, dimension vectors, quiver-variety dimensions and crab quivers."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence, Tuple

from .errors import IndexOutOfRange, InvalidPartition, ParseError, ShapeMismatch
from .exact import Partition, is_partition

DimVector = Tuple[int, ...]
Edge = Tuple[int, int]


@dataclass(frozen=True)
class Quiver:
    """Vertices ``0..n-1`` and a multiset of oriented edges; ``(i, i)`` is a loop."""

    n: int
    edges: Tuple[Edge, ...] = ()

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("vertex count must be non-negative")
        edges = tuple((int(i), int(j)) for i, j in self.edges)
        for i, j in edges:
            if not (0 <= i < self.n and 0 <= j < self.n):
                raise IndexOutOfRange(f"edge ({i}, {j}) outside 0..{self.n - 1}")
        object.__setattr__(self, "edges", tuple(sorted(edges)))

    @property
    def loops(self) -> int:
        return sum(1 for i, j in self.edges if i == j)

    def has_loops(self) -> bool:
        return self.loops > 0

    def reversed_edge(self, index: int) -> "Quiver":
        edges = list(self.edges)
        i, j = edges[index]
        edges[index] = (j, i)
        return Quiver(self.n, tuple(edges))

    def check(self, v: Sequence[int], name: str = "v") -> DimVector:
        v = tuple(int(x) for x in v)
        if len(v) != self.n:
            raise ShapeMismatch(f"{name} has {len(v)} entries, quiver has {self.n} vertices")
        if any(x < 0 for x in v):
            raise ShapeMismatch(f"{name} must be non-negative: {v}")
        return v

    def connected_support(self, v: Sequence[int]) -> bool:
        """Whether the vertices with ``v_i > 0`` span a connected subgraph."""
        support = {i for i, x in enumerate(v) if x > 0}
        if not support:
            return False
        seen, stack = set(), [min(support)]
        while stack:
            i = stack.pop()
            if i in seen:
                continue
            seen.add(i)
            for a, b in self.edges:
                if a == i and b in support:
                    stack.append(b)
                if b == i and a in support:
                    stack.append(a)
        return seen == support

    def to_text(self) -> str:
        lines = [f"vertices {self.n}"]
        lines += [f"edge {i} {j}" for i, j in self.edges]
        return "\n".join(lines) + "\n"


def jordan_quiver() -> Quiver:
    return Quiver(1, ((0, 0),))


def loop_quiver(g: int) -> Quiver:
    return Quiver(1, ((0, 0),) * g)


def path_quiver(n: int) -> Quiver:
    return Quiver(n, tuple((i, i + 1) for i in range(n - 1)))


def parse_quiver(text: str) -> Quiver:
    """Parse the line format ``vertices N`` / ``edge I J``; ``#`` starts a comment."""
    n = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        words = line.split()
        try:
            if words[0] == "vertices" and len(words) == 2:
                if n is not None:
                    raise ParseError("duplicate vertices header", lineno)
                n = int(words[1])
                if n < 0:
                    raise ParseError("negative vertex count", lineno)
            elif words[0] == "edge" and len(words) == 3:
                if n is None:
                    raise ParseError("edge before vertices header", lineno)
                i, j = int(words[1]), int(words[2])
                if not (0 <= i < n and 0 <= j < n):
                    raise IndexOutOfRange(f"edge {i} {j} outside 0..{n - 1}", lineno)
                edges.append((i, j))
            else:
                raise ParseError(f"unrecognised line {raw.strip()!r}", lineno)
        except ValueError as exc:
            if isinstance(exc, ParseError):
                raise
            raise ParseError(f"bad integer in {raw.strip()!r}", lineno) from None
    if n is None:
        raise ParseError("missing vertices header")
    return Quiver(n, tuple(edges))


def dim_quiver_variety(quiver: Quiver, v: Sequence[int], w: Sequence[int]) -> int:
    """Complex dimension ``2 v.w - 2 v.v + 2 sum_{(i,j) in E} v_i v_j``.

    May be negative; such ``(v, w)`` carry no variety.
    """
    v = quiver.check(v, "v")
    w = quiver.check(w, "w")
    return (2 * sum(a * b for a, b in zip(v, w))
            - 2 * sum(a * a for a in v)
            + 2 * sum(v[i] * v[j] for i, j in quiver.edges))


@dataclass(frozen=True)
class ParabolicType:
    """Partitions ``mu^1..mu^k`` of a common ``n``, one per puncture."""

    partitions: Tuple[Partition, ...]

    def __post_init__(self):
        parts = []
        for mu in self.partitions:
            mu = tuple(int(x) for x in mu)
            if not mu or any(x <= 0 for x in mu):
                raise InvalidPartition(f"not a partition: {mu}")
            parts.append(tuple(sorted(mu, reverse=True)))
        sizes = {sum(mu) for mu in parts}
        if len(sizes) > 1:
            raise InvalidPartition(f"partitions of different sizes: {sorted(sizes)}")
        object.__setattr__(self, "partitions", tuple(parts))

    @property
    def n(self) -> int:
        return sum(self.partitions[0]) if self.partitions else 0

    @property
    def k(self) -> int:
        return len(self.partitions)

    @classmethod
    def parse(cls, text: str) -> "ParabolicType":
        """``"2,1;1,1,1"`` -> ((2,1), (1,1,1))."""
        try:
            parts = [tuple(int(x) for x in chunk.split(",")) for chunk in text.split(";") if chunk.strip()]
        except ValueError:
            raise InvalidPartition(f"bad parabolic type {text!r}") from None
        return cls(tuple(parts))

    def __str__(self):
        return ";".join(",".join(map(str, mu)) for mu in self.partitions)


def _as_parabolic(mu) -> ParabolicType:
    if isinstance(mu, ParabolicType):
        return mu
    if isinstance(mu, str):
        return ParabolicType.parse(mu)
    return ParabolicType(tuple(tuple(m) for m in mu))


def crab_quiver(g: int, mu) -> Tuple[Quiver, DimVector]:
    """Star quiver with ``g`` loops at the centre and one leg per puncture.

    The centre has dimension ``n``; leg ``j`` continues with the complements
    ``n - mu^j_1, n - mu^j_1 - mu^j_2, ...`` and stops before the first zero.

    >>> crab_quiver(0, [(1, 1)] * 4)
    (Quiver(n=5, edges=((1, 0), (2, 0), (3, 0), (4, 0))), (2, 1, 1, 1, 1))
    """
    mu = _as_parabolic(mu)
    if g < 0:
        raise ValueError("genus must be non-negative")
    if g == 0 and mu.k == 0:
        raise InvalidPartition("genus 0 needs at least one puncture")
    if mu.k == 0:
        raise InvalidPartition("at least one puncture is required")
    for part in mu.partitions:
        if not is_partition(part):
            raise InvalidPartition(f"not a partition: {part}")
    n = mu.n
    dims = [n]
    edges = [(0, 0)] * g
    for part in mu.partitions:
        prev, remaining = 0, n
        for size in part[:-1]:
            remaining -= size
            if remaining <= 0:
                break
            dims.append(remaining)
            here = len(dims) - 1
            edges.append((here, prev))
            prev = here
    return Quiver(len(dims), tuple(edges)), tuple(dims)


def crab_dimension(g: int, mu) -> int:
    """Dimension of the GL_n character variety with parabolic type ``mu``:
    ``n^2 (2g - 2) + 2 + sum_j (n^2 - sum_i (mu^j_i)^2)``."""
    mu = _as_parabolic(mu)
    n = mu.n
    return n * n * (2 * g - 2) + 2 + sum(n * n - sum(x * x for x in part) for part in mu.partitions)


def parse_vector(text: str) -> DimVector:
    try:
        return tuple(int(x) for x in text.split(",") if x.strip() != "")
    except ValueError:
        raise ParseError(f"bad dimension vector {text!r}") from None


def as_vector(v: Iterable[int]) -> DimVector:
    return tuple(int(x) for x in v)
