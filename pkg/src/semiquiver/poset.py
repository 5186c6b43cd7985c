"""Finite posets: Möbius function, covers, maximal chains."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import InputError
from .semigroup import GreenData


@dataclass(frozen=True)
class FinitePoset:
    """``leq[x][y]`` is True when x <= y."""

    leq: tuple[tuple[bool, ...], ...]

    def __post_init__(self):
        leq = tuple(tuple(bool(v) for v in row) for row in self.leq)
        object.__setattr__(self, "leq", leq)
        n = len(leq)
        if any(len(row) != n for row in leq):
            raise InputError("order relation must be square")
        for x in range(n):
            if not leq[x][x]:
                raise InputError(f"relation is not reflexive at {x}")
            for y in range(n):
                if x != y and leq[x][y] and leq[y][x]:
                    raise InputError(f"relation is not antisymmetric at ({x}, {y})")
                if leq[x][y]:
                    for z in range(n):
                        if leq[y][z] and not leq[x][z]:
                            raise InputError(f"relation is not transitive at ({x}, {y}, {z})")

    @property
    def size(self) -> int:
        return len(self.leq)

    def less(self, x: int, y: int) -> bool:
        return x != y and self.leq[x][y]

    def interval(self, x: int, y: int) -> list[int]:
        return [z for z in range(self.size) if self.leq[x][z] and self.leq[z][y]]

    def minimal(self) -> list[int]:
        return [y for y in range(self.size) if not any(self.less(x, y) for x in range(self.size))]

    def maximal(self) -> list[int]:
        return [x for x in range(self.size) if not any(self.less(x, y) for y in range(self.size))]

    def covers(self) -> list[tuple[int, int]]:
        """Pairs (x, y) with x < y and nothing strictly between."""
        n = self.size
        out = []
        for x in range(n):
            for y in range(n):
                if self.less(x, y) and not any(self.less(x, z) and self.less(z, y) for z in range(n)):
                    out.append((x, y))
        return out

    def bottom(self) -> int | None:
        m = self.minimal()
        return m[0] if len(m) == 1 and all(self.leq[m[0]][y] for y in range(self.size)) else None

    def top(self) -> int | None:
        m = self.maximal()
        return m[0] if len(m) == 1 and all(self.leq[y][m[0]] for y in range(self.size)) else None


def jclass_poset(green: GreenData) -> FinitePoset:
    return FinitePoset(green.j_leq)


@dataclass(frozen=True)
class MobiusTable:
    """``mu[x][y]``; entries off the order relation are 0."""

    mu: tuple[tuple[int, ...], ...]

    def __call__(self, x: int, y: int) -> int:
        return self.mu[x][y]


def mobius(poset: FinitePoset) -> MobiusTable:
    n = poset.size
    # process y in an order where everything below y comes first
    heights = {y: sum(1 for x in range(n) if poset.less(x, y)) for y in range(n)}
    ys = sorted(range(n), key=lambda y: heights[y])
    mu = [[0] * n for _ in range(n)]
    for x in range(n):
        mu[x][x] = 1
        for y in ys:
            if poset.less(x, y):
                mu[x][y] = -sum(mu[x][z] for z in range(n) if poset.leq[x][z] and poset.less(z, y))
    return MobiusTable(tuple(tuple(r) for r in mu))


def check_mobius(poset: FinitePoset, table: MobiusTable) -> list[tuple[int, int]]:
    """Pairs x <= y where the defining identity fails (empty when correct)."""
    bad = []
    for x in range(poset.size):
        for y in range(poset.size):
            if poset.leq[x][y]:
                total = sum(table(x, z) for z in poset.interval(x, y))
                if total != (1 if x == y else 0):
                    bad.append((x, y))
    return bad


def maximal_chains(poset: FinitePoset) -> list[list[int]]:
    """All maximal chains, bottom to top, depth-first in index order."""
    cover_up: dict[int, list[int]] = {x: [] for x in range(poset.size)}
    for x, y in poset.covers():
        cover_up[x].append(y)
    chains: list[list[int]] = []

    def walk(path: list[int]):
        ups = cover_up[path[-1]]
        if not ups:
            chains.append(list(path))
            return
        for y in ups:
            path.append(y)
            walk(path)
            path.pop()

    for m in poset.minimal():
        walk([m])
    return chains


def poset_from_relation(n: int, pairs: Sequence[tuple[int, int]]) -> FinitePoset:
    """Reflexive-transitive closure of the given strict relations."""
    leq = [[i == j for j in range(n)] for i in range(n)]
    for a, b in pairs:
        leq[a][b] = True
    for k in range(n):
        for i in range(n):
            if leq[i][k]:
                for j in range(n):
                    if leq[k][j]:
                        leq[i][j] = True
    return FinitePoset(leq)
