"""Nonnegative integer solutions of ``sum(e_i * column_i) == target``.

These are the exponent systems behind both reductions: is ``X^beta`` a
power product of the leading power products of ``F``, and is ``X^alpha`` a
multiple of ``lp(g)`` inside the monoid they generate.  Every column has
positive total degree, so the solution set is finite and a bounded
depth-first search enumerates it completely.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

Vector = tuple[int, ...]


@dataclass(frozen=True)
class DiophantineSystem:
    columns: tuple[Vector, ...]
    target: Vector

    def __post_init__(self):
        n = len(self.target)
        for col in self.columns:
            if len(col) != n:
                raise ValueError("column arity differs from target")
            if min(col, default=0) < 0:
                raise ValueError("columns must be nonnegative")
            if sum(col) == 0:
                raise ValueError("zero-degree column: the solution set would be infinite")
        if min(self.target, default=0) < 0:
            raise ValueError("target must be nonnegative")


def nonneg_solutions(system: DiophantineSystem) -> list[Vector]:
    """All solutions, in lexicographic order of the exponent vector."""
    return list(_solve(system.columns, system.target))


def solve(columns: Sequence[Sequence[int]], target: Sequence[int]) -> list[Vector]:
    system = DiophantineSystem(tuple(map(tuple, columns)), tuple(target))
    return nonneg_solutions(system)


@lru_cache(maxsize=65536)
def _solve(columns: tuple[Vector, ...], target: Vector) -> tuple[Vector, ...]:
    m = len(columns)
    n = len(target)
    degs = [sum(c) for c in columns]
    # which variables the columns from index i onward can still touch
    reach = [[False] * n for _ in range(m + 1)]
    for i in range(m - 1, -1, -1):
        reach[i] = [reach[i + 1][j] or columns[i][j] > 0 for j in range(n)]
    out: list[Vector] = []
    eps = [0] * m

    def dfs(i: int, rest: list[int]) -> None:
        if not any(rest):
            out.append(tuple(eps[:i]) + (0,) * (m - i))
            return
        if i == m:
            return
        if any(r and not reach[i][j] for j, r in enumerate(rest)):
            return
        col = columns[i]
        bound = sum(rest) // degs[i]
        for j, c in enumerate(col):
            if c:
                bound = min(bound, rest[j] // c)
        # lexicographic order: smaller exponent first
        for k in range(bound + 1):
            eps[i] = k
            dfs(i + 1, [r - k * c for r, c in zip(rest, col)])
        eps[i] = 0

    dfs(0, list(target))
    return tuple(out)


def quotient_memberships(alpha: Sequence[int], lp_g: Sequence[int],
                         lps: Sequence[Sequence[int]]) -> list[Vector]:
    """All ``eta`` with ``X^alpha == lp(g) * prod(lp(f_i) ** eta_i)``."""
    rest = tuple(a - b for a, b in zip(alpha, lp_g))
    if min(rest, default=0) < 0:
        return []
    return solve(lps, rest)
