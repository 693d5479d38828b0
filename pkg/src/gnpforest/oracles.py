"""Whole-space enumeration oracles for the moment formulas.

Every graph on ``n`` labelled vertices is visited once. Sums are kept as
integers grouped by edge count, so one enumeration serves every ``p``:
``E[Z] = sum_e p^e (1-p)^(N-e) S_e`` with ``N = C(n, 2)``.
These routines share no code with :mod:`gnpforest.moments`.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import combinations

from .errors import ParameterError

ORACLE_MAX_N = 7


def _pairs(n: int) -> dict[tuple[int, int], int]:
    return {pair: i for i, pair in enumerate(combinations(range(n), 2))}


def _rootings(verts: tuple[int, ...], edges: list[tuple[int, int]]) -> int:
    """Product of component sizes if acyclic, else 0 (union-find)."""
    parent = {v: v for v in verts}
    size = {v: 1 for v in verts}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in edges:
        ru, rv = find(u), find(v)
        if ru == rv:
            return 0
        parent[ru] = rv
        size[rv] += size[ru]
    out = 1
    for v in verts:
        if find(v) == v:
            out *= size[v]
    return out


@lru_cache(maxsize=None)
def _subset_tables(n: int):
    index = _pairs(n)
    subsets = []
    for k in range(1, n + 1):
        for verts in combinations(range(n), k):
            inner = [(pair, index[pair]) for pair in combinations(verts, 2)]
            mask = 0
            for _, i in inner:
                mask |= 1 << i
            subsets.append((k, verts, mask, inner))
    return subsets


def _weights(n: int, graph: int) -> list[tuple[int, tuple[int, ...], int]]:
    out = []
    for k, verts, _, inner in _subset_tables(n):
        edges = [pair for pair, i in inner if graph >> i & 1]
        w = _rootings(verts, edges)
        if w:
            out.append((k, verts, w))
    return out


@lru_cache(maxsize=None)
def moment_sums(n: int) -> tuple[list[list[int]], list[list[int]]]:
    """``S1[e][k]`` and ``S2[e][k]``: sums of X_k and X_k^2 over graphs with e edges."""
    if not 1 <= n <= ORACLE_MAX_N:
        raise ParameterError(f"enumeration limited to 1 <= n <= {ORACLE_MAX_N}")
    N = n * (n - 1) // 2
    s1 = [[0] * (n + 1) for _ in range(N + 1)]
    s2 = [[0] * (n + 1) for _ in range(N + 1)]
    for graph in range(1 << N):
        e = graph.bit_count()
        x = [0] * (n + 1)
        for k, _, w in _weights(n, graph):
            x[k] += w
        for k in range(n + 1):
            s1[e][k] += x[k]
            s2[e][k] += x[k] * x[k]
    return s1, s2


def _average(sums: list[list[int]], k: int, p: Fraction) -> Fraction:
    N = len(sums) - 1
    return sum((p ** e * (1 - p) ** (N - e) * row[k] for e, row in enumerate(sums)), Fraction(0))


def enumerated_moments(n: int, k: int, p: Fraction) -> tuple[Fraction, Fraction]:
    """``(E[X_k], E[X_k^2])`` by summing over all 2^C(n,2) graphs."""
    s1, s2 = moment_sums(n)
    p = Fraction(p)
    return _average(s1, k, p), _average(s2, k, p)


def enumerated_pair_terms(n: int, k: int, p: Fraction) -> dict[int, Fraction]:
    """Expected ordered pairs of induced rooted k-forests, keyed by overlap size."""
    if not 1 <= n <= ORACLE_MAX_N:
        raise ParameterError(f"enumeration limited to 1 <= n <= {ORACLE_MAX_N}")
    p = Fraction(p)
    N = n * (n - 1) // 2
    by_edges: dict[int, dict[int, int]] = {}
    for graph in range(1 << N):
        forests = [(frozenset(verts), w) for kk, verts, w in _weights(n, graph) if kk == k]
        row = by_edges.setdefault(graph.bit_count(), {})
        for a, wa in forests:
            for b, wb in forests:
                ell = len(a & b)
                row[ell] = row.get(ell, 0) + wa * wb
    out: dict[int, Fraction] = {}
    for e, row in by_edges.items():
        weight = p ** e * (1 - p) ** (N - e)
        for ell, s in row.items():
            out[ell] = out.get(ell, Fraction(0)) + weight * s
    return out
