"""Prüfer-style codes for labelled trees whose first m labels are independent.

Labels follow the 1-based convention ``1..n``; label ``L`` is vertex
``L - 1`` of the stored :class:`~gnpforest.graph.Graph`.

Encoding prunes the smallest eligible leaf until one edge is left, writing
the leaf's neighbour to ``a`` when the leaf is in ``1..m`` and to ``b``
otherwise. A leaf in ``1..m`` is eligible only while at least two labels of
``1..m`` are still present. The last label of ``1..m`` therefore survives
and the final edge joins it to a label outside ``1..m``, which fixes the
lengths at ``m - 1`` and ``n - m - 1``.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from itertools import product
from math import factorial

from .errors import ConstraintError, ParameterError, StructureError
from .graph import Graph, iter_bits


@dataclass(frozen=True)
class PrueferCode:
    n: int
    m: int
    a: tuple[int, ...]
    b: tuple[int, ...]

    def __post_init__(self):
        n, m = self.n, self.m
        object.__setattr__(self, "a", tuple(self.a))
        object.__setattr__(self, "b", tuple(self.b))
        if n < 2:
            raise ParameterError("n must be at least 2")
        if not 1 <= m <= n - 1:
            raise ParameterError(f"m must lie in 1..{n - 1}")
        if len(self.a) != m - 1 or len(self.b) != n - m - 1:
            raise ParameterError(f"expected |a| = {m - 1} and |b| = {n - m - 1}")
        if any(not m + 1 <= x <= n for x in self.a):
            raise ParameterError(f"entries of a must lie in {m + 1}..{n}")
        if any(not 1 <= x <= n for x in self.b):
            raise ParameterError(f"entries of b must lie in 1..{n}")


def _check_tree(tree: Graph) -> None:
    n = tree.n
    if n < 2 or tree.num_edges != n - 1:
        raise StructureError("input is not a tree on at least 2 vertices")
    seen = 1
    frontier = 1
    while frontier:
        nxt = 0
        for v in iter_bits(frontier):
            nxt |= tree.rows[v]
        frontier = nxt & ~seen
        seen |= frontier
    if seen != (1 << n) - 1:
        raise StructureError("input is not connected")


def encode_tree_with_independent_set(tree: Graph, m: int) -> PrueferCode:
    _check_tree(tree)
    n = tree.n
    if not 1 <= m <= n - 1:
        raise ParameterError(f"m must lie in 1..{n - 1}")
    if not independent_prefix(tree, m):
        raise ConstraintError(f"labels 1..{m} are not independent")

    nbrs = [set(iter_bits(r)) for r in tree.rows]
    leaves = [v for v in range(n) if len(nbrs[v]) == 1]
    heapq.heapify(leaves)
    low_left = m
    a, b = [], []
    held = []  # the protected last low label, if it became a leaf
    for _ in range(n - 2):
        v = heapq.heappop(leaves)
        while v < m and low_left == 1:
            held.append(v)
            v = heapq.heappop(leaves)
        for w in held:
            heapq.heappush(leaves, w)
        held.clear()
        (u,) = nbrs[v]
        nbrs[u].discard(v)
        nbrs[v].clear()
        if v < m:
            a.append(u + 1)
            low_left -= 1
        else:
            b.append(u + 1)
        if len(nbrs[u]) == 1:
            heapq.heappush(leaves, u)
    return PrueferCode(n, m, tuple(a), tuple(b))


def decode_tree_with_independent_set(code: PrueferCode) -> Graph:
    """Inverse of :func:`encode_tree_with_independent_set`.

    A vertex that is still present has degree one more than its number of
    remaining occurrences in ``a`` and ``b``, so the leaf set is known at
    every step. The type of the smallest eligible leaf decides which
    sequence supplies its neighbour.
    """
    n, m = code.n, code.m
    remaining = [0] * n
    for x in code.a + code.b:
        remaining[x - 1] += 1
    leaves = [v for v in range(n) if remaining[v] == 0]
    heapq.heapify(leaves)
    present = [True] * n
    low_left = m
    ia = ib = 0
    edges = []
    held = []
    for _ in range(n - 2):
        v = heapq.heappop(leaves)
        while v < m and low_left == 1:
            held.append(v)
            v = heapq.heappop(leaves)
        for w in held:
            heapq.heappush(leaves, w)
        held.clear()
        if v < m:
            u = code.a[ia] - 1
            ia += 1
            low_left -= 1
        else:
            u = code.b[ib] - 1
            ib += 1
        if not present[u] or u == v:
            raise ParameterError("code does not describe a tree")
        edges.append((v, u))
        present[v] = False
        remaining[u] -= 1
        if remaining[u] == 0:
            heapq.heappush(leaves, u)
    last = [v for v in range(n) if present[v]]
    edges.append((last[0], last[1]))
    return Graph.from_edges(n, edges)


def _multinomial(parts) -> int:
    parts = list(parts)
    if any(x < 0 for x in parts):
        return 0
    out = factorial(sum(parts))
    for x in parts:
        out //= factorial(x)
    return out


def count_trees_with_independent_set_degseq(n: int, m: int, d) -> int:
    """Labelled trees on ``1..n`` with ``1..m`` independent and degrees ``d``."""
    d = list(d)
    if len(d) != n:
        raise ParameterError("degree sequence must have length n")
    if any(x < 1 for x in d):
        raise ParameterError("degrees must be at least 1")
    low = sum(d[:m])
    if sum(d) != 2 * n - 2 or low > n - 1:
        return 0
    first = _multinomial([x - 1 for x in d[:m]] + [n - 1 - low])
    second = _multinomial([x - 1 for x in d[m:]])
    # the second multinomial's top is n + m - 2 - low, which the parts sum to
    return first * second


def code_space_size(n: int, m: int) -> int:
    return (n - m) ** (m - 1) * n ** (n - m - 1)


def classic_prufer_edges(seq, n: int) -> list[tuple[int, int]]:
    """Edges of the labelled tree on ``0..n-1`` with classic Prüfer sequence ``seq``."""
    degree = [1] * n
    for x in seq:
        degree[x] += 1
    leaves = [v for v in range(n) if degree[v] == 1]
    heapq.heapify(leaves)
    edges = []
    for x in seq:
        leaf = heapq.heappop(leaves)
        edges.append((leaf, x))
        degree[x] -= 1
        if degree[x] == 1:
            heapq.heappush(leaves, x)
    edges.append((heapq.heappop(leaves), heapq.heappop(leaves)))
    return edges


def all_labelled_trees(n: int):
    """Every labelled tree on ``n >= 2`` vertices, once each."""
    for seq in product(range(n), repeat=n - 2):
        yield Graph.from_edges(n, classic_prufer_edges(seq, n))


def independent_prefix(tree: Graph, m: int) -> bool:
    prefix = (1 << m) - 1
    return not any(tree.rows[v] & prefix for v in range(m))
