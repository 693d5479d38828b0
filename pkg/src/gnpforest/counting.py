"""Rooted-forest counts and the forest-extension count f(k, h, {f_1..f_m}).

All values are Python ints. ``0 ** 0 == 1`` in Python, which is the
convention the extension formula needs when ``l = k`` or ``h = k0 + m``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from math import comb, prod

from .coding import classic_prufer_edges
from .errors import ParameterError

BRUTEFORCE_MAX_K = 8


def binom(n: int, k: int) -> int:
    """Binomial coefficient, zero outside ``0 <= k <= n``."""
    if n < 0 or k < 0 or k > n:
        return 0
    return comb(n, k)


@dataclass(frozen=True)
class ForestShape:
    """Multiset of component sizes, stored sorted in decreasing order."""

    parts: tuple[int, ...]

    def __post_init__(self):
        parts = tuple(sorted(self.parts, reverse=True))
        if not parts or any(f < 1 for f in parts):
            raise ParameterError("a forest shape needs at least one part, all >= 1")
        object.__setattr__(self, "parts", parts)

    @property
    def ell(self) -> int:
        return sum(self.parts)

    @property
    def m(self) -> int:
        return len(self.parts)


def rooted_forest_count(k: int, m: int) -> int:
    """Labelled rooted forests on k vertices with m trees: C(k-1, m-1) k^(k-m)."""
    if not 1 <= m <= k:
        raise ParameterError("need 1 <= m <= k")
    return comb(k - 1, m - 1) * k ** (k - m)


def cayley_tree_count(f: int) -> int:
    """Labelled trees on f vertices, f^(f-2), with one tree on 1 or 2 vertices."""
    if f < 1:
        raise ParameterError("f must be at least 1")
    return 1 if f <= 2 else f ** (f - 2)


@lru_cache(maxsize=None)
def _extension_sum(k: int, ell: int, m: int, h: int) -> int:
    free = k - ell
    return sum(
        binom(free, k0) * ell ** (free - k0) * binom(k0 + m - 1, h - 1) * free ** (k0 + m - h)
        for k0 in range(free + 1)
        if k0 + m - h >= 0
    )


def forest_extension_count(k: int, h: int, shape: ForestShape) -> int:
    """Rooted spanning forests of K_k with h trees containing a fixed induced forest.

    The fixed forest has component sizes ``shape``; the count depends on
    nothing else.
    """
    ell, m = shape.ell, shape.m
    if ell > k:
        raise ParameterError("shape has more vertices than k")
    if not 1 <= h <= k - ell + m:
        raise ParameterError(f"h must lie in 1..{k - ell + m}")
    return prod(shape.parts) * _extension_sum(k, ell, m, h)


# -- brute-force oracle --------------------------------------------------------

def _pair_bit(u: int, v: int) -> int:
    if u > v:
        u, v = v, u
    return 1 << (v * (v - 1) // 2 + u)


@lru_cache(maxsize=None)
def rooted_spanning_forests(k: int) -> dict[int, tuple[int, ...]]:
    """Edge masks of all rooted spanning forests of K_k, grouped by tree count.

    A rooted forest on ``0..k-1`` is a tree on ``k + 1`` vertices with an
    extra apex ``k`` joined to the roots. Distinct rootings of the same edge
    set appear as separate entries.
    """
    groups: dict[int, list[int]] = {}
    for seq in product(range(k + 1), repeat=k - 1):
        edges = classic_prufer_edges(seq, k + 1)
        mask = 0
        h = 0
        for u, v in edges:
            if u == k or v == k:
                h += 1
            else:
                mask |= _pair_bit(u, v)
        groups.setdefault(h, []).append(mask)
    return {h: tuple(masks) for h, masks in groups.items()}


def canonical_forest(shape: ForestShape) -> tuple[tuple[int, ...], list[tuple[int, int]]]:
    """Paths with the given sizes laid out on consecutive vertices from 0."""
    verts, edges = [], []
    start = 0
    for f in shape.parts:
        verts.extend(range(start, start + f))
        edges.extend((i, i + 1) for i in range(start, start + f - 1))
        start += f
    return tuple(verts), edges


def forest_extension_count_bruteforce(k: int, h: int, shape: ForestShape, forest=None) -> int:
    """Enumerate rooted spanning forests of K_k with h trees containing a forest as induced subgraph.

    ``forest`` is an optional ``(vertices, edges)`` placement; by default the
    canonical path layout of ``shape`` is used.
    """
    if k > BRUTEFORCE_MAX_K:
        raise ParameterError(f"brute force limited to k <= {BRUTEFORCE_MAX_K}")
    if shape.ell > k:
        raise ParameterError("shape has more vertices than k")
    verts, edges = forest if forest is not None else canonical_forest(shape)
    within = 0
    for i, u in enumerate(verts):
        for v in verts[i + 1:]:
            within |= _pair_bit(u, v)
    target = 0
    for u, v in edges:
        target |= _pair_bit(u, v)
    return sum(1 for mask in rooted_spanning_forests(k).get(h, ()) if mask & within == target)
