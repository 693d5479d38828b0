"""Immutable simple graphs stored as rows of bits, plus G(n,p) sampling."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator

import numpy as np

from .errors import ParameterError
from .rational import probability

_U64 = 1 << 64


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the indices of set bits in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def to_mask(vertices: Iterable[int] | int, n: int) -> int:
    if isinstance(vertices, int):
        if vertices < 0 or vertices >> n:
            raise ParameterError("vertex mask has bits outside 0..n-1")
        return vertices
    mask = 0
    for v in vertices:
        if not 0 <= v < n:
            raise ParameterError(f"vertex {v} out of range for n={n}")
        mask |= 1 << v
    return mask


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on ``0..n-1``.

    ``rows[v]`` is an integer whose bit ``u`` is set iff ``uv`` is an edge.
    """

    n: int
    rows: tuple[int, ...]

    def __post_init__(self):
        if self.n < 0 or len(self.rows) != self.n:
            raise ParameterError("rows must have length n")
        full = (1 << self.n) - 1
        for v, row in enumerate(self.rows):
            if row & ~full or row >> v & 1:
                raise ParameterError(f"row {v} has a self-loop or out-of-range bit")
            for u in iter_bits(row):
                if not self.rows[u] >> v & 1:
                    raise ParameterError(f"adjacency not symmetric at ({v}, {u})")

    @classmethod
    def empty(cls, n: int) -> Graph:
        return cls(n, (0,) * n)

    @classmethod
    def complete(cls, n: int) -> Graph:
        full = (1 << n) - 1
        return cls(n, tuple(full & ~(1 << v) for v in range(n)))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> Graph:
        rows = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n) or u == v:
                raise ParameterError(f"bad edge ({u}, {v}) for n={n}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, tuple(rows))

    @classmethod
    def cycle(cls, n: int) -> Graph:
        return cls.from_edges(n, [(i, (i + 1) % n) for i in range(n)])

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in iter_bits(self.rows[u] >> (u + 1) << (u + 1))]

    @property
    def num_edges(self) -> int:
        return sum(r.bit_count() for r in self.rows) // 2

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.rows[u] >> v & 1)

    def degree(self, v: int) -> int:
        return self.rows[v].bit_count()

    def neighbors(self, v: int) -> list[int]:
        return list(iter_bits(self.rows[v]))

    def to_text(self) -> str:
        edges = self.edges()
        lines = [f"{self.n} {len(edges)}"] + [f"{u} {v}" for u, v in edges]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> Graph:
        """Parse the ``n m`` / ``u v`` edge-list format (0-indexed, u < v)."""
        lines = text.splitlines()
        if not lines:
            raise ParameterError("empty graph file")
        try:
            n, m = (int(tok) for tok in lines[0].split())
        except ValueError as exc:
            raise ParameterError("first line must be 'n m'") from exc
        body = [ln for ln in lines[1:] if ln.strip()]
        if n < 0 or m < 0 or len(body) != m:
            raise ParameterError(f"header announces {m} edges, found {len(body)}")
        seen = set()
        for ln in body:
            try:
                u, v = (int(tok) for tok in ln.split())
            except ValueError as exc:
                raise ParameterError(f"malformed edge line {ln!r}") from exc
            if not 0 <= u < v < n:
                raise ParameterError(f"edge line {ln!r} must satisfy 0 <= u < v < n")
            if (u, v) in seen:
                raise ParameterError(f"duplicate edge {u} {v}")
            seen.add((u, v))
        return cls.from_edges(n, seen)


def read_graph(path) -> Graph:
    with open(path, encoding="ascii") as fh:
        return Graph.from_text(fh.read())


def write_graph(g: Graph, path) -> None:
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write(g.to_text())


@dataclass(frozen=True)
class GnpParams:
    n: int
    p: Fraction
    seed: int

    def __post_init__(self):
        if self.n < 1:
            raise ParameterError("n must be at least 1")
        object.__setattr__(self, "p", probability(self.p))
        if not 0 <= self.seed < _U64:
            raise ParameterError("seed must be an unsigned 64-bit integer")

    @property
    def q(self) -> Fraction:
        return 1 / (1 - self.p)


def _edge_threshold(p: Fraction) -> int:
    # draw < ceil(p * 2^64)  <=>  draw / 2^64 < p, exactly
    return -((-p.numerator * _U64) // p.denominator)


def sample_gnp(params: GnpParams) -> Graph:
    """Sample G(n, p).

    The coin of the pair with row-major upper-triangle index ``e`` is the
    ``e``-th 64-bit word of a Philox4x64 stream keyed by ``seed``. Philox is
    counter based, so each coin depends only on ``(seed, e)``.
    """
    n = params.n
    iu, ju = np.triu_indices(n, 1)
    draws = np.random.Philox(key=params.seed).random_raw(len(iu))
    t = _edge_threshold(params.p)
    hit = np.ones(len(iu), dtype=bool) if t >= _U64 else draws < np.uint64(t)
    adj = np.zeros((n, n), dtype=bool)
    adj[iu[hit], ju[hit]] = True
    adj |= adj.T
    packed = np.packbits(adj, axis=1, bitorder="little")
    rows = tuple(int.from_bytes(row.tobytes(), "little") for row in packed)
    return Graph(n, rows)


def induced_subgraph(g: Graph, s) -> Graph:
    """Subgraph induced by ``s``, relabelled to ``0..|s|-1`` in increasing order."""
    mask = to_mask(s, g.n)
    verts = list(iter_bits(mask))
    rows = []
    for v in verts:
        r = g.rows[v]
        rows.append(sum(1 << i for i, u in enumerate(verts) if r >> u & 1))
    return Graph(len(verts), tuple(rows))


def components(g: Graph, mask: int) -> list[int]:
    """Connected components of the subgraph induced by ``mask``, as masks."""
    out = []
    rest = mask
    while rest:
        comp = frontier = rest & -rest
        while frontier:
            nxt = 0
            for v in iter_bits(frontier):
                nxt |= g.rows[v]
            frontier = nxt & rest & ~comp
            comp |= frontier
        out.append(comp)
        rest &= ~comp
    return out


def is_induced_forest(g: Graph, s) -> bool:
    """True iff the subgraph induced by ``s`` is acyclic."""
    mask = to_mask(s, g.n)
    if not mask:
        return True
    inner = sum((g.rows[v] & mask).bit_count() for v in iter_bits(mask)) // 2
    size = mask.bit_count()
    if inner > size - 1:
        return False
    return inner == size - len(components(g, mask))


def replace_vertex_neighborhood(g: Graph, v: int, nbrs) -> Graph:
    """Copy of ``g`` in which the neighbourhood of ``v`` is exactly ``nbrs``."""
    if not 0 <= v < g.n:
        raise ParameterError(f"vertex {v} out of range for n={g.n}")
    new = to_mask(nbrs, g.n)
    if new >> v & 1:
        raise ParameterError("a vertex cannot be its own neighbour")
    bit = 1 << v
    rows = list(g.rows)
    for u in range(g.n):
        if u != v:
            rows[u] = (rows[u] | bit) if new >> u & 1 else (rows[u] & ~bit)
    rows[v] = new
    return Graph(g.n, tuple(rows))
