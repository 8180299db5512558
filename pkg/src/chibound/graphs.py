"""Immutable simple graphs on dense integer vertices, backed by bitmask rows.

Vertices are always 0..n-1.  Vertex sets travel through the public API as
iterables of ints and come back as sorted tuples; internally everything is a
Python int used as a bitmask, which makes neighborhood intersection a single
``&``.  Graphs are immutable values: every combinator returns a fresh graph,
and where labels move an explicit old->new map is returned alongside, so
certificate indices never dangle.
"""

from __future__ import annotations

from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

from .errors import InputError

#: Hard ceiling on supported vertex counts; operations reject larger inputs.
MAX_VERTICES = 1024


def mask_of(vertices: Iterable[int], n: int) -> int:
    """Pack vertex indices into a bitmask, range-checking against ``n``."""
    m = 0
    for v in vertices:
        if not 0 <= v < n:
            raise InputError(f"vertex {v} out of range for a graph on {n} vertices")
        m |= 1 << v
    return m


def bits(mask: int) -> Iterator[int]:
    """Yield the set bit positions of ``mask`` in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def vertex_tuple(mask: int) -> Tuple[int, ...]:
    """Sorted tuple of the vertices packed in ``mask``."""
    return tuple(bits(mask))


class Graph:
    """Simple undirected graph; ``adj[v]`` is the neighborhood bitmask of v.

    Instances are immutable after construction and safe to share between
    threads.  Equality and hashing are structural (labelled).
    """

    __slots__ = ("n", "adj", "_hash")

    def __init__(self, n: int, adj: Sequence[int]):
        if n < 0:
            raise InputError("vertex count must be nonnegative")
        if n > MAX_VERTICES:
            raise InputError(f"vertex count {n} exceeds supported maximum {MAX_VERTICES}")
        if len(adj) != n:
            raise InputError(f"adjacency has {len(adj)} rows for {n} vertices")
        full = (1 << n) - 1
        rows = tuple(int(r) for r in adj)
        for v, row in enumerate(rows):
            if row & ~full:
                raise InputError(f"adjacency row {v} mentions vertices >= {n}")
            if (row >> v) & 1:
                raise InputError(f"self-loop at vertex {v}")
        for v, row in enumerate(rows):
            for u in bits(row):
                if not (rows[u] >> v) & 1:
                    raise InputError(f"adjacency not symmetric at ({v},{u})")
        self.n = n
        self.adj = rows
        self._hash = None

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Tuple[int, int]]) -> "Graph":
        if n < 0 or n > MAX_VERTICES:
            raise InputError(f"vertex count {n} out of supported range")
        rows = [0] * n
        for u, v in edges:
            if u == v:
                raise InputError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise InputError(f"edge ({u},{v}) out of range for n={n}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, rows)

    @property
    def vertex_mask(self) -> int:
        return (1 << self.n) - 1

    def has_edge(self, u: int, v: int) -> bool:
        if not (0 <= u < self.n and 0 <= v < self.n):
            raise InputError(f"vertex pair ({u},{v}) out of range")
        return bool((self.adj[u] >> v) & 1)

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def edges(self) -> Iterator[Tuple[int, int]]:
        for v in range(self.n):
            row = self.adj[v] >> (v + 1)
            for u in bits(row):
                yield (v, u + v + 1)

    @property
    def edge_count(self) -> int:
        return sum(r.bit_count() for r in self.adj) // 2

    def __eq__(self, other) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self.adj == other.adj

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.n, self.adj))
        return self._hash

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.edge_count})"


def neighbors(g: Graph, v: int) -> Tuple[int, ...]:
    """Open neighborhood of ``v`` as a sorted tuple; never contains v."""
    if not 0 <= v < g.n:
        raise InputError(f"vertex {v} out of range")
    return vertex_tuple(g.adj[v])


def induced(g: Graph, x: Iterable[int]) -> Tuple[Graph, Dict[int, int]]:
    """Induced subgraph on ``x`` plus the old->new relabeling map.

    New vertex i corresponds to the i-th smallest member of ``x``.
    """
    mask = mask_of(x, g.n)
    old = vertex_tuple(mask)
    relabel = {v: i for i, v in enumerate(old)}
    rows = []
    for v in old:
        row = 0
        for u in bits(g.adj[v] & mask):
            row |= 1 << relabel[u]
        rows.append(row)
    return Graph(len(old), rows), relabel


def is_complete_between(g: Graph, a: Iterable[int], b: Iterable[int]) -> bool:
    """True iff every vertex of ``a`` is adjacent to every vertex of ``b``."""
    am, bm = mask_of(a, g.n), mask_of(b, g.n)
    if am & bm:
        raise InputError("vertex sets overlap")
    return all((g.adj[v] & bm) == bm for v in bits(am))


def is_anticomplete_between(g: Graph, a: Iterable[int], b: Iterable[int]) -> bool:
    """True iff there is no edge between ``a`` and ``b``."""
    am, bm = mask_of(a, g.n), mask_of(b, g.n)
    if am & bm:
        raise InputError("vertex sets overlap")
    return all(not (g.adj[v] & bm) for v in bits(am))


def cone(h: Graph) -> Graph:
    """Add one new vertex (index ``h.n``) adjacent to every vertex of h."""
    if h.n + 1 > MAX_VERTICES:
        raise InputError("cone would exceed supported vertex maximum")
    apex = 1 << h.n
    rows = [row | apex for row in h.adj]
    rows.append((1 << h.n) - 1)
    return Graph(h.n + 1, rows)


def disjoint_union(g1: Graph, g2: Graph) -> Graph:
    """Disjoint union; g2's vertices are shifted up by ``g1.n``."""
    n = g1.n + g2.n
    if n > MAX_VERTICES:
        raise InputError("union would exceed supported vertex maximum")
    rows = list(g1.adj) + [row << g1.n for row in g2.adj]
    return Graph(n, rows)


def complement(g: Graph) -> Graph:
    full = g.vertex_mask
    return Graph(g.n, [full & ~(g.adj[v] | (1 << v)) for v in range(g.n)])


def component_masks(g: Graph, within: Optional[int] = None) -> List[int]:
    """Connected components of ``g`` restricted to ``within``, as bitmasks.

    Ordered by smallest contained vertex.
    """
    remaining = g.vertex_mask if within is None else within
    out = []
    while remaining:
        seed = remaining & -remaining
        comp = seed
        frontier = seed
        while frontier:
            nxt = 0
            for v in bits(frontier):
                nxt |= g.adj[v] & remaining & ~comp
            comp |= nxt
            frontier = nxt
        out.append(comp)
        remaining &= ~comp
    return out


def components(g: Graph) -> List[Tuple[int, ...]]:
    """Partition the vertices into maximal connected pieces."""
    return [vertex_tuple(m) for m in component_masks(g)]


def is_connected_mask(g: Graph, mask: int) -> bool:
    """True iff ``g`` restricted to ``mask`` is connected (empty set counts)."""
    if mask == 0:
        return True
    return len(component_masks(g, mask)) == 1


def path_graph(k: int) -> Graph:
    """The k-vertex path 0-1-...-(k-1)."""
    return Graph.from_edges(k, [(i, i + 1) for i in range(k - 1)])


def cycle_graph(k: int) -> Graph:
    if k < 3:
        raise InputError("cycles need at least 3 vertices")
    return Graph.from_edges(k, [(i, (i + 1) % k) for i in range(k)])


def complete_graph(k: int) -> Graph:
    return Graph.from_edges(k, [(i, j) for i in range(k) for j in range(i + 1, k)])


def empty_graph(k: int) -> Graph:
    return Graph(k, [0] * k)
