"""Exact clique number, chromatic number and stable sets, with witnesses.

Everything here is exact.  A node budget converts runaway searches into
``ResourceBudgetError`` -- never a wrong answer.  Results are deterministic:
among optima, the lexicographically least witness is returned (least vertex
tuple for cliques/stable sets; least canonical color vector for colorings).

The chromatic solver is iterative-deepening k-colorability between a clique
lower bound and a DSATUR-greedy upper bound, with dynamic saturation ordering
inside the decision search.  The clique solver is a bitset branch-and-bound
with a greedy-coloring bound.  A global cache keyed by (graph, subset) stores
chromatic bounds and clique results; clearing it never changes any answer.
"""

from __future__ import annotations

import os
import threading
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Tuple

from .errors import InputError, ResourceBudgetError
from .graphs import Graph, bits, mask_of, vertex_tuple

_DEFAULT_BUDGET = 5_000_000


def default_budget() -> int:
    """Node budget for one solver call; override via CHIBOUND_BUDGET."""
    raw = os.environ.get("CHIBOUND_BUDGET")
    if raw is None:
        return _DEFAULT_BUDGET
    try:
        value = int(raw)
    except ValueError:
        raise InputError(f"CHIBOUND_BUDGET must be an integer, got {raw!r}")
    if value <= 0:
        raise InputError("CHIBOUND_BUDGET must be positive")
    return value


class _Counter:
    __slots__ = ("left",)

    def __init__(self, budget: int):
        self.left = budget

    def spend(self, amount: int = 1):
        self.left -= amount
        if self.left < 0:
            raise ResourceBudgetError("solver exceeded its node budget")


@dataclass(frozen=True)
class Coloring:
    """A proper coloring: sorted (vertex, color) pairs plus the palette size."""

    assignment: Tuple[Tuple[int, int], ...]
    palette: int

    def color_of(self, v: int) -> int:
        for u, c in self.assignment:
            if u == v:
                return c
        raise InputError(f"vertex {v} not colored")

    def as_dict(self) -> Dict[int, int]:
        return dict(self.assignment)


def is_proper_coloring(g: Graph, coloring: Coloring, vertices: Iterable[int]) -> bool:
    """Definition-level check, independent of the solver."""
    mask = mask_of(vertices, g.n)
    colors = coloring.as_dict()
    if set(colors) != set(bits(mask)):
        return False
    if coloring.palette != len(set(colors.values())):
        return False
    for v in bits(mask):
        for u in bits(g.adj[v] & mask):
            if colors[u] == colors[v]:
                return False
    return True


def is_clique(g: Graph, vertices: Iterable[int]) -> bool:
    mask = mask_of(vertices, g.n)
    return all((g.adj[v] & mask) == mask ^ (1 << v) for v in bits(mask))


def is_stable(g: Graph, vertices: Iterable[int]) -> bool:
    mask = mask_of(vertices, g.n)
    return all(not (g.adj[v] & mask) for v in bits(mask))


class InvariantCache:
    """Memo of exact invariants per (graph, vertex subset).

    Stores chromatic bounds as intervals that tighten monotonically, and
    clique results outright.  Thread-safe; partitioned per graph.
    """

    def __init__(self):
        self._lock = threading.Lock()
        self._per_graph: Dict[Graph, dict] = {}

    def _slot(self, g: Graph) -> dict:
        with self._lock:
            slot = self._per_graph.get(g)
            if slot is None:
                slot = {"chi": {}, "clique": {}, "colorings": {}}
                self._per_graph[g] = slot
            return slot

    def chi_bounds(self, g: Graph, mask: int) -> Tuple[int, int]:
        return self._slot(g)["chi"].get(mask, (0, mask.bit_count()))

    def note_chi_bounds(self, g: Graph, mask: int, lo: int, hi: int):
        slot = self._slot(g)["chi"]
        with self._lock:
            old_lo, old_hi = slot.get(mask, (0, mask.bit_count()))
            slot[mask] = (max(lo, old_lo), min(hi, old_hi))

    def clique(self, g: Graph, mask: int):
        return self._slot(g)["clique"].get(mask)

    def note_clique(self, g: Graph, mask: int, size: int, witness: int):
        with self._lock:
            self._slot(g)["clique"][mask] = (size, witness)

    def coloring(self, g: Graph, mask: int):
        return self._slot(g)["colorings"].get(mask)

    def note_coloring(self, g: Graph, mask: int, coloring: "Coloring"):
        with self._lock:
            self._slot(g)["colorings"][mask] = coloring

    def forget(self, g: Graph):
        with self._lock:
            self._per_graph.pop(g, None)

    def clear(self):
        with self._lock:
            self._per_graph.clear()


_CACHE = InvariantCache()


def clear_cache():
    _CACHE.clear()


def forget_graph(g: Graph):
    """Drop cached entries for one graph (scans call this between instances)."""
    _CACHE.forget(g)


def _normalize(g: Graph, vertices: Optional[Iterable[int]]) -> int:
    if vertices is None:
        return g.vertex_mask
    return mask_of(vertices, g.n)


# ---------------------------------------------------------------- cliques


def _greedy_color_bound(adj: Tuple[int, ...], mask: int) -> List[Tuple[int, int]]:
    """Greedy coloring of ``mask`` used as a clique search bound.

    Returns (vertex, color_index) in the order produced; max color + 1 bounds
    the clique size of the set.
    """
    order = []
    work = mask
    color = 0
    while work:
        color += 1
        cls = work
        colored = 0
        while cls:
            v = (cls & -cls).bit_length() - 1
            order.append((v, color))
            colored |= 1 << v
            cls &= ~adj[v]
            cls &= ~(1 << v)
        work &= ~colored
    return order


def _max_clique_size(adj: Tuple[int, ...], mask: int) -> int:
    """Exact maximum clique size within ``mask`` (branch and bound)."""
    best = 0

    def expand(size: int, cand: int):
        nonlocal best
        if cand == 0:
            if size > best:
                best = size
            return
        order = _greedy_color_bound(adj, cand)
        local = cand
        for v, color in reversed(order):
            if size + color <= best:
                return
            bit = 1 << v
            if not (local & bit):
                continue
            expand(size + 1, local & adj[v])
            local &= ~bit

    expand(0, mask)
    return best


def _lex_clique(adj: Tuple[int, ...], mask: int, target: int) -> int:
    """Lexicographically least clique of ``target`` vertices inside ``mask``."""
    if target == 0:
        return 0

    def search(chosen: int, count: int, cand: int) -> Optional[int]:
        if count == target:
            return chosen
        if count + cand.bit_count() < target:
            return None
        work = cand
        while work:
            bit = work & -work
            v = bit.bit_length() - 1
            found = search(chosen | bit, count + 1, cand & adj[v])
            if found is not None:
                return found
            work ^= bit
        return None

    result = search(0, 0, mask)
    if result is None:
        raise InputError("no clique of the requested size (internal inconsistency)")
    return result


def omega(g: Graph, vertices: Optional[Iterable[int]] = None) -> Tuple[int, Tuple[int, ...]]:
    """Exact clique number of g[vertices] plus a lexicographically least witness."""
    mask = _normalize(g, vertices)
    cached = _CACHE.clique(g, mask)
    if cached is None:
        size = _max_clique_size(g.adj, mask)
        witness = _lex_clique(g.adj, mask, size)
        _CACHE.note_clique(g, mask, size, witness)
        _CACHE.note_chi_bounds(g, mask, size, mask.bit_count())
    else:
        size, witness = cached
    return size, vertex_tuple(witness)


def omega_mask(g: Graph, mask: int) -> int:
    cached = _CACHE.clique(g, mask)
    if cached is not None:
        return cached[0]
    size = _max_clique_size(g.adj, mask)
    witness = _lex_clique(g.adj, mask, size)
    _CACHE.note_clique(g, mask, size, witness)
    _CACHE.note_chi_bounds(g, mask, size, mask.bit_count())
    return size


def max_stable(g: Graph, vertices: Optional[Iterable[int]] = None) -> Tuple[int, Tuple[int, ...]]:
    """Largest stable set of g[vertices], via cliques of the complement."""
    mask = _normalize(g, vertices)
    full = g.vertex_mask
    co_adj = tuple(full & ~(g.adj[v] | (1 << v)) for v in range(g.n))
    size = _max_clique_size(co_adj, mask)
    witness = _lex_clique(co_adj, mask, size)
    return size, vertex_tuple(witness)


# ---------------------------------------------------------------- colorings


def greedy_palette(g: Graph, vertices: Optional[Iterable[int]] = None) -> Tuple[int, Coloring]:
    """DSATUR greedy coloring: deterministic upper bound, never an answer."""
    mask = _normalize(g, vertices)
    return _dsatur(g.adj, mask)


def _dsatur(adj: Tuple[int, ...], mask: int) -> Tuple[int, Coloring]:
    verts = list(bits(mask))
    if not verts:
        return 0, Coloring((), 0)
    colors: Dict[int, int] = {}
    neighbor_colors: Dict[int, set] = {v: set() for v in verts}
    uncolored = set(verts)
    while uncolored:
        v = max(
            uncolored,
            key=lambda u: (len(neighbor_colors[u]), (adj[u] & mask).bit_count(), -u),
        )
        used = neighbor_colors[v]
        c = 0
        while c in used:
            c += 1
        colors[v] = c
        uncolored.discard(v)
        for u in bits(adj[v] & mask):
            if u in neighbor_colors:
                neighbor_colors[u].add(c)
    palette = max(colors.values()) + 1
    return palette, Coloring(tuple(sorted(colors.items())), palette)


def _colorable(adj: Tuple[int, ...], mask: int, k: int, counter: _Counter) -> bool:
    """Exact k-colorability of ``mask`` (dynamic saturation order)."""
    verts = list(bits(mask))
    n = len(verts)
    if n == 0:
        return True
    if k <= 0:
        return False
    if k >= n:
        return True
    colors: Dict[int, int] = {}
    nb_colors: Dict[int, set] = {v: set() for v in verts}

    def pick() -> Optional[int]:
        best_v, best_key = None, None
        for v in verts:
            if v in colors:
                continue
            key = (len(nb_colors[v]), (adj[v] & mask).bit_count(), -v)
            if best_key is None or key > best_key:
                best_v, best_key = v, key
        return best_v

    def down(depth: int, max_used: int) -> bool:
        counter.spend()
        v = pick()
        if v is None:
            return True
        if len(nb_colors[v]) >= k:
            return False
        limit = min(max_used + 1, k - 1)
        for c in range(limit + 1):
            if c in nb_colors[v]:
                continue
            colors[v] = c
            touched = []
            for u in bits(adj[v] & mask):
                if u in nb_colors and c not in nb_colors[u]:
                    nb_colors[u].add(c)
                    touched.append(u)
            if down(depth + 1, max(max_used, c)):
                return True
            del colors[v]
            for u in touched:
                nb_colors[u].discard(c)
        return False

    return down(0, -1)


def _lex_coloring(adj: Tuple[int, ...], mask: int, k: int, counter: _Counter) -> Coloring:
    """Lexicographically least canonical proper coloring with exactly k colors.

    Vertices in ascending order; a color may exceed the current maximum by at
    most one, so color vectors are enumerated in canonical lexicographic order
    and the first completion is the least.
    """
    verts = list(bits(mask))
    assignment: Dict[int, int] = {}

    def down(idx: int, max_used: int) -> bool:
        counter.spend()
        if idx == len(verts):
            return max_used + 1 == k
        v = verts[idx]
        # cheap completion bound: remaining vertices must be able to reach k colors
        if max_used + 1 + (len(verts) - idx) < k:
            return False
        forbidden = set()
        for u in bits(adj[v] & mask):
            if u in assignment:
                forbidden.add(assignment[u])
        for c in range(min(max_used + 1, k - 1) + 1):
            if c in forbidden:
                continue
            assignment[v] = c
            if down(idx + 1, max(max_used, c)):
                return True
            del assignment[v]
        return False

    if not down(0, -1):
        raise InputError("no coloring with the requested palette (internal inconsistency)")
    return Coloring(tuple(sorted(assignment.items())), k)


def chi_mask(g: Graph, mask: int, budget: Optional[int] = None) -> int:
    """Exact chromatic number of the subset ``mask`` (count only)."""
    lo, hi = _CACHE.chi_bounds(g, mask)
    if lo == hi:
        return lo
    counter = _Counter(budget if budget is not None else default_budget())
    clique_lo = omega_mask(g, mask)
    greedy_hi, _ = _dsatur(g.adj, mask)
    lo, hi = max(lo, clique_lo), min(hi, greedy_hi)
    while lo < hi:
        if _colorable(g.adj, mask, lo, counter):
            hi = lo
        else:
            lo += 1
        _CACHE.note_chi_bounds(g, mask, lo, hi)
    _CACHE.note_chi_bounds(g, mask, lo, lo)
    return lo


def chi(
    g: Graph, vertices: Optional[Iterable[int]] = None, budget: Optional[int] = None
) -> Tuple[int, Coloring]:
    """Exact chromatic number of g[vertices] plus the least optimal coloring."""
    mask = _normalize(g, vertices)
    k = chi_mask(g, mask, budget)
    cached = _CACHE.coloring(g, mask)
    if cached is not None:
        return k, cached
    counter = _Counter(budget if budget is not None else default_budget())
    coloring = _lex_coloring(g.adj, mask, k, counter) if mask else Coloring((), 0)
    _CACHE.note_coloring(g, mask, coloring)
    return k, coloring


def chi_at_most(
    g: Graph, vertices_or_mask, t: int, budget: Optional[int] = None
) -> bool:
    """Exact decision chi(g[vertices]) <= t, short-circuiting via cheap bounds."""
    mask = (
        vertices_or_mask
        if isinstance(vertices_or_mask, int)
        else mask_of(vertices_or_mask, g.n)
    )
    if t < 0:
        return False
    lo, hi = _CACHE.chi_bounds(g, mask)
    if hi <= t:
        return True
    if lo > t:
        return False
    if mask.bit_count() <= t:
        _CACHE.note_chi_bounds(g, mask, lo, mask.bit_count())
        return True
    greedy_hi, _ = _dsatur(g.adj, mask)
    _CACHE.note_chi_bounds(g, mask, lo, greedy_hi)
    if greedy_hi <= t:
        return True
    clique_lo = omega_mask(g, mask)
    if clique_lo > t:
        return False
    counter = _Counter(budget if budget is not None else default_budget())
    ok = _colorable(g.adj, mask, t, counter)
    if ok:
        _CACHE.note_chi_bounds(g, mask, 0, t)
    else:
        _CACHE.note_chi_bounds(g, mask, t + 1, greedy_hi)
    return ok


def chi_exceeds(g: Graph, vertices_or_mask, t: int, budget: Optional[int] = None) -> bool:
    return not chi_at_most(g, vertices_or_mask, t, budget)


def chi_of_neighborhood_max(g: Graph, budget: Optional[int] = None) -> int:
    """Minimal x with chi(N(v)) <= x for every vertex; 0 on edgeless graphs."""
    best = 0
    for v in range(g.n):
        if g.adj[v]:
            best = max(best, chi_mask(g, g.adj[v], budget))
    return best


# ------------------------------------------------------- full subset tables

_TABLE_CAP = 14


def omega_table(g: Graph) -> List[int]:
    """omega for every vertex subset (index = bitmask); n <= 14 only."""
    if g.n > _TABLE_CAP:
        raise InputError(f"subset tables are capped at {_TABLE_CAP} vertices")
    size = 1 << g.n
    table = [0] * size
    for s in range(1, size):
        low = s & -s
        v = low.bit_length() - 1
        rest = s ^ low
        table[s] = max(table[rest], 1 + table[rest & g.adj[v]])
    return table


def chi_table(g: Graph) -> List[int]:
    """Chromatic number for every vertex subset (index = bitmask); n <= 14 only.

    Dynamic program over stable sets: some color class contains the least
    vertex of the subset, so only stable subsets containing it are tried.
    """
    if g.n > _TABLE_CAP:
        raise InputError(f"subset tables are capped at {_TABLE_CAP} vertices")
    size = 1 << g.n
    stable = bytearray(size)
    stable[0] = 1
    for s in range(1, size):
        low = s & -s
        v = low.bit_length() - 1
        rest = s ^ low
        stable[s] = 1 if stable[rest] and not (g.adj[v] & rest) else 0
    table = [0] * size
    big = g.n + 1
    for s in range(1, size):
        low = s & -s
        rest = s ^ low
        best = big
        sub = rest
        while True:
            cls = sub | low
            if stable[cls]:
                candidate = table[s ^ cls] + 1
                if candidate < best:
                    best = candidate
            if sub == 0:
                break
            sub = (sub - 1) & rest
        table[s] = best
    return table
