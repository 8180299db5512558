"""graph6 and DIMACS edge-list encodings.

graph6 follows the public format: a size header (1, 4 or 8 bytes), then the
upper triangle of the adjacency matrix in column order, packed big-endian into
6-bit groups offset by 63.  Emit produces the canonical (shortest-header,
no-prefix) encoding so that emit(parse(s)) == s on canonical inputs.

DIMACS is the classic ``p edge N M`` header plus 1-indexed ``e u v`` lines.
"""

from __future__ import annotations

from typing import List, Tuple

from .errors import ParseError, InputError
from .graphs import Graph, MAX_VERTICES

_G6_HEADER = ">>graph6<<"


def _g6_triangle_order(n: int):
    for j in range(1, n):
        for i in range(j):
            yield i, j


def parse_g6(text: str) -> Graph:
    """Decode one graph6 string (optional ``>>graph6<<`` prefix tolerated)."""
    s = text.strip()
    base = 0
    if s.startswith(_G6_HEADER):
        base = len(_G6_HEADER)
        s = s[len(_G6_HEADER):]
    if not s:
        raise ParseError("empty graph6 string", base)
    data = []
    for i, ch in enumerate(s):
        code = ord(ch)
        if not 63 <= code <= 126:
            raise ParseError(f"invalid graph6 byte {code!r}", base + i)
        data.append(code - 63)
    # size header
    if data[0] < 63:
        n = data[0]
        pos = 1
    elif len(data) >= 2 and data[1] < 63:
        if len(data) < 4:
            raise ParseError("truncated 4-byte graph6 size header", base + len(s))
        n = (data[1] << 12) | (data[2] << 6) | data[3]
        pos = 4
    else:
        if len(data) < 8:
            raise ParseError("truncated 8-byte graph6 size header", base + len(s))
        n = 0
        for k in range(2, 8):
            n = (n << 6) | data[k]
        pos = 8
    if n > MAX_VERTICES:
        raise ParseError(f"graph6 vertex count {n} exceeds supported maximum", base)
    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    if len(data) - pos != need:
        raise ParseError(
            f"graph6 body has {len(data) - pos} groups, expected {need} for n={n}",
            base + pos,
        )
    rows = [0] * n
    bit = 0
    for i, j in _g6_triangle_order(n):
        group = data[pos + bit // 6]
        if (group >> (5 - bit % 6)) & 1:
            rows[i] |= 1 << j
            rows[j] |= 1 << i
        bit += 1
    # trailing padding bits must be zero
    while bit < need * 6:
        group = data[pos + bit // 6]
        if (group >> (5 - bit % 6)) & 1:
            raise ParseError("nonzero padding bits in graph6 body", base + pos + bit // 6)
        bit += 1
    return Graph(n, rows)


def emit_g6(g: Graph) -> str:
    """Canonical graph6 encoding of ``g``."""
    n = g.n
    if n <= 62:
        head = [n]
    elif n <= 258047:
        head = [63, (n >> 12) & 63, (n >> 6) & 63, n & 63]
    else:
        raise InputError("graph too large for supported graph6 emitter")
    nbits = n * (n - 1) // 2
    groups = [0] * ((nbits + 5) // 6)
    bit = 0
    for i, j in _g6_triangle_order(n):
        if (g.adj[i] >> j) & 1:
            groups[bit // 6] |= 1 << (5 - bit % 6)
        bit += 1
    return "".join(chr(c + 63) for c in head + groups)


def parse_dimacs(text: str) -> Graph:
    """Decode a DIMACS edge-list document."""
    n = -1
    m_declared = -1
    edges: List[Tuple[int, int]] = []
    offset = 0
    for raw in text.splitlines(keepends=True):
        line = raw.strip()
        if not line or line.startswith("c"):
            offset += len(raw)
            continue
        fields = line.split()
        if fields[0] == "p":
            if n >= 0:
                raise ParseError("duplicate DIMACS problem line", offset)
            if len(fields) != 4 or fields[1] not in ("edge", "col"):
                raise ParseError("malformed DIMACS problem line", offset)
            try:
                n, m_declared = int(fields[2]), int(fields[3])
            except ValueError:
                raise ParseError("non-integer sizes in DIMACS problem line", offset)
            if n < 0 or n > MAX_VERTICES:
                raise ParseError(f"DIMACS vertex count {n} out of supported range", offset)
        elif fields[0] == "e":
            if n < 0:
                raise ParseError("DIMACS edge before problem line", offset)
            if len(fields) != 3:
                raise ParseError("malformed DIMACS edge line", offset)
            try:
                u, v = int(fields[1]), int(fields[2])
            except ValueError:
                raise ParseError("non-integer endpoint in DIMACS edge line", offset)
            if not (1 <= u <= n and 1 <= v <= n):
                raise ParseError(f"edge endpoint out of range 1..{n}", offset)
            if u == v:
                raise ParseError("self-loop in DIMACS input", offset)
            edges.append((u - 1, v - 1))
        else:
            raise ParseError(f"unrecognized DIMACS line kind {fields[0]!r}", offset)
        offset += len(raw)
    if n < 0:
        raise ParseError("missing DIMACS problem line", 0)
    if m_declared != len(edges):
        raise ParseError(
            f"DIMACS header declares {m_declared} edges but {len(edges)} present", 0
        )
    return Graph.from_edges(n, edges)


def emit_dimacs(g: Graph) -> str:
    lines = [f"p edge {g.n} {g.edge_count}"]
    lines.extend(f"e {u + 1} {v + 1}" for u, v in g.edges())
    return "\n".join(lines) + "\n"
