"""Immutable simple undirected graphs with bitset adjacency, plus graph6 I/O.

Vertices are integers 0..n-1.  Each vertex's neighbourhood is stored as a
Python int used as a bitmask, which makes the set operations in the search
hot loops (intersection, popcount, component spreading) cheap.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator


class GraphError(ValueError):
    pass


class Graph6Error(GraphError):
    """Malformed graph6 input; carries the offending byte offset."""

    def __init__(self, message: str, offset: int | None = None):
        if offset is not None:
            message = f"{message} (byte offset {offset})"
        super().__init__(message)
        self.offset = offset


GRAPH6_HEADER = b">>graph6<<"
GRAPH6_MAX_N = 258047  # largest order expressible in the 4-byte length form


def bits(mask: int) -> Iterator[int]:
    """Iterate the set bit positions of ``mask`` in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph: no loops, no parallel edges.

    ``adj[v]`` is the neighbourhood of ``v`` as a bitmask.  Instances are
    immutable and safe to share between concurrent workers.
    """

    n: int
    adj: tuple[int, ...]

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        if n < 0:
            raise GraphError("vertex count must be non-negative")
        adj = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u},{v}) out of range for n={n}")
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(n, tuple(adj))

    @property
    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in bits(self.adj[u]) if u < v]

    @property
    def edge_count(self) -> int:
        return sum(a.bit_count() for a in self.adj) // 2

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def degrees(self) -> tuple[int, ...]:
        return tuple(a.bit_count() for a in self.adj)

    def neighbors(self, v: int) -> Iterator[int]:
        return bits(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return f"Graph(n={self.n}, m={self.edge_count})"


def _spread(g: Graph, seed: int, allowed: int) -> int:
    """Bitmask of the vertices reachable from ``seed`` inside ``allowed``."""
    comp = seed & allowed
    frontier = comp
    adj = g.adj
    while frontier:
        grow = 0
        for v in bits(frontier):
            grow |= adj[v]
        frontier = grow & allowed & ~comp
        comp |= frontier
    return comp


def is_connected(g: Graph) -> bool:
    if g.n == 0:
        return True
    return _spread(g, 1, g.full_mask()) == g.full_mask()


def connected_components(g: Graph, allowed: int | None = None) -> list[int]:
    """Components of the subgraph induced on ``allowed`` (default: all), as masks."""
    remaining = g.full_mask() if allowed is None else allowed
    comps = []
    while remaining:
        seed = remaining & -remaining
        comp = _spread(g, seed, remaining)
        comps.append(comp)
        remaining &= ~comp
    return comps


def degree_profile(g: Graph) -> tuple[tuple[int, ...], bool, frozenset[int]]:
    """Degree sequence, cubic flag, and the set of degree-2 vertices."""
    degs = g.degrees()
    is_cubic = g.n > 0 and all(d == 3 for d in degs)
    deg2 = frozenset(v for v, d in enumerate(degs) if d == 2)
    return degs, is_cubic, deg2


def is_cubic(g: Graph) -> bool:
    return g.n > 0 and all(a.bit_count() == 3 for a in g.adj)


def is_bipartite(g: Graph) -> bool:
    color = [-1] * g.n
    for s in range(g.n):
        if color[s] != -1:
            continue
        color[s] = 0
        stack = [s]
        while stack:
            u = stack.pop()
            for w in bits(g.adj[u]):
                if color[w] == -1:
                    color[w] = color[u] ^ 1
                    stack.append(w)
                elif color[w] == color[u]:
                    return False
    return True


def components_after_deletion(g: Graph, deleted: Iterable[int]) -> int:
    dmask = mask_of(deleted)
    if dmask & ~g.full_mask():
        raise GraphError("deletion set out of vertex range")
    return len(connected_components(g, g.full_mask() & ~dmask))


def _is_complete(g: Graph) -> bool:
    return all(g.adj[v] == g.full_mask() ^ (1 << v) for v in range(g.n))


def vertex_connectivity_capped(g: Graph, cap: int) -> int:
    """min(vertex connectivity, cap) for cap in {1, 2, 3}; disconnected -> 0.

    Deletion sets are enumerated directly: all workloads here are small
    graphs and tiny caps, where this beats setting up max-flow instances.
    """
    if cap not in (1, 2, 3):
        raise GraphError(f"cap must be 1, 2 or 3, got {cap}")
    if not is_connected(g):
        return 0
    if g.n <= 1:
        return 0
    if _is_complete(g):
        return min(g.n - 1, cap)
    full = g.full_mask()
    for k in range(1, cap):
        if g.n - k < 2:
            break
        for cut in combinations(range(g.n), k):
            remaining = full & ~mask_of(cut)
            seed = remaining & -remaining
            if _spread(g, seed, remaining) != remaining:
                return k
    return cap


def induced_subgraph(g: Graph, vertices: Iterable[int]) -> tuple[Graph, list[int]]:
    """Subgraph induced on ``vertices``, relabelled 0..k-1 in ascending order.

    Returns the subgraph and the list mapping new index -> original vertex.
    """
    vs = sorted(set(vertices))
    if not vs:
        raise GraphError("induced subgraph of empty vertex set")
    if vs[0] < 0 or vs[-1] >= g.n:
        raise GraphError("vertex set out of range")
    index = {v: i for i, v in enumerate(vs)}
    edges = [
        (index[u], index[v])
        for u in vs
        for v in bits(g.adj[u])
        if u < v and v in index
    ]
    return Graph.from_edges(len(vs), edges), vs


def read_adjacency_file(path) -> Graph:
    """Load the plain-text adjacency format: header "n m", then "u v" lines."""
    with open(path) as f:
        header = f.readline().split()
        if len(header) != 2:
            raise GraphError(f"{path}: malformed header line")
        n, m = int(header[0]), int(header[1])
        edges = []
        for line in f:
            line = line.strip()
            if not line:
                continue
            u, v = map(int, line.split())
            edges.append((u, v))
    if len(edges) != m:
        raise GraphError(f"{path}: header says {m} edges, file has {len(edges)}")
    return Graph.from_edges(n, edges)


# --- graph6 ---------------------------------------------------------------


def _g6_n_and_body(data: bytes) -> tuple[int, bytes, int]:
    """Split a graph6 line into (n, bit bytes, offset of first bit byte)."""
    if not data:
        raise Graph6Error("empty graph6 string", 0)
    first = data[0] - 63
    if first < 0 or first > 63:
        raise Graph6Error(f"character {data[0]!r} out of graph6 range", 0)
    if first != 63:
        return first, data[1:], 1
    if len(data) >= 2 and data[1] == 126:
        raise Graph6Error("8-byte graph6 order form is not supported", 1)
    if len(data) < 4:
        raise Graph6Error("truncated extended graph6 length prefix", len(data))
    n = 0
    for i in (1, 2, 3):
        c = data[i] - 63
        if c < 0 or c > 63:
            raise Graph6Error(f"character {data[i]!r} out of graph6 range", i)
        n = n << 6 | c
    return n, data[4:], 4


def parse_graph6(text: bytes | str) -> Graph:
    """Parse a single graph6 line (optional '>>graph6<<' header tolerated)."""
    data = text.encode("ascii") if isinstance(text, str) else bytes(text)
    data = data.strip()
    if data.startswith(GRAPH6_HEADER):
        data = data[len(GRAPH6_HEADER):]
    n, body, base = _g6_n_and_body(data)
    if n > GRAPH6_MAX_N:
        raise Graph6Error(f"order {n} exceeds supported graph6 range", 0)
    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    if len(body) != need:
        raise Graph6Error(
            f"expected {need} body bytes for n={n}, got {len(body)}", base + len(body)
        )
    adj = [0] * n
    k = 0  # bit cursor over the column-major upper triangle
    for i, byte in enumerate(body):
        c = byte - 63
        if c < 0 or c > 63:
            raise Graph6Error(f"character {byte!r} out of graph6 range", base + i)
        for shift in range(5, -1, -1):
            if c >> shift & 1:
                if k >= nbits:
                    raise Graph6Error("nonzero padding bits", base + i)
                v = _column_of(k)
                u = k - v * (v - 1) // 2
                adj[u] |= 1 << v
                adj[v] |= 1 << u
            k += 1
    return Graph(n, tuple(adj))


def _column_of(k: int) -> int:
    # Smallest v with v(v-1)/2 > k, minus 1: the column of upper-triangle bit k.
    v = int((2 * k) ** 0.5) + 2
    while v * (v - 1) // 2 > k:
        v -= 1
    return v


def write_graph6(g: Graph) -> bytes:
    """Canonical minimal-length graph6 encoding (short or 4-byte form)."""
    n = g.n
    if n > GRAPH6_MAX_N:
        raise GraphError(f"order {n} exceeds supported graph6 range")
    if n <= 62:
        head = bytes([n + 63])
    else:
        head = bytes([126, (n >> 12 & 63) + 63, (n >> 6 & 63) + 63, (n & 63) + 63])
    out = bytearray(head)
    acc = 0
    nacc = 0
    for v in range(n):
        col = g.adj[v]
        for u in range(v):
            acc = acc << 1 | (col >> u & 1)
            nacc += 1
            if nacc == 6:
                out.append(acc + 63)
                acc = 0
                nacc = 0
    if nacc:
        out.append((acc << (6 - nacc)) + 63)
    return bytes(out)


def read_graph6_lines(lines: Iterable[bytes | str]) -> Iterator[Graph]:
    """Parse a stream of graph6 lines, skipping blank lines."""
    for line in lines:
        stripped = line.strip() if isinstance(line, str) else line.strip()
        if stripped:
            yield parse_graph6(stripped)
