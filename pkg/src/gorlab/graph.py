"""Simple undirected graphs, file formats, and vertex connectivity.

Vertices are ``0 .. n-1``.  An ordering is a tuple listing the vertices by
position; position ``p`` (0-based) holds the vertex written sigma_{p+1} in
one-based notation.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence


class GraphFormatError(ValueError):
    """Input text does not describe a valid graph."""


@dataclass(frozen=True)
class Graph:
    n: int
    edges: frozenset = frozenset()
    adj: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.n < 1:
            raise GraphFormatError("graph needs at least one vertex")
        canon = set()
        for e in self.edges:
            u, v = tuple(e)
            if u == v:
                raise GraphFormatError(f"self-loop at vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise GraphFormatError(f"edge ({u}, {v}) outside 0..{self.n - 1}")
            canon.add((min(u, v), max(u, v)))
        nbrs = [set() for _ in range(self.n)]
        for u, v in canon:
            nbrs[u].add(v)
            nbrs[v].add(u)
        object.__setattr__(self, "edges", frozenset(canon))
        object.__setattr__(self, "adj", tuple(frozenset(s) for s in nbrs))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        edges = list(edges)
        seen = set()
        for u, v in edges:
            key = (min(u, v), max(u, v))
            if key in seen:
                raise GraphFormatError(f"duplicate edge {key}")
            seen.add(key)
        return cls(n, frozenset(edges))

    def adjacent(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def degree(self, u: int) -> int:
        return len(self.adj[u])

    def is_complete(self) -> bool:
        return len(self.edges) == self.n * (self.n - 1) // 2

    def non_edges(self):
        for u in range(self.n):
            for v in range(u + 1, self.n):
                if v not in self.adj[u]:
                    yield (u, v)

    def is_connected(self, removed: Iterable[int] = ()) -> bool:
        removed = set(removed)
        alive = [v for v in range(self.n) if v not in removed]
        if len(alive) <= 1:
            return True
        seen = {alive[0]}
        queue = deque([alive[0]])
        while queue:
            u = queue.popleft()
            for w in self.adj[u]:
                if w not in seen and w not in removed:
                    seen.add(w)
                    queue.append(w)
        return len(seen) == len(alive)


# -- orderings ---------------------------------------------------------------

def check_ordering(g: Graph, order: Sequence[int]) -> tuple[int, ...]:
    order = tuple(order)
    if sorted(order) != list(range(g.n)):
        raise ValueError(f"ordering {order} is not a permutation of 0..{g.n - 1}")
    return order


def identity_ordering(n: int) -> tuple[int, ...]:
    return tuple(range(n))


def preceding_non_neighbors(g: Graph, order: Sequence[int], p: int) -> list[int]:
    """Vertices before position ``p`` that are not adjacent to ``order[p]``, in position order."""
    if not 0 <= p < g.n:
        raise IndexError(f"position {p} outside 0..{g.n - 1}")
    v = order[p]
    nbrs = g.adj[v]
    return [u for u in order[:p] if u not in nbrs]


def path_within_prefix(g: Graph, order: Sequence[int], p: int) -> Optional[list[int]]:
    """Shortest path from ``order[p]`` to ``order[p+1]`` with interior at positions ``< p``.

    Breadth-first search, neighbors visited in increasing vertex index, so
    the path is deterministic.  ``None`` when no such path exists.
    """
    if not 0 <= p < g.n - 1:
        raise IndexError(f"position {p} outside 0..{g.n - 2}")
    source, target = order[p], order[p + 1]
    allowed = set(order[:p])
    parent = {source: None}
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for w in sorted(g.adj[u]):
            if w in parent:
                continue
            if w == target:
                path = [w, u]
                while parent[path[-1]] is not None:
                    path.append(parent[path[-1]])
                return path[::-1]
            if w in allowed:
                parent[w] = u
                queue.append(w)
    return None


# -- connectivity ------------------------------------------------------------

@dataclass(frozen=True)
class ConnectivityCertificate:
    """Vertex connectivity with a witness.

    ``cut`` is a minimum vertex cut, or ``None`` for a complete graph (which
    has no cut set and connectivity ``n - 1`` by convention).
    """

    kappa: int
    cut: Optional[frozenset]

    @property
    def complete(self) -> bool:
        return self.cut is None

    def witness_label(self) -> str:
        return "complete graph" if self.cut is None else "cut " + _fmt_set(self.cut)


def _fmt_set(s):
    return "{" + ",".join(str(x) for x in sorted(s)) + "}"


def _local_cut(g: Graph, s: int, t: int, bound: Optional[int] = None):
    """Minimum s-t vertex separator for non-adjacent s, t via unit-capacity max-flow.

    Vertex x splits into x_in = 2x and x_out = 2x+1 with capacity 1 on the
    internal arc (s and t uncapacitated); each edge uv gives arcs u_out->v_in
    and v_out->u_in.  Stops early once the flow exceeds ``bound``.
    """
    big = g.n + 1
    cap = {}
    out = [[] for _ in range(2 * g.n)]

    def arc(a, b, c):
        if (a, b) not in cap:
            out[a].append(b)
            out[b].append(a)
            cap.setdefault((b, a), 0)
        cap[(a, b)] = cap.get((a, b), 0) + c

    for x in range(g.n):
        arc(2 * x, 2 * x + 1, big if x in (s, t) else 1)
    for u, v in g.edges:
        arc(2 * u + 1, 2 * v, big)
        arc(2 * v + 1, 2 * u, big)

    src, snk = 2 * s + 1, 2 * t
    flow = 0
    while bound is None or flow <= bound:
        parent = {src: None}
        queue = deque([src])
        while queue and snk not in parent:
            a = queue.popleft()
            for b in out[a]:
                if b not in parent and cap[(a, b)] > 0:
                    parent[b] = a
                    queue.append(b)
        if snk not in parent:
            break
        b = snk
        while parent[b] is not None:
            a = parent[b]
            cap[(a, b)] -= 1
            cap[(b, a)] += 1
            b = a
        flow += 1
    # Residual reachability from the source marks the source side of a min cut.
    reach = {src}
    queue = deque([src])
    while queue:
        a = queue.popleft()
        for b in out[a]:
            if b not in reach and cap[(a, b)] > 0:
                reach.add(b)
                queue.append(b)
    cut = frozenset(x for x in range(g.n) if 2 * x in reach and 2 * x + 1 not in reach)
    return flow, cut


def vertex_connectivity(g: Graph) -> ConnectivityCertificate:
    """Vertex connectivity with a minimum cut (Esfahanian-Hakimi reduction to local flows).

    Fix a minimum-degree vertex ``v``.  A minimum cut either misses ``v`` and
    separates it from some non-neighbor, or contains ``v`` and separates two
    non-adjacent neighbors of ``v``.  Disconnected graphs get kappa 0 and the
    empty cut.
    """
    n = g.n
    if g.is_complete():
        return ConnectivityCertificate(n - 1, None)
    if not g.is_connected():
        return ConnectivityCertificate(0, frozenset())
    v = min(range(n), key=lambda x: (g.degree(x), x))
    best_k, best_cut = None, None

    def consider(s, t):
        nonlocal best_k, best_cut
        k, cut = _local_cut(g, s, t, best_k)
        if best_k is None or k < best_k:
            best_k, best_cut = k, cut

    for t in range(n):
        if t != v and not g.adjacent(v, t):
            consider(v, t)
    nbrs = sorted(g.adj[v])
    for a_idx, x in enumerate(nbrs):
        for y in nbrs[a_idx + 1:]:
            if not g.adjacent(x, y):
                consider(x, y)
    assert best_cut is not None and len(best_cut) == best_k
    return ConnectivityCertificate(best_k, best_cut)


def is_k_connected(g: Graph, k: int) -> tuple[bool, Optional[frozenset]]:
    """``(True, None)`` when kappa >= k, else ``(False, cut)`` with ``|cut| < k``.

    A complete graph asked for ``k > n - 1`` has no cut set; the answer is
    then ``(False, None)``.
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    cert = vertex_connectivity(g)
    if cert.kappa >= k:
        return True, None
    return False, cert.cut


# -- formats -----------------------------------------------------------------

EDGE_LIST = "edge-list"
GRAPH6 = "graph6"
FORMATS = (EDGE_LIST, GRAPH6)


def parse_graph(text: str, fmt: str = EDGE_LIST) -> Graph:
    if fmt == EDGE_LIST:
        return _parse_edge_list(text)
    if fmt == GRAPH6:
        return _parse_graph6(text)
    raise GraphFormatError(f"unknown format {fmt!r}")


def serialize_graph(g: Graph, fmt: str = EDGE_LIST) -> str:
    if fmt == EDGE_LIST:
        lines = [str(g.n)] + [f"{u} {v}" for u, v in sorted(g.edges)]
        return "\n".join(lines) + "\n"
    if fmt == GRAPH6:
        return to_graph6(g)
    raise GraphFormatError(f"unknown format {fmt!r}")


def _parse_edge_list(text):
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise GraphFormatError("empty edge list")
    try:
        n = int(lines[0])
    except ValueError:
        raise GraphFormatError(f"first line must be the vertex count, got {lines[0]!r}") from None
    if n < 1:
        raise GraphFormatError("vertex count must be at least 1")
    edges = []
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 2:
            raise GraphFormatError(f"malformed edge line {ln!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphFormatError(f"malformed edge line {ln!r}") from None
        if u < 0 or v < 0 or u >= n or v >= n:
            raise GraphFormatError(f"vertex index out of range in {ln!r}")
        if u == v:
            raise GraphFormatError(f"self-loop in {ln!r}")
        edges.append((u, v))
    return Graph.from_edges(n, edges)


def to_graph6(g: Graph) -> str:
    n = g.n
    if n < 63:
        head = [n + 63]
    elif n < 258048:
        head = [126, (n >> 12) + 63, ((n >> 6) & 63) + 63, (n & 63) + 63]
    else:
        raise GraphFormatError("graph6 encoder supports n < 258048")
    bits = [1 if g.adjacent(i, j) else 0 for j in range(1, n) for i in range(j)]
    bits += [0] * (-len(bits) % 6)
    body = []
    for k in range(0, len(bits), 6):
        val = 0
        for b in bits[k:k + 6]:
            val = (val << 1) | b
        body.append(val + 63)
    return bytes(head + body).decode("ascii")


def _parse_graph6(text):
    s = text.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<"):]
    if not s:
        raise GraphFormatError("empty graph6 string")
    data = [ord(c) - 63 for c in s]
    if any(x < 0 or x > 63 for x in data):
        raise GraphFormatError("graph6 characters must lie in 63..126")
    if data[0] == 63:
        if len(data) < 4 or data[1] == 63:
            raise GraphFormatError("graph6 sizes beyond 258047 are not supported")
        n = (data[1] << 12) | (data[2] << 6) | data[3]
        data = data[4:]
    else:
        n = data[0]
        data = data[1:]
    if n < 1:
        raise GraphFormatError("vertex count must be at least 1")
    need = n * (n - 1) // 2
    if len(data) != -(-need // 6):
        raise GraphFormatError(f"graph6 body has {len(data)} bytes, expected {-(-need // 6)}")
    bits = [(x >> (5 - k)) & 1 for x in data for k in range(6)]
    if any(bits[need:]):
        raise GraphFormatError("nonzero graph6 padding bits")
    edges = []
    idx = 0
    for j in range(1, n):
        for i in range(j):
            if bits[idx]:
                edges.append((i, j))
            idx += 1
    return Graph.from_edges(n, edges)


def detect_format(path: str) -> str:
    return GRAPH6 if path.endswith((".g6", ".graph6")) else EDGE_LIST
