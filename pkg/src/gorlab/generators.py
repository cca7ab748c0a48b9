"""Named graph families and seeded random graphs."""

from __future__ import annotations

from itertools import combinations

import numpy as np

from .graph import Graph


def cycle(n: int) -> Graph:
    if n < 3:
        raise ValueError("cycle needs n >= 3")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def complete(n: int) -> Graph:
    if n < 1:
        raise ValueError("complete graph needs n >= 1")
    return Graph.from_edges(n, combinations(range(n), 2))


def complete_minus_matching(n: int) -> Graph:
    """K_n without the matching {0,1}, {2,3}, ... (perfect when n is even)."""
    if n < 2:
        raise ValueError("complete-minus-matching needs n >= 2")
    return Graph.from_edges(n, [(u, v) for u, v in combinations(range(n), 2) if not (u % 2 == 0 and v == u + 1)])


def star(n: int) -> Graph:
    """Center 0 joined to leaves 1..n-1."""
    if n < 2:
        raise ValueError("star needs n >= 2")
    return Graph.from_edges(n, [(0, i) for i in range(1, n)])


def empty(n: int) -> Graph:
    return Graph(n, frozenset())


def path(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edges(10, outer + spokes + inner)


def gnp(n: int, p: float, seed=0) -> Graph:
    if n < 1:
        raise ValueError("gnp needs n >= 1")
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"edge probability {p} outside [0, 1]")
    rng = np.random.default_rng(list(seed) if isinstance(seed, tuple) else seed)
    coins = rng.random(n * (n - 1) // 2)
    pairs = combinations(range(n), 2)
    return Graph.from_edges(n, [e for e, c in zip(pairs, coins) if c < p])


def generate_graph(model: str, seed=0) -> Graph:
    """Build a graph from a spec such as ``cycle:5``, ``gnp:10:0.5``, or ``petersen``."""
    name, *args = model.split(":")
    try:
        if name == "petersen" and not args:
            return petersen()
        if name == "gnp" and len(args) == 2:
            return gnp(int(args[0]), float(args[1]), seed)
        makers = {
            "cycle": cycle,
            "complete": complete,
            "complete-minus-matching": complete_minus_matching,
            "cmm": complete_minus_matching,
            "star": star,
            "empty": empty,
            "path": path,
        }
        if name in makers and len(args) == 1:
            return makers[name](int(args[0]))
    except ValueError as exc:
        raise ValueError(f"bad graph model {model!r}: {exc}") from None
    raise ValueError(f"unknown graph model {model!r}")
