"""Vertex-ordering combinatorics behind the order-independence argument.

Everything here is finite and checkable: constraint signatures, the
edge-swap identity, the five-exchange rewriting that moves a transposition
of positions ``p, p+1`` into moves justified by smaller cases, and the
reduction of two orderings to an adjacent transposition.

Positions are 0-based.  The pair ``(p, p+1)`` corresponds to the one-based
pair ``(i, i+1)`` with ``i = p + 1``.  An "early" exchange touches only
positions ``<= p``.

A vertex is constrained by its preceding *non*-neighbors throughout this
module, matching the construction.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .graph import Graph, check_ordering, is_k_connected, path_within_prefix, preceding_non_neighbors

EARLY = "early-rearrangement"
INNER = "inner-IH"
EDGE = "edge-base-case"


def constraint_signature(g: Graph, order: Sequence[int]) -> dict[int, frozenset]:
    """Map each vertex to the set of its preceding non-neighbors under ``order``."""
    order = check_ordering(g, order)
    return {order[p]: frozenset(preceding_non_neighbors(g, order, p)) for p in range(g.n)}


def swap_positions(order: Sequence[int], p: int, q: int) -> tuple[int, ...]:
    out = list(order)
    out[p], out[q] = out[q], out[p]
    return tuple(out)


@dataclass(frozen=True)
class SwapCheck:
    status: str  # "invariant" | "not-an-edge" | "signature-differs"
    details: Optional[dict] = None

    def __bool__(self):
        return self.status == "invariant"


def edge_swap_invariance(g: Graph, order: Sequence[int], p: int) -> SwapCheck:
    """Swap positions ``p, p+1`` and compare constraint signatures.

    For an adjacent pair the signatures must coincide: each of the two
    vertices is a neighbor of the other, so neither constrains the other in
    either order, and no third vertex sees a different set of predecessors.
    ``signature-differs`` therefore signals a defect.
    """
    order = check_ordering(g, order)
    if not 0 <= p < g.n - 1:
        raise IndexError(f"position {p} outside 0..{g.n - 2}")
    u, v = order[p], order[p + 1]
    if not g.adjacent(u, v):
        return SwapCheck("not-an-edge")
    before = constraint_signature(g, order)
    after = constraint_signature(g, swap_positions(order, p, p + 1))
    if before != after:
        diff = {x: (sorted(before[x]), sorted(after[x])) for x in before if before[x] != after[x]}
        return SwapCheck("signature-differs", diff)
    return SwapCheck("invariant")


@dataclass(frozen=True)
class ExchangeStep:
    ordering: tuple
    tag: str
    positions: tuple  # the two positions swapped
    path_interior: Optional[int] = None  # inner-IH: interior length of the shortest prefix path

    def to_dict(self) -> dict:
        d = {"ordering": list(self.ordering), "tag": self.tag, "positions": list(self.positions)}
        if self.path_interior is not None:
            d["path_interior"] = self.path_interior
        return d


class ExchangeError(ValueError):
    """Preconditions of the exchange rewriting do not hold."""


def exchange_sequence(g: Graph, order: Sequence[int], p: int, D: int, check_connectivity: bool = True) -> list[ExchangeStep]:
    """Rewrite the transposition of positions ``p, p+1`` into justified exchanges.

    If the two vertices are adjacent the answer is a single edge step.
    Otherwise, with ``a = order[p]``, ``b = order[p+1]`` and ``c`` the first
    interior vertex of the shortest prefix path from ``a`` to ``b`` (at
    position ``q < p``), the five steps are::

        swap q, p     early     (a to q, c to p)
        swap p, p+1   inner-IH  (c, b are joined by a shorter prefix path)
        swap q, p     early     (b to q, a to p)
        swap p, p+1   edge      (a, c adjacent)
        swap q, p     early     (c back to q, b to p)

    The last ordering is ``order`` with positions ``p, p+1`` swapped.
    Every step's precondition is validated before it is emitted.
    """
    order = check_ordering(g, order)
    if p < D - 1:
        raise ExchangeError(f"position {p} is below D-1 = {D - 1}")
    if not 0 <= p < g.n - 1:
        raise ExchangeError(f"position {p} outside 0..{g.n - 2}")
    if check_connectivity:
        ok, cut = is_k_connected(g, g.n - D)
        if not ok:
            raise ExchangeError(f"graph is not {g.n - D}-connected (cut {sorted(cut or ())})")
    path = path_within_prefix(g, order, p)
    if path is None:
        raise ExchangeError(f"no path between positions {p} and {p + 1} through earlier positions")
    if len(path) == 2:
        step = ExchangeStep(swap_positions(order, p, p + 1), EDGE, (p, p + 1))
        _validate(g, order, step, p, None)
        return [step]

    interior = len(path) - 2
    c = path[1]
    q = order.index(c)
    plan = [((q, p), EARLY), ((p, p + 1), INNER), ((q, p), EARLY), ((p, p + 1), EDGE), ((q, p), EARLY)]
    steps = []
    cur = order
    for (x, y), tag in plan:
        nxt = swap_positions(cur, x, y)
        step = ExchangeStep(nxt, tag, (x, y))
        if tag == INNER:
            sub = path_within_prefix(g, cur, p)
            step = ExchangeStep(nxt, tag, (x, y), None if sub is None else len(sub) - 2)
        _validate(g, cur, step, p, interior)
        steps.append(step)
        cur = nxt
    if cur != swap_positions(order, p, p + 1):
        raise AssertionError("exchange rewriting did not end at the transposed ordering")
    return steps


def _validate(g, before, step, p, interior):
    """Raise unless ``step`` is justified from ordering ``before``."""
    x, y = step.positions
    if swap_positions(before, x, y) != step.ordering:
        raise ExchangeError(f"step {step.tag} does not swap positions {x}, {y}")
    if step.tag == EARLY:
        if not (x <= p and y <= p):
            raise ExchangeError(f"early exchange touches position beyond {p}: {x}, {y}")
    elif step.tag == EDGE:
        if (x, y) != (p, p + 1) or not g.adjacent(before[x], before[y]):
            raise ExchangeError(f"edge step at {x}, {y} does not swap adjacent vertices at p, p+1")
    elif step.tag == INNER:
        if (x, y) != (p, p + 1):
            raise ExchangeError("inner step must swap positions p, p+1")
        if step.path_interior is None or interior is None or step.path_interior >= interior:
            raise ExchangeError(
                f"inner step needs a prefix path shorter than {interior} interior vertices, got {step.path_interior}"
            )
    else:
        raise ExchangeError(f"unknown tag {step.tag!r}")


def valid_exchange_positions(g: Graph, D: int) -> range:
    """Positions ``p`` for which :func:`exchange_sequence` is defined."""
    return range(max(D - 1, 0), g.n - 1)


def reduce_to_adjacent_transposition(
    sigma: Sequence[int], tau: Sequence[int], p: int
) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Rearrange positions ``0..p`` of both orderings so they differ by swapping ``p, p+1``.

    Requires ``sigma`` and ``tau`` to agree beyond position ``p+1`` (hence to
    hold the same set in positions ``0..p+1``).  With ``x = tau[p+1]``:

    * if ``x == sigma[p+1]`` nothing is needed and the inputs come back;
    * otherwise ``x`` sits at some position ``k <= p`` of ``sigma``, and
      ``sigma'`` moves it to position ``p`` keeping the rest of
      ``sigma[0..p]`` in order, while ``tau' = sigma'`` with ``p, p+1``
      swapped.
    """
    sigma, tau = tuple(sigma), tuple(tau)
    n = len(sigma)
    if sorted(sigma) != list(range(n)) or sorted(tau) != list(range(n)):
        raise ValueError("both orderings must be permutations of 0..n-1")
    if not 0 <= p < n - 1:
        raise IndexError(f"position {p} outside 0..{n - 2}")
    if sigma[p + 2:] != tau[p + 2:]:
        raise ValueError(f"orderings disagree beyond position {p + 1}")
    x = tau[p + 1]
    if x == sigma[p + 1]:
        return sigma, tau
    head = [v for v in sigma[:p + 1] if v != x]
    sigma_p = tuple(head) + (x, sigma[p + 1]) + sigma[p + 2:]
    tau_p = tuple(head) + (sigma[p + 1], x) + sigma[p + 2:]
    return sigma_p, tau_p


def permutes_only_prefix(before: Sequence[int], after: Sequence[int], length: int) -> bool:
    """True when ``after`` differs from ``before`` only by rearranging the first ``length`` entries."""
    return tuple(before[length:]) == tuple(after[length:]) and sorted(before[:length]) == sorted(after[:length])
