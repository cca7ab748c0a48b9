"""Decide OR / general-position / GOR status and certify impossibility."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from . import linalg
from .construct import Representation
from .graph import Graph, vertex_connectivity
from .linalg import EXACT, FLOAT


@dataclass
class VerificationReport:
    mode: str
    eps: Optional[float]
    or_violations: list = field(default_factory=list)  # (u, v, inner product)
    gp_failure: Optional[tuple] = None
    min_margin: Optional[float] = None  # float mode: smallest normalized singular value seen

    @property
    def or_pass(self) -> bool:
        return not self.or_violations

    @property
    def gp_pass(self) -> bool:
        return self.gp_failure is None

    @property
    def gor(self) -> bool:
        return self.or_pass and self.gp_pass

    def to_dict(self) -> dict:
        return {
            "mode": self.mode,
            "eps": self.eps,
            "or": "pass" if self.or_pass else [[u, v, _fmt(x)] for u, v, x in self.or_violations],
            "gp": "pass" if self.gp_pass else list(self.gp_failure),
            "gor": self.gor,
            "min_margin": self.min_margin,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=1)


def _fmt(x):
    return str(x) if isinstance(x, (int, Fraction)) else float(x)


def _check_size(g, rep):
    if rep.n != g.n:
        raise ValueError(f"representation has {rep.n} vectors, graph has {g.n} vertices")


def verify_or(g: Graph, rep: Representation, eps: float = linalg.DEFAULT_EPS) -> list:
    """List every non-adjacent pair whose vectors are not orthogonal.

    Exact mode requires inner product exactly 0; float mode accepts
    ``|<u, v>| <= eps * |u| * |v|`` (so zero vectors always pass).
    """
    _check_size(g, rep)
    vecs = rep.vectors
    bad = []
    if rep.mode == EXACT:
        for u, v in g.non_edges():
            ip = linalg.dot(vecs[u], vecs[v])
            if ip != 0:
                bad.append((u, v, ip))
        return bad
    arr = np.asarray(vecs, dtype=float)
    norms = np.linalg.norm(arr, axis=1)
    for u, v in g.non_edges():
        ip = float(arr[u] @ arr[v])
        if abs(ip) > eps * norms[u] * norms[v]:
            bad.append((u, v, ip))
    return bad


def verify_gor(g: Graph, rep: Representation, D: Optional[int] = None, eps: float = linalg.DEFAULT_EPS) -> VerificationReport:
    D = rep.D if D is None else D
    if D != rep.D:
        raise ValueError(f"representation lives in dimension {rep.D}, not {D}")
    _check_size(g, rep)
    if g.n < D:
        raise linalg.DimensionError(f"need n >= D, got n={g.n}, D={D}")
    report = VerificationReport(rep.mode, eps if rep.mode == FLOAT else None)
    report.or_violations = verify_or(g, rep, eps)
    report.gp_failure = linalg.general_position(list(rep.vectors), D, rep.mode, eps)
    if rep.mode == FLOAT and report.gp_pass:
        report.min_margin = gp_margin(rep)
    return report


def gp_margin(rep: Representation) -> float:
    """Smallest relative singular value over all D-subsets of unit vectors (float mode)."""
    from itertools import combinations

    unit = [linalg._unit(v) for v in rep.vectors]
    best = float("inf")
    for subset in combinations(range(rep.n), rep.D):
        s = np.linalg.svd(np.array([unit[i] for i in subset]), compute_uv=False)
        best = min(best, float(s[-1] / s[0]) if s[0] > 0 else 0.0)
    return best


def verify_gp_subset(rep: Representation, subset: Sequence[int], eps: float = linalg.DEFAULT_EPS) -> bool:
    """Membership in GP(I): the vectors of the D vertices in ``subset`` are independent."""
    subset = list(subset)
    if len(set(subset)) != rep.D or len(subset) != rep.D:
        raise ValueError(f"subset must hold exactly D={rep.D} distinct vertices, got {subset}")
    return linalg.subset_independent([rep.vectors[i] for i in subset], rep.mode, eps)


def certify_no_gor(g: Graph, D: int) -> Optional[frozenset]:
    """A vertex cut of size ``< n - D`` when one exists, else ``None``.

    Such a cut rules out any GOR of ``g`` in dimension ``D``.
    """
    if not 1 <= D <= g.n:
        raise ValueError(f"need 1 <= D <= n, got D={D}, n={g.n}")
    cert = vertex_connectivity(g)
    if cert.kappa < g.n - D:
        return cert.cut
    return None
