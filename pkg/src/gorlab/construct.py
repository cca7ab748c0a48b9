"""Sequential constructions of orthogonal representations.

``construct_gor_plus`` runs the deterministic polynomial-map construction in
exact arithmetic: each vertex, in ordering order, receives the image of an
integer parameter vector under :func:`gorlab.linalg.complement_map` applied
to its preceding non-neighbors.  ``construct_lss_randomized`` is the
Lovasz-Saks-Schrijver process in floats: a uniform unit vector in the
orthogonal complement of the preceding non-neighbors.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from . import linalg
from .graph import Graph, check_ordering, preceding_non_neighbors
from .linalg import EXACT, FLOAT

DEFAULT_M = 2 ** 20
DEFAULT_ATTEMPTS = 3
REPRESENTATION_VERSION = 1


@dataclass(frozen=True)
class Representation:
    """One vector per vertex (indexed by vertex, not by position)."""

    D: int
    vectors: tuple
    mode: str = EXACT
    ordering: Optional[tuple] = None
    seed: Optional[object] = None
    params: Optional[tuple] = None

    def __post_init__(self):
        linalg._check_mode(self.mode)
        for v in self.vectors:
            if len(v) != self.D:
                raise linalg.DimensionError(f"vector of length {len(v)} in dimension {self.D}")

    @property
    def n(self) -> int:
        return len(self.vectors)

    def zero_vertices(self) -> list[int]:
        return [i for i, v in enumerate(self.vectors) if linalg.is_zero(v, self.mode)]

    def to_float(self) -> "Representation":
        """Round to floats after scaling each vector by its largest entry.

        Scaling is done exactly, so arbitrarily large integers survive the
        conversion; orthogonality and independence are scale-invariant.
        """
        if self.mode == FLOAT:
            return self
        out = []
        for v in self.vectors:
            big = max((abs(Fraction(x)) for x in v), default=Fraction(0))
            out.append(tuple(float(Fraction(x) / big) if big else 0.0 for x in v))
        return Representation(self.D, tuple(out), FLOAT, self.ordering, self.seed, self.params)

    def to_dict(self) -> dict:
        if self.mode == EXACT:
            vecs = [[str(Fraction(x)) for x in v] for v in self.vectors]
        else:
            vecs = [[float(x) for x in v] for v in self.vectors]
        return {
            "version": REPRESENTATION_VERSION,
            "n": self.n,
            "D": self.D,
            "mode": self.mode,
            "vectors": vecs,
            "ordering": list(self.ordering) if self.ordering is not None else None,
            "seed": _jsonable_seed(self.seed),
            "params": [list(p) for p in self.params] if self.params is not None else None,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=1)

    @classmethod
    def from_dict(cls, doc: dict) -> "Representation":
        if doc.get("version") != REPRESENTATION_VERSION:
            raise ValueError(f"unsupported representation version {doc.get('version')!r}")
        mode = doc["mode"]
        if mode == EXACT:
            vecs = tuple(tuple(_parse_exact(x) for x in v) for v in doc["vectors"])
        else:
            vecs = tuple(tuple(float(x) for x in v) for v in doc["vectors"])
        if len(vecs) != doc["n"]:
            raise ValueError(f"document declares n={doc['n']} but holds {len(vecs)} vectors")
        seed = doc.get("seed")
        return cls(
            D=int(doc["D"]),
            vectors=vecs,
            mode=mode,
            ordering=tuple(doc["ordering"]) if doc.get("ordering") is not None else None,
            seed=tuple(seed) if isinstance(seed, list) else seed,
            params=tuple(tuple(p) for p in doc["params"]) if doc.get("params") is not None else None,
        )

    @classmethod
    def from_json(cls, text: str) -> "Representation":
        return cls.from_dict(json.loads(text))


def _parse_exact(s):
    f = Fraction(s)
    return f.numerator if f.denominator == 1 else f


def _jsonable_seed(seed):
    if seed is None or isinstance(seed, int):
        return seed
    return list(seed)


@dataclass
class TraceStep:
    position: int
    vertex: int
    preceding: list
    independent: bool
    zero_output: bool
    parameter: list
    gram_det: Optional[int] = None  # exact mode
    sv_margin: Optional[float] = None  # float mode: smallest kept / largest singular value

    def to_dict(self) -> dict:
        d = {
            "position": self.position,
            "vertex": self.vertex,
            "preceding": list(self.preceding),
            "independent": self.independent,
            "zero_output": self.zero_output,
            "parameter": [_json_scalar(x) for x in self.parameter],
        }
        if self.gram_det is not None:
            d["gram_det"] = str(self.gram_det)
        if self.sv_margin is not None:
            d["sv_margin"] = self.sv_margin
        return d


def _json_scalar(x):
    if isinstance(x, (int, np.integer)):
        return int(x)
    if isinstance(x, Fraction):
        return str(x)
    return float(x)


@dataclass
class ConstructionTrace:
    mode: str
    steps: list = field(default_factory=list)

    def __len__(self):
        return len(self.steps)

    def max_preceding(self) -> int:
        return max((len(s.preceding) for s in self.steps), default=0)

    def to_dict(self) -> dict:
        return {"mode": self.mode, "steps": [s.to_dict() for s in self.steps]}


@dataclass(frozen=True)
class ParameterBundle:
    """Integer parameter vectors, one per ordering position."""

    vectors: tuple
    M: int
    seed: Optional[object] = None

    def __len__(self):
        return len(self.vectors)

    def truncate(self, p: int) -> "ParameterBundle":
        return ParameterBundle(self.vectors[:p], self.M, self.seed)

    def swap(self, p: int, q: int) -> "ParameterBundle":
        vecs = list(self.vectors)
        vecs[p], vecs[q] = vecs[q], vecs[p]
        return ParameterBundle(tuple(vecs), self.M, self.seed)


def sample_parameters(n: int, D: int, M: int = DEFAULT_M, seed=0) -> ParameterBundle:
    """``n * D`` integers uniform on ``[-M, M]``, reproducible from ``seed``.

    ``seed`` is anything :func:`numpy.random.default_rng` accepts, e.g. an int
    or a tuple ``(experiment_seed, trial, attempt)``.
    """
    if M < 1:
        raise ValueError("magnitude bound M must be at least 1")
    rng = np.random.default_rng(_seed_arg(seed))
    draws = rng.integers(-M, M, size=(n, D), endpoint=True)
    vecs = tuple(tuple(int(x) for x in row) for row in draws)
    return ParameterBundle(vecs, M, seed)


def _seed_arg(seed):
    return list(seed) if isinstance(seed, tuple) else seed


def construct_gor_plus(
    g: Graph, order: Sequence[int], D: int, params: ParameterBundle
) -> tuple[Representation, ConstructionTrace]:
    """Exact sequential construction driven by an integer parameter bundle.

    Position ``p`` emits ``complement_map(preceding non-neighbor vectors, w_p)``
    reduced to a primitive integer vector.  The result is indexed by vertex.
    """
    order = check_ordering(g, order)
    if len(params) != g.n:
        raise ValueError(f"parameter bundle has {len(params)} vectors for {g.n} vertices")
    placed, trace = _run_exact(g, order, D, params)
    vectors = tuple(placed[v] for v in range(g.n))
    return Representation(D, vectors, EXACT, order, params.seed, params.vectors), trace


def construct_prefix(g: Graph, order: Sequence[int], D: int, params: ParameterBundle) -> list[tuple]:
    """Run only the first ``len(params)`` positions; vectors come back in position order."""
    order = check_ordering(g, order)
    if len(params) > g.n:
        raise ValueError(f"parameter bundle has {len(params)} vectors for {g.n} vertices")
    placed, _ = _run_exact(g, order, D, params)
    return [placed[order[p]] for p in range(len(params))]


def _run_exact(g, order, D, params):
    if D < 1:
        raise ValueError("dimension D must be at least 1")
    for w in params.vectors:
        if len(w) != D:
            raise ValueError(f"parameter vector of length {len(w)} for dimension {D}")
    placed = {}
    trace = ConstructionTrace(EXACT)
    for p, w in enumerate(params.vectors):
        v = order[p]
        pre = preceding_non_neighbors(g, order, p)
        pre_vecs = [placed[u] for u in pre]
        gram_det = linalg.determinant(linalg.gram(pre_vecs))
        out = linalg.primitive(linalg.complement_map(pre_vecs, w))
        placed[v] = out
        trace.steps.append(TraceStep(
            position=p,
            vertex=v,
            preceding=pre,
            independent=gram_det != 0,
            zero_output=linalg.is_zero(out),
            parameter=list(w),
            gram_det=gram_det,
        ))
    return placed, trace


def construct_lss_randomized(
    g: Graph, order: Sequence[int], D: int, seed=0, mode: str = FLOAT, eps: float = linalg.DEFAULT_EPS
) -> tuple[Representation, ConstructionTrace]:
    """Lovasz-Saks-Schrijver randomized construction (float only).

    Each vertex gets a uniformly random unit vector in the orthogonal
    complement of its preceding non-neighbors' span: a standard Gaussian in
    an orthonormal basis of the complement, normalized.  A zero-dimensional
    complement yields the zero vector.
    """
    if mode != FLOAT:
        raise linalg.ModeError("the randomized construction needs float mode (unit vectors are irrational)")
    if D < 1:
        raise ValueError("dimension D must be at least 1")
    order = check_ordering(g, order)
    rng = np.random.default_rng(_seed_arg(seed))
    vec = {}
    trace = ConstructionTrace(FLOAT)
    for p, v in enumerate(order):
        pre = preceding_non_neighbors(g, order, p)
        pre_vecs = [vec[u] for u in pre]
        basis = linalg.orthonormal_complement_basis(pre_vecs, D, FLOAT, eps)
        coeffs = rng.standard_normal(basis.shape[0])
        if basis.shape[0] == 0:
            out = np.zeros(D)
        else:
            raw = coeffs @ basis
            out = raw / np.linalg.norm(raw)
        s = linalg.singular_values(pre_vecs)
        kept = s[s > eps * s[0]] if s.size and s[0] > 0 else s[:0]
        margin = float(kept[-1] / kept[0]) if kept.size else 1.0
        vec[v] = tuple(float(x) for x in out)
        trace.steps.append(TraceStep(
            position=p,
            vertex=v,
            preceding=pre,
            independent=kept.size == len(pre),
            zero_output=basis.shape[0] == 0,
            parameter=[float(x) for x in coeffs],
            sv_margin=margin,
        ))
    vectors = tuple(vec[i] for i in range(g.n))
    return Representation(D, vectors, FLOAT, order, seed, None), trace


@dataclass
class RetryOutcome:
    """Result of :func:`construct_with_retries`; failure is a value, not an exception."""

    success: bool
    representation: Optional[Representation]
    attempts_used: int
    failures: list = field(default_factory=list)  # (attempt, trace, report)

    def to_dict(self) -> dict:
        return {
            "success": self.success,
            "attempts_used": self.attempts_used,
            "representation": self.representation.to_dict() if self.representation else None,
            "failures": [
                {"attempt": a, "trace": t.to_dict(), "report": r.to_dict()} for a, t, r in self.failures
            ],
        }


def construct_with_retries(
    g: Graph,
    order: Sequence[int],
    D: int,
    mode: str = EXACT,
    attempts: int = DEFAULT_ATTEMPTS,
    seed=0,
    M: int = DEFAULT_M,
    eps: float = linalg.DEFAULT_EPS,
) -> RetryOutcome:
    """Construct and verify, redrawing randomness until a GOR appears.

    Attempt ``a`` draws from the derived seed ``(*seed, a)``.  Every failing
    attempt is kept with its trace and verification report.
    """
    from .verify import verify_gor

    if attempts < 1:
        raise ValueError("attempts must be at least 1")
    base = tuple(seed) if isinstance(seed, (tuple, list)) else (seed,)
    failures = []
    last = None
    for a in range(attempts):
        sub = base + (a,)
        if mode == EXACT:
            params = sample_parameters(g.n, D, M, sub)
            rep, trace = construct_gor_plus(g, order, D, params)
        else:
            rep, trace = construct_lss_randomized(g, order, D, sub, FLOAT, eps)
        report = verify_gor(g, rep, D, eps=eps)
        if report.gor:
            return RetryOutcome(True, rep, a + 1, failures)
        failures.append((a, trace, report))
        last = rep
    return RetryOutcome(False, last, attempts, failures)
