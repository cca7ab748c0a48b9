"""Seeded Monte-Carlo experiments and lemma sweeps.

All randomness derives from one experiment seed: trial ``t`` under ordering
number ``o`` uses seed ``(seed, o, t)``, and its retry ``a`` uses
``(seed, o, t, a)``.  Trials are therefore independent of execution order.
"""

from __future__ import annotations

import json
import os
import time
from dataclasses import asdict, dataclass, field, fields
from itertools import combinations
from typing import Optional

import numpy as np

from . import linalg
from .construct import DEFAULT_ATTEMPTS, DEFAULT_M, Representation, construct_with_retries
from .graph import Graph, detect_format, identity_ordering, parse_graph, path_within_prefix, vertex_connectivity
from .generators import generate_graph
from .orderings import ExchangeError, edge_swap_invariance, exchange_sequence, valid_exchange_positions
from .verify import certify_no_gor, verify_gor

MODE_ENV = "GORLAB_MODE"


def default_mode() -> str:
    mode = os.environ.get(MODE_ENV, linalg.EXACT)
    linalg._check_mode(mode)
    return mode


@dataclass
class ExperimentConfig:
    graph: str = "cycle:5"  # generator spec, or a file path when graph_file is set
    graph_file: Optional[str] = None
    graph_format: Optional[str] = None
    D: int = 3
    mode: str = field(default_factory=default_mode)
    trials: int = 100
    orderings: str = "identity"
    M: int = DEFAULT_M
    attempts: int = DEFAULT_ATTEMPTS
    seed: int = 0
    eps: float = linalg.DEFAULT_EPS
    store_reps: bool = True

    def __post_init__(self):
        linalg._check_mode(self.mode)
        if self.trials < 1:
            raise ValueError("trials must be at least 1")
        if self.attempts < 1:
            raise ValueError("attempts must be at least 1")
        if self.D < 1:
            raise ValueError("D must be at least 1")
        if self.seed < 0:
            raise ValueError("seed must be non-negative")

    def load_graph(self) -> Graph:
        if self.graph_file:
            with open(self.graph_file) as fh:
                text = fh.read()
            return parse_graph(text, self.graph_format or detect_format(self.graph_file))
        return generate_graph(self.graph, seed=self.seed)


_CONFIG_TYPES = {f.name: f.type for f in fields(ExperimentConfig)}


def parse_config_text(text: str) -> dict:
    """Read ``key = value`` lines (``#`` comments) into ExperimentConfig keyword arguments."""
    out = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"config line {lineno}: expected key = value")
        key, value = (s.strip() for s in line.split("=", 1))
        key = key.replace("-", "_")
        if key not in _CONFIG_TYPES:
            raise ValueError(f"config line {lineno}: unknown key {key!r}")
        out[key] = _coerce(key, value)
    return out


def _coerce(key, value):
    kind = _CONFIG_TYPES[key]
    if kind == "int":
        return int(value)
    if kind == "float":
        return float(value)
    if kind == "bool":
        if value.lower() not in ("true", "false", "1", "0", "yes", "no"):
            raise ValueError(f"{key}: expected a boolean, got {value!r}")
        return value.lower() in ("true", "1", "yes")
    return value


def resolve_orderings(spec: str, n: int, D: int, seed: int) -> list[tuple[str, tuple]]:
    """Expand an ordering spec into labelled orderings.

    ``identity``, ``random:K`` (K seeded permutations), ``subset-first:a,b,c``
    (those vertices first, then the rest ascending), or ``all-subset-first``
    (one such ordering per D-subset, lexicographic).
    """
    if spec == "identity":
        return [("identity", identity_ordering(n))]
    if spec.startswith("random:"):
        k = int(spec.split(":", 1)[1])
        if k < 1:
            raise ValueError("random:K needs K >= 1")
        rng = np.random.default_rng([seed, 0xD1CE])
        return [(f"random-{j}", tuple(int(x) for x in rng.permutation(n))) for j in range(k)]
    if spec.startswith("subset-first:"):
        subset = [int(x) for x in spec.split(":", 1)[1].split(",") if x.strip()]
        return [(spec, subset_first_ordering(n, subset))]
    if spec == "all-subset-first":
        return [
            ("subset-first:" + ",".join(map(str, s)), subset_first_ordering(n, s))
            for s in combinations(range(n), D)
        ]
    raise ValueError(f"unknown ordering spec {spec!r}")


def subset_first_ordering(n: int, subset) -> tuple[int, ...]:
    subset = list(subset)
    if len(set(subset)) != len(subset) or any(not 0 <= v < n for v in subset):
        raise ValueError(f"invalid vertex subset {subset}")
    rest = [v for v in range(n) if v not in set(subset)]
    return tuple(subset) + tuple(rest)


@dataclass
class OrderingStats:
    label: str
    ordering: tuple
    trials: int = 0
    successes: int = 0
    or_only: int = 0
    zero_vector_trials: int = 0
    retried: int = 0
    margins: list = field(default_factory=list)
    wall_time: float = 0.0

    @property
    def mean_margin(self) -> Optional[float]:
        return float(np.mean(self.margins)) if self.margins else None

    def to_dict(self, include_timing: bool) -> dict:
        d = {
            "label": self.label,
            "ordering": list(self.ordering),
            "trials": self.trials,
            "successes": self.successes,
            "or_only": self.or_only,
            "zero_vector_trials": self.zero_vector_trials,
            "retried": self.retried,
            "mean_margin": self.mean_margin,
        }
        if include_timing:
            d["wall_time"] = self.wall_time
        return d


@dataclass
class TrialRecord:
    ordering_index: int
    trial: int
    success: bool
    attempts: int
    representation: Optional[Representation] = None
    failure_reports: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "ordering_index": self.ordering_index,
            "trial": self.trial,
            "success": self.success,
            "attempts": self.attempts,
            "representation": self.representation.to_dict() if self.representation else None,
            "failure_reports": self.failure_reports,
        }


@dataclass
class ExperimentResult:
    config: ExperimentConfig
    n: int
    kappa: int
    no_gor_certificate: Optional[list]
    per_ordering: list
    records: list

    @property
    def total_trials(self) -> int:
        return sum(s.trials for s in self.per_ordering)

    @property
    def total_successes(self) -> int:
        return sum(s.successes for s in self.per_ordering)

    def to_dict(self, include_timing: bool = False) -> dict:
        records = sorted(self.records, key=lambda r: (r.ordering_index, r.trial))
        return {
            "config": asdict(self.config),
            "n": self.n,
            "kappa": self.kappa,
            "no_gor_certificate": self.no_gor_certificate,
            "total_trials": self.total_trials,
            "total_successes": self.total_successes,
            "per_ordering": [s.to_dict(include_timing) for s in self.per_ordering],
            "records": [r.to_dict() for r in records],
        }

    def to_json(self, include_timing: bool = False) -> str:
        return json.dumps(self.to_dict(include_timing), indent=1, sort_keys=True)

    def reverify(self, g: Graph) -> bool:
        """Re-check every stored success from its serialized form."""
        for r in self.records:
            if not r.success:
                continue
            if r.representation is None:
                return False
            rep = Representation.from_dict(json.loads(json.dumps(r.representation.to_dict())))
            if not verify_gor(g, rep, self.config.D, eps=self.config.eps).gor:
                return False
        return True

    def summary(self) -> str:
        lines = [f"n={self.n} D={self.config.D} kappa={self.kappa} mode={self.config.mode}"]
        if self.no_gor_certificate is not None:
            lines.append(f"no GOR: cut {self.no_gor_certificate} has size < n-D={self.n - self.config.D}")
        lines.append(f"{'ordering':<24} {'trials':>6} {'GOR':>6} {'OR-only':>8} {'zeros':>6} {'retried':>8} {'secs':>8}")
        for s in self.per_ordering:
            lines.append(
                f"{s.label[:24]:<24} {s.trials:>6} {s.successes:>6} {s.or_only:>8} "
                f"{s.zero_vector_trials:>6} {s.retried:>8} {s.wall_time:>8.2f}"
            )
        return "\n".join(lines)


def run_experiment(cfg: ExperimentConfig, g: Optional[Graph] = None) -> ExperimentResult:
    g = cfg.load_graph() if g is None else g
    if cfg.D > g.n:
        raise ValueError(f"D={cfg.D} exceeds the vertex count n={g.n}")
    cert = vertex_connectivity(g)
    cut = certify_no_gor(g, cfg.D)
    stats, records = [], []
    for o_idx, (label, order) in enumerate(resolve_orderings(cfg.orderings, g.n, cfg.D, cfg.seed)):
        st = OrderingStats(label, order)
        start = time.perf_counter()
        for t in range(cfg.trials):
            out = construct_with_retries(
                g, order, cfg.D, cfg.mode, cfg.attempts, (cfg.seed, o_idx, t), cfg.M, cfg.eps
            )
            st.trials += 1
            if out.attempts_used > 1:
                st.retried += 1
            rec = TrialRecord(o_idx, t, out.success, out.attempts_used)
            rec.failure_reports = [
                {"attempt": a, "report": rep.to_dict(), "zero_vertices": [s.vertex for s in tr.steps if s.zero_output]}
                for a, tr, rep in out.failures
            ]
            final = out.representation
            if out.success:
                st.successes += 1
                if cfg.mode == linalg.FLOAT:
                    report = verify_gor(g, final, cfg.D, cfg.eps)
                    st.margins.append(report.min_margin)
                if cfg.store_reps:
                    rec.representation = final
            else:
                last_report = out.failures[-1][2]
                if last_report.or_pass:
                    st.or_only += 1
            if final is not None and final.zero_vertices():
                st.zero_vector_trials += 1
            records.append(rec)
        st.wall_time = time.perf_counter() - start
        stats.append(st)
    return ExperimentResult(
        config=cfg,
        n=g.n,
        kappa=cert.kappa,
        no_gor_certificate=sorted(cut) if cut is not None else None,
        per_ordering=stats,
        records=records,
    )


# -- lemma sweeps ------------------------------------------------------------

@dataclass
class LemmaSweep:
    graphs: int = 0
    swap_cases: int = 0
    swap_invariant: int = 0
    swap_defects: list = field(default_factory=list)
    prefix_cases: int = 0
    prefix_missing: list = field(default_factory=list)
    exchange_cases: int = 0
    exchange_counts: dict = field(default_factory=dict)
    exchange_failures: list = field(default_factory=list)
    sequences: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not (self.swap_defects or self.prefix_missing or self.exchange_failures)

    def to_dict(self, include_sequences: bool = False) -> dict:
        d = asdict(self)
        d["exchange_counts"] = {str(k): v for k, v in sorted(self.exchange_counts.items())}
        d["ok"] = self.ok
        if not include_sequences:
            d.pop("sequences")
        return d


def lemma_sweep(graphs, seed: int = 0, keep_sequences: bool = False) -> LemmaSweep:
    """Run the ordering checks on each graph with ``D = n - kappa`` and a random ordering.

    * edge swaps at every position holding an edge preserve the constraint signature;
    * every position ``p >= D - 1`` has a path to ``p + 1`` through earlier positions;
    * every such position admits a validated exchange rewriting.
    """
    rng = np.random.default_rng([seed, 0x1E33A])
    out = LemmaSweep()
    for gi, g in enumerate(graphs):
        out.graphs += 1
        kappa = vertex_connectivity(g).kappa
        D = g.n - kappa
        order = tuple(int(x) for x in rng.permutation(g.n))
        for p in range(g.n - 1):
            res = edge_swap_invariance(g, order, p)
            if res.status == "not-an-edge":
                continue
            out.swap_cases += 1
            if res:
                out.swap_invariant += 1
            else:
                out.swap_defects.append({"graph": gi, "ordering": list(order), "p": p, "details": res.details})
        for p in valid_exchange_positions(g, D):
            out.prefix_cases += 1
            if path_within_prefix(g, order, p) is None:
                out.prefix_missing.append({"graph": gi, "ordering": list(order), "p": p, "D": D})
                continue
            out.exchange_cases += 1
            try:
                steps = exchange_sequence(g, order, p, D, check_connectivity=False)
            except ExchangeError as exc:
                out.exchange_failures.append({"graph": gi, "p": p, "error": str(exc)})
                continue
            out.exchange_counts[len(steps)] = out.exchange_counts.get(len(steps), 0) + 1
            if keep_sequences:
                out.sequences.append({"graph": gi, "p": p, "D": D, "steps": [s.to_dict() for s in steps]})
    return out


def random_corpus(count: int, n_min: int, n_max: int, seed: int = 0, p_range=(0.3, 0.9)) -> list[Graph]:
    from .generators import gnp

    rng = np.random.default_rng([seed, 0xC0A])
    graphs = []
    for i in range(count):
        n = int(rng.integers(n_min, n_max, endpoint=True))
        p = float(rng.uniform(*p_range))
        graphs.append(gnp(n, p, seed=(seed, i)))
    return graphs
