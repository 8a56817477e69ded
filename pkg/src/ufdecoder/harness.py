"""Monte Carlo driver: trials, experiment sweeps, CSV output, threshold crossings, timing."""

from __future__ import annotations

import csv
import logging
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np
from numba import njit
from scipy.stats import binomtest

from . import lattice as lat
from .cluster import Strategy, validate
from .cluster import _kernels as K
from .homology import class_bits_into, judge
from .lattice import SyndromeGraph
from .noise import NoiseParams, sample, sample_into, syndrome_into
from .peeling import ValidationContractError, peel, peel_into
from .peeling import allocate as allocate_peeling
from .rng import seed_state

log = logging.getLogger(__name__)

CSV_HEADER = ["lattice", "L", "p_e", "p_z", "strategy", "trials", "failures", "rate", "ci_lo", "ci_hi", "mean_decode_ns"]

# trials per compiled batch; fixed so results do not depend on the thread count
CHUNK = 1024

DEFAULT_SIZES = {"2d": [8, 16, 24], "3d": [6, 8, 10]}
DEFAULT_PZ = {
    "2d": [round(0.090 + 0.002 * i, 3) for i in range(10)],
    "3d": [round(0.020 + 0.002 * i, 3) for i in range(7)],
}


@dataclass(frozen=True)
class TrialRecord:
    failed: bool
    class_bits: tuple[int, int]
    decode_time: int  # ns
    growth_rounds: int
    union_calls: int
    find_calls: int


@dataclass(frozen=True)
class SummaryRow:
    lattice: str
    L: int
    p_e: float
    p_z: float
    strategy: str
    trials: int
    failures: int
    rate: float
    ci_lo: float
    ci_hi: float
    mean_decode_ns: float

    def as_csv(self) -> list[str]:
        return [self.lattice, str(self.L), repr(self.p_e), repr(self.p_z), self.strategy, str(self.trials),
                str(self.failures), repr(self.rate), repr(self.ci_lo), repr(self.ci_hi), repr(self.mean_decode_ns)]

    @classmethod
    def from_csv(cls, rec: dict) -> SummaryRow:
        return cls(
            lattice=rec["lattice"],
            L=int(rec["L"]),
            p_e=float(rec["p_e"]),
            p_z=float(rec["p_z"]),
            strategy=rec["strategy"],
            trials=int(rec["trials"]),
            failures=int(rec["failures"]),
            rate=float(rec["rate"]),
            ci_lo=float(rec["ci_lo"]),
            ci_hi=float(rec["ci_hi"]),
            mean_decode_ns=float(rec["mean_decode_ns"]),
        )


@dataclass
class ExperimentSummary:
    rows: list[SummaryRow] = field(default_factory=list)

    def select(self, **where) -> list[SummaryRow]:
        return [r for r in self.rows if all(getattr(r, k) == v for k, v in where.items())]

    def write_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(CSV_HEADER)
            for row in self.rows:
                w.writerow(row.as_csv())

    @classmethod
    def read_csv(cls, path) -> ExperimentSummary:
        with open(path, newline="") as fh:
            reader = csv.DictReader(fh)
            if reader.fieldnames != CSV_HEADER:
                raise ValueError(f"{path}: unexpected header {reader.fieldnames}")
            return cls([SummaryRow.from_csv(rec) for rec in reader])


@dataclass
class ExperimentConfig:
    lattice: str = "2d"
    sizes: Sequence[int] = (8, 16, 24)
    p_e: Sequence[float] = (0.0,)
    p_z: Sequence[float] = tuple(DEFAULT_PZ["2d"])
    trials: int | None = 10_000
    min_failures: int | None = None
    strategy: str = "weighted"
    seed: int = 0
    out: str | Path | None = None
    threads: int = 1
    max_trials: int | None = None  # cap for stop-at-failures mode

    def __post_init__(self):
        self.lattice = lat.Lattice(self.lattice).value
        if self.strategy not in ("uniform", "weighted"):
            raise ValueError(f"strategy must be 'uniform' or 'weighted', got {self.strategy!r}")
        if any(L < 2 for L in self.sizes):
            raise ValueError("lattice sizes must be >= 2")
        for p in [*self.p_e, *self.p_z]:
            if not 0.0 <= p <= 1.0:
                raise ValueError(f"probability {p} outside [0, 1]")
        if (self.trials is None) == (self.min_failures is None):
            raise ValueError("give exactly one of trials and min_failures")
        if self.trials is not None and self.trials < 1:
            raise ValueError("trials must be >= 1")
        if self.min_failures is not None and self.min_failures < 1:
            raise ValueError("min_failures must be >= 1")
        if self.threads < 1:
            raise ValueError("threads must be >= 1")


def wilson_interval(failures: int, trials: int, confidence: float = 0.95) -> tuple[float, float]:
    ci = binomtest(failures, trials).proportion_ci(confidence_level=confidence, method="wilson")
    return float(ci.low), float(ci.high)


# --------------------------------------------------------------------------
# compiled batch kernels
# --------------------------------------------------------------------------


@njit(cache=True, nogil=True)
def _sample_batch(seed, first_trial, p_e, p_z, edges, state, erasure, pauli_z, syndrome):
    for i in range(erasure.shape[0]):
        seed_state(state, seed, first_trial + i)
        sample_into(state, p_e, p_z, erasure[i], pauli_z[i])
        syndrome_into(edges, pauli_z[i], syndrome[i])


@njit(cache=True, nogil=True)
def _syndrome_batch(edges, pauli_z, syndrome):
    for i in range(pauli_z.shape[0]):
        syndrome_into(edges, pauli_z[i], syndrome[i])


@njit(cache=True, nogil=True)
def _decode_batch(F, S, edges, inc_e, inc_v, weighted, erasure, syndrome, eps, correction, stats):
    """Validate and peel every row. Returns -1 or the index of a row that broke the peeling contract."""
    for i in range(erasure.shape[0]):
        n_odd = K.init(F, inc_e, inc_v, erasure[i], syndrome[i])
        if weighted:
            K.validate_weighted(F, edges, inc_e, inc_v, n_odd)
        else:
            K.validate_uniform(F, edges, inc_e, inc_v, n_odd)
        K.grown_edges(F, eps)
        if peel_into(S, inc_e, inc_v, eps, syndrome[i], correction[i]) >= 0:
            return i
        stats[i, 0] = F.stats[K.ROUNDS]
        stats[i, 1] = F.stats[K.UNIONS]
        stats[i, 2] = F.stats[K.FINDS]
    return -1


@njit(cache=True, nogil=True)
def _judge_batch(cut_x, cut_y, pauli_z, correction, bits):
    for i in range(pauli_z.shape[0]):
        bits[i] = class_bits_into(cut_x, cut_y, pauli_z[i], correction[i])


class Workspace:
    """Reusable per-thread buffers for batched trials on one graph."""

    def __init__(self, graph: SyndromeGraph, chunk: int = CHUNK):
        V, E = graph.vertex_count, graph.edge_count
        self.graph = graph
        self.forest = K.allocate(V, E)
        self.peeling = allocate_peeling(V)
        self.state = np.zeros(4, np.uint64)
        self.erasure = np.empty((chunk, E), np.bool_)
        self.pauli_z = np.empty((chunk, E), np.bool_)
        self.syndrome = np.empty((chunk, V), np.bool_)
        self.correction = np.empty((chunk, E), np.bool_)
        self.eps = np.empty(E, np.bool_)
        self.stats = np.empty((chunk, 3), np.int64)
        self.bits = np.empty(chunk, np.int64)

    def sample(self, params: NoiseParams, seed: int, first: int, count: int) -> None:
        g = self.graph
        _sample_batch(np.uint64(seed), np.uint64(first), float(params.p_e), float(params.p_z), g.edges, self.state,
                      self.erasure[:count], self.pauli_z[:count], self.syndrome[:count])

    def load(self, erasure: np.ndarray, pauli_z: np.ndarray) -> int:
        """Copy injected error rows in and derive their syndromes."""
        count = erasure.shape[0]
        self.erasure[:count] = erasure
        self.pauli_z[:count] = pauli_z
        _syndrome_batch(self.graph.edges, self.pauli_z[:count], self.syndrome[:count])
        return count

    def decode(self, strategy: str, count: int) -> int:
        """Decode the first ``count`` loaded rows; returns elapsed nanoseconds."""
        g = self.graph
        t0 = time.perf_counter_ns()
        bad = _decode_batch(self.forest, self.peeling, g.edges, g.incident_edges, g.incident_vertices,
                            strategy == "weighted", self.erasure[:count], self.syndrome[:count], self.eps,
                            self.correction[:count], self.stats[:count])
        elapsed = time.perf_counter_ns() - t0
        if bad >= 0:
            # eps still holds the offending row; rerun it to name the odd component
            peel(g, self.eps, self.syndrome[bad])
            raise ValidationContractError(-1)
        return elapsed

    def judge(self, count: int) -> np.ndarray:
        g = self.graph
        _judge_batch(g.cut_x, g.cut_y, self.pauli_z[:count], self.correction[:count], self.bits[:count])
        return self.bits[:count]


def run_chunk(ws: Workspace, params: NoiseParams, strategy: str, seed: int, first: int, count: int):
    """Trials ``first .. first+count-1``: returns (class bits per trial, decode ns)."""
    ws.sample(params, seed, first, count)
    elapsed = ws.decode(strategy, count)
    return ws.judge(count).copy(), elapsed


# --------------------------------------------------------------------------
# public operations
# --------------------------------------------------------------------------


def run_trial(graph: SyndromeGraph, params: NoiseParams, strategy="weighted", rng=(0, 0)) -> TrialRecord:
    """sample -> validate -> peel -> judge; the clock covers validate and peel only."""
    errors = sample(graph, params, rng)
    t0 = time.perf_counter_ns()
    result = validate(graph, errors.erasure, errors.syndrome, Strategy(strategy))
    correction = peel(graph, result.modified_erasure, errors.syndrome)
    elapsed = max(time.perf_counter_ns() - t0, 1)
    verdict = judge(graph, errors.pauli_z ^ correction.edges)
    return TrialRecord(verdict.failed, verdict.class_bits, elapsed, result.growth_rounds, result.union_calls,
                       result.find_calls)


@dataclass
class DecodedBatch:
    syndrome: np.ndarray
    correction: np.ndarray
    class_bits: np.ndarray

    @property
    def failed(self) -> np.ndarray:
        return self.class_bits != 0


def decode_injected(graph: SyndromeGraph, erasure: np.ndarray, pauli_z: np.ndarray, strategy="weighted") -> DecodedBatch:
    """Decode many injected errors (one per row) through the compiled pipeline."""
    erasure = np.asarray(erasure, dtype=np.bool_)
    pauli_z = np.asarray(pauli_z, dtype=np.bool_)
    if erasure.shape != pauli_z.shape or erasure.ndim != 2 or erasure.shape[1] != graph.edge_count:
        raise ValueError("erasure and pauli_z must both have shape (rows, edge_count)")
    rows = erasure.shape[0]
    syndrome = np.empty((rows, graph.vertex_count), np.bool_)
    correction = np.empty_like(erasure)
    bits = np.empty(rows, np.int64)
    ws = Workspace(graph)
    for first in range(0, rows, CHUNK):
        stop = min(first + CHUNK, rows)
        count = ws.load(erasure[first:stop], pauli_z[first:stop])
        ws.decode(Strategy(strategy).value, count)
        bits[first:stop] = ws.judge(count)
        syndrome[first:stop] = ws.syndrome[:count]
        correction[first:stop] = ws.correction[:count]
    return DecodedBatch(syndrome, correction, bits)


def _run_point(workspaces, pool, params, cfg: ExperimentConfig):
    """Returns (trials, failures, total decode ns) for one grid point."""
    seed = cfg.seed
    if cfg.trials is not None:
        starts = list(range(0, cfg.trials, CHUNK))
        jobs = [(s, min(CHUNK, cfg.trials - s)) for s in starts]
        results = _map_chunks(workspaces, pool, params, cfg.strategy, seed, jobs)
        failures = sum(int(np.count_nonzero(bits)) for bits, _ in results)
        elapsed = sum(ns for _, ns in results)
        return cfg.trials, failures, elapsed

    # stop-at-failures: the trial count is the index of the target failure + 1
    failures = 0
    trials = 0
    elapsed = 0
    first = 0
    cap = cfg.max_trials
    while True:
        jobs = []
        for _ in range(len(workspaces)):
            count = CHUNK if cap is None else min(CHUNK, cap - first)
            if count <= 0:
                break
            jobs.append((first, count))
            first += count
        if not jobs:
            return trials, failures, elapsed
        for (start, count), (bits, ns) in zip(jobs, _map_chunks(workspaces, pool, params, cfg.strategy, seed, jobs)):
            hits = np.flatnonzero(bits)
            need = cfg.min_failures - failures
            if len(hits) >= need:
                used = int(hits[need - 1]) + 1
                # attribute decode time pro rata to the trials actually kept
                return trials + used, cfg.min_failures, elapsed + ns * used // count
            failures += len(hits)
            trials += count
            elapsed += ns


def _map_chunks(workspaces, pool, params, strategy, seed, jobs):
    if pool is None:
        ws = workspaces[0]
        return [run_chunk(ws, params, strategy, seed, s, c) for s, c in jobs]
    # one workspace per in-flight job
    out = [None] * len(jobs)
    for base in range(0, len(jobs), len(workspaces)):
        batch = jobs[base : base + len(workspaces)]
        futures = [pool.submit(run_chunk, ws, params, strategy, seed, s, c) for ws, (s, c) in zip(workspaces, batch)]
        for k, fut in enumerate(futures):
            out[base + k] = fut.result()
    return out


def run_experiment(config: ExperimentConfig) -> ExperimentSummary:
    """Sweep every (L, p_e, p_z) point; writes CSV to ``config.out`` when set."""
    cfg = config
    if cfg.out is not None:
        # fail before spending compute on an unwritable destination
        Path(cfg.out).open("a").close()
    rows = []
    pool = ThreadPoolExecutor(cfg.threads) if cfg.threads > 1 else None
    try:
        for L in cfg.sizes:
            graph = lat.build(cfg.lattice, L)
            workspaces = [Workspace(graph) for _ in range(cfg.threads)]
            # load compiled kernels before the first timed batch
            run_chunk(workspaces[0], NoiseParams(0.0, 0.0), cfg.strategy, cfg.seed, 0, 1)
            for p_e in cfg.p_e:
                for p_z in cfg.p_z:
                    params = NoiseParams(p_e, p_z)
                    trials, failures, elapsed = _run_point(workspaces, pool, params, cfg)
                    lo, hi = wilson_interval(failures, trials)
                    row = SummaryRow(cfg.lattice, L, float(p_e), float(p_z), cfg.strategy, trials, failures,
                                     failures / trials, lo, hi, elapsed / trials)
                    log.info("%s", row)
                    rows.append(row)
    finally:
        if pool is not None:
            pool.shutdown()
    summary = ExperimentSummary(rows)
    if cfg.out is not None:
        summary.write_csv(cfg.out)
    return summary


class NoCrossingError(ValueError):
    pass


@dataclass(frozen=True)
class Crossing:
    p: float
    bracket: tuple[float, float]


def estimate_crossing(rows_a: Iterable[SummaryRow], rows_b: Iterable[SummaryRow], scan: str = "p_z") -> Crossing:
    """Zero of ``rate_a - rate_b`` by linear interpolation on the common grid.

    The first sign change along increasing ``scan`` is used.
    """
    a = {getattr(r, scan): r.rate for r in rows_a}
    b = {getattr(r, scan): r.rate for r in rows_b}
    grid = sorted(set(a) & set(b))
    if len(grid) < 2:
        raise NoCrossingError("need at least two common grid points")
    diff = [a[p] - b[p] for p in grid]
    for i in range(len(grid) - 1):
        d0, d1 = diff[i], diff[i + 1]
        if d0 == 0.0 and d1 != 0.0:
            return Crossing(grid[i], (grid[i], grid[i + 1]))
        if d0 * d1 < 0.0:
            p = grid[i] + (grid[i + 1] - grid[i]) * d0 / (d0 - d1)
            return Crossing(p, (grid[i], grid[i + 1]))
    raise NoCrossingError("rate difference never changes sign")


@dataclass(frozen=True)
class TimingRow:
    L: int
    n: int
    mean_decode_ns: float


def timing_sweep(sizes: Sequence[int], params: NoiseParams, trials: int, lattice: str = "2d",
                 strategy: str = "uniform", seed: int = 0) -> list[TimingRow]:
    """Mean validate+peel time per trial against qubit count ``n`` (edges)."""
    rows = []
    for L in sizes:
        graph = lat.build(lattice, L)
        ws = Workspace(graph)
        # compile and warm caches outside the clock
        run_chunk(ws, params, strategy, seed, 0, min(CHUNK, 8))
        total = 0
        for first in range(0, trials, CHUNK):
            count = min(CHUNK, trials - first)
            ws.sample(params, seed, first, count)
            total += ws.decode(strategy, count)
        rows.append(TimingRow(L, graph.edge_count, total / trials))
    return rows


def loglog_slope(rows: Sequence[TimingRow]) -> float:
    x = np.log([r.n for r in rows])
    y = np.log([r.mean_decode_ns for r in rows])
    return float(np.polyfit(x, y, 1)[0])
