"""Monte Carlo network realizations on a disk and their hop statistics.

Nodes are placed uniformly on a disk of radius R with uniform random
orientations; every unordered pair links independently when a fresh uniform
variate falls at or below the pair's connection probability.  Hop counts
come from breadth-first search over the resulting undirected graph, and the
reported means use interior nodes only (at least a configurable margin away
from the rim) to keep boundary truncation out of the statistics.

Reproducibility contract: every random quantity of a trial is drawn from a
counter-based generator keyed by (seed, trial, purpose), and the pair at
condensed index l consumes the l-th variate of the link stream, so results
are bit-identical regardless of iteration strategy, worker count, or which
subsets of trials run where.
"""

import json
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional

import numpy as np
from numpy.random import Generator, Philox
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import dijkstra
from scipy.spatial import cKDTree

from .channel import ChannelKind, ChannelModel

TWO_PI = 2.0 * math.pi

# stream purposes for the per-trial counter-based generators
_TAG_COUNT = 1
_TAG_POSITIONS = 2
_TAG_ORIENTATIONS = 3
_TAG_LINKS = 4
_TAG_SOURCES = 5

_BFS_CHUNK = 256


def _stream(seed, trial, tag):
    return Generator(Philox(np.random.SeedSequence((seed, trial, tag))))


def thread_count():
    """Worker count: DIRNET_THREADS if set, else hardware parallelism."""
    raw = os.environ.get("DIRNET_THREADS", "").strip()
    if raw:
        count = int(raw)
        if count < 1:
            raise ValueError(f"DIRNET_THREADS must be positive, got {raw!r}")
        return count
    return os.cpu_count() or 1


@dataclass(frozen=True)
class NetworkConfig:
    """Parameters of one simulated ensemble.

    ``boundary_margin`` of None resolves, at measurement time, to the
    largest estimated hop count times the effective range at cutoff 1e-6;
    full-depth runs fall back to twice the effective range, since no finite
    margin can cover unbounded hop counts.  Pass an explicit margin when
    that heuristic is too aggressive for the domain size.
    """

    density: float
    channel: ChannelModel
    domain_radius: float = 10.0
    boundary_margin: Optional[float] = None
    seed: int = 0
    trials: int = 1
    poisson_n: bool = False

    def __post_init__(self):
        if not self.density > 0.0:
            raise ValueError(f"density must be positive, got {self.density!r}")
        if not self.domain_radius > 0.0:
            raise ValueError(f"domain_radius must be positive, got {self.domain_radius!r}")
        if self.boundary_margin is not None:
            if not 0.0 <= self.boundary_margin < self.domain_radius:
                raise ValueError(
                    f"boundary_margin must lie in [0, domain_radius), "
                    f"got {self.boundary_margin!r}")
        if not (isinstance(self.seed, int) and 0 <= self.seed < 2 ** 64):
            raise ValueError(f"seed must be a 64-bit nonnegative integer, got {self.seed!r}")
        if not (isinstance(self.trials, int) and self.trials >= 1):
            raise ValueError(f"trials must be a positive integer, got {self.trials!r}")

    @property
    def n_nodes(self):
        """Node count at fixed intensity: floor(density * pi * R**2)."""
        return int(self.density * math.pi * self.domain_radius ** 2)

    def resolved_margin(self, max_hops=None):
        if self.boundary_margin is not None:
            return self.boundary_margin
        reach = self.channel.effective_range(1e-6)
        margin = (max_hops if max_hops is not None else 2) * reach
        if margin >= self.domain_radius:
            raise ValueError(
                f"default boundary margin {margin:.3g} leaves no interior in a "
                f"disk of radius {self.domain_radius:.3g}; pass boundary_margin "
                f"explicitly")
        return margin


@dataclass(frozen=True)
class Realization:
    """One sampled network: geometry plus the undirected link graph."""

    positions: np.ndarray       # (n, 2)
    orientations: np.ndarray    # (n,)
    adjacency: csr_matrix       # symmetric, zero diagonal
    interior_mask: np.ndarray   # (n,) bool
    trial: int

    @property
    def n(self):
        return len(self.orientations)

    def interior_indices(self):
        return np.nonzero(self.interior_mask)[0]

    def validate(self):
        """Structural invariants: symmetry, empty diagonal, in-domain nodes."""
        if (self.adjacency != self.adjacency.T).nnz != 0:
            raise RuntimeError("adjacency must be symmetric")
        if self.adjacency.diagonal().any():
            raise RuntimeError("adjacency diagonal must be empty")

    def dump_record(self, seed):
        nodes = np.column_stack([self.positions, self.orientations])
        i_idx, j_idx = self.adjacency.nonzero()
        keep = i_idx < j_idx
        return {
            "seed": int(seed),
            "trial": int(self.trial),
            "nodes": [[float(a), float(b), float(c)] for a, b, c in nodes],
            "edges": [[int(a), int(b)] for a, b in zip(i_idx[keep], j_idx[keep])],
        }


def sample_realization(config, trial_index, max_hops=None):
    """Draw one network realization, deterministic in (seed, trial_index)."""
    rho_area = config.density * math.pi * config.domain_radius ** 2
    if config.poisson_n:
        n = int(_stream(config.seed, trial_index, _TAG_COUNT).poisson(rho_area))
    else:
        n = int(rho_area)
    margin = config.resolved_margin(max_hops)

    pos_rng = _stream(config.seed, trial_index, _TAG_POSITIONS)
    radii = config.domain_radius * np.sqrt(pos_rng.random(n))
    angles = TWO_PI * pos_rng.random(n)
    positions = np.column_stack([radii * np.cos(angles), radii * np.sin(angles)])
    orientations = TWO_PI * _stream(config.seed, trial_index, _TAG_ORIENTATIONS).random(n)

    if n >= 2:
        if config.channel.kind is ChannelKind.HARD_DISK:
            # deterministic links: strictly closer than the threshold
            pairs = cKDTree(positions).query_pairs(config.channel.r0,
                                                   output_type="ndarray")
            if len(pairs):
                d = np.hypot(*(positions[pairs[:, 0]] - positions[pairs[:, 1]]).T)
                pairs = pairs[d < config.channel.r0]
            i_idx, j_idx = (pairs[:, 0], pairs[:, 1]) if len(pairs) else \
                (np.empty(0, np.intp), np.empty(0, np.intp))
        else:
            iu, ju = np.triu_indices(n, k=1)
            h = config.channel.pair_probabilities(
                positions[ju, 0] - positions[iu, 0],
                positions[ju, 1] - positions[iu, 1],
                orientations[iu], orientations[ju])
            zeta = _stream(config.seed, trial_index, _TAG_LINKS).random(len(h))
            keep = zeta <= h
            i_idx, j_idx = iu[keep], ju[keep]
    else:
        i_idx = j_idx = np.empty(0, np.intp)

    rows = np.concatenate([i_idx, j_idx])
    cols = np.concatenate([j_idx, i_idx])
    adjacency = csr_matrix((np.ones(len(rows), dtype=np.int8), (rows, cols)),
                           shape=(n, n))
    interior = np.hypot(positions[:, 0], positions[:, 1]) \
        <= config.domain_radius - margin
    real = Realization(positions=positions, orientations=orientations,
                       adjacency=adjacency, interior_mask=interior,
                       trial=trial_index)
    real.validate()
    return real


def khop_degrees(real, max_hops=None, sources=None):
    """Hop-count tallies from each source node by breadth-first search.

    Returns (counts, unreachable): counts[s, k-1] is the number of nodes at
    graph distance exactly k from source s, and unreachable[s] the number
    not reached (within max_hops, when given).  The partition identity
    counts.sum(axis=1) + unreachable == n - 1 is checked on every call.
    """
    n = real.n
    if sources is None:
        sources = np.arange(n, dtype=np.intp)
    else:
        sources = np.asarray(sources, dtype=np.intp)
    if n == 0 or len(sources) == 0:
        return (np.zeros((len(sources), 0), dtype=np.int64),
                np.zeros(len(sources), dtype=np.int64))

    limit = np.inf if max_hops is None else float(max_hops)
    chunks = []
    inf_parts = []
    k_cap = 0
    for start in range(0, len(sources), _BFS_CHUNK):
        idx = sources[start:start + _BFS_CHUNK]
        dist = dijkstra(real.adjacency, directed=False, unweighted=True,
                        indices=idx, limit=limit)
        finite = np.isfinite(dist)
        hops = dist[finite].astype(np.int64)
        width = int(hops.max(initial=0)) + 1
        rows = np.nonzero(finite)[0]
        tally = np.bincount(rows * width + hops,
                            minlength=len(idx) * width).reshape(len(idx), width)
        chunks.append(tally[:, 1:])            # drop the self entry at hop 0
        inf_parts.append(n - finite.sum(axis=1))
        k_cap = max(k_cap, width - 1)

    counts = np.zeros((len(sources), k_cap), dtype=np.int64)
    row = 0
    for tally in chunks:
        counts[row:row + len(tally), :tally.shape[1]] = tally
        row += len(tally)
    unreachable = np.concatenate(inf_parts).astype(np.int64)
    if not np.all(counts.sum(axis=1) + unreachable == n - 1):
        raise RuntimeError("hop tallies do not partition the node set")
    return counts, unreachable


@dataclass(frozen=True)
class KHopStats:
    """Interior-node hop statistics pooled over trials.

    ``hop_pmf`` is mu_k normalized by (n participants - 1); together with
    mu_inf/(n-1) it sums to one exactly for fixed-count ensembles.  h_bar
    conditions on reachable pairs, so it stays finite on fragmented
    networks; it is NaN only when no pair connects at all.
    """

    mu: dict
    mu_inf: float
    hop_pmf: dict
    h_bar: float
    mean_cluster_size: float
    n_interior: int
    stderr: dict
    trials_with_unreachable: int
    n_nodes: float
    trials: int


def _summarize(real, max_hops, max_sources, seed):
    sources = real.interior_indices()
    if max_sources is not None and len(sources) > max_sources:
        pick = _stream(seed, real.trial, _TAG_SOURCES).choice(
            len(sources), size=max_sources, replace=False)
        sources = sources[np.sort(pick)]
    counts, unreachable = khop_degrees(real, max_hops=max_hops, sources=sources)
    return {
        "n": real.n,
        "n_sources": len(sources),
        "sum_k": counts.sum(axis=0),
        "sum_inf": int(unreachable.sum()),
    }


def _stats_from_summaries(config, summaries):
    width = max((len(s["sum_k"]) for s in summaries), default=0)
    total_sources = sum(s["n_sources"] for s in summaries)
    if total_sources == 0:
        raise ValueError("no interior nodes; boundary_margin is too large "
                         "for this domain")
    sums = np.zeros(width)
    trial_means = np.zeros((len(summaries), width))
    sum_inf = 0
    trials_with_unreachable = 0
    for t, s in enumerate(summaries):
        k = len(s["sum_k"])
        sums[:k] += s["sum_k"]
        if s["n_sources"]:
            trial_means[t, :k] = s["sum_k"] / s["n_sources"]
        sum_inf += s["sum_inf"]
        trials_with_unreachable += bool(s["sum_inf"])

    mu_k = sums / total_sources
    mu_inf = sum_inf / total_sources
    if len(summaries) >= 2:
        stderr = np.std(trial_means, axis=0, ddof=1) / math.sqrt(len(summaries))
    else:
        stderr = np.zeros(width)
    n_ref = float(np.mean([s["n"] for s in summaries]))
    denom = n_ref - 1.0
    weighted = float(np.sum(np.arange(1, width + 1) * mu_k))
    reachable = float(np.sum(mu_k))
    return KHopStats(
        mu={k + 1: float(mu_k[k]) for k in range(width)},
        mu_inf=float(mu_inf),
        hop_pmf={k + 1: float(mu_k[k] / denom) for k in range(width)},
        h_bar=weighted / reachable if reachable > 0.0 else float("nan"),
        mean_cluster_size=1.0 + reachable,
        n_interior=total_sources,
        stderr={k + 1: float(stderr[k]) for k in range(width)},
        trials_with_unreachable=trials_with_unreachable,
        n_nodes=n_ref,
        trials=len(summaries),
    )


def aggregate_stats(config, realizations, max_hops=None, max_sources=None):
    """Pool interior hop statistics over already-sampled realizations."""
    summaries = [_summarize(real, max_hops, max_sources, config.seed)
                 for real in realizations]
    if not summaries:
        raise ValueError("need at least one realization")
    return _stats_from_summaries(config, summaries)


def simulate(config, max_hops=None, max_sources=None, dump_path=None):
    """Run all trials of a config and pool their hop statistics.

    Trials are dispatched to a thread pool sized by DIRNET_THREADS (or the
    hardware) and merged in trial order, so the result is identical for any
    worker count.  ``dump_path`` appends one JSON object per trial with the
    sampled geometry and edge list.
    """
    def one_trial(trial):
        real = sample_realization(config, trial, max_hops=max_hops)
        summary = _summarize(real, max_hops, max_sources, config.seed)
        record = real.dump_record(config.seed) if dump_path else None
        return summary, record

    workers = min(thread_count(), config.trials)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(one_trial, range(config.trials)))
    else:
        results = [one_trial(t) for t in range(config.trials)]

    if dump_path:
        with open(dump_path, "w", encoding="utf-8") as fh:
            for _, record in results:
                fh.write(json.dumps(record) + "\n")
    return _stats_from_summaries(config, [s for s, _ in results])
