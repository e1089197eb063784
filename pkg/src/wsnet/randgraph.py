"""Seeded Erdős–Rényi G(N, L) baselines and their ensemble statistics"""

import logging
import math
from dataclasses import dataclass
from functools import partial

import networkx as nx
import numpy as np
from fastcore.utils import ifnone

from .config import EmptyScopeError, pmap, ws_cfg
from .graph import Graph
from .netstats import Scope, distance_stats, largest_component, transitivity

__all__ = ["MeanStd", "ErEnsembleStats", "er_gnm", "er_distance_estimate", "er_ensemble_stats"]

logger = logging.getLogger(__name__)


def er_gnm(n: int, l: int, seed: int) -> Graph:
    "Directed simple graph with exactly `l` edges drawn uniformly from the n(n-1) ordered non-loop pairs"
    if n < 0 or not 0 <= l <= n * (n - 1):
        raise ValueError(f"Cannot place {l} directed edges on {n} nodes (max {max(n * (n - 1), 0)})")
    return Graph.from_networkx(nx.gnm_random_graph(n, l, seed=seed, directed=True))


def er_distance_estimate(n: int, l: int) -> float | None:
    "Closed-form ln N / ln(L/N) reference distance; None when the mean out-degree is at most 1"
    if n < 2 or l <= n:
        return None
    return math.log(n) / math.log(l / n)


@dataclass(frozen=True)
class MeanStd:
    mean: float
    std: float

    def __str__(self) -> str:
        return f"{self.mean:.4f} ± {self.std:.4f}"

    @classmethod
    def of(cls, values) -> "MeanStd":
        a = np.asarray(values, dtype=float)
        return cls(float(a.mean()), float(a.std(ddof=1)) if a.size > 1 else 0.0)


@dataclass(frozen=True)
class ErEnsembleStats:
    """Average distance and transitivity over `samples` G(n, l) draws, measured on each draw's largest component.

    Sample `i` uses seed `seed + i`; `skipped` counts draws without a linked component.
    """

    n: int
    l: int
    samples: int
    seed: int
    average_distance: MeanStd
    transitivity: MeanStd
    diameter: MeanStd
    skipped: int = 0
    directed: bool = True
    analytic_distance: float | None = None


def _measure(n: int, l: int, directed: bool, seed: int) -> tuple[float, float, int] | None:
    g = er_gnm(n, l, seed)
    try:
        lc = largest_component(g)
        dist = distance_stats(lc, Scope.WHOLE_GRAPH, directed, n_workers=0)
    except EmptyScopeError:
        return None
    return dist.mean, transitivity(lc), dist.diameter


def er_ensemble_stats(
    n: int,
    l: int,
    samples: int | None = None,  # Number of draws, defaults to `ws_cfg.samples`
    seed: int | None = None,  # Base seed, defaults to `ws_cfg.seed`
    directed: bool = True,  # Directed distances, the convention used for networks
    n_workers: int | None = None,
) -> ErEnsembleStats:
    samples, seed = ifnone(samples, ws_cfg.samples), ifnone(seed, ws_cfg.seed)
    if samples < 1:
        raise ValueError("samples must be >= 1")
    if not 0 <= l <= n * (n - 1):
        raise ValueError(f"Cannot place {l} directed edges on {n} nodes")
    seeds = [seed + i for i in range(samples)]
    results = pmap(partial(_measure, n, l, directed), seeds, n_workers)
    kept = [o for o in results if o is not None]
    skipped = samples - len(kept)
    if skipped:
        logger.warning("ER ensemble (n=%d, l=%d): %d of %d samples had no linked component", n, l, skipped, samples)
    if not kept:
        raise EmptyScopeError(f"No ER sample with n={n}, l={l} has a linked component")
    dists, trans, diams = zip(*kept)
    logger.debug("ER ensemble (n=%d, l=%d, seed=%d): %d samples measured", n, l, seed, len(kept))
    return ErEnsembleStats(
        n=n,
        l=l,
        samples=samples,
        seed=seed,
        average_distance=MeanStd.of(dists),
        transitivity=MeanStd.of(trans),
        diameter=MeanStd.of(diams),
        skipped=skipped,
        directed=directed,
        analytic_distance=er_distance_estimate(n, l),
    )
