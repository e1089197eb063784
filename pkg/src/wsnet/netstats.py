"""Topology measurements: component organisation, small-world distances, transitivity and degree correlation"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from functools import partial
from typing import TYPE_CHECKING, Any

import networkx as nx
import numpy as np

from .config import BaselineMismatchError, EmptyScopeError, pmap
from .graph import Graph, degrees, induced_subgraph, triangle_census, undirected_projection, weak_components

if TYPE_CHECKING:
    from .randgraph import ErEnsembleStats

__all__ = [
    "Scope",
    "ComponentSummary",
    "DistanceStats",
    "SmallWorld",
    "TopologyReport",
    "component_summary",
    "component_members",
    "largest_component",
    "scoped",
    "distance_stats",
    "average_distance",
    "diameter",
    "transitivity",
    "degree_correlation",
    "small_world_assessment",
    "hubs_and_authorities",
    "topology_report",
]

logger = logging.getLogger(__name__)


class Scope(str, Enum):
    LARGEST_COMPONENT = "largest"
    WHOLE_GRAPH = "whole"

    def __str__(self) -> str:
        return self.value


def _ratio(a: float, b: float) -> float:
    return a / b if b else 0.0


@dataclass(frozen=True)
class ComponentSummary:
    """Isolated nodes, small components and the largest component of a network.

    Node fractions are given against two bases: all nodes (`*_fraction`) and non-isolated nodes
    (`*_fraction_trimmed`).
    """

    nodes: int
    links: int
    isolated: int
    isolated_fraction: float
    isolated_fraction_trimmed: float
    small_components: int
    small_size_min: int
    small_size_max: int
    largest_size: int
    largest_links: int
    largest_node_fraction: float
    largest_node_fraction_trimmed: float
    largest_link_fraction: float
    largest_density: float


def _non_isolated_components(g: Graph) -> list[list[str]]:
    comps = weak_components(g)
    return [comps.members(c) for c in comps.by_size() if comps.sizes[c] > 1]


def component_members(g: Graph) -> list[list[str]]:
    "Label lists of every component with at least one link, largest first"
    return _non_isolated_components(g)


def largest_component(g: Graph) -> Graph:
    "The largest weakly connected component with at least one link, as an induced subgraph"
    comps = _non_isolated_components(g)
    if not comps:
        raise EmptyScopeError("Graph has no component with a link")
    return induced_subgraph(g, comps[0])


def scoped(g: Graph, scope: Scope = Scope.LARGEST_COMPONENT) -> Graph:
    return largest_component(g) if Scope(scope) is Scope.LARGEST_COMPONENT else g


def component_summary(g: Graph) -> ComponentSummary:
    comps = weak_components(g)
    isolated = len(comps.isolated)
    trimmed = g.n - isolated
    linked = _non_isolated_components(g)
    largest = induced_subgraph(g, linked[0]) if linked else Graph()
    small = [len(c) for c in linked[1:]]
    return ComponentSummary(
        nodes=g.n,
        links=g.m,
        isolated=isolated,
        isolated_fraction=_ratio(isolated, g.n),
        isolated_fraction_trimmed=_ratio(isolated, trimmed),
        small_components=len(small),
        small_size_min=min(small, default=0),
        small_size_max=max(small, default=0),
        largest_size=largest.n,
        largest_links=largest.m,
        largest_node_fraction=_ratio(largest.n, g.n),
        largest_node_fraction_trimmed=_ratio(largest.n, trimmed),
        largest_link_fraction=_ratio(largest.m, g.m),
        largest_density=largest.m / (largest.n * (largest.n - 1)) if largest.n > 1 else 0.0,
    )


@dataclass(frozen=True)
class DistanceStats:
    "Hop distances over ordered node pairs (u ≠ v); unreachable pairs are counted but excluded from the mean"

    mean: float
    diameter: int
    pairs_counted: int
    unreachable_pairs: int
    directed: bool
    scope: Scope


def _source_census(view: nx.Graph, src: int) -> tuple[int, int, int]:
    dist = nx.single_source_shortest_path_length(view, src)
    return sum(dist.values()), len(dist) - 1, max(dist.values())


def distance_stats(
    g: Graph,
    scope: Scope = Scope.LARGEST_COMPONENT,
    directed: bool = True,
    n_workers: int | None = None,
) -> DistanceStats:
    "Mean and maximum shortest-path length over reachable ordered pairs within `scope`"
    sub = scoped(g, scope)
    view = sub.view(directed)
    census = pmap(partial(_source_census, view), view.nodes, n_workers)
    total = sum(o[0] for o in census)
    reached = sum(o[1] for o in census)
    if not reached:
        raise EmptyScopeError(f"No reachable node pair in {scope} scope")
    return DistanceStats(
        mean=total / reached,
        diameter=max(o[2] for o in census),
        pairs_counted=reached,
        unreachable_pairs=sub.n * (sub.n - 1) - reached,
        directed=directed,
        scope=Scope(scope),
    )


def average_distance(g: Graph, scope: Scope = Scope.LARGEST_COMPONENT, directed: bool = True) -> DistanceStats:
    return distance_stats(g, scope, directed)


def diameter(g: Graph, scope: Scope = Scope.LARGEST_COMPONENT, directed: bool = True) -> int:
    return distance_stats(g, scope, directed).diameter


def transitivity(g: Graph) -> float:
    "3 × triangles / connected triples on the undirected projection; 0 without triples"
    c = triangle_census(g)
    return _ratio(3 * c.triangles, c.connected_triples)


def degree_correlation(g: Graph) -> float | None:
    """Newman's degree correlation: Pearson correlation of endpoint total degrees over the undirected projection's
    edges, each edge counted in both orientations. None when either side has zero variance."""
    if g.m == 0:
        raise EmptyScopeError("Degree correlation is undefined on an edgeless graph")
    deg = np.asarray(degrees(g).total, dtype=float)
    proj = undirected_projection(g)
    pairs = np.array([(proj.index(u), proj.index(v)) for u, v in proj.edges()])
    x = np.concatenate([deg[pairs[:, 0]], deg[pairs[:, 1]]])
    y = np.concatenate([deg[pairs[:, 1]], deg[pairs[:, 0]]])
    if np.isclose(x.std(), 0) or np.isclose(y.std(), 0):
        return None
    return float(np.clip(np.corrcoef(x, y)[0, 1], -1.0, 1.0))


@dataclass(frozen=True)
class SmallWorld:
    network_distance: float
    er_distance: float
    verdict: bool


def small_world_assessment(
    g: Graph, baseline: "ErEnsembleStats", scope: Scope = Scope.LARGEST_COMPONENT, directed: bool = True
) -> SmallWorld:
    "The network is small-world when its average distance does not exceed the ER baseline's"
    sub = scoped(g, scope)
    if (sub.n, sub.m) != (baseline.n, baseline.l):
        raise BaselineMismatchError(f"Baseline is for (N={baseline.n}, L={baseline.l}), network is (N={sub.n}, L={sub.m})")
    net = distance_stats(sub, Scope.WHOLE_GRAPH, directed).mean
    er = baseline.average_distance.mean
    return SmallWorld(net, er, net <= er)


def hubs_and_authorities(g: Graph, k: int = 5) -> dict[str, list[tuple[str, int]]]:
    "Top-`k` nodes by out-degree (hubs) and by in-degree (authorities); ties broken by label"
    d = degrees(g)

    def _top(seq):
        ranked = sorted(zip(g.labels, seq), key=lambda o: (-o[1], o[0]))
        return [o for o in ranked[:k] if o[1] > 0]

    return {"hubs": _top(d.out), "authorities": _top(d.in_)}


@dataclass
class TopologyReport:
    "Everything measured on one network; distances, transitivity and correlation refer to the largest component"

    name: str
    components: ComponentSummary
    distances: DistanceStats | None
    transitivity: float
    degree_correlation: float | None
    hubs: dict[str, list[tuple[str, int]]] = field(default_factory=dict)
    er_baseline: "ErEnsembleStats | None" = None
    small_world: SmallWorld | None = None
    conventions: dict[str, Any] = field(default_factory=dict)


def topology_report(
    g: Graph,
    name: str = "network",
    directed: bool = True,
    baseline: "ErEnsembleStats | None" = None,
    hubs: int = 5,
) -> TopologyReport:
    "Component summary of `g` plus the property suite measured on its largest component"
    summary = component_summary(g)
    conventions = {"scope": str(Scope.LARGEST_COMPONENT), "directed": directed, "pairs": "ordered-reachable"}
    if not summary.largest_size:
        logger.warning("%s has no linked component; only the component summary is reported", name)
        return TopologyReport(name, summary, None, 0.0, None, conventions=conventions)
    lc = largest_component(g)
    dist = distance_stats(lc, Scope.WHOLE_GRAPH, directed)
    dist = DistanceStats(dist.mean, dist.diameter, dist.pairs_counted, dist.unreachable_pairs, directed, Scope.LARGEST_COMPONENT)
    sw = small_world_assessment(lc, baseline, Scope.WHOLE_GRAPH, directed) if baseline else None
    return TopologyReport(
        name=name,
        components=summary,
        distances=dist,
        transitivity=transitivity(lc),
        degree_correlation=degree_correlation(lc),
        hubs=hubs_and_authorities(lc, hubs),
        er_baseline=baseline,
        small_world=sw,
        conventions=conventions,
    )
