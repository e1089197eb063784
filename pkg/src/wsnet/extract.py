"""Dependency and interaction network construction from a `Corpus`"""

import logging
from collections import defaultdict
from dataclasses import dataclass, field
from enum import Enum
from functools import reduce

from .corpus import Corpus
from .graph import Graph, weak_components
from .matching import KeyFunction, MatchKey, MatchMode, match_key, op_keys

__all__ = [
    "InteractionMode",
    "DependencyNetwork",
    "InteractionNetwork",
    "build_dependency",
    "build_interaction",
    "build_network",
    "provenance_lines",
    "isolated_operations_in_dependency",
]

logger = logging.getLogger(__name__)


class InteractionMode(str, Enum):
    FULL = "full"
    PARTIAL = "partial"

    def __str__(self) -> str:
        return self.value


@dataclass
class DependencyNetwork:
    """Parameter network: one node per distinct `MatchKey`, an edge from every input to every output of an operation.

    `provenance` maps each edge to the ids of the operations that induced it; `self_loops_dropped` counts the
    (operation, key) pairs where the same key sat on both sides of an operation.
    """

    graph: Graph
    mode: MatchMode
    keys: dict[str, MatchKey] = field(default_factory=dict)
    provenance: dict[tuple[str, str], tuple[str, ...]] = field(default_factory=dict)
    self_loops_dropped: int = 0


@dataclass
class InteractionNetwork:
    "Operation network: an edge i→j when the outputs of i cover all (full) or some (partial) inputs of j"

    graph: Graph
    mode: MatchMode
    interaction: InteractionMode


def build_dependency(corpus: Corpus, mode: MatchMode, key_fn: KeyFunction = match_key) -> DependencyNetwork:
    mode = MatchMode(mode)
    g, keys, prov, loops = Graph(), {}, defaultdict(list), 0
    for op in corpus.operations:
        ins = [key_fn(p, mode, op.id) for p in op.inputs]
        outs = [key_fn(p, mode, op.id) for p in op.outputs]
        for k in (*ins, *outs):
            keys.setdefault(k.key, k)
            g.add_node(k.key)
        for i in dict.fromkeys(ins):
            for o in dict.fromkeys(outs):
                if i == o:
                    loops += 1
                    continue
                g.add_edge(i.key, o.key)
                if op.id not in prov[i.key, o.key]:
                    prov[i.key, o.key].append(op.id)
    if loops:
        logger.info("Dropped %d dependency self-loops", loops)
    logger.info("Built %s dependency network: %d nodes, %d edges", mode, g.n, g.m)
    return DependencyNetwork(g, mode, keys, {k: tuple(v) for k, v in sorted(prov.items())}, loops)


def build_interaction(
    corpus: Corpus,
    mode: MatchMode,
    interaction: InteractionMode = InteractionMode.FULL,
    key_fn: KeyFunction = match_key,
) -> InteractionNetwork:
    mode, interaction = MatchMode(mode), InteractionMode(interaction)
    ops = corpus.operations
    g = Graph(op.id for op in ops)
    keyed = {op.id: op_keys(op, mode, key_fn) for op in ops}
    producers: dict[MatchKey, set[str]] = defaultdict(set)
    for op_id, (_, outs) in keyed.items():
        for k in outs:
            producers[k].add(op_id)
    combine = set.intersection if interaction is InteractionMode.FULL else set.union
    for j in ops:
        ins = keyed[j.id][0]
        # an operation without inputs never receives an edge
        if not ins:
            continue
        sources = reduce(combine, (producers.get(k, set()) for k in ins))
        for i in sorted(sources - {j.id}):
            g.add_edge(i, j.id)
    logger.info("Built %s %s interaction network: %d nodes, %d edges", mode, interaction, g.n, g.m)
    return InteractionNetwork(g, mode, interaction)


def build_network(
    corpus: Corpus,
    model: str = "dependency",  # "dependency" or "interaction"
    mode: MatchMode = MatchMode.SYNTACTIC,
    interaction: InteractionMode = InteractionMode.FULL,
) -> DependencyNetwork | InteractionNetwork:
    if model == "dependency":
        return build_dependency(corpus, mode)
    if model == "interaction":
        return build_interaction(corpus, mode, interaction)
    raise ValueError(f"Unknown network model: {model!r}")


def provenance_lines(net: DependencyNetwork) -> str:
    "One `src<TAB>dst<TAB>opId` line per (edge, inducing operation), sorted"
    return "".join(f"{u}\t{v}\t{o}\n" for (u, v), ops in sorted(net.provenance.items()) for o in sorted(ops))


def isolated_operations_in_dependency(corpus: Corpus, mode: MatchMode) -> dict[str, bool]:
    """For each operation isolated in the full interaction network, whether all its parameters still sit
    inside non-trivial dependency-network components."""
    inter = weak_components(build_interaction(corpus, mode, InteractionMode.FULL).graph).isolated
    dep = build_dependency(corpus, mode)
    dep_isolated = weak_components(dep.graph).isolated
    res = {}
    for op in corpus.operations:
        if op.id not in inter:
            continue
        ins, outs = op_keys(op, mode)
        res[op.id] = all(k.key not in dep_isolated for k in ins | outs)
    return dict(sorted(res.items()))
