"""Directed simple graph substrate (`Graph`) with component, traversal, triangle and degree primitives, plus exports"""

import logging
from collections.abc import Iterable
from dataclasses import dataclass

import networkx as nx
from fastcore.utils import Path, patch

from .config import SelfLoopError, UnknownNodeError

__all__ = [
    "Graph",
    "Degrees",
    "ComponentDecomposition",
    "TriangleCensus",
    "weak_components",
    "bfs_distances",
    "triangle_census",
    "degrees",
    "induced_subgraph",
    "undirected_projection",
    "density",
]

logger = logging.getLogger(__name__)


class Graph:
    """A simple graph with stable string labels.

    Nodes are indexed in insertion order; the underlying `networkx` graph uses those indices as node keys.
    Edge insertion is idempotent and self-loops are rejected. `directed=False` is only used for projections.
    """

    def __init__(self, labels: Iterable[str] = (), edges: Iterable[tuple[str, str]] = (), directed: bool = True):
        self.directed = directed
        self._g = nx.DiGraph() if directed else nx.Graph()
        self.labels: list[str] = []
        self._index: dict[str, int] = {}
        for o in labels:
            self.add_node(o)
        for u, v in edges:
            self.add_edge(u, v)

    @classmethod
    def from_networkx(cls, g: nx.Graph) -> "Graph":
        "Wrap an integer-keyed networkx graph, labelling node `i` as `str(i)`"
        res = cls(directed=g.is_directed())
        for o in sorted(g.nodes):
            res.add_node(str(o))
        res._g.add_edges_from((res._index[str(u)], res._index[str(v)]) for u, v in g.edges)
        return res

    def add_node(self, label: str) -> int:
        if label not in self._index:
            self._index[label] = len(self.labels)
            self.labels.append(label)
            self._g.add_node(self._index[label])
        return self._index[label]

    def add_edge(self, u: str, v: str) -> tuple[int, int]:
        if u == v:
            raise SelfLoopError(f"Self-loop on {u!r}")
        iu, iv = self.add_node(u), self.add_node(v)
        self._g.add_edge(iu, iv)
        return iu, iv

    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise UnknownNodeError(label) from None

    def __contains__(self, label: str) -> bool:
        return label in self._index

    def __len__(self) -> int:
        return len(self.labels)

    def __repr__(self) -> str:
        kind = "directed" if self.directed else "undirected"
        return f"Graph({kind}, n={self.n}, m={self.m})"

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def m(self) -> int:
        return self._g.number_of_edges()

    @property
    def nx_graph(self) -> nx.Graph:
        "Read-only view of the index-keyed networkx graph"
        return self._g.copy(as_view=True)

    def edge_set(self) -> set[tuple[str, str]]:
        return {(self.labels[u], self.labels[v]) for u, v in self._g.edges}

    def edges(self) -> list[tuple[str, str]]:
        "Edges as label pairs, label-sorted"
        return sorted(self.edge_set())

    def has_edge(self, u: str, v: str) -> bool:
        return u in self and v in self and self._g.has_edge(self._index[u], self._index[v])

    def out_neighbors(self, label: str) -> list[str]:
        succ = self._g.successors if self.directed else self._g.neighbors
        return sorted(self.labels[o] for o in succ(self.index(label)))

    def in_neighbors(self, label: str) -> list[str]:
        pred = self._g.predecessors if self.directed else self._g.neighbors
        return sorted(self.labels[o] for o in pred(self.index(label)))

    def undirected_view(self) -> nx.Graph:
        "Undirected copy (antiparallel pairs merged) for directed graphs, the graph itself otherwise"
        return nx.Graph(self._g) if self.directed else self._g

    def view(self, directed: bool = True) -> nx.Graph:
        "Read-only index-keyed networkx graph, projected to undirected when `directed` is False"
        return self.nx_graph if directed or not self.directed else nx.freeze(self.undirected_view())


@dataclass(frozen=True)
class Degrees:
    "Degree sequences aligned with node index order; `total` is `in_ + out`"

    in_: tuple[int, ...]
    out: tuple[int, ...]
    total: tuple[int, ...]


def degrees(g: Graph) -> Degrees:
    v = g.nx_graph
    if not g.directed:
        d = tuple(v.degree(i) for i in range(g.n))
        return Degrees(d, d, d)
    ins = tuple(v.in_degree(i) for i in range(g.n))
    outs = tuple(v.out_degree(i) for i in range(g.n))
    return Degrees(ins, outs, tuple(a + b for a, b in zip(ins, outs)))


@dataclass(frozen=True)
class ComponentDecomposition:
    """Weak components: `assignment` maps each label to its component id (the smallest node index it contains),
    `sizes` maps component ids to node counts, `isolated` holds the zero-degree labels."""

    assignment: dict[str, int]
    sizes: dict[int, int]
    isolated: frozenset[str]

    def members(self, cid: int) -> list[str]:
        return sorted(o for o, c in self.assignment.items() if c == cid)

    def by_size(self) -> list[int]:
        "Component ids, largest first; ties go to the smaller id"
        return sorted(self.sizes, key=lambda c: (-self.sizes[c], c))


def weak_components(g: Graph) -> ComponentDecomposition:
    "Components of `g` ignoring edge direction"
    v = g.nx_graph
    comps = nx.weakly_connected_components(v) if g.directed else nx.connected_components(v)
    assignment, sizes = {}, {}
    for comp in comps:
        cid = min(comp)
        sizes[cid] = len(comp)
        for i in comp:
            assignment[g.labels[i]] = cid
    isolated = frozenset(g.labels[i] for i in v.nodes if v.degree(i) == 0)
    return ComponentDecomposition(dict(sorted(assignment.items())), dict(sorted(sizes.items())), isolated)


def bfs_distances(g: Graph, source: str, directed: bool = True) -> dict[str, int | None]:
    "Shortest hop counts from `source` to every node; unreachable nodes map to None"
    src = g.index(source)
    dist = nx.single_source_shortest_path_length(g.view(directed), src)
    return {g.labels[i]: dist.get(i) for i in range(g.n)}


@dataclass(frozen=True)
class TriangleCensus:
    triangles: int
    connected_triples: int


def triangle_census(g: Graph) -> TriangleCensus:
    "Triangles and connected triples of the undirected projection"
    u = g.undirected_view()
    triangles = sum(nx.triangles(u).values()) // 3
    triples = sum(d * (d - 1) // 2 for _, d in u.degree())
    return TriangleCensus(triangles, triples)


def induced_subgraph(g: Graph, nodes: Iterable[str]) -> Graph:
    "The subgraph on `nodes` keeping exactly their internal edges, in the original node order"
    keep = sorted(g.index(o) for o in set(nodes))
    res = Graph(directed=g.directed)
    for i in keep:
        res.add_node(g.labels[i])
    sub = g.nx_graph.subgraph(keep)
    for u, v in sub.edges:
        res.add_edge(g.labels[u], g.labels[v])
    return res


def undirected_projection(g: Graph) -> Graph:
    "Undirected graph on the same labels; antiparallel edge pairs merge into one edge"
    res = Graph(g.labels, directed=False)
    for u, v in g.undirected_view().edges:
        res.add_edge(g.labels[u], g.labels[v])
    return res


def density(g: Graph) -> float:
    "L / (N(N-1)) for directed graphs, 2L / (N(N-1)) for undirected ones; 0 below two nodes"
    if g.n < 2:
        return 0.0
    pairs = g.n * (g.n - 1)
    return g.m / pairs if g.directed else 2 * g.m / pairs


# Exports


def _dot_id(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


@patch
def to_edge_list(self: Graph) -> str:
    "One `src<TAB>dst` line per edge, label-sorted"
    return "".join(f"{u}\t{v}\n" for u, v in self.edges())


@patch
def to_node_table(self: Graph) -> str:
    "One `index<TAB>label` line per node, in index order"
    return "".join(f"{i}\t{o}\n" for i, o in enumerate(self.labels))


@patch
def to_dot(self: Graph, name: str = "network", trim: bool = False) -> str:
    "Graphviz DOT text; `trim` leaves out isolated nodes"
    arrow = "->" if self.directed else "--"
    kind = "digraph" if self.directed else "graph"
    isolated = weak_components(self).isolated if trim else frozenset()
    lines = [f"{kind} {_dot_id(name)} {{"]
    lines += [f"  {_dot_id(o)};" for o in sorted(self.labels) if o not in isolated]
    lines += [f"  {_dot_id(u)} {arrow} {_dot_id(v)};" for u, v in self.edges()]
    lines.append("}")
    return "\n".join(lines) + "\n"


@patch
def export(self: Graph, prefix: str | Path, trim: bool = False) -> list[Path]:
    "Write `<prefix>.edges.tsv`, `<prefix>.nodes.tsv` and `<prefix>.dot`"
    prefix = Path(prefix)
    prefix.parent.mkdir(parents=True, exist_ok=True)
    out = []
    for suffix, text in (
        (".edges.tsv", self.to_edge_list()),
        (".nodes.tsv", self.to_node_table()),
        (".dot", self.to_dot(prefix.name, trim=trim)),
    ):
        p = prefix.with_name(prefix.name + suffix)
        p.write_bytes(text.encode("utf-8"))
        out.append(p)
    logger.info("Exported %r to %s.*", self, prefix)
    return out
