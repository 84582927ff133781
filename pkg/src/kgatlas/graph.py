"""Immutable multi-edge directed knowledge graph with degree statistics,
degree-threshold filtering, keyword search, k-hop expansion, parallel-edge
curvature fanning, and degree-scaled node radii.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from typing import Dict, Iterable, List, NamedTuple, Optional, Sequence, Tuple

from kgatlas.errors import DuplicateTripleError, UnknownNodeError
from kgatlas.model import AbbrevTable, Triplet, normalize_label

DEFAULT_BASE_CURVATURE = 0.15
DEFAULT_RADIUS_MIN = 5.0
DEFAULT_RADIUS_MAX = 20.0


class Node(NamedTuple):
    id: int
    label: str
    degree: int
    filtered_degree: Optional[int] = None


class Edge(NamedTuple):
    source: int
    target: int
    relation: str
    abbrev: str = ""
    multiplicity: int = 1
    curvature: float = 0.0


@dataclass(frozen=True)
class KnowledgeGraph:
    nodes: Tuple[Node, ...]
    edges: Tuple[Edge, ...]
    adjacency: Tuple[Tuple[int, ...], ...]  # node id -> incident edge indices

    @property
    def node_count(self) -> int:
        return len(self.nodes)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @property
    def max_degree(self) -> int:
        return max((n.degree for n in self.nodes), default=0)

    def node_by_label(self, label: str) -> Optional[Node]:
        for n in self.nodes:
            if n.label == label:
                return n
        return None


@dataclass(frozen=True)
class GraphStats:
    node_count: int
    edge_count: int
    degree_distribution: Dict[int, int]
    max_degree: int
    clustering_coefficient: float

    def to_dict(self) -> dict:
        return {
            "node_count": self.node_count,
            "edge_count": self.edge_count,
            "degree_distribution": {str(k): v for k, v in sorted(self.degree_distribution.items())},
            "max_degree": self.max_degree,
            "clustering_coefficient": self.clustering_coefficient,
        }


def edge_group_curvatures(
    directions: Sequence[bool], base: float = DEFAULT_BASE_CURVATURE
) -> List[float]:
    """Curvatures for one parallel-edge group, given per-edge direction flags
    (True = runs along the group's reference direction).

    Edges are assumed already ordered (forward before reverse). Edge i of n
    gets base * (i - (n-1)/2); the sign flips for reverse edges so the arc
    renders on a consistent side and no two edges share a rendered arc.
    """
    n = len(directions)
    out = []
    for i, forward in enumerate(directions):
        value = base * (i - (n - 1) / 2)
        out.append(value if forward else -value)
    return out


def node_radius(
    degree: int,
    max_degree: int,
    r_min: float = DEFAULT_RADIUS_MIN,
    r_max: float = DEFAULT_RADIUS_MAX,
) -> float:
    """Degree-scaled radius: area grows linearly with degree."""
    if r_min > r_max:
        raise ValueError("r_min must be <= r_max")
    if degree > max_degree:
        raise ValueError("degree exceeds max_degree")
    if max_degree == 0:
        return r_min
    return r_min + (r_max - r_min) * math.sqrt(degree / max_degree)


def build_graph(
    triples: List[Triplet],
    abbrev: Optional[AbbrevTable] = None,
    base_curvature: float = DEFAULT_BASE_CURVATURE,
) -> KnowledgeGraph:
    """Construct the graph from deduplicated triples.

    Nodes are the distinct subjects and objects in first-appearance order;
    each triple becomes one directed edge. Duplicate keys signal a pipeline
    bypass and are fatal.
    """
    table = abbrev or AbbrevTable()
    seen_keys = set()
    ids: Dict[str, int] = {}
    labels: List[str] = []
    raw: List[Tuple[int, int, str, str, int]] = []

    def node_id(label: str) -> int:
        if label not in ids:
            ids[label] = len(labels)
            labels.append(label)
        return ids[label]

    for t in triples:
        key = t.key
        if key in seen_keys:
            raise DuplicateTripleError(f"duplicate triple key {key}")
        seen_keys.add(key)
        relation = normalize_label(t.predicate)
        raw.append((
            node_id(t.subject.strip()),
            node_id(t.object.strip()),
            relation,
            table.entries.get(relation, ""),
            t.multiplicity,
        ))

    # Fan parallel edges before constructing the immutable records.
    groups: Dict[Tuple[int, int], List[int]] = {}
    for idx, (s, o, _r, _a, _m) in enumerate(raw):
        groups.setdefault((min(s, o), max(s, o)), []).append(idx)
    curvature = [0.0] * len(raw)
    for (lo, _hi), members in groups.items():
        if len(members) == 1:
            continue  # singleton groups stay straight (curvature 0)
        ordered = sorted(members, key=lambda i: (raw[i][0] != lo, raw[i][2], i))
        directions = [raw[i][0] == lo for i in ordered]
        for i, value in zip(ordered, edge_group_curvatures(directions, base_curvature)):
            curvature[i] = value

    edges = [
        Edge(source=s, target=o, relation=r, abbrev=a, multiplicity=m,
             curvature=curvature[idx])
        for idx, (s, o, r, a, m) in enumerate(raw)
    ]

    degree = [0] * len(labels)
    adjacency: List[List[int]] = [[] for _ in labels]
    for idx, e in enumerate(edges):
        degree[e.source] += 1
        degree[e.target] += 1
        adjacency[e.source].append(idx)
        if e.target != e.source:
            adjacency[e.target].append(idx)

    nodes = tuple(
        Node(id=i, label=labels[i], degree=degree[i]) for i in range(len(labels))
    )
    return KnowledgeGraph(
        nodes=nodes,
        edges=tuple(edges),
        adjacency=tuple(tuple(a) for a in adjacency),
    )


def _induced_subgraph(
    graph: KnowledgeGraph, keep: Iterable[int]
) -> Tuple[List[Node], List[Edge]]:
    """Induced nodes and edges (ids preserved) on a kept node id set."""
    keep_set = set(keep)
    nodes = [n for n in graph.nodes if n.id in keep_set]
    edges = [
        e for e in graph.edges if e.source in keep_set and e.target in keep_set
    ]
    return nodes, edges


def _rebuild(nodes: List[Node], edges: List[Edge]) -> KnowledgeGraph:
    """Pack an induced subgraph, reindexing node ids but keeping original
    degrees (the new incidence count lands in filtered_degree)."""
    remap = {n.id: i for i, n in enumerate(nodes)}
    new_edges = [
        e._replace(source=remap[e.source], target=remap[e.target]) for e in edges
    ]
    filtered = [0] * len(nodes)
    adjacency: List[List[int]] = [[] for _ in nodes]
    for idx, e in enumerate(new_edges):
        filtered[e.source] += 1
        filtered[e.target] += 1
        adjacency[e.source].append(idx)
        if e.target != e.source:
            adjacency[e.target].append(idx)
    new_nodes = tuple(
        Node(id=i, label=n.label, degree=n.degree, filtered_degree=filtered[i])
        for i, n in enumerate(nodes)
    )
    return KnowledgeGraph(
        nodes=new_nodes,
        edges=tuple(new_edges),
        adjacency=tuple(tuple(a) for a in adjacency),
    )


def filter_by_degree(graph: KnowledgeGraph, min_degree: int) -> KnowledgeGraph:
    """Single-pass threshold filter on original-graph degrees (not k-core)."""
    keep = [n.id for n in graph.nodes if n.degree >= min_degree]
    nodes, edges = _induced_subgraph(graph, keep)
    return _rebuild(nodes, edges)


def search(graph: KnowledgeGraph, query: str) -> List[int]:
    """Node ids whose label contains the query, case-insensitively, sorted by
    descending degree then label. Empty query matches nothing."""
    q = query.strip().lower()
    if not q:
        return []
    hits = [n for n in graph.nodes if q in n.label.lower()]
    hits.sort(key=lambda n: (-n.degree, n.label))
    return [n.id for n in hits]


def expand_neighborhood(
    graph: KnowledgeGraph, seeds: List[int], depth: int
) -> KnowledgeGraph:
    """Induced subgraph on nodes within `depth` undirected hops of any seed."""
    valid = {n.id for n in graph.nodes}
    for s in seeds:
        if s not in valid:
            raise UnknownNodeError(f"node id {s} not in graph")
    dist = {s: 0 for s in seeds}
    queue = deque(seeds)
    while queue:
        u = queue.popleft()
        if dist[u] == depth:
            continue
        for edge_idx in graph.adjacency[u]:
            e = graph.edges[edge_idx]
            v = e.target if e.source == u else e.source
            if v not in dist:
                dist[v] = dist[u] + 1
                queue.append(v)
    nodes, edges = _induced_subgraph(graph, dist.keys())
    return _rebuild(nodes, edges)


def _simple_neighbors(graph: KnowledgeGraph) -> List[set]:
    """Undirected simple projection: multi-edges collapsed, self-loops gone."""
    neighbors: List[set] = [set() for _ in graph.nodes]
    for e in graph.edges:
        if e.source != e.target:
            neighbors[e.source].add(e.target)
            neighbors[e.target].add(e.source)
    return neighbors


def clustering_coefficient(graph: KnowledgeGraph) -> float:
    """Global average of local clustering coefficients; nodes with fewer than
    two distinct neighbors contribute 0. Empty graph yields 0."""
    if not graph.nodes:
        return 0.0
    neighbors = _simple_neighbors(graph)
    total = 0.0
    for nbrs in neighbors:
        k = len(nbrs)
        if k < 2:
            continue
        links = 0
        nbr_list = sorted(nbrs)
        for i, u in enumerate(nbr_list):
            for v in nbr_list[i + 1 :]:
                if v in neighbors[u]:
                    links += 1
        total += 2.0 * links / (k * (k - 1))
    return total / len(graph.nodes)


def compute_stats(graph: KnowledgeGraph) -> GraphStats:
    distribution: Dict[int, int] = {}
    for n in graph.nodes:
        distribution[n.degree] = distribution.get(n.degree, 0) + 1
    return GraphStats(
        node_count=graph.node_count,
        edge_count=graph.edge_count,
        degree_distribution=distribution,
        max_degree=graph.max_degree,
        clustering_coefficient=clustering_coefficient(graph),
    )


def graph_to_json(
    graph: KnowledgeGraph,
    r_min: float = DEFAULT_RADIUS_MIN,
    r_max: float = DEFAULT_RADIUS_MAX,
) -> dict:
    """JSON export consumed by the service and the explorer UI."""
    max_deg = graph.max_degree
    return {
        "nodes": [
            {
                "id": n.id,
                "label": n.label,
                "degree": n.degree,
                "radius": node_radius(n.degree, max_deg, r_min, r_max),
            }
            for n in graph.nodes
        ],
        "links": [
            {
                "source": e.source,
                "target": e.target,
                "relation": e.relation,
                "abbrev": e.abbrev,
                "multiplicity": e.multiplicity,
                "curvature": e.curvature,
            }
            for e in graph.edges
        ],
    }
