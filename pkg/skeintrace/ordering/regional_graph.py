#!/usr/bin/env python3
"""
Narrow Regions and the Regional Graph

A narrow region is a small region whose boundary contains an inner arc
segment (an arc piece bounded by two junctures). The regional graph has one
vertex per narrow region and one edge per inner arc segment, joining the two
narrow regions on either side of it.
"""

from dataclasses import dataclass
from enum import Enum
from typing import Dict, Hashable, List, Mapping, Optional, Sequence, Tuple

import networkx as nx
import structlog

from skeintrace.errors import InternalInvariantError
from skeintrace.lamination.curve import JunctureData
from skeintrace.lamination.regions import RegionKey, RegionKind, partner_piece, region_label, region_of_piece
from skeintrace.surface.triangulation import SLOT_COUNT, Corner

logger = structlog.get_logger(__name__)

# (arc, i): the inner segment between reference positions i-1 and i
EdgeKey = Tuple[int, int]
Node = Hashable


class ComponentType(Enum):
    TYPE_I = "I"
    TYPE_II = "II"


@dataclass(frozen=True)
class InnerArcSegment:
    key: EdgeKey
    junctures: Tuple[int, int]
    # region on the reference side of the arc, region on the other side
    regions: Tuple[RegionKey, RegionKey]

    @property
    def arc(self) -> int:
        return self.key[0]


@dataclass(frozen=True)
class NarrowRegion:
    key: RegionKey
    ends: Tuple[EdgeKey, ...]
    bounding_segments: Tuple[int, ...]

    @property
    def triangle(self) -> int:
        return self.key[0]


@dataclass(frozen=True)
class GraphComponent:
    index: int
    type: ComponentType
    vertices: Tuple[Node, ...]
    edges: Tuple[EdgeKey, ...]


class RegionalGraph:
    """Undirected multigraph with one keyed edge per inner arc segment

    Two narrow regions may share more than one inner segment, for instance
    the central regions of a curve through a handle.
    """

    def __init__(self, edges: Mapping[EdgeKey, Tuple[Node, Node]],
                 segments: Optional[Dict[EdgeKey, InnerArcSegment]] = None,
                 regions: Optional[Dict[RegionKey, NarrowRegion]] = None,
                 data: Optional[JunctureData] = None):
        self.graph = nx.MultiGraph()
        self._ends: Dict[EdgeKey, Tuple[Node, Node]] = {}
        for key in sorted(edges):
            u, v = edges[key]
            if u == v:
                raise InternalInvariantError("no_self_loop", f"inner segment {key} is a self-loop", key)
            self.graph.add_edge(u, v, key=key)
            self._ends[key] = (u, v)
        self.segments = segments or {}
        self.regions = regions or {}
        self.data = data

    # Queries

    def vertices(self) -> List[Node]:
        return sorted(self.graph.nodes)

    def edges(self) -> List[EdgeKey]:
        return sorted(self._ends)

    def is_empty(self) -> bool:
        return not self._ends

    def endpoints(self, edge: EdgeKey) -> Tuple[Node, Node]:
        return self._ends[edge]

    def other_end(self, edge: EdgeKey, vertex: Node) -> Node:
        u, v = self._ends[edge]
        if vertex == u:
            return v
        if vertex == v:
            return u
        raise KeyError(f"vertex {vertex} is not an end of edge {edge}")

    def degree(self, vertex: Node) -> int:
        return self.graph.degree(vertex)

    def incident_edges(self, vertex: Node) -> List[EdgeKey]:
        return sorted(k for _, _, k in self.graph.edges(vertex, keys=True))

    def parallel_edges(self) -> List[Tuple[EdgeKey, ...]]:
        """Groups of two or more inner segments joining the same pair of regions"""
        groups: Dict[frozenset, List[EdgeKey]] = {}
        for key, (u, v) in self._ends.items():
            groups.setdefault(frozenset((u, v)), []).append(key)
        return sorted(tuple(sorted(keys)) for keys in groups.values() if len(keys) > 1)

    def structure_violations(self) -> List[str]:
        violations = []
        for vertex in self.vertices():
            if self.degree(vertex) not in (1, 2, 3):
                violations.append(f"vertex {vertex} has valence {self.degree(vertex)}")
        for region in self.regions.values():
            arcs = [key[0] for key in region.ends]
            if len(set(arcs)) != len(arcs):
                violations.append(f"ends of {region_label(region.key)} share an arc")
            if len(region.ends) == 3 and self.data is not None \
                    and self.data.triangulation.is_self_folded(region.triangle):
                violations.append(f"3-end region {region_label(region.key)} in a self-folded triangle")
        return violations


def build_regional_graph(data: JunctureData) -> RegionalGraph:
    """Regional graph of a curve given its junctures"""

    t = data.triangulation
    edges: Dict[EdgeKey, Tuple[RegionKey, RegionKey]] = {}
    segments: Dict[EdgeKey, InnerArcSegment] = {}
    for arc in t.arcs():
        if t.is_boundary(arc):
            continue
        ref, other = t.incidences(arc)
        n = data.side_count(ref)
        for i in range(1, n):
            key = (arc, i)
            here = region_of_piece(data, ref, i)
            there = region_of_piece(data, other, partner_piece(data, ref, i))
            edges[key] = (here, there)
            segments[key] = InnerArcSegment(key, (data.arc_junctures[arc][i - 1], data.arc_junctures[arc][i]),
                                            (here, there))

    graph = RegionalGraph(edges, segments, data=data)

    by_depth = {(g.corner, g.depth): g.id for g in data.segments}
    for vertex in graph.vertices():
        tri, kind, corner, index = vertex
        if kind == RegionKind.STRIP:
            bounding = (by_depth[(Corner(tri, corner), index - 1)], by_depth[(Corner(tri, corner), index)])
        else:
            bounding = tuple(by_depth[(Corner(tri, k), data.count(Corner(tri, k)) - 1)]
                             for k in range(SLOT_COUNT) if data.count(Corner(tri, k)))
        graph.regions[vertex] = NarrowRegion(vertex, tuple(graph.incident_edges(vertex)), bounding)

    violations = graph.structure_violations()
    if violations:
        raise InternalInvariantError("regional_graph_structure", "regional graph invariants fail", violations)
    logger.debug("regional_graph_built", vertices=len(graph.vertices()), edges=len(graph.edges()),
                 parallel=len(graph.parallel_edges()))
    return graph


def classify_components(graph: RegionalGraph) -> List[GraphComponent]:
    """Connected components, type I when they contain a 1-valent vertex"""

    components = []
    for members in sorted((sorted(c) for c in nx.connected_components(graph.graph)), key=lambda c: c[0]):
        edges = sorted(k for _, _, k in graph.graph.subgraph(members).edges(keys=True))
        kind = ComponentType.TYPE_I if any(graph.degree(v) == 1 for v in members) else ComponentType.TYPE_II
        if kind == ComponentType.TYPE_II and not any(graph.degree(v) == 3 for v in members):
            raise InternalInvariantError("type_ii_trivalent", "type II component without a 3-valent vertex",
                                         [str(v) for v in members])
        components.append(GraphComponent(len(components), kind, tuple(members), tuple(edges)))

    type_ii = [c.index for c in components if c.type == ComponentType.TYPE_II]
    if len(type_ii) > 1:
        raise InternalInvariantError("single_type_ii", f"{len(type_ii)} type II components", type_ii)
    return components


def component_of_vertex(components: Sequence[GraphComponent]) -> Dict[Node, GraphComponent]:
    return {v: comp for comp in components for v in comp.vertices}
