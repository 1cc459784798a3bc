#!/usr/bin/env python3
"""
Chain Decomposition of the Regional Graph

A chain is a sequence of distinct edges in which consecutive edges share a
vertex, with a chosen departing vertex. Each component's edge set is peeled
into chains C_0, C_1, ... so that every intermediate remainder S_N stays
sustainable:

- |S_N(v)| in {0, 2} at 2-valent vertices,
- |S_N(v)| in {0, 1, 3} at 3-valent vertices,
- some vertex has |S_N(v)| = 1 while S_N is nonempty.

Type II components start with a cycle C_0 based at a 3-valent vertex.
"""

import random
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Set, Tuple

import structlog

from skeintrace.errors import InternalInvariantError
from skeintrace.ordering.regional_graph import ComponentType, EdgeKey, GraphComponent, Node, RegionalGraph

logger = structlog.get_logger(__name__)


@dataclass(frozen=True)
class Chain:
    edges: Tuple[EdgeKey, ...]
    # vertices[i], vertices[i+1] are the ends of edges[i]
    vertices: Tuple[Node, ...]

    @property
    def departing(self) -> Node:
        return self.vertices[0]

    @property
    def terminating(self) -> Node:
        return self.vertices[-1]

    @property
    def middle_vertices(self) -> Tuple[Node, ...]:
        return self.vertices[1:-1]

    def reversed(self) -> "Chain":
        return Chain(tuple(reversed(self.edges)), tuple(reversed(self.vertices)))

    def __len__(self) -> int:
        return len(self.edges)


class TieBreakPolicy:
    """Lowest-id choices"""

    name = "lowest_id"

    def choose_vertex(self, candidates: Sequence[Node]) -> Node:
        return min(candidates)

    def choose_edge(self, candidates: Sequence[EdgeKey]) -> EdgeKey:
        return min(candidates)

    def choose_pivot(self, candidates: Sequence[int]) -> int:
        return min(candidates)


class SeededPolicy(TieBreakPolicy):
    """Uniform random choices from a seeded generator"""

    name = "seeded"

    def __init__(self, seed: int):
        self.seed = seed
        self._rng = random.Random(seed)

    def choose_vertex(self, candidates: Sequence[Node]) -> Node:
        return self._rng.choice(sorted(candidates))

    def choose_edge(self, candidates: Sequence[EdgeKey]) -> EdgeKey:
        return self._rng.choice(sorted(candidates))

    def choose_pivot(self, candidates: Sequence[int]) -> int:
        return self._rng.choice(sorted(candidates))


@dataclass
class ChainDecomposition:
    chains: Dict[int, List[Chain]]
    # |S_N| after each stage, per component
    stage_sizes: Dict[int, List[int]] = field(default_factory=dict)

    def all_edges(self) -> List[EdgeKey]:
        return [e for chains in self.chains.values() for chain in chains for e in chain.edges]


def partial_valence(graph: RegionalGraph, vertex: Node, remaining: Set[EdgeKey]) -> int:
    return sum(1 for e in graph.incident_edges(vertex) if e in remaining)


def sustainability_violations(graph: RegionalGraph, vertices: Sequence[Node],
                              remaining: Set[EdgeKey]) -> List[str]:
    violations = []
    witness = False
    for v in vertices:
        valence = partial_valence(graph, v, remaining)
        degree = graph.degree(v)
        if degree == 2 and valence not in (0, 2):
            violations.append(f"2-valent vertex {v} has {valence} remaining edges")
        if degree == 3 and valence not in (0, 1, 3):
            violations.append(f"3-valent vertex {v} has {valence} remaining edges")
        witness = witness or valence == 1
    if remaining and not witness:
        violations.append("nonempty remainder has no vertex with one remaining edge")
    return violations


def grow_chain(graph: RegionalGraph, available: Set[EdgeKey], edge: EdgeKey,
               departing: Node, policy: TieBreakPolicy) -> Chain:
    """Extend from `edge` at the terminating end until no unused edge is attached"""

    edges = [edge]
    vertices = [departing, graph.other_end(edge, departing)]
    used = {edge}
    while True:
        candidates = [e for e in graph.incident_edges(vertices[-1]) if e in available and e not in used]
        if not candidates:
            return Chain(tuple(edges), tuple(vertices))
        nxt = policy.choose_edge(candidates)
        used.add(nxt)
        edges.append(nxt)
        vertices.append(graph.other_end(nxt, vertices[-1]))


def extend_front(graph: RegionalGraph, available: Set[EdgeKey], chain: Chain,
                 policy: TieBreakPolicy) -> Chain:
    front = grow_chain(graph, available - set(chain.edges) | {chain.edges[0]},
                       chain.edges[0], chain.vertices[1], policy)
    # front runs from the second vertex back through the first edge and beyond
    prefix = front.reversed()
    return Chain(prefix.edges + chain.edges[1:], prefix.vertices + chain.vertices[2:])


def initial_chain_type_ii(graph: RegionalGraph, component: GraphComponent,
                          policy: Optional[TieBreakPolicy] = None) -> Chain:
    """Cycle chain based at a 3-valent vertex, extracted from a maximal chain"""

    policy = policy or TieBreakPolicy()
    available = set(component.edges)
    start = policy.choose_edge(list(component.edges))
    chain = grow_chain(graph, available, start, min(graph.endpoints(start)), policy)
    chain = extend_front(graph, available, chain, policy)

    vertices = chain.vertices
    best = None
    for j in range(len(vertices)):
        for i in range(j):
            if vertices[i] == vertices[j] and (best is None or (j - i, i) < (best[1] - best[0], best[0])):
                best = (i, j)
    if best is None:
        raise InternalInvariantError("maximal_chain_repeats", "maximal chain has no repeated vertex",
                                     [str(v) for v in vertices])
    i, j = best
    pivots = [k for k in range(i, j) if graph.degree(vertices[k]) == 3]
    if not pivots:
        raise InternalInvariantError("type_ii_trivalent", "cycle of the initial chain has no 3-valent vertex",
                                     [str(v) for v in vertices[i:j + 1]])
    k = policy.choose_pivot(pivots)
    return Chain(chain.edges[k:j] + chain.edges[i:k], vertices[k:j + 1] + vertices[i + 1:k + 1])


def chain_decomposition(graph: RegionalGraph, components: Sequence[GraphComponent],
                        policy: Optional[TieBreakPolicy] = None) -> ChainDecomposition:
    """Peel every component into chains C_0, C_1, ... keeping remainders sustainable"""

    policy = policy or TieBreakPolicy()
    result = ChainDecomposition({}, {})
    for component in components:
        remaining = set(component.edges)
        chains: List[Chain] = []
        sizes: List[int] = []

        if component.type == ComponentType.TYPE_II:
            first = initial_chain_type_ii(graph, component, policy)
            chains.append(first)
            remaining -= set(first.edges)
        _require_sustainable(graph, component, remaining, len(chains))
        sizes.append(len(remaining))

        while remaining:
            candidates = [v for v in component.vertices if partial_valence(graph, v, remaining) == 1]
            v = policy.choose_vertex(candidates)
            (edge,) = [e for e in graph.incident_edges(v) if e in remaining]
            chain = grow_chain(graph, remaining, edge, v, policy)
            if chain.terminating in chain.middle_vertices:
                chain = chain.reversed()
            if chain.terminating in chain.middle_vertices:
                raise InternalInvariantError("terminating_not_middle",
                                             "terminating vertex is a middle vertex after reversal",
                                             [str(x) for x in chain.vertices])
            chains.append(chain)
            remaining -= set(chain.edges)
            _require_sustainable(graph, component, remaining, len(chains))
            sizes.append(len(remaining))

        result.chains[component.index] = chains
        result.stage_sizes[component.index] = sizes
        logger.debug("component_decomposed", component=component.index,
                     type=component.type.value, chains=len(chains))

    _require_partition(graph, components, result)
    return result


def _require_sustainable(graph: RegionalGraph, component: GraphComponent,
                         remaining: Set[EdgeKey], stage: int):
    violations = sustainability_violations(graph, component.vertices, remaining)
    if violations:
        raise InternalInvariantError("sustainability", f"remainder after stage {stage} is not sustainable",
                                     violations)


def _require_partition(graph: RegionalGraph, components: Sequence[GraphComponent],
                       result: ChainDecomposition):
    edges = result.all_edges()
    expected = sorted(e for c in components for e in c.edges)
    if sorted(edges) != expected:
        raise InternalInvariantError("chain_partition", "chains do not partition the edge set",
                                     {"chained": len(edges), "edges": len(expected)})
