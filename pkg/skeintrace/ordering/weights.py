#!/usr/bin/env python3
"""
Orientations and Weights on the Regional Graph

Edges get orientations and weights 2^m (stored as the exponent m). The
constructive assignment walks the type II component first, then the type I
components; inside a component the chains are taken from last-constructed to
first, each oriented from its departing to its terminating vertex.
"""

from dataclasses import dataclass, field
from itertools import permutations
from typing import Dict, List, Mapping, Sequence

import structlog

from skeintrace.ordering.chains import ChainDecomposition
from skeintrace.ordering.regional_graph import ComponentType, EdgeKey, GraphComponent, Node, RegionalGraph

logger = structlog.get_logger(__name__)


@dataclass(frozen=True)
class EdgeAssignment:
    edge: EdgeKey
    tail: Node
    head: Node
    exponent: int


@dataclass(frozen=True)
class ConditionViolation:
    condition: int
    subject: str
    detail: str

    def to_dict(self) -> Dict[str, object]:
        return {"condition": self.condition, "subject": self.subject, "detail": self.detail}


@dataclass
class SufficientConditionReport:
    violations: List[ConditionViolation] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations

    def conditions_failed(self) -> List[int]:
        return sorted({v.condition for v in self.violations})


def assignment_order(components: Sequence[GraphComponent]) -> List[GraphComponent]:
    type_ii = [c for c in components if c.type == ComponentType.TYPE_II]
    type_i = sorted((c for c in components if c.type == ComponentType.TYPE_I), key=lambda c: c.vertices[0])
    return type_ii + type_i


def assign_orientations_weights(graph: RegionalGraph, components: Sequence[GraphComponent],
                                decomposition: ChainDecomposition) -> Dict[EdgeKey, EdgeAssignment]:
    """Exponents 1..|E| along the concatenation C_M, ..., C_0 of each component"""

    assignment: Dict[EdgeKey, EdgeAssignment] = {}
    exponent = 0
    for component in assignment_order(components):
        for chain in reversed(decomposition.chains.get(component.index, [])):
            for i, edge in enumerate(chain.edges):
                exponent += 1
                assignment[edge] = EdgeAssignment(edge, chain.vertices[i], chain.vertices[i + 1], exponent)
    logger.debug("weights_assigned", edges=len(assignment))
    return assignment


def verify_sufficient_condition(graph: RegionalGraph, components: Sequence[GraphComponent],
                                assignment: Mapping[EdgeKey, EdgeAssignment]) -> SufficientConditionReport:
    """Check the four conditions on orientations and weights literally"""

    report = SufficientConditionReport()
    flag = report.violations.append

    # 1) every edge oriented between its ends with a distinct positive exponent
    edges = set(graph.edges())
    for edge in sorted(edges - set(assignment)):
        flag(ConditionViolation(1, str(edge), "edge has no assignment"))
    for edge in sorted(set(assignment) - edges):
        flag(ConditionViolation(1, str(edge), "assignment for an unknown edge"))
    seen: Dict[int, EdgeKey] = {}
    for edge, a in sorted(assignment.items()):
        if edge in edges and {a.tail, a.head} != set(graph.endpoints(edge)):
            flag(ConditionViolation(1, str(edge), "orientation does not join the edge's ends"))
        if a.exponent < 1:
            flag(ConditionViolation(1, str(edge), f"exponent {a.exponent} is not positive"))
        if a.exponent in seen:
            flag(ConditionViolation(1, str(edge), f"exponent {a.exponent} reused from {seen[a.exponent]}"))
        seen[a.exponent] = edge
    if report.violations:
        return report

    kinds = {v: c.type for c in components for v in c.vertices}
    for v in graph.vertices():
        incident = [assignment[e] for e in graph.incident_edges(v)]
        incoming = [a for a in incident if a.head == v]
        outgoing = [a for a in incident if a.tail == v]

        if len(incident) == 2:
            # 2) one incoming with 2^m, one outgoing with 2^(m+1)
            if len(incoming) != 1 or outgoing[0].exponent != incoming[0].exponent + 1:
                flag(ConditionViolation(2, str(v), "2-valent vertex needs in 2^m and out 2^(m+1), got "
                                        + _describe(incident, v)))

        elif len(incident) == 3 and kinds[v] == ComponentType.TYPE_I:
            # 3) flow-in, flow-out and a lighter left-over edge
            if not any(i.head == v and o.tail == v and o.exponent == i.exponent + 1 and r.exponent < i.exponent
                       for i, o, r in permutations(incident)):
                flag(ConditionViolation(3, str(v), "type I 3-valent vertex has no flow-in/flow-out/left-over split: "
                                        + _describe(incident, v)))

        elif len(incident) == 3:
            if not incoming or not outgoing:
                flag(ConditionViolation(3, str(v), "type II 3-valent vertex needs an incoming and an outgoing edge: "
                                        + _describe(incident, v)))

    # 4) type I weights exceed type II weights
    type_ii = [a.exponent for a in assignment.values() if kinds[a.tail] == ComponentType.TYPE_II]
    type_i = [a.exponent for a in assignment.values() if kinds[a.tail] == ComponentType.TYPE_I]
    if type_i and type_ii and min(type_i) <= max(type_ii):
        flag(ConditionViolation(4, "components", f"type I exponent {min(type_i)} does not exceed "
                                f"type II exponent {max(type_ii)}"))
    return report


def _describe(incident: Sequence[EdgeAssignment], v: Node) -> str:
    return ", ".join(f"{'in' if a.head == v else 'out'} 2^{a.exponent}" for a in incident)
