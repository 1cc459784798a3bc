#!/usr/bin/env python3
"""
Ordering Solver

Runs the full construction for one non-peripheral curve: regional graph,
component types, chain decomposition, orientations and weights, transfer,
dyadic arc-orderings and triangle-orderings. Every theorem-backed property is
re-checked and a breach raises InternalInvariantError.
"""

from dataclasses import dataclass, field
from typing import Any, Dict, FrozenSet, List, Optional

import structlog

from skeintrace.errors import InternalInvariantError
from skeintrace.lamination.curve import JunctureData
from skeintrace.lamination.regions import encloses_closed_subsurface, region_label
from skeintrace.ordering.arc_orders import (ArcOrdering, TransferredSegment, dyadic_arc_orderings,
                                            signed_sum_orderings, transfer)
from skeintrace.ordering.chains import ChainDecomposition, TieBreakPolicy, chain_decomposition
from skeintrace.ordering.regional_graph import (ComponentType, EdgeKey, GraphComponent, RegionalGraph,
                                                build_regional_graph, classify_components, component_of_vertex)
from skeintrace.ordering.triangle_orders import (CheckResult, check_compatibility_sanity, round_trip_mismatches,
                                                 triangle_orderings)
from skeintrace.ordering.weights import (EdgeAssignment, SufficientConditionReport, assign_orientations_weights,
                                         verify_sufficient_condition)

logger = structlog.get_logger(__name__)


@dataclass
class OrderingSolution:
    """Every artifact of the ordering construction plus the check results"""

    data: JunctureData
    graph: RegionalGraph
    components: List[GraphComponent]
    decomposition: ChainDecomposition
    assignment: Dict[EdgeKey, EdgeAssignment]
    transferred: Dict[EdgeKey, TransferredSegment]
    arc_orderings: Dict[int, ArcOrdering]
    # triangle -> segment id -> rank (1 = lowest)
    segment_ranks: Dict[int, Dict[int, int]]
    condition_report: SufficientConditionReport
    check: CheckResult
    policy: str = "lowest_id"
    flipped_arcs: FrozenSet[int] = field(default_factory=frozenset)

    @property
    def has_type_ii(self) -> bool:
        return any(c.type == ComponentType.TYPE_II for c in self.components)

    def elevation_order(self, triangle: int) -> List[int]:
        """Segment ids of a triangle from lowest to highest"""
        ranks = self.segment_ranks.get(triangle, {})
        return sorted(ranks, key=ranks.__getitem__)

    def summary(self) -> Dict[str, Any]:
        return {
            "junctures": self.data.juncture_count,
            "segments": len(self.data.segments),
            "regional_vertices": len(self.graph.vertices()),
            "regional_edges": len(self.graph.edges()),
            "parallel_edges": [list(group) for group in self.graph.parallel_edges()],
            "components": [{"type": c.type.value, "vertices": len(c.vertices), "edges": len(c.edges),
                            "chains": len(self.decomposition.chains.get(c.index, []))}
                           for c in self.components],
            "sufficient_condition": self.condition_report.passed,
            "compatible_and_sane": self.check.passed,
        }

    def to_dict(self) -> Dict[str, Any]:
        t = self.data.triangulation
        return {
            "summary": self.summary(),
            "arc_orderings": {
                t.arc_label(arc): [self.data.arc_junctures[arc][p] for p in o.positions_in_order()]
                for arc, o in sorted(self.arc_orderings.items())
            },
            "triangle_orderings": {
                str(tri): [{"segment": g, "corner": self.data.segments[g].corner.label()}
                           for g in self.elevation_order(tri)]
                for tri in sorted(self.segment_ranks)
            },
            "edges": [
                {"arc": t.arc_label(e[0]), "index": e[1], "tail": region_label(a.tail),
                 "head": region_label(a.head), "exponent": a.exponent}
                for e, a in sorted(self.assignment.items())
            ],
        }


def solve_ordering(data: JunctureData, policy: Optional[TieBreakPolicy] = None,
                   flipped_arcs: FrozenSet[int] = frozenset()) -> OrderingSolution:
    """Compatible and sane orderings for a curve given by its junctures"""

    policy = policy or TieBreakPolicy()
    graph = build_regional_graph(data)
    components = classify_components(graph)

    has_type_ii = any(c.type == ComponentType.TYPE_II for c in components)
    if has_type_ii != encloses_closed_subsurface(data):
        raise InternalInvariantError("type_ii_enclosure",
                                     "type II component does not match an enclosed punctureless side",
                                     {"type_ii": has_type_ii})

    decomposition = chain_decomposition(graph, components, policy)
    assignment = assign_orientations_weights(graph, components, decomposition)
    report = verify_sufficient_condition(graph, components, assignment)
    if not report.passed:
        raise InternalInvariantError("sufficient_condition", "constructive assignment fails the conditions",
                                     [v.to_dict() for v in report.violations])

    transferred = transfer(graph, assignment)
    orderings = dyadic_arc_orderings(data, transferred, flipped_arcs)
    oracle = signed_sum_orderings(data, transferred)
    if orderings != oracle:
        raise InternalInvariantError("dyadic_reading_rule", "max-exponent reading disagrees with signed sums",
                                     sorted(a for a in orderings if orderings[a] != oracle.get(a)))

    check = check_compatibility_sanity(data, orderings)
    if not check.passed:
        raise InternalInvariantError("compatible_and_sane", "arc-orderings fail the checker", check.witness)

    ranks = triangle_orderings(data, orderings)
    mismatches = round_trip_mismatches(data, orderings, ranks)
    if mismatches:
        raise InternalInvariantError("triangle_round_trip", "triangle-orderings do not induce the arc-orderings",
                                     mismatches)

    logger.debug("ordering_solved", edges=len(assignment), components=len(components), policy=policy.name)
    return OrderingSolution(data, graph, components, decomposition, assignment, transferred, orderings,
                            ranks, report, check, policy.name, frozenset(flipped_arcs))


def to_dot(solution: OrderingSolution) -> str:
    """Regional graph in DOT, edges directed by the assignment"""

    t = solution.data.triangulation
    owner = component_of_vertex(solution.components)
    names = {v: f"n{i}" for i, v in enumerate(solution.graph.vertices())}
    lines = ["digraph regional_graph {"]
    for v, name in names.items():
        label = f"{region_label(v)} ends={solution.graph.degree(v)} type={owner[v].type.value}"
        lines.append(f'  {name} [label="{label}"];')
    for edge, a in sorted(solution.assignment.items()):
        lines.append(f'  {names[a.tail]} -> {names[a.head]} [label="arc {t.arc_label(edge[0])} m={a.exponent}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
