#!/usr/bin/env python3
"""
Triangle-Orderings and the Compatibility / Sanity Checker

A triangle-ordering ranks the loop segments of one triangle (rank 1 lowest).
It is read off from arc-orderings by repeatedly erasing a segment whose two
endpoints are both the smallest remaining junctures on their sides.
"""

from dataclasses import dataclass
from itertools import combinations, product
from typing import Any, Dict, List, Mapping, Optional

import structlog

from skeintrace.errors import InternalInvariantError
from skeintrace.lamination.curve import JunctureData, LoopSegment
from skeintrace.ordering.arc_orders import ArcOrdering
from skeintrace.surface.triangulation import SLOT_COUNT, Corner, next_slot

logger = structlog.get_logger(__name__)


def juncture_rank(data: JunctureData, orderings: Mapping[int, ArcOrdering], juncture: int) -> int:
    j = data.junctures[juncture]
    return orderings[j.arc].rank(j.position)


def endpoint_rank(data: JunctureData, orderings: Mapping[int, ArcOrdering],
                  segment: LoopSegment, slot: int) -> int:
    return juncture_rank(data, orderings, segment.endpoint_on(slot))


def triangle_orderings(data: JunctureData, orderings: Mapping[int, ArcOrdering]) -> Dict[int, Dict[int, int]]:
    """Segment id -> rank per triangle, by repeated erasure of the lowest segment"""

    result: Dict[int, Dict[int, int]] = {}
    for tri in range(data.triangulation.triangle_count):
        remaining = data.segments_in_triangle(tri)
        ranks: Dict[int, int] = {}
        while remaining:
            lowest = {}
            for slot in range(SLOT_COUNT):
                on_side = [endpoint_rank(data, orderings, g, slot) for g in remaining if slot in g.corner.sides]
                if on_side:
                    lowest[slot] = min(on_side)
            candidates = [g for g in remaining
                          if all(endpoint_rank(data, orderings, g, s) == lowest[s] for s in g.corner.sides)]
            if not candidates:
                raise InternalInvariantError("minimal_junctures_joined",
                                             f"no segment joins two minimal junctures in triangle {tri}",
                                             sorted(g.id for g in remaining))
            chosen = min(candidates, key=lambda g: g.id)
            ranks[chosen.id] = len(ranks) + 1
            remaining = [g for g in remaining if g.id != chosen.id]
        result[tri] = ranks
    return result


def induced_arc_orderings(data: JunctureData, segment_ranks: Mapping[int, Mapping[int, int]]) -> Dict:
    """Juncture order on every side as induced by the triangle-orderings

    Keyed by side; values are juncture ids from lowest to highest.
    """
    induced = {}
    t = data.triangulation
    for tri in range(t.triangle_count):
        for slot in range(SLOT_COUNT):
            side = (tri, slot)
            n = data.side_count(side)
            if not n:
                continue
            junctures = [data.juncture_on_side(side, p) for p in range(n)]
            induced[side] = sorted(junctures, key=lambda j: segment_ranks[tri][data.segment_at_side(j, side).id])
    return induced


def round_trip_mismatches(data: JunctureData, orderings: Mapping[int, ArcOrdering],
                          segment_ranks: Mapping[int, Mapping[int, int]]) -> List[str]:
    mismatches = []
    for side, order in induced_arc_orderings(data, segment_ranks).items():
        expected = sorted(order, key=lambda j: juncture_rank(data, orderings, j))
        if order != expected:
            mismatches.append(f"side {side[0]}:{side[1] + 1} induces {order}, arc-ordering gives {expected}")
    return mismatches


@dataclass(frozen=True)
class CheckResult:
    passed: bool
    witness: Optional[Dict[str, Any]] = None


def check_compatibility_sanity(data: JunctureData, orderings: Mapping[int, ArcOrdering]) -> CheckResult:
    """Same-corner pairs agree on both sides; no corner-spanning triple is cyclic"""

    t = data.triangulation
    for tri in range(t.triangle_count):
        by_corner = {k: sorted((g for g in data.segments_in_triangle(tri) if g.corner.index == k),
                               key=lambda g: g.depth)
                     for k in range(SLOT_COUNT)}

        for k, segments in by_corner.items():
            first, second = Corner(tri, k).sides
            for g, h in combinations(segments, 2):
                below_first = endpoint_rank(data, orderings, g, first) < endpoint_rank(data, orderings, h, first)
                below_second = endpoint_rank(data, orderings, g, second) < endpoint_rank(data, orderings, h, second)
                if below_first != below_second:
                    return CheckResult(False, {"kind": "incompatible_pair", "triangle": tri,
                                               "segments": [g.id, h.id]})

        if t.is_self_folded(tri):
            continue
        for triple in product(by_corner[0], by_corner[1], by_corner[2]):
            if _is_cyclic(data, orderings, tri, triple):
                return CheckResult(False, {"kind": "insane_triple", "triangle": tri,
                                           "segments": [g.id for g in triple]})
    return CheckResult(True)


def _is_cyclic(data: JunctureData, orderings: Mapping[int, ArcOrdering], tri: int, triple) -> bool:
    wins = [0, 0, 0]
    for s in range(SLOT_COUNT):
        # side s is shared by the corners s+1 and s+2
        a, b = next_slot(s, 1), next_slot(s, 2)
        if endpoint_rank(data, orderings, triple[a], s) > endpoint_rank(data, orderings, triple[b], s):
            wins[a] += 1
        else:
            wins[b] += 1
    return wins == [1, 1, 1]
