#!/usr/bin/env python3
"""
Transfer and Dyadic Arc-Orderings

Each regional edge crosses one inner arc segment. Its orientation is
transferred to that segment: with the arc read along its reference
parametrization, an edge leaving the narrow region on the reference side makes
the upper juncture the smaller one, and an edge entering it makes the upper
juncture the larger one. The weight exponent is copied.

Two junctures on an arc compare by the oriented segment with the largest
exponent between them.
"""

from dataclasses import dataclass
from functools import cmp_to_key
from typing import Dict, FrozenSet, List, Mapping, Sequence, Tuple

import structlog

from skeintrace.errors import InternalInvariantError
from skeintrace.lamination.curve import JunctureData
from skeintrace.ordering.regional_graph import EdgeKey, RegionalGraph
from skeintrace.ordering.weights import EdgeAssignment

logger = structlog.get_logger(__name__)


@dataclass(frozen=True)
class TransferredSegment:
    key: EdgeKey
    # +1 when the juncture at the higher reference position is the larger one
    sign: int
    exponent: int


@dataclass(frozen=True)
class ArcOrdering:
    arc: int
    # rank of the juncture at each reference position, 0 = smallest
    ranks: Tuple[int, ...]

    def rank(self, position: int) -> int:
        return self.ranks[position]

    def positions_in_order(self) -> List[int]:
        return sorted(range(len(self.ranks)), key=self.ranks.__getitem__)


def transfer(graph: RegionalGraph, assignment: Mapping[EdgeKey, EdgeAssignment]) -> Dict[EdgeKey, TransferredSegment]:
    """Orientation and difference exponent of every inner arc segment"""

    result = {}
    for key, segment in graph.segments.items():
        a = assignment[key]
        reference_region = segment.regions[0]
        sign = -1 if a.tail == reference_region else 1
        result[key] = TransferredSegment(key, sign, a.exponent)
    return result


def _differences(data: JunctureData, transferred: Mapping[EdgeKey, TransferredSegment],
                 arc: int) -> List[Tuple[int, int]]:
    n = len(data.arc_junctures[arc])
    diffs = []
    for i in range(1, n):
        seg = transferred[(arc, i)]
        diffs.append((seg.sign, seg.exponent))
    exponents = [m for _, m in diffs]
    if len(set(exponents)) != len(exponents):
        raise InternalInvariantError("distinct_exponents", f"arc {data.triangulation.arc_label(arc)} "
                                     "has repeated difference exponents", exponents)
    return diffs


def read_dyadic(diffs: Sequence[Tuple[int, int]]) -> Tuple[int, ...]:
    """Ranks from (sign, exponent) differences between consecutive positions"""

    def compare(p: int, q: int) -> int:
        if p == q:
            return 0
        lo, hi = min(p, q), max(p, q)
        sign, _ = max(diffs[lo:hi], key=lambda d: d[1])
        # sign > 0: the higher position is larger
        hi_larger = sign > 0
        if p == hi:
            return 1 if hi_larger else -1
        return -1 if hi_larger else 1

    order = sorted(range(len(diffs) + 1), key=cmp_to_key(compare))
    ranks = [0] * len(order)
    for rank, position in enumerate(order):
        ranks[position] = rank
    return tuple(ranks)


def dyadic_arc_orderings(data: JunctureData, transferred: Mapping[EdgeKey, TransferredSegment],
                         flipped_arcs: FrozenSet[int] = frozenset()) -> Dict[int, ArcOrdering]:
    """Arc-orderings by the max-exponent reading rule

    Arcs in `flipped_arcs` are read in the reversed direction; the resulting
    order of junctures is the same.
    """
    orderings = {}
    for arc, junctures in data.arc_junctures.items():
        if not junctures:
            continue
        diffs = _differences(data, transferred, arc)
        if arc in flipped_arcs:
            reversed_ranks = read_dyadic([(-sign, m) for sign, m in reversed(diffs)])
            ranks = tuple(reversed(reversed_ranks))
        else:
            ranks = read_dyadic(diffs)
        orderings[arc] = ArcOrdering(arc, ranks)
    return orderings


def signed_sum_orderings(data: JunctureData,
                         transferred: Mapping[EdgeKey, TransferredSegment]) -> Dict[int, ArcOrdering]:
    """Orderings from exact partial sums of +-2^m"""

    orderings = {}
    for arc, junctures in data.arc_junctures.items():
        if not junctures:
            continue
        values = [0]
        for sign, m in _differences(data, transferred, arc):
            values.append(values[-1] + sign * (1 << m))
        order = sorted(range(len(values)), key=values.__getitem__)
        ranks = [0] * len(values)
        for rank, position in enumerate(order):
            ranks[position] = rank
        orderings[arc] = ArcOrdering(arc, tuple(ranks))
    return orderings
