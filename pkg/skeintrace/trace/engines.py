#!/usr/bin/env python3
"""
Quantum Trace Engines

Both engines evaluate the state sum of a crossingless curve whose loop
segments carry compatible and sane triangle-orderings. Biangle diagrams are
then parallel strands, so a state is one sign per juncture and each state
contributes the elevation-ordered product of triangle factors.

- statesum: enumerates all 2^J states.
- transfer: processes loop segments one at a time, keeping partial sums
  keyed by the signs of the junctures touched by exactly one processed segment.
"""

from itertools import product
from typing import Dict, List, Optional, Tuple

import structlog

from skeintrace.errors import InputError, InternalInvariantError
from skeintrace.lamination.curve import JunctureData
from skeintrace.ordering.solver import OrderingSolution
from skeintrace.qtorus.algebras import arc_algebra, to_arc_algebra, triangle_algebra
from skeintrace.qtorus.laurent import OmegaLaurent
from skeintrace.qtorus.torus import Exponents, QTElement, QuantumTorus, sum_elements
from skeintrace.trace.local import SIGNS, Signs, triangle_factor

logger = structlog.get_logger(__name__)

StrandFactors = Dict[int, Dict[Signs, QTElement]]


def strand_factors(torus: QuantumTorus, data: JunctureData) -> StrandFactors:
    """Triangle factor of every loop segment for each of its four states"""
    return {
        g.id: {signs: triangle_factor(torus, g.corner, signs) for signs in product(SIGNS, repeat=2)}
        for g in data.segments
    }


def _require_ready(data: JunctureData, solution: Optional[OrderingSolution]):
    if data.is_empty():
        return
    if solution is None or not solution.check.passed:
        raise InternalInvariantError("compatible_and_sane",
                                     "quantum trace needs compatible and sane orderings",
                                     solution.check.witness if solution else None)
    for tri in range(data.triangulation.triangle_count):
        expected = sorted(g.id for g in data.segments_in_triangle(tri))
        if sorted(solution.elevation_order(tri)) != expected:
            raise InternalInvariantError("elevation_order", f"triangle {tri} ordering does not cover its segments")


def quantum_trace(data: JunctureData, solution: Optional[OrderingSolution],
                  max_junctures: Optional[int] = None) -> QTElement:
    """Naive state sum over one sign per juncture, in the arc algebra"""

    t = data.triangulation
    arcs = arc_algebra(t)
    _require_ready(data, solution)
    if data.is_empty():
        return arcs.one()
    if max_junctures is not None and data.juncture_count > max_junctures:
        raise InputError(f"state-sum engine is limited to {max_junctures} junctures, "
                         f"curve has {data.juncture_count}; use the transfer engine")

    torus = triangle_algebra(t)
    factors = strand_factors(torus, data)
    order = [(g, data.segments[g].endpoints)
             for tri in range(t.triangle_count) for g in solution.elevation_order(tri)]

    terms: List[QTElement] = []
    for state in product(SIGNS, repeat=data.juncture_count):
        term = torus.one()
        for g, (j1, j2) in order:
            factor = factors[g][(state[j1], state[j2])]
            if factor.is_zero():
                break
            term = term * factor
        else:
            terms.append(term)

    logger.debug("statesum_done", junctures=data.juncture_count, surviving_states=len(terms))
    return to_arc_algebra(t, sum_elements(torus, terms), arcs)


def processing_order(data: JunctureData, solution: OrderingSolution) -> List[int]:
    """Segments in an order refining every triangle's elevation order

    Greedily takes the next segment of some triangle that leaves the fewest
    open junctures, ties broken by position along the traversal.
    """
    t = data.triangulation
    queues = {tri: solution.elevation_order(tri) for tri in range(t.triangle_count)}
    heads = {tri: 0 for tri in queues}
    along = {g: i for i, (g, _, _) in enumerate(data.cycle)}
    open_junctures: set = set()
    order = []
    while len(order) < len(data.segments):
        candidates = [queues[tri][heads[tri]] for tri in queues if heads[tri] < len(queues[tri])]

        def cost(g: int) -> Tuple[int, int, int]:
            return (len(open_junctures ^ set(data.segments[g].endpoints)), along.get(g, len(along)), g)

        chosen = min(candidates, key=cost)
        heads[data.segments[chosen].triangle] += 1
        open_junctures ^= set(data.segments[chosen].endpoints)
        order.append(chosen)
    return order


# slot deltas, phase column and (w-power, coefficient) pairs of one monomial factor
Move = Tuple[List[Tuple[int, int]], List[Tuple[int, int]], List[Tuple[int, int]]]
# (exponent vector, w-power) -> integer coefficient
FlatTerms = Dict[Tuple[Exponents, int], int]
FrontierKey = Tuple[Tuple[int, str], ...]


def strand_moves(torus: QuantumTorus, factors: StrandFactors) -> Dict[int, Dict[Signs, Move]]:
    """Nonzero triangle factors unpacked for the sweep"""
    moves: Dict[int, Dict[Signs, Move]] = {}
    for g, by_signs in factors.items():
        moves[g] = {}
        for signs, factor in by_signs.items():
            if factor.is_zero():
                continue
            (vec, coeff), = factor.items()
            moves[g][signs] = ([(i, d) for i, d in enumerate(vec) if d], torus.phase_column(vec),
                               list(coeff.items()))
    return moves


def _advance(terms: FlatTerms, move: Move, target: FlatTerms):
    """Right-multiply every term by one factor, accumulating into `target`"""
    deltas, column, coefficients = move
    for (a, power), value in terms.items():
        vec = list(a)
        for i, d in deltas:
            vec[i] += d
        moved = tuple(vec)
        shifted = power
        for i, c in column:
            shifted += 2 * a[i] * c
        for e, c in coefficients:
            key = (moved, shifted + e)
            target[key] = target.get(key, 0) + value * c


def quantum_trace_transfer_matrix(data: JunctureData, solution: Optional[OrderingSolution]) -> QTElement:
    """State sum by a sweep over loop segments with a frontier of open signs

    Partial sums are flat integer maps; phases come from the precomputed
    column of each factor.
    """

    t = data.triangulation
    arcs = arc_algebra(t)
    _require_ready(data, solution)
    if data.is_empty():
        return arcs.one()

    torus = triangle_algebra(t)
    moves = strand_moves(torus, strand_factors(torus, data))
    frontier: Dict[FrontierKey, FlatTerms] = {(): {((0,) * torus.rank, 0): 1}}
    widest = 1
    for g in processing_order(data, solution):
        j1, j2 = data.segments[g].endpoints
        updated: Dict[FrontierKey, FlatTerms] = {}
        for key, terms in frontier.items():
            assigned = dict(key)
            for s1 in ([assigned[j1]] if j1 in assigned else SIGNS):
                for s2 in ([assigned[j2]] if j2 in assigned else SIGNS):
                    move = moves[g].get((s1, s2))
                    if move is None:
                        continue
                    signs = dict(assigned)
                    # a juncture closes once both of its segments are processed
                    for j, s in ((j1, s1), (j2, s2)):
                        if j in assigned:
                            del signs[j]
                        else:
                            signs[j] = s
                    new_key = tuple(sorted(signs.items()))
                    _advance(terms, move, updated.setdefault(new_key, {}))
        frontier = updated
        widest = max(widest, len(frontier))

    if any(key for key in frontier):
        raise InternalInvariantError("frontier_closed", "junctures left open after the sweep",
                                     [list(k) for k in frontier if k])
    normal: Dict[Exponents, Dict[int, int]] = {}
    for (vec, power), value in frontier.get((), {}).items():
        powers = normal.setdefault(vec, {})
        powers[power] = powers.get(power, 0) + value
    element = QTElement(torus, {vec: OmegaLaurent(powers) for vec, powers in normal.items()})
    logger.debug("transfer_done", junctures=data.juncture_count, frontier_width=widest)
    return to_arc_algebra(t, element, arcs)
