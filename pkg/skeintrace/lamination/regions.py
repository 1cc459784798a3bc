#!/usr/bin/env python3
"""
Small Regions and the Complement of a Curve

Loop segments cut each triangle into small regions:

- the central region;
- a vertex region for every occupied corner (between the vertex and the
  depth-0 segment);
- strip ``i`` of a corner, between the segments of depth ``i-1`` and ``i``.

Arc pieces between consecutive junctures glue small regions across arcs; the
connected components of that gluing are the sides of the curve.
"""

from dataclasses import dataclass
from enum import IntEnum
from typing import Dict, FrozenSet, List, Tuple

import networkx as nx
import structlog

from skeintrace.errors import CurveError, InternalInvariantError
from skeintrace.lamination.curve import CurveOnSurface, JunctureData, build_junctures
from skeintrace.surface.triangulation import SLOT_COUNT, Corner, Side, Triangulation, next_slot

logger = structlog.get_logger(__name__)

# (triangle, kind, corner index or -1, strip index or 0)
RegionKey = Tuple[int, int, int, int]


class RegionKind(IntEnum):
    CENTRAL = 0
    VERTEX = 1
    STRIP = 2


def central_region(triangle: int) -> RegionKey:
    return (triangle, RegionKind.CENTRAL, -1, 0)


def region_label(region: RegionKey) -> str:
    tri, kind, corner, index = region
    if kind == RegionKind.CENTRAL:
        return f"T{tri}/central"
    if kind == RegionKind.VERTEX:
        return f"T{tri}/vertex{corner + 1}"
    return f"T{tri}/strip{corner + 1}.{index}"


def region_of_piece(data: JunctureData, side: Side, piece: int) -> RegionKey:
    """Small region bordering arc piece `piece` (local numbering) of a side

    Piece i lies between local junctures i-1 and i; pieces 0 and n touch the
    two vertices of the side.
    """
    tri, s = side
    start_corner = next_slot(s, 1)
    end_corner = next_slot(s, 2)
    a = data.count(Corner(tri, start_corner))
    b = data.count(Corner(tri, end_corner))
    n = a + b
    if not 0 <= piece <= n:
        raise ValueError(f"piece {piece} out of range on side with {n} junctures")
    if a >= 1 and piece == 0:
        return (tri, RegionKind.VERTEX, start_corner, 0)
    if 1 <= piece <= a - 1:
        return (tri, RegionKind.STRIP, start_corner, piece)
    if piece == a:
        return central_region(tri)
    if piece < n:
        return (tri, RegionKind.STRIP, end_corner, n - piece)
    return (tri, RegionKind.VERTEX, end_corner, 0)


def region_at_vertex(data: JunctureData, corner: Corner) -> RegionKey:
    if data.count(corner) >= 1:
        return (corner.triangle, RegionKind.VERTEX, corner.index, 0)
    return central_region(corner.triangle)


def small_regions(data: JunctureData) -> List[RegionKey]:
    regions = []
    for tri in range(data.triangulation.triangle_count):
        regions.append(central_region(tri))
        for k in range(SLOT_COUNT):
            c = data.count(Corner(tri, k))
            if c >= 1:
                regions.append((tri, RegionKind.VERTEX, k, 0))
                regions.extend((tri, RegionKind.STRIP, k, i) for i in range(1, c))
    return sorted(regions)


def partner_piece(data: JunctureData, side: Side, piece: int) -> int:
    return data.side_count(side) - piece


@dataclass(frozen=True)
class ComplementSide:
    """One connected component of the surface cut along the curve"""

    regions: FrozenSet[RegionKey]
    vertices: Tuple[int, ...]
    punctures: int
    marked_points: int
    boundary_arcs: int
    euler_characteristic: int

    def is_once_punctured_disk(self) -> bool:
        return (self.euler_characteristic == 1 and self.punctures == 1
                and self.marked_points == 0 and self.boundary_arcs == 0)

    def is_boundary_collar(self) -> bool:
        """Annulus between the curve and one boundary circle"""
        return self.euler_characteristic == 0 and self.punctures == 0 and self.marked_points > 0

    def is_empty_disk(self) -> bool:
        return self.euler_characteristic == 1 and not self.vertices and self.boundary_arcs == 0

    def is_closed_off(self) -> bool:
        """Contains no puncture and no marked point"""
        return self.punctures == 0 and self.marked_points == 0


@dataclass(frozen=True)
class Complement:
    sides: Tuple[ComplementSide, ...]

    @property
    def separating(self) -> bool:
        return len(self.sides) == 2


def complementary_regions(data: JunctureData) -> Complement:
    """Sides of the curve with their Euler characteristic and contents

    For a side A of a separating curve, chi(closure of A) with punctures
    filled is (#vertices in A) - (#arc pieces in A) + (#small regions in A);
    junctures and loop segments cancel.
    """
    t = data.triangulation
    graph = nx.Graph()
    graph.add_nodes_from(small_regions(data))

    piece_region: Dict[Tuple[int, int], RegionKey] = {}
    for arc in t.arcs():
        ref = t.reference_side(arc)
        n = data.side_count(ref)
        for piece in range(n + 1):
            here = region_of_piece(data, ref, piece)
            piece_region[(arc, piece)] = here
            for side in t.incidences(arc)[1:]:
                graph.add_edge(here, region_of_piece(data, side, partner_piece(data, ref, piece)))

    components = sorted((frozenset(c) for c in nx.connected_components(graph)), key=min)
    owner = {region: i for i, comp in enumerate(components) for region in comp}

    vertices: List[List[int]] = [[] for _ in components]
    punctures = [0] * len(components)
    marked = [0] * len(components)
    for vertex in t.vertex_classes():
        sides = {owner[region_at_vertex(data, corner)] for corner in vertex.corners}
        if len(sides) != 1:
            raise InternalInvariantError("vertex_side", f"vertex {vertex.index} lies on several sides",
                                         sorted(sides))
        idx = sides.pop()
        vertices[idx].append(vertex.index)
        if vertex.marked:
            marked[idx] += 1
        else:
            punctures[idx] += 1

    pieces = [0] * len(components)
    boundary = [0] * len(components)
    for (arc, _), region in piece_region.items():
        pieces[owner[region]] += 1
    for arc in t.arcs():
        if t.is_boundary(arc):
            boundary[owner[piece_region[(arc, 0)]]] += 1

    sides = tuple(
        ComplementSide(
            regions=comp,
            vertices=tuple(vertices[i]),
            punctures=punctures[i],
            marked_points=marked[i],
            boundary_arcs=boundary[i],
            euler_characteristic=len(vertices[i]) - pieces[i] + len(comp),
        )
        for i, comp in enumerate(components)
    )
    logger.debug("complement_built", sides=len(sides),
                 chi=[s.euler_characteristic for s in sides])
    return Complement(sides)


def classify_curve(data: JunctureData) -> Tuple[bool, Complement]:
    """Peripherality of a connected curve; rejects contractible curves"""

    if data.is_empty():
        raise CurveError("empty curve is not a loop")
    complement = complementary_regions(data)
    if complement.separating and any(side.is_empty_disk() for side in complement.sides):
        raise CurveError("curve bounds an unpunctured disk")
    peripheral = complement.separating and any(side.is_once_punctured_disk() or side.is_boundary_collar()
                                               for side in complement.sides)
    return peripheral, complement


def is_peripheral(t: Triangulation, curve: CurveOnSurface) -> bool:
    """True iff the curve cuts off a once-punctured disk or a boundary collar"""

    peripheral, _ = classify_curve(build_junctures(t, curve))
    if curve.declared_peripheral is not None and curve.declared_peripheral != peripheral:
        raise CurveError(f"curve declared peripheral={curve.declared_peripheral} but is {peripheral}")
    return peripheral


def encloses_closed_subsurface(data: JunctureData) -> bool:
    """Some side of the curve contains no puncture and no marked point"""
    complement = complementary_regions(data)
    return complement.separating and any(side.is_closed_off() for side in complement.sides)
