#!/usr/bin/env python3
"""
Curves on a Triangulated Surface

A curve is stored as the number of loop segments in each corner, with an
optional cyclic traversal. Junctures on an arc are numbered along the arc in
the parametrization of its reference incidence (its smallest (triangle, slot)
pair).

Within a corner, depth 0 is the segment nearest the vertex. On side ``s`` of a
triangle the segments of the corner at the start vertex of the side come
first (depth increasing along the side), then those of the corner at the end
vertex (depth decreasing).
"""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple

import structlog

from skeintrace.errors import CurveError, SchemaError
from skeintrace.surface.triangulation import SLOT_COUNT, Corner, Side, Triangulation, next_slot

logger = structlog.get_logger(__name__)


@dataclass(frozen=True)
class TraversalStep:
    """One pass through a corner, entering and leaving through two slots"""

    triangle: int
    entry: int
    exit: int

    @property
    def corner(self) -> Corner:
        return Corner(self.triangle, SLOT_COUNT - self.entry - self.exit)

    def to_list(self) -> List[int]:
        return [self.triangle, self.entry + 1, self.exit + 1]


@dataclass(frozen=True)
class LoopSegment:
    id: int
    corner: Corner
    depth: int
    # juncture ids on corner.sides[0] and corner.sides[1]
    endpoints: Tuple[int, int]

    @property
    def triangle(self) -> int:
        return self.corner.triangle

    def endpoint_on(self, slot: int) -> int:
        first, second = self.corner.sides
        if slot == first:
            return self.endpoints[0]
        if slot == second:
            return self.endpoints[1]
        raise ValueError(f"segment {self.id} has no endpoint on slot {slot + 1}")

    def other_side(self, slot: int) -> int:
        first, second = self.corner.sides
        return second if slot == first else first


@dataclass(frozen=True)
class Juncture:
    id: int
    arc: int
    position: int
    # (incidence side, segment id), one entry per incidence of the arc
    segments: Tuple[Tuple[Side, int], ...]


class CurveOnSurface:
    """Corner counts plus an optional traversal and declared peripherality"""

    def __init__(self, corner_counts: Mapping[Corner, int],
                 traversal: Optional[Sequence[TraversalStep]] = None,
                 declared_peripheral: Optional[bool] = None):
        for corner, count in corner_counts.items():
            if not isinstance(count, int) or count < 0:
                raise CurveError(f"corner {corner.label()} has invalid count {count!r}")
        self.corner_counts: Dict[Corner, int] = {c: n for c, n in sorted(corner_counts.items()) if n}
        self.traversal: Optional[Tuple[TraversalStep, ...]] = tuple(traversal) if traversal else None
        self.declared_peripheral = declared_peripheral

    @classmethod
    def from_arc_weights(cls, t: Triangulation, weights: Mapping[int, int],
                         declared_peripheral: Optional[bool] = None) -> "CurveOnSurface":
        """Corner counts from normal coordinates (crossings per arc)"""

        for arc, w in weights.items():
            if w < 0:
                raise CurveError(f"arc {t.arc_label(arc)} has negative weight {w}")
            if w and t.is_boundary(arc):
                raise CurveError(f"curve crosses boundary arc {t.arc_label(arc)}")
        counts: Dict[Corner, int] = {}
        for tri in range(t.triangle_count):
            w = [weights.get(a, 0) for a in t.slots(tri)]
            for k in range(SLOT_COUNT):
                doubled = w[next_slot(k, 1)] + w[next_slot(k, 2)] - w[k]
                if doubled < 0 or doubled % 2:
                    raise CurveError(f"arc weights violate the triangle rule in triangle {tri}")
                counts[Corner(tri, k)] = doubled // 2
        return cls(counts, declared_peripheral=declared_peripheral)

    @classmethod
    def from_dict(cls, t: Triangulation, data: Mapping[str, Any]) -> "CurveOnSurface":
        declared = data.get("peripheral")
        if "arc_weights" in data:
            weights = {t.arc_by_label(label): int(w) for label, w in data["arc_weights"].items()}
            curve = cls.from_arc_weights(t, weights, declared)
        elif "corner_counts" in data:
            counts = {}
            for key, count in data["corner_counts"].items():
                try:
                    tri, k = (int(x) for x in str(key).split(":"))
                except ValueError:
                    raise SchemaError(f"corner key {key!r} is not of the form 'triangle:slot'")
                if not (0 <= tri < t.triangle_count and 1 <= k <= SLOT_COUNT):
                    raise CurveError(f"corner {key!r} does not exist")
                counts[Corner(tri, k - 1)] = int(count)
            curve = cls(counts, declared_peripheral=declared)
        else:
            raise SchemaError("curve needs corner_counts or arc_weights")

        if data.get("traversal"):
            steps = []
            for step in data["traversal"]:
                tri, entry, exit_ = (int(x) for x in step)
                if not (0 <= tri < t.triangle_count) or {entry, exit_} - {1, 2, 3} or entry == exit_:
                    raise CurveError(f"invalid traversal step {step!r}")
                steps.append(TraversalStep(tri, entry - 1, exit_ - 1))
            curve = cls(curve.corner_counts, steps, declared)
        return curve

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {
            "corner_counts": {c.label(): n for c, n in self.corner_counts.items()},
        }
        if self.traversal:
            data["traversal"] = [step.to_list() for step in self.traversal]
        if self.declared_peripheral is not None:
            data["peripheral"] = self.declared_peripheral
        return data

    def count(self, corner: Corner) -> int:
        return self.corner_counts.get(corner, 0)

    def canonical_key(self) -> Tuple[Tuple[int, int, int], ...]:
        return tuple((c.triangle, c.index, n) for c, n in self.corner_counts.items())

    def side_count(self, side: Side) -> int:
        tri, s = side
        return self.count(Corner(tri, next_slot(s, 1))) + self.count(Corner(tri, next_slot(s, 2)))

    def arc_weights(self, t: Triangulation) -> Dict[int, int]:
        return {arc: self.side_count(t.reference_side(arc)) for arc in t.arcs()}

    def segment_count(self) -> int:
        return sum(self.corner_counts.values())

    def with_traversal(self, traversal: Sequence[TraversalStep]) -> "CurveOnSurface":
        return CurveOnSurface(self.corner_counts, traversal, self.declared_peripheral)

    def scaled(self, factor: int) -> "CurveOnSurface":
        return CurveOnSurface({c: n * factor for c, n in self.corner_counts.items()})

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CurveOnSurface):
            return NotImplemented
        return self.corner_counts == other.corner_counts

    def __hash__(self) -> int:
        return hash(self.canonical_key())


@dataclass
class JunctureData:
    """Junctures and loop segments of a (multi)curve"""

    triangulation: Triangulation
    corner_counts: Dict[Corner, int]
    segments: List[LoopSegment]
    junctures: List[Juncture]
    arc_junctures: Dict[int, List[int]]
    # (segment id, entry slot, exit slot) in traversal order
    cycle: Tuple[Tuple[int, int, int], ...] = field(default=())

    def side_count(self, side: Side) -> int:
        tri, s = side
        return (self.corner_counts.get(Corner(tri, next_slot(s, 1)), 0)
                + self.corner_counts.get(Corner(tri, next_slot(s, 2)), 0))

    def count(self, corner: Corner) -> int:
        return self.corner_counts.get(corner, 0)

    def reference_position(self, side: Side, local: int) -> int:
        arc = self.triangulation.arc_at(*side)
        if side == self.triangulation.reference_side(arc):
            return local
        return self.side_count(side) - 1 - local

    def juncture_on_side(self, side: Side, local: int) -> int:
        arc = self.triangulation.arc_at(*side)
        return self.arc_junctures[arc][self.reference_position(side, local)]

    def local_position(self, side: Side, juncture: int) -> int:
        # the position map is an involution on 0..n-1
        return self.reference_position(side, self.junctures[juncture].position)

    def segments_in_triangle(self, triangle: int) -> List[LoopSegment]:
        return [g for g in self.segments if g.triangle == triangle]

    def segment_at_side(self, juncture: int, side: Side) -> LoopSegment:
        for s, seg in self.junctures[juncture].segments:
            if s == side:
                return self.segments[seg]
        raise KeyError((juncture, side))

    def traversal_steps(self) -> List[TraversalStep]:
        return [TraversalStep(self.segments[g].triangle, entry, exit_) for g, entry, exit_ in self.cycle]

    def crossing_sequence(self) -> List[int]:
        """Arcs crossed in traversal order"""
        return [self.junctures[self.segments[g].endpoint_on(exit_)].arc for g, _, exit_ in self.cycle]

    @property
    def juncture_count(self) -> int:
        return len(self.junctures)

    def is_empty(self) -> bool:
        return not self.segments


def layout_junctures(t: Triangulation, corner_counts: Mapping[Corner, int]) -> JunctureData:
    """Place junctures and loop segments for a multicurve given by corner counts"""

    counts = {c: n for c, n in corner_counts.items() if n}
    for corner in counts:
        if not (0 <= corner.triangle < t.triangle_count and 0 <= corner.index < SLOT_COUNT):
            raise CurveError(f"corner {corner.label()} does not exist")
        if t.is_self_folded_corner(corner):
            raise CurveError(f"loop segment in self-folded corner {corner.label()}")

    def side_count(side: Side) -> int:
        tri, s = side
        return counts.get(Corner(tri, next_slot(s, 1)), 0) + counts.get(Corner(tri, next_slot(s, 2)), 0)

    arc_junctures: Dict[int, List[int]] = {}
    junctures_pos: List[Tuple[int, int]] = []
    for arc in t.arcs():
        sizes = {side_count(side) for side in t.incidences(arc)}
        if len(sizes) != 1:
            raise CurveError(f"edge matching fails on arc {t.arc_label(arc)}: counts {sorted(sizes)}")
        n = sizes.pop()
        if n and t.is_boundary(arc):
            raise CurveError(f"curve crosses boundary arc {t.arc_label(arc)}")
        arc_junctures[arc] = list(range(len(junctures_pos), len(junctures_pos) + n))
        junctures_pos.extend((arc, p) for p in range(n))

    def juncture_at(side: Side, local: int) -> int:
        arc = t.arc_at(*side)
        ref = local if side == t.reference_side(arc) else side_count(side) - 1 - local
        return arc_junctures[arc][ref]

    segments: List[LoopSegment] = []
    attached: Dict[int, List[Tuple[Side, int]]] = {j: [] for j in range(len(junctures_pos))}
    for corner in sorted(counts):
        first, second = corner.sides
        tri = corner.triangle
        for depth in range(counts[corner]):
            # end-vertex corner of `first`, start-vertex corner of `second`
            j_first = juncture_at((tri, first), side_count((tri, first)) - 1 - depth)
            j_second = juncture_at((tri, second), depth)
            if junctures_pos[j_first][0] == junctures_pos[j_second][0]:
                raise CurveError(f"segment in corner {corner.label()} returns to the same arc")
            seg = LoopSegment(len(segments), corner, depth, (j_first, j_second))
            segments.append(seg)
            attached[j_first].append(((tri, first), seg.id))
            attached[j_second].append(((tri, second), seg.id))

    junctures = [Juncture(j, arc, pos, tuple(sorted(attached[j]))) for j, (arc, pos) in enumerate(junctures_pos)]
    return JunctureData(t, counts, segments, junctures, arc_junctures)


def _walk(data: JunctureData, start: int, entry: int) -> List[Tuple[int, int, int]]:
    steps = []
    seg, slot_in = start, entry
    while True:
        segment = data.segments[seg]
        slot_out = segment.other_side(slot_in)
        steps.append((seg, slot_in, slot_out))
        exit_side = (segment.triangle, slot_out)
        juncture = data.junctures[segment.endpoint_on(slot_out)]
        (side, nxt), = [(s, g) for s, g in juncture.segments if s != exit_side]
        seg, slot_in = nxt, side[1]
        if seg == start and slot_in == entry:
            return steps
        if len(steps) > len(data.segments):
            raise CurveError("traversal does not close up")


def trace_components(data: JunctureData) -> List[Tuple[Tuple[int, int, int], ...]]:
    """Cycles of the multicurve, each started at its lowest segment"""

    seen = set()
    cycles = []
    for segment in data.segments:
        if segment.id in seen:
            continue
        cycle = _walk(data, segment.id, segment.corner.sides[0])
        seen.update(g for g, _, _ in cycle)
        cycles.append(tuple(cycle))
    return cycles


def build_junctures(t: Triangulation, curve: CurveOnSurface) -> JunctureData:
    """Junctures, loop segments and the traversal of a connected curve"""

    data = layout_junctures(t, curve.corner_counts)
    if data.is_empty():
        return data

    cycles = trace_components(data)
    if len(cycles) != 1:
        raise CurveError(f"curve is not connected: {len(cycles)} components")

    if curve.traversal:
        data.cycle = _match_traversal(data, curve.traversal)
    else:
        data.cycle = cycles[0]

    logger.debug("junctures_built", junctures=data.juncture_count, segments=len(data.segments))
    return data


def _match_traversal(data: JunctureData, traversal: Sequence[TraversalStep]) -> Tuple[Tuple[int, int, int], ...]:
    if len(traversal) != len(data.segments):
        raise CurveError(f"traversal has {len(traversal)} steps but the curve has {len(data.segments)} segments")
    wanted = [(s.corner, s.entry, s.exit) for s in traversal]
    first = traversal[0]
    if set(first.corner.sides) != {first.entry, first.exit}:
        raise CurveError("traversal step does not pass through a corner")
    for segment in data.segments:
        if segment.corner != first.corner:
            continue
        steps = _walk(data, segment.id, first.entry)
        if [(data.segments[g].corner, a, b) for g, a, b in steps] == wanted:
            return tuple(steps)
    raise CurveError("traversal is inconsistent with the corner counts")


def rotate_traversal(data: JunctureData, offset: int) -> CurveOnSurface:
    """The same curve with its traversal started `offset` steps later"""
    steps = data.traversal_steps()
    if not steps:
        return CurveOnSurface(data.corner_counts)
    offset %= len(steps)
    return CurveOnSurface(data.corner_counts, steps[offset:] + steps[:offset])
