#!/usr/bin/env python3
"""
Ideal Triangulations of Decorated Surfaces

A triangulation is a list of triangles with three side-slots each, in
clockwise order, plus a gluing involution on (triangle, slot) pairs. Fixed
points of the involution are boundary arcs. Each orbit is one constituent
arc; arc ids are dense integers assigned in order of first (triangle, slot)
incidence.

Geometry conventions used throughout the package:

- corner ``k`` of a triangle is the corner opposite slot ``k``; it is
  delimited by slots ``k+1`` and ``k+2`` (mod 3) and sits at the vertex
  shared by those two sides;
- side ``s`` is parametrized clockwise, from the vertex it shares with side
  ``s-1`` to the vertex it shares with side ``s+1``;
- a gluing reverses the parametrization of the two glued sides.
"""

from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Sequence, Tuple

import networkx as nx
import numpy as np
import structlog

from skeintrace.errors import TriangulationError

logger = structlog.get_logger(__name__)

SLOT_COUNT = 3

Side = Tuple[int, int]


def next_slot(s: int, step: int = 1) -> int:
    return (s + step) % SLOT_COUNT


@dataclass(frozen=True)
class DecoratedSurface:
    """Genus, puncture count and boundary-arc count of the surface"""

    genus: int
    punctures: int
    boundary_arcs: int

    @property
    def distinguished_count(self) -> int:
        return self.punctures + self.boundary_arcs

    def condition_violations(self) -> List[str]:
        violations = []
        if self.genus < 0 or self.punctures < 0 or self.boundary_arcs < 0:
            violations.append("surface counts must be nonnegative")
        n = self.distinguished_count
        if self.genus == 0 and n < 3:
            violations.append(f"genus 0 requires punctures + boundary_arcs >= 3, got {n}")
        if self.genus > 0 and n < 1:
            violations.append(f"positive genus requires punctures + boundary_arcs >= 1, got {n}")
        return violations

    def to_dict(self) -> Dict[str, int]:
        return {"genus": self.genus, "punctures": self.punctures, "boundary_arcs": self.boundary_arcs}


@dataclass(frozen=True, order=True)
class Corner:
    """Corner of a triangle, named by the slot it is opposite to"""

    triangle: int
    index: int

    @property
    def sides(self) -> Tuple[int, int]:
        """Delimiting slots in clockwise order"""
        return (next_slot(self.index, 1), next_slot(self.index, 2))

    def label(self) -> str:
        return f"{self.triangle}:{self.index + 1}"


@dataclass(frozen=True)
class TaggedCorner:
    """Corner between two arcs with its handedness

    ``handedness`` is +1 when the first arc sits on the first delimiting slot,
    -1 when the order is reversed and 0 for a self-folded corner.
    """

    corner: Corner
    handedness: int


@dataclass(frozen=True)
class VertexClass:
    index: int
    corners: Tuple[Corner, ...]
    marked: bool


class Triangulation:
    """Combinatorial ideal triangulation"""

    def __init__(self, surface: DecoratedSurface, triangle_count: int,
                 gluing_pairs: Sequence[Tuple[Side, Side]],
                 labels: Optional[Dict[Side, str]] = None,
                 structural_violations: Optional[List[str]] = None):
        self.surface = surface
        self.triangle_count = triangle_count
        self._violations: List[str] = list(structural_violations or [])

        self._partner: Dict[Side, Optional[Side]] = {
            (t, s): None for t in range(triangle_count) for s in range(SLOT_COUNT)
        }
        for a, b in gluing_pairs:
            a, b = tuple(a), tuple(b)
            if a not in self._partner or b not in self._partner:
                self._violations.append(f"gluing references unknown slot {_fmt(a)} or {_fmt(b)}")
                continue
            if a == b:
                self._violations.append(f"slot {_fmt(a)} is glued to itself")
                continue
            if self._partner[a] is not None or self._partner[b] is not None:
                self._violations.append(f"slot {_fmt(a)} or {_fmt(b)} is glued more than once")
                continue
            self._partner[a] = b
            self._partner[b] = a

        self._arc_of: Dict[Side, int] = {}
        self._incidences: List[Tuple[Side, ...]] = []
        for side in sorted(self._partner):
            if side in self._arc_of:
                continue
            arc = len(self._incidences)
            other = self._partner[side]
            members = (side,) if other is None else tuple(sorted((side, other)))
            for member in members:
                self._arc_of[member] = arc
            self._incidences.append(members)

        labels = labels or {}
        self._labels = [labels.get(inc[0], str(arc + 1)) for arc, inc in enumerate(self._incidences)]
        self._arc_by_label = {label: arc for arc, label in enumerate(self._labels)}
        if len(self._arc_by_label) != len(self._labels):
            self._violations.append("arc labels are not unique")

        self._vertex_classes: Optional[List[VertexClass]] = None

    @classmethod
    def from_labels(cls, surface: DecoratedSurface,
                    triangles: Sequence[Sequence[Any]]) -> "Triangulation":
        """Build from per-triangle side labels in clockwise order"""

        violations: List[str] = []
        occurrences: Dict[str, List[Side]] = {}
        for t, slots in enumerate(triangles):
            if len(slots) != SLOT_COUNT:
                violations.append(f"triangle {t} has {len(slots)} slots")
                continue
            for s, label in enumerate(slots):
                occurrences.setdefault(str(label), []).append((t, s))

        pairs: List[Tuple[Side, Side]] = []
        labels: Dict[Side, str] = {}
        for label, sides in occurrences.items():
            if len(sides) > 2:
                violations.append(f"arc label {label} appears {len(sides)} times")
                continue
            if len(sides) == 2:
                pairs.append((sides[0], sides[1]))
            labels[sides[0]] = label
        return cls(surface, len(triangles), pairs, labels, violations)

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "Triangulation":
        """Build from the JSON document form (0-based triangles, 1-based slots)"""

        surface = DecoratedSurface(**{k: int(v) for k, v in data["surface"].items()})
        triangles = data["triangles"]
        gluing = [((int(a[0]), int(a[1]) - 1), (int(b[0]), int(b[1]) - 1))
                  for a, b in data.get("gluing", [])]

        if all("slots" in tri for tri in triangles):
            triangulation = cls.from_labels(surface, [tri["slots"] for tri in triangles])
            if "gluing" in data:
                triangulation._cross_check_gluing(gluing)
            return triangulation
        return cls(surface, len(triangles), gluing)

    def _cross_check_gluing(self, gluing: Sequence[Tuple[Side, Side]]):
        declared = set()
        for a, b in gluing:
            if a not in self._partner or b not in self._partner:
                self._violations.append(f"gluing references unknown slot {_fmt(a)} or {_fmt(b)}")
                continue
            if a == b:
                self._violations.append(f"slot {_fmt(a)} is glued to itself")
                continue
            if self._partner[a] != b:
                self._violations.append(f"gluing {_fmt(a)}-{_fmt(b)} disagrees with slot labels")
            declared.add(frozenset((a, b)))
        for side, other in self._partner.items():
            if other is not None and frozenset((side, other)) not in declared:
                self._violations.append(f"labels glue {_fmt(side)}-{_fmt(other)} but gluing omits it")

    def to_dict(self) -> Dict[str, Any]:
        gluing = []
        for inc in self._incidences:
            if len(inc) == 2:
                gluing.append([[inc[0][0], inc[0][1] + 1], [inc[1][0], inc[1][1] + 1]])
        return {
            "surface": self.surface.to_dict(),
            "triangles": [{"slots": [self._labels[a] for a in self.slots(t)]}
                          for t in range(self.triangle_count)],
            "gluing": gluing,
        }

    # Arcs and sides

    @property
    def arc_count(self) -> int:
        return len(self._incidences)

    def arcs(self) -> range:
        return range(self.arc_count)

    def arc_at(self, triangle: int, slot: int) -> int:
        return self._arc_of[(triangle, slot)]

    def slots(self, triangle: int) -> Tuple[int, int, int]:
        return tuple(self._arc_of[(triangle, s)] for s in range(SLOT_COUNT))

    def partner(self, side: Side) -> Optional[Side]:
        return self._partner[side]

    def incidences(self, arc: int) -> Tuple[Side, ...]:
        self._require_arc(arc)
        return self._incidences[arc]

    def reference_side(self, arc: int) -> Side:
        """The incidence whose parametrization orders junctures on the arc"""
        return self.incidences(arc)[0]

    def is_boundary(self, arc: int) -> bool:
        return len(self.incidences(arc)) == 1

    def interior_arcs(self) -> List[int]:
        return [a for a in self.arcs() if not self.is_boundary(a)]

    def arc_label(self, arc: int) -> str:
        return self._labels[arc]

    def arc_by_label(self, label: Any) -> int:
        try:
            return self._arc_by_label[str(label)]
        except KeyError:
            raise TriangulationError(f"unknown arc label {label!r}")

    def _require_arc(self, arc: int):
        if not isinstance(arc, (int, np.integer)) or not 0 <= arc < len(self._incidences):
            raise TriangulationError(f"unknown arc id {arc!r}")

    # Corners

    def corners(self) -> List[Corner]:
        return [Corner(t, k) for t in range(self.triangle_count) for k in range(SLOT_COUNT)]

    def corner_arcs(self, corner: Corner) -> Tuple[int, int]:
        first, second = corner.sides
        return (self.arc_at(corner.triangle, first), self.arc_at(corner.triangle, second))

    def is_self_folded_corner(self, corner: Corner) -> bool:
        first, second = self.corner_arcs(corner)
        return first == second

    def self_folded_corner(self, triangle: int) -> Optional[Corner]:
        for k in range(SLOT_COUNT):
            corner = Corner(triangle, k)
            if self.is_self_folded_corner(corner):
                return corner
        return None

    def is_self_folded(self, triangle: int) -> bool:
        return self.self_folded_corner(triangle) is not None

    def corners_between(self, e: int, f: int) -> List[TaggedCorner]:
        """Corners delimited by arcs e and f, tagged with handedness"""

        self._require_arc(e)
        self._require_arc(f)
        tagged = []
        for corner in self.corners():
            first, second = self.corner_arcs(corner)
            if e == f:
                if first == e and second == e:
                    tagged.append(TaggedCorner(corner, 0))
            elif (first, second) == (e, f):
                tagged.append(TaggedCorner(corner, 1))
            elif (first, second) == (f, e):
                tagged.append(TaggedCorner(corner, -1))
        return tagged

    def epsilon(self, e: int, f: int) -> int:
        """Commutation exponent: corners with e before f minus corners with f before e"""
        return sum(tc.handedness for tc in self.corners_between(e, f))

    def epsilon_matrix(self) -> np.ndarray:
        matrix = np.zeros((self.arc_count, self.arc_count), dtype=np.int64)
        for corner in self.corners():
            first, second = self.corner_arcs(corner)
            if first != second:
                matrix[first, second] += 1
                matrix[second, first] -= 1
        return matrix

    # Vertices and topology

    def vertex_of_corner(self, corner: Corner) -> int:
        for vertex in self.vertex_classes():
            if corner in vertex.corners:
                return vertex.index
        raise TriangulationError(f"corner {corner.label()} has no vertex class")

    def vertex_classes(self) -> List[VertexClass]:
        """Vertices of the triangulation as classes of glued corners"""

        if self._vertex_classes is not None:
            return self._vertex_classes

        graph = nx.Graph()
        graph.add_nodes_from(self.corners())
        for (t, x), other in self._partner.items():
            if other is None:
                continue
            t2, x2 = other
            # start of side x in t meets the end of the partner side
            graph.add_edge(Corner(t, next_slot(x, 1)), Corner(t2, next_slot(x2, 2)))

        classes = []
        for members in sorted((sorted(c) for c in nx.connected_components(graph)), key=lambda c: c[0]):
            marked = any(self._partner[(corner.triangle, side)] is None
                         for corner in members for side in corner.sides)
            classes.append(VertexClass(len(classes), tuple(members), marked))
        self._vertex_classes = classes
        return classes

    def punctures(self) -> List[VertexClass]:
        return [v for v in self.vertex_classes() if not v.marked]

    def boundary_circle_count(self) -> int:
        boundary = [a for a in self.arcs() if self.is_boundary(a)]
        if not boundary:
            return 0
        graph = nx.Graph()
        for arc in boundary:
            t, x = self.reference_side(arc)
            graph.add_node(("arc", arc))
            for corner in (Corner(t, next_slot(x, 1)), Corner(t, next_slot(x, 2))):
                graph.add_edge(("arc", arc), ("vertex", self.vertex_of_corner(corner)))
        return nx.number_connected_components(graph)

    def euler_characteristic(self) -> int:
        return len(self.vertex_classes()) - self.arc_count + self.triangle_count

    def validate(self) -> List[str]:
        """All invariant violations; empty iff the triangulation is valid"""

        violations = list(self._violations)
        if self.triangle_count < 1:
            violations.append("triangulation has no triangles")
            return violations
        violations.extend(self.surface.condition_violations())
        if self._violations:
            return violations

        punctures = len(self.punctures())
        if punctures != self.surface.punctures:
            violations.append(f"found {punctures} punctures, surface declares {self.surface.punctures}")
        boundary = sum(1 for a in self.arcs() if self.is_boundary(a))
        if boundary != self.surface.boundary_arcs:
            violations.append(f"found {boundary} boundary arcs, surface declares {self.surface.boundary_arcs}")
        expected = 2 - 2 * self.surface.genus - self.boundary_circle_count()
        chi = self.euler_characteristic()
        if chi != expected:
            violations.append(f"Euler characteristic V-E+F={chi} but genus and boundary require {expected}")

        logger.debug("triangulation_validated", triangles=self.triangle_count,
                     arcs=self.arc_count, violations=len(violations))
        return violations

    def ensure_valid(self) -> "Triangulation":
        violations = self.validate()
        if violations:
            raise TriangulationError("invalid triangulation", violations)
        return self


def _fmt(side: Side) -> str:
    return f"({side[0]},{side[1] + 1})"
