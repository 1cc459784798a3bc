#!/usr/bin/env python3
"""
Integral Laminations

A lamination is a finite set of pairwise disjoint, pairwise non-homotopic
curves with nonzero integer weights; negative weights are allowed only on
peripheral curves. Input is normalized on ingest: homotopic (equal corner
count) components are merged by summing weights and zero weights dropped.
"""

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Mapping, Sequence, Tuple

import structlog

from skeintrace.errors import LaminationError, SchemaError
from skeintrace.lamination.curve import CurveOnSurface, JunctureData, build_junctures, layout_junctures, trace_components
from skeintrace.lamination.regions import classify_curve
from skeintrace.surface.triangulation import Triangulation

logger = structlog.get_logger(__name__)


@dataclass(frozen=True)
class LaminationComponent:
    curve: CurveOnSurface
    weight: int
    peripheral: bool
    junctures: JunctureData = field(compare=False, repr=False)


@dataclass(frozen=True)
class IntegralLamination:
    components: Tuple[LaminationComponent, ...]
    normalization_notes: Tuple[str, ...] = ()

    @classmethod
    def empty(cls) -> "IntegralLamination":
        return cls(())

    @classmethod
    def from_dict(cls, t: Triangulation, data: Mapping[str, Any]) -> "IntegralLamination":
        if "components" not in data:
            raise SchemaError("lamination needs a components list")
        entries = []
        for raw in data["components"]:
            if "weight" not in raw:
                raise SchemaError("lamination component needs a weight")
            entries.append((CurveOnSurface.from_dict(t, raw), int(raw["weight"])))
        return normalize_lamination(t, entries)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "components": [
                dict(component.curve.to_dict(), weight=component.weight)
                for component in self.components
            ]
        }

    def is_empty(self) -> bool:
        return not self.components


def normalize_lamination(t: Triangulation,
                         entries: Sequence[Tuple[CurveOnSurface, int]]) -> IntegralLamination:
    """Merge homotopic components, drop zero weights and validate the rest"""

    notes: List[str] = []
    merged: Dict[Tuple, Tuple[CurveOnSurface, int]] = {}
    for curve, weight in entries:
        key = curve.canonical_key()
        if key in merged:
            first, total = merged[key]
            merged[key] = (first, total + weight)
            notes.append(f"merged homotopic component into weight {total + weight}")
        else:
            merged[key] = (curve, weight)

    components = []
    for key in sorted(merged):
        curve, weight = merged[key]
        if weight == 0:
            notes.append("dropped component with zero weight")
            continue
        if not curve.corner_counts:
            raise LaminationError("lamination component is an empty curve")
        data = build_junctures(t, curve)
        peripheral, _ = classify_curve(data)
        if curve.declared_peripheral is not None and curve.declared_peripheral != peripheral:
            raise LaminationError(f"component declared peripheral={curve.declared_peripheral} but is {peripheral}")
        if weight < 0 and not peripheral:
            raise LaminationError(f"negative weight {weight} on a non-peripheral component")
        components.append(LaminationComponent(curve, weight, peripheral, data))

    check_disjoint(t, [c.curve for c in components])
    if notes:
        logger.info("lamination_normalized", notes=notes)
    return IntegralLamination(tuple(components), tuple(notes))


def check_disjoint(t: Triangulation, curves: Sequence[CurveOnSurface]):
    """Components are disjoint iff their union traces back into the same curves"""

    if len(curves) < 2:
        return
    union: Counter = Counter()
    for curve in curves:
        union.update(curve.corner_counts)
    data = layout_junctures(t, dict(union))
    traced = Counter()
    for cycle in trace_components(data):
        counts = Counter(data.segments[g].corner for g, _, _ in cycle)
        traced[tuple(sorted(counts.items()))] += 1
    expected = Counter(tuple(sorted(c.corner_counts.items())) for c in curves)
    if traced != expected:
        raise LaminationError("lamination components intersect")


def fock_coordinate(t: Triangulation, lamination: IntegralLamination, arc: int) -> Fraction:
    """Half the weighted number of crossings with an arc"""
    t.incidences(arc)
    total = sum(c.weight * c.curve.side_count(t.reference_side(arc)) for c in lamination.components)
    return Fraction(total, 2)


def fock_coordinates(t: Triangulation, lamination: IntegralLamination) -> Dict[int, Fraction]:
    return {arc: fock_coordinate(t, lamination, arc) for arc in t.arcs()}


def is_even(t: Triangulation, lamination: IntegralLamination) -> bool:
    return all(value.denominator == 1 for value in fock_coordinates(t, lamination).values())
