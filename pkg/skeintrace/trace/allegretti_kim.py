#!/usr/bin/env python3
"""
Allegretti-Kim Elements of Integral Laminations

- non-peripheral component of weight k: F_k of the quantum trace of the curve
- peripheral component of weight k: the k-th power of its Weyl-ordered
  crossing monomial
- lamination: product over components, sorted by canonical curve key

Includes the classical-limit oracle and the choice-independence harness.
"""

import random
from dataclasses import dataclass, field, replace
from typing import Any, Dict, List, Optional, Sequence, Tuple

import structlog

from skeintrace.config import EngineKind
from skeintrace.errors import CurveError, InputError, InternalInvariantError, LaminationError
from skeintrace.lamination.curve import CurveOnSurface, JunctureData, build_junctures, rotate_traversal
from skeintrace.lamination.lamination import IntegralLamination, LaminationComponent
from skeintrace.ordering.chains import SeededPolicy, TieBreakPolicy
from skeintrace.ordering.solver import OrderingSolution, solve_ordering
from skeintrace.qtorus.algebras import arc_algebra
from skeintrace.qtorus.commutative import CommutativeLaurent
from skeintrace.qtorus.torus import QTElement, QuantumTorus, weyl_coefficients
from skeintrace.surface.triangulation import SLOT_COUNT, Corner, Triangulation
from skeintrace.trace.chebyshev import evaluate_chebyshev
from skeintrace.trace.engines import quantum_trace, quantum_trace_transfer_matrix

logger = structlog.get_logger(__name__)


@dataclass
class TraceOptions:
    engine: EngineKind = EngineKind.TRANSFER
    policy: Optional[TieBreakPolicy] = None
    statesum_max_junctures: Optional[int] = 16
    order_check_max_terms: int = 400


@dataclass
class ComponentTrace:
    component: LaminationComponent
    element: QTElement
    solution: Optional[OrderingSolution] = None

    def summary(self) -> Dict[str, Any]:
        return {
            "curve": self.component.curve.to_dict(),
            "weight": self.component.weight,
            "peripheral": self.component.peripheral,
            "junctures": self.component.junctures.juncture_count,
            "monomials": len(self.element),
            "terms": self.element.term_count(),
        }


@dataclass
class TraceResult:
    element: QTElement
    components: List[ComponentTrace] = field(default_factory=list)
    order_checked: bool = False


def peripheral_element(t: Triangulation, component: LaminationComponent, k: int,
                       torus: Optional[QuantumTorus] = None) -> QTElement:
    """[Z_e1 ... Z_er]^k for the arcs met by one traversal of a peripheral curve"""

    if not component.peripheral:
        raise CurveError("peripheral element requested for a non-peripheral curve")
    torus = torus or arc_algebra(t)
    crossings = component.curve.arc_weights(t)
    return torus.weyl([k * crossings[arc] for arc in t.arcs()])


def _non_peripheral_trace(t: Triangulation, component: LaminationComponent,
                          options: TraceOptions) -> ComponentTrace:
    if component.weight < 1:
        raise LaminationError(f"non-peripheral component has weight {component.weight}")
    solution = solve_ordering(component.junctures, options.policy)
    if options.engine == EngineKind.STATESUM:
        trace = quantum_trace(component.junctures, solution, options.statesum_max_junctures)
    else:
        trace = quantum_trace_transfer_matrix(component.junctures, solution)
    element = evaluate_chebyshev(component.weight, trace, trace.torus.scalar)
    return ComponentTrace(component, element, solution)


def component_element(t: Triangulation, component: LaminationComponent,
                      options: Optional[TraceOptions] = None) -> ComponentTrace:
    options = options or TraceOptions()
    if component.peripheral:
        return ComponentTrace(component, peripheral_element(t, component, component.weight))
    return _non_peripheral_trace(t, component, options)


def allegretti_kim(t: Triangulation, lamination: IntegralLamination,
                   options: Optional[TraceOptions] = None) -> TraceResult:
    """Product of the component elements, with an order-independence check on small inputs"""

    options = options or TraceOptions()
    torus = arc_algebra(t)
    traces = [component_element(t, c, options) for c in lamination.components]

    element = torus.one()
    for trace in traces:
        element = element * trace.element

    checked = False
    if len(traces) > 1 and sum(tr.element.term_count() for tr in traces) <= options.order_check_max_terms:
        reversed_product = torus.one()
        for trace in reversed(traces):
            reversed_product = reversed_product * trace.element
        if reversed_product != element:
            raise InternalInvariantError("product_order", "component product depends on the order",
                                         [tr.component.curve.to_dict() for tr in traces])
        checked = True

    logger.debug("allegretti_kim_done", components=len(traces), monomials=len(element), order_checked=checked)
    return TraceResult(element, traces, checked)


def classical_oracle(t: Triangulation, lamination: IntegralLamination,
                     max_junctures: Optional[int] = None) -> CommutativeLaurent:
    """Commutative value at w = 1, independent of the quantum torus code

    A non-peripheral curve of weight k contributes the trace of the k-th
    power of its 2x2 monodromy along the traversal; a peripheral one the
    commuting monomial of its crossings.
    """
    names = [t.arc_label(a) for a in t.arcs()]
    result = CommutativeLaurent.one(names)
    for component in lamination.components:
        if component.peripheral:
            weights = component.curve.arc_weights(t)
            factor = CommutativeLaurent(names, {tuple(component.weight * weights[a] for a in t.arcs()): 1})
        else:
            data = component.junctures
            if max_junctures is not None and data.juncture_count > max_junctures:
                raise InputError(f"classical oracle is limited to {max_junctures} junctures")
            monodromy = curve_monodromy(data, names)
            power = monodromy
            for _ in range(component.weight - 1):
                power = _matmul(power, monodromy)
            factor = power[0][0] + power[1][1]
        result = result * factor
    return result


Matrix = Tuple[Tuple[CommutativeLaurent, CommutativeLaurent], Tuple[CommutativeLaurent, CommutativeLaurent]]


def _matmul(a: Matrix, b: Matrix) -> Matrix:
    return (
        (a[0][0] * b[0][0] + a[0][1] * b[1][0], a[0][0] * b[0][1] + a[0][1] * b[1][1]),
        (a[1][0] * b[0][0] + a[1][1] * b[1][0], a[1][0] * b[0][1] + a[1][1] * b[1][1]),
    )


def _arc_power(names: Sequence[str], arc: int, power: int) -> CommutativeLaurent:
    vec = [0] * len(names)
    vec[arc] = power
    return CommutativeLaurent(names, {tuple(vec): 1})


def curve_monodromy(data: JunctureData, names: Sequence[str]) -> Matrix:
    """Product of one 2x2 step per loop segment along the traversal

    Rows and columns are the states (+, -) of the juncture entered and left.
    A juncture in state + reads Z^-1, in state - reads Z; a segment forbids
    - on its first corner side together with + on its second.
    """
    one = CommutativeLaurent.one(names)
    zero = CommutativeLaurent(names)
    result: Matrix = ((one, zero), (zero, one))
    for g, entry, exit_ in data.cycle:
        segment = data.segments[g]
        arc = data.junctures[segment.endpoint_on(exit_)].arc
        down, up = _arc_power(names, arc, -1), _arc_power(names, arc, 1)
        if entry == segment.corner.sides[0]:
            step: Matrix = ((down, up), (zero, up))
        else:
            step = ((down, zero), (down, up))
        result = _matmul(result, step)
    return result


@dataclass
class InvarianceReport:
    baseline: QTElement
    variations: List[Dict[str, Any]] = field(default_factory=list)

    @property
    def identical(self) -> bool:
        return all(v["identical"] for v in self.variations)


def check_choice_independence(t: Triangulation, lamination: IntegralLamination, seeds: Sequence[int],
                              options: Optional[TraceOptions] = None) -> InvarianceReport:
    """Recompute under seeded tie-breaking, relabeled triangulations and traversal base points

    Shuffling the triangles and rotating their slot lists renumbers the arcs
    and moves their reference sides, so results are compared in the Weyl
    basis keyed by arc label.
    """

    options = options or TraceOptions()
    report = InvarianceReport(allegretti_kim(t, lamination, options).element)
    expected = weyl_coefficients(report.baseline)
    for seed in seeds:
        rng = random.Random(seed)
        relabeled, triangle_order, corners = _relabeled(t, rng)
        components = []
        offsets = []
        for component in lamination.components:
            moved = _transported(relabeled, corners, component)
            offset = rng.randrange(max(len(moved.junctures.segments), 1))
            offsets.append(offset)
            components.append(_rotated(relabeled, moved, offset))
        varied = replace(options, policy=SeededPolicy(seed))
        element = allegretti_kim(relabeled, IntegralLamination(tuple(components)), varied).element
        report.variations.append({
            "seed": seed,
            "triangle_order": triangle_order,
            "traversal_offsets": offsets,
            "identical": weyl_coefficients(element) == expected,
        })
    logger.debug("choice_independence_checked", seeds=len(seeds), identical=report.identical)
    return report


def _relabeled(t: Triangulation, rng: random.Random) -> Tuple[Triangulation, List[int], Dict[Corner, Corner]]:
    """Same surface with triangles shuffled and each slot list rotated, plus the corner map"""
    order = list(range(t.triangle_count))
    rng.shuffle(order)
    triangles = []
    moved: Dict[int, Tuple[int, int]] = {}
    for new, tri in enumerate(order):
        slots = [t.arc_label(a) for a in t.slots(tri)]
        k = rng.randrange(SLOT_COUNT)
        triangles.append({"slots": slots[k:] + slots[:k]})
        moved[tri] = (new, k)
    corners = {c: Corner(moved[c.triangle][0], (c.index - moved[c.triangle][1]) % SLOT_COUNT) for c in t.corners()}
    doc = {"surface": t.surface.to_dict(), "triangles": triangles}
    return Triangulation.from_dict(doc).ensure_valid(), order, corners


def _transported(target: Triangulation, corners: Dict[Corner, Corner],
                 component: LaminationComponent) -> LaminationComponent:
    curve = CurveOnSurface({corners[c]: n for c, n in component.curve.corner_counts.items()})
    return replace(component, curve=curve, junctures=build_junctures(target, curve))


def _rotated(t: Triangulation, component: LaminationComponent, offset: int) -> LaminationComponent:
    if component.junctures.is_empty():
        return component
    curve = rotate_traversal(component.junctures, offset)
    return replace(component, junctures=build_junctures(t, curve))
