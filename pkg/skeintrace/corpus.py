#!/usr/bin/env python3
"""
Corpus of Triangulations and Laminations

Bundled instances are JSON documents ``{name, triangulation, lamination,
expect}`` in the corpus directory; a ``"kind": "checker"`` instance instead
carries a curve with explicit arc-orderings and only runs the
compatibility/sanity checker. The generated corpus enumerates bounded normal
coordinates on the standard surfaces and picks curves with a seeded generator.

Every instance is run through the full invariant suite and reported as an
InstanceOutcome.
"""

import math
import random
import time
from functools import lru_cache
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, Iterator, List, Optional, Tuple

import structlog
from pydantic import BaseModel, Field

from skeintrace.config import EngineKind, SkeinTraceSettings
from skeintrace.contracts import (CORPUS_INSTANCE_SCHEMA, LAMINATION_SCHEMA, TRIANGULATION_SCHEMA, load_json,
                                  validate_document)
from skeintrace.errors import CurveError, InputError, LaminationError, SchemaError, SkeinTraceError
from skeintrace.lamination.curve import CurveOnSurface, build_junctures
from skeintrace.lamination.lamination import IntegralLamination, is_even
from skeintrace.lamination.regions import classify_curve
from skeintrace.ordering.arc_orders import ArcOrdering
from skeintrace.ordering.triangle_orders import check_compatibility_sanity
from skeintrace.qtorus.commutative import specialize_commutative, x_subalgebra_form
from skeintrace.qtorus.torus import is_positive
from skeintrace.surface.builders import SURFACE_BUILDERS
from skeintrace.surface.triangulation import Triangulation
from skeintrace.trace.allegretti_kim import (TraceOptions, allegretti_kim, check_choice_independence,
                                            classical_oracle)

logger = structlog.get_logger(__name__)

GENERATED_SURFACES = (
    "bordered_sphere",
    "once_punctured_torus",
    "four_punctured_sphere",
    "twice_punctured_torus",
    "twice_punctured_torus_self_folded",
    "genus_two_one_puncture",
    "genus_two_two_punctures",
)
NON_PERIPHERAL_WEIGHTS = (1, 2, 3, 4, 5)
PERIPHERAL_WEIGHTS = (1, -1, 2, -2)
# Chebyshev weights above 1 only on curves this small
HIGH_WEIGHT_MAX_JUNCTURES = 6
# always in the generated corpus when small enough; the two central regions share two inner segments
PINNED_CURVES = {
    "genus_two_one_puncture": ({"c": 2, "d": 2, "d5": 2, "d6": 2},),
}


@dataclass
class CorpusInstance:
    name: str
    triangulation: Triangulation
    lamination: Dict[str, Any]
    expect: Dict[str, Any] = field(default_factory=dict)
    source: str = "bundled"
    kind: str = "trace"
    arc_orderings: Optional[Dict[str, List[int]]] = None

    @classmethod
    def from_dict(cls, data: Dict[str, Any], source: str = "bundled") -> "CorpusInstance":
        for key in ("name", "triangulation"):
            if key not in data:
                raise SchemaError(f"corpus instance needs '{key}'")
        kind = data.get("kind", "trace")
        if kind == "checker":
            lamination = {"components": [dict(data["curve"], weight=1)]}
        else:
            lamination = data.get("lamination", {"components": []})
        t = Triangulation.from_dict(data["triangulation"]).ensure_valid()
        return cls(data["name"], t, lamination, data.get("expect", {}), source, kind,
                   data.get("arc_orderings"))

    def to_dict(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "triangulation": self.triangulation.to_dict(),
            "lamination": self.lamination,
            "expect": self.expect,
        }

    def build_lamination(self) -> IntegralLamination:
        return IntegralLamination.from_dict(self.triangulation, self.lamination)


class InstanceOutcome(BaseModel):
    name: str
    source: str
    passed: bool
    failures: List[Dict[str, Any]] = Field(default_factory=list)
    junctures: int = 0
    monomials: Optional[int] = None
    checks: Dict[str, bool] = Field(default_factory=dict)
    seconds: Optional[float] = None


# Loading

def load_corpus(corpus_dir: Path) -> List[CorpusInstance]:
    """Bundled instances sorted by file name; an empty or missing directory is an input error"""

    corpus_dir = Path(corpus_dir)
    files = sorted(corpus_dir.glob("*.json")) if corpus_dir.is_dir() else []
    if not files:
        raise InputError(f"no corpus instances found in {corpus_dir}")
    instances = []
    for path in files:
        data = load_json(path)
        validate_document(data, CORPUS_INSTANCE_SCHEMA, path.name)
        validate_document(data["triangulation"], TRIANGULATION_SCHEMA, path.name)
        if "lamination" in data:
            validate_document(data["lamination"], LAMINATION_SCHEMA, path.name)
        instances.append(CorpusInstance.from_dict(data))
    logger.info("corpus_loaded", corpus_dir=str(corpus_dir), instances=len(instances))
    return instances


def peripheral_curves(t: Triangulation) -> List[CurveOnSurface]:
    """The curve once around each puncture, where it avoids self-folded corners"""

    curves = []
    for vertex in t.punctures():
        counts: Dict = {}
        for corner in vertex.corners:
            counts[corner] = counts.get(corner, 0) + 1
        try:
            curve = CurveOnSurface(counts)
            peripheral, _ = classify_curve(build_junctures(t, curve))
        except CurveError:
            continue
        if peripheral:
            curves.append(curve)
    return curves


def normal_coordinates(t: Triangulation, max_weight: int, max_junctures: int) -> Iterator[Dict[int, int]]:
    """Nonzero arc weights up to `max_weight` that satisfy the triangle rule everywhere

    Boundary arcs stay at zero; a triangle is checked as soon as its last
    interior arc has a weight.
    """
    interior = t.interior_arcs()
    position = {arc: i for i, arc in enumerate(interior)}
    ready: Dict[int, List[int]] = {}
    for tri in range(t.triangle_count):
        known = [position[a] for a in t.slots(tri) if a in position]
        if known:
            ready.setdefault(max(known), []).append(tri)
    weights = {arc: 0 for arc in t.arcs()}

    def satisfied(tri: int) -> bool:
        w = [weights[a] for a in t.slots(tri)]
        return sum(w) % 2 == 0 and all(2 * x <= sum(w) for x in w)

    def assign(i: int, total: int) -> Iterator[Dict[int, int]]:
        if i == len(interior):
            if total:
                yield dict(weights)
            return
        arc = interior[i]
        for w in range(min(max_weight, max_junctures - total) + 1):
            weights[arc] = w
            if all(satisfied(tri) for tri in ready.get(i, [])):
                yield from assign(i + 1, total + w)
        weights[arc] = 0

    yield from assign(0, 0)


def enumerate_curves(t: Triangulation, max_weight: int, max_junctures: int) -> List[Tuple[CurveOnSurface, bool]]:
    """Connected non-contractible curves with bounded normal coordinates, smallest first"""

    found = []
    for weights in normal_coordinates(t, max_weight, max_junctures):
        try:
            curve = CurveOnSurface.from_arc_weights(t, weights)
            peripheral, _ = classify_curve(build_junctures(t, curve))
        except CurveError:
            continue
        found.append((curve, peripheral))
    return sorted(found, key=lambda item: _size_key(item[0]))


def _size_key(curve: CurveOnSurface):
    return curve.segment_count(), curve.canonical_key()


def _weight_bound(t: Triangulation, max_junctures: int) -> int:
    """Largest arc weight enumerated on a surface"""
    interior = len(t.interior_arcs())
    if interior <= 3:
        return max(1, max_junctures // 2)
    return 4 if interior <= 6 else 2


@lru_cache(maxsize=None)
def _surface_curves(surface: str, max_junctures: int) -> Tuple[Tuple[CurveOnSurface, bool], ...]:
    t = SURFACE_BUILDERS[surface]()
    return tuple(enumerate_curves(t, _weight_bound(t, max_junctures), max_junctures))


def _stratified(rng: random.Random, loops: List[CurveOnSurface], count: int) -> List[CurveOnSurface]:
    """One pick from each of `count` consecutive size bands of `loops`"""
    if count <= 0:
        return []
    if len(loops) <= count:
        return list(loops)
    return [rng.choice(loops[k * len(loops) // count:(k + 1) * len(loops) // count]) for k in range(count)]


def _pinned_curves(t: Triangulation, surface: str, max_junctures: int) -> List[CurveOnSurface]:
    curves = []
    for weights in PINNED_CURVES.get(surface, ()):
        curve = CurveOnSurface.from_arc_weights(t, {t.arc_by_label(k): w for k, w in weights.items()})
        if curve.segment_count() <= max_junctures:
            curves.append(curve)
    return curves


def generated_corpus(size: int, seed: int, max_junctures: int) -> List[CorpusInstance]:
    """Seeded instances spread over the standard surfaces

    Each surface gets an equal share of what is still missing, so a surface
    with few curves hands its shortfall to the ones after it. Within a
    surface, curves are drawn one per size band so the largest allowed
    sizes are represented.
    """
    rng = random.Random(seed)
    instances: List[CorpusInstance] = []
    for n, surface in enumerate(GENERATED_SURFACES):
        missing = size - len(instances)
        if missing <= 0:
            break
        quota = math.ceil(missing / (len(GENERATED_SURFACES) - n))
        t = SURFACE_BUILDERS[surface]()
        curves = _surface_curves(surface, max_junctures)
        pinned = _pinned_curves(t, surface, max_junctures)
        pinned_keys = {c.canonical_key() for c in pinned}
        loops = [c for c, peripheral in curves if not peripheral and c.canonical_key() not in pinned_keys]
        around = peripheral_curves(t) + [c for c, peripheral in curves if peripheral and c.segment_count() <= 8]

        extras = []
        if around:
            extras.append([(around[0], PERIPHERAL_WEIGHTS[len(instances) % len(PERIPHERAL_WEIGHTS)])])
        if loops and around:
            mixed = [(loops[0], 1), (around[-1], -1)]
            try:
                IntegralLamination.from_dict(t, _lamination_dict(mixed))
                extras.append(mixed)
            except LaminationError:
                pass

        picked = pinned + sorted(_stratified(rng, loops, quota - len(extras) - len(pinned)), key=_size_key)
        singles = []
        for i, curve in enumerate(picked):
            weight = NON_PERIPHERAL_WEIGHTS[i % len(NON_PERIPHERAL_WEIGHTS)]
            if curve.segment_count() > HIGH_WEIGHT_MAX_JUNCTURES:
                weight = 1
            singles.append([(curve, weight)])

        laminations = (singles + extras)[:quota]
        for i, lamination in enumerate(laminations):
            instances.append(CorpusInstance(f"{surface}_{i:02d}", t, _lamination_dict(lamination),
                                            source="generated"))
        logger.debug("surface_sampled", surface=surface, loops=len(loops), instances=len(laminations),
                     largest=max((c.segment_count() for c in picked), default=0))
    logger.info("corpus_generated", instances=len(instances), seed=seed)
    return instances


def _lamination_dict(entries) -> Dict[str, Any]:
    return {"components": [dict(curve.to_dict(), weight=weight) for curve, weight in entries]}


# Running

def run_instance(instance: CorpusInstance, settings: SkeinTraceSettings) -> InstanceOutcome:
    """Full invariant suite for one instance; failures are data"""

    start = time.perf_counter()
    outcome = InstanceOutcome(name=instance.name, source=instance.source, passed=True)
    try:
        if instance.kind == "checker":
            _run_checker(instance, outcome)
        else:
            _run_trace(instance, settings, outcome)
    except SkeinTraceError as e:
        outcome.failures.append({"invariant": getattr(e, "invariant", e.category.value), "detail": e.message,
                                 "witness": e.details.get("witness")})
    outcome.passed = not outcome.failures
    if settings.include_timing:
        outcome.seconds = round(time.perf_counter() - start, 4)
    logger.debug("corpus_instance_done", name=instance.name, passed=outcome.passed)
    return outcome


def _run_checker(instance: CorpusInstance, outcome: InstanceOutcome):
    t = instance.triangulation
    lamination = instance.build_lamination()
    data = lamination.components[0].junctures
    orderings = {}
    for label, ranks in (instance.arc_orderings or {}).items():
        arc = t.arc_by_label(label)
        orderings[arc] = ArcOrdering(arc, tuple(int(r) for r in ranks))
    outcome.junctures = data.juncture_count
    result = check_compatibility_sanity(data, orderings)
    outcome.checks["compatible_and_sane"] = result.passed
    if not result.passed:
        outcome.failures.append({"invariant": "compatible_and_sane", "detail": result.witness["kind"],
                                 "witness": result.witness})


def _run_trace(instance: CorpusInstance, settings: SkeinTraceSettings, outcome: InstanceOutcome):
    t = instance.triangulation
    lamination = instance.build_lamination()
    junctures = sum(c.junctures.juncture_count for c in lamination.components)
    outcome.junctures = junctures

    options = TraceOptions(engine=settings.engine, statesum_max_junctures=settings.statesum_max_junctures,
                           order_check_max_terms=settings.order_check_max_terms)
    result = allegretti_kim(t, lamination, options)
    element = result.element
    outcome.monomials = len(element)

    fail = outcome.failures.append
    outcome.checks["positive"] = is_positive(element)
    if not outcome.checks["positive"]:
        fail({"invariant": "positivity", "detail": element.to_text()})

    if is_even(t, lamination):
        form = x_subalgebra_form(element)
        outcome.checks["x_form_positive"] = form is not None and form.is_positive()
        if not outcome.checks["x_form_positive"]:
            fail({"invariant": "x_form", "detail": "even lamination without a positive X-form"})

    largest = max((c.junctures.juncture_count for c in lamination.components), default=0)
    if largest <= settings.statesum_max_junctures:
        other = _other_engine(settings.engine)
        alternative = allegretti_kim(t, lamination, TraceOptions(
            engine=other, statesum_max_junctures=settings.statesum_max_junctures,
            order_check_max_terms=settings.order_check_max_terms)).element
        outcome.checks["engines_agree"] = alternative == element
        if not outcome.checks["engines_agree"]:
            fail({"invariant": "engine_equivalence", "detail": f"{settings.engine.value} and {other.value} differ"})

    if largest <= settings.oracle_max_junctures:
        outcome.checks["classical_oracle"] = specialize_commutative(element) == classical_oracle(t, lamination)
        if not outcome.checks["classical_oracle"]:
            fail({"invariant": "classical_oracle", "detail": "specialization differs from the oracle"})

        seeds = [settings.generated_corpus_seed + i for i in range(settings.invariance_perturbations)]
        if seeds:
            report = check_choice_independence(t, lamination, seeds, options)
            outcome.checks["choice_independent"] = report.identical
            if not report.identical:
                fail({"invariant": "choice_independence",
                      "detail": [v for v in report.variations if not v["identical"]]})

    _check_expectations(instance, result, outcome)


def _other_engine(engine: EngineKind) -> EngineKind:
    return EngineKind.STATESUM if engine == EngineKind.TRANSFER else EngineKind.TRANSFER


def _check_expectations(instance: CorpusInstance, result, outcome: InstanceOutcome):
    expect = instance.expect
    observed: Dict[str, Any] = {"monomials": len(result.element), "positive": outcome.checks.get("positive")}
    solutions = [tr.solution for tr in result.components if tr.solution is not None]
    if solutions:
        observed["type_ii"] = any(s.has_type_ii for s in solutions)
        observed["regional_edges"] = sum(len(s.graph.edges()) for s in solutions)
        observed["parallel_edges"] = sum(len(s.graph.parallel_edges()) for s in solutions)
    for key, wanted in sorted(expect.items()):
        if key in observed and observed[key] != wanted:
            outcome.failures.append({"invariant": f"expect.{key}", "detail": f"expected {wanted}, got {observed[key]}"})
