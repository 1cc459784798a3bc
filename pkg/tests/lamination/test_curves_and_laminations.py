#!/usr/bin/env python3
"""
Skein Trace Lamination Tests

Corner counts, juncture layout, traversal handling, peripherality and the
normalization of integral laminations.
"""

import json
import os
import sys
from fractions import Fraction
from pathlib import Path

import pytest

# Add project root to path
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.dirname(os.path.abspath(__file__)))))

from skeintrace.errors import CurveError, LaminationError
from skeintrace.lamination.curve import CurveOnSurface, build_junctures, rotate_traversal
from skeintrace.lamination.lamination import IntegralLamination, fock_coordinates, is_even, normalize_lamination
from skeintrace.lamination.regions import (classify_curve, complementary_regions, encloses_closed_subsurface,
                                          is_peripheral)
from skeintrace.surface.builders import (bordered_sphere, four_punctured_sphere, once_punctured_torus,
                                         twice_punctured_torus)
from skeintrace.surface.triangulation import Corner

FIXTURES = Path(__file__).resolve().parents[2] / "contracts" / "fixtures"


def _fixture(name: str):
    with open(FIXTURES / name, "r") as f:
        return json.load(f)


def _torus_curve(t, w1, w2, w3, **kwargs):
    return CurveOnSurface.from_arc_weights(t, dict(zip(t.arcs(), (w1, w2, w3))), **kwargs)


def _sphere_curve(t, labels):
    return CurveOnSurface.from_arc_weights(t, {t.arc_by_label(label): 1 for label in labels})


class TestCurveOnSurface:
    """Normal coordinates and corner counts"""

    @pytest.fixture
    def torus(self):
        return once_punctured_torus()

    def test_arc_weights_to_corner_counts(self, torus):
        curve = _torus_curve(torus, 1, 1, 0)
        assert curve.corner_counts == {Corner(0, 2): 1, Corner(1, 2): 1}
        assert curve.arc_weights(torus) == {0: 1, 1: 1, 2: 0}

    def test_triangle_rule_violation(self, torus):
        with pytest.raises(CurveError):
            _torus_curve(torus, 1, 0, 0)

    def test_negative_corner_count_rejected(self):
        with pytest.raises(CurveError):
            CurveOnSurface({Corner(0, 0): -1})

    def test_corner_count_document(self, torus):
        curve = CurveOnSurface.from_dict(torus, {"corner_counts": {"0:3": 1, "1:3": 1}})
        assert curve == _torus_curve(torus, 1, 1, 0)
        assert curve.to_dict() == {"corner_counts": {"0:3": 1, "1:3": 1}}

    def test_unknown_corner_rejected(self, torus):
        with pytest.raises(CurveError):
            CurveOnSurface.from_dict(torus, {"corner_counts": {"5:1": 1}})


class TestJunctures:
    """Juncture layout and traversal of connected curves"""

    @pytest.fixture
    def torus(self):
        return once_punctured_torus()

    def test_junctures_match_crossings(self, torus):
        data = build_junctures(torus, _torus_curve(torus, 2, 3, 1))
        assert data.juncture_count == 6
        assert len(data.segments) == 6
        assert sorted(data.crossing_sequence()) == [0, 0, 1, 1, 1, 2]
        assert {len(j.segments) for j in data.junctures} == {2}

    def test_every_segment_visited_once(self, torus):
        data = build_junctures(torus, _torus_curve(torus, 2, 3, 1))
        assert sorted(g for g, _, _ in data.cycle) == list(range(6))

    def test_parallel_copies_are_not_connected(self, torus):
        with pytest.raises(CurveError):
            build_junctures(torus, _torus_curve(torus, 2, 2, 0))

    def test_rotated_traversal_is_the_same_curve(self, torus):
        data = build_junctures(torus, _torus_curve(torus, 2, 3, 1))
        steps = data.traversal_steps()
        rotated = rotate_traversal(data, 2)
        again = build_junctures(torus, rotated)
        assert again.corner_counts == data.corner_counts
        assert again.traversal_steps() == steps[2:] + steps[:2]

    def test_inconsistent_traversal_rejected(self, torus):
        curve = _torus_curve(torus, 1, 1, 0)
        document = dict(curve.to_dict(), traversal=[[0, 1, 2], [1, 1, 2]])
        with pytest.raises(CurveError):
            build_junctures(torus, CurveOnSurface.from_dict(torus, document))


class TestComplement:
    """Sides of a curve, peripherality and enclosed subsurfaces"""

    def test_torus_curve_is_non_separating(self):
        t = once_punctured_torus()
        peripheral, complement = classify_curve(build_junctures(t, _torus_curve(t, 1, 1, 0)))
        assert not peripheral
        assert not complement.separating
        assert complement.sides[0].euler_characteristic == 0

    def test_torus_puncture_loop_is_peripheral(self):
        t = once_punctured_torus()
        peripheral, complement = classify_curve(build_junctures(t, _torus_curve(t, 2, 2, 2)))
        assert peripheral
        assert any(side.is_once_punctured_disk() for side in complement.sides)

    def test_sphere_vertex_link_is_peripheral(self):
        t = four_punctured_sphere()
        peripheral, _ = classify_curve(build_junctures(t, _sphere_curve(t, ["01", "02", "03"])))
        assert peripheral

    def test_sphere_separating_curve(self):
        t = four_punctured_sphere()
        data = build_junctures(t, _sphere_curve(t, ["02", "03", "12", "13"]))
        complement = complementary_regions(data)
        assert complement.separating
        assert sorted(side.punctures for side in complement.sides) == [2, 2]
        assert all(side.euler_characteristic == 1 for side in complement.sides)
        assert not encloses_closed_subsurface(data)

    def test_boundary_collar_is_peripheral(self):
        """A curve parallel to the boundary circle cuts off an annulus"""
        t = bordered_sphere()
        curve = _sphere_curve(t, ["u", "v", "w"])
        peripheral, complement = classify_curve(build_junctures(t, curve))
        assert peripheral
        (collar,) = [side for side in complement.sides if side.is_boundary_collar()]
        assert collar.euler_characteristic == 0
        assert (collar.punctures, collar.marked_points) == (0, 1)
        assert not any(side.is_once_punctured_disk() for side in complement.sides)
        assert is_peripheral(t, curve)

    def test_collar_takes_negative_weight(self):
        t = bordered_sphere()
        lam = normalize_lamination(t, [(_sphere_curve(t, ["u", "v", "w"]), -1)])
        (component,) = lam.components
        assert component.peripheral
        assert component.weight == -1

    def test_enclosed_holed_torus(self):
        t = twice_punctured_torus()
        weights = {"a": 2, "b": 2, "c": 2, "p": 0, "q": 2, "r": 2}
        curve = CurveOnSurface.from_arc_weights(t, {t.arc_by_label(k): w for k, w in weights.items()})
        data = build_junctures(t, curve)
        peripheral, _ = classify_curve(data)
        assert not peripheral
        assert encloses_closed_subsurface(data)


class TestIntegralLamination:
    """Normalization, disjointness and Fock coordinates"""

    @pytest.fixture
    def torus(self):
        return once_punctured_torus()

    def test_homotopic_components_merge(self, torus):
        curve = _torus_curve(torus, 1, 1, 0)
        lam = normalize_lamination(torus, [(curve, 1), (_torus_curve(torus, 1, 1, 0), 2)])
        assert len(lam.components) == 1
        assert lam.components[0].weight == 3
        assert any("merged" in note for note in lam.normalization_notes)

    def test_zero_weight_dropped(self, torus):
        lam = normalize_lamination(torus, [(_torus_curve(torus, 1, 1, 0), 0)])
        assert lam.is_empty()
        assert lam.normalization_notes == ("dropped component with zero weight",)

    def test_negative_weight_needs_peripheral(self, torus):
        with pytest.raises(LaminationError):
            normalize_lamination(torus, [(_torus_curve(torus, 1, 1, 0), -1)])
        lam = normalize_lamination(torus, [(_torus_curve(torus, 2, 2, 2), -3)])
        assert lam.components[0].peripheral

    def test_declared_peripheral_mismatch(self, torus):
        with pytest.raises(LaminationError):
            normalize_lamination(torus, [(_torus_curve(torus, 1, 1, 0, declared_peripheral=True), 1)])

    def test_empty_curve_rejected(self, torus):
        with pytest.raises(LaminationError):
            normalize_lamination(torus, [(CurveOnSurface({}), 1)])

    def test_intersecting_components_rejected(self, torus):
        with pytest.raises(LaminationError):
            normalize_lamination(torus, [(_torus_curve(torus, 1, 1, 0), 1), (_torus_curve(torus, 0, 1, 1), 1)])

    def test_disjoint_components_accepted(self, torus):
        lam = normalize_lamination(torus, [(_torus_curve(torus, 1, 1, 0), 1), (_torus_curve(torus, 2, 2, 2), -1)])
        assert sorted(c.peripheral for c in lam.components) == [False, True]

    def test_fock_coordinates_and_evenness(self, torus):
        odd = normalize_lamination(torus, [(_torus_curve(torus, 1, 1, 0), 1)])
        assert fock_coordinates(torus, odd) == {0: Fraction(1, 2), 1: Fraction(1, 2), 2: Fraction(0)}
        assert not is_even(torus, odd)
        doubled = normalize_lamination(torus, [(_torus_curve(torus, 1, 1, 0), 2)])
        assert is_even(torus, doubled)

    def test_lamination_fixtures(self, torus):
        lam = IntegralLamination.from_dict(torus, _fixture("lamination.torus_10.valid.json"))
        assert [c.weight for c in lam.components] == [1]
        peripheral = IntegralLamination.from_dict(torus, _fixture("lamination.torus_peripheral.valid.json"))
        assert peripheral.components[0].peripheral

    @pytest.mark.parametrize("name,error", [
        ("lamination.negative_weight.invalid.json", LaminationError),
        ("lamination.odd_triangle.invalid.json", CurveError),
    ])
    def test_invalid_lamination_fixtures(self, torus, name, error):
        with pytest.raises(error):
            IntegralLamination.from_dict(torus, _fixture(name))
