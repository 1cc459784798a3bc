#!/usr/bin/env python3
"""
Skein Trace Surface Tests

Triangulation construction, gluing validation, vertex classes and the
epsilon matrix on the standard surfaces.
"""

import json
import os
import sys
from pathlib import Path

import numpy as np
import pytest

# Add project root to path
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.dirname(os.path.abspath(__file__)))))

from skeintrace.errors import TriangulationError
from skeintrace.surface.builders import SURFACE_BUILDERS, once_punctured_torus, square
from skeintrace.surface.triangulation import Corner, DecoratedSurface, Triangulation

FIXTURES = Path(__file__).resolve().parents[2] / "contracts" / "fixtures"


def _fixture(name: str):
    with open(FIXTURES / name, "r") as f:
        return json.load(f)


class TestDecoratedSurface:
    """Surface condition on genus and distinguished points"""

    def test_sphere_needs_three_distinguished_points(self):
        assert DecoratedSurface(0, 2, 0).condition_violations()
        assert not DecoratedSurface(0, 3, 0).condition_violations()
        assert not DecoratedSurface(0, 2, 1).condition_violations()

    def test_positive_genus_needs_one_point(self):
        assert DecoratedSurface(1, 0, 0).condition_violations()
        assert not DecoratedSurface(1, 1, 0).condition_violations()


class TestStandardSurfaces:
    """Builders produce valid triangulations with the expected topology"""

    @pytest.mark.parametrize("name", sorted(SURFACE_BUILDERS))
    def test_builder_is_valid(self, name):
        t = SURFACE_BUILDERS[name]()
        assert t.validate() == []

    @pytest.mark.parametrize("name,triangles,arcs,chi", [
        ("once_punctured_torus", 2, 3, 0),
        ("twice_punctured_torus", 4, 6, 0),
        ("four_punctured_sphere", 4, 6, 2),
        ("genus_two_one_puncture", 6, 9, -2),
        ("square", 2, 5, 1),
        ("single_triangle", 1, 3, 1),
    ])
    def test_counts_and_euler_characteristic(self, name, triangles, arcs, chi):
        t = SURFACE_BUILDERS[name]()
        assert t.triangle_count == triangles
        assert t.arc_count == arcs
        assert t.euler_characteristic() == chi

    def test_twice_punctured_torus_vertex_classes(self):
        t = SURFACE_BUILDERS["twice_punctured_torus"]()
        sizes = sorted(len(v.corners) for v in t.punctures())
        assert sizes == [3, 9]

    def test_bordered_sphere_has_one_boundary_circle(self):
        t = SURFACE_BUILDERS["bordered_sphere"]()
        assert t.boundary_circle_count() == 1
        assert len(t.punctures()) == 2
        assert [t.arc_label(a) for a in t.arcs() if t.is_boundary(a)] == ["beta"]

    def test_self_folded_triangle_detected(self):
        t = SURFACE_BUILDERS["twice_punctured_torus_self_folded"]()
        assert [tri for tri in range(t.triangle_count) if t.is_self_folded(tri)] == [3]
        assert t.self_folded_corner(3) == Corner(3, 0)

    def test_square_interior_arc(self):
        t = square()
        assert [t.arc_label(a) for a in t.interior_arcs()] == ["d"]


class TestEpsilon:
    """Commutation exponents from corner counts"""

    @pytest.fixture
    def torus(self):
        return once_punctured_torus()

    def test_torus_epsilon_values(self, torus):
        one, two, three = (torus.arc_by_label(label) for label in ("1", "2", "3"))
        assert torus.epsilon(one, two) == 2
        assert torus.epsilon(two, three) == 2
        assert torus.epsilon(three, one) == 2
        assert torus.epsilon(two, one) == -2
        assert torus.epsilon(one, one) == 0

    @pytest.mark.parametrize("name", sorted(SURFACE_BUILDERS))
    def test_matrix_antisymmetric_and_bounded(self, name):
        t = SURFACE_BUILDERS[name]()
        matrix = t.epsilon_matrix()
        assert np.array_equal(matrix, -matrix.T)
        assert np.abs(matrix).max(initial=0) <= 2
        for e in t.arcs():
            for f in t.arcs():
                assert t.epsilon(e, f) == matrix[e, f]

    def test_square_diagonal_against_boundary(self):
        t = square()
        d = t.arc_by_label("d")
        for arc in t.arcs():
            if t.is_boundary(arc):
                assert t.epsilon(d, arc) in (-1, 1)


class TestTriangulationInput:
    """JSON documents, gluing cross-checks and rejected inputs"""

    def test_label_fixture_matches_builder(self):
        t = Triangulation.from_dict(_fixture("triangulation.once_punctured_torus.valid.json")).ensure_valid()
        assert np.array_equal(t.epsilon_matrix(), once_punctured_torus().epsilon_matrix())

    def test_gluing_only_input(self):
        t = Triangulation.from_dict(_fixture("triangulation.gluing_only.valid.json")).ensure_valid()
        assert t.arc_count == 3
        assert [t.arc_label(a) for a in t.arcs()] == ["1", "2", "3"]
        assert np.array_equal(t.epsilon_matrix(), once_punctured_torus().epsilon_matrix())

    def test_dict_round_trip_keeps_structure(self):
        t = SURFACE_BUILDERS["genus_two_two_punctures"]()
        again = Triangulation.from_dict(t.to_dict()).ensure_valid()
        assert again.arc_count == t.arc_count
        assert np.array_equal(again.epsilon_matrix(), t.epsilon_matrix())

    def test_malformed_gluing_rejected(self):
        t = Triangulation.from_dict(_fixture("triangulation.malformed_gluing.invalid.json"))
        with pytest.raises(TriangulationError) as exc:
            t.ensure_valid()
        assert any("gluing" in v for v in exc.value.violations)

    def test_wrong_genus_rejected(self):
        t = Triangulation.from_dict(_fixture("triangulation.wrong_genus.invalid.json"))
        with pytest.raises(TriangulationError) as exc:
            t.ensure_valid()
        assert exc.value.exit_code == 2

    def test_label_used_three_times(self):
        surface = DecoratedSurface(1, 1, 0)
        t = Triangulation.from_labels(surface, [["1", "1", "1"], ["2", "2", "3"]])
        assert t.validate()

    def test_unknown_arc_label(self):
        with pytest.raises(TriangulationError):
            once_punctured_torus().arc_by_label("missing")
