#!/usr/bin/env python3
"""
Skein Trace Engine Tests

Local factors, Chebyshev polynomials, both state-sum engines, peripheral
components, the classical oracle and choice independence.
"""

import os
import random
import sys
import time

import pytest

# Add project root to path
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.dirname(os.path.abspath(__file__)))))

from skeintrace.config import EngineKind
from skeintrace.errors import CurveError, InputError
from skeintrace.lamination.curve import CurveOnSurface, build_junctures
from skeintrace.lamination.lamination import IntegralLamination, normalize_lamination
from skeintrace.ordering.solver import solve_ordering
from skeintrace.qtorus.algebras import arc_algebra, triangle_algebra
from skeintrace.qtorus.commutative import CommutativeLaurent, specialize_commutative, x_subalgebra_form
from skeintrace.qtorus.laurent import OmegaLaurent
from skeintrace.qtorus.torus import is_positive, weyl_coefficients
from skeintrace.surface.builders import four_punctured_sphere, once_punctured_torus
from skeintrace.surface.triangulation import Corner
from skeintrace.trace.allegretti_kim import (TraceOptions, allegretti_kim, check_choice_independence,
                                             _relabeled, _transported, classical_oracle, curve_monodromy,
                                             peripheral_element)
from skeintrace.trace.chebyshev import chebyshev_F, chebyshev_text, evaluate_chebyshev
from skeintrace.trace.engines import quantum_trace, quantum_trace_transfer_matrix
from skeintrace.trace.local import BiangleDiagram, biangle_value, sign_number, triangle_factor


def _torus_lamination(t, *entries):
    """entries: ((w1, w2, w3), weight) pairs"""
    curves = [(CurveOnSurface.from_arc_weights(t, dict(zip(t.arcs(), w))), weight) for w, weight in entries]
    return normalize_lamination(t, curves)


class TestLocalFactors:
    """Triangle factors and biangle values"""

    @pytest.fixture
    def torus(self):
        return triangle_algebra(once_punctured_torus())

    def test_sign_numbers(self):
        assert sign_number("+") == -1
        assert sign_number("-") == 1
        with pytest.raises(ValueError):
            sign_number("0")

    def test_forbidden_state_is_zero(self, torus):
        assert triangle_factor(torus, Corner(0, 0), ("-", "+")).is_zero()

    def test_opposite_states_are_inverse(self, torus):
        corner = Corner(1, 2)
        product = triangle_factor(torus, corner, ("+", "+")) * triangle_factor(torus, corner, ("-", "-"))
        assert product == torus.one()

    def test_single_monomial_states(self, torus):
        for signs in (("+", "+"), ("+", "-"), ("-", "-")):
            assert len(triangle_factor(torus, Corner(0, 1), signs)) == 1

    def test_parallel_strands(self):
        assert biangle_value(BiangleDiagram.parallel(["+", "-"], ["+", "-"])) == OmegaLaurent.one()
        assert biangle_value(BiangleDiagram.parallel(["+"], ["-"])).is_zero()

    def test_returning_strands_and_circles(self):
        assert biangle_value(BiangleDiagram(b_pm=1)) == OmegaLaurent.monomial(-5, -1)
        assert biangle_value(BiangleDiagram(b_mp=1)) == OmegaLaurent.monomial(-1)
        assert biangle_value(BiangleDiagram(c_mp=1)) == OmegaLaurent.monomial(5, -1)
        assert biangle_value(BiangleDiagram(d=1)) == OmegaLaurent({4: -1, -4: -1})


class TestChebyshev:
    """F_0 = 2, F_1 = x, F_k = x F_(k-1) - F_(k-2)"""

    @pytest.mark.parametrize("k,coefficients", [
        (0, (2,)),
        (1, (0, 1)),
        (2, (-2, 0, 1)),
        (3, (0, -3, 0, 1)),
        (4, (2, 0, -4, 0, 1)),
    ])
    def test_coefficients(self, k, coefficients):
        assert chebyshev_F(k) == coefficients

    def test_text(self):
        assert chebyshev_text(2) == "x^2 - 2"
        assert chebyshev_text(3) == "x^3 - 3x"

    def test_evaluation_in_integers(self):
        assert evaluate_chebyshev(2, 3, lambda c: c) == 7
        assert evaluate_chebyshev(3, 2, lambda c: c) == 2

    def test_negative_index_rejected(self):
        with pytest.raises(ValueError):
            chebyshev_F(-1)


class TestTorusTraces:
    """Exact values on the once-punctured torus"""

    @pytest.fixture
    def t(self):
        return once_punctured_torus()

    @pytest.fixture
    def arcs(self, t):
        return arc_algebra(t)

    def test_simple_curve_element(self, t, arcs):
        lam = _torus_lamination(t, ((1, 1, 0), 1))
        element = allegretti_kim(t, lam).element
        assert element == arcs.weyl((-1, -1, 0)) + arcs.weyl((-1, 1, 0)) + arcs.weyl((1, 1, 0))

    @pytest.mark.parametrize("weights", [(1, 1, 0), (1, 1, 2), (2, 3, 1)])
    def test_engines_agree(self, t, weights):
        lam = _torus_lamination(t, (weights, 1))
        statesum = allegretti_kim(t, lam, TraceOptions(engine=EngineKind.STATESUM)).element
        transfer = allegretti_kim(t, lam, TraceOptions(engine=EngineKind.TRANSFER)).element
        assert statesum == transfer
        assert statesum.to_text() == transfer.to_text()

    @pytest.mark.parametrize("weights", [(1, 1, 0), (2, 3, 1)])
    def test_classical_oracle(self, t, weights):
        lam = _torus_lamination(t, (weights, 1))
        assert specialize_commutative(allegretti_kim(t, lam).element) == classical_oracle(t, lam)

    def test_classical_oracle_simple_curve(self, t):
        lam = _torus_lamination(t, ((1, 1, 0), 1))
        expected = CommutativeLaurent(["1", "2", "3"], {(-1, -1, 0): 1, (-1, 1, 0): 1, (1, 1, 0): 1})
        assert classical_oracle(t, lam) == expected

    def test_monodromy_is_unimodular(self, t):
        """Each step has determinant Z^-1 Z, so the product does too"""
        lam = _torus_lamination(t, ((2, 3, 1), 1))
        names = [t.arc_label(a) for a in t.arcs()]
        m = curve_monodromy(lam.components[0].junctures, names)
        one = CommutativeLaurent.one(names)
        assert m[0][0] * m[1][1] + (m[0][1] * m[1][0]).scale(-1) == one

    def test_oracle_weight_three_is_chebyshev(self, t):
        """Trace of the cube of the monodromy is x^3 - 3x"""
        single = classical_oracle(t, _torus_lamination(t, ((1, 1, 0), 1)))
        tripled = classical_oracle(t, _torus_lamination(t, ((1, 1, 0), 3)))
        assert tripled == single * single * single + single.scale(-3)

    def test_weight_two_is_chebyshev(self, t, arcs):
        single = allegretti_kim(t, _torus_lamination(t, ((1, 1, 0), 1))).element
        doubled = allegretti_kim(t, _torus_lamination(t, ((1, 1, 0), 2))).element
        assert doubled == single * single - arcs.scalar(2)

    def test_even_lamination_is_positive_in_x(self, t):
        lam = _torus_lamination(t, ((1, 1, 0), 2))
        element = allegretti_kim(t, lam).element
        assert is_positive(element)
        form = x_subalgebra_form(element)
        assert form is not None and form.is_positive()

    def test_peripheral_component(self, t, arcs):
        lam = _torus_lamination(t, ((2, 2, 2), -2))
        result = allegretti_kim(t, lam)
        assert result.element == arcs.weyl((-4, -4, -4))
        assert result.components[0].solution is None

    def test_peripheral_element_requires_peripheral(self, t):
        lam = _torus_lamination(t, ((1, 1, 0), 1))
        with pytest.raises(CurveError):
            peripheral_element(t, lam.components[0], 1)

    def test_mixed_lamination_product_checked(self, t, arcs):
        lam = _torus_lamination(t, ((1, 1, 0), 1), ((2, 2, 2), -1))
        result = allegretti_kim(t, lam)
        assert result.order_checked
        assert len(result.components) == 2
        assert specialize_commutative(result.element) == classical_oracle(t, lam)

    def test_empty_lamination_is_one(self, t, arcs):
        assert allegretti_kim(t, _torus_lamination(t)).element == arcs.one()

    def test_statesum_ceiling(self, t):
        lam = _torus_lamination(t, ((2, 3, 1), 1))
        with pytest.raises(InputError):
            allegretti_kim(t, lam, TraceOptions(engine=EngineKind.STATESUM, statesum_max_junctures=4))

    def test_oracle_ceiling(self, t):
        lam = _torus_lamination(t, ((2, 3, 1), 1))
        with pytest.raises(InputError):
            classical_oracle(t, lam, max_junctures=4)


class TestChoiceIndependence:
    """Tie-breaks, relabeled triangulations and traversal base points leave the element fixed"""

    def test_torus_curve(self):
        t = once_punctured_torus()
        report = check_choice_independence(t, _torus_lamination(t, ((2, 3, 1), 1)), [1, 2, 3])
        assert report.identical
        assert [v["seed"] for v in report.variations] == [1, 2, 3]

    def test_sphere_separating_curve(self):
        t = four_punctured_sphere()
        curve = CurveOnSurface.from_arc_weights(t, {t.arc_by_label(k): 1 for k in ("02", "03", "12", "13")})
        lam = normalize_lamination(t, [(curve, 1)])
        report = check_choice_independence(t, lam, [7, 8])
        assert report.identical
        assert is_positive(report.baseline)

    def test_relabeled_triangulations_reported(self):
        """Every seed shuffles the triangles and the element survives in the Weyl basis"""
        t = four_punctured_sphere()
        curve = CurveOnSurface.from_arc_weights(t, {t.arc_by_label(k): 1 for k in ("02", "03", "12", "13")})
        report = check_choice_independence(t, normalize_lamination(t, [(curve, 1)]), [11, 12, 13, 14])
        for variation in report.variations:
            assert sorted(variation["triangle_order"]) == list(range(t.triangle_count))
            assert variation["identical"]
        assert report.identical

    def test_weyl_coefficients_follow_arc_labels(self):
        """Relabeling renumbers arcs but keeps the labelled Weyl coefficients"""
        t = once_punctured_torus()
        lam = _torus_lamination(t, ((1, 2, 3), 1))
        relabeled, order, corners = _relabeled(t, random.Random(5))
        moved = IntegralLamination(tuple(_transported(relabeled, corners, c) for c in lam.components))
        before = allegretti_kim(t, lam).element
        after = allegretti_kim(relabeled, moved).element
        assert sorted(order) == [0, 1]
        assert weyl_coefficients(after) == weyl_coefficients(before)


class TestTransferScaling:
    """The transfer engine on curves past the state-sum ceiling"""

    def test_thirty_junctures_under_five_seconds(self):
        """Torus curve (7, 8, 15) through the frontier sweep"""
        t = once_punctured_torus()
        data = build_junctures(t, CurveOnSurface.from_arc_weights(t, dict(zip(t.arcs(), (7, 8, 15)))))
        assert data.juncture_count == 30
        solution = solve_ordering(data)
        start = time.perf_counter()
        element = quantum_trace_transfer_matrix(data, solution)
        assert time.perf_counter() - start < 5.0
        assert is_positive(element)
        assert element.coefficient((7, 8, 15)).evaluate_at_one() == 1

    def test_flat_sweep_matches_statesum(self):
        """Same element from both engines on a ten-juncture torus curve"""
        t = once_punctured_torus()
        data = build_junctures(t, CurveOnSurface.from_arc_weights(t, dict(zip(t.arcs(), (2, 3, 5)))))
        solution = solve_ordering(data)
        assert quantum_trace_transfer_matrix(data, solution) == quantum_trace(data, solution)
