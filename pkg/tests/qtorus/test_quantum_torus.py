#!/usr/bin/env python3
"""
Skein Trace Quantum Torus Tests

Laurent coefficients, normal-form multiplication, Weyl ordering and the
classical / X-variable rewritings.
"""

import os
import random
import sys
from itertools import permutations, product

import numpy as np
import pytest

# Add project root to path
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.dirname(os.path.abspath(__file__)))))

from skeintrace.qtorus.algebras import arc_algebra, embed_arc_generators, to_arc_algebra, triangle_algebra
from skeintrace.qtorus.commutative import CommutativeLaurent, specialize_commutative, x_subalgebra_form
from skeintrace.qtorus.laurent import OmegaLaurent
from skeintrace.qtorus.torus import QuantumTorus, crossing_vector, is_positive, weyl_bracket
from skeintrace.surface.builders import four_punctured_sphere, once_punctured_torus


class TestOmegaLaurent:
    """Integer Laurent polynomials in w"""

    def test_square_of_sum(self):
        x = OmegaLaurent({1: 1, -1: 1})
        assert x * x == OmegaLaurent({2: 1, 0: 2, -2: 1})

    def test_zero_terms_dropped(self):
        a = OmegaLaurent({3: 1})
        assert (a - a).is_zero()
        assert OmegaLaurent({0: 0}) == OmegaLaurent.zero()

    def test_unit_inverse(self):
        assert OmegaLaurent.monomial(3) ** -2 == OmegaLaurent.monomial(-6)
        with pytest.raises(ValueError):
            OmegaLaurent({1: 1, 2: 1}) ** -1

    def test_divide_exponents(self):
        assert OmegaLaurent({8: 2, -4: 1}).divide_exponents(4) == OmegaLaurent({2: 2, -1: 1})
        assert OmegaLaurent({2: 1}).divide_exponents(4) is None

    def test_nonnegative_and_evaluation(self):
        c = OmegaLaurent({-2: 3, 5: 1})
        assert c.is_nonnegative()
        assert c.evaluate_at_one() == 4
        assert not OmegaLaurent({1: 2, 2: -1}).is_nonnegative()

    def test_text(self):
        assert OmegaLaurent({-1: 1, 0: 2, 3: -1}).to_text() == "w^-1 + 2 - w^3"


class TestQuantumTorus:
    """Normal form and the w-commutation relations"""

    @pytest.fixture
    def plane(self):
        return QuantumTorus(["x", "y"], np.array([[0, 1], [-1, 0]]))

    def test_form_must_be_antisymmetric(self):
        with pytest.raises(ValueError):
            QuantumTorus(["x", "y"], np.array([[0, 1], [1, 0]]))

    def test_commutation_relation(self, plane):
        x, y = plane.generator(0), plane.generator(1)
        assert x * y == (y * x) * OmegaLaurent.monomial(2)

    def test_weyl_product_rule(self):
        torus = arc_algebra(once_punctured_torus())
        vectors = [v for v in product((-1, 0, 1), repeat=3)]
        for a in vectors[::4]:
            for b in vectors[::5]:
                lhs = torus.weyl(a) * torus.weyl(b)
                total = tuple(x + y for x, y in zip(a, b))
                rhs = torus.weyl(total) * OmegaLaurent.monomial(torus.pairing(a, b))
                assert lhs == rhs

    def test_weyl_inverse(self):
        torus = arc_algebra(once_punctured_torus())
        v = (1, -1, 2)
        assert torus.weyl(v) * torus.weyl(tuple(-x for x in v)) == torus.one()
        assert torus.weyl(v).monomial_inverse() == torus.weyl(tuple(-x for x in v))

    def test_weyl_bracket_matches_weyl_monomial(self, plane):
        assert weyl_bracket(plane, [0, 1]) == plane.weyl((1, 1))
        assert weyl_bracket(plane, [1, 0]) == plane.weyl((1, 1))

    def test_distributivity(self, plane):
        x, y = plane.generator(0), plane.generator(1)
        a = x + y
        assert a * a == x * x + x * y + y * x + y * y

    def test_mixed_tori_rejected(self, plane):
        other = QuantumTorus(["u", "v"], np.array([[0, 2], [-2, 0]]))
        with pytest.raises(ValueError):
            plane.generator(0) * other.generator(0)

    def test_positivity(self, plane):
        assert is_positive(plane.weyl((1, -3)) + plane.one())
        assert not is_positive(plane.generator(0) - plane.one())


class TestArcEmbedding:
    """Arc generators as Weyl monomials in the triangle algebra"""

    @pytest.mark.parametrize("builder", [once_punctured_torus, four_punctured_sphere])
    def test_embedding_is_multiplicative(self, builder):
        t = builder()
        triangles = triangle_algebra(t)
        arcs = arc_algebra(t)
        images = embed_arc_generators(t, triangles)
        for e in t.arcs():
            for f in t.arcs():
                lifted = to_arc_algebra(t, images[e] * images[f], arcs)
                assert lifted == arcs.generator(e) * arcs.generator(f)

    def test_arc_commutation_uses_epsilon(self):
        t = once_punctured_torus()
        arcs = arc_algebra(t)
        z1, z2 = arcs.generator(0), arcs.generator(1)
        assert z1 * z2 == (z2 * z1) * OmegaLaurent.monomial(2 * t.epsilon(0, 1))


class TestSpecializations:
    """Classical limit and X-variable form"""

    @pytest.fixture
    def torus(self):
        return arc_algebra(once_punctured_torus())

    def test_classical_limit_merges_powers(self, torus):
        a = torus.weyl((1, 1, 0)) + torus.weyl((1, 1, 0)) * OmegaLaurent.monomial(4)
        classical = specialize_commutative(a)
        assert classical == CommutativeLaurent(torus.names, {(1, 1, 0): 2})

    def test_commutative_arithmetic(self):
        x = CommutativeLaurent(["a"], {(1,): 1, (-1,): 1})
        assert x * x + CommutativeLaurent(["a"], {(0,): -2}) == CommutativeLaurent(["a"], {(2,): 1, (-2,): 1})

    def test_x_form_of_even_monomial(self, torus):
        form = x_subalgebra_form(torus.weyl((2, 2, 0)))
        assert form is not None
        assert form.terms == (((1, 1, 0), OmegaLaurent.monomial(-2)),)
        assert form.is_positive()

    def test_x_form_rejects_odd_exponents(self, torus):
        assert x_subalgebra_form(torus.weyl((1, 1, 0))) is None


SEED = 20240601


def _random_element(torus, rng, terms=3, positive=False):
    """Sum of a few monomials with small exponents and Laurent coefficients"""
    element = torus.zero()
    for _ in range(terms):
        vec = [rng.randint(-2, 2) for _ in range(torus.rank)]
        low = 1 if positive else -2
        coeff = OmegaLaurent({rng.randint(-3, 3): rng.choice([c for c in range(low, 3) if c])
                              for _ in range(rng.randint(1, 2))})
        element = element + torus.monomial(vec, coeff)
    return element


class TestTorusProperties:
    """Ring laws checked on seeded random elements"""

    @pytest.fixture
    def torus(self):
        return arc_algebra(four_punctured_sphere())

    @pytest.mark.parametrize("case", range(10))
    def test_associativity(self, torus, case):
        rng = random.Random(SEED + case)
        a, b, c = (_random_element(torus, rng) for _ in range(3))
        assert (a * b) * c == a * (b * c)

    @pytest.mark.parametrize("case", range(10))
    def test_distributivity_both_sides(self, torus, case):
        rng = random.Random(SEED + case)
        a, b, c = (_random_element(torus, rng) for _ in range(3))
        assert a * (b + c) == a * b + a * c
        assert (a + b) * c == a * c + b * c

    @pytest.mark.parametrize("case", range(10))
    def test_weyl_bracket_ignores_order(self, torus, case):
        rng = random.Random(SEED + case)
        generators = [rng.randrange(torus.rank) for _ in range(rng.randint(2, 4))]
        expected = weyl_bracket(torus, generators)
        for order in permutations(generators):
            assert weyl_bracket(torus, list(order)) == expected
        assert expected == torus.weyl(crossing_vector(torus, generators))

    @pytest.mark.parametrize("case", range(10))
    def test_classical_limit_is_a_homomorphism(self, torus, case):
        rng = random.Random(SEED + case)
        a, b = _random_element(torus, rng), _random_element(torus, rng)
        assert specialize_commutative(a * b) == specialize_commutative(a) * specialize_commutative(b)
        assert specialize_commutative(a + b) == specialize_commutative(a) + specialize_commutative(b)

    @pytest.mark.parametrize("case", range(10))
    def test_positivity_closed_under_sum_and_product(self, torus, case):
        rng = random.Random(SEED + case)
        a, b = (_random_element(torus, rng, positive=True) for _ in range(2))
        assert is_positive(a) and is_positive(b)
        assert is_positive(a + b)
        assert is_positive(a * b)
        assert is_positive(b * a)
