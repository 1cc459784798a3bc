#!/usr/bin/env python3
"""
Skein Trace Corpus Tests

Loading bundled instances, the seeded generated corpus and the per-instance
invariant suite.
"""

import json
import os
import sys
from pathlib import Path

import pytest

# Add project root to path
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.dirname(os.path.abspath(__file__)))))

from skeintrace.config import SkeinTraceSettings
from skeintrace.corpus import (GENERATED_SURFACES, enumerate_curves, generated_corpus, load_corpus,
                               normal_coordinates, peripheral_curves, run_instance)
from skeintrace.errors import InputError, SchemaError
from skeintrace.surface.builders import bordered_sphere, four_punctured_sphere, once_punctured_torus

FIXTURES = Path(__file__).resolve().parents[2] / "contracts" / "fixtures"
SEED = 20240601


@pytest.fixture
def settings():
    return SkeinTraceSettings(statesum_max_junctures=12, oracle_max_junctures=12, order_check_max_terms=200,
                              invariance_perturbations=2, generated_corpus_size=56, generated_corpus_seed=SEED,
                              max_corpus_junctures=20)


class TestBundledCorpus:
    """JSON instances shipped with the repository"""

    def test_instances_load_in_name_order(self):
        instances = load_corpus(FIXTURES / "corpus")
        names = [i.name for i in instances]
        assert len(names) == 11
        assert names == sorted(names)
        assert {i.kind for i in instances} == {"trace", "checker"}

    def test_every_instance_passes(self, settings):
        for instance in load_corpus(FIXTURES / "corpus"):
            outcome = run_instance(instance, settings)
            assert outcome.passed, (instance.name, outcome.failures)

    def test_trace_checks_recorded(self, settings):
        (instance,) = [i for i in load_corpus(FIXTURES / "corpus") if i.name == "opt_torus_10"]
        outcome = run_instance(instance, settings)
        assert outcome.monomials == 3
        assert outcome.junctures == 2
        assert outcome.checks == {"positive": True, "engines_agree": True, "classical_oracle": True,
                                  "choice_independent": True}
        assert outcome.seconds is None

    def test_insane_orderings_reported(self, settings):
        (instance,) = load_corpus(FIXTURES / "corpus_invalid")
        outcome = run_instance(instance, settings)
        assert not outcome.passed
        (failure,) = outcome.failures
        assert failure["invariant"] == "compatible_and_sane"
        assert failure["witness"] == {"kind": "insane_triple", "triangle": 0, "segments": [0, 1, 2]}

    def test_expectation_mismatch_is_a_failure(self, settings):
        (instance,) = [i for i in load_corpus(FIXTURES / "corpus") if i.name == "opt_torus_10"]
        instance.expect = {"monomials": 4}
        outcome = run_instance(instance, settings)
        assert [f["invariant"] for f in outcome.failures] == ["expect.monomials"]

    def test_timing_only_when_enabled(self):
        timed = SkeinTraceSettings(include_timing=True, invariance_perturbations=0)
        (instance,) = [i for i in load_corpus(FIXTURES / "corpus") if i.name == "opt_torus_10"]
        assert run_instance(instance, timed).seconds is not None

    def test_empty_directory_rejected(self, tmp_path):
        with pytest.raises(InputError):
            load_corpus(tmp_path)

    def test_nonconforming_instance_rejected(self, tmp_path):
        (tmp_path / "broken.json").write_text(json.dumps({"name": "broken", "lamination": {"components": []}}))
        with pytest.raises(SchemaError):
            load_corpus(tmp_path)


class TestCurveEnumeration:
    """Bounded normal coordinates and the curves they describe"""

    def test_every_vector_meets_the_triangle_rule(self):
        t = four_punctured_sphere()
        for weights in normal_coordinates(t, 2, 12):
            assert sum(weights.values()) <= 12
            for tri in range(t.triangle_count):
                w = [weights[a] for a in t.slots(tri)]
                assert sum(w) % 2 == 0 and max(w) * 2 <= sum(w)

    def test_torus_curves_up_to_weight_one(self):
        t = once_punctured_torus()
        curves = enumerate_curves(t, 1, 10)
        weights = sorted(tuple(c.arc_weights(t).values()) for c, _ in curves)
        assert weights == [(0, 1, 1), (1, 0, 1), (1, 1, 0)]
        assert not any(peripheral for _, peripheral in curves)

    def test_boundary_arcs_stay_empty(self):
        t = bordered_sphere()
        beta = t.arc_by_label("beta")
        assert all(weights[beta] == 0 for weights in normal_coordinates(t, 2, 8))

    def test_one_peripheral_curve_per_puncture(self):
        assert len(peripheral_curves(once_punctured_torus())) == 1
        assert len(peripheral_curves(four_punctured_sphere())) == 4


class TestGeneratedCorpus:
    """Seeded corpus over the standard surfaces"""

    def test_size_and_determinism(self):
        first = generated_corpus(56, SEED, 20)
        second = generated_corpus(56, SEED, 20)
        assert 50 <= len(first) <= 56
        assert [i.to_dict() for i in first] == [i.to_dict() for i in second]
        assert len({i.name for i in first}) == len(first)
        assert {i.source for i in first} == {"generated"}

    def test_every_surface_represented(self):
        names = {i.name.rsplit("_", 1)[0] for i in generated_corpus(56, SEED, 20)}
        assert names == set(GENERATED_SURFACES)

    def test_zero_size(self):
        assert generated_corpus(0, SEED, 20) == []

    def test_sizes_reach_the_juncture_ceiling(self):
        """Size bands put the largest torus curves into the corpus"""
        sizes = []
        for instance in generated_corpus(56, SEED, 30):
            lamination = instance.build_lamination()
            sizes.extend(c.junctures.juncture_count for c in lamination.components)
        assert max(sizes) <= 30
        assert max(sizes) >= 28

    def test_genus_two_separating_curve_pinned(self):
        """The separating curve through the handle is always sampled"""
        wanted = {"c": 2, "d": 2, "d5": 2, "d6": 2}
        found = []
        for instance in generated_corpus(56, SEED, 20):
            if not instance.name.startswith("genus_two_one_puncture"):
                continue
            t = instance.triangulation
            for component in instance.build_lamination().components:
                weights = {t.arc_label(a): w for a, w in component.curve.arc_weights(t).items() if w}
                found.append(weights == wanted)
        assert any(found)

    def test_generated_instances_pass(self, settings):
        failed = []
        for instance in generated_corpus(settings.generated_corpus_size, settings.generated_corpus_seed,
                                         settings.max_corpus_junctures):
            outcome = run_instance(instance, settings)
            if not outcome.passed:
                failed.append((instance.name, outcome.failures))
        assert failed == []
