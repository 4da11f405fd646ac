import json

import numpy as np
import pytest

from specgap.builders import build_named, known_constructions
from specgap.errors import ConstructionError, InputError
from specgap.linalg import classify_exterior
from specgap.reproduce import run_reproduction
from specgap.words import Word, in_index_two_core, Presentation

ALL_NAMES = ("thm1i_d5", "thm1i_d6", "thm1i_dge7", "thm1ii_d12",
             "thm41_pattern", "prop42_sl4", "prop42_sl6")


def rep_bytes(result):
    return json.dumps(result.rep.to_json(), sort_keys=True)


class TestRegistry:
    def test_known_names(self):
        assert set(known_constructions()) == set(ALL_NAMES)

    def test_unknown_name(self):
        with pytest.raises(InputError):
            build_named("dodecahedron")

    def test_unknown_parameter(self):
        with pytest.raises(InputError):
            build_named("thm1ii_d12", {"bogus": 1})


class TestManifests:
    @pytest.mark.parametrize("name", ALL_NAMES)
    def test_manifest_contents(self, name):
        result = build_named(name, None, seed=3)
        man = result.manifest
        assert man["construction"] == name
        assert man["dim"] == result.rep.dim
        assert all(g["satisfied"] for g in man["gates"])
        assert man["assumptions"]
        pres = Presentation.free(result.rep.alphabet)
        for key, text in man["witnesses"].items():
            w = Word.parse(result.rep.alphabet, text)
            if not key.startswith(("parity",)) and name.startswith("prop42"):
                continue  # spectral witnesses of the surface builds are odd
            assert in_index_two_core(w, pres)

    @pytest.mark.parametrize("name", ALL_NAMES)
    def test_build_is_reproducible(self, name):
        a = build_named(name, None, seed=11)
        b = build_named(name, None, seed=11)
        assert rep_bytes(a) == rep_bytes(b)
        assert a.manifest["witnesses"] == b.manifest["witnesses"]

    def test_seed_changes_random_blocks(self):
        a = build_named("thm1ii_d12", None, seed=1)
        b = build_named("thm1ii_d12", None, seed=2)
        assert not np.array_equal(a.rep.image("a4"), b.rep.image("a4"))
        # the structured letters are seed independent
        np.testing.assert_array_equal(a.rep.image("a2"), b.rep.image("a2"))


class TestGates:
    def test_d12_gate_failure_names_inequality(self):
        with pytest.raises(ConstructionError) as err:
            build_named("thm1ii_d12", {"x": 3.0})
        assert err.value.inequality == "|lam| > x^3"

    def test_d12_middle_gate(self):
        with pytest.raises(ConstructionError) as err:
            build_named("thm1ii_d12", {"mu": 1.01})
        assert "mu" in err.value.inequality or "x^3" in err.value.inequality

    def test_d12_second_witness_gate(self):
        with pytest.raises(ConstructionError) as err:
            build_named("thm1ii_d12", {"nu": 2.0})
        assert err.value.inequality == "|s| > nu^4"

    def test_pattern_requires_odd_n(self):
        with pytest.raises(ConstructionError):
            build_named("thm41_pattern", {"n": 6})

    def test_pattern_tail_gate(self):
        with pytest.raises(ConstructionError) as err:
            build_named("thm41_pattern", {"q": -1.1, "p": 1.2})
        assert err.value.inequality == "|q| > p^10"

    def test_sl4_character_gate(self):
        with pytest.raises(ConstructionError) as err:
            build_named("prop42_sl4", {"x": 1.0})
        assert err.value.inequality == "x^2 > |lam|"

    def test_sl6_scale_gates(self):
        with pytest.raises(ConstructionError):
            build_named("prop42_sl6", {"s": 1.0})
        with pytest.raises(ConstructionError):
            build_named("prop42_sl6", {"t": 1.5})

    def test_dge7_dimension_check(self):
        with pytest.raises(InputError):
            build_named("thm1i_dge7", {"d": 6})


class TestGoldenReports:
    @pytest.mark.parametrize("name", ALL_NAMES)
    def test_default_build_passes_golden(self, name):
        report = run_reproduction(name, None, seed=5)
        failures = [c for c in report["golden"]["checks"] if not c["passed"]]
        assert report["passed"], failures

    def test_d12_alternate_gate_passing_parameters(self):
        report = run_reproduction("thm1ii_d12",
                                  {"lam": -30.0, "mu": 2.5, "x": 2.2,
                                   "s": -11.0, "nu": 1.5}, seed=9)
        assert report["passed"]

    def test_pattern_alternate_parameters(self):
        report = run_reproduction("thm41_pattern",
                                  {"n": 7, "s": -2.5, "p": 1.1}, seed=1)
        assert report["passed"]

    def test_d12_witness_spectra_are_exact_diagonals(self):
        result = build_named("thm1ii_d12", None, seed=0)
        w = result.witness("main")
        m = result.rep.evaluate(w)
        off = m - np.diag(np.diag(m))
        assert np.abs(off).max() == 0.0

    def test_d6_wedge3_value(self):
        result = build_named("thm1i_d6", None, seed=0)
        m = result.rep.evaluate(result.witness("main"))
        cls = classify_exterior(m, 3)
        expected = result.manifest["derived"]["expected_wedge3_top"]
        assert cls.top_modulus == pytest.approx(abs(expected), rel=1e-6)
        assert cls.top_multiplicity == 2

    def test_d5_search_found_negative_eigenvalue(self):
        result = build_named("thm1i_d5", None, seed=0)
        assert result.manifest["derived"]["lambda1"] < 0
        assert result.manifest["search"]["candidates_examined"] <= 200
