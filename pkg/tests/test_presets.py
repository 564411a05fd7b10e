"""Tests for the built-in algebra presets."""

from __future__ import annotations

from fractions import Fraction

import pytest

from confalg import (
    PRESET_NAMES,
    BindingError,
    DefinitionError,
    instantiate,
    rank1_module,
)


def table_renders(alg):
    return {pair: alg.entry(*pair).render() for pair in alg.ordered_pairs()}


class TestCatalog:
    def test_names(self):
        assert PRESET_NAMES == ("vir", "w", "wb", "tsv", "tsvc")

    def test_unknown_preset_rejected(self):
        with pytest.raises(DefinitionError):
            instantiate("e8")

    def test_fresh_copies(self):
        assert instantiate("vir") is not instantiate("vir")

    @pytest.mark.parametrize("preset", PRESET_NAMES)
    def test_axioms_hold_symbolically(self, preset):
        alg = instantiate(preset)
        assert alg.check_skew().passed
        assert alg.check_jacobi().passed

    def test_binding_records_values(self):
        alg = instantiate("w", {"a": 2, "b": 1})
        assert alg.param_values == {"a": Fraction(2), "b": Fraction(1)}
        assert alg.params == ()


class TestShapes:
    def test_virasoro_is_rank_one(self):
        vir = instantiate("vir")
        assert [g.name for g in vir.generators] == ["L"]
        assert vir.virasoro_name == "L"
        assert vir.entry("L", "L").render() == "(d + 2*x) L"

    def test_weight_algebra_entries(self):
        w = instantiate("w")
        assert [g.name for g in w.generators] == ["L", "W"]
        assert w.entry("L", "W").render() == "(x*a + d + b) W"
        assert w.entry("W", "W").is_zero()

    def test_extended_generator_metadata(self):
        tsv = instantiate("tsv")
        meta = [(g.name, g.label_offset, g.filtration_shift) for g in tsv.generators]
        assert meta == [("L", Fraction(1), Fraction(0)),
                        ("Y", Fraction(1, 2), Fraction(1, 2)),
                        ("M", Fraction(0), Fraction(0))]

    def test_central_extension_entries(self):
        tsvc = instantiate("tsvc")
        assert [v.name for v in tsvc.params] == ["c"]
        assert tsvc.entry("L", "Y").render() == "(d + 3/2*x + c) Y"
        assert tsvc.entry("L", "M").render() == "(d + 2*c) M"
        assert tsvc.entry("Y", "Y").render() == "(-d^2 - 2*d*x - 2*d*c - 4*x*c) M"


class TestRelationsBetweenPresets:
    @pytest.mark.parametrize("b0", [0, Fraction(1, 2), 1, Fraction(3, 2),
                                    Fraction(-1, 3)])
    def test_single_parameter_family_embeds_in_the_plane(self, b0):
        wb = instantiate("wb", {"b": b0})
        w = instantiate("w", {"a": 1 - b0, "b": 0})
        assert table_renders(wb) == table_renders(w)

    def test_central_extension_is_not_a_specialization(self):
        tsv = instantiate("tsv", {"a": Fraction(3, 2), "b": 0})
        tsvc = instantiate("tsvc", {"c": 0})
        assert tsv.entry("L", "M").render() == "(d + x) M"
        assert tsvc.entry("L", "M").render() == "(d) M"
        assert tsv.entry("Y", "Y").render() == "(d + 2*x) M"
        assert tsvc.entry("Y", "Y").render() == "(-d^2 - 2*d*x) M"


class TestModuleHelpers:
    def test_standard_module_requires_bound_structure(self):
        with pytest.raises(BindingError):
            rank1_module(instantiate("w"), 0, 0)

    def test_formal_tokens_must_match(self):
        vir = instantiate("vir")
        with pytest.raises(DefinitionError):
            rank1_module(vir, "beta", 0)
