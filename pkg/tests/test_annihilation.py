"""Tests for the coefficient-algebra bracket and finite truncations."""

from __future__ import annotations

import json
import random
from fractions import Fraction

import pytest

from confalg import (
    AnnBasis,
    AnnElement,
    BindingError,
    DefinitionError,
    FiniteLie,
    LabelError,
    UnsupportedError,
    ann_bracket,
    compare_closed_form,
    filtration_check,
    instantiate,
    labels_through,
    partial_action,
    truncated_quotient,
)

ALL_PRESETS = ["vir", "w", "wb", "tsv", "tsvc"]


def basis(alg, name, label):
    return AnnBasis(alg.gen(name), Fraction(label))


class TestLabels:
    def test_integer_generator_labels(self):
        w = instantiate("w")
        assert labels_through(w.gen("L"), 1) == [Fraction(-1), Fraction(0), Fraction(1)]
        assert labels_through(w.gen("W"), 2) == [Fraction(0), Fraction(1), Fraction(2)]

    def test_half_integer_generator_labels(self):
        tsv = instantiate("tsv")
        assert labels_through(tsv.gen("Y"), 2) == [
            Fraction(-1, 2), Fraction(1, 2), Fraction(3, 2)]

    def test_label_below_offset_rejected(self):
        w = instantiate("w")
        with pytest.raises(LabelError):
            AnnBasis(w.gen("L"), Fraction(-2))
        with pytest.raises(LabelError):
            AnnBasis(w.gen("W"), Fraction(-1))

    def test_label_off_the_offset_lattice_rejected(self):
        tsv = instantiate("tsv")
        with pytest.raises(LabelError):
            AnnBasis(tsv.gen("Y"), Fraction(0))


class TestElements:
    def test_render_orders_and_signs(self):
        tsv = instantiate("tsv")
        reg = tsv.registry
        e = AnnElement(reg, {basis(tsv, "Y", Fraction(3, 2)): Fraction(-1),
                             basis(tsv, "Y", Fraction(1, 2)): Fraction(1)})
        assert e.render() == "Y_1/2 - Y_3/2"

    def test_zero_render(self):
        w = instantiate("w")
        assert AnnElement(w.registry).render() == "0"
        assert AnnElement(w.registry).is_zero()

    def test_arithmetic(self):
        w = instantiate("w")
        a = AnnElement.of(w.registry, basis(w, "L", 0))
        b = AnnElement.of(w.registry, basis(w, "W", 1))
        assert (a + b - a).render() == "W_1"
        assert (a.scale(3) - a.scale(3)).is_zero()
        assert (-a).render() == "-L_0"

    def test_zero_coefficients_dropped(self):
        w = instantiate("w")
        e = AnnElement(w.registry, {basis(w, "L", 0): Fraction(0)})
        assert e.is_zero()

    def test_non_parameter_coefficient_rejected(self):
        from confalg import Poly
        w = instantiate("w")
        with pytest.raises(DefinitionError):
            AnnElement(w.registry, {basis(w, "L", 0): Poly.from_var(w.registry, w.registry.d)})

    def test_foreign_symbol_rejected(self):
        w, tsv = instantiate("w"), instantiate("tsv")
        with pytest.raises(DefinitionError):
            ann_bracket(w, AnnBasis(tsv.gen("Y"), Fraction(1, 2)), basis(w, "W", 0))


class TestBracket:
    def test_frozen_w_entry(self):
        w = instantiate("w")
        out = ann_bracket(w, basis(w, "L", 1), basis(w, "W", 2))
        assert out.render() == "(2*a - 4)*W_3 + (b)*W_4"

    def test_frozen_tsv_pairing(self):
        tsv = instantiate("tsv")
        out = ann_bracket(tsv, basis(tsv, "Y", Fraction(1, 2)),
                          basis(tsv, "Y", Fraction(3, 2)))
        assert out.render() == "-M_2"

    def test_frozen_tsv_weight(self):
        tsv = instantiate("tsv")
        out = ann_bracket(tsv, basis(tsv, "L", 0), basis(tsv, "Y", Fraction(1, 2)))
        assert out.render() == "(a - 2)*Y_1/2 + (b)*Y_3/2"

    def test_frozen_central_extension_entry(self):
        tsvc = instantiate("tsvc")
        out = ann_bracket(tsvc, basis(tsvc, "Y", Fraction(1, 2)),
                          basis(tsvc, "Y", Fraction(3, 2)))
        assert out.render() == "-2*M_1 + (2*c)*M_2"

    def test_translation_action(self):
        w = instantiate("w")
        assert partial_action(w, basis(w, "L", 0)).render() == "-L_-1"
        assert partial_action(w, basis(w, "L", -1)).is_zero()
        assert partial_action(w, basis(w, "W", 0)).is_zero()
        tsv = instantiate("tsv")
        assert partial_action(tsv, basis(tsv, "Y", Fraction(1, 2))).render() == "-Y_-1/2"

    @pytest.mark.parametrize("preset", ALL_PRESETS)
    def test_antisymmetry(self, preset):
        alg = instantiate(preset)
        rng = random.Random(20260814)
        symbols = [AnnBasis(g, m) for g in alg.generators
                   for m in labels_through(g, 4)]
        for _ in range(50):
            a, b = rng.choice(symbols), rng.choice(symbols)
            lhs = ann_bracket(alg, a, b)
            rhs = ann_bracket(alg, b, a)
            assert (lhs + rhs).is_zero()

    @pytest.mark.parametrize("preset", ALL_PRESETS)
    def test_jacobi(self, preset):
        alg = instantiate(preset)
        rng = random.Random(7)
        symbols = [AnnBasis(g, m) for g in alg.generators
                   for m in labels_through(g, 3)]
        for _ in range(20):
            a, b, c = (rng.choice(symbols) for _ in range(3))
            lhs = ann_bracket(alg, a, ann_bracket(alg, b, c))
            rhs = (ann_bracket(alg, ann_bracket(alg, a, b), c)
                   + ann_bracket(alg, b, ann_bracket(alg, a, c)))
            assert (lhs - rhs).is_zero()

    def test_bilinearity(self):
        w = instantiate("w")
        a = AnnElement.of(w.registry, basis(w, "L", 1)).scale(2)
        b = AnnElement.of(w.registry, basis(w, "L", 0))
        c = AnnElement.of(w.registry, basis(w, "W", 2))
        lhs = ann_bracket(w, a + b, c)
        rhs = ann_bracket(w, a, c) + ann_bracket(w, b, c)
        assert (lhs - rhs).is_zero()

    def test_translation_is_surjective_on_positive_part(self):
        for preset in ALL_PRESETS:
            alg = instantiate(preset)
            for g in alg.generators:
                for m in labels_through(g, 6):
                    a = AnnBasis(g, m)
                    if a.internal == 0:
                        continue
                    image = partial_action(alg, a)
                    assert image.coeff(AnnBasis(g, m - 1)) == Fraction(-a.internal)


class TestClosedForms:
    @pytest.mark.parametrize("preset", ALL_PRESETS)
    def test_expansion_matches_closed_form(self, preset):
        assert compare_closed_form(instantiate(preset), 4) == []

    @pytest.mark.parametrize("preset", ALL_PRESETS)
    def test_degree_filtration(self, preset):
        assert filtration_check(instantiate(preset), 4) == []

    def test_missing_closed_form_reported(self):
        from confalg import parse_algebra
        alg = parse_algebra("algebra bare\ngen L offset=1\n[L,L] = (d + 2*x) L\n")
        with pytest.raises(UnsupportedError):
            compare_closed_form(alg, 2)


class TestTruncation:
    def test_depth_one_weight_module(self):
        q = truncated_quotient(instantiate("w", {"a": 2, "b": 1}), 1)
        assert q.dim == 2
        assert [q.symbol(i) for i in range(q.dim)] == ["L_0", "W_0"]
        assert q.nonzero_brackets() == [((0, 1), [(1, Fraction(1))])]
        assert q.derived_series() == [2, 1, 0]
        assert q.is_solvable() == (True, 2)
        assert not q.is_nilpotent()

    def test_depth_one_can_be_abelian(self):
        q = truncated_quotient(instantiate("w", {"a": 1, "b": 1}), 1)
        assert q.nonzero_brackets() == []
        assert q.derived_series() == [2, 0]

    def test_depth_one_three_generators(self):
        q = truncated_quotient(instantiate("tsv", {"a": 0, "b": 0}), 1)
        assert [q.symbol(i) for i in range(q.dim)] == ["L_0", "Y_1/2", "M_0"]
        assert q.nonzero_brackets() == [
            ((0, 1), [(1, Fraction(-2))]),
            ((0, 2), [(2, Fraction(-3))]),
        ]
        assert q.derived_series() == [3, 2, 0]

    def test_deeper_quotient_solvable_not_nilpotent(self):
        q = truncated_quotient(instantiate("vir"), 3)
        assert q.dim == 3
        assert q.derived_series() == [3, 2, 0]
        assert q.lower_central_series() == [3, 2, 2]
        assert q.is_solvable() == (True, 2)
        assert not q.is_nilpotent()

    def test_bindings_argument(self):
        q = truncated_quotient(instantiate("w"), 2, {"a": 1, "b": 0})
        assert q.dim == 4

    def test_unbound_parameters_rejected(self):
        with pytest.raises(BindingError):
            truncated_quotient(instantiate("w"), 2)

    def test_bad_depth_rejected(self):
        with pytest.raises(ValueError):
            truncated_quotient(instantiate("vir"), 0)

    @pytest.mark.parametrize("preset,bindings", [
        ("vir", None), ("w", {"a": 2, "b": 1}), ("wb", {"b": Fraction(1, 2)}),
        ("tsv", {"a": 0, "b": 0}), ("tsvc", {"c": 1}),
    ])
    def test_quotients_are_solvable(self, preset, bindings):
        for depth in (1, 2, 3):
            q = truncated_quotient(instantiate(preset, bindings), depth)
            solvable, length = q.is_solvable()
            assert solvable
            assert length <= depth + 2


class TestFiniteLie:
    def test_simple_algebra_not_solvable(self):
        sl2 = FiniteLie([("e", 0), ("f", 0), ("h", 0)],
                        {(0, 1): {2: 1}, (0, 2): {0: -2}, (1, 2): {1: 2}})
        assert sl2.check_jacobi() == []
        assert sl2.derived_series() == [3, 3]
        assert sl2.is_solvable() == (False, None)
        assert not sl2.is_nilpotent()

    def test_abelian_algebra(self):
        ab = FiniteLie([("u", 0), ("v", 0)], {})
        assert ab.derived_series() == [2, 0]
        assert ab.lower_central_series() == [2, 0]
        assert ab.is_solvable() == (True, 1)
        assert ab.is_nilpotent()

    def test_jacobi_violation_detected(self):
        bad = FiniteLie([("x", 0), ("y", 0), ("z", 0)],
                        {(0, 1): {0: 1}, (0, 2): {1: 1}})
        assert bad.check_jacobi() != []

    def test_antisymmetric_lookup(self):
        sl2 = FiniteLie([("e", 0), ("f", 0), ("h", 0)],
                        {(0, 1): {2: 1}, (0, 2): {0: -2}, (1, 2): {1: 2}})
        assert sl2.bracket_indices(1, 0) == {2: Fraction(-1)}
        assert sl2.bracket_indices(0, 0) == {}

    def test_vector_bracket(self):
        sl2 = FiniteLie([("e", 0), ("f", 0), ("h", 0)],
                        {(0, 1): {2: 1}, (0, 2): {0: -2}, (1, 2): {1: 2}})
        e = [Fraction(1), Fraction(0), Fraction(0)]
        f = [Fraction(0), Fraction(1), Fraction(0)]
        assert sl2.bracket_vectors(e, f) == [Fraction(0), Fraction(0), Fraction(1)]

    def test_bad_indices_rejected(self):
        with pytest.raises(DefinitionError):
            FiniteLie([("u", 0)], {(0, 0): {0: 1}})
        with pytest.raises(DefinitionError):
            FiniteLie([("u", 0), ("v", 0)], {(0, 1): {5: 1}})

    def test_duplicate_symbols_rejected(self):
        with pytest.raises(DefinitionError):
            FiniteLie([("u", 0), ("u", 0)], {})

    def test_index_lookup(self):
        q = truncated_quotient(instantiate("tsv", {"a": 0, "b": 0}), 2)
        i = q.index_of("Y", Fraction(3, 2))
        assert q.symbol(i) == "Y_3/2"
        with pytest.raises(LabelError):
            q.index_of("Y", 0)

    def test_json_round_trip(self):
        q = truncated_quotient(instantiate("tsvc", {"c": 1}), 3)
        data = json.loads(json.dumps(q.to_json()))
        back = FiniteLie.from_json(data)
        assert back.basis == q.basis
        assert back.nonzero_brackets() == q.nonzero_brackets()
