"""Lambda-bracket tables, sesquilinear extension, and the axiom checks."""

from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from confalg.algebra import ConformalAlgebra, Generator, LambdaElement, parse_algebra
from confalg.errors import BindingError, DefinitionError, ParseError
from confalg.poly import Poly, parse_poly
from confalg.presets import instantiate

ALL_PRESETS = ["vir", "w", "wb", "tsv", "tsvc"]


def elem(alg, text_by_gen):
    reg = alg.registry
    return LambdaElement(reg, {alg.gen(name): parse_poly(reg, text)
                               for name, text in text_by_gen.items()})


class TestAxioms:
    @pytest.mark.parametrize("name", ALL_PRESETS)
    def test_presets_pass_symbolically(self, name):
        alg = instantiate(name)
        assert alg.check_skew().passed
        assert alg.check_jacobi().passed

    @pytest.mark.parametrize("name", ["w", "tsv"])
    def test_residuals_vanish_on_rational_grid(self, name):
        for a, b in [(0, 0), (1, 0), (Fraction(1, 2), 1),
                     (2, Fraction(-1, 3)), (-1, 5)]:
            alg = instantiate(name, {"a": a, "b": b})
            assert alg.check_skew().passed
            assert alg.check_jacobi().passed

    def test_skew_failure_residual(self):
        text = "algebra bad\ngen L offset=1\n[L,L] = (d + 3*x) L\n"
        alg = parse_algebra(text)
        report = alg.check_skew()
        assert not report.passed
        assert [e.residual for e in report.failures()] == ["(-d) L"]

    def test_jacobi_failure_on_altered_entry(self):
        alg = instantiate("tsv")
        reg = alg.registry
        bad = LambdaElement(reg, {alg.gen("M"): parse_poly(reg, "d + a*x + 2*b")})
        mutated = alg.with_entry("L", "M", bad)
        report = mutated.check_jacobi()
        assert not report.passed
        assert ("L", "Y", "Y") in [e.key for e in report.failures()]

    def test_mutated_coefficient_fails_a_check(self):
        alg = instantiate("vir")
        entry = alg.entry("L", "L")
        bumped = entry + LambdaElement.of(alg.registry, alg.gen("L"))
        mutated = alg.with_entry("L", "L", bumped)
        assert not (mutated.check_skew().passed and mutated.check_jacobi().passed)


class TestBracket:
    def test_virasoro_table(self):
        alg = instantiate("vir")
        got = alg.bracket(alg.gen("L"), alg.gen("L"))
        assert got.render() == "(d + 2*x) L"

    def test_left_sesquilinearity_example(self):
        alg = instantiate("w")
        reg = alg.registry
        dL = elem(alg, {"L": "d"})
        got = alg.bracket(dL, alg.gen("W"))
        want = elem(alg, {"W": "-x*(d + a*x + b)"})
        assert got == want

    def test_zero_entry(self):
        alg = instantiate("w")
        assert alg.bracket(alg.gen("W"), alg.gen("W")).is_zero()

    def test_foreign_generator_rejected(self):
        alg = instantiate("vir")
        stranger = Generator("L", Fraction(1), Fraction(0))
        other = instantiate("w")
        with pytest.raises(DefinitionError):
            alg.bracket(other.gen("W"), alg.gen("L"))
        assert alg.bracket(stranger, alg.gen("L")).render() == "(d + 2*x) L"

    def test_x_dependent_input_rejected(self):
        alg = instantiate("vir")
        with pytest.raises(DefinitionError):
            alg.bracket(elem(alg, {"L": "x"}), alg.gen("L"))

    @settings(max_examples=40, deadline=None)
    @given(st.lists(st.tuples(st.integers(0, 2), st.integers(-4, 4)),
                    min_size=1, max_size=3),
           st.lists(st.tuples(st.integers(0, 2), st.integers(-4, 4)),
                    min_size=1, max_size=3))
    def test_sesquilinearity_is_structural(self, left_terms, right_terms):
        alg = instantiate("tsv")
        reg = alg.registry
        d, x = reg.d, reg.x
        names = [g.name for g in alg.generators]

        def build(terms):
            coeffs = {}
            for i, (exp, coeff) in enumerate(terms):
                g = alg.gen(names[i % len(names)])
                p = Poly.from_var(reg, d) ** exp * coeff
                coeffs[g] = coeffs.get(g, Poly.zero(reg)) + p
            return LambdaElement(reg, coeffs)

        u, v = build(left_terms), build(right_terms)
        du = u.map_coeffs(lambda p: p * Poly.from_var(reg, d))
        dv = v.map_coeffs(lambda p: p * Poly.from_var(reg, d))
        base = alg.bracket(u, v)
        lam = Poly.from_var(reg, x)
        dpl = Poly.from_var(reg, d) + lam
        assert alg.bracket(du, v) == base.map_coeffs(lambda p: -lam * p)
        assert alg.bracket(u, dv) == base.map_coeffs(lambda p: dpl * p)


class TestProducts:
    def test_w_products(self):
        alg = instantiate("w")
        assert alg.jth_product(alg.gen("L"), alg.gen("W"), 0) == elem(alg, {"W": "d + b"})
        assert alg.jth_product(alg.gen("L"), alg.gen("W"), 1) == elem(alg, {"W": "a"})
        assert alg.jth_product(alg.gen("L"), alg.gen("L"), 2).is_zero()

    def test_negative_index_rejected(self):
        alg = instantiate("vir")
        with pytest.raises(ValueError):
            alg.jth_product(alg.gen("L"), alg.gen("L"), -1)

    @pytest.mark.parametrize("name,pair,order", [
        ("vir", ("L", "L"), 2),
        ("w", ("W", "W"), 0),
        ("w", ("L", "W"), 2),
        ("tsvc", ("Y", "Y"), 2),
        ("tsvc", ("L", "M"), 1),
    ])
    def test_locality_orders(self, name, pair, order):
        alg = instantiate(name)
        assert alg.locality_order(alg.gen(pair[0]), alg.gen(pair[1])) == order

    @pytest.mark.parametrize("name", ALL_PRESETS)
    def test_products_reassemble_bracket(self, name):
        alg = instantiate(name)
        reg = alg.registry
        lam = Poly.from_var(reg, reg.x)
        for a, b in alg.ordered_pairs():
            g, h = alg.gen(a), alg.gen(b)
            br = alg.bracket(g, h)
            total = LambdaElement(reg)
            fact = 1
            for j in range(alg.locality_order(g, h)):
                if j:
                    fact *= j
                term = alg.jth_product(g, h, j)
                total = total + term.map_coeffs(
                    lambda p: p * lam ** j * Fraction(1, fact))
            assert total == br


class TestConstruction:
    def test_skew_completion_matches_explicit_table(self):
        upper = "algebra demo params a b\ngen L offset=1\ngen W\n" \
                "[L,L] = (d + 2*x) L\n[L,W] = (d + a*x + b) W\n[W,W] = 0\n"
        alg = parse_algebra(upper)
        lower = alg.entry("W", "L")
        explicit = alg.with_entry("W", "L", lower)
        assert alg.table_equal(explicit)
        assert alg.check_jacobi().passed == explicit.check_jacobi().passed

    def test_specialize_binds_all_parameters(self):
        alg = instantiate("w")
        with pytest.raises(BindingError):
            alg.specialize({"a": 1})
        with pytest.raises(BindingError):
            alg.specialize({"a": 1, "b": 0, "q": 2})
        bound = alg.specialize({"a": 1, "b": 0})
        assert bound.param_values == {"a": Fraction(1), "b": Fraction(0)}
        assert bound.entry("L", "W").render() == "(d + x) W"

    def test_generator_metadata_validated(self):
        with pytest.raises(DefinitionError):
            Generator("B", Fraction(1, 3), Fraction(0))
        with pytest.raises(DefinitionError):
            Generator("B", Fraction(0), Fraction(1, 3))


class TestParser:
    def test_line_numbers_in_errors(self):
        text = "algebra demo\ngen L offset=1\n[L,L] = (d + y) L\n"
        with pytest.raises(ParseError) as exc:
            parse_algebra(text)
        assert exc.value.line == 3

    def test_undeclared_generator(self):
        text = "algebra demo\ngen L offset=1\n[L,Q] = 0\n"
        with pytest.raises(ParseError):
            parse_algebra(text)

    def test_undeclared_parameter(self):
        text = "algebra demo\ngen L offset=1\n[L,L] = (d + a*x) L\n"
        with pytest.raises(ParseError):
            parse_algebra(text)

    def test_nonlinear_rhs_rejected(self):
        text = "algebra demo\ngen L offset=1\n[L,L] = L*L\n"
        with pytest.raises(ParseError):
            parse_algebra(text)

    def test_missing_pair_rejected(self):
        text = "algebra demo\ngen L offset=1\ngen W\n[L,L] = (d + 2*x) L\n"
        with pytest.raises(ParseError):
            parse_algebra(text)

    def test_round_trip_matches_preset(self):
        text = "algebra w params a b\ngen L offset=1\ngen W\n" \
               "[L,L] = (d + 2*x) L\n[L,W] = (d + a*x + b) W\n[W,W] = 0\n"
        parsed = parse_algebra(text)
        preset = instantiate("w")
        assert [g.name for g in parsed.generators] == [g.name for g in preset.generators]
        for a, b in preset.ordered_pairs():
            got = parsed.bracket(parsed.gen(a), parsed.gen(b)).render()
            assert got == preset.bracket(preset.gen(a), preset.gen(b)).render()
