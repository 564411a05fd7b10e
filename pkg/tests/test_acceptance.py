"""Acceptance gate: one test per advertised guarantee, each printing a
single pass line with its runtime.  Run with -s to see the lines."""

from __future__ import annotations

import io
import random
import time
from contextlib import redirect_stdout
from fractions import Fraction
from pathlib import Path

from confalg import (
    LambdaElement,
    Poly,
    Registry,
    compare_closed_form,
    induced_action,
    instantiate,
    irreducibility_verdict,
    monic_div_rem,
    rank1_classify,
    rank1_module,
    submodule_scan,
    truncated_quotient,
    vir_completeness,
)
from confalg.cli import main

ALL_PRESETS = ("vir", "w", "wb", "tsv", "tsvc")
AB_GRID = [(a, b) for a in (0, Fraction(1, 2), 1, Fraction(3, 2), 2)
           for b in (0, 1)]
B_GRID = (0, Fraction(1, 2), 1, Fraction(3, 2), 2)
C_GRID = (0, 1, 2)
GOLDEN = Path(__file__).parent / "golden"


def stamp(num: int, label: str, t0: float, budget: float | None = None) -> None:
    elapsed = time.time() - t0
    if budget is not None:
        assert elapsed < budget, f"criterion {num} took {elapsed:.1f}s, budget {budget}s"
    print(f"criterion {num} ({label}): PASS ({elapsed:.1f}s)")


def mono_poly(reg: Registry, mono) -> Poly:
    out = Poly.one(reg)
    for index, exponent in mono:
        out = out * Poly.from_var(reg, reg.all_vars()[index]) ** exponent
    return out


def test_criterion_1_axiom_certificates():
    t0 = time.time()
    for preset in ALL_PRESETS:
        alg = instantiate(preset)
        assert alg.check_skew().passed, f"{preset} fails skew symmetry"
        assert alg.check_jacobi().passed, f"{preset} fails the Jacobi identity"

        reg = alg.registry
        mutations = 0
        for a, b in alg.ordered_pairs():
            entry = alg.entry(a, b)
            for g in alg.generators:
                monos = {()} | {m for m, _ in entry.coeff(g).terms()}
                for mono in monos:
                    bump = LambdaElement(reg, {g: mono_poly(reg, mono)})
                    mutated = alg.with_entry(a, b, entry + bump)
                    broken = (not mutated.check_skew().passed
                              or not mutated.check_jacobi().passed)
                    assert broken, (f"{preset}: adding {mono_poly(reg, mono)} {g.name} "
                                    f"to [{a},{b}] passes both axioms")
                    mutations += 1
        assert mutations > 0
    stamp(1, "axiom certificates and mutation sensitivity", t0, budget=5)


def test_criterion_2_coefficient_bracket_reproduction():
    t0 = time.time()
    for preset in ALL_PRESETS:
        mismatches = compare_closed_form(instantiate(preset), 10)
        assert mismatches == [], f"{preset}: {mismatches[:3]}"
    stamp(2, "coefficient brackets match closed forms through label 10", t0,
          budget=10)


def test_criterion_3_truncations_solvable():
    t0 = time.time()
    cases = [("vir", None, 1)]
    cases += [("w", {"a": a, "b": b}, 1) for a, b in AB_GRID]
    cases += [("wb", {"b": b}, 1) for b in B_GRID]
    cases += [("tsv", {"a": a, "b": b}, 2) for a, b in AB_GRID]
    cases += [("tsvc", {"c": c}, 2) for c in C_GRID]
    for preset, bindings, slack in cases:
        alg = instantiate(preset, bindings)
        for depth in range(1, 7):
            quotient = truncated_quotient(alg, depth)
            solvable, length = quotient.is_solvable()
            assert solvable, f"{preset} {bindings} depth {depth} is not solvable"
            assert length <= depth + slack, \
                f"{preset} {bindings} depth {depth}: derived length {length}"
    stamp(3, "every truncation is solvable with the predicted length bound",
          t0, budget=60)


def test_criterion_4_rank_one_classification():
    t0 = time.time()

    def renders(alg):
        return [fam.render() for fam in rank1_classify(alg, 4)]

    assert renders(instantiate("vir")) == ["L -> 0", "L -> x*alpha + d + beta"]
    for a, b in AB_GRID:
        carrier = "gamma" if (a, b) == (1, 0) else "0"
        assert renders(instantiate("w", {"a": a, "b": b})) == [
            "L -> 0; W -> 0",
            f"L -> x*alpha + d + beta; W -> {carrier}",
        ], f"w at ({a},{b})"
        carrier = "gamma" if (a, b) == (1, 0) else "0"
        assert renders(instantiate("tsv", {"a": a, "b": b})) == [
            "L -> 0; Y -> 0; M -> 0",
            f"L -> x*alpha + d + beta; Y -> {carrier}; M -> 0",
        ], f"tsv at ({a},{b})"
    for b in B_GRID:
        carrier = "gamma" if b == 0 else "0"
        assert renders(instantiate("wb", {"b": b})) == [
            "L -> 0; W -> 0",
            f"L -> x*alpha + d + beta; W -> {carrier}",
        ], f"wb at b={b}"
    for c in C_GRID:
        assert renders(instantiate("tsvc", {"c": c})) == [
            "L -> 0; Y -> 0; M -> 0",
            "L -> x*alpha + d + beta; Y -> 0; M -> 0",
        ], f"tsvc at c={c}"
    stamp(4, "degree-4 classification reproduces the known families exactly",
          t0, budget=120)


def test_criterion_5_completeness_of_the_virasoro_family():
    t0 = time.time()
    for bound in (1, 2, 3):
        families = [str(p) for p in vir_completeness(bound)]
        assert families == ["0", "x*alpha + d + beta"], \
            f"bound {bound}: {families}"
    stamp(5, "generic search finds only the standard family", t0)


def test_criterion_6_irreducibility_verdicts():
    t0 = time.time()
    vir = instantiate("vir")
    w10 = instantiate("w", {"a": 1, "b": 0})
    tsv10 = instantiate("tsv", {"a": 1, "b": 0})
    betas = (0, 1, -2, Fraction(1, 2))

    for beta in betas:
        found = submodule_scan(vir, rank1_module(vir, 0, beta), 3)
        assert [str(w.generator) for w in found] == \
            [str(rank1_module(vir, 0, beta).action("L").substitute(
                vir.registry.x, 0))]
        found10 = submodule_scan(w10, rank1_module(w10, 0, beta, 0), 3)
        assert len(found10) == 1 and str(found10[0].generator) == str(found[0].generator)

    for alpha in (1, -2, 3):
        for beta in (0, 5):
            assert submodule_scan(vir, rank1_module(vir, alpha, beta), 3) == []

    for alg in (w10, tsv10):
        for alpha, beta, gamma in ((0, 2, 1), (2, 0, -3)):
            verdict = irreducibility_verdict(
                alg, rank1_module(alg, alpha, beta, gamma), 3)
            assert verdict.status == "irreducible"
            assert verdict.certificate == "unconditional"

    for beta in betas:
        divisor = rank1_module(vir, 0, beta).action("L").substitute(vir.registry.x, 0)
        assert induced_action(vir, rank1_module(vir, 0, beta), divisor) \
            == rank1_module(vir, 1, beta)
    stamp(6, "submodule scans and verdicts match the classification", t0)


def test_criterion_7_kernel_properties():
    t0 = time.time()
    reg = Registry()
    u, v = reg.param("u"), reg.param("v")
    rng = random.Random(187)
    pool = [reg.d, reg.x, u, v]

    def rand_poly(max_terms=6, max_exp=2):
        p = Poly.zero(reg)
        for _ in range(rng.randint(0, max_terms)):
            term = Poly.const(reg, Fraction(rng.randint(-4, 4), rng.randint(1, 3)))
            for var in pool:
                term = term * Poly.from_var(reg, var) ** rng.randint(0, max_exp)
            p = p + term
        return p

    for _ in range(500):
        p, q, r = rand_poly(), rand_poly(), rand_poly()
        assert (p + q) * r == p * r + q * r
        assert (p * q) * r == p * (q * r)
        assert p * q == q * p

    d = Poly.from_var(reg, reg.d)
    for _ in range(500):
        degree = rng.randint(1, 2)
        divisor = d ** degree
        for k in range(degree):
            coeff = Poly.const(reg, Fraction(rng.randint(-3, 3)))
            coeff = coeff * Poly.from_var(reg, reg.x) ** rng.randint(0, 1) \
                * Poly.from_var(reg, u) ** rng.randint(0, 1)
            divisor = divisor + coeff * d ** k
        p = rand_poly()
        quotient, remainder = monic_div_rem(p, divisor, reg.d)
        assert quotient * divisor + remainder == p
        assert remainder.degree(reg.d) < degree

    shift = -Poly.from_var(reg, reg.x) - d
    for _ in range(200):
        p = rand_poly()
        assert p.substitute(reg.x, shift).substitute(reg.x, shift) == p
    stamp(7, "1000 ring and division checks, 200 involution checks", t0)


def test_criterion_8_report_determinism():
    t0 = time.time()
    fixed = {
        "vir": [],
        "w": ["--param", "a=2", "b=1"],
        "wb": ["--param", "b=1/2"],
        "tsv": ["--param", "a=0", "b=0"],
        "tsvc": ["--param", "c=1"],
    }
    for preset, extra in fixed.items():
        golden = (GOLDEN / f"report_{preset}.txt").read_bytes()
        for _ in range(2):
            buffer = io.StringIO()
            with redirect_stdout(buffer):
                code = main(["report", preset, *extra])
            assert code == 0
            assert buffer.getvalue().encode() == golden, \
                f"report for {preset} deviates from the golden file"
    stamp(8, "report output is byte-identical to the golden files", t0)
