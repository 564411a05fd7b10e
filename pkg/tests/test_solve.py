"""Exact solving of the small polynomial systems the classifiers produce."""

from __future__ import annotations

from fractions import Fraction

import pytest

from confalg.errors import UnsupportedSystemError
from confalg.poly import Poly, Registry, parse_poly
from confalg.solve import solve_system


@pytest.fixture()
def reg():
    r = Registry()
    r.param("u")
    r.param("v")
    r.param("w")
    return r


def P(reg, text):
    return parse_poly(reg, text)


def renders(solution):
    return sorted(f.render() for f in solution.families)


def test_single_linear_equation(reg):
    u = reg.var("u")
    sol = solve_system([P(reg, "u - 3")], [u])
    assert renders(sol) == ["{u = 3}"]


def test_quadratic_branching(reg):
    u, v = reg.var("u"), reg.var("v")
    sol = solve_system([P(reg, "u*v"), P(reg, "u + v - 1")], [u, v])
    assert renders(sol) == ["{u = 0; v = 1}", "{u = 1; v = 0}"]
    assert all(f.is_point() for f in sol.families)


def test_univariate_factoring(reg):
    u = reg.var("u")
    sol = solve_system([P(reg, "u^2 - u")], [u])
    assert renders(sol) == ["{u = 0}", "{u = 1}"]


def test_inconsistent_system(reg):
    u = reg.var("u")
    sol = solve_system([P(reg, "u + 1"), P(reg, "u")], [u])
    assert sol.inconsistent


def test_free_direction(reg):
    u, v = reg.var("u"), reg.var("v")
    sol = solve_system([P(reg, "u - v")], [u, v])
    assert len(sol) == 1
    fam = sol.families[0]
    assert fam.free == (v,)
    assert fam.value_of(u) == P(reg, "v")


def test_all_zero_equations_leave_everything_free(reg):
    u, v = reg.var("u"), reg.var("v")
    sol = solve_system([Poly.zero(reg)], [u, v])
    assert len(sol) == 1
    assert sol.families[0].free == (u, v)


def test_constant_contradiction_without_unknowns(reg):
    sol = solve_system([Poly.const(reg, Fraction(2))], [])
    assert sol.inconsistent


def test_unsupported_shape_is_reported(reg):
    u, v = reg.var("u"), reg.var("v")
    with pytest.raises(UnsupportedSystemError):
        solve_system([P(reg, "u^2 + v^2 - 1")], [u, v])


def test_stray_variable_rejected(reg):
    u = reg.var("u")
    with pytest.raises(UnsupportedSystemError):
        solve_system([P(reg, "u + d")], [u])


def test_solutions_annihilate_equations(reg):
    u, v, w = reg.var("u"), reg.var("v"), reg.var("w")
    systems = [
        ["u - 3", "v + u - 5"],
        ["u*v", "u + v - 1", "w - u"],
        ["u - v", "v - w"],
        ["u^2 - 4", "v - u"],
    ]
    for texts in systems:
        eqs = [P(reg, t) for t in texts]
        sol = solve_system(eqs, [u, v, w])
        assert not sol.inconsistent
        assert sol.verify(eqs)


def test_point_extraction(reg):
    u, v = reg.var("u"), reg.var("v")
    sol = solve_system([P(reg, "u - 2*v")], [u, v])
    fam = sol.families[0]
    point = fam.point({v: Fraction(3)})
    assert point[u] == Fraction(6)
    assert point[v] == Fraction(3)
