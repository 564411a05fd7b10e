"""Conformal modules over lambda-bracket algebras and their classification.

A module action on a free rank-one C[d]-module C[d]v assigns to each
generator g a polynomial A_g(d, x) with g_x v = A_g(d, x) v, extended by
g_x (q(d) v) = q(d + x) g_x v.  The defining identity, per generator pair,

    a_x (b_y v) - b_y (a_x v) - [a_x b]_{x+y} v = 0

unfolds into the polynomial residual

    A_a(d, x) A_b(d+x, y) - A_b(d, y) A_a(d+y, x)
        - sum_k p_k(-(x+y), x) A_k(d, x+y)

where [a_x b] = sum_k p_k(d, x) k.  Everything here reduces to exact
polynomial identities: verifying a proposed action, classifying all actions
of bounded degree, locating rank-one submodules, and deciding
irreducibility for the families that come out of the classification.

Classification is staged.  The Virasoro generator acts by f = 0 or by
f = d + alpha*x + beta (the completeness of this list is itself checkable
through ``vir_completeness``).  With alpha and beta kept as formal symbols,
the remaining generators get generic polynomial actions of bounded degree
and the residuals become linear systems; cross relations among the
non-Virasoro generators are then quadratic and close the search.  Because
the formal treatment only finds actions valid for every (alpha, beta), a
rational grid of (alpha, beta) values is re-solved independently and any
sporadic extra family raises DiscrepancyError.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .errors import (BindingError, DefinitionError, DiscrepancyError, DivisibilityError,
                     UnsupportedError)
from .algebra import AxiomReport, ConformalAlgebra, Generator, ReportEntry
from .poly import PARAMETER, Poly, Registry, Var, group_coefficients, monic_div_rem, parse_poly
from .solve import solve_system


class Rank1Action:
    """An action of every generator on a free rank-one module C[d]v.

    Action polynomials may involve d, x and parameters (both structure
    parameters of the algebra and module parameters such as alpha, beta,
    gamma), so whole families can be certified symbolically.
    """

    __slots__ = ("algebra", "_actions")

    def __init__(self, algebra: ConformalAlgebra, actions: Mapping[str, Poly]):
        self.algebra = algebra
        names = [g.name for g in algebra.generators]
        if set(actions) != set(names):
            raise DefinitionError(
                f"action must cover exactly the generators {names}, got {sorted(actions)}")
        reg = algebra.registry
        cleaned = {}
        for name in names:
            p = actions[name]
            if not isinstance(p, Poly):
                p = Poly.const(reg, p)
            if p.registry is not reg:
                raise DefinitionError("action polynomial from a different registry")
            for v in p.variables():
                if v is reg.d or v is reg.x:
                    continue
                if v.kind != PARAMETER:
                    raise DefinitionError(
                        f"action of {name} uses {v.name}; only d, x and parameters are allowed")
            cleaned[name] = p
        self._actions = cleaned

    def action(self, name: str) -> Poly:
        if name not in self._actions:
            raise DefinitionError(f"no generator named {name!r}")
        return self._actions[name]

    def items(self) -> list[tuple[str, Poly]]:
        return [(g.name, self._actions[g.name]) for g in self.algebra.generators]

    def is_zero(self) -> bool:
        return all(p.is_zero() for p in self._actions.values())

    def free_params(self) -> list[str]:
        seen = {}
        for _, p in self.items():
            for v in p.variables():
                if v.kind == PARAMETER:
                    seen[v.index] = v.name
        return [seen[i] for i in sorted(seen)]

    def bind(self, bindings: Mapping[str, Fraction | int]) -> "Rank1Action":
        reg = self.algebra.registry
        sub = {}
        for name, value in bindings.items():
            if not reg.has_name(name):
                raise BindingError(f"no parameter named {name!r}")
            sub[reg.var(name)] = Fraction(value)
        return Rank1Action(self.algebra,
                           {g: p.subs(sub) for g, p in self._actions.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, Rank1Action):
            return NotImplemented
        return self.algebra is other.algebra and self._actions == other._actions

    def __hash__(self) -> int:
        return hash((id(self.algebra), tuple(sorted((g, p) for g, p in self._actions.items()))))

    def render(self) -> str:
        return "; ".join(f"{g} -> {p}" for g, p in self.items())

    def __repr__(self) -> str:
        return f"Rank1Action({self.render()})"

    def to_json(self) -> dict:
        return {
            "algebra": self.algebra.name,
            "params": {k: str(v) for k, v in sorted(self.algebra.param_values.items())},
            "actions": {g: str(p) for g, p in self.items()},
        }

    @classmethod
    def from_json(cls, algebra: ConformalAlgebra, data: Mapping) -> "Rank1Action":
        if data.get("algebra") != algebra.name:
            raise DefinitionError(
                f"action data is for {data.get('algebra')!r}, not {algebra.name!r}")
        declared = {k: str(v) for k, v in sorted(algebra.param_values.items())}
        if {k: str(Fraction(v)) for k, v in data.get("params", {}).items()} != declared:
            raise DefinitionError("action data has mismatched parameter bindings")
        reg = algebra.registry
        actions = {}
        for g, text in data.get("actions", {}).items():
            for name in _names_in(text):
                if not reg.has_name(name):
                    if _MODULE_PARAM_RE.fullmatch(name):
                        reg.param(name)
                    else:
                        raise DefinitionError(f"unknown name {name!r} in action of {g}")
            actions[g] = parse_poly(reg, text)
        return cls(algebra, actions)


_MODULE_PARAM_RE = re.compile(r"(alpha|beta|gamma)(_[A-Za-z0-9_]+)?")
_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z_0-9]*")


def _names_in(text: str) -> set[str]:
    return set(_NAME_RE.findall(text))


class ConformalModule:
    """A module of finite rank: one square matrix of polynomials per
    generator, columns giving the images of the basis vectors."""

    def __init__(self, algebra: ConformalAlgebra, rank: int,
                 actions: Mapping[str, Sequence[Sequence[Poly]]]):
        self.algebra = algebra
        self.rank = rank
        names = [g.name for g in algebra.generators]
        if set(actions) != set(names):
            raise DefinitionError(f"action must cover exactly the generators {names}")
        if rank < 1:
            raise DefinitionError("rank must be positive")
        self.actions = {}
        for name in names:
            mat = actions[name]
            if len(mat) != rank or any(len(row) != rank for row in mat):
                raise DefinitionError(f"action of {name} must be a {rank}x{rank} matrix")
            self.actions[name] = tuple(tuple(row) for row in mat)

    @classmethod
    def from_rank1(cls, action: Rank1Action) -> "ConformalModule":
        return cls(action.algebra, 1, {g: ((p,),) for g, p in action.items()})


def _mat_mul(a, b):
    n = len(a)
    return tuple(tuple(sum((a[i][k] * b[k][j] for k in range(n)),
                           start=a[0][0] * 0) for j in range(n)) for i in range(n))


def _mat_map(mat, fn):
    return tuple(tuple(fn(entry) for entry in row) for row in mat)


def _mat_sub(a, b):
    return tuple(tuple(x - y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def _module_residual_matrix(alg: ConformalAlgebra, mats, aname: str, bname: str):
    reg = alg.registry
    d, x, y = reg.d, reg.x, reg.y
    dp, xp, yp = (Poly.from_var(reg, v) for v in (d, x, y))
    A, B = mats[aname], mats[bname]
    t1 = _mat_mul(_mat_map(A, lambda p: p), _mat_map(B, lambda p: p.subs({d: dp + xp, x: yp})))
    t2 = _mat_mul(_mat_map(B, lambda p: p.substitute(x, yp)),
                  _mat_map(A, lambda p: p.substitute(d, dp + yp)))
    total = _mat_sub(t1, t2)
    for k, coeff in alg.entry(aname, bname).items():
        scalar = coeff.subs({d: -(xp + yp)})
        term = _mat_map(mats[k.name], lambda p: p.substitute(x, xp + yp) * scalar)
        total = _mat_sub(total, term)
    return total


def _rank1_residual(alg: ConformalAlgebra, actions: Mapping[str, Poly],
                    aname: str, bname: str) -> Poly:
    reg = alg.registry
    d, x, y = reg.d, reg.x, reg.y
    dp, xp, yp = (Poly.from_var(reg, v) for v in (d, x, y))
    A, B = actions[aname], actions[bname]
    t1 = A * B.subs({d: dp + xp, x: yp})
    t2 = B.substitute(x, yp) * A.substitute(d, dp + yp)
    t3 = Poly.zero(reg)
    for k, coeff in alg.entry(aname, bname).items():
        t3 = t3 + coeff.subs({d: -(xp + yp)}) * actions[k.name].substitute(x, xp + yp)
    return t1 - t2 - t3


def check_module(alg: ConformalAlgebra, module) -> AxiomReport:
    """Verify the module identity for every ordered generator pair.

    Accepts a Rank1Action, a ConformalModule, or a plain mapping of
    generator names to action polynomials.
    """
    if isinstance(module, Rank1Action):
        mats = {g: ((p,),) for g, p in module.items()}
    elif isinstance(module, ConformalModule):
        mats = module.actions
    elif isinstance(module, Mapping):
        mats = {g: ((p,),) for g, p in module.items()}
    else:
        raise DefinitionError(f"cannot check a {type(module).__name__}")
    if set(mats) != {g.name for g in alg.generators}:
        raise DefinitionError("module actions do not match the algebra's generators")
    entries = []
    for a, b in alg.ordered_pairs():
        res = _module_residual_matrix(alg, mats, a, b)
        ok = all(p.is_zero() for row in res for p in row)
        if len(res) == 1:
            text = str(res[0][0])
        else:
            text = "[" + ", ".join("[" + ", ".join(str(p) for p in row) + "]"
                                   for row in res) + "]"
        entries.append(ReportEntry((a, b), text, ok))
    return AxiomReport("module", entries)


# ---- classification ------------------------------------------------------


def _generic_poly(reg: Registry, prefix: str, max_degree: int) -> tuple[Poly, list[Var]]:
    """Sum of u * d^i * x^j over 0 <= i, j <= max_degree with fresh unknowns."""
    d, x = reg.d, reg.x
    total = Poly.zero(reg)
    unknowns = []
    for i in range(max_degree + 1):
        for j in range(max_degree + 1):
            v = reg.param(f"{prefix}_{i}_{j}")
            unknowns.append(v)
            total = total + Poly.from_var(reg, v) * Poly.from_var(reg, d) ** i \
                * Poly.from_var(reg, x) ** j
    return total, unknowns


def _extract(poly: Poly, unknowns: Sequence[Var]) -> list[Poly]:
    return list(group_coefficients(poly, unknowns).values())


def vir_completeness(max_degree: int) -> list[Poly]:
    """Solve the rank-one module identity for the Virasoro bracket with a
    fully generic action of bidegree at most ``max_degree``.

    Returns the canonical action polynomials of all solution families, free
    coefficients renamed to alpha and beta.  The expected outcome is exactly
    [0, d + alpha*x + beta] for every bound.
    """
    if not 1 <= max_degree <= 3:
        raise UnsupportedError("completeness search is supported for degree bounds 1 to 3")
    reg = Registry()
    d, x, y = reg.d, reg.x, reg.y
    dp, xp, yp = (Poly.from_var(reg, v) for v in (d, x, y))
    f, unknowns = _generic_poly(reg, "c", max_degree)
    residual = f * f.subs({d: dp + xp, x: yp}) \
        - f.substitute(x, yp) * f.substitute(d, dp + yp) \
        - (xp - yp) * f.substitute(x, xp + yp)
    families = solve_system(_extract(residual, unknowns), unknowns)
    carriers = {}
    for i in range(max_degree + 1):
        for j in range(max_degree + 1):
            carriers[reg.var(f"c_{i}_{j}")] = (i + j, i, j)

    results = []
    for fam in families:
        action = fam.substitute_into(f)
        frees = sorted((v for v in action.variables() if v in carriers),
                       key=lambda v: carriers[v], reverse=True)
        names = ["alpha", "beta", "gamma", "delta"]
        if len(frees) > len(names):
            raise UnsupportedError("solution family has too many free coefficients")
        sub = {v: Poly.from_var(reg, reg.param(names[k])) for k, v in enumerate(frees)}
        results.append(action.subs(sub))
    results.sort(key=lambda p: (p.total_degree(), str(p)))
    return results


def _ansatz_prefix(gname: str) -> str:
    return f"u_{gname}"


def _classify_branch(alg: ConformalAlgebra, virasoro: Generator,
                     others: Sequence[Generator], f: Poly,
                     max_degree: int) -> list[dict[str, Poly]]:
    """All bounded-degree actions extending a fixed Virasoro action f.

    Stage one solves the Virasoro pair residuals, which are linear in the
    generic coefficients; stage two substitutes each solution family into the
    residuals of the remaining pairs and solves the cross relations.
    """
    reg = alg.registry
    ansatz: dict[str, Poly] = {virasoro.name: f}
    unknowns: list[Var] = []
    for g in others:
        poly, uvars = _generic_poly(reg, _ansatz_prefix(g.name), max_degree)
        ansatz[g.name] = poly
        unknowns += uvars

    self_residual = _rank1_residual(alg, ansatz, virasoro.name, virasoro.name)
    if not self_residual.is_zero():
        raise UnsupportedError("the proposed Virasoro action fails its own pair identity")

    stage1 = []
    for g in others:
        stage1 += _extract(_rank1_residual(alg, ansatz, virasoro.name, g.name), unknowns)
    families = solve_system(stage1, unknowns)

    cross = {}
    for i, g in enumerate(others):
        for h in others[i:]:
            cross[(g.name, h.name)] = _rank1_residual(alg, ansatz, g.name, h.name)

    out = []
    for fam in families:
        frees = list(fam.free)
        stage2 = []
        for residual in cross.values():
            stage2 += _extract(fam.substitute_into(residual), frees)
        for sub in solve_system(stage2, frees):
            actions = {virasoro.name: f}
            for g in others:
                actions[g.name] = sub.substitute_into(fam.substitute_into(ansatz[g.name]))
            out.append(actions)
    return out


def _rename_frees(alg: ConformalAlgebra, actions: dict[str, Poly]) -> dict[str, Poly]:
    """Rename surviving generic coefficients to gamma (or gamma_<generator>
    when several remain)."""
    reg = alg.registry
    owners: dict[Var, str] = {}
    for g in alg.generators:
        pattern = re.compile(re.escape(_ansatz_prefix(g.name)) + r"_\d+_\d+")
        for p in actions.values():
            for v in p.variables():
                if pattern.fullmatch(v.name):
                    owners[v] = g.name
    frees = sorted(owners, key=lambda v: v.index)
    if not frees:
        return actions
    sub = {}
    if len(frees) == 1:
        sub[frees[0]] = Poly.from_var(reg, reg.param("gamma"))
    else:
        per_owner: dict[str, int] = {}
        for v in frees:
            owner = owners[v]
            count = per_owner.get(owner, 0)
            name = f"gamma_{owner}" if count == 0 else f"gamma_{owner}_{count}"
            per_owner[owner] = count + 1
            sub[v] = Poly.from_var(reg, reg.param(name))
    return {g: p.subs(sub) for g, p in actions.items()}


def _poly_vector(polys: Sequence[Poly]) -> dict:
    out = {}
    for slot, p in enumerate(polys):
        for mono, coeff in p.terms():
            out[(slot, mono)] = coeff
    return out


def _family_space(alg: ConformalAlgebra, actions: dict[str, Poly],
                  frees: Sequence[Var]):
    """Express an affine family of action tuples as base point plus
    direction vectors over the free coefficients."""
    order = [g.name for g in alg.generators]
    zero = {v: Fraction(0) for v in frees}
    base = [actions[g].subs(zero) for g in order]
    dirs = []
    for v in frees:
        one = dict(zero)
        one[v] = Fraction(1)
        shifted = [actions[g].subs(one) for g in order]
        dirs.append(_poly_vector([s - b for s, b in zip(shifted, base)]))
    return _poly_vector(base), dirs


def _in_span(target: dict, dirs: Sequence[dict]) -> bool:
    """Exact membership of a sparse vector in the rational span of others."""
    keys = sorted(set(target) | {k for d in dirs for k in d})
    rows = [[d.get(k, Fraction(0)) for d in dirs] + [target.get(k, Fraction(0))]
            for k in keys]
    col = 0
    for pivot_col in range(len(dirs)):
        pivot = next((r for r in range(col, len(rows)) if rows[r][pivot_col] != 0), None)
        if pivot is None:
            continue
        rows[col], rows[pivot] = rows[pivot], rows[col]
        lead = rows[col][pivot_col]
        for r in range(len(rows)):
            if r != col and rows[r][pivot_col] != 0:
                factor = rows[r][pivot_col] / lead
                rows[r] = [a - factor * b for a, b in zip(rows[r], rows[col])]
        col += 1
    return all(row[-1] == 0 for row in rows[col:])


def _action_frees(actions: dict[str, Poly]) -> list[Var]:
    seen = {}
    for p in actions.values():
        for v in p.variables():
            if v.kind == PARAMETER and (v.name.startswith("u_") or
                                        _MODULE_PARAM_RE.fullmatch(v.name)):
                if v.name in ("alpha", "beta"):
                    continue
                seen[v.index] = v
    return [seen[i] for i in sorted(seen)]


def _space_contains(alg, big: dict[str, Poly], small: dict[str, Poly]) -> bool:
    base_b, dirs_b = _family_space(alg, big, _action_frees(big))
    base_s, dirs_s = _family_space(alg, small, _action_frees(small))
    diff = dict(base_s)
    for k, v in base_b.items():
        diff[k] = diff.get(k, Fraction(0)) - v
    diff = {k: v for k, v in diff.items() if v != 0}
    if not _in_span(diff, dirs_b):
        return False
    return all(_in_span(d, dirs_b) for d in dirs_s)


def _spaces_equal(alg, one: dict[str, Poly], two: dict[str, Poly]) -> bool:
    return _space_contains(alg, one, two) and _space_contains(alg, two, one)


def _dedupe_families(alg, families: list[dict[str, Poly]]) -> list[dict[str, Poly]]:
    kept: list[dict[str, Poly]] = []
    for fam in families:
        if not any(_spaces_equal(alg, fam, other) for other in kept):
            kept.append(fam)
    absorbed = [fam for fam in kept
                if not any(other is not fam and _space_contains(alg, other, fam)
                           and not _space_contains(alg, fam, other) for other in kept)]
    return absorbed


def rank1_classify(alg: ConformalAlgebra, max_degree: int = 4,
                   cross_check: bool = True) -> list[Rank1Action]:
    """All rank-one module actions with polynomial degree at most
    ``max_degree`` in each of d and x, as symbolic families.

    The algebra's structure parameters must be bound.  Families are returned
    with the Virasoro action written as d + alpha*x + beta (or zero) and any
    remaining freedom renamed to gamma.  When ``cross_check`` is set, the
    classification is re-run over a rational grid of (alpha, beta) values
    and any discrepancy with the symbolic families is an error.
    """
    if alg.params:
        raise BindingError(f"{alg.name} has unbound structure parameters; "
                           f"call specialize first")
    virasoro = alg.virasoro_generator
    if virasoro is None:
        raise UnsupportedError(f"{alg.name} has no generator with a Virasoro bracket")
    others = [g for g in alg.generators if g.name != virasoro.name]
    for g in others:
        if alg.entry(virasoro, g).is_zero():
            raise UnsupportedError(
                f"{g.name} brackets to zero with {virasoro.name}; the staged "
                f"search needs every generator coupled to the Virasoro one")
    reg = alg.registry
    d, x = (Poly.from_var(reg, v) for v in (reg.d, reg.x))
    alpha = Poly.from_var(reg, reg.param("alpha"))
    beta = Poly.from_var(reg, reg.param("beta"))
    affine = d + alpha * x + beta

    raw = []
    for f in (Poly.zero(reg), affine):
        raw += _classify_branch(alg, virasoro, others, f, max_degree)
    named = [_rename_frees(alg, fam) for fam in raw]
    families = _dedupe_families(alg, named)
    families.sort(key=lambda fam: (0 if all(p.is_zero() for p in fam.values()) else 1,
                                   "; ".join(str(fam[g.name]) for g in alg.generators)))

    result = [Rank1Action(alg, fam) for fam in families]
    for action in result:
        report = check_module(alg, action)
        if not report.passed:
            raise DiscrepancyError(
                f"classified family {action.render()} fails the module identity")
    if cross_check:
        _grid_cross_check(alg, virasoro, others, families, max_degree)
    return result


_GRID_ALPHAS = (Fraction(-1), Fraction(0), Fraction(1), Fraction(2))
_GRID_BETAS = (Fraction(0), Fraction(1))


def _grid_cross_check(alg, virasoro, others, families, max_degree):
    """Re-run the classification at rational (alpha, beta) points and demand
    the same families; sporadic extras would invalidate the formal stage."""
    reg = alg.registry
    d, x = (Poly.from_var(reg, v) for v in (reg.d, reg.x))
    alpha, beta = reg.param("alpha"), reg.param("beta")
    for a0 in _GRID_ALPHAS:
        for b0 in _GRID_BETAS:
            f0 = d + a0 * x + b0
            found = _classify_branch(alg, virasoro, others, f0, max_degree)
            found = _dedupe_families(alg, [_rename_frees(alg, fam) for fam in found])
            expected = []
            for fam in families:
                inst = {g: p.subs({alpha: Fraction(a0), beta: Fraction(b0)})
                        for g, p in fam.items()}
                if inst[virasoro.name].is_zero():
                    continue
                expected.append(inst)
            expected = _dedupe_families(alg, expected)
            if len(found) != len(expected) or not all(
                    any(_spaces_equal(alg, fm, ex) for ex in expected) for fm in found):
                raise DiscrepancyError(
                    f"classification at alpha={a0}, beta={b0} disagrees with the "
                    f"symbolic families")


# ---- submodules and irreducibility -------------------------------------------


@dataclass(frozen=True)
class SubmoduleWitness:
    """A monic polynomial generating a proper submodule, with the action
    induced on that submodule."""

    generator: Poly
    induced: Rank1Action

    def render(self) -> str:
        return f"p(d) = {self.generator}; induced: {self.induced.render()}"


@dataclass(frozen=True)
class Verdict:
    """Outcome of an irreducibility decision.

    ``certificate`` records the strength of the evidence: "unconditional"
    when a witness or the constant-action argument settles the question for
    every degree, "bounded" when only generators up to the scan degree were
    ruled out.
    """

    status: str
    reason: str
    witnesses: tuple[SubmoduleWitness, ...] = ()
    certificate: str = "unconditional"

    @property
    def irreducible(self) -> bool | None:
        if self.status == "irreducible":
            return True
        if self.status == "reducible":
            return False
        return None

    def render(self) -> str:
        head = self.status
        if self.status == "irreducible" and self.certificate == "bounded":
            head = "irreducible-up-to-bound"
        lines = [f"{head}: {self.reason}"]
        lines += [f"  {w.render()}" for w in self.witnesses]
        return "\n".join(lines)


def _require_bound_action(action: Rank1Action) -> None:
    stray = action.free_params()
    if stray:
        raise UnsupportedError(f"bind module parameters {stray} before scanning")


def induced_action(alg: ConformalAlgebra, action: Rank1Action,
                   divisor: Poly) -> Rank1Action:
    """Action induced on the submodule generated by ``divisor``(d) v.

    For each generator the product A_g(d, x) divisor(d + x) must be
    divisible by divisor(d); the quotients form the induced action, which is
    re-certified before being returned.
    """
    reg = alg.registry
    d, x = reg.d, reg.x
    if divisor.registry is not reg:
        raise DefinitionError("divisor from a different registry")
    if any(v is not d for v in divisor.variables()):
        raise DefinitionError("divisor must be a polynomial in d alone")
    if divisor.is_constant():
        if divisor.constant_value() != 1:
            raise DefinitionError("a constant divisor must be the unit 1")
        return action
    shift = divisor.substitute(d, Poly.from_var(reg, d) + Poly.from_var(reg, x))
    quotients = {}
    for g, p in action.items():
        q, r = monic_div_rem(p * shift, divisor, d)
        if not r.is_zero():
            raise DivisibilityError(
                f"{divisor} does not generate a submodule: the action of {g} "
                f"leaves remainder {r}")
        quotients[g] = q
    induced = Rank1Action(alg, quotients)
    report = check_module(alg, induced)
    assert report.passed, "induced action lost the module identity"
    return induced


def submodule_scan(alg: ConformalAlgebra, action: Rank1Action,
                   max_degree: int = 3) -> list[SubmoduleWitness]:
    """All monic p(d) of degree 1..max_degree with p(d) v generating a
    submodule, each with its induced action.

    A positive-dimensional family of solutions (as for the zero action,
    where every polynomial works) is reported as unsupported rather than
    enumerated.
    """
    if action.algebra is not alg:
        raise DefinitionError("action belongs to a different algebra")
    _require_bound_action(action)
    if max_degree < 1:
        raise ValueError("scan degree must be at least 1")
    reg = alg.registry
    d, x = reg.d, reg.x
    dp = Poly.from_var(reg, d)
    witnesses = []
    for degree in range(1, max_degree + 1):
        tvars = [reg.param(f"t{k}") for k in range(degree)]
        candidate = dp ** degree
        for k, v in enumerate(tvars):
            candidate = candidate + Poly.from_var(reg, v) * dp ** k
        shifted = candidate.substitute(d, dp + Poly.from_var(reg, x))
        eqs = []
        for _, p in action.items():
            _, r = monic_div_rem(p * shifted, candidate, d)
            eqs += _extract(r, tvars)
        for fam in solve_system(eqs, tvars):
            if not fam.is_point():
                raise UnsupportedError(
                    f"submodule generators of degree {degree} form a "
                    f"{fam.dim}-parameter family")
            witness = fam.substitute_into(candidate)
            witnesses.append(SubmoduleWitness(witness, induced_action(alg, action, witness)))
    return witnesses


def irreducibility_verdict(alg: ConformalAlgebra, action: Rank1Action,
                           max_degree: int = 3) -> Verdict:
    """Decide irreducibility of a bound rank-one action.

    The zero action is reducible outright.  A generator acting by a nonzero
    constant c rules out any proper submodule for every degree: p(d) would
    have to divide c p(d + x), forcing deg p = 0.  Otherwise monic
    submodule generators are scanned up to ``max_degree``; a hit is a
    reducibility witness, an empty scan certifies irreducibility up to that
    bound only.
    """
    _require_bound_action(action)
    reg = alg.registry
    d = reg.d
    if action.is_zero():
        zero = Rank1Action(alg, {g.name: Poly.zero(reg) for g in alg.generators})
        witness = SubmoduleWitness(Poly.from_var(reg, d), zero)
        return Verdict("reducible", "the action is zero, so every ideal of"
                       " the polynomial ring is a submodule", (witness,))
    for g, p in action.items():
        if p.is_constant() and not p.is_zero():
            return Verdict("irreducible",
                           f"{g} acts by the nonzero constant {p.constant_value()}")
    found = submodule_scan(alg, action, max_degree)
    if found:
        return Verdict("reducible",
                       f"monic submodule generators exist (scanned through "
                       f"degree {max_degree})", tuple(found))
    return Verdict("irreducible",
                   f"no monic generator of degree <= {max_degree} spans a "
                   f"proper submodule", certificate="bounded")
