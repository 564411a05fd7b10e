"""Annihilation algebras of lambda-bracket tables and their truncations.

The coefficient algebra of a conformal algebra has basis symbols g_(t) for
each generator g and internal index t = 0, 1, 2, ...; its Lie bracket is

    [a_(m), b_(n)] = sum_j binom(m, j) (a_(j) b)_(m + n - j)

where a_(j) b is the j-th product and a d-power inside a coefficient reduces
by (d^e k)_(t) = (-1)^e t (t-1) ... (t-e+1) k_(t-e).  The falling factorial
vanishes for e > t, so indices never go negative.  Basis symbols are exposed
through labels (internal index minus the generator's label offset), which is
the indexing used by the closed bracket formulas.

The translation generator acts by [d, g_(t)] = -t g_(t-1); adjoining it gives
the extended algebra.  Labels minus the filtration shift grade a filtration:
brackets never decrease total degree, and the action of d lowers degree by
one.  Truncating at depth N (degrees 0 to N-1) yields a finite-dimensional
Lie algebra whose solvability is decided exactly over the rationals.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import BindingError, DefinitionError, LabelError, UnsupportedError
from .poly import PARAMETER, Poly
from .algebra import ConformalAlgebra, Generator


@dataclass(frozen=True)
class AnnBasis:
    """Basis symbol g_(label) of the coefficient algebra."""

    gen: Generator
    label: Fraction

    def __post_init__(self):
        object.__setattr__(self, "label", Fraction(self.label))
        internal = self.label + self.gen.label_offset
        if internal.denominator != 1 or internal < 0:
            raise LabelError(
                f"{self.gen.name} label {self.label} gives internal index {internal}; "
                f"labels must be offset-shifted nonnegative integers")

    @property
    def internal(self) -> int:
        return int(self.label + self.gen.label_offset)

    @property
    def degree(self) -> Fraction:
        return self.label - self.gen.filtration_shift

    def __str__(self) -> str:
        return f"{self.gen.name}_{self.label}"


class AnnElement:
    """Finite rational-coefficient combination of coefficient-algebra symbols.

    Coefficients are polynomials in the declared parameters only, so bracket
    tables can be compared symbolically before parameters are bound.
    """

    __slots__ = ("registry", "_coeffs")

    def __init__(self, registry, coeffs: Mapping[AnnBasis, Poly | Fraction | int] | None = None):
        self.registry = registry
        self._coeffs = {}
        for basis, c in (coeffs or {}).items():
            p = c if isinstance(c, Poly) else Poly.const(registry, c)
            if p.registry is not registry:
                raise DefinitionError("coefficient polynomial from a different registry")
            for v in p.variables():
                if v.kind != PARAMETER:
                    raise DefinitionError(
                        f"coefficient of {basis} uses {v.name}; only parameters are allowed")
            if not p.is_zero():
                self._coeffs[basis] = p

    @classmethod
    def of(cls, registry, basis: AnnBasis) -> "AnnElement":
        return cls(registry, {basis: Poly.one(registry)})

    def coeff(self, basis: AnnBasis) -> Poly:
        return self._coeffs.get(basis, Poly.zero(self.registry))

    def items(self) -> list[tuple[AnnBasis, Poly]]:
        order = sorted(self._coeffs, key=lambda s: (s.gen.name, s.label))
        return [(s, self._coeffs[s]) for s in order]

    def is_zero(self) -> bool:
        return not self._coeffs

    def __add__(self, other: "AnnElement") -> "AnnElement":
        if not isinstance(other, AnnElement):
            return NotImplemented
        out = dict(self._coeffs)
        for s, p in other._coeffs.items():
            out[s] = out.get(s, Poly.zero(self.registry)) + p
        return AnnElement(self.registry, out)

    def __neg__(self) -> "AnnElement":
        return AnnElement(self.registry, {s: -p for s, p in self._coeffs.items()})

    def __sub__(self, other: "AnnElement") -> "AnnElement":
        if not isinstance(other, AnnElement):
            return NotImplemented
        return self + (-other)

    def scale(self, factor) -> "AnnElement":
        return AnnElement(self.registry, {s: p * factor for s, p in self._coeffs.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, AnnElement):
            return NotImplemented
        return self.registry is other.registry and self._coeffs == other._coeffs

    def __hash__(self) -> int:
        return hash((id(self.registry), frozenset(self._coeffs.items())))

    def render(self) -> str:
        if not self._coeffs:
            return "0"
        parts = []
        for s, p in self.items():
            if p.is_constant():
                c = p.constant_value()
                if c == 1:
                    piece = str(s)
                elif c == -1:
                    piece = f"-{s}"
                else:
                    piece = f"{c}*{s}"
            else:
                piece = f"({p})*{s}"
            if not parts:
                parts.append(piece)
            elif piece.startswith("-"):
                parts.append(f"- {piece[1:]}")
            else:
                parts.append(f"+ {piece}")
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"AnnElement({self.render()})"


def _as_ann_element(alg: ConformalAlgebra, value) -> AnnElement:
    if isinstance(value, AnnBasis):
        return AnnElement.of(alg.registry, value)
    if isinstance(value, AnnElement):
        return value
    raise DefinitionError(f"expected an AnnBasis or AnnElement, got {type(value).__name__}")


def _check_membership(alg: ConformalAlgebra, elem: AnnElement) -> None:
    for basis, _ in elem.items():
        if alg.gen(basis.gen.name) != basis.gen:
            raise DefinitionError(f"{basis} does not belong to {alg.name}")


def _bracket_expansion(alg: ConformalAlgebra, gname: str, hname: str):
    """Expand the table entry [g_x h] = sum_k sum_{j,e} c x^j d^e k into a
    list of (j, k, e, coefficient) with parameter-only coefficients."""
    reg = alg.registry
    out = []
    for k, p in alg.entry(gname, hname).items():
        for j in range(p.degree(reg.x) + 1):
            pj = p.coeff_of(reg.x, j)
            for e in range(pj.degree(reg.d) + 1):
                c = pj.coeff_of(reg.d, e)
                if not c.is_zero():
                    out.append((j, k, e, c))
    return out


def ann_bracket(alg: ConformalAlgebra, left, right) -> AnnElement:
    """Lie bracket in the coefficient algebra, by the binomial expansion of
    the lambda-bracket table with falling-factorial reduction of d-powers."""
    left = _as_ann_element(alg, left)
    right = _as_ann_element(alg, right)
    _check_membership(alg, left)
    _check_membership(alg, right)
    reg = alg.registry
    acc: dict[AnnBasis, Poly] = {}
    expansions: dict[tuple[str, str], list] = {}
    for abasis, ca in left.items():
        m = abasis.internal
        for bbasis, cb in right.items():
            n = bbasis.internal
            pair = (abasis.gen.name, bbasis.gen.name)
            if pair not in expansions:
                expansions[pair] = _bracket_expansion(alg, *pair)
            for j, k, e, c in expansions[pair]:
                # the j-th product is j! times the x^j coefficient
                binom = math.comb(m, j) if j <= m else 0
                if binom == 0:
                    continue
                t = m + n - j
                fall = math.perm(t, e) if e <= t else 0
                if fall == 0:
                    continue
                factor = Fraction(binom * fall * (-1) ** e) * math.factorial(j)
                target = AnnBasis(k, Fraction(t - e) - k.label_offset)
                assert target.internal >= 0
                term = c * factor * ca * cb
                acc[target] = acc.get(target, Poly.zero(reg)) + term
    return AnnElement(reg, acc)


def partial_action(alg: ConformalAlgebra, value) -> AnnElement:
    """Action of the translation generator: [d, g_(t)] = -t g_(t-1)."""
    elem = _as_ann_element(alg, value)
    _check_membership(alg, elem)
    reg = alg.registry
    acc: dict[AnnBasis, Poly] = {}
    for basis, c in elem.items():
        t = basis.internal
        if t == 0:
            continue
        target = AnnBasis(basis.gen, basis.label - 1)
        acc[target] = acc.get(target, Poly.zero(reg)) + c * Fraction(-t)
    return AnnElement(reg, acc)


def labels_through(gen: Generator, max_label: Fraction | int) -> list[Fraction]:
    """All valid labels of ``gen`` that do not exceed ``max_label``."""
    top = math.floor(Fraction(max_label) + gen.label_offset)
    return [Fraction(t) - gen.label_offset for t in range(top + 1)]


def compare_closed_form(alg: ConformalAlgebra, max_label: Fraction | int = 10) -> list[str]:
    """Check the expanded bracket against the algebra's closed formulas for
    every ordered basis pair with labels up to ``max_label``.  Returns the
    list of disagreements, empty when the formulas match."""
    if alg.closed_ann_form is None:
        raise UnsupportedError(f"{alg.name} has no closed bracket formula attached")
    mismatches = []
    for g in alg.generators:
        for h in alg.generators:
            for m in labels_through(g, max_label):
                for n in labels_through(h, max_label):
                    got = ann_bracket(alg, AnnBasis(g, m), AnnBasis(h, n))
                    want = alg.closed_ann_form(alg, g, m, h, n)
                    if got != want:
                        mismatches.append(
                            f"[{g.name}_{m}, {h.name}_{n}]: expansion {got.render()} "
                            f"!= closed form {want.render()}")
    return mismatches


def filtration_check(alg: ConformalAlgebra, max_label: Fraction | int = 6) -> list[str]:
    """Verify the degree filtration on basis pairs with labels up to
    ``max_label``: bracket terms satisfy deg >= deg(a) + deg(b) and the
    action of d lowers degree by exactly one.  Returns violations."""
    violations = []
    for g in alg.generators:
        for h in alg.generators:
            for m in labels_through(g, max_label):
                a = AnnBasis(g, m)
                for n in labels_through(h, max_label):
                    b = AnnBasis(h, n)
                    out = ann_bracket(alg, a, b)
                    floor = a.degree + b.degree
                    for basis, _ in out.items():
                        if basis.degree < floor:
                            violations.append(
                                f"[{a}, {b}] has term {basis} of degree {basis.degree} "
                                f"below {floor}")
    for g in alg.generators:
        for m in labels_through(g, max_label):
            a = AnnBasis(g, m)
            for basis, _ in partial_action(alg, a).items():
                if basis.degree != a.degree - 1:
                    violations.append(
                        f"[d, {a}] has term {basis} of degree {basis.degree}, "
                        f"expected {a.degree - 1}")
    return violations


# ---- finite quotients -------------------------------------------------------


def _frac_str(value: Fraction) -> str:
    return str(value)


class FiniteLie:
    """A finite-dimensional Lie algebra over Q given by structure constants.

    The basis is a sequence of (generator name, label) pairs; brackets are
    stored for index pairs i < j and extended by antisymmetry.  Solvability
    and nilpotency are decided by exact linear algebra.
    """

    def __init__(self, basis: Sequence[tuple[str, Fraction]],
                 brackets: Mapping[tuple[int, int], Mapping[int, Fraction]]):
        self.basis = tuple((name, Fraction(label)) for name, label in basis)
        if len(set(self.basis)) != len(self.basis):
            raise DefinitionError("duplicate basis symbols")
        dim = len(self.basis)
        table = {}
        for (i, j), terms in brackets.items():
            if not (0 <= i < j < dim):
                raise DefinitionError(f"bracket indices ({i},{j}) must satisfy 0 <= i < j < dim")
            cleaned = {k: Fraction(c) for k, c in terms.items() if c != 0}
            for k in cleaned:
                if not 0 <= k < dim:
                    raise DefinitionError(f"bracket ({i},{j}) targets invalid index {k}")
            if cleaned:
                table[(i, j)] = cleaned
        self._table = table

    @property
    def dim(self) -> int:
        return len(self.basis)

    def symbol(self, index: int) -> str:
        name, label = self.basis[index]
        return f"{name}_{label}"

    def index_of(self, name: str, label: Fraction | int) -> int:
        key = (name, Fraction(label))
        for i, entry in enumerate(self.basis):
            if entry == key:
                return i
        raise LabelError(f"no basis symbol {name}_{label}")

    def bracket_indices(self, i: int, j: int) -> dict[int, Fraction]:
        if i == j:
            return {}
        if i < j:
            return dict(self._table.get((i, j), {}))
        return {k: -c for k, c in self._table.get((j, i), {}).items()}

    def nonzero_brackets(self) -> list[tuple[tuple[int, int], list[tuple[int, Fraction]]]]:
        """Stored bracket table as ((i, j), [(k, coeff), ...]) rows, sorted."""
        return [((i, j), sorted(terms.items()))
                for (i, j), terms in sorted(self._table.items())]

    def bracket_vectors(self, u: Sequence[Fraction], v: Sequence[Fraction]) -> list[Fraction]:
        out = [Fraction(0)] * self.dim
        for i, ci in enumerate(u):
            if ci == 0:
                continue
            for j, cj in enumerate(v):
                if cj == 0:
                    continue
                for k, c in self.bracket_indices(i, j).items():
                    out[k] += ci * cj * c
        return out

    def check_jacobi(self) -> list[str]:
        """Residual [x,[y,z]] + [y,[z,x]] + [z,[x,y]] per basis triple;
        returns the failing triples."""
        failures = []
        unit = [[Fraction(int(r == c)) for c in range(self.dim)] for r in range(self.dim)]
        for i in range(self.dim):
            for j in range(i + 1, self.dim):
                for k in range(j + 1, self.dim):
                    x, y, z = unit[i], unit[j], unit[k]
                    total = self.bracket_vectors(x, self.bracket_vectors(y, z))
                    for a, cf in enumerate(self.bracket_vectors(y, self.bracket_vectors(z, x))):
                        total[a] += cf
                    for a, cf in enumerate(self.bracket_vectors(z, self.bracket_vectors(x, y))):
                        total[a] += cf
                    if any(c != 0 for c in total):
                        failures.append(f"({self.symbol(i)}, {self.symbol(j)}, {self.symbol(k)})")
        return failures

    # ---- span arithmetic ----

    def _echelon(self, vectors: Iterable[Sequence[Fraction]]) -> list[list[Fraction]]:
        """Fraction-free (Bareiss) elimination; returns an echelon basis of
        the span as integer-scaled rational vectors."""
        rows = []
        for vec in vectors:
            scale = math.lcm(*(c.denominator for c in vec)) if any(vec) else 1
            row = [int(c * scale) for c in vec]
            if any(row):
                g = math.gcd(*(abs(c) for c in row))
                rows.append([c // g for c in row])
        rank_rows = []
        prev = 1
        col = 0
        while rows and col < self.dim:
            pivot_at = next((r for r, row in enumerate(rows) if row[col] != 0), None)
            if pivot_at is None:
                col += 1
                continue
            pivot_row = rows.pop(pivot_at)
            pivot = pivot_row[col]
            reduced = []
            for row in rows:
                new = []
                for rc, pc in zip(row, pivot_row):
                    q, r = divmod(pivot * rc - row[col] * pc, prev)
                    assert r == 0, "Bareiss exact division failed"
                    new.append(q)
                if any(new):
                    reduced.append(new)
            rank_rows.append(pivot_row)
            rows = reduced
            prev = pivot
            col += 1
        return [[Fraction(c) for c in row] for row in rank_rows]

    def _series_dims(self, step) -> list[int]:
        current = [[Fraction(int(r == c)) for c in range(self.dim)] for r in range(self.dim)]
        dims = [self.dim]
        while True:
            nxt = self._echelon(step(current))
            dims.append(len(nxt))
            if len(nxt) == 0 or len(nxt) == len(current):
                return dims
            current = nxt

    def derived_series(self) -> list[int]:
        """Dimensions of g, [g,g], [[g,g],[g,g]], ... until zero or stable."""
        def step(space):
            return [self.bracket_vectors(u, v)
                    for a, u in enumerate(space) for v in space[a + 1:]]
        return self._series_dims(step)

    def lower_central_series(self) -> list[int]:
        """Dimensions of g, [g,g], [g,[g,g]], ... until zero or stable."""
        whole = [[Fraction(int(r == c)) for c in range(self.dim)] for r in range(self.dim)]

        def step(space):
            return [self.bracket_vectors(u, v) for u in whole for v in space]
        return self._series_dims(step)

    def is_solvable(self) -> tuple[bool, int | None]:
        """Whether the derived series reaches zero, and in how many steps."""
        dims = self.derived_series()
        if dims[-1] == 0:
            return True, len(dims) - 1
        return False, None

    def is_nilpotent(self) -> bool:
        return self.lower_central_series()[-1] == 0

    # ---- serialization ----

    def to_json(self) -> dict:
        brackets = []
        for (i, j) in sorted(self._table):
            terms = [{"k": k, "coeff": _frac_str(c)}
                     for k, c in sorted(self._table[(i, j)].items())]
            brackets.append({"i": i, "j": j, "terms": terms})
        return {
            "basis": [{"gen": name, "label": _frac_str(label)} for name, label in self.basis],
            "brackets": brackets,
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "FiniteLie":
        try:
            basis = [(entry["gen"], Fraction(entry["label"])) for entry in data["basis"]]
            brackets = {}
            for rec in data.get("brackets", []):
                terms = {term["k"]: Fraction(term["coeff"]) for term in rec["terms"]}
                brackets[(rec["i"], rec["j"])] = terms
        except (KeyError, TypeError, ValueError) as exc:
            raise DefinitionError(f"malformed finite algebra data: {exc}") from None
        return cls(basis, brackets)

    def __eq__(self, other) -> bool:
        if not isinstance(other, FiniteLie):
            return NotImplemented
        return self.basis == other.basis and self._table == other._table

    def __repr__(self) -> str:
        return f"FiniteLie(dim={self.dim})"


def truncated_quotient(alg: ConformalAlgebra, depth: int,
                       bindings: Mapping[str, Fraction | int] | None = None) -> FiniteLie:
    """Quotient of the nonnegative part of the coefficient algebra by the
    part of filtration degree >= depth, as a FiniteLie.

    Each generator contributes basis labels shift, shift+1, ..., shift+depth-1.
    Parameters must be bound (here or beforehand).  The Jacobi identity of the
    result is re-checked after truncation.
    """
    if depth < 1:
        raise ValueError("truncation depth must be at least 1")
    if bindings is not None:
        alg = alg.specialize(bindings)
    elif alg.params:
        raise BindingError(f"{alg.name} has unbound parameters "
                           f"{sorted(v.name for v in alg.params)}")
    symbols = [AnnBasis(g, g.filtration_shift + k)
               for g in alg.generators for k in range(depth)]
    index = {(s.gen.name, s.label): pos for pos, s in enumerate(symbols)}
    brackets = {}
    for i, a in enumerate(symbols):
        for j in range(i + 1, len(symbols)):
            b = symbols[j]
            terms = {}
            for basis, coeff in ann_bracket(alg, a, b).items():
                if basis.degree >= depth:
                    continue
                assert basis.degree >= 0
                terms[index[(basis.gen.name, basis.label)]] = coeff.constant_value()
            if terms:
                brackets[(i, j)] = terms
    finite = FiniteLie([(s.gen.name, s.label) for s in symbols], brackets)
    bad = finite.check_jacobi()
    if bad:
        raise DefinitionError(f"truncation broke the Jacobi identity at {bad[:3]}")
    return finite
