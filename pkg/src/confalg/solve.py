"""Exact solver for small polynomial systems over the rationals.

Input: polynomials whose variables all come from a declared unknown list
(formal variables must already be eliminated by coefficient extraction and
algebra parameters must already be bound).  Output: the solution variety as a
finite union of affine-parametrized families, each written as assignments of
affine expressions in the remaining free unknowns, or the empty union when
the system is inconsistent.

Strategy: equations affine in the unknowns are eliminated by exact Gaussian
steps; residual nonlinear equations are branched on in a bounded way
(single-monomial equations, univariate residuals via rational roots,
monomial-content splits, and total-degree-2 equations that factor into two
affine forms over Q).  Anything else raises UnsupportedSystemError naming the
offending equation.

The base field is Q throughout: only rational roots of univariate residuals
are kept, so solution components with irrational or complex coordinates are
intentionally outside the reported variety.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import UnsupportedSystemError
from .poly import Poly, Var

_MAX_BRANCH_DEPTH = 400


class SolutionFamily:
    """One affine-parametrized component of a solution set.

    ``solved`` maps unknowns to affine polynomials in the ``free`` unknowns;
    unknowns not in ``solved`` are exactly the free ones.  Families produced
    by :func:`solve_system` are in a canonical form (reduced row echelon over
    the unknown order), so equal components compare equal.
    """

    __slots__ = ("unknowns", "solved", "free")

    def __init__(self, unknowns: Sequence[Var], solved: Mapping[Var, Poly], free: Sequence[Var]):
        self.unknowns = tuple(unknowns)
        self.solved = dict(solved)
        self.free = tuple(free)

    @property
    def dim(self) -> int:
        return len(self.free)

    def is_point(self) -> bool:
        return not self.free

    def value_of(self, v: Var) -> Poly:
        if v in self.solved:
            return self.solved[v]
        if v in self.free:
            raise KeyError(f"{v.name} is free in this family")
        raise KeyError(f"{v.name} is not an unknown of this family")

    def substitute_into(self, p: Poly) -> Poly:
        """Apply the family's assignments to ``p`` (free unknowns stay)."""
        return p.subs(self.solved)

    def point(self, free_values: Mapping[Var, Fraction] | None = None) -> dict[Var, Fraction]:
        """A concrete rational point of the family (free unknowns default 0)."""
        free_values = dict(free_values or {})
        binding = {v: Fraction(free_values.get(v, 0)) for v in self.free}
        out = dict(binding)
        for v, expr in self.solved.items():
            out[v] = expr.subs(binding).constant_value()
        return out

    def _signature(self):
        return (
            tuple(sorted(((v.index, p) for v, p in self.solved.items()))),
            tuple(v.index for v in self.free),
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, SolutionFamily):
            return NotImplemented
        return self._signature() == other._signature()

    def __hash__(self) -> int:
        return hash(self._signature())

    def render(self) -> str:
        parts = [f"{v.name} = {p}" for v, p in sorted(self.solved.items(), key=lambda kv: kv[0].index)]
        if self.free:
            parts.append("free: " + ", ".join(v.name for v in self.free))
        return "{" + "; ".join(parts) + "}"

    def __repr__(self) -> str:
        return f"SolutionFamily{self.render()}"


class SolutionSet:
    """A finite union of affine families; empty means inconsistent."""

    __slots__ = ("unknowns", "families")

    def __init__(self, unknowns: Sequence[Var], families: Sequence[SolutionFamily]):
        self.unknowns = tuple(unknowns)
        self.families = tuple(families)

    @property
    def inconsistent(self) -> bool:
        return not self.families

    def __iter__(self):
        return iter(self.families)

    def __len__(self) -> int:
        return len(self.families)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SolutionSet):
            return NotImplemented
        return set(self.families) == set(other.families)

    def __hash__(self) -> int:
        return hash(frozenset(self.families))

    def verify(self, eqs: Iterable[Poly]) -> bool:
        """Substitute every family back into every equation; True if all vanish."""
        for eq in eqs:
            for fam in self.families:
                if not fam.substitute_into(eq).is_zero():
                    return False
        return True

    def render(self) -> str:
        if not self.families:
            return "inconsistent"
        return " union ".join(f.render() for f in self.families)

    def __repr__(self) -> str:
        return f"SolutionSet[{self.render()}]"


# ---- helpers ---------------------------------------------------------------


def _divisors(n: int) -> list[int]:
    n = abs(n)
    if n == 0:
        return []
    out = set()
    i = 1
    while i * i <= n:
        if n % i == 0:
            out.add(i)
            out.add(n // i)
        i += 1
    return sorted(out)


def rational_roots(coeffs: Sequence[Fraction]) -> list[Fraction]:
    """All rational roots of sum(coeffs[k] * u**k), exact, sorted.

    Complete for rational roots at any degree by the rational root theorem;
    irrational and complex roots are deliberately not produced.
    """
    coeffs = list(coeffs)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    if not coeffs:
        raise ValueError("the zero polynomial has every root")
    if len(coeffs) == 1:
        return []
    den = math.lcm(*(c.denominator for c in coeffs))
    ints = [int(c * den) for c in coeffs]
    roots = []
    if ints[0] == 0:
        roots.append(Fraction(0))
        while ints and ints[0] == 0:
            ints.pop(0)
    if len(ints) <= 1:
        return sorted(set(roots))
    g = math.gcd(*ints)
    ints = [c // g for c in ints]
    for p in _divisors(ints[0]):
        for q in _divisors(ints[-1]):
            for cand in (Fraction(p, q), Fraction(-p, q)):
                acc = Fraction(0)
                for c in reversed(ints):
                    acc = acc * cand + c
                if acc == 0:
                    roots.append(cand)
    return sorted(set(roots))


def _fraction_sqrt(c: Fraction) -> Fraction | None:
    if c < 0:
        return None
    pn = math.isqrt(c.numerator)
    pd = math.isqrt(c.denominator)
    if pn * pn == c.numerator and pd * pd == c.denominator:
        return Fraction(pn, pd)
    return None


def _affine_sqrt(p: Poly) -> Poly | None:
    """An affine E with E**2 == p, or None.  Works for total degree <= 2."""
    if p.is_zero():
        return Poly.zero(p.registry)
    if p.total_degree() > 2:
        return None
    vs = p.variables()
    comps = {}
    for v in vs:
        c2 = p.coeff_of(v, 2)
        if not c2.is_constant():
            return None
        r = _fraction_sqrt(c2.constant_value())
        if r is None:
            return None
        comps[v] = r
    carriers = [v for v in vs if comps[v] != 0]
    if not carriers:
        if not p.is_constant():
            return None
        r = _fraction_sqrt(p.constant_value())
        return Poly.const(p.registry, r) if r is not None else None
    # Anchor's sign is fixed positive; search the other carriers' signs and
    # read the constant term off the anchor's linear coefficient.
    anchor = carriers[0]
    for mask in range(1 << (len(carriers) - 1)):
        e = Poly.from_var(p.registry, anchor) * comps[anchor]
        for i, v in enumerate(carriers[1:]):
            sign = 1 if (mask >> i) & 1 == 0 else -1
            e = e + Poly.from_var(p.registry, v) * (comps[v] * sign)
        lin_const = p.coeff_of(anchor, 1)
        for v in carriers[1:]:
            lin_const = lin_const.coeff_of(v, 0)
        if not lin_const.is_constant():
            return None
        e0 = lin_const.constant_value() / (2 * comps[anchor])
        cand = e + Poly.const(p.registry, e0)
        if cand * cand == p:
            return cand
    return None


def _normalized_eqs(eqs: Iterable[Poly]) -> tuple[Poly, ...]:
    uniq = {}
    for eq in eqs:
        if not eq.is_zero():
            uniq[eq] = None
    return tuple(sorted(uniq, key=lambda e: (e.total_degree(), len(e._terms), e.signature())))


# ---- core search ------------------------------------------------------------
#
# _solve is purely functional: it maps an equation tuple to the list of
# assignment maps (solved var -> polynomial in the remaining free unknowns)
# describing the variety.  Different branch orders frequently reconverge to
# the same reduced system, so results are memoized per solve_system call.


def _compose(v: Var, expr: Poly, subsolutions: list[dict]) -> list[dict]:
    out = []
    for sol in subsolutions:
        combined = dict(sol)
        combined[v] = expr.subs(sol) if sol else expr
        out.append(combined)
    return out


def _solve(eqs: Iterable[Poly], memo: dict, depth: int) -> list[dict[Var, Poly]]:
    eqs = _normalized_eqs(eqs)
    for eq in eqs:
        if eq.is_constant():
            return []
    if not eqs:
        return [{}]
    key = frozenset(eqs)
    hit = memo.get(key)
    if hit is not None:
        return hit
    if depth <= 0:
        raise UnsupportedSystemError("branch depth exhausted while triangularizing", eqs[0])
    result = _solve_step(eqs, memo, depth)
    memo[key] = result
    return result


def _solve_step(eqs: tuple[Poly, ...], memo: dict, depth: int) -> list[dict[Var, Poly]]:
    registry = eqs[0].registry

    def substituted(v: Var, value: Poly, skip=None):
        return [e.substitute(v, value) for e in eqs if e is not skip]

    # Forced moves first: single-term equations in one variable pin it to 0,
    # affine equations eliminate their highest-index variable exactly.
    for eq in eqs:
        if len(eq._terms) == 1:
            vs = eq.variables()
            if len(vs) == 1:
                zero = Poly.zero(registry)
                return _compose(vs[0], zero, _solve(substituted(vs[0], zero), memo, depth - 1))
    for eq in eqs:
        if eq.total_degree() <= 1:
            v = max(eq.variables(), key=lambda w: w.index)
            c = eq.coeff_of(v, 1).constant_value()
            expr = (eq.coeff_of(v, 1) * Poly.from_var(registry, v) - eq) / c
            return _compose(v, expr, _solve(substituted(v, expr, skip=eq), memo, depth - 1))

    # Tier 1: a single-monomial equation vanishes iff one of its variables does.
    for eq in eqs:
        if len(eq._terms) == 1:
            out = []
            zero = Poly.zero(registry)
            for v in eq.variables():
                out.extend(_compose(v, zero, _solve(substituted(v, zero), memo, depth - 1)))
            return out
    # Tier 2: univariate equations branch on their rational roots.
    for eq in eqs:
        vs = eq.variables()
        if len(vs) == 1:
            v = vs[0]
            coeffs = [eq.coeff_of(v, k).constant_value() for k in range(eq.degree(v) + 1)]
            out = []
            for r in rational_roots(coeffs):
                value = Poly.const(registry, r)
                out.extend(_compose(v, value, _solve(substituted(v, value), memo, depth - 1)))
            return out
    # Tier 3: split off a common monomial factor.
    for eq in eqs:
        content = None
        for m in eq._terms:
            exps = dict(m)
            if content is None:
                content = exps
            else:
                content = {i: min(e, content[i]) for i, e in exps.items() if i in content}
            if not content:
                break
        if content:
            cofactor = eq
            for idx, e in content.items():
                cofactor = _divide_by_power(cofactor, registry.all_vars()[idx], e)
            out = []
            zero = Poly.zero(registry)
            for idx in sorted(content):
                v = registry.all_vars()[idx]
                out.extend(_compose(v, zero, _solve(substituted(v, zero), memo, depth - 1)))
            rest = [e2 for e2 in eqs if e2 is not eq]
            out.extend(_solve(rest + [cofactor], memo, depth - 1))
            return out
    # Tier 4: a degree-2 equation that factors into two affine forms.
    for eq in eqs:
        if eq.total_degree() != 2:
            continue
        for u in eq.variables():
            if eq.degree(u) != 2:
                continue
            a = eq.coeff_of(u, 2)
            if not a.is_constant():
                continue
            disc = eq.coeff_of(u, 1) ** 2 - a * eq.coeff_of(u, 0) * 4
            root = _affine_sqrt(disc)
            if root is None:
                continue
            up = Poly.from_var(registry, u)
            rest = [e2 for e2 in eqs if e2 is not eq]
            out = []
            for factor in (up * (a * 2) + eq.coeff_of(u, 1) - root,
                           up * (a * 2) + eq.coeff_of(u, 1) + root):
                out.extend(_solve(rest + [factor], memo, depth - 1))
            return out
    raise UnsupportedSystemError(
        "system outside the supported shape (cannot factor or branch)", eqs[0]
    )


def _divide_by_power(p: Poly, v: Var, e: int) -> Poly:
    out = {}
    for m, c in p._terms.items():
        exps = dict(m)
        exps[v.index] = exps.get(v.index, 0) - e
        if exps[v.index] < 0:
            raise ValueError("monomial content division failed")
        if exps[v.index] == 0:
            del exps[v.index]
        out[tuple(sorted(exps.items()))] = c
    return Poly(p.registry, out, _normalized=True)


# ---- canonicalization --------------------------------------------------------


def _rref(rows: list[list[Fraction]], ncols: int) -> list[list[Fraction]]:
    rows = [row[:] for row in rows if any(row)]
    pivot_row = 0
    for col in range(ncols - 1):
        src = next((r for r in range(pivot_row, len(rows)) if rows[r][col] != 0), None)
        if src is None:
            continue
        rows[pivot_row], rows[src] = rows[src], rows[pivot_row]
        piv = rows[pivot_row][col]
        rows[pivot_row] = [c / piv for c in rows[pivot_row]]
        for r in range(len(rows)):
            if r != pivot_row and rows[r][col] != 0:
                f = rows[r][col]
                rows[r] = [c - f * p for c, p in zip(rows[r], rows[pivot_row])]
        pivot_row += 1
        if pivot_row == len(rows):
            break
    return [row for row in rows if any(row)]


def _canonical_family(unknowns: Sequence[Var], assign: Mapping[Var, Poly],
                      registry) -> SolutionFamily:
    """Rewrite an assignment map in reduced row echelon form over the unknown
    order, giving a unique (solved, free) presentation of the affine space."""
    index_of = {v: i for i, v in enumerate(unknowns)}
    n = len(unknowns)
    rows = []
    for v, expr in assign.items():
        if expr.total_degree() > 1:
            raise UnsupportedSystemError(
                "solution family is not affine in its free unknowns", expr
            )
        row = [Fraction(0)] * (n + 1)
        row[index_of[v]] = Fraction(1)
        for m, c in expr._terms.items():
            if not m:
                row[n] -= c
            else:
                (idx, e), = m
                w = next(w for w in unknowns if w.index == idx)
                row[index_of[w]] -= c
        rows.append(row)
    reduced = _rref(rows, n + 1)
    solved = {}
    pivot_cols = set()
    for row in reduced:
        col = next(i for i in range(n) if row[i] != 0)
        pivot_cols.add(col)
    free = [unknowns[i] for i in range(n) if i not in pivot_cols]
    for row in reduced:
        col = next(i for i in range(n) if row[i] != 0)
        expr = Poly.const(registry, -row[n])
        for j in range(col + 1, n):
            if row[j] != 0:
                expr = expr - Poly.from_var(registry, unknowns[j]) * row[j]
        solved[unknowns[col]] = expr
    return SolutionFamily(unknowns, solved, free)


def _family_contains(big: SolutionFamily, small: SolutionFamily, registry) -> bool:
    """True if every point of ``small`` lies in ``big``."""
    if small.dim > big.dim:
        return False
    param = dict(small.solved)
    for v, expr in big.solved.items():
        lhs = param.get(v)
        if lhs is None:
            lhs = Poly.from_var(registry, v)
        if not (lhs - expr.subs(param)).is_zero():
            return False
    return True


def solve_system(eqs: Sequence[Poly], unknowns: Sequence[Var]) -> SolutionSet:
    """Solve a polynomial system exactly over Q.

    Every equation must be a polynomial purely in the listed unknowns (extract
    formal-variable coefficients and bind algebra parameters first).  Returns
    the full variety as a union of affine families; an empty union means the
    system is inconsistent.  Raises UnsupportedSystemError when the bounded
    elimination cannot triangularize the system.
    """
    unknowns = list(unknowns)
    eqs = [e for e in eqs]
    unknown_set = set(unknowns)
    for eq in eqs:
        stray = [v.name for v in eq.variables() if v not in unknown_set]
        if stray:
            raise UnsupportedSystemError(
                f"equation mentions non-unknown variables {stray}", eq
            )
    if all(e.is_zero() for e in eqs):
        fam = SolutionFamily(unknowns, {}, tuple(unknowns))
        return SolutionSet(unknowns, (fam,))
    if not unknowns:
        # Remaining equations are nonzero constants: inconsistent.
        return SolutionSet(unknowns, ())
    registry = eqs[0].registry
    raw = _solve(list(eqs), {}, _MAX_BRANCH_DEPTH)
    if raw and len(raw) > 512:
        raise UnsupportedSystemError(
            f"solution decomposition exploded into {len(raw)} components", eqs[0]
        )
    families = []
    for assign in raw:
        relevant = {v: p for v, p in assign.items() if v in unknown_set}
        families.append(_canonical_family(unknowns, relevant, registry))
    # Dedupe, absorb components contained in larger ones, sort.
    uniq = []
    for fam in families:
        if fam not in uniq:
            uniq.append(fam)
    kept = [
        fam for fam in uniq
        if not any(other is not fam and _family_contains(other, fam, registry)
                   and not _family_contains(fam, other, registry)
                   for other in uniq)
    ]
    kept.sort(key=lambda f: (f.dim, f.render()))
    return SolutionSet(unknowns, kept)
