"""Finite Lie conformal algebras presented by lambda-bracket tables.

An algebra is a free C[d]-module over finitely many generators together with
a table of lambda-brackets [g_x h], one per ordered generator pair, each a
finite sum of generators with coefficients polynomial in d (the translation
generator), x (the bracket variable lambda) and declared parameters.  The
table is usually given for pairs (i, j) with i <= j in declaration order and
completed by skew-symmetry, which in the commutative polynomial model is the
substitution x -> -x - d followed by negation.

Axioms checked here, with residuals reported per pair or triple:

* skew-symmetry      [g_x h] + ([h_x g] with x -> -x - d)  = 0
* Jacobi identity    [g_x [h_y k]] - [[g_x h]_{x+y} k] - [h_y [g_x k]] = 0

Sesquilinearity is structural: brackets of d-multiples are computed by the
substitution rules [p(d) g_x h] = p(-x) [g_x h] and
[g_x p(d) h] = p(d + x) [g_x h], so it cannot fail.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import BindingError, DefinitionError, ParseError
from .poly import PARAMETER, Poly, Registry, Var, parse_expression

_ALLOWED_OFFSETS = (Fraction(0), Fraction(1, 2), Fraction(1))
_ALLOWED_SHIFTS = (Fraction(0), Fraction(1, 2))


@dataclass(frozen=True)
class Generator:
    """A basis generator of the free C[d]-module.

    ``label_offset`` relates coefficient-algebra labels to internal indices
    (internal index = label + offset); ``filtration_shift`` relates labels to
    filtration degrees (degree = label - shift).  The standard relabelings use
    offset 1 for Virasoro-type generators, 1/2 for odd generators indexed by
    half-integers, and 0 otherwise.
    """

    name: str
    label_offset: Fraction = Fraction(0)
    filtration_shift: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "label_offset", Fraction(self.label_offset))
        object.__setattr__(self, "filtration_shift", Fraction(self.filtration_shift))
        if self.label_offset not in _ALLOWED_OFFSETS:
            raise DefinitionError(f"generator {self.name}: label offset must be 0, 1/2, or 1")
        if self.filtration_shift not in _ALLOWED_SHIFTS:
            raise DefinitionError(f"generator {self.name}: filtration shift must be 0 or 1/2")

    def __str__(self) -> str:
        return self.name


class LambdaElement:
    """A finite sum of generators with polynomial coefficients.

    Coefficients may involve d, x and parameters.  Elements whose
    coefficients are free of x play the role of plain module elements (inputs
    to brackets, values of j-th products); the same class covers both since
    the invariants differ only in which variables appear.
    """

    __slots__ = ("registry", "_coeffs")

    def __init__(self, registry: Registry, coeffs: Mapping[Generator, Poly] | None = None):
        self.registry = registry
        self._coeffs = {}
        for g, p in (coeffs or {}).items():
            if p.registry is not registry:
                raise DefinitionError("coefficient polynomial from a different registry")
            if not p.is_zero():
                self._coeffs[g] = p

    @classmethod
    def of(cls, registry: Registry, g: Generator) -> "LambdaElement":
        return cls(registry, {g: Poly.one(registry)})

    def coeff(self, g: Generator) -> Poly:
        return self._coeffs.get(g, Poly.zero(self.registry))

    def generators(self) -> list[Generator]:
        return sorted(self._coeffs, key=lambda g: g.name)

    def items(self) -> list[tuple[Generator, Poly]]:
        return [(g, self._coeffs[g]) for g in self.generators()]

    def is_zero(self) -> bool:
        return not self._coeffs

    def __add__(self, other: "LambdaElement") -> "LambdaElement":
        if not isinstance(other, LambdaElement):
            return NotImplemented
        out = dict(self._coeffs)
        for g, p in other._coeffs.items():
            out[g] = out.get(g, Poly.zero(self.registry)) + p
        return LambdaElement(self.registry, out)

    def __neg__(self) -> "LambdaElement":
        return LambdaElement(self.registry, {g: -p for g, p in self._coeffs.items()})

    def __sub__(self, other: "LambdaElement") -> "LambdaElement":
        if not isinstance(other, LambdaElement):
            return NotImplemented
        return self + (-other)

    def scale(self, factor: Poly | int | Fraction) -> "LambdaElement":
        return LambdaElement(self.registry, {g: p * factor for g, p in self._coeffs.items()})

    def map_coeffs(self, fn) -> "LambdaElement":
        return LambdaElement(self.registry, {g: fn(p) for g, p in self._coeffs.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, LambdaElement):
            return NotImplemented
        return self.registry is other.registry and self._coeffs == other._coeffs

    def __hash__(self) -> int:
        return hash((id(self.registry), frozenset(self._coeffs.items())))

    def render(self) -> str:
        if not self._coeffs:
            return "0"
        parts = []
        for g, p in self.items():
            if p.is_constant():
                c = p.constant_value()
                if c == 1:
                    parts.append(str(g))
                    continue
                if c == -1:
                    parts.append(f"-{g}")
                    continue
                parts.append(f"{c}*{g}")
                continue
            parts.append(f"({p}) {g}")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"LambdaElement({self.render()})"


@dataclass(frozen=True)
class ReportEntry:
    key: tuple[str, ...]
    residual: str
    ok: bool


class AxiomReport:
    """Outcome of an axiom check: one residual per pair or triple."""

    def __init__(self, kind: str, entries: Sequence[ReportEntry]):
        self.kind = kind
        self.entries = tuple(entries)

    @property
    def passed(self) -> bool:
        return all(e.ok for e in self.entries)

    def failures(self) -> list[ReportEntry]:
        return [e for e in self.entries if not e.ok]

    def render(self, *, only_failures: bool = False) -> str:
        lines = [f"{self.kind}: {'pass' if self.passed else 'FAIL'} "
                 f"({len(self.entries)} checks, {len(self.failures())} failing)"]
        for e in self.entries:
            if only_failures and e.ok:
                continue
            status = "ok " if e.ok else "FAIL"
            lines.append(f"  {status} ({', '.join(e.key)}): residual {e.residual}")
        return "\n".join(lines)

    def __repr__(self) -> str:
        return f"AxiomReport({self.kind}, passed={self.passed})"


class ConformalAlgebra:
    """A finite Lie conformal algebra given by its lambda-bracket table."""

    def __init__(self, name: str, registry: Registry, generators: Sequence[Generator],
                 table: Mapping[tuple[str, str], LambdaElement], params: Sequence[Var] = (),
                 *, complete_skew: bool = True, virasoro: str | None = None,
                 closed_ann_form=None, param_values: Mapping[str, Fraction] | None = None):
        self.name = name
        self.registry = registry
        self.generators = tuple(generators)
        self.params = tuple(params)
        self.virasoro_name = virasoro
        self.closed_ann_form = closed_ann_form
        #: Rational values substituted for the declared parameters, when bound.
        self.param_values = dict(param_values or {})
        if len({g.name for g in self.generators}) != len(self.generators):
            raise DefinitionError("duplicate generator names")
        for v in self.params:
            if v.kind != PARAMETER:
                raise DefinitionError(f"{v.name} is not a parameter variable")
        self._by_name = {g.name: g for g in self.generators}
        self._order = {g.name: i for i, g in enumerate(self.generators)}
        self._table = self._build_table(dict(table), complete_skew)
        if self.virasoro_name is None:
            self.virasoro_name = self._detect_virasoro()

    # ---- construction helpers -----------------------------------------

    def _validate_entry(self, pair, elem: LambdaElement) -> None:
        allowed = {self.registry.d.index, self.registry.x.index}
        allowed.update(v.index for v in self.params)
        for g, p in elem.items():
            if g.name not in self._by_name or self._by_name[g.name] != g:
                raise DefinitionError(f"bracket {pair} uses foreign generator {g.name}")
            for v in p.variables():
                if v.index not in allowed:
                    raise DefinitionError(
                        f"bracket {pair} coefficient uses {v.name}; only d, x and "
                        f"declared parameters are allowed")

    def _skew_image(self, elem: LambdaElement) -> LambdaElement:
        reg = self.registry
        minus = -Poly.from_var(reg, reg.x) - Poly.from_var(reg, reg.d)
        return (-(elem.map_coeffs(lambda p: p.substitute(reg.x, minus))))

    def _build_table(self, given, complete_skew):
        names = [g.name for g in self.generators]
        table = {}
        for (a, b), elem in given.items():
            if a not in self._by_name or b not in self._by_name:
                raise DefinitionError(f"bracket ({a},{b}) names an undeclared generator")
            if not isinstance(elem, LambdaElement):
                raise DefinitionError(f"bracket ({a},{b}) is not a LambdaElement")
            self._validate_entry((a, b), elem)
            if complete_skew and self._order[a] > self._order[b]:
                raise DefinitionError(
                    f"bracket ({a},{b}): give pairs in declaration order, the rest "
                    f"is completed by skew-symmetry")
            if (a, b) in table:
                raise DefinitionError(f"duplicate bracket entry ({a},{b})")
            table[(a, b)] = elem
        if complete_skew:
            for i, a in enumerate(names):
                for j in range(i, len(names)):
                    b = names[j]
                    if (a, b) not in table:
                        raise DefinitionError(f"missing bracket entry ({a},{b})")
            for i, a in enumerate(names):
                for b in names[i + 1:]:
                    table[(b, a)] = self._skew_image(table[(a, b)])
        else:
            for a in names:
                for b in names:
                    if (a, b) not in table:
                        raise DefinitionError(f"missing bracket entry ({a},{b})")
        return table

    def _detect_virasoro(self) -> str | None:
        reg = self.registry
        for g in self.generators:
            want = LambdaElement(reg, {
                g: Poly.from_var(reg, reg.d) + Poly.from_var(reg, reg.x) * 2})
            if self._table[(g.name, g.name)] == want:
                return g.name
        return None

    # ---- basic access ----------------------------------------------------

    def gen(self, name: str) -> Generator:
        try:
            return self._by_name[name]
        except KeyError:
            raise DefinitionError(f"no generator named {name!r} in {self.name}") from None

    @property
    def virasoro_generator(self) -> Generator | None:
        return self._by_name.get(self.virasoro_name) if self.virasoro_name else None

    def entry(self, a: "Generator | str", b: "Generator | str") -> LambdaElement:
        a = a.name if isinstance(a, Generator) else a
        b = b.name if isinstance(b, Generator) else b
        if (a, b) not in self._table:
            raise DefinitionError(f"no bracket entry ({a},{b})")
        return self._table[(a, b)]

    def full_table(self) -> dict[tuple[str, str], LambdaElement]:
        return dict(self._table)

    def ordered_pairs(self) -> list[tuple[str, str]]:
        names = [g.name for g in self.generators]
        return [(a, b) for a in names for b in names]

    def upper_pairs(self) -> list[tuple[str, str]]:
        names = [g.name for g in self.generators]
        return [(names[i], names[j]) for i in range(len(names)) for j in range(i, len(names))]

    def with_entry(self, a: str, b: str, elem: LambdaElement) -> "ConformalAlgebra":
        """Copy of the algebra with one table entry replaced verbatim (no skew
        completion), for perturbation experiments."""
        table = self.full_table()
        table[(a, b)] = elem
        return ConformalAlgebra(self.name, self.registry, self.generators, table,
                                self.params, complete_skew=False,
                                virasoro=self.virasoro_name,
                                closed_ann_form=self.closed_ann_form,
                                param_values=self.param_values)

    def table_equal(self, other: "ConformalAlgebra") -> bool:
        if [g.name for g in self.generators] != [g.name for g in other.generators]:
            return False
        return all(self._table[p] == other._table[p] for p in self.ordered_pairs())

    # ---- parameter binding -------------------------------------------------

    def specialize(self, bindings: Mapping[str, Fraction | int] | None) -> "ConformalAlgebra":
        """Bind declared parameters to rational values.

        Every declared parameter must be bound exactly once; binding an
        undeclared name is an error.
        """
        bindings = dict(bindings or {})
        declared = {v.name for v in self.params}
        unknown = sorted(set(bindings) - declared)
        if unknown:
            raise BindingError(f"{self.name} does not declare parameter(s) {unknown}")
        missing = sorted(declared - set(bindings))
        if missing:
            raise BindingError(f"{self.name} needs binding(s) for {missing}")
        if not self.params:
            return self
        sub = {v: Fraction(bindings[v.name]) for v in self.params}
        table = {pair: elem.map_coeffs(lambda p: p.subs(sub))
                 for pair, elem in self._table.items()}
        values = dict(self.param_values)
        values.update({v.name: Fraction(bindings[v.name]) for v in self.params})
        return ConformalAlgebra(self.name, self.registry, self.generators, table, (),
                                complete_skew=False, virasoro=self.virasoro_name,
                                closed_ann_form=self.closed_ann_form, param_values=values)

    # ---- bracket machinery ---------------------------------------------------

    def _as_element(self, xelem) -> LambdaElement:
        if isinstance(xelem, Generator):
            if xelem.name not in self._by_name or self._by_name[xelem.name] != xelem:
                raise DefinitionError(f"generator {xelem.name} does not belong to {self.name}")
            return LambdaElement.of(self.registry, xelem)
        if isinstance(xelem, LambdaElement):
            for g, p in xelem.items():
                if g.name not in self._by_name or self._by_name[g.name] != g:
                    raise DefinitionError(f"element uses foreign generator {g.name}")
            return xelem
        raise DefinitionError(f"cannot bracket a {type(xelem).__name__}")

    def bracket(self, xelem, yelem) -> LambdaElement:
        """Lambda-bracket of two elements with d-polynomial coefficients.

        Sesquilinear extension of the table: coefficients of the left entry
        are evaluated at -x, coefficients of the right entry at d + x.
        """
        reg = self.registry
        xelem = self._as_element(xelem)
        yelem = self._as_element(yelem)
        d, lam = reg.d, reg.x
        dx = Poly.from_var(reg, d) + Poly.from_var(reg, lam)
        minus_lam = -Poly.from_var(reg, lam)
        out = LambdaElement(reg)
        for g, p in xelem.items():
            if p.degree(lam) > 0:
                raise DefinitionError("bracket inputs must have x-free coefficients")
            pl = p.substitute(d, minus_lam)
            for h, q in yelem.items():
                if q.degree(lam) > 0:
                    raise DefinitionError("bracket inputs must have x-free coefficients")
                qr = q.substitute(d, dx)
                out = out + self._table[(g.name, h.name)].map_coeffs(lambda r: r * pl * qr)
        return out

    def jth_product(self, xelem, yelem, j: int) -> LambdaElement:
        """The j-th product, j! times the x^j coefficient of the bracket."""
        if j < 0:
            raise ValueError("j-th products need j >= 0")
        br = self.bracket(xelem, yelem)
        lam = self.registry.x
        fact = math.factorial(j)
        return br.map_coeffs(lambda p: p.coeff_of(lam, j) * fact)

    def locality_order(self, xelem, yelem) -> int:
        """Least N with all j-th products for j >= N zero; max x-degree + 1."""
        br = self.bracket(xelem, yelem)
        if br.is_zero():
            return 0
        return max(p.degree(self.registry.x) for _, p in br.items()) + 1

    # ---- axiom checks -----------------------------------------------------------

    def check_skew(self) -> AxiomReport:
        """Residual [g_x h] + ([h_x g] with x -> -x - d) per ordered pair."""
        reg = self.registry
        minus = -Poly.from_var(reg, reg.x) - Poly.from_var(reg, reg.d)
        entries = []
        for a, b in self.ordered_pairs():
            residual = self._table[(a, b)] + self._table[(b, a)].map_coeffs(
                lambda p: p.substitute(reg.x, minus))
            entries.append(ReportEntry((a, b), residual.render(), residual.is_zero()))
        return AxiomReport("skew-symmetry", entries)

    def _jacobi_residual(self, a: str, b: str, c: str) -> LambdaElement:
        reg = self.registry
        d, lam, mu = reg.d, reg.x, reg.y
        dp, lp, mp = (Poly.from_var(reg, v) for v in (d, lam, mu))
        out = LambdaElement(reg)
        # [a_x [b_y c]]: inner coefficients move y into place, then shift d by x.
        for k, q in self._table[(b, c)].items():
            qs = q.substitute(lam, mp).substitute(d, dp + lp)
            out = out + self._table[(a, k.name)].map_coeffs(lambda r: r * qs)
        # -[[a_x b]_{x+y} c]: left coefficients are evaluated at d -> -(x+y),
        # the outer bracket variable becomes x + y.
        for k, p in self._table[(a, b)].items():
            ps = p.substitute(d, -(lp + mp))
            inner = self._table[(k.name, c)].map_coeffs(
                lambda r: r.substitute(lam, lp + mp))
            out = out - inner.map_coeffs(lambda r: r * ps)
        # -[b_y [a_x c]]: inner coefficients keep x, shift d by y, outer uses y.
        for k, r0 in self._table[(a, c)].items():
            rs = r0.substitute(d, dp + mp)
            inner = self._table[(b, k.name)].map_coeffs(lambda q2: q2.substitute(lam, mp))
            out = out - inner.map_coeffs(lambda q2: q2 * rs)
        return out

    def check_jacobi(self) -> AxiomReport:
        """Residual [a_x [b_y c]] - [[a_x b]_{x+y} c] - [b_y [a_x c]] per triple."""
        names = [g.name for g in self.generators]
        entries = []
        for a in names:
            for b in names:
                for c in names:
                    residual = self._jacobi_residual(a, b, c)
                    entries.append(ReportEntry((a, b, c), residual.render(), residual.is_zero()))
        return AxiomReport("jacobi", entries)

    def __repr__(self) -> str:
        return f"ConformalAlgebra({self.name}, generators={[g.name for g in self.generators]})"


# ---- textual algebra definitions ----------------------------------------------

_GEN_OPT_RE = None


def parse_algebra(text: str, *, source: str = "<input>") -> ConformalAlgebra:
    """Parse the plain-text algebra format.

    Line oriented::

        # comment
        algebra W params a b
        gen L offset=1 shift=0
        gen W
        [L,L] = (d + 2*x) L
        [L,W] = (d + a*x + b) W
        [W,W] = 0

    The header declares the name and parameters; ``gen`` lines declare
    generators in order (offset/shift default to 0); bracket lines cover the
    pairs (i, j) with i <= j in declaration order, and the table is completed
    by skew-symmetry.  Coefficients may use d, x, declared parameters and
    rational literals; each additive term must be linear in the generators.
    """
    registry = Registry()
    name = None
    params: list[Var] = []
    generators: list[Generator] = []
    table: dict[tuple[str, str], LambdaElement] = {}
    gen_names: set[str] = set()

    for lineno, rawline in enumerate(text.splitlines(), start=1):
        line = rawline.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("algebra"):
            if name is not None:
                raise ParseError("duplicate algebra header", line=lineno)
            parts = line.split()
            if len(parts) < 2:
                raise ParseError("algebra header needs a name", line=lineno)
            name = parts[1]
            rest = parts[2:]
            if rest:
                if rest[0] != "params":
                    raise ParseError("expected 'params' after the algebra name", line=lineno)
                for pname in rest[1:]:
                    if pname in ("d", "x", "y", "z"):
                        raise ParseError(f"{pname} is a reserved formal variable", line=lineno)
                    params.append(registry.param(pname))
            continue
        if name is None:
            raise ParseError("the file must start with an 'algebra' header", line=lineno)
        if line.startswith("gen "):
            parts = line.split()
            gname = parts[1]
            if registry.has_name(gname):
                raise ParseError(f"generator name {gname!r} clashes with a variable",
                                 line=lineno)
            if gname in gen_names:
                raise ParseError(f"duplicate generator {gname!r}", line=lineno)
            offset = Fraction(0)
            shift = Fraction(0)
            for opt in parts[2:]:
                if "=" not in opt:
                    raise ParseError(f"malformed generator option {opt!r}", line=lineno)
                key, _, value = opt.partition("=")
                try:
                    fvalue = Fraction(value)
                except (ValueError, ZeroDivisionError):
                    raise ParseError(f"malformed rational {value!r}", line=lineno) from None
                if key == "offset":
                    offset = fvalue
                elif key == "shift":
                    shift = fvalue
                else:
                    raise ParseError(f"unknown generator option {key!r}", line=lineno)
            try:
                generators.append(Generator(gname, offset, shift))
            except DefinitionError as exc:
                raise ParseError(str(exc), line=lineno) from None
            gen_names.add(gname)
            continue
        if line.startswith("["):
            head, eq, rhs = line.partition("=")
            if not eq:
                raise ParseError("bracket line needs '='", line=lineno)
            head = head.strip()
            if not (head.startswith("[") and head.endswith("]")):
                raise ParseError("bracket line must start with [A,B]", line=lineno)
            inner = head[1:-1]
            if inner.count(",") != 1:
                raise ParseError("bracket head must name two generators", line=lineno)
            a, b = (s.strip() for s in inner.split(","))
            for gname in (a, b):
                if gname not in gen_names:
                    raise ParseError(f"undeclared generator {gname!r}", line=lineno)
            elem = _parse_bracket_rhs(rhs.strip(), registry,
                                      {g.name: g for g in generators}, lineno)
            if (a, b) in table:
                raise ParseError(f"duplicate bracket [{a},{b}]", line=lineno)
            table[(a, b)] = elem
            continue
        raise ParseError(f"unrecognized line {line!r}", line=lineno)

    if name is None:
        raise ParseError("empty algebra definition", line=1)
    try:
        return ConformalAlgebra(name, registry, generators, table, params)
    except DefinitionError as exc:
        raise ParseError(str(exc), line=len(text.splitlines()) or 1) from None


class _GenLinear:
    """Expression value for bracket right-hand sides: a polynomial part plus
    a generator-linear part; multiplication rejects generator products."""

    __slots__ = ("registry", "scalar", "gens")

    def __init__(self, registry, scalar: Poly, gens: dict[Generator, Poly]):
        self.registry = registry
        self.scalar = scalar
        self.gens = {g: p for g, p in gens.items() if not p.is_zero()}

    @classmethod
    def of_poly(cls, registry, p: Poly):
        return cls(registry, p, {})

    @classmethod
    def of_gen(cls, registry, g: Generator):
        return cls(registry, Poly.zero(registry), {g: Poly.one(registry)})

    def _coerce(self, other):
        if isinstance(other, _GenLinear):
            return other
        if isinstance(other, (int, Fraction)):
            return _GenLinear.of_poly(self.registry, Poly.const(self.registry, other))
        if isinstance(other, Poly):
            return _GenLinear.of_poly(self.registry, other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        gens = dict(self.gens)
        for g, p in o.gens.items():
            gens[g] = gens.get(g, Poly.zero(self.registry)) + p
        return _GenLinear(self.registry, self.scalar + o.scalar, gens)

    __radd__ = __add__

    def __neg__(self):
        return _GenLinear(self.registry, -self.scalar,
                          {g: -p for g, p in self.gens.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.gens and o.gens:
            raise ParseError("bracket values must be linear in the generators")
        if o.gens:
            return _GenLinear(self.registry, self.scalar * o.scalar,
                              {g: self.scalar * p for g, p in o.gens.items()})
        return _GenLinear(self.registry, self.scalar * o.scalar,
                          {g: p * o.scalar for g, p in self.gens.items()})

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if self.gens:
            if n == 1:
                return self
            raise ParseError("generators cannot be raised to powers")
        return _GenLinear.of_poly(self.registry, self.scalar ** n)


def _parse_bracket_rhs(textval: str, registry: Registry,
                       gens: Mapping[str, Generator], lineno: int) -> LambdaElement:
    def atom(name: str, col: int):
        if name in gens:
            return _GenLinear.of_gen(registry, gens[name])
        if name in ("y", "z"):
            raise ParseError("bracket coefficients may only use d, x and parameters",
                             line=lineno, column=col)
        if registry.has_name(name):
            return _GenLinear.of_poly(registry, Poly.from_var(registry, registry.var(name)))
        raise ParseError(f"unknown name {name!r} (declare parameters in the header)",
                         line=lineno, column=col)

    try:
        value = parse_expression(textval, atom, lineno)
    except ParseError:
        raise
    if isinstance(value, Fraction):
        if value != 0:
            raise ParseError("bracket value must be a generator combination or 0",
                             line=lineno)
        return LambdaElement(registry)
    if isinstance(value, _GenLinear):
        if not value.scalar.is_zero():
            raise ParseError("bracket value has a stray scalar term", line=lineno)
        return LambdaElement(registry, value.gens)
    raise ParseError("bracket value must be a generator combination or 0", line=lineno)
