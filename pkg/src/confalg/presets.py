"""Built-in lambda-bracket tables and their standard rank-one modules.

Available presets:

* ``vir``   Virasoro: one generator L with [L_x L] = (d + 2x) L.
* ``w``     the two-parameter family W(a, b): L plus a current W with
            [L_x W] = (d + a x + b) W and [W_x W] = 0.
* ``wb``    the one-parameter slice W(1 - b, 0), declared with the single
            parameter b.
* ``tsv``   the deformed Schroedinger-Virasoro family TSV(a, b) with an odd
            generator Y (half-integer labels) and a central-type M.
* ``tsvc``  the one-parameter twisted family TSV(c).

Each preset carries a closed formula for its coefficient-algebra bracket,
used to cross-check the general binomial expansion, and enough metadata
(label offsets, filtration shifts) for truncations.  ``rank1_module`` builds
the standard modules: the Virasoro generator acts by d + alpha*x + beta and
at most one other generator can act by a constant gamma, precisely when the
module identity allows it.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping

from .errors import BindingError, DefinitionError, ParseError, UnsupportedError
from .poly import Poly, Registry
from .algebra import ConformalAlgebra, Generator, LambdaElement
from .annihilation import AnnBasis, AnnElement
from .modules import Rank1Action, check_module

PRESET_NAMES = ("vir", "w", "wb", "tsv", "tsvc")

PRESET_PARAMS: dict[str, tuple[str, ...]] = {
    "vir": (),
    "w": ("a", "b"),
    "wb": ("b",),
    "tsv": ("a", "b"),
    "tsvc": ("c",),
}


def _closed_form(rules):
    """Wrap per-pair label formulas into a checker-facing callable.

    ``rules`` maps generator-name pairs to functions (alg, m, n) returning
    {(target name, target label): coefficient}; missing pairs fall back to
    the mirrored rule with a sign flip.  Structure parameter bindings of the
    algebra are substituted into the coefficients.
    """
    def closed(alg: ConformalAlgebra, g: Generator, m: Fraction,
               h: Generator, n: Fraction) -> AnnElement:
        reg = alg.registry
        key = (g.name, h.name)
        if key in rules:
            raw = rules[key](alg, m, n)
        else:
            raw = {t: -c for t, c in rules[(h.name, g.name)](alg, n, m).items()}
        binding = {reg.var(nm): val for nm, val in alg.param_values.items()}
        terms = {}
        for (kname, label), coeff in raw.items():
            p = coeff if isinstance(coeff, Poly) else Poly.const(reg, coeff)
            p = p.subs(binding)
            if p.is_zero():
                continue
            terms[AnnBasis(alg.gen(kname), label)] = p
        return AnnElement(reg, terms)
    return closed


def _pvar(alg: ConformalAlgebra, name: str) -> Poly:
    return Poly.from_var(alg.registry, alg.registry.var(name))


def _witt(alg, m, n):
    return {("L", m + n): Fraction(m - n)}


def _build_vir() -> ConformalAlgebra:
    reg = Registry()
    d, x = (Poly.from_var(reg, v) for v in (reg.d, reg.x))
    L = Generator("L", Fraction(1), Fraction(0))
    table = {("L", "L"): LambdaElement(reg, {L: d + 2 * x})}
    closed = _closed_form({("L", "L"): _witt})
    return ConformalAlgebra("vir", reg, [L], table, (), closed_ann_form=closed)


def _build_w() -> ConformalAlgebra:
    reg = Registry()
    a, b = reg.param("a"), reg.param("b")
    d, x = (Poly.from_var(reg, v) for v in (reg.d, reg.x))
    pa, pb = (Poly.from_var(reg, v) for v in (a, b))
    L = Generator("L", Fraction(1), Fraction(0))
    W = Generator("W", Fraction(0), Fraction(0))
    table = {
        ("L", "L"): LambdaElement(reg, {L: d + 2 * x}),
        ("L", "W"): LambdaElement(reg, {W: d + pa * x + pb}),
        ("W", "W"): LambdaElement(reg),
    }

    def lw(alg, m, n):
        return {("W", m + n): (_pvar(alg, "a") - 1) * (m + 1) - n,
                ("W", m + n + 1): _pvar(alg, "b")}

    closed = _closed_form({
        ("L", "L"): _witt,
        ("L", "W"): lw,
        ("W", "W"): lambda alg, m, n: {},
    })
    return ConformalAlgebra("w", reg, [L, W], table, (a, b), closed_ann_form=closed)


def _build_wb() -> ConformalAlgebra:
    reg = Registry()
    b = reg.param("b")
    d, x = (Poly.from_var(reg, v) for v in (reg.d, reg.x))
    pb = Poly.from_var(reg, b)
    L = Generator("L", Fraction(1), Fraction(0))
    W = Generator("W", Fraction(0), Fraction(0))
    table = {
        ("L", "L"): LambdaElement(reg, {L: d + 2 * x}),
        ("L", "W"): LambdaElement(reg, {W: d + (1 - pb) * x}),
        ("W", "W"): LambdaElement(reg),
    }

    def lw(alg, m, n):
        return {("W", m + n): -_pvar(alg, "b") * (m + 1) - n}

    closed = _closed_form({
        ("L", "L"): _witt,
        ("L", "W"): lw,
        ("W", "W"): lambda alg, m, n: {},
    })
    return ConformalAlgebra("wb", reg, [L, W], table, (b,), closed_ann_form=closed)


def _tsv_generators():
    return (Generator("L", Fraction(1), Fraction(0)),
            Generator("Y", Fraction(1, 2), Fraction(1, 2)),
            Generator("M", Fraction(0), Fraction(0)))


def _build_tsv() -> ConformalAlgebra:
    reg = Registry()
    a, b = reg.param("a"), reg.param("b")
    d, x = (Poly.from_var(reg, v) for v in (reg.d, reg.x))
    pa, pb = (Poly.from_var(reg, v) for v in (a, b))
    L, Y, M = _tsv_generators()
    table = {
        ("L", "L"): LambdaElement(reg, {L: d + 2 * x}),
        ("L", "Y"): LambdaElement(reg, {Y: d + pa * x + pb}),
        ("L", "M"): LambdaElement(reg, {M: d + 2 * (pa - 1) * x + 2 * pb}),
        ("Y", "Y"): LambdaElement(reg, {M: d + 2 * x}),
        ("Y", "M"): LambdaElement(reg),
        ("M", "M"): LambdaElement(reg),
    }

    def ly(alg, m, p):
        return {("Y", m + p): (_pvar(alg, "a") - 1) * (m + 1) - (p + Fraction(1, 2)),
                ("Y", m + p + 1): _pvar(alg, "b")}

    def lm(alg, m, n):
        return {("M", m + n): (2 * _pvar(alg, "a") - 3) * (m + 1) - n,
                ("M", m + n + 1): 2 * _pvar(alg, "b")}

    def yy(alg, p, q):
        return {("M", p + q): Fraction(p - q)}

    closed = _closed_form({
        ("L", "L"): _witt,
        ("L", "Y"): ly,
        ("L", "M"): lm,
        ("Y", "Y"): yy,
        ("Y", "M"): lambda alg, p, n: {},
        ("M", "M"): lambda alg, m, n: {},
    })
    return ConformalAlgebra("tsv", reg, [L, Y, M], table, (a, b), closed_ann_form=closed)


def _build_tsvc() -> ConformalAlgebra:
    reg = Registry()
    c = reg.param("c")
    d, x = (Poly.from_var(reg, v) for v in (reg.d, reg.x))
    pc = Poly.from_var(reg, c)
    L, Y, M = _tsv_generators()
    table = {
        ("L", "L"): LambdaElement(reg, {L: d + 2 * x}),
        ("L", "Y"): LambdaElement(reg, {Y: d + Fraction(3, 2) * x + pc}),
        ("L", "M"): LambdaElement(reg, {M: d + 2 * pc}),
        ("Y", "Y"): LambdaElement(reg, {M: (d + 2 * x) * (-d - 2 * pc)}),
        ("Y", "M"): LambdaElement(reg),
        ("M", "M"): LambdaElement(reg),
    }

    def ly(alg, m, p):
        return {("Y", m + p): Fraction(m, 2) - p,
                ("Y", m + p + 1): _pvar(alg, "c")}

    def lm(alg, m, n):
        return {("M", m + n): Fraction(-(m + 1) - n),
                ("M", m + n + 1): 2 * _pvar(alg, "c")}

    def yy(alg, p, q):
        return {("M", p + q - 1): Fraction((p - q) * (p + q)),
                ("M", p + q): 2 * _pvar(alg, "c") * (q - p)}

    closed = _closed_form({
        ("L", "L"): _witt,
        ("L", "Y"): ly,
        ("L", "M"): lm,
        ("Y", "Y"): yy,
        ("Y", "M"): lambda alg, p, n: {},
        ("M", "M"): lambda alg, m, n: {},
    })
    return ConformalAlgebra("tsvc", reg, [L, Y, M], table, (c,), closed_ann_form=closed)


_BUILDERS = {
    "vir": _build_vir,
    "w": _build_w,
    "wb": _build_wb,
    "tsv": _build_tsv,
    "tsvc": _build_tsvc,
}


def instantiate(name: str, bindings: Mapping[str, Fraction | int] | None = None
                ) -> ConformalAlgebra:
    """A fresh copy of a preset, optionally with parameters bound."""
    if name not in _BUILDERS:
        raise DefinitionError(f"unknown preset {name!r}; choose from {PRESET_NAMES}")
    alg = _BUILDERS[name]()
    if bindings is not None:
        alg = alg.specialize(bindings)
    return alg


# ---- standard rank-one modules -------------------------------------------------


def zero_module(alg: ConformalAlgebra) -> Rank1Action:
    reg = alg.registry
    return Rank1Action(alg, {g.name: Poly.zero(reg) for g in alg.generators})


def gamma_carrier(alg: ConformalAlgebra) -> Generator | None:
    """The generator (if any) that may act by a free constant alongside the
    standard Virasoro action, decided by the module identity itself."""
    virasoro = alg.virasoro_generator
    if virasoro is None:
        raise UnsupportedError(f"{alg.name} has no generator with a Virasoro bracket")
    reg = alg.registry
    d, x = (Poly.from_var(reg, v) for v in (reg.d, reg.x))
    alpha = Poly.from_var(reg, reg.param("alpha"))
    beta = Poly.from_var(reg, reg.param("beta"))
    gamma = Poly.from_var(reg, reg.param("gamma"))
    carriers = []
    for g in alg.generators:
        if g.name == virasoro.name:
            continue
        actions = {h.name: Poly.zero(reg) for h in alg.generators}
        actions[virasoro.name] = d + alpha * x + beta
        actions[g.name] = gamma
        if check_module(alg, actions).passed:
            carriers.append(g)
    if len(carriers) > 1:
        raise UnsupportedError(f"{alg.name} admits several constant carriers; "
                               f"name the intended module explicitly")
    return carriers[0] if carriers else None


def rank1_module(alg: ConformalAlgebra, alpha, beta, gamma=None) -> Rank1Action:
    """The standard module: the Virasoro generator acts by d + alpha*x +
    beta, the constant carrier (when one exists) acts by gamma, everything
    else by zero.

    alpha, beta, gamma may be rationals or the strings "alpha", "beta",
    "gamma" for formal values.  Passing gamma to an algebra whose parameters
    admit no constant carrier is an error.
    """
    if alg.params:
        raise BindingError(f"bind the structure parameters of {alg.name} first")
    virasoro = alg.virasoro_generator
    if virasoro is None:
        raise UnsupportedError(f"{alg.name} has no generator with a Virasoro bracket")
    reg = alg.registry

    def value(token, name):
        if isinstance(token, str):
            if token != name:
                raise DefinitionError(f"formal value for {name} must be {name!r}")
            return Poly.from_var(reg, reg.param(name))
        return Poly.const(reg, Fraction(token))

    d, x = (Poly.from_var(reg, v) for v in (reg.d, reg.x))
    actions = {g.name: Poly.zero(reg) for g in alg.generators}
    actions[virasoro.name] = d + value(alpha, "alpha") * x + value(beta, "beta")
    if gamma is not None:
        carrier = gamma_carrier(alg)
        if carrier is None:
            raise BindingError(
                f"{alg.name} with these parameters admits no constant carrier; "
                f"omit gamma")
        actions[carrier.name] = value(gamma, "gamma")
    return Rank1Action(alg, actions)


def named_module(alg: ConformalAlgebra, spec: str) -> Rank1Action:
    """Parse a module name: ``zero``/``trivial``, ``M_<alpha>_<beta>`` or
    ``M_<alpha>_<beta>_<gamma>`` with rational or formal components, for
    example ``M_0_2``, ``M_1/2_-1_3`` or ``M_alpha_beta_gamma``."""
    text = spec.strip()
    if text in ("zero", "trivial"):
        return zero_module(alg)
    parts = text.split("_")
    if parts[0] != "M" or len(parts) not in (3, 4):
        raise ParseError(
            f"cannot read module name {spec!r}; use zero, M_<alpha>_<beta> or "
            f"M_<alpha>_<beta>_<gamma>")

    def token(raw, name):
        if raw == name:
            return raw
        try:
            return Fraction(raw)
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"bad value {raw!r} for {name} in {spec!r}") from None

    alpha = token(parts[1], "alpha")
    beta = token(parts[2], "beta")
    gamma = token(parts[3], "gamma") if len(parts) == 4 else None
    return rank1_module(alg, alpha, beta, gamma)
