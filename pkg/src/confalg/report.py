"""Dossier assembly for an algebra, with text, JSON and LaTeX renderers.

A dossier gathers, for one (bound or parameter-free) algebra: the bracket
table, axiom verdicts, locality orders, a closed-form check and sample
brackets of the coefficient algebra, a truncation with its solvability
analysis, the rank-one module families, and irreducibility samples.  All
content is deterministic, so renderings are stable byte for byte.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .algebra import ConformalAlgebra
from .errors import DefinitionError
from .annihilation import (AnnBasis, ann_bracket, compare_closed_form, labels_through,
                           truncated_quotient)
from .modules import irreducibility_verdict, rank1_classify
from .poly import Poly
from .presets import gamma_carrier, named_module

_LATEX_NAMES = {
    "d": r"\partial",
    "x": r"\lambda",
    "y": r"\mu",
    "z": r"\nu",
    "alpha": r"\alpha",
    "beta": r"\beta",
    "gamma": r"\gamma",
}


def _latex_var(name: str) -> str:
    if name in _LATEX_NAMES:
        return _LATEX_NAMES[name]
    if name.startswith("gamma_"):
        return r"\gamma_{" + name[len("gamma_"):] + "}"
    if len(name) == 1:
        return name
    return r"\mathit{" + name + "}"


def _latex_coeff(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    sign = "-" if value < 0 else ""
    return f"{sign}\\tfrac{{{abs(value.numerator)}}}{{{value.denominator}}}"


def poly_to_latex(p: Poly) -> str:
    """Canonical-order LaTeX for a polynomial (d becomes \\partial, x, y, z
    become lambda, mu, nu)."""
    if p.is_zero():
        return "0"
    reg = p.registry
    parts = []
    for mono, coeff in p.terms():
        factors = []
        for index, exp in mono:
            base = _latex_var(reg.name_of(index))
            factors.append(base if exp == 1 else base + "^{" + str(exp) + "}")
        body = " ".join(factors)
        if not factors:
            piece = _latex_coeff(coeff)
        elif coeff == 1:
            piece = body
        elif coeff == -1:
            piece = "-" + body
        else:
            piece = _latex_coeff(coeff) + " " + body
        if not parts:
            parts.append(piece)
        elif piece.startswith("-"):
            parts.append("- " + piece[1:])
        else:
            parts.append("+ " + piece)
    return " ".join(parts)


def _latex_element(elem) -> str:
    if elem.is_zero():
        return "0"
    parts = []
    for g, p in elem.items():
        if p.is_constant():
            c = p.constant_value()
            if c == 1:
                parts.append(str(g))
                continue
            if c == -1:
                parts.append("-" + str(g))
                continue
            parts.append(_latex_coeff(c) + " " + str(g))
            continue
        parts.append(r"\left(" + poly_to_latex(p) + r"\right) " + str(g))
    return " + ".join(parts)


def ann_symbol_to_latex(gen_name: str, label) -> str:
    return f"{gen_name}_{{{label}}}"


def ann_to_latex(elem) -> str:
    """LaTeX for a coefficient-algebra element, labels in braced subscripts."""
    if not elem.items():
        return "0"
    parts = []
    for s, p in elem.items():
        sym = ann_symbol_to_latex(s.gen.name, s.label)
        if p.is_constant():
            c = p.constant_value()
            if c == 1:
                piece = sym
            elif c == -1:
                piece = "-" + sym
            else:
                piece = _latex_coeff(c) + " " + sym
        else:
            piece = r"\left(" + poly_to_latex(p) + r"\right) " + sym
        if not parts:
            parts.append(piece)
        elif piece.startswith("-"):
            parts.append("- " + piece[1:])
        else:
            parts.append("+ " + piece)
    return " ".join(parts)


def _fmt_frac(value: Fraction) -> str:
    return str(value)


_REPORT_LABEL_BOUND = 6
_REPORT_DEPTH = 4
_REPORT_DEGREE = 2
_REPORT_SCAN = 3


def family_verdict(fam) -> str:
    """One-line irreducibility statement for a classified family."""
    if fam.is_zero():
        return "trivial (all actions zero)"
    extra = sorted(n for n in fam.free_params() if n.startswith("gamma"))
    if extra:
        return "irreducible iff alpha != 0 or " + " or ".join(f"{n} != 0" for n in extra)
    return "irreducible iff alpha != 0"


def build_report(alg: ConformalAlgebra, depth: int = _REPORT_DEPTH) -> dict:
    """Assemble the dossier as plain nested data (strings, lists, dicts)."""
    skew = alg.check_skew()
    jacobi = alg.check_jacobi()
    data: dict = {
        "algebra": alg.name,
        "params": {k: _fmt_frac(v) for k, v in sorted(alg.param_values.items())},
        "free_params": sorted(v.name for v in alg.params),
        "generators": [{"name": g.name, "offset": _fmt_frac(g.label_offset),
                        "shift": _fmt_frac(g.filtration_shift)} for g in alg.generators],
        "table": [{"pair": [a, b], "value": alg.entry(a, b).render()}
                  for a, b in alg.upper_pairs()],
        "axioms": {
            "skew": skew.passed,
            "jacobi": jacobi.passed,
            "skew_checks": len(skew.entries),
            "jacobi_checks": len(jacobi.entries),
            "failures": [list(e.key) for e in skew.failures() + jacobi.failures()],
        },
        "locality": [{"pair": [a, b], "order": alg.locality_order(alg.gen(a), alg.gen(b))}
                     for a, b in alg.upper_pairs()],
    }

    products = []
    for a, b in alg.upper_pairs():
        g, h = alg.gen(a), alg.gen(b)
        for j in range(alg.locality_order(g, h)):
            products.append({"pair": [a, b], "j": j,
                             "value": alg.jth_product(g, h, j).render()})
    data["jth_products"] = products

    ann: dict = {"max_label": _REPORT_LABEL_BOUND}
    if alg.closed_ann_form is not None:
        mismatches = compare_closed_form(alg, _REPORT_LABEL_BOUND)
        ann["closed_form"] = "pass" if not mismatches else "fail"
        ann["mismatches"] = mismatches[:5]
    else:
        ann["closed_form"] = "unavailable"
    samples = []
    for gname, hname in alg.ordered_pairs():
        g, h = alg.gen(gname), alg.gen(hname)
        m = labels_through(g, 1)[-1]
        n = labels_through(h, 0)[-1]
        value = ann_bracket(alg, AnnBasis(g, m), AnnBasis(h, n))
        samples.append({"left": f"{gname}_{m}", "right": f"{hname}_{n}",
                        "value": value.render()})
    ann["samples"] = samples
    data["annihilation"] = ann

    if not alg.params:
        finite = truncated_quotient(alg, depth)
        series = finite.derived_series()
        solvable, length = finite.is_solvable()
        data["truncation"] = {
            "depth": depth,
            "dim": finite.dim,
            "derived_series": series,
            "solvable": solvable,
            "derived_length": length,
        }

        families = rank1_classify(alg, _REPORT_DEGREE)
        carrier = gamma_carrier(alg)
        pattern = "irreducible iff alpha != 0"
        if carrier is not None:
            pattern = "irreducible iff alpha != 0 or gamma != 0"
        sample_names = ["M_0_2", "M_1_2"]
        if carrier is not None:
            sample_names.append("M_0_2_1")
        verdicts = []
        for spec in sample_names:
            action = named_module(alg, spec)
            verdict = irreducibility_verdict(alg, action, _REPORT_SCAN)
            verdicts.append({
                "module": spec,
                "status": verdict.status,
                "certificate": verdict.certificate,
                "reason": verdict.reason,
                "witnesses": [str(w.generator) for w in verdict.witnesses],
            })
        data["modules"] = {
            "degree": _REPORT_DEGREE,
            "families": [{"actions": {g: str(p) for g, p in fam.items()},
                          "verdict": family_verdict(fam)} for fam in families],
            "pattern": pattern,
            "verdicts": verdicts,
        }
    return data


def render_text(data: dict) -> str:
    lines = [f"algebra {data['algebra']}"]
    if data["params"]:
        lines.append("params: " + ", ".join(f"{k} = {v}" for k, v in data["params"].items()))
    if data["free_params"]:
        lines.append("free params: " + ", ".join(data["free_params"]))
    lines.append("generators: " + ", ".join(
        f"{g['name']} (offset {g['offset']}, shift {g['shift']})"
        for g in data["generators"]))
    lines.append("table:")
    for row in data["table"]:
        a, b = row["pair"]
        lines.append(f"  [{a},{b}] = {row['value']}")
    ax = data["axioms"]
    def _n(count):
        return f"{count} check" + ("" if count == 1 else "s")
    lines.append(f"axioms: skew {'pass' if ax['skew'] else 'FAIL'} "
                 f"({_n(ax['skew_checks'])}), jacobi "
                 f"{'pass' if ax['jacobi'] else 'FAIL'} ({_n(ax['jacobi_checks'])})")
    for key in ax["failures"]:
        lines.append("  failing: (" + ", ".join(key) + ")")
    lines.append("locality orders: " + ", ".join(
        f"({row['pair'][0]},{row['pair'][1]}) = {row['order']}" for row in data["locality"]))
    lines.append("nonzero j-th products:")
    for row in data["jth_products"]:
        a, b = row["pair"]
        lines.append(f"  {a} ({row['j']}) {b} = {row['value']}")
    ann = data["annihilation"]
    lines.append(f"coefficient algebra through label {ann['max_label']}: "
                 f"closed form {ann['closed_form']}")
    for mism in ann.get("mismatches", []):
        lines.append(f"  mismatch: {mism}")
    lines.append("sample brackets:")
    for s in ann["samples"]:
        lines.append(f"  [{s['left']}, {s['right']}] = {s['value']}")
    if "truncation" in data:
        tr = data["truncation"]
        length = tr["derived_length"]
        lines.append(
            f"truncation depth {tr['depth']}: dim {tr['dim']}, derived series "
            f"{tr['derived_series']}, "
            + (f"solvable of length {length}" if tr["solvable"] else "not solvable"))
    if "modules" in data:
        mo = data["modules"]
        lines.append(f"rank-one families (degree bound {mo['degree']}):")
        for fam in mo["families"]:
            lines.append("  " + "; ".join(f"{g} -> {p}" for g, p in fam["actions"].items()))
            lines.append(f"    {fam['verdict']}")
        lines.append(f"irreducibility pattern: {mo['pattern']}")
        for v in mo["verdicts"]:
            extra = ""
            if v["witnesses"]:
                extra = " (witness " + ", ".join(v["witnesses"]) + ")"
            elif v["certificate"] == "bounded":
                extra = " (up to the scan bound)"
            lines.append(f"  {v['module']}: {v['status']}{extra}")
    return "\n".join(lines) + "\n"


def render_json(data: dict) -> str:
    return json.dumps(data, indent=2) + "\n"


def render_tex(data: dict) -> str:
    if any("tex" not in row for row in data["table"]):
        raise DefinitionError("call attach_tex on the report before render_tex")
    lines = [
        r"\section*{Algebra " + data["algebra"] + "}",
        r"\begin{align*}",
    ]
    for row in data["table"]:
        a, b = row["pair"]
        lines.append(f"[{a}_\\lambda {b}] &= {row['tex']} \\\\")
    lines.append(r"\end{align*}")
    ax = data["axioms"]
    lines.append(r"Axioms: skew " + ("pass" if ax["skew"] else "fail")
                 + ", Jacobi " + ("pass" if ax["jacobi"] else "fail") + r".")
    if "modules" in data:
        lines.append(r"\begin{align*}")
        for fam in data["modules"]["families_tex"]:
            lines.append(" \\quad ".join(f"{g} &\\mapsto {p}" for g, p in fam.items()) + r" \\")
        lines.append(r"\end{align*}")
    return "\n".join(lines) + "\n"


def attach_tex(alg: ConformalAlgebra, data: dict) -> dict:
    """Add LaTeX renderings for the table and module families in place."""
    for row in data["table"]:
        a, b = row["pair"]
        row["tex"] = _latex_element(alg.entry(a, b))
    if "modules" in data:
        families = rank1_classify(alg, data["modules"]["degree"], cross_check=False)
        data["modules"]["families_tex"] = [
            {g: poly_to_latex(p) for g, p in fam.items()} for fam in families]
    return data
