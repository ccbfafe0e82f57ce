"""Result documents and their JSON / LaTeX / plain-text renderings.

A document is a plain dict.  JSON is the machine contract: keys are sorted,
coefficients are ``"p/q"`` strings and ``schema_version`` is bumped on any
incompatible change.  LaTeX output writes resonant fields on R^2 x C^2 in
complex coordinates ``x1, x2, z1, z2`` (and conjugates) so that it can be
read against the displayed normal-form systems.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Iterable

from .normalform import NormalFormResult, ProblemSpec
from .poly import ScalarPoly, VecPoly, poly_from_terms, poly_to_terms
from .spaces import GradedSubspace
from .specfile import spec_to_dict

SCHEMA_VERSION = 1
FORMATS = ("json", "latex", "text")


# -- documents ------------------------------------------------------------------------

def empty_document() -> dict:
    return {"schema_version": SCHEMA_VERSION, "kind": "empty", "pass": True, "failures": []}


def normal_form_document(result: NormalFormResult) -> dict:
    steps = []
    for s in result.steps:
        steps.append({
            "k": s.k,
            "dim_complement": s.complement_dim,
            "g_k": poly_to_terms(s.g_k),
            "xi_k": poly_to_terms(s.xi_k),
            "checks": {"residual": s.residual_check},
        })
    failures = [{"k": s["k"], "check": "residual"} for s in steps if not s["checks"]["residual"]]
    return {"schema_version": SCHEMA_VERSION, "kind": "normal_form", "spec": spec_to_dict(result.spec),
            "steps": steps, "normal_field": poly_to_terms(result.normal_field),
            "pass": not failures, "failures": failures}


def complement_document(spec: ProblemSpec, spaces: Iterable[GradedSubspace]) -> dict:
    degrees = [{"k": W.k, "dim": W.dim, "basis": [poly_to_terms(e) for e in W.elements()]}
               for W in spaces]
    return {"schema_version": SCHEMA_VERSION, "kind": "complement", "spec": spec_to_dict(spec),
            "degrees": degrees, "pass": True, "failures": []}


def report_document(kind: str, params: dict, report: dict, **extra) -> dict:
    doc = {"schema_version": SCHEMA_VERSION, "kind": kind, "params": params,
           "results": report["results"], "failures": report["failures"], "pass": report["pass"]}
    doc.update(extra)
    return doc


def error_document(error: dict) -> dict:
    return {"schema_version": SCHEMA_VERSION, "kind": "error", "error": error, "pass": False,
            "failures": [error]}


# -- rendering --------------------------------------------------------------------------

def emit(doc: dict | None, fmt: str = "json") -> str:
    if doc is None:
        doc = empty_document()
    if fmt == "json":
        return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=True) + "\n"
    if fmt == "text":
        return _text(doc)
    if fmt == "latex":
        return _latex(doc)
    raise ValueError(f"unknown format {fmt!r}; expected one of {', '.join(FORMATS)}")


def _status(doc: dict) -> str:
    return "PASS" if doc.get("pass", True) else "FAIL"


def _text(doc: dict) -> str:
    kind = doc.get("kind")
    n = doc.get("spec", {}).get("dimension")
    lines = [f"# {kind}"]
    if kind == "complement":
        lines.append(f"{'k':>3}  {'dim':>5}")
        for d in doc["degrees"]:
            lines.append(f"{d['k']:>3}  {d['dim']:>5}")
            for b in d["basis"]:
                lines.append(f"       {_poly_str(b, n)}")
    elif kind == "normal_form":
        lines.append(f"{'k':>3}  {'dim':>5}  g_k")
        for s in doc["steps"]:
            lines.append(f"{s['k']:>3}  {s['dim_complement']:>5}  {_poly_str(s['g_k'], n)}")
        lines.append(f"normal field: {_poly_str(doc['normal_field'], n)}")
    elif kind in ("empty", "error"):
        if kind == "error":
            lines.append(json.dumps(doc["error"], sort_keys=True))
    else:
        for r in doc.get("results", []):
            fields = "  ".join(f"{k}={_short(v)}" for k, v in sorted(r.items()) if k != "pass")
            lines.append(f"{'ok  ' if r['pass'] else 'FAIL'}  {fields}")
        for key in ("type", "hilbert_basis"):
            if key in doc:
                lines.append(f"{key}: {_short(doc[key])}")
    lines.append(_status(doc))
    return "\n".join(lines) + "\n"


def _short(v) -> str:
    if isinstance(v, (list, dict)):
        s = json.dumps(v, sort_keys=True)
        return s if len(s) <= 60 else s[:57] + "..."
    return str(v)


def _poly_str(terms: list, n: int | None) -> str:
    if not terms:
        return "0"
    n = n or len(terms[0]["exponents"])
    return str(poly_from_terms(terms, n, vector=True))


# -- LaTeX ----------------------------------------------------------------------------------

Gauss = tuple  # (re, im) pair of Fractions

_ZERO = (Fraction(0), Fraction(0))
_HALF = Fraction(1, 2)
# x3 = (z1 + zb1)/2, x4 = (z1 - zb1)/(2i); same for x5, x6.  Complex variable order:
# x1, x2, z1, zb1, z2, zb2.
_SUBST = {
    0: {(1, 0, 0, 0, 0, 0): (Fraction(1), Fraction(0))},
    1: {(0, 1, 0, 0, 0, 0): (Fraction(1), Fraction(0))},
    2: {(0, 0, 1, 0, 0, 0): (_HALF, Fraction(0)), (0, 0, 0, 1, 0, 0): (_HALF, Fraction(0))},
    3: {(0, 0, 1, 0, 0, 0): (Fraction(0), -_HALF), (0, 0, 0, 1, 0, 0): (Fraction(0), _HALF)},
    4: {(0, 0, 0, 0, 1, 0): (_HALF, Fraction(0)), (0, 0, 0, 0, 0, 1): (_HALF, Fraction(0))},
    5: {(0, 0, 0, 0, 1, 0): (Fraction(0), -_HALF), (0, 0, 0, 0, 0, 1): (Fraction(0), _HALF)},
}


def _gmul(a: Gauss, b: Gauss) -> Gauss:
    return (a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0])


def _cmul(p: dict, q: dict) -> dict:
    out: dict = {}
    for m1, c1 in p.items():
        for m2, c2 in q.items():
            m = tuple(x + y for x, y in zip(m1, m2))
            c = _gmul(c1, c2)
            o = out.get(m, _ZERO)
            out[m] = (o[0] + c[0], o[1] + c[1])
    return {m: c for m, c in out.items() if c != _ZERO}


def _cadd(p: dict, q: dict, scale: Gauss = (Fraction(1), Fraction(0))) -> dict:
    out = dict(p)
    for m, c in q.items():
        c = _gmul(c, scale)
        o = out.get(m, _ZERO)
        out[m] = (o[0] + c[0], o[1] + c[1])
    return {m: c for m, c in out.items() if c != _ZERO}


def complexify(f: ScalarPoly) -> dict:
    """``f`` as a Gaussian-rational polynomial in ``x1, x2, z1, zb1, z2, zb2``."""
    out: dict = {}
    one = {(0,) * 6: (Fraction(1), Fraction(0))}
    for m, c in f.as_dict().items():
        t = one
        for var, e in enumerate(m):
            for _ in range(e):
                t = _cmul(t, _SUBST[var])
        out = _cadd(out, t, (Fraction(c), Fraction(0)))
    return out


_CNAMES = ("x_1", "x_2", "z_1", r"\bar z_1", "z_2", r"\bar z_2")


def _latex_coef(c: Gauss, first: bool) -> tuple[str, bool]:
    """Signed coefficient text and whether it is a bare unit."""
    re_, im = c

    def frac(x: Fraction) -> str:
        return str(x.numerator) if x.denominator == 1 else rf"\tfrac{{{x.numerator}}}{{{x.denominator}}}"

    if im == 0 or re_ == 0:
        x = re_ if im == 0 else im
        sign = "-" if x < 0 else ("" if first else "+")
        mag = abs(x)
        unit = "i" if im != 0 else ""
        if mag == 1:
            return f"{sign} {unit}".strip() if unit else sign, unit == ""
        return f"{sign} {frac(mag)}{unit}".strip(), False
    body = f"{frac(re_)} {'-' if im < 0 else '+'} {frac(abs(im))}i"
    return ("" if first else "+ ") + f"({body})", False


def _latex_poly(p: dict, names=_CNAMES) -> str:
    if not p:
        return "0"
    parts = []
    for i, m in enumerate(sorted(p, key=lambda m: (sum(m), tuple(-e for e in m)))):
        coef, unit = _latex_coef(p[m], i == 0)
        mono = " ".join(names[v] + (f"^{{{e}}}" if e > 1 else "") for v, e in enumerate(m) if e)
        if not mono:
            parts.append(coef + ("1" if unit else ""))
        else:
            parts.append(f"{coef} {mono}".strip())
    return " ".join(parts)


def _real_poly(f: ScalarPoly) -> dict:
    return {m: (Fraction(c), Fraction(0)) for m, c in f.as_dict().items()}


def latex_system(v: VecPoly, complex_coords: bool) -> str:
    """One vector field as an aligned system of equations."""
    if complex_coords and v.n == 6:
        rows = [
            (r"\dot x_1", complexify(v[0])),
            (r"\dot x_2", complexify(v[1])),
            (r"\dot z_1", _cadd(complexify(v[2]), complexify(v[3]), (Fraction(0), Fraction(1)))),
            (r"\dot z_2", _cadd(complexify(v[4]), complexify(v[5]), (Fraction(0), Fraction(1)))),
        ]
        body = [f"{lhs} &= {_latex_poly(rhs)}" for lhs, rhs in rows]
    else:
        names = tuple(f"x_{{{i + 1}}}" for i in range(v.n))
        body = [rf"\dot x_{{{i + 1}}} &= {_latex_poly(_real_poly(c), names)}" for i, c in enumerate(v)]
    return "\\begin{aligned}\n" + " \\\\\n".join(body) + "\n\\end{aligned}"


def _latex(doc: dict) -> str:
    kind = doc.get("kind")
    spec = doc.get("spec", {})
    n = spec.get("dimension")
    cplx = n == 6 and "resonant" in spec.get("linear_part", {})
    out = [f"% {kind}"]
    if kind == "complement":
        for d in doc["degrees"]:
            out.append(f"% degree {d['k']}, dimension {d['dim']}")
            for j, b in enumerate(d["basis"]):
                out.append(rf"\[ % basis element {j + 1}" + "\n"
                           + latex_system(poly_from_terms(b, n, vector=True), cplx) + "\n\\]")
    elif kind == "normal_form":
        for s in doc["steps"]:
            out.append(f"% degree {s['k']}: retained terms g_{s['k']}")
            out.append("\\[\n" + latex_system(poly_from_terms(s["g_k"], n, vector=True), cplx) + "\n\\]")
        out.append("% normal form through the truncation degree")
        out.append("\\[\n" + latex_system(poly_from_terms(doc["normal_field"], n, vector=True), cplx)
                   + "\n\\]")
    else:
        out.append(r"\begin{tabular}{ll}")
        for r in doc.get("results", []):
            label = ", ".join(f"{k}={_short(v)}" for k, v in sorted(r.items()) if k != "pass")
            out.append(rf"\verb|{label}| & {'pass' if r['pass'] else 'FAIL'} \\")
        out.append(r"\end{tabular}")
    out.append(f"% {_status(doc)}")
    return "\n".join(out) + "\n"


__all__ = [
    "SCHEMA_VERSION", "FORMATS", "emit", "empty_document", "normal_form_document",
    "complement_document", "report_document", "error_document", "complexify", "latex_system",
]
