"""Problem-spec documents: YAML in, ``ProblemSpec`` out, and back.

A document looks like::

    dimension: 6
    linear_part:
      resonant: {n1: 1, n2: 2, mode: resonant}   # or  matrix: [["0", "1"], ...]
    group:                                        # optional; trivial group if absent
      - matrix: [[1, 0, ...], ...]
        sigma: -1
    degree_max: 4
    vector_field:                                 # optional; linear terms included
      - {component: 2, exponents: [1, 0, 0, 0, 0, 0], coefficient: "1"}
    options: {format: json, dmax: 6}

Coefficients are integers or ``"p/q"`` strings; floats are rejected.
Errors carry a category and, where the document gives one, a line/column.
"""

from __future__ import annotations

import re
from fractions import Fraction

import yaml

from .golden import phi_element, psi_element
from .group import GroupError, SignedElement, close_group, trivial_group
from .homological import HomologicalError, LinearPart, build_resonant_L, linear_part, nilpotent_block
from .normalform import NormalFormError, ProblemSpec
from .poly import PolyError, _frac, format_coef, poly_from_terms, poly_to_terms

SECTIONS = ("dimension", "linear_part", "group", "degree_max", "vector_field", "options")


class SpecError(ValueError):
    def __init__(self, message: str, category: str = "semantic", line: int | None = None,
                 column: int | None = None, token: str | None = None):
        self.message = message
        self.category = category
        self.line = line
        self.column = column
        self.token = token
        where = f"line {line}, column {column}: " if line is not None else ""
        super().__init__(f"{category} error: {where}{message}")

    def to_dict(self) -> dict:
        return {"category": self.category, "message": self.message, "line": self.line,
                "column": self.column, "token": self.token}


# -- positions ---------------------------------------------------------------------------

def _collect_marks(node, path: tuple, out: dict) -> None:
    out[path] = node.start_mark
    if isinstance(node, yaml.MappingNode):
        for k, v in node.value:
            key = k.value
            out[("<key>",) + path + (key,)] = k.start_mark
            _collect_marks(v, path + (key,), out)
    elif isinstance(node, yaml.SequenceNode):
        for i, v in enumerate(node.value):
            _collect_marks(v, path + (i,), out)


class _Doc:
    def __init__(self, text: str):
        try:
            self.data = yaml.safe_load(text)
            node = yaml.compose(text, Loader=yaml.SafeLoader)
        except yaml.MarkedYAMLError as e:
            mark = e.problem_mark or e.context_mark
            raise SpecError(e.problem or str(e), "syntax",
                            mark.line + 1 if mark else None, mark.column + 1 if mark else None,
                            _token_at(text, mark)) from None
        except yaml.YAMLError as e:
            raise SpecError(str(e), "syntax") from None
        self.marks: dict = {}
        if node is not None:
            _collect_marks(node, (), self.marks)
        self.text = text

    def fail(self, path: tuple, message: str, category: str = "semantic", token=None):
        p = tuple(path)
        while p and p not in self.marks:
            p = p[:-1]
        mark = self.marks.get(p)
        line = mark.line + 1 if mark else None
        col = mark.column + 1 if mark else None
        if token is None and mark is not None:
            token = _token_at(self.text, mark)
        raise SpecError(message, category, line, col, token)


def _token_at(text: str, mark) -> str | None:
    if mark is None:
        return None
    lines = text.splitlines()
    if mark.line >= len(lines):
        return None
    m = re.match(r"[^\s,\]\}]*", lines[mark.line][mark.column:])
    return m.group(0) if m and m.group(0) else None


# -- field parsers -------------------------------------------------------------------------

def _coef(doc: _Doc, path: tuple, value) -> Fraction:
    if isinstance(value, bool) or isinstance(value, float):
        doc.fail(path, f"coefficient {value!r} is not exact; write it as an integer or 'p/q'",
                 "coefficient")
    try:
        return _frac(value)
    except (PolyError, ValueError, TypeError, ZeroDivisionError) as e:
        doc.fail(path, f"bad coefficient {value!r}: {e}", "coefficient")


def _int(doc: _Doc, path: tuple, value, what: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        doc.fail(path, f"{what} must be an integer, got {value!r}", "schema")
    return value


def _matrix(doc: _Doc, path: tuple, value, n: int):
    if not isinstance(value, list) or len(value) != n:
        doc.fail(path, f"matrix must have {n} rows", "shape")
    rows = []
    for i, row in enumerate(value):
        if not isinstance(row, list) or len(row) != n:
            doc.fail(path + (i,), f"matrix row {i + 1} must have {n} entries", "shape")
        rows.append(tuple(_coef(doc, path + (i, j), x) for j, x in enumerate(row)))
    return tuple(rows)


def _linear_part(doc: _Doc, section, n: int, kmax: int) -> LinearPart:
    path = ("linear_part",)
    if not isinstance(section, dict):
        doc.fail(path, "linear_part must be a mapping with 'matrix' or 'resonant'", "schema")
    if ("matrix" in section) == ("resonant" in section):
        doc.fail(path, "linear_part needs exactly one of 'matrix' or 'resonant'", "schema")
    if "matrix" in section:
        return linear_part(_matrix(doc, path + ("matrix",), section["matrix"], n))
    res = section["resonant"]
    rp = path + ("resonant",)
    if not isinstance(res, dict):
        doc.fail(rp, "resonant must be a mapping {n1, n2, mode}", "schema")
    if n != 6:
        doc.fail(("dimension",), "a resonant linear part lives on dimension 6", "shape")
    n1 = _int(doc, rp + ("n1",), res.get("n1"), "n1")
    n2 = _int(doc, rp + ("n2",), res.get("n2"), "n2")
    mode = res.get("mode", "resonant")
    try:
        return build_resonant_L(n1, n2, mode, kmax)
    except HomologicalError as e:
        doc.fail(rp, str(e), "linear_part")


def _group(doc: _Doc, section, n: int):
    if section is None or section == []:
        return trivial_group(n)
    if not isinstance(section, list):
        doc.fail(("group",), "group must be a list of {matrix, sigma}", "schema")
    gens = []
    for i, g in enumerate(section):
        p = ("group", i)
        if not isinstance(g, dict) or "matrix" not in g:
            doc.fail(p, "each generator needs a 'matrix'", "schema")
        sigma = _int(doc, p + ("sigma",), g.get("sigma", 1), "sigma")
        if sigma not in (1, -1):
            doc.fail(p + ("sigma",), f"sigma must be +1 or -1, got {sigma}", "group")
        gens.append(SignedElement(_matrix(doc, p + ("matrix",), g["matrix"], n), sigma))
    try:
        return close_group(gens)
    except GroupError as e:
        idx = next((i for i, g in enumerate(gens) if g is e.element), None)
        doc.fail(("group", idx) if idx is not None else ("group",), str(e), "group")


def _field(doc: _Doc, section, n: int):
    if section is None:
        return None
    if not isinstance(section, list):
        doc.fail(("vector_field",), "vector_field must be a list of terms", "schema")
    for i, t in enumerate(section):
        p = ("vector_field", i)
        if not isinstance(t, dict):
            doc.fail(p, "each term is a mapping {component, exponents, coefficient}", "schema")
        comp = _int(doc, p + ("component",), t.get("component"), "component")
        if not 1 <= comp <= n:
            doc.fail(p + ("component",), f"component {comp} is outside 1..{n}", "shape")
        ex = t.get("exponents")
        if not isinstance(ex, list) or len(ex) != n or any(
                isinstance(e, bool) or not isinstance(e, int) or e < 0 for e in ex):
            doc.fail(p + ("exponents",), f"exponents must be {n} nonnegative integers", "shape")
        _coef(doc, p + ("coefficient",), t.get("coefficient"))
    try:
        return poly_from_terms(section, n, vector=True)
    except PolyError as e:
        doc.fail(("vector_field",), str(e), "field")


def parse_spec(text: str) -> ProblemSpec:
    """Parse and fully validate a spec document."""
    doc = _Doc(text)
    data = doc.data
    if not isinstance(data, dict):
        doc.fail((), "the document must be a mapping of sections", "schema")
    for key in data:
        if key not in SECTIONS:
            doc.fail(("<key>", key), f"unknown section {key!r}; expected one of {', '.join(SECTIONS)}",
                     "schema", token=str(key))
    for key in ("dimension", "linear_part", "degree_max"):
        if key not in data:
            doc.fail((), f"missing section {key!r}", "schema")
    n = _int(doc, ("dimension",), data["dimension"], "dimension")
    if n < 1:
        doc.fail(("dimension",), "dimension must be positive", "schema")
    kmax = _int(doc, ("degree_max",), data["degree_max"], "degree_max")
    if kmax < 0:
        doc.fail(("degree_max",), "degree_max must be >= 0", "schema")
    L = _linear_part(doc, data["linear_part"], n, kmax)
    G = _group(doc, data.get("group"), n)
    X = _field(doc, data.get("vector_field"), n)
    options = data.get("options") or {}
    if not isinstance(options, dict):
        doc.fail(("options",), "options must be a mapping", "schema")
    spec = ProblemSpec(n, L, G, kmax, X, tuple(sorted(options.items())))
    try:
        spec.validate()
    except GroupError as e:
        section = "vector_field" if "vector field" in str(e) else "group"
        idx = next((i for i, g in enumerate(G.generators) if g is e.element), None)
        path = ("group", idx) if section == "group" and idx is not None else (section,)
        doc.fail(path, str(e), "compatibility" if section == "group" else "field")
    except (NormalFormError, HomologicalError) as e:
        section = "vector_field" if "field" in str(e) or "constant" in str(e) else "linear_part"
        doc.fail((section,), str(e), "field" if section == "vector_field" else "linear_part")
    return spec


def load_spec(path: str) -> ProblemSpec:
    with open(path, encoding="utf-8") as fh:
        return parse_spec(fh.read())


# -- built-in specs --------------------------------------------------------------------------

def builtin_spec(name: str, kmax: int | None = None) -> ProblemSpec:
    """``nilpotent``, ``resonant-N1-N2`` (group generated by phi),
    ``resonant-N1-N2-trivial`` and ``resonant-N1-N2-z2xz2-A0,A1,A2``."""
    if name == "nilpotent":
        return ProblemSpec(2, nilpotent_block(), trivial_group(2), kmax if kmax is not None else 8)
    m = re.fullmatch(r"resonant-(\d+)-(\d+)(?:-(trivial|z2xz2-(-?1),(-?1),(-?1)))?", name)
    if not m:
        raise SpecError(f"unknown built-in spec {name!r}", "usage")
    n1, n2 = int(m.group(1)), int(m.group(2))
    k = kmax if kmax is not None else 6
    try:
        L = build_resonant_L(n1, n2)
    except HomologicalError as e:
        raise SpecError(str(e), "linear_part") from None
    if m.group(3) == "trivial":
        G = trivial_group(6)
    elif m.group(3):
        G = close_group([phi_element(), psi_element(int(m.group(4)), int(m.group(5)), int(m.group(6)))])
    else:
        G = close_group([phi_element()])
    return ProblemSpec(6, L, G, k)


def resolve_spec(name_or_path: str, kmax: int | None = None) -> ProblemSpec:
    try:
        return builtin_spec(name_or_path, kmax)
    except SpecError as e:
        if e.category != "usage":
            raise
    spec = load_spec(name_or_path)
    if kmax is not None and kmax != spec.kmax:
        spec = ProblemSpec(spec.n, spec.L, spec.group, kmax, spec.field, spec.options)
        spec.validate()
    return spec


# -- echo ---------------------------------------------------------------------------------

def spec_to_dict(spec: ProblemSpec) -> dict:
    d = spec.L.descriptor
    if d is not None:
        lp = {"resonant": {"n1": d.n1, "n2": d.n2, "mode": d.mode}}
    else:
        lp = {"matrix": [[format_coef(x) for x in row] for row in spec.L.matrix]}
    out = {"dimension": spec.n, "linear_part": lp, "degree_max": spec.kmax}
    if spec.group.order > 1:
        out["group"] = [{"matrix": [[format_coef(x) for x in row] for row in g.matrix], "sigma": g.sign}
                        for g in spec.group.generators]
    if spec.field is not None:
        out["vector_field"] = poly_to_terms(spec.field)
    if spec.options:
        out["options"] = dict(spec.options)
    return out


def dump_spec(spec: ProblemSpec) -> str:
    return yaml.safe_dump(spec_to_dict(spec), sort_keys=False, default_flow_style=None)
