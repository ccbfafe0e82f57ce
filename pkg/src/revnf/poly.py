"""Exact graded polynomial algebra over the rationals.

Scalar polynomials ``V -> R`` and polynomial maps ``V -> V`` with
``V = R^n``.  Coefficients are :class:`fractions.Fraction`; monomials are
exponent tuples.  Monomials are ordered graded-lexicographically: lower total
degree first, ties broken lexicographically with ``x1`` most significant, so
``x1^2 < x1*x2 < x2^2`` in two variables.

Variable and component indices are 0-based throughout the Python API
(``x1`` is index 0); the term-list serialization uses 1-based components.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement
from typing import Iterable, Iterator, Mapping, Sequence, Union

Monomial = tuple[int, ...]
Number = Union[int, Fraction]
Matrix = Sequence[Sequence[Number]]


class PolyError(ValueError):
    pass


def monomial_key(m: Monomial) -> tuple:
    return (sum(m), tuple(-e for e in m))


@lru_cache(maxsize=None)
def monomial_basis(n: int, k: int) -> tuple[Monomial, ...]:
    """All monomials of total degree exactly ``k`` in ``n`` variables, in the
    global order."""
    if n < 1 or k < 0:
        raise PolyError(f"need n >= 1 and k >= 0, got n={n}, k={k}")
    out = []
    for combo in combinations_with_replacement(range(n), k):
        e = [0] * n
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    return tuple(out)


@lru_cache(maxsize=None)
def monomial_index(n: int, k: int) -> dict[Monomial, int]:
    return {m: i for i, m in enumerate(monomial_basis(n, k))}


def slice_dim(n: int, k: int, vector: bool = True) -> int:
    """Dimension of the degree-k slice of scalar (``vector=False``) or vector
    polynomials."""
    d = len(monomial_basis(n, k))
    return n * d if vector else d


def _frac(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, str):
        return parse_coef(c)
    if isinstance(c, float):
        raise PolyError("floating point coefficients are not accepted")
    return Fraction(c)


def parse_coef(s: str) -> Fraction:
    """Parse a ``"p/q"`` (or integer) coefficient string."""
    text = s.strip()
    try:
        num, _, den = text.partition("/")
        if not den:
            return Fraction(int(num))
        return Fraction(int(num), int(den))
    except (ValueError, ZeroDivisionError):
        raise PolyError(f"bad coefficient {s!r}; expected 'p/q'") from None


def format_coef(c: Fraction) -> str:
    c = Fraction(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


class ScalarPoly:
    """Immutable sparse polynomial in ``n`` variables."""

    __slots__ = ("n", "_terms")

    def __init__(self, n: int, terms: Mapping[Monomial, Number] | None = None):
        self.n = n
        clean: dict[Monomial, Fraction] = {}
        if terms:
            for m, c in terms.items():
                m = tuple(m)
                if len(m) != n or any(e < 0 for e in m):
                    raise PolyError(f"monomial {m} does not match {n} variables")
                c = _frac(c)
                if c:
                    clean[m] = clean.get(m, 0) + c
            clean = {m: c for m, c in clean.items() if c}
        self._terms = clean

    @classmethod
    def _raw(cls, n: int, terms: dict[Monomial, Fraction]) -> ScalarPoly:
        # trusted constructor: terms already pruned and Fraction-valued
        p = object.__new__(cls)
        p.n = n
        p._terms = terms
        return p

    @classmethod
    def zero(cls, n: int) -> ScalarPoly:
        return cls._raw(n, {})

    @classmethod
    def const(cls, n: int, c: Number) -> ScalarPoly:
        return cls(n, {(0,) * n: c})

    @classmethod
    def var(cls, n: int, i: int) -> ScalarPoly:
        e = [0] * n
        e[i] = 1
        return cls._raw(n, {tuple(e): Fraction(1)})

    @classmethod
    def monomial(cls, m: Monomial, c: Number = 1) -> ScalarPoly:
        return cls(len(m), {tuple(m): c})

    # -- inspection -------------------------------------------------------
    def terms(self) -> list[tuple[Monomial, Fraction]]:
        """Terms in the global monomial order."""
        return sorted(self._terms.items(), key=lambda t: monomial_key(t[0]))

    def as_dict(self) -> dict[Monomial, Fraction]:
        return dict(self._terms)

    def coeff(self, m: Monomial) -> Fraction:
        return self._terms.get(tuple(m), Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    @property
    def degree(self) -> int:
        """Total degree; ``-1`` for the zero polynomial."""
        return max((sum(m) for m in self._terms), default=-1)

    @property
    def min_degree(self) -> int:
        return min((sum(m) for m in self._terms), default=-1)

    def is_homogeneous(self, k: int | None = None) -> bool:
        degs = {sum(m) for m in self._terms}
        if not degs:
            return True
        return len(degs) == 1 and (k is None or degs == {k})

    def homogeneous_part(self, k: int) -> ScalarPoly:
        return ScalarPoly._raw(self.n, {m: c for m, c in self._terms.items() if sum(m) == k})

    def truncate(self, kmax: int) -> ScalarPoly:
        return ScalarPoly._raw(self.n, {m: c for m, c in self._terms.items() if sum(m) <= kmax})

    # -- arithmetic -------------------------------------------------------
    def _check(self, other: ScalarPoly) -> None:
        if other.n != self.n:
            raise PolyError(f"variable count mismatch: {self.n} vs {other.n}")

    def __add__(self, other):
        if not isinstance(other, ScalarPoly):
            other = ScalarPoly.const(self.n, other)
        self._check(other)
        out = dict(self._terms)
        for m, c in other._terms.items():
            v = out.get(m, 0) + c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return ScalarPoly._raw(self.n, out)

    __radd__ = __add__

    def __neg__(self):
        return ScalarPoly._raw(self.n, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        if not isinstance(other, ScalarPoly):
            other = ScalarPoly.const(self.n, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c: Number) -> ScalarPoly:
        c = _frac(c)
        if not c:
            return ScalarPoly.zero(self.n)
        return ScalarPoly._raw(self.n, {m: c * v for m, v in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, VecPoly):
            return other.scale_by(self)
        if not isinstance(other, ScalarPoly):
            return self.scale(other)
        self._check(other)
        out: dict[Monomial, Fraction] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = _mono_mul(m1, m2)
                out[m] = out.get(m, 0) + c1 * c2
        return ScalarPoly._raw(self.n, {m: c for m, c in out.items() if c})

    def __rmul__(self, other):
        return self.scale(other)

    def __truediv__(self, c: Number) -> ScalarPoly:
        return self.scale(1 / _frac(c))

    def __pow__(self, e: int) -> ScalarPoly:
        if e < 0:
            raise PolyError("negative power")
        result = ScalarPoly.const(self.n, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def mul_truncated(self, other: ScalarPoly, kmax: int) -> ScalarPoly:
        out: dict[Monomial, Fraction] = {}
        for m1, c1 in self._terms.items():
            d1 = sum(m1)
            for m2, c2 in other._terms.items():
                if d1 + sum(m2) > kmax:
                    continue
                m = _mono_mul(m1, m2)
                out[m] = out.get(m, 0) + c1 * c2
        return ScalarPoly._raw(self.n, {m: c for m, c in out.items() if c})

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = ScalarPoly.const(self.n, other)
        if not isinstance(other, ScalarPoly):
            return NotImplemented
        return self.n == other.n and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self.n, frozenset(self._terms.items())))

    # -- calculus and substitution ---------------------------------------
    def diff(self, i: int) -> ScalarPoly:
        """Partial derivative with respect to variable ``i`` (0-based)."""
        if not 0 <= i < self.n:
            raise PolyError(f"variable index {i} out of range for n={self.n}")
        out = {}
        for m, c in self._terms.items():
            e = m[i]
            if e:
                mm = list(m)
                mm[i] = e - 1
                out[tuple(mm)] = c * e
        return ScalarPoly._raw(self.n, out)

    def precompose(self, A: Matrix) -> ScalarPoly:
        """``x -> p(A x)``."""
        return _Substitution.for_matrix(A, self.n).apply(self)

    def evaluate(self, point: Sequence[Number]) -> Fraction:
        total = Fraction(0)
        for m, c in self._terms.items():
            v = c
            for x, e in zip(point, m):
                if e:
                    v *= Fraction(x) ** e
            total += v
        return total

    # -- display ----------------------------------------------------------
    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for m, c in self.terms():
            mono = "*".join(
                f"x{i + 1}" if e == 1 else f"x{i + 1}^{e}" for i, e in enumerate(m) if e
            )
            if not mono:
                parts.append(format_coef(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{format_coef(c)}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"ScalarPoly({self.n}, {str(self)!r})"


class _Substitution:
    """Cached powers of the linear forms ``(A x)_j``, reused across the many
    monomials a slice computation substitutes."""

    _cache: dict = {}

    def __init__(self, A: Matrix, n: int):
        self.n = n
        self.forms = [
            ScalarPoly(n, {tuple(int(j == l) for j in range(n)): A[i][l] for l in range(n)})
            for i in range(n)
        ]
        self.powers: dict[tuple[int, int], ScalarPoly] = {}
        self.monos: dict[Monomial, ScalarPoly] = {}

    @classmethod
    def for_matrix(cls, A: Matrix, n: int) -> _Substitution:
        if len(A) != n or any(len(row) != n for row in A):
            raise PolyError(f"matrix must be {n}x{n}")
        key = tuple(tuple(_frac(x) for x in row) for row in A)
        sub = cls._cache.get(key)
        if sub is None:
            if len(cls._cache) > 256:
                cls._cache.clear()
            sub = cls._cache[key] = cls(key, n)
        return sub

    def power(self, i: int, e: int) -> ScalarPoly:
        key = (i, e)
        p = self.powers.get(key)
        if p is None:
            p = self.forms[i] if e == 1 else self.power(i, e - 1) * self.forms[i]
            self.powers[key] = p
        return p

    def mono(self, m: Monomial) -> ScalarPoly:
        p = self.monos.get(m)
        if p is None:
            p = ScalarPoly.const(self.n, 1)
            for i, e in enumerate(m):
                if e:
                    p = p * self.power(i, e)
            self.monos[m] = p
        return p

    def apply(self, f: ScalarPoly) -> ScalarPoly:
        out: dict[Monomial, Fraction] = {}
        for m, c in f._terms.items():
            for mm, cc in self.mono(m)._terms.items():
                out[mm] = out.get(mm, 0) + c * cc
        return ScalarPoly._raw(self.n, {m: c for m, c in out.items() if c})


class VecPoly:
    """Immutable polynomial map ``R^n -> R^n``."""

    __slots__ = ("n", "components")

    def __init__(self, components: Iterable[ScalarPoly]):
        comps = tuple(components)
        if not comps:
            raise PolyError("a polynomial map needs at least one component")
        n = comps[0].n
        if len(comps) != n or any(c.n != n for c in comps):
            raise PolyError("a polynomial map V -> V needs n components in n variables")
        self.n = n
        self.components = comps

    @classmethod
    def zero(cls, n: int) -> VecPoly:
        return cls(ScalarPoly.zero(n) for _ in range(n))

    @classmethod
    def identity(cls, n: int) -> VecPoly:
        return cls(ScalarPoly.var(n, i) for i in range(n))

    @classmethod
    def linear(cls, A: Matrix) -> VecPoly:
        """The linear field ``x -> A x``."""
        n = len(A)
        return cls(ScalarPoly(n, {tuple(int(j == l) for j in range(n)): A[i][l] for l in range(n)})
                   for i in range(n))

    @classmethod
    def constant(cls, values: Sequence[Number]) -> VecPoly:
        n = len(values)
        return cls(ScalarPoly.const(n, v) for v in values)

    @classmethod
    def unit(cls, n: int, i: int, f: ScalarPoly) -> VecPoly:
        """``f`` placed in component ``i``, zero elsewhere."""
        return cls(f if j == i else ScalarPoly.zero(n) for j in range(n))

    def __getitem__(self, i: int) -> ScalarPoly:
        return self.components[i]

    def __iter__(self) -> Iterator[ScalarPoly]:
        return iter(self.components)

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.components)

    def __bool__(self) -> bool:
        return not self.is_zero()

    @property
    def degree(self) -> int:
        return max(c.degree for c in self.components)

    @property
    def min_degree(self) -> int:
        degs = [c.min_degree for c in self.components if c]
        return min(degs, default=-1)

    def is_homogeneous(self, k: int | None = None) -> bool:
        degs = set()
        for c in self.components:
            degs |= {sum(m) for m in c._terms}
        if not degs:
            return True
        return len(degs) == 1 and (k is None or degs == {k})

    def homogeneous_part(self, k: int) -> VecPoly:
        return VecPoly(c.homogeneous_part(k) for c in self.components)

    def truncate(self, kmax: int) -> VecPoly:
        return VecPoly(c.truncate(kmax) for c in self.components)

    def __add__(self, other: VecPoly) -> VecPoly:
        self._check(other)
        return VecPoly(a + b for a, b in zip(self.components, other.components))

    def __sub__(self, other: VecPoly) -> VecPoly:
        self._check(other)
        return VecPoly(a - b for a, b in zip(self.components, other.components))

    def __neg__(self) -> VecPoly:
        return VecPoly(-a for a in self.components)

    def scale(self, c: Number) -> VecPoly:
        return VecPoly(a.scale(c) for a in self.components)

    def scale_by(self, f: ScalarPoly) -> VecPoly:
        """Multiply every component by the scalar polynomial ``f``."""
        return VecPoly(f * a for a in self.components)

    def __mul__(self, other):
        if isinstance(other, ScalarPoly):
            return self.scale_by(other)
        return self.scale(other)

    __rmul__ = __mul__

    def _check(self, other: VecPoly) -> None:
        if not isinstance(other, VecPoly) or other.n != self.n:
            raise PolyError("polynomial maps must share the same n")

    def __eq__(self, other) -> bool:
        if not isinstance(other, VecPoly):
            return NotImplemented
        return self.components == other.components

    def __hash__(self) -> int:
        return hash(self.components)

    def __str__(self) -> str:
        return "(" + ", ".join(str(c) for c in self.components) + ")"

    def __repr__(self) -> str:
        return f"VecPoly{self}"

    # -- maps -------------------------------------------------------------
    def precompose(self, A: Matrix) -> VecPoly:
        sub = _Substitution.for_matrix(A, self.n)
        return VecPoly(sub.apply(c) for c in self.components)

    def postcompose(self, A: Matrix) -> VecPoly:
        return postcompose_linear(A, self)

    def evaluate(self, point: Sequence[Number]) -> tuple[Fraction, ...]:
        return tuple(c.evaluate(point) for c in self.components)


# -- module-level operations ----------------------------------------------

def differentiate(p: ScalarPoly, i: int) -> ScalarPoly:
    return p.diff(i)


def jacobian_times(p: VecPoly, v: VecPoly) -> VecPoly:
    """Component ``i`` is ``sum_j dp_i/dx_j * v_j``."""
    p._check(v)
    n = p.n
    out = []
    for pi in p.components:
        acc = ScalarPoly.zero(n)
        for j in range(n):
            d = pi.diff(j)
            if d and v.components[j]:
                acc = acc + d * v.components[j]
        out.append(acc)
    return VecPoly(out)


def precompose_linear(p, A: Matrix):
    """``x -> p(A x)`` for a scalar polynomial or a polynomial map."""
    return p.precompose(A)


def postcompose_linear(A: Matrix, p: VecPoly) -> VecPoly:
    """``x -> A p(x)``."""
    n = p.n
    if len(A) != n or any(len(row) != n for row in A):
        raise PolyError(f"matrix must be {n}x{n}")
    out = []
    for i in range(n):
        acc: dict[Monomial, Fraction] = {}
        for j in range(n):
            a = _frac(A[i][j])
            if not a:
                continue
            for m, c in p.components[j]._terms.items():
                acc[m] = acc.get(m, 0) + a * c
        out.append(ScalarPoly._raw(n, {m: c for m, c in acc.items() if c}))
    return VecPoly(out)


def compose_truncated(p, q: VecPoly, kmax: int):
    """``p o q`` with every term of degree above ``kmax`` discarded.

    ``q`` must vanish at the origin, so a degree-d term of ``p`` only feeds
    degrees ``>= d`` and truncation is consistent.
    """
    n = q.n
    if any(c.coeff((0,) * n) for c in q.components):
        raise PolyError("inner map has a nonzero constant term; truncated composition is ill-defined")
    if p.n != n:
        raise PolyError("dimension mismatch in composition")
    powers: dict[tuple[int, int], ScalarPoly] = {}

    def power(j: int, e: int) -> ScalarPoly:
        key = (j, e)
        if key not in powers:
            base = q.components[j]
            powers[key] = base.truncate(kmax) if e == 1 else power(j, e - 1).mul_truncated(base, kmax)
        return powers[key]

    monos: dict[Monomial, ScalarPoly] = {}

    def mono(m: Monomial) -> ScalarPoly:
        if m not in monos:
            acc = ScalarPoly.const(n, 1)
            for j, e in enumerate(m):
                if e:
                    acc = acc.mul_truncated(power(j, e), kmax)
            monos[m] = acc
        return monos[m]

    def comp(f: ScalarPoly) -> ScalarPoly:
        out: dict[Monomial, Fraction] = {}
        for m, c in f._terms.items():
            if sum(m) > kmax:
                continue
            for mm, cc in mono(m)._terms.items():
                out[mm] = out.get(mm, 0) + c * cc
        return ScalarPoly._raw(n, {m: c for m, c in out.items() if c})

    if isinstance(p, ScalarPoly):
        return comp(p)
    return VecPoly(comp(c) for c in p.components)


def linear_part(p: VecPoly) -> list[list[Fraction]]:
    n = p.n
    return [[p.components[i].coeff(tuple(int(j == l) for j in range(n))) for l in range(n)]
            for i in range(n)]


def invert_near_identity(phi: VecPoly, kmax: int) -> VecPoly:
    """Truncated inverse of ``phi = I + (terms of degree >= 2)``.

    Solves ``psi = I - f o psi`` degree by degree, where ``phi = I + f``;
    each sweep fixes one more degree.
    """
    n = phi.n
    ident = VecPoly.identity(n)
    if any(c.coeff((0,) * n) for c in phi.components):
        raise PolyError("map has a constant term; not near-identity")
    if linear_part(phi) != linear_part(ident):
        raise PolyError("linear part is not the identity")
    f = (phi - ident).truncate(kmax)
    h = VecPoly.zero(n)
    for _ in range(max(kmax - 1, 0)):
        h = -compose_truncated(f, ident + h, kmax)
    return ident + h


# -- vectorization ----------------------------------------------------------

def to_coords(p: VecPoly | ScalarPoly, k: int) -> dict[int, Fraction]:
    """Sparse coordinate column of a degree-k homogeneous element against the
    basis ``e_i (x) m``, component-major."""
    if not p.is_homogeneous(k):
        raise PolyError(f"element is not homogeneous of degree {k}")
    index = monomial_index(p.n, k)
    if isinstance(p, ScalarPoly):
        return {index[m]: c for m, c in p._terms.items()}
    size = len(index)
    out = {}
    for i, comp in enumerate(p.components):
        off = i * size
        for m, c in comp._terms.items():
            out[off + index[m]] = c
    return out


def from_coords(coords: Mapping[int, Number], n: int, k: int, vector: bool = True):
    basis = monomial_basis(n, k)
    if not vector:
        return ScalarPoly(n, {basis[j]: c for j, c in coords.items()})
    size = len(basis)
    comps: list[dict] = [{} for _ in range(n)]
    for j, c in coords.items():
        i, r = divmod(j, size)
        if not 0 <= i < n:
            raise PolyError(f"coordinate {j} out of range")
        comps[i][basis[r]] = c
    return VecPoly(ScalarPoly(n, d) for d in comps)


def coords_to_list(coords: Mapping[int, Number], dim: int) -> list[Fraction]:
    out = [Fraction(0)] * dim
    for j, c in coords.items():
        out[j] = Fraction(c)
    return out


# -- serialization ----------------------------------------------------------

def poly_to_terms(p: ScalarPoly | VecPoly) -> list[dict]:
    """Term-list records ``{component, exponents, coefficient}``; ``component``
    is 1-based and omitted for scalars."""
    if isinstance(p, ScalarPoly):
        return [{"exponents": list(m), "coefficient": format_coef(c)} for m, c in p.terms()]
    out = []
    for i, comp in enumerate(p.components):
        for m, c in comp.terms():
            out.append({"component": i + 1, "exponents": list(m), "coefficient": format_coef(c)})
    return out


def poly_from_terms(records: Iterable[Mapping], n: int, vector: bool = True):
    comps: list[dict] = [{} for _ in range(n)] if vector else [{}]
    for rec in records:
        exps = tuple(int(e) for e in rec["exponents"])
        if len(exps) != n:
            raise PolyError(f"term {dict(rec)} has {len(exps)} exponents, expected {n}")
        c = rec["coefficient"]
        c = parse_coef(c) if isinstance(c, str) else _frac(c)
        if vector:
            if "component" not in rec:
                raise PolyError(f"term {dict(rec)} lacks a component")
            i = int(rec["component"]) - 1
            if not 0 <= i < n:
                raise PolyError(f"component {i + 1} out of range 1..{n}")
        else:
            i = 0
        comps[i][exps] = comps[i].get(exps, 0) + c
    if vector:
        return VecPoly(ScalarPoly(n, d) for d in comps)
    return ScalarPoly(n, comps[0])
