"""Degree-k slices of invariant and equivariant spaces.

Every subspace is a :class:`GradedSubspace`: a canonical (reduced row
echelon) basis of coordinate vectors against the monomial basis of the
degree-k slice, so equal subspaces compare equal field by field.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Literal, Mapping, Sequence

from . import linalg
from .group import (
    FiniteSignedGroup, GroupError, SignedElement, invariance_violation, reynolds_R, reynolds_S,
)
from .poly import (
    ScalarPoly, VecPoly, _Substitution, from_coords, monomial_basis, monomial_index,
    poly_to_terms, slice_dim, to_coords,
)

Kind = Literal["scalar", "vector"]


class SpaceError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class GradedSubspace:
    kind: Kind
    n: int
    k: int
    basis: tuple[dict, ...]

    @classmethod
    def span(cls, kind: Kind, n: int, k: int, vectors: Iterable[Mapping[int, Fraction]]) -> GradedSubspace:
        return cls(kind, n, k, tuple(linalg.rref(vectors)))

    @classmethod
    def span_of(cls, elements: Sequence[ScalarPoly | VecPoly], k: int, n: int | None = None,
                kind: Kind | None = None) -> GradedSubspace:
        if kind is None:
            kind = "vector" if (elements and isinstance(elements[0], VecPoly)) else "scalar"
        if n is None:
            if not elements:
                raise SpaceError("cannot infer n from an empty element list")
            n = elements[0].n
        return cls.span(kind, n, k, (to_coords(e, k) for e in elements))

    @classmethod
    def full(cls, kind: Kind, n: int, k: int) -> GradedSubspace:
        dim = slice_dim(n, k, kind == "vector")
        return cls(kind, n, k, tuple({j: Fraction(1)} for j in range(dim)))

    @classmethod
    def zero(cls, kind: Kind, n: int, k: int) -> GradedSubspace:
        return cls(kind, n, k, ())

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def ambient_dim(self) -> int:
        return slice_dim(self.n, self.k, self.kind == "vector")

    def elements(self) -> list:
        vec = self.kind == "vector"
        return [from_coords(v, self.n, self.k, vec) for v in self.basis]

    def _same_slice(self, other: GradedSubspace) -> None:
        if (self.kind, self.n, self.k) != (other.kind, other.n, other.k):
            raise SpaceError(
                f"slices differ: {(self.kind, self.n, self.k)} vs {(other.kind, other.n, other.k)}")

    def contains(self, p) -> bool:
        if isinstance(p, (ScalarPoly, VecPoly)):
            if not p.is_homogeneous(self.k):
                return False
            p = to_coords(p, self.k)
        return linalg.RREF(self.basis).contains(p)

    def contains_subspace(self, other: GradedSubspace) -> bool:
        self._same_slice(other)
        ech = linalg.RREF(self.basis)
        return all(ech.contains(v) for v in other.basis)

    def __add__(self, other: GradedSubspace) -> GradedSubspace:
        self._same_slice(other)
        return GradedSubspace.span(self.kind, self.n, self.k, self.basis + other.basis)

    def __eq__(self, other) -> bool:
        if not isinstance(other, GradedSubspace):
            return NotImplemented
        return (self.kind, self.n, self.k, self.basis) == (other.kind, other.n, other.k, other.basis)

    def __hash__(self):
        return hash((self.kind, self.n, self.k, self.dim))

    def __repr__(self) -> str:
        return f"GradedSubspace({self.kind}, n={self.n}, k={self.k}, dim={self.dim})"

    def to_dict(self) -> dict:
        return {"kind": self.kind, "n": self.n, "k": self.k, "dim": self.dim,
                "basis": [poly_to_terms(e) for e in self.elements()]}


def intersect(A: GradedSubspace, B: GradedSubspace) -> GradedSubspace:
    A._same_slice(B)
    if not A.basis or not B.basis:
        return GradedSubspace.zero(A.kind, A.n, A.k)
    return GradedSubspace(A.kind, A.n, A.k, tuple(linalg.intersect_spans(A.basis, B.basis)))


def direct_sum_report(parts: Sequence[GradedSubspace], whole: GradedSubspace | None = None) -> dict:
    """Dimensions of ``parts``, whether their sum is direct, and whether it
    equals ``whole``."""
    total = sum(p.dim for p in parts)
    s = parts[0]
    for p in parts[1:]:
        s = s + p
    out = {"dims": [p.dim for p in parts], "sum_dim": s.dim, "direct": s.dim == total}
    if whole is not None:
        out["whole_dim"] = whole.dim
        out["equal"] = s == whole
        out["pass"] = out["direct"] and out["equal"]
    else:
        out["pass"] = out["direct"]
    return out


# -- fixed spaces of a finite group -------------------------------------------------

def _scalar_action_column(g: SignedElement, m, n: int, k: int, index, mult: int) -> dict[int, Fraction]:
    """Coordinates of ``mult * (g . m) - m`` for a monomial ``m``."""
    sub = _Substitution.for_matrix(g.matrix, n)
    img = sub.mono(m)
    col: dict[int, Fraction] = {}
    for mm, c in img._terms.items():
        col[index[mm]] = mult * c
    j = index[m]
    v = col.get(j, 0) - 1
    if v:
        col[j] = v
    else:
        col.pop(j, None)
    return col


def _vector_action_column(g: SignedElement, i: int, m, n: int, k: int, index, size: int,
                          mult: int) -> dict[int, Fraction]:
    """Coordinates of ``mult * (g * (m e_i)) - m e_i``."""
    sub = _Substitution.for_matrix(g.matrix, n)
    img = sub.mono(m)
    ginv = g.inverse_matrix
    col: dict[int, Fraction] = {}
    for r in range(n):
        a = ginv[r][i]
        if not a:
            continue
        off = r * size
        for mm, c in img._terms.items():
            col[off + index[mm]] = mult * a * c
    j = i * size + index[m]
    v = col.get(j, 0) - 1
    if v:
        col[j] = v
    else:
        col.pop(j, None)
    return col


def fixed_space(elements: Sequence[SignedElement], n: int, k: int, kind: Kind,
                twisted: bool) -> GradedSubspace:
    """Common solutions of ``c_g * (g acting on v) = v`` over ``elements``.

    ``c_g`` is ``sigma(g)`` when ``twisted`` and ``1`` otherwise.
    """
    basis = monomial_basis(n, k)
    index = monomial_index(n, k)
    size = len(basis)
    dim = size if kind == "scalar" else n * size
    elements = [g for g in elements if g.n == n]
    columns = []
    for j in range(dim):
        stacked: dict[int, Fraction] = {}
        for t, g in enumerate(elements):
            mult = g.sign if twisted else 1
            if kind == "scalar":
                col = _scalar_action_column(g, basis[j], n, k, index, mult)
            else:
                i, r = divmod(j, size)
                col = _vector_action_column(g, i, basis[r], n, k, index, size, mult)
            off = t * dim
            for a, c in col.items():
                stacked[off + a] = c
        columns.append(stacked)
    return GradedSubspace(kind, n, k, tuple(linalg.nullspace(columns)))


def _gens(G: FiniteSignedGroup) -> Sequence[SignedElement]:
    return G.generators


def invariants_deg(G: FiniteSignedGroup, k: int) -> GradedSubspace:
    return fixed_space(_gens(G), G.n, k, "scalar", twisted=False)


def anti_invariants_deg(G: FiniteSignedGroup, k: int) -> GradedSubspace:
    return fixed_space(_gens(G), G.n, k, "scalar", twisted=True)


def equivariants_deg(G: FiniteSignedGroup, k: int) -> GradedSubspace:
    return fixed_space(_gens(G), G.n, k, "vector", twisted=False)


def rev_equivariants_deg(G: FiniteSignedGroup, k: int) -> GradedSubspace:
    return fixed_space(_gens(G), G.n, k, "vector", twisted=True)


def plus_invariants_deg(G: FiniteSignedGroup, k: int) -> GradedSubspace:
    return fixed_space(G.plus_subgroup, G.n, k, "scalar", twisted=False)


def plus_equivariants_deg(G: FiniteSignedGroup, k: int) -> GradedSubspace:
    return fixed_space(G.plus_subgroup, G.n, k, "vector", twisted=False)


def decompose_plus_check(G: FiniteSignedGroup, k: int) -> dict:
    """Check ``P^k(G+) = P^k(G) + Q^k(G)`` (direct), and the vector analogue."""
    if G.sigma_trivial:
        raise GroupError("sigma is trivial: the decomposition needs a reversing element")
    report = {"k": k}
    for label, plus, even, odd in (
        ("scalar", plus_invariants_deg, invariants_deg, anti_invariants_deg),
        ("vector", plus_equivariants_deg, equivariants_deg, rev_equivariants_deg),
    ):
        whole, a, b = plus(G, k), even(G, k), odd(G, k)
        r = direct_sum_report([a, b], whole)
        report[label] = {"plus": whole.dim, "sigma_even": a.dim, "sigma_odd": b.dim,
                         "direct": r["direct"], "equal": r["equal"], "pass": r["pass"]}
    report["pass"] = report["scalar"]["pass"] and report["vector"]["pass"]
    return report


# -- algebra and module spans ------------------------------------------------------------

def _homogeneous_degree(p) -> int:
    if p.is_zero():
        return -1
    if not p.is_homogeneous():
        raise SpaceError(f"generator {p} is not homogeneous")
    return p.degree


class _AlgebraProducts:
    """Products of homogeneous scalar generators, grouped by degree."""

    def __init__(self, gens: Sequence[ScalarPoly], n: int):
        self.n = n
        self.gens = [(g, _homogeneous_degree(g)) for g in gens]
        self.gens = [(g, d) for g, d in self.gens if d > 0]
        self._cache: dict[tuple[int, ...], ScalarPoly] = {}

    def _product(self, combo: tuple[int, ...]) -> ScalarPoly:
        p = self._cache.get(combo)
        if p is None:
            if not combo:
                p = ScalarPoly.const(self.n, 1)
            else:
                p = self._product(combo[:-1]) * self.gens[combo[-1]][0]
            self._cache[combo] = p
        return p

    def of_degree(self, d: int) -> list[ScalarPoly]:
        out = []

        def rec(start: int, remaining: int, combo: tuple[int, ...]):
            if remaining == 0:
                out.append(self._product(combo))
                return
            for t in range(start, len(self.gens)):
                dg = self.gens[t][1]
                if dg <= remaining:
                    rec(t, remaining - dg, combo + (t,))

        rec(0, d, ())
        return out


def algebra_span(gens: Sequence[ScalarPoly], d: int, n: int | None = None) -> GradedSubspace:
    """Degree-d slice of the algebra generated by homogeneous ``gens``."""
    if n is None:
        n = gens[0].n
    prods = _AlgebraProducts(gens, n).of_degree(d)
    return GradedSubspace.span_of(prods, d, n=n, kind="scalar")


def module_slice(equivariant_gens: Sequence[VecPoly], invariant_gens: Sequence[ScalarPoly],
                 k: int, n: int | None = None) -> GradedSubspace:
    """Degree-k slice of the module generated by ``equivariant_gens`` over the
    algebra generated by ``invariant_gens``."""
    if n is None:
        if not equivariant_gens:
            raise SpaceError("cannot infer n")
        n = equivariant_gens[0].n
    alg = _AlgebraProducts(invariant_gens, n)
    vecs = []
    for g in equivariant_gens:
        dg = _homogeneous_degree(g)
        if dg < 0 or dg > k:
            continue
        for m in alg.of_degree(k - dg):
            vecs.append(to_coords(g.scale_by(m), k))
    return GradedSubspace.span("vector", n, k, vecs)


def hilbert_basis_sigma(G: FiniteSignedGroup, u_list: Sequence[ScalarPoly], dmax: int | None = None) -> list[ScalarPoly]:
    """Invariant generators ``{R(u_i)} + {S(u_i) S(u_j)}`` with redundant
    members pruned greedily by degree.

    A candidate is dropped when each of its homogeneous parts of degree
    ``<= dmax`` already lies in the algebra spanned by the generators kept so
    far.  ``dmax`` defaults to the group order (Noether's bound).
    """
    if G.sigma_trivial:
        raise GroupError("sigma is trivial: Reynolds splitting needs a reversing element")
    for u in u_list:
        bad = invariance_violation(G.plus_subgroup, u)
        if bad is not None:
            raise GroupError(f"{u} is not invariant under the symmetry subgroup", bad)
    if dmax is None:
        dmax = G.order
    n = G.n
    rs = [reynolds_R(G, u) for u in u_list]
    ss = [reynolds_S(G, u) for u in u_list]
    candidates = [r for r in rs if r]
    for i in range(len(ss)):
        for j in range(i, len(ss)):
            prod = ss[i] * ss[j]
            if prod:
                candidates.append(prod)
    # stable sort: increasing degree, then input order
    order = sorted(range(len(candidates)), key=lambda t: (candidates[t].degree, t))
    kept: list[ScalarPoly] = []
    for t in order:
        c = candidates[t]
        degs = sorted({sum(m) for m in c.as_dict()})
        if degs[-1] > dmax:
            kept.append(c)
            continue
        redundant = True
        for d in degs:
            part = c.homogeneous_part(d)
            if d == 0:
                continue
            homog = [g for g in kept if g.is_homogeneous()]
            if not homog or not algebra_span(homog, d, n).contains(part):
                redundant = False
                break
        if not redundant:
            kept.append(c)
    return kept


# -- product of factors acting on disjoint variable blocks --------------------------------

@dataclass(frozen=True)
class FactorGenerators:
    """Generators for one factor, living on the variables ``variables`` (0-based
    indices into the product space)."""

    variables: tuple[int, ...]
    invariants: tuple[ScalarPoly, ...] = ()
    equivariants: tuple[VecPoly, ...] = ()


def _lift_scalar(f: ScalarPoly, variables: Sequence[int], n: int) -> ScalarPoly:
    out = {}
    for m, c in f.as_dict().items():
        e = [0] * n
        for v, x in zip(variables, m):
            e[v] = x
        out[tuple(e)] = c
    return ScalarPoly(n, out)


def _lift_vector(g: VecPoly, variables: Sequence[int], n: int) -> VecPoly:
    comps = [ScalarPoly.zero(n) for _ in range(n)]
    for v, comp in zip(variables, g.components):
        comps[v] = _lift_scalar(comp, variables, n)
    return VecPoly(comps)


def product_generators(first: FactorGenerators, second: FactorGenerators,
                       n: int | None = None) -> tuple[list[ScalarPoly], list[VecPoly]]:
    """Invariant and equivariant generators of a product acting diagonally on
    ``V x W``: lifted invariants of both factors and block-padded
    equivariants."""
    overlap = set(first.variables) & set(second.variables)
    if overlap:
        raise SpaceError(f"variable blocks overlap on {sorted(v + 1 for v in overlap)}")
    if n is None:
        n = len(first.variables) + len(second.variables)
    for fac in (first, second):
        if any(v >= n or v < 0 for v in fac.variables):
            raise SpaceError("variable index outside the product space")
        m = len(fac.variables)
        for p in (*fac.invariants, *fac.equivariants):
            if p.n != m:
                raise SpaceError(f"generator {p} does not live on {m} variables")
    invs = [_lift_scalar(u, fac.variables, n) for fac in (first, second) for u in fac.invariants]
    eqvs = [_lift_vector(g, fac.variables, n) for fac in (first, second) for g in fac.equivariants]
    return invs, eqvs
