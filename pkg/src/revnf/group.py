"""Finite signed matrix groups and their actions on polynomials.

A signed group is a finite matrix group together with a character
``sigma : G -> {+1, -1}``; elements with sign ``-1`` are reversing
symmetries.  Polynomials are acted on by

* ``g . f (x) = f(g x)``                 (scalar functions)
* ``g * p (x) = g^{-1} p(g x)``          (polynomial maps)

The averages over the group are finite sums, normalized by the group order.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from .poly import Matrix, PolyError, ScalarPoly, VecPoly, postcompose_linear

MatrixT = tuple[tuple[Fraction, ...], ...]


class GroupError(ValueError):
    """Raised for ill-formed groups or violated preconditions.

    ``element`` carries the offending group element when one is known.
    """

    def __init__(self, message: str, element: SignedElement | None = None):
        super().__init__(message)
        self.element = element


def as_matrix(A: Matrix) -> MatrixT:
    n = len(A)
    if any(len(row) != n for row in A):
        raise GroupError("matrix is not square")
    return tuple(tuple(Fraction(x) for x in row) for row in A)


def identity_matrix(n: int) -> MatrixT:
    return tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n))


def mat_mul(A: MatrixT, B: MatrixT) -> MatrixT:
    n = len(A)
    Bt = tuple(zip(*B))
    return tuple(tuple(sum((a * b for a, b in zip(A[i], Bt[j]) if a and b), Fraction(0))
                       for j in range(n)) for i in range(n))


def mat_scale(c, A: MatrixT) -> MatrixT:
    return tuple(tuple(c * x for x in row) for row in A)


def transpose(A: Matrix) -> MatrixT:
    return tuple(tuple(Fraction(x) for x in col) for col in zip(*A))


def mat_inverse(A: MatrixT) -> MatrixT:
    """Exact Gauss-Jordan inverse; raises on a singular matrix."""
    n = len(A)
    M = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(A)]
    for c in range(n):
        piv = next((r for r in range(c, n) if M[r][c]), None)
        if piv is None:
            raise GroupError("singular matrix")
        M[c], M[piv] = M[piv], M[c]
        inv = 1 / M[c][c]
        M[c] = [x * inv for x in M[c]]
        for r in range(n):
            if r != c and M[r][c]:
                f = M[r][c]
                M[r] = [x - f * y for x, y in zip(M[r], M[c])]
    return tuple(tuple(row[n:]) for row in M)


@dataclass(frozen=True)
class SignedElement:
    matrix: MatrixT
    sign: int = 1

    def __post_init__(self):
        object.__setattr__(self, "matrix", as_matrix(self.matrix))
        if self.sign not in (1, -1):
            raise GroupError(f"sign must be +1 or -1, got {self.sign}")

    @property
    def n(self) -> int:
        return len(self.matrix)

    def __mul__(self, other: SignedElement) -> SignedElement:
        return SignedElement(mat_mul(self.matrix, other.matrix), self.sign * other.sign)

    @property
    def inverse_matrix(self) -> MatrixT:
        return _inverse_cached(self.matrix)

    def inverse(self) -> SignedElement:
        return SignedElement(self.inverse_matrix, self.sign)


_INVERSES: dict[MatrixT, MatrixT] = {}


def _inverse_cached(A: MatrixT) -> MatrixT:
    inv = _INVERSES.get(A)
    if inv is None:
        inv = _INVERSES[A] = mat_inverse(A)
    return inv


@dataclass(frozen=True)
class FiniteSignedGroup:
    elements: tuple[SignedElement, ...]
    generators: tuple[SignedElement, ...]
    plus_subgroup: tuple[SignedElement, ...] = field(init=False)
    delta: SignedElement | None = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "plus_subgroup", tuple(g for g in self.elements if g.sign == 1))
        object.__setattr__(self, "delta", next((g for g in self.elements if g.sign == -1), None))

    @property
    def n(self) -> int:
        return self.elements[0].n

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def sigma_trivial(self) -> bool:
        return self.delta is None

    def __len__(self) -> int:
        return len(self.elements)

    def with_delta(self, delta: SignedElement) -> FiniteSignedGroup:
        """Same group with another reversing element designated."""
        if delta not in self.elements or delta.sign != -1:
            raise GroupError("delta must be a reversing element of the group", delta)
        g = FiniteSignedGroup(self.elements, self.generators)
        object.__setattr__(g, "delta", delta)
        return g

    def plus_group(self) -> FiniteSignedGroup:
        """``Gamma_+`` as a signed group with trivial sign."""
        return FiniteSignedGroup(self.plus_subgroup, self.plus_subgroup)


def close_group(generators: Iterable[SignedElement], max_order: int = 64) -> FiniteSignedGroup:
    """Breadth-first closure of ``generators`` under products.

    Elements are listed in discovery order (identity first), which also fixes
    the choice of ``delta`` as the first reversing element found.
    """
    gens = tuple(generators)
    if max_order < 1:
        raise GroupError("max_order must be >= 1")
    if not gens:
        raise GroupError("at least one generator is required")
    n = gens[0].n
    for g in gens:
        if g.n != n:
            raise GroupError("generators act on spaces of different dimension", g)
        try:
            g.inverse_matrix
        except GroupError:
            raise GroupError("singular generator matrix", g) from None
    ident = SignedElement(identity_matrix(n), 1)
    seen: dict[MatrixT, int] = {ident.matrix: 1}
    order = [ident]
    queue = deque([ident])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = x * g
            s = seen.get(y.matrix)
            if s is None:
                if len(order) >= max_order:
                    raise GroupError(f"not finite within bound {max_order}")
                seen[y.matrix] = y.sign
                order.append(y)
                queue.append(y)
            elif s != y.sign:
                raise GroupError("sigma is not a homomorphism: an element receives both signs", y)
    if len(order) > max_order:
        raise GroupError(f"not finite within bound {max_order}")
    return FiniteSignedGroup(tuple(order), gens)


def trivial_group(n: int) -> FiniteSignedGroup:
    return close_group([SignedElement(identity_matrix(n), 1)], 1)


# -- actions ------------------------------------------------------------------

def _check_dim(g: SignedElement, n: int) -> None:
    if g.n != n:
        raise GroupError(f"element acts on R^{g.n}, polynomial lives on R^{n}", g)


def act_odot(g: SignedElement, f: ScalarPoly) -> ScalarPoly:
    """``x -> f(g x)``."""
    _check_dim(g, f.n)
    return f.precompose(g.matrix)


def act_star(g: SignedElement, p: VecPoly) -> VecPoly:
    """``x -> g^{-1} p(g x)``."""
    _check_dim(g, p.n)
    return postcompose_linear(g.inverse_matrix, p.precompose(g.matrix))


# -- membership checks (return the first violating element, or None) ---------

def invariance_violation(elements: Iterable[SignedElement], f: ScalarPoly, twisted: bool = False):
    for g in elements:
        target = f.scale(g.sign) if twisted else f
        if act_odot(g, f) != target:
            return g
    return None


def equivariance_violation(elements: Iterable[SignedElement], p: VecPoly, twisted: bool = False):
    for g in elements:
        lhs = act_star(g, p)
        if twisted and g.sign == -1:
            lhs = -lhs
        if lhs != p:
            return g
    return None


def is_invariant(G: FiniteSignedGroup, f: ScalarPoly) -> bool:
    return invariance_violation(G.generators, f) is None


def is_anti_invariant(G: FiniteSignedGroup, f: ScalarPoly) -> bool:
    return invariance_violation(G.generators, f, twisted=True) is None


def is_equivariant(G: FiniteSignedGroup, p: VecPoly) -> bool:
    return equivariance_violation(G.generators, p) is None


def is_rev_equivariant(G: FiniteSignedGroup, p: VecPoly) -> bool:
    return equivariance_violation(G.generators, p, twisted=True) is None


# -- Reynolds operators and the projection pi ------------------------------------

def _require_delta(G: FiniteSignedGroup) -> SignedElement:
    if G.delta is None:
        raise GroupError("sigma is trivial: no reversing element")
    return G.delta


def _require_plus_invariant(G: FiniteSignedGroup, f: ScalarPoly) -> None:
    bad = invariance_violation(G.plus_subgroup, f)
    if bad is not None:
        raise GroupError("polynomial is not invariant under the symmetry subgroup", bad)


def _require_plus_equivariant(G: FiniteSignedGroup, p: VecPoly) -> None:
    bad = equivariance_violation(G.plus_subgroup, p)
    if bad is not None:
        raise GroupError("map is not equivariant under the symmetry subgroup", bad)


def reynolds_R(G: FiniteSignedGroup, f: ScalarPoly) -> ScalarPoly:
    """``(f + delta . f) / 2`` on ``Gamma_+``-invariants; lands in the invariants."""
    d = _require_delta(G)
    _require_plus_invariant(G, f)
    return (f + act_odot(d, f)).scale(Fraction(1, 2))


def reynolds_S(G: FiniteSignedGroup, f: ScalarPoly) -> ScalarPoly:
    """``(f - delta . f) / 2``; lands in the anti-invariants."""
    d = _require_delta(G)
    _require_plus_invariant(G, f)
    return (f - act_odot(d, f)).scale(Fraction(1, 2))


def vec_R(G: FiniteSignedGroup, p: VecPoly) -> VecPoly:
    d = _require_delta(G)
    _require_plus_equivariant(G, p)
    return (p + act_star(d, p)).scale(Fraction(1, 2))


def vec_S(G: FiniteSignedGroup, p: VecPoly) -> VecPoly:
    d = _require_delta(G)
    _require_plus_equivariant(G, p)
    return (p - act_star(d, p)).scale(Fraction(1, 2))


def project_pi(G: FiniteSignedGroup, p: VecPoly) -> VecPoly:
    """Signed group average onto the reversible-equivariants.

    ``pi(p) = (avg_{t in G+} t*p - avg_{t in G+} (delta t)*p) / 2``.
    """
    d = _require_delta(G)
    acc = VecPoly.zero(p.n)
    for t in G.plus_subgroup:
        acc = acc + act_star(t, p) - act_star(d * t, p)
    return acc.scale(Fraction(1, 2 * len(G.plus_subgroup)))


def average_equivariant(G: FiniteSignedGroup, p: VecPoly) -> VecPoly:
    """Plain average over the whole group; lands in the equivariants."""
    acc = VecPoly.zero(p.n)
    for g in G.elements:
        acc = acc + act_star(g, p)
    return acc.scale(Fraction(1, len(G.elements)))


def element(matrix: Matrix, sign: int = 1) -> SignedElement:
    return SignedElement(as_matrix(matrix), sign)


def diag(*entries) -> MatrixT:
    n = len(entries)
    return tuple(tuple(Fraction(entries[i]) if i == j else Fraction(0) for j in range(n))
                 for i in range(n))


__all__ = [
    "GroupError", "SignedElement", "FiniteSignedGroup", "close_group", "trivial_group",
    "act_odot", "act_star", "reynolds_R", "reynolds_S", "vec_R", "vec_S", "project_pi",
    "average_equivariant", "is_invariant", "is_anti_invariant", "is_equivariant",
    "is_rev_equivariant", "element", "diag", "identity_matrix", "mat_mul", "mat_inverse",
    "transpose", "PolyError",
]
