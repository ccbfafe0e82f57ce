"""The homological operator ``Ad_L(p) = Dp . Lx - L p`` and its graded pieces.

``ker Ad_{L^t}`` on each degree slice is the space of maps equivariant under
the one-parameter group generated by ``L^t``; it is never enumerated as a
group.  Kernels and images are computed independently and their directness
is checked exactly rather than assumed from an inner product.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd

from . import linalg
from .group import FiniteSignedGroup, MatrixT, as_matrix, mat_mul, mat_scale, transpose
from .poly import (
    Matrix, ScalarPoly, VecPoly, jacobian_times, monomial_basis, monomial_index, postcompose_linear,
    slice_dim,
)
from .spaces import GradedSubspace, direct_sum_report


class HomologicalError(ValueError):
    pass


@dataclass(frozen=True)
class ResonantDescriptor:
    n1: int
    n2: int
    mode: str = "resonant"
    surrogate_prime: int | None = None
    valid_to_degree: int | None = None

    def to_dict(self) -> dict:
        return {"n1": self.n1, "n2": self.n2, "mode": self.mode,
                "surrogate_prime": self.surrogate_prime, "valid_to_degree": self.valid_to_degree}


@dataclass(frozen=True)
class LinearPart:
    matrix: MatrixT
    descriptor: ResonantDescriptor | None = None

    def __post_init__(self):
        object.__setattr__(self, "matrix", as_matrix(self.matrix))

    @property
    def n(self) -> int:
        return len(self.matrix)

    def transpose(self) -> LinearPart:
        return LinearPart(transpose(self.matrix), self.descriptor)

    def check_degree(self, k: int) -> None:
        d = self.descriptor
        if d is not None and d.valid_to_degree is not None and k > d.valid_to_degree:
            raise HomologicalError(
                f"nonresonant surrogate omega=(1,{d.surrogate_prime}) is only valid up to "
                f"degree {d.valid_to_degree}; rebuild with a larger kmax for degree {k}")

    def as_field(self) -> VecPoly:
        return VecPoly.linear(self.matrix)

    def to_dict(self) -> dict:
        from .poly import format_coef
        out = {"matrix": [[format_coef(x) for x in row] for row in self.matrix]}
        if self.descriptor is not None:
            out["resonant"] = self.descriptor.to_dict()
        return out


def linear_part(matrix: Matrix) -> LinearPart:
    return LinearPart(as_matrix(matrix))


def ad(L: LinearPart, p: VecPoly) -> VecPoly:
    """``Ad_L(p)(x) = Dp(x) L x - L p(x)``."""
    if p.n != L.n:
        raise HomologicalError(f"map on R^{p.n} vs L on R^{L.n}")
    return jacobian_times(p, L.as_field()) - postcompose_linear(L.matrix, p)


def lie_derivative(L: LinearPart, f: ScalarPoly) -> ScalarPoly:
    """``Df(x) L x``; its kernel is the invariants of ``exp(sL)``."""
    lx = L.as_field()
    acc = ScalarPoly.zero(f.n)
    for j in range(f.n):
        d = f.diff(j)
        if d and lx[j]:
            acc = acc + d * lx[j]
    return acc


# -- matrices on the degree-k slice -------------------------------------------------

def _ad_column(L: MatrixT, i: int, m: tuple[int, ...], index, size: int) -> dict[int, Fraction]:
    n = len(L)
    col: dict[int, Fraction] = {}
    # Dp . Lx for p = m e_i lands in component i
    off = i * size
    for j in range(n):
        e = m[j]
        if not e:
            continue
        row = L[j]
        for l in range(n):
            a = row[l]
            if not a:
                continue
            mm = list(m)
            mm[j] -= 1
            mm[l] += 1
            t = off + index[tuple(mm)]
            v = col.get(t, 0) + e * a
            if v:
                col[t] = v
            else:
                col.pop(t, None)
    # - L p
    mi = index[m]
    for r in range(n):
        a = L[r][i]
        if not a:
            continue
        t = r * size + mi
        v = col.get(t, 0) - a
        if v:
            col[t] = v
        else:
            col.pop(t, None)
    return col


def _lie_column(L: MatrixT, m: tuple[int, ...], index) -> dict[int, Fraction]:
    n = len(L)
    col: dict[int, Fraction] = {}
    for j in range(n):
        e = m[j]
        if not e:
            continue
        for l in range(n):
            a = L[j][l]
            if not a:
                continue
            mm = list(m)
            mm[j] -= 1
            mm[l] += 1
            t = index[tuple(mm)]
            v = col.get(t, 0) + e * a
            if v:
                col[t] = v
            else:
                col.pop(t, None)
    return col


@dataclass(frozen=True)
class HomologicalMatrix:
    """``Ad_L`` restricted to the degree-k slice, stored by sparse columns."""

    k: int
    n: int
    columns: tuple[dict, ...]

    @property
    def shape(self) -> tuple[int, int]:
        d = slice_dim(self.n, self.k)
        return (d, d)

    def to_dense(self) -> list[list[Fraction]]:
        rows, cols = self.shape
        out = [[Fraction(0)] * cols for _ in range(rows)]
        for j, col in enumerate(self.columns):
            for i, c in col.items():
                out[i][j] = c
        return out

    def apply(self, coords: dict) -> dict:
        return linalg.apply_combination(self.columns, coords)


@lru_cache(maxsize=256)
def ad_matrix(L: LinearPart, k: int) -> HomologicalMatrix:
    if k < 0:
        raise HomologicalError("degree must be >= 0")
    n = L.n
    basis = monomial_basis(n, k)
    index = monomial_index(n, k)
    size = len(basis)
    cols = tuple(_ad_column(L.matrix, i, m, index, size) for i in range(n) for m in basis)
    return HomologicalMatrix(k, n, cols)


@lru_cache(maxsize=256)
def lie_matrix(L: LinearPart, k: int) -> tuple[dict, ...]:
    n = L.n
    index = monomial_index(n, k)
    return tuple(_lie_column(L.matrix, m, index) for m in monomial_basis(n, k))


@lru_cache(maxsize=256)
def kernel_deg(L: LinearPart, k: int) -> GradedSubspace:
    """``ker Ad_L`` on the degree-k slice."""
    return GradedSubspace("vector", L.n, k, tuple(linalg.nullspace(ad_matrix(L, k).columns)))


@lru_cache(maxsize=256)
def image_deg(L: LinearPart, k: int) -> GradedSubspace:
    """``Ad_L`` of the full degree-k slice."""
    return GradedSubspace("vector", L.n, k, tuple(linalg.column_space(ad_matrix(L, k).columns)))


def _apply_to_subspace(M: HomologicalMatrix, W: GradedSubspace) -> list[dict]:
    return [M.apply(v) for v in W.basis]


def kernel_on(L: LinearPart, W: GradedSubspace) -> GradedSubspace:
    """``ker Ad_L`` intersected with ``W``, computed on ``W``'s coordinates."""
    M = ad_matrix(L, W.k)
    images = _apply_to_subspace(M, W)
    coeffs = linalg.nullspace(images)
    vecs = [linalg.apply_combination(W.basis, c) for c in coeffs]
    return GradedSubspace.span("vector", W.n, W.k, vecs)


def image_on(L: LinearPart, W: GradedSubspace) -> GradedSubspace:
    """``Ad_L(W)``."""
    M = ad_matrix(L, W.k)
    return GradedSubspace.span("vector", W.n, W.k, _apply_to_subspace(M, W))


@lru_cache(maxsize=256)
def s_equivariants_deg(L: LinearPart, k: int) -> GradedSubspace:
    """Degree-k maps equivariant under ``exp(s L^t)``: ``ker Ad_{L^t}``."""
    L.check_degree(k)
    return kernel_deg(L.transpose(), k)


@lru_cache(maxsize=256)
def s_invariants_deg(L: LinearPart, k: int) -> GradedSubspace:
    """Degree-k functions invariant under ``exp(s L^t)``."""
    L.check_degree(k)
    Lt = L.transpose()
    return GradedSubspace("scalar", L.n, k, tuple(linalg.nullspace(lie_matrix(Lt, k))))


def elphick_check(L: LinearPart, k: int) -> dict:
    """``P^k = ker Ad_{L^t} + Ad_L(P^k)``, direct."""
    K = s_equivariants_deg(L, k)
    I = image_deg(L, k)
    r = direct_sum_report([K, I])
    whole = slice_dim(L.n, k)
    return {"k": k, "slice_dim": whole, "kernel_dim": K.dim, "image_dim": I.dim,
            "sum_dim": r["sum_dim"], "direct": r["direct"],
            "pass": r["direct"] and r["sum_dim"] == whole}


# -- the resonant linear part ----------------------------------------------------------

def _next_prime_above(m: int) -> int:
    p = m + 1
    while p < 2 or any(p % q == 0 for q in range(2, int(p ** 0.5) + 1)):
        p += 1
    return p


def resonant_matrix(w1, w2) -> MatrixT:
    """Nilpotent 2x2 block followed by two rotation blocks with frequencies
    ``w1``, ``w2``, in coordinates ``(x1, x2, Re z1, Im z1, Re z2, Im z2)``."""
    z = Fraction(0)
    M = [[z] * 6 for _ in range(6)]
    M[0][1] = Fraction(1)
    M[2][3], M[3][2] = Fraction(w1), -Fraction(w1)
    M[4][5], M[5][4] = Fraction(w2), -Fraction(w2)
    return as_matrix(M)


def build_resonant_L(n1: int, n2: int, mode: str = "resonant", kmax: int | None = None) -> LinearPart:
    if n1 < 1 or n2 < 1:
        raise HomologicalError("n1 and n2 must be positive integers")
    if mode == "resonant":
        g = gcd(n1, n2)
        if g != 1:
            raise HomologicalError(
                f"(n1, n2) = ({n1}, {n2}) are not coprime; reduce the ratio to "
                f"({n1 // g}, {n2 // g})")
        return LinearPart(resonant_matrix(n1, n2), ResonantDescriptor(n1, n2, "resonant"))
    if mode in ("nonresonant", "nonresonant-surrogate"):
        if kmax is None or kmax < 2:
            raise HomologicalError("the nonresonant surrogate needs kmax >= 2")
        p = _next_prime_above(kmax + 1)
        return LinearPart(resonant_matrix(1, p),
                          ResonantDescriptor(n1, n2, "nonresonant-surrogate", p, kmax))
    raise HomologicalError(f"unknown mode {mode!r}")


def nilpotent_block() -> LinearPart:
    return linear_part([[0, 1], [0, 0]])


# -- compatibility with the signed group --------------------------------------------

def validate_compatibility(L: LinearPart, G: FiniteSignedGroup) -> dict:
    """Per generator: ``g L g^-1 = sigma(g) L`` and the same for ``L^t``."""
    if G.n != L.n:
        raise HomologicalError(f"group acts on R^{G.n}, L on R^{L.n}")
    Lt = transpose(L.matrix)
    items = []
    for idx, g in enumerate(G.generators):
        ginv = g.inverse_matrix
        ok_l = mat_mul(mat_mul(g.matrix, L.matrix), ginv) == mat_scale(g.sign, L.matrix)
        ok_t = mat_mul(mat_mul(g.matrix, Lt), ginv) == mat_scale(g.sign, Lt)
        items.append({"generator": idx, "sign": g.sign, "L": ok_l, "Lt": ok_t, "pass": ok_l and ok_t})
    failing = [it["generator"] for it in items if not it["pass"]]
    return {"pass": not failing, "generators": items, "failing": failing}


def require_compatible(L: LinearPart, G: FiniteSignedGroup) -> None:
    rep = _compat_cached(L, G)
    if not rep["pass"]:
        idx = rep["failing"][0]
        from .group import GroupError
        raise GroupError(
            f"L is incompatible with generator {idx}: g L g^-1 != sigma(g) L",
            G.generators[idx])


@lru_cache(maxsize=64)
def _compat_cached(L: LinearPart, G: FiniteSignedGroup) -> dict:
    return validate_compatibility(L, G)
