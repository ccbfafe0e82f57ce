"""Normal forms of reversible-equivariant vector fields.

At degree k the retained terms live in the complement

    Q^k(S x| G) = ker Ad_{L^t}  &  {reversible-equivariant degree-k maps}

and everything else is removed with a near-identity change ``x = y + xi(y)``
whose generator ``xi`` is an equivariant degree-k map.  With trivial sign
character the complement falls back to the classical equivariant one.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from . import linalg
from .group import FiniteSignedGroup, GroupError, equivariance_violation, project_pi, trivial_group
from .homological import (
    LinearPart, ad, ad_matrix, image_deg, image_on, kernel_on, require_compatible,
    s_equivariants_deg, s_invariants_deg,
)
from .poly import (
    VecPoly, compose_truncated, from_coords, invert_near_identity, jacobian_times, linear_part,
    to_coords,
)
from .spaces import (
    GradedSubspace, direct_sum_report, equivariants_deg, intersect, invariants_deg,
    rev_equivariants_deg,
)


class NormalFormError(ValueError):
    pass


# -- complements --------------------------------------------------------------------

@lru_cache(maxsize=256)
def target_space(G: FiniteSignedGroup, k: int) -> GradedSubspace:
    """Reversible-equivariants, or equivariants when sigma is trivial."""
    return equivariants_deg(G, k) if G.sigma_trivial else rev_equivariants_deg(G, k)


@lru_cache(maxsize=256)
def complement_deg(L: LinearPart, G: FiniteSignedGroup, k: int) -> GradedSubspace:
    """Degree-k normal-form complement.

    Computed as the kernel of ``Ad_{L^t}`` restricted to the target space,
    which is the same subspace as the intersection of the two but solves a
    much smaller system.
    """
    require_compatible(L, G)
    L.check_degree(k)
    return kernel_on(L.transpose(), target_space(G, k))


def complement_by_intersection(L: LinearPart, G: FiniteSignedGroup, k: int) -> GradedSubspace:
    require_compatible(L, G)
    return intersect(s_equivariants_deg(L, k), target_space(G, k))


def semidirect_invariants_deg(L: LinearPart, G: FiniteSignedGroup, k: int) -> GradedSubspace:
    """Functions invariant under both ``exp(s L^t)`` and ``G``."""
    return intersect(s_invariants_deg(L, k), invariants_deg(G, k))


@lru_cache(maxsize=256)
def equivariant_image(L: LinearPart, G: FiniteSignedGroup, k: int) -> GradedSubspace:
    """``Ad_L`` applied to the degree-k equivariants."""
    return image_on(L, equivariants_deg(G, k))


def verify_theorem_4_4(L: LinearPart, G: FiniteSignedGroup, k: int) -> dict:
    """Check that the reversible-equivariants split as complement plus the
    image of the equivariants, with zero intersection."""
    compat = require_compatible_report(L, G)
    if not compat["pass"]:
        return {"k": k, "pass": False, "compatible": False}
    Q = target_space(G, k)
    C = complement_deg(L, G, k)
    I = equivariant_image(L, G, k)
    r = direct_sum_report([C, I], Q)
    return {"k": k, "rev_equivariant_dim": Q.dim, "complement_dim": C.dim, "image_dim": I.dim,
            "sum_dim": r["sum_dim"], "dims_add_up": C.dim + I.dim == Q.dim,
            "direct": r["direct"], "equal": r["equal"], "pass": r["pass"]}


def require_compatible_report(L: LinearPart, G: FiniteSignedGroup) -> dict:
    from .homological import _compat_cached
    return _compat_cached(L, G)


# -- problem description ----------------------------------------------------------------

@dataclass(frozen=True)
class ProblemSpec:
    n: int
    L: LinearPart
    group: FiniteSignedGroup
    kmax: int
    field: VecPoly | None = None
    options: tuple = ()

    def validate(self) -> None:
        if self.L.n != self.n or self.group.n != self.n:
            raise NormalFormError(f"dimension mismatch: n={self.n}, L on R^{self.L.n}, group on R^{self.group.n}")
        if self.kmax < 0:
            raise NormalFormError("kmax must be >= 0")
        require_compatible(self.L, self.group)
        X = self.field
        if X is None:
            return
        if X.n != self.n:
            raise NormalFormError(f"vector field lives on R^{X.n}, expected R^{self.n}")
        zero = (0,) * self.n
        if any(c.coeff(zero) for c in X):
            raise NormalFormError("vector field has a nonzero constant term (X(0) != 0)")
        if linear_part(X) != [list(r) for r in self.L.matrix]:
            raise NormalFormError("linear part mismatch: degree-1 part of the field differs from L")
        bad = field_symmetry_violation(self.group, X, self.kmax)
        if bad is not None:
            k, g = bad
            kind = "equivariant" if self.group.sigma_trivial else "reversible-equivariant"
            raise GroupError(f"vector field is not {kind} at degree {k}", g)


def field_symmetry_violation(G: FiniteSignedGroup, X: VecPoly, kmax: int):
    """First ``(degree, element)`` where ``X`` breaks its symmetry, or None."""
    twisted = not G.sigma_trivial
    for k in range(0, kmax + 1):
        part = X.homogeneous_part(k)
        if part.is_zero():
            continue
        g = equivariance_violation(G.generators, part, twisted=twisted)
        if g is not None:
            return k, g
    return None


@dataclass(frozen=True)
class NormalFormStep:
    k: int
    g_k: VecPoly
    xi_k: VecPoly
    residual_check: bool
    complement_dim: int


@dataclass(frozen=True)
class NormalFormResult:
    spec: ProblemSpec
    steps: tuple[NormalFormStep, ...]
    normal_field: VecPoly
    coordinate_change: VecPoly = field(repr=False)


# -- the normalization recursion ------------------------------------------------------

def _step_system(L: LinearPart, G: FiniteSignedGroup, k: int):
    C = complement_deg(L, G, k)
    P = equivariants_deg(G, k)
    M = ad_matrix(L, k)
    columns = list(C.basis) + [M.apply(v) for v in P.basis]
    return C, P, columns


def change_of_coordinates(field: VecPoly, xi: VecPoly, kmax: int) -> VecPoly:
    """The field in ``y`` after substituting ``x = y + xi(y)``, truncated.

    ``Y = (D Psi . X) o Phi`` with ``Phi = I + xi`` and ``Psi`` its inverse.
    """
    n = field.n
    phi = VecPoly.identity(n) + xi
    psi = invert_near_identity(phi, kmax)
    pushed = jacobian_times(psi, field).truncate(kmax)
    return compose_truncated(pushed, phi, kmax)


def conjugacy_witness(old: VecPoly, new: VecPoly, xi: VecPoly, kmax: int) -> bool:
    """``D(I + xi) . new == old o (I + xi)`` through degree ``kmax``."""
    phi = VecPoly.identity(old.n) + xi
    lhs = jacobian_times(phi, new).truncate(kmax)
    rhs = compose_truncated(old.truncate(kmax), phi, kmax)
    return lhs == rhs


def normalize_step(field: VecPoly, L: LinearPart, G: FiniteSignedGroup, k: int,
                   kmax: int) -> tuple[NormalFormStep, VecPoly]:
    """Split the degree-k part as ``g_k + Ad_L(xi_k)`` and remove ``Ad_L(xi_k)``.

    ``xi_k`` is only determined modulo ``ker Ad_L``; the solver returns the
    solution supported on pivot columns (free coordinates set to zero).
    """
    n = field.n
    Xk = field.homogeneous_part(k)
    C, P, columns = _step_system(L, G, k)
    rhs = to_coords(Xk, k)
    sol = linalg.solve(columns, rhs)
    if sol is None:
        raise NormalFormError(
            f"degree {k}: the field's degree-{k} part is not complement + Ad_L(equivariant); "
            "the field is not reversible-equivariant or L is incompatible with the group")
    nc = C.dim
    g = linalg.apply_combination(C.basis, {j: a for j, a in sol.items() if j < nc})
    xi = linalg.apply_combination(P.basis, {j - nc: a for j, a in sol.items() if j >= nc})
    g_k = from_coords(g, n, k)
    xi_k = from_coords(xi, n, k)
    residual = (Xk - ad(L, xi_k)) == g_k
    new_field = field if xi_k.is_zero() else change_of_coordinates(field, xi_k, kmax)
    return NormalFormStep(k, g_k, xi_k, residual, C.dim), new_field


def normal_form(spec: ProblemSpec, progress=None) -> NormalFormResult:
    spec.validate()
    n = spec.n
    X = spec.field if spec.field is not None else spec.L.as_field()
    X = X.truncate(spec.kmax)
    change = VecPoly.identity(n)
    steps = []
    for k in range(2, spec.kmax + 1):
        step, X = normalize_step(X, spec.L, spec.group, k, spec.kmax)
        steps.append(step)
        if not step.xi_k.is_zero():
            change = compose_truncated(change, VecPoly.identity(n) + step.xi_k, spec.kmax)
        if progress is not None:
            progress(step)
    return NormalFormResult(spec, tuple(steps), X, change)


# -- projection-based cross-checks ------------------------------------------------------

def project_subspace(G: FiniteSignedGroup, W: GradedSubspace) -> GradedSubspace:
    """``pi(W)`` as a canonical subspace."""
    images = [to_coords(project_pi(G, e), W.k) for e in W.elements()]
    return GradedSubspace.span("vector", W.n, W.k, images)


def lemma_4_6_check(L: LinearPart, G: FiniteSignedGroup, k: int) -> dict:
    lhs = project_subspace(G, s_equivariants_deg(L, k))
    rhs = complement_deg(L, G, k)
    return {"k": k, "projected_dim": lhs.dim, "complement_dim": rhs.dim, "pass": lhs == rhs}


def lemma_4_7_check(L: LinearPart, G: FiniteSignedGroup, k: int) -> dict:
    lhs = project_subspace(G, image_deg(L, k))
    rhs = equivariant_image(L, G, k)
    return {"k": k, "projected_dim": lhs.dim, "image_dim": rhs.dim, "pass": lhs == rhs}


def default_group(n: int) -> FiniteSignedGroup:
    return trivial_group(n)


__all__ = [
    "NormalFormError", "ProblemSpec", "NormalFormStep", "NormalFormResult", "complement_deg",
    "complement_by_intersection", "semidirect_invariants_deg", "equivariant_image",
    "verify_theorem_4_4", "normalize_step", "normal_form", "conjugacy_witness",
    "change_of_coordinates", "project_subspace", "lemma_4_6_check", "lemma_4_7_check",
    "field_symmetry_violation", "target_space",
]
