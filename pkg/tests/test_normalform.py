import random

import pytest

from revnf import golden
from revnf.group import GroupError, is_equivariant, is_rev_equivariant, trivial_group
from revnf.homological import ad, build_resonant_L, nilpotent_block, s_equivariants_deg
from revnf.normalform import (
    NormalFormError, ProblemSpec, change_of_coordinates, complement_by_intersection,
    complement_deg, conjugacy_witness, field_symmetry_violation, normal_form, normalize_step,
    semidirect_invariants_deg, target_space, verify_theorem_4_4,
)
from revnf.poly import ScalarPoly, VecPoly
from revnf.spaces import GradedSubspace, equivariants_deg, module_slice, rev_equivariants_deg
from revnf.verify import random_element

L12 = build_resonant_L(1, 2)
L11 = build_resonant_L(1, 1)
G_PHI = golden.z2_group()


def test_nilpotent_complement_with_trivial_group():
    x1, x2 = ScalarPoly.var(2, 0), ScalarPoly.var(2, 1)
    C = complement_deg(nilpotent_block(), trivial_group(2), 2)
    expected = GradedSubspace.span_of([VecPoly([x1 ** 2, x1 * x2]), VecPoly([ScalarPoly.zero(2), x1 ** 2])], 2)
    assert C == expected == s_equivariants_deg(nilpotent_block(), 2)


def test_complement_for_phi_matches_the_tabulated_module():
    case = golden.golden_case("z2", 1, 1)
    for k in (2, 3):
        assert complement_deg(L11, G_PHI, k) == module_slice(list(case.generators), list(case.invariants), k, n=6)


@pytest.mark.parametrize("k", [0, 1, 2, 3, 4])
def test_complement_equals_explicit_intersection(k):
    for G in (G_PHI, golden.z2xz2_group(-1, 1, -1)):
        assert complement_deg(L12, G, k) == complement_by_intersection(L12, G, k)


@pytest.mark.parametrize("k", [2, 3])
def test_complement_basis_satisfies_defining_relations(k):
    G = golden.z2xz2_group(1, -1, -1)
    for p in complement_deg(L12, G, k).elements():
        assert ad(L12.transpose(), p).is_zero()
        assert is_rev_equivariant(G, p)


def test_sigma_trivial_routes_to_the_equivariant_complement():
    G = trivial_group(6)
    assert target_space(G, 2) == equivariants_deg(G, 2)
    assert complement_deg(L12, G, 2) == s_equivariants_deg(L12, 2)


def test_incompatible_pair_is_rejected():
    from revnf.group import close_group, element
    from revnf.homological import linear_part
    kappa2 = close_group([element([[1, 0], [0, -1]], 1)])
    with pytest.raises(GroupError, match="generator 0"):
        complement_deg(linear_part([[0, 1], [-1, 0]]), kappa2, 2)


@pytest.mark.parametrize("k", range(0, 5))
def test_theorem_4_4_for_phi(k):
    r = verify_theorem_4_4(L12, G_PHI, k)
    assert r["pass"] and r["dims_add_up"]


@pytest.mark.parametrize("k", range(2, 5))
def test_theorem_4_4_for_type_a_at_equal_frequencies(k):
    assert verify_theorem_4_4(L11, golden.z2xz2_group(1, 1, 1), k)["pass"]


def test_golden_case_examples():
    a = golden.golden_case("z2xz2", 3, 5, (1, 1, 1))
    assert a.type_letter == "A" and len(a.generators) == 10 and len(a.invariants) == 4
    assert golden.golden_case("z2xz2", 1, 2, (1, -1, -1)).type_letter == "B"
    c = golden.golden_case("z2xz2", 1, 2, (-1, 1, 1))
    u = golden.invariants_u(1, 2)
    assert c.type_letter == "C"
    assert list(c.invariants) == [u["u1"] * u["u1"], u["u2"], u["u3"], u["u4"]]
    with pytest.raises(ValueError, match="reduce the ratio"):
        golden.golden_case("z2", 2, 4)
    with pytest.raises(ValueError):
        golden.golden_case("z3", 1, 2)


def test_h_fields_are_reversible_equivariant_and_s_equivariant():
    for n1, n2 in ((1, 1), (1, 2), (2, 3)):
        L = build_resonant_L(n1, n2)
        for H in golden.h_fields(n1, n2):
            assert is_rev_equivariant(G_PHI, H)
            assert ad(L.transpose(), H).is_zero()


# -- the normalization pipeline -------------------------------------------------------

def _plant(rng, L, G, k):
    p = random_element(rng, complement_deg(L, G, k))
    q = random_element(rng, equivariants_deg(G, k))
    return p, q


def test_step_on_the_linear_field_is_trivial():
    X = L12.as_field()
    step, Y = normalize_step(X, L12, G_PHI, 3, 4)
    assert step.g_k.is_zero() and step.xi_k.is_zero() and Y == X


def test_step_keeps_complement_terms():
    rng = random.Random(3)
    p, _ = _plant(rng, L12, G_PHI, 3)
    X = L12.as_field() + p
    step, Y = normalize_step(X, L12, G_PHI, 3, 5)
    assert step.g_k == p and step.xi_k.is_zero() and Y == X


@pytest.mark.parametrize("k", [2, 3, 4])
def test_step_removes_image_terms(k):
    rng = random.Random(k)
    _, q = _plant(rng, L12, G_PHI, k)
    X = L12.as_field() + ad(L12, q)
    step, Y = normalize_step(X, L12, G_PHI, k, k)
    assert step.g_k.is_zero() and step.residual_check
    assert ad(L12, step.xi_k) == ad(L12, q)
    assert Y == L12.as_field()


@pytest.mark.parametrize("k", [2, 3, 4])
def test_planted_single_degree(k):
    rng = random.Random(10 + k)
    p, q = _plant(rng, L12, G_PHI, k)
    X = L12.as_field() + p + ad(L12, q)
    res = normal_form(ProblemSpec(6, L12, G_PHI, 4, X))
    step = res.steps[k - 2]
    assert step.g_k == p
    assert all(s.g_k.is_zero() for s in res.steps[: k - 2])
    assert res.normal_field.truncate(k) == L12.as_field() + p
    phi = res.coordinate_change
    assert conjugacy_witness(X, res.normal_field, phi - VecPoly.identity(6), 4)


def test_normal_form_of_linear_field():
    res = normal_form(ProblemSpec(6, L12, G_PHI, 4, L12.as_field()))
    assert res.normal_field == L12.as_field()
    assert all(s.g_k.is_zero() and s.xi_k.is_zero() for s in res.steps)
    assert res.coordinate_change == VecPoly.identity(6)


def _random_rev_field(rng, L, G, kmax, density=0.3):
    X = L.as_field()
    for k in range(2, kmax + 1):
        for b in rev_equivariants_deg(G, k).elements():
            if rng.random() < density:
                X = X + b.scale(rng.randint(-3, 3))
    return X


def test_random_field_normal_form_lies_in_tabulated_modules():
    rng = random.Random(7)
    X = _random_rev_field(rng, L11, G_PHI, 3)
    res = normal_form(ProblemSpec(6, L11, G_PHI, 3, X))
    case = golden.golden_case("z2", 1, 1)
    for k in (2, 3):
        M = module_slice(list(case.generators), list(case.invariants), k, n=6)
        assert M.contains(res.normal_field.homogeneous_part(k))


def test_each_step_is_a_conjugacy_and_keeps_symmetry():
    rng = random.Random(11)
    kmax = 4
    X = _random_rev_field(rng, L12, G_PHI, kmax, 0.2)
    for k in range(2, kmax + 1):
        step, Y = normalize_step(X, L12, G_PHI, k, kmax)
        assert conjugacy_witness(X, Y, step.xi_k, kmax)
        assert Y.truncate(k - 1) == X.truncate(k - 1)
        assert is_equivariant(G_PHI, step.xi_k)
        assert field_symmetry_violation(G_PHI, Y, kmax) is None
        assert complement_deg(L12, G_PHI, k).contains(Y.homogeneous_part(k)) or Y.homogeneous_part(k).is_zero()
        again, Z = normalize_step(Y, L12, G_PHI, k, kmax)
        assert again.g_k == step.g_k and again.xi_k.is_zero() and Z == Y
        X = Y


def test_normal_form_is_idempotent():
    rng = random.Random(5)
    X = _random_rev_field(rng, L12, G_PHI, 4, 0.2)
    res = normal_form(ProblemSpec(6, L12, G_PHI, 4, X))
    again = normal_form(ProblemSpec(6, L12, G_PHI, 4, res.normal_field))
    assert again.normal_field == res.normal_field
    assert all(s.xi_k.is_zero() for s in again.steps)


def test_accumulated_change_conjugates_the_whole_field():
    rng = random.Random(9)
    X = _random_rev_field(rng, L12, G_PHI, 4, 0.2)
    res = normal_form(ProblemSpec(6, L12, G_PHI, 4, X))
    assert conjugacy_witness(X, res.normal_field, res.coordinate_change - VecPoly.identity(6), 4)


def test_inconsistent_system_is_reported():
    # a non-reversible degree-2 term cannot be split
    x1 = ScalarPoly.var(6, 0)
    X = L12.as_field() + VecPoly.unit(6, 0, x1 * x1)
    with pytest.raises(NormalFormError, match="degree 2"):
        normalize_step(X, L12, G_PHI, 2, 2)


def test_change_of_coordinates_inverts():
    rng = random.Random(2)
    xi = random_element(rng, equivariants_deg(G_PHI, 2))
    X = _random_rev_field(rng, L12, G_PHI, 3)
    Y = change_of_coordinates(X, xi, 4)
    back = change_of_coordinates(Y, -xi, 4)
    # x = y + xi(y) followed by y = w - xi(w) is the identity only through degree 2
    assert back.truncate(2) == X.truncate(2)
    assert conjugacy_witness(X, Y, xi, 4)


# -- spec validation ------------------------------------------------------------------

def test_problem_spec_validation():
    X = L12.as_field()
    ProblemSpec(6, L12, G_PHI, 3, X).validate()
    with pytest.raises(NormalFormError, match="constant term"):
        ProblemSpec(6, L12, G_PHI, 3, X + VecPoly.constant([0, 1, 0, 0, 0, 0])).validate()
    with pytest.raises(NormalFormError, match="linear part mismatch"):
        ProblemSpec(6, L12, G_PHI, 3, X.scale(2)).validate()
    x1 = ScalarPoly.var(6, 0)
    with pytest.raises(GroupError, match="degree 2"):
        ProblemSpec(6, L12, G_PHI, 3, X + VecPoly.unit(6, 0, x1 * x1)).validate()
    with pytest.raises(NormalFormError, match="dimension"):
        ProblemSpec(2, L12, G_PHI, 3).validate()


def test_semidirect_invariants_are_generated_by_the_hilbert_basis():
    from revnf.spaces import algebra_span
    u = golden.invariants_u(1, 2)
    gens = [u["u1"], u["u2"], u["u3"], u["u4"]]
    for d in range(1, 7):
        assert algebra_span(gens, d, 6) == semidirect_invariants_deg(L12, G_PHI, d)
