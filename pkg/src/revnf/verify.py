"""Check suites shared by the command line and the test-suite.

Every check returns a plain dict with a boolean ``pass``; suites return a
report ``{"results": [...], "failures": [...], "pass": bool}``.  Randomized
checks draw from a ``random.Random`` seeded by the caller, so a fixed seed
reproduces the same samples.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Iterable

from . import golden, spaces
from .group import (
    FiniteSignedGroup, act_star, is_equivariant, is_rev_equivariant, project_pi, vec_R, vec_S,
)
from .homological import LinearPart, ad, elphick_check, s_equivariants_deg
from .normalform import (
    complement_deg, lemma_4_6_check, lemma_4_7_check, semidirect_invariants_deg,
    verify_theorem_4_4,
)
from .poly import ScalarPoly, VecPoly, from_coords, monomial_basis

CASES = ("elphick", "thm-4-4", "lemmas", "pi", "decompose-plus")


def report(results: Iterable[dict]) -> dict:
    results = list(results)
    failures = [r for r in results if not r["pass"]]
    return {"results": results, "failures": failures, "pass": not failures}


# -- random samples -------------------------------------------------------------------

def random_vec(rng: random.Random, n: int, k: int, terms: int = 4, bound: int = 5) -> VecPoly:
    """Sparse random homogeneous degree-k map with small integer coefficients."""
    basis = monomial_basis(n, k)
    comps = [dict() for _ in range(n)]
    for _ in range(rng.randint(1, terms)):
        c = rng.randint(-bound, bound) or 1
        comps[rng.randrange(n)][rng.choice(basis)] = Fraction(c, rng.randint(1, 3))
    return VecPoly([ScalarPoly(n, d) for d in comps])


def random_element(rng: random.Random, W: spaces.GradedSubspace, bound: int = 4):
    """Random integer combination of the basis of ``W`` (nonzero when dim > 0)."""
    acc: dict[int, Fraction] = {}
    for v in W.basis:
        c = rng.randint(-bound, bound)
        if c:
            for i, a in v.items():
                acc[i] = acc.get(i, 0) + c * a
    acc = {i: a for i, a in acc.items() if a}
    if not acc and W.basis:
        acc = dict(W.basis[rng.randrange(W.dim)])
    return from_coords(acc, W.n, W.k, W.kind == "vector")


def _degrees(rng: random.Random, k_from: int, k_to: int, samples: int) -> list[int]:
    return [k_from + (s % (k_to - k_from + 1)) for s in range(samples)]


# -- lemma checks ---------------------------------------------------------------------

def interchange_samples(L: LinearPart, G: FiniteSignedGroup, rng, samples: int,
                        k_from: int = 2, k_to: int = 4) -> dict:
    """``Ad_L`` maps equivariants to reversible-equivariants and back."""
    bad = []
    for s, k in enumerate(_degrees(rng, k_from, k_to, samples)):
        if s % 2 == 0:
            p = random_element(rng, spaces.equivariants_deg(G, k))
            ok = is_rev_equivariant(G, ad(L, p))
        else:
            p = random_element(rng, spaces.rev_equivariants_deg(G, k))
            ok = is_equivariant(G, ad(L, p))
        if not ok:
            bad.append({"sample": s, "k": k})
    return {"check": "module-interchange", "samples": samples, "bad": bad, "pass": not bad}


def reynolds_commute_samples(L: LinearPart, G: FiniteSignedGroup, rng, samples: int,
                             k_from: int = 2, k_to: int = 4) -> dict:
    """``S(Ad_L p) = Ad_L(R p)`` on symmetry-subgroup equivariants."""
    bad = []
    for s, k in enumerate(_degrees(rng, k_from, k_to, samples)):
        p = random_element(rng, spaces.plus_equivariants_deg(G, k))
        if vec_S(G, ad(L, p)) != ad(L, vec_R(G, p)):
            bad.append({"sample": s, "k": k})
    return {"check": "reynolds-commute", "samples": samples, "bad": bad, "pass": not bad}


def ad_star_samples(L: LinearPart, G: FiniteSignedGroup, rng, samples: int,
                    k_from: int = 2, k_to: int = 4) -> dict:
    """``Ad_L(g * p) = sigma(g) g * Ad_L(p)`` for arbitrary maps ``p``."""
    bad = []
    for s, k in enumerate(_degrees(rng, k_from, k_to, samples)):
        p = random_vec(rng, L.n, k)
        g = G.elements[rng.randrange(G.order)]
        if ad(L, act_star(g, p)) != act_star(g, ad(L, p)).scale(g.sign):
            bad.append({"sample": s, "k": k})
    return {"check": "ad-star", "samples": samples, "bad": bad, "pass": not bad}


def pi_samples(G: FiniteSignedGroup, rng, samples: int, k_from: int = 0, k_to: int = 4) -> dict:
    """``pi`` keeps degree, is idempotent, lands in the reversible-equivariants
    and fixes them."""
    bad = []
    n = G.n
    for s, k in enumerate(_degrees(rng, k_from, k_to, samples)):
        p = random_vec(rng, n, k)
        q = project_pi(G, p)
        fixed = random_element(rng, spaces.rev_equivariants_deg(G, k))
        ok = (q.is_zero() or q.is_homogeneous(k)) and project_pi(G, q) == q \
            and is_rev_equivariant(G, q) and project_pi(G, fixed) == fixed
        if not ok:
            bad.append({"sample": s, "k": k})
    return {"check": "pi-projection", "samples": samples, "bad": bad, "pass": not bad}


# -- suites ---------------------------------------------------------------------------

def elphick_suite(L: LinearPart, k_from: int, k_to: int, mapper=map) -> dict:
    return report(mapper(_elphick_at, [(L, k) for k in range(k_from, k_to + 1)]))


def _elphick_at(args):
    L, k = args
    return elphick_check(L, k)


def theorem_suite(L: LinearPart, G: FiniteSignedGroup, k_from: int, k_to: int, mapper=map) -> dict:
    return report(mapper(_theorem_at, [(L, G, k) for k in range(k_from, k_to + 1)]))


def _theorem_at(args):
    L, G, k = args
    return verify_theorem_4_4(L, G, k)


def decompose_suite(G: FiniteSignedGroup, k_from: int, k_to: int, mapper=map) -> dict:
    return report(mapper(_decompose_at, [(G, k) for k in range(k_from, k_to + 1)]))


def _decompose_at(args):
    G, k = args
    return spaces.decompose_plus_check(G, k)


def lemma_suite(L: LinearPart, G: FiniteSignedGroup, k_from: int, k_to: int, seed: int = 0,
                samples: int = 100) -> dict:
    rng = random.Random(seed)
    lo = max(k_from, 2)
    results = [
        interchange_samples(L, G, rng, samples, lo, k_to),
        reynolds_commute_samples(L, G, rng, samples, lo, k_to),
        ad_star_samples(L, G, rng, samples, lo, k_to),
        pi_samples(G, rng, samples, k_from, k_to),
    ]
    for k in range(k_from, k_to + 1):
        results.append(dict(lemma_4_6_check(L, G, k), check="pi-of-kernel"))
        results.append(dict(lemma_4_7_check(L, G, k), check="pi-of-image"))
    return report(results)


def pi_suite(G: FiniteSignedGroup, k_from: int, k_to: int, seed: int = 0, samples: int = 100) -> dict:
    return report([pi_samples(G, random.Random(seed), samples, k_from, k_to)])


# -- golden comparisons -----------------------------------------------------------------

def golden_degree(case: golden.GoldenCase, k: int) -> dict:
    C = complement_deg(case.L, case.group, k)
    M = spaces.module_slice(list(case.generators), list(case.invariants), k, n=golden.N)
    return {"k": k, "complement_dim": C.dim, "module_dim": M.dim, "pass": C == M}


def golden_suite(case: golden.GoldenCase, k_from: int, k_to: int, mapper=map) -> dict:
    out = report(mapper(_golden_at, [(case.family, case.n1, case.n2, case.signs, k)
                                     for k in range(k_from, k_to + 1)]))
    expected = golden.z2xz2_type(*case.signs, case.n1, case.n2) if case.signs else "A"
    out["type"] = case.type_letter
    out["type_pass"] = case.type_letter == expected
    out["pass"] = out["pass"] and out["type_pass"]
    return out


def _golden_at(args):
    family, n1, n2, signs, k = args
    return golden_degree(golden.golden_case(family, n1, n2, signs), k)


def hilbert_suite(G: FiniteSignedGroup, L: LinearPart, u_list, d_to: int,
                  dmax: int | None = None) -> tuple[list[ScalarPoly], dict]:
    """Construct the invariant generators and compare their algebra with the
    invariants of the semidirect product, degree by degree."""
    basis = spaces.hilbert_basis_sigma(G, u_list, dmax=dmax)
    homog = [b for b in basis if b.is_homogeneous()]
    results = []
    for d in range(0, d_to + 1):
        A = spaces.algebra_span(homog, d, G.n)
        I = semidirect_invariants_deg(L, G, d)
        results.append({"d": d, "algebra_dim": A.dim, "invariant_dim": I.dim, "pass": A == I})
    return basis, report(results)


def s_kernel_matches(L: LinearPart, eq_gens, inv_gens, k: int) -> bool:
    return s_equivariants_deg(L, k) == spaces.module_slice(list(eq_gens), list(inv_gens), k, n=L.n)
