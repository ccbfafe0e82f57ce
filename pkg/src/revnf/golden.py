"""Reference generator data for the resonant examples on R^2 x C^2.

Real coordinates are ``(x1, x2, x3, x4, x5, x6)`` with ``z1 = x3 + i x4`` and
``z2 = x5 + i x6``.  A complex entry ``w`` in the ``z1`` slot of a vector
field contributes ``Re w`` to component 3 and ``Im w`` to component 4 (and
likewise for ``z2`` in components 5, 6), so the rotation blocks of the
linear part read ``z_j' = -i w_j z_j``.

Everything here is generated from ``(n1, n2)``; nothing is hand-expanded.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .group import FiniteSignedGroup, SignedElement, close_group, diag
from .homological import HomologicalError, LinearPart, build_resonant_L
from .poly import ScalarPoly, VecPoly

N = 6


class CPoly:
    """Complex-valued polynomial on R^6, stored as a (real, imaginary) pair."""

    __slots__ = ("re", "im")

    def __init__(self, re: ScalarPoly, im: ScalarPoly | None = None):
        self.re = re
        self.im = im if im is not None else ScalarPoly.zero(re.n)

    def __add__(self, o: CPoly) -> CPoly:
        return CPoly(self.re + o.re, self.im + o.im)

    def __mul__(self, o):
        if isinstance(o, ScalarPoly):
            return CPoly(self.re * o, self.im * o)
        return CPoly(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    def __pow__(self, e: int) -> CPoly:
        out = CPoly(ScalarPoly.const(N, 1))
        for _ in range(e):
            out = out * self
        return out

    def conj(self) -> CPoly:
        return CPoly(self.re, -self.im)

    def times_i(self) -> CPoly:
        return CPoly(-self.im, self.re)


def _x(i: int) -> ScalarPoly:
    return ScalarPoly.var(N, i)


def z1() -> CPoly:
    return CPoly(_x(2), _x(3))


def z2() -> CPoly:
    return CPoly(_x(4), _x(5))


def resonant_monomial(n1: int, n2: int) -> CPoly:
    """``z1^n2 * conj(z2)^n1``."""
    return (z1() ** n2) * (z2().conj() ** n1)


def invariants_u(n1: int, n2: int) -> dict[str, ScalarPoly]:
    """``u1 = x1``, ``u2 = |z1|^2``, ``u3 = |z2|^2``, ``u4``/``u5`` the real and
    imaginary parts of the resonant monomial."""
    r = resonant_monomial(n1, n2)
    a, b = z1(), z2()
    return {
        "u1": _x(0),
        "u2": (a * a.conj()).re,
        "u3": (b * b.conj()).re,
        "u4": r.re,
        "u5": r.im,
    }


def _field(x_block=(None, None), w1: CPoly | None = None, w2: CPoly | None = None) -> VecPoly:
    zero = ScalarPoly.zero(N)
    comps = [x_block[0] or zero, x_block[1] or zero]
    for w in (w1, w2):
        comps += [w.re, w.im] if w is not None else [zero, zero]
    return VecPoly(comps)


def _first_slot_monomial(n1: int, n2: int) -> CPoly:
    # conj(z1)^(n2-1) z2^n1, equivariant in the z1 slot
    return (z1().conj() ** (n2 - 1)) * (z2() ** n1)


def _second_slot_monomial(n1: int, n2: int) -> CPoly:
    # z1^n2 conj(z2)^(n1-1), equivariant in the z2 slot
    return (z1() ** n2) * (z2().conj() ** (n1 - 1))


def h_fields(n1: int, n2: int) -> list[VecPoly]:
    """``H_0 .. H_9``: the reversible-equivariant generators for the
    ``Z2``-reversible resonant family."""
    u5 = invariants_u(n1, n2)["u5"]
    one = ScalarPoly.const(N, 1)
    a = z1()
    b = z2()
    p = _first_slot_monomial(n1, n2)
    q = _second_slot_monomial(n1, n2)
    return [
        _field((None, one)),
        _field((_x(0) * u5, _x(1) * u5)),
        _field(w1=a.times_i()),
        _field(w1=p.times_i()),
        _field(w1=a * u5),
        _field(w1=p * u5),
        _field(w2=b.times_i()),
        _field(w2=q.times_i()),
        _field(w2=b * u5),
        _field(w2=q * u5),
    ]


def s_equivariant_generators(n1: int, n2: int) -> tuple[list[ScalarPoly], list[VecPoly]]:
    """Invariant and equivariant generators for the continuous symmetry group
    (shear on the nilpotent block times the resonant circle action), padded
    to R^6 blockwise."""
    u = invariants_u(n1, n2)
    a, b = z1(), z2()
    p, q = _first_slot_monomial(n1, n2), _second_slot_monomial(n1, n2)
    one = ScalarPoly.const(N, 1)
    invs = [u["u1"], u["u2"], u["u3"], u["u4"], u["u5"]]
    eqvs = [
        _field((_x(0), _x(1))),
        _field((None, one)),
        _field(w1=a), _field(w1=a.times_i()), _field(w1=p), _field(w1=p.times_i()),
        _field(w2=b), _field(w2=b.times_i()), _field(w2=q), _field(w2=q.times_i()),
    ]
    return invs, eqvs


# -- groups --------------------------------------------------------------------

def phi_element() -> SignedElement:
    """``(x1, x2, z1, z2) -> (x1, -x2, conj z1, conj z2)`` as a reversing symmetry."""
    return SignedElement(diag(1, -1, 1, -1, 1, -1), -1)


def psi_element(a0: int, a1: int, a2: int) -> SignedElement:
    """``(x1, x2, z1, z2) -> (a0 x1, -a0 x2, a1 conj z1, a2 conj z2)``, reversing."""
    for a in (a0, a1, a2):
        if a not in (1, -1):
            raise ValueError("signs must be +1 or -1")
    return SignedElement(diag(a0, -a0, a1, -a1, a2, -a2), -1)


def z2_group() -> FiniteSignedGroup:
    return close_group([phi_element()])


def z2xz2_group(a0: int, a1: int, a2: int) -> FiniteSignedGroup:
    return close_group([phi_element(), psi_element(a0, a1, a2)])


# -- the sign-type classification ------------------------------------------------

def z2xz2_type(a0: int, a1: int, a2: int, n1: int, n2: int) -> str:
    """Normal-form type letter from the sign pattern and resonance parities."""
    if (a1, a2) == (1, 1):
        even = True
    elif (a1, a2) == (-1, -1):
        even = (n1 + n2) % 2 == 0
    elif (a1, a2) == (1, -1):
        even = n1 % 2 == 0
    else:
        even = n2 % 2 == 0
    if a0 == 1:
        return "A" if even else "B"
    return "C" if even else "D"


def type_generators(letter: str, n1: int, n2: int) -> tuple[list[VecPoly], list[ScalarPoly]]:
    """Module generators and Hilbert basis listed for each type."""
    H = h_fields(n1, n2)
    u = invariants_u(n1, n2)
    u1, u2, u3, u4 = u["u1"], u["u2"], u["u3"], u["u4"]
    if letter == "A":
        return list(H), [u1, u2, u3, u4]
    if letter == "B":
        return ([H[k] for k in (0, 2, 5, 6, 9)] + [H[l] * u4 for l in (1, 3, 4, 7, 8)],
                [u1, u2, u3, u4 * u4])
    if letter == "C":
        return [H[0] * u1] + [H[k] for k in range(1, 10)], [u1 * u1, u2, u3, u4]
    if letter == "D":
        gens = [H[k] for k in (2, 5, 6, 9)]
        gens += [H[l] * u1 for l in (0, 1, 3, 4, 7, 8)]
        gens += [H[l] * u4 for l in (0, 1, 3, 4, 7, 8)]
        return gens, [u1 * u1, u2, u3, u4 * u4, u1 * u4]
    raise ValueError(f"unknown type {letter!r}")


@dataclass(frozen=True)
class GoldenCase:
    family: str
    n1: int
    n2: int
    signs: tuple[int, int, int] | None
    type_letter: str
    group: FiniteSignedGroup
    L: LinearPart
    generators: tuple[VecPoly, ...]
    invariants: tuple[ScalarPoly, ...]

    @property
    def degree_bound(self) -> int:
        """Largest generator degree plus a margin of two."""
        return 2 * (self.n1 + self.n2) + 1


def golden_case(family: str, n1: int, n2: int, signs: tuple[int, int, int] | None = None) -> GoldenCase:
    if n1 < 1 or n2 < 1 or gcd(n1, n2) != 1:
        raise HomologicalError(f"(n1, n2) = ({n1}, {n2}) must be coprime positive integers; reduce the ratio")
    L = build_resonant_L(n1, n2)
    if family == "z2":
        gens, invs = type_generators("A", n1, n2)
        return GoldenCase("z2", n1, n2, None, "A", z2_group(), L, tuple(gens), tuple(invs))
    if family == "z2xz2":
        if signs is None:
            raise ValueError("family z2xz2 needs signs (a0, a1, a2)")
        a0, a1, a2 = signs
        letter = z2xz2_type(a0, a1, a2, n1, n2)
        gens, invs = type_generators(letter, n1, n2)
        return GoldenCase("z2xz2", n1, n2, (a0, a1, a2), letter, z2xz2_group(a0, a1, a2), L,
                          tuple(gens), tuple(invs))
    raise ValueError(f"unknown family {family!r}; expected 'z2' or 'z2xz2'")


ALL_SIGNS = [(a0, a1, a2) for a0 in (1, -1) for a1 in (1, -1) for a2 in (1, -1)]
