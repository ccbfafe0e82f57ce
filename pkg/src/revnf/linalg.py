"""Sparse exact linear algebra over the rationals.

Vectors are ``dict[int, Fraction]`` (index -> nonzero entry).  Internally all
elimination is fraction-free on integer rows, with each finished row divided
by its content, so entries stay small.  Pivots are always the first nonzero
index, which makes every result deterministic.

Canonical subspace bases are in reduced row echelon form (rows = basis
vectors, leading entry 1, zero in every other row's pivot column): two
subspaces are equal iff their canonical bases are equal.
"""

from __future__ import annotations

import heapq
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Mapping, Sequence

SparseVec = dict[int, Fraction]


def _integerize(v: Mapping[int, Fraction | int]) -> tuple[dict[int, int], int]:
    """Return ``(w, d)`` with ``w = d * v`` integral; ``d`` a positive int."""
    d = 1
    for c in v.values():
        if isinstance(c, Fraction) and c.denominator != 1:
            d = lcm(d, c.denominator)
    out = {}
    for j, c in v.items():
        if c:
            x = c * d
            out[j] = x if isinstance(x, int) else int(x)
    return out, d


def _content(*vecs: Mapping[int, int]) -> int:
    g = 0
    for v in vecs:
        for c in v.values():
            g = gcd(g, c)
            if g == 1:
                return 1
    return g


def _divide(v: dict[int, int], g: int) -> dict[int, int]:
    return {j: c // g for j, c in v.items()}


def _axpy(a: int, x: dict[int, int], b: int, y: Mapping[int, int]) -> dict[int, int]:
    """``a*x - b*y`` (``x`` is consumed)."""
    if a != 1:
        x = {j: a * c for j, c in x.items()}
    for j, c in y.items():
        v = x.get(j, 0) - b * c
        if v:
            x[j] = v
        else:
            x.pop(j, None)
    return x


def _to_fraction(v: Mapping[int, int], scale: int) -> SparseVec:
    return {j: Fraction(c, scale) for j, c in v.items()}


class _TrackedEchelon:
    """Row echelon form (not reduced) of a growing list of columns, tracking
    for each stored vector its combination of the input columns."""

    def __init__(self):
        self.rows: dict[int, tuple[dict[int, int], dict[int, int]]] = {}

    def reduce(self, w: dict[int, int], combo: dict[int, int]):
        rows = self.rows
        heap = list(w)
        heapq.heapify(heap)
        steps = 0
        while heap:
            p = heapq.heappop(heap)
            b = w.get(p)
            if not b:
                continue
            row = rows.get(p)
            if row is None:
                heapq.heappush(heap, p)
                break
            rw, rc = row
            a = rw[p]
            g = gcd(a, b)
            ma, mb = a // g, b // g
            if ma < 0:
                ma, mb = -ma, -mb
            before = w.keys() - {p}
            w = _axpy(ma, w, mb, rw)
            if rc:
                combo = _axpy(ma, combo, mb, rc)
            elif ma != 1:
                combo = {j: ma * c for j, c in combo.items()}
            for j in rw.keys() - before:
                if j in w:
                    heapq.heappush(heap, j)
            steps += 1
            if steps % 16 == 0:
                g = _content(w, combo)
                if g > 1:
                    w, combo = _divide(w, g), _divide(combo, g)
        return w, combo

    def insert(self, w: dict[int, int], combo: dict[int, int]) -> int:
        g = _content(w, combo)
        if g > 1:
            w, combo = _divide(w, g), _divide(combo, g)
        p = min(w)
        self.rows[p] = (w, combo)
        return p


def column_reduce(columns: Sequence[Mapping[int, Fraction | int]]):
    """Eliminate the columns in order.

    Returns ``(kernel, image, pivots, echelon)``: ``kernel`` is a list of
    integer combination vectors (over column indices) that vanish; ``image``
    spans the column space; ``pivots`` are the indices of the independent
    columns; ``echelon`` is the tracked elimination state reused by ``solve``.
    """
    ech = _TrackedEchelon()
    kernel: list[dict[int, int]] = []
    image: list[dict[int, int]] = []
    pivots: list[int] = []
    for j, col in enumerate(columns):
        w, d = _integerize(col)
        combo = {j: d}
        if w:
            w, combo = ech.reduce(w, combo)
        if w:
            ech.insert(w, combo)
            image.append(w)
            pivots.append(j)
        else:
            g = _content(combo)
            kernel.append(_divide(combo, g) if g > 1 else combo)
    return kernel, image, pivots, ech


class RREF:
    """Incrementally maintained reduced row echelon basis."""

    def __init__(self, vectors: Iterable[Mapping[int, Fraction | int]] = ()):
        self.rows: dict[int, dict[int, int]] = {}
        self.cols: dict[int, set[int]] = {}
        for v in vectors:
            self.add(v)

    def __len__(self) -> int:
        return len(self.rows)

    def _reduce(self, w: dict[int, int]) -> dict[int, int]:
        rows = self.rows
        for p in sorted(w.keys() & rows.keys()):
            b = w.get(p)
            if not b:
                continue
            r = rows[p]
            a = r[p]
            g = gcd(a, b)
            w = _axpy(a // g, w, b // g, r)
        return w

    def reduce(self, v: Mapping[int, Fraction | int]) -> SparseVec:
        w, d = _integerize(v)
        w = self._reduce(w)
        return {j: Fraction(c, d) for j, c in w.items()} if w else {}

    def contains(self, v: Mapping[int, Fraction | int]) -> bool:
        w, _ = _integerize(v)
        return not self._reduce(w)

    def add(self, v: Mapping[int, Fraction | int]) -> bool:
        w, _ = _integerize(v)
        if not w:
            return False
        w = self._reduce(w)
        if not w:
            return False
        p = min(w)
        g = _content(w)
        if w[p] < 0:
            g = -g
        if g != 1:
            w = _divide(w, g)
        rows, cols = self.rows, self.cols
        for q in list(cols.get(p, ())):
            r = rows[q]
            b = r[p]
            a = w[p]
            gg = gcd(a, b)
            old = r.keys()
            nr = _axpy(a // gg, dict(r), b // gg, w)
            cg = _content(nr)
            if cg > 1:
                nr = _divide(nr, cg)
            for j in old - nr.keys():
                if j != q:
                    cols[j].discard(q)
            for j in nr.keys() - old:
                cols.setdefault(j, set()).add(q)
            rows[q] = nr
        cols.pop(p, None)
        rows[p] = w
        for j in w:
            if j != p:
                cols.setdefault(j, set()).add(p)
        return True

    def basis(self) -> list[SparseVec]:
        out = []
        for p in sorted(self.rows):
            r = self.rows[p]
            out.append(_to_fraction(r, r[p]))
        return out

    @property
    def pivots(self) -> list[int]:
        return sorted(self.rows)


def rref(vectors: Iterable[Mapping[int, Fraction | int]]) -> list[SparseVec]:
    """Canonical reduced row echelon basis of the span of ``vectors``."""
    return RREF(vectors).basis()


def rank(vectors: Iterable[Mapping[int, Fraction | int]]) -> int:
    ech = _TrackedEchelon()
    r = 0
    for v in vectors:
        w, _ = _integerize(v)
        if not w:
            continue
        w, _c = ech.reduce(w, {})
        if w:
            ech.insert(w, {})
            r += 1
    return r


def nullspace(columns: Sequence[Mapping[int, Fraction | int]]) -> list[SparseVec]:
    """Canonical basis of ``{a : sum_j a_j columns[j] = 0}``."""
    kernel, _, _, _ = column_reduce(columns)
    return rref(kernel)


def column_space(columns: Sequence[Mapping[int, Fraction | int]]) -> list[SparseVec]:
    _, image, _, _ = column_reduce(columns)
    return rref(image)


def solve(columns: Sequence[Mapping[int, Fraction | int]],
          rhs: Mapping[int, Fraction | int]) -> SparseVec | None:
    """A solution ``a`` of ``sum_j a_j columns[j] = rhs``, or ``None``.

    The solution is supported on the pivot columns only (free variables set
    to zero), which makes it the unique reduced-echelon representative.
    """
    _, _, _, ech = column_reduce(columns)
    r, d = _integerize(rhs)
    if not r:
        return {}
    # state: scale*rhs - sum(combo_j * col_j) == r
    rows = ech.rows
    scale = d
    combo: dict[int, int] = {}
    heap = list(r)
    heapq.heapify(heap)
    while heap:
        p = heapq.heappop(heap)
        b = r.get(p)
        if not b:
            continue
        row = rows.get(p)
        if row is None:
            return None
        rw, rc = row
        a = rw[p]
        g = gcd(a, b)
        ma, mb = a // g, b // g
        if ma < 0:
            ma, mb = -ma, -mb
        before = r.keys() - {p}
        r = _axpy(ma, r, mb, rw)
        combo = _axpy(ma, combo, -mb, rc)
        scale *= ma
        for j in rw.keys() - before:
            if j in r:
                heapq.heappush(heap, j)
    return {j: Fraction(c, scale) for j, c in combo.items() if c}


def apply_combination(columns: Sequence[Mapping[int, Fraction]], coeffs: Mapping[int, Fraction]) -> SparseVec:
    out: dict[int, Fraction] = {}
    for j, a in coeffs.items():
        for i, c in columns[j].items():
            v = out.get(i, 0) + a * c
            if v:
                out[i] = v
            else:
                out.pop(i, None)
    return out


def combine(basis: Sequence[Mapping[int, Fraction]], coeffs: Sequence[Fraction]) -> SparseVec:
    return apply_combination(basis, dict(enumerate(coeffs)))


def intersect_spans(a: Sequence[Mapping[int, Fraction]], b: Sequence[Mapping[int, Fraction]]) -> list[SparseVec]:
    """Canonical basis of ``span(a) & span(b)``.

    Null vectors of ``[a | -b]`` give coefficient pairs; the ``a``-half mapped
    back through ``a`` spans the intersection.
    """
    cols = list(a) + [{i: -c for i, c in v.items()} for v in b]
    kernel, _, _, _ = column_reduce(cols)
    na = len(a)
    vecs = []
    for k in kernel:
        left = {j: Fraction(c) for j, c in k.items() if j < na}
        if left:
            vecs.append(apply_combination(a, left))
    return rref(vecs)
