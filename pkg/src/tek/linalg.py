"""Exact rational linear algebra over :class:`fractions.Fraction`.

Vectors are sparse dicts ``key -> Fraction`` with no stored zeros; dense
systems are lists of rows.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Dict, Hashable, List, Sequence

SparseVec = Dict[Hashable, Fraction]


class InconsistentSystem(ValueError):
    pass


class SingularSystem(ValueError):
    pass


def frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x.strip())
    return Fraction(x)


def fmt(q: Fraction) -> str:
    """Render a rational as ``"p/q"`` in lowest terms (``"p"`` when integral)."""
    q = frac(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def axpy(acc: SparseVec, vec: SparseVec, c=1) -> SparseVec:
    """In place ``acc += c * vec``; drops entries that cancel."""
    if not c:
        return acc
    for k, v in vec.items():
        nv = acc.get(k, 0) + c * v
        if nv:
            acc[k] = nv
        else:
            acc.pop(k, None)
    return acc


def scale(vec: SparseVec, c) -> SparseVec:
    if not c:
        return {}
    return {k: c * v for k, v in vec.items()}


class EchelonBasis:
    """Incrementally maintained basis of a subspace of a sparse vector space.

    Keeps the inserted vectors ``b_1..b_d`` together with an echelonized copy
    ``E_k = sum_j T[k][j] b_j`` so that membership tests and coordinate
    extraction with respect to the original vectors are both exact.
    """

    def __init__(self):
        self.vectors: List[SparseVec] = []
        self._rows: List[SparseVec] = []
        self._pivots: List[Hashable] = []
        self._trans: List[Dict[int, Fraction]] = []

    def __len__(self) -> int:
        return len(self.vectors)

    def _reduce(self, vec: SparseVec):
        residual = dict(vec)
        combo: Dict[int, Fraction] = {}
        for row, piv, tr in zip(self._rows, self._pivots, self._trans):
            c = residual.get(piv)
            if c:
                axpy(residual, row, -c)
                for j, t in tr.items():
                    nv = combo.get(j, 0) + c * t
                    if nv:
                        combo[j] = nv
                    else:
                        combo.pop(j, None)
        return residual, combo

    def add(self, vec: SparseVec) -> bool:
        """Insert ``vec`` if it is independent; return whether it was new."""
        residual, combo = self._reduce(vec)
        if not residual:
            return False
        idx = len(self.vectors)
        self.vectors.append(dict(vec))
        piv = min(residual)
        inv = 1 / Fraction(residual[piv])
        row = scale(residual, inv)
        tr = scale({j: -c for j, c in combo.items()}, inv)
        tr[idx] = inv
        # keep rows fully reduced against the new pivot
        for k, other in enumerate(self._rows):
            c = other.get(piv)
            if c:
                axpy(other, row, -c)
                axpy(self._trans[k], tr, -c)
        self._rows.append(row)
        self._pivots.append(piv)
        self._trans.append(tr)
        return True

    def coordinates(self, vec: SparseVec) -> Dict[int, Fraction]:
        """Coordinates of ``vec`` in terms of the inserted vectors.

        Raises :class:`InconsistentSystem` if ``vec`` is outside the span.
        """
        residual, combo = self._reduce(vec)
        if residual:
            raise InconsistentSystem("vector is not in the span")
        return combo


def solve(matrix: Sequence[Sequence], rhs: Sequence) -> List[Fraction]:
    """Solve ``matrix @ x = rhs`` exactly; the system may be overdetermined.

    Raises :class:`InconsistentSystem` when no solution exists and
    :class:`SingularSystem` when the solution is not unique.
    """
    rows = [[frac(a) for a in r] + [frac(b)] for r, b in zip(matrix, rhs)]
    if len(rows) != len(rhs):
        raise ValueError("row count mismatch")
    ncols = len(rows[0]) - 1 if rows else 0
    pivot_cols = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [a * inv for a in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivot_cols.append(c)
        r += 1
    for i in range(r, len(rows)):
        if rows[i][-1]:
            raise InconsistentSystem("system has no solution")
    if r < ncols:
        raise SingularSystem("system is underdetermined")
    x = [Fraction(0)] * ncols
    for i, c in enumerate(pivot_cols):
        x[c] = rows[i][-1]
    return x


def nullspace(matrix: Sequence[Sequence]) -> List[List[Fraction]]:
    """Basis of the right kernel of ``matrix``."""
    rows = [[frac(a) for a in r] for r in matrix]
    ncols = len(rows[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [a * inv for a in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -rows[i][fc]
        basis.append(v)
    return basis


def matmul(a, b):
    return [[sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in zip(*b)] for row in a]
