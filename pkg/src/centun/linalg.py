"""Exact rational linear algebra on sparse vectors.

Vectors are plain ``dict`` objects mapping a hashable coordinate key to a
nonzero :class:`~fractions.Fraction`.  Matrices are :class:`SparseMatrix`
instances stored column by column.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Hashable, Iterable, List, Optional, Sequence

Vec = Dict[Hashable, Fraction]


def axpy(y: Vec, a, x: Vec) -> Vec:
    """In place ``y += a * x``; returns ``y``."""
    if a == 0:
        return y
    for k, v in x.items():
        s = y.get(k, 0) + a * v
        if s:
            y[k] = s
        else:
            y.pop(k, None)
    return y


def scale(a, x: Vec) -> Vec:
    if a == 0:
        return {}
    return {k: a * v for k, v in x.items()}


def vsum(*vs: Vec) -> Vec:
    out: Vec = {}
    for v in vs:
        axpy(out, 1, v)
    return out


class SparseMatrix:
    """Column-sparse exact matrix acting on :data:`Vec` vectors."""

    __slots__ = ("cols",)

    def __init__(self, cols: Optional[Dict[Hashable, Vec]] = None):
        self.cols: Dict[Hashable, Vec] = {}
        for j, col in (cols or {}).items():
            col = {i: Fraction(v) for i, v in col.items() if v}
            if col:
                self.cols[j] = col

    def apply(self, v: Vec) -> Vec:
        out: Vec = {}
        for j, c in v.items():
            col = self.cols.get(j)
            if col:
                axpy(out, c, col)
        return out

    def __matmul__(self, other: "SparseMatrix") -> "SparseMatrix":
        return SparseMatrix({j: self.apply(col) for j, col in other.cols.items()})

    def __add__(self, other: "SparseMatrix") -> "SparseMatrix":
        cols = {j: dict(c) for j, c in self.cols.items()}
        for j, c in other.cols.items():
            axpy(cols.setdefault(j, {}), 1, c)
        return SparseMatrix(cols)

    def __sub__(self, other: "SparseMatrix") -> "SparseMatrix":
        return self + other.scaled(-1)

    def scaled(self, a) -> "SparseMatrix":
        return SparseMatrix({j: scale(a, c) for j, c in self.cols.items()})

    def commutator(self, other: "SparseMatrix") -> "SparseMatrix":
        return (self @ other) - (other @ self)

    def entry(self, i, j) -> Fraction:
        return self.cols.get(j, {}).get(i, Fraction(0))

    def entries(self):
        for j in sorted(self.cols):
            col = self.cols[j]
            for i in sorted(col):
                yield i, j, col[i]

    def is_zero(self) -> bool:
        return not self.cols

    def __eq__(self, other) -> bool:
        return isinstance(other, SparseMatrix) and self.cols == other.cols

    def trace(self) -> Fraction:
        return sum((c.get(j, 0) for j, c in self.cols.items()), Fraction(0))

    @classmethod
    def diagonal(cls, values: Dict[Hashable, Fraction]) -> "SparseMatrix":
        return cls({k: {k: v} for k, v in values.items()})


class IncrementalBasis:
    """Online echelon basis with dependency tracking.

    ``add(v)`` either accepts ``v`` as a new basis member or returns the
    coefficients expressing it in terms of members accepted so far.
    """

    def __init__(self):
        self._rows: List[tuple] = []  # (pivot key, reduced vector, combination)
        self.size = 0

    def reduce(self, v: Vec):
        v = dict(v)
        expr: Vec = {}
        for key, red, combo in self._rows:
            c = v.get(key)
            if c:
                c = c / red[key]
                axpy(v, -c, red)
                axpy(expr, c, combo)
        return v, expr

    def add(self, v: Vec):
        """Return ``(True, index)`` if new, else ``(False, coefficients)``."""
        rest, expr = self.reduce(v)
        if not rest:
            return False, expr
        idx = self.size
        self.size += 1
        combo = scale(-1, expr)
        combo[idx] = Fraction(1)
        key = min(rest)
        self._rows.append((key, rest, combo))
        return True, idx

    def contains(self, v: Vec) -> bool:
        return not self.reduce(v)[0]


def rank(vectors: Iterable[Vec]) -> int:
    b = IncrementalBasis()
    for v in vectors:
        b.add(v)
    return b.size


def solve_dense(a: Sequence[Sequence], b: Sequence) -> List[Fraction]:
    """Solve the square nonsingular system ``a x = b`` exactly."""
    n = len(a)
    m = [[Fraction(x) for x in row] + [Fraction(b[i])] for i, row in enumerate(a)]
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular system")
        m[col], m[piv] = m[piv], m[col]
        p = m[col][col]
        m[col] = [x / p for x in m[col]]
        for r in range(n):
            if r != col and m[r][col] != 0:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return [m[i][n] for i in range(n)]


def inverse_dense(a: Sequence[Sequence]) -> List[List[Fraction]]:
    n = len(a)
    cols = [solve_dense(a, [1 if i == j else 0 for i in range(n)]) for j in range(n)]
    return [[cols[j][i] for j in range(n)] for i in range(n)]


def det_dense(a: Sequence[Sequence]) -> Fraction:
    n = len(a)
    m = [[Fraction(x) for x in row] for row in a]
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            det = -det
        p = m[col][col]
        det *= p
        for r in range(col + 1, n):
            if m[r][col] != 0:
                f = m[r][col] / p
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return det


def format_fraction(q: Fraction) -> str:
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def parse_fraction(s: str) -> Fraction:
    return Fraction(s)
