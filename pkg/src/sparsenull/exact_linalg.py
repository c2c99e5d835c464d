"""Exact rational linear algebra.

Rationals are :class:`fractions.Fraction` (always in lowest terms, positive
denominator, zero stored as 0/1).  Elimination is fraction-free (Bareiss):
each row is first scaled to integers, eliminated over ZZ, and only the final
back substitution touches fractions.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

from .errors import ContractViolation

Rational = Fraction

_RATIONAL_RE = re.compile(r"-?\d+(/\d+)?")


def parse_rational(text) -> Fraction:
    """Parse ``"p/q"`` or ``"p"`` (base 10, no whitespace).  Ints pass through."""
    if isinstance(text, bool):
        raise ContractViolation(f"not a rational: {text!r}")
    if isinstance(text, int):
        return Fraction(text)
    if not isinstance(text, str) or not _RATIONAL_RE.fullmatch(text):
        raise ContractViolation(f"not a rational: {text!r}")
    num, _, den = text.partition("/")
    if den and int(den) == 0:
        raise ContractViolation(f"zero denominator in {text!r}")
    return Fraction(int(num), int(den) if den else 1)


def format_rational(q: Fraction) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True)
class RationalMatrix:
    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ContractViolation("negative matrix shape")
        if len(self.entries) != self.rows * self.cols:
            raise ContractViolation(
                f"{len(self.entries)} entries for a {self.rows}x{self.cols} matrix"
            )

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> "RationalMatrix":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != cols:
                raise ContractViolation("ragged rows")
        flat = tuple(Fraction(x) for r in rows for x in r)
        return cls(len(rows), cols, flat)

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls.from_rows([[int(i == j) for j in range(n)] for i in range(n)], n)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> list:
        return list(self.entries[i * self.cols:(i + 1) * self.cols])

    def to_rows(self) -> list[list[Fraction]]:
        return [self.row(i) for i in range(self.rows)]

    def transpose(self) -> "RationalMatrix":
        return RationalMatrix.from_rows(
            [[self[i, j] for i in range(self.rows)] for j in range(self.cols)], self.rows
        )

    def matvec(self, x: Sequence) -> list[Fraction]:
        if len(x) != self.cols:
            raise ContractViolation(f"vector of length {len(x)} for {self.cols} columns")
        return [
            sum((self[i, j] * x[j] for j in range(self.cols) if x[j]), Fraction(0))
            for i in range(self.rows)
        ]


def _integer_rows(rows: Iterable[Sequence[Fraction]]) -> list[list[int]]:
    out = []
    for r in rows:
        scale = lcm(1, *(Fraction(x).denominator for x in r))
        out.append([int(Fraction(x) * scale) for x in r])
    return out


def _bareiss(m: list[list[int]], ncols: int) -> list[int]:
    """Fraction-free forward elimination in place on the first ``ncols`` columns.

    Returns the pivot columns.  Pivot row is the one with the largest
    magnitude entry (first such row on ties), so results are deterministic.
    """
    nrows = len(m)
    width = len(m[0]) if m else 0
    prev = 1
    r = 0
    pivots = []
    for c in range(ncols):
        if r == nrows:
            break
        best = None
        for i in range(r, nrows):
            v = m[i][c]
            if v and (best is None or abs(v) > abs(m[best][c])):
                best = i
        if best is None:
            continue
        if best != r:
            m[r], m[best] = m[best], m[r]
        prow = m[r]
        p = prow[c]
        for i in range(r + 1, nrows):
            row = m[i]
            a = row[c]
            if a:
                for j in range(c + 1, width):
                    row[j] = (p * row[j] - a * prow[j]) // prev
            elif p != prev:
                for j in range(c + 1, width):
                    if row[j]:
                        row[j] = (p * row[j]) // prev
            row[c] = 0
        prev = p
        pivots.append(c)
        r += 1
    return pivots


def rank_exact(A: RationalMatrix) -> int:
    if A.rows == 0 or A.cols == 0:
        return 0
    m = _integer_rows(A.to_rows())
    return len(_bareiss(m, A.cols))


def solve_exact(A: RationalMatrix, b: Sequence) -> list[Fraction] | None:
    """Return some exact solution of ``A x = b``, or ``None`` if inconsistent.

    Free variables are set to zero.
    """
    if len(b) != A.rows:
        raise ContractViolation(f"right-hand side has length {len(b)}, matrix has {A.rows} rows")
    n = A.cols
    if A.rows == 0:
        return [Fraction(0)] * n
    m = _integer_rows(r + [Fraction(bi)] for r, bi in zip(A.to_rows(), b))
    pivots = _bareiss(m, n)
    rank = len(pivots)
    if any(m[i][n] for i in range(rank, A.rows)):
        return None
    x = [Fraction(0)] * n
    for r in range(rank - 1, -1, -1):
        c = pivots[r]
        row = m[r]
        s = Fraction(row[n])
        for j in pivots[r + 1:]:
            if row[j] and x[j]:
                s -= row[j] * x[j]
        x[c] = s / row[c]
    return x


def nullspace(rows: Sequence[Sequence], ncols: int) -> list[list[Fraction]]:
    """Basis of ``{x : rows . x = 0}`` (rational vectors)."""
    if not rows:
        return [[Fraction(int(i == j)) for j in range(ncols)] for i in range(ncols)]
    m = _integer_rows(rows)
    pivots = _bareiss(m, ncols)
    # reduce to RREF over QQ on the pivot rows
    red = [[Fraction(v) for v in m[r]] for r in range(len(pivots))]
    for r in range(len(pivots) - 1, -1, -1):
        c = pivots[r]
        piv = red[r][c]
        red[r] = [v / piv for v in red[r]]
        for k in range(r):
            f = red[k][c]
            if f:
                red[k] = [a - f * b for a, b in zip(red[k], red[r])]
    free = [j for j in range(ncols) if j not in pivots]
    basis = []
    for fcol in free:
        v = [Fraction(0)] * ncols
        v[fcol] = Fraction(1)
        for r, c in enumerate(pivots):
            v[c] = -red[r][fcol]
        basis.append(v)
    return basis


def determinant(rows: Sequence[Sequence[int]]) -> int:
    """Exact determinant of a square integer matrix (Bareiss)."""
    n = len(rows)
    if n == 0:
        return 1
    m = [list(map(int, r)) for r in rows]
    sign = 1
    prev = 1
    for c in range(n - 1):
        if m[c][c] == 0:
            for i in range(c + 1, n):
                if m[i][c]:
                    m[c], m[i] = m[i], m[c]
                    sign = -sign
                    break
            else:
                return 0
        p = m[c][c]
        for i in range(c + 1, n):
            for j in range(c + 1, n):
                m[i][j] = (p * m[i][j] - m[i][c] * m[c][j]) // prev
            m[i][c] = 0
        prev = p
    return sign * m[n - 1][n - 1]
