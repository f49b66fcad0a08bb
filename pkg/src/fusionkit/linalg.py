"""Dense Gaussian elimination over an arbitrary field of scalars.

Entries may be ``int``/``Fraction``, :class:`~fusionkit.scalars.CycloNumber`
or :class:`~fusionkit.scalars.BigComplex`.  Exact entries pivot on the first
nonzero element; as soon as a numeric entry shows up the elimination switches
to partial pivoting on magnitude and zero tests become tolerance based.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Matrix = list[list]


def is_zero(x) -> bool:
    test = getattr(x, "is_zero", None)
    if test is not None:
        return test()
    return x == 0


def _is_numeric(x) -> bool:
    return getattr(x, "is_numeric", False)


def _magnitude(x):
    return abs(x.value)


def rref(matrix: Sequence[Sequence], ncols: int | None = None) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and the list of pivot columns."""
    rows = [list(r) for r in matrix]
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    numeric = any(_is_numeric(x) for r in rows for x in r)
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == len(rows):
            break
        candidates = [i for i in range(r, len(rows)) if not is_zero(rows[i][c])]
        if not candidates:
            continue
        if numeric:
            p = max(candidates, key=lambda i: _magnitude(rows[i][c]) if _is_numeric(rows[i][c])
                    else abs(complex(rows[i][c])))
        else:
            p = candidates[0]
        rows[r], rows[p] = rows[p], rows[r]
        inv = 1 / rows[r][c] if not isinstance(rows[r][c], int) else Fraction(1, rows[r][c])
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and not is_zero(rows[i][c]):
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    return rows, pivots


def rank(matrix: Sequence[Sequence], ncols: int | None = None) -> int:
    return len(rref(matrix, ncols)[1])


def nullspace(matrix: Sequence[Sequence], ncols: int) -> list[list]:
    """Basis of {v : M v = 0}; each basis vector has a 1 at its free column."""
    if not matrix:
        return [[Fraction(int(i == j)) for i in range(ncols)] for j in range(ncols)]
    rows, pivots = rref(matrix, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v: list = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for r, p in enumerate(pivots):
            v[p] = -rows[r][f]
        basis.append(v)
    return basis


def solve(a: Sequence[Sequence], b: Sequence) -> list | None:
    """A solution of ``a x = b`` (free variables set to zero), or None."""
    ncols = len(a[0]) if a else 0
    aug = [list(row) + [rhs] for row, rhs in zip(a, b)]
    rows, pivots = rref(aug, ncols + 1)
    if ncols in pivots:
        return None
    x: list = [Fraction(0)] * ncols
    for r, p in enumerate(pivots):
        x[p] = rows[r][ncols]
    return x


def inverse(a: Sequence[Sequence]) -> Matrix:
    n = len(a)
    aug = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(a)]
    rows, pivots = rref(aug, 2 * n)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in rows[:n]]


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> Matrix:
    cols = list(zip(*b))
    return [[sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in cols] for row in a]


def matvec(a: Sequence[Sequence], v: Sequence) -> list:
    return [sum((x * y for x, y in zip(row, v)), Fraction(0)) for row in a]


def transpose(a: Sequence[Sequence]) -> Matrix:
    return [list(col) for col in zip(*a)]


def identity(n: int) -> Matrix:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def trace(a: Sequence[Sequence]):
    return sum((a[i][i] for i in range(len(a))), Fraction(0))


def charpoly(a: Sequence[Sequence]) -> list:
    """Coefficients (lowest degree first) of det(xI - a), by Faddeev-LeVerrier."""
    n = len(a)
    coeffs: list = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    m: Matrix = [[Fraction(0)] * n for _ in range(n)]
    for k in range(1, n + 1):
        am = matmul(a, m)
        m = [[am[i][j] + (coeffs[n - k + 1] if i == j else 0) for j in range(n)] for i in range(n)]
        coeffs[n - k] = -trace(matmul(a, m)) / k
    return coeffs
