"""Dense exact linear algebra over the scalar field.

Matrices are lists of rows; entries are scalars from :mod:`arrtool.scalar`
(or ints, which are promoted).  Everything here is exact, so ranks and kernels
are decided without tolerances.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from typing import Optional, Sequence

from .scalar import Scalar, is_zero, scalar_degree

Matrix = list[list[Scalar]]


def _copy(rows: Sequence[Sequence]) -> Matrix:
    return [[x if not isinstance(x, int) else Fraction(x) for x in row] for row in rows]


def zeros(m: int, n: int) -> Matrix:
    return [[Fraction(0)] * n for _ in range(m)]


def rref(rows: Sequence[Sequence], ncols: Optional[int] = None) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and pivot columns.

    Pivots are chosen per column by least scalar degree, ties broken by the
    lowest row index, which keeps rational-function entries small.
    """
    A = _copy(rows)
    if ncols is None:
        ncols = len(A[0]) if A else 0
    pivots: list[int] = []
    top = 0
    for col in range(ncols):
        best = None
        for i in range(top, len(A)):
            x = A[i][col]
            if not is_zero(x):
                key = scalar_degree(x)
                if best is None or key < best[0]:
                    best = (key, i)
                    if key == 0:
                        break
        if best is None:
            continue
        i = best[1]
        A[top], A[i] = A[i], A[top]
        prow = A[top]
        inv = 1 / prow[col]
        if inv != 1:
            prow = [x * inv for x in prow]
            A[top] = prow
        for k in range(len(A)):
            if k == top:
                continue
            f = A[k][col]
            if is_zero(f):
                continue
            row = A[k]
            A[k] = [a - f * b if not is_zero(b) else a for a, b in zip(row, prow)]
        pivots.append(col)
        top += 1
        if top == len(A):
            break
    return A[:top], pivots


def rank(rows: Sequence[Sequence], ncols: Optional[int] = None) -> int:
    if not rows:
        return 0
    return len(rref(rows, ncols)[1])


def nullspace(rows: Sequence[Sequence], ncols: int) -> Matrix:
    """Basis of {x : A x = 0}, one vector per free column (standard basis form)."""
    if not rows:
        basis = zeros(ncols, ncols)
        for i in range(ncols):
            basis[i][i] = Fraction(1)
        return basis
    R, pivots = rref(rows, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, p in zip(R, pivots):
            v[p] = -row[f]
        basis.append(v)
    return basis


def transpose(rows: Sequence[Sequence], ncols: Optional[int] = None) -> Matrix:
    if not rows:
        return [[] for _ in range(ncols or 0)]
    return [list(col) for col in zip(*rows)]


def matvec(rows: Sequence[Sequence], v: Sequence) -> list:
    return [sum((a * b for a, b in zip(row, v) if not is_zero(a)), Fraction(0)) for row in rows]


def matmul(A: Sequence[Sequence], B: Sequence[Sequence]) -> Matrix:
    Bt = transpose(B)
    return [[sum((a * b for a, b in zip(row, col)), Fraction(0)) for col in Bt] for row in A]


def solve(rows: Sequence[Sequence], rhs: Sequence, ncols: int) -> Optional[list]:
    """Some solution of A x = rhs, or None when inconsistent."""
    if not rows:
        return [Fraction(0)] * ncols if all(is_zero(b) for b in rhs) else None
    aug = [list(row) + [b] for row, b in zip(rows, rhs)]
    R, pivots = rref(aug, ncols + 1)
    if pivots and pivots[-1] == ncols:
        return None
    x = [Fraction(0)] * ncols
    for row, p in zip(R, pivots):
        x[p] = row[ncols]
    return x


def min_support_solutions(rows: Sequence[Sequence], rhs: Sequence, ncols: int) -> list[list]:
    """All solutions of least support size whose support is exactly their column set.

    Supports are enumerated by size, then lexicographically in column order,
    so the list order is deterministic.  Exponential in ``ncols``; meant for
    the small systems that come up in degree-one primitives.
    """
    if all(is_zero(b) for b in rhs):
        return [[Fraction(0)] * ncols]
    if solve(rows, rhs, ncols) is None:
        return []
    for size in range(1, ncols + 1):
        found = []
        for support in combinations(range(ncols), size):
            sub = [[row[c] for c in support] for row in rows]
            y = solve(sub, rhs, size)
            if y is not None and all(not is_zero(v) for v in y):
                x = [Fraction(0)] * ncols
                for c, v in zip(support, y):
                    x[c] = v
                found.append(x)
        if found:
            return found
    raise AssertionError("consistent system without a supported solution")


def min_support_solution(rows: Sequence[Sequence], rhs: Sequence, ncols: int) -> Optional[list]:
    """First (lexicographic) solution with the fewest nonzero coordinates."""
    sols = min_support_solutions(rows, rhs, ncols)
    return sols[0] if sols else None


def in_span(vectors: Sequence[Sequence], v: Sequence) -> bool:
    if all(is_zero(x) for x in v):
        return True
    if not vectors:
        return False
    n = len(v)
    return rank(list(vectors) + [list(v)], n) == rank(vectors, n)


def complement_basis(rows: Sequence[Sequence], n: int) -> list[int]:
    """Standard basis indices completing the row space of ``rows`` to F^n.

    Returns the lexicographically first choice: column indices not used as
    pivots when the standard basis vectors are appended after ``rows``.
    """
    R, pivots = rref(rows, n) if rows else ([], [])
    # a standard vector e_j extends the span iff j is not a pivot of the RREF
    return [j for j in range(n) if j not in pivots]


def sparse_rank(rows: Sequence[dict]) -> int:
    """Rank of a matrix given as sparse rows ``{column: value}``.

    Incremental echelon form keyed by leading column; suited to the very
    sparse incidence-like matrices of bar complexes.
    """
    pivots: dict[int, dict] = {}
    for row in rows:
        row = {c: v for c, v in row.items() if not is_zero(v)}
        while row:
            lead = min(row)
            piv = pivots.get(lead)
            if piv is None:
                inv = 1 / row[lead]
                pivots[lead] = {c: v * inv for c, v in row.items()}
                break
            f = row[lead]
            for c, v in piv.items():
                nv = row.get(c, Fraction(0)) - f * v
                if is_zero(nv):
                    row.pop(c, None)
                else:
                    row[c] = nv
    return len(pivots)
