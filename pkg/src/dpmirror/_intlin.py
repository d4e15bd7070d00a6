"""Exact integer linear algebra for lattice computations.

Matrices are plain lists of rows of Python ints (arbitrary precision);
vectors are lists of ints.  Everything here is exact: Hermite column
reduction with a recorded unimodular transform, saturated integer kernels,
completion of a primitive vector to a unimodular matrix, Bareiss
determinants, exact linear solves over the integers, and signatures of
symmetric matrices by congruence diagonalization over the rationals.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import List, Optional, Sequence, Tuple

IntMatrix = List[List[int]]
IntVector = List[int]


def identity_matrix(n: int) -> IntMatrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def transpose(matrix: Sequence[Sequence[int]]) -> IntMatrix:
    return [list(col) for col in zip(*matrix)]


def matrix_multiply(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> IntMatrix:
    if a and b and len(a[0]) != len(b):
        raise ValueError("inner dimensions do not match")
    cols = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in cols] for row in a]


def matrix_vector(a: Sequence[Sequence[int]], v: Sequence[int]) -> IntVector:
    if a and len(a[0]) != len(v):
        raise ValueError("dimensions do not match")
    return [sum(x * y for x, y in zip(row, v)) for row in a]


def extended_gcd(a: int, b: int) -> Tuple[int, int, int]:
    """Return ``(g, s, t)`` with ``g = gcd(a, b) >= 0`` and ``s*a + t*b = g``."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def vector_gcd(v: Sequence[int]) -> int:
    g = 0
    for x in v:
        g = gcd(g, abs(x))
    return g


def primitive_vector(v: Sequence[int]) -> IntVector:
    """Divide a nonzero integer vector by the gcd of its entries."""
    g = vector_gcd(v)
    if g == 0:
        raise ValueError("zero vector has no primitive multiple")
    return [x // g for x in v]


def col_hnf_transform(matrix: Sequence[Sequence[int]]) -> Tuple[IntMatrix, IntMatrix]:
    """Column-style Hermite reduction ``matrix * U = H`` with ``U`` unimodular.

    ``H`` is in column echelon form with nonnegative pivots and its zero
    columns collected at the right; the columns of ``U`` sitting over the
    zero columns of ``H`` form a saturated basis of the kernel.
    """
    a = [list(row) for row in matrix]
    if not a:
        raise ValueError("matrix must have at least one row")
    m, n = len(a), len(a[0])
    u = identity_matrix(n)

    def column_op(j1: int, j2: int, x: int, y: int, z: int, w: int) -> None:
        for mat in (a, u):
            for row in mat:
                v1, v2 = row[j1], row[j2]
                row[j1], row[j2] = x * v1 + y * v2, z * v1 + w * v2

    row, col = 0, 0
    while row < m and col < n:
        pivot = next((j for j in range(col, n) if a[row][j] != 0), None)
        if pivot is None:
            row += 1
            continue
        if pivot != col:
            column_op(col, pivot, 0, 1, 1, 0)
        for j in range(col + 1, n):
            while a[row][j] != 0:
                q = a[row][j] // a[row][col]
                column_op(j, col, 1, -q, 0, 1)
                if a[row][j] != 0:
                    column_op(col, j, 0, 1, 1, 0)
        if a[row][col] < 0:
            column_op(col, col, -1, 0, 0, 1)
        row += 1
        col += 1
    return a, u


def column_space_basis(matrix: Sequence[Sequence[int]]) -> List[IntVector]:
    """Basis of the lattice spanned by the columns (not saturated)."""
    h, _u = col_hnf_transform(matrix)
    m = len(h)
    return [
        [h[i][j] for i in range(m)]
        for j in range(len(h[0]))
        if any(h[i][j] != 0 for i in range(m))
    ]


def rank_integer(matrix: Sequence[Sequence[int]]) -> int:
    return len(column_space_basis(matrix))


def integer_kernel(matrix: Sequence[Sequence[int]]) -> List[IntVector]:
    """Saturated basis of ``{v : matrix @ v = 0}`` (kernel columns of U)."""
    h, u = col_hnf_transform(matrix)
    m, n = len(h), len(h[0])
    return [
        [u[i][j] for i in range(n)]
        for j in range(n)
        if all(h[i][j] == 0 for i in range(m))
    ]


def complete_unimodular(column: Sequence[int]) -> IntMatrix:
    """A unimodular matrix whose first column is the given primitive vector."""
    n = len(column)
    if n == 0:
        raise ValueError("empty vector")
    if vector_gcd(column) != 1:
        raise ValueError("vector must be primitive to span a unimodular column")
    forward = identity_matrix(n)  # forward @ column == e_0 (up to sign)
    inverse = identity_matrix(n)  # running inverse of `forward`
    work = list(column)
    for i in range(1, n):
        a, b = work[0], work[i]
        if b == 0:
            continue
        g, s, t = extended_gcd(a, b)
        # rows (0, i) of `forward` by [[s, t], [-b/g, a/g]] (determinant 1) ...
        for j in range(n):
            f0, fi = forward[0][j], forward[i][j]
            forward[0][j] = s * f0 + t * fi
            forward[i][j] = -(b // g) * f0 + (a // g) * fi
        # ... and columns (0, i) of `inverse` by the inverse block.
        for r in range(n):
            v0, vi = inverse[r][0], inverse[r][i]
            inverse[r][0] = (a // g) * v0 + (b // g) * vi
            inverse[r][i] = -t * v0 + s * vi
        work[0], work[i] = g, 0
    if work[0] == -1:
        for j in range(n):
            forward[0][j] = -forward[0][j]
        for r in range(n):
            inverse[r][0] = -inverse[r][0]
        work[0] = 1
    if [inverse[r][0] for r in range(n)] != list(column):
        raise AssertionError("unimodular completion failed to reproduce the column")
    return inverse


def solve_rational(
    matrix: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]
) -> Optional[List[Fraction]]:
    """A particular rational solution of ``matrix @ x = rhs``, or None.

    Gauss-Jordan elimination with exact arithmetic; free variables are set
    to zero.  The matrix may be rectangular or singular.
    """
    rows = [[Fraction(x) for x in row] + [Fraction(rhs[i])] for i, row in enumerate(matrix)]
    m = len(rows)
    n = len(rows[0]) - 1 if rows else 0
    pivots: List[Tuple[int, int]] = []
    r = 0
    for c in range(n):
        pivot = next((i for i in range(r, m) if rows[i][c]), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        scale = rows[r][c]
        rows[r] = [x / scale for x in rows[r]]
        for i in range(m):
            if i != r and rows[i][c]:
                factor = rows[i][c]
                rows[i] = [x - factor * y for x, y in zip(rows[i], rows[r])]
        pivots.append((r, c))
        r += 1
        if r == m:
            break
    if any(rows[i][n] for i in range(r, m)):
        return None
    solution = [Fraction(0)] * n
    for row, col in pivots:
        solution[col] = rows[row][n]
    return solution


def solve_integer(
    matrix: Sequence[Sequence[int]], rhs: Sequence[int]
) -> Optional[IntVector]:
    """One integer solution of ``matrix @ x = rhs``, or None if there is none."""
    h, u = col_hnf_transform(matrix)
    m, n = len(h), len(h[0])
    if len(rhs) != m:
        raise ValueError("dimensions do not match")
    residual = list(rhs)
    y = [0] * n
    for j in range(n):
        lead = next((i for i in range(m) if h[i][j] != 0), None)
        if lead is None:
            continue
        value = residual[lead]
        if value % h[lead][j] != 0:
            return None
        y[j] = value // h[lead][j]
        for i in range(m):
            residual[i] -= y[j] * h[i][j]
    if any(residual):
        return None
    return matrix_vector(u, y)


def determinant_integer(matrix: Sequence[Sequence[int]]) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    n = len(matrix)
    if any(len(row) != n for row in matrix):
        raise ValueError("matrix must be square")
    if n == 0:
        return 1
    m = [list(row) for row in matrix]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def inverse_exact(matrix: Sequence[Sequence[int]]) -> List[List[Fraction]]:
    """Exact inverse over the rationals (raises on singular input)."""
    n = len(matrix)
    if any(len(row) != n for row in matrix):
        raise ValueError("matrix must be square")
    work = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
            for i, row in enumerate(matrix)]
    for k in range(n):
        pivot = next((i for i in range(k, n) if work[i][k] != 0), None)
        if pivot is None:
            raise ValueError("matrix is singular")
        work[k], work[pivot] = work[pivot], work[k]
        scale = work[k][k]
        work[k] = [x / scale for x in work[k]]
        for i in range(n):
            if i != k and work[i][k]:
                factor = work[i][k]
                work[i] = [x - factor * y for x, y in zip(work[i], work[k])]
    return [row[n:] for row in work]


def unimodular_inverse(matrix: Sequence[Sequence[int]]) -> IntMatrix:
    """Integer inverse of an integer matrix with determinant ±1."""
    rational = inverse_exact(matrix)
    out: IntMatrix = []
    for row in rational:
        if any(x.denominator != 1 for x in row):
            raise ValueError("matrix is not unimodular; inverse is not integral")
        out.append([int(x) for x in row])
    return out


def symmetric_signature(matrix: Sequence[Sequence[int]]) -> Tuple[int, int, int]:
    """Exact inertia ``(positive, negative, zero)`` of a symmetric matrix.

    Diagonalizes by rational congruence (Sylvester's law); when the active
    diagonal vanishes but an off-diagonal entry survives, a hyperbolic-pair
    basis change ``e_i <- e_i + e_j`` restores a usable pivot.
    """
    n = len(matrix)
    m = [[Fraction(x) for x in row] for row in matrix]
    for i in range(n):
        for j in range(n):
            if m[i][j] != m[j][i]:
                raise ValueError("matrix is not symmetric")
    pos = neg = zero = 0
    k = 0
    while k < n:
        pivot = next((i for i in range(k, n) if m[i][i] != 0), None)
        if pivot is None:
            pair = next(
                (
                    (i, j)
                    for i in range(k, n)
                    for j in range(i + 1, n)
                    if m[i][j] != 0
                ),
                None,
            )
            if pair is None:
                zero += n - k
                break
            i, j = pair
            for c in range(n):
                m[i][c] += m[j][c]
            for r in range(n):
                m[r][i] += m[r][j]
            pivot = i
        if pivot != k:
            m[k], m[pivot] = m[pivot], m[k]
            for r in range(n):
                m[r][k], m[r][pivot] = m[r][pivot], m[r][k]
        d = m[k][k]
        if d > 0:
            pos += 1
        else:
            neg += 1
        for i in range(k + 1, n):
            factor = m[i][k] / d
            if factor:
                for c in range(n):
                    m[i][c] -= factor * m[k][c]
                for r in range(n):
                    m[r][i] -= factor * m[k][r]
        k += 1
    return pos, neg, zero
