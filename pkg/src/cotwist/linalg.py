"""Exact dense linear algebra over cyclotomic scalars, plus the small
integer Smith-form solver used for coboundary witnesses.

Matrices are lists of row lists.  Everything is pure and allocation-happy;
the dimensions in this package are tiny (at most a few hundred rows).
"""

from __future__ import annotations

from math import gcd
from typing import Optional, Sequence

from .cyclo import CycNum
from .errors import CotwistError

Matrix = list


class SingularMatrixError(CotwistError):
    pass


def zeros(rows: int, cols: int, conductor: int) -> Matrix:
    z = CycNum.zero(conductor)
    return [[z] * cols for _ in range(rows)]


def identity(n: int, conductor: int) -> Matrix:
    m = zeros(n, n, conductor)
    one = CycNum.one(conductor)
    for j in range(n):
        m[j][j] = one
    return m


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    rows, inner, cols = len(a), len(b), len(b[0])
    zero = CycNum.zero(a[0][0].conductor)
    out = []
    for i in range(rows):
        row = []
        for j in range(cols):
            acc = None
            for k in range(inner):
                if a[i][k].is_zero() or b[k][j].is_zero():
                    continue
                term = a[i][k] * b[k][j]
                acc = term if acc is None else acc + term
            row.append(acc if acc is not None else zero)
        out.append(row)
    return out


def mat_vec(a: Matrix, v: Sequence[CycNum]) -> list:
    return [row_dot(row, v) for row in a]


def row_dot(row: Sequence[CycNum], v: Sequence[CycNum]) -> CycNum:
    acc = CycNum.zero(row[0].conductor)
    for x, y in zip(row, v):
        if not (x.is_zero() or y.is_zero()):
            acc = acc + x * y
    return acc


def mat_pow(a: Matrix, e: int, conductor: int) -> Matrix:
    result = identity(len(a), conductor)
    base = [list(r) for r in a]
    while e:
        if e & 1:
            result = mat_mul(result, base)
        base = mat_mul(base, base)
        e >>= 1
    return result


def mat_eq(a: Matrix, b: Matrix) -> bool:
    return all(x == y for ra, rb in zip(a, b) for x, y in zip(ra, rb))


def rref(matrix: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form; returns (rows, pivot column list)."""
    rows = [list(r) for r in matrix]
    if not rows:
        return rows, []
    ncols = len(rows[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pivot_row = None
        for i in range(r, len(rows)):
            if not rows[i][c].is_zero():
                pivot_row = i
                break
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        inv = rows[r][c].inverse()
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and not rows[i][c].is_zero():
                factor = rows[i][c]
                rows[i] = [x - factor * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def rank(matrix: Matrix) -> int:
    return len(rref(matrix)[1])


def row_space_rref(matrix: Matrix) -> list:
    """Canonical basis of the row space (nonzero rows of the RREF)."""
    rows, pivots = rref(matrix)
    return rows[: len(pivots)]


def row_spaces_equal(a: Matrix, b: Matrix) -> bool:
    return row_space_rref(a) == row_space_rref(b)


def kernel_basis(matrix: Matrix, ncols: int, conductor: int) -> list:
    """Basis of the right kernel.  Each vector is scaled so its first nonzero
    coordinate is 1; vectors are ordered by that coordinate's index."""
    rows, pivots = rref(matrix)
    pivot_set = set(pivots)
    free = [c for c in range(ncols) if c not in pivot_set]
    basis = []
    zero = CycNum.zero(conductor)
    one = CycNum.one(conductor)
    for f in free:
        vec = [zero] * ncols
        vec[f] = one
        for r, p in enumerate(pivots):
            vec[p] = -rows[r][f]
        first = next(i for i, x in enumerate(vec) if not x.is_zero())
        scale = vec[first].inverse()
        vec = [x * scale for x in vec]
        basis.append((first, vec))
    basis.sort(key=lambda pair: pair[0])
    return [vec for _, vec in basis]


def mat_inverse(matrix: Matrix) -> Matrix:
    n = len(matrix)
    if any(len(r) != n for r in matrix):
        raise SingularMatrixError("matrix is not square")
    conductor = matrix[0][0].conductor
    aug = [list(row) + list(idrow)
           for row, idrow in zip(matrix, identity(n, conductor))]
    rows, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise SingularMatrixError("matrix is singular")
    return [row[n:] for row in rows[:n]]


# ---------------------------------------------------------------------------
# integer linear algebra: Smith normal form and modular solving
# ---------------------------------------------------------------------------

def smith_normal_form(matrix: list) -> tuple[list, list, list]:
    """Return (U, S, V) with U*A*V == S diagonal (nonnegative entries)."""
    a = [list(map(int, row)) for row in matrix]
    m = len(a)
    n = len(a[0]) if m else 0
    u = [[int(i == j) for j in range(m)] for i in range(m)]
    v = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, q):
        for k in range(n):
            a[dst][k] += q * a[src][k]
        for k in range(m):
            u[dst][k] += q * u[src][k]

    def add_col(src, dst, q):
        for row in a:
            row[dst] += q * row[src]
        for row in v:
            row[dst] += q * row[src]

    t = 0
    while t < min(m, n):
        # find a smallest-magnitude nonzero pivot in the submatrix
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if a[i][j] != 0 and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        dirty = False
        for i in range(t + 1, m):
            if a[i][t] % a[t][t] != 0:
                dirty = True
            add_row(t, i, -(a[i][t] // a[t][t]))
        for j in range(t + 1, n):
            if a[t][j] % a[t][t] != 0:
                dirty = True
            add_col(t, j, -(a[t][j] // a[t][t]))
        if dirty or any(a[i][t] for i in range(t + 1, m)) \
                or any(a[t][j] for j in range(t + 1, n)):
            continue
        if a[t][t] < 0:
            for k in range(n):
                a[t][k] = -a[t][k]
            for k in range(m):
                u[t][k] = -u[t][k]
        t += 1
    return u, a, v


def solve_mod(matrix: list, rhs: list, modulus: int) -> Optional[list]:
    """One solution x of A*x == rhs (mod modulus), or None."""
    m = len(matrix)
    n = len(matrix[0]) if m else 0
    u, s, v = smith_normal_form(matrix)
    c = [sum(u[i][k] * rhs[k] for k in range(m)) % modulus for i in range(m)]
    y = [0] * n
    for i in range(m):
        d = s[i][i] if i < n else 0
        if d == 0:
            if c[i] % modulus != 0:
                return None
            continue
        g = gcd(d, modulus)
        if c[i] % g != 0:
            return None
        md = modulus // g
        y[i] = ((c[i] // g) * pow(d // g, -1, md)) % md
    x = [sum(v[i][k] * y[k] for k in range(n)) % modulus for i in range(n)]
    return x
