"""Exact integer linear algebra: Smith normal form and integer / modular solving.

Everything here works with Python ints, so entries never overflow.  Matrices
are stored densely as lists of rows; the problem sizes this package targets
(a few hundred rows and columns, mostly 0/+-1 entries) do not need more.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterable, Optional, Sequence


class IntegerMatrix:
    """Dense matrix of unbounded integers with explicit shape.

    The shape is kept separately from the row data so that 0 x n and n x 0
    matrices (coboundaries into or out of an empty degree) behave.
    """

    __slots__ = ("nrows", "ncols", "rows")

    def __init__(self, nrows: int, ncols: int, rows: Optional[list] = None):
        if rows is None:
            rows = [[0] * ncols for _ in range(nrows)]
        if len(rows) != nrows or any(len(r) != ncols for r in rows):
            raise ValueError(f"row data does not match shape {nrows}x{ncols}")
        self.nrows = nrows
        self.ncols = ncols
        self.rows = rows

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[int]], ncols: Optional[int] = None) -> "IntegerMatrix":
        data = [[int(v) for v in r] for r in rows]
        if ncols is None:
            if not data:
                raise ValueError("ncols is required for a matrix with no rows")
            ncols = len(data[0])
        return cls(len(data), ncols, data)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], nrows: int) -> "IntegerMatrix":
        ncols = len(columns)
        rows = [[int(columns[j][i]) for j in range(ncols)] for i in range(nrows)]
        return cls(nrows, ncols, rows)

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "IntegerMatrix":
        return cls(nrows, ncols)

    @classmethod
    def identity(cls, n: int) -> "IntegerMatrix":
        m = cls(n, n)
        for i in range(n):
            m.rows[i][i] = 1
        return m

    @property
    def shape(self) -> tuple:
        return (self.nrows, self.ncols)

    def copy(self) -> "IntegerMatrix":
        return IntegerMatrix(self.nrows, self.ncols, [list(r) for r in self.rows])

    def tolist(self) -> list:
        return [list(r) for r in self.rows]

    @property
    def T(self) -> "IntegerMatrix":
        cols = [list(c) for c in zip(*self.rows)] if self.nrows else [[] for _ in range(self.ncols)]
        return IntegerMatrix(self.ncols, self.nrows, cols)

    def column(self, j: int) -> list:
        return [r[j] for r in self.rows]

    def columns(self) -> list:
        return [self.column(j) for j in range(self.ncols)]

    def __getitem__(self, idx):
        i, j = idx
        return self.rows[i][j]

    def __matmul__(self, other):
        if isinstance(other, IntegerMatrix):
            if self.ncols != other.nrows:
                raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
            out = IntegerMatrix(self.nrows, other.ncols)
            for i, row in enumerate(self.rows):
                acc = out.rows[i]
                for k, a in enumerate(row):
                    if a:
                        for j, b in enumerate(other.rows[k]):
                            if b:
                                acc[j] += a * b
            return out
        return self.apply(other)

    def apply(self, vec: Sequence[int]) -> list:
        if len(vec) != self.ncols:
            raise ValueError(f"vector of length {len(vec)} does not fit {self.shape}")
        nz = [(k, v) for k, v in enumerate(vec) if v]
        return [sum(row[k] * v for k, v in nz) for row in self.rows]

    def is_zero(self) -> bool:
        return not any(any(r) for r in self.rows)

    def __eq__(self, other):
        if not isinstance(other, IntegerMatrix):
            return NotImplemented
        return self.shape == other.shape and self.rows == other.rows

    def __repr__(self):
        return f"IntegerMatrix({self.nrows}, {self.ncols}, {self.rows!r})"


def as_matrix(A) -> IntegerMatrix:
    if isinstance(A, IntegerMatrix):
        return A
    return IntegerMatrix.from_rows(A)


def determinant(A) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    A = as_matrix(A)
    if A.nrows != A.ncols:
        raise ValueError("determinant of a non-square matrix")
    n = A.nrows
    M = A.tolist()
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k]:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1] if n else 1


@dataclass(frozen=True)
class SmithDecomposition:
    """``D = U @ A @ V`` with ``U``, ``V`` unimodular and ``D`` in Smith form.

    ``U_inv`` and ``V_inv`` are the exact inverses; cohomology needs them to
    move between the original and the diagonalising bases.
    """

    U: IntegerMatrix
    D: IntegerMatrix
    V: IntegerMatrix
    U_inv: IntegerMatrix
    V_inv: IntegerMatrix

    @property
    def diagonal(self) -> list:
        return [self.D.rows[i][i] for i in range(min(self.D.shape))]

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d)

    @property
    def invariant_factors(self) -> list:
        return [d for d in self.diagonal if d]


def smith_normal_form(A) -> SmithDecomposition:
    """Smith normal form with unimodular transforms.

    Each round moves the nonzero entry of least absolute value to the pivot,
    clears its row and column by Euclidean steps and, when the pivot fails to
    divide the rest of the block, folds an offending row in and repeats.
    """
    A = as_matrix(A)
    m, n = A.shape
    D = A.tolist()
    # U and V_inv only see row operations; U_inv and V only see column
    # operations, so those two are kept transposed to turn them into row ops.
    # All four stay sparse (one dict per row) until the end.
    U = [{i: 1} for i in range(m)]
    U_inv_t = [{i: 1} for i in range(m)]
    V_t = [{i: 1} for i in range(n)]
    V_inv = [{i: 1} for i in range(n)]

    def axpy(dst: dict, src: dict, q: int):
        if not q:
            return
        for j, v in src.items():
            w = dst.get(j, 0) + q * v
            if w:
                dst[j] = w
            else:
                del dst[j]

    def add_row(dst, src, q, t0):
        # row_dst += q * row_src
        rd, rs = D[dst], D[src]
        for j in range(t0, n):
            v = rs[j]
            if v:
                rd[j] += q * v
        axpy(U[dst], U[src], q)
        # inverse transform: col_src -= q * col_dst
        axpy(U_inv_t[src], U_inv_t[dst], -q)

    def add_col(dst, src, q, nzrows):
        # col_dst += q * col_src, where nzrows holds the nonzero rows of col_src
        for i in nzrows:
            row = D[i]
            row[dst] += q * row[src]
        axpy(V_t[dst], V_t[src], q)
        # inverse transform: row_src -= q * row_dst
        axpy(V_inv[src], V_inv[dst], -q)

    def swap_rows(i, k):
        if i != k:
            D[i], D[k] = D[k], D[i]
            U[i], U[k] = U[k], U[i]
            U_inv_t[i], U_inv_t[k] = U_inv_t[k], U_inv_t[i]

    def swap_cols(i, k):
        if i != k:
            for row in D:
                row[i], row[k] = row[k], row[i]
            V_t[i], V_t[k] = V_t[k], V_t[i]
            V_inv[i], V_inv[k] = V_inv[k], V_inv[i]

    def negate_row(i):
        D[i] = [-v for v in D[i]]
        U[i] = {j: -v for j, v in U[i].items()}
        U_inv_t[i] = {j: -v for j, v in U_inv_t[i].items()}

    def find_pivot(t):
        best = None
        for i in range(t, m):
            row = D[i]
            for j in range(t, n):
                v = row[j]
                if v:
                    a = v if v > 0 else -v
                    if best is None or a < best[0]:
                        best = (a, i, j)
                        if a == 1:
                            return best
        return best

    t = 0
    while t < min(m, n):
        piv = find_pivot(t)
        if piv is None:
            break
        _, pi, pj = piv
        swap_rows(t, pi)
        swap_cols(t, pj)
        while True:
            p = D[t][t]
            clean = True
            for i in range(t + 1, m):
                v = D[i][t]
                if v:
                    add_row(i, t, -(v // p), t)
                    if D[i][t]:
                        clean = False
            nzrows = [i for i in range(t, m) if D[i][t]]
            for j in range(t + 1, n):
                v = D[t][j]
                if v:
                    add_col(j, t, -(v // p), nzrows)
                    if D[t][j]:
                        clean = False
            if not clean:
                # a remainder smaller than the pivot survived; promote it
                best = None
                for i in range(t + 1, m):
                    v = abs(D[i][t])
                    if v and (best is None or v < best[0]):
                        best = (v, i, None)
                for j in range(t + 1, n):
                    v = abs(D[t][j])
                    if v and (best is None or v < best[0]):
                        best = (v, None, j)
                if best[1] is not None:
                    swap_rows(t, best[1])
                else:
                    swap_cols(t, best[2])
                continue
            if p == 1 or p == -1:
                break
            bad = None
            for i in range(t + 1, m):
                row = D[i]
                for j in range(t + 1, n):
                    if row[j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            add_row(t, bad, 1, t)
        if D[t][t] < 0:
            negate_row(t)
        t += 1

    return SmithDecomposition(
        U=_densify(U, m),
        D=IntegerMatrix(m, n, D),
        V=_densify(V_t, n).T,
        U_inv=_densify(U_inv_t, m).T,
        V_inv=_densify(V_inv, n),
    )


def _densify(rows: list, ncols: int) -> IntegerMatrix:
    dense = []
    for r in rows:
        row = [0] * ncols
        for j, v in r.items():
            row[j] = v
        dense.append(row)
    return IntegerMatrix(len(rows), ncols, dense)


def solve_integer(A, b: Sequence[int], snf: Optional[SmithDecomposition] = None) -> Optional[list]:
    """Some integer ``x`` with ``A @ x == b``, or ``None`` if there is none.

    With ``D = U A V`` the system becomes ``D y = U b`` for ``y = V^-1 x``,
    which is solvable iff every diagonal entry divides its row of ``U b``
    and the rows below the rank are zero.
    """
    A = as_matrix(A)
    if len(b) != A.nrows:
        raise ValueError(f"right-hand side of length {len(b)} does not fit {A.shape}")
    if snf is None:
        snf = smith_normal_form(A)
    c = snf.U.apply(b)
    diag = snf.diagonal
    y = [0] * A.ncols
    for i, ci in enumerate(c):
        d = diag[i] if i < len(diag) else 0
        if d == 0:
            if ci:
                return None
        elif ci % d:
            return None
        else:
            y[i] = ci // d
    return snf.V.apply(y)


def solve_mod(A, b: Sequence[int], n: int) -> Optional[list]:
    """Some ``x`` with ``A @ x == b (mod n)``, entries in ``[0, n)``; else ``None``.

    Reduced to the integer system ``[A | n I] (x, t) = b``.
    """
    A = as_matrix(A)
    if n < 2:
        raise ValueError(f"modulus must be at least 2, got {n}")
    if len(b) != A.nrows:
        raise ValueError(f"right-hand side of length {len(b)} does not fit {A.shape}")
    aug = IntegerMatrix(
        A.nrows,
        A.ncols + A.nrows,
        [list(row) + [n if j == i else 0 for j in range(A.nrows)] for i, row in enumerate(A.rows)],
    )
    sol = solve_integer(aug, list(b))
    if sol is None:
        return None
    return [v % n for v in sol[: A.ncols]]


def kernel_basis(A) -> list:
    """Basis (as column vectors) of the integer kernel of ``A``; it is saturated."""
    A = as_matrix(A)
    snf = smith_normal_form(A)
    r = snf.rank
    return [snf.V.column(j) for j in range(r, A.ncols)]


def lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b if a and b else 0
