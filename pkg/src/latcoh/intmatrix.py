"""Exact integer matrices and the integer normal forms built on them.

All arithmetic uses plain Python ints, so there is no precision ceiling;
Hermite and Smith intermediates outgrow 64 bits even for small inputs.
Matrices are immutable value objects and every transform returns new ones.

Conventions, fixed once for the whole package:

* Hermite form is the *column* form ``H = M * U`` with ``U`` unimodular.
  Nonzero columns come first, the topmost nonzero rows of successive
  columns strictly increase (a lower-triangular staircase), pivots are
  positive, entries in a pivot's row left of the pivot are reduced into
  ``[0, pivot)`` and entries right of it are zero.  The form is canonical:
  two matrices have the same column span iff they produce the same Hermite
  form up to trailing zero columns.

* Smith form is ``S = U * M * V`` with both transforms unimodular and ``S``
  diagonal, nonnegative, each diagonal entry dividing the next.
"""

from __future__ import annotations

from typing import Iterable, Iterator, Optional, Sequence


class IntMatrix:
    """An immutable matrix of Python ints, stored row-major.

    >>> m = IntMatrix([[1, 2], [3, 4]])
    >>> m[1, 0]
    3
    >>> (m * IntMatrix.identity(2)) == m
    True
    """

    __slots__ = ("rows", "cols", "_rows")

    def __init__(self, entries: Iterable[Iterable[int]] = (), cols: Optional[int] = None):
        data = tuple(tuple(int(v) for v in row) for row in entries)
        if data:
            width = len(data[0])
            if any(len(row) != width for row in data):
                raise ValueError("rows have unequal lengths")
            if cols is not None and cols != width:
                raise ValueError("explicit column count disagrees with rows")
            cols = width
        elif cols is None:
            cols = 0
        self.rows = len(data)
        self.cols = cols
        self._rows = data

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls([[0] * cols for _ in range(rows)], cols=cols)

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)], cols=n)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], rows: Optional[int] = None) -> "IntMatrix":
        columns = [list(c) for c in columns]
        if columns:
            if rows is None:
                rows = len(columns[0])
            if any(len(c) != rows for c in columns):
                raise ValueError("columns have unequal lengths")
        elif rows is None:
            rows = 0
        return cls([[col[i] for col in columns] for i in range(rows)], cols=len(columns))

    def __getitem__(self, key: tuple) -> int:
        i, j = key
        return self._rows[i][j]

    def row(self, i: int) -> tuple:
        return self._rows[i]

    def column(self, j: int) -> tuple:
        return tuple(row[j] for row in self._rows)

    def columns(self) -> list:
        return [self.column(j) for j in range(self.cols)]

    def to_rows(self) -> list:
        return [list(row) for row in self._rows]

    def transpose(self) -> "IntMatrix":
        return IntMatrix.from_columns(self._rows, rows=self.cols)

    def hstack(self, other: "IntMatrix") -> "IntMatrix":
        if self.rows != other.rows:
            raise ValueError("row counts differ")
        return IntMatrix(
            [self._rows[i] + other._rows[i] for i in range(self.rows)],
            cols=self.cols + other.cols,
        )

    def take_rows(self, indices: Sequence[int]) -> "IntMatrix":
        return IntMatrix([self._rows[i] for i in indices], cols=self.cols)

    def take_columns(self, indices: Sequence[int]) -> "IntMatrix":
        return IntMatrix.from_columns([self.column(j) for j in indices], rows=self.rows)

    def scaled(self, k: int) -> "IntMatrix":
        return IntMatrix([[k * v for v in row] for row in self._rows], cols=self.cols)

    def __mul__(self, other: "IntMatrix") -> "IntMatrix":
        if not isinstance(other, IntMatrix):
            return NotImplemented
        if self.cols != other.rows:
            raise ValueError("inner dimensions disagree")
        ocols = other.cols
        out = []
        for row in self._rows:
            acc = [0] * ocols
            for k, v in enumerate(row):
                if v:
                    orow = other._rows[k]
                    for j in range(ocols):
                        w = orow[j]
                        if w:
                            acc[j] += v * w
            out.append(acc)
        return IntMatrix(out, cols=ocols)

    def apply(self, vec: Sequence[int]) -> tuple:
        if len(vec) != self.cols:
            raise ValueError("vector length disagrees with column count")
        return tuple(sum(row[j] * vec[j] for j in range(self.cols) if vec[j]) for row in self._rows)

    def is_zero(self) -> bool:
        return all(all(v == 0 for v in row) for row in self._rows)

    def det(self) -> int:
        """Exact determinant by fraction-free (Bareiss) elimination."""
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        n = self.rows
        if n == 0:
            return 1
        a = self.to_rows()
        sign = 1
        prev = 1
        for k in range(n - 1):
            if a[k][k] == 0:
                swap = next((i for i in range(k + 1, n) if a[i][k]), None)
                if swap is None:
                    return 0
                a[k], a[swap] = a[swap], a[k]
                sign = -sign
            pivot = a[k][k]
            for i in range(k + 1, n):
                aik = a[i][k]
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * pivot - aik * a[k][j]) // prev
                a[i][k] = 0
            prev = pivot
        return sign * a[n - 1][n - 1]

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, IntMatrix)
            and self.cols == other.cols
            and self._rows == other._rows
        )

    def __hash__(self) -> int:
        return hash((self.cols, self._rows))

    def __repr__(self) -> str:
        return f"IntMatrix({[list(r) for r in self._rows]!r})"


def _col_sub(target: list, source: list, q: int) -> None:
    for i in range(len(target)):
        target[i] -= q * source[i]


def hnf(matrix: IntMatrix, transform: bool = True):
    """Canonical column Hermite form.

    Returns ``(H, U)`` with ``H = matrix * U`` and ``U`` unimodular, or just
    ``H`` when ``transform`` is false.  Zero columns of ``H`` trail.

    >>> h, u = hnf(IntMatrix([[4, 6]]))
    >>> h
    IntMatrix([[2, 0]])
    >>> hnf(IntMatrix([[2, 4], [6, 8]]), transform=False)
    IntMatrix([[2, 0], [2, 4]])
    """
    n, m = matrix.rows, matrix.cols
    cols = [list(matrix.column(j)) for j in range(m)]
    ucols = [[1 if i == j else 0 for i in range(m)] for j in range(m)] if transform else None
    k = 0
    for row in range(n):
        if k == m:
            break
        while True:
            nonzero = [j for j in range(k, m) if cols[j][row]]
            if not nonzero:
                placed = False
                break
            j0 = min(nonzero, key=lambda j: (abs(cols[j][row]), j))
            if j0 != k:
                cols[k], cols[j0] = cols[j0], cols[k]
                if ucols is not None:
                    ucols[k], ucols[j0] = ucols[j0], ucols[k]
            if len(nonzero) == 1:
                placed = True
                break
            a = cols[k][row]
            for j in range(k + 1, m):
                v = cols[j][row]
                if v:
                    q = v // a
                    if q:
                        _col_sub(cols[j], cols[k], q)
                        if ucols is not None:
                            _col_sub(ucols[j], ucols[k], q)
        if placed:
            if cols[k][row] < 0:
                cols[k] = [-v for v in cols[k]]
                if ucols is not None:
                    ucols[k] = [-v for v in ucols[k]]
            pivot = cols[k][row]
            for j in range(k):
                q = cols[j][row] // pivot
                if q:
                    _col_sub(cols[j], cols[k], q)
                    if ucols is not None:
                        _col_sub(ucols[j], ucols[k], q)
            k += 1
    H = IntMatrix.from_columns(cols, rows=n)
    if not transform:
        return H
    return H, IntMatrix.from_columns(ucols, rows=m)


def strip_zero_columns(matrix: IntMatrix) -> IntMatrix:
    keep = [j for j in range(matrix.cols) if any(matrix[i, j] for i in range(matrix.rows))]
    return matrix.take_columns(keep)


class HnfSolver:
    """Back-substitution against a fixed canonical column Hermite form.

    Solves ``H @ z = y`` over the integers; the staircase makes the solution
    unique when it exists, so results are deterministic.
    """

    __slots__ = ("matrix", "pivots", "_cols")

    def __init__(self, matrix: IntMatrix):
        self.matrix = matrix
        self._cols = matrix.columns()
        pivots = []
        for j, col in enumerate(self._cols):
            r = next((i for i, v in enumerate(col) if v), None)
            if r is None:
                break
            pivots.append((r, j))
        self.pivots = pivots

    def solve(self, vec: Sequence[int]):
        if len(vec) != self.matrix.rows:
            raise ValueError("vector length disagrees with row count")
        residual = list(vec)
        z = [0] * self.matrix.cols
        for r, j in self.pivots:
            q, rem = divmod(residual[r], self._cols[j][r])
            if rem:
                return None
            if q:
                col = self._cols[j]
                for i in range(r, len(residual)):
                    residual[i] -= q * col[i]
            z[j] = q
        if any(residual):
            return None
        return tuple(z)

    def reduce(self, vec: Sequence[int]) -> tuple:
        """Canonical representative of ``vec`` modulo the column lattice."""
        residual = list(vec)
        for r, j in self.pivots:
            q = residual[r] // self._cols[j][r]
            if q:
                col = self._cols[j]
                for i in range(r, len(residual)):
                    residual[i] -= q * col[i]
        return tuple(residual)

    def contains(self, vec: Sequence[int]) -> bool:
        return self.solve(vec) is not None


def kernel_basis(matrix: IntMatrix) -> IntMatrix:
    """Canonical basis of the integer kernel ``{x : matrix @ x = 0}``."""
    H, U = hnf(matrix)
    rank = len(HnfSolver(H).pivots)
    if rank == matrix.cols:
        return IntMatrix([[] for _ in range(matrix.cols)], cols=0)
    free = IntMatrix.from_columns(
        [U.column(j) for j in range(rank, matrix.cols)], rows=matrix.cols
    )
    return strip_zero_columns(hnf(free, transform=False))


def solve_linear(matrix: IntMatrix, vec: Sequence[int]):
    """One integer solution of ``matrix @ x = vec``, or None.

    Deterministic: Hermite reduction followed by back-substitution.
    """
    H, U = hnf(matrix)
    z = HnfSolver(H).solve(vec)
    if z is None:
        return None
    return U.apply(z)


def inverse_unimodular(matrix: IntMatrix) -> IntMatrix:
    """Inverse of a unimodular matrix, computed by column reduction."""
    H, U = hnf(matrix)
    if H != IntMatrix.identity(matrix.rows):
        raise ValueError("matrix is not unimodular")
    return U


def snf(matrix: IntMatrix, transform: bool = True):
    """Smith normal form ``S = U * matrix * V``.

    ``S`` is diagonal and nonnegative with each entry dividing the next;
    returns ``(S, U, V)``, or just ``S`` when ``transform`` is false.

    >>> s, u, v = snf(IntMatrix([[2, 4], [6, 8]]))
    >>> s
    IntMatrix([[2, 0], [0, 4]])
    >>> u * IntMatrix([[2, 4], [6, 8]]) * v == s
    True
    """
    n, m = matrix.rows, matrix.cols
    a = matrix.to_rows()
    urows = [[1 if i == j else 0 for j in range(n)] for i in range(n)] if transform else None
    vcols = [[1 if i == j else 0 for i in range(m)] for j in range(m)] if transform else None

    def row_sub(i: int, k: int, q: int) -> None:
        ai, ak = a[i], a[k]
        for j in range(m):
            ai[j] -= q * ak[j]
        if urows is not None:
            _col_sub(urows[i], urows[k], q)

    def col_sub(j: int, k: int, q: int) -> None:
        for i in range(n):
            a[i][j] -= q * a[i][k]
        if vcols is not None:
            _col_sub(vcols[j], vcols[k], q)

    def swap_rows(i: int, k: int) -> None:
        a[i], a[k] = a[k], a[i]
        if urows is not None:
            urows[i], urows[k] = urows[k], urows[i]

    def swap_cols(j: int, k: int) -> None:
        for row in a:
            row[j], row[k] = row[k], row[j]
        if vcols is not None:
            vcols[j], vcols[k] = vcols[k], vcols[j]

    t = 0
    limit = min(n, m)
    while t < limit:
        best = None
        best_abs = None
        for i in range(t, n):
            row = a[i]
            for j in range(t, m):
                v = row[j]
                if v and (best_abs is None or abs(v) < best_abs):
                    best = (i, j)
                    best_abs = abs(v)
        if best is None:
            break
        if best[0] != t:
            swap_rows(t, best[0])
        if best[1] != t:
            swap_cols(t, best[1])
        while True:
            pivot = a[t][t]
            i_nz = next((i for i in range(t + 1, n) if a[i][t]), None)
            if i_nz is not None:
                q = a[i_nz][t] // pivot
                if q:
                    row_sub(i_nz, t, q)
                if a[i_nz][t]:
                    swap_rows(t, i_nz)
                continue
            j_nz = next((j for j in range(t + 1, m) if a[t][j]), None)
            if j_nz is not None:
                q = a[t][j_nz] // pivot
                if q:
                    col_sub(j_nz, t, q)
                if a[t][j_nz]:
                    swap_cols(t, j_nz)
                continue
            offender = None
            for i in range(t + 1, n):
                row = a[i]
                for j in range(t + 1, m):
                    if row[j] % pivot:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            row_sub(t, offender, -1)
        if a[t][t] < 0:
            a[t] = [-v for v in a[t]]
            if urows is not None:
                urows[t] = [-v for v in urows[t]]
        t += 1
    S = IntMatrix(a, cols=m)
    if not transform:
        return S
    U = IntMatrix(urows, cols=n)
    V = IntMatrix.from_columns(vcols, rows=m)
    if U * matrix * V != S:
        raise AssertionError("Smith reduction lost track of its transforms")
    return S, U, V


def smith_diagonal(matrix: IntMatrix) -> list:
    """Diagonal of the Smith form, cheaper than snf when transforms are unneeded."""
    S = snf(matrix, transform=False)
    return [S[i, i] for i in range(min(S.rows, S.cols))]
