"""Exact linear algebra over a :class:`~jetkernel.algebra.fields.Field`.

Dense routines (:func:`rref`, :func:`nullspace`, :func:`determinant`) work on
:class:`ExactMatrix`.  :class:`ColumnEchelon` is the sparse, incremental
elimination used by the kernel scans: columns arrive one at a time, so the
rank of every column prefix is available without redoing work.
"""

from __future__ import annotations

from typing import Dict, List, Sequence, Tuple

from .fields import QQ, Field, Scalar
from .poly import DimensionError


class ExactMatrix:
    """Dense matrix of field elements (row-major, immutable by convention)."""

    __slots__ = ("rows", "cols", "data", "field")

    def __init__(self, data: Sequence[Sequence], field: Field = QQ,
                 cols: int | None = None):
        rows = [[field(x) for x in row] for row in data]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        if any(len(row) != cols for row in rows):
            raise DimensionError("ragged matrix")
        self.rows = len(rows)
        self.cols = cols
        self.data = rows
        self.field = field

    @classmethod
    def zeros(cls, rows: int, cols: int, field: Field = QQ) -> "ExactMatrix":
        return cls([[0] * cols for _ in range(rows)], field, cols=cols)

    @classmethod
    def identity(cls, n: int, field: Field = QQ) -> "ExactMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)], field, cols=n)

    @classmethod
    def from_columns(cls, columns: Sequence[Dict[int, Scalar]], rows: int,
                     field: Field = QQ) -> "ExactMatrix":
        m = cls.zeros(rows, len(columns), field)
        for k, col in enumerate(columns):
            for i, v in col.items():
                m.data[i][k] = v
        return m

    @property
    def shape(self) -> Tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, ij):
        i, j = ij
        return self.data[i][j]

    def column(self, j: int) -> List[Scalar]:
        return [row[j] for row in self.data]

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "ExactMatrix":
        return ExactMatrix([[self.data[i][j] for j in cols] for i in rows],
                           self.field, cols=len(cols))

    def matvec(self, v: Sequence) -> List[Scalar]:
        if len(v) != self.cols:
            raise DimensionError("vector length does not match column count")
        zero = self.field.zero
        out = []
        for row in self.data:
            s = zero
            for a, b in zip(row, v):
                if a and b:
                    s = s + a * b
            out.append(s)
        return out

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.field == other.field and self.data == other.data and self.cols == other.cols

    def __repr__(self):
        body = "; ".join(" ".join(str(x) for x in row) for row in self.data)
        return f"ExactMatrix[{self.rows}x{self.cols}]({body})"


def rref(m: ExactMatrix) -> Tuple[List[List[Scalar]], List[int]]:
    """Reduced row echelon form and pivot columns.

    Pivots are chosen column by column, taking the first row (in index order)
    with a nonzero entry, so the result is fully deterministic.
    """
    a = [list(row) for row in m.data]
    pivots: List[int] = []
    prow = 0
    for c in range(m.cols):
        if prow == m.rows:
            break
        sel = next((i for i in range(prow, m.rows) if a[i][c]), None)
        if sel is None:
            continue
        a[prow], a[sel] = a[sel], a[prow]
        inv = 1 / a[prow][c] if m.field.characteristic == 0 else a[prow][c].inverse()
        a[prow] = [x * inv for x in a[prow]]
        for i in range(m.rows):
            if i != prow and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[prow])]
        pivots.append(c)
        prow += 1
    return a, pivots


def rank(m: ExactMatrix) -> int:
    return len(rref(m)[1])


def nullspace(m: ExactMatrix) -> List[List[Scalar]]:
    """Basis of ``{v : m v = 0}``, one vector per free column in index order.

    The vector for free column ``f`` has a 1 in position ``f``, zeros in the
    other free positions, and is supported on columns ``<= f``.
    """
    r, pivots = rref(m)
    zero, one = m.field.zero, m.field.one
    pivset = set(pivots)
    basis = []
    for f in range(m.cols):
        if f in pivset:
            continue
        v = [zero] * m.cols
        v[f] = one
        for row, pc in enumerate(pivots):
            if r[row][f]:
                v[pc] = -r[row][f]
        basis.append(v)
    return basis


def determinant(m: ExactMatrix) -> Scalar:
    """Determinant by Gaussian elimination with first-nonzero pivoting."""
    if m.rows != m.cols:
        raise DimensionError("determinant of a non-square matrix")
    a = [list(row) for row in m.data]
    n = m.rows
    det = m.field.one
    for c in range(n):
        sel = next((i for i in range(c, n) if a[i][c]), None)
        if sel is None:
            return m.field.zero
        if sel != c:
            a[c], a[sel] = a[sel], a[c]
            det = -det
        piv = a[c][c]
        det = det * piv
        for i in range(c + 1, n):
            if a[i][c]:
                f = a[i][c] / piv
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return det


def bareiss_determinant(rows: Sequence[Sequence[int]]) -> int:
    """Fraction-free determinant of an integer matrix (independent check)."""
    a = [list(map(int, r)) for r in rows]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            sel = next((i for i in range(k + 1, n) if a[i][k]), None)
            if sel is None:
                return 0
            a[k], a[sel] = a[sel], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def echelonize(vectors: Sequence[Sequence[Scalar]], field: Field) -> List[List[Scalar]]:
    """Canonical reduced echelon basis of the span of ``vectors``."""
    if not vectors:
        return []
    r, pivots = rref(ExactMatrix(vectors, field, cols=len(vectors[0])))
    return [list(row) for row in r[:len(pivots)]]


def in_span(echelon: Sequence[Sequence[Scalar]], v: Sequence[Scalar]) -> bool:
    """Membership test against a reduced echelon basis."""
    w = list(v)
    for row in echelon:
        pc = next(i for i, x in enumerate(row) if x)
        f = w[pc]
        if f:
            w = [a - f * b for a, b in zip(w, row)]
    return not any(w)


def _axpy(v: Dict[int, Scalar], f: Scalar, u: Dict[int, Scalar]) -> None:
    """In place ``v -= f * u`` on sparse vectors, dropping zeros."""
    for k, x in u.items():
        s = v.get(k)
        if s is None:
            v[k] = -f * x
        else:
            s = s - f * x
            if s:
                v[k] = s
            else:
                del v[k]


class ColumnEchelon:
    """Incremental sparse column reduction.

    Every added column is reduced against the stored pivot vectors (each
    normalised so its highest row entry is 1).  A column that reduces to zero
    yields a kernel vector: the recorded combination of original columns.
    Only column operations with earlier columns are used, so the original
    pivot values multiply out to the determinant of the pivot-row minor.
    """

    def __init__(self, field: Field, track_kernel: bool = True):
        self.field = field
        self.track_kernel = track_kernel
        self.ncols = 0
        self._pivots: Dict[int, Tuple[Dict[int, Scalar], Dict[int, Scalar]]] = {}
        self.pivot_rows: List[int | None] = []
        self.pivot_values: List[Scalar | None] = []
        self.kernel: List[Tuple[int, Dict[int, Scalar]]] = []

    @property
    def rank(self) -> int:
        return len(self._pivots)

    def add_column(self, column: Dict[int, Scalar]) -> bool:
        """Append a column; returns True if it raised the rank."""
        k = self.ncols
        self.ncols += 1
        v = {i: x for i, x in column.items() if x}
        combo = {k: self.field.one} if self.track_kernel else None
        pivots = self._pivots
        while v:
            r0 = max(v)
            entry = pivots.get(r0)
            if entry is None:
                break
            pv, pc = entry
            f = v[r0]
            _axpy(v, f, pv)
            if combo is not None:
                _axpy(combo, f, pc)
        if not v:
            self.pivot_rows.append(None)
            self.pivot_values.append(None)
            if combo is not None:
                self.kernel.append((k, combo))
            return False
        r0 = max(v)
        piv = v[r0]
        inv = 1 / piv
        v = {i: x * inv for i, x in v.items()}
        if combo is not None:
            combo = {i: x * inv for i, x in combo.items()}
        pivots[r0] = (v, combo)
        self.pivot_rows.append(r0)
        self.pivot_values.append(piv)
        return True

    def rank_of_prefix(self, ncols: int) -> int:
        return sum(1 for r in self.pivot_rows[:ncols] if r is not None)

    def kernel_of_prefix(self, ncols: int) -> List[Dict[int, Scalar]]:
        return [combo for k, combo in self.kernel if k < ncols]

    def prefix_minor(self, ncols: int) -> Tuple[List[int], Scalar] | None:
        """Rows and value of a nonzero ``ncols``-sized minor, if full rank."""
        rows = self.pivot_rows[:ncols]
        if any(r is None for r in rows):
            return None
        det = self.field.one
        for v in self.pivot_values[:ncols]:
            det = det * v
        # sign of the permutation that sorts the pivot rows
        order = sorted(range(ncols), key=lambda k: rows[k])
        seen = [False] * ncols
        parity = 0
        for start in range(ncols):
            if seen[start]:
                continue
            length = 0
            k = start
            while not seen[k]:
                seen[k] = True
                k = order[k]
                length += 1
            parity += length - 1
        if parity % 2:
            det = -det
        return sorted(rows), det
