"""Degree-truncated polynomial kernels of matrix operators.

``D_n`` is the restriction of D to vectors of degree <= n; it lands in
degree <= n + max(shift(D), 0), so it is a finite exact matrix.  Domain
monomial vectors are ordered degree-first (graded order of the monomial,
then component), which makes the domain for n a column prefix of the
domain for n + 1.  A single incremental elimination therefore yields the
truncated kernels for every n at once, and their nesting is built in.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Dict, List, Optional, Sequence, Tuple

from .algebra import multiindex as mi
from .algebra.fields import Scalar, format_scalar
from .algebra.linalg import ColumnEchelon, ExactMatrix, echelonize, in_span
from .algebra.multiindex import MultiIndex
from .algebra.poly import DimensionError, Poly, PolyVec
from .operators.core import MatrixOperator, op_apply

SURROGATE_NOTE = (
    "exact computation over {field}; truncated kernels at finitely many degrees "
    "only bound the full polynomial kernel from below (dimension >= observed)")

BasisElement = Tuple[MultiIndex, int]


def codomain_bound(D: MatrixOperator, n: int) -> int:
    """n + max(shift(D), 0): degree bound of D applied to degree-<=n vectors."""
    s = D.shift
    return n + (int(s) if s > 0 else 0)


def monomial_vector_basis(r: int, nvars: int, n: int) -> List[BasisElement]:
    return [(J, j) for J in mi.monomials_upto(nvars, n) for j in range(r)]


def _basis_vector(D: MatrixOperator, J: MultiIndex, j: int) -> PolyVec:
    mono = Poly.monomial(J, D.nvars, D.field)
    return PolyVec.unit(j, D.r, mono)


def _coordinates(v: PolyVec, index: Dict[BasisElement, int]) -> Dict[int, Scalar]:
    out = {}
    for i, p in enumerate(v.entries):
        for K, c in p.terms.items():
            out[index[(K, i)]] = c
    return out


@dataclass
class TruncationMatrix:
    D: MatrixOperator
    n: int
    matrix: ExactMatrix
    domain_basis: List[BasisElement]
    codomain_basis: List[BasisElement]


def truncation_matrix(D: MatrixOperator, n: int) -> TruncationMatrix:
    """Matrix of D on degree-<=n vectors; column k is D(domain_basis[k])."""
    if n < 0:
        raise ValueError("degree bound must be >= 0")
    m = codomain_bound(D, n)
    dom = monomial_vector_basis(D.r, D.nvars, n)
    cod = monomial_vector_basis(D.r, D.nvars, m)
    index = {b: k for k, b in enumerate(cod)}
    cols = [_coordinates(op_apply(D, _basis_vector(D, J, j)), index) for J, j in dom]
    return TruncationMatrix(D, n, ExactMatrix.from_columns(cols, len(cod), D.field), dom, cod)


class _Engine:
    """Feeds the columns of D_n into a :class:`ColumnEchelon` degree by degree."""

    def __init__(self, D: MatrixOperator, track_kernel: bool = True):
        self.D = D
        self.echelon = ColumnEchelon(D.field, track_kernel=track_kernel)
        self.domain: List[BasisElement] = []
        self.n = -1
        self._index: Dict[BasisElement, int] = {}
        self._index_degree = -1

    def _ensure_index(self, m: int):
        if m <= self._index_degree:
            return
        cod = monomial_vector_basis(self.D.r, self.D.nvars, m)
        self._index = {b: k for k, b in enumerate(cod)}
        self._index_degree = m

    def extend(self, n: int):
        if n <= self.n:
            return
        D = self.D
        self._ensure_index(codomain_bound(D, n))
        for d in range(self.n + 1, n + 1):
            for J in mi.monomials_of_degree(D.nvars, d):
                for j in range(D.r):
                    col = _coordinates(op_apply(D, _basis_vector(D, J, j)), self._index)
                    self.echelon.add_column(col)
                    self.domain.append((J, j))
        self.n = n

    def ncols(self, n: int) -> int:
        return self.D.r * mi.count_upto(self.D.nvars, n)

    def dim(self, n: int) -> int:
        c = self.ncols(n)
        return c - self.echelon.rank_of_prefix(c)

    def kernel_vectors(self, n: int) -> List[Dict[int, Scalar]]:
        return self.echelon.kernel_of_prefix(self.ncols(n))

    def to_polyvec(self, coords: Dict[int, Scalar] | Sequence[Scalar]) -> PolyVec:
        D = self.D
        entries: List[Dict[MultiIndex, Scalar]] = [dict() for _ in range(D.r)]
        items = coords.items() if isinstance(coords, dict) else enumerate(coords)
        for k, c in items:
            if c:
                J, j = self.domain[k]
                entries[j][J] = c
        return PolyVec(Poly(e, D.nvars, D.field) for e in entries)


def _canonical(engine: _Engine, n: int) -> List[List[Scalar]]:
    c = engine.ncols(n)
    zero = engine.D.field.zero
    dense = []
    for combo in engine.kernel_vectors(n):
        row = [zero] * c
        for k, x in combo.items():
            row[k] = x
        dense.append(row)
    return echelonize(dense, engine.D.field)


def kernel_basis(D: MatrixOperator, n: int) -> List[PolyVec]:
    """Reduced-echelon basis of {v : deg v <= n, D v = 0} (column order = graded)."""
    if n < 0:
        raise ValueError("degree bound must be >= 0")
    engine = _Engine(D)
    engine.extend(n)
    return [engine.to_polyvec(row) for row in _canonical(engine, n)]


def kernel_dimension(D: MatrixOperator, n: int) -> int:
    engine = _Engine(D, track_kernel=False)
    engine.extend(n)
    return engine.dim(n)


@dataclass
class KernelReport:
    field: str
    n_max: int
    dims: Dict[int, int]
    bases: Dict[int, List[PolyVec]] = dc_field(default_factory=dict)
    stabilized_at: Optional[int] = None
    plateau: int = 3
    nested: bool = True
    notes: str = ""

    @property
    def dims_list(self) -> List[int]:
        return [self.dims[n] for n in range(self.n_max + 1)]

    def to_dict(self, include_bases: bool = True) -> dict:
        out = {
            "field": self.field,
            "n_max": self.n_max,
            "dims": self.dims_list,
            "stabilized_at": self.stabilized_at,
            "plateau": self.plateau,
            "nested": self.nested,
            "notes": self.notes,
        }
        if include_bases:
            out["bases"] = {str(n): [[str(p) for p in v] for v in vs]
                            for n, vs in self.bases.items()}
        return out

    def csv_rows(self) -> List[Tuple[int, int, bool]]:
        return [(n, self.dims[n], self.stabilized_at is not None and n >= self.stabilized_at)
                for n in range(self.n_max + 1)]


def find_plateau(dims: Sequence[int], plateau: int) -> Optional[int]:
    """First n with dims[n] == dims[-1] if that final run has length >= plateau."""
    if not dims:
        return None
    last = dims[-1]
    start = len(dims) - 1
    while start > 0 and dims[start - 1] == last:
        start -= 1
    return start if len(dims) - start >= plateau else None


def kernel_scan(D: MatrixOperator, n_max: int, plateau: int = 3,
                with_bases: bool = True) -> KernelReport:
    """Truncated kernel dimensions (and bases) for n = 0..n_max.

    Each degree-n basis vector is re-checked for membership in the span of
    the degree-(n+1) basis.
    """
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    engine = _Engine(D, track_kernel=True)
    engine.extend(n_max)
    dims = {n: engine.dim(n) for n in range(n_max + 1)}
    bases: Dict[int, List[PolyVec]] = {}
    nested = True
    prev = None
    for n in range(n_max + 1):
        canon = _canonical(engine, n)
        if prev is not None:
            width = len(canon[0]) if canon else engine.ncols(n)
            zero = D.field.zero
            for row in prev:
                padded = list(row) + [zero] * (width - len(row))
                if not in_span(canon, padded):
                    nested = False
        prev = canon
        if with_bases:
            bases[n] = [engine.to_polyvec(row) for row in canon]
    for n in range(n_max):
        if dims[n] > dims[n + 1]:
            nested = False
    return KernelReport(
        field=D.field.name, n_max=n_max, dims=dims, bases=bases,
        stabilized_at=find_plateau([dims[n] for n in range(n_max + 1)], plateau),
        plateau=plateau, nested=nested, notes=SURROGATE_NOTE.format(field=D.field.name))


def kernel_dims(D: MatrixOperator, n_max: int) -> List[int]:
    """Just the dimensions, without tracking kernel vectors."""
    engine = _Engine(D, track_kernel=False)
    engine.extend(n_max)
    return [engine.dim(n) for n in range(n_max + 1)]


@dataclass
class ZeroKernelCertificate:
    n: int
    row_indices: Tuple[int, ...]
    col_indices: Tuple[int, ...]
    minor_value: Scalar

    def to_dict(self) -> dict:
        return {"n": self.n, "rows": list(self.row_indices), "cols": list(self.col_indices),
                "minor_value": format_scalar(self.minor_value)}


def zero_kernel_certificate(D: MatrixOperator, n: int) -> Optional[ZeroKernelCertificate]:
    """A nonvanishing full-size minor of D_n, or None if D_n has a kernel.

    Rows are the pivot rows of the elimination (indices into the codomain
    basis of :func:`truncation_matrix`), columns are all of the domain.
    """
    if n < 0:
        raise ValueError("degree bound must be >= 0")
    engine = _Engine(D, track_kernel=False)
    engine.extend(n)
    c = engine.ncols(n)
    found = engine.echelon.prefix_minor(c)
    if found is None:
        return None
    rows, det = found
    return ZeroKernelCertificate(n, tuple(rows), tuple(range(c)), det)


@dataclass
class SemicontinuityReport:
    n: int
    dims: Dict[object, int]
    generic: int
    special: List[object]
    constant_family: bool

    def to_dict(self) -> dict:
        return {"n": self.n,
                "dims": [[format_scalar(t), d] for t, d in self.dims.items()],
                "generic": self.generic,
                "special": [format_scalar(t) for t in self.special],
                "constant_family": self.constant_family}


def semicontinuity_scan(D0: MatrixOperator, D1: MatrixOperator, t_values: Sequence,
                        n: int) -> SemicontinuityReport:
    """Kernel dimension of D0 + t*D1 at degree n for each sampled t."""
    if D0.r != D1.r or D0.nvars != D1.nvars or D0.field != D1.field:
        raise DimensionError("D0 and D1 must have the same shape and field")
    field = D0.field
    dims = {}
    for t in t_values:
        t = field(t)
        dims[t] = kernel_dimension(D0 + D1.scale(t), n)
    generic = min(dims.values())
    special = [t for t, d in dims.items() if d > generic]
    return SemicontinuityReport(n, dims, generic, special, constant_family=not D1)
