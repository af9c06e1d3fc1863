"""Differential operators with polynomial coefficients in the Hasse basis.

A scalar operator is stored as ``{I: a_I}`` meaning ``sum_I a_I * h^[I]``
where ``h^[I] x^J = C(J, I) x^(J-I)`` is the divided-power derivative.
Over Q, ``h^[I] = d^I / I!``; over GF(p) the Hasse basis is the only one in
which every operator of the algebra is representable.
"""

from __future__ import annotations

from typing import Callable, Dict, Iterable, Mapping, Sequence, Tuple

from ..algebra import multiindex as mi
from ..algebra.fields import QQ, Field
from ..algebra.multiindex import MultiIndex
from ..algebra.poly import (NEG_INF, DimensionError, Poly, PolyVec, hasse_derivative)


class ConversionError(ValueError):
    """A classical derivative cannot be written in the Hasse basis (p | I!)."""


class ReconstructionError(ValueError):
    """An action is not that of an operator of the claimed order."""


class ScalarOperator:
    """Immutable ``sum_I a_I(x) h^[I]`` with no zero coefficients stored."""

    __slots__ = ("terms", "nvars", "field", "_hash")

    def __init__(self, terms: Mapping[MultiIndex, Poly] | None = None,
                 nvars: int | None = None, field: Field | None = None):
        terms = dict(terms or {})
        if nvars is None or field is None:
            if not terms:
                raise ValueError("nvars and field are required for an empty operator")
            sample = next(iter(terms.values()))
            nvars = sample.nvars if nvars is None else nvars
            field = sample.field if field is None else field
        clean = {}
        for I, a in terms.items():
            I = tuple(I)
            if len(I) != nvars:
                raise DimensionError(f"derivative index {I} invalid for {nvars} variables")
            if not isinstance(a, Poly):
                a = Poly.constant(a, nvars, field)
            if a.nvars != nvars or a.field != field:
                raise DimensionError("coefficient ring does not match operator")
            if a:
                clean[I] = a
        self.terms: Dict[MultiIndex, Poly] = clean
        self.nvars = nvars
        self.field = field
        self._hash = None

    @classmethod
    def _raw(cls, terms, nvars, field):
        op = object.__new__(cls)
        op.terms = terms
        op.nvars = nvars
        op.field = field
        op._hash = None
        return op

    @classmethod
    def zero(cls, nvars: int, field: Field = QQ) -> "ScalarOperator":
        return cls._raw({}, nvars, field)

    @classmethod
    def identity(cls, nvars: int, field: Field = QQ) -> "ScalarOperator":
        return cls.multiplication(Poly.one(nvars, field))

    @classmethod
    def multiplication(cls, a: Poly) -> "ScalarOperator":
        return cls({mi.zero_index(a.nvars): a}, a.nvars, a.field)

    @classmethod
    def hasse(cls, I: MultiIndex, nvars: int | None = None, field: Field = QQ,
              coeff: Poly | None = None) -> "ScalarOperator":
        """``coeff * h^[I]`` (coefficient 1 by default)."""
        I = tuple(I)
        nvars = len(I) if nvars is None else nvars
        a = Poly.one(nvars, field) if coeff is None else coeff
        return cls({I: a}, nvars, field)

    # queries ------------------------------------------------------------
    @property
    def order(self):
        """Largest ``|I|`` with nonzero coefficient; ``NEG_INF`` for zero."""
        if not self.terms:
            return NEG_INF
        return max(sum(I) for I in self.terms)

    @property
    def shift(self):
        """max(deg a_I - |I|): how much the operator can raise degrees."""
        if not self.terms:
            return NEG_INF
        return max(a.degree - sum(I) for I, a in self.terms.items())

    def coefficient(self, I: MultiIndex) -> Poly:
        return self.terms.get(tuple(I), Poly.zero(self.nvars, self.field))

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, ScalarOperator):
            return NotImplemented
        return (self.nvars == other.nvars and self.field == other.field
                and self.terms == other.terms)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, self.field, frozenset(self.terms.items())))
        return self._hash

    def _check(self, other: "ScalarOperator"):
        if self.nvars != other.nvars or self.field != other.field:
            raise DimensionError("operators act on different rings")

    # arithmetic ---------------------------------------------------------
    def __add__(self, other: "ScalarOperator") -> "ScalarOperator":
        self._check(other)
        out = dict(self.terms)
        for I, a in other.terms.items():
            s = out[I] + a if I in out else a
            if s:
                out[I] = s
            else:
                out.pop(I, None)
        return ScalarOperator._raw(out, self.nvars, self.field)

    def __neg__(self):
        return ScalarOperator._raw({I: -a for I, a in self.terms.items()},
                                   self.nvars, self.field)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "ScalarOperator":
        """Left multiplication by a scalar or a polynomial."""
        if isinstance(c, Poly):
            out = {I: c * a for I, a in self.terms.items()}
        else:
            out = {I: a.scale(c) for I, a in self.terms.items()}
        return ScalarOperator._raw({I: a for I, a in out.items() if a},
                                   self.nvars, self.field)

    def __matmul__(self, other: "ScalarOperator") -> "ScalarOperator":
        return compose_scalar(self, other)

    def __call__(self, p: Poly) -> Poly:
        return hasse_apply(self, p)

    def change_field(self, field: Field) -> "ScalarOperator":
        return ScalarOperator({I: a.change_field(field) for I, a in self.terms.items()},
                              self.nvars, field)

    def __repr__(self):
        from ..dsl import format_scalar_operator
        return f"ScalarOperator({format_scalar_operator(self)!r})"


def hasse_apply(op: ScalarOperator, p: Poly) -> Poly:
    """``sum_I a_I * h^[I](p)``."""
    if op.nvars != p.nvars or op.field != p.field:
        raise DimensionError("operator and polynomial live in different rings")
    out = Poly.zero(p.nvars, p.field)
    for I, a in op.terms.items():
        d = hasse_derivative(p, I)
        if d:
            out = out + (d if (a.is_constant() and a.constant_term() == 1) else a * d)
    return out


def compose_scalar(A: ScalarOperator, B: ScalarOperator) -> ScalarOperator:
    """``A o B`` via the Hasse-Leibniz rule.

    ``h^[I] (b h^[J]) = sum_{K<=I} h^[K](b) h^[I-K] h^[J]`` and
    ``h^[P] h^[J] = C(P+J, P) h^[P+J]``.
    """
    A._check(B)
    field = A.field
    out: Dict[MultiIndex, Poly] = {}
    for I, a in A.terms.items():
        for J, b in B.terms.items():
            for K in mi.iter_below(I):
                db = hasse_derivative(b, K)
                if not db:
                    continue
                P = mi.sub(I, K)
                L = mi.add(P, J)
                c = field(mi.binomial(L, P))
                if not c:
                    continue
                term = (a * db).scale(c)
                if term:
                    out[L] = out[L] + term if L in out else term
    return ScalarOperator({L: t for L, t in out.items() if t}, A.nvars, field)


class MatrixOperator:
    """r x r grid of :class:`ScalarOperator` acting on polynomial vectors."""

    __slots__ = ("entries", "r", "nvars", "field", "_hash")

    def __init__(self, entries: Sequence[Sequence[ScalarOperator]]):
        rows = tuple(tuple(row) for row in entries)
        r = len(rows)
        if r == 0 or any(len(row) != r for row in rows):
            raise DimensionError("operator matrix must be square and nonempty")
        first = rows[0][0]
        for row in rows:
            for e in row:
                first._check(e)
        self.entries = rows
        self.r = r
        self.nvars = first.nvars
        self.field = first.field
        self._hash = None

    @classmethod
    def zero(cls, r: int, nvars: int, field: Field = QQ) -> "MatrixOperator":
        z = ScalarOperator.zero(nvars, field)
        return cls([[z] * r for _ in range(r)])

    @classmethod
    def identity(cls, r: int, nvars: int, field: Field = QQ) -> "MatrixOperator":
        return cls.diagonal([ScalarOperator.identity(nvars, field)] * r)

    @classmethod
    def diagonal(cls, ops: Sequence[ScalarOperator]) -> "MatrixOperator":
        z = ScalarOperator.zero(ops[0].nvars, ops[0].field)
        r = len(ops)
        return cls([[ops[i] if i == j else z for j in range(r)] for i in range(r)])

    @classmethod
    def scalar(cls, op: ScalarOperator) -> "MatrixOperator":
        return cls([[op]])

    @classmethod
    def from_coefficients(cls, coeffs: Mapping[Tuple[int, int, MultiIndex], Poly],
                          r: int, nvars: int, field: Field = QQ) -> "MatrixOperator":
        """Build from ``{(i, j, I): a_{I,i,j}}``."""
        grid = [[dict() for _ in range(r)] for _ in range(r)]
        for (i, j, I), a in coeffs.items():
            grid[i][j][tuple(I)] = a
        return cls([[ScalarOperator(grid[i][j], nvars, field) for j in range(r)]
                    for i in range(r)])

    def __getitem__(self, ij) -> ScalarOperator:
        i, j = ij
        return self.entries[i][j]

    @property
    def order(self):
        return max(e.order for row in self.entries for e in row)

    @property
    def shift(self):
        return max(e.shift for row in self.entries for e in row)

    def coefficients(self) -> Dict[Tuple[int, int, MultiIndex], Poly]:
        return {(i, j, I): a for i, row in enumerate(self.entries)
                for j, e in enumerate(row) for I, a in e.terms.items()}

    def __bool__(self):
        return any(e for row in self.entries for e in row)

    def __eq__(self, other):
        if not isinstance(other, MatrixOperator):
            return NotImplemented
        return self.entries == other.entries

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.entries)
        return self._hash

    def _check(self, other: "MatrixOperator"):
        if self.r != other.r:
            raise DimensionError(f"rank mismatch: {self.r} vs {other.r}")
        self.entries[0][0]._check(other.entries[0][0])

    def __add__(self, other):
        self._check(other)
        return MatrixOperator([[a + b for a, b in zip(ra, rb)]
                               for ra, rb in zip(self.entries, other.entries)])

    def __neg__(self):
        return MatrixOperator([[-a for a in row] for row in self.entries])

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "MatrixOperator":
        return MatrixOperator([[a.scale(c) for a in row] for row in self.entries])

    def __matmul__(self, other: "MatrixOperator") -> "MatrixOperator":
        return op_compose(self, other)

    def __call__(self, v: PolyVec) -> PolyVec:
        return op_apply(self, v)

    def change_field(self, field: Field) -> "MatrixOperator":
        return MatrixOperator([[e.change_field(field) for e in row] for row in self.entries])

    def __repr__(self):
        from ..dsl import format_operator
        return f"MatrixOperator({format_operator(self)!r})"


def op_apply(D: MatrixOperator, v: PolyVec) -> PolyVec:
    """Entry i of the result is ``sum_j D_ij(v_j)``."""
    if D.r != v.r:
        raise DimensionError(f"operator rank {D.r} vs vector length {v.r}")
    if D.nvars != v.nvars or D.field != v.field:
        raise DimensionError("operator and vector live in different rings")
    out = []
    for row in D.entries:
        acc = Poly.zero(D.nvars, D.field)
        for e, vj in zip(row, v.entries):
            if e and vj:
                acc = acc + hasse_apply(e, vj)
        out.append(acc)
    return PolyVec(out)


def op_compose(D1: MatrixOperator, D2: MatrixOperator) -> MatrixOperator:
    """``D1 o D2`` (apply D2 first)."""
    D1._check(D2)
    r = D1.r
    zero = ScalarOperator.zero(D1.nvars, D1.field)
    rows = []
    for i in range(r):
        row = []
        for j in range(r):
            acc = zero
            for k in range(r):
                a, b = D1.entries[i][k], D2.entries[k][j]
                if a and b:
                    acc = acc + compose_scalar(a, b)
            row.append(acc)
        rows.append(row)
    return MatrixOperator(rows)


def classical_to_hasse(terms: Mapping[MultiIndex, Poly], nvars: int | None = None,
                       field: Field | None = None) -> ScalarOperator:
    """``sum a_I d^I`` -> ``sum (I! a_I) h^[I]``."""
    out = {}
    for I, a in terms.items():
        if not isinstance(a, Poly):
            a = Poly.constant(a, nvars, field or QQ)
        fac = mi.factorial(tuple(I))
        p = a.field.characteristic
        if p and fac % p == 0:
            raise ConversionError(
                f"classical derivative of index {tuple(I)} has no Hasse form in "
                f"characteristic {p} ({tuple(I)}! = 0)")
        out[tuple(I)] = a.scale(fac)
    if not out:
        return ScalarOperator.zero(nvars, field or QQ)
    return ScalarOperator(out, nvars, field)


def hasse_to_classical(op: ScalarOperator) -> Dict[MultiIndex, Poly]:
    """Inverse of :func:`classical_to_hasse`: divide each coefficient by I!."""
    out = {}
    p = op.field.characteristic
    for I, a in op.terms.items():
        fac = mi.factorial(I)
        if p and fac % p == 0:
            raise ConversionError(
                f"Hasse term of index {I} has no classical form in characteristic {p}")
        out[I] = a.scale(op.field(1) / op.field(fac))
    return out


def recover_coefficients(action: Callable[[PolyVec], PolyVec], r: int, nvars: int,
                         N: int, field: Field = QQ,
                         check_degree: int | None = None) -> MatrixOperator:
    """Rebuild the operator of order <= N whose action is ``action``.

    Column j is solved triangularly in |J|: the coefficient of ``h^[J]`` in
    entry (i, j) is ``action(x^J e_j)_i`` minus the contributions
    ``a_I C(J, I) x^(J-I)`` of the already recovered lower-order terms.
    Afterwards the action is compared on every monomial vector of degree
    <= ``check_degree`` (default N + 1).
    """
    if check_degree is None:
        check_degree = N + 1
    one = Poly.one(nvars, field)
    coeffs: Dict[Tuple[int, int, MultiIndex], Poly] = {}
    for j in range(r):
        found: Dict[int, Dict[MultiIndex, Poly]] = {i: {} for i in range(r)}
        for J in mi.monomials_upto(nvars, N):
            img = action(PolyVec.unit(j, r, one.shift_monomial(J)))
            if img.r != r:
                raise ReconstructionError("action changed the vector length")
            for i in range(r):
                a = img[i]
                for I, b in found[i].items():
                    c = mi.binomial(J, I)
                    if c:
                        a = a - b.shift_monomial(mi.sub(J, I), c)
                if a:
                    found[i][J] = a
        for i in range(r):
            for I, a in found[i].items():
                coeffs[(i, j, I)] = a
    D = MatrixOperator.from_coefficients(coeffs, r, nvars, field)
    for j in range(r):
        for J in mi.monomials_upto(nvars, check_degree):
            v = PolyVec.unit(j, r, one.shift_monomial(J))
            if op_apply(D, v) != action(v):
                raise ReconstructionError(
                    f"not an operator of order <= {N}: mismatch on x^{J} e_{j + 1}")
    return D
