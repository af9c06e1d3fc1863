"""Group actions on operators: change of basis of the free module and change
of coordinates on affine space.

Both are computed as action-then-reconstruct: the translated operator's
action on monomial vectors is evaluated directly and handed to
:func:`~jetkernel.operators.core.recover_coefficients`.
"""

from __future__ import annotations

from typing import Mapping, Sequence, Tuple

from ..algebra.fields import QQ, Field
from ..algebra.linalg import ExactMatrix, rref
from ..algebra.poly import DimensionError, Poly, PolyVec
from .core import MatrixOperator, op_apply, recover_coefficients


class InvertiblePolyMatrix:
    """A polynomial matrix together with a validated polynomial inverse."""

    def __init__(self, forward: Sequence[Sequence[Poly]], inverse: Sequence[Sequence[Poly]]):
        self.forward = tuple(tuple(row) for row in forward)
        self.inverse = tuple(tuple(row) for row in inverse)
        r = len(self.forward)
        if r == 0 or any(len(row) != r for row in self.forward + self.inverse) \
                or len(self.inverse) != r:
            raise DimensionError("expected two square matrices of the same size")
        self.r = r
        sample = self.forward[0][0]
        self.nvars, self.field = sample.nvars, sample.field
        ident = _identity(r, self.nvars, self.field)
        if _matmul(self.forward, self.inverse) != ident or \
                _matmul(self.inverse, self.forward) != ident:
            raise ValueError("supplied inverse does not invert the matrix")

    @classmethod
    def identity(cls, r: int, nvars: int, field: Field = QQ) -> "InvertiblePolyMatrix":
        ident = _identity(r, nvars, field)
        return cls(ident, ident)

    @classmethod
    def scalar(cls, c, r: int, nvars: int, field: Field = QQ) -> "InvertiblePolyMatrix":
        c = field(c)
        fwd = [[Poly.constant(c if i == j else 0, nvars, field) for j in range(r)]
               for i in range(r)]
        inv = [[Poly.constant(1 / c if i == j else 0, nvars, field) for j in range(r)]
               for i in range(r)]
        return cls(fwd, inv)

    @classmethod
    def unitriangular(cls, lower: Mapping[Tuple[int, int], Poly], r: int, nvars: int,
                      field: Field = QQ) -> "InvertiblePolyMatrix":
        """I + N with N strictly lower; inverse is sum_k (-N)^k."""
        zero = Poly.zero(nvars, field)
        N = [[zero] * r for _ in range(r)]
        for (i, j), p in lower.items():
            if i <= j:
                raise ValueError(f"entry ({i}, {j}) is not strictly lower triangular")
            N[i][j] = p
        ident = _identity(r, nvars, field)
        fwd = _matadd(ident, N)
        negN = tuple(tuple(-p for p in row) for row in N)
        inv, power = ident, ident
        for _ in range(r - 1):
            power = _matmul(power, negN)
            inv = _matadd(inv, power)
        return cls(fwd, inv)

    def apply(self, v: PolyVec) -> PolyVec:
        return _matvec(self.forward, v)

    def apply_inverse(self, v: PolyVec) -> PolyVec:
        return _matvec(self.inverse, v)

    def __matmul__(self, other: "InvertiblePolyMatrix") -> "InvertiblePolyMatrix":
        return InvertiblePolyMatrix(_matmul(self.forward, other.forward),
                                    _matmul(other.inverse, self.inverse))

    @property
    def inverse_degree(self) -> int:
        return max(max(p.degree for row in self.inverse for p in row), 0)

    def __eq__(self, other):
        if not isinstance(other, InvertiblePolyMatrix):
            return NotImplemented
        return self.forward == other.forward


class PolyAutomorphism:
    """x -> phi(x) with validated inverse psi: phi(psi(x)) = psi(phi(x)) = x.

    Acting on a polynomial means substitution: ``g(f) = f(phi(x))``.
    """

    def __init__(self, forward: Sequence[Poly], inverse: Sequence[Poly]):
        self.forward = tuple(forward)
        self.inverse = tuple(inverse)
        n = len(self.forward)
        if n == 0 or len(self.inverse) != n:
            raise DimensionError("need one image per variable in both directions")
        self.nvars = n
        self.field = self.forward[0].field
        xs = [Poly.variable(k, n, self.field) for k in range(n)]
        if [p.substitute(self.inverse) for p in self.forward] != xs or \
                [p.substitute(self.forward) for p in self.inverse] != xs:
            raise ValueError("supplied inverse does not invert the automorphism")

    @classmethod
    def identity(cls, nvars: int, field: Field = QQ) -> "PolyAutomorphism":
        xs = [Poly.variable(k, nvars, field) for k in range(nvars)]
        return cls(xs, xs)

    @classmethod
    def translation(cls, shift: Sequence, field: Field = QQ) -> "PolyAutomorphism":
        n = len(shift)
        xs = [Poly.variable(k, n, field) for k in range(n)]
        return cls([x + field(b) for x, b in zip(xs, shift)],
                   [x - field(b) for x, b in zip(xs, shift)])

    @classmethod
    def affine(cls, matrix: Sequence[Sequence], shift: Sequence | None = None,
               field: Field = QQ) -> "PolyAutomorphism":
        """x -> A x + b for an invertible constant matrix A."""
        n = len(matrix)
        shift = [0] * n if shift is None else list(shift)
        A = ExactMatrix(matrix, field)
        aug = ExactMatrix([list(A.data[i]) + [1 if i == j else 0 for j in range(n)]
                           for i in range(n)], field)
        red, piv = rref(aug)
        if piv[:n] != list(range(n)):
            raise ValueError("affine matrix is singular")
        Ainv = [row[n:] for row in red[:n]]
        xs = [Poly.variable(k, n, field) for k in range(n)]
        b = [field(s) for s in shift]
        fwd = [sum((xs[j].scale(A.data[i][j]) for j in range(n)), Poly.zero(n, field)) + b[i]
               for i in range(n)]
        # psi(y) = A^{-1} (y - b)
        inv = [sum(((xs[j] - b[j]).scale(Ainv[i][j]) for j in range(n)), Poly.zero(n, field))
               for i in range(n)]
        return cls(fwd, inv)

    @classmethod
    def elementary(cls, k: int, f: Poly) -> "PolyAutomorphism":
        """x_k -> x_k + f with f free of x_k (a de Jonquieres step)."""
        n = f.nvars
        if any(J[k] for J in f.terms):
            raise ValueError(f"elementary automorphism: f must not involve x{k + 1}")
        xs = [Poly.variable(i, n, f.field) for i in range(n)]
        fwd = list(xs)
        inv = list(xs)
        fwd[k] = xs[k] + f
        inv[k] = xs[k] - f
        return cls(fwd, inv)

    def then(self, other: "PolyAutomorphism") -> "PolyAutomorphism":
        """The automorphism whose pullback is pullback by ``self`` then ``other``."""
        return PolyAutomorphism([p.substitute(self.forward) for p in other.forward],
                                [p.substitute(other.inverse) for p in self.inverse])

    def pull(self, v: PolyVec) -> PolyVec:
        return v.substitute(self.forward)

    def push(self, v: PolyVec) -> PolyVec:
        return v.substitute(self.inverse)

    def __eq__(self, other):
        if not isinstance(other, PolyAutomorphism):
            return NotImplemented
        return self.forward == other.forward


def conjugate_glr(D: MatrixOperator, A: InvertiblePolyMatrix) -> MatrixOperator:
    """``A o D = A^{-1} D A``: the operator v -> A^{-1} (D (A v))."""
    if D.r != A.r:
        raise DimensionError(f"operator rank {D.r} vs matrix size {A.r}")
    if D.nvars != A.nvars or D.field != A.field:
        raise DimensionError("operator and matrix live in different rings")
    N = max(D.order, 0)
    return recover_coefficients(lambda v: A.apply_inverse(op_apply(D, A.apply(v))),
                                D.r, D.nvars, N, D.field)


def pullback_automorphism(D: MatrixOperator, g: PolyAutomorphism) -> MatrixOperator:
    """The operator f -> (D(f o phi)) o psi, i.e. D rewritten in new coordinates."""
    if D.field.characteristic:
        raise ValueError("coordinate pullback is only supported in characteristic 0")
    if D.nvars != g.nvars or D.field != g.field:
        raise DimensionError("operator and automorphism live in different rings")
    N = max(D.order, 0)
    return recover_coefficients(lambda v: g.push(op_apply(D, g.pull(v))),
                                D.r, D.nvars, N, D.field)


def _identity(r, nvars, field):
    one, zero = Poly.one(nvars, field), Poly.zero(nvars, field)
    return tuple(tuple(one if i == j else zero for j in range(r)) for i in range(r))


def _matadd(a, b):
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def _matmul(a, b):
    r = len(a)
    zero = Poly.zero(a[0][0].nvars, a[0][0].field)
    out = []
    for i in range(r):
        row = []
        for j in range(r):
            acc = zero
            for k in range(r):
                if a[i][k] and b[k][j]:
                    acc = acc + a[i][k] * b[k][j]
            row.append(acc)
        out.append(tuple(row))
    return tuple(out)


def _matvec(a, v: PolyVec) -> PolyVec:
    if len(a) != v.r:
        raise DimensionError("matrix size does not match vector length")
    zero = Poly.zero(v.nvars, v.field)
    out = []
    for row in a:
        acc = zero
        for p, x in zip(row, v.entries):
            if p and x:
                acc = acc + p * x
        out.append(acc)
    return PolyVec(out)
