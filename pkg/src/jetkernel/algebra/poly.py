"""Sparse multivariate polynomials and polynomial vectors over an exact field."""

from __future__ import annotations

import math
from typing import Dict, Iterable, Mapping, Sequence

from . import multiindex as mi
from .fields import QQ, Field, Scalar
from .multiindex import MultiIndex

#: Degree of the zero polynomial (and order of the zero operator).
NEG_INF = -math.inf


class DimensionError(ValueError):
    """Operands live in different rings (variable count, rank or field)."""


class Poly:
    """Immutable sparse polynomial: a map from exponent tuples to nonzero scalars."""

    __slots__ = ("terms", "nvars", "field", "_hash")

    def __init__(self, terms: Mapping[MultiIndex, object] | None = None,
                 nvars: int = 1, field: Field = QQ):
        clean: Dict[MultiIndex, Scalar] = {}
        for J, c in (terms or {}).items():
            J = tuple(J)
            if len(J) != nvars or any(e < 0 for e in J):
                raise DimensionError(f"exponent {J} invalid for {nvars} variables")
            c = field(c)
            if c:
                clean[J] = c
        self.terms = clean
        self.nvars = nvars
        self.field = field
        self._hash = None

    @classmethod
    def _raw(cls, terms: Dict[MultiIndex, Scalar], nvars: int, field: Field) -> "Poly":
        # terms must already be clean: right field, no zeros
        p = object.__new__(cls)
        p.terms = terms
        p.nvars = nvars
        p.field = field
        p._hash = None
        return p

    # constructors -------------------------------------------------------
    @classmethod
    def zero(cls, nvars: int, field: Field = QQ) -> "Poly":
        return cls._raw({}, nvars, field)

    @classmethod
    def constant(cls, c, nvars: int, field: Field = QQ) -> "Poly":
        return cls({mi.zero_index(nvars): c}, nvars, field)

    @classmethod
    def one(cls, nvars: int, field: Field = QQ) -> "Poly":
        return cls.constant(1, nvars, field)

    @classmethod
    def variable(cls, k: int, nvars: int, field: Field = QQ) -> "Poly":
        """The coordinate x_{k+1} (``k`` is 0-based)."""
        return cls({mi.unit_index(nvars, k): 1}, nvars, field)

    @classmethod
    def monomial(cls, J: MultiIndex, nvars: int | None = None, field: Field = QQ,
                 coeff=1) -> "Poly":
        return cls({tuple(J): coeff}, len(J) if nvars is None else nvars, field)

    # basic queries ------------------------------------------------------
    @property
    def degree(self):
        """Total degree; ``NEG_INF`` for the zero polynomial."""
        if not self.terms:
            return NEG_INF
        return max(sum(J) for J in self.terms)

    def coefficient(self, J: MultiIndex) -> Scalar:
        return self.terms.get(tuple(J), self.field.zero)

    def constant_term(self) -> Scalar:
        return self.coefficient(mi.zero_index(self.nvars))

    def is_constant(self) -> bool:
        return all(not any(J) for J in self.terms)

    def monomials(self):
        """(exponent, coefficient) pairs in graded order."""
        return sorted(self.terms.items(), key=lambda t: mi.graded_key(t[0]))

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        return (self.nvars == other.nvars and self.field == other.field
                and self.terms == other.terms)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, self.field,
                               frozenset(self.terms.items())))
        return self._hash

    # arithmetic ---------------------------------------------------------
    def _check(self, other: "Poly"):
        if self.nvars != other.nvars:
            raise DimensionError(f"nvars mismatch: {self.nvars} vs {other.nvars}")
        if self.field != other.field:
            raise DimensionError(f"field mismatch: {self.field} vs {other.field}")

    def _lift(self, other) -> "Poly":
        if isinstance(other, Poly):
            self._check(other)
            return other
        return Poly.constant(other, self.nvars, self.field)

    def __add__(self, other):
        other = self._lift(other)
        if not other.terms:
            return self
        out = dict(self.terms)
        for J, c in other.terms.items():
            s = out.get(J)
            if s is None:
                out[J] = c
            else:
                s = s + c
                if s:
                    out[J] = s
                else:
                    del out[J]
        return Poly._raw(out, self.nvars, self.field)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw({J: -c for J, c in self.terms.items()}, self.nvars, self.field)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def scale(self, c) -> "Poly":
        c = self.field(c)
        if not c:
            return Poly.zero(self.nvars, self.field)
        return Poly._raw({J: a * c for J, a in self.terms.items()}, self.nvars, self.field)

    def __mul__(self, other):
        if not isinstance(other, Poly):
            if isinstance(other, (PolyVec,)):
                return NotImplemented
            return self.scale(other)
        self._check(other)
        out: Dict[MultiIndex, Scalar] = {}
        for J1, c1 in self.terms.items():
            for J2, c2 in other.terms.items():
                J = tuple(a + b for a, b in zip(J1, J2))
                s = out.get(J)
                out[J] = c1 * c2 if s is None else s + c1 * c2
        return Poly._raw({J: c for J, c in out.items() if c}, self.nvars, self.field)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power of a polynomial")
        result = Poly.one(self.nvars, self.field)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def shift_monomial(self, J: MultiIndex, c=None) -> "Poly":
        """Multiply by ``c * x^J`` (cheaper than a full product)."""
        c = self.field.one if c is None else self.field(c)
        if not c:
            return Poly.zero(self.nvars, self.field)
        return Poly._raw({tuple(a + b for a, b in zip(K, J)): v * c
                          for K, v in self.terms.items()}, self.nvars, self.field)

    # substitution / field change ---------------------------------------
    def substitute(self, images: Sequence["Poly"]) -> "Poly":
        """Compose: replace x_k by ``images[k]`` (all images share one ring)."""
        if len(images) != self.nvars:
            raise DimensionError("need one image per variable")
        if not images:
            return self
        target = images[0]
        out = Poly.zero(target.nvars, target.field)
        powers = [dict() for _ in images]

        def power(k, e):
            cache = powers[k]
            if e not in cache:
                cache[e] = images[k] ** e
            return cache[e]

        for J, c in self.terms.items():
            term = Poly.constant(c, target.nvars, target.field)
            for k, e in enumerate(J):
                if e:
                    term = term * power(k, e)
            out = out + term
        return out

    def evaluate(self, point: Sequence) -> Scalar:
        total = self.field.zero
        vals = [self.field(v) for v in point]
        for J, c in self.terms.items():
            t = c
            for v, e in zip(vals, J):
                if e:
                    t = t * v ** e
            total = total + t
        return total

    def change_field(self, field: Field) -> "Poly":
        """Map coefficients into ``field`` (reduction mod p from Q)."""
        return Poly(self.terms, self.nvars, field)

    def is_integral(self) -> bool:
        return self.field.characteristic != 0 or all(
            c.denominator == 1 for c in self.terms.values())

    # printing -----------------------------------------------------------
    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"Poly({format_poly(self)!r}, nvars={self.nvars}, field={self.field.name})"


def format_monomial(J: MultiIndex) -> str:
    parts = []
    for k, e in enumerate(J):
        if e == 1:
            parts.append(f"x{k + 1}")
        elif e > 1:
            parts.append(f"x{k + 1}^{e}")
    return "*".join(parts)


def format_poly(p: Poly) -> str:
    """Render in the operator DSL's syntax, highest degree first."""
    if not p.terms:
        return "0"
    chunks = []
    for J, c in reversed(p.monomials()):
        mono = format_monomial(J)
        if p.field.characteristic:
            neg, mag = False, str(c)
        else:
            neg, mag = c < 0, str(abs(c))
        if mono:
            body = mono if mag == "1" else f"{mag}*{mono}"
        else:
            body = mag
        if not chunks:
            chunks.append(("-" if neg else "") + body)
        else:
            chunks.append((" - " if neg else " + ") + body)
    return "".join(chunks)


class PolyVec:
    """Immutable length-r vector of polynomials sharing one ring."""

    __slots__ = ("entries",)

    def __init__(self, entries: Iterable[Poly]):
        entries = tuple(entries)
        if not entries:
            raise DimensionError("PolyVec needs at least one entry")
        first = entries[0]
        for e in entries[1:]:
            first._check(e)
        self.entries = entries

    @classmethod
    def zero(cls, r: int, nvars: int, field: Field = QQ) -> "PolyVec":
        return cls([Poly.zero(nvars, field)] * r)

    @classmethod
    def unit(cls, j: int, r: int, poly: Poly) -> "PolyVec":
        z = Poly.zero(poly.nvars, poly.field)
        return cls([poly if k == j else z for k in range(r)])

    @property
    def r(self) -> int:
        return len(self.entries)

    @property
    def nvars(self) -> int:
        return self.entries[0].nvars

    @property
    def field(self) -> Field:
        return self.entries[0].field

    @property
    def degree(self):
        return max(e.degree for e in self.entries)

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    def __bool__(self):
        return any(self.entries)

    def _check(self, other: "PolyVec"):
        if self.r != other.r:
            raise DimensionError(f"rank mismatch: {self.r} vs {other.r}")
        self.entries[0]._check(other.entries[0])

    def __add__(self, other):
        self._check(other)
        return PolyVec(a + b for a, b in zip(self.entries, other.entries))

    def __sub__(self, other):
        self._check(other)
        return PolyVec(a - b for a, b in zip(self.entries, other.entries))

    def __neg__(self):
        return PolyVec(-a for a in self.entries)

    def scale(self, c) -> "PolyVec":
        return PolyVec(a.scale(c) for a in self.entries)

    def __mul__(self, c):
        return self.scale(c)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, PolyVec):
            return NotImplemented
        return self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def change_field(self, field: Field) -> "PolyVec":
        return PolyVec(e.change_field(field) for e in self.entries)

    def substitute(self, images: Sequence[Poly]) -> "PolyVec":
        return PolyVec(e.substitute(images) for e in self.entries)

    def __repr__(self):
        return "PolyVec(" + ", ".join(format_poly(e) for e in self.entries) + ")"

    __str__ = __repr__


def poly_arith(p: Poly, q, op: str) -> Poly:
    """Functional form of ``+``, ``*`` and scalar multiplication."""
    if op == "add":
        if not isinstance(q, Poly):
            raise TypeError("add expects two polynomials")
        return p + q
    if op == "mul":
        if not isinstance(q, Poly):
            raise TypeError("mul expects two polynomials")
        return p * q
    if op == "scalar_mul":
        return p.scale(q)
    raise ValueError(f"unknown op {op!r}")


def multi_binomial(J: MultiIndex, I: MultiIndex, field: Field = QQ) -> Scalar:
    """prod_k C(J_k, I_k) as an element of ``field``; zero unless I <= J."""
    return field(mi.binomial(tuple(J), tuple(I)))


def hasse_derivative(p: Poly, I: MultiIndex) -> Poly:
    """Divided-power derivative: x^J -> C(J, I) x^(J - I)."""
    I = tuple(I)
    if len(I) != p.nvars:
        raise DimensionError(f"derivative index {I} has wrong length for {p.nvars} variables")
    if not any(I):
        return p
    field = p.field
    out: Dict[MultiIndex, Scalar] = {}
    for J, c in p.terms.items():
        b = mi.binomial(J, I)
        if b:
            v = c * field(b)
            if v:
                out[tuple(j - i for j, i in zip(J, I))] = v
    return Poly._raw(out, p.nvars, field)
