"""Truncated jet algebras ``k[x][dx] / (dx)^(N+1)`` and the operator/jet-map
correspondence.

An operator of order <= N is the same thing as a k[x]-linear map out of
the N-th jet module: it sends ``dx^I`` in column j to ``a_{I,i,j}`` in row i,
and the operator itself is that map precomposed with the truncated Taylor
expansion ``f(x) -> f(x + dx)``.  With coefficients stored against Hasse
derivatives no factorials appear anywhere in this dictionary.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Dict, List, Mapping, Sequence, Tuple

from .algebra import multiindex as mi
from .algebra.fields import QQ, Field, is_prime
from .algebra.multiindex import MultiIndex
from .algebra.poly import DimensionError, Poly, PolyVec
from .operators.core import MatrixOperator


class JetElement:
    """Element of the truncated jet algebra: ``{I: coefficient}`` over dx^I."""

    __slots__ = ("terms", "N", "nvars", "field")

    def __init__(self, terms: Mapping[MultiIndex, Poly], N: int, nvars: int,
                 field: Field = QQ):
        if N < 0:
            raise ValueError("truncation order must be >= 0")
        clean = {}
        for I, a in terms.items():
            I = tuple(I)
            if len(I) != nvars:
                raise DimensionError(f"dx-index {I} invalid for {nvars} variables")
            if sum(I) > N:
                raise ValueError(f"dx-index {I} exceeds truncation order {N}")
            if a.nvars != nvars or a.field != field:
                raise DimensionError("coefficient ring mismatch")
            if a:
                clean[I] = a
        self.terms = clean
        self.N = N
        self.nvars = nvars
        self.field = field

    @classmethod
    def scalar(cls, f: Poly, N: int) -> "JetElement":
        """``f`` as a jet with no dx part (the first k[x]-structure)."""
        return cls({mi.zero_index(f.nvars): f}, N, f.nvars, f.field)

    @classmethod
    def dx(cls, k: int, N: int, nvars: int, field: Field = QQ) -> "JetElement":
        if N == 0:
            return cls({}, N, nvars, field)
        return cls({mi.unit_index(nvars, k): Poly.one(nvars, field)}, N, nvars, field)

    def coefficient(self, I: MultiIndex) -> Poly:
        return self.terms.get(tuple(I), Poly.zero(self.nvars, self.field))

    def _check(self, other: "JetElement"):
        if (self.N, self.nvars, self.field) != (other.N, other.nvars, other.field):
            raise DimensionError("jets from different algebras")

    def __add__(self, other: "JetElement") -> "JetElement":
        self._check(other)
        out = dict(self.terms)
        for I, a in other.terms.items():
            out[I] = out[I] + a if I in out else a
        return JetElement(out, self.N, self.nvars, self.field)

    def __neg__(self):
        return JetElement({I: -a for I, a in self.terms.items()}, self.N, self.nvars, self.field)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other: "JetElement") -> "JetElement":
        self._check(other)
        out: Dict[MultiIndex, Poly] = {}
        for I1, a1 in self.terms.items():
            d1 = sum(I1)
            for I2, a2 in other.terms.items():
                if d1 + sum(I2) > self.N:
                    continue
                I = mi.add(I1, I2)
                t = a1 * a2
                out[I] = out[I] + t if I in out else t
        return JetElement(out, self.N, self.nvars, self.field)

    def __pow__(self, k: int) -> "JetElement":
        result = JetElement.scalar(Poly.one(self.nvars, self.field), self.N)
        for _ in range(k):
            result = result * self
        return result

    def truncate(self, N: int) -> "JetElement":
        """Image under J^M -> J^N for N <= M (forget high dx-degrees)."""
        if N > self.N:
            raise ValueError("can only truncate to a lower order")
        return JetElement({I: a for I, a in self.terms.items() if sum(I) <= N},
                          N, self.nvars, self.field)

    def change_field(self, field: Field) -> "JetElement":
        return JetElement({I: a.change_field(field) for I, a in self.terms.items()},
                          self.N, self.nvars, field)

    def __eq__(self, other):
        if not isinstance(other, JetElement):
            return NotImplemented
        return (self.N, self.nvars, self.field, self.terms) == \
            (other.N, other.nvars, other.field, other.terms)

    def __repr__(self):
        parts = []
        for I in sorted(self.terms, key=mi.graded_key):
            dx = "*".join(f"dx{k + 1}" + (f"^{e}" if e > 1 else "")
                          for k, e in enumerate(I) if e)
            parts.append(f"({self.terms[I]})" + (f"*{dx}" if dx else ""))
        return f"JetElement[N={self.N}](" + (" + ".join(parts) or "0") + ")"


def taylor_jet(f: Poly, N: int) -> JetElement:
    """``f(x + dx)`` modulo ``(dx)^(N+1)``.

    Computed as the algebra map x_k -> x_k + dx_k evaluated in the truncated
    jet algebra; the dx^I coefficient then equals the Hasse derivative
    h^[I](f).
    """
    if N < 0:
        raise ValueError("truncation order must be >= 0")
    n, field = f.nvars, f.field
    shifted = [JetElement.scalar(Poly.variable(k, n, field), N) + JetElement.dx(k, N, n, field)
               for k in range(n)]
    powers: List[Dict[int, JetElement]] = [dict() for _ in range(n)]
    total = JetElement({}, N, n, field)
    for J, c in f.terms.items():
        term = JetElement.scalar(Poly.constant(c, n, field), N)
        for k, e in enumerate(J):
            if e:
                if e not in powers[k]:
                    powers[k][e] = shifted[k] ** e
                term = term * powers[k][e]
        total = total + term
    return total


@dataclass(frozen=True)
class JetLinearMap:
    """k[x]-linear map J^N(k[x]^r) -> k[x]^r, stored as images of dx^I e_j."""

    r: int
    N: int
    nvars: int
    field: Field
    images: Mapping[Tuple[MultiIndex, int, int], Poly] = dc_field(default_factory=dict)

    def __post_init__(self):
        for (I, j, i), a in self.images.items():
            if sum(I) > self.N:
                raise ValueError(f"image of dx^{I} exceeds order {self.N}")
            if not (0 <= i < self.r and 0 <= j < self.r):
                raise DimensionError(f"index ({i}, {j}) out of range for rank {self.r}")

    def evaluate(self, jets: Sequence[JetElement]) -> PolyVec:
        """Apply to a vector of jets (one per column)."""
        if len(jets) != self.r:
            raise DimensionError("need one jet per column")
        out = [Poly.zero(self.nvars, self.field) for _ in range(self.r)]
        for (I, j, i), a in self.images.items():
            c = jets[j].coefficient(I)
            if c:
                out[i] = out[i] + c * a
        return PolyVec(out)

    def __call__(self, v: PolyVec) -> PolyVec:
        """The composite with the Taylor map: the associated operator's action."""
        return self.evaluate([taylor_jet(p, self.N) for p in v])


def op_to_jet_map(D: MatrixOperator, N: int | None = None) -> JetLinearMap:
    """dx^I in column j -> a_{I,i,j} in row i."""
    order = max(D.order, 0)
    N = order if N is None else N
    if N < order:
        raise ValueError(f"operator has order {order} > {N}")
    images = {(I, j, i): a for (i, j, I), a in D.coefficients().items()}
    return JetLinearMap(D.r, N, D.nvars, D.field, images)


def jet_map_to_op(T: JetLinearMap) -> MatrixOperator:
    coeffs = {(i, j, I): a for (I, j, i), a in T.images.items() if a}
    return MatrixOperator.from_coefficients(coeffs, T.r, T.nvars, T.field)


@dataclass(frozen=True)
class JetPresentation:
    """Presentation data of J^N(k[x]/(f_j)): relators and their d^1 parts.

    The jet algebra is ``k[x][dx] / ((dx)^(N+1), f_j, d1f_j)``.
    """

    nvars: int
    N: int
    field: Field
    relation_generators: Tuple[Tuple[Poly, JetElement], ...]

    def normal_form(self):
        """Hashable canonical form used for comparisons."""
        return (self.nvars, self.N, self.field.name,
                tuple((tuple(sorted(f.terms.items())),
                       tuple(sorted((I, tuple(sorted(a.terms.items())))
                                    for I, a in d.terms.items())))
                      for f, d in self.relation_generators))

    def describe(self) -> List[str]:
        rel = [f"(dx)^{self.N + 1}"]
        for f, d in self.relation_generators:
            rel.append(str(f))
            rel.append(repr(d))
        return rel


def jet_presentation(relators: Sequence[Poly], N: int, nvars: int | None = None,
                     field: Field | None = None) -> JetPresentation:
    """Relators f_j paired with ``d1 f_j = taylor_jet(f_j) - f_j``."""
    if N < 0:
        raise ValueError("truncation order must be >= 0")
    if relators:
        nvars = relators[0].nvars if nvars is None else nvars
        field = relators[0].field if field is None else field
    if nvars is None:
        raise ValueError("nvars is required for an empty relator list")
    field = QQ if field is None else field
    gens = []
    for f in relators:
        if f.nvars != nvars or f.field != field:
            raise DimensionError("relators live in different rings")
        gens.append((f, taylor_jet(f, N) - JetElement.scalar(f, N)))
    return JetPresentation(nvars, N, field, tuple(gens))


@dataclass
class BaseChangeReport:
    equal: bool
    p: int
    N: int
    relators: List[str]
    reduced: JetPresentation
    native: JetPresentation

    def to_dict(self):
        return {"equal": self.equal, "p": self.p, "N": self.N, "relators": self.relators,
                "native": self.native.describe()}


def base_change_check(relators: Sequence[Poly], N: int, p: int,
                      nvars: int | None = None) -> BaseChangeReport:
    """Compare J^N over Q reduced mod p with J^N computed natively over GF(p)."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    for f in relators:
        if not f.is_integral():
            raise ValueError(f"relator {f} does not have integer coefficients")
    Fp = Field(p)
    over_q = jet_presentation(list(relators), N, nvars, QQ)
    reduced = JetPresentation(
        over_q.nvars, N, Fp,
        tuple((f.change_field(Fp), d.change_field(Fp)) for f, d in over_q.relation_generators))
    native = jet_presentation([f.change_field(Fp) for f in relators], N, over_q.nvars, Fp)
    return BaseChangeReport(reduced.normal_form() == native.normal_form(), p, N,
                            [str(f) for f in relators], reduced, native)
