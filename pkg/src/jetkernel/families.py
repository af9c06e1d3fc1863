"""Parametrised operator families and seeded sampling.

A family is an affine-linear space of operators: a fixed base operator plus
free integer parameters ``t[(i, j, I, J)]`` multiplying ``x^J h^[I]`` in
entry (i, j).  Each mode fixes the base operator and which parameter
indices are free:

``universal``           every (i, j, |I| <= N, |J| <= M)
``constant``            J = 0 only (constant coefficients)
``triangular``          strictly lower entries; diagonal fixed to nonzero
                        order-0 polynomials a_i (zero kernel)
``zero-constant-term``  one variable, diagonal h^[1], strictly lower entries
                        with I != 0 (kernel = constants); with
                        ``perturb_all`` every entry with I != 0 is free
``subspace-L``          I != 0 and I_1 = 0 (kills k[x_1]^r)
"""

from __future__ import annotations

import hashlib
import math
import random
from dataclasses import dataclass, field as dc_field
from enum import Enum
from typing import Dict, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

from .algebra import multiindex as mi
from .algebra.fields import QQ, Field, is_prime
from .algebra.multiindex import MultiIndex
from .algebra.poly import Poly, PolyVec
from .operators.actions import (InvertiblePolyMatrix, PolyAutomorphism, conjugate_glr,
                                pullback_automorphism)
from .operators.core import MatrixOperator, ScalarOperator

ParamKey = Tuple[int, int, MultiIndex, MultiIndex]

DEFAULT_BOUND = 10


class Mode(str, Enum):
    UNIVERSAL = "universal"
    CONSTANT = "constant"
    TRIANGULAR = "triangular"
    ZERO_CONSTANT_TERM = "zero-constant-term"
    SUBSPACE_L = "subspace-L"

    @classmethod
    def parse(cls, text: Union[str, "Mode"]) -> "Mode":
        if isinstance(text, Mode):
            return text
        aliases = {"universal": cls.UNIVERSAL, "constant": cls.CONSTANT,
                   "constantcoefficient": cls.CONSTANT, "triangular": cls.TRIANGULAR,
                   "triangularunit": cls.TRIANGULAR, "zero-constant-term": cls.ZERO_CONSTANT_TERM,
                   "zeroconstantterm": cls.ZERO_CONSTANT_TERM,
                   "zeroconstanttermtriangular": cls.ZERO_CONSTANT_TERM,
                   "subspace-l": cls.SUBSPACE_L, "subspacel": cls.SUBSPACE_L, "l": cls.SUBSPACE_L}
        key = text.strip().lower().replace("_", "-")
        if key in aliases:
            return aliases[key]
        key = key.replace("-", "")
        if key in aliases:
            return aliases[key]
        raise ValueError(f"unknown family mode {text!r}")


@dataclass(frozen=True)
class FamilySpec:
    mode: Mode
    r: int
    nvars: int
    N: int
    M: int
    diagonal: Tuple[Poly, ...] = ()
    perturb_all: bool = False
    field: Field = QQ

    def __post_init__(self):
        if self.r < 1 or self.nvars < 1 or self.N < 0 or self.M < 0:
            raise ValueError("need r >= 1, nvars >= 1 and N, M >= 0")
        if self.mode is Mode.TRIANGULAR:
            if len(self.diagonal) != self.r:
                raise ValueError("triangular family needs r diagonal polynomials")
            if not all(self.diagonal):
                raise ValueError("triangular family needs nonzero diagonal polynomials")
        if self.mode is Mode.ZERO_CONSTANT_TERM and self.nvars != 1:
            raise ValueError("zero-constant-term family is defined for one variable")
        if self.mode is Mode.ZERO_CONSTANT_TERM and self.N < 1:
            raise ValueError("zero-constant-term family needs order N >= 1")
        if self.mode is Mode.SUBSPACE_L and self.nvars < 2:
            raise ValueError("subspace-L family needs nvars >= 2")

    def allows(self, key: ParamKey) -> bool:
        """The mode's vanishing pattern as an index predicate."""
        i, j, I, J = key
        mode = self.mode
        if mode is Mode.UNIVERSAL:
            return True
        if mode is Mode.CONSTANT:
            return not any(J)
        if mode is Mode.TRIANGULAR:
            return i > j
        if mode is Mode.ZERO_CONSTANT_TERM:
            return any(I) and (self.perturb_all or i > j)
        if mode is Mode.SUBSPACE_L:
            return any(I) and I[0] == 0
        raise AssertionError(mode)

    def parameters(self) -> List[ParamKey]:
        """Free parameter indices in a fixed order (i, j, graded I, graded J)."""
        keys = []
        Is = mi.monomials_upto(self.nvars, self.N)
        Js = mi.monomials_upto(self.nvars, self.M)
        for i in range(self.r):
            for j in range(self.r):
                for I in Is:
                    for J in Js:
                        if self.allows((i, j, I, J)):
                            keys.append((i, j, I, J))
        return keys

    @property
    def parameter_count(self) -> int:
        """Closed form for the number of parameters (cross-checked against
        :meth:`parameters` in the tests)."""
        n, r = self.nvars, self.r
        cI, cJ = mi.count_upto(n, self.N), mi.count_upto(n, self.M)
        mode = self.mode
        if mode is Mode.UNIVERSAL:
            return r * r * cI * cJ
        if mode is Mode.CONSTANT:
            return r * r * cI
        if mode is Mode.TRIANGULAR:
            return r * (r - 1) // 2 * cI * cJ
        if mode is Mode.ZERO_CONSTANT_TERM:
            entries = r * r if self.perturb_all else r * (r - 1) // 2
            return entries * (cI - 1) * cJ
        if mode is Mode.SUBSPACE_L:
            # I ranges over nonzero indices in the last nvars - 1 variables
            return r * r * (mi.count_upto(n - 1, self.N) - 1) * cJ
        raise AssertionError(mode)

    def base_operator(self) -> MatrixOperator:
        """The operator at parameter value 0."""
        n, f = self.nvars, self.field
        if self.mode is Mode.TRIANGULAR:
            return MatrixOperator.diagonal([ScalarOperator.multiplication(a.change_field(f))
                                            if a.field != f else ScalarOperator.multiplication(a)
                                            for a in self.diagonal])
        if self.mode is Mode.ZERO_CONSTANT_TERM:
            return MatrixOperator.diagonal([ScalarOperator.hasse((1,), 1, f)] * self.r)
        return MatrixOperator.zero(self.r, n, f)

    def to_dict(self) -> dict:
        return {"mode": self.mode.value, "r": self.r, "nvars": self.nvars, "N": self.N,
                "M": self.M, "diagonal": [str(a) for a in self.diagonal],
                "perturb_all": self.perturb_all, "field": self.field.name,
                "K": self.parameter_count}


def universal_family(r: int, nvars: int, N: int, M: int, field: Field = QQ) -> FamilySpec:
    return FamilySpec(Mode.UNIVERSAL, r, nvars, N, M, field=field)


def constant_coefficient_family(r: int, nvars: int, N: int, field: Field = QQ) -> FamilySpec:
    return FamilySpec(Mode.CONSTANT, r, nvars, N, 0, field=field)


def triangular_family(diagonal: Sequence[Poly], N: int, M: int) -> FamilySpec:
    d = tuple(diagonal)
    return FamilySpec(Mode.TRIANGULAR, len(d), d[0].nvars, N, M, diagonal=d,
                      field=d[0].field)


def zero_constant_term_family(r: int, N: int, M: int, perturb_all: bool = False,
                              field: Field = QQ) -> FamilySpec:
    return FamilySpec(Mode.ZERO_CONSTANT_TERM, r, 1, N, M, perturb_all=perturb_all,
                      field=field)


def subspace_L_family(r: int, nvars: int, N: int, M: int, field: Field = QQ) -> FamilySpec:
    if nvars < 2:
        raise ValueError("subspace-L family needs nvars >= 2")
    return FamilySpec(Mode.SUBSPACE_L, r, nvars, N, M, field=field)


@dataclass(frozen=True)
class SamplePoint:
    spec: FamilySpec
    seed: int
    bound: int
    values: Mapping[ParamKey, int] = dc_field(default_factory=dict)

    def __post_init__(self):
        for key, v in self.values.items():
            if not self.spec.allows(key):
                raise ValueError(f"parameter {key} violates the {self.spec.mode.value} pattern")
            if abs(v) > self.bound:
                raise ValueError(f"parameter {key} = {v} exceeds bound {self.bound}")

    def to_dict(self) -> dict:
        return {"seed": self.seed, "bound": self.bound,
                "values": [[i, j, list(I), list(J), v]
                           for (i, j, I, J), v in self.values.items() if v]}


def derive_seed(seed: int, index: int) -> int:
    """Platform-independent 64-bit seed for sample ``index`` of a run."""
    h = hashlib.blake2b(f"{seed}:{index}".encode(), digest_size=8)
    return int.from_bytes(h.digest(), "big")


def sample(spec: FamilySpec, seed: int, bound: int = DEFAULT_BOUND) -> SamplePoint:
    """Uniform integers in [-bound, bound] for every free parameter."""
    rng = random.Random(seed)
    values = {key: rng.randint(-bound, bound) for key in spec.parameters()}
    return SamplePoint(spec, seed, bound, values)


def jitter(point: SamplePoint, seed: int, amount: int = 1) -> SamplePoint:
    """Perturb every parameter by an integer in [-amount, amount]."""
    rng = random.Random(seed)
    values = {key: point.values.get(key, 0) + rng.randint(-amount, amount)
              for key in point.spec.parameters()}
    return SamplePoint(point.spec, seed, point.bound + amount, values)


def instantiate(point: SamplePoint) -> MatrixOperator:
    """Base operator plus sum of ``c * x^J h^[I]`` over the sampled parameters."""
    spec = point.spec
    n, f = spec.nvars, spec.field
    coeffs: Dict[Tuple[int, int, MultiIndex], Dict[MultiIndex, int]] = {}
    for (i, j, I, J), v in point.values.items():
        if not spec.allows((i, j, I, J)):
            raise ValueError(f"parameter {(i, j, I, J)} violates the {spec.mode.value} pattern")
        if v:
            coeffs.setdefault((i, j, I), {})[J] = v
    D = MatrixOperator.from_coefficients(
        {k: Poly(terms, n, f) for k, terms in coeffs.items()}, spec.r, n, f)
    return spec.base_operator() + D


def pattern_violations(spec: FamilySpec, D: MatrixOperator) -> List[ParamKey]:
    """Coefficient positions of ``D - base`` outside the mode's free set."""
    bad = []
    for (i, j, I), a in (D - spec.base_operator()).coefficients().items():
        for J in a.terms:
            if sum(I) > spec.N or sum(J) > spec.M or not spec.allows((i, j, I, J)):
                bad.append((i, j, I, J))
    return bad


# ---------------------------------------------------------------------------
# random helpers

def random_poly(rng: random.Random, nvars: int, degree: int, bound: int = DEFAULT_BOUND,
                field: Field = QQ, density: float = 1.0) -> Poly:
    terms = {}
    for J in mi.monomials_upto(nvars, degree):
        if density >= 1.0 or rng.random() < density:
            terms[J] = rng.randint(-bound, bound)
    return Poly(terms, nvars, field)


def random_nonzero_poly(rng: random.Random, nvars: int, degree: int,
                        bound: int = DEFAULT_BOUND, field: Field = QQ) -> Poly:
    while True:
        p = random_poly(rng, nvars, degree, bound, field)
        if p:
            return p


def random_polyvec(rng: random.Random, r: int, nvars: int, degree: int,
                   bound: int = DEFAULT_BOUND, field: Field = QQ) -> PolyVec:
    return PolyVec(random_poly(rng, nvars, degree, bound, field) for _ in range(r))


def random_operator(rng: random.Random, r: int, nvars: int, N: int, M: int,
                    bound: int = DEFAULT_BOUND, field: Field = QQ) -> MatrixOperator:
    spec = universal_family(r, nvars, N, M, field)
    return instantiate(sample(spec, rng.getrandbits(64), bound))


# ---------------------------------------------------------------------------
# structured witnesses

def triangular_witness(r: int, nvars: int, diagonal: Sequence[Poly],
                       lower: Optional[Mapping[Tuple[int, int], ScalarOperator]] = None
                       ) -> MatrixOperator:
    """Lower triangular operator with order-0 nonzero diagonal: zero kernel."""
    if len(diagonal) != r:
        raise ValueError(f"need {r} diagonal polynomials")
    if not all(diagonal):
        raise ValueError("diagonal polynomials must be nonzero")
    field = diagonal[0].field
    zero = ScalarOperator.zero(nvars, field)
    grid = [[zero] * r for _ in range(r)]
    for i, a in enumerate(diagonal):
        grid[i][i] = ScalarOperator.multiplication(a)
    for (i, j), op in (lower or {}).items():
        if i <= j:
            raise ValueError(f"entry ({i}, {j}) is not strictly below the diagonal")
        grid[i][j] = op
    return MatrixOperator(grid)


def constant_kernel_witness(r: int, strictly_lower: Optional[Mapping[Tuple[int, int],
                                                                     ScalarOperator]] = None,
                            field: Field = QQ) -> MatrixOperator:
    """One-variable lower triangular operator with h^[1] on the diagonal.

    Every supplied entry must kill constants (no order-0 term), so the
    kernel is exactly the constant vectors in every degree.
    """
    h = ScalarOperator.hasse((1,), 1, field)
    zero = ScalarOperator.zero(1, field)
    grid = [[h if i == j else zero for j in range(r)] for i in range(r)]
    for (i, j), op in (strictly_lower or {}).items():
        if i <= j:
            raise ValueError(f"entry ({i}, {j}) is not strictly below the diagonal")
        if op.nvars != 1:
            raise ValueError("constant_kernel_witness is defined for one variable")
        if op.coefficient((0,)):
            raise ValueError(
                f"entry ({i}, {j}) has a nonzero order-0 term {op.coefficient((0,))}; "
                "it must annihilate constants")
        grid[i][j] = op
    return MatrixOperator(grid)


def random_unitriangular(rng: random.Random, r: int, nvars: int, degree: int = 1,
                         bound: int = 3, field: Field = QQ) -> InvertiblePolyMatrix:
    lower = {(i, j): random_poly(rng, nvars, degree, bound, field)
             for i in range(r) for j in range(i)}
    return InvertiblePolyMatrix.unitriangular(lower, r, nvars, field)


def gl_translate(D: MatrixOperator,
                 g: Union[InvertiblePolyMatrix, PolyAutomorphism]) -> MatrixOperator:
    if isinstance(g, InvertiblePolyMatrix):
        return conjugate_glr(D, g)
    if isinstance(g, PolyAutomorphism):
        return pullback_automorphism(D, g)
    raise TypeError(f"cannot translate by {type(g).__name__}")


# ---------------------------------------------------------------------------
# characteristic p

class ReductionError(ValueError):
    """A coefficient's denominator is divisible by the prime."""


def reduce_mod_p(D: MatrixOperator, p: int) -> MatrixOperator:
    """Entrywise reduction of the Hasse coefficients of a Q-operator."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if D.field.characteristic:
        raise ValueError("reduce_mod_p expects an operator over Q")
    Fp = Field(p)
    coeffs = {}
    for (i, j, I), a in D.coefficients().items():
        for J, c in a.terms.items():
            if c.denominator % p == 0:
                raise ReductionError(
                    f"coefficient {c} of x^{J} h^[{I}] in entry ({i + 1}, {j + 1}) "
                    f"has denominator divisible by {p}")
        coeffs[(i, j, I)] = a.change_field(Fp)
    return MatrixOperator.from_coefficients(coeffs, D.r, D.nvars, Fp)


def bad_primes(D: MatrixOperator) -> List[int]:
    """Primes dividing some coefficient denominator of D."""
    dens = 1
    for a in D.coefficients().values():
        for c in a.terms.values():
            dens = dens * c.denominator // math.gcd(dens, c.denominator)
    out, q = [], 2
    while dens > 1:
        if dens % q == 0:
            out.append(q)
            while dens % q == 0:
                dens //= q
        q += 1
    return out


def iter_samples(spec: FamilySpec, seed: int, count: int,
                 bound: int = DEFAULT_BOUND) -> Iterator[SamplePoint]:
    for k in range(count):
        yield sample(spec, derive_seed(seed, k), bound)
