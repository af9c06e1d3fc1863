"""Exact coefficient fields: the rationals and prime fields GF(p).

Rational scalars are :class:`fractions.Fraction`; elements of GF(p) are
:class:`ModInt`.  Both support the usual arithmetic operators and ``bool``
(false exactly for zero), so the rest of the package is written against
plain operator syntax.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    return all(n % d for d in range(3, math.isqrt(n) + 1, 2))


class ModInt:
    """Residue class modulo a prime ``p``."""

    __slots__ = ("v", "p")

    def __init__(self, v: int, p: int):
        self.v = v % p
        self.p = p

    def _coerce(self, other) -> int:
        if isinstance(other, ModInt):
            if other.p != self.p:
                raise ValueError(f"cannot mix GF({self.p}) and GF({other.p})")
            return other.v
        if isinstance(other, int):
            return other
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ModInt(self.v + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ModInt(self.v - o, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ModInt(o - self.v, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ModInt(self.v * o, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return ModInt(-self.v, self.p)

    def __pos__(self):
        return self

    def inverse(self) -> "ModInt":
        if not self.v:
            raise ZeroDivisionError(f"0 has no inverse in GF({self.p})")
        return ModInt(pow(self.v, -1, self.p), self.p)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * ModInt(o, self.p).inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ModInt(o, self.p) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        return ModInt(pow(self.v, k, self.p), self.p)

    def __eq__(self, other):
        if isinstance(other, ModInt):
            return self.p == other.p and self.v == other.v
        if isinstance(other, int):
            return self.v == other % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.v, self.p))

    def __bool__(self):
        return self.v != 0

    def __int__(self):
        return self.v

    def __repr__(self):
        return f"ModInt({self.v}, {self.p})"

    def __str__(self):
        return str(self.v)

    def __reduce__(self):
        return (ModInt, (self.v, self.p))


Scalar = Union[Fraction, ModInt]


@dataclass(frozen=True)
class Field:
    """An exact field: ``Field(0)`` is Q, ``Field(p)`` is GF(p).

    Calling the field coerces ints, Fractions, ``"num/den"`` strings and
    elements of the same field into it.
    """

    characteristic: int = 0

    def __post_init__(self):
        p = self.characteristic
        if p != 0 and not is_prime(p):
            raise ValueError(f"field characteristic must be 0 or prime, got {p}")

    @property
    def is_prime_field(self) -> bool:
        return self.characteristic != 0

    @property
    def name(self) -> str:
        return "Q" if self.characteristic == 0 else f"GF({self.characteristic})"

    def __str__(self):
        return self.name

    def __call__(self, value) -> Scalar:
        p = self.characteristic
        if isinstance(value, str):
            value = Fraction(value.strip())
        if p == 0:
            if isinstance(value, ModInt):
                raise TypeError("cannot lift a GF(p) element to Q")
            return Fraction(value)
        if isinstance(value, ModInt):
            if value.p != p:
                raise ValueError(f"cannot map GF({value.p}) into GF({p})")
            return value
        if isinstance(value, int):
            return ModInt(value, p)
        if isinstance(value, Fraction):
            if value.denominator % p == 0:
                raise ZeroDivisionError(
                    f"{value} has denominator divisible by {p}")
            return ModInt(value.numerator * pow(value.denominator, -1, p), p)
        raise TypeError(f"cannot coerce {value!r} into {self.name}")

    @property
    def zero(self) -> Scalar:
        return self(0)

    @property
    def one(self) -> Scalar:
        return self(1)

    def contains(self, x) -> bool:
        if self.characteristic == 0:
            return isinstance(x, Fraction)
        return isinstance(x, ModInt) and x.p == self.characteristic

    def factorial(self, n: int) -> Scalar:
        return self(math.factorial(n))


QQ = Field(0)


def GF(p: int) -> Field:
    return Field(p)


def parse_field(text) -> Field:
    """Accept ``"Q"``, ``"rationals"``, ``"GF(7)"``, ``"7"`` or an int."""
    if isinstance(text, Field):
        return text
    if isinstance(text, int):
        return Field(text)
    t = str(text).strip()
    if t.upper() in ("Q", "QQ", "RATIONALS", "0"):
        return QQ
    if t.upper().startswith("GF(") and t.endswith(")"):
        t = t[3:-1]
    try:
        return Field(int(t))
    except ValueError:
        raise ValueError(f"unrecognised field {text!r}") from None


def format_scalar(x: Scalar) -> str:
    """``"num/den"`` (or ``"num"``) string with no loss of precision."""
    return str(x)
