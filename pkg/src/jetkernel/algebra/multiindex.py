"""Multi-indices as plain tuples of nonnegative ints.

Graded order sorts by total degree, then lexicographically with higher
powers of earlier variables first (``x1^2, x1*x2, x2^2``).
"""

from __future__ import annotations

import math
from functools import lru_cache
from itertools import combinations_with_replacement
from typing import Iterator, Tuple

MultiIndex = Tuple[int, ...]


def zero_index(nvars: int) -> MultiIndex:
    return (0,) * nvars


def unit_index(nvars: int, k: int, power: int = 1) -> MultiIndex:
    e = [0] * nvars
    e[k] = power
    return tuple(e)


def total_degree(I: MultiIndex) -> int:
    return sum(I)


def add(I: MultiIndex, J: MultiIndex) -> MultiIndex:
    _check_lengths(I, J)
    return tuple(a + b for a, b in zip(I, J))


def sub(J: MultiIndex, I: MultiIndex) -> MultiIndex:
    _check_lengths(I, J)
    return tuple(a - b for a, b in zip(J, I))


def leq(I: MultiIndex, J: MultiIndex) -> bool:
    """Componentwise ``I <= J``."""
    _check_lengths(I, J)
    return all(a <= b for a, b in zip(I, J))


def factorial(I: MultiIndex) -> int:
    out = 1
    for a in I:
        out *= math.factorial(a)
    return out


def binomial(J: MultiIndex, I: MultiIndex) -> int:
    """prod_k C(J_k, I_k) as an integer (zero unless I <= J)."""
    _check_lengths(I, J)
    out = 1
    for j, i in zip(J, I):
        if i > j:
            return 0
        out *= math.comb(j, i)
    return out


def graded_key(I: MultiIndex):
    return (sum(I), tuple(-a for a in I))


@lru_cache(maxsize=None)
def monomials_of_degree(nvars: int, d: int) -> Tuple[MultiIndex, ...]:
    out = []
    for combo in combinations_with_replacement(range(nvars), d):
        e = [0] * nvars
        for k in combo:
            e[k] += 1
        out.append(tuple(e))
    out.sort(key=graded_key)
    return tuple(out)


@lru_cache(maxsize=None)
def monomials_upto(nvars: int, d: int) -> Tuple[MultiIndex, ...]:
    """All multi-indices with ``|I| <= d`` in graded order."""
    if d < 0:
        return ()
    out: list = []
    for k in range(d + 1):
        out.extend(monomials_of_degree(nvars, k))
    return tuple(out)


def count_upto(nvars: int, d: int) -> int:
    """Number of monomials of degree <= d, i.e. C(nvars + d, nvars)."""
    return math.comb(nvars + d, nvars) if d >= 0 else 0


def iter_below(J: MultiIndex) -> Iterator[MultiIndex]:
    """All I <= J componentwise."""
    if not J:
        yield ()
        return
    for head in range(J[0] + 1):
        for tail in iter_below(J[1:]):
            yield (head,) + tail


def _check_lengths(I, J):
    if len(I) != len(J):
        raise ValueError(f"multi-index length mismatch: {I} vs {J}")
