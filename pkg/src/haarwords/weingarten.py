"""Exact Weingarten function Wg_d on S_n as a class function.

Values come from the character expansion

    Wg_d(sigma) = 1/n!^2 * sum_{lam |- n, len(lam) <= d} chi_lam(1)^2 / rho_lam(1) * chi_lam(sigma)

which inverts sigma -> d^{#cycles(sigma)} in the group algebra when d >= n, and
is its pseudo-inverse on the subalgebra spanned by partitions with at most d
rows otherwise.
"""
from __future__ import annotations

import math
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Mapping, Sequence

from .characters import character_value, unitary_dimension
from .combinatorics import (
    Partition,
    all_permutations,
    compose,
    cycle_type,
    dimension_sn,
    enumerate_partitions,
    inverse,
    permutation_of_type,
)
from .errors import BudgetError

WG_GUARD = 16


@dataclass(frozen=True)
class WeingartenTable:
    n: int
    d: int
    values: Mapping[Partition, Fraction] = field(repr=False)

    def __call__(self, sigma: Sequence[int]) -> Fraction:
        return weingarten_value(self, sigma)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "d": self.d,
            "values": {
                str(list(mu)).replace(" ", ""): _frac_str(v) for mu, v in self.values.items()
            },
        }


def _frac_str(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


_cache: dict[tuple[int, int], WeingartenTable] = {}
_proj_cache: dict[tuple[int, int], dict[Partition, Fraction]] = {}
_lock = threading.Lock()


def weingarten_table(n: int, d: int) -> WeingartenTable:
    if n < 1 or d < 1:
        raise ValueError("n and d must be positive")
    if n > WG_GUARD:
        raise BudgetError(f"Weingarten tables limited to n <= {WG_GUARD}", n)
    key = (n, d)
    with _lock:
        if key in _cache:
            return _cache[key]
    nfact = math.factorial(n)
    lams = enumerate_partitions(n, max_length=d)
    weights = {lam: Fraction(dimension_sn(lam) ** 2, unitary_dimension(lam, d)) for lam in lams}
    values = {}
    for mu in enumerate_partitions(n):
        s = sum(w * character_value(lam, mu) for lam, w in weights.items())
        values[mu] = s / (nfact * nfact)
    table = WeingartenTable(n, d, values)
    with _lock:
        return _cache.setdefault(key, table)


def weingarten_value(table: WeingartenTable, sigma: Sequence[int]) -> Fraction:
    if len(sigma) != table.n:
        raise ValueError(f"permutation of degree {len(sigma)} given to a degree-{table.n} table")
    return table.values[cycle_type(sigma)]


def projector_table(n: int, d: int) -> dict[Partition, Fraction]:
    """Class function Wg_d * G, the central idempotent onto C_d[S_n].

    Equals (1/n!) sum_{len(lam) <= d} chi_lam(1) chi_lam, i.e. the delta at the
    identity when d >= n.
    """
    key = (n, d)
    with _lock:
        if key in _proj_cache:
            return _proj_cache[key]
    nfact = math.factorial(n)
    lams = enumerate_partitions(n, max_length=d)
    table = {
        mu: Fraction(sum(dimension_sn(lam) * character_value(lam, mu) for lam in lams), nfact)
        for mu in enumerate_partitions(n)
    }
    with _lock:
        return _proj_cache.setdefault(key, table)


def gram_function(d: int) -> Callable[[Sequence[int]], int]:
    """sigma -> d^{#cycles(sigma)}."""
    return lambda sigma: d ** len(cycle_type(sigma))


def convolve(f1: Callable, f2: Callable, n: int) -> dict[Partition, Fraction]:
    """Group-algebra convolution of two class functions on S_n, by explicit sum.

    (f1 * f2)(y) = sum_x f1(x) f2(x^-1 y); returned per cycle type of y.
    """
    perms = list(all_permutations(n))
    out = {}
    for mu in enumerate_partitions(n):
        y = permutation_of_type(mu)
        out[mu] = sum((Fraction(f1(x)) * f2(compose(inverse(x), y)) for x in perms), Fraction(0))
    return out
