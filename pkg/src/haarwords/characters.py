"""Irreducible characters of S_n, U(d) dimensions and Young-subgroup averages."""
from __future__ import annotations

import itertools
import math
import threading
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator

from .combinatorics import (
    Partition,
    Permutation,
    all_permutations,
    cells,
    class_size,
    compose,
    cycle_type,
    dimension_sn,
    enumerate_partitions,
    inverse,
    sign,
)
from .errors import BudgetError

COSET_GUARD = 8
INDUCED_GUARD = 10


@lru_cache(maxsize=None)
def character_value(lam: Partition, mu: Partition) -> int:
    """chi_lam evaluated on the class of cycle type ``mu`` (Murnaghan-Nakayama)."""
    lam, mu = tuple(lam), tuple(sorted(mu, reverse=True))
    if sum(lam) != sum(mu):
        raise ValueError(f"size mismatch: |{lam}| != |{mu}|")
    return _mn(_beta_set(lam), mu)


def _beta_set(lam: Partition) -> tuple[int, ...]:
    k = len(lam)
    return tuple(sorted(lam[i] + (k - 1 - i) for i in range(k)))


@lru_cache(maxsize=None)
def _mn(beta: tuple[int, ...], mu: Partition) -> int:
    if not mu:
        return 1
    k, rest = mu[0], mu[1:]
    occupied = set(beta)
    total = 0
    for b in beta:
        t = b - k
        if t < 0 or t in occupied:
            continue
        # removing a rim hook of length k moves one bead down by k positions
        height = sum(1 for x in beta if t < x < b)
        new = tuple(sorted((occupied - {b}) | {t}))
        total += (-1) ** height * _mn(new, rest)
    return total


class CharacterTable:
    """Character table of S_n, rows indexed by lambda and columns by cycle type."""

    def __init__(self, n: int):
        self.n = n
        self.partitions = tuple(enumerate_partitions(n))
        self.values = {
            (lam, mu): character_value(lam, mu) for lam in self.partitions for mu in self.partitions
        }

    def __getitem__(self, key: tuple[Partition, Partition]) -> int:
        return self.values[key]

    def row(self, lam: Partition) -> list[int]:
        return [self.values[(lam, mu)] for mu in self.partitions]

    def to_csv(self) -> str:
        def fmt(p: Partition) -> str:
            return '"' + str(list(p)).replace(" ", "") + '"'

        lines = ["lambda," + ",".join(fmt(mu) for mu in self.partitions)]
        for lam in self.partitions:
            lines.append(fmt(lam) + "," + ",".join(str(v) for v in self.row(lam)))
        return "\n".join(lines) + "\n"


_tables: dict[int, CharacterTable] = {}
_tables_lock = threading.Lock()


def character_table(n: int) -> CharacterTable:
    with _tables_lock:
        table = _tables.get(n)
        if table is None:
            table = _tables[n] = CharacterTable(n)
        return table


def permutation_character(lam: Partition, p: Permutation) -> int:
    return character_value(lam, cycle_type(p))


def unitary_dimension(lam: Partition, d: int) -> int:
    """Dimension of the irreducible U(d)-representation with highest weight ``lam``."""
    if len(lam) > d:
        raise ValueError(f"partition {lam} has more than d={d} rows")
    m = sum(lam)
    content = math.prod(d + j - i for i, j in cells(lam))
    num = dimension_sn(lam) * content
    q, r = divmod(num, math.factorial(m))
    assert r == 0
    return q


# --------------------------------------------------------------------------
# Young subgroups S_m^l inside S_{ml}
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class YoungSubgroup:
    """The block subgroup S_m x ... x S_m (l copies) acting on consecutive blocks."""

    m: int
    l: int

    @property
    def n(self) -> int:
        return self.m * self.l

    @property
    def order(self) -> int:
        return math.factorial(self.m) ** self.l

    def elements(self) -> Iterator[Permutation]:
        m = self.m
        blocks = list(itertools.permutations(range(m)))
        for choice in itertools.product(blocks, repeat=self.l):
            yield tuple(b * m + x for b, block in enumerate(choice) for x in block)

    def contains(self, p: Permutation) -> bool:
        return all(p[i] // self.m == i // self.m for i in range(self.n))


def young_subgroups(n: int) -> list[YoungSubgroup]:
    return [YoungSubgroup(m, n // m) for m in range(1, n + 1) if n % m == 0]


def xi_value(xi: str, h: Permutation) -> int:
    if xi == "trivial":
        return 1
    if xi == "sign":
        return sign(h)
    raise ValueError(f"unknown one-dimensional character {xi!r}")


def induced_multiplicity(m: int, l: int, nu: Partition, xi: str = "trivial") -> int:
    """Multiplicity of chi_nu in Ind_{S_m^l}^{S_ml} xi, by Frobenius reciprocity."""
    if m * l > INDUCED_GUARD:
        raise BudgetError(f"induced_multiplicity limited to m*l <= {INDUCED_GUARD}", m * l)
    if sum(nu) != m * l:
        raise ValueError("nu must be a partition of m*l")
    types = enumerate_partitions(m)
    total = 0
    # sum over h in S_m^l grouped by the cycle type of each block
    for combo in itertools.product(types, repeat=l):
        count = math.prod(class_size(t) for t in combo)
        joint = tuple(sorted(itertools.chain.from_iterable(combo), reverse=True))
        xi_h = 1
        if xi == "sign":
            xi_h = (-1) ** sum(m - len(t) for t in combo)
        elif xi != "trivial":
            raise ValueError(f"unknown one-dimensional character {xi!r}")
        total += count * xi_h * character_value(nu, joint)
    q, r = divmod(total, math.factorial(m) ** l)
    assert r == 0, "multiplicity must be an integer"
    return q


def coset_average(H: YoungSubgroup, xi: str, lam: Partition, g: Permutation) -> Fraction:
    """(1/|H|) sum_h xi(h)^-1 chi_lam(g h), by explicit summation over H."""
    if H.n > COSET_GUARD:
        raise BudgetError(f"coset_average limited to n <= {COSET_GUARD}", H.n)
    total = 0
    for h in H.elements():
        total += xi_value(xi, h) * permutation_character(lam, compose(g, h))
    return Fraction(total, H.order)


def left_coset_average(H: YoungSubgroup, lam: Partition, g: Permutation) -> Fraction:
    """(1/|H|) sum_h chi_lam(h g)."""
    if H.n > COSET_GUARD:
        raise BudgetError(f"coset average limited to n <= {COSET_GUARD}", H.n)
    total = sum(permutation_character(lam, compose(h, g)) for h in H.elements())
    return Fraction(total, H.order)


def double_coset_size(H: YoungSubgroup, g: Permutation) -> int:
    """|H g H| = |H|^2 / |H ∩ g H g^-1|."""
    # h in gHg^-1  <=>  g^-1 h g in H
    g_inv = inverse(g)
    stab = sum(1 for h in H.elements() if H.contains(compose(g_inv, compose(h, g))))
    return H.order * H.order // stab


def coset_representatives(H: YoungSubgroup) -> list[Permutation]:
    """One representative g per left coset gH of H in S_n."""
    seen: set[Permutation] = set()
    reps = []
    elems = list(H.elements())
    for g in all_permutations(H.n):
        if g in seen:
            continue
        reps.append(g)
        seen.update(compose(g, h) for h in elems)
    return reps
