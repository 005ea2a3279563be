"""Partitions, permutations, cycle types and related counting functions.

Partitions are plain tuples of positive integers in non-increasing order and
permutations are tuples in one-line notation on ``0..n-1``.  Composition
follows the usual right-to-left rule: ``compose(p, q)[i] == p[q[i]]``.
"""
from __future__ import annotations

import itertools
import math
from collections import Counter
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

from .errors import BudgetError

Partition = tuple[int, ...]
Permutation = tuple[int, ...]

LR_SIZE_GUARD = 20


# --------------------------------------------------------------------------
# partitions
# --------------------------------------------------------------------------

def as_partition(parts: Iterable[int]) -> Partition:
    """Validate ``parts`` and return it as a partition tuple."""
    lam = tuple(int(p) for p in parts)
    if any(p <= 0 for p in lam):
        raise ValueError(f"partition parts must be positive: {lam}")
    if any(lam[i] < lam[i + 1] for i in range(len(lam) - 1)):
        raise ValueError(f"partition parts must be non-increasing: {lam}")
    return lam


def enumerate_partitions(n: int, max_length: int | None = None) -> list[Partition]:
    """All partitions of ``n`` in reverse-lexicographic order.

    With ``max_length`` only partitions with at most that many parts are kept.
    """
    if n < 1:
        raise ValueError("n must be positive")
    out = _partitions(n, n)
    if max_length is not None:
        out = [p for p in out if len(p) <= max_length]
    return out


@lru_cache(maxsize=None)
def _partitions_cached(n: int, largest: int) -> tuple[Partition, ...]:
    if n == 0:
        return ((),)
    result = []
    for first in range(min(n, largest), 0, -1):
        for rest in _partitions_cached(n - first, first):
            result.append((first,) + rest)
    return tuple(result)


def _partitions(n: int, largest: int) -> list[Partition]:
    return list(_partitions_cached(n, largest))


def conjugate(lam: Partition) -> Partition:
    if not lam:
        return ()
    return tuple(sum(1 for p in lam if p > j) for j in range(lam[0]))


def cells(lam: Partition) -> Iterator[tuple[int, int]]:
    """Cells ``(i, j)`` of the Young diagram, 1-based row and column."""
    for i, row in enumerate(lam, start=1):
        for j in range(1, row + 1):
            yield i, j


def hook_length(lam: Partition, i: int, j: int) -> int:
    arm = lam[i - 1] - j
    leg = sum(1 for r in lam[i:] if r >= j)
    return arm + leg + 1


def hook_product(lam: Partition) -> int:
    return math.prod(hook_length(lam, i, j) for i, j in cells(lam))


def dimension_sn(lam: Partition) -> int:
    """Degree of the irreducible character of S_n labelled by ``lam``."""
    return math.factorial(sum(lam)) // hook_product(lam)


# --------------------------------------------------------------------------
# cycle types
# --------------------------------------------------------------------------

def multiplicities(mu: Partition) -> tuple[int, ...]:
    """Multiplicity vector ``(a_1, ..., a_n)`` with ``mu = (1^a_1 ... n^a_n)``."""
    n = sum(mu)
    counts = Counter(mu)
    return tuple(counts.get(j, 0) for j in range(1, n + 1))


def from_multiplicities(a: Sequence[int]) -> Partition:
    parts: list[int] = []
    for j in range(len(a), 0, -1):
        parts.extend([j] * a[j - 1])
    return tuple(parts)


def z_value(mu: Partition) -> int:
    """Centralizer order ``z_mu = prod_j a_j! j^a_j``."""
    return math.prod(math.factorial(a) * j**a for j, a in enumerate(multiplicities(mu), start=1))


def class_size(mu: Partition) -> int:
    return math.factorial(sum(mu)) // z_value(mu)


# --------------------------------------------------------------------------
# permutations
# --------------------------------------------------------------------------

def identity(n: int) -> Permutation:
    return tuple(range(n))


def compose(p: Sequence[int], q: Sequence[int]) -> Permutation:
    """``p`` after ``q``."""
    return tuple(p[i] for i in q)


def inverse(p: Sequence[int]) -> Permutation:
    inv = [0] * len(p)
    for i, pi in enumerate(p):
        inv[pi] = i
    return tuple(inv)


def cycles(p: Sequence[int]) -> list[tuple[int, ...]]:
    seen = [False] * len(p)
    out = []
    for start in range(len(p)):
        if seen[start]:
            continue
        cyc = []
        i = start
        while not seen[i]:
            seen[i] = True
            cyc.append(i)
            i = p[i]
        out.append(tuple(cyc))
    return out


def cycle_type(p: Sequence[int]) -> Partition:
    seen = [False] * len(p)
    lengths = []
    for start in range(len(p)):
        if seen[start]:
            continue
        length = 0
        i = start
        while not seen[i]:
            seen[i] = True
            i = p[i]
            length += 1
        lengths.append(length)
    lengths.sort(reverse=True)
    return tuple(lengths)


def num_cycles(p: Sequence[int]) -> int:
    return len(cycle_type(p))


def sign(p: Sequence[int]) -> int:
    return -1 if (len(p) - num_cycles(p)) % 2 else 1


def all_permutations(n: int) -> Iterator[Permutation]:
    return itertools.permutations(range(n))


def permutation_of_type(mu: Partition) -> Permutation:
    """A canonical permutation with cycle type ``mu`` (consecutive cycles)."""
    n = sum(mu)
    p = list(range(n))
    start = 0
    for length in mu:
        for k in range(length):
            p[start + k] = start + (k + 1) % length
        start += length
    return tuple(p)


def is_permutation(p: Sequence[int]) -> bool:
    return sorted(p) == list(range(len(p)))


# --------------------------------------------------------------------------
# Stirling numbers
# --------------------------------------------------------------------------

@lru_cache(maxsize=None)
def stirling_unsigned(m: int, k: int) -> int:
    """Number of permutations of ``m`` letters with exactly ``k`` cycles."""
    if m < 0 or k < 0:
        raise ValueError("arguments must be non-negative")
    if m == 0:
        return 1 if k == 0 else 0
    if k == 0 or k > m:
        return 0
    return stirling_unsigned(m - 1, k - 1) + (m - 1) * stirling_unsigned(m - 1, k)


# --------------------------------------------------------------------------
# Littlewood-Richardson by strict expansions
# --------------------------------------------------------------------------

def _horizontal_strips(shape: Partition, size: int, bound: Partition | None) -> Iterator[Partition]:
    """Shapes obtained by adding ``size`` boxes to ``shape``, no two in one column."""
    rows = list(shape) + [0]
    limit_rows = len(rows)
    if bound is not None:
        limit_rows = min(limit_rows, len(bound))

    def rec(i: int, remaining: int, acc: list[int]) -> Iterator[Partition]:
        if i == limit_rows:
            if remaining == 0:
                new = acc + rows[i:]
                yield tuple(r for r in new if r > 0)
            return
        # a new box in row i may sit in any column not yet occupied in row i-1
        cap = remaining if i == 0 else min(remaining, rows[i - 1] - rows[i])
        if bound is not None:
            cap = min(cap, bound[i] - rows[i])
        for add in range(cap, -1, -1):
            yield from rec(i + 1, remaining - add, acc + [rows[i] + add])

    yield from rec(0, size, [])


def strict_expansions(lam: Partition, mu: Partition, target: Partition | None = None):
    """Yield ``(shape, labels)`` for every strict ``mu``-expansion of ``lam``.

    ``labels`` maps each added cell ``(i, j)`` to the index (1-based) of the
    part of ``mu`` that added it.  When ``target`` is given, only expansions
    contained in it are explored.
    """

    def rec(shape: Partition, k: int, labels: dict[tuple[int, int], int]):
        if k == len(mu):
            if target is None or shape == target:
                if _is_strict(labels, len(mu)):
                    yield shape, dict(labels)
            return
        for new in _horizontal_strips(shape, mu[k], target):
            added = {}
            for i, row in enumerate(new, start=1):
                old = shape[i - 1] if i <= len(shape) else 0
                for j in range(old + 1, row + 1):
                    added[(i, j)] = k + 1
            labels.update(added)
            yield from rec(new, k + 1, labels)
            for cell in added:
                del labels[cell]

    yield from rec(lam, 0, {})


def _is_strict(labels: dict[tuple[int, int], int], n_labels: int) -> bool:
    # reading order: rows top to bottom, each row right to left
    order = sorted(labels, key=lambda c: (c[0], -c[1]))
    before = [0] * (n_labels + 2)
    for cell in order:
        # counts of labels strictly before this cell
        if any(before[p] < before[p + 1] for p in range(1, n_labels)):
            return False
        before[labels[cell]] += 1
    return True


def lr_coefficient(lam: Partition, mu: Partition, nu: Partition) -> int:
    """Littlewood-Richardson coefficient as a count of strict expansions."""
    lam, mu, nu = tuple(lam), tuple(mu), tuple(nu)
    if sum(nu) != sum(lam) + sum(mu):
        return 0
    if sum(lam) + sum(mu) > LR_SIZE_GUARD:
        raise BudgetError(f"lr_coefficient limited to |lam|+|mu| <= {LR_SIZE_GUARD}", sum(nu))
    if len(nu) < len(lam) or any(l > n for l, n in zip(lam, nu)):
        return 0
    return sum(1 for _ in strict_expansions(lam, mu, nu))
