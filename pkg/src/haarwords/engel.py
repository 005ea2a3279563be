"""Coordinate pipeline for ``E tr wedge^m [[X,Y],Y]``, independent of the engine.

Expanding ``tr wedge^m w`` over index vectors ``a`` (strictly increasing),
``b, c, d', A, B, C, D`` in ``[d]^m`` and applying the entry formula to ``X``
and ``Y`` separately gives a sum over the set ``Z`` of tuples
``(a, ..., D, s1, s2, t1, t2)`` with ``s_i, t_i`` in ``S_2m`` and

    s1(A,B) = (a,b),   t1(c,d') = (D,C),   s2(a,d') = (A,D),   t2(B,C) = (b,c),

where ``s(v) = u`` means ``u_k = v_{s(k)}``.  Each tuple contributes

    sum_{pi in S_m} sgn(pi) Wg(s1^-1 t1) Wg(Y-factor),

and the Y-factor absorbs the permutation ``pi`` of ``a`` coming from the
wedge expansion.  Two placements of ``pi`` are offered: ``"derived"``
(``s2^-1 (pi x Id) t2``, what the substitution gives under the composition
convention used here) and ``"left"`` (``(pi x Id) s2^-1 t2``).
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator

from .combinatorics import compose, cycle_type, inverse, sign
from .errors import BudgetError
from .weingarten import weingarten_table

ENGEL_BUDGET = 10**8
CONVENTIONS = ("derived", "left")


@dataclass(frozen=True)
class EngelConfiguration:
    a: tuple[int, ...]
    b: tuple[int, ...]
    c: tuple[int, ...]
    dd: tuple[int, ...]  # the vector d'
    A: tuple[int, ...]
    B: tuple[int, ...]
    C: tuple[int, ...]
    D: tuple[int, ...]
    s1: tuple[int, ...]
    s2: tuple[int, ...]
    t1: tuple[int, ...]
    t2: tuple[int, ...]

    def satisfies_constraints(self) -> bool:
        return (
            act(self.s1, self.A + self.B) == self.a + self.b
            and act(self.t1, self.c + self.dd) == self.D + self.C
            and act(self.s2, self.a + self.dd) == self.A + self.D
            and act(self.t2, self.B + self.C) == self.b + self.c
        )


def act(s, v) -> tuple:
    """``s(v)`` with ``s(v)_k = v_{s(k)}``."""
    return tuple(v[i] for i in s)


@lru_cache(maxsize=None)
def matchings(src: tuple, dst: tuple) -> tuple[tuple[int, ...], ...]:
    """All permutations ``s`` with ``act(s, src) == dst``."""
    n = len(src)
    slots: dict = {}
    for j, v in enumerate(src):
        slots.setdefault(v, []).append(j)
    if sorted(src) != sorted(dst):
        return ()
    out = []

    def rec(k: int, used: list[bool], acc: list[int]):
        if k == n:
            out.append(tuple(acc))
            return
        for j in slots[dst[k]]:
            if not used[j]:
                used[j] = True
                acc.append(j)
                rec(k + 1, used, acc)
                acc.pop()
                used[j] = False

    rec(0, [False] * n, [])
    return tuple(out)


def configuration_count(m: int, d: int) -> int:
    """Number of (a, b, c, d', s2, t2) choices the enumeration visits."""
    return math.comb(d, m) * d ** (3 * m) * math.factorial(2 * m) ** 2


def _check(m: int, d: int, budget: int) -> None:
    if m < 1 or d < 1:
        raise ValueError("m and d must be positive")
    if m > d:
        raise ValueError("need m <= d")
    work = configuration_count(m, d) * 2 * math.factorial(2 * m)
    if work > budget:
        raise BudgetError(f"Engel enumeration at m={m}, d={d} needs ~{work} steps, budget is {budget}", work)


def _free_data(m: int, d: int) -> Iterator[tuple]:
    perms = list(itertools.permutations(range(2 * m)))
    for a in itertools.combinations(range(1, d + 1), m):
        for b, c, dd in itertools.product(itertools.product(range(1, d + 1), repeat=m), repeat=3):
            for s2 in perms:
                AD = act(s2, a + dd)
                A, D = AD[:m], AD[m:]
                for t2 in perms:
                    BC = act(inverse(t2), b + c)
                    B, C = BC[:m], BC[m:]
                    yield a, b, c, dd, A, B, C, D, s2, t2


def enumerate_Z(m: int, d: int, budget: int = ENGEL_BUDGET) -> Iterator[EngelConfiguration]:
    """Every element of ``Z`` exactly once."""
    _check(m, d, budget)
    for a, b, c, dd, A, B, C, D, s2, t2 in _free_data(m, d):
        S1 = matchings(A + B, a + b)
        if not S1:
            continue
        T1 = matchings(c + dd, D + C)
        for s1 in S1:
            for t1 in T1:
                yield EngelConfiguration(a, b, c, dd, A, B, C, D, s1, s2, t1, t2)


def count_Z(m: int, d: int, budget: int = ENGEL_BUDGET) -> int:
    _check(m, d, budget)
    total = 0
    for a, b, c, dd, A, B, C, D, s2, t2 in _free_data(m, d):
        n1 = len(matchings(A + B, a + b))
        if n1:
            total += n1 * len(matchings(c + dd, D + C))
    return total


def z_bound(m: int, d: int) -> int:
    """``m!^7 C(2m,m)^4 C(d,m) C(d+m-1,m)^3``."""
    return (
        math.factorial(m) ** 7
        * math.comb(2 * m, m) ** 4
        * math.comb(d, m)
        * math.comb(d + m - 1, m) ** 3
    )


def y_factor(s2, t2, pi, m: int, convention: str = "derived") -> tuple[int, ...]:
    """Permutation whose Weingarten value carries the Y integral for a given ``pi``."""
    Pi = tuple(pi) + tuple(range(m, 2 * m))
    if convention == "derived":
        return compose(inverse(s2), compose(Pi, t2))
    if convention == "left":
        return compose(Pi, compose(inverse(s2), t2))
    raise ValueError(f"unknown convention {convention!r}")


def summand(z: EngelConfiguration, d: int, convention: str = "derived") -> Fraction:
    """The ``pi``-summed weight of a single element of ``Z``."""
    m = len(z.a)
    wg = weingarten_table(2 * m, d).values
    x_part = wg[cycle_type(compose(inverse(z.s1), z.t1))]
    y_part = sum(
        (sign(pi) * wg[cycle_type(y_factor(z.s2, z.t2, pi, m, convention))] for pi in itertools.permutations(range(m))),
        Fraction(0),
    )
    return x_part * y_part


def engel_direct(m: int, d: int, convention: str = "derived", budget: int = ENGEL_BUDGET) -> Fraction:
    """Exact ``E tr wedge^m [[X,Y],Y]`` by summing over ``Z``.

    The sum over ``(s1, t1)`` depends only on the vectors and the sum over
    ``pi`` only on ``(s2, t2)``, so both are cached and multiplied.
    """
    _check(m, d, budget)
    wg = weingarten_table(2 * m, d).values
    y_cache: dict = {}
    x_cache: dict = {}
    pis = list(itertools.permutations(range(m)))
    total = Fraction(0)
    for a, b, c, dd, A, B, C, D, s2, t2 in _free_data(m, d):
        key = (A + B, a + b, c + dd, D + C)
        x_part = x_cache.get(key)
        if x_part is None:
            S1 = matchings(A + B, a + b)
            T1 = matchings(c + dd, D + C) if S1 else ()
            x_part = sum((wg[cycle_type(compose(inverse(s1), t1))] for s1 in S1 for t1 in T1), Fraction(0))
            x_cache[key] = x_part
        if not x_part:
            continue
        y_part = y_cache.get((s2, t2))
        if y_part is None:
            y_part = sum(
                (sign(pi) * wg[cycle_type(y_factor(s2, t2, pi, m, convention))] for pi in pis),
                Fraction(0),
            )
            y_cache[(s2, t2)] = y_part
        total += x_part * y_part
    return total


def engel_cm(m: int, d: int, **kw) -> Fraction:
    """``E c_m([[X,Y],Y]) = (-1)^m E tr wedge^m``."""
    return (-1) ** m * engel_direct(m, d, **kw)


# --------------------------------------------------------------------------
# the S_m^7 action on Z
# --------------------------------------------------------------------------

def _block(p, q) -> tuple[int, ...]:
    m = len(p)
    return tuple(p) + tuple(m + x for x in q)


def act_on_Z(g: dict[str, tuple[int, ...]], z: EngelConfiguration) -> EngelConfiguration:
    """Action of ``(pi_b, pi_c, pi_d, pi_A, pi_B, pi_C, pi_D)``; ``a`` is fixed."""
    m = len(z.a)
    e = tuple(range(m))
    pb, pc, pd, pA, pB, pC, pD = (g[k] for k in ("b", "c", "d", "A", "B", "C", "D"))
    inv = inverse
    return EngelConfiguration(
        a=z.a,
        b=act(pb, z.b),
        c=act(pc, z.c),
        dd=act(pd, z.dd),
        A=act(pA, z.A),
        B=act(pB, z.B),
        C=act(pC, z.C),
        D=act(pD, z.D),
        s1=compose(_block(inv(pA), inv(pB)), compose(z.s1, _block(e, pb))),
        t1=compose(_block(inv(pc), inv(pd)), compose(z.t1, _block(pD, pC))),
        s2=compose(_block(e, inv(pd)), compose(z.s2, _block(pA, pD))),
        t2=compose(_block(inv(pB), inv(pC)), compose(z.t2, _block(pb, pc))),
    )


def group_elements(m: int) -> Iterator[dict[str, tuple[int, ...]]]:
    perms = list(itertools.permutations(range(m)))
    for combo in itertools.product(perms, repeat=7):
        yield dict(zip(("b", "c", "d", "A", "B", "C", "D"), combo))


def orbits(m: int, d: int, budget: int = ENGEL_BUDGET) -> list[list[EngelConfiguration]]:
    """Partition ``Z`` into ``S_m^7`` orbits."""
    remaining = set(enumerate_Z(m, d, budget))
    group = list(group_elements(m))
    out = []
    while remaining:
        z = next(iter(remaining))
        orbit = {act_on_Z(g, z) for g in group}
        remaining -= orbit
        out.append(sorted(orbit, key=_sort_key))
    return out


def _sort_key(z: EngelConfiguration):
    return (z.a, z.b, z.c, z.dd, z.A, z.B, z.C, z.D, z.s1, z.s2, z.t1, z.t2)
