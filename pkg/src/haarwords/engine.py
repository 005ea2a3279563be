"""Exact Haar-unitary expectations of products of matrix entries and of traces.

Trace products
--------------
Let the traces be ``tr w_1 ... tr w_K``.  Their letters are laid out on a
position set ``Omega``; position ``gamma`` carries the letter ``w(gamma)``
and ``T`` sends each position to the next one in the same trace (cyclically).
Expanding every trace over index functions ``F: Omega -> [d]`` gives

    prod_k tr w_k = sum_F prod_gamma (X_{w(gamma)})_{F(gamma), F(T gamma)}.

With ``A_i`` / ``B_i`` the positions of ``x_i`` / ``x_i^-1``, the coordinate
free Weingarten formula sums ``Wg~(Sigma^2) = prod_i Wg(Sigma^2|A_i)`` over
all ``Sigma`` in ``H_Phi`` (``Sigma`` maps ``A_i`` onto ``B_i`` and back)
subject to ``F o T = F o Sigma``.  Substituting ``x = T gamma`` the constraint
reads ``F(x) = F(Sigma T^-1 x)``, so the admissible ``F`` are exactly the
functions constant on the cycles of ``Sigma T^-1`` and there are
``d^{c(Sigma T^-1)}`` of them.  Hence

    E prod_k tr w_k = sum_{Sigma in H_Phi} Wg~(Sigma^2) d^{c(Sigma T^-1)}.

``method="direct"`` enumerates this sum literally, one pair of bijections
``alpha_i: A_i -> B_i``, ``beta_i: B_i -> A_i`` per generator.

``method="reduced"`` (default) sums out ``beta_r`` of one generator in closed
form.  With everything else fixed, the cycles of ``P = Sigma T^-1`` that meet
``Y = T(B_r)`` are the cycles of the first-return map on ``Y``, which is
conjugate to ``beta_r o delta`` for an explicit bijection
``delta: A_r -> B_r``.  Writing ``pi = beta_r alpha_r`` and
``g = alpha_r^-1 delta``,

    sum_{beta_r} Wg(beta_r alpha_r) d^{c(beta_r delta)} = sum_pi Wg(pi) G(pi g) = (Wg * G)(g),

where ``G(s) = d^{#cycles(s)}`` and ``Wg * G`` is the central projector onto
``C_d[S_n]`` (the delta at the identity when ``d >= n``).  This cuts the term
count by a factor ``n_r!``.
"""
from __future__ import annotations

import itertools
import math
import os
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .combinatorics import cycle_type, inverse
from .errors import BudgetError
from .weingarten import projector_table, weingarten_table
from .words import Word, is_cyclically_reduced

DEFAULT_BUDGET = 10**8
ENTRY_GUARD = 8


@dataclass(frozen=True)
class TraceProductProblem:
    """Position-set description of ``E prod_k tr w_k(X_1, ..., X_r)``."""

    words: tuple[Word, ...]
    d: int
    positions: tuple[tuple[int, int], ...]  # (trace index, letter index)
    letters: tuple[int, ...]
    successor: tuple[int, ...]  # T
    A: dict[int, tuple[int, ...]] = field(repr=False)
    B: dict[int, tuple[int, ...]] = field(repr=False)

    @property
    def size(self) -> int:
        return len(self.positions)

    @property
    def generators(self) -> list[int]:
        return sorted(set(self.A) | set(self.B))

    @property
    def balanced(self) -> bool:
        return all(len(self.A.get(i, ())) == len(self.B.get(i, ())) for i in self.generators)

    def block_sizes(self) -> dict[int, int]:
        return {i: len(self.A.get(i, ())) for i in self.generators}

    def term_count(self, method: str = "reduced") -> int:
        sizes = [math.factorial(n) for n in self.block_sizes().values()]
        if not sizes:
            return 1
        if method == "direct":
            return math.prod(s * s for s in sizes)
        return math.prod(sizes) ** 2 // max(sizes)


def build_problem(words: Iterable[Sequence[int]], d: int) -> TraceProductProblem:
    words = tuple(Word(w) for w in words)
    if d < 1:
        raise ValueError("d must be positive")
    positions: list[tuple[int, int]] = []
    letters: list[int] = []
    successor: list[int] = []
    for k, w in enumerate(words):
        if not w:
            raise ValueError(f"trace {k} has the empty word")
        if not is_cyclically_reduced(w):
            raise ValueError(f"word {w} is not cyclically reduced")
        start = len(positions)
        for u, a in enumerate(w):
            positions.append((k, u))
            letters.append(a)
            successor.append(start + (u + 1) % len(w))
    A: dict[int, list[int]] = {}
    B: dict[int, list[int]] = {}
    for g, a in enumerate(letters):
        (A if a > 0 else B).setdefault(abs(a), []).append(g)
    for i in set(A) | set(B):
        A.setdefault(i, [])
        B.setdefault(i, [])
    return TraceProductProblem(
        words=words,
        d=d,
        positions=tuple(positions),
        letters=tuple(letters),
        successor=tuple(successor),
        A={i: tuple(v) for i, v in sorted(A.items())},
        B={i: tuple(v) for i, v in sorted(B.items())},
    )


@dataclass
class EngineResult:
    value: Fraction
    terms: int
    elapsed_ms: float


def expected_trace_product(
    problem: TraceProductProblem,
    budget: int = DEFAULT_BUDGET,
    method: str = "reduced",
    workers: int | None = None,
) -> Fraction:
    """Exact ``E prod_k tr w_k`` over independent Haar unitaries in U(d)."""
    return run_trace_product(problem, budget, method, workers).value


def run_trace_product(
    problem: TraceProductProblem,
    budget: int = DEFAULT_BUDGET,
    method: str = "reduced",
    workers: int | None = None,
) -> EngineResult:
    t0 = time.perf_counter()
    if method not in ("reduced", "direct"):
        raise ValueError(f"unknown method {method!r}")
    if not problem.balanced:
        return EngineResult(Fraction(0), 0, (time.perf_counter() - t0) * 1e3)
    terms = problem.term_count(method)
    if terms > budget:
        raise BudgetError(
            f"trace product needs {terms} terms, budget is {budget}", required=terms
        )
    workers = workers or default_workers()
    gens = problem.generators
    outer = gens[0]
    n_outer = math.factorial(len(problem.A[outer]))
    chunks = min(workers, n_outer) if terms >= 200_000 else 1
    if chunks > 1:
        with ProcessPoolExecutor(max_workers=chunks) as pool:
            parts = list(pool.map(_sum_chunk, [(problem, method, c, chunks) for c in range(chunks)]))
    else:
        parts = [_sum_chunk((problem, method, 0, 1))]
    counts: Counter = Counter()
    for part in parts:
        counts.update(part)
    value = _evaluate(problem, method, counts)
    return EngineResult(value, terms, (time.perf_counter() - t0) * 1e3)


def default_workers() -> int:
    env = os.environ.get("HAARWORDS_THREADS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def _evaluate(problem: TraceProductProblem, method: str, counts: Counter) -> Fraction:
    d = problem.d
    sizes = problem.block_sizes()
    gens = problem.generators
    wg = {i: weingarten_table(n, d).values for i, n in sizes.items() if n > 0}
    if method == "direct":
        others = gens
        last = None
    else:
        last = _eliminated(problem)
        others = [i for i in gens if i != last]
        proj = projector_table(sizes[last], d) if sizes[last] > 0 else {(): Fraction(1)}
    total = Fraction(0)
    for key, mult in counts.items():
        *types, c, gtype = key
        term = Fraction(mult * d**c)
        for i, t in zip(others, types):
            if sizes[i]:
                term *= wg[i][t]
        if last is not None:
            term *= proj[gtype]
        total += term
    return total


def _eliminated(problem: TraceProductProblem) -> int:
    sizes = problem.block_sizes()
    return max(problem.generators, key=lambda i: (sizes[i], -i))


def _sum_chunk(args) -> Counter:
    problem, method, chunk, n_chunks = args
    if method == "direct":
        return _direct_counts(problem, chunk, n_chunks)
    return _reduced_counts(problem, chunk, n_chunks)


def _perm_choices(n: int) -> list[tuple[int, ...]]:
    return list(itertools.permutations(range(n)))


def _direct_counts(problem: TraceProductProblem, chunk: int, n_chunks: int) -> Counter:
    """Tally terms of the literal sum keyed by (Wg cycle types..., #cycles, None)."""
    size = problem.size
    Tinv = inverse(problem.successor)
    gens = problem.generators
    per_gen = []
    for i in gens:
        A, B = problem.A[i], problem.B[i]
        perms = _perm_choices(len(A))
        per_gen.append((A, B, perms))
    counts: Counter = Counter()
    sigma = [0] * size

    def rec(level: int, types: list):
        if level == len(gens):
            c = _count_cycles(sigma, Tinv, size)
            counts[tuple(types) + (c, None)] += 1
            return
        A, B, perms = per_gen[level]
        alphas = perms
        if level == 0 and n_chunks > 1:
            alphas = perms[chunk::n_chunks]
        for pa in alphas:
            for k, a in enumerate(A):
                sigma[a] = B[pa[k]]
            for pb in perms:
                for j, b in enumerate(B):
                    sigma[b] = A[pb[j]]
                types.append(cycle_type([pb[x] for x in pa]))
                rec(level + 1, types)
                types.pop()

    rec(0, [])
    return counts


def _count_cycles(sigma: list[int], Tinv: Sequence[int], size: int) -> int:
    seen = [False] * size
    c = 0
    for s in range(size):
        if seen[s]:
            continue
        c += 1
        x = s
        while not seen[x]:
            seen[x] = True
            x = sigma[Tinv[x]]
    return c


def _reduced_counts(problem: TraceProductProblem, chunk: int, n_chunks: int) -> Counter:
    """Tally terms with beta of the largest block summed out in closed form.

    Keys are (Wg cycle types of the other generators..., #free cycles, type of g).
    """
    size = problem.size
    T = problem.successor
    Tinv = inverse(T)
    gens = problem.generators
    r = _eliminated(problem)
    others = [i for i in gens if i != r]
    Ar, Br = problem.A[r], problem.B[r]
    n_r = len(Ar)
    in_Y = [False] * size
    for b in Br:
        in_Y[T[b]] = True
    b_index = {b: j for j, b in enumerate(Br)}
    perms_r = _perm_choices(n_r)

    # enumeration: alpha for every generator, beta for the others
    levels = []
    for i in others:
        levels.append((problem.A[i], problem.B[i], _perm_choices(len(problem.A[i]))))

    counts: Counter = Counter()
    sigma = [-1] * size
    seen = [False] * size

    def finish(types: list, pa_r: tuple[int, ...]):
        # P(x) = sigma[Tinv[x]] is known for x outside Y
        for x in range(size):
            seen[x] = False
        jdelta = [0] * n_r
        for k, a in enumerate(Ar):
            x = a
            while not in_Y[x]:
                seen[x] = True
                x = sigma[Tinv[x]]
            seen[x] = True
            jdelta[k] = b_index[Tinv[x]]
        free = 0
        for s in range(size):
            if seen[s]:
                continue
            free += 1
            x = s
            while not seen[x]:
                seen[x] = True
                x = sigma[Tinv[x]]
        inv_pa = inverse(pa_r)
        g = [inv_pa[j] for j in jdelta]
        counts[tuple(types) + (free, cycle_type(g))] += 1

    def rec(level: int, types: list):
        if level == len(levels):
            alphas = perms_r
            if n_chunks > 1 and not levels:
                alphas = perms_r[chunk::n_chunks]
            for pa in alphas:
                for k, a in enumerate(Ar):
                    sigma[a] = Br[pa[k]]
                finish(types, pa)
            return
        A, B, perms = levels[level]
        alphas = perms
        if level == 0 and n_chunks > 1:
            alphas = perms[chunk::n_chunks]
        for pa in alphas:
            for k, a in enumerate(A):
                sigma[a] = B[pa[k]]
            for pb in perms:
                for j, b in enumerate(B):
                    sigma[b] = A[pb[j]]
                types.append(cycle_type([pb[x] for x in pa]))
                rec(level + 1, types)
                types.pop()

    rec(0, [])
    return counts


# --------------------------------------------------------------------------
# entrywise integration
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class EntrySpec:
    """A product of matrix entries ``(X_i)_{row,col}`` or their conjugates.

    Indices are 1-based in ``[d]``.
    """

    factors: tuple[tuple[int, int, int, bool], ...]  # (generator, row, col, conjugated)
    d: int

    def __post_init__(self):
        for gen, row, col, _ in self.factors:
            if not (1 <= row <= self.d and 1 <= col <= self.d):
                raise ValueError(f"index out of range for d={self.d}: {(gen, row, col)}")


def expected_entry_product(spec: EntrySpec) -> Fraction:
    """Exact expectation of a product of entries, generator by generator."""
    by_gen: dict[int, tuple[list, list]] = {}
    for gen, row, col, conj in spec.factors:
        plain, bar = by_gen.setdefault(gen, ([], []))
        (bar if conj else plain).append((row, col))
    value = Fraction(1)
    for gen, (plain, bar) in by_gen.items():
        if len(plain) != len(bar):
            return Fraction(0)
        n = len(plain)
        if n > ENTRY_GUARD:
            raise BudgetError(f"entry products limited to {ENTRY_GUARD} factors per generator", n)
        value *= _single_generator(plain, bar, spec.d)
        if value == 0:
            return value
    return value


def _single_generator(plain: list, bar: list, d: int) -> Fraction:
    n = len(plain)
    i = [p[0] for p in plain]
    j = [p[1] for p in plain]
    ip = [p[0] for p in bar]
    jp = [p[1] for p in bar]
    perms = list(itertools.permutations(range(n)))
    sigmas = [s for s in perms if all(i[k] == ip[s[k]] for k in range(n))]
    if not sigmas:
        return Fraction(0)
    taus = [t for t in perms if all(j[k] == jp[t[k]] for k in range(n))]
    wg = weingarten_table(n, d).values
    total = Fraction(0)
    for s in sigmas:
        s_inv = inverse(s)
        for t in taus:
            total += wg[cycle_type([s_inv[x] for x in t])]
    return total


def entrywise_trace_product(words: Iterable[Sequence[int]], d: int) -> Fraction:
    """Brute-force ``E prod tr w_k`` summing entry expectations over all indices.

    Independent of the position-set formula; costs ``d^|Omega|`` entry integrals.
    """
    words = [tuple(w) for w in words]
    letters = [a for w in words for a in w]
    succ = []
    start = 0
    for w in words:
        succ.extend(start + (u + 1) % len(w) for u in range(len(w)))
        start += len(w)
    total = Fraction(0)
    for F in itertools.product(range(1, d + 1), repeat=len(letters)):
        factors = []
        for g, a in enumerate(letters):
            row, col = F[g], F[succ[g]]
            if a > 0:
                factors.append((a, row, col, False))
            else:
                # (X^-1)_{row,col} = conj(X_{col,row})
                factors.append((-a, col, row, True))
        total += expected_entry_product(EntrySpec(tuple(factors), d))
    return total
