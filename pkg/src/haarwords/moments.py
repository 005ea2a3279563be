"""Fourier moments of word measures on U(d).

Every representation statistic is routed through the power-sum expansion

    rho_lam(A) = sum_{mu |- m} chi_lam(mu) / z_mu * tr_mu(A),   tr_mu(A) = prod_k tr(A^{mu_k}),

so ``E|rho_lam(w)|^2`` becomes a finite combination of trace products
``E(tr_mu(w) tr_mu'(w^-1))`` that the engine evaluates exactly.  The wedge
power ``wedge^m`` is ``lam = (1^m)`` and ``Sym^m`` is ``lam = (m)``.
"""
from __future__ import annotations

import itertools
import math
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .characters import character_value
from .combinatorics import (
    Partition,
    as_partition,
    enumerate_partitions,
    from_multiplicities,
    stirling_unsigned,
    z_value,
)
from .engine import DEFAULT_BUDGET, build_problem, expected_trace_product
from .errors import BudgetError
from .words import Word, cyclic_reduce, inverse_word, power, power_decomposition

EXPANSION_GUARD = 8


# --------------------------------------------------------------------------
# representation selectors
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class Rep:
    """``wedge:m``, ``sym:m`` or an explicit partition ``lambda:[...]``."""

    kind: str
    partition: Partition

    @property
    def m(self) -> int:
        return sum(self.partition)

    def __str__(self) -> str:
        if self.kind == "lambda":
            return "lambda:" + str(list(self.partition)).replace(" ", "")
        return f"{self.kind}:{self.m}"


def wedge(m: int) -> Rep:
    if m < 1:
        raise ValueError("m must be positive")
    return Rep("wedge", (1,) * m)


def sym(m: int) -> Rep:
    if m < 1:
        raise ValueError("m must be positive")
    return Rep("sym", (m,))


def irrep(lam: Iterable[int]) -> Rep:
    return Rep("lambda", as_partition(lam))


def parse_rep(text: str) -> Rep:
    kind, _, arg = text.partition(":")
    kind = kind.strip().lower()
    try:
        if kind == "wedge":
            return wedge(int(arg))
        if kind == "sym":
            return sym(int(arg))
        if kind == "lambda":
            parts = [int(p) for p in arg.strip().strip("[]()").split(",") if p.strip()]
            return irrep(parts)
    except ValueError as exc:
        raise ValueError(f"bad representation {text!r}: {exc}") from None
    raise ValueError(f"bad representation {text!r}; use wedge:M, sym:M or lambda:[...]")


def _as_rep(rep) -> Rep:
    if isinstance(rep, Rep):
        return rep
    if isinstance(rep, str):
        return parse_rep(rep)
    return irrep(rep)


@dataclass(frozen=True)
class MomentRequest:
    word: Word
    rep: Rep
    d: int
    order: int = 2
    method: str = "exact"

    def __post_init__(self):
        if self.order not in (1, 2):
            raise ValueError("order must be 1 or 2")
        if self.method not in ("exact", "mc", "both"):
            raise ValueError("method must be exact, mc or both")
        _check_rep(self.rep, self.d)


def _check_rep(rep: Rep, d: int) -> None:
    if d < 1:
        raise ValueError("d must be positive")
    if len(rep.partition) > d:
        raise ValueError(f"{rep} needs d >= {len(rep.partition)}, got d={d}")


# --------------------------------------------------------------------------
# power-sum expansion
# --------------------------------------------------------------------------

def power_sum_expansion(lam: Iterable[int]) -> list[tuple[Partition, Fraction]]:
    """Coefficients ``chi_lam(mu)/z_mu`` for every ``mu |- |lam|``."""
    lam = as_partition(lam)
    m = sum(lam)
    if m > EXPANSION_GUARD:
        raise BudgetError(f"power-sum expansion limited to m <= {EXPANSION_GUARD}", m)
    out = []
    for mu in enumerate_partitions(m):
        c = character_value(lam, mu)
        if c:
            out.append((mu, Fraction(c, z_value(mu))))
    return out


def _trace_words(w: Word, mu: Partition) -> list[Word]:
    return [power(w, k) for k in mu]


_tp_cache: dict = {}
_tp_lock = threading.Lock()


def trace_power_product(
    w: Word,
    mu: Partition,
    nu: Partition,
    d: int,
    budget: int = DEFAULT_BUDGET,
    workers: int | None = None,
) -> Fraction:
    """Exact ``E(tr_mu(w) tr_nu(w^-1))``; either partition may be empty."""
    w = cyclic_reduce(w)
    key = (tuple(w), d) + tuple(sorted((tuple(mu), tuple(nu))))
    with _tp_lock:
        if key in _tp_cache:
            return _tp_cache[key]
    if not w:
        value = Fraction(d) ** (len(mu) + len(nu))
    else:
        words = _trace_words(w, mu) + _trace_words(inverse_word(w), nu)
        if words:
            problem = build_problem(words, d)
            value = expected_trace_product(problem, budget=budget, workers=workers)
        else:
            value = Fraction(1)
    with _tp_lock:
        _tp_cache[key] = value
    return value


def second_moment(
    w: Sequence[int],
    rep,
    d: int,
    budget: int = DEFAULT_BUDGET,
    workers: int | None = None,
) -> Fraction:
    """Exact ``E|rho_lam(w(X_1, ..., X_r))|^2``; for ``wedge:m`` this is ``E|c_m(w)|^2``."""
    rep = _as_rep(rep)
    _check_rep(rep, d)
    w = Word(w)
    terms = power_sum_expansion(rep.partition)
    total = Fraction(0)
    for (mu, a), (nu, b) in itertools.product(terms, repeat=2):
        try:
            total += a * b * trace_power_product(w, mu, nu, d, budget, workers)
        except BudgetError as exc:
            raise BudgetError(
                f"pair mu={list(mu)}, mu'={list(nu)}: {exc}", exc.required
            ) from None
    return total


def first_moment(
    w: Sequence[int],
    rep,
    d: int,
    budget: int = DEFAULT_BUDGET,
    workers: int | None = None,
) -> Fraction:
    """Exact ``E rho_lam(w)``.  For ``wedge:m``, ``E c_m(w) = (-1)^m`` times this."""
    rep = _as_rep(rep)
    _check_rep(rep, d)
    w = Word(w)
    total = Fraction(0)
    for mu, a in power_sum_expansion(rep.partition):
        try:
            total += a * trace_power_product(w, mu, (), d, budget, workers)
        except BudgetError as exc:
            raise BudgetError(f"partition mu={list(mu)}: {exc}", exc.required) from None
    return total


def moment(req: MomentRequest, budget: int = DEFAULT_BUDGET, workers: int | None = None) -> Fraction:
    fn = first_moment if req.order == 1 else second_moment
    return fn(req.word, req.rep, req.d, budget, workers)


def ds_moment(
    a: Sequence[int],
    b: Sequence[int],
    l: int,
    d: int,
    budget: int = DEFAULT_BUDGET,
) -> Fraction:
    """``E prod_j tr(X^{jl})^{a_j} conj(tr(X^{jl}))^{b_j}`` for one Haar unitary X."""
    if l < 1:
        raise ValueError("l must be positive")
    mu = from_multiplicities(a)
    nu = from_multiplicities(b)
    return trace_power_product(power(Word([1]), l), mu, nu, d, budget)


def ds_closed_form(a: Sequence[int], b: Sequence[int], l: int = 1) -> int:
    """``delta_{a,b} prod_j (jl)^{a_j} a_j!``, the large-d value of :func:`ds_moment`."""
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    if a != b:
        return 0
    return math.prod((j * l) ** k * math.factorial(k) for j, k in enumerate(a, start=1))


def ds_threshold(a: Sequence[int], b: Sequence[int], l: int = 1) -> int:
    return l * sum(j * (x + y) for j, (x, y) in enumerate(itertools.zip_longest(a, b, fillvalue=0), start=1))


def power_word_value(l: int, lam: Iterable[int]) -> Fraction:
    """``(1/m!) sum_sigma l^{#cycles} chi_lam(sigma)^2``, the large-d value for ``w = x^l``."""
    lam = as_partition(lam)
    m = sum(lam)
    return sum(
        (Fraction(l ** len(mu) * character_value(lam, mu) ** 2, z_value(mu)) for mu in enumerate_partitions(m)),
        Fraction(0),
    )


def stirling_identity(m: int, l: int) -> tuple[Fraction, int]:
    """Both sides of ``(1/m!) sum_k [m,k] l^k = C(l+m-1, m)``."""
    lhs = Fraction(sum(stirling_unsigned(m, k) * l**k for k in range(m + 1)), math.factorial(m))
    return lhs, math.comb(l + m - 1, m)


@dataclass(frozen=True)
class PowerWordReport:
    l: int
    rep: Rep
    d: int
    exact: Fraction
    closed_form: Fraction
    hypothesis: bool  # d >= 2 m l

    @property
    def matches(self) -> bool:
        return self.exact == self.closed_form


def power_word_report(l: int, rep, d: int, budget: int = DEFAULT_BUDGET) -> PowerWordReport:
    """Exact moment of ``x^l`` next to its closed form, flagging any departure."""
    rep = _as_rep(rep)
    exact = second_moment(power(Word([1]), l), rep, d, budget)
    return PowerWordReport(l, rep, d, exact, power_word_value(l, rep.partition), d >= 2 * rep.m * l)


# --------------------------------------------------------------------------
# Gaussian limit polynomial
# --------------------------------------------------------------------------

Monomial = tuple[int, ...]  # exponents of Z_1..Z_m


@dataclass(frozen=True)
class LimitTerm:
    """``rational * prod_j sqrt(j p)^{a_j} * Z^a`` for the monomial ``a``."""

    monomial: Monomial
    rational: Fraction
    radicands: tuple[int, ...]  # multiset of j*p, one per Z_j factor

    def canonical(self) -> tuple[Fraction, int]:
        """``(q, s)`` with coefficient ``q * sqrt(s)`` and ``s`` squarefree."""
        return canonical_sqrt(self.rational, math.prod(self.radicands))

    def value(self) -> float:
        return float(self.rational) * math.prod(math.sqrt(r) for r in self.radicands)

    def format(self) -> str:
        q, s = self.canonical()
        root = f"sqrt({s})" if s != 1 else ""
        if abs(q) == 1 and root:
            coef = ("-" if q < 0 else "") + root
        else:
            coef = str(q) + (f"*{root}" if root else "")
        mono = "*".join(
            f"Z{j}" + (f"^{e}" if e > 1 else "") for j, e in enumerate(self.monomial, start=1) if e
        )
        if not mono:
            return coef
        if abs(q) == 1 and not root:
            return ("-" if q < 0 else "") + mono
        return f"{coef}*{mono}"


def canonical_sqrt(q: Fraction, radicand: int) -> tuple[Fraction, int]:
    """Write ``q * sqrt(radicand)`` as ``q' * sqrt(s)`` with ``s`` squarefree."""
    root, free = _split_square(radicand)
    return Fraction(q) * root, free


def _split_square(n: int) -> tuple[int, int]:
    root, free = 1, 1
    k = 2
    while k * k <= n:
        while n % (k * k) == 0:
            root *= k
            n //= k * k
        if n % k == 0:
            free *= k
            n //= k
        k += 1
    return root, free * n


@dataclass(frozen=True)
class LimitPolynomial:
    m: int
    p: int
    terms: tuple[LimitTerm, ...] = field(repr=False)

    def coefficient(self, monomial: Sequence[int]) -> tuple[Fraction, int]:
        monomial = tuple(monomial)
        for t in self.terms:
            if t.monomial == monomial:
                return t.canonical()
        return Fraction(0), 1

    def evaluate(self, Z: np.ndarray) -> np.ndarray:
        """Evaluate on samples ``Z`` of shape ``(..., m)``."""
        Z = np.asarray(Z)
        out = np.zeros(Z.shape[:-1], dtype=complex)
        for t in self.terms:
            mono = np.ones(Z.shape[:-1], dtype=complex)
            for j, e in enumerate(t.monomial):
                if e:
                    mono = mono * Z[..., j] ** e
            out = out + t.value() * mono
        return out

    def format(self) -> str:
        return " + ".join(t.format() for t in self.terms).replace("+ -", "- ")

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "p": self.p,
            "terms": [
                {
                    "monomial": list(t.monomial),
                    "rational": str(t.rational),
                    "radicands": list(t.radicands),
                    "coefficient": {"q": str(t.canonical()[0]), "sqrt": t.canonical()[1]},
                }
                for t in self.terms
            ],
        }


def limit_polynomial(m: int, p: int) -> LimitPolynomial:
    """Expand ``(1/m!) det M`` where ``M[i][j] = sqrt((i-j+1)p) Z_{i-j+1}`` for ``j <= i``
    and ``M[i][i+1] = i`` (1-based), by summing over permutations."""
    if not 1 <= m <= EXPANSION_GUARD:
        raise ValueError(f"m must be in 1..{EXPANSION_GUARD}")
    if p < 1:
        raise ValueError("p must be positive")
    acc: dict[Monomial, Fraction] = {}
    for perm in itertools.permutations(range(m)):
        coef = 1
        mono = [0] * m
        for i, j in enumerate(perm):
            if j <= i:
                mono[i - j] += 1
            elif j == i + 1:
                coef *= i + 1
            else:
                coef = 0
                break
        if coef == 0:
            continue
        inversions = sum(1 for a, b in itertools.combinations(perm, 2) if a > b)
        key = tuple(mono)
        acc[key] = acc.get(key, Fraction(0)) + (-1) ** inversions * coef
    nfact = math.factorial(m)
    terms = []
    # order by decreasing power of Z_1, matching the usual display
    for mono in sorted(acc, reverse=True):
        q = acc[mono] / nfact
        if q == 0:
            continue
        radicands = tuple(r for j, e in enumerate(mono, start=1) for r in [j * p] * e)
        terms.append(LimitTerm(mono, q, radicands))
    return LimitPolynomial(m, p, tuple(terms))


def primitivity(w: Sequence[int]) -> int:
    return power_decomposition(cyclic_reduce(w))[1]


def moment_term_count(w: Sequence[int], rep, d: int, order: int = 2) -> int:
    """Engine terms needed for a moment (without cache reuse), for reporting."""
    rep = _as_rep(rep)
    w = cyclic_reduce(Word(w))
    if not w:
        return 0
    terms = power_sum_expansion(rep.partition)
    pairs = itertools.product(terms, repeat=2) if order == 2 else ((t, ((), 0)) for t in terms)
    total = 0
    for (mu, _), (nu, _) in pairs:
        words = _trace_words(w, mu) + _trace_words(inverse_word(w), nu)
        problem = build_problem(words, d)
        if problem.balanced:
            total += problem.term_count()
    return total
