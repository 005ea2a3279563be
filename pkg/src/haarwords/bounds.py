"""Explicit bounds for word-map moments and the binomial/entropy inequalities.

Comparisons that involve irrational quantities are decided with interval
arithmetic at increasing precision; a verdict is returned only once the two
intervals separate.
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import Callable, Iterable

import mpmath
from mpmath import iv

MAX_PREC = 4096


class Undecided(ArithmeticError):
    """Raised when the intervals still overlap at the maximum precision."""


def decide_leq(lhs: Callable[[], object], rhs: Callable[[], object], start: int = 64) -> bool:
    """``lhs <= rhs`` for interval-valued thunks, refining precision until decidable.

    Exact equality cannot be separated, so callers pass strict-looking cases or
    rely on the exact path; at the precision cap this raises :class:`Undecided`.
    """
    saved = iv.prec
    prec = start
    try:
        while prec <= MAX_PREC:
            iv.prec = prec
            a, b = lhs(), rhs()
            if a.b <= b.a:
                return True
            if a.a > b.b:
                return False
            prec *= 2
    finally:
        iv.prec = saved
    raise Undecided("intervals did not separate")


def _iv(x):
    if isinstance(x, Fraction):
        return iv.mpf(x.numerator) / x.denominator
    return iv.mpf(x)


# --------------------------------------------------------------------------
# bound report
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class BoundReport:
    length: int
    m: int
    d: int
    wedge_bound: int  # (25 l)^{m l}
    wedge_applicable: bool  # d >= m l
    wedge_secondary_threshold: int  # (25 l)^l m
    wedge_secondary_applicable: bool
    binom_dm: int  # C(d, m), the secondary wedge bound
    sym_bound: int  # (16 l)^{m l}
    sym_applicable: bool
    sym_secondary_threshold: int  # (16 l)^l m
    sym_secondary_applicable: bool
    binom_sym: int  # C(d+m-1, m)
    engel_bound: int  # 2^{17 m}
    engel_applicable: bool  # d >= 2m
    epsilon: Fraction  # (1/72)(25 l)^{-2 l}
    epsilon_threshold: int  # (25 l)^{7 l}
    epsilon_applicable: bool
    absolute_exponent: Fraction  # 1 - epsilon, for E|c_m| <= C(d,m)^{1-eps}
    second_moment_exponent: Fraction  # 2(1 - epsilon)

    def to_json(self) -> dict:
        out = asdict(self)
        for k, v in out.items():
            if isinstance(v, Fraction):
                out[k] = str(v)
            elif isinstance(v, int) and not isinstance(v, bool):
                out[k] = str(v) if v.bit_length() > 53 else v
        return out

    def rows(self) -> list[tuple[str, str, str, bool]]:
        """(name, value, hypothesis, applicable) for tabular output."""
        return [
            ("wedge (25l)^(ml)", str(self.wedge_bound), f"d >= ml = {self.m * self.length}", self.wedge_applicable),
            ("wedge C(d,m)", str(self.binom_dm), f"d >= (25l)^l m = {self.wedge_secondary_threshold}", self.wedge_secondary_applicable),
            ("sym (16l)^(ml)", str(self.sym_bound), f"d >= ml = {self.m * self.length}", self.sym_applicable),
            ("sym C(d+m-1,m)", str(self.binom_sym), f"d >= (16l)^l m = {self.sym_secondary_threshold}", self.sym_secondary_applicable),
            ("engel 2^(17m)", str(self.engel_bound), f"d >= 2m = {2 * self.m}", self.engel_applicable),
            ("epsilon(w)", str(self.epsilon), f"d >= (25l)^(7l) = 10^{_log10(self.epsilon_threshold):.1f}", self.epsilon_applicable),
        ]


def _log10(n: int) -> float:
    return float(mpmath.log10(n))


def bound_report(length: int, m: int, d: int) -> BoundReport:
    if min(length, m, d) < 1:
        raise ValueError("length, m and d must be positive")
    l = length
    eps = Fraction(1, 72 * (25 * l) ** (2 * l))
    ws = (25 * l) ** l * m
    ss = (16 * l) ** l * m
    threshold = (25 * l) ** (7 * l)
    return BoundReport(
        length=l,
        m=m,
        d=d,
        wedge_bound=(25 * l) ** (m * l),
        wedge_applicable=d >= m * l and m <= d,
        wedge_secondary_threshold=ws,
        wedge_secondary_applicable=d >= ws,
        binom_dm=math.comb(d, m),
        sym_bound=(16 * l) ** (m * l),
        sym_applicable=d >= m * l,
        sym_secondary_threshold=ss,
        sym_secondary_applicable=d >= ss,
        binom_sym=math.comb(d + m - 1, m),
        engel_bound=2 ** (17 * m),
        engel_applicable=d >= 2 * m,
        epsilon=eps,
        epsilon_threshold=threshold,
        epsilon_applicable=d >= threshold,
        absolute_exponent=1 - eps,
        second_moment_exponent=2 * (1 - eps),
    )


# --------------------------------------------------------------------------
# entropy and binomial inequalities
# --------------------------------------------------------------------------

def _entropy_bits(x: Fraction):
    xv = _iv(x)
    return -xv * iv.log(xv) / iv.log(2) - (1 - xv) * iv.log(1 - xv) / iv.log(2)


@dataclass(frozen=True)
class EntropyCheck:
    delta: Fraction
    b: Fraction
    a: Fraction
    d: int
    hypotheses: bool
    holds: bool | None  # None when hypotheses fail


def lemma_hypotheses(delta: Fraction, b: Fraction, a: Fraction, d: int) -> bool:
    return (
        0 < delta <= Fraction(1, 2)
        and delta <= b <= Fraction(1, 2)
        and delta <= a <= b
        and d > 1 / delta**4
        and (b * d).denominator == 1
        and (a * d).denominator == 1
    )


def binomial_power_inequality(delta: Fraction, b: Fraction, a: Fraction, d: int) -> bool:
    """``C(d, (b-a)d) <= C(d, bd)^{1 - delta^2}``, compared through logarithms."""
    k_small = int((b - a) * d)
    k_big = int(b * d)
    lhs = math.comb(d, k_small)
    rhs = math.comb(d, k_big)
    if lhs == 1:
        return True  # rhs >= 1 and the exponent is non-negative
    expo = 1 - delta**2
    return decide_leq(lambda: iv.log(iv.mpf(lhs)), lambda: _iv(expo) * iv.log(iv.mpf(rhs)))


def entropy_checks(samples: Iterable[tuple]) -> list[EntropyCheck]:
    """Check the binomial-power inequality on ``(delta, b, a, d)`` tuples.

    Tuples that violate the hypotheses are flagged and not evaluated.
    """
    out = []
    for delta, b, a, d in samples:
        delta, b, a = Fraction(delta), Fraction(b), Fraction(a)
        ok = lemma_hypotheses(delta, b, a, d)
        out.append(EntropyCheck(delta, b, a, d, ok, binomial_power_inequality(delta, b, a, d) if ok else None))
    return out


@dataclass(frozen=True)
class SandwichCheck:
    x: Fraction
    d: int
    lower: bool  # 2^{dH}/sqrt(8dx(1-x)) <= C(d, xd)
    upper: bool  # C(d, xd) <= 2^{dH}/sqrt(pi d x(1-x))
    trivial: bool  # 2^{dH}/sqrt(pi d x(1-x)) <= 2^{dH}

    @property
    def holds(self) -> bool:
        return self.lower and self.upper and self.trivial


def entropy_sandwich(x, d: int) -> SandwichCheck:
    """Both sides of the entropy estimate for ``C(d, xd)``."""
    x = Fraction(x)
    if not 0 < x < 1 or (x * d).denominator != 1:
        raise ValueError("need 0 < x < 1 with xd an integer")
    k = int(x * d)
    binom = math.comb(d, k)
    q = x * (1 - x)

    def power():
        return iv.mpf(2) ** (d * _entropy_bits(x))

    lower = decide_leq(lambda: power() / iv.sqrt(8 * d * _iv(q)), lambda: iv.mpf(binom))
    upper = decide_leq(lambda: iv.mpf(binom), lambda: power() / iv.sqrt(iv.pi * d * _iv(q)))
    # the last step only needs pi d x(1-x) >= 1
    trivial = decide_leq(lambda: iv.mpf(1), lambda: iv.pi * d * _iv(q))
    return SandwichCheck(x, d, lower, upper, trivial)


def stirling_sandwich(n: int, k: int) -> tuple[bool, bool]:
    """``(n/k)^k <= C(n,k)`` (exact) and ``C(n,k) <= (n/k)^k e^k`` (interval)."""
    if not 1 <= k <= n:
        raise ValueError("need 1 <= k <= n")
    binom = math.comb(n, k)
    lower = Fraction(n, k) ** k <= binom
    upper = decide_leq(lambda: iv.mpf(binom), lambda: (iv.mpf(n) / k) ** k * iv.exp(iv.mpf(k)))
    return lower, upper


def stirling_corpus(n_max: int = 200) -> list[tuple[int, int, bool, bool]]:
    out = []
    for n in range(2, n_max + 1):
        for k in range(1, n // 2 + 1):
            lo, hi = stirling_sandwich(n, k)
            out.append((n, k, lo, hi))
    return out


def moment_within_bounds(value: Fraction, length: int, m: int, kind: str) -> bool:
    """Exact comparison against ``(25 l)^{ml}`` (wedge) or ``(16 l)^{ml}`` (sym)."""
    base = 25 if kind == "wedge" else 16
    return value <= (base * length) ** (m * length)
