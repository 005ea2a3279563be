"""The acceptance suite: twelve end-to-end checks with one verdict each."""
from __future__ import annotations

import itertools
import math
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from . import bounds, engel, moments
from .characters import (
    YoungSubgroup,
    character_value,
    coset_average,
    coset_representatives,
    double_coset_size,
    induced_multiplicity,
    left_coset_average,
    unitary_dimension,
    young_subgroups,
)
from .combinatorics import (
    all_permutations,
    conjugate,
    cycle_type,
    dimension_sn,
    enumerate_partitions,
    inverse,
    lr_coefficient,
    multiplicities,
)
from .engine import DEFAULT_BUDGET, build_problem, entrywise_trace_product, expected_trace_product
from .errors import BudgetError
from .montecarlo import empirical_moment, empirical_trace_product, gaussian_limit_moment
from .weingarten import convolve, gram_function, weingarten_table
from .words import ENGEL, Word, format_word, inverse_word, parse_word


@dataclass
class Options:
    budget: int = DEFAULT_BUDGET
    samples: int = 100_000
    seed: int = 20240601
    workers: int | None = None


@dataclass
class CriterionResult:
    number: int
    title: str
    passed: bool
    details: list[str] = field(default_factory=list)
    skipped: list[str] = field(default_factory=list)
    elapsed_s: float = 0.0

    def line(self) -> str:
        verdict = "PASS" if self.passed else "FAIL"
        extra = f"; {len(self.skipped)} skipped" if self.skipped else ""
        return f"[{verdict}] criterion {self.number:2d}: {self.title} ({self.elapsed_s:.1f}s{extra})"

    def to_json(self) -> dict:
        return {
            "criterion": self.number,
            "title": self.title,
            "passed": self.passed,
            "details": self.details,
            "skipped": self.skipped,
            "elapsed_s": round(self.elapsed_s, 3),
        }


class _Log:
    def __init__(self):
        self.ok = True
        self.details: list[str] = []
        self.skipped: list[str] = []

    def check(self, cond: bool, message: str) -> None:
        if not cond:
            self.ok = False
            self.details.append("FAILED " + message)

    def note(self, message: str) -> None:
        self.details.append(message)


def _fmt(q: Fraction) -> str:
    return str(q)


# --------------------------------------------------------------------------
# corpora shared between criteria
# --------------------------------------------------------------------------

def schur_cases() -> list[tuple[int, int]]:
    return [(m, d) for d in range(1, 7) for m in range(1, d + 1)]


def power_word_cases() -> list[tuple[int, int]]:
    return [(2, 1), (3, 1), (2, 2), (3, 2)]


def power_lambda_cases() -> list[tuple[int, tuple[int, ...]]]:
    return [(l, lam) for m in range(1, 4) for lam in enumerate_partitions(m) for l in range(1, 4)]


ENGEL_CASES = [(1, 2), (1, 3), (1, 4), (2, 2)]
COMMUTATOR = parse_word("[x,y]")


def bound_corpus() -> list[tuple[str, Word]]:
    return [(s, parse_word(s)) for s in ("x^2", "xy", "[x,y]", "xyXy")] + [("[[x,y],y]", ENGEL)]


# --------------------------------------------------------------------------
# criteria
# --------------------------------------------------------------------------

def criterion_1(opt: Options, log: _Log) -> None:
    x = Word([1])
    for m, d in schur_cases():
        v = moments.second_moment(x, moments.wedge(m), d, opt.budget, opt.workers)
        log.check(v == 1, f"E|c_{m}(X)|^2 = {v} at d={d}")
    log.note(f"{len(schur_cases())} cases (1 <= m <= d <= 6) equal 1")


def _multi_indices(total: int):
    # partitions mu, nu (possibly empty) with |mu| + |nu| <= total
    parts = [()] + [p for n in range(1, total + 1) for p in enumerate_partitions(n)]
    for mu in parts:
        for nu in parts:
            if sum(mu) + sum(nu) <= total:
                yield mu, nu


def criterion_2(opt: Options, log: _Log) -> None:
    count = 0
    for mu, nu in _multi_indices(6):
        a = multiplicities(mu) if mu else ()
        b = multiplicities(nu) if nu else ()
        v = moments.ds_moment(a, b, 1, 8, opt.budget)
        expected = moments.ds_closed_form(a, b, 1)
        log.check(v == expected, f"ds_moment(a={list(a)}, b={list(b)}) = {v}, expected {expected}")
        count += 1
    log.note(f"{count} multi-index pairs at d=8 match delta_ab prod j^a_j a_j!")


def criterion_3(opt: Options, log: _Log) -> None:
    for l, m in power_word_cases():
        d = 2 * m * l
        w = Word([1] * l)
        target = math.comb(l + m - 1, m)
        vw = moments.second_moment(w, moments.wedge(m), d, opt.budget, opt.workers)
        vs = moments.second_moment(w, moments.sym(m), d, opt.budget, opt.workers)
        log.check(vw == target, f"x^{l} wedge {m} at d={d}: {vw} != {target}")
        log.check(vs == target, f"x^{l} sym {m} at d={d}: {vs} != {target}")
    for l, lam in power_lambda_cases():
        m = sum(lam)
        d = 2 * m * l
        w = Word([1] * l)
        try:
            v = moments.second_moment(w, lam, d, opt.budget, opt.workers)
        except BudgetError as exc:
            log.skipped.append(f"x^{l}, lambda={list(lam)}, d={d}: {exc}")
            continue
        target = moments.power_word_value(l, lam)
        log.check(v == target, f"x^{l}, lambda={list(lam)}, d={d}: {v} != {target}")
    log.note(f"{len(power_word_cases())} (l,m) wedge/sym cases and {len(power_lambda_cases())} (l,lambda) cases")


def criterion_4(opt: Options, log: _Log) -> None:
    for m, d in ENGEL_CASES:
        direct = engel.engel_direct(m, d, budget=opt.budget)
        general = moments.first_moment(ENGEL, moments.wedge(m), d, opt.budget, opt.workers)
        log.check(direct == general, f"m={m}, d={d}: coordinate pipeline {direct} != engine {general}")
        cm = (-1) ** m * direct
        if d >= 2 * m:
            log.check(abs(cm) < 2 ** (17 * m), f"|E c_{m}| = {abs(cm)} not below 2^{17 * m}")
        nz = engel.count_Z(m, d, opt.budget)
        bound = engel.z_bound(m, d)
        log.check(nz <= bound, f"|Z| = {nz} exceeds {bound} at m={m}, d={d}")
        log.note(f"m={m}, d={d}: E tr wedge^m = {direct}, E c_m = {cm}, |Z| = {nz} <= {bound}")


def criterion_5(opt: Options, log: _Log) -> None:
    for d in (2, 3, 4):
        v = expected_trace_product(build_problem([COMMUTATOR], d), opt.budget)
        log.check(v == Fraction(1, d), f"E tr[X,Y] = {v} at d={d}")
    oracle = entrywise_trace_product([COMMUTATOR], 2)
    log.check(oracle == Fraction(1, 2), f"entrywise oracle gives {oracle} at d=2")
    log.note("E tr[X,Y] = 1/d for d = 2, 3, 4; entrywise oracle agrees at d=2")


def _class_fn(table):
    return lambda s: table[cycle_type(s)]


def criterion_6(opt: Options, log: _Log) -> None:
    for n in range(1, 7):
        for d in range(n, n + 3):
            wg = weingarten_table(n, d).values
            conv = convolve(_class_fn(wg), gram_function(d), n)
            ident = (1,) * n
            for mu, v in conv.items():
                log.check(v == (1 if mu == ident else 0), f"(Wg*G) at n={n}, d={d}, class {list(mu)} = {v}")
    for n in range(2, 6):
        for d in range(1, n):
            wg = weingarten_table(n, d).values
            wgG = convolve(_class_fn(wg), gram_function(d), n)
            wgGwg = convolve(_class_fn(wgG), _class_fn(wg), n)
            log.check(wgGwg == dict(wg), f"Wg*G*Wg != Wg at n={n}, d={d}")
    log.note("inverse for 1 <= n <= 6, n <= d <= n+2; pseudo-inverse for 2 <= n <= 5, d < n")


def engine_oracle_corpus(max_size: int = 6) -> list[tuple[Word, ...]]:
    """Multisets of corpus words and their inverses with total length <= max_size."""
    base = [parse_word(s) for s in ("x", "x^2", "[x,y]", "xy", "xY")]
    pool = sorted({tuple(w) for w in base} | {tuple(inverse_word(w)) for w in base}, key=lambda w: (len(w), w))
    out = []
    for k in range(1, max_size + 1):
        for combo in itertools.combinations_with_replacement(pool, k):
            if sum(len(w) for w in combo) <= max_size:
                out.append(tuple(Word(w) for w in combo))
    return out


def criterion_7(opt: Options, log: _Log) -> None:
    corpus = engine_oracle_corpus()
    balanced = 0
    for words in corpus:
        for d in (1, 2, 3):
            problem = build_problem(words, d)
            balanced += problem.balanced
            v = expected_trace_product(problem, opt.budget)
            o = entrywise_trace_product(words, d)
            log.check(v == o, f"{[format_word(w) for w in words]} at d={d}: engine {v} != oracle {o}")
    log.note(f"{len(corpus)} trace products x d in {{1,2,3}} ({balanced} balanced instances) agree")


def bound_cells() -> list[tuple[str, Word, int, int]]:
    cells = []
    for name, w in bound_corpus():
        l = len(w)
        for m in range(1, 9):
            if m * l > 8:
                break
            for d in range(m * l, m * l + 3):
                cells.append((name, w, m, d))
    return cells


def criterion_8(opt: Options, log: _Log) -> None:
    checked = 0
    worst = (Fraction(0), "")
    for name, w, m, d in bound_cells():
        l = len(w)
        for kind, rep, base in (("wedge", moments.wedge(m), 25), ("sym", moments.sym(m), 16)):
            try:
                v = moments.second_moment(w, rep, d, opt.budget, opt.workers)
            except BudgetError as exc:
                log.skipped.append(f"{name} {kind}:{m} d={d}: {exc}")
                continue
            bound = (base * l) ** (m * l)
            log.check(v <= bound, f"{name} {kind}:{m} d={d}: {v} > {bound}")
            ratio = v / bound
            if ratio > worst[0]:
                worst = (ratio, f"{name} {kind}:{m} d={d} value {v}")
            checked += 1
    log.note(f"{checked} exact second moments within bounds; largest ratio {float(worst[0]):.3g} ({worst[1]})")


def mc_corpus() -> list[tuple[str, Word, str, int, Fraction]]:
    """(label, word, statistic, d, exact value) for criteria 1-5 with d <= 5."""
    x = Word([1])
    out = []
    for m, d in schur_cases():
        if d <= 5:
            out.append((f"c1 x wedge {m}", x, f"cm2:{m}", d, Fraction(1)))
    for l, m in power_word_cases():
        d = 2 * m * l
        if d <= 5:
            w = Word([1] * l)
            target = Fraction(math.comb(l + m - 1, m))
            out.append((f"c3 x^{l} wedge {m}", w, f"cm2:{m}", d, target))
            out.append((f"c3 x^{l} sym {m}", w, f"sym2:{m}", d, target))
    for l, lam in power_lambda_cases():
        d = 2 * sum(lam) * l
        if d <= 5:
            lam_s = ",".join(map(str, lam))
            out.append((f"c3 x^{l} lambda {list(lam)}", Word([1] * l), f"schur2:[{lam_s}]", d, moments.power_word_value(l, lam)))
    for m, d in ENGEL_CASES:
        if d <= 5:
            value = moments.first_moment(ENGEL, moments.wedge(m), d)
            out.append((f"c4 Engel c_{m}", ENGEL, f"cm:{m}", d, (-1) ** m * value))
    for d in (2, 3, 4):
        out.append((f"c5 [x,y] c_1", COMMUTATOR, "cm:1", d, Fraction(-1, d)))
    return out


def criterion_9(opt: Options, log: _Log) -> None:
    corpus = mc_corpus()
    for i, (label, w, stat, d, exact) in enumerate(corpus):
        est = empirical_moment(w, stat, d, opt.samples, opt.seed + i)
        z = abs(est.mean - complex(float(exact))) / est.stderr if est.stderr > 0 else 0.0
        log.check(est.agrees(exact), f"{label} d={d}: mean {est.mean:.5f} vs {exact} (stderr {est.stderr:.2g})")
        log.note(f"{label} d={d} [{stat}]: exact {exact}, mean {est.mean.real:.5f}{est.mean.imag:+.5f}i, {z:.2f} SE")
    log.note("criterion 2 runs at d=8 and is outside the d <= 5 window")


def criterion_10(opt: Options, log: _Log) -> None:
    # coset bound: the average over gH only changes by a unimodular factor
    # when g moves inside its coset, so one representative per coset suffices
    n_checks = 0
    for n in range(1, 7):
        for H in young_subgroups(n):
            reps = coset_representatives(H)
            for xi in ("trivial", "sign"):
                for lam in enumerate_partitions(n):
                    mult = induced_multiplicity(H.m, H.l, lam, xi)
                    for g in reps:
                        avg = coset_average(H, xi, lam, g)
                        log.check(abs(avg) <= mult, f"coset bound n={n}, H=S_{H.m}^{H.l}, {xi}, {list(lam)}, g={g}")
                        n_checks += 1
    log.note(f"coset averages: {n_checks} checks")
    n_checks = 0
    for n in range(1, 7):
        for H in young_subgroups(n):
            right_reps = [inverse(g) for g in coset_representatives(H)]
            sizes = {g: double_coset_size(H, g) for g in right_reps}
            for lam in enumerate_partitions(n):
                mult = induced_multiplicity(H.m, H.l, lam, "trivial")
                chi1 = dimension_sn(lam)
                for g in right_reps:
                    avg = left_coset_average(H, lam, g)
                    rhs = Fraction(mult * math.factorial(n), sizes[g] * chi1)
                    log.check(avg * avg <= rhs, f"double-coset bound n={n}, H=S_{H.m}^{H.l}, {list(lam)}, g={g}")
                    n_checks += 1
    log.note(f"double-coset averages: {n_checks} checks")
    n_checks = 0
    for m in range(1, 9):
        for l in range(1, 9 // m + 1):
            if m * l > 8:
                continue
            for nu in enumerate_partitions(m * l):
                if induced_multiplicity(m, l, nu, "trivial"):
                    log.check(len(nu) <= l, f"trivial induction m={m}, l={l} contains {list(nu)}")
                if induced_multiplicity(m, l, nu, "sign"):
                    log.check(len(conjugate(nu)) <= l, f"sign induction m={m}, l={l} contains {list(nu)}")
                n_checks += 1
    log.note(f"induced supports: {n_checks} (m, l, nu) triples")
    for m in range(1, 7):
        for d in range(1, 7):
            total = sum(dimension_sn(lam) * unitary_dimension(lam, d) for lam in enumerate_partitions(m, max_length=d))
            log.check(total == d**m, f"Schur-Weyl count m={m}, d={d}: {total}")
    n_checks = 0
    for n in range(2, 9):
        for k in range(1, n):
            for lam in enumerate_partitions(k):
                for mu in enumerate_partitions(n - k):
                    if (lam, mu) > (mu, lam):
                        continue
                    for nu in enumerate_partitions(n):
                        left = lr_coefficient(lam, mu, nu)
                        right = lr_coefficient(mu, lam, nu)
                        log.check(left == right, f"LR asymmetry {list(lam)},{list(mu)},{list(nu)}: {left} vs {right}")
                        n_checks += 1
    log.note(f"LR symmetry: {n_checks} triples")
    for m in range(1, 7):
        for l in range(1, 5):
            lhs, rhs = moments.stirling_identity(m, l)
            log.check(lhs == rhs, f"Stirling identity m={m}, l={l}: {lhs} vs {rhs}")


def criterion_11(opt: Options, log: _Log) -> None:
    from .moments import limit_polynomial

    for p in range(1, 6):
        P1 = limit_polynomial(1, p)
        log.check(P1.coefficient((1,)) == moments.canonical_sqrt(Fraction(1), p), f"m=1, p={p}: {P1.format()}")
        P2 = limit_polynomial(2, p)
        log.check(P2.coefficient((2, 0)) == (Fraction(p, 2), 1), f"m=2, p={p}: Z1^2 coefficient")
        log.check(P2.coefficient((0, 1)) == moments.canonical_sqrt(Fraction(-1, 2), 2 * p), f"m=2, p={p}: Z2 coefficient")
        P3 = limit_polynomial(3, p)
        # p^{3/2}/6 Z1^3 - p/sqrt(2) Z1 Z2 + sqrt(p)/sqrt(3) Z3
        log.check(P3.coefficient((3, 0, 0)) == moments.canonical_sqrt(Fraction(p, 6), p), f"m=3, p={p}: Z1^3")
        log.check(P3.coefficient((1, 1, 0)) == moments.canonical_sqrt(Fraction(-p, 2), 2), f"m=3, p={p}: Z1 Z2")
        log.check(P3.coefficient((0, 0, 1)) == moments.canonical_sqrt(Fraction(1, 3), 3 * p), f"m=3, p={p}: Z3")
        log.check(len(P3.terms) == 3, f"m=3, p={p}: {len(P3.terms)} terms")
    log.note("m=3, p=1: " + limit_polynomial(3, 1).format())
    est = gaussian_limit_moment(limit_polynomial(2, 1), opt.samples, opt.seed)
    exact = moments.second_moment(Word([1]), moments.wedge(2), 16)
    log.check(exact == 1, f"E|c_2(X)|^2 at d=16 is {exact}")
    log.check(est.agrees(1), f"Gaussian E|P|^2 = {est.mean.real:.5f} +- {est.stderr:.2g}")
    log.note(f"Gaussian E|P_2|^2 = {est.mean.real:.5f} (stderr {est.stderr:.2g}); exact d=16 moment {exact}")


def criterion_12(opt: Options, log: _Log) -> None:
    for name, w, m, d in bound_cells():
        r = bounds.bound_report(len(w), m, d)
        log.check(not r.epsilon_applicable, f"{name} m={m} d={d}: epsilon regime unexpectedly applicable")
    for l in (1, 2, 4, 8):
        r = bounds.bound_report(l, 1, 10**6)
        log.note(
            f"l={l}: epsilon = {r.epsilon}, needs d >= (25l)^(7l) ~ 10^{bounds._log10(r.epsilon_threshold):.1f}; "
            f"applicable at d=10^6: {r.epsilon_applicable}"
        )
    log.note("epsilon(w) exponent and the cited lower-bound construction are reported, not asserted")


CRITERIA: dict[int, tuple[str, Callable[[Options, _Log], None]]] = {
    1: ("Schur orthogonality E|c_m(X)|^2 = 1", criterion_1),
    2: ("Diaconis-Shahshahani joint moments at d=8", criterion_2),
    3: ("power-word moments", criterion_3),
    4: ("Engel word: coordinate pipeline vs engine, bounds, |Z|", criterion_4),
    5: ("commutator E tr[X,Y] = 1/d", criterion_5),
    6: ("Weingarten inverse and pseudo-inverse", criterion_6),
    7: ("engine vs entrywise oracle", criterion_7),
    8: ("second-moment bounds at desk scale", criterion_8),
    9: ("Monte Carlo agreement within 5 SE", criterion_9),
    10: ("representation-theory properties", criterion_10),
    11: ("Gaussian limit polynomial", criterion_11),
    12: ("large-d exponent regime reported as inapplicable", criterion_12),
}


def run_criterion(number: int, opt: Options | None = None) -> CriterionResult:
    opt = opt or Options()
    title, fn = CRITERIA[number]
    log = _Log()
    t0 = time.perf_counter()
    try:
        fn(opt, log)
    except Exception as exc:  # report, do not crash the suite
        log.ok = False
        log.details.append(f"error: {type(exc).__name__}: {exc}")
    return CriterionResult(number, title, log.ok, log.details, log.skipped, time.perf_counter() - t0)


def run_suite(numbers=None, opt: Options | None = None, progress: Callable[[CriterionResult], None] | None = None):
    results = []
    for k in numbers or sorted(CRITERIA):
        res = run_criterion(k, opt)
        if progress:
            progress(res)
        results.append(res)
    return results
