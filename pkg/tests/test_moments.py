import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from haarwords.characters import unitary_dimension
from haarwords.combinatorics import enumerate_partitions
from haarwords.engine import build_problem, entrywise_trace_product, expected_trace_product
from haarwords.engel import engel_direct
from haarwords.errors import BudgetError
from haarwords.moments import (
    MomentRequest,
    ds_closed_form,
    ds_moment,
    ds_threshold,
    first_moment,
    irrep,
    limit_polynomial,
    moment,
    parse_rep,
    power_sum_expansion,
    power_word_report,
    power_word_value,
    primitivity,
    second_moment,
    stirling_identity,
    sym,
    wedge,
)
from haarwords.words import ENGEL, Word, inverse_word, parse_word

COMM = (1, 2, -1, -2)


def test_power_sum_expansion_examples():
    assert power_sum_expansion((1,)) == [((1,), 1)]
    assert dict(power_sum_expansion((1, 1))) == {(1, 1): Fraction(1, 2), (2,): Fraction(-1, 2)}
    assert dict(power_sum_expansion((2,))) == {(1, 1): Fraction(1, 2), (2,): Fraction(1, 2)}
    with pytest.raises(BudgetError):
        power_sum_expansion((9,))


def elementary(x, m):
    # coefficient extraction from prod (1 + x_i t)
    return np.poly(-np.asarray(x))[m]


@pytest.mark.parametrize("m", range(1, 6))
def test_power_sum_expansion_numerically(m):
    rng = np.random.default_rng(m)
    x = rng.normal(size=6) + 1j * rng.normal(size=6)
    p = lambda mu: np.prod([np.sum(x**k) for k in mu])
    e = sum(float(c) * p(mu) for mu, c in power_sum_expansion((1,) * m))
    h = sum(float(c) * p(mu) for mu, c in power_sum_expansion((m,)))
    assert abs(e - elementary(x, m)) < 1e-9 * max(1, abs(e))
    # h_m as the coefficient of t^m in 1/prod(1 - x_i t)
    coeffs = np.zeros(m + 1, dtype=complex)
    coeffs[0] = 1
    for xi in x:
        for k in range(1, m + 1):
            coeffs[k] += xi * coeffs[k - 1]
    assert abs(h - coeffs[m]) < 1e-9 * max(1, abs(h))


def test_rep_parsing():
    assert parse_rep("wedge:2") == wedge(2)
    assert parse_rep("sym:3") == sym(3)
    assert parse_rep("lambda:[2,1]") == irrep((2, 1))
    assert str(irrep((2, 1))) == "lambda:[2,1]"
    for bad in ("wedge:x", "tensor:2", "wedge:0"):
        with pytest.raises(ValueError):
            parse_rep(bad)
    with pytest.raises(ValueError):
        second_moment((1,), wedge(3), 2)
    with pytest.raises(ValueError):
        MomentRequest(Word([1]), wedge(1), 2, order=3)


@pytest.mark.parametrize("d", range(1, 6))
def test_identity_word(d):
    for m in range(1, min(d, 3) + 1):
        assert second_moment((1,), wedge(m), d) == 1
        assert second_moment((1,), sym(m), d) == 1
    assert first_moment((1,), wedge(1), d) == 0


def test_power_word_examples():
    assert second_moment((1, 1, 1), wedge(2), 12) == 6
    for l in (1, 2, 3):
        for m in (1, 2):
            d = 2 * m * l
            assert second_moment((1,) * l, wedge(m), d) == math.comb(l + m - 1, m)
            for lam in enumerate_partitions(m):
                assert second_moment((1,) * l, lam, d) == power_word_value(l, lam)


def test_power_word_report():
    r = power_word_report(2, "wedge:2", 3)
    assert not r.hypothesis
    ok = power_word_report(2, "wedge:2", 8)
    assert ok.hypothesis and ok.matches and ok.exact == 3


@pytest.mark.parametrize("m,l", [(m, l) for m in range(1, 7) for l in range(1, 5)])
def test_stirling_identity(m, l):
    lhs, rhs = stirling_identity(m, l)
    assert lhs == rhs


@pytest.mark.parametrize("d", range(1, 5))
def test_commutator_first_moment(d):
    assert first_moment(COMM, wedge(1), d) == Fraction(1, d)
    # Frobenius: the commutator map pushes Haar measure to a class function with
    # coefficient 1/dim on each irreducible character
    for m in (1, 2, 3):
        for lam in enumerate_partitions(m, max_length=d):
            assert first_moment(COMM, lam, d) == Fraction(1, unitary_dimension(lam, d))


@pytest.mark.parametrize("d", [2, 3])
def test_commutator_second_moment_entrywise(d):
    exact = second_moment(COMM, wedge(1), d)
    assert exact == entrywise_trace_product([COMM, inverse_word(COMM)], d)


@pytest.mark.parametrize("d", [2, 3])
def test_engel_dual_pipeline(d):
    assert first_moment(ENGEL, wedge(1), d) == engel_direct(1, d)


def test_moment_request():
    req = MomentRequest(parse_word("x^2"), wedge(1), 4, order=2)
    assert moment(req) == 2
    assert moment(MomentRequest(parse_word("x"), wedge(1), 3, order=1)) == 0


def test_budget_error_names_pair():
    with pytest.raises(BudgetError) as exc:
        second_moment(ENGEL, wedge(2), 4, budget=100)
    assert "mu=" in str(exc.value)


def test_ds_examples():
    assert ds_moment([1], [1], 1, 2) == 1
    assert ds_moment([0, 1], [2, 0], 1, 4) == 0
    assert ds_moment([0, 1], [0, 1], 1, 4) == 2
    assert ds_closed_form([0, 1], [0, 1]) == 2
    assert ds_threshold([1, 1], [1, 1]) == 6


@settings(max_examples=25)
@given(st.lists(st.integers(0, 2), min_size=1, max_size=3), st.integers(1, 2))
def test_ds_formula_above_threshold(a, l):
    if ds_threshold(a, a, l) > 6 or not any(a):
        return
    d = ds_threshold(a, a, l)
    assert ds_moment(a, a, l, d) == ds_closed_form(a, a, l)


def test_limit_polynomial_examples():
    p1 = limit_polynomial(1, 5)
    assert p1.coefficient((1,)) == (1, 5)
    p = 3
    p2 = limit_polynomial(2, p)
    assert p2.coefficient((2, 0)) == (Fraction(p, 2), 1)
    assert p2.coefficient((0, 1)) == (Fraction(-1, 2), 2 * p)
    p3 = limit_polynomial(3, 1)
    assert p3.coefficient((3, 0, 0)) == (Fraction(1, 6), 1)
    assert p3.coefficient((1, 1, 0)) == (Fraction(-1, 2), 2)  # -1/sqrt(2)
    assert p3.coefficient((0, 0, 1)) == (Fraction(1, 3), 3)  # 1/sqrt(3)
    p3b = limit_polynomial(3, 4)
    assert p3b.coefficient((3, 0, 0)) == (Fraction(8, 6), 1)
    assert p3b.coefficient((1, 1, 0)) == (Fraction(-4, 2), 2)
    assert p3b.coefficient((0, 0, 1)) == (Fraction(2, 3), 3)
    assert p3.format() == "1/6*Z1^3 - 1/2*sqrt(2)*Z1*Z2 + 1/3*sqrt(3)*Z3"


@pytest.mark.parametrize("m", range(1, 5))
def test_limit_polynomial_second_moment(m):
    # E|P|^2 for independent standard complex Gaussians: sum |c_a|^2 prod a_j!
    for p in (1, 2, 3):
        poly = limit_polynomial(m, p)
        total = sum(
            t.value() ** 2 * math.prod(math.factorial(e) for e in t.monomial) for t in poly.terms
        )
        assert math.isclose(total, math.comb(p + m - 1, m))


def test_primitivity():
    assert primitivity((1, 2, 1, 2)) == 2
    assert primitivity(ENGEL) == 1
