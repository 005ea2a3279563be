import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st
from mpmath import iv

from haarwords.bounds import (
    Undecided,
    binomial_power_inequality,
    bound_report,
    decide_leq,
    entropy_checks,
    entropy_sandwich,
    lemma_hypotheses,
    moment_within_bounds,
    stirling_sandwich,
)


def test_report_examples():
    r = bound_report(8, 1, 8)
    assert r.wedge_bound == 200**8
    assert r.wedge_applicable
    r2 = bound_report(2, 1, 4)
    assert r2.wedge_secondary_threshold == 2500
    assert not r2.wedge_secondary_applicable
    assert bound_report(8, 1, 4).engel_bound == 2**17 == 131072
    assert not bound_report(1, 2, 3).engel_applicable
    assert r.epsilon == Fraction(1, 72 * 200**16)
    assert not r.epsilon_applicable
    with pytest.raises(ValueError):
        bound_report(0, 1, 1)


def test_report_json_and_rows():
    js = bound_report(8, 2, 16).to_json()
    assert js["wedge_bound"] == str(200**16)  # too large for a float, serialized as a string
    assert js["m"] == 2 and js["epsilon"].startswith("1/")
    rows = bound_report(2, 1, 4).rows()
    assert len(rows) == 6 and all(len(row) == 4 for row in rows)


def test_moment_within_bounds():
    assert moment_within_bounds(Fraction(6), 3, 2, "wedge")
    assert not moment_within_bounds(Fraction(16**2 + 1), 1, 2, "sym")


def test_decide_leq():
    assert decide_leq(lambda: iv.mpf(2), lambda: iv.e)
    assert not decide_leq(lambda: iv.pi, lambda: iv.e)
    assert decide_leq(lambda: iv.mpf(10) ** 30 * iv.e, lambda: iv.mpf(10) ** 30 * iv.e + iv.mpf(1) / 10**40)
    with pytest.raises(Undecided):
        decide_leq(lambda: iv.pi, lambda: iv.pi)


def test_entropy_examples():
    trivial, mid, bad = entropy_checks([(Fraction(1, 2), Fraction(1, 2), Fraction(1, 2), 18), (Fraction(1, 4), Fraction(1, 2), Fraction(1, 4), 260), (Fraction(1, 4), Fraction(1, 2), Fraction(1, 4), 200)])
    assert trivial.hypotheses and trivial.holds
    assert mid.hypotheses and mid.holds
    assert not bad.hypotheses and bad.holds is None


def test_entropy_sandwich_example():
    s = entropy_sandwich(Fraction(1, 4), 64)
    assert s.lower and s.upper and s.trivial and s.holds
    with pytest.raises(ValueError):
        entropy_sandwich(Fraction(1, 3), 64)


@given(st.integers(2, 200), st.data())
def test_stirling_sandwich(n, data):
    k = data.draw(st.integers(1, n // 2))
    assert stirling_sandwich(n, k) == (True, True)


def test_stirling_errors():
    with pytest.raises(ValueError):
        stirling_sandwich(3, 0)


@given(st.sampled_from([Fraction(1, 2), Fraction(1, 3), Fraction(1, 4)]), st.data())
def test_binomial_power_inequality(delta, data):
    d_min = int(1 / delta**4) + 1
    step = 12
    d = data.draw(st.integers(d_min // step + 1, d_min // step + 30)) * step
    b = data.draw(st.sampled_from([x for x in (Fraction(1, 2), Fraction(5, 12), Fraction(1, 3)) if x >= delta]))
    a = data.draw(st.sampled_from([x for x in (Fraction(1, 2), Fraction(1, 3), Fraction(1, 4), Fraction(1, 6)) if delta <= x <= b]))
    assert lemma_hypotheses(delta, b, a, d)
    assert binomial_power_inequality(delta, b, a, d)
