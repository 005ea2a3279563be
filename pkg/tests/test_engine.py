from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from haarwords.engine import (
    EntrySpec,
    build_problem,
    entrywise_trace_product,
    expected_entry_product,
    expected_trace_product,
    run_trace_product,
)
from haarwords.errors import BudgetError
from haarwords.words import ENGEL, Word, cyclic_reduce, inverse_word, relabel, rotate

X, Y = (1,), (2,)
COMM = (1, 2, -1, -2)


def value(words, d, **kw):
    return expected_trace_product(build_problem(words, d), **kw)


def test_build_problem_examples():
    p = build_problem([X], 3)
    assert p.size == 1 and p.A[1] == (0,) and p.B[1] == () and not p.balanced
    e = build_problem([ENGEL], 2)
    assert e.size == 8 and e.block_sizes() == {1: 2, 2: 2}
    assert all(len(e.B[i]) == 2 for i in (1, 2))
    s = build_problem([(1, 1), (-1, -1)], 4)
    assert s.successor == (1, 0, 3, 2)
    assert len(s.A[1]) == len(s.B[1]) == 2


def test_build_problem_errors():
    with pytest.raises(ValueError):
        build_problem([()], 2)
    with pytest.raises(ValueError):
        build_problem([(2, 1, -2)], 2)
    with pytest.raises(ValueError):
        build_problem([X], 0)


@pytest.mark.parametrize("d", range(1, 6))
def test_trace_and_inverse(d):
    assert value([X, (-1,)], d) == 1


@pytest.mark.parametrize("d", [4, 5, 6])
def test_square_moment(d):
    assert value([(1, 1), (-1, -1)], d) == 2


@pytest.mark.parametrize("d", range(1, 6))
def test_commutator(d):
    assert value([COMM], d) == Fraction(1, d)


@pytest.mark.parametrize("d", [2, 3])
def test_commutator_entrywise(d):
    assert entrywise_trace_product([COMM], d) == Fraction(1, d)


def test_entry_products():
    for d in range(1, 5):
        assert expected_entry_product(EntrySpec(((1, 1, 1, False), (1, 1, 1, True)), d)) == Fraction(1, d)
    d = 3
    assert expected_entry_product(EntrySpec(((1, 1, 1, False), (1, 2, 2, True)), d)) == 0
    spec = EntrySpec(((1, 1, 1, False), (1, 2, 2, False), (1, 1, 1, True), (1, 2, 2, True)), d)
    assert expected_entry_product(spec) == Fraction(1, d * d - 1)
    with pytest.raises(ValueError):
        EntrySpec(((1, 4, 1, False),), 3)
    big = tuple((1, 1, 1, c) for c in [False] * 9 + [True] * 9)
    with pytest.raises(BudgetError):
        expected_entry_product(EntrySpec(big, 2))


def test_entry_fourth_moment():
    # E|X_11|^4 = 2/(d(d+1))
    for d in range(2, 6):
        spec = EntrySpec(((1, 1, 1, False),) * 2 + ((1, 1, 1, True),) * 2, d)
        assert expected_entry_product(spec) == Fraction(2, d * (d + 1))


def test_unbalanced_vanishes():
    assert value([(1, 1, 2)], 3) == 0
    assert run_trace_product(build_problem([(1, 1, -2)], 2)).terms == 0


def test_budget_error_names_terms():
    p = build_problem([(1,) * 5, (-1,) * 5], 3)
    with pytest.raises(BudgetError) as exc:
        expected_trace_product(p, budget=10)
    assert exc.value.required == p.term_count() == 120
    with pytest.raises(ValueError):
        expected_trace_product(p, method="bogus")


def test_term_counts():
    p = build_problem([ENGEL], 2)
    assert p.term_count("direct") == 16
    assert p.term_count("reduced") == 8


ORACLE_CASES = [
    ([COMM, inverse_word(COMM)], 2),
    ([ENGEL], 1),
    ([ENGEL], 2),
    ([(1, 2), (-1, -2)], 2),
    ([(1, 1, -2), (2, -1, -1)], 2),
    ([(1, 2, -1, 2)], 2),
    ([(1, 1), (-1,), (-1,)], 2),
    ([(1, 1, 1), (-1, -1, -1)], 2),
]


@pytest.mark.parametrize("words,d", ORACLE_CASES)
def test_against_entrywise_oracle(words, d):
    exact = value(words, d)
    assert exact == value(words, d, method="direct")
    assert exact == entrywise_trace_product(words, d)


@pytest.mark.parametrize("d", [1, 2, 3, 4])
def test_engel_first_moment_values(d):
    r = value([ENGEL], d)
    assert r == value([ENGEL], d, method="direct")


def test_engel_values_recorded():
    assert value([ENGEL], 2) == Fraction(1, 3)
    assert value([ENGEL], 3) == Fraction(7, 24)
    assert value([ENGEL], 4) == Fraction(7, 30)


gen_letters = st.sampled_from([1, -1, 2, -2])
small_words = st.lists(gen_letters, min_size=1, max_size=6).map(cyclic_reduce).filter(len)


@settings(max_examples=40)
@given(st.lists(small_words, min_size=1, max_size=2), st.integers(1, 3), st.data())
def test_invariances(words, d, data):
    words = [Word(w) for w in words]
    p = build_problem(words, d)
    if p.term_count("direct") > 5000:
        return
    base = expected_trace_product(p)
    assert base == expected_trace_product(p, method="direct")
    k = data.draw(st.integers(0, 7))
    assert value([rotate(w, k) for w in words], d) == base
    assert value(list(reversed(words)), d) == base
    assert value(words, d) == value([relabel(w, {1: 2, 2: 1}) for w in words], d)
    assert value([relabel(w, {1: -1, 2: 2}) for w in words], d) == base
    # inverting every word conjugates the value, which is real
    assert value([inverse_word(w) for w in words], d) == base


@settings(max_examples=15)
@given(st.lists(small_words, min_size=1, max_size=2).filter(lambda ws: sum(map(len, ws)) <= 5), st.integers(1, 2))
def test_random_against_entrywise(words, d):
    assert value(words, d) == entrywise_trace_product(words, d)


@pytest.mark.slow
def test_parallel_matches_serial():
    words = [(1,) * 5 + (2,) * 4 + (3, 3), (-1,) * 5 + (-2,) * 4 + (-3, -3)]
    p = build_problem(words, 3)
    assert p.term_count() >= 200_000  # large enough to be split across processes
    serial = expected_trace_product(p, workers=1)
    assert expected_trace_product(p, workers=2) == serial
