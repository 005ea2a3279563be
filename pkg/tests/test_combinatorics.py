import itertools
import math
from collections import Counter

import pytest
from hypothesis import given, strategies as st

from haarwords.characters import character_value
from haarwords.combinatorics import (
    as_partition,
    class_size,
    compose,
    conjugate,
    cycle_type,
    dimension_sn,
    enumerate_partitions,
    from_multiplicities,
    hook_product,
    inverse,
    lr_coefficient,
    multiplicities,
    num_cycles,
    permutation_of_type,
    sign,
    stirling_unsigned,
    strict_expansions,
    z_value,
)
from haarwords.errors import BudgetError

perm_strategy = st.integers(1, 8).flatmap(lambda n: st.permutations(list(range(n))).map(tuple))


def count_syt(lam):
    """Standard Young tableaux by removing corners; independent of hook lengths."""
    lam = tuple(p for p in lam if p)
    if sum(lam) <= 1:
        return 1
    total = 0
    for i in range(len(lam)):
        if i == len(lam) - 1 or lam[i] > lam[i + 1]:
            new = list(lam)
            new[i] -= 1
            total += count_syt(tuple(new))
    return total


def brute_partitions(n):
    out = set()
    for k in range(1, n + 1):
        for combo in itertools.combinations_with_replacement(range(1, n + 1), k):
            if sum(combo) == n:
                out.add(tuple(sorted(combo, reverse=True)))
    return out


def test_partitions_of_four():
    parts = enumerate_partitions(4)
    assert parts == [(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)]
    assert enumerate_partitions(1) == [(1,)]
    assert set(enumerate_partitions(4, max_length=2)) == {(4,), (3, 1), (2, 2)}


@pytest.mark.parametrize("n", range(1, 11))
def test_partitions_match_brute_force(n):
    parts = enumerate_partitions(n)
    assert set(parts) == brute_partitions(n)
    assert len(parts) == len(set(parts))
    assert parts == sorted(parts, reverse=True)


def test_partition_validation():
    with pytest.raises(ValueError):
        as_partition([1, 2])
    with pytest.raises(ValueError):
        as_partition([2, 0])
    with pytest.raises(ValueError):
        enumerate_partitions(0)


def test_hook_product_examples():
    assert hook_product((2, 1)) == 3
    assert hook_product((5,)) == math.factorial(5)
    assert hook_product((1, 1, 1)) == 6


@pytest.mark.parametrize("n", range(1, 9))
def test_hook_formula_counts_tableaux(n):
    for lam in enumerate_partitions(n):
        assert dimension_sn(lam) == count_syt(lam)
    assert sum(dimension_sn(lam) ** 2 for lam in enumerate_partitions(n)) == math.factorial(n)


@pytest.mark.parametrize("n", range(1, 11))
def test_class_sizes_sum_to_factorial(n):
    assert sum(class_size(mu) for mu in enumerate_partitions(n)) == math.factorial(n)


@pytest.mark.parametrize("n", range(1, 7))
def test_class_sizes_match_enumeration(n):
    counts = Counter(cycle_type(p) for p in itertools.permutations(range(n)))
    for mu in enumerate_partitions(n):
        assert counts[mu] == class_size(mu) == math.factorial(n) // z_value(mu)


def test_multiplicities_roundtrip():
    for n in range(1, 9):
        for mu in enumerate_partitions(n):
            a = multiplicities(mu)
            assert sum(j * x for j, x in enumerate(a, start=1)) == n
            assert from_multiplicities(a) == mu
            assert cycle_type(permutation_of_type(mu)) == mu


@given(st.integers(1, 12).flatmap(lambda n: st.sampled_from(enumerate_partitions(n))))
def test_conjugate_is_involution(lam):
    assert conjugate(conjugate(lam)) == lam
    assert sum(conjugate(lam)) == sum(lam)


@given(perm_strategy, st.data())
def test_cycle_type_conjugation_invariant(s, data):
    p = data.draw(st.permutations(list(range(len(s)))).map(tuple))
    conj = compose(p, compose(s, inverse(p)))
    assert cycle_type(conj) == cycle_type(s)
    assert sum(cycle_type(s)) == len(s)
    assert num_cycles(s) == len(cycle_type(s))


@given(perm_strategy, st.data())
def test_sign_multiplicative(s, data):
    t = data.draw(st.permutations(list(range(len(s)))).map(tuple))
    assert sign(compose(s, t)) == sign(s) * sign(t)
    assert compose(s, inverse(s)) == tuple(range(len(s)))


def test_stirling_examples():
    assert stirling_unsigned(2, 1) == 1
    assert stirling_unsigned(2, 2) == 1
    assert stirling_unsigned(7, 7) == 1
    assert (stirling_unsigned(2, 1) * 3 + stirling_unsigned(2, 2) * 9) // 2 == 6 == math.comb(4, 2)


@pytest.mark.parametrize("m", range(0, 7))
def test_stirling_counts_permutations(m):
    counts = Counter(num_cycles(p) for p in itertools.permutations(range(m))) if m else Counter({0: 1})
    for k in range(m + 1):
        assert stirling_unsigned(m, k) == counts.get(k, 0)


def test_lr_examples():
    assert lr_coefficient((1,), (1,), (2,)) == 1
    assert lr_coefficient((1,), (1,), (1, 1)) == 1
    assert lr_coefficient((2, 1), (2, 1), (3, 2, 1)) == 2
    assert lr_coefficient((2, 1), (1,), (2, 1)) == 0
    assert lr_coefficient((2,), (1,), (5,)) == 0


def lr_by_characters(lam, mu, nu):
    """<Ind_{S_a x S_b}(chi_lam x chi_mu), chi_nu> summed over pairs of classes."""
    a, b = sum(lam), sum(mu)
    total = 0
    for alpha in enumerate_partitions(a):
        for beta in enumerate_partitions(b):
            joint = tuple(sorted(alpha + beta, reverse=True))
            total += (
                class_size(alpha) * class_size(beta)
                * character_value(lam, alpha) * character_value(mu, beta) * character_value(nu, joint)
            )
    q, r = divmod(total, math.factorial(a) * math.factorial(b))
    assert r == 0
    return q


@pytest.mark.parametrize("n", range(2, 7))
def test_lr_matches_induced_characters(n):
    for k in range(1, n):
        for lam in enumerate_partitions(k):
            for mu in enumerate_partitions(n - k):
                for nu in enumerate_partitions(n):
                    assert lr_coefficient(lam, mu, nu) == lr_by_characters(lam, mu, nu)


def test_lr_expansions_are_labelled():
    for shape, labels in strict_expansions((1,), (2, 1)):
        assert sorted(Counter(labels.values()).items()) == [(1, 2), (2, 1)]
        assert sum(shape) == 4


def test_lr_guard():
    with pytest.raises(BudgetError):
        lr_coefficient((11,), (10,), (21,))
