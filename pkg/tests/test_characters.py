import itertools
import math
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from haarwords.characters import (
    YoungSubgroup,
    character_table,
    character_value,
    coset_average,
    induced_multiplicity,
    permutation_character,
    unitary_dimension,
    young_subgroups,
)
from haarwords.combinatorics import cells, class_size, dimension_sn, enumerate_partitions, sign, z_value
from haarwords.errors import BudgetError


def frobenius_character(lam, mu):
    """chi_lam(mu) as the coefficient of x^{lam + delta} in a_delta * p_mu."""
    k = len(lam)
    xs = sympy.symbols(f"x0:{k}")
    delta = [k - 1 - i for i in range(k)]
    vandermonde = sympy.prod([xs[i] - xs[j] for i in range(k) for j in range(i + 1, k)])
    p = sympy.prod([sum(x**j for x in xs) for j in mu])
    poly = sympy.Poly(sympy.expand(vandermonde * p), *xs)
    return poly.coeff_monomial(sympy.prod([x ** (l + dl) for x, l, dl in zip(xs, lam, delta)]))


@pytest.mark.parametrize("n", range(1, 6))
def test_characters_match_frobenius_formula(n):
    for lam in enumerate_partitions(n):
        for mu in enumerate_partitions(n):
            assert character_value(lam, mu) == frobenius_character(lam, mu)


def test_character_examples():
    assert character_value((2, 1), (1, 1, 1)) == 2
    for n in range(1, 7):
        for mu in enumerate_partitions(n):
            assert character_value((1,) * n, mu) == (-1) ** (n - len(mu))
            assert character_value((n,), mu) == 1


def test_size_mismatch():
    with pytest.raises(ValueError):
        character_value((2,), (1,))


@pytest.mark.parametrize("n", range(1, 9))
def test_orthogonality(n):
    parts = enumerate_partitions(n)
    fact = math.factorial(n)
    for lam in parts:
        assert character_value(lam, (1,) * n) == dimension_sn(lam)
        for lam2 in parts:
            s = sum(class_size(mu) * character_value(lam, mu) * character_value(lam2, mu) for mu in parts)
            assert s == (fact if lam == lam2 else 0)
    for mu in parts:
        for mu2 in parts:
            s = sum(character_value(lam, mu) * character_value(lam, mu2) for lam in parts)
            assert s == (z_value(mu) if mu == mu2 else 0)


def test_character_table_csv():
    table = character_table(3)
    assert table is character_table(3)
    lines = table.to_csv().strip().splitlines()
    assert lines[0] == 'lambda,"[3]","[2,1]","[1,1,1]"'
    assert lines[2] == '"[2,1]",-1,0,2'
    assert table[((2, 1), (1, 1, 1))] == 2


def weyl_dimension(lam, d):
    lam = list(lam) + [0] * (d - len(lam))
    num = math.prod(lam[i] - lam[j] + j - i for i in range(d) for j in range(i + 1, d))
    den = math.prod(j - i for i in range(d) for j in range(i + 1, d))
    return Fraction(num, den)


def test_unitary_dimension_examples():
    for d in range(1, 8):
        assert unitary_dimension((1,), d) == d
        assert unitary_dimension((2,), d) == d * (d + 1) // 2
        if d >= 2:
            assert unitary_dimension((1, 1), d) == d * (d - 1) // 2
    with pytest.raises(ValueError):
        unitary_dimension((1, 1, 1), 2)


@pytest.mark.parametrize("d", range(1, 7))
def test_unitary_dimension_matches_weyl(d):
    for m in range(1, 7):
        for lam in enumerate_partitions(m, max_length=d):
            assert unitary_dimension(lam, d) == weyl_dimension(lam, d)


@pytest.mark.parametrize("m", range(1, 7))
@pytest.mark.parametrize("d", range(1, 7))
def test_schur_weyl_dimension_count(m, d):
    total = sum(dimension_sn(lam) * unitary_dimension(lam, d) for lam in enumerate_partitions(m, max_length=d))
    assert total == d**m


def test_induced_multiplicity_examples():
    assert induced_multiplicity(1, 2, (2,)) == 1
    assert induced_multiplicity(1, 2, (1, 1)) == 1
    assert induced_multiplicity(2, 2, (2, 2)) == 1
    assert induced_multiplicity(2, 2, (4,), "sign") == 0
    with pytest.raises(BudgetError):
        induced_multiplicity(4, 3, (12,))


def brute_induced(m, l, nu, xi):
    H = YoungSubgroup(m, l)
    total = 0
    for h in H.elements():
        x = sign(h) if xi == "sign" else 1
        total += x * permutation_character(nu, h)
    return Fraction(total, H.order)


@pytest.mark.parametrize("m,l", [(1, 3), (2, 2), (3, 2), (2, 3), (1, 5)])
def test_induced_multiplicity_by_direct_sum(m, l):
    for nu in enumerate_partitions(m * l):
        for xi in ("trivial", "sign"):
            assert induced_multiplicity(m, l, nu, xi) == brute_induced(m, l, nu, xi)


def test_young_subgroup():
    H = YoungSubgroup(2, 3)
    elems = list(H.elements())
    assert len(elems) == H.order == 8
    assert all(H.contains(h) for h in elems)
    assert not H.contains((1, 2, 0, 3, 4, 5))
    assert [(h.m, h.l) for h in young_subgroups(6)] == [(1, 6), (2, 3), (3, 2), (6, 1)]


def test_coset_average_examples():
    for lam in enumerate_partitions(4):
        assert coset_average(YoungSubgroup(1, 4), "trivial", lam, (0, 1, 2, 3)) == dimension_sn(lam)
    H = YoungSubgroup(2, 2)
    v = coset_average(H, "sign", (2, 2), (0, 1, 2, 3))
    assert abs(v) <= induced_multiplicity(2, 2, (2, 2), "sign")
    with pytest.raises(BudgetError):
        coset_average(YoungSubgroup(3, 3), "trivial", (9,), tuple(range(9)))


@given(st.sampled_from([(2, 2), (1, 4), (2, 3), (3, 2), (1, 5)]), st.data())
def test_coset_bound_property(H_shape, data):
    m, l = H_shape
    H = YoungSubgroup(m, l)
    n = m * l
    lam = data.draw(st.sampled_from(enumerate_partitions(n)))
    g = data.draw(st.permutations(list(range(n))).map(tuple))
    xi = data.draw(st.sampled_from(["trivial", "sign"]))
    mult = induced_multiplicity(m, l, lam, xi)
    avg = coset_average(H, xi, lam, g)
    assert abs(avg) <= mult
    if mult == 0:
        assert avg == 0
