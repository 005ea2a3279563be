import itertools
from fractions import Fraction

import pytest
from hypothesis import settings

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


def gram_inverse_weingarten(n, d):
    """Wg_d on S_n by inverting the Gram matrix d^{#cycles(s^-1 t)} over Q (needs d >= n)."""
    perms = list(itertools.permutations(range(n)))
    index = {p: i for i, p in enumerate(perms)}
    size = len(perms)

    def cycles(p):
        seen, c = set(), 0
        for s in range(n):
            if s not in seen:
                c += 1
                x = s
                while x not in seen:
                    seen.add(x)
                    x = p[x]
        return c

    def inv(p):
        out = [0] * n
        for i, v in enumerate(p):
            out[v] = i
        return tuple(out)

    M = [[Fraction(d) ** cycles(tuple(inv(s)[x] for x in t)) for t in perms] for s in perms]
    # Gauss-Jordan on [M | e_identity]
    rhs = [Fraction(1 if p == tuple(range(n)) else 0) for p in perms]
    for col in range(size):
        piv = next(r for r in range(col, size) if M[r][col] != 0)
        M[col], M[piv] = M[piv], M[col]
        rhs[col], rhs[piv] = rhs[piv], rhs[col]
        f = M[col][col]
        M[col] = [v / f for v in M[col]]
        rhs[col] /= f
        for r in range(size):
            if r != col and M[r][col] != 0:
                g = M[r][col]
                M[r] = [a - g * b for a, b in zip(M[r], M[col])]
                rhs[r] -= g * rhs[col]
    # the solution column x satisfies sum_t G(s^-1 t) x_t = delta_{s,id}, so x = Wg
    return {p: rhs[index[p]] for p in perms}


@pytest.fixture(scope="session")
def gram_wg():
    return gram_inverse_weingarten
