import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sagbi.diophantine import DiophantineSystem, nonneg_solutions, quotient_memberships, solve


def grid_solutions(columns, target):
    """Every exponent vector in the box bounded by the target's total degree."""
    bound = sum(target)
    n = len(target)
    out = []
    for e in itertools.product(range(bound + 1), repeat=len(columns)):
        s = [sum(k * c[j] for k, c in zip(e, columns)) for j in range(n)]
        if s == list(target):
            out.append(e)
    return sorted(out)


column = st.lists(st.integers(0, 3), min_size=2, max_size=2).filter(any).map(tuple)


@settings(max_examples=150)
@given(st.lists(column, min_size=1, max_size=4), st.lists(st.integers(0, 4), min_size=2, max_size=2))
def test_solutions_equal_grid_enumeration(columns, target):
    assert solve(columns, target) == grid_solutions(columns, target)


def test_examples():
    # (2,2) from x^2, y^2, x*y
    cols = [(2, 0), (0, 2), (1, 1)]
    assert solve(cols, (2, 2)) == [(0, 0, 2), (1, 1, 0)]
    assert solve(cols, (1, 0)) == []
    assert solve(cols, (0, 0)) == [(0, 0, 0)]
    assert nonneg_solutions(DiophantineSystem(((1,),), (3,))) == [(3,)]


def test_validation():
    with pytest.raises(ValueError):
        DiophantineSystem(((0, 0),), (1, 1))
    with pytest.raises(ValueError):
        DiophantineSystem(((1,),), (1, 1))
    with pytest.raises(ValueError):
        DiophantineSystem(((1, -1),), (1, 1))


def test_quotient_memberships():
    lps = [(2, 0), (0, 2), (1, 1)]
    # x^2*y^4 = lp(g) * lp(F^eta) with lp(g) = x*y^3
    assert quotient_memberships((2, 4), (1, 3), lps) == [(0, 0, 1)]
    assert quotient_memberships((1, 5), (2, 2), lps) == []
