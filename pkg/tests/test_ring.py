import itertools
import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sagbi.ring import (
    Domain,
    Span,
    constant_syzygy_generators,
    extended_gcd,
    ideal_membership_witness,
    solve_linear,
)

ints = st.integers(-10**6, 10**6)


@given(ints, ints)
def test_extended_gcd_matches_math_gcd(a, b):
    g, s, t = extended_gcd(a, b)
    assert g == math.gcd(a, b)
    assert s * a + t * b == g


@given(ints, st.lists(ints, min_size=1, max_size=5))
def test_witness_exists_iff_gcd_divides(c, gens):
    w = ideal_membership_witness(c, gens, Domain.ZZ)
    g = math.gcd(*gens)
    assert (w is not None) == (c % g == 0 if g else c == 0)
    if w is not None:
        assert sum(r * x for r, x in zip(w, gens)) == c


def test_witness_examples():
    assert ideal_membership_witness(0, [4, 6]) == [0, 0]
    w = ideal_membership_witness(2, [4, 6])
    assert 4 * w[0] + 6 * w[1] == 2
    assert ideal_membership_witness(3, [4, 6]) is None
    assert ideal_membership_witness(5, [0, 0]) is None
    assert ideal_membership_witness(Fraction(5), [0, Fraction(3)], Domain.QQ) == [0, Fraction(5, 3)]
    assert ideal_membership_witness(Fraction(1), [0], Domain.QQ) is None


def test_domain_conversion():
    assert Domain.ZZ.convert(Fraction(4, 2)) == 2
    with pytest.raises(ValueError):
        Domain.ZZ.convert(Fraction(1, 2))
    with pytest.raises(TypeError):
        Domain.ZZ.convert(1.5)
    assert Domain.QQ.convert(3) == Fraction(3)
    assert Domain.parse("rat") is Domain.QQ
    with pytest.raises(ValueError):
        Domain.parse("real")
    assert Domain.ZZ.divides(3, 9) and not Domain.ZZ.divides(2, 9)
    assert Domain.QQ.divides(2, 9) and not Domain.QQ.divides(0, 1)


@given(st.lists(st.integers(-20, 20), min_size=1, max_size=4))
def test_constant_syzygies_annihilate_and_generate(gens):
    syz = constant_syzygy_generators(gens)
    for v in syz:
        assert sum(r * g for r, g in zip(v, gens)) == 0
    # every small annihilating vector is an integer combination of the generators
    span = Span()
    for v in syz:
        span.add(dict(enumerate(v)))
    for r in itertools.product(range(-3, 4), repeat=len(gens)):
        if sum(a * g for a, g in zip(r, gens)) == 0:
            assert span.solve(dict(enumerate(r))) is not None


@settings(max_examples=60)
@given(st.lists(st.lists(st.integers(-4, 4), min_size=3, max_size=3), min_size=1, max_size=4),
       st.lists(st.integers(-2, 2), min_size=4, max_size=4))
def test_span_membership_against_box_search(cols, mult):
    # a target built from the columns is found with an exact witness
    target = [sum(m * c[i] for m, c in zip(mult, cols)) for i in range(3)]
    dcols = [dict(enumerate(c)) for c in cols]
    sol = solve_linear(dcols, dict(enumerate(target)))
    assert sol is not None
    assert [sum(r * c[i] for r, c in zip(sol, cols)) for i in range(3)] == target


def test_span_rejects_non_lattice_point():
    # (1, 0) lies in the rational span of (2, 0) but not in its integer span
    assert solve_linear([{0: 2}], {0: 1}) is None
    assert solve_linear([{0: 2}], {0: 1}, Domain.QQ) == [Fraction(1, 2)]
    r = solve_linear([{0: 4, 1: 6}, {0: 6, 1: 9}], {0: 2, 1: 3})
    assert r is not None and 4 * r[0] + 6 * r[1] == 2 and 6 * r[0] + 9 * r[1] == 3
