import itertools
import random

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from sagbi import (
    AlgebraElement,
    Domain,
    NotInSubalgebraError,
    NotVerifiedError,
    PolyRing,
    SubalgebraPresentation,
    s_reduce,
    sagbi_construct,
    sagbi_verify,
    subalgebra_member,
)
from sagbi.poly import format_poly

from conftest import random_nonconstant


def three_gens(R):
    x, y = R.gens()
    return [4 * x**2 * y**2 + 2 * x * y**3 + 3 * x * y, 2 * x**2 + x * y, 2 * y**2]


def test_completion_adjoins_one_element(zxy):
    res = sagbi_construct(three_gens(zxy))
    assert res.status == "Completed" and res.passes == 2
    assert [format_poly(r) for r in res.trail[0].reducta] == ["3*x*y"]
    assert res.trail[1].reducta == []
    assert sagbi_verify(res.basis).verified


def test_verification_failure_names_reductum(zxy):
    v = sagbi_verify(SubalgebraPresentation(three_gens(zxy)))
    assert not v.verified
    assert format_poly(v.reductum) in ("3*x*y", "-3*x*y")


def test_s_reduction_certificate(zxy):
    f1, f2, f3 = three_gens(zxy)
    P = SubalgebraPresentation([f2, f3])
    cert = s_reduce(f1, P)
    assert format_poly(cert.final) == "3*x*y"
    assert cert.replays(P)
    assert cert.height() == (2, 2)
    assert format_poly(cert.tag_polynomial(P.tags), P.names()) == "f1*f2"


def test_constants_always_reduce(zxy):
    x, y = zxy.gens()
    P = SubalgebraPresentation([x**2, x**2 + 1, zxy.const(5)])
    assert P.F == (x**2, x**2 + 1) and P.constants == (zxy.const(5),)
    res = sagbi_construct([x**2, x**2 + 1])
    assert res.completed and len(res.basis.F) == 2
    assert s_reduce(zxy.const(-7), res.basis).final.is_zero


def test_cap_is_reported(zxy):
    x, y = zxy.gens()
    # x + y, xy, xy^2 has no finite SAGBI basis: x*y^k keeps appearing
    res = sagbi_construct([x + y, x * y, x * y**2], max_passes=2)
    assert res.status == "IterationCapReached" and res.passes == 2
    with pytest.raises(ValueError):
        sagbi_construct([x], max_passes=0)


def test_membership_needs_verified_basis(zxy):
    x, y = zxy.gens()
    with pytest.raises(NotVerifiedError):
        subalgebra_member(x, SubalgebraPresentation([x**2]))


def test_membership_decisions(algebra, zxy):
    x, y = zxy.gens()
    f1, f2, f3 = algebra.F
    member = 3 * f1 * f2 - 2 * f3**3 + 7
    cert = subalgebra_member(member, algebra)
    assert cert is not None and cert.replays(algebra)
    assert subalgebra_member(x, algebra) is None
    # xy^5 has the right shape but its coefficient must be a multiple of 12
    assert subalgebra_member(8 * x * y**5, algebra) is None
    assert subalgebra_member(12 * x * y**5, algebra) is not None


def test_algebra_elements(algebra, zxy):
    f1, f2, f3 = algebra.F
    a = AlgebraElement.from_polynomial(f1 * f2 + 1, algebra)
    b = AlgebraElement.from_polynomial(f3, algebra)
    c = a * b - 3 * b
    assert c.replays(algebra) and c.value == (f1 * f2 + 1) * f3 - 3 * f3
    with pytest.raises(NotInSubalgebraError):
        AlgebraElement.from_polynomial(zxy.gen(0), algebra)


def bounded_member_oracle(p, F, max_exp=3):
    """Rational membership of ``p`` in the span of power products with bounded exponents."""
    syms = sympy.symbols("x y")

    def sym(f):
        return sum((sympy.Rational(c) * syms[0]**m[0] * syms[1]**m[1] for m, c in f.terms()),
                   sympy.Integer(0))

    prods = [sympy.expand(sympy.Mul(*[sym(f)**k for f, k in zip(F, e)]))
             for e in itertools.product(range(max_exp + 1), repeat=len(F))]
    cs = sympy.symbols(f"c0:{len(prods)}")
    expr = sympy.expand(sym(p) - sum(c * q for c, q in zip(cs, prods)))
    eqs = sympy.Poly(expr, *syms).coeffs() if expr != 0 else []
    return bool(sympy.linsolve(eqs, cs)) if eqs else True


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**6))
def test_membership_agrees_with_linear_algebra_over_q(seed):
    rng = random.Random(seed)
    R = PolyRing.make(["x", "y"], "deglex", Domain.QQ)
    F = [random_nonconstant(rng, R, max_deg=2, max_terms=2) for _ in range(2)]
    res = sagbi_construct(F, max_passes=3)
    if not res.completed:
        return
    # products of inputs are members; x^a y^b probes are checked against the oracle
    member = F[0] * F[1] + F[0] ** 2
    assert subalgebra_member(member, res.basis) is not None
    x, y = R.gens()
    for probe in (x, y, x * y, x**2 + y):
        ours = subalgebra_member(probe, res.basis) is not None
        # the oracle is exact for "yes" (bounded search) and the basis decides membership
        if bounded_member_oracle(probe, F):
            assert ours


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_completed_bases_verify_and_replay(seed):
    rng = random.Random(seed)
    R = PolyRing.make(["x", "y"], "deglex", Domain.ZZ)
    F = [random_nonconstant(rng, R) for _ in range(rng.randint(1, 3))]
    res = sagbi_construct(F, max_passes=2)
    for f in F:
        cert = s_reduce(f, res.basis)
        assert cert.replays(res.basis)
        if res.completed and not f.is_constant:
            assert cert.final.is_zero
    if res.completed:
        assert sagbi_verify(res.basis).verified
