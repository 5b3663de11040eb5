import pytest

from sagbi import (
    AlgebraElement,
    IdealPresentation,
    NotVerifiedError,
    sg_construct,
    sg_syzygy_generators,
    subset_syzygy_generators,
)
from sagbi.sg import LtSyzygyVector
from sagbi.syzygy import change_of_basis, module_search, syzygy_from_lt_vector


@pytest.fixture(scope="module")
def H(zxy):
    x, y = zxy.gens()
    return [4 * x**2 * y**2 + 2 * x * y**3, 10 * x**2 * y**4 - 4 * x * y**5, 36 * x * y**5]


@pytest.fixture(scope="module")
def sg_basis(algebra, zxy):
    x, y = zxy.gens()
    res = sg_construct([4 * x**2 * y**2 + 2 * x * y**3, 18 * x**2 * y**4], algebra)
    assert res.completed
    return res.basis


def test_syzygy_from_lt_vector(algebra, sg_basis):
    y1, y2, y3 = algebra.tags.gens()
    T = algebra.tags
    q = LtSyzygyVector(tuple(AlgebraElement.of(t, algebra) for t in (-9 * y2, T.const(4), T.zero())),
                       (2, 4))
    assert q.check(sg_basis.G)
    v = syzygy_from_lt_vector(q, sg_basis)
    assert v.format(algebra.names()) == "(-9*f2, 4, 1)"
    q0 = LtSyzygyVector(tuple(AlgebraElement.of(t, algebra) for t in (y3**2, -y1, T.zero())),
                        (4, 4))
    assert syzygy_from_lt_vector(q0, sg_basis).coords == q0.coords


def test_basis_syzygies_annihilate(sg_basis):
    syz = sg_syzygy_generators(sg_basis)
    assert syz
    for v in syz:
        assert v.annihilates(sg_basis.values)
    with pytest.raises(NotVerifiedError):
        sg_syzygy_generators(IdealPresentation(sg_basis.G, sg_basis.ambient))


def test_subset_syzygies(algebra, H):
    res = subset_syzygy_generators(H, algebra)
    assert res.completed
    for v in res.vectors:
        assert v.annihilates(H) and v.replays(algebra)
    G = [g.value for g in res.sg.basis.G]
    assert res.matrices.replays(H, G)
    f1, f2, f3 = algebra.F
    R = H[0].ring
    reference = [(f3**2 - f1 * f2, -f1, R.zero()), (3 * f2 * f3, R.zero(), -f1),
                 (3 * f2**2, 3 * f2, -f3), (-5 * f2, R.const(4), R.one())]
    gens = [[c.value for c in v.coords] for v in res.vectors]
    for vec in reference:
        assert sum((a * h for a, h in zip(vec, H)), R.zero()).is_zero
        assert module_search(list(vec), gens, algebra) is not None


def test_change_of_basis_identity_when_nothing_adjoined(algebra, H):
    sg = sg_construct(H, algebra)
    m = change_of_basis(H, sg)
    for i, (wrow, urow) in enumerate(zip(m.W, m.U)):
        for j, (w, u) in enumerate(zip(wrow, urow)):
            expect = 1 if i == j else 0
            assert w.value == H[0].ring.const(expect) and u.value == w.value


def test_change_of_basis_with_adjunction(algebra, sg_basis, zxy):
    x, y = zxy.gens()
    G0 = [4 * x**2 * y**2 + 2 * x * y**3, 18 * x**2 * y**4]
    sg = sg_construct(G0, algebra)
    m = change_of_basis(G0, sg)
    assert len(m.U) == 3 and len(m.W) == 2
    assert m.replays(G0, [g.value for g in sg.basis.G])


def test_single_element_has_no_syzygies(algebra, H):
    res = subset_syzygy_generators(H[:1], algebra)
    assert res.completed and res.vectors == []


def test_repeated_element(algebra, H):
    res = subset_syzygy_generators([H[0], H[0]], algebra)
    gens = [[c.value for c in v.coords] for v in res.vectors]
    R = H[0].ring
    assert module_search([R.one(), -R.one()], gens, algebra) is not None


def test_module_search_reports_failure(algebra, H):
    R = H[0].ring
    gens = [[c.value for c in v.coords] for v in subset_syzygy_generators(H, algebra).vectors]
    # (1, 0, 0) is not a syzygy, so no combination can produce it
    assert module_search([R.one(), R.zero(), R.zero()], gens, algebra, max_degree=4) is None
