import random

import pytest

from sagbi import Domain, PolyRing, SubalgebraPresentation, sagbi_verify


def random_poly(rng: random.Random, ring, max_deg=3, max_terms=3, max_coeff=5):
    n = ring.nvars
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        d = rng.randint(0, max_deg)
        m = [0] * n
        for _ in range(d):
            m[rng.randrange(n)] += 1
        c = rng.randint(-max_coeff, max_coeff)
        if c:
            terms[tuple(m)] = c
    return ring.from_dict(terms)


def random_nonconstant(rng, ring, **kw):
    while True:
        p = random_poly(rng, ring, **kw)
        if not p.is_constant:
            return p


@pytest.fixture(scope="session")
def zxy():
    return PolyRing.make(["x", "y"], "deglex", Domain.ZZ)


@pytest.fixture(scope="session")
def algebra(zxy):
    """The subalgebra generated by 2x^2 + xy, 2y^2, 3xy (already a SAGBI basis)."""
    x, y = zxy.gens()
    v = sagbi_verify(SubalgebraPresentation([2 * x**2 + x * y, 2 * y**2, 3 * x * y]))
    assert v.verified
    return v.presentation
