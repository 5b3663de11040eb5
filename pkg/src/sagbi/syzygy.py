"""Syzygies over a subalgebra ``A``.

For an SG-basis ``G`` every lt-generating vector ``q`` gives the syzygy
``q - p`` where ``p`` is an SG-representation of ``sum(q_i * g_i)``.  For an
arbitrary list ``H`` the syzygies are pulled back through matrices ``W``
and ``U`` with ``H = W G`` and ``G = U H``: the vectors ``P_j U`` together
with the rows of ``1 - W U`` generate ``Syz_A(H)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from .poly import Polynomial
from .ring import Span
from .sg import (
    IdealPresentation,
    NotVerifiedError,
    LtSyzygyVector,
    SGResult,
    ideal_member,
    lt_syzygy_generators,
    sg_construct,
    si_reduce,
)
from .subalgebra import DEFAULT_MAX_PASSES, AlgebraElement, SubalgebraPresentation

Row = list[AlgebraElement]


@dataclass(frozen=True)
class SyzygyVector:
    coords: tuple[AlgebraElement, ...]

    def apply(self, targets: Sequence[Polynomial]) -> Polynomial:
        acc = targets[0].ring.zero() if targets else None
        for c, t in zip(self.coords, targets):
            acc = acc + c.value * t
        return acc

    def annihilates(self, targets: Sequence[Polynomial]) -> bool:
        return self.apply(targets).is_zero

    @property
    def is_zero(self) -> bool:
        return all(c.is_zero for c in self.coords)

    def replays(self, P: SubalgebraPresentation) -> bool:
        return all(c.replays(P) for c in self.coords)

    def format(self, names: Sequence[str]) -> str:
        return "(" + ", ".join(c.format(names) for c in self.coords) + ")"


def syzygy_from_lt_vector(q: LtSyzygyVector, I: IdealPresentation) -> SyzygyVector:
    """``q - p`` where ``p`` is an SG-representation of ``sum(q_i * g_i)``."""
    e = q.evaluate(I.G)
    red = si_reduce(e.value, I)
    if not red.final.is_zero:
        raise AssertionError(f"verified basis left reductum {red.final}")
    coords = list(q.coords)
    for a, i in red.parts:
        coords[i] = coords[i] - a
    v = SyzygyVector(tuple(coords))
    if not v.annihilates(I.values):
        raise AssertionError("syzygy failed to annihilate the basis")
    return v


def sg_syzygy_generators(I: IdealPresentation) -> list[SyzygyVector]:
    """Generators of ``Syz_A(G)`` for a verified SG-basis ``G``."""
    if not I.sg_verified:
        raise NotVerifiedError("syzygy generators need a verified SG-basis")
    return [syzygy_from_lt_vector(q, I) for q in lt_syzygy_generators(I)]


@dataclass
class BasisMatrices:
    """``H = W G`` and ``G = U H`` over ``A``."""

    W: list[Row]
    U: list[Row]

    def replays(self, H: Sequence[Polynomial], G: Sequence[Polynomial]) -> bool:
        return _matvec(self.W, G) == list(H) and _matvec(self.U, H) == list(G)


def _matvec(M: Sequence[Row], v: Sequence[Polynomial]) -> list[Polynomial]:
    out = []
    for row in M:
        acc = v[0].ring.zero()
        for a, x in zip(row, v):
            acc = acc + a.value * x
        out.append(acc)
    return out


def change_of_basis(H0: Sequence[Polynomial], sg: SGResult) -> BasisMatrices:
    if not sg.completed:
        raise ValueError("change of basis needs a completed SG-basis")
    P = sg.basis.ambient
    G = sg.basis.G
    W = []
    for h in H0:
        if h.is_zero:
            W.append([AlgebraElement.zero(P) for _ in G])
            continue
        rep = ideal_member(h, sg.basis)
        if rep is None:
            raise AssertionError(f"input {h} is not a member of its own SG-basis")
        row = [AlgebraElement.zero(P) for _ in G]
        for a, i in rep.parts:
            row[i] = row[i] + a
        W.append(row)
    U = [list(r) for r in sg.U]
    mats = BasisMatrices(W, U)
    if not mats.replays(H0, [g.value for g in G]):
        raise AssertionError("change-of-basis matrices failed to replay")
    return mats


@dataclass
class SubsetSyzygies:
    status: str
    vectors: list[SyzygyVector]
    matrices: Optional[BasisMatrices]
    sg: SGResult
    basis_syzygies: list[SyzygyVector] = field(default_factory=list)

    @property
    def completed(self) -> bool:
        return self.status == "Completed"


def subset_syzygy_generators(H0: Sequence[Polynomial], ambient: SubalgebraPresentation,
                             max_passes: int = DEFAULT_MAX_PASSES) -> SubsetSyzygies:
    """Generators of ``Syz_A(H0)``; zero vectors are left out."""
    sg = sg_construct(H0, ambient, max_passes)
    if not sg.completed:
        return SubsetSyzygies(sg.status, [], None, sg)
    P = ambient
    n = len(H0)
    mats = change_of_basis(H0, sg)
    base = sg_syzygy_generators(sg.basis)
    out: list[SyzygyVector] = []
    for v in base:
        row = [AlgebraElement.zero(P) for _ in range(n)]
        for c, urow in zip(v.coords, mats.U):
            row = [r + c * u for r, u in zip(row, urow)]
        out.append(SyzygyVector(tuple(row)))
    for k in range(n):
        row = [AlgebraElement.one(P) if j == k else AlgebraElement.zero(P) for j in range(n)]
        for w, urow in zip(mats.W[k], mats.U):
            row = [r - w * u for r, u in zip(row, urow)]
        out.append(SyzygyVector(tuple(row)))
    kept = []
    for v in out:
        if v.is_zero:
            continue
        if not v.annihilates(H0):
            raise AssertionError("emitted vector does not annihilate the input")
        kept.append(v)
    return SubsetSyzygies("Completed", kept, mats, sg, base)


# ---------- bounded module membership ----------


def module_search(target: Sequence[Polynomial], generators: Sequence[Sequence[Polynomial]],
                  P: SubalgebraPresentation, max_degree: int = 8) -> Optional[list[dict]]:
    """Look for ``target = sum(c_j * generators[j])`` with ``c_j`` in ``A``.

    Each ``c_j`` ranges over ``R``-combinations of power products ``F^eta``
    whose leading power product has total degree at most ``max_degree``.
    This is only a semi-decision: ``None`` means no combination was found
    within the bound.  On success the result lists, per generator, the
    coefficient of each ``eta`` used.
    """
    bounds = sorted({d for d in _reachable_degrees(P, max_degree)})
    # iterative deepening: small multipliers are tried first, and the
    # integer echelon stays small when a representation exists early
    for bound in bounds:
        found = _search(target, generators, P, bound)
        if found is not None:
            return found
    return None


def _search(target, generators, P, bound):
    etas = _bounded_exponents(P, bound)
    key = P.ring.key
    columns = []
    labels = []
    for j, u in enumerate(generators):
        for eta in etas:
            f = P.power(eta)
            columns.append([f * x for x in u])
            labels.append((j, eta))
    # leading monomials get the smallest indices, so pivots follow the term order
    cells = {(i, m) for vec in columns + [list(target)] for i, x in enumerate(vec) for m in x.as_dict()}
    order = sorted(cells, key=lambda c: (c[0], key(c[1])), reverse=True)
    index = {c: k for k, c in enumerate(order)}

    def flatten(vec):
        return {index[(i, m)]: c for i, x in enumerate(vec) for m, c in x.as_dict().items()}

    span = Span(P.domain)
    for col in columns:
        span.add(flatten(col))
    sol = span.solve(flatten(target))
    if sol is None:
        return None
    out: list[dict] = [{} for _ in generators]
    for k, c in sol.items():
        if c:
            j, eta = labels[k]
            out[j][eta] = c
    return out


def _reachable_degrees(P: SubalgebraPresentation, max_degree: int) -> list[int]:
    degs = {0}
    for lp in P.lps:
        d = sum(lp)
        grow = set(degs)
        for base in degs:
            k = base + d
            while k <= max_degree:
                grow.add(k)
                k += d
        degs = grow
    return sorted(degs)


def _bounded_exponents(P: SubalgebraPresentation, max_degree: int) -> list[tuple[int, ...]]:
    degs = [sum(lp) for lp in P.lps]
    out = []

    def rec(i, cur, used):
        if i == len(degs):
            out.append(tuple(cur))
            return
        k = 0
        while used + k * degs[i] <= max_degree:
            rec(i + 1, cur + [k], used + k * degs[i])
            k += 1

    rec(0, [], 0)
    return out
