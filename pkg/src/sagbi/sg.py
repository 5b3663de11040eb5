"""SAGBI-Groebner bases of ideals of a subalgebra ``A`` with a verified SAGBI basis.

Ideal elements are :class:`AlgebraElement` values, so every coefficient
that has to live in ``A`` comes with a tag polynomial proving it.  The
S-polynomial analogue is ``sum(q_i * g_i)`` for a vector ``q`` whose
leading-term vector is a homogeneous syzygy of ``Lt G`` over ``R[Lt A]``;
such vectors are obtained from syzygies over the tag ring, see
:func:`sagbi.grobner.monomial_algebra_syzygies`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from . import diophantine
from .grobner import monomial_algebra_syzygies
from .poly import Monomial, Polynomial, mono_mul, tx_degree_of_monomial, tx_homogeneous_components
from .ring import ideal_membership_witness, solve_linear
from .subalgebra import (
    DEFAULT_MAX_PASSES,
    AlgebraElement,
    NotInSubalgebraError,
    NotVerifiedError,
    SubalgebraPresentation,
    _next_term,
    s_reduce,
    subalgebra_member,
)


@dataclass
class IdealPresentation:
    G: tuple[AlgebraElement, ...]
    ambient: SubalgebraPresentation
    sg_verified: bool = False

    def __post_init__(self):
        if not self.ambient.sagbi_verified:
            raise NotVerifiedError("the ambient SAGBI basis must be verified")
        self.G = tuple(self.G)
        if any(g.is_zero for g in self.G):
            raise ValueError("ideal generators must be nonzero")

    @classmethod
    def from_polynomials(cls, polys: Sequence[Polynomial], ambient: SubalgebraPresentation
                         ) -> "IdealPresentation":
        return cls(tuple(AlgebraElement.from_polynomial(p, ambient) for p in polys), ambient)

    @property
    def values(self) -> list[Polynomial]:
        return [g.value for g in self.G]

    def atom(self, i: int, eta: Monomial) -> Polynomial:
        """``F^eta * g_i``, cached while ``G`` is unchanged."""
        cache = self.__dict__.get("_atoms")
        if cache is None or cache[0] is not self.G:
            cache = self.__dict__["_atoms"] = (self.G, {})
        prod = cache[1].get((i, eta))
        if prod is None:
            prod = cache[1][(i, eta)] = self.ambient.power(eta) * self.G[i].value
        return prod


@dataclass
class SIReduction:
    start: Polynomial
    final: Polynomial
    parts: list[tuple[AlgebraElement, int]]

    def __iter__(self):
        # unpacks as (final, parts)
        return iter((self.final, self.parts))

    def replays(self, G: Sequence[AlgebraElement]) -> bool:
        total = self.final
        for a, i in self.parts:
            total = total + a.value * G[i].value
        return total == self.start


def si_reduce(h: Polynomial, I: IdealPresentation) -> SIReduction:
    """Reduce ``h`` via ``G`` to a final si-reductum.

    A term ``c*X^alpha`` is eliminated by ``sum(r * F^eta * g)`` over all
    pairs ``(g, eta)`` with ``X^alpha == lp(g) * lp(F^eta)``, as soon as ``c``
    lies in the ideal of ``R`` generated by the products ``lc(g) * lc(F^eta)``.
    """
    P = I.ambient
    key = P.ring.key
    p = h.as_dict()
    reps: dict[int, dict] = {}
    below = None
    while True:
        m = _next_term(p, key, below)
        if m is None:
            break
        below = key(m)
        atoms = []
        for i, g in enumerate(I.G):
            for eta in diophantine.quotient_memberships(m, g.value.lp, P.lps):
                atoms.append((i, eta, g.value.lc * P.lc_power(eta)))
        if not atoms:
            continue
        w = ideal_membership_witness(p[m], [a[2] for a in atoms], P.domain)
        if w is None:
            continue
        for r, (i, eta, _) in zip(w, atoms):
            if not r:
                continue
            for k, a in I.atom(i, eta).as_dict().items():
                v = p.get(k, 0) - r * a
                if v:
                    p[k] = v
                else:
                    p.pop(k, None)
            rep = reps.setdefault(i, {})
            v = rep.get(eta, 0) + r
            if v:
                rep[eta] = v
            else:
                rep.pop(eta, None)
        assert m not in p
    parts = []
    for i in sorted(reps):
        rep = P.tags.from_dict(reps[i])
        if not rep.is_zero:
            parts.append((AlgebraElement.of(rep, P), i))
    return SIReduction(h, Polynomial(P.ring, p), parts)


# ---------- lt-syzygies ----------


def lt_lift(g: Polynomial, P: SubalgebraPresentation) -> Polynomial:
    """Homogeneous tag polynomial ``s`` with ``s(Lt F) == lt(g)``."""
    sols = P.factorizations(g.lp)
    w = ideal_membership_witness(g.lc, [P.lc_power(e) for e in sols], P.domain) if sols else None
    if w is None:
        raise NotInSubalgebraError(g, s_reduce(g, P).final)
    return P.tags.from_dict({e: r for r, e in zip(w, sols) if r})


@dataclass(frozen=True)
class LtSyzygyVector:
    """Coordinates in ``A`` whose leading terms form a homogeneous syzygy of ``Lt G``."""

    coords: tuple[AlgebraElement, ...]
    degree: Monomial

    def lt_vector(self) -> tuple[Polynomial, ...]:
        return tuple(c.value.lt for c in self.coords)

    def evaluate(self, G: Sequence[AlgebraElement]) -> AlgebraElement:
        acc = None
        for q, g in zip(self.coords, G):
            term = q * g
            acc = term if acc is None else acc + term
        return acc

    def check(self, G: Sequence[AlgebraElement]) -> bool:
        """Leading terms cancel and every nonzero product sits at ``degree``."""
        ring = G[0].value.ring
        acc = ring.zero()
        for q, g in zip(self.coords, G):
            if q.is_zero:
                continue
            t = q.value.lt * g.value.lt
            if t.lp != self.degree:
                return False
            acc = acc + t
        return acc.is_zero


def lt_syzygy_generators(I: IdealPresentation) -> list[LtSyzygyVector]:
    """An lt-generating set for the homogeneous lt-syzygies of ``G``."""
    P = I.ambient
    G = I.G
    if len(G) < 1 or not P.F:
        return []
    lifts = [lt_lift(g.value, P) for g in G]
    raw = monomial_algebra_syzygies(P.F, lifts)
    lpg = [g.value.lp for g in G]
    key = P.ring.key
    out: list[LtSyzygyVector] = []
    seen = set()
    for vec in raw:
        by_degree: dict[Monomial, dict[int, Polynomial]] = {}
        for i, coord in enumerate(vec):
            if coord.is_zero:
                continue
            for comp in tx_homogeneous_components(coord, P.F):
                d = mono_mul(tx_degree_of_monomial(comp.lp, P.lps), lpg[i])
                by_degree.setdefault(d, {})[i] = comp
        for d in sorted(by_degree, key=key, reverse=True):
            comps = by_degree[d]
            coords = []
            for i in range(len(G)):
                c = comps.get(i)
                # keep a component only if its leading-term image survives
                if c is None or P.lt_evaluate(c).is_zero:
                    coords.append(AlgebraElement.zero(P))
                else:
                    coords.append(AlgebraElement.of(c, P))
            if all(c.is_zero for c in coords):
                continue
            sig = tuple(c.rep for c in coords)
            if sig in seen:
                continue
            seen.add(sig)
            v = LtSyzygyVector(tuple(coords), d)
            assert v.check(G), "lt-syzygy invariant violated"
            out.append(v)
    return out


# ---------- construction, verification, membership ----------


def evaluate_syzygies(I: IdealPresentation, Q: Sequence[LtSyzygyVector]
                      ) -> list[tuple[AlgebraElement, SIReduction]]:
    """``sum(q_i * g_i)`` for each vector in ``Q``, with its si-reduction."""
    out = []
    for q in Q:
        e = q.evaluate(I.G)
        out.append((e, si_reduce(e.value, I)))
    return out


@dataclass
class SGPass:
    number: int
    syzygies: list[LtSyzygyVector]
    evaluations: list[Polynomial]
    reducta: list[Polynomial]


@dataclass
class SGResult:
    status: str
    basis: IdealPresentation
    inputs: list[Polynomial]
    U: list[list[AlgebraElement]]
    passes: int
    trail: list[SGPass] = field(default_factory=list)

    @property
    def completed(self) -> bool:
        return self.status == "Completed"

    def U_replays(self) -> bool:
        for row, g in zip(self.U, self.basis.G):
            acc = g.value.ring.zero()
            for a, h in zip(row, self.inputs):
                acc = acc + a.value * h
            if acc != g.value:
                return False
        return True


def _combine_rows(P, coeffs: Sequence[AlgebraElement], rows: Sequence[Sequence[AlgebraElement]],
                  width: int) -> list[AlgebraElement]:
    out = [AlgebraElement.zero(P) for _ in range(width)]
    for c, row in zip(coeffs, rows):
        if c.is_zero and c.rep.is_zero:
            continue
        out = [o + c * r for o, r in zip(out, row)]
    return out


def sg_construct(G0: Sequence[Polynomial], ambient: SubalgebraPresentation,
                 max_passes: int = DEFAULT_MAX_PASSES) -> SGResult:
    """Complete ``G0`` to an SG-basis of the ideal it generates in ``A``.

    ``U`` rows express every basis element over ``G0`` with coefficients in
    ``A``.  Zero inputs are skipped (their ``U`` column stays unused).
    """
    if max_passes < 1:
        raise ValueError("max_passes must be at least 1")
    if not ambient.sagbi_verified:
        raise NotVerifiedError("the ambient SAGBI basis must be verified")
    P = ambient
    width = len(G0)
    H: list[AlgebraElement] = []
    U: list[list[AlgebraElement]] = []
    for j, g in enumerate(G0):
        elem = AlgebraElement.from_polynomial(g, P)
        if elem.is_zero:
            continue
        H.append(elem)
        U.append([AlgebraElement.one(P) if k == j else AlgebraElement.zero(P)
                  for k in range(width)])
    trail: list[SGPass] = []
    for n in range(1, max_passes + 1):
        I = IdealPresentation(tuple(H), P)
        Q = lt_syzygy_generators(I) if H else []
        evaluations = []
        new_elems: list[AlgebraElement] = []
        new_rows: list[list[AlgebraElement]] = []
        for q, (e, red) in zip(Q, evaluate_syzygies(I, Q)):
            evaluations.append(e.value)
            if red.final.is_zero:
                continue
            coeffs = list(q.coords)
            rep = e.rep
            for a, i in red.parts:
                coeffs[i] = coeffs[i] - a
                rep = rep - a.rep * H[i].rep
            elem = AlgebraElement(rep, red.final)
            row = _combine_rows(P, coeffs, U, width)
            if red.final.lc < 0:
                elem, row = -elem, [-r for r in row]
            if any(x.value == elem.value for x in H + new_elems):
                continue
            new_elems.append(elem)
            new_rows.append(row)
        trail.append(SGPass(n, Q, evaluations, [x.value for x in new_elems]))
        if not new_elems:
            basis = IdealPresentation(tuple(H), P, sg_verified=True)
            return SGResult("Completed", basis, list(G0), U, n, trail)
        H += new_elems
        U += new_rows
    return SGResult("IterationCapReached", IdealPresentation(tuple(H), P), list(G0), U,
                    max_passes, trail)


@dataclass
class SGVerification:
    verified: bool
    failing: Optional[LtSyzygyVector] = None
    evaluation: Optional[Polynomial] = None
    reductum: Optional[Polynomial] = None

    def __bool__(self):
        return self.verified


def sg_verify(I: IdealPresentation) -> SGVerification:
    """Every lt-generating vector's evaluation must si-reduce to 0."""
    for q in lt_syzygy_generators(I):
        e = q.evaluate(I.G).value
        r = si_reduce(e, I).final
        if not r.is_zero:
            return SGVerification(False, q, e, r)
    I.sg_verified = True
    return SGVerification(True)


@dataclass
class SGRepresentation:
    element: Polynomial
    parts: list[tuple[AlgebraElement, int]]

    def replays(self, G: Sequence[AlgebraElement]) -> bool:
        acc = self.element.ring.zero()
        for a, i in self.parts:
            acc = acc + a.value * G[i].value
        return acc == self.element

    def height(self, G: Sequence[AlgebraElement]) -> Optional[Monomial]:
        key = self.element.ring.key
        lps = [(a.value * G[i].value).lp for a, i in self.parts if not a.is_zero]
        return max(lps, key=key) if lps else None

    def satisfies_height_law(self, G: Sequence[AlgebraElement]) -> bool:
        return self.height(G) == self.element.lp


def ideal_member(a: Polynomial, I: IdealPresentation) -> Optional[SGRepresentation]:
    """An SG-representation of ``a`` if ``a`` lies in the ideal, else ``None``."""
    if not I.sg_verified:
        raise NotVerifiedError("ideal membership needs a verified SG-basis")
    if subalgebra_member(a, I.ambient) is None:
        raise NotInSubalgebraError(a, s_reduce(a, I.ambient).final)
    red = si_reduce(a, I)
    if not red.final.is_zero:
        return None
    return SGRepresentation(a, red.parts)


# ---------- module membership over R[Lt A] ----------


def lt_module_contains(generators: Sequence[Sequence[Polynomial]], target: Sequence[Polynomial],
                       P: SubalgebraPresentation) -> bool:
    """Decide whether ``target`` lies in the ``R[Lt A]``-module spanned by ``generators``.

    All vectors have term coordinates and are homogeneous, i.e. their
    nonzero coordinates times the matching ``lt(g_i)`` share one monomial.
    Each coordinate ``i`` of a vector of degree ``t`` then sits at a fixed
    monomial, so membership at degree ``t`` is an exact linear system over
    ``R`` whose columns are ``lt(F^eta) * u`` for the generators ``u``.
    Vectors are passed with the ``lp(g_i)`` already multiplied in, i.e. as
    ``(coord_i * lt(g_i))_i``; zero coordinates are allowed.
    """
    t = _vector_degree(target)
    if t is None:
        return True
    cols = []
    for u in generators:
        d = _vector_degree(u)
        if d is None:
            continue
        rest = tuple(a - b for a, b in zip(t, d))
        if min(rest) < 0:
            continue
        for eta in diophantine.solve(P.lps, rest):
            c = P.lc_power(eta)
            cols.append({i: c * x.lc for i, x in enumerate(u) if not x.is_zero})
    tgt = {i: x.lc for i, x in enumerate(target) if not x.is_zero}
    return solve_linear(cols, tgt, P.domain) is not None


def _vector_degree(v: Sequence[Polynomial]) -> Optional[Monomial]:
    d = None
    for x in v:
        if x.is_zero:
            continue
        if len(x) != 1:
            raise ValueError("lt-vectors must have term coordinates")
        if d is None:
            d = x.lp
        elif x.lp != d:
            raise ValueError("vector is not homogeneous")
    return d


def weighted_lt_vector(v: LtSyzygyVector | Sequence[AlgebraElement],
                       G: Sequence[AlgebraElement]) -> tuple[Polynomial, ...]:
    """``(lt(q_i) * lt(g_i))_i``, the form :func:`lt_module_contains` expects."""
    coords = v.coords if isinstance(v, LtSyzygyVector) else v
    return tuple(q.value.lt * g.value.lt for q, g in zip(coords, G))
