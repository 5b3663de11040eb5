"""SAGBI bases: s-reduction, the completion loop, verification, membership.

A subalgebra ``A = R[F]`` is presented by an ordered list ``F`` of distinct
nonconstant polynomials.  Power products ``F^e`` are indexed by exponent
tuples ``e`` and are best thought of as monomials of the tag ring
``R[y_1..y_m]``; every certificate below is, in the end, a tag polynomial
whose evaluation at ``F`` replays the claimed identity.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from . import diophantine
from .grobner import evaluation_kernel, tag_ring
from .poly import Monomial, PolyRing, Polynomial, format_poly, power_product, tx_homogeneous_components
from .ring import Coeff, ideal_membership_witness

DEFAULT_MAX_PASSES = 16


class NotVerifiedError(ValueError):
    """Raised when an operation needs a verified SAGBI (or SG) basis."""


class NotInSubalgebraError(ValueError):
    def __init__(self, poly: Polynomial, reductum: Polynomial):
        super().__init__(f"{poly} is not in the subalgebra (final s-reductum {reductum})")
        self.poly = poly
        self.reductum = reductum


class SubalgebraPresentation:
    """``A = R[F]`` for an ordered list ``F``.

    Constant inputs are dropped (``R`` lies in every subalgebra) and kept in
    ``constants``; repeated inputs are dropped too, since the completion
    theory needs pairwise distinct generators.
    """

    def __init__(self, F: Sequence[Polynomial], sagbi_verified: bool = False,
                 constants: Sequence[Polynomial] = (), ring: Optional[PolyRing] = None):
        kept: list[Polynomial] = []
        dropped = list(constants)
        for f in F:
            if f.is_constant:
                if not f.is_zero:
                    dropped.append(f)
            elif f not in kept:
                kept.append(f)
        if ring is None:
            if not F:
                raise ValueError("need a ring for an empty generator list")
            ring = F[0].ring
        self.ring = ring
        self.F: tuple[Polynomial, ...] = tuple(kept)
        self.constants: tuple[Polynomial, ...] = tuple(dropped)
        self.sagbi_verified = sagbi_verified
        self.tags = tag_ring(len(kept), ring.domain)
        self.lps: tuple[Monomial, ...] = tuple(f.lp for f in kept)
        self._powers: dict = {}
        self._lc_powers: dict = {}

    @property
    def domain(self):
        return self.ring.domain

    def __len__(self):
        return len(self.F)

    def names(self) -> list[str]:
        return [f"f{i + 1}" for i in range(len(self.F))]

    def extended(self, new: Sequence[Polynomial]) -> "SubalgebraPresentation":
        return SubalgebraPresentation(list(self.F) + list(new), False, self.constants, self.ring)

    def verified(self) -> "SubalgebraPresentation":
        out = SubalgebraPresentation(self.F, True, self.constants, self.ring)
        out._powers = self._powers
        return out

    def power(self, e: Monomial) -> Polynomial:
        """``F^e``."""
        if not self.F:
            return self.ring.one()
        return power_product(self.F, tuple(e), self._powers)

    def lc_power(self, e: Monomial) -> Coeff:
        c = self._lc_powers.get(e)
        if c is None:
            c = 1
            for f, k in zip(self.F, e):
                if k:
                    c *= f.lc ** k
            self._lc_powers[e] = c
        return c

    def factorizations(self, m: Monomial) -> list[Monomial]:
        """All ``e`` with ``lp(F^e) == m``."""
        if not self.F:
            return [()] if not any(m) else []
        return diophantine.solve(self.lps, m)

    def evaluate(self, P: Polynomial) -> Polynomial:
        """``P(F)`` for a tag polynomial ``P``."""
        if P.is_zero:
            return self.ring.zero()
        return P.evaluate(self.F, self._powers) if self.F else self.ring.const(P.lc)

    def lt_evaluate(self, P: Polynomial) -> Polynomial:
        """``P(Lt F)``."""
        acc = self.ring.zero()
        for e, c in P.terms():
            m = tuple(sum(k * lp[j] for k, lp in zip(e, self.lps)) for j in range(self.ring.nvars))
            acc = acc + self.ring.term(m, c * self.lc_power(e))
        return acc


@dataclass(frozen=True)
class ReductionStep:
    """One elimination: the term at ``monomial`` is removed by ``sum(r * F^e)``."""

    monomial: Monomial
    coefficient: Coeff
    atoms: tuple[tuple[Coeff, Monomial], ...]


@dataclass(frozen=True)
class SReductionCertificate:
    start: Polynomial
    steps: tuple[ReductionStep, ...]
    final: Polynomial

    def tag_polynomial(self, tags: PolyRing) -> Polynomial:
        """``sum(r * Y^e)`` over all steps: ``start - final`` evaluated at ``F``."""
        acc: dict = {}
        for step in self.steps:
            for r, e in step.atoms:
                v = acc.get(e, 0) + r
                if v:
                    acc[e] = v
                else:
                    acc.pop(e, None)
        return tags.from_dict(acc)

    def replays(self, P: SubalgebraPresentation) -> bool:
        total = self.final
        for step in self.steps:
            for r, e in step.atoms:
                total = total + P.power(e).scale(r)
        return total == self.start

    def height(self) -> Optional[Monomial]:
        """Largest eliminated monomial; every atom has ``lp(F^e)`` equal to its step's."""
        return self.steps[0].monomial if self.steps else None


def _next_term(p: dict, key, below) -> Optional[Monomial]:
    best = None
    bk = None
    for m in p:
        k = key(m)
        if below is not None and k >= below:
            continue
        if bk is None or k > bk:
            best, bk = m, k
    return best


def s_reduce(g: Polynomial, P: SubalgebraPresentation) -> SReductionCertificate:
    """Reduce ``g`` via ``F`` to a final s-reductum, recording every step.

    Terms are visited from the top; a term is eliminated when its monomial is
    ``lp(F^e)`` for some ``e`` and its coefficient lies in the ideal of ``R``
    generated by the matching ``lc(F^e)``.  Elimination only disturbs
    smaller terms, so one descending sweep reaches a final reductum.
    """
    key = P.ring.key
    p = g.as_dict()
    steps: list[ReductionStep] = []
    below = None
    while True:
        m = _next_term(p, key, below)
        if m is None:
            break
        below = key(m)
        c = p[m]
        sols = P.factorizations(m)
        if not sols:
            continue
        w = ideal_membership_witness(c, [P.lc_power(e) for e in sols], P.domain)
        if w is None:
            continue
        atoms = tuple((r, e) for r, e in zip(w, sols) if r)
        for r, e in atoms:
            for k, a in P.power(e).as_dict().items():
                v = p.get(k, 0) - r * a
                if v:
                    p[k] = v
                else:
                    p.pop(k, None)
        assert m not in p
        steps.append(ReductionStep(m, c, atoms))
    return SReductionCertificate(g, tuple(steps), Polynomial(P.ring, p))


# ---------- construction and verification ----------


def kernel_generators(P: SubalgebraPresentation) -> list[Polynomial]:
    """Homogeneous generators of the relation ideal of ``Lt F`` in the tag ring."""
    if not P.F:
        return []
    kernel = evaluation_kernel([f.lt for f in P.F], P.tags)
    out = []
    for k in kernel.generators:
        out.extend(tx_homogeneous_components(k, P.F))
    return out


@dataclass
class PassRecord:
    number: int
    kernel: list[Polynomial]
    evaluations: list[Polynomial]
    reducta: list[Polynomial]


@dataclass
class SagbiResult:
    status: str  # "Completed" or "IterationCapReached"
    basis: SubalgebraPresentation
    passes: int
    trail: list[PassRecord] = field(default_factory=list)

    @property
    def completed(self) -> bool:
        return self.status == "Completed"


def _canonical_sign(p: Polynomial) -> Polynomial:
    return -p if p.lc < 0 else p


def sagbi_construct(F0: Sequence[Polynomial], max_passes: int = DEFAULT_MAX_PASSES,
                    ring: Optional[PolyRing] = None) -> SagbiResult:
    """Complete ``F0`` to a SAGBI basis, adjoining final s-reducta of relations.

    The loop need not terminate, so it stops after ``max_passes`` passes and
    reports ``IterationCapReached`` with the partial basis.
    """
    if max_passes < 1:
        raise ValueError("max_passes must be at least 1")
    P = SubalgebraPresentation(F0, ring=ring)
    trail: list[PassRecord] = []
    for n in range(1, max_passes + 1):
        kernel = kernel_generators(P)
        evaluations = [P.evaluate(k) for k in kernel]
        new: list[Polynomial] = []
        for ev in evaluations:
            r = s_reduce(ev, P).final
            if r.is_zero:
                continue
            r = _canonical_sign(r)
            if r not in new and r not in P.F:
                new.append(r)
        trail.append(PassRecord(n, kernel, evaluations, new))
        if not new:
            return SagbiResult("Completed", P.verified(), n, trail)
        P = P.extended(new)
    return SagbiResult("IterationCapReached", P, max_passes, trail)


@dataclass
class SagbiVerification:
    verified: bool
    presentation: SubalgebraPresentation
    failing: Optional[Polynomial] = None
    reductum: Optional[Polynomial] = None

    def __bool__(self):
        return self.verified


def sagbi_verify(P: SubalgebraPresentation) -> SagbiVerification:
    """Check that every relation of ``Lt F``, evaluated at ``F``, s-reduces to 0."""
    for k in kernel_generators(P):
        r = s_reduce(P.evaluate(k), P).final
        if not r.is_zero:
            return SagbiVerification(False, P, k, r)
    return SagbiVerification(True, P.verified())


def subalgebra_member(p: Polynomial, P: SubalgebraPresentation
                      ) -> Optional[SReductionCertificate]:
    """A SAGBI representation of ``p`` if ``p`` lies in ``A``, else ``None``."""
    if not P.sagbi_verified:
        raise NotVerifiedError("membership is only decided by a verified SAGBI basis")
    cert = s_reduce(p, P)
    return cert if cert.final.is_zero else None


# ---------- elements of A with their representation ----------


@dataclass(frozen=True)
class AlgebraElement:
    """A value in ``A`` together with a tag polynomial ``rep`` with ``rep(F) == value``."""

    rep: Polynomial
    value: Polynomial

    @classmethod
    def of(cls, rep: Polynomial, P: SubalgebraPresentation) -> "AlgebraElement":
        return cls(rep, P.evaluate(rep))

    @classmethod
    def zero(cls, P: SubalgebraPresentation) -> "AlgebraElement":
        return cls(P.tags.zero(), P.ring.zero())

    @classmethod
    def one(cls, P: SubalgebraPresentation) -> "AlgebraElement":
        return cls(P.tags.one(), P.ring.one())

    @classmethod
    def from_polynomial(cls, p: Polynomial, P: SubalgebraPresentation) -> "AlgebraElement":
        cert = subalgebra_member(p, P)
        if cert is None:
            raise NotInSubalgebraError(p, s_reduce(p, P).final)
        return cls(cert.tag_polynomial(P.tags), p)

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        return AlgebraElement(self.rep + other.rep, self.value + other.value)

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        return AlgebraElement(self.rep - other.rep, self.value - other.value)

    def __neg__(self) -> "AlgebraElement":
        return AlgebraElement(-self.rep, -self.value)

    def __mul__(self, other) -> "AlgebraElement":
        if isinstance(other, AlgebraElement):
            return AlgebraElement(self.rep * other.rep, self.value * other.value)
        return AlgebraElement(self.rep * other, self.value * other)

    __rmul__ = __mul__

    @property
    def is_zero(self) -> bool:
        return self.value.is_zero

    def replays(self, P: SubalgebraPresentation) -> bool:
        return P.evaluate(self.rep) == self.value

    def format(self, names: Sequence[str]) -> str:
        return format_poly(self.rep, names)
