"""Buchberger completion over ZZ (strong bases) and QQ, with cofactor tracking.

Over the integers a basis element reduces a term ``c*m`` only when its
leading monomial divides ``m`` *and* its leading coefficient divides ``c``.
Completion therefore needs, for every pair, both the S-polynomial (built
from the lcm of the leading coefficients) and the G-polynomial (the Bezout
combination reaching their gcd).  At the fixpoint every ideal element has a
leading term divisible by a single basis leading term, so normal forms
decide membership.

Each basis element carries its expression over the original inputs.  The
remaining functions are classical applications: kernels of evaluation maps
by tag-variable elimination, intersections via an auxiliary variable,
module syzygies by position-over-term elimination, and the syzygies of a
list of elements of the monomial algebra ``R[Lt F]``.
"""

from __future__ import annotations

import heapq
from operator import add, le, sub
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .poly import (
    BlockOrder,
    Monomial,
    PolyRing,
    Polynomial,
    TermOrder,
    is_tx_homogeneous,
    mono_divides,
    mono_lcm,
)
from .ring import Domain, extended_gcd

Vector = tuple[Polynomial, ...]


@dataclass
class IdealBasis:
    """Generators of an ideal, plus how each one arises from ``inputs``.

    ``cofactors[i][j]`` is the multiplier of ``inputs[j]`` in ``generators[i]``;
    it is ``None`` when the basis was obtained by elimination from a
    different ring.
    """

    generators: list[Polynomial]
    ring: PolyRing
    inputs: list[Polynomial] = field(default_factory=list)
    cofactors: Optional[list[list[Polynomial]]] = None
    groebner: bool = True

    def __len__(self):
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)


# ---------- dict-level helpers ----------


def _addmul(target: dict, src: dict, c, m: Monomial) -> None:
    """``target += c * X^m * src`` in place."""
    if not any(m):
        for k, a in src.items():
            v = target.get(k, 0) + c * a
            if v:
                target[k] = v
            else:
                del target[k]
        return
    for k, a in src.items():
        mk = tuple(map(add, k, m))
        v = target.get(mk, 0) + c * a
        if v:
            target[mk] = v
        else:
            del target[mk]


def _cof_addmul(target: dict, src: dict, c, m: Monomial) -> None:
    for idx, poly in src.items():
        t = target.setdefault(idx, {})
        _addmul(t, poly, c, m)
        if not t:
            del target[idx]


def _cof_addpoly(target: dict, src: dict, q: dict) -> None:
    """``target += q * src`` where ``q`` is a polynomial dict."""
    for m, c in q.items():
        _cof_addmul(target, src, c, m)


class _Completion:
    def __init__(self, ring: PolyRing, positions: Optional[tuple[int, int]] = None,
                 track: bool = True):
        self.ring = ring
        self.track = track
        self.key = ring.key
        self.dom = ring.domain
        self.field = ring.domain.is_field
        self.positions = positions
        self.polys: list[dict] = []
        self.leads: list[tuple[Monomial, object]] = []
        self.cofs: list[dict] = []
        self.active: Optional[list[int]] = None
        # elements whose leading term is divided by a later one: they keep
        # their queued pairs but get no new ones and witness no chains
        self.redundant: set[int] = set()
        self.made: set[tuple[int, int]] = set()

    def _lead(self, p: dict):
        m = max(p, key=self.key)
        return m, p[m]

    def _divisor(self, m: Monomial, c) -> Optional[int]:
        indices = self.active if self.active is not None else range(len(self.leads))
        for j in indices:
            lm, lc = self.leads[j]
            if all(map(le, lm, m)) and (self.field or c % lc == 0):
                return j
        return None

    def reduce(self, p: dict, cof: dict, skip_lead: bool = False,
               full: bool = True) -> tuple[dict, dict]:
        """Reduce ``p``; returns the remainder and its cofactors.

        With ``full=False`` only the leading term is reduced: the loop stops
        at the first irreducible leading term.
        """
        key = self.key
        p = dict(p)
        rem: dict = {}
        quot: dict[int, dict] = {}
        if skip_lead and p:
            m = max(p, key=key)
            rem[m] = p.pop(m)
        while p:
            m = max(p, key=key)
            c = p[m]
            j = self._divisor(m, c)
            if j is None:
                if not full:
                    rem.update(p)
                    break
                rem[m] = c
                del p[m]
                continue
            lm, lc = self.leads[j]
            q = Fraction(c) / lc if self.field else c // lc
            mult = tuple(map(sub, m, lm))
            _addmul(p, self.polys[j], -q, mult)
            if self.track:
                qd = quot.setdefault(j, {})
                qd[mult] = qd.get(mult, 0) + q
        if quot:
            cof = {k: dict(v) for k, v in cof.items()}
            for j, qd in quot.items():
                _cof_addpoly(cof, self.cofs[j], {m: -c for m, c in qd.items() if c})
        return rem, cof

    def normalize(self, p: dict, cof: dict) -> tuple[dict, dict]:
        lc = self._lead(p)[1]
        u = self.dom.normalize_sign(lc)
        if u == 1:
            return p, cof
        p = {m: u * c for m, c in p.items()}
        cof = {k: {m: u * c for m, c in v.items()} for k, v in cof.items()}
        return p, cof

    def add(self, p: dict, cof: dict) -> int:
        p, cof = self.normalize(p, cof)
        self.polys.append(p)
        self.leads.append(self._lead(p))
        self.cofs.append(cof)
        return len(self.polys) - 1

    def _same_position(self, a: Monomial, b: Monomial) -> bool:
        if self.positions is None:
            return True
        s, e = self.positions
        return a[s:e] == b[s:e]

    def critical(self, i: int, j: int, pending: Optional[set] = None) -> list[tuple[dict, dict]]:
        """S-polynomial and, over ZZ, G-polynomial of a pair (with cofactors).

        With ``pending`` given, pairs are skipped by the chain criterion: the
        S-polynomial when another element's leading term divides the lcm
        term and neither of its two pairs with ``i``, ``j`` is pending; the
        G-polynomial when some leading term already divides the gcd term.
        """
        (mi, a), (mj, b) = self.leads[i], self.leads[j]
        L = mono_lcm(mi, mj)
        ti = tuple(x - y for x, y in zip(L, mi))
        tj = tuple(x - y for x, y in zip(L, mj))
        out = []
        if self.field:
            ca, cb = Fraction(1) / a, Fraction(1) / b
            lcm_c = 1
        else:
            g = extended_gcd(a, b)[0]
            ca, cb = b // g, a // g
            lcm_c = abs(a * b) // g
        if pending is None or not self._chain(i, j, L, lcm_c, pending):
            out.append(self._combine(ca, ti, i, -cb, tj, j))
        if not self.field and a % b and b % a:
            if pending is None or not self._covered(L, g):
                _, u, v = extended_gcd(a, b)
                out.append(self._combine(u, ti, i, v, tj, j))
        return out

    def _chain(self, i: int, j: int, L: Monomial, c, pending: set) -> bool:
        for k, (mk, ck) in enumerate(self.leads):
            if k == i or k == j or k in self.redundant:
                continue
            if not all(map(le, mk, L)) or not (self.field or c % ck == 0):
                continue
            ik, jk = (min(i, k), max(i, k)), (min(j, k), max(j, k))
            if ik in pending or jk in pending or ik not in self.made or jk not in self.made:
                continue
            return True
        return False

    def _covered(self, L: Monomial, c) -> bool:
        return any(all(map(le, mk, L)) and c % ck == 0 for mk, ck in self.leads)

    def _combine(self, ca, ti, i, cb, tj, j) -> tuple[dict, dict]:
        p: dict = {}
        _addmul(p, self.polys[i], ca, ti)
        _addmul(p, self.polys[j], cb, tj)
        cof: dict = {}
        if self.track:
            _cof_addmul(cof, self.cofs[i], ca, ti)
            _cof_addmul(cof, self.cofs[j], cb, tj)
        return p, cof

    def run(self, inputs: Sequence[dict]) -> None:
        heap: list = []
        pending: set = set()
        counter = 0

        def push_pairs(k: int) -> None:
            nonlocal counter
            mk, ck = self.leads[k]
            for i in range(k):
                if i in self.redundant:
                    continue
                mi, ci = self.leads[i]
                if not self._same_position(mi, mk):
                    continue
                self.made.add((i, k))
                if self.field and all(x == 0 or y == 0 for x, y in zip(mi, mk)):
                    continue  # product criterion
                heapq.heappush(heap, (self.key(mono_lcm(mi, mk)), counter, i, k))
                pending.add((i, k))
                counter += 1
            for i in range(k):
                mi, ci = self.leads[i]
                if all(map(le, mk, mi)) and (self.field or ci % ck == 0):
                    self.redundant.add(i)

        for idx, f in enumerate(inputs):
            if not f:
                continue
            start = {idx: {self.ring.one_mono: 1}} if self.track else {}
            r, cof = self.reduce(f, start, full=False)
            if r:
                push_pairs(self.add(r, cof))
        while heap:
            _, _, i, j = heapq.heappop(heap)
            pending.discard((i, j))
            for p, cof in self.critical(i, j, pending):
                r, cof = self.reduce(p, cof, full=False)
                if r:
                    push_pairs(self.add(r, cof))

    def minimal_reduced(self) -> list[int]:
        keep: list[int] = []
        n = len(self.polys)
        for j in range(n):
            mj, cj = self.leads[j]
            redundant = False
            for i in range(n):
                if i == j:
                    continue
                mi, ci = self.leads[i]
                if not mono_divides(mi, mj):
                    continue
                if not (self.field or cj % ci == 0):
                    continue
                if (mi, ci) != (mj, cj) or i < j:
                    redundant = True
                    break
            if not redundant:
                keep.append(j)
        self.active = keep
        for j in keep:
            r, cof = self.reduce(self.polys[j], self.cofs[j], skip_lead=True)
            self.polys[j], self.cofs[j] = r, cof
        keep.sort(key=lambda j: self.key(self.leads[j][0]))
        return keep


def groebner_basis(gens: Sequence[Polynomial], ring: Optional[PolyRing] = None,
                   positions: Optional[tuple[int, int]] = None,
                   cofactors: bool = True) -> IdealBasis:
    """Strong (over ZZ) or reduced (over QQ) Groebner basis with cofactors.

    ``positions`` marks a slice of variables that encode module positions:
    every input must be linear in them, and pairs in different positions are
    skipped.
    """
    if ring is None:
        if not gens:
            raise ValueError("need a ring for an empty generator list")
        ring = gens[0].ring
    for g in gens:
        if g.ring != ring:
            raise ValueError("generators from different rings")
    eng = _Completion(ring, positions, track=cofactors)
    eng.run([g.as_dict() for g in gens])
    keep = eng.minimal_reduced()
    out = [Polynomial(ring, eng.polys[j]) for j in keep]
    cof = None
    if cofactors:
        cof = [[Polynomial(ring, eng.cofs[j].get(i, {})) for i in range(len(gens))]
               for j in keep]
    return IdealBasis(out, ring, list(gens), cof, True)


def _engine_for(basis: IdealBasis) -> _Completion:
    eng = _Completion(basis.ring)
    for g in basis.generators:
        eng.polys.append(g.as_dict())
        eng.leads.append(g.terms()[0])
        eng.cofs.append({})
    return eng


def normal_form(p: Polynomial, basis: IdealBasis) -> tuple[Polynomial, list[Polynomial]]:
    """Remainder ``r`` and multipliers ``q`` with ``p - r == sum(q_i * basis_i)``."""
    if p.ring != basis.ring:
        raise ValueError("polynomial and basis live in different rings")
    eng = _engine_for(basis)
    for i in range(len(eng.cofs)):
        eng.cofs[i] = {i: {basis.ring.one_mono: 1}}
    r, cof = eng.reduce(p.as_dict(), {})
    # cof holds -sum(q_i * basis_i) expressed with basis indices
    q = [-Polynomial(basis.ring, cof.get(i, {})) for i in range(len(basis.generators))]
    return Polynomial(basis.ring, r), q


def reduces_to_zero(p: Polynomial, basis: IdealBasis) -> bool:
    return normal_form(p, basis)[0].is_zero


def contains_ideal(big: IdealBasis, gens: Sequence[Polynomial]) -> bool:
    """Every element of ``gens`` lies in the ideal of the Groebner basis ``big``."""
    return all(reduces_to_zero(g, big) for g in gens)


def same_ideal(a: Sequence[Polynomial], b: Sequence[Polynomial],
               ring: Optional[PolyRing] = None) -> bool:
    ring = ring or (a[0].ring if a else b[0].ring)
    return (contains_ideal(groebner_basis(a, ring), b)
            and contains_ideal(groebner_basis(b, ring), a))


def critical_polynomials(basis: IdealBasis) -> list[Polynomial]:
    """All S- and G-polynomials of pairs of basis elements."""
    eng = _engine_for(basis)
    out = []
    for j in range(len(eng.polys)):
        for i in range(j):
            for p, _ in eng.critical(i, j):
                out.append(Polynomial(basis.ring, p))
    return out


# ---------- elimination-based constructions ----------


def tag_ring(m: int, domain: Domain, prefix: str = "y") -> PolyRing:
    """``R[y1..ym]`` under DegRevLex; the ring of tag variables."""
    return PolyRing(tuple(f"{prefix}{i + 1}" for i in range(m)),
                    TermOrder.make("degrevlex", m), domain)


def _joined(first: PolyRing, second: PolyRing, tag: str) -> PolyRing:
    names = tuple(f"{tag}{n}" for n in first.names) + second.names
    return PolyRing(names, BlockOrder((first.order, second.order)), second.domain)


def evaluation_kernel(targets: Sequence[Polynomial],
                      ring: Optional[PolyRing] = None) -> IdealBasis:
    """Kernel of ``R[Y] -> R[X]``, ``y_i -> targets[i]``, as a basis in ``R[Y]``.

    Eliminates ``X`` from ``<y_i - targets[i]>`` under a block order with the
    ``X`` block first.
    """
    if not targets:
        raise ValueError("need at least one target")
    xring = targets[0].ring
    m = len(targets)
    yring = ring or tag_ring(m, xring.domain)
    if yring.nvars != m:
        raise ValueError("tag ring size differs from number of targets")
    big = _joined(xring, yring, "#")
    n = xring.nvars
    xpos = list(range(n))
    gens = []
    for i, t in enumerate(targets):
        y = [0] * (n + m)
        y[n + i] = 1
        gens.append(big.term(tuple(y)) - t.embed(big, xpos))
    gb = groebner_basis(gens, big, cofactors=False)
    kernel = []
    for g in gb.generators:
        if all(not any(mono[:n]) for mono in g.as_dict()):
            kernel.append(Polynomial(yring, {mono[n:]: c for mono, c in g.as_dict().items()}))
    return IdealBasis(kernel, yring, [], None, True)


def _intersection_parts(I: Sequence[Polynomial], J: Sequence[Polynomial],
                        ring: PolyRing) -> list[tuple[Polynomial, list[Polynomial]]]:
    """Elements ``w`` generating ``I ∩ J`` and their expressions over ``J``."""
    tring = _joined(PolyRing(("t",), TermOrder.make("lex", 1), ring.domain), ring, "#")
    shift = list(range(1, ring.nvars + 1))
    t = tring.gen(0)
    gens = [t * f.embed(tring, shift) for f in I]
    gens += [(1 - t) * g.embed(tring, shift) for g in J]
    gb = groebner_basis(gens, tring)
    out = []
    for g, cof in zip(gb.generators, gb.cofactors):
        if any(mono[0] for mono in g.as_dict()):
            continue
        w = _drop_first(g, ring)
        over_j = [_at_t_zero(c, ring) for c in cof[len(I):]]
        out.append((w, over_j))
    return out


def _drop_first(p: Polynomial, ring: PolyRing) -> Polynomial:
    return ring.from_dict({m[1:]: c for m, c in p.as_dict().items()})


def _at_t_zero(p: Polynomial, ring: PolyRing) -> Polynomial:
    return ring.from_dict({m[1:]: c for m, c in p.as_dict().items() if m[0] == 0})


def ideal_intersection(I: Sequence[Polynomial], J: Sequence[Polynomial],
                       ring: Optional[PolyRing] = None) -> IdealBasis:
    """Generators of ``I ∩ J``; cofactors express each one over ``J``."""
    ring = ring or (I[0].ring if I else J[0].ring)
    if not I or not J:
        return IdealBasis([], ring, list(J), [], True)
    parts = _intersection_parts(I, J, ring)
    return IdealBasis([w for w, _ in parts], ring, list(J), [c for _, c in parts], True)


def module_syzygies(rows: Sequence[Polynomial], ring: Optional[PolyRing] = None
                    ) -> list[Vector]:
    """Generators of ``{v : sum(v_i * rows_i) == 0}`` over the polynomial ring.

    Computes a basis of the module generated by ``(rows_i, e_i)`` under a
    position-over-term order with the first component on top; the elements
    with vanishing first component generate the syzygies.
    """
    ring = ring or rows[0].ring
    M = len(rows)
    if M == 0:
        return []
    pos_order = TermOrder.make("lex", M + 1)
    ering = PolyRing(tuple(f"#e{i}" for i in range(M + 1)) + tuple(f"#{n}" for n in ring.names),
                     BlockOrder((pos_order, ring.order)), ring.domain)
    shift = list(range(M + 1, M + 1 + ring.nvars))
    gens = []
    for i, s in enumerate(rows):
        e0 = [0] * ering.nvars
        e0[0] = 1
        ei = [0] * ering.nvars
        ei[i + 1] = 1
        gens.append(s.embed(ering, shift).mul_term(tuple(e0)) + ering.term(tuple(ei)))
    gb = groebner_basis(gens, ering, positions=(0, M + 1), cofactors=False)
    out = []
    for g in gb.generators:
        d = g.as_dict()
        if any(mono[0] for mono in d):
            continue
        coords: list[dict] = [{} for _ in range(M)]
        for mono, c in d.items():
            i = mono[1:M + 1].index(1)
            coords[i][mono[M + 1:]] = c
        out.append(tuple(Polynomial(ring, c) for c in coords))
    return out


def apply_vector(v: Sequence[Polynomial], rows: Sequence[Polynomial]) -> Polynomial:
    acc = rows[0].ring.zero()
    for a, b in zip(v, rows):
        acc = acc + a * b
    return acc


def monomial_algebra_syzygies(F: Sequence[Polynomial], s_elems: Sequence[Polynomial]
                              ) -> list[Vector]:
    """Vectors over ``R[Y]`` whose images under ``y_i -> lt(f_i)`` generate
    the syzygies of ``lt``-images of ``s_elems`` in ``R[Lt F]``.

    Two families: the syzygies of ``s_elems`` themselves, and, for each
    generator ``w`` of ``ker ∩ <s_elems>``, the expression of ``w`` over
    ``s_elems``.
    """
    if not s_elems:
        return []
    yring = s_elems[0].ring
    for s in s_elems:
        if not is_tx_homogeneous(s, F):
            raise ValueError(f"{s} is not homogeneous for the grading induced by F")
    out = list(module_syzygies(s_elems, yring))
    kernel = evaluation_kernel([f.lt for f in F], yring).generators
    if kernel:
        for w, over in _intersection_parts(kernel, s_elems, yring):
            if apply_vector(over, s_elems) != w:
                raise AssertionError("intersection cofactors failed to replay")
            out.append(tuple(over))
    seen = set()
    uniq = []
    for v in out:
        if all(c.is_zero for c in v) or v in seen:
            continue
        seen.add(v)
        uniq.append(v)
    return uniq
