"""Exact coefficient arithmetic over the integers and the rationals.

Integers are plain Python ints and rationals are :class:`fractions.Fraction`,
which is always stored reduced with a positive denominator.  On top of that
this module provides the two capabilities the rest of the package asks of a
coefficient ring: ideal membership with a witness, and generators for the
syzygies of a finite list of constants.  Both are built on a small integer
(or rational) echelon routine, :class:`Span`, which is also used to decide
whether a target vector is an exact linear combination of given vectors.
"""

from __future__ import annotations

import enum
from fractions import Fraction
from typing import Optional, Sequence, Union

Coeff = Union[int, Fraction]


class Domain(enum.Enum):
    """Coefficient domain: ``ZZ`` (integers) or ``QQ`` (rationals)."""

    ZZ = "int"
    QQ = "rat"

    @property
    def is_field(self) -> bool:
        return self is Domain.QQ

    def convert(self, value) -> Coeff:
        if self is Domain.ZZ:
            if isinstance(value, Fraction):
                if value.denominator != 1:
                    raise ValueError(f"{value} is not an integer")
                return value.numerator
            if isinstance(value, bool) or not isinstance(value, int):
                raise TypeError(f"cannot use {value!r} as an integer coefficient")
            return value
        return Fraction(value)

    def divides(self, a: Coeff, b: Coeff) -> bool:
        """True when ``a`` divides ``b`` in this domain."""
        if self is Domain.QQ:
            return a != 0 or b == 0
        if a == 0:
            return b == 0
        return b % a == 0

    def quo(self, b: Coeff, a: Coeff) -> Coeff:
        """Exact quotient ``b / a``; the caller guarantees divisibility."""
        if self is Domain.QQ:
            return Fraction(b) / a
        q, r = divmod(b, a)
        assert r == 0, (b, a)
        return q

    def normalize_sign(self, c: Coeff) -> Coeff:
        """Unit ``u`` such that ``u * c`` is the canonical associate of ``c``."""
        if self is Domain.QQ:
            return Fraction(1) / c if c != 0 else Fraction(1)
        return -1 if c < 0 else 1

    @classmethod
    def parse(cls, text: str) -> "Domain":
        text = text.strip().lower()
        for d in cls:
            if d.value == text:
                return d
        raise ValueError(f"unknown ring {text!r} (expected 'int' or 'rat')")


def extended_gcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(g, s, t)`` with ``g = s*a + t*b = gcd(a, b) >= 0``."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def ideal_membership_witness(
    c: Coeff, gens: Sequence[Coeff], domain: Domain = Domain.ZZ
) -> Optional[list[Coeff]]:
    """Find ``r`` with ``c == sum(r[i] * gens[i])``, or ``None`` if impossible.

    Over the integers the witness comes from a fold of extended Euclid over
    ``gens``; a witness exists exactly when ``gcd(gens)`` divides ``c``.
    """
    n = len(gens)
    if c == 0:
        return [domain.convert(0)] * n
    if domain.is_field:
        for i, g in enumerate(gens):
            if g != 0:
                out = [Fraction(0)] * n
                out[i] = Fraction(c) / g
                return out
        return None
    for i, g in enumerate(gens):
        if g != 0 and c % g == 0:
            out = [0] * n
            out[i] = c // g
            return out
    # running combination g_acc = sum(coef[i] * gens[i]); smallest generators
    # first, and only those that lower the gcd, which keeps the witness small
    g_acc, coef = 0, [0] * n
    for i in sorted(range(n), key=lambda i: (abs(gens[i]), i)):
        g = gens[i]
        if g == 0 or (g_acc and g % g_acc == 0):
            continue
        d, s, t = extended_gcd(g_acc, g)
        coef = [s * x for x in coef]
        coef[i] += t
        g_acc = d
        if c % g_acc == 0:
            break
    if g_acc == 0 or c % g_acc:
        return None
    k = c // g_acc
    return [k * x for x in coef]


class Span:
    """Echelon form of a finitely generated submodule of ``D^n`` (D = ZZ or QQ).

    Vectors are sparse dicts ``{index: coefficient}``; pivots are the
    smallest index carrying a nonzero entry.  Every stored row remembers its
    combination of the inserted vectors, and every insertion that collapses
    to zero contributes a relation, so after inserting ``v_1..v_k`` the
    relations generate all ``r`` with ``sum(r_i * v_i) == 0``.

    Over the integers two rows sharing a pivot are merged with a unimodular
    extended-Euclid step, so the row lattice never changes.
    """

    def __init__(self, domain: Domain = Domain.ZZ):
        self.domain = domain
        self.count = 0
        self.rows: dict[int, tuple[dict, dict]] = {}  # pivot -> (vector, combo)
        self.relations: list[dict] = []

    def add(self, vec: dict) -> None:
        idx = self.count
        self.count += 1
        v = {k: c for k, c in vec.items() if c != 0}
        combo = {idx: 1}
        field = self.domain.is_field
        while v:
            p = min(v)
            if p not in self.rows:
                self.rows[p] = (v, combo)
                return
            b, bcombo = self.rows[p]
            a, c = b[p], v[p]
            if field or c % a == 0:
                q = Fraction(c) / a if field else c // a
                v = _axpy(v, b, -q)
                combo = _axpy(combo, bcombo, -q)
                continue
            g, s, t = extended_gcd(a, c)
            new_b = _lincomb(s, b, t, v)
            new_bc = _lincomb(s, bcombo, t, combo)
            v = _lincomb(c // g, b, -(a // g), v)
            combo = _lincomb(c // g, bcombo, -(a // g), combo)
            self.rows[p] = (new_b, new_bc)
        self.relations.append(combo)

    def solve(self, target: dict) -> Optional[dict]:
        """Combination ``{i: r_i}`` of inserted vectors equal to ``target``."""
        t = {k: c for k, c in target.items() if c != 0}
        out: dict = {}
        field = self.domain.is_field
        while t:
            p = min(t)
            row = self.rows.get(p)
            if row is None:
                return None
            b, bcombo = row
            if not field and t[p] % b[p]:
                return None
            q = Fraction(t[p]) / b[p] if field else t[p] // b[p]
            t = _axpy(t, b, -q)
            out = _axpy(out, bcombo, q)
        return out


def _axpy(y: dict, x: dict, a) -> dict:
    out = dict(y)
    for k, c in x.items():
        v = out.get(k, 0) + a * c
        if v:
            out[k] = v
        else:
            out.pop(k, None)
    return out


def _lincomb(a, x: dict, b, y: dict) -> dict:
    out: dict = {}
    for k, c in x.items():
        out[k] = a * c
    for k, c in y.items():
        out[k] = out.get(k, 0) + b * c
    return {k: c for k, c in out.items() if c != 0}


def solve_linear(
    columns: Sequence[dict], target: dict, domain: Domain = Domain.ZZ
) -> Optional[list[Coeff]]:
    """Exact ``r`` with ``sum(r[j] * columns[j]) == target`` or ``None``."""
    span = Span(domain)
    for col in columns:
        span.add(col)
    sol = span.solve(target)
    if sol is None:
        return None
    return [domain.convert(sol.get(j, 0)) for j in range(len(columns))]


def constant_syzygy_generators(
    gens: Sequence[Coeff], domain: Domain = Domain.ZZ
) -> list[list[Coeff]]:
    """Generators of ``{r in D^N : sum(r[i] * gens[i]) == 0}``."""
    if not gens:
        raise ValueError("need at least one element")
    span = Span(domain)
    for g in gens:
        span.add({0: g})
    n = len(gens)
    out = []
    for rel in span.relations:
        vec = [domain.convert(rel.get(i, 0)) for i in range(n)]
        if domain is Domain.ZZ:
            # make the first nonzero entry positive for stable output
            lead = next(x for x in vec if x != 0)
            if lead < 0:
                vec = [-x for x in vec]
        out.append(vec)
    return out

