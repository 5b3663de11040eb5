"""Sparse multivariate polynomials with exact coefficients.

A :class:`PolyRing` fixes the variables, the term order and the coefficient
domain; a :class:`Polynomial` is an immutable map from exponent tuples to
nonzero coefficients that belongs to exactly one ring.  Terms are sorted
lazily, once, in descending order of the ring's term order, so leading data
is cheap after the first query.  Changing the order means building a new
ring and moving polynomials there explicitly with :meth:`Polynomial.to_ring`.

The last part of the module implements the grading of a tag ring ``R[Y]``
induced by a list ``F`` of polynomials: a monomial ``Y^a`` has degree
``lp(F^a)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from operator import add
from typing import Optional, Sequence, Union

from .ring import Coeff, Domain

Monomial = tuple[int, ...]


# ---------- term orders ----------

ORDER_KINDS = ("lex", "deglex", "degrevlex")


@dataclass(frozen=True)
class TermOrder:
    """Lex, DegLex or DegRevLex with an explicit variable precedence.

    ``precedence[0]`` is the index of the largest variable.
    """

    kind: str
    precedence: tuple[int, ...]

    def __post_init__(self):
        if self.kind not in ORDER_KINDS:
            raise ValueError(f"unknown term order {self.kind!r}")
        if sorted(self.precedence) != list(range(len(self.precedence))):
            raise ValueError("precedence must be a permutation of variable indices")

    @classmethod
    def make(cls, kind: str, nvars: int) -> "TermOrder":
        return cls(kind, tuple(range(nvars)))

    @property
    def nvars(self) -> int:
        return len(self.precedence)

    def key(self, m: Monomial) -> tuple:
        p = self.precedence
        if self.kind == "lex":
            return tuple(m[i] for i in p)
        if self.kind == "deglex":
            return (sum(m),) + tuple(m[i] for i in p)
        return (sum(m),) + tuple(-m[i] for i in reversed(p))

    def compare(self, a: Monomial, b: Monomial) -> int:
        if len(a) != self.nvars or len(b) != self.nvars:
            raise ValueError(
                f"arity mismatch: order on {self.nvars} variables, got {len(a)} and {len(b)}"
            )
        ka, kb = self.key(a), self.key(b)
        return (ka > kb) - (ka < kb)


@dataclass(frozen=True)
class BlockOrder:
    """Product order: consecutive variable blocks, the first block dominating."""

    blocks: tuple[TermOrder, ...]

    @property
    def nvars(self) -> int:
        return sum(b.nvars for b in self.blocks)

    def key(self, m: Monomial) -> tuple:
        out: tuple = ()
        start = 0
        for b in self.blocks:
            stop = start + b.nvars
            out += (b.key(m[start:stop]),)
            start = stop
        return out

    def compare(self, a: Monomial, b: Monomial) -> int:
        if len(a) != self.nvars or len(b) != self.nvars:
            raise ValueError("arity mismatch")
        ka, kb = self.key(a), self.key(b)
        return (ka > kb) - (ka < kb)


Order = Union[TermOrder, BlockOrder]


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def mono_div(a: Monomial, b: Monomial) -> Optional[Monomial]:
    """``a / b`` if ``b`` divides ``a``, else ``None``."""
    out = tuple(x - y for x, y in zip(a, b))
    return out if min(out, default=0) >= 0 else None


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def mono_divides(b: Monomial, a: Monomial) -> bool:
    return all(y <= x for x, y in zip(a, b))


# ---------- rings and polynomials ----------


@dataclass(frozen=True)
class PolyRing:
    names: tuple[str, ...]
    order: Order
    domain: Domain = Domain.ZZ
    _key_cache: dict = field(default_factory=dict, compare=False, hash=False, repr=False)

    def __post_init__(self):
        if len(set(self.names)) != len(self.names):
            raise ValueError("variable names must be distinct")
        if self.order.nvars != len(self.names):
            raise ValueError("order arity differs from number of variables")

    @classmethod
    def make(cls, names: Sequence[str], order: str = "deglex",
             domain: Domain = Domain.ZZ) -> "PolyRing":
        return cls(tuple(names), TermOrder.make(order, len(names)), domain)

    @property
    def nvars(self) -> int:
        return len(self.names)

    def key(self, m: Monomial) -> tuple:
        k = self._key_cache.get(m)
        if k is None:
            k = self._key_cache[m] = self.order.key(m)
        return k

    @property
    def one_mono(self) -> Monomial:
        return (0,) * self.nvars

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.const(1)

    def const(self, c) -> "Polynomial":
        return self.term(self.one_mono, c)

    def gen(self, i: int) -> "Polynomial":
        m = [0] * self.nvars
        m[i] = 1
        return Polynomial(self, {tuple(m): self.domain.convert(1)})

    def gens(self) -> list["Polynomial"]:
        return [self.gen(i) for i in range(self.nvars)]

    def term(self, m: Monomial, c=1) -> "Polynomial":
        c = self.domain.convert(c)
        return Polynomial(self, {tuple(m): c} if c != 0 else {})

    def from_dict(self, terms: dict) -> "Polynomial":
        conv = self.domain.convert
        out = {}
        for m, c in terms.items():
            if len(m) != self.nvars:
                raise ValueError("monomial arity differs from ring")
            c = conv(c)
            if c != 0:
                out[tuple(m)] = c
        return Polynomial(self, out)

    def with_domain(self, domain: Domain) -> "PolyRing":
        return PolyRing(self.names, self.order, domain)

    def with_order(self, order: Order) -> "PolyRing":
        return PolyRing(self.names, order, self.domain)


class Polynomial:
    """Immutable sparse polynomial; the zero polynomial has no terms."""

    __slots__ = ("ring", "_d", "_sorted", "_hash")

    def __init__(self, ring: PolyRing, terms: dict):
        self.ring = ring
        self._d = terms
        self._sorted = None
        self._hash = None

    # -- access --
    def terms(self) -> list[tuple[Monomial, Coeff]]:
        """Terms in strictly descending order."""
        if self._sorted is None:
            key = self.ring.key
            self._sorted = sorted(self._d.items(), key=lambda t: key(t[0]), reverse=True)
        return self._sorted

    def as_dict(self) -> dict:
        return dict(self._d)

    def monomials(self) -> list[Monomial]:
        return [m for m, _ in self.terms()]

    def coeff(self, m: Monomial) -> Coeff:
        return self._d.get(m, 0)

    def __len__(self) -> int:
        return len(self._d)

    def __iter__(self):
        return iter(self.terms())

    @property
    def is_zero(self) -> bool:
        return not self._d

    @property
    def is_constant(self) -> bool:
        return not self._d or (len(self._d) == 1 and self.ring.one_mono in self._d)

    @property
    def lp(self) -> Optional[Monomial]:
        """Leading power product; ``None`` (undefined) for zero."""
        return self.terms()[0][0] if self._d else None

    @property
    def lc(self) -> Coeff:
        return self.terms()[0][1] if self._d else self.ring.domain.convert(0)

    @property
    def lt(self) -> "Polynomial":
        if not self._d:
            return self
        m, c = self.terms()[0]
        return Polynomial(self.ring, {m: c})

    def total_degree(self) -> int:
        return max((sum(m) for m in self._d), default=-1)

    # -- arithmetic --
    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise ValueError("polynomials from different rings")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Polynomial(self.ring, _add(self._d, other._d, 1))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Polynomial(self.ring, _add(self._d, other._d, -1))

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __neg__(self):
        return Polynomial(self.ring, {m: -c for m, c in self._d.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Polynomial(self.ring, _mul(self._d, other._d))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if not isinstance(e, int) or e < 0:
            raise ValueError("exponent must be a natural number")
        result = self.ring.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def scale(self, c) -> "Polynomial":
        c = self.ring.domain.convert(c)
        if c == 0:
            return self.ring.zero()
        return Polynomial(self.ring, {m: c * a for m, a in self._d.items()})

    def mul_term(self, m: Monomial, c=1) -> "Polynomial":
        if c == 0:
            return self.ring.zero()
        return Polynomial(self.ring, {mono_mul(k, m): c * a for k, a in self._d.items()})

    # -- structure --
    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self._d == other._d
        if isinstance(other, (int, Fraction)):
            return self._d == self.ring.const(other)._d
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._d.items()))
        return self._hash

    def to_ring(self, ring: PolyRing) -> "Polynomial":
        """Move into a ring with the same number of variables (re-sorts)."""
        if ring.nvars != self.ring.nvars:
            raise ValueError("variable count differs")
        return ring.from_dict(self._d)

    def embed(self, ring: PolyRing, positions: Sequence[int]) -> "Polynomial":
        """Place variable ``i`` at index ``positions[i]`` of ``ring``."""
        out = {}
        for m, c in self._d.items():
            e = [0] * ring.nvars
            for i, k in enumerate(m):
                e[positions[i]] += k
            out[tuple(e)] = c
        return Polynomial(ring, out)

    def evaluate(self, values: Sequence["Polynomial"], cache: Optional[dict] = None
                 ) -> "Polynomial":
        """Substitute ``values[i]`` for variable ``i``.

        ``cache`` maps exponent tuples to already computed power products of
        ``values`` and is extended in place.
        """
        if len(values) != self.ring.nvars:
            raise ValueError("need one value per variable")
        target = values[0].ring if values else self.ring
        cache = {} if cache is None else cache
        acc: dict = {}
        for m, c in self._d.items():
            pp = power_product(values, m, cache)
            for k, a in pp._d.items():
                v = acc.get(k, 0) + c * a
                if v:
                    acc[k] = v
                else:
                    acc.pop(k, None)
        return Polynomial(target, acc)

    def __repr__(self):
        return f"Polynomial({self})"

    def __str__(self):
        return format_poly(self)


def power_product(values: Sequence[Polynomial], e: Monomial, cache: dict) -> Polynomial:
    """``prod(values[i] ** e[i])`` built incrementally through ``cache``."""
    pp = cache.get(e)
    if pp is not None:
        return pp
    i = next((j for j, k in enumerate(e) if k), None)
    if i is None:
        pp = values[0].ring.one()
    else:
        smaller = e[:i] + (e[i] - 1,) + e[i + 1:]
        pp = power_product(values, smaller, cache) * values[i]
    cache[e] = pp
    return pp


def _add(a: dict, b: dict, sign: int) -> dict:
    out = dict(a)
    for m, c in b.items():
        v = out.get(m, 0) + sign * c
        if v:
            out[m] = v
        else:
            out.pop(m, None)
    return out


def _mul(a: dict, b: dict) -> dict:
    if len(a) > len(b):
        a, b = b, a
    out: dict = {}
    get = out.get
    for ma, ca in a.items():
        for mb, cb in b.items():
            m = tuple(map(add, ma, mb))
            v = get(m, 0) + ca * cb
            if v:
                out[m] = v
            else:
                del out[m]
    return out


def leading_data(p: Polynomial) -> tuple[Optional[Monomial], Coeff, Polynomial]:
    """``(lp, lc, lt)`` with lp undefined (``None``) and lc = lt = 0 for zero."""
    return p.lp, p.lc, p.lt


def compare(order: Order, a: Monomial, b: Monomial) -> int:
    """-1, 0 or 1 as ``a`` is less than, equal to or greater than ``b``."""
    return order.compare(a, b)


def representation_height(parts: Sequence[tuple[Coeff, Polynomial]]
                          ) -> tuple[Monomial, list[int]]:
    """Height of the expression ``sum(r_i * s_i)`` and the contributing indices.

    Only the polynomials enter: the height is ``max lp(s_i)`` over the
    nonzero ``s_i``.
    """
    best = None
    who: list[int] = []
    for i, (_, s) in enumerate(parts):
        if s.is_zero:
            continue
        k = s.ring.key(s.lp)
        if best is None or k > best[0]:
            best, who = (k, s.lp), [i]
        elif k == best[0]:
            who.append(i)
    if best is None:
        raise ValueError("height is undefined: every part is zero")
    return best[1], who


# ---------- the grading of R[Y] induced by F ----------


def _lp_power(lps: Sequence[Monomial], a: Monomial) -> Monomial:
    out = [0] * len(lps[0])
    for k, lp in zip(a, lps):
        if k:
            for j, x in enumerate(lp):
                out[j] += k * x
    return tuple(out)


def tx_degree_of_monomial(a: Monomial, lps: Sequence[Monomial]) -> Monomial:
    """``lp(F^a)``, computed from the leading power products of ``F``."""
    return _lp_power(lps, a)


def _check_tags(P: Polynomial, F: Sequence[Polynomial]) -> list[Monomial]:
    if P.ring.nvars != len(F):
        raise ValueError(f"tag ring has {P.ring.nvars} variables but F has {len(F)} elements")
    if any(f.is_zero for f in F):
        raise ValueError("F must not contain zero")
    return [f.lp for f in F]


def tx_degree(P: Polynomial, F: Sequence[Polynomial]) -> Optional[Monomial]:
    """``max lp(F^a)`` over the monomials ``Y^a`` of ``P``; ``None`` for ``P == 0``."""
    lps = _check_tags(P, F)
    if P.is_zero:
        return None
    key = F[0].ring.key
    return max((_lp_power(lps, a) for a in P.monomials()), key=key)


def tx_homogeneous_components(P: Polynomial, F: Sequence[Polynomial]) -> list[Polynomial]:
    """Split ``P`` by degree; components are listed by descending degree."""
    lps = _check_tags(P, F)
    groups: dict[Monomial, dict] = {}
    for a, c in P.terms():
        groups.setdefault(_lp_power(lps, a), {})[a] = c
    key = F[0].ring.key
    return [Polynomial(P.ring, groups[d]) for d in sorted(groups, key=key, reverse=True)]


def is_tx_homogeneous(P: Polynomial, F: Sequence[Polynomial]) -> bool:
    return len(tx_homogeneous_components(P, F)) <= 1


# ---------- canonical text ----------


def format_coeff(c: Coeff) -> str:
    if isinstance(c, Fraction) and c.denominator != 1:
        return f"{c.numerator}/{c.denominator}"
    return str(int(c))


def format_monomial(m: Monomial, names: Sequence[str]) -> str:
    parts = []
    for name, k in zip(names, m):
        if k == 1:
            parts.append(name)
        elif k > 1:
            parts.append(f"{name}^{k}")
    return "*".join(parts)


def format_poly(p: Polynomial, names: Optional[Sequence[str]] = None) -> str:
    """Canonical text: descending terms, ``*`` and ``^``, explicit signs."""
    names = p.ring.names if names is None else names
    if p.is_zero:
        return "0"
    out = []
    for i, (m, c) in enumerate(p.terms()):
        neg = c < 0
        a = -c if neg else c
        mono = format_monomial(m, names)
        if not mono:
            body = format_coeff(a)
        elif a == 1:
            body = mono
        else:
            body = f"{format_coeff(a)}*{mono}"
        if i == 0:
            out.append(f"-{body}" if neg else body)
        else:
            out.append(f"- {body}" if neg else f"+ {body}")
    return " ".join(out)

