"""Exact arithmetic in Z_{p^n} x Z_{p^m}.

Elements are pairs ``(d1, d2)`` with ``0 <= d1 < p^n`` and ``0 <= d2 < p^m``.
They are encoded as integers ``d1 * p^m + d2``; a subset of the group is a
Python int whose bit ``i`` marks the element with index ``i``.

The same pairs double as *directions*: the character attached to ``d`` is
``x -> exp(2 pi i <d, x> / p^n)`` with the bilinear form

    <d, x> = d1*x1 + p^(n-m) * d2*x2   (mod p^n).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Iterator, NamedTuple

MAX_ORDER = 1 << 20
# above this order the addition table is not materialised
TABLE_ORDER_LIMIT = 4096


class FugledeError(ValueError):
    """Base class for input errors raised by this package."""


class EmptySetError(FugledeError):
    def __init__(self, msg: str = "empty set"):
        super().__init__(msg)


class GroupMismatchError(FugledeError):
    def __init__(self, msg: str = "subsets live in different groups"):
        super().__init__(msg)


class UnsupportedGroupError(FugledeError):
    pass


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


class Elem(NamedTuple):
    d1: int
    d2: int

    def __str__(self) -> str:
        return f"({self.d1},{self.d2})"


@dataclass(frozen=True)
class GroupParams:
    """The group Z_{p^n} x Z_{p^m} with n >= m >= 1.

    Passing ``n < m`` swaps the factors and sets ``swapped``; text I/O uses
    the flag to keep the caller's coordinate order.
    """

    p: int
    n: int
    m: int
    swapped: bool = field(default=False, compare=False)
    max_order: int = field(default=MAX_ORDER, compare=False, repr=False)
    q1: int = field(init=False, compare=False, repr=False)
    q2: int = field(init=False, compare=False, repr=False)
    scale: int = field(init=False, compare=False, repr=False)
    order: int = field(init=False, compare=False, repr=False)

    def __post_init__(self) -> None:
        if not is_prime(self.p):
            raise FugledeError(f"p={self.p} is not prime")
        if self.n < 1 or self.m < 1:
            raise FugledeError("exponents must be >= 1")
        if self.n < self.m:
            n, m = self.m, self.n
            object.__setattr__(self, "n", n)
            object.__setattr__(self, "m", m)
            object.__setattr__(self, "swapped", not self.swapped)
        q1, q2 = self.p**self.n, self.p**self.m
        if q1 * q2 > self.max_order:
            raise FugledeError(
                f"group order {q1 * q2} exceeds the configured bound {self.max_order}"
            )
        object.__setattr__(self, "q1", q1)
        object.__setattr__(self, "q2", q2)
        object.__setattr__(self, "scale", self.p ** (self.n - self.m))
        object.__setattr__(self, "order", q1 * q2)

    def __str__(self) -> str:
        return f"{self.p},{self.n},{self.m}"

    @property
    def is_p2_by_p(self) -> bool:
        """True for Z_{p^2} x Z_p."""
        return (self.n, self.m) == (2, 1)

    @property
    def full_bits(self) -> int:
        return (1 << self.order) - 1

    def elem(self, d1: int, d2: int) -> Elem:
        return Elem(d1 % self.q1, d2 % self.q2)

    def index(self, e: Elem) -> int:
        return e[0] * self.q2 + e[1]

    def element(self, i: int) -> Elem:
        return Elem(*divmod(i, self.q2))

    def elements(self) -> list[Elem]:
        return list(_elements(self))

    def zero(self) -> Elem:
        return Elem(0, 0)

    def add(self, x: Elem, y: Elem) -> Elem:
        return Elem((x[0] + y[0]) % self.q1, (x[1] + y[1]) % self.q2)

    def neg(self, x: Elem) -> Elem:
        return Elem(-x[0] % self.q1, -x[1] % self.q2)

    def sub(self, x: Elem, y: Elem) -> Elem:
        return Elem((x[0] - y[0]) % self.q1, (x[1] - y[1]) % self.q2)

    def units(self) -> list[int]:
        """Invertible residues mod p^n."""
        return [r for r in range(self.q1) if r % self.p]


@lru_cache(maxsize=None)
def _elements(G: GroupParams) -> tuple[Elem, ...]:
    return tuple(Elem(a, b) for a in range(G.q1) for b in range(G.q2))


@lru_cache(maxsize=None)
def add_table(G: GroupParams) -> tuple[tuple[int, ...], ...] | None:
    """``add_table(G)[i][j]`` is the index of element_i + element_j."""
    if G.order > TABLE_ORDER_LIMIT:
        return None
    els = _elements(G)
    return tuple(tuple(G.index(G.add(x, y)) for y in els) for x in els)


@lru_cache(maxsize=None)
def neg_table(G: GroupParams) -> tuple[int, ...]:
    return tuple(G.index(G.neg(x)) for x in _elements(G))


def inner_product(d: Elem, x: Elem, G: GroupParams) -> int:
    return (d[0] * x[0] + G.scale * d[1] * x[1]) % G.q1


def scalar_mul(r: int, d: Elem, G: GroupParams) -> Elem:
    r %= G.q1
    return Elem(r * d[0] % G.q1, r * d[1] % G.q2)


def iter_bits(bits: int) -> Iterator[int]:
    while bits:
        low = bits & -bits
        yield low.bit_length() - 1
        bits ^= low


@dataclass(frozen=True)
class SubsetMask:
    group: GroupParams
    bits: int
    cardinality: int = field(init=False, compare=False, repr=False)

    def __post_init__(self) -> None:
        if self.bits < 0 or self.bits >> self.group.order:
            raise FugledeError("bitmask has bits outside the group")
        object.__setattr__(self, "cardinality", self.bits.bit_count())

    @classmethod
    def from_elements(cls, G: GroupParams, elems: Iterable[Elem | tuple[int, int]]) -> SubsetMask:
        bits = 0
        for e in elems:
            bits |= 1 << G.index(G.elem(*e))
        return cls(G, bits)

    @classmethod
    def from_indices(cls, G: GroupParams, idx: Iterable[int]) -> SubsetMask:
        bits = 0
        for i in idx:
            bits |= 1 << i
        return cls(G, bits)

    @classmethod
    def full(cls, G: GroupParams) -> SubsetMask:
        return cls(G, G.full_bits)

    @classmethod
    def empty(cls, G: GroupParams) -> SubsetMask:
        return cls(G, 0)

    def __len__(self) -> int:
        return self.cardinality

    def __iter__(self) -> Iterator[Elem]:
        G = self.group
        return (G.element(i) for i in iter_bits(self.bits))

    def __contains__(self, e: object) -> bool:
        if not isinstance(e, tuple) or len(e) != 2:
            return False
        return bool(self.bits >> self.group.index(self.group.elem(*e)) & 1)

    def indices(self) -> list[int]:
        return list(iter_bits(self.bits))

    def elements(self) -> list[Elem]:
        return list(self)

    def is_empty(self) -> bool:
        return self.bits == 0

    def with_bits(self, bits: int) -> SubsetMask:
        return SubsetMask(self.group, bits)

    def __str__(self) -> str:
        return ";".join(str(e) for e in self)


def same_group(*sets: SubsetMask) -> GroupParams:
    G = sets[0].group
    for s in sets[1:]:
        if s.group != G:
            raise GroupMismatchError()
    return G


def translate_bits(bits: int, g_index: int, G: GroupParams) -> int:
    table = add_table(G)
    out = 0
    if table is not None:
        row = table[g_index]
        for i in iter_bits(bits):
            out |= 1 << row[i]
        return out
    g = G.element(g_index)
    for i in iter_bits(bits):
        out |= 1 << G.index(G.add(G.element(i), g))
    return out


def translate(A: SubsetMask, g: Elem) -> SubsetMask:
    G = A.group
    return SubsetMask(G, translate_bits(A.bits, G.index(G.elem(*g)), G))


def difference_bits(bits: int, G: GroupParams) -> int:
    idx = list(iter_bits(bits))
    table = add_table(G)
    out = 0
    if table is not None:
        neg = neg_table(G)
        for j in idx:
            row = table[neg[j]]
            for i in idx:
                out |= 1 << row[i]
        return out
    els = [G.element(i) for i in idx]
    for y in els:
        for x in els:
            out |= 1 << G.index(G.sub(x, y))
    return out


def difference_set(A: SubsetMask) -> SubsetMask:
    """All differences a - a' with a, a' in A."""
    if A.is_empty():
        raise EmptySetError()
    return SubsetMask(A.group, difference_bits(A.bits, A.group))


def cyclic_subgroup_bits(g: Elem, G: GroupParams) -> int:
    bits, x = 1, G.zero()
    while True:
        x = G.add(x, g)
        if x == (0, 0):
            return bits
        bits |= 1 << G.index(x)


def generated_subgroup_bits(gens: Iterable[Elem], G: GroupParams) -> int:
    """Bitmask of the subgroup generated by ``gens``."""
    H = 1
    for g in gens:
        if H >> G.index(g) & 1:
            continue
        C = cyclic_subgroup_bits(g, G)
        # H + <g>
        acc = 0
        for c in iter_bits(C):
            acc |= translate_bits(H, c, G)
        H = acc
    return H


@dataclass(frozen=True)
class Subgroup:
    """A subgroup of Z_{p^2} x Z_p and its isomorphism type.

    ``kind`` is one of ``trivial``, ``Z_p``, ``Z_p^2``, ``Z_p x Z_p``, ``full``.
    ``offset`` is the element subtracted from the input set before closure.
    """

    kind: str
    members: SubsetMask
    offset: Elem

    @property
    def is_proper(self) -> bool:
        return self.kind != "full"


def proper_subgroup_containment(A: SubsetMask) -> Subgroup:
    G = A.group
    if not G.is_p2_by_p:
        raise UnsupportedGroupError("only implemented for Z_{p^2}×Z_p")
    if A.is_empty():
        raise EmptySetError()
    a0 = G.element(next(iter_bits(A.bits)))
    shifted = translate(A, G.neg(a0))
    H = SubsetMask(G, generated_subgroup_bits(shifted, G))
    p = G.p
    size = H.cardinality
    if size == 1:
        kind = "trivial"
    elif size == p:
        kind = "Z_p"
    elif size == p * p:
        # cyclic of order p^2 iff it has an element with unit first coordinate
        kind = "Z_p^2" if any(e.d1 % p for e in H) else "Z_p x Z_p"
    else:
        kind = "full"
    return Subgroup(kind, H, a0)
