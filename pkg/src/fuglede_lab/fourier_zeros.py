"""Exact Fourier zeros of indicator functions.

For a direction ``d`` the Fourier coefficient of ``1_A`` at ``d`` is the
polynomial ``P(X) = sum_t n(t) X^t`` evaluated at a primitive ``p^n``-th root
of unity, where ``n(t)`` counts the points of ``A`` on the plane
``<x, d> = t``.  Since the minimal polynomial of that root is
``1 + X^s + ... + X^{(p-1)s}`` with ``s = p^(n-1)``, the value vanishes iff
``n(t)`` is constant on every residue class ``t mod s``.  Everything here is
integer arithmetic; ``fourier_value_float`` exists only as a cross-check.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .group_core import (
    Elem,
    EmptySetError,
    GroupParams,
    SubsetMask,
    inner_product,
    iter_bits,
    scalar_mul,
)

# elementwise zero_set below this order, orbit representatives above
ORBIT_METHOD_THRESHOLD = 4096


@dataclass(frozen=True)
class PlaneCounts:
    direction: Elem
    counts: tuple[int, ...]

    @property
    def total(self) -> int:
        return sum(self.counts)


def counts_vanish(counts: Sequence[int], p: int) -> bool:
    """True iff counts[t] is constant on each class t mod len(counts)/p."""
    step = len(counts) // p
    for r in range(step):
        first = counts[r]
        for t in range(r + step, len(counts), step):
            if counts[t] != first:
                return False
    return True


def plane_counts(A: SubsetMask, d: Elem) -> PlaneCounts:
    G = A.group
    d = G.elem(*d)
    counts = [0] * G.q1
    for x in A:
        counts[inner_product(d, x, G)] += 1
    return PlaneCounts(d, tuple(counts))


def is_zero(A: SubsetMask, d: Elem) -> bool:
    if A.is_empty():
        raise EmptySetError()
    return counts_vanish(plane_counts(A, d).counts, A.group.p)


def fourier_value_float(A: SubsetMask, d: Elem) -> complex:
    """Sum of exp(-2 pi i <d, a> / p^n) over a in A (double precision)."""
    G = A.group
    d = G.elem(*d)
    q1 = G.q1
    total = 0j
    for x in A:
        total += cmath.exp(-2j * math.pi * inner_product(d, x, G) / q1)
    return total


def unit_orbit(d: Elem, G: GroupParams) -> set[Elem]:
    d = G.elem(*d)
    return {scalar_mul(r, d, G) for r in G.units()}


def unit_orbit_bits(d: Elem, G: GroupParams) -> int:
    bits = 0
    for e in unit_orbit(d, G):
        bits |= 1 << G.index(e)
    return bits


def orbit_representatives(G: GroupParams) -> list[Elem]:
    return list(_orbit_reps(G))


@lru_cache(maxsize=None)
def _orbit_reps(G: GroupParams) -> tuple[Elem, ...]:
    if G.is_p2_by_p:
        p = G.p
        reps = [Elem(0, 1), Elem(1, 0), Elem(p, 0)]
        reps += [Elem(p, c) for c in range(1, p)]
        reps += [Elem(1, c) for c in range(1, p)]
        return tuple(reps)
    seen = 1  # the zero element is excluded
    reps = []
    for i in range(1, G.order):
        if seen >> i & 1:
            continue
        d = G.element(i)
        reps.append(d)
        seen |= unit_orbit_bits(d, G)
    return tuple(reps)


class FourierTables:
    """Per-group lookup tables for fast zero computations on bitmasks.

    For each orbit representative ``d`` we keep the plane masks
    ``H(d, t)`` for every ``t`` and the bitmask of the unit orbit of ``d``.
    """

    def __init__(self, G: GroupParams):
        self.group = G
        self.reps = _orbit_reps(G)
        self.orbit_bits = tuple(unit_orbit_bits(d, G) for d in self.reps)
        self.step = G.q1 // G.p
        self.planes: list[tuple[int, ...]] | None = None
        self.values: list[tuple[int, ...]] | None = None
        if G.order <= ORBIT_METHOD_THRESHOLD:
            planes = []
            for d in self.reps:
                masks = [0] * G.q1
                for i, x in enumerate(G.elements()):
                    masks[inner_product(d, x, G)] |= 1 << i
                planes.append(tuple(masks))
            self.planes = planes
        else:
            els = G.elements()
            self.values = [tuple(inner_product(d, x, G) for x in els) for d in self.reps]

    def rep_counts(self, bits: int, k: int) -> list[int]:
        if self.planes is not None:
            return [(bits & h).bit_count() for h in self.planes[k]]
        counts = [0] * self.group.q1
        vals = self.values[k]
        for i in iter_bits(bits):
            counts[vals[i]] += 1
        return counts

    def rep_is_zero(self, bits: int, k: int) -> bool:
        return counts_vanish(self.rep_counts(bits, k), self.group.p)

    def zero_reps(self, bits: int) -> list[int]:
        """Indices k of the orbit representatives that are zeros of ``bits``."""
        return [k for k in range(len(self.reps)) if self.rep_is_zero(bits, k)]

    def zero_bits(self, bits: int) -> int:
        out = 0
        for k in range(len(self.reps)):
            if self.rep_is_zero(bits, k):
                out |= self.orbit_bits[k]
        return out


@lru_cache(maxsize=None)
def fourier_tables(G: GroupParams) -> FourierTables:
    return FourierTables(G)


def zero_bits(A: SubsetMask) -> int:
    """Bitmask of Z_A, computed on orbit representatives."""
    if A.is_empty():
        raise EmptySetError()
    return fourier_tables(A.group).zero_bits(A.bits)


@dataclass(frozen=True)
class ZeroSet:
    group: GroupParams
    members: SubsetMask

    def __contains__(self, d: object) -> bool:
        return d in self.members

    def __len__(self) -> int:
        return self.members.cardinality

    def elements(self) -> list[Elem]:
        return self.members.elements()


def zero_set(A: SubsetMask, method: str = "auto") -> ZeroSet:
    """Z_A.  ``method`` is ``auto``, ``orbit`` or ``elementwise``."""
    if A.is_empty():
        raise EmptySetError()
    G = A.group
    if method == "auto":
        method = "orbit" if G.order > ORBIT_METHOD_THRESHOLD else "elementwise"
    if method == "orbit":
        bits = zero_bits(A)
    elif method == "elementwise":
        bits = 0
        for i, d in enumerate(G.elements()):
            if is_zero(A, d):
                bits |= 1 << i
    else:
        raise ValueError(f"unknown method {method!r}")
    return ZeroSet(G, SubsetMask(G, bits))
