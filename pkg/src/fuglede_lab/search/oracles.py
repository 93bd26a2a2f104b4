"""Brute-force spectrum and tiling-complement searches.

A spectrum of A containing 0 is a clique of size #A in the Cayley graph on
G whose connection set is Z_A.  A tiling complement is an exact cover of
the group by translates of A.  Both searches are deterministic: candidates
are taken in increasing element index.
"""

from __future__ import annotations

import logging
from typing import Iterator

from ..fourier_zeros import zero_bits
from ..group_core import (
    EmptySetError,
    GroupParams,
    SubsetMask,
    inner_product,
    iter_bits,
    translate_bits,
)

log = logging.getLogger(__name__)


def _lowest(bits: int) -> int:
    return (bits & -bits).bit_length() - 1


def clique_with_zero(connection: int, k: int, G: GroupParams, candidates: int | None = None) -> int | None:
    """Bitmask of a k-clique containing 0 in Cay(G, connection), or None.

    ``connection`` must be symmetric and exclude 0.  ``candidates`` restricts
    the vertex set (0 is always allowed).
    """
    if k == 1:
        return 1
    cand0 = connection if candidates is None else connection & candidates
    if cand0.bit_count() < k - 1:
        return None
    nbrs: dict[int, int] = {}

    def neighbours(v: int) -> int:
        nb = nbrs.get(v)
        if nb is None:
            nb = nbrs[v] = translate_bits(connection, v, G)
        return nb

    # iterative DFS; each frame is (clique bits, size, remaining candidates)
    stack = [(1, 1, cand0)]
    while stack:
        clique, size, cand = stack.pop()
        if size == k:
            return clique
        if size + cand.bit_count() < k:
            continue
        v = _lowest(cand)
        rest = cand & ~(1 << v)
        # sibling first on the stack so the branch containing v is explored first
        stack.append((clique, size, rest))
        higher = rest & neighbours(v)
        if size + 1 + higher.bit_count() >= k:
            stack.append((clique | 1 << v, size + 1, higher))
    return None


def annihilator_bits(H: int, G: GroupParams) -> int:
    """Directions d with <d, h> = 0 for every h in the subgroup H."""
    hs = [G.element(i) for i in iter_bits(H)]
    out = 0
    for i, d in enumerate(G.elements()):
        if all(inner_product(d, h, G) == 0 for h in hs):
            out |= 1 << i
    return out


def coset_representatives(K: int, G: GroupParams) -> int:
    """Smallest-index element of every coset of the subgroup K."""
    seen = 0
    reps = 0
    for i in range(G.order):
        if seen >> i & 1:
            continue
        reps |= 1 << i
        seen |= translate_bits(K, i, G)
    return reps


def brute_spectrum(A: SubsetMask, within_subgroup: int | None = None) -> SubsetMask | None:
    """A spectrum of A containing 0, or None.

    If A (up to translation) lies in the subgroup ``within_subgroup``, the
    search runs on one representative per coset of its annihilator, which
    is equivalent because Z_A is a union of those cosets.
    """
    if A.is_empty():
        raise EmptySetError()
    G = A.group
    k = A.cardinality
    zA = zero_bits(A)
    candidates = None
    if within_subgroup is not None:
        candidates = coset_representatives(annihilator_bits(within_subgroup, G), G)
    bits = clique_with_zero(zA, k, G, candidates)
    return None if bits is None else SubsetMask(G, bits)


def iter_complements(A: SubsetMask, cells: int | None = None) -> Iterator[SubsetMask]:
    """Every T with A + T an exact cover of ``cells`` (default: the group).

    ``cells`` must be a subgroup containing A when given; translations are
    then drawn from it as well.  Branching is on the smallest uncovered
    element, translations in increasing index.
    """
    if A.is_empty():
        raise EmptySetError()
    G = A.group
    if cells is None:
        cells = G.full_bits
    k = A.cardinality
    if cells.bit_count() % k:
        log.debug("no complement: #A=%d does not divide %d", k, cells.bit_count())
        return
    a_idx = A.indices()
    neg = [G.index(G.neg(G.element(i))) for i in a_idx]
    tmask: dict[int, int] = {}

    def placed(t: int) -> int:
        m = tmask.get(t)
        if m is None:
            m = tmask[t] = translate_bits(A.bits, t, G)
        return m

    def options(covered: int) -> list[tuple[int, int]]:
        g = _lowest(cells & ~covered)
        out = []
        ts = sorted({translate_bits(1 << g, j, G).bit_length() - 1 for j in neg})
        for t in ts:
            m = placed(t)
            if not m & covered and not m & ~cells:
                out.append((t, m))
        return out

    stack = [(0, 0, iter(options(0)))]
    while stack:
        covered, chosen, it = stack[-1]
        step = next(it, None)
        if step is None:
            stack.pop()
            continue
        t, m = step
        cov2, ch2 = covered | m, chosen | 1 << t
        if cov2 == cells:
            yield SubsetMask(G, ch2)
            continue
        stack.append((cov2, ch2, iter(options(cov2))))


def brute_complement(A: SubsetMask, cells: int | None = None) -> SubsetMask | None:
    return next(iter_complements(A, cells), None)
