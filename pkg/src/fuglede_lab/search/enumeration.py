"""Subset enumeration, optionally one representative per translation class.

The canonical representative of a class is its smallest bitmask (as an
integer) among all |G| translates.  Canonical enumeration walks the subsets
that contain element 0 (every class has one), maps each to its class
minimum with numpy and deduplicates.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations, islice
from math import comb
from typing import Iterator

import numpy as np

from ..group_core import GroupParams, SubsetMask, add_table, translate_bits

CHUNK = 1 << 16


def masks_of_size(order: int, size: int) -> Iterator[int]:
    """All ``order``-bit masks with ``size`` bits set, increasing (Gosper)."""
    if size == 0:
        yield 0
        return
    if size > order:
        return
    x = (1 << size) - 1
    limit = 1 << order
    while x < limit:
        yield x
        low = x & -x
        ripple = x + low
        x = (((ripple ^ x) >> 2) // low) | ripple


def canonical_bits(bits: int, G: GroupParams) -> int:
    return min(translate_bits(bits, t, G) for t in range(G.order))


def class_size(bits: int, G: GroupParams) -> int:
    return len({translate_bits(bits, t, G) for t in range(G.order)})


@lru_cache(maxsize=None)
def canonical_classes(G: GroupParams, size: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Sorted canonical masks of the given size and their class sizes."""
    N = G.order
    if size == 0 or size == N:
        return ((G.full_bits if size else 0),), (1,)
    if size > N:
        return (), ()
    if N > 63:
        return _canonical_classes_python(G, size)
    table = np.array(add_table(G), dtype=np.int64)  # table[t][i] = i + t
    weights = np.left_shift(np.uint64(1), np.arange(N, dtype=np.uint64))
    found: dict[int, int] = {}
    rest = combinations(range(1, N), size - 1)
    while True:
        block = list(islice(rest, CHUNK))
        if not block:
            break
        idx = np.zeros((len(block), size), dtype=np.int64)
        if size > 1:
            idx[:, 1:] = np.array(block, dtype=np.int64)
        translates = np.empty((N, len(block)), dtype=np.uint64)
        for t in range(N):
            translates[t] = weights[table[t][idx]].sum(axis=1, dtype=np.uint64)
        mins = translates.min(axis=0)
        # class size = N / #stabiliser; stabiliser = translates equal to the set itself
        stab = (translates == translates[0]).sum(axis=0)
        uniq, first = np.unique(mins, return_index=True)
        for m, i in zip(uniq.tolist(), first.tolist()):
            if m not in found:
                found[m] = N // int(stab[i])
    keys = sorted(found)
    return tuple(keys), tuple(found[k] for k in keys)


def _canonical_classes_python(G: GroupParams, size: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    found: dict[int, int] = {}
    for rest in combinations(range(1, G.order), size - 1):
        bits = 1
        for i in rest:
            bits |= 1 << i
        c = canonical_bits(bits, G)
        if c not in found:
            found[c] = class_size(c, G)
    keys = sorted(found)
    return tuple(keys), tuple(found[k] for k in keys)


def enumerate_subsets(G: GroupParams, size: int, canonical: bool = False) -> Iterator[SubsetMask]:
    if canonical:
        for bits in canonical_classes(G, size)[0]:
            yield SubsetMask(G, bits)
    else:
        for bits in masks_of_size(G.order, size):
            yield SubsetMask(G, bits)


def count_subsets(G: GroupParams, size: int, canonical: bool = False) -> int:
    if canonical:
        return len(canonical_classes(G, size)[0])
    return comb(G.order, size)
