"""Checks for spectral pairs, tiling pairs and compatible values."""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .fourier_zeros import fourier_tables, zero_bits
from .group_core import (
    Elem,
    EmptySetError,
    FugledeError,
    SubsetMask,
    add_table,
    difference_bits,
    inner_product,
    iter_bits,
    same_group,
)
from .textio import format_elem

# Run the Fourier-side tiling criterion next to the direct-sum check.
CROSS_CHECK = os.environ.get("FUGLEDE_LAB_CROSSCHECK", "") not in ("", "0")

HADAMARD_TOL = 1e-8


class CrossCheckError(AssertionError):
    """The two tiling criteria disagreed; carries a diagnostic dump."""


@dataclass(frozen=True)
class PairVerdict:
    kind: str  # "spectral" or "tiling"
    holds: bool
    witness: Elem | str | None = None

    def __bool__(self) -> bool:
        return self.holds

    def to_json(self, G) -> dict:
        out: dict = {"kind": self.kind, "holds": self.holds}
        if self.witness is not None:
            w = self.witness
            out["witness"] = format_elem(w, G) if isinstance(w, tuple) else w
        return out


def _nonempty(*sets: SubsetMask) -> None:
    for s in sets:
        if s.is_empty():
            raise EmptySetError()


def is_spectral_pair(A: SubsetMask, B: SubsetMask) -> PairVerdict:
    G = same_group(A, B)
    _nonempty(A, B)
    if A.cardinality != B.cardinality:
        return PairVerdict("spectral", False, f"#A={A.cardinality}!=#B={B.cardinality}")
    bad = difference_bits(B.bits, G) & ~1 & ~zero_bits(A)
    if bad:
        return PairVerdict("spectral", False, G.element((bad & -bad).bit_length() - 1))
    return PairVerdict("spectral", True)


def cover_counts(A: SubsetMask, B: SubsetMask) -> list[int]:
    """How many times each element is written as a + b."""
    G = A.group
    counts = [0] * G.order
    table = add_table(G)
    ai = A.indices()
    for j in iter_bits(B.bits):
        if table is not None:
            row = table[j]
            for i in ai:
                counts[row[i]] += 1
        else:
            b = G.element(j)
            for i in ai:
                counts[G.index(G.add(G.element(i), b))] += 1
    return counts


def tiling_by_fourier(A: SubsetMask, B: SubsetMask) -> bool:
    """#A * #B = |G| and Z_A u Z_B covers every nonzero direction."""
    G = A.group
    if A.cardinality * B.cardinality != G.order:
        return False
    return zero_bits(A) | zero_bits(B) == G.full_bits & ~1


def is_tiling_pair(A: SubsetMask, B: SubsetMask, cross_check: bool | None = None) -> PairVerdict:
    G = same_group(A, B)
    _nonempty(A, B)
    counts = cover_counts(A, B)
    witness = next((i for i, c in enumerate(counts) if c != 1), None)
    holds = witness is None
    if cross_check if cross_check is not None else CROSS_CHECK:
        fourier = tiling_by_fourier(A, B)
        if fourier != holds:
            raise CrossCheckError(
                f"tiling criteria disagree in group {G}: direct={holds} fourier={fourier}\n"
                f"A={A.bits:#x} B={B.bits:#x} Z_A={zero_bits(A):#x} Z_B={zero_bits(B):#x}"
            )
    return PairVerdict("tiling", holds, None if holds else G.element(witness))


def verify_hadamard(A: SubsetMask, B: SubsetMask) -> bool:
    """Float check that (chi_b(a)) is a complex Hadamard matrix."""
    G = same_group(A, B)
    if A.cardinality != B.cardinality:
        raise FugledeError("cardinality mismatch")
    phases = np.array([[inner_product(b, a, G) for a in A] for b in B], dtype=float)
    M = np.exp(2j * np.pi * phases / G.q1)
    gram = M @ M.conj().T
    return bool(np.all(np.abs(gram - A.cardinality * np.eye(A.cardinality)) <= HADAMARD_TOL))


def direction_coverage(A: SubsetMask) -> Elem | None:
    """A nonzero direction whose unit orbit misses A - A, or None."""
    G = A.group
    if A.is_empty():
        return G.elem(*fourier_tables(G).reps[0])
    D = difference_bits(A.bits, G)
    tables = fourier_tables(G)
    for rep, orbit in zip(tables.reps, tables.orbit_bits):
        if not orbit & D:
            return rep
    return None


# ---- compatible values -------------------------------------------------------


@dataclass(frozen=True)
class PairList:
    """Exactly p pairs (x_i, y_i) in Z_p x Z_p."""

    p: int
    pairs: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        if len(self.pairs) != self.p:
            raise FugledeError(f"need exactly {self.p} pairs, got {len(self.pairs)}")
        reduced = tuple((x % self.p, y % self.p) for x, y in self.pairs)
        object.__setattr__(self, "pairs", reduced)

    @classmethod
    def of(cls, p: int, pairs: Iterable[tuple[int, int]]) -> PairList:
        return cls(p, tuple(tuple(pr) for pr in pairs))


def is_compatible(c: int, L: PairList) -> bool:
    p = L.p
    return len({(x + c * y) % p for x, y in L.pairs}) == p


def find_incompatible(L: PairList) -> int | None:
    """Some c in Z_p that is not compatible with L, or None.

    With distinct x_i and two pairs j < k with y_j != y_k, the value
    c = (x_k - x_j) / (y_j - y_k) makes x_j + c y_j = x_k + c y_k.
    Otherwise every c is scanned.
    """
    p = L.p
    xs = [x for x, _ in L.pairs]
    ys = [y for _, y in L.pairs]
    if len(set(xs)) == p and len(set(ys)) > 1:
        for j in range(p):
            for k in range(j + 1, p):
                if ys[j] != ys[k]:
                    return (xs[k] - xs[j]) * pow(ys[j] - ys[k], -1, p) % p
    for c in range(p):
        if not is_compatible(c, L):
            return c
    return None


def compatible_set(L: PairList) -> set[int]:
    return {c for c in range(L.p) if is_compatible(c, L)}
