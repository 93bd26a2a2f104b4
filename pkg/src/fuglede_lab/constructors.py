"""Explicit spectra and tiling complements in Z_{p^2} x Z_p, and ``decide``.

Directions are referred to by their unit-orbit representatives
``(0,1), (1,c), (p,c)``.  Every witness produced here is re-checked with
the direct certificates before it is returned; a failed check raises
``ConstructionError`` instead of producing a wrong verdict.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Iterator

from .certificates import is_spectral_pair, is_tiling_pair
from .fourier_zeros import fourier_tables, is_zero
from .group_core import (
    Elem,
    EmptySetError,
    FugledeError,
    GroupParams,
    SubsetMask,
    UnsupportedGroupError,
    iter_bits,
    proper_subgroup_containment,
    scalar_mul,
    translate,
    translate_bits,
)
from .search.oracles import brute_complement, brute_spectrum, coset_representatives, iter_complements
from .textio import format_group, subset_json

log = logging.getLogger(__name__)

ZP_SQUARE_MAX_P = 13


class ConstructionError(FugledeError):
    """A construction's precondition failed or its output did not verify."""


def _require_p2_by_p(G: GroupParams, what: str = "decide") -> None:
    if not G.is_p2_by_p:
        raise UnsupportedGroupError(f"{what} requires Z_{{p^2}}×Z_p, got {format_group(G)}")


class ZeroReps:
    """Which orbit representatives (0,1), (1,c), (p,c) are zeros of a set."""

    def __init__(self, A: SubsetMask):
        G = A.group
        tables = fourier_tables(G)
        self.p = G.p
        self.reps = set()
        for k in tables.zero_reps(A.bits):
            self.reps.add(tables.reps[k])

    def __contains__(self, d: tuple[int, int]) -> bool:
        return d in self.reps

    def __bool__(self) -> bool:
        return bool(self.reps)

    def one(self, c: int) -> bool:
        return (1, c) in self.reps

    def pc(self, c: int) -> bool:
        return (self.p, c) in self.reps

    @property
    def all_one(self) -> bool:
        return all(self.one(c) for c in range(self.p))

    @property
    def all_pc(self) -> bool:
        return all(self.pc(c) for c in range(self.p))

    def first(self) -> Elem | None:
        # orbit_representatives order
        p = self.p
        order = [(0, 1), (1, 0), (p, 0)] + [(p, c) for c in range(1, p)] + [(1, c) for c in range(1, p)]
        for d in order:
            if d in self.reps:
                return Elem(*d)
        return None


def _build(G: GroupParams, points) -> SubsetMask:
    return SubsetMask.from_elements(G, points)


# ---- #A = p ---------------------------------------------------------------------


def spectrum_for_size_p(A: SubsetMask, d: Elem) -> SubsetMask:
    """{r d : 0 <= r < p} for a p-element set A with d in Z_A."""
    G = A.group
    p = G.p
    if A.cardinality != p:
        raise ConstructionError(f"#A={A.cardinality} but p={p}")
    if not is_zero(A, d):
        raise ConstructionError("no zero direction")
    B = _build(G, (scalar_mul(r, d, G) for r in range(p)))
    if B.cardinality != p or not is_spectral_pair(A, B):
        raise ConstructionError(f"{{r d}} failed to be a spectrum for d={d}")
    return B


def tiling_complement_for_size_p(A: SubsetMask) -> tuple[SubsetMask, str]:
    """A tiling complement of a p-element set with nonempty Z_A.

    Cases are tried in order: (0,1), then (1,c), then (p,c) with c != 0,
    then (p,0).  Returns the complement and the case tag.
    """
    G = A.group
    _require_p2_by_p(G, "tiling_complement_for_size_p")
    p = G.p
    if A.cardinality != p:
        raise ConstructionError(f"#A={A.cardinality} but p={p}")
    z = ZeroReps(A)
    if not z:
        raise ConstructionError("no zero direction")
    if (0, 1) in z:
        B, tag = _build(G, ((x, 0) for x in range(p * p))), "Prop5-Case1"
    elif any(z.one(c) for c in range(p)):
        B, tag = _case2_lift(A), "Prop5-Case2"
    elif any(z.pc(c) for c in range(1, p)):
        c = next(c for c in range(1, p) if z.pc(c))
        B = _build(G, ((x + p * y, (p - c) * x) for x in range(p) for y in range(p)))
        tag = "Prop5-Case3"
    else:
        B = _build(G, ((p * y, w) for y in range(p) for w in range(p)))
        tag = "Prop5-Case4"
    if is_tiling_pair(A, B):
        return B, tag
    log.warning("%s complement failed for A=%#x; falling back to brute force", tag, A.bits)
    T = brute_complement(A)
    if T is None:
        raise ConstructionError(f"{tag} failed and A={A.bits:#x} does not tile")
    return T, "brute-force"


def _case2_lift(A: SubsetMask) -> SubsetMask:
    # A = {(xbar + p y_i, z_i)}; complement lifted from Z_p x Z_p
    G = A.group
    p = G.p
    if len({e.d1 % p for e in A}) != 1:
        raise ConstructionError("(1,c) zero but A is not in a single column")
    square = GroupParams(p, 1, 1)
    tilde = SubsetMask.from_elements(square, ((e.d1 // p, e.d2) for e in A))
    T = zp_square_complement(tilde)
    if T is None:
        raise ConstructionError("projected set does not tile Z_p x Z_p")
    return _build(G, ((x + p * y, w) for x in range(p) for (y, w) in T))


# ---- graph form ------------------------------------------------------------------


@dataclass(frozen=True)
class GraphForm:
    """B = {(i + p y_ij, z_ij)} with y_ij + c z_ij = j (mod p), one point per (i, j)."""

    c: int
    table: dict[tuple[int, int], Elem] = field(compare=False)

    def column(self, i: int, p: int) -> list[tuple[int, int]]:
        return [(self.table[i, j].d1 // p, self.table[i, j].d2) for j in range(p)]


def graph_form_detect(B: SubsetMask) -> int | None:
    """Smallest c with (p,0) and (1,c) in Z_B, for #B <= p^2."""
    G = B.group
    _require_p2_by_p(G, "graph_form_detect")
    p = G.p
    if B.is_empty() or B.cardinality > p * p:
        return None
    z = ZeroReps(B)
    if not z.pc(0):
        return None
    return next((c for c in range(p) if z.one(c)), None)


def graph_form_table(B: SubsetMask, c: int) -> GraphForm | None:
    """Reconstruct the (i, j) table; None if B is not of graph form for c."""
    G = B.group
    p = G.p
    if B.cardinality != p * p:
        return None
    table: dict[tuple[int, int], Elem] = {}
    for e in B:
        x, y = e.d1 % p, e.d1 // p
        cell = (x, (y + c * e.d2) % p)
        if cell in table:
            return None
        table[cell] = e
    return GraphForm(c % p, table)


def graph_form_spectrum(c: int, G: GroupParams) -> SubsetMask:
    _require_p2_by_p(G, "graph_form_spectrum")
    p = G.p
    return _build(G, ((j + p * i, c * j) for i in range(p) for j in range(p)))


def graph_form_complement(B: SubsetMask, c: int) -> SubsetMask:
    """C = {(p y, z) : (y, z) in T} with T a common complement of the columns.

    Complements of the i = 0 column are tried in search order until the
    lift tiles B; the line {y + c z = 0} always qualifies.
    """
    G = B.group
    _require_p2_by_p(G, "graph_form_complement")
    p = G.p
    form = graph_form_table(B, c)
    if form is None:
        raise ConstructionError(f"set is not of graph form for c={c}")
    square = GroupParams(p, 1, 1)
    omega = SubsetMask.from_elements(square, form.column(0, p))
    for T in zp_square_complements(omega):
        C = _build(G, ((p * y, w) for (y, w) in T))
        if is_tiling_pair(B, C):
            return C
    raise ConstructionError("no complement of the first column lifts to a complement of B")


def zp_square_complements(omega: SubsetMask) -> Iterator[SubsetMask]:
    G = omega.group
    if (G.n, G.m) != (1, 1):
        raise UnsupportedGroupError("expected a subset of Z_p x Z_p")
    if G.p > ZP_SQUARE_MAX_P:
        raise FugledeError(f"p={G.p} exceeds the search bound {ZP_SQUARE_MAX_P}")
    return iter_complements(omega)


def zp_square_complement(omega: SubsetMask) -> SubsetMask | None:
    """First T with omega + T = Z_p x Z_p in search order, or None."""
    return next(zp_square_complements(omega), None)


# ---- decide ----------------------------------------------------------------------


@dataclass(frozen=True)
class Decision:
    subset: SubsetMask
    is_spectral: bool
    spectrum: SubsetMask | None
    is_tile: bool
    complement: SubsetMask | None
    provenance: dict[str, str]

    def to_json(self) -> dict:
        out: dict = {
            "set": subset_json(self.subset),
            "is_spectral": self.is_spectral,
            "is_tile": self.is_tile,
            "provenance": dict(self.provenance),
        }
        if self.spectrum is not None:
            out["spectrum"] = subset_json(self.spectrum)
        if self.complement is not None:
            out["complement"] = subset_json(self.complement)
        return out


class _Verdicts:
    def __init__(self) -> None:
        self.spectral: tuple[bool, SubsetMask | None, str] | None = None
        self.tile: tuple[bool, SubsetMask | None, str] | None = None

    def done(self) -> bool:
        return self.spectral is not None and self.tile is not None


def _size_p_spectra(A, z, G):
    # spectra for p^2-sets, each guarded by the zeros it needs
    p = G.p
    c = graph_form_detect(A)
    if c is not None:
        yield graph_form_spectrum(c, G), "GraphForm"
    if z.all_one and (0, 1) in z:
        yield _build(G, ((x, w) for x in range(p) for w in range(p))), "Sec6-Case2-bar"
    if z.all_one:
        for cc in range(1, p):
            if z.pc(cc):
                yield _build(G, ((x + p * y, cc * y) for x in range(p) for y in range(p))), "Sec6-Case2-tilde"
                break
    if (0, 1) in z and z.all_pc:
        yield _build(G, ((p * y, w) for y in range(p) for w in range(p))), "Sec6-Case3-bar"


def _size_p2_complements(A, z, G):
    p = G.p
    c = graph_form_detect(A)
    if c is not None:
        yield graph_form_complement(A, c), "GraphForm"
    if z.all_one:
        for d in range(1, p):
            if z.pc(d):
                e = pow(-d, -1, p)
                yield _build(G, ((j, e * j) for j in range(p))), "Sec7-C"
                break
        if (0, 1) in z:
            yield _build(G, ((j, 0) for j in range(p))), "Sec7-D"
    if (0, 1) in z and z.all_pc:
        yield _build(G, ((p * i, 0) for i in range(p))), "Sec6-Case3"


def decide(A: SubsetMask) -> Decision:
    """Spectral and tile verdicts for a subset of Z_{p^2} x Z_p, with witnesses."""
    G = A.group
    _require_p2_by_p(G)
    if A.is_empty():
        raise EmptySetError()
    p = G.p
    N = G.order
    k = A.cardinality
    v = _Verdicts()
    full = SubsetMask.full(G)
    point = SubsetMask(G, 1)

    if k == 1:
        v.spectral = (True, point, "trivial")
        v.tile = (True, full, "trivial")
    elif k == N:
        v.spectral = (True, full, "trivial")
        v.tile = (True, point, "trivial")

    if v.spectral is None:
        if k % p:
            v.spectral = (False, None, "obstruction:divisibility")
        elif k > p * p:
            v.spectral = (False, None, "obstruction:large")
    if v.tile is None and N % k:
        v.tile = (False, None, "obstruction:divisibility")

    z = ZeroReps(A) if not v.done() else None
    if z is not None and not z:
        # a spectrum needs a nonzero difference in Z_A; a tiling needs Z_A u Z_T = G \ 0
        v.spectral = v.spectral or (False, None, "obstruction:no-zero")
        v.tile = v.tile or (False, None, "obstruction:no-zero")
    if v.spectral is None and k > p and not (z.one(0) or z.pc(0)):
        # a spectrum with more than p points has two sharing d2; their difference is (x,0), x != 0
        v.spectral = (False, None, "obstruction:pigeonhole")

    if not v.done() and k == p:
        if v.spectral is None:
            v.spectral = (True, spectrum_for_size_p(A, z.first()), "Prop5-spectrum")
        if v.tile is None:
            T, tag = tiling_complement_for_size_p(A)
            v.tile = (True, T, tag)

    if not v.done() and k == p * p:
        if v.spectral is None:
            for B, tag in _size_p_spectra(A, z, G):
                if is_spectral_pair(A, B):
                    v.spectral = (True, B, tag)
                    break
                raise ConstructionError(f"{tag} spectrum failed for A={A.bits:#x}")
        if v.tile is None:
            for T, tag in _size_p2_complements(A, z, G):
                if is_tiling_pair(A, T):
                    v.tile = (True, T, tag)
                    break
                raise ConstructionError(f"{tag} complement failed for A={A.bits:#x}")

    if not v.done():
        sub = proper_subgroup_containment(A)
        if sub.is_proper:
            shifted = translate(A, G.neg(sub.offset))
            H = sub.members.bits
            if v.spectral is None:
                B = brute_spectrum(shifted, within_subgroup=H)
                v.spectral = (B is not None, B, "subgroup-reduction")
            if v.tile is None:
                T = brute_complement(shifted, cells=H)
                if T is not None:
                    T = _extend_by_cosets(T, H, G)
                v.tile = (T is not None, T, "subgroup-reduction")

    if v.spectral is None:
        B = brute_spectrum(A)
        v.spectral = (B is not None, B, "brute-force")
    if v.tile is None:
        T = brute_complement(A)
        v.tile = (T is not None, T, "brute-force")

    is_spec, spectrum, spec_tag = v.spectral
    is_tile, complement, tile_tag = v.tile
    if is_spec and not is_spectral_pair(A, spectrum):
        raise ConstructionError(f"{spec_tag} spectrum does not verify for A={A.bits:#x}")
    if is_tile and not is_tiling_pair(A, complement):
        raise ConstructionError(f"{tile_tag} complement does not verify for A={A.bits:#x}")
    return Decision(A, is_spec, spectrum, is_tile, complement, {"spectral": spec_tag, "tile": tile_tag})


def _extend_by_cosets(T: SubsetMask, H: int, G: GroupParams) -> SubsetMask:
    # T tiles the subgroup H; adding coset representatives tiles G
    out = 0
    for r in iter_bits(coset_representatives(H, G)):
        out |= translate_bits(T.bits, r, G)
    return SubsetMask(G, out)
