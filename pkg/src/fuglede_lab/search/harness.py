"""Exhaustive and sampled checks of "spectral <=> tile".

Work is split into contiguous chunks of the enumeration stream.  Each chunk
produces a partial report; partial reports merge by field-wise addition and
list concatenation in chunk order, so the worker count never changes the
result.
"""

from __future__ import annotations

import hashlib
import json
import os
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from math import comb

from ..certificates import direction_coverage, is_spectral_pair
from ..constructors import decide
from ..fourier_zeros import zero_bits
from ..group_core import FugledeError, GroupParams, SubsetMask
from ..textio import format_group, subset_json
from .enumeration import canonical_classes, masks_of_size
from .oracles import brute_complement, brute_spectrum

WORKERS_ENV = "FUGLEDE_LAB_WORKERS"


def default_workers() -> int:
    try:
        return max(1, int(os.environ.get(WORKERS_ENV, "1")))
    except ValueError:
        return 1


@dataclass(frozen=True)
class SearchBudget:
    max_group_order: int = 1 << 10
    max_subsets: int | None = None
    worker_count: int = 1
    random_seed: int = 0
    sample_count: int = 1000

    def __post_init__(self) -> None:
        for name in ("max_group_order", "worker_count", "sample_count"):
            if getattr(self, name) < 1:
                raise FugledeError(f"{name} must be positive")
        if self.max_subsets is not None and self.max_subsets < 1:
            raise FugledeError("max_subsets must be positive")


@dataclass
class Report:
    group: str
    mode: str
    canonical: bool = False
    sizes: list[int] = field(default_factory=list)
    subsets_examined: int = 0
    subsets_represented: int = 0
    counterexamples: list[dict] = field(default_factory=list)
    tallies: dict[str, dict[str, int]] = field(default_factory=dict)
    provenance: dict[str, int] = field(default_factory=dict)
    complete: bool = True
    wall_clock: float = 0.0
    rows: list[list] | None = None

    def merge(self, other: Report) -> None:
        self.subsets_examined += other.subsets_examined
        self.subsets_represented += other.subsets_represented
        self.counterexamples.extend(other.counterexamples)
        for size, t in other.tallies.items():
            mine = self.tallies.setdefault(size, {})
            for key, val in t.items():
                mine[key] = mine.get(key, 0) + val
        for tag, n in other.provenance.items():
            self.provenance[tag] = self.provenance.get(tag, 0) + n
        if other.rows is not None:
            if self.rows is None:
                self.rows = []
            self.rows.extend(other.rows)
        self.complete = self.complete and other.complete

    def to_json(self, with_timing: bool = True) -> dict:
        out = {
            "group": self.group,
            "mode": self.mode,
            "canonical": self.canonical,
            "sizes": self.sizes,
            "subsets_examined": self.subsets_examined,
            "subsets_represented": self.subsets_represented,
            "counterexamples": self.counterexamples,
            "tallies": {k: self.tallies[k] for k in sorted(self.tallies, key=int)},
            "provenance": dict(sorted(self.provenance.items())),
            "complete": self.complete,
        }
        out["digest"] = hashlib.sha256(
            json.dumps(out, sort_keys=True, separators=(",", ":")).encode()
        ).hexdigest()
        if with_timing:
            out["wall_clock"] = round(self.wall_clock, 3)
        return out

    @property
    def digest(self) -> str:
        return self.to_json(with_timing=False)["digest"]


def _bump(d: dict, key: str, n: int = 1) -> None:
    d[key] = d.get(key, 0) + n


def _examine_chunk(args) -> Report:
    p, n, m, mode, items, want_rows = args
    G = GroupParams(p, n, m)
    rep = Report(group=format_group(G), mode=mode, rows=[] if want_rows else None)
    for bits, weight in items:
        A = SubsetMask(G, bits)
        size = str(A.cardinality)
        if not bits:
            # the empty set is neither spectral nor a tile
            spectral = tile = False
            tags = ("empty", "empty")
            payload = lambda A=A: {"set": []}  # noqa: E731
        elif mode == "theorem":
            dec = decide(A)
            spectral, tile = dec.is_spectral, dec.is_tile
            tags = (dec.provenance["spectral"], dec.provenance["tile"])
            payload = dec.to_json
        else:
            B = brute_spectrum(A)
            T = brute_complement(A)
            spectral, tile = B is not None, T is not None
            tags = ("brute-force", "brute-force")

            def payload(A=A, B=B, T=T):
                out = {"set": subset_json(A), "is_spectral": B is not None, "is_tile": T is not None}
                if B is not None:
                    out["spectrum"] = subset_json(B)
                if T is not None:
                    out["complement"] = subset_json(T)
                return out

        rep.subsets_examined += 1
        rep.subsets_represented += weight
        t = rep.tallies.setdefault(size, {})
        _bump(t, "examined")
        _bump(t, "represented", weight)
        _bump(t, "spectral", int(spectral))
        _bump(t, "tile", int(tile))
        _bump(rep.provenance, "spectral:" + tags[0])
        _bump(rep.provenance, "tile:" + tags[1])
        if spectral != tile:
            rep.counterexamples.append(payload())
        if rep.rows is not None:
            rep.rows.append([hex(bits), A.cardinality, spectral, tile, f"{tags[0]}|{tags[1]}"])
    return rep


def _work_items(G: GroupParams, sizes: list[int], canonical: bool):
    for size in sizes:
        if canonical:
            masks, weights = canonical_classes(G, size)
            yield from zip(masks, weights)
        else:
            for bits in masks_of_size(G.order, size):
                yield bits, 1


def _total_items(G: GroupParams, sizes: list[int], canonical: bool) -> int:
    if canonical:
        return sum(len(canonical_classes(G, s)[0]) for s in sizes)
    return sum(comb(G.order, s) for s in sizes)


def verify_conjecture(
    G: GroupParams,
    sizes: list[int] | None = None,
    budget: SearchBudget | None = None,
    canonical: bool = False,
    mode: str | None = None,
    rows: bool = False,
    chunk_size: int = 2048,
) -> Report:
    """Check spectral <=> tile on every enumerated subset of the given sizes.

    ``mode`` is ``theorem`` (Z_{p^2} x Z_p, verdicts from ``decide``) or
    ``exploration`` (any group, verdicts from the brute-force oracles).
    The empty set counts as neither spectral nor a tile.
    """
    budget = budget or SearchBudget()
    if mode is None:
        mode = "theorem" if G.is_p2_by_p else "exploration"
    if mode == "theorem" and not G.is_p2_by_p:
        raise FugledeError("theorem mode requires Z_{p^2}×Z_p")
    if mode not in ("theorem", "exploration"):
        raise FugledeError(f"unknown mode {mode!r}")
    if G.order > budget.max_group_order:
        raise FugledeError(f"group order {G.order} exceeds budget max_group_order={budget.max_group_order}")
    if sizes is None:
        sizes = list(range(G.order + 1))
    sizes = sorted(set(sizes))
    if any(s < 0 or s > G.order for s in sizes):
        raise FugledeError(f"sizes must lie in 0..{G.order}")

    start = time.perf_counter()
    total = _total_items(G, sizes, canonical)
    limit = total if budget.max_subsets is None else min(total, budget.max_subsets)
    items = []
    for i, item in enumerate(_work_items(G, sizes, canonical)):
        if i >= limit:
            break
        items.append(item)
    chunks = [items[i:i + chunk_size] for i in range(0, len(items), chunk_size)]
    args = [(G.p, G.n, G.m, mode, ch, rows) for ch in chunks]

    report = Report(group=format_group(G), mode=mode, canonical=canonical, sizes=sizes,
                    rows=[] if rows else None)
    if budget.worker_count > 1 and len(chunks) > 1:
        with ProcessPoolExecutor(max_workers=budget.worker_count) as pool:
            for part in pool.map(_examine_chunk, args):
                report.merge(part)
    else:
        for a in args:
            report.merge(_examine_chunk(a))
    report.complete = limit == total
    report.wall_clock = time.perf_counter() - start
    return report


def spot_check_large_sets(
    G: GroupParams, budget: SearchBudget | None = None, exhaustive: bool = False
) -> Report:
    """Look for spectral sets with p^(n+m-1) < #A < p^(n+m).

    A spectrum of such a set is as large as the set, so its differences meet
    every unit orbit and Z_A would have to be all of G minus 0.  Sets passing
    that test are handed to the clique search.  Sets whose own differences
    miss an orbit are recorded as counterexamples to direction covering.
    """
    budget = budget or SearchBudget()
    start = time.perf_counter()
    lo = G.order // G.p
    sizes = list(range(lo + 1, G.order))
    rep = Report(group=format_group(G), mode="large-sets", sizes=sizes)
    if exhaustive:
        stream = (bits for s in sizes for bits in masks_of_size(G.order, s))
    else:
        rng = random.Random(budget.random_seed)

        def sample():
            for _ in range(budget.sample_count):
                s = rng.choice(sizes)
                bits = 0
                for i in rng.sample(range(G.order), s):
                    bits |= 1 << i
                yield bits

        stream = sample() if sizes else iter(())
    nonzero = G.full_bits & ~1
    for bits in stream:
        A = SubsetMask(G, bits)
        size = str(A.cardinality)
        t = rep.tallies.setdefault(size, {})
        _bump(t, "examined")
        rep.subsets_examined += 1
        rep.subsets_represented += 1
        missed = direction_coverage(A)
        if missed is not None:
            rep.counterexamples.append({"set": subset_json(A), "uncovered_direction": str(missed)})
        if zero_bits(A) != nonzero:
            _bump(rep.provenance, "zero-set-incomplete")
            continue
        _bump(rep.provenance, "brute-force")
        B = brute_spectrum(A)
        if B is not None and is_spectral_pair(A, B):
            _bump(t, "spectral")
            rep.counterexamples.append({"set": subset_json(A), "spectrum": subset_json(B)})
    rep.wall_clock = time.perf_counter() - start
    return rep
