"""Acceptance criteria 1-10, each at its stated tolerance.

Every test appends one ``[PASS]``/``[FAIL]`` line to the terminal summary.
"""

import random
import time

from conftest import ACCEPTANCE_LINES
from fuglede_lab.certificates import (
    PairList,
    compatible_set,
    find_incompatible,
    is_compatible,
    is_spectral_pair,
    is_tiling_pair,
)
from fuglede_lab.constructors import (
    ZeroReps,
    decide,
    graph_form_table,
    spectrum_for_size_p,
    tiling_complement_for_size_p,
)
from fuglede_lab.fourier_zeros import (
    fourier_value_float,
    is_zero,
    orbit_representatives,
    unit_orbit_bits,
    zero_bits,
    zero_set,
)
from fuglede_lab.group_core import GroupParams, SubsetMask, inner_product, translate_bits
from fuglede_lab.search.enumeration import canonical_classes, masks_of_size
from fuglede_lab.search.harness import SearchBudget, spot_check_large_sets, verify_conjecture
from fuglede_lab.search.oracles import brute_complement, brute_spectrum
from helpers import random_subset

G2 = GroupParams(2, 2, 1)
G3 = GroupParams(3, 2, 1)
FOURIER_GROUPS = [GroupParams(2, 3, 1), GroupParams(3, 2, 1), GroupParams(3, 2, 2), GroupParams(5, 2, 1)]


def record(n: int, ok: bool, detail: str) -> None:
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {n}: {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


def test_criterion_01_exhaustive_p2():
    start = time.perf_counter()
    r = verify_conjecture(G2, None, SearchBudget(worker_count=1))
    elapsed = time.perf_counter() - start
    ok = r.subsets_examined == 256 and not r.counterexamples and r.complete and elapsed < 5
    record(1, ok, f"{r.subsets_examined} subsets, {len(r.counterexamples)} counterexamples, {elapsed:.2f}s")


def test_criterion_02_p3_tile_sizes():
    budget = SearchBudget(worker_count=8)
    start = time.perf_counter()
    r1 = verify_conjecture(G3, [3, 9], budget, canonical=True)
    elapsed = time.perf_counter() - start
    r2 = verify_conjecture(G3, [3, 9], budget, canonical=True)
    classes = {s: r1.tallies[s]["examined"] for s in ("3", "9")}
    ok = (
        not r1.counterexamples
        and r1.complete
        and r1.subsets_represented == 2925 + 4686825
        and elapsed < 1800
        and r1.digest == r2.digest
    )
    record(2, ok, f"classes {classes}, {len(r1.counterexamples)} counterexamples, "
                  f"{elapsed:.1f}s with 8 workers, digest {r1.digest[:12]} reproduced={r1.digest == r2.digest}")


def _balanced_sample(G: GroupParams, d, rng: random.Random) -> SubsetMask | None:
    # X + {k g} with <d, g> of order p puts equal mass on each class mod p^(n-1)
    q = G.q1 // G.p
    gs = [g for g in G.elements() if inner_product(d, g, G) % G.q1 and inner_product(d, g, G) % q == 0]
    if not gs:
        return None
    g = rng.choice(gs)
    X = [G.element(i) for i in rng.sample(range(G.order), rng.randint(1, max(1, G.order // (2 * G.p))))]
    pts = {G.index(G.elem(x[0] + k * g[0], x[1] + k * g[1])) for x in X for k in range(G.p)}
    if len(pts) != G.p * len(X):
        return None
    return SubsetMask.from_indices(G, pts)


def test_criterion_03_exact_vs_float():
    rng = random.Random(2024)
    failures, zeros, min_nonzero, max_zero = 0, 0, float("inf"), 0.0
    for G in FOURIER_GROUPS:
        n = 0
        while n < 10_000:
            d = G.element(rng.randrange(G.order))
            A = _balanced_sample(G, d, rng) if n % 4 == 0 else None
            if A is None:
                A = random_subset(G, rng)
            exact = is_zero(A, d)
            value = abs(fourier_value_float(A, d))
            if exact:
                zeros += 1
                max_zero = max(max_zero, value)
                failures += value >= 1e-6
            else:
                min_nonzero = min(min_nonzero, value)
                failures += value <= 1e-4
            n += 1
    record(3, failures == 0, f"{len(FOURIER_GROUPS)}x10^4 pairs, {zeros} zeros, {failures} disagreements, "
                             f"max |zero| {max_zero:.1e}, min |nonzero| {min_nonzero:.3f}")


def test_criterion_04_orbit_closure():
    rng = random.Random(4)
    violations = 0
    for G in [GroupParams(2, 2, 1)] + FOURIER_GROUPS:
        orbits = [unit_orbit_bits(d, G) for d in orbit_representatives(G)]
        for _ in range(1000):
            A = random_subset(G, rng, rng.choice([G.p, G.p * G.p, rng.randint(1, G.order)]))
            Z = zero_set(A, method="elementwise").members.bits
            violations += any(Z & o and Z & o != o for o in orbits)
    record(4, violations == 0, f"5 groups x 10^3 subsets, {violations} orbit violations")


def test_criterion_05_compatible_values():
    bad = 0
    for p in (2, 3, 5, 7):
        for r in range(1, p):
            bad += compatible_set(PairList.of(p, [(r * i % p, i) for i in range(p)])) != set(range(p)) - {p - r}
    rng = random.Random(5)
    unverified = 0
    for _ in range(1000):
        p = rng.choice((2, 3, 5, 7, 11))
        xs = rng.sample(range(p), p)
        ys = [rng.randrange(p) for _ in range(p)]
        if len(set(ys)) == 1:
            ys[0] = (ys[0] + 1) % p
        L = PairList.of(p, zip(xs, ys))
        u = find_incompatible(L)
        unverified += u is None or is_compatible(u, L)
    record(5, bad == 0 and unverified == 0,
           f"{bad} wrong compatible sets over p in 2,3,5,7; {unverified}/1000 unverified incompatible values")


def test_criterion_06_size_p_witnesses():
    checked = fallbacks = failures = 0
    for G in (G2, G3):
        p = G.p
        for bits in masks_of_size(G.order, p):
            A = SubsetMask(G, bits)
            zb = zero_bits(A)
            if not zb:
                continue
            checked += 1
            for i in range(1, G.order):
                if zb >> i & 1:
                    failures += not is_spectral_pair(A, spectrum_for_size_p(A, G.element(i)))
            T, tag = tiling_complement_for_size_p(A)
            fallbacks += tag == "brute-force"
            failures += not is_tiling_pair(A, T)
    record(6, failures == 0 and fallbacks == 0,
           f"{checked} size-p sets with zeros, {failures} failures, {fallbacks} brute-force fallbacks")


def _orbits(G, reps):
    out = 0
    for d in reps:
        out |= unit_orbit_bits(d, G)
    return out


def test_criterion_07_claimed_zero_lists():
    mismatches = []
    for p in (2, 3):
        G = GroupParams(p, 2, 1)
        nonzero = G.full_bits & ~1
        build = lambda pts: SubsetMask.from_elements(G, pts)  # noqa: E731
        cases = [(
            "B1",
            build((x, 0) for x in range(p * p)),
            _orbits(G, [(1, c) for c in range(p)] + [(p, c) for c in range(p)]),
        )]
        for c in range(1, p):
            cases.append((
                f"B3[c={c}]",
                build((x + p * y, (p - c) * x) for x in range(p) for y in range(p)),
                nonzero & ~unit_orbit_bits((p, c), G),
            ))
        cases.append(("B4", build((p * y, z) for y in range(p) for z in range(p)),
                      nonzero & ~unit_orbit_bits((p, 0), G)))
        for d in range(1, p):
            e = pow(-d, -1, p)
            cases.append((
                f"C[d={d}]",
                build((j, e * j) for j in range(p)),
                _orbits(G, [(0, 1)] + [(p, dd) for dd in range(p) if dd != d]),
            ))
        cases.append(("D", build((j, 0) for j in range(p)), _orbits(G, [(p, dd) for dd in range(p)])))
        for name, B, expected in cases:
            if zero_set(B).members.bits != expected:
                mismatches.append(f"p={p} {name}")
    record(7, not mismatches, f"B1, B3, B4, C, D at p=2,3; mismatches: {mismatches or 'none'}")


def test_criterion_08_no_large_spectral_sets():
    r2 = spot_check_large_sets(G2, exhaustive=True)
    r3 = spot_check_large_sets(G3, SearchBudget(sample_count=100_000, random_seed=8))
    ok = not r2.counterexamples and not r3.counterexamples and r3.subsets_examined == 100_000
    record(8, ok, f"p=2 exhaustive {r2.subsets_examined} sets, p=3 {r3.subsets_examined} samples, "
                  f"{len(r2.counterexamples) + len(r3.counterexamples)} spectral or uncovered")


def _graph_form_violation(B: SubsetMask) -> bool | None:
    """None if the hypothesis fails, else whether the forced shape is violated."""
    p = B.group.p
    z = ZeroReps(B)
    cs = [c for c in range(p) if z.one(c)]
    if not z.pc(0) or not cs:
        return None
    return len(B) != p * p or any(graph_form_table(B, c) is None for c in cs)


def test_criterion_09_graph_form_forcing():
    hits = violations = 0
    for size in range(1, 5):
        for bits in masks_of_size(8, size):
            v = _graph_form_violation(SubsetMask(G2, bits))
            if v is not None:
                hits += 1
                violations += v
    rng = random.Random(9)
    for _ in range(100_000):
        v = _graph_form_violation(random_subset(G3, rng, rng.randint(1, 9)))
        if v is not None:
            hits += 1
            violations += v
    # translation classes make the p=3 check exhaustive as well
    for size in range(1, 10):
        for bits in canonical_classes(G3, size)[0]:
            v = _graph_form_violation(SubsetMask(G3, bits))
            if v is not None:
                hits += 1
                violations += v
    record(9, violations == 0, f"{hits} sets meeting the hypothesis, {violations} violations "
                               f"(p=2 exhaustive, p=3 10^5 random + all classes of size <= 9)")


def _agrees(A: SubsetMask) -> bool:
    d = decide(A)
    return d.is_spectral == (brute_spectrum(A) is not None) and d.is_tile == (brute_complement(A) is not None)


def test_criterion_10_oracle_agreement():
    disagree = sum(not _agrees(SubsetMask(G2, bits)) for bits in range(1, 256))
    rng = random.Random(10)
    pool = list(canonical_classes(G3, 3)[0]) + list(canonical_classes(G3, 9)[0])
    samples = 0
    for k in range(10_000):
        if k % 2:
            A = random_subset(G3, rng)
        else:
            A = SubsetMask(G3, translate_bits(rng.choice(pool), rng.randrange(27), G3))
        disagree += not _agrees(A)
        samples += 1
    record(10, disagree == 0, f"255 p=2 subsets + {samples} p=3 samples, {disagree} disagreements")
