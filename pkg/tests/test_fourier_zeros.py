import random

import pytest
from hypothesis import given, settings, strategies as st

from fuglede_lab.fourier_zeros import (
    fourier_value_float,
    is_zero,
    orbit_representatives,
    plane_counts,
    unit_orbit,
    unit_orbit_bits,
    zero_bits,
    zero_set,
)
from fuglede_lab.group_core import EmptySetError, GroupParams, SubsetMask, translate
from helpers import S, random_subset

GROUPS = [GroupParams(2, 2, 1), GroupParams(3, 2, 1), GroupParams(2, 3, 1), GroupParams(3, 2, 2), GroupParams(5, 2, 1)]


def B1(G):
    return SubsetMask.from_elements(G, [(x, 0) for x in range(G.q1)])


def test_plane_counts_examples(G2):
    assert plane_counts(B1(G2), (1, 1)).counts == (1, 1, 1, 1)
    assert plane_counts(SubsetMask.empty(G2), (1, 0)).counts == (0, 0, 0, 0)
    assert plane_counts(S(G2, (0, 0), (1, 0)), (2, 1)).counts == (1, 0, 1, 0)


def test_is_zero_examples(G2):
    assert is_zero(S(G2, (0, 0), (1, 0), (2, 1), (3, 1)), (1, 0))
    assert is_zero(S(G2, (0, 0), (1, 0)), (2, 0))
    for A in (S(G2, (0, 0)), B1(G2), SubsetMask.full(G2)):
        assert not is_zero(A, (0, 0))
    with pytest.raises(EmptySetError):
        is_zero(SubsetMask.empty(G2), (1, 0))


def test_zero_set_examples(G2):
    assert zero_set(S(G2, (0, 0), (1, 0))).members == S(G2, (2, 0), (2, 1))
    full = zero_set(SubsetMask.full(G2))
    assert len(full) == 7 and (0, 0) not in full
    assert len(zero_set(S(G2, (3, 1)))) == 0


@pytest.mark.parametrize("G", GROUPS, ids=str)
def test_zero_set_methods_agree(G):
    rng = random.Random(7)
    for _ in range(40):
        A = random_subset(G, rng)
        assert zero_set(A, "orbit") == zero_set(A, "elementwise")


def test_fourier_value_float_examples(G2):
    assert abs(fourier_value_float(S(G2, (0, 0), (1, 0)), (2, 0))) < 1e-12
    assert fourier_value_float(S(G2, (0, 0), (1, 0), (3, 1)), (0, 0)) == pytest.approx(3)
    assert abs(fourier_value_float(B1(G2), (1, 0))) < 1e-12


def test_unit_orbit_examples(G2, G3):
    assert unit_orbit((0, 0), G3) == {(0, 0)}
    assert unit_orbit((2, 1), G2) == {(2, 1)}
    assert unit_orbit((1, 0), G3) == {(r, 0) for r in (1, 2, 4, 5, 7, 8)}


def test_orbit_representatives_examples(G2, G3):
    assert orbit_representatives(G2) == [(0, 1), (1, 0), (2, 0), (2, 1), (1, 1)]
    assert len(orbit_representatives(G3)) == 7


@pytest.mark.parametrize("G", GROUPS, ids=str)
def test_orbits_partition_nonzero_elements(G):
    bits = 0
    for d in orbit_representatives(G):
        ob = unit_orbit_bits(d, G)
        assert not bits & ob
        bits |= ob
    assert bits == G.full_bits & ~1


@st.composite
def subset_and_direction(draw):
    G = draw(st.sampled_from(GROUPS))
    A = SubsetMask(G, draw(st.integers(1, G.full_bits)))
    d = G.element(draw(st.integers(0, G.order - 1)))
    return A, d


@settings(max_examples=150)
@given(subset_and_direction())
def test_exact_matches_float(data):
    A, d = data
    value = abs(fourier_value_float(A, d))
    if is_zero(A, d):
        assert value < 1e-6
    else:
        assert value > 1e-4


@settings(max_examples=80)
@given(subset_and_direction(), st.integers(1, 10**4))
def test_zero_orbit_closure(data, r):
    A, d = data
    G = A.group
    if r % G.p == 0:
        r += 1
    if is_zero(A, d):
        assert is_zero(A, G.elem(r * d[0], r * d[1]))


@settings(max_examples=80)
@given(subset_and_direction())
def test_zero_set_forces_divisibility(data):
    A, _ = data
    if zero_bits(A):
        assert len(A) % A.group.p == 0


@settings(max_examples=80)
@given(subset_and_direction(), st.integers(0, 10**6))
def test_zero_set_translation_invariant(data, g):
    A, d = data
    G = A.group
    assert zero_bits(translate(A, G.element(g % G.order))) == zero_bits(A)
    assert plane_counts(A, d).total == len(A)
