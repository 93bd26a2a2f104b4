import random

from fuglede_lab.group_core import GroupParams, SubsetMask


def S(G: GroupParams, *elems) -> SubsetMask:
    return SubsetMask.from_elements(G, elems)


def random_subset(G: GroupParams, rng: random.Random, size: int | None = None) -> SubsetMask:
    if size is None:
        size = rng.randint(1, G.order)
    bits = 0
    for i in rng.sample(range(G.order), size):
        bits |= 1 << i
    return SubsetMask(G, bits)
