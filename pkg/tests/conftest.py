import random

import pytest

from kjdt.poset import Shape, bits
from kjdt.tableau import Tableau


def random_ideal(rng: random.Random, poset, max_size=None) -> int:
    """Random lower order ideal mask built by a random growth walk."""
    size_cap = poset.n if max_size is None else min(max_size, poset.n)
    target = rng.randint(0, size_cap)
    mask = 0
    for _ in range(target):
        addable = poset.minimal_absent_boxes(mask)
        if not addable:
            break
        mask |= 1 << rng.choice(addable)
    return mask


def random_skew_tableau(rng: random.Random, poset, max_size=None, jitter=2) -> Tableau:
    """Random increasing tableau on a random skew shape of the poset."""
    outer = random_ideal(rng, poset, max_size)
    # random sub-ideal of outer as the inner shape
    sub = 0
    grow = rng.randint(0, outer.bit_count())
    for _ in range(grow):
        addable = [
            i
            for i in bits(outer & ~sub)
            if not (poset.below[i] & outer & ~sub & ~(1 << i))
        ]
        if not addable:
            break
        sub |= 1 << rng.choice(addable)
    inner = sub
    mask = outer & ~inner
    vals = {}
    for i in bits(mask):
        lo = 1 + max(
            (vals[j] for j in poset.down[i] if mask & (1 << j)), default=0
        )
        vals[i] = lo + rng.randint(0, jitter)
    values = tuple(vals[i] for i in bits(mask))
    return Tableau(poset, mask, values)


@pytest.fixture
def rng():
    return random.Random(20130623)
