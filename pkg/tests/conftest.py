import itertools
import math
import random
from fractions import Fraction

import pytest

from polymat.linrep import LinearRep, make_rep
from polymat.setfn import from_values


def random_rep(rng: random.Random, p: int, n: int, d: int, max_gens: int = 2) -> LinearRep:
    labels = [chr(ord("a") + i) for i in range(n)]
    subspaces = [[tuple(rng.randrange(p) for _ in range(d)) for _ in range(rng.randint(0, max_gens))]
                 for _ in range(n)]
    return make_rep(labels, p, d, subspaces)


def random_table(rng: random.Random, n: int, lo=-2, hi=4, den=4, zero_empty=True):
    vals = [Fraction(rng.randint(lo * den, hi * den), den) for _ in range(1 << n)]
    if zero_empty:
        vals[0] = Fraction(0)
    return from_values([chr(ord("a") + i) for i in range(n)], vals)


def span_set(vectors, p, d):
    """All members of the span, by enumerating every coefficient vector."""
    out = set()
    for coeffs in itertools.product(range(p), repeat=len(vectors)):
        out.add(tuple(sum(c * v[i] for c, v in zip(coeffs, vectors)) % p for i in range(d)))
    return out or {(0,) * d}


def dim_of(members, p):
    return round(math.log(len(members), p))


@pytest.fixture
def rng():
    return random.Random(20261016)
