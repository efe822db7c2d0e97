import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from polymat.corpus import fano, ingleton_violator_4, vamos
from polymat.ingleton import ingleton_delta, ingleton_scan
from polymat.linrep import rep_rank_function
from polymat.tensor import u23

from conftest import random_rep, random_table


def brute_delta(f, A, B, C, D):
    """Ingleton gap computed from label sets rather than bit tricks."""
    labels = f.ground.labels

    def val(*parts):
        members = set()
        for part in parts:
            members |= {labels[i] for i in range(len(labels)) if part >> i & 1}
        return f.value(sorted(members))

    return (val(A, B) + val(A, C) + val(B, C) + val(A, D) + val(B, D)
            - val(A) - val(B) - val(A, B, C) - val(A, B, D) - val(C, D))


def brute_scan(f):
    size = 1 << f.ground.n
    for q in itertools.product(range(size), repeat=4):
        if brute_delta(f, *q) < 0:
            return q
    return None


def test_vamos_violation():
    v = vamos()
    G = v.ground
    A, B, C, D = (G.mask([x, x + "'"]) for x in "abcd")
    report = ingleton_delta(v, A, B, C, D)
    assert report.delta == -1 and not report.satisfied
    assert report.quadruple == (3, 12, 48, 192)


def test_violator_exhaustive():
    report = ingleton_scan(ingleton_violator_4())
    assert report.quadruple == (1, 2, 4, 8) and report.delta == -1


def test_no_violation_for_u23():
    assert ingleton_scan(u23()) is None


def test_exhaustive_cap():
    with pytest.raises(ValueError):
        ingleton_scan(fano())
    with pytest.raises(ValueError):
        ingleton_scan(u23(), mode="bogus")


def test_sample_mode_is_deterministic():
    f = ingleton_violator_4()
    a = ingleton_scan(f, "sample", k=20000, seed=2)
    b = ingleton_scan(f, "sample", k=20000, seed=2)
    assert a == b and a is not None and a.delta < 0
    # only 4 of the 65536 quadruples violate, so small samples usually miss
    assert ingleton_scan(f, "sample", k=100, seed=2) is None
    # a sample can only find violations an exhaustive scan also finds
    assert a.quadruple >= ingleton_scan(f).quadruple
    assert ingleton_scan(fano(), "sample", k=5000, seed=1) is None


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 2), st.integers(0, 2**32))
def test_scan_matches_brute_force(n, seed):
    f = random_table(random.Random(seed), n, lo=0, hi=3, den=1)
    expected = brute_scan(f)
    got = ingleton_scan(f)
    if expected is None:
        assert got is None
    else:
        assert got.quadruple == expected
        assert got.delta == brute_delta(f, *expected) < 0


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 15), st.integers(0, 15), st.integers(0, 15), st.integers(0, 15))
def test_delta_matches_brute_force_on_violator(A, B, C, D):
    f = ingleton_violator_4()
    assert ingleton_delta(f, A, B, C, D).delta == brute_delta(f, A, B, C, D)


@settings(max_examples=20, deadline=None)
@given(st.sampled_from([2, 3]), st.integers(1, 4), st.integers(0, 2**32))
def test_linear_rank_functions_satisfy_ingleton(p, d, seed):
    rep = random_rep(random.Random(seed), p, 4, d)
    assert ingleton_scan(rep_rank_function(rep)) is None
