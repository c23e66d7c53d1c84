import random

import pytest
from hypothesis import given, strategies as st

from reinhardt import NotInDomain, SigmaZero, invariant_set, mu_min, r_order, sigma_count
from reinhardt.reduction import invert_negative_exponents, split_zero_exponents

SQRT2_15 = 1.41421356237309


def test_sigma_examples():
    assert sigma_count((2, 1), (0, 0)) == 2
    assert sigma_count((2, 1), (0.5, 0.5)) == 0
    assert sigma_count((2, -1, 3), (0, 1, 0.5)) == 1


def test_mu_examples():
    assert mu_min((2, 1), (0, 0)) == 1
    assert mu_min((3, 2), (0, 0)) == 2
    assert mu_min((5, 1, 2), (0.3, 0, 0)) == 1


def test_mu_needs_vanishing_coordinate():
    with pytest.raises(SigmaZero):
        mu_min((2, 1), (0.5, 0.5))


def test_r_examples():
    assert r_order((2, 1), (0, 0)) == 3
    assert r_order((3, 2), (0.5, 0.5)) == 1
    assert r_order((1, SQRT2_15), (0.5, 0)) == SQRT2_15


def test_invariant_set_examples():
    s = invariant_set((2, 1), (0, 0))
    assert (s.sigma, s.mu, s.r) == (2, 1, 3)
    s = invariant_set((2, 1), (0.5, 0.5))
    assert (s.sigma, s.mu, s.r) == (0, None, 1)
    s = invariant_set((3, 2), (0, 0))
    assert (s.sigma, s.mu, s.r) == (2, 2, 5)


def test_base_point_must_be_in_domain():
    with pytest.raises(NotInDomain):
        sigma_count((2, 1), (1, 1))
    with pytest.raises(NotInDomain):
        invariant_set((2, -1), (0.5, 0))


def _random_case(rng: random.Random):
    n = rng.randint(2, 5)
    alpha = [rng.choice([0, rng.uniform(-3, -0.2), rng.uniform(0.2, 3), rng.randint(1, 6)]) for _ in range(n)]
    if not any(alpha):
        alpha[0] = 1.5
    a = []
    for x in alpha:
        if x > 0 and rng.random() < 0.5:
            a.append(0j)
        elif x < 0:
            a.append(complex(rng.uniform(1.5, 3), rng.uniform(-1, 1)))
        else:
            a.append(complex(rng.uniform(-0.5, 0.5), rng.uniform(-0.5, 0.5)) or 0.1)
    return alpha, a


@given(st.integers(0, 10**6))
def test_invariant_set_relations(seed):
    alpha, a = _random_case(random.Random(seed))
    try:
        inv = invariant_set(alpha, a)
    except NotInDomain:
        return
    assert (inv.mu is None) == (inv.sigma == 0)
    if inv.sigma == 0:
        assert inv.r == 1
    else:
        assert inv.mu <= inv.r
        assert (inv.mu == inv.r) == (inv.sigma == 1)


@given(st.integers(0, 10**6))
def test_invariants_survive_reductions(seed):
    alpha, a = _random_case(random.Random(seed))
    try:
        inv = invariant_set(alpha, a)
    except NotInDomain:
        return
    a1, p1 = split_zero_exponents(alpha, a)
    assert invariant_set(a1, p1) == inv
    a2, p2 = invert_negative_exponents(a1, p1)
    assert invariant_set(a2, p2) == inv


@given(st.integers(0, 10**6), st.randoms())
def test_invariants_permutation_invariant(seed, rnd):
    alpha, a = _random_case(random.Random(seed))
    try:
        inv = invariant_set(alpha, a)
    except NotInDomain:
        return
    order = list(range(len(alpha)))
    rnd.shuffle(order)
    other = invariant_set([alpha[j] for j in order], [a[j] for j in order])
    assert other.sigma == inv.sigma and other.mu == inv.mu
    assert other.r == pytest.approx(inv.r, rel=1e-15)


@given(st.lists(st.integers(-6, 6), min_size=2, max_size=5).filter(any), st.integers(0, 10**6))
def test_r_integer_for_integer_alpha(alpha, seed):
    rng = random.Random(seed)
    a = [0j if (x > 0 and rng.random() < 0.6) else (2 + 0j if x < 0 else 0.3 + 0j) for x in alpha]
    try:
        r = r_order(alpha, a)
    except NotInDomain:
        return
    assert float(r).is_integer() and r >= 1
