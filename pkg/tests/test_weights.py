import itertools
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ospq.weights import (
    GammaElement,
    LatticeError,
    RootData,
    Weight,
    WeylElement,
    alpha,
    beta,
    cartan_pair,
    eta,
    from_alpha_coords,
    fundamental,
    pair,
    parity,
    sign_identity,
)
from strategies import pk_weights, weights


def test_root_counts_rank_two():
    rd = RootData(2)
    assert len(rd.roots_k) == 8
    assert len(rd.positive_roots_k) == 4


@pytest.mark.parametrize("l", [1, 2, 3])
def test_root_system_sizes(l):
    rd = RootData(l)
    assert len(rd.positive_roots_k) == l * l
    assert len(rd.weyl_group) == 2**l * [1, 1, 2, 6][l]


def test_rho_half_sum():
    assert tuple(RootData(1).rho) == (1,)
    assert tuple(RootData(2).rho) == (3, 1)
    assert tuple(RootData(3).rho) == (5, 3, 1)


def test_rho_literal_sum_is_twice_half_sum():
    assert tuple(RootData(2, "literal").rho) == (6, 2)


def test_rank_zero_rejected():
    with pytest.raises(ValueError):
        RootData(0)


def test_pair_examples():
    assert pair(beta(1, 2), beta(1, 2)) == 1
    assert pair(fundamental(2, 2), alpha(1, 2)) == 0
    assert pair(Weight.zero(2), alpha(2, 2)) == 0


def test_cartan_pair_examples():
    assert cartan_pair(alpha(2, 2), alpha(1, 2)) == -1
    assert cartan_pair(alpha(1, 2), alpha(2, 2)) == -2
    with pytest.raises(ZeroDivisionError):
        cartan_pair(alpha(1, 2), Weight.zero(2))


@given(weights(3))
def test_cartan_self_pairing(mu):
    if any(mu):
        assert cartan_pair(mu, mu) == 2


def test_eta_examples():
    assert eta(alpha(2, 2)) == GammaElement((0, 0))
    assert eta(alpha(1, 2)) == GammaElement((0, 1))


@given(weights(3, even=True))
def test_eta_of_double_is_zero(nu):
    assert not any(eta(Weight(2 * t for t in nu)))


@given(weights(3, even=True), weights(3, even=True))
def test_eta_additive(a, b):
    assert eta(Weight(a) + Weight(b)) == eta(a) + eta(b)


def test_eta_rejects_outside_pg():
    with pytest.raises(LatticeError):
        eta((1, 1))


def test_parity_examples():
    assert parity(alpha(3, 3)) == 1
    assert parity(alpha(1, 3)) == 0 and parity(alpha(2, 3)) == 0
    with pytest.raises(LatticeError):
        parity((1,))


@pytest.mark.parametrize("l", [1, 2, 3])
def test_sign_identity_grid(l):
    pts = [from_alpha_coords(c) for c in itertools.product(range(3), repeat=l)]
    for a, b in itertools.product(pts, repeat=2):
        assert sign_identity(a, b)[0]


def test_sign_identity_simple_roots():
    l = 3
    for i, j in itertools.product(range(1, l + 1), repeat=2):
        ok, lhs, rhs = sign_identity(alpha(i, l), alpha(j, l))
        assert ok and lhs == (1 if i == j == l else 0)


@given(weights(2), weights(2))
def test_pair_symmetric_bilinear(a, b):
    assert pair(a, b) == pair(b, a)
    assert pair(Weight(a) + Weight(b), b) == pair(a, b) + pair(b, b)


def test_dot_action_rank_one():
    rd = RootData(1)
    s = rd.simple_reflections()[0]
    for t in range(-3, 5):
        assert tuple(rd.dot(s, (t,))) == (-t - 2,)
    assert tuple(rd.dot(WeylElement.identity(1), (3,))) == (3,)


@pytest.mark.parametrize("l", [1, 2])
def test_dot_fixes_minus_rho(l):
    rd = RootData(l)
    minus_rho = -rd.rho
    assert all(rd.dot(w, minus_rho) == minus_rho for w in rd.weyl_group)


@given(st.data())
def test_dot_is_group_action(data):
    rd = RootData(2)
    w1 = data.draw(st.sampled_from(rd.weyl_group))
    w2 = data.draw(st.sampled_from(rd.weyl_group))
    lam = data.draw(pk_weights(2))
    assert rd.dot(w1 * w2, lam) == rd.dot(w1, rd.dot(w2, lam))


def test_weyl_pairs_round_trip():
    rd = RootData(3)
    for w in rd.weyl_group:
        assert WeylElement.from_pairs(w.to_pairs()).apply((1, 3, 5)) == w.apply((1, 3, 5))


def test_lattice_membership():
    assert Weight((1, 1)).in_pk() and not Weight((1, 1)).in_pg()
    assert not Weight((1, 2)).in_pk()
    assert Weight((2, 0)).in_pg()


def test_pair_is_exact_fraction():
    assert pair((1,), (1,)) == Fraction(1, 4)
