import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from naive_engine import Naive, from_engine
from ospq.algebra import NormalWord, NotHomogeneous, bigrade_check
from ospq.scalars import ONE, V, q_binomial, vpow
from ospq.weights import GammaElement, RootData, Weight, alpha, beta, eta
from strategies import monomials

QD = (V * V - vpow(-2)).inverse()


def test_generators_basic(alg2):
    assert alg2.K((0, 0)) == alg2.one()
    x = alg2.xi((1, 1))
    assert x * x == alg2.one()
    (w, c), = alg2.E(1).items()
    assert w == NormalWord((), (0, 0), (0, 0), (1,)) and c == ONE


def test_commutator_examples(alg2):
    assert (alg2.E(1) * alg2.F(2) - alg2.F(2) * alg2.E(1)).is_zero()
    lhs = alg2.E(1) * alg2.F(1) - alg2.F(1) * alg2.E(1)
    a = alg2.alphas[1]
    assert lhs == (alg2.K(a) - alg2.K(tuple(-t for t in a))) * QD


def test_xi_conjugates_odd_generator(alg2):
    x = alg2.xi((1, 1))
    assert x * alg2.E(2) * x == -alg2.E(2)
    assert x * alg2.E(1) * x == alg2.E(1)


def test_serre_examples(alg2, alg3):
    E = alg2.E
    r = E(1) * E(1) * E(2) - q_binomial(2, 1, V * V) * E(1) * E(2) * E(1) + E(2) * E(1) * E(1)
    assert r.is_zero()
    acc = alg2.zero()
    for k in range(4):
        acc = acc + ((-1) ** k) * q_binomial(3, k, V) * E(2) ** (3 - k) * E(1) * E(2) ** k
    assert acc.is_zero()
    assert (alg3.E(1) * alg3.E(3) - alg3.E(3) * alg3.E(1)).is_zero()
    assert (alg3.F(3) * alg3.F(1) - alg3.F(1) * alg3.F(3)).is_zero()


@pytest.mark.parametrize("l", [1, 2, 3])
def test_defining_relations_vanish(l):
    from ospq.algebra import algebra

    bad = [label for label, diff in algebra(l).defining_relations() if not diff.is_zero()]
    assert not bad


def test_zero_detection(alg1):
    assert alg1.zero().is_zero()
    assert (alg1.K((2,)) - alg1.K((2,))).is_zero()


def test_gradings_examples(alg2):
    assert alg2.E(2).mu() == GammaElement((0, 0))
    prod = alg2.F(2) * alg2.K(alg2.alphas[1])
    assert prod.delta() == GammaElement.of(Weight(alpha(2, 2)) + Weight(alpha(1, 2)))
    assert alg2.E(1).z2() == 0 and alg2.E(2).z2() == 1


def test_not_homogeneous_is_distinct_from_zero_degree(alg1):
    assert alg1.one().nu() == Weight((0,))
    with pytest.raises(NotHomogeneous):
        (alg1.E(1) + alg1.F(1)).nu()


@pytest.mark.parametrize("l", [1, 2, 3])
def test_bigrade_check(l):
    from ospq.algebra import algebra

    ok, failures = bigrade_check(algebra(l))
    assert ok, failures


def test_bigrade_generators(alg3):
    for i in range(1, 4):
        e, f = alg3.E(i), alg3.F(i)
        assert e.mu() == e.delta() + eta(e.nu())
        assert f.mu() == f.delta() + eta(f.nu())
        assert f.mu() == GammaElement.of(beta(i, 3))


@given(st.data())
def test_associativity_rank_one(data):
    from ospq.algebra import algebra

    alg = algebra(1)
    a = data.draw(monomials(alg, 3))[1]
    b = data.draw(monomials(alg, 3))[1]
    c = data.draw(monomials(alg, 3))[1]
    assert (a * b) * c == a * (b * c)


@given(st.data())
def test_associativity_rank_two(data):
    from ospq.algebra import algebra

    alg = algebra(2)
    a = data.draw(monomials(alg, 3))[1]
    b = data.draw(monomials(alg, 3))[1]
    c = data.draw(monomials(alg, 3))[1]
    assert (a * b) * c == a * (b * c)


@given(st.data())
def test_gradings_additive(data):
    from ospq.algebra import algebra

    alg = algebra(2)
    a = data.draw(monomials(alg))[1]
    b = data.draw(monomials(alg))[1]
    p = a * b
    if p.is_zero():
        return
    assert p.nu() == a.nu() + b.nu()
    assert p.delta() == a.delta() + b.delta()
    assert p.mu() == a.mu() + b.mu()
    assert p.z2() == (a.z2() + b.z2()) % 2


def test_normal_form_idempotent(alg2):
    x = alg2.parse("E1*F2*E2*F1 + v*K[2,0]*xi[1,0]*F1")
    again = alg2.element(dict(x.terms))
    for w, c in x.items():
        y = alg2.normalize(w.f, w.torus, w.gamma, w.e)
        assert y == alg2.element({w: ONE})
    assert again == x


def test_serre_reduction_order_independent(alg2):
    letters = (2, 1, 2, 2, 1)
    E = alg2.E
    left = alg2.one()
    for a in letters:
        left = left * E(a)
    right = alg2.one()
    for a in reversed(letters):
        right = E(a) * right
    mid = (E(2) * E(1)) * ((E(2) * E(2)) * E(1))
    assert left == right == mid


def _kostant(nu, roots):
    """Number of ways to write nu as a sum of positive roots (alpha coordinates)."""
    if not any(nu):
        return 1
    if any(x < 0 for x in nu) or not roots:
        return 0
    first, rest = roots[0], roots[1:]
    total, cur = 0, nu
    while all(x >= 0 for x in cur):
        total += _kostant(cur, rest)
        cur = tuple(x - r for x, r in zip(cur, first))
    return total


def test_standard_words_match_kostant_partition_rank_two(alg2):
    pos = [(1, 0), (0, 1), (1, 1), (1, 2)]
    for d in itertools.product(range(4), repeat=2):
        assert len(alg2.serre.standard_words(d)) == _kostant(d, pos), d


def test_standard_words_match_kostant_partition_rank_three(alg3):
    rd = RootData(3)
    from ospq.weights import alpha_coords

    pos = [alpha_coords(r) for r in rd.positive_roots_k]
    for d in itertools.product(range(3), repeat=3):
        assert len(alg3.serre.standard_words(d)) == _kostant(d, pos), d


# -- cross-check against the naive engine --------------------------------------


@given(st.data())
def test_products_match_naive_engine_rank_one(data):
    from ospq.algebra import algebra

    alg = algebra(1)
    naive = Naive(1)
    a = data.draw(monomials(alg, 3))[1]
    b = data.draw(monomials(alg, 3))[1]
    assert naive.equal(from_engine(a * b), naive.mul(from_engine(a), from_engine(b)))


@given(st.data())
def test_products_match_naive_engine_rank_two(data):
    from ospq.algebra import algebra

    alg = algebra(2)
    naive = Naive(2)
    a = data.draw(monomials(alg, 2))[1]
    b = data.draw(monomials(alg, 2))[1]
    p = a * b
    if max((len(w.f) for w in p.terms), default=0) > 2 or max((len(w.e) for w in p.terms), default=0) > 2:
        return
    assert naive.equal(from_engine(p), naive.mul(from_engine(a), from_engine(b)))
