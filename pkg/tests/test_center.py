import pytest
from hypothesis import given
from hypothesis import strategies as st

from ospq.hc_center import (
    Character,
    SolverError,
    TorusElement,
    certificate,
    evaluate,
    even_torus_invariant_check,
    hc_formula_check,
    hc_product_formula,
    solve_anticentral,
    solve_central,
    upsilon,
    weyl_dot,
)
from ospq.scalars import ONE, V, vpow
from ospq.weights import RootData, WeylElement
from strategies import monomials, pk_weights

QD = (V * V - vpow(-2)).inverse()


def torus(l, items):
    return TorusElement(l, {(tuple(mu), tuple(g)): c for mu, g, c in items})


def test_upsilon_examples(alg1):
    x = alg1.K((2,)) * alg1.xi((1,))
    assert upsilon(x).to_element() == x
    assert len(upsilon(alg1.F(1) * alg1.K((2,)))) == 0
    want = (alg1.K((2,)) - alg1.K((-2,))) * QD
    assert upsilon(alg1.E(1) * alg1.F(1)).to_element() == want


@given(st.data())
def test_upsilon_kills_outer_words(data):
    from ospq.algebra import algebra

    alg = algebra(2)
    _, x = data.draw(monomials(alg, 2))
    for i in (1, 2):
        assert len(upsilon(alg.F(i) * x)) == 0
        assert len(upsilon(x * alg.E(i))) == 0


def test_upsilon_multiplicative_on_torus(alg2):
    a = alg2.K((2, 0)) * alg2.xi((1, 0)) + alg2.K((0, -2)) * V
    b = alg2.K((2, 2)) - alg2.xi((1, 1))
    assert upsilon(a * b) == upsilon(a) * upsilon(b)


def test_evaluate_examples():
    assert evaluate(torus(2, [((2, 0), (0, 0), ONE)]), Character.linear((2, 0))) == vpow(2)
    for th in ((0, 0), (1, 0), (0, 1), (1, 1)):
        chi = Character.linear((0, 0), th)
        expected = -1 if sum(th) % 2 else 1
        assert evaluate(torus(2, [((0, 0), (1, 1), ONE)]), chi) == expected


def test_evaluate_casimir_rank_one(alg1):
    hc = upsilon(solve_central(alg1, (2,)).element)
    for c in (vpow(3), V * 2, vpow(-1) + ONE):
        assert evaluate(hc, Character((c,))) == vpow(-1) * c.inverse() + V * c


def test_weyl_dot_examples(alg1):
    rd = RootData(1)
    x = torus(1, [((2,), (0,), V)])
    assert weyl_dot(WeylElement.identity(1), x, rd) == x
    s = rd.simple_reflections()[0]
    assert weyl_dot(s, x, rd) == torus(1, [((-2,), (0,), vpow(-1))])
    hc = upsilon(solve_central(alg1, (2,)).element)
    assert weyl_dot(s, hc, rd) == hc


@given(st.data())
def test_dot_evaluation_adjunction(data):
    rd = RootData(2)
    w = data.draw(st.sampled_from(rd.weyl_group))
    lam = data.draw(pk_weights(2))
    mu = data.draw(st.sampled_from([(2, 0), (0, -2), (2, 2), (4, -2)]))
    x = torus(2, [(mu, (0, 0), ONE)])
    lhs = evaluate(weyl_dot(w, x, rd), Character.linear(lam))
    rhs = evaluate(x, Character.linear(rd.dot(w.inverse(), lam)))
    assert lhs == rhs


def test_solve_central_rank_one(alg1):
    sol = solve_central(alg1, (2,))
    assert sol.residuals_zero and certificate(sol.element)
    assert sol.hc == torus(1, [((-2,), (0,), vpow(-1)), ((2,), (0,), V)])
    assert solve_central(alg1, (0,)).element == alg1.one()


def test_solve_central_twice_fundamental_rank_one(alg1):
    sol = solve_central(alg1, (4,))
    assert sol.residuals_zero
    assert sol.hc == torus(1, [((-4,), (0,), vpow(-2)), ((0,), (0,), ONE), ((4,), (0,), vpow(2))])


def test_solve_central_rank_two_matches_product(alg2):
    sol = solve_central(alg2, (2, 2))
    assert sol.residuals_zero
    expected = torus(
        2,
        [
            ((-2, -2), (0, 0), vpow(-4)),
            ((-2, 2), (0, 0), vpow(-2)),
            ((2, -2), (0, 0), vpow(2)),
            ((2, 2), (0, 0), vpow(4)),
        ],
    )
    assert sol.hc == expected == hc_product_formula(alg2)


@pytest.mark.parametrize("l,seed", [(1, (2,)), (2, (2, 2))])
def test_window_method_cross_check(l, seed):
    from ospq.algebra import algebra

    alg = algebra(l)
    assert solve_central(alg, seed, method="window").element == solve_central(alg, seed).element


def test_solver_errors(alg1):
    with pytest.raises(SolverError) as exc:
        solve_central(alg1, (2,), height=0)
    assert exc.value.kind == "no-solution"
    # the raw window for 2 w_1 also contains the unit
    with pytest.raises(SolverError) as exc:
        solve_central(alg1, (4,), method="window")
    assert exc.value.kind == "non-unique"


@pytest.mark.parametrize("l", [1, 2])
def test_hc_formula(l):
    from ospq.algebra import algebra

    ok, got, want = hc_formula_check(algebra(l))
    assert ok and len(got) == 2**l


@pytest.mark.parametrize("l", [1, 2])
def test_anticentral(l):
    from ospq.algebra import algebra

    s = solve_anticentral(algebra(l))
    assert s.ok
    assert certificate(s.element * s.element)


def test_even_torus_invariant_examples(alg1, alg2):
    assert even_torus_invariant_check(upsilon(solve_central(alg1, (2,)).element), alg1.roots)
    assert not even_torus_invariant_check(torus(2, [((2, 2), (0, 0), ONE)]), alg2.roots)
    assert even_torus_invariant_check(torus(2, [((0, 0), (0, 0), ONE)]), alg2.roots)


def test_character_shift_and_validation():
    chi = Character.linear((3,), (0,))
    sh = chi.shifted((4,))
    assert sh.values == (vpow(-1),) and sh.theta == (0,)
    assert chi.shifted((2,)).theta == (1,)
    with pytest.raises(ValueError):
        Character((0,))
