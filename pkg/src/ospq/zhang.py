"""The Zhang transformation x -> xi_{mu(x)} x and the subalgebra it carves out.

``psi`` acts on each mu-homogeneous component by left multiplication with
the matching Gamma letter; it is a linear involution of the whole algebra
and maps U onto the copy of U_{-q}(osp(1,2l)) spanned by words whose Gamma
letter equals their mu-class.
"""

from __future__ import annotations

import itertools

from .algebra import Element, NormalWord, NotHomogeneous, QuantumAlgebra, _gamma_sign
from .scalars import V, q_binomial, vpow
from .weights import pair_mod2


class NotInBar(ValueError):
    """The element is not in the image of U under psi."""


def psi_word(alg: QuantumAlgebra, w: NormalWord) -> tuple[int, NormalWord]:
    mu = alg.word_mu(w)
    sign = _gamma_sign(mu, alg.nu_f(w.f))
    gamma = tuple(a ^ b for a, b in zip(w.gamma, mu))
    return sign, NormalWord(w.f, w.torus, gamma, w.e)


def psi(x: Element) -> Element:
    alg = x.alg
    out = {}
    for w, c in x.terms.items():
        s, w2 = psi_word(alg, w)
        out[w2] = c if s > 0 else -c
    return Element(alg, out)


def in_bar(x: Element) -> bool:
    """True iff x lies in psi(U), i.e. psi(x) has no Gamma letters."""
    return all(not any(w.gamma) for w in psi(x).terms)


def require_bar(x: Element):
    if not in_bar(x):
        raise NotInBar(f"{x} is not in the image of psi")


def psi_sign_check(a: Element, b: Element):
    """Check psi(ab) = (-1)^{(nu(a), mu(b))} psi(a) psi(b).

    Returns ``(holds, lhs, rhs)``.  Raises NotHomogeneous unless a is
    nu-homogeneous and b is mu-homogeneous.
    """
    nu_a = a.nu()
    mu_b = b.mu()
    lhs = psi(a * b)
    rhs = psi(a) * psi(b)
    if pair_mod2(mu_b, nu_a):
        rhs = -rhs
    return lhs == rhs, lhs, rhs


# -- bar generators ------------------------------------------------------


def bar_e(alg: QuantumAlgebra, i: int) -> Element:
    return psi(alg.E(i))


def bar_f(alg: QuantumAlgebra, i: int) -> Element:
    return psi(alg.F(i))


def bar_k(alg: QuantumAlgebra, mu) -> Element:
    return psi(alg.K(mu))


def bar_generator(alg: QuantumAlgebra, kind: str, arg) -> Element:
    return psi(alg.generator(kind, arg))


def bar_atoms(alg: QuantumAlgebra):
    """Parser hook adding lowercase ``e<i>``, ``f<i>``, ``k[...]``."""

    def atom(name, idx, bracket, pos):
        if name in ("e", "f") and idx is not None and bracket is None:
            return psi(alg.generator(name.upper(), idx))
        if name == "k" and idx is None and bracket is not None:
            return psi(alg.K(bracket))
        return None

    return atom


def parse(alg: QuantumAlgebra, text: str) -> Element:
    return alg.parse(text, extra_atoms=bar_atoms(alg))


# -- relations of the super algebra ----------------------------------------


def _product_sign(alg: QuantumAlgebra, letters) -> int:
    """Sign s with psi(x_1...x_m) = s psi(x_1)...psi(x_m) for generator words."""
    total = 0
    for p, r in itertools.combinations(range(len(letters)), 2):
        total += pair_mod2(letters[r].mu(), letters[p].nu())
    return -1 if total & 1 else 1


def bar_relations(alg: QuantumAlgebra, include_adjoint: bool = True):
    """Evaluate every relation of the super algebra inside the image of psi.

    Yields ``(label, difference)`` pairs; each difference must be zero.
    """
    from .adjoint import sad

    l = alg.l
    Q = V * V
    qd = (Q - Q.inverse()).inverse()
    e = {i: bar_e(alg, i) for i in range(1, l + 1)}
    f = {i: bar_f(alg, i) for i in range(1, l + 1)}
    tori = [alg.alphas[i] for i in range(1, l + 1)]
    out = []

    for a, b in itertools.product(tori, repeat=2):
        s = tuple(x + y for x, y in zip(a, b))
        out.append((f"k{list(a)} k{list(b)} = k_sum", bar_k(alg, a) * bar_k(alg, b) - bar_k(alg, s)))

    for mu in tori:
        k, kinv = bar_k(alg, mu), bar_k(alg, tuple(-x for x in mu))
        for i in range(1, l + 1):
            s = sum(x * y for x, y in zip(mu, alg.alphas[i])) // 4
            twist = vpow(2 * s) * (-1) ** (s % 2)
            out.append((f"k{list(mu)} e{i} k^-1 = (-q)^({s}) e{i}", k * e[i] * kinv - twist * e[i]))
            out.append((f"k{list(mu)} f{i} k^-1 = (-q)^({-s}) f{i}", k * f[i] * kinv - twist.inverse() * f[i]))
            if include_adjoint:
                out.append((f"sad k{list(mu)} (e{i}) = (-q)^({s}) e{i}", sad(k, e[i]) - twist * e[i]))
                out.append(
                    (f"sad k{list(mu)} (f{i}) = (-q)^({-s}) f{i}", sad(k, f[i]) - twist.inverse() * f[i])
                )

    for i in range(1, l + 1):
        for j in range(1, l + 1):
            pi, pj = e[i].z2(), f[j].z2()
            bracket = e[i] * f[j] - (-1) ** (pi * pj) * f[j] * e[i]
            if i == j:
                ka = bar_k(alg, alg.alphas[i])
                kinv = bar_k(alg, tuple(-x for x in alg.alphas[i]))
                bracket = bracket + (ka - kinv) * qd
            out.append((f"super bracket e{i} f{j}", bracket))
            if include_adjoint:
                got = sad(f[i], e[j])
                want = alg.zero()
                if i == j:
                    k2 = bar_k(alg, tuple(2 * x for x in alg.alphas[i]))
                    want = (alg.one() - k2) * qd * (-1 if i < l else 1)
                out.append((f"sad f{i} (e{j})", got - want))

    for (i, j, n), _, _ in alg.serre.relations:
        base = Q if i < l else V
        for side, gens, plain in (("e", e, alg.E), ("f", f, alg.F)):
            acc = alg.zero()
            for k in range(n + 1):
                letters = [plain(i)] * (n - k) + [plain(j)] + [plain(i)] * k
                s = _product_sign(alg, letters)
                prod = alg.one()
                for x in [gens[i]] * (n - k) + [gens[j]] + [gens[i]] * k:
                    prod = prod * x
                acc = acc + q_binomial(n, k, base) * ((-1) ** k * s) * prod
            out.append((f"psi(Serre {side}{i}^{n} {side}{j})", acc))
            if include_adjoint:
                # with Delta(F_i) = F_i (x) K_{-alpha_i} + 1 (x) F_i the
                # adjoint Serre relation on the F side holds for F_j K_{alpha_j}
                if side == "e":
                    x, target = gens[j], f"e{j}"
                else:
                    x, target = psi(alg.F(j) * alg.K(alg.alphas[j])), f"f{j} k{list(alg.alphas[j])}"
                for _ in range(n):
                    x = sad(gens[i], x)
                out.append((f"sad({side}{i})^{n} ({target})", x))
    return out


def verify_bar_relations(alg: QuantumAlgebra, include_adjoint: bool = True):
    """``[(label, passed)]`` for every relation from :func:`bar_relations`."""
    return [(label, diff.is_zero()) for label, diff in bar_relations(alg, include_adjoint)]


def gamma_decomposition_counts(alg: QuantumAlgebra, words):
    """Per (nu, delta) component: (#words, #words in the bar subalgebra).

    ``words`` should be closed under changing the Gamma letter.
    """
    counts: dict = {}
    for w in words:
        key = (alg.word_nu(w), alg.word_delta(w))
        tot, bar = counts.get(key, (0, 0))
        bar += 1 if psi_word(alg, w)[1].gamma == alg.zero_gamma else 0
        counts[key] = (tot + 1, bar)
    return counts


__all__ = [
    "NotInBar",
    "NotHomogeneous",
    "psi",
    "psi_word",
    "in_bar",
    "psi_sign_check",
    "bar_e",
    "bar_f",
    "bar_k",
    "bar_generator",
    "bar_relations",
    "verify_bar_relations",
    "parse",
]
