"""Generator lists and seeded random products used by checks and tests."""

from __future__ import annotations

import itertools
import random

from .algebra import Element, QuantumAlgebra
from .hc_center import Character
from .scalars import Scalar, vpow
from .weights import beta


def generators(alg: QuantumAlgebra, with_xi: bool = True) -> list[tuple[str, Element]]:
    """Labelled algebra generators: E_i, F_i, K_{+-alpha_i}, K_{2 beta_1}, all xi."""
    l = alg.l
    out = []
    for i in range(1, l + 1):
        a = alg.alphas[i]
        out.append((f"E{i}", alg.E(i)))
        out.append((f"F{i}", alg.F(i)))
        out.append((f"K{list(a)}", alg.K(a)))
        out.append((f"K{[-x for x in a]}", alg.K(tuple(-x for x in a))))
    two_b1 = tuple(beta(1, l) * 2)
    out.append((f"K{list(two_b1)}", alg.K(two_b1)))
    if with_xi:
        for bits in itertools.product((0, 1), repeat=l):
            if any(bits):
                out.append((f"xi{list(bits)}", alg.xi(bits)))
    return out


def random_monomial(alg: QuantumAlgebra, rng: random.Random, max_degree: int = 2, with_xi: bool = True):
    """A product of 1..max_degree generators with a random nonzero scalar.

    Products of generators are homogeneous for every grading.
    """
    gens = generators(alg, with_xi)
    n = rng.randint(1, max_degree)
    picks = [rng.choice(gens) for _ in range(n)]
    x = alg.one()
    for _, g in picks:
        x = x * g
    c = Scalar.coerce(rng.randint(1, 5)) * vpow(rng.randint(-2, 2))
    return "*".join(name for name, _ in picks), x * c


def random_character(l: int, rng: random.Random) -> Character:
    """Values c_i = r_i v^k_i with small rational r_i and random theta bits."""
    vals = []
    for _ in range(l):
        r = Scalar.coerce(rng.choice([1, -1, 2, -3]))
        vals.append(r * vpow(rng.randint(-4, 4)))
    theta = tuple(rng.randint(0, 1) for _ in range(l))
    return Character(tuple(vals), theta)
