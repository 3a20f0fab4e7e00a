"""Twisted adjoint actions and truncated ad-orbits.

``ad(a, x, twist)`` is ``sum a1 x S(xi a2 xi)`` for the ordinary Hopf data;
``sad(a, x, twist)`` uses the super data with the Koszul sign
``(-1)^{|a2||x|}``.  Conjugation by ``xi_lambda`` multiplies a weight-nu
vector by ``(-1)^{(lambda, nu)}``, which is how the twist enters.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .algebra import Element, NormalWord, QuantumAlgebra, _acc
from .hopf import antipode_word, coproduct, super_antipode, super_coproduct
from .linalg import Echelon, kernel
from .scalars import ONE
from .weights import GammaElement, LatticeError, Weight, pair_mod2, parity
from .zhang import psi, require_bar


def _twist_bits(alg, twist):
    if twist is None:
        return alg.zero_gamma
    return tuple(int(b) % 2 for b in twist)


def _as_element(alg, w):
    return Element(alg, {w: ONE})


def ad(a: Element, x: Element, twist=None) -> Element:
    """Twisted adjoint action ad_twist(a)(x)."""
    alg = a.alg
    lam = _twist_bits(alg, twist)
    acc = alg.zero()
    for (w1, w2), c in coproduct(a).terms.items():
        if pair_mod2(lam, alg.word_nu(w2)):
            c = -c
        acc = acc + (_as_element(alg, w1) * x * antipode_word(alg, w2)) * c
    return acc


def sad(a: Element, x: Element, twist=None, bar_only: bool = False) -> Element:
    """Twisted super adjoint action; ``x`` is split into Z2-homogeneous parts."""
    if bar_only:
        require_bar(a)
    alg = a.alg
    lam = _twist_bits(alg, twist)
    parts = x.components("z2")
    acc = alg.zero()
    for (w1, w2), c in super_coproduct(a).terms.items():
        if pair_mod2(lam, alg.word_nu(w2)):
            c = -c
        s2 = super_antipode(_as_element(alg, w2))
        left = _as_element(alg, w1)
        p2 = parity(alg.word_nu(w2))
        for px, xx in parts.items():
            term = left * xx * s2 * c
            acc = acc - term if p2 * px else acc + term
    return acc


def sad_prime(a: Element, x: Element) -> Element:
    """sad twisted by xi_{w_l}."""
    return sad(a, x, twist=(1,) * a.alg.l)


def transfer_check(a: Element, x: Element, twist=None):
    """psi(ad_lam a (x)) = (-1)^t sad_{lam + delta(x)} psi(a) (psi(x)).

    t = (nu(a), delta(a)) + (nu(a), mu(x)) + (nu(x), delta(a)).
    Returns ``(holds, lhs, rhs, t)``; raises NotHomogeneous for
    inputs that are not bihomogeneous.
    """
    alg = a.alg
    lam = GammaElement(_twist_bits(alg, twist))
    nu_a, de_a = a.nu(), a.delta()
    nu_x, de_x, mu_x = x.nu(), x.delta(), x.mu()
    t = (pair_mod2(de_a, nu_a) + pair_mod2(mu_x, nu_a) + pair_mod2(de_a, nu_x)) & 1
    lhs = psi(ad(a, x, lam))
    rhs = sad(psi(a), psi(x), lam + de_x)
    if t:
        rhs = -rhs
    return lhs == rhs, lhs, rhs, t


# -- orbits ----------------------------------------------------------------


@dataclass
class OrbitSpan:
    """Echelon basis of a height-truncated ad-orbit."""

    basis: list
    stabilized: bool
    height: int
    seed: Element
    dropped: int = 0
    weights: dict = field(default_factory=dict)

    def weight_part(self, nu) -> list:
        nu = tuple(nu)
        return [b for b in self.basis if tuple(b.nu()) == nu]

    def contains(self, x: Element) -> bool:
        ech = Echelon(key=NormalWord.sort_key)
        for b in self.basis:
            ech.add(b.terms)
        return ech.contains(x.terms)


def default_orbit_height(two_lambda) -> int:
    """Twice the height of 2*lambda: enough for F-part times E-part."""
    from .weights import height

    return 2 * height(two_lambda)


def _check_seed(alg: QuantumAlgebra, two_lambda):
    two_lambda = Weight(two_lambda)
    if len(two_lambda) != alg.l:
        raise ValueError(f"seed weight needs {alg.l} coordinates")
    if not two_lambda.in_pg() or not Weight(t // 2 for t in two_lambda).in_pk():
        raise LatticeError(f"{list(two_lambda)} is not twice a weight of P_k")
    if not alg.roots.is_dominant(two_lambda):
        raise ValueError(f"{list(two_lambda)} is not dominant")
    return two_lambda


def ad_orbit_span(alg: QuantumAlgebra, two_lambda, height: int | None = None, twist=None) -> OrbitSpan:
    """Close K_{-2 lambda} under ad E_i, ad F_i within words of bounded height."""
    two_lambda = _check_seed(alg, two_lambda)
    if height is None:
        height = default_orbit_height(two_lambda)
    seed = alg.K(tuple(-t for t in two_lambda))
    ech = Echelon(key=NormalWord.sort_key)
    ech.add(seed.terms)
    queue = [seed]
    stabilized = True
    dropped = 0
    ops = [alg.E(i) for i in range(1, alg.l + 1)] + [alg.F(i) for i in range(1, alg.l + 1)]
    while queue:
        nxt = []
        for b in queue:
            for g in ops:
                y = ad(g, b, twist)
                if y.is_zero():
                    continue
                if y.height() > height:
                    stabilized = False
                    dropped += 1
                    continue
                if ech.add(y.terms):
                    nxt.append(y)
        queue = nxt
    basis = [Element(alg, row) for row in ech.reduced_basis()]
    return OrbitSpan(basis, stabilized, height, seed, dropped)


def twisted_vanishing_probe(alg: QuantumAlgebra, twist, height: int, torus_range: int = 1):
    """Search for a != 0 in U with F_i a + a F_i = 0, i the first index with
    (twist, alpha_i) odd, among words of height <= ``height`` whose torus
    beta-coordinates lie in [-torus_range, torus_range].

    Returns ``(no_solution, index_used, window_size)``.
    """
    lam = _twist_bits(alg, twist)
    if not any(lam):
        raise ValueError("the probe needs a nonzero twist")
    idx = next(i for i in range(1, alg.l + 1) if pair_mod2(lam, alg.alphas[i]))
    tori = [
        tuple(2 * c for c in cs)
        for cs in itertools.product(range(-torus_range, torus_range + 1), repeat=alg.l)
    ]
    words = []
    std = alg.serre.standard_words_up_to(height)
    for f in std:
        for e in std:
            if len(f) + len(e) > height:
                continue
            for t in tori:
                words.append(NormalWord(f, t, alg.zero_gamma, e))
    by_weight: dict = {}
    for w in words:
        by_weight.setdefault(tuple(alg.word_nu(w)), []).append(w)
    fi = alg.F(idx)
    for ws in by_weight.values():
        images = []
        for w in ws:
            a = _as_element(alg, w)
            images.append((fi * a + a * fi).terms)
        if kernel(images):
            return False, idx, len(words)
    return True, idx, len(words)


@dataclass
class LocallyFiniteSplit:
    even_part: list
    odd_part: list
    psi_even: list
    psi_odd: list
    closed: bool
    stabilized: bool
    unchecked: int


def bar_locally_finite_decomposition(alg: QuantumAlgebra, lam, height: int | None = None) -> LocallyFiniteSplit:
    """Split the orbit of K_{-2 lambda} by delta-grade and test sad-stability.

    The delta-grade-0 part is mapped by psi into a sad-stable space, the
    delta-grade-w_l part into a sad'-stable one.
    """
    lam = Weight(lam)
    two = Weight(2 * t for t in lam)
    orbit = ad_orbit_span(alg, two, height)
    wl = GammaElement((1,) * alg.l)
    even, odd = [], []
    for b in orbit.basis:
        d = b.delta()
        if d.is_zero():
            even.append(b)
        elif d == wl:
            odd.append(b)
        else:
            raise AssertionError("orbit element with unexpected delta grade")
    psi_even = [psi(b) for b in even]
    psi_odd = [psi(b) for b in odd]
    gens = []
    for i in range(1, alg.l + 1):
        gens.append(psi(alg.E(i)))
        gens.append(psi(alg.F(i)))
        gens.append(psi(alg.K(alg.alphas[i])))
    closed = True
    unchecked = 0
    for space, twist in ((psi_even, None), (psi_odd, tuple(wl))):
        ech = Echelon(key=NormalWord.sort_key)
        for b in space:
            ech.add(b.terms)
        for b in space:
            for g in gens:
                y = sad(g, b, twist)
                if y.height() > orbit.height:
                    unchecked += 1
                    continue
                if not ech.contains(y.terms):
                    closed = False
    return LocallyFiniteSplit(even, odd, psi_even, psi_odd, closed, orbit.stabilized, unchecked)


__all__ = [
    "ad",
    "sad",
    "sad_prime",
    "transfer_check",
    "ad_orbit_span",
    "OrbitSpan",
    "twisted_vanishing_probe",
    "bar_locally_finite_decomposition",
    "LocallyFiniteSplit",
    "default_orbit_height",
]
