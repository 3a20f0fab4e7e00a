"""Harish-Chandra projection, torus characters and central elements.

Central elements are found as kernels of the commutator maps
``z -> [z, E_i], [z, F_i]`` on a finite space of weight-zero candidates,
then normalized so that the coefficient of ``K_{-2 lambda}`` in the
projection equals ``q^{-2(rho, lambda)}``.
"""

from __future__ import annotations

import itertools
import threading
from dataclasses import dataclass

from .algebra import Element, NormalWord, QuantumAlgebra, algebra
from .linalg import kernel
from .scalars import ONE, ZERO, Scalar, qpow, vpow
from .weights import (
    GammaElement,
    Weight,
    WeylElement,
    alpha_coords,
    beta,
    fundamental,
    pair,
)
from .zhang import bar_e, bar_f, bar_k, psi


class SolverError(RuntimeError):
    """The central-element solver could not produce a unique answer."""

    def __init__(self, kind: str, message: str):
        self.kind = kind
        super().__init__(f"{kind}: {message}")


# -- torus elements ----------------------------------------------------------


class TorusElement:
    """Combination of K_mu xi_gamma, keyed by (mu twice-coordinates, gamma bits)."""

    __slots__ = ("l", "terms")

    def __init__(self, l: int, terms: dict):
        self.l = l
        self.terms = {k: c for k, c in terms.items() if not c.is_zero()}

    @classmethod
    def from_element(cls, x: Element) -> "TorusElement":
        terms = {}
        for w, c in x.terms.items():
            if not w.is_torus():
                raise ValueError("element has E or F letters")
            terms[(w.torus, w.gamma)] = c
        return cls(x.alg.l, terms)

    def to_element(self, alg: QuantumAlgebra | None = None) -> Element:
        alg = alg or algebra(self.l)
        return Element(alg, {NormalWord((), mu, g, ()): c for (mu, g), c in self.terms.items()})

    def __eq__(self, other):
        if not isinstance(other, TorusElement):
            return NotImplemented
        return self.l == other.l and self.terms == other.terms

    __hash__ = None

    def __add__(self, other):
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, ZERO) + c
        return TorusElement(self.l, out)

    def __sub__(self, other):
        return self + other * Scalar.coerce(-1)

    def __mul__(self, other):
        if isinstance(other, TorusElement):
            out: dict = {}
            for (m1, g1), c1 in self.terms.items():
                for (m2, g2), c2 in other.terms.items():
                    k = (tuple(a + b for a, b in zip(m1, m2)), tuple(a ^ b for a, b in zip(g1, g2)))
                    out[k] = out.get(k, ZERO) + c1 * c2
            return TorusElement(self.l, out)
        c = Scalar.coerce(other)
        return TorusElement(self.l, {k: x * c for k, x in self.terms.items()})

    __rmul__ = __mul__

    def coefficient(self, mu, gamma=None) -> Scalar:
        gamma = tuple(gamma) if gamma is not None else (0,) * self.l
        return self.terms.get((tuple(mu), gamma), ZERO)

    def __len__(self):
        return len(self.terms)

    def __str__(self):
        return str(self.to_element())

    def __repr__(self):
        return f"TorusElement({str(self)!r})"


def upsilon(x: Element) -> TorusElement:
    """Harish-Chandra projection: keep the words without E or F letters."""
    return TorusElement(x.alg.l, {(w.torus, w.gamma): c for w, c in x.terms.items() if w.is_torus()})


# -- characters ---------------------------------------------------------------


@dataclass(frozen=True)
class Character:
    """Torus character by its values on K_{beta_i}, with Gamma-character bits."""

    values: tuple
    theta: tuple = ()

    def __post_init__(self):
        vals = tuple(Scalar.coerce(c) for c in self.values)
        if any(c.is_zero() for c in vals):
            raise ValueError("character values must be nonzero")
        theta = tuple(int(b) % 2 for b in self.theta) if self.theta else (0,) * len(vals)
        if len(theta) != len(vals):
            raise ValueError("theta needs one bit per rank")
        object.__setattr__(self, "values", vals)
        object.__setattr__(self, "theta", theta)

    @classmethod
    def linear(cls, lam, theta=()) -> "Character":
        """q^lambda: K_{beta_i} -> v^{t_i} for lambda with twice-coordinates t."""
        return cls(tuple(vpow(int(t)) for t in lam), theta)

    @property
    def rank(self) -> int:
        return len(self.values)

    def torus_value(self, mu) -> Scalar:
        out = ONE
        for c, t in zip(self.values, mu):
            if t % 2:
                raise ValueError("torus weight outside P_g")
            out = out * c ** (t // 2)
        return out

    def theta_value(self, gamma) -> int:
        s = sum(b * g for b, g in zip(self.theta, gamma))
        return -1 if s % 2 else 1

    def with_theta(self, theta) -> "Character":
        return Character(self.values, tuple(theta))

    def shifted(self, nu) -> "Character":
        """The character of the weight space at offset nu: q^{-nu} Lambda, theta (-1)^nu."""
        vals = tuple(c * vpow(-int(t)) for c, t in zip(self.values, nu))
        theta = tuple((b + int(t) // 2) % 2 for b, t in zip(self.theta, nu))
        return Character(vals, theta)

    def __str__(self):
        return f"({', '.join(str(c) for c in self.values)}; theta={list(self.theta)})"


def evaluate(x, chi: Character) -> Scalar:
    """Sum of coeff * theta(gamma) * Lambda(K_mu)."""
    if isinstance(x, Element):
        x = upsilon(x)
    acc = ZERO
    for (mu, g), c in x.terms.items():
        term = c * chi.torus_value(mu)
        acc = acc + (term if chi.theta_value(g) > 0 else -term)
    return acc


def weyl_dot(w: WeylElement, x: TorusElement, roots) -> TorusElement:
    """w.K_mu = q^{(mu, w^-1 rho - rho)} K_{w mu}; Gamma parts are carried."""
    winv = w.inverse()
    shift = winv.apply(roots.rho) - roots.rho
    out = {}
    for (mu, g), c in x.terms.items():
        e = pair(Weight(mu), shift)
        key = (tuple(w.apply(Weight(mu))), g)
        out[key] = out.get(key, ZERO) + c * qpow(e)
    return TorusElement(x.l, out)


def even_torus_invariant_check(x: TorusElement, roots) -> bool:
    """Supported on K_{2 mu} (mu in P_k, trivial Gamma part) and dot-invariant."""
    for mu, g in x.terms:
        if any(g):
            return False
        halves = [t // 2 for t in mu]
        if any(t % 2 for t in mu) or len({h % 2 for h in halves}) > 1:
            return False
    return all(weyl_dot(s, x, roots) == x for s in roots.simple_reflections())


# -- central elements -----------------------------------------------------------


@dataclass
class CentralSolution:
    element: Element
    two_lambda: Weight
    method: str
    candidates: int
    residuals_zero: bool
    stabilized: bool = True

    @property
    def hc(self) -> TorusElement:
        return upsilon(self.element)


def _generators(alg):
    gens = []
    for i in range(1, alg.l + 1):
        gens.append(alg.E(i))
        gens.append(alg.F(i))
    return gens


def certificate(z: Element) -> bool:
    """[z, g] = 0 for all generators E_i, F_i, K_{alpha_i}, xi."""
    alg = z.alg
    gens = _generators(alg) + [alg.K(alg.alphas[i]) for i in range(1, alg.l + 1)]
    gens += [alg.xi(b) for b in itertools.product((0, 1), repeat=alg.l)]
    return all((z * g - g * z).is_zero() for g in gens)


def _normalize(alg, z: Element, two_lambda: Weight) -> Element:
    seed = NormalWord((), tuple(-t for t in two_lambda), alg.zero_gamma, ())
    c = z.coefficient(seed)
    if c.is_zero():
        raise SolverError("no-solution", "kernel vector misses K_{-2 lambda}")
    target = qpow(-pair(alg.roots.rho, two_lambda))
    return z * (target / c)


def _solve_on(alg, candidates: list[Element]) -> list[dict]:
    gens = _generators(alg)
    images = []
    for b in candidates:
        vec = {}
        for k, g in enumerate(gens):
            for w, c in (b * g - g * b).terms.items():
                vec[(k, w)] = c
        images.append(vec)
    return kernel(images)


def _window_candidates(alg, two_lambda: Weight, height: int) -> list[Element]:
    """F_f K_mu E_e with nu(f) + nu(e) = 0, mu in -2 lambda + [0, 4 lambda] in
    alpha-coordinates, and delta equal to that of K_{-2 lambda}."""
    seed = tuple(-t for t in two_lambda)
    span = alpha_coords(Weight(2 * t for t in two_lambda))
    target = GammaElement.of(seed)
    out = []
    for n in range(height // 2 + 1):
        from .algebra import _compositions

        for d in _compositions(n, alg.l):
            words = alg.serre.standard_words(d)
            for cs in itertools.product(*(range(s + 1) for s in span)):
                mu = list(seed)
                for i, c in enumerate(cs, start=1):
                    mu = [a + c * b for a, b in zip(mu, alg.alphas[i])]
                for f in words:
                    for e in words:
                        w = NormalWord(f, tuple(mu), alg.zero_gamma, e)
                        if alg.word_delta(w) == target:
                            out.append(Element(alg, {w: ONE}))
    return out


_CENTRAL_CACHE: dict = {}
_CENTRAL_LOCK = threading.Lock()


def solve_central(alg: QuantumAlgebra, two_lambda, height: int | None = None, method: str = "orbit") -> CentralSolution:
    """The central element z_{2 lambda}, normalized, with a certificate.

    ``method="orbit"`` searches the weight-zero part of the truncated ad-orbit
    of K_{-2 lambda}; ``method="window"`` searches a raw ansatz window and is
    used as an independent cross-check.
    """
    from .adjoint import _check_seed, ad_orbit_span, default_orbit_height

    two_lambda = _check_seed(alg, two_lambda)
    if height is None:
        height = default_orbit_height(two_lambda)
    key = (alg.l, alg.roots.rho_convention, tuple(two_lambda), height, method)
    with _CENTRAL_LOCK:
        hit = _CENTRAL_CACHE.get(key)
    if hit is not None:
        return hit
    if not any(two_lambda):
        z = alg.one()
        sol = CentralSolution(z, two_lambda, method, 1, certificate(z))
    else:
        stabilized = True
        if method == "orbit":
            orbit = ad_orbit_span(alg, two_lambda, height)
            stabilized = orbit.stabilized
            cands = orbit.weight_part(alg.zero_weight)
        elif method == "window":
            cands = _window_candidates(alg, two_lambda, height)
        else:
            raise ValueError(f"unknown method {method!r}")
        ker = _solve_on(alg, cands)
        if not ker:
            raise SolverError("no-solution", f"no central element among {len(cands)} candidates")
        if len(ker) > 1:
            raise SolverError("non-unique", f"{len(ker)}-dimensional space of central candidates")
        z = alg.zero()
        for j, c in ker[0].items():
            z = z + cands[j] * c
        z = _normalize(alg, z, two_lambda)
        sol = CentralSolution(z, two_lambda, method, len(cands), certificate(z), stabilized)
    with _CENTRAL_LOCK:
        _CENTRAL_CACHE[key] = sol
    return sol


def hc_product_formula(alg: QuantumAlgebra) -> TorusElement:
    """prod_i (q^{-(rho,beta_i)} K_{-beta_i} + q^{(rho,beta_i)} K_{beta_i})."""
    l = alg.l
    rho = alg.roots.rho
    acc = TorusElement(l, {(alg.zero_weight, alg.zero_gamma): ONE})
    for i in range(1, l + 1):
        b = beta(i, l)
        r = pair(rho, b)
        factor = TorusElement(
            l,
            {
                (tuple(-b), alg.zero_gamma): qpow(-r),
                (tuple(b), alg.zero_gamma): qpow(r),
            },
        )
        acc = acc * factor
    return acc


def hc_formula_check(alg: QuantumAlgebra, height: int | None = None):
    """Compare the projection of z_{w_l} with the product formula.

    Returns ``(ok, got, expected)``.
    """
    sol = solve_central(alg, fundamental(alg.l, alg.l), height)
    got = upsilon(sol.element)
    want = hc_product_formula(alg)
    return got == want, got, want


@dataclass
class AntiCentral:
    element: Element
    central: CentralSolution
    anticommutes_odd: bool
    commutes_even: bool
    in_bar: bool

    @property
    def ok(self) -> bool:
        return self.anticommutes_odd and self.commutes_even and self.in_bar


def solve_anticentral(alg: QuantumAlgebra, height: int | None = None) -> AntiCentral:
    """xi_{w_l} z_{w_l} with its (anti)commutation certificate in the bar algebra."""
    from .zhang import in_bar

    l = alg.l
    sol = solve_central(alg, fundamental(l, l), height)
    s = alg.xi((1,) * l) * sol.element
    odd = [bar_e(alg, l), bar_f(alg, l)]
    even = [bar_e(alg, i) for i in range(1, l)] + [bar_f(alg, i) for i in range(1, l)]
    even += [bar_k(alg, alg.alphas[i]) for i in range(1, l + 1)]
    even += [bar_k(alg, tuple(-t for t in alg.alphas[i])) for i in range(1, l + 1)]
    anti = all((s * g + g * s).is_zero() for g in odd)
    comm = all((s * g - g * s).is_zero() for g in even)
    return AntiCentral(s, sol, anti, comm, in_bar(s) and s == psi(sol.element))


__all__ = [
    "TorusElement",
    "Character",
    "upsilon",
    "evaluate",
    "weyl_dot",
    "even_torus_invariant_check",
    "solve_central",
    "solve_anticentral",
    "hc_formula_check",
    "hc_product_formula",
    "certificate",
    "CentralSolution",
    "SolverError",
]
