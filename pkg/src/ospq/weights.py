"""Root data of type B_l.

Weights are stored by their *twice* coordinates in the orthonormal basis
beta_1, ..., beta_l, so that the half-integral points of the weight lattice
of so(2l+1) are exact integers.  The simple roots are
``alpha_i = beta_i - beta_{i+1}`` (with ``beta_{l+1} = 0``), the fundamental
weights are ``w_i = beta_1 + ... + beta_i``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property


class LatticeError(ValueError):
    """A weight is not in the lattice an operation requires."""


class Weight(tuple):
    """A point of the weight lattice P_k, given by its twice-coordinates."""

    __slots__ = ()

    def __new__(cls, twice):
        return super().__new__(cls, (int(t) for t in twice))

    @classmethod
    def zero(cls, l: int) -> "Weight":
        return cls((0,) * l)

    @classmethod
    def from_beta(cls, coords) -> "Weight":
        """Build from (possibly half-integral) beta-coordinates."""
        out = []
        for c in coords:
            t = Fraction(c) * 2
            if t.denominator != 1:
                raise LatticeError(f"{c} is not a half-integer")
            out.append(int(t))
        return cls(out)

    @property
    def twice(self) -> tuple[int, ...]:
        return tuple(self)

    @property
    def rank(self) -> int:
        return len(self)

    def beta_coords(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(t, 2) for t in self)

    def in_pk(self) -> bool:
        return len({t % 2 for t in self}) <= 1

    def in_pg(self) -> bool:
        return all(t % 2 == 0 for t in self)

    def __add__(self, other):
        return Weight(a + b for a, b in zip(self, other))

    def __sub__(self, other):
        return Weight(a - b for a, b in zip(self, other))

    def __neg__(self):
        return Weight(-a for a in self)

    def __mul__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        return Weight(n * a for a in self)

    __rmul__ = __mul__

    def __repr__(self):
        return f"Weight({list(self)})"


class GammaElement(tuple):
    """Class of a weight of P_g modulo 2 P_g, as beta-coordinate bits."""

    __slots__ = ()

    def __new__(cls, bits):
        return super().__new__(cls, (int(b) % 2 for b in bits))

    @classmethod
    def zero(cls, l: int) -> "GammaElement":
        return cls((0,) * l)

    @classmethod
    def of(cls, mu) -> "GammaElement":
        """Class of ``mu`` (a Weight in P_g)."""
        if not all(t % 2 == 0 for t in mu):
            raise LatticeError(f"{list(mu)} is not in P_g")
        return cls(t // 2 for t in mu)

    @property
    def bits(self) -> tuple[int, ...]:
        return tuple(self)

    def __add__(self, other):
        return GammaElement(a ^ b for a, b in zip(self, other))

    __sub__ = __add__

    def __neg__(self):
        return self

    def is_zero(self) -> bool:
        return not any(self)

    def __repr__(self):
        return f"GammaElement({list(self)})"


def pair(lam, mu) -> Fraction:
    """The form (lam, mu) for which the beta_i are orthonormal."""
    return Fraction(sum(a * b for a, b in zip(lam, mu)), 4)


def pair_int(lam, mu) -> int:
    """(lam, mu) for lam, mu with integral pairing; raises otherwise."""
    s = sum(a * b for a, b in zip(lam, mu))
    if s % 4:
        raise LatticeError(f"pairing of {list(lam)} and {list(mu)} is not integral")
    return s // 4


def pair_mod2(gamma, nu) -> int:
    """(gamma, nu) mod 2 for a class gamma in P_g/2P_g and nu in P_g."""
    s = 0
    for g, t in zip(gamma, nu):
        if g:
            s += t // 2
    return s & 1


def cartan_pair(lam, mu) -> Fraction:
    """<lam, mu> = 2 (lam, mu) / (mu, mu)."""
    mm = pair(mu, mu)
    if mm == 0:
        raise ZeroDivisionError("isotropic weight in cartan pairing")
    return 2 * pair(lam, mu) / mm


def beta(i: int, l: int) -> Weight:
    t = [0] * l
    if i <= l:
        t[i - 1] = 2
    return Weight(t)


def alpha(i: int, l: int) -> Weight:
    if not 1 <= i <= l:
        raise IndexError(f"simple root index {i} out of range 1..{l}")
    return beta(i, l) - beta(i + 1, l)


def fundamental(i: int, l: int) -> Weight:
    return Weight([2 if j < i else 0 for j in range(l)])


def alpha_coords(nu) -> tuple[int, ...]:
    """Coordinates n_i of nu = sum n_i alpha_i (nu in P_g)."""
    if not all(t % 2 == 0 for t in nu):
        raise LatticeError(f"{list(nu)} is not in P_g")
    out, run = [], 0
    for t in nu:
        run += t // 2
        out.append(run)
    return tuple(out)


def from_alpha_coords(n) -> Weight:
    l = len(n)
    acc = Weight.zero(l)
    for i, c in enumerate(n, start=1):
        acc = acc + c * alpha(i, l)
    return acc


def height(nu) -> int:
    return sum(alpha_coords(nu))


def eta(nu) -> GammaElement:
    """Send sum n_i alpha_i to the class of sum n_i beta_{i+1}."""
    n = alpha_coords(nu)
    l = len(n)
    bits = [0] * l
    for i in range(1, l):
        bits[i] = n[i - 1] & 1
    return GammaElement(bits)


def parity(nu) -> int:
    """|nu| = (nu, w_l) mod 2."""
    if not all(t % 2 == 0 for t in nu):
        raise LatticeError(f"{list(nu)} is not in P_g")
    return sum(t // 2 for t in nu) & 1


def sign_identity(nu, nu2) -> tuple[bool, int, int]:
    """Check (nu, eta nu') + (eta nu, nu') + (nu, nu') = |nu||nu'| in Z/2.

    Returns ``(holds, lhs, rhs)``.
    """
    lhs = (pair_mod2(eta(nu2), nu) + pair_mod2(eta(nu), nu2) + pair_int(nu, nu2)) & 1
    rhs = parity(nu) * parity(nu2)
    return lhs == rhs, lhs, rhs


@dataclass(frozen=True)
class WeylElement:
    """Signed permutation: beta_j -> signs[j] * beta_{perm[j]} (0-based)."""

    perm: tuple[int, ...]
    signs: tuple[int, ...]

    @classmethod
    def identity(cls, l: int) -> "WeylElement":
        return cls(tuple(range(l)), (1,) * l)

    @classmethod
    def simple_reflection(cls, i: int, l: int) -> "WeylElement":
        perm, signs = list(range(l)), [1] * l
        if i < l:
            perm[i - 1], perm[i] = i, i - 1
        elif i == l:
            signs[l - 1] = -1
        else:
            raise IndexError(i)
        return cls(tuple(perm), tuple(signs))

    @classmethod
    def from_pairs(cls, pairs) -> "WeylElement":
        """From ``[(i, sign), ...]`` with 1-based targets: beta_j -> sign beta_i."""
        perm = tuple(int(i) - 1 for i, _ in pairs)
        signs = tuple(1 if int(s) > 0 else -1 for _, s in pairs)
        if sorted(perm) != list(range(len(perm))):
            raise ValueError(f"not a signed permutation: {pairs}")
        return cls(perm, signs)

    def to_pairs(self) -> list[tuple[int, int]]:
        return [(p + 1, s) for p, s in zip(self.perm, self.signs)]

    def apply(self, lam) -> Weight:
        out = [0] * len(self.perm)
        for j, (p, s) in enumerate(zip(self.perm, self.signs)):
            out[p] = s * lam[j]
        return Weight(out)

    def __mul__(self, other: "WeylElement") -> "WeylElement":
        # (self * other)(x) = self(other(x))
        perm, signs = [], []
        for j in range(len(self.perm)):
            p = other.perm[j]
            perm.append(self.perm[p])
            signs.append(other.signs[j] * self.signs[p])
        return WeylElement(tuple(perm), tuple(signs))

    def inverse(self) -> "WeylElement":
        l = len(self.perm)
        perm, signs = [0] * l, [1] * l
        for j, (p, s) in enumerate(zip(self.perm, self.signs)):
            perm[p] = j
            signs[p] = s
        return WeylElement(tuple(perm), tuple(signs))

    def is_identity(self) -> bool:
        return self.perm == tuple(range(len(self.perm))) and all(s == 1 for s in self.signs)


RHO_CONVENTIONS = ("half", "literal")


@dataclass(frozen=True)
class RootData:
    """Root data of so(2l+1) and osp(1,2l) in the beta-realisation."""

    l: int
    rho_convention: str = "half"
    positive_roots_k: tuple[Weight, ...] = field(init=False, repr=False)
    positive_roots_g: tuple[Weight, ...] = field(init=False, repr=False)
    rho: Weight = field(init=False, repr=False)

    def __post_init__(self):
        if self.l < 1:
            raise ValueError("rank must be at least 1")
        if self.rho_convention not in RHO_CONVENTIONS:
            raise ValueError(f"unknown rho convention {self.rho_convention!r}")
        l = self.l
        b = [beta(i, l) for i in range(1, l + 1)]
        long_roots = [b[i] + s * b[j] for i in range(l) for j in range(i + 1, l) for s in (-1, 1)]
        pos_k = tuple(long_roots + b)
        pos_g = tuple(long_roots + [2 * x for x in b] + b)
        total = Weight.zero(l)
        for a in pos_k:
            total = total + a
        if self.rho_convention == "half":
            rho = Weight(t // 2 for t in total)
        else:
            rho = total
        object.__setattr__(self, "positive_roots_k", pos_k)
        object.__setattr__(self, "positive_roots_g", pos_g)
        object.__setattr__(self, "rho", rho)

    @property
    def roots_k(self) -> tuple[Weight, ...]:
        return self.positive_roots_k + tuple(-a for a in self.positive_roots_k)

    @property
    def roots_g(self) -> tuple[Weight, ...]:
        return self.positive_roots_g + tuple(-a for a in self.positive_roots_g)

    def alpha(self, i: int) -> Weight:
        return alpha(i, self.l)

    def beta(self, i: int) -> Weight:
        return beta(i, self.l)

    def w(self, i: int) -> Weight:
        return fundamental(i, self.l)

    @property
    def simple_roots(self) -> tuple[Weight, ...]:
        return tuple(alpha(i, self.l) for i in range(1, self.l + 1))

    def simple_reflections(self) -> tuple[WeylElement, ...]:
        return tuple(WeylElement.simple_reflection(i, self.l) for i in range(1, self.l + 1))

    @cached_property
    def weyl_group(self) -> tuple[WeylElement, ...]:
        l = self.l
        return tuple(
            WeylElement(perm, signs)
            for perm in itertools.permutations(range(l))
            for signs in itertools.product((1, -1), repeat=l)
        )

    def dot(self, w: WeylElement, lam) -> Weight:
        """w.lam = w(lam + rho) - rho."""
        return w.apply(Weight(lam) + self.rho) - self.rho

    def reflect(self, root, lam) -> Weight:
        """s_root(lam) = lam - <lam, root> root."""
        c = cartan_pair(lam, root)
        t = [Fraction(x) - c * r for x, r in zip(lam, root)]
        if any(x.denominator != 1 for x in t):
            raise LatticeError("reflection left the lattice")
        return Weight(int(x) for x in t)

    def dot_reflect(self, root, lam) -> Weight:
        return self.reflect(root, Weight(lam) + self.rho) - self.rho

    def is_dominant(self, lam) -> bool:
        return all(cartan_pair(lam, a) >= 0 for a in self.simple_roots)
