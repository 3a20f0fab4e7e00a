"""The extended algebra U x| kGamma of type B_l in triangular normal form.

Every element is a finite combination of normal words
``F_{i1}...F_{ir} * K_mu * xi_gamma * E_{j1}...E_{js}`` whose F- and E-parts
are canonical representatives modulo the quantum Serre relations.  Products
are computed by moving E-letters to the right past F-letters with the
commutation relation

    E_i F_j - F_j E_i = delta_ij (K_{alpha_i} - K_{-alpha_i}) / (q - q^-1),

moving torus and Gamma letters with their weight characters, and reducing the
resulting letter words per multidegree against an echelon basis of the Serre
ideal.
"""

from __future__ import annotations

import itertools
import os
import threading
from functools import lru_cache
from typing import NamedTuple

from .linalg import Echelon
from .parsing import ExpressionParser, format_linear_combination
from .scalars import ONE, ZERO, Scalar, V, q_binomial, vpow
from .weights import (
    GammaElement,
    LatticeError,
    RootData,
    Weight,
    alpha,
    beta,
    cartan_pair,
    eta,
    parity,
)

Q = V * V
_QDIFF_INV = (Q - Q.inverse()).inverse()


class NotHomogeneous(ValueError):
    """An element has several distinct degrees for the requested grading."""


class MemoBudgetExceeded(RuntimeError):
    """The configured cap on memoized entries was reached."""


MEMO_ENV = "OSPQ_MEMO_BUDGET"


class _Budget:
    def __init__(self):
        self.used = 0
        self.lock = threading.Lock()

    @property
    def limit(self):
        raw = os.environ.get(MEMO_ENV)
        return int(raw) if raw else None

    def charge(self, n: int = 1):
        with self.lock:
            self.used += n
            lim = self.limit
            if lim is not None and self.used > lim:
                raise MemoBudgetExceeded(f"memo budget of {lim} entries exhausted")


BUDGET = _Budget()


class NormalWord(NamedTuple):
    f: tuple
    torus: tuple
    gamma: tuple
    e: tuple

    def sort_key(self):
        return (len(self.f), self.f, self.torus, self.gamma, len(self.e), self.e)

    def is_torus(self) -> bool:
        return not self.f and not self.e


def _pair(a, b) -> int:
    # both arguments in P_g: twice-coordinates are even
    return sum(x * y for x, y in zip(a, b)) // 4


def _gamma_sign(gamma, nu) -> int:
    s = 0
    for g, t in zip(gamma, nu):
        if g:
            s += t // 2
    return -1 if s & 1 else 1


def _vadd(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _acc(target: dict, key, c: Scalar):
    old = target.get(key)
    s = c if old is None else old + c
    if s.is_zero():
        target.pop(key, None)
    else:
        target[key] = s


class SerreTable:
    """Canonical representatives of letter words modulo the Serre ideal.

    The same table serves E-words and F-words, whose Serre relations have
    identical shape.  Pivots are the lexicographically largest words, so
    the surviving (standard) words are the lexicographically small ones.
    """

    def __init__(self, alg: "QuantumAlgebra"):
        self.l = alg.l
        self._lock = threading.RLock()
        self._ideals: dict = {}
        self._reduced: dict = {}
        self.relations = []
        l = self.l
        for i in range(1, l + 1):
            base = Q if i < l else V
            for j in range(1, l + 1):
                if i == j:
                    continue
                n = 1 - int(cartan_pair(alpha(j, l), alpha(i, l)))
                vec = {}
                for k in range(n + 1):
                    c = q_binomial(n, k, base)
                    if k % 2:
                        c = -c
                    _acc(vec, (i,) * (n - k) + (j,) + (i,) * k, c)
                self.relations.append(((i, j, n), self.multidegree(next(iter(vec))), vec))

    def multidegree(self, word) -> tuple:
        d = [0] * self.l
        for a in word:
            d[a - 1] += 1
        return tuple(d)

    def ideal(self, d: tuple) -> Echelon:
        hit = self._ideals.get(d)
        if hit is not None:
            return hit
        with self._lock:
            hit = self._ideals.get(d)
            if hit is not None:
                return hit
            ech = Echelon()
            for i in range(self.l):
                if d[i] == 0:
                    continue
                sub = self.ideal(d[:i] + (d[i] - 1,) + d[i + 1 :])
                for row in sub.basis():
                    ech.add({(i + 1,) + w: c for w, c in row.items()})
                    ech.add({w + (i + 1,): c for w, c in row.items()})
            for _, rd, vec in self.relations:
                if rd == d:
                    ech.add(vec)
            BUDGET.charge()
            self._ideals[d] = ech
            return ech

    def reduce(self, word: tuple) -> dict:
        """``word`` modulo the Serre ideal as ``{standard word: Scalar}``."""
        if len(word) < 2:
            return {word: ONE}
        hit = self._reduced.get(word)
        if hit is not None:
            return hit
        ech = self.ideal(self.multidegree(word))
        if not ech.rows:
            res = {word: ONE}
        else:
            res, _ = ech.reduce({word: ONE})
        with self._lock:
            BUDGET.charge()
            self._reduced[word] = res
        return res

    def is_standard(self, word: tuple) -> bool:
        return word not in self.ideal(self.multidegree(word)).rows

    def standard_words(self, d: tuple) -> list[tuple]:
        letters = [i + 1 for i, c in enumerate(d) for _ in range(c)]
        pivots = self.ideal(d).rows
        words = sorted(set(itertools.permutations(letters)))
        return [w for w in words if w not in pivots]

    def standard_words_up_to(self, height: int) -> list[tuple]:
        out = []
        for n in range(height + 1):
            for d in _compositions(n, self.l):
                out.extend(self.standard_words(d))
        return out


def _compositions(n: int, parts: int):
    if parts == 1:
        yield (n,)
        return
    for k in range(n, -1, -1):
        for rest in _compositions(n - k, parts - 1):
            yield (k,) + rest


class QuantumAlgebra:
    """Structure constants and caches for one rank ``l``."""

    def __init__(self, l: int, rho_convention: str = "half"):
        self.roots = RootData(l, rho_convention)
        self.l = l
        self.zero_weight = (0,) * l
        self.zero_gamma = (0,) * l
        self.alphas = [None] + [tuple(alpha(i, l)) for i in range(1, l + 1)]
        self.alpha_gamma = [None] + [tuple(GammaElement.of(alpha(i, l))) for i in range(1, l + 1)]
        self.serre = SerreTable(self)
        self._straight: dict = {}
        self._products: dict = {}
        self.unit_word = NormalWord((), self.zero_weight, self.zero_gamma, ())

    # -- weights of letter words -------------------------------------------

    @lru_cache(maxsize=None)
    def nu_e(self, word: tuple) -> tuple:
        acc = self.zero_weight
        for a in word:
            acc = _vadd(acc, self.alphas[a])
        return acc

    @lru_cache(maxsize=None)
    def nu_f(self, word: tuple) -> tuple:
        return tuple(-x for x in self.nu_e(word))

    # -- gradings of normal words ------------------------------------------

    def word_nu(self, w: NormalWord) -> Weight:
        return Weight(_vadd(self.nu_e(w.e), self.nu_f(w.f)))

    def word_delta(self, w: NormalWord) -> GammaElement:
        g = GammaElement.of(w.torus)
        for a in w.f:
            g = g + GammaElement(self.alpha_gamma[a])
        return g

    def word_mu(self, w: NormalWord) -> GammaElement:
        return self.word_delta(w) + eta(self.word_nu(w))

    def word_z2(self, w: NormalWord) -> int:
        return parity(self.word_nu(w))

    def grading(self, name: str):
        return {
            "nu": self.word_nu,
            "delta": self.word_delta,
            "mu": self.word_mu,
            "z2": self.word_z2,
        }[name]

    # -- constructors ------------------------------------------------------

    def element(self, terms: dict) -> "Element":
        return Element(self, {w: c for w, c in terms.items() if not c.is_zero()})

    def zero(self) -> "Element":
        return Element(self, {})

    def one(self) -> "Element":
        return Element(self, {self.unit_word: ONE})

    def scalar(self, x) -> "Element":
        x = Scalar.coerce(x)
        return Element(self, {self.unit_word: x} if not x.is_zero() else {})

    def word(self, f=(), torus=None, gamma=None, e=()) -> "Element":
        torus = self.zero_weight if torus is None else tuple(torus)
        gamma = self.zero_gamma if gamma is None else tuple(int(b) % 2 for b in gamma)
        if any(t % 2 for t in torus):
            raise LatticeError(f"torus weight {list(torus)} is not in P_g")
        acc = self.one()
        if f:
            acc = self._letters(f, "F")
        mid = Element(self, {NormalWord((), torus, gamma, ()): ONE})
        right = self._letters(e, "E") if e else self.one()
        return acc * mid * right

    def _letters(self, word, side) -> "Element":
        red = self.serre.reduce(tuple(word))
        if side == "F":
            terms = {NormalWord(w, self.zero_weight, self.zero_gamma, ()): c for w, c in red.items()}
        else:
            terms = {NormalWord((), self.zero_weight, self.zero_gamma, w): c for w, c in red.items()}
        return Element(self, terms)

    def _check_index(self, i: int):
        if not isinstance(i, int) or not 1 <= i <= self.l:
            raise IndexError(f"generator index {i} out of range 1..{self.l}")

    def E(self, i: int) -> "Element":
        self._check_index(i)
        return Element(self, {NormalWord((), self.zero_weight, self.zero_gamma, (i,)): ONE})

    def F(self, i: int) -> "Element":
        self._check_index(i)
        return Element(self, {NormalWord((i,), self.zero_weight, self.zero_gamma, ()): ONE})

    def K(self, mu) -> "Element":
        mu = tuple(int(t) for t in mu)
        if len(mu) != self.l:
            raise ValueError(f"torus weight needs {self.l} coordinates, got {len(mu)}")
        if any(t % 2 for t in mu):
            raise LatticeError(f"K needs a weight in P_g (even twice-coordinates), got {list(mu)}")
        return Element(self, {NormalWord((), mu, self.zero_gamma, ()): ONE})

    def xi(self, gamma) -> "Element":
        gamma = tuple(int(b) % 2 for b in gamma)
        if len(gamma) != self.l:
            raise ValueError(f"Gamma element needs {self.l} bits, got {len(gamma)}")
        return Element(self, {NormalWord((), self.zero_weight, gamma, ()): ONE})

    def xi_of(self, mu) -> "Element":
        """xi_mu for a weight mu in P_g."""
        return self.xi(GammaElement.of(mu))

    def generator(self, kind: str, arg) -> "Element":
        kind = kind.upper() if kind.lower() != "xi" else "xi"
        if kind == "E":
            return self.E(arg)
        if kind == "F":
            return self.F(arg)
        if kind == "K":
            return self.K(arg)
        if kind == "xi":
            return self.xi(arg)
        raise ValueError(f"unknown generator kind {kind!r}")

    # -- multiplication ----------------------------------------------------

    def straighten(self, e: tuple, f: tuple) -> dict:
        """``E_e * F_f`` as ``{(f', kappa, e'): coeff}`` meaning ``F_f' K_kappa E_e'``.

        Letter words here are not Serre-reduced; only the commutation
        relations are used.
        """
        key = (e, f)
        hit = self._straight.get(key)
        if hit is not None:
            return hit
        if not e or not f:
            res = {(f, self.zero_weight, e): ONE}
        else:
            i = e[-1]
            e0 = e[:-1]
            res = {}
            for (f1, k1, e1), c in self.straighten(e0, f).items():
                _acc(res, (f1, k1, e1 + (i,)), c)
            ai = self.alphas[i]
            neg_ai = tuple(-x for x in ai)
            for k, letter in enumerate(f):
                if letter != i:
                    continue
                rest = f[:k] + f[k + 1 :]
                s = _pair(ai, self.nu_f(f[k + 1 :]))
                parts = ((ai, vpow(2 * s) * _QDIFF_INV), (neg_ai, -vpow(-2 * s) * _QDIFF_INV))
                inner = self.straighten(e0, rest)
                for kappa, coef in parts:
                    for (f1, k1, e1), c in inner.items():
                        t = -_pair(kappa, self.nu_e(e1))
                        _acc(res, (f1, _vadd(k1, kappa), e1), c * coef * vpow(2 * t))
        BUDGET.charge()
        self._straight[key] = res
        return res

    def word_product(self, w1: NormalWord, w2: NormalWord) -> dict:
        if not w1.e and not w2.f:
            return {
                NormalWord(
                    w1.f,
                    _vadd(w1.torus, w2.torus),
                    tuple(a ^ b for a, b in zip(w1.gamma, w2.gamma)),
                    w2.e,
                ): ONE
            }
        key = (w1, w2)
        hit = self._products.get(key)
        if hit is not None:
            return hit
        res: dict = {}
        gamma = tuple(a ^ b for a, b in zip(w1.gamma, w2.gamma))
        for (fp, kappa, ep), c in self.straighten(w1.e, w2.f).items():
            nf, ne = self.nu_f(fp), self.nu_e(ep)
            expo = _pair(w1.torus, nf) - _pair(w2.torus, ne)
            sign = _gamma_sign(w1.gamma, nf) * _gamma_sign(w2.gamma, ne)
            coef = c * vpow(2 * expo)
            if sign < 0:
                coef = -coef
            torus = _vadd(_vadd(w1.torus, kappa), w2.torus)
            fred = self.serre.reduce(w1.f + fp)
            ered = self.serre.reduce(ep + w2.e)
            for fw, cf in fred.items():
                for ew, ce in ered.items():
                    _acc(res, NormalWord(fw, torus, gamma, ew), coef * cf * ce)
        BUDGET.charge()
        self._products[key] = res
        return res

    def multiply(self, a: "Element", b: "Element") -> "Element":
        out: dict = {}
        for w1, c1 in a.terms.items():
            for w2, c2 in b.terms.items():
                c = c1 * c2
                for w, d in self.word_product(w1, w2).items():
                    _acc(out, w, c * d)
        return Element(self, out)

    def normalize(self, f=(), torus=None, gamma=None, e=()) -> "Element":
        """Normal form of an arbitrary product F_f K_torus xi_gamma E_e."""
        return self.word(f, torus, gamma, e)

    # -- parsing -----------------------------------------------------------

    def atom(self, name, idx, bracket, pos):
        if name in ("E", "F") and idx is not None and bracket is None:
            return self.generator(name, idx)
        if name == "K" and idx is None and bracket is not None:
            return self.K(bracket)
        if name == "xi" and idx is None and bracket is not None:
            return self.xi(bracket)
        return None

    def parse(self, text: str, extra_atoms=None) -> "Element":
        def atom(name, idx, bracket, pos):
            if extra_atoms is not None:
                val = extra_atoms(name, idx, bracket, pos)
                if val is not None:
                    return val
            return self.atom(name, idx, bracket, pos)

        val = ExpressionParser(text, atom).parse()
        if isinstance(val, Scalar):
            return self.scalar(val)
        return val

    # -- relation lists ----------------------------------------------------

    def defining_relations(self) -> list[tuple[str, "Element"]]:
        """Labelled elements that must vanish: every defining relation."""
        l = self.l
        out = []
        zero = self.zero_weight
        out.append(("K_0 = 1", self.K(zero) - self.one()))
        tori = [self.alphas[i] for i in range(1, l + 1)] + [tuple(beta(1, l) * 2)]
        for a, b in itertools.product(tori, repeat=2):
            out.append(
                (f"K{list(a)} K{list(b)} = K_sum", self.K(a) * self.K(b) - self.K(_vadd(a, b)))
            )
        for lam in tori:
            kl, kinv = self.K(lam), self.K(tuple(-x for x in lam))
            for j in range(1, l + 1):
                s = _pair(lam, self.alphas[j])
                out.append(
                    (f"K{list(lam)} E{j} K^-1 = q^({s}) E{j}", kl * self.E(j) * kinv - vpow(2 * s) * self.E(j))
                )
                out.append(
                    (f"K{list(lam)} F{j} K^-1 = q^({-s}) F{j}", kl * self.F(j) * kinv - vpow(-2 * s) * self.F(j))
                )
        for i in range(1, l + 1):
            for j in range(1, l + 1):
                lhs = self.E(i) * self.F(j) - self.F(j) * self.E(i)
                if i == j:
                    ai = self.alphas[i]
                    lhs = lhs - (self.K(ai) - self.K(tuple(-x for x in ai))) * _QDIFF_INV
                out.append((f"[E{i}, F{j}]", lhs))
        for (i, j, n), _, _ in self.serre.relations:
            base = Q if i < l else V
            for side in ("E", "F"):
                g = self.E if side == "E" else self.F
                acc = self.zero()
                for k in range(n + 1):
                    c = q_binomial(n, k, base) * (-1) ** k
                    acc = acc + c * (g(i) ** (n - k)) * g(j) * (g(i) ** k)
                out.append((f"Serre {side}{i}^{n} {side}{j}", acc))
        for gbits in itertools.product((0, 1), repeat=l):
            x = self.xi(gbits)
            out.append((f"xi{list(gbits)}^2 = 1", x * x - self.one()))
            for lam in tori:
                out.append((f"xi{list(gbits)} K{list(lam)} = K xi", x * self.K(lam) - self.K(lam) * x))
            for j in range(1, l + 1):
                s = _gamma_sign(gbits, self.alphas[j])
                out.append((f"xi{list(gbits)} E{j} xi = +-E{j}", x * self.E(j) * x - s * self.E(j)))
                out.append((f"xi{list(gbits)} F{j} xi = +-F{j}", x * self.F(j) * x - s * self.F(j)))
        return out


_ALGEBRAS: dict = {}
_ALG_LOCK = threading.Lock()


def algebra(l: int, rho_convention: str = "half") -> QuantumAlgebra:
    """Shared algebra instance for rank ``l`` (caches are per instance)."""
    key = (l, rho_convention)
    with _ALG_LOCK:
        alg = _ALGEBRAS.get(key)
        if alg is None:
            alg = QuantumAlgebra(l, rho_convention)
            _ALGEBRAS[key] = alg
        return alg


def _word_text(w: NormalWord) -> str:
    parts = []
    for letter, word in (("F", w.f),):
        parts.extend(_runs(letter, word))
    if any(w.torus):
        parts.append("K[" + ",".join(str(t) for t in w.torus) + "]")
    if any(w.gamma):
        parts.append("xi[" + ",".join(str(b) for b in w.gamma) + "]")
    parts.extend(_runs("E", w.e))
    return "*".join(parts) if parts else "1"


def _runs(letter: str, word: tuple) -> list[str]:
    out = []
    for a, grp in itertools.groupby(word):
        n = len(list(grp))
        out.append(f"{letter}{a}" if n == 1 else f"{letter}{a}^{n}")
    return out


class Element:
    """Immutable linear combination of normal words."""

    __slots__ = ("alg", "terms", "_hash")

    def __init__(self, alg: QuantumAlgebra, terms: dict):
        self.alg = alg
        self.terms = terms
        self._hash = None

    # -- arithmetic --------------------------------------------------------

    def _lift(self, other):
        if isinstance(other, Element):
            if other.alg.l != self.alg.l:
                raise ValueError("elements of algebras of different rank")
            return other
        try:
            return self.alg.scalar(Scalar.coerce(other))
        except TypeError:
            return None

    def __add__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        out = dict(self.terms)
        for w, c in other.terms.items():
            _acc(out, w, c)
        return Element(self.alg, out)

    __radd__ = __add__

    def __neg__(self):
        return Element(self.alg, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Element):
            return self.alg.multiply(self, other)
        try:
            c = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        if c.is_zero():
            return Element(self.alg, {})
        return Element(self.alg, {w: x * c for w, x in self.terms.items()})

    def __rmul__(self, other):
        try:
            c = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        return self * c

    def __truediv__(self, other):
        c = Scalar.coerce(other)
        return self * c.inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result, base = self.alg.one(), self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def inverse(self) -> "Element":
        """Inverse of a single torus/Gamma monomial."""
        if len(self.terms) != 1:
            raise ValueError("only monomials in K and xi are invertible here")
        (w, c), = self.terms.items()
        if not w.is_torus():
            raise ValueError("only monomials in K and xi are invertible here")
        neg = tuple(-t for t in w.torus)
        return Element(self.alg, {NormalWord((), neg, w.gamma, ()): c.inverse()})

    # -- comparison --------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    # -- inspection --------------------------------------------------------

    def items(self) -> list[tuple[NormalWord, Scalar]]:
        return sorted(self.terms.items(), key=lambda kv: kv[0].sort_key())

    def coefficient(self, word: NormalWord) -> Scalar:
        return self.terms.get(word, ZERO)

    def degree(self, grading: str):
        """Common degree of all terms; zero has degree 0."""
        fn = self.alg.grading(grading)
        degs = {fn(w) for w in self.terms}
        if len(degs) > 1:
            raise NotHomogeneous(f"element is not homogeneous for the {grading} grading")
        if degs:
            return degs.pop()
        if grading == "z2":
            return 0
        return Weight(self.alg.zero_weight) if grading == "nu" else GammaElement(self.alg.zero_gamma)

    def nu(self) -> Weight:
        return self.degree("nu")

    def delta(self) -> GammaElement:
        return self.degree("delta")

    def mu(self) -> GammaElement:
        return self.degree("mu")

    def z2(self) -> int:
        return self.degree("z2")

    def is_homogeneous(self, grading: str) -> bool:
        try:
            self.degree(grading)
        except NotHomogeneous:
            return False
        return True

    def components(self, *gradings: str) -> dict:
        """Split by the joint degree for the named gradings."""
        fns = [self.alg.grading(g) for g in gradings]
        out: dict = {}
        for w, c in self.terms.items():
            key = tuple(fn(w) for fn in fns)
            if len(key) == 1:
                key = key[0]
            out.setdefault(key, {})[w] = c
        return {k: Element(self.alg, t) for k, t in out.items()}

    def map_words(self, fn) -> "Element":
        """Linear extension of ``fn: word -> iterable of (word, coeff)``."""
        out: dict = {}
        for w, c in self.terms.items():
            for w2, d in fn(w):
                _acc(out, w2, c * d)
        return Element(self.alg, out)

    def height(self) -> int:
        return max((len(w.f) + len(w.e) for w in self.terms), default=0)

    def __str__(self):
        return format_linear_combination((c, _word_text(w)) for w, c in self.items())

    def __repr__(self):
        return f"Element({str(self)!r})"


def word_text(w: NormalWord) -> str:
    return _word_text(w)


def commutator(a: Element, b: Element) -> Element:
    return a * b - b * a


def anticommutator(a: Element, b: Element) -> Element:
    return a * b + b * a


def direct_mu_marker(alg: QuantumAlgebra, kind: str, arg) -> GammaElement:
    """The Gamma-class each generator is declared to carry for the mu grading."""
    l = alg.l
    if kind == "E":
        return GammaElement.of(beta(arg + 1, l))
    if kind == "F":
        return GammaElement.of(beta(arg, l))
    if kind == "K":
        return GammaElement.of(arg)
    return GammaElement.zero(l)


def bigrade_check(alg: QuantumAlgebra, rng=None, samples: int = 40, max_degree: int = 3):
    """Compare mu with delta + eta(nu) on generators and random products.

    Returns ``(ok, failures)``; failures are short text descriptions.
    """
    import random

    rng = rng or random.Random(0)
    l = alg.l
    gens = []
    for i in range(1, l + 1):
        gens.append(("E", i, alg.E(i)))
        gens.append(("F", i, alg.F(i)))
        gens.append(("K", alg.alphas[i], alg.K(alg.alphas[i])))
    gens.append(("K", tuple(beta(1, l) * 2), alg.K(beta(1, l) * 2)))
    for bits in itertools.product((0, 1), repeat=l):
        gens.append(("xi", bits, alg.xi(bits)))
    failures = []
    for kind, arg, g in gens:
        if g.mu() != direct_mu_marker(alg, kind, arg):
            failures.append(f"generator {kind}{arg}")
    for _ in range(samples):
        n = rng.randint(1, max_degree)
        picks = [rng.choice(gens) for _ in range(n)]
        prod = alg.one()
        marker = GammaElement.zero(l)
        for kind, arg, g in picks:
            prod = prod * g
            marker = marker + direct_mu_marker(alg, kind, arg)
        if prod.is_zero():
            continue
        try:
            got = prod.mu()
        except NotHomogeneous:
            failures.append("product " + "*".join(f"{k}{a}" for k, a, _ in picks) + " not mu-homogeneous")
            continue
        if got != marker:
            failures.append("product " + "*".join(f"{k}{a}" for k, a, _ in picks))
    return not failures, failures
