"""Hopf structure of the extended algebra and its super counterpart.

Ordinary structure on generators::

    Delta(E_i) = E_i (x) 1 + K_{alpha_i} (x) E_i      S(E_i) = -K_{-alpha_i} E_i
    Delta(F_i) = F_i (x) K_{-alpha_i} + 1 (x) F_i     S(F_i) = -F_i K_{alpha_i}
    Delta(K_mu) = K_mu (x) K_mu                        S(K_mu) = K_{-mu}
    Delta(xi) = xi (x) xi                              S(xi) = xi

The super coproduct and antipode are pulled back through psi and twisted
by explicit signs; they are never extended from generators independently.
"""

from __future__ import annotations

import itertools

from .algebra import Element, NormalWord, QuantumAlgebra, _acc, word_text
from .parsing import format_linear_combination
from .scalars import ONE, ZERO, Scalar
from .weights import eta, pair_mod2, parity
from .zhang import psi, psi_word, require_bar


class TensorElement:
    """Finite combination of pure tensors of normal words (fixed arity)."""

    __slots__ = ("alg", "terms", "arity")

    def __init__(self, alg: QuantumAlgebra, terms: dict, arity: int):
        self.alg = alg
        self.terms = terms
        self.arity = arity

    @classmethod
    def pure(cls, *factors: Element) -> "TensorElement":
        alg = factors[0].alg
        out: dict = {}
        for combo in itertools.product(*(f.terms.items() for f in factors)):
            c = ONE
            for _, x in combo:
                c = c * x
            _acc(out, tuple(w for w, _ in combo), c)
        return cls(alg, out, len(factors))

    def _same(self, other):
        if not isinstance(other, TensorElement) or other.arity != self.arity:
            raise TypeError("tensor elements of different arity")

    def __add__(self, other):
        self._same(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            _acc(out, k, c)
        return TensorElement(self.alg, out, self.arity)

    def __neg__(self):
        return TensorElement(self.alg, {k: -c for k, c in self.terms.items()}, self.arity)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, TensorElement):
            return tensor_product(self, other, super_signs=False)
        c = Scalar.coerce(other)
        if c.is_zero():
            return TensorElement(self.alg, {}, self.arity)
        return TensorElement(self.alg, {k: x * c for k, x in self.terms.items()}, self.arity)

    def __rmul__(self, other):
        return self * other

    def __eq__(self, other):
        if not isinstance(other, TensorElement):
            return NotImplemented
        return self.arity == other.arity and self.terms == other.terms

    __hash__ = None

    def is_zero(self) -> bool:
        return not self.terms

    def items(self):
        return sorted(self.terms.items(), key=lambda kv: tuple(w.sort_key() for w in kv[0]))

    def __str__(self):
        return format_linear_combination(
            (c, " (x) ".join(word_text(w) for w in key)) for key, c in self.items()
        )

    def __repr__(self):
        return f"TensorElement({str(self)!r})"


def _z2(alg, w) -> int:
    return parity(alg.word_nu(w))


def tensor_product(a: TensorElement, b: TensorElement, super_signs: bool = False) -> TensorElement:
    """Componentwise product; with ``super_signs`` the Koszul rule applies."""
    a._same(b)
    alg = a.alg
    out: dict = {}
    for ka, ca in a.terms.items():
        for kb, cb in b.terms.items():
            c = ca * cb
            if super_signs:
                s = 0
                for i in range(len(ka)):
                    pa = _z2(alg, ka[i])
                    if pa:
                        for j in range(i):
                            s += _z2(alg, kb[j])
                if s & 1:
                    c = -c
            acc = {(): c}
            for x, y in zip(ka, kb):
                nxt: dict = {}
                prod = alg.word_product(x, y)
                for pre, pc in acc.items():
                    for w, d in prod.items():
                        _acc(nxt, pre + (w,), pc * d)
                acc = nxt
            for k, v in acc.items():
                _acc(out, k, v)
    return TensorElement(alg, out, a.arity)


def _caches(alg):
    c = getattr(alg, "_hopf_caches", None)
    if c is None:
        c = {"cop_f": {}, "cop_e": {}, "cop": {}, "ant_f": {}, "ant_e": {}, "ant": {}}
        alg._hopf_caches = c
    return c


def _neg(alg, mu):
    return tuple(-x for x in mu)


def _gen_coproduct(alg: QuantumAlgebra, side: str, i: int) -> TensorElement:
    one = alg.one()
    a = alg.alphas[i]
    if side == "E":
        return TensorElement.pure(alg.E(i), one) + TensorElement.pure(alg.K(a), alg.E(i))
    return TensorElement.pure(alg.F(i), alg.K(_neg(alg, a))) + TensorElement.pure(one, alg.F(i))


def _letters_coproduct(alg, side, word) -> TensorElement:
    cache = _caches(alg)["cop_e" if side == "E" else "cop_f"]
    hit = cache.get(word)
    if hit is not None:
        return hit
    if not word:
        res = TensorElement.pure(alg.one(), alg.one())
    else:
        res = _letters_coproduct(alg, side, word[:-1]) * _gen_coproduct(alg, side, word[-1])
    cache[word] = res
    return res


def coproduct_word(alg: QuantumAlgebra, w: NormalWord) -> TensorElement:
    cache = _caches(alg)["cop"]
    hit = cache.get(w)
    if hit is not None:
        return hit
    mid = Element(alg, {NormalWord((), w.torus, w.gamma, ()): ONE})
    res = _letters_coproduct(alg, "F", w.f) * TensorElement.pure(mid, mid) * _letters_coproduct(alg, "E", w.e)
    cache[w] = res
    return res


def coproduct(a: Element) -> TensorElement:
    alg = a.alg
    out: dict = {}
    for w, c in a.terms.items():
        for k, d in coproduct_word(alg, w).terms.items():
            _acc(out, k, c * d)
    return TensorElement(alg, out, 2)


def _gen_antipode(alg, side, i) -> Element:
    a = alg.alphas[i]
    if side == "E":
        return -(alg.K(_neg(alg, a)) * alg.E(i))
    return -(alg.F(i) * alg.K(a))


def _letters_antipode(alg, side, word) -> Element:
    cache = _caches(alg)["ant_e" if side == "E" else "ant_f"]
    hit = cache.get(word)
    if hit is not None:
        return hit
    if not word:
        res = alg.one()
    else:
        # anti-multiplicative: S(xy) = S(y) S(x)
        res = _gen_antipode(alg, side, word[-1]) * _letters_antipode(alg, side, word[:-1])
    cache[word] = res
    return res


def antipode_word(alg: QuantumAlgebra, w: NormalWord) -> Element:
    cache = _caches(alg)["ant"]
    hit = cache.get(w)
    if hit is not None:
        return hit
    mid = Element(alg, {NormalWord((), _neg(alg, w.torus), w.gamma, ()): ONE})
    res = _letters_antipode(alg, "E", w.e) * mid * _letters_antipode(alg, "F", w.f)
    cache[w] = res
    return res


def antipode(a: Element) -> Element:
    alg = a.alg
    out: dict = {}
    for w, c in a.terms.items():
        for w2, d in antipode_word(alg, w).terms.items():
            _acc(out, w2, c * d)
    return Element(alg, out)


def counit_word(w: NormalWord) -> Scalar:
    return ONE if w.is_torus() else ZERO


def counit(a: Element) -> Scalar:
    acc = ZERO
    for w, c in a.terms.items():
        if w.is_torus():
            acc = acc + c
    return acc


# -- super structure -------------------------------------------------------


def _psi_signed(alg, w):
    s, w2 = psi_word(alg, w)
    return s, w2


def super_coproduct(x: Element, bar_only: bool = False) -> TensorElement:
    """Delta-bar, pulled back through psi with the sign
    (-1)^{(nu(a1), nu(a2) + eta(nu(a2)))} on each Sweedler term."""
    if bar_only:
        require_bar(x)
    alg = x.alg
    out: dict = {}
    for w, c in psi(x).terms.items():
        for (w1, w2), d in coproduct_word(alg, w).terms.items():
            n1, n2 = alg.word_nu(w1), alg.word_nu(w2)
            s = (sum(a * b for a, b in zip(n1, n2)) // 4 + pair_mod2(eta(n2), n1)) & 1
            s1, p1 = _psi_signed(alg, w1)
            s2, p2 = _psi_signed(alg, w2)
            coef = c * d
            if (-1) ** s * s1 * s2 < 0:
                coef = -coef
            _acc(out, (p1, p2), coef)
    return TensorElement(alg, out, 2)


def super_antipode(x: Element, bar_only: bool = False) -> Element:
    """S-bar(psi(a)) = (-1)^{(nu(a), delta(a))} psi(S(a)), termwise."""
    if bar_only:
        require_bar(x)
    alg = x.alg
    acc = alg.zero()
    for w, c in psi(x).terms.items():
        s = pair_mod2(alg.word_delta(w), alg.word_nu(w))
        term = psi(antipode_word(alg, w)) * c
        acc = acc - term if s else acc + term
    return acc


# -- structural maps on tensors -------------------------------------------


def apply_at(t: TensorElement, pos: int, fn) -> TensorElement:
    """Replace factor ``pos`` by ``fn(word)``.

    ``fn`` returns an Element (arity unchanged), a TensorElement (arity
    grows) or a Scalar (factor removed).
    """
    alg = t.alg
    out: dict = {}
    arity = None
    for key, c in t.terms.items():
        img = fn(key[pos])
        pre, post = key[:pos], key[pos + 1 :]
        if isinstance(img, TensorElement):
            items = img.terms.items()
        elif isinstance(img, Element):
            items = (((w,), d) for w, d in img.terms.items())
        else:
            items = [((), Scalar.coerce(img))]
        for sub, d in items:
            if d.is_zero():
                continue
            nk = pre + tuple(sub) + post
            arity = len(nk)
            _acc(out, nk, c * d)
    if arity is None:
        probe = fn(next(iter(t.terms))[pos]) if t.terms else None
        extra = probe.arity - 1 if isinstance(probe, TensorElement) else (0 if isinstance(probe, Element) else -1)
        arity = t.arity + extra
    return TensorElement(alg, out, arity)


def multiply_out(t: TensorElement) -> Element:
    alg = t.alg
    acc = alg.zero()
    for key, c in t.terms.items():
        prod = alg.one()
        for w in key:
            prod = prod * Element(alg, {w: ONE})
        acc = acc + prod * c
    return acc


def _as_element(alg, w):
    return Element(alg, {w: ONE})


def _check_structure(a: Element, cop, ant, eps_word) -> str | None:
    alg = a.alg
    d = cop(a)
    if not _collapse_eq(apply_at(d, 0, eps_word), a):
        return "counit (eps x id)"
    if not _collapse_eq(apply_at(d, 1, eps_word), a):
        return "counit (id x eps)"
    left = apply_at(d, 0, lambda w: cop(_as_element(alg, w)))
    right = apply_at(d, 1, lambda w: cop(_as_element(alg, w)))
    if left != right:
        return "coassociativity"
    unit = alg.scalar(counit(a))
    if multiply_out(apply_at(d, 0, lambda w: ant(_as_element(alg, w)))) != unit:
        return "antipode m(S x id)"
    if multiply_out(apply_at(d, 1, lambda w: ant(_as_element(alg, w)))) != unit:
        return "antipode m(id x S)"
    return None


def _collapse_eq(t: TensorElement, a: Element) -> bool:
    if t.arity != 1:
        return False
    return {k[0]: c for k, c in t.terms.items()} == a.terms


def hopf_axiom_check(a: Element, b: Element | None = None):
    """``(True, None)`` or ``(False, failing identity)`` for ordinary Hopf data."""
    bad = _check_structure(a, coproduct, antipode, counit_word)
    if bad:
        return False, bad
    if b is not None:
        if coproduct(a * b) != coproduct(a) * coproduct(b):
            return False, "Delta multiplicative"
        if antipode(a * b) != antipode(b) * antipode(a):
            return False, "S anti-multiplicative"
        if counit(a * b) != counit(a) * counit(b):
            return False, "eps multiplicative"
    return True, None


def super_axiom_check(x: Element, y: Element | None = None):
    """Super Hopf axioms; with ``y`` also the Koszul-signed multiplicativity.

    ``x`` and ``y`` are split into Z2-homogeneous parts where signs need it.
    """
    bad = _check_structure(x, super_coproduct, super_antipode, counit_word)
    if bad:
        return False, "super " + bad
    if y is not None:
        lhs = super_coproduct(x * y)
        rhs = tensor_product(super_coproduct(x), super_coproduct(y), super_signs=True)
        if lhs != rhs:
            return False, "super Delta multiplicative (Koszul)"
        sx, sy = x.components("z2"), y.components("z2")
        acc = x.alg.zero()
        for px, xx in sx.items():
            for py, yy in sy.items():
                term = super_antipode(yy) * super_antipode(xx)
                acc = acc - term if px * py else acc + term
        if super_antipode(x * y) != acc:
            return False, "super S anti-multiplicative"
    return True, None


def bigrading_check(a: Element):
    """Delta and S respect the (nu, delta) bigrading on a homogeneous ``a``.

    Delta(U^d_n) lies in the sum of U^{d+n2}_{n1} (x) U^d_{n2}, and
    S(U^d_n) lies in U^{d+n}_n (nu classes read mod 2 as Gamma classes).
    """
    from .weights import GammaElement

    alg = a.alg
    nu, de = a.nu(), a.delta()
    for (w1, w2), _ in coproduct(a).terms.items():
        n2 = alg.word_nu(w2)
        if alg.word_delta(w2) != de:
            return False
        if alg.word_delta(w1) != de + GammaElement.of(n2):
            return False
        if tuple(x + y for x, y in zip(alg.word_nu(w1), n2)) != tuple(nu):
            return False
    s = antipode(a)
    for w in s.terms:
        if alg.word_nu(w) != nu or alg.word_delta(w) != de + GammaElement.of(nu):
            return False
    return True


__all__ = [
    "TensorElement",
    "coproduct",
    "antipode",
    "counit",
    "super_coproduct",
    "super_antipode",
    "hopf_axiom_check",
    "super_axiom_check",
    "tensor_product",
    "apply_at",
    "multiply_out",
    "bigrading_check",
]
