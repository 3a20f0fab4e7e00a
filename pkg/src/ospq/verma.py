"""Height-truncated Verma modules M(Lambda, theta) with Gamma action and Z2 grading.

The basis is the set of standard F-words of length at most ``height``
applied to the highest weight vector.  An element acts on ``F_u v`` by
forming the normal form of ``a * F_u``: words that still end in E-letters
kill ``v``, and ``F_f K_mu xi_gamma`` sends ``v`` to
``Lambda(K_mu) theta(gamma) F_f v``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .algebra import Element, NormalWord, QuantumAlgebra, _acc
from .hc_center import Character, evaluate, solve_anticentral, upsilon
from .linalg import kernel
from .scalars import ONE, ZERO, Scalar, vpow
from .weights import Weight, fundamental, parity


@dataclass
class ActResult:
    vector: dict
    overflow: bool


@dataclass
class SingularVector:
    offset: Weight
    vector: dict
    character: Character


class VermaModule:
    def __init__(self, alg: QuantumAlgebra, chi: Character, height: int, grade_offset: int = 0):
        if chi.rank != alg.l:
            raise ValueError("character rank does not match the algebra")
        self.alg = alg
        self.chi = chi
        self.height = height
        self.grade_offset = grade_offset % 2
        self.basis = alg.serre.standard_words_up_to(height)
        self.index = {w: k for k, w in enumerate(self.basis)}

    # -- structure ------------------------------------------------------------

    def offset(self, word) -> Weight:
        """nu with F_word v of weight q^{-nu} Lambda."""
        return Weight(self.alg.nu_e(tuple(word)))

    def z2(self, word) -> int:
        return (parity(self.offset(word)) + self.grade_offset) % 2

    def weight_space(self, nu) -> list[tuple]:
        nu = tuple(nu)
        return [w for w in self.basis if tuple(self.offset(w)) == nu]

    def weight_dimensions(self) -> dict:
        dims: dict = {}
        for w in self.basis:
            key = tuple(self.offset(w))
            dims[key] = dims.get(key, 0) + 1
        return dims

    def component(self, grade: int) -> list[tuple]:
        return [w for w in self.basis if self.z2(w) == grade % 2]

    def highest(self) -> dict:
        return {(): ONE}

    # -- action ---------------------------------------------------------------

    def act_on_word(self, a: Element, u: tuple) -> ActResult:
        out: dict = {}
        overflow = False
        start = NormalWord(tuple(u), self.alg.zero_weight, self.alg.zero_gamma, ())
        for w, c in a.terms.items():
            for r, d in self.alg.word_product(w, start).items():
                if r.e:
                    continue
                if len(r.f) > self.height:
                    overflow = True
                    continue
                val = c * d * self.chi.torus_value(r.torus)
                if self.chi.theta_value(r.gamma) < 0:
                    val = -val
                _acc(out, r.f, val)
        return ActResult(out, overflow)

    def act(self, a: Element, m: dict) -> ActResult:
        out: dict = {}
        overflow = False
        for u, c in m.items():
            res = self.act_on_word(a, u)
            overflow |= res.overflow
            for w, d in res.vector.items():
                _acc(out, w, c * d)
        return ActResult(out, overflow)

    def format_vector(self, m: dict) -> str:
        from .parsing import format_linear_combination

        def word(u):
            if not u:
                return "v"
            from .algebra import _runs

            return "*".join(_runs("F", u)) + "*v"

        items = sorted(m.items(), key=lambda kv: (len(kv[0]), kv[0]))
        return format_linear_combination((c, word(u)) for u, c in items)

    # -- singular vectors -----------------------------------------------------

    def singular_vectors(self, nu) -> list[SingularVector]:
        """Basis of the vectors at offset nu killed by every E_i."""
        words = self.weight_space(nu)
        if not words:
            return []
        images = []
        for u in words:
            vec = {}
            for i in range(1, self.alg.l + 1):
                res = self.act_on_word(self.alg.E(i), u)
                for w, c in res.vector.items():
                    vec[(i, w)] = c
            images.append(vec)
        out = []
        nu = Weight(nu)
        for rel in kernel(images):
            vec = {words[j]: c for j, c in rel.items()}
            # scale so that the lexicographically largest word has coefficient 1
            lead = max(vec)
            inv = vec[lead].inverse()
            vec = {w: c * inv for w, c in vec.items()}
            out.append(SingularVector(nu, vec, self.chi.shifted(nu)))
        return out

    def all_singular_vectors(self) -> list[SingularVector]:
        """Singular vectors at every nonzero offset inside the window."""
        out = []
        for nu in sorted(self.weight_dimensions()):
            if any(nu):
                out.extend(self.singular_vectors(nu))
        return out

    # -- operators --------------------------------------------------------------

    def scalar_action(self, a: Element):
        """Per Z2 component the scalar by which ``a`` acts, or None if not scalar.

        Basis vectors whose image overflows the window are skipped.
        Returns ``{grade: Scalar | None}`` (components with no safe
        vectors are absent).
        """
        found: dict = {}
        bad = set()
        for u in self.basis:
            res = self.act_on_word(a, u)
            if res.overflow:
                continue
            g = self.z2(u)
            vec = res.vector
            if any(w != u for w in vec):
                bad.add(g)
                continue
            val = vec.get(u, ZERO)
            if g in found and found[g] != val:
                bad.add(g)
            found.setdefault(g, val)
        return {g: (None if g in bad else found[g]) for g in found}


def scalar_action_check(a: Element, module: VermaModule):
    """``(ok, scalars)``: True iff ``a`` is scalar on each Z2 component."""
    sc = module.scalar_action(a)
    return all(v is not None for v in sc.values()) and bool(sc), sc


def scasimir_spectrum(module: VermaModule, sca: Element | None = None):
    """Eigenvalues ``(on grade 0, on grade 1)`` of xi z_{w_l}.

    Raises AssertionError if the action is not scalar on a component.
    """
    if sca is None:
        sca = solve_anticentral(module.alg).element
    sc = module.scalar_action(sca)
    if any(v is None for v in sc.values()):
        raise AssertionError("the anticentral element does not act by scalars")
    return sc.get(0, ZERO), sc.get(1, ZERO)


def predicted_spectrum(module: VermaModule):
    """(theta(w_l) Lambda(Upsilon z), its negative) ordered by component grade."""
    alg = module.alg
    z = solve_anticentral(alg).central.element
    val = evaluate(upsilon(z), module.chi)
    if module.chi.theta_value((1,) * alg.l) < 0:
        val = -val
    if module.grade_offset == 0:
        return val, -val
    return -val, val


def annihilation_criterion(chi: Character, roots) -> bool:
    """For all i: Lambda(K_{beta_i})^2 + q^{-2 (rho, beta_i)} != 0."""
    for c, r in zip(chi.values, roots.rho):
        if (c * c + vpow(-2 * r)).is_zero():
            return False
    return True


def degenerate_characters(roots, index: int = 1):
    """The two values +-i q^{-(rho, beta_index)} (others default to 1)."""
    from .scalars import I

    l = roots.l
    r = roots.rho[index - 1]
    out = []
    for s in (1, -1):
        vals = [ONE] * l
        vals[index - 1] = I * vpow(-r) * s
        out.append(tuple(vals))
    return out


def degenerate_annihilation_check(module: VermaModule, sca: Element | None = None) -> bool:
    """xi z_{w_l} kills every basis vector when the criterion fails."""
    if annihilation_criterion(module.chi, module.alg.roots):
        raise ValueError("character is not degenerate: the criterion holds")
    if sca is None:
        sca = solve_anticentral(module.alg).element
    for u in module.basis:
        res = module.act_on_word(sca, u)
        if res.vector:
            return False
    return True


@dataclass
class OddProbe:
    witness_ok: bool
    per_component: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.witness_ok and bool(self.per_component) and all(self.per_component.values())


def odd_nondegeneracy_probe(module: VermaModule) -> OddProbe:
    """E_l K_{-w_l} acts nonzero on each Z2 component of the window.

    Also confirms ad E_l (K_{-w_l}) = (1 - q^{-1}) E_l K_{-w_l}.
    """
    from .adjoint import ad

    alg = module.alg
    l = alg.l
    wl = tuple(-t for t in fundamental(l, l))
    x = alg.E(l) * alg.K(wl)
    witness_ok = ad(alg.E(l), alg.K(wl)) == x * (ONE - vpow(-2))
    comp: dict = {}
    for u in module.basis:
        g = module.z2(u)
        res = module.act_on_word(x, u)
        comp[g] = comp.get(g, False) or bool(res.vector)
    return OddProbe(witness_ok, comp)


__all__ = [
    "VermaModule",
    "ActResult",
    "SingularVector",
    "scalar_action_check",
    "scasimir_spectrum",
    "predicted_spectrum",
    "annihilation_criterion",
    "degenerate_characters",
    "degenerate_annihilation_check",
    "odd_nondegeneracy_probe",
    "Scalar",
]
