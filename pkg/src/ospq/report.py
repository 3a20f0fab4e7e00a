"""Verification suites and their line-oriented reports.

Each check is a ``(id, anchor, status, witness)`` record.  The anchor
names the identity being certified; the witness is a short text that
lets a reader reproduce the failing (or passing) instance.
"""

from __future__ import annotations

import itertools
import json
import random
import time
from dataclasses import dataclass, field

from .algebra import algebra, bigrade_check
from .scalars import ONE
from .weights import RootData, Weight, from_alpha_coords, fundamental, sign_identity

SUITES = ("gradations", "relations", "hopf", "zhang", "adjoint", "center", "verma")


@dataclass
class Check:
    id: str
    anchor: str
    status: str
    witness: str = ""
    seconds: float = 0.0


@dataclass
class Report:
    suite: str
    rank: int
    height: int
    checks: list = field(default_factory=list)
    aborted: str | None = None

    @property
    def failures(self) -> int:
        return sum(1 for c in self.checks if c.status == "fail")

    def add(self, id_, anchor, ok, witness="", seconds=0.0):
        status = "pass" if ok is True else "fail" if ok is False else str(ok)
        self.checks.append(Check(id_, anchor, status, witness, seconds))

    def to_tsv(self, timing: bool = False) -> str:
        lines = []
        for c in self.checks:
            row = [c.id, c.anchor, c.status, c.witness.replace("\t", " ").replace("\n", " ")]
            if timing:
                row.append(f"{c.seconds:.3f}")
            lines.append("\t".join(row))
        if self.aborted:
            lines.append(f"# aborted: {self.aborted}")
        return "\n".join(lines) + ("\n" if lines else "")

    def to_nested(self, timing: bool = False) -> str:
        checks = []
        for c in self.checks:
            d = {"id": c.id, "anchor": c.anchor, "status": c.status, "witness": c.witness}
            if timing:
                d["seconds"] = round(c.seconds, 3)
            checks.append(d)
        doc = {"suite": self.suite, "rank": self.rank, "height": self.height, "checks": checks}
        if self.aborted:
            doc["aborted"] = self.aborted
        return json.dumps(doc, indent=2) + "\n"


class _Runner:
    def __init__(self, report: Report, prefix: str):
        self.report = report
        self.prefix = prefix
        self.n = 0

    def __call__(self, anchor: str, fn):
        """Run ``fn() -> (ok, witness)`` and record it under the next id."""
        self.n += 1
        cid = f"{self.prefix}.{self.n:03d}"
        t0 = time.perf_counter()
        ok, witness = fn()
        self.report.add(cid, anchor, ok, witness, time.perf_counter() - t0)


# -- suites ------------------------------------------------------------------


def _gradations(run, l, height):
    from .algebra import NotHomogeneous

    def grid():
        pts = [from_alpha_coords(c) for c in itertools.product(range(3), repeat=l)]
        bad = [(a, b) for a in pts for b in pts if not sign_identity(a, b)[0]]
        return not bad, f"{len(pts) ** 2} pairs" if not bad else f"first failure {bad[0]}"

    run("sign identity (nu, eta nu') + (eta nu, nu') + (nu, nu') = |nu||nu'|", grid)

    alg = algebra(l)

    def bigrade():
        ok, fails = bigrade_check(alg, random.Random(1))
        return ok, "generators and 40 products" if ok else "; ".join(fails[:3])

    run("mu = delta + eta(nu) on generators and products", bigrade)

    def additivity():
        from .samples import random_monomial

        rng = random.Random(2)
        for _ in range(30):
            na, a = random_monomial(alg, rng)
            nb, b = random_monomial(alg, rng)
            p = a * b
            if p.is_zero():
                continue
            try:
                ok = (
                    p.nu() == a.nu() + b.nu()
                    and p.delta() == a.delta() + b.delta()
                    and p.mu() == a.mu() + b.mu()
                    and p.z2() == (a.z2() + b.z2()) % 2
                )
            except NotHomogeneous:
                return False, f"{na} * {nb} not homogeneous"
            if not ok:
                return False, f"{na} * {nb}"
        return True, "30 sampled products"

    run("gradings nu, delta, mu, Z2 are additive", additivity)


def _relations(run, l, height):
    alg = algebra(l)

    def rel():
        bad = [label for label, diff in alg.defining_relations() if not diff.is_zero()]
        return not bad, f"{len(alg.defining_relations())} relations" if not bad else bad[0]

    run("defining relations of the extended algebra vanish", rel)

    def assoc():
        from .samples import random_monomial

        rng = random.Random(3)
        for _ in range(15):
            _, a = random_monomial(alg, rng, 3)
            _, b = random_monomial(alg, rng, 3)
            _, c = random_monomial(alg, rng, 3)
            if (a * b) * c != a * (b * c):
                return False, f"{a} | {b} | {c}"
        return True, "15 sampled triples"

    run("multiplication is associative", assoc)


def _hopf(run, l, height):
    from .hopf import bigrading_check, hopf_axiom_check, super_axiom_check
    from .samples import generators, random_monomial
    from .zhang import psi

    alg = algebra(l)
    gens = generators(alg)

    def ordinary():
        for name, g in gens:
            ok, why = hopf_axiom_check(g)
            if not ok:
                return False, f"{name}: {why}"
        for (na, a), (nb, b) in itertools.product(gens[: 4 * l], repeat=2):
            ok, why = hopf_axiom_check(a, b)
            if not ok:
                return False, f"{na}*{nb}: {why}"
        return True, f"{len(gens)} generators and their pairs"

    run("Hopf axioms for (Delta, S, eps)", ordinary)

    def superax():
        for name, g in gens:
            ok, why = super_axiom_check(psi(g))
            if not ok:
                return False, f"psi({name}): {why}"
        for (na, a), (nb, b) in itertools.product(gens[: 4 * l], repeat=2):
            ok, why = super_axiom_check(psi(a), psi(b))
            if not ok:
                return False, f"psi({na})*psi({nb}): {why}"
        return True, f"{len(gens)} generators and their pairs"

    run("super Hopf axioms with Koszul-signed multiplicativity", superax)

    def bigr():
        rng = random.Random(4)
        items = [(n, g) for n, g in gens] + [random_monomial(alg, rng, 2) for _ in range(10)]
        bad = [n for n, g in items if not bigrading_check(g)]
        return not bad, f"{len(items)} elements" if not bad else bad[0]

    run("Delta and S respect the (nu, delta) bigrading", bigr)


def _zhang(run, l, height):
    from .algebra import NormalWord
    from .samples import random_monomial
    from .zhang import psi, psi_sign_check, verify_bar_relations

    alg = algebra(l)

    def involution():
        h = min(height, 4)
        std = alg.serre.standard_words_up_to(h)
        n = 0
        for f in std:
            for e in std:
                if len(f) + len(e) > h:
                    continue
                for bits in itertools.product((0, 1), repeat=l):
                    x = alg.element({NormalWord(f, alg.zero_weight, bits, e): ONE})
                    n += 1
                    if psi(psi(x)) != x:
                        return False, str(x)
        return True, f"{n} words up to height {h}"

    run("psi is an involution on normal words", involution)

    def signs():
        rng = random.Random(5)
        for _ in range(50):
            na, a = random_monomial(alg, rng)
            nb, b = random_monomial(alg, rng)
            if not psi_sign_check(a, b)[0]:
                return False, f"{na}, {nb}"
        return True, "50 sampled pairs"

    run("psi(ab) = (-1)^(nu(a), mu(b)) psi(a) psi(b)", signs)

    def bar():
        res = verify_bar_relations(alg)
        bad = [label for label, ok in res if not ok]
        return not bad, f"{len(res)} relations" if not bad else bad[0]

    run("image of psi satisfies the U_(-q)(osp(1,2l)) relations", bar)


def _adjoint(run, l, height):
    from .adjoint import ad_orbit_span, bar_locally_finite_decomposition, transfer_check, twisted_vanishing_probe
    from .hc_center import solve_central
    from .samples import generators

    alg = algebra(l)
    gens = generators(alg)

    def transfer():
        n = 0
        for twist in ((0,) * l, (1,) * l):
            for (na, a), (nx, x) in itertools.product(gens, repeat=2):
                n += 1
                holds, _, _, t = transfer_check(a, x, twist)
                if not holds:
                    return False, f"a={na} x={nx} twist={list(twist)} t={t}"
        return True, f"{n} generator pairs"

    run("psi(ad_lam a (x)) = (-1)^t sad_(lam+delta(x)) psi(a) psi(x)", transfer)

    wl = tuple(fundamental(l, l))

    def orbit():
        span = ad_orbit_span(alg, wl)
        z = solve_central(alg, wl).element
        return span.contains(z), f"{len(span.basis)} basis elements, stabilized={span.stabilized}"

    run("ad-orbit of K_(-w_l) contains the central element", orbit)

    def probe():
        h = min(height, 3 if l == 1 else 2)
        ok, idx, size = twisted_vanishing_probe(alg, (1,) + (0,) * (l - 1), h)
        return ok, f"F_{idx}, {size} words up to height {h}"

    run("no twisted lowest-weight vector F_i a + a F_i = 0", probe)

    def split():
        # lambda = w_l lies in P_g, lambda = w_l / 2 does not
        even = bar_locally_finite_decomposition(alg, wl, 2)
        odd = bar_locally_finite_decomposition(alg, tuple(t // 2 for t in wl), 2)
        ok = even.closed and odd.closed and not even.odd_part and not odd.even_part
        wit = f"P_g seed: {len(even.even_part)} elements; w_l/2 seed: {len(odd.odd_part)} elements"
        return ok, wit

    run("delta-grade split of ad-orbits is sad / sad' stable after psi", split)


def _center(run, l, height):
    from .hc_center import even_torus_invariant_check, hc_formula_check, solve_anticentral, solve_central, upsilon

    alg = algebra(l)
    wl = tuple(fundamental(l, l))

    def casimir():
        sol = solve_central(alg, wl)
        return sol.residuals_zero, f"{sol.candidates} candidates, {len(sol.element.terms)} terms"

    run("z_(w_l) commutes with every generator", casimir)

    def formula():
        ok, got, want = hc_formula_check(alg)
        return ok, str(got)

    run("HC projection of z_(w_l) equals the product over beta_i", formula)

    def anti():
        s = solve_anticentral(alg)
        return s.ok, f"anticommutes odd={s.anticommutes_odd}, commutes even={s.commutes_even}"

    run("xi z_(w_l) anticommutes with odd and commutes with even generators", anti)

    def invariant():
        seeds = [wl]
        if l == 1:
            seeds.append((4,))
        for s in seeds:
            x = upsilon(solve_central(alg, s).element)
            if not even_torus_invariant_check(x, alg.roots):
                return False, f"seed {list(s)}"
        return True, f"{len(seeds)} central elements"

    run("HC projections are dot-invariant and even", invariant)


def _verma(run, l, height):
    from .hc_center import Character
    from .samples import random_character
    from .verma import (
        VermaModule,
        annihilation_criterion,
        degenerate_annihilation_check,
        degenerate_characters,
        odd_nondegeneracy_probe,
        predicted_spectrum,
        scasimir_spectrum,
    )

    alg = algebra(l)
    h = min(height, 6 if l == 1 else 3 if l == 2 else 2)

    def spectra():
        rng = random.Random(6)
        for k in range(5):
            chi = random_character(l, rng)
            m = VermaModule(alg, chi, h, k % 2)
            if scasimir_spectrum(m) != predicted_spectrum(m):
                return False, str(chi)
        return True, f"5 characters, height {h}"

    run("xi z_(w_l) acts by +-Lambda(HC(z_(w_l))) on the graded components", spectra)

    def coherence():
        chars = [Character(v) for v in degenerate_characters(alg.roots)]
        chars += [Character.linear(tuple(range(l, 0, -1)))]
        for chi in chars:
            m = VermaModule(alg, chi, h)
            zero = scasimir_spectrum(m) == (0, 0)
            if annihilation_criterion(chi, alg.roots) == zero:
                return False, str(chi)
        return True, f"{len(chars)} characters"

    run("annihilation criterion fails exactly when the spectrum is (0, 0)", coherence)

    def degenerate():
        for vals in degenerate_characters(alg.roots):
            for th in ((0,) * l, (1,) * l):
                if not degenerate_annihilation_check(VermaModule(alg, Character(vals, th), h)):
                    return False, f"{[str(v) for v in vals]} theta={list(th)}"
        return True, f"both degenerate values, both theta, height {h}"

    run("xi z_(w_l) kills M(Lambda, theta) for degenerate Lambda", degenerate)

    def odd():
        m = VermaModule(alg, Character((2,) * l), min(h, 3))
        p = odd_nondegeneracy_probe(m)
        return p.ok, f"witness={p.witness_ok}, components={p.per_component}"

    run("E_l K_(-w_l) acts nonzero on both graded components", odd)

    if l == 1:

        def singular():
            for n in (1, 2, 3):
                m = VermaModule(alg, Character.linear((n - 1,)), max(h, n))
                found = m.all_singular_vectors()
                want = alg.roots.dot(alg.roots.simple_reflections()[0], Weight((n - 1,)))
                if len(found) != 1 or tuple(found[0].character.values) != tuple(Character.linear(want).values):
                    return False, f"n={n}: {len(found)} singular vectors"
            return True, "n = 1, 2, 3"

        run("one singular line at the dot-reflected weight", singular)


_SUITE_FUNCS = {
    "gradations": _gradations,
    "relations": _relations,
    "hopf": _hopf,
    "zhang": _zhang,
    "adjoint": _adjoint,
    "center": _center,
    "verma": _verma,
}


def run_suite(name: str, rank: int, height: int = 4) -> Report:
    """Run one suite (or ``all``) and return its report.

    MemoBudgetExceeded propagates after being noted in ``report.aborted``
    so callers can still print the partial report.
    """
    from .algebra import MemoBudgetExceeded

    if name != "all" and name not in _SUITE_FUNCS:
        raise ValueError(f"unknown suite {name!r}")
    RootData(rank)  # validates the rank
    report = Report(name, rank, height)
    names = SUITES if name == "all" else (name,)
    try:
        for s in names:
            _SUITE_FUNCS[s](_Runner(report, s), rank, height)
    except MemoBudgetExceeded as exc:
        report.aborted = str(exc)
        exc.report = report
        raise
    return report
