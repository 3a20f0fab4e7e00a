"""Command-line entry point ``ospq``.

Exit codes: 0 success, 1 a check failed, 2 usage or input error,
3 the memoization budget (``OSPQ_MEMO_BUDGET``) was exhausted.
"""

from __future__ import annotations

import argparse
import sys

from .algebra import MemoBudgetExceeded, NotHomogeneous, algebra
from .hc_center import Character, SolverError
from .parsing import ParseError, parse_scalar
from .weights import LatticeError

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(Exception):
    pass


# -- argument helpers ------------------------------------------------------------


def _int_list(text: str) -> tuple[int, ...]:
    body = text.strip().strip("[]()")
    if not body.strip():
        return ()
    try:
        return tuple(int(x) for x in body.split(","))
    except ValueError:
        raise UsageError(f"expected a comma-separated integer list, got {text!r}") from None


def _sized(text: str | None, l: int, what: str, default=0) -> tuple[int, ...]:
    if text is None:
        return (default,) * l
    vals = _int_list(text)
    if len(vals) != l:
        raise UsageError(f"{what} needs {l} entries, got {len(vals)}")
    return vals


def _character(args, l: int) -> Character:
    if args.character is None:
        raise UsageError("--character is required")
    parts = [p for p in args.character.split(",") if p.strip()]
    if len(parts) != l:
        raise UsageError(f"--character needs {l} values, got {len(parts)}")
    theta = _sized(args.theta, l, "--theta")
    try:
        return Character(tuple(parse_scalar(p) for p in parts), theta)
    except ValueError as exc:
        if isinstance(exc, ParseError):
            raise
        raise UsageError(str(exc)) from None


def _height(args, default):
    return default if args.height is None else args.height


def _alg(args):
    return algebra(args.rank, args.rho)


def _parse(args, text: str, bar: bool = True):
    """Parse with both the plain atoms and the lowercase bar generators."""
    from .zhang import parse as bar_parse

    alg = _alg(args)
    return bar_parse(alg, text) if bar else alg.parse(text)


# -- commands ------------------------------------------------------------------


def cmd_normal_form(args, out):
    print(_parse(args, args.expr), file=out)
    return EXIT_OK


def cmd_psi(args, out):
    from .zhang import in_bar, psi

    x = _parse(args, args.expr)
    y = psi(x)
    print(y, file=out)
    if args.membership:
        print(f"in image of psi: {in_bar(x)}", file=out)
    return EXIT_OK


def cmd_verify(args, out):
    from .report import run_suite

    if args.rho != "half":
        raise UsageError("verification suites use the half-sum rho")
    if args.suite == "bar-relations":
        from .zhang import verify_bar_relations

        res = verify_bar_relations(_alg(args))
        for k, (label, ok) in enumerate(res, 1):
            print(f"bar.{k:03d}\t{label}\t{'pass' if ok else 'fail'}\t", file=out)
        return EXIT_OK if all(ok for _, ok in res) else EXIT_FAIL
    try:
        report = run_suite(args.suite, args.rank, _height(args, 4))
    except MemoBudgetExceeded as exc:
        rep = getattr(exc, "report", None)
        if rep is not None:
            out.write(rep.to_nested(args.timing) if args.report == "nested" else rep.to_tsv(args.timing))
        raise
    out.write(report.to_nested(args.timing) if args.report == "nested" else report.to_tsv(args.timing))
    return EXIT_OK if report.failures == 0 else EXIT_FAIL


def cmd_ad(args, out):
    from .adjoint import ad, sad

    a, x = _parse(args, args.a), _parse(args, args.x)
    twist = _sized(args.twist, args.rank, "--twist") if args.twist else None
    if args.command == "ad":
        y = ad(a, x, twist)
    else:
        y = sad(a, x, twist, bar_only=True)
    print(y, file=out)
    return EXIT_OK


def cmd_orbit(args, out):
    from .adjoint import ad_orbit_span

    seed = _sized(args.seed, args.rank, "--seed")
    span = ad_orbit_span(_alg(args), seed, args.height)
    print(f"# height {span.height}, {len(span.basis)} elements, stabilized={span.stabilized}", file=out)
    for b in span.basis:
        print(b, file=out)
    return EXIT_OK


def cmd_casimir(args, out):
    from .hc_center import solve_central, upsilon

    two = _sized(args.two_lambda, args.rank, "--two-lambda")
    sol = solve_central(_alg(args), two, args.height, args.method)
    print(f"# {sol.method}: {sol.candidates} candidates, residual zero={sol.residuals_zero}", file=out)
    print(f"z = {sol.element}", file=out)
    print(f"hc(z) = {upsilon(sol.element)}", file=out)
    return EXIT_OK if sol.residuals_zero else EXIT_FAIL


def cmd_scasimir(args, out):
    from .hc_center import solve_anticentral

    s = solve_anticentral(_alg(args), args.height)
    print(f"xi z = {s.element}", file=out)
    print(f"anticommutes with odd generators: {s.anticommutes_odd}", file=out)
    print(f"commutes with even generators: {s.commutes_even}", file=out)
    return EXIT_OK if s.ok else EXIT_FAIL


def cmd_hc(args, out):
    from .hc_center import upsilon

    print(upsilon(_parse(args, args.expr)), file=out)
    return EXIT_OK


def cmd_eval(args, out):
    from .hc_center import evaluate

    chi = _character(args, args.rank)
    print(evaluate(_parse(args, args.expr), chi), file=out)
    return EXIT_OK


def cmd_verma(args, out):
    from . import verma as vm

    alg = _alg(args)
    chi = _character(args, args.rank)
    m = vm.VermaModule(alg, chi, _height(args, 4), args.grade_offset)
    sub = args.verma_command
    if sub == "act":
        vec = m.highest()
        if args.vector:
            res = m.act(_parse(args, args.vector), vec)
            vec = res.vector
        res = m.act(_parse(args, args.expr), vec)
        print(m.format_vector(res.vector), file=out)
        if res.overflow:
            print("# overflow: part of the result left the height window", file=out)
        return EXIT_OK
    if sub == "singular":
        found = m.singular_vectors(_sized(args.offset, args.rank, "--offset")) if args.offset else m.all_singular_vectors()
        for s in found:
            print(f"{list(s.offset)}\t{m.format_vector(s.vector)}\t{s.character}", file=out)
        if not found:
            print("# no singular vectors in the window", file=out)
        return EXIT_OK
    if sub == "scasimir-spectrum":
        even, odd = vm.scasimir_spectrum(m)
        print(f"grade 0: {even}", file=out)
        print(f"grade 1: {odd}", file=out)
        return EXIT_OK
    if sub == "criterion":
        print(str(vm.annihilation_criterion(chi, alg.roots)).lower(), file=out)
        return EXIT_OK
    if sub == "annihilation-check":
        try:
            ok = vm.degenerate_annihilation_check(m)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        print("pass" if ok else "fail", file=out)
        return EXIT_OK if ok else EXIT_FAIL
    raise UsageError(f"unknown verma command {sub!r}")


# -- parser --------------------------------------------------------------------


def _common(suppress: bool) -> argparse.ArgumentParser:
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--rank", type=int, default=d(1), help="rank l of B_l (default 1)")
    p.add_argument("--height", type=int, default=d(None), help="height window (default 4; solvers pick their own)")
    p.add_argument("--rho", choices=("half", "literal"), default=d("half"), help="rho convention")
    p.add_argument("--report", choices=("tsv", "nested"), default=d("tsv"), help="report format")
    p.add_argument("--timing", action="store_true", default=d(False), help="add wall time to reports")
    return p


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ospq", description=__doc__.splitlines()[0], parents=[_common(False)])
    common = _common(True)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, help_):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.set_defaults(func=fn)
        return p

    p = add("normal-form", cmd_normal_form, "print the normal form of an expression")
    p.add_argument("expr")
    p = add("psi", cmd_psi, "apply the Zhang transformation")
    p.add_argument("expr")
    p.add_argument("--membership", action="store_true", help="also report whether expr lies in the image")
    p = add("verify", cmd_verify, "run a verification suite")
    p.add_argument("suite", choices=("all", "gradations", "relations", "hopf", "zhang", "adjoint", "center", "verma", "bar-relations"))
    for name in ("ad", "sad"):
        p = add(name, cmd_ad, f"{name}_twist(a)(x)")
        p.add_argument("a")
        p.add_argument("x")
        p.add_argument("--twist", help="Gamma bits, e.g. 1,0")
    p = add("orbit", cmd_orbit, "truncated ad-orbit of K_(-2 lambda)")
    p.add_argument("--seed", required=True, help="2 lambda as twice-coordinates")
    p = add("casimir", cmd_casimir, "central element z_(2 lambda)")
    p.add_argument("--two-lambda", required=True)
    p.add_argument("--method", choices=("orbit", "window"), default="orbit")
    p = add("scasimir", cmd_scasimir, "the anticentral element xi z_(w_l)")
    p = add("hc", cmd_hc, "Harish-Chandra projection")
    p.add_argument("expr")
    p = add("eval", cmd_eval, "evaluate the torus part at a character")
    p.add_argument("expr")
    p.add_argument("--character", required=True)
    p.add_argument("--theta")
    p = add("verma", cmd_verma, "truncated Verma modules")
    p.add_argument("verma_command", choices=("act", "singular", "scasimir-spectrum", "criterion", "annihilation-check"))
    p.add_argument("expr", nargs="?", help="element to apply (act)")
    p.add_argument("--character", required=True, help="values Lambda(K_beta_i), comma separated")
    p.add_argument("--theta")
    p.add_argument("--grade-offset", type=int, default=0)
    p.add_argument("--vector", help="element applied to v before expr (act)")
    p.add_argument("--offset", help="weight offset for singular vectors")
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.rank < 1:
            raise UsageError("--rank must be at least 1")
        if args.command == "verma" and args.verma_command == "act" and not args.expr:
            raise UsageError("verma act needs an element")
        return args.func(args, out)
    except MemoBudgetExceeded as exc:
        print(f"ospq: resource limit: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (UsageError, ParseError, LatticeError, NotHomogeneous) as exc:
        print(f"ospq: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SolverError as exc:
        print(f"ospq: solver {exc.kind}: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except ValueError as exc:
        print(f"ospq: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
