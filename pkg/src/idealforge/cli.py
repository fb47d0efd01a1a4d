"""Command-line front end.

    idealforge split --poly "x^4+x^3+x^2+x+1" --q 11
    idealforge thm2-search --p 3 --q 7 --s 2 --trials 100 --seed 1

Exit status: 0 success, 1 rejected input, 2 internal invariant violation.
JSON mode (the default) writes exactly one document to stdout, including
on errors.
"""

from __future__ import annotations

import argparse
import os
import sys
from typing import Optional, Sequence

from . import report
from .errors import DegenerateField, IdealForgeError, ParseError
from .fltcase import (
    cyclotomic_field,
    lemma_trace,
    norm_bound_probe,
    norm_linear,
    product_identity,
    pth_root_count,
    pth_roots,
    ramification_check,
    ROOT_SCAN_LIMIT,
)
from .idealkit import (
    DEFAULT_VALUATION_CAP,
    ideal_power_module,
    divides_prime,
    matrix_criterion,
    member_ideal_power,
    residue_criterion,
    split_prime,
    valuation,
)
from .exactarith import is_prime, member_lattice
from .numfield import degeneracy, make_field, norm
from .polyring import IntPoly, ModPoly
from .thmcheck import (
    COUNTEREXAMPLE,
    DEFAULT_BOUND,
    DEFAULT_TRIALS,
    quotient_step_probe,
    recheck_certificate,
    run_search,
    make_certificate,
    verify_instance,
)


class UsageError(IdealForgeError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _default_seed() -> int:
    raw = os.environ.get("IDEALFORGE_SEED")
    if raw is None:
        return 0
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"IDEALFORGE_SEED must be an integer, got {raw!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="idealforge", description="Prime ideals, divisibility and lattice oracles in Z[θ].")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p):
        p.add_argument("--format", choices=("json", "text"), default="json")

    def field_args(p):
        p.add_argument("--poly", help="monic integer polynomial, e.g. 'x^2+x+1'")
        p.add_argument("--p", type=int, help="odd prime: use the cyclotomic field x^(p-1)+...+1")

    def prime_args(p, phi=True):
        p.add_argument("--q", type=int, required=True)
        p.add_argument("--a", type=int, help="root a of f mod q: the prime (q, θ-a)")
        if phi:
            p.add_argument("--phi", help="irreducible factor of f mod q: the prime (q, φ(θ))")

    p = sub.add_parser("split", help="factor (q) into prime ideals")
    common(p); field_args(p)
    p.add_argument("--q", type=int, required=True)

    p = sub.add_parser("divides", help="does a prime ideal divide an element")
    common(p); field_args(p); prime_args(p)
    p.add_argument("--element", required=True)

    p = sub.add_parser("member", help="membership in a prime ideal power")
    common(p); field_args(p); prime_args(p)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--element", required=True)

    p = sub.add_parser("valuation", help="exponent of a prime ideal in an element")
    common(p); field_args(p); prime_args(p)
    p.add_argument("--element", required=True)
    p.add_argument("--cap", type=int, default=DEFAULT_VALUATION_CAP)

    p = sub.add_parser("thm2-check", help="congruence c(a) = 0 mod q^s versus lattice membership")
    common(p); field_args(p); prime_args(p, phi=False)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--element", required=True)

    p = sub.add_parser("thm2-search", help="seeded counterexample search")
    common(p); field_args(p); prime_args(p, phi=False)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--trials", type=int, default=DEFAULT_TRIALS)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--bound", type=int, default=DEFAULT_BOUND)
    p.add_argument("--workers", type=int, default=1)

    p = sub.add_parser("cyclo-norms", help="norm identities in Z[ζ]")
    common(p)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--x", type=int)
    p.add_argument("--y", type=int)
    p.add_argument("--q", type=int, help="also probe N(ζ-a) at the roots of f mod q")
    p.add_argument("--a", type=int, help="restrict the probe to this root")

    p = sub.add_parser("ramify", help="check (p) = unit * (1-ζ)^(p-1)")
    common(p)
    p.add_argument("--p", type=int, required=True)

    p = sub.add_parser("lemma-trace", help="step-by-step trace for concrete (p, q, x, y, z)")
    common(p)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--x", type=int, required=True)
    p.add_argument("--y", type=int, required=True)
    p.add_argument("--z", type=int, required=True)
    p.add_argument("--assume-p-less-z", action="store_true")

    p = sub.add_parser("roots-count", help="number of solutions of x^p = 1 mod q")
    common(p)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    return parser


def _field(args):
    if (args.poly is None) == (args.p is None):
        raise UsageError("give exactly one of --poly and --p")
    if args.p is not None:
        ctx = cyclotomic_field(args.p)
        return ctx.field, report.field_dict(ctx.field, args.p)
    f = IntPoly.parse(args.poly)
    if f.degree >= 1 and f.is_monic():
        reason = degeneracy(f)
        if reason is not None:
            raise DegenerateField(f"{f} does not define a number field: {reason}")
    F = make_field(f)
    return F, report.field_dict(F)


def _check_q(q: int) -> None:
    if not is_prime(q):
        raise UsageError(f"--q {q} is not prime")


def _prime(F, args):
    _check_q(args.q)
    rep = split_prime(F, args.q)
    phi = getattr(args, "phi", None)
    if args.a is not None and phi is not None:
        raise UsageError("give at most one of --a and --phi")
    if args.a is not None:
        try:
            return rep.prime_at(args.a)
        except ValueError as exc:
            raise UsageError(str(exc))
    if phi is not None:
        target = ModPoly.parse(phi, args.q).monic()
        for pr in rep.primes:
            if pr.phi == target:
                return pr
        raise UsageError(f"{target} is not an irreducible factor of f mod {args.q}")
    if len(rep.primes) == 1:
        return rep.primes[0]
    listing = ", ".join(str(pr) for pr in rep.primes)
    raise UsageError(f"several primes lie above {args.q} ({listing}); choose one with --a or --phi")


def _element(F, text):
    try:
        return F.parse_element(text)
    except ParseError as exc:
        raise UsageError(f"bad --element: {exc}")


def cmd_split(args):
    F, fd = _field(args)
    _check_q(args.q)
    return {"field": fd, **report.split_dict(split_prime(F, args.q))}


def cmd_divides(args):
    F, fd = _field(args)
    pi = _prime(F, args)
    alpha = _element(F, args.element)
    return {
        "field": fd,
        "prime": report.prime_dict(pi),
        "element": report.element_list(alpha),
        "divides": divides_prime(pi, alpha),
        "residue_criterion": residue_criterion(pi, alpha) if pi.f_deg == 1 else None,
        "matrix_criterion": matrix_criterion(pi, alpha),
        "oracle": member_ideal_power(ideal_power_module(pi, 1), alpha),
    }


def cmd_member(args):
    F, fd = _field(args)
    pi = _prime(F, args)
    if args.s < 1:
        raise UsageError("--s must be >= 1")
    alpha = _element(F, args.element)
    M = ideal_power_module(pi, args.s)
    coeffs = member_lattice(M.basis, alpha.coords)
    return {
        "field": fd,
        "prime": report.prime_dict(pi),
        "element": report.element_list(alpha),
        "module": report.module_dict(M),
        "member": coeffs is not None,
        "coefficients": list(coeffs) if coeffs is not None else None,
    }


def cmd_valuation(args):
    F, fd = _field(args)
    pi = _prime(F, args)
    alpha = _element(F, args.element)
    if args.cap < 1:
        raise UsageError("--cap must be >= 1")
    v = valuation(pi, alpha, args.cap)
    return {
        "field": fd,
        "prime": report.prime_dict(pi),
        "element": report.element_list(alpha),
        "cap": args.cap,
        "valuation": v,
        "saturated": v == args.cap,
    }


def cmd_thm2_check(args):
    F, fd = _field(args)
    pi = _prime(F, args)
    alpha = _element(F, args.element)
    if args.s < 1:
        raise UsageError("--s must be >= 1")
    v = verify_instance(F, pi, args.s, alpha)
    cert = None
    if v.classification == COUNTEREXAMPLE:
        cert = make_certificate(v, ideal_power_module(pi, args.s), trial=0).to_dict()
    return {
        "field": fd,
        "prime": report.prime_dict(pi),
        **report.verdict_dict(v),
        "quotient_step": quotient_step_probe(pi, args.s, alpha) if args.s >= 2 else None,
        "certificate": cert,
    }


def cmd_thm2_search(args):
    F, fd = _field(args)
    _check_q(args.q)
    if args.a is None:
        rep = split_prime(F, args.q)
        linear = [pr for pr in rep.primes if pr.f_deg == 1]
        if not linear:
            raise UsageError(f"no degree-1 prime lies above {args.q}")
        pi = linear[0]
    else:
        pi = _prime(F, args)
    seed = args.seed if args.seed is not None else _default_seed()
    if args.bound < 1 or args.trials < 1 or args.workers < 1:
        raise UsageError("--trials, --bound and --workers must be >= 1")
    outcome = run_search(F, pi, args.s, args.trials, seed, args.bound, args.workers)
    certs = [c.to_dict() for c in outcome.certificates]
    return {
        "field": fd,
        "prime": report.prime_dict(pi),
        "s": args.s,
        "trials": args.trials,
        "seed": seed,
        "bound": args.bound,
        "counts": outcome.counts,
        "certificates": certs,
        "all_recheck": all(recheck_certificate(c) for c in certs),
    }


def cmd_cyclo_norms(args):
    ctx = cyclotomic_field(args.p)
    F = ctx.field
    out = {
        "field": report.field_dict(F, args.p),
        "p": args.p,
        "norm_one_minus_zeta": norm(F.one - ctx.zeta),
        "norm_zeta": norm(ctx.zeta),
    }
    if (args.x is None) != (args.y is None):
        raise UsageError("give both --x and --y")
    if args.x is not None:
        out["linear"] = {
            "x": args.x,
            "y": args.y,
            "product_identity": product_identity(ctx, args.x, args.y),
            "x_pow_p_plus_y_pow_p": args.x ** args.p + args.y ** args.p,
            "norm_linear": norm_linear(ctx, args.x, args.y),
        }
    if args.q is not None:
        _check_q(args.q)
        if args.a is not None:
            roots = [args.a]
        else:
            roots = [pr.root for pr in split_prime(F, args.q).primes if pr.f_deg == 1]
        out["norm_bound_probes"] = [norm_bound_probe(ctx, args.q, a) for a in roots]
    return out


def cmd_ramify(args):
    return ramification_check(cyclotomic_field(args.p))


def cmd_lemma_trace(args):
    ctx = cyclotomic_field(args.p)
    _check_q(args.q)
    return lemma_trace(ctx, args.q, args.x, args.y, args.z, args.assume_p_less_z).to_dict()


def cmd_roots_count(args):
    cyclotomic_field(args.p)
    count = pth_root_count(args.p, args.q)
    return {
        "p": args.p,
        "q": args.q,
        "count": count,
        "roots": pth_roots(args.p, args.q) if args.q < ROOT_SCAN_LIMIT else None,
        "nontrivial_root_exists": count > 1,
        "q_minus_1_divisible_by_p": (args.q - 1) % args.p == 0,
    }


COMMANDS = {
    "split": cmd_split,
    "divides": cmd_divides,
    "member": cmd_member,
    "valuation": cmd_valuation,
    "thm2-check": cmd_thm2_check,
    "thm2-search": cmd_thm2_search,
    "cyclo-norms": cmd_cyclo_norms,
    "ramify": cmd_ramify,
    "lemma-trace": cmd_lemma_trace,
    "roots-count": cmd_roots_count,
}


def _emit(doc: dict, fmt: str, out) -> None:
    if fmt == "text":
        out.write("\n".join(report.to_text(doc)) + "\n")
    else:
        out.write(report.dumps(doc) + "\n")


def _requested_format(argv: Sequence[str]) -> str:
    # known before parsing so that parse errors honour --format text
    for i, tok in enumerate(argv):
        if tok == "--format=text" or (tok == "--format" and argv[i + 1:i + 2] == ["text"]):
            return "text"
    return "json"


def run(argv: Optional[Sequence[str]] = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    argv = list(sys.argv[1:] if argv is None else argv)
    fmt = _requested_format(argv)
    try:
        args = build_parser().parse_args(argv)
        body = COMMANDS[args.command](args)
        _emit(report.document(args.command, body), fmt, out)
        return 0
    except (IdealForgeError, ValueError) as exc:
        code, kind, message = 1, type(exc).__name__, str(exc)
    except AssertionError as exc:
        code, kind, message = 2, type(exc).__name__, str(exc)
    err.write(f"idealforge: {kind}: {message}\n")
    if fmt == "json":
        _emit(report.document("error", {"error": kind, "message": message, "exit_status": code}), fmt, out)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
