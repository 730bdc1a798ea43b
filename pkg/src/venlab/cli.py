"""Command-line entry point: ``venlab <verb> [args] [--json PATH]``.

Exit status is 0 when every certificate verifies, 1 when any check fails and
2 for usage or parse errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import List, Optional, Sequence

from .arith import VenlabError, format_coeff, render, to_coeff
from .certificate import Certificate
from .derivations import DEFAULT_MAX_ITER
from .parser import ParseError, parse_expr
from .stable import QSpec, verify_stable
from .suites import SuiteConfig, run_all
from . import venereau as ven

EXIT_OK, EXIT_FAILED, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--json", metavar="PATH", help="write the certificate array as JSON")
    common.add_argument("--max-iter", type=_positive, default=DEFAULT_MAX_ITER,
                        help="bound on derivation powers when exponentiating")
    common.add_argument("--seed", type=int, default=0, help="seed for random-point checks")

    top = _Parser(prog="venlab", description="Exact checks for Venereau-type polynomials.")
    verbs = top.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    verbs.add_parser("verify-all", parents=[common], help="run every shipped certificate")
    for name in ("theta", "phi", "alpha"):
        p = verbs.add_parser(name, parents=[common], help=f"certify the {name} family at n")
        p.add_argument("n", type=_positive)
    p = verbs.add_parser("check-coordinate", parents=[common],
                         help="y + x(x^2 Q1 + x v Q2) via the explicit automorphism")
    p.add_argument("--q1", default="0", help="Q1 in x, v, w")
    p.add_argument("--q2", default="0", help="Q2 in v^2, w")
    p = verbs.add_parser("check-stable", parents=[common], help="stable construction for y + xQ")
    p.add_argument("--q", required=True, help="Q in x, v, w")
    p.add_argument("--direct-jacobian", action="store_true",
                   help="also expand the full 4x4 Jacobian (slow beyond small Q)")
    p = verbs.add_parser("hyperplane", parents=[common], help="zero-frame check for y + x Q0")
    p.add_argument("--q0", required=True, help="Q0 in x, v0, w0")
    p = verbs.add_parser("cusp", parents=[common], help="R[c]/(P) hyperplane parts (1) and (2)")
    p.add_argument("--q", required=True, help="Q in x, v, w")
    p = verbs.add_parser("lemma-ideal", parents=[common], help="ideal-membership oracle for h(Y, V, W)")
    p.add_argument("h")
    p = verbs.add_parser("eval", parents=[common], help="evaluate an expression at a point")
    p.add_argument("expr")
    p.add_argument("--at", action="append", default=[], metavar="NAME=VALUE",
                   help="assignment, repeatable or comma separated")
    p = verbs.add_parser("print", parents=[common], help="expand and print an expression")
    p.add_argument("expr")
    p.add_argument("--presentation", action="store_true",
                   help="read v, w as abstract generators instead of expanding them")
    return top


def _parse_point(items: Sequence[str]):
    point = {}
    for item in items:
        for part in item.split(","):
            if not part.strip():
                continue
            if "=" not in part:
                raise UsageError(f"expected NAME=VALUE, got {part!r}")
            name, value = part.split("=", 1)
            try:
                point[name.strip()] = to_coeff(value.strip())
            except (ValueError, ZeroDivisionError) as exc:
                raise UsageError(f"bad value for {name.strip()}: {exc}")
    return point


def _certificates(args, out) -> Optional[List[Certificate]]:
    verb = args.verb
    if verb == "verify-all":
        cfg = SuiteConfig(max_iter=args.max_iter, seed=args.seed)
        return run_all(cfg, progress=lambda c: print(c.summary(), file=out, flush=True))
    if verb == "theta":
        return [ven.verify_theta(args.n, args.max_iter)]
    if verb == "phi":
        return [ven.verify_phi(args.n, args.max_iter)]
    if verb == "alpha":
        return [ven.verify_alpha_phi(args.n, args.max_iter, args.seed),
                ven.verify_fg_equivalence(args.n, args.max_iter)]
    if verb == "check-coordinate":
        q1 = parse_expr(args.q1, "presentation")
        q2 = parse_expr(args.q2, "presentation")
        return [ven.coordinate_from_Q(q1, q2)[1]]
    if verb == "check-stable":
        q = QSpec.from_poly(parse_expr(args.q, "presentation"))
        return [verify_stable(q, direct_jacobian=args.direct_jacobian)]
    if verb == "hyperplane":
        return [ven.hyperplane_check(parse_expr(args.q0, "presentation"), args.max_iter)]
    if verb == "cusp":
        return [ven.verify_cusp(parse_expr(args.q, "presentation"), args.max_iter)]
    if verb == "lemma-ideal":
        flags, cert = ven.lemma_ideal_oracle(parse_expr(args.h, "presentation"))
        print(f"x | h: {flags[0]}  x^2 | h: {flags[1]}  (YW + V^2) | h: {flags[2]}", file=out)
        return [cert]
    if verb == "eval":
        value = parse_expr(args.expr).eval(_parse_point(args.at))
        print(format_coeff(value), file=out)
        return None
    if verb == "print":
        print(render(parse_expr(args.expr, "presentation" if args.presentation else "ring")), file=out)
        return None
    raise UsageError(f"unknown verb {verb}")


def run(argv: Sequence[str], out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(list(argv))
    except UsageError as exc:
        print(f"venlab: {exc}", file=err)
        return EXIT_USAGE
    except SystemExit as exc:      # --help
        return EXIT_OK if not exc.code else EXIT_USAGE
    try:
        certs = _certificates(args, out)
    except UsageError as exc:
        print(f"venlab: {exc}", file=err)
        return EXIT_USAGE
    except ParseError as exc:
        print(f"venlab: parse error: {exc}", file=err)
        return EXIT_USAGE
    except (VenlabError, ValueError, ZeroDivisionError, KeyError) as exc:
        print(f"venlab: {type(exc).__name__}: {exc}", file=err)
        return EXIT_USAGE
    if certs is None:
        return EXIT_OK
    if args.verb != "verify-all":
        for cert in certs:
            print(cert.summary(), file=out)
    for cert in certs:
        for check in cert.details:
            if not check.passed:
                print(f"  FAIL {check.name}" + (f": {check.witness}" if check.witness else ""), file=out)
    if args.json:
        with open(args.json, "w") as fh:
            json.dump([c.to_json() for c in certs], fh, indent=2)
            fh.write("\n")
    bad = sum(1 for c in certs if not c.verified)
    if args.verb == "verify-all":
        print(f"{len(certs) - bad}/{len(certs)} certificates verified", file=out)
    return EXIT_OK if bad == 0 else EXIT_FAILED


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
