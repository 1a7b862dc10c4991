"""Command-line front end.

Exit codes: 0 ok, 1 verification failure, 2 parse error, 3 domain error,
4 convergence or parameter error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass

import mpmath

from .errors import (
    CutoffOverflow,
    DivergentParameters,
    InexactError,
    NotDiagonal,
    NotPrime,
    ParseError,
    PrimeBoundTooSmall,
    QuadratureError,
)
from .fock import DEFAULT_BITS, DIVIDED, FockVec
from .pon import PonOp, apply_pon, geometric_annihilate_inverse, geometric_create
from .spectral import (
    DEFAULT_DEPTH,
    SpectralParams,
    ZetaResult,
    euler_factor,
    euler_product,
    mellin_quadrature,
    parse_exponent,
    zeta_p_quantum,
    zeta_quantum,
    zeta_via_states,
)
from .statmech import DirichletCharacter, absolute_derivation, gauss_sum, l_function
from .verify import run_suite
from .weyl import commutator, diagonal_poly, normal_order, parse

EXIT_OK, EXIT_VERIFY, EXIT_PARSE, EXIT_DOMAIN, EXIT_PARAM = 0, 1, 2, 3, 4

DOMAIN_ERRORS = (NotDiagonal, NotPrime, PrimeBoundTooSmall, CutoffOverflow, InexactError)
PARAM_ERRORS = (DivergentParameters, QuadratureError)


@dataclass(frozen=True)
class RunConfig:
    precision: int = DEFAULT_BITS
    cutoff: int = 64
    prime_bound: int | None = None
    depth: int = DEFAULT_DEPTH
    format: str = "json"
    tolerance: float = 1e-9

    def __post_init__(self):
        for name in ("precision", "cutoff", "depth"):
            if getattr(self, name) <= 0:
                raise DivergentParameters(f"--{name} must be positive")
        if self.prime_bound is not None and self.prime_bound <= 0:
            raise DivergentParameters("--prime-bound must be positive")
        if self.tolerance <= 0:
            raise DivergentParameters("--tolerance must be positive")
        if self.format not in ("json", "text"):
            raise ValueError(f"unknown format {self.format!r}")


def _default_precision() -> int:
    raw = os.environ.get("PONZETA_PRECISION")
    return int(raw) if raw else DEFAULT_BITS


def _global_options() -> argparse.ArgumentParser:
    # defaults are suppressed so a flag given before the subcommand is not
    # overwritten by the subparser's copy
    common = argparse.ArgumentParser(add_help=False, argument_default=argparse.SUPPRESS)
    common.add_argument("--precision", type=int, help="working precision in bits (default 128 or $PONZETA_PRECISION)")
    common.add_argument("--cutoff", "-N", type=int, help="Fock cutoff or number of series terms")
    common.add_argument("--prime-bound", "-P", type=int)
    common.add_argument("--depth", "-K", type=int, help="geometric-series depth (default 64)")
    common.add_argument("--format", choices=("json", "text"), help="output format (default json)")
    common.add_argument("--tolerance", type=float, help="quadrature tolerance (default 1e-9)")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _global_options()
    parser = argparse.ArgumentParser(prog="ponzeta", description=__doc__.splitlines()[0], parents=[common])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser(parents=[common], name="normal-order", help="normal-order an operator expression")
    p.add_argument("expr")
    p.add_argument("--diagonal", action="store_true", help="require a diagonal result (exit 3 otherwise)")

    p = sub.add_parser(parents=[common], name="commutator", help="normal-ordered [x, y]")
    p.add_argument("x")
    p.add_argument("y")

    p = sub.add_parser(parents=[common], name="zeta", help="zeta(s) through an operator representation")
    p.add_argument("s")
    p.add_argument("--method", choices=("state-sum", "euler", "quantum"), default="state-sum")

    p = sub.add_parser(parents=[common], name="euler-factor", help="the Euler factor zeta_p(s)")
    p.add_argument("p", type=int)
    p.add_argument("s")
    p.add_argument("--quantum", action="store_true", help="use the A-operator expansion")

    p = sub.add_parser(parents=[common], name="pon", help="apply quantum p-on operators to divided powers e_n")
    p.add_argument("action", choices=("create", "annihilate", "geometric", "inverse"))
    p.add_argument("m", type=int, nargs="?", default=1, help="operator index (create/annihilate)")
    p.add_argument("--state", type=int, nargs="+", default=[1], help="indices n of the input sum of e_n")

    p = sub.add_parser(parents=[common], name="lfunction", help="L(s, chi) partial sum")
    p.add_argument("s")
    p.add_argument("--character", choices=("mod8", "trivial"), default="mod8")

    p = sub.add_parser(parents=[common], name="mellin", help="raw Mellin integral of <n|exp(-beta a†a)|m>")
    p.add_argument("s")
    p.add_argument("n", type=int)
    p.add_argument("m", type=int, nargs="?")

    p = sub.add_parser(parents=[common], name="gauss", help="quadratic Gauss sum")
    p.add_argument("p", type=int)

    p = sub.add_parser(parents=[common], name="absder", help="absolute derivation d/dp of n")
    p.add_argument("p", type=int)
    p.add_argument("n", type=int)

    p = sub.add_parser(parents=[common], name="verify", help="run an invariant suite")
    p.add_argument("suite", choices=("weyl", "pon", "zeta", "appendix", "all"))
    return parser


def _emit(payload: dict, text: str, config: RunConfig, out) -> None:
    if config.format == "json":
        out.write(json.dumps(payload, sort_keys=True) + "\n")
    else:
        out.write(text + "\n")


def _numeric(result: ZetaResult, config: RunConfig, out) -> int:
    payload = result.to_json()
    text = (
        f"value = {payload['value_re']}"
        + (f" + {payload['value_im']}i" if mpmath.mpf(payload["value_im"]) else "")
        + f"\ntail_bound = {payload['tail_bound']:.3e}\nterms_used = {payload['terms_used']}\nmethod = {payload['method']}"
    )
    _emit(payload, text, config, out)
    return EXIT_OK


def _cmd_normal_order(args, config, out) -> int:
    nf = normal_order(parse(args.expr))
    diag = None
    if nf.is_diagonal():
        diag = str(diagonal_poly(nf))
    elif args.diagonal:
        raise NotDiagonal(f"{nf} is not diagonal")
    payload = {"normal_form": str(nf), "diagonal": diag, "terms": [[j, k, str(c)] for (j, k), c in nf.items()]}
    text = str(nf) + (f"\ndiagonal: {diag}" if diag is not None else "")
    _emit(payload, text, config, out)
    return EXIT_OK


def _cmd_commutator(args, config, out) -> int:
    nf = commutator(parse(args.x), parse(args.y))
    diag = str(diagonal_poly(nf)) if nf.is_diagonal() else None
    payload = {"normal_form": str(nf), "diagonal": diag, "terms": [[j, k, str(c)] for (j, k), c in nf.items()]}
    _emit(payload, str(nf) + (f"\ndiagonal: {diag}" if diag is not None else ""), config, out)
    return EXIT_OK


def _cmd_zeta(args, config, out) -> int:
    s = parse_exponent(args.s)
    bits = config.precision
    if args.method == "state-sum":
        n_max = args.cutoff_given or 10_000
        result = zeta_via_states(SpectralParams(s=s, cutoff=n_max, bits=bits, depth=config.depth))
    elif args.method == "euler":
        result = euler_product(s, config.prime_bound or 1000, config.depth, bits)
    else:
        n_max = args.cutoff_given or 1000
        result = zeta_quantum(s, config.prime_bound or n_max, n_max, bits)
    return _numeric(result, config, out)


def _cmd_euler_factor(args, config, out) -> int:
    s = parse_exponent(args.s)
    fn = zeta_p_quantum if args.quantum else euler_factor
    return _numeric(fn(args.p, s, config.depth, config.precision), config, out)


def _cmd_pon(args, config, out) -> int:
    n_max = config.cutoff
    v = FockVec({n: 1 for n in args.state}, max(n_max, max(args.state)), DIVIDED, "rational")
    if args.action == "create":
        result = apply_pon(PonOp.create(args.m), v)
    elif args.action == "annihilate":
        result = apply_pon(PonOp.annihilate(args.m), v)
    elif args.action == "geometric":
        result = geometric_create(v, config.prime_bound or n_max, n_max)
    else:
        result = geometric_annihilate_inverse(v, config.prime_bound or n_max, n_max)
    payload = {"basis": "divided", "amplitudes": {str(n): str(c) for n, c in sorted(result.amps.items())}}
    _emit(payload, str(result), config, out)
    return EXIT_OK


def _cmd_lfunction(args, config, out) -> int:
    chi = DirichletCharacter.mod8() if args.character == "mod8" else DirichletCharacter.trivial()
    n_max = args.cutoff_given or 10_000
    return _numeric(l_function(parse_exponent(args.s), chi, n_max, config.precision), config, out)


def _cmd_mellin(args, config, out) -> int:
    s = parse_exponent(args.s)
    value, err = mellin_quadrature(s, args.n, args.m, config.precision)
    if err > config.tolerance * max(abs(value), 1):
        raise QuadratureError(f"quadrature error {mpmath.nstr(err, 3)} exceeds tolerance {config.tolerance}", err)
    return _numeric(ZetaResult(value, 1, err, "mellin-quadrature", config.precision), config, out)


def _cmd_gauss(args, config, out) -> int:
    value = gauss_sum(args.p, config.precision)
    return _numeric(ZetaResult(value, args.p, mpmath.mpf(0), "gauss-sum", config.precision), config, out)


def _cmd_absder(args, config, out) -> int:
    value = absolute_derivation(args.p, args.n)
    return _numeric(ZetaResult(value, 1, 0, "absolute-derivation", config.precision), config, out)


def _cmd_verify(args, config, out) -> int:
    checks = run_suite(args.suite)
    failed = [c for c in checks if not c.passed]
    if config.format == "json":
        payload = {"suite": args.suite, "passed": not failed, "checks": [{"name": c.name, "passed": c.passed, "detail": c.detail} for c in checks]}
        out.write(json.dumps(payload, sort_keys=True) + "\n")
    else:
        for c in checks:
            out.write(f"{'PASS' if c.passed else 'FAIL'}  {c.name}" + (f"  -- {c.detail}" if c.detail else "") + "\n")
    return EXIT_VERIFY if failed else EXIT_OK


COMMANDS = {
    "normal-order": _cmd_normal_order,
    "commutator": _cmd_commutator,
    "zeta": _cmd_zeta,
    "euler-factor": _cmd_euler_factor,
    "pon": _cmd_pon,
    "lfunction": _cmd_lfunction,
    "mellin": _cmd_mellin,
    "gauss": _cmd_gauss,
    "absder": _cmd_absder,
    "verify": _cmd_verify,
}


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    args = build_parser().parse_args(argv)
    try:
        given = vars(args)
        config = RunConfig(
            precision=given.get("precision", _default_precision()),
            cutoff=given.get("cutoff", 64),
            prime_bound=given.get("prime_bound"),
            depth=given.get("depth", DEFAULT_DEPTH),
            format=given.get("format", "json"),
            tolerance=given.get("tolerance", 1e-9),
        )
        args.cutoff_given = given.get("cutoff")
        with mpmath.workprec(config.precision):
            return COMMANDS[args.command](args, config, out)
    except ParseError as exc:
        err.write(f"parse error: {exc}\n")
        return EXIT_PARSE
    except DOMAIN_ERRORS as exc:
        err.write(f"domain error: {exc}\n")
        return EXIT_DOMAIN
    except PARAM_ERRORS as exc:
        err.write(f"parameter error: {exc}\n")
        return EXIT_PARAM
    except ValueError as exc:
        err.write(f"parameter error: {exc}\n")
        return EXIT_PARAM


if __name__ == "__main__":
    sys.exit(main())
