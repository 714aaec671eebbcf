"""``superfock`` command-line driver.

Exit codes: 0 when every check passes (expected failures count as passing),
1 when a check fails, 2 on parse or configuration errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
import warnings
from dataclasses import dataclass

from .checks import algebra_suite, fock_suite, group_suite, witness_not_strong
from .fock import basis_keys, basis_label, gram_matrix
from .group import NumericFockVector, TruncationWarning, act_word, parse_word
from .report import format_reports
from .scalars import AlphaParam, NaturalAlphaError, parse_rational

log = logging.getLogger("superfock")

EXIT_OK, EXIT_FAIL, EXIT_CONFIG = 0, 1, 2


class ConfigError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    alpha: AlphaParam
    N: int = 8
    tol: float = 1e-10
    seed: int = 0
    output: str = "text"


def _alpha(args) -> AlphaParam:
    try:
        return AlphaParam.parse(args.alpha, allow_natural=args.allow_natural)
    except NaturalAlphaError as exc:
        raise ConfigError(f"alpha={args.alpha}: {exc}") from exc
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigError(f"cannot parse alpha {args.alpha!r}") from exc


def _config(args) -> RunConfig:
    if args.N < 1:
        raise ConfigError("--N must be positive")
    if not args.tol > 0:
        raise ConfigError("--tol must be positive")
    return RunConfig(_alpha(args), args.N, args.tol, args.seed, args.output)


def _emit(reports, cfg: RunConfig) -> int:
    print(format_reports(reports, cfg.output))
    return EXIT_OK if all(r.ok for r in reports) else EXIT_FAIL


def cmd_verify(args) -> int:
    cfg = _config(args)
    reports = []
    if args.target in ("algebra", "all"):
        reports += algebra_suite(cfg.alpha)
    if args.target in ("fock", "all"):
        reports += fock_suite(cfg.alpha, cfg.N)
    if args.target in ("group", "all"):
        if cfg.alpha.value.denominator == 1 and cfg.alpha.value >= 0:
            raise ConfigError("the group checks need a non-natural alpha")
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", TruncationWarning)
            reports += group_suite(cfg.alpha, cfg.N, cfg.tol, cfg.seed)
    return _emit(reports, cfg)


def cmd_witness(args) -> int:
    cfg = _config(args)
    try:
        eps = [parse_rational(x) for x in args.eps.split(",")]
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigError(f"cannot parse epsilons {args.eps!r}") from exc
    if len(eps) != 4 or any(e <= 0 for e in eps):
        raise ConfigError("--eps needs four positive rationals")
    report, _ = witness_not_strong(cfg.alpha, eps)
    return _emit([report], cfg)


def cmd_gram(args) -> int:
    cfg = _config(args)
    keys = basis_keys(cfg.N)
    G = gram_matrix(cfg.N, cfg.alpha, form=args.form)
    buf = io.StringIO()
    w = csv.writer(buf)
    labels = [basis_label(k) for k in keys]
    w.writerow([""] + labels)
    for lab, row in zip(labels, G):
        w.writerow([lab] + [str(x) for x in row])
    sys.stdout.write(buf.getvalue())
    return EXIT_OK


def cmd_act(args) -> int:
    alpha = _alpha(args)
    try:
        word = parse_word(args.word)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    try:
        with open(args.vector) as fh:
            f = NumericFockVector.from_json_dict(json.load(fh))
    except (OSError, json.JSONDecodeError, ValueError, TypeError) as exc:
        raise ConfigError(f"cannot read vector {args.vector!r}: {exc}") from exc
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", TruncationWarning)
        out = act_word(word, f, alpha, padding=args.padding)
    for w in caught:
        log.warning("%s", w.message)
    print(out.to_json())
    return EXIT_OK


def _common(p: argparse.ArgumentParser, N_default: int = 8) -> None:
    p.add_argument("--alpha", required=True, help="rational parameter p/q, not a natural number")
    p.add_argument("--N", type=int, default=N_default, help="degree cutoff")
    p.add_argument("--tol", type=float, default=1e-10, help="tolerance of floating-point checks")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--output", choices=("json", "csv", "text"), default="text")
    p.add_argument("--allow-natural", action="store_true", help=argparse.SUPPRESS)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="superfock", description="Verify the Fock model of D(2,1;alpha).")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("target", choices=("algebra", "fock", "group", "all"))
    _common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("witness", help="the invariance defect showing no fundamental symmetry works")
    _common(p)
    p.add_argument("--eps", default="1,1,1,1", help="four positive rationals eps1,eps2,eps3,eps4")
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("gram", help="print the Gram matrix as CSV")
    _common(p)
    p.add_argument("--form", choices=("bf", "S"), default="bf")
    p.set_defaults(func=cmd_gram)

    p = sub.add_parser("act", help="apply a group word to a JSON vector")
    p.add_argument("word", help='e.g. "K2(0.3) A3(-1.2) A1(0.5)"; empty for the identity')
    p.add_argument("vector", help="JSON file {f1: [...], f2: [...], f3: [...], f4: [...]}")
    p.add_argument("--alpha", required=True)
    p.add_argument("--padding", type=int, default=16)
    p.add_argument("--allow-natural", action="store_true", help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_act)
    return parser


def _glue_values(argv: list[str]) -> list[str]:
    # "--alpha -2/3" would otherwise be read as an option
    out, it = [], iter(argv)
    for a in it:
        if a in ("--alpha", "--eps"):
            nxt = next(it, None)
            out.append(a if nxt is None else f"{a}={nxt}")
        else:
            out.append(a)
    return out


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(_glue_values(argv))
    except SystemExit as exc:
        return EXIT_CONFIG if exc.code else EXIT_OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"superfock: error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
