"""
Command-line driver.

Exit codes: 0 when every check passes, 1 when any check fails, 2 on a usage,
config or input error.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
import time
from typing import List, Optional

from .blaschke import BlaschkeProduct
from .errors import NotConstructibleError, ParameterError
from .fourier import LaurentFunction
from .suite import REGISTRY, SEED_MASK, RunConfig, run_all, run_check
from . import theorems

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

log = logging.getLogger("conjulab")


class UsageError(Exception):
    pass


def _load_json(text: str, what: str):
    """Parse inline JSON, or ``@path`` to read a file."""
    try:
        if text.startswith("@"):
            with open(text[1:], encoding="utf-8") as fh:
                return json.load(fh)
        return json.loads(text)
    except OSError as exc:
        raise UsageError(f"cannot read {what}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"{what} is not valid JSON: {exc}") from None


def _blaschke(obj, field: str) -> BlaschkeProduct:
    try:
        return BlaschkeProduct.from_json(obj)
    except ParameterError as exc:
        raise UsageError(f"{field}: {exc}") from None


def _complex(value, field: str) -> complex:
    try:
        if isinstance(value, str):
            return complex(value.replace(" ", ""))
        if isinstance(value, (list, tuple)) and len(value) == 2:
            return complex(float(value[0]), float(value[1]))
        return complex(value)
    except (TypeError, ValueError):
        raise UsageError(f"{field}: expected a complex number, got {value!r}") from None


def load_config(args) -> RunConfig:
    raw = {}
    if args.config:
        raw = _load_json("@" + args.config, "config")
        if not isinstance(raw, dict):
            raise UsageError("config must be a JSON object")
    if args.seed is not None:
        raw["seed"] = args.seed
    elif "seed" not in raw and os.environ.get("CONJULAB_SEED"):
        try:
            raw["seed"] = int(os.environ["CONJULAB_SEED"])
        except ValueError:
            raise UsageError("CONJULAB_SEED must be an integer") from None
    try:
        return RunConfig.from_json(raw)
    except (ParameterError, TypeError) as exc:
        raise UsageError(f"config: {exc}") from None


def _emit(payload, path: Optional[str]):
    text = json.dumps(payload, indent=2) + "\n"
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def cmd_verify_all(args) -> int:
    if args.list_checks:
        print("\n".join(REGISTRY))
        return EXIT_OK
    cfg = load_config(args)
    ids = args.check or []
    for cid in ids:
        if cid not in REGISTRY:
            raise UsageError(f"unknown check id {cid!r} (see --list-checks)")
    t0 = time.perf_counter()
    reports = run_all(cfg, ids)
    for r in reports:
        print(str(r), file=sys.stderr)
    failed = sum(not r.passed for r in reports)
    print(f"{len(reports) - failed}/{len(reports)} checks passed in {time.perf_counter() - t0:.1f}s",
          file=sys.stderr)
    _emit([r.to_json() for r in reports], args.report)
    return EXIT_FAIL if failed else EXIT_OK


def cmd_construct_beta(args) -> int:
    alpha = _blaschke(_load_json(args.alpha, "alpha"), "alpha")
    theta = _blaschke(_load_json(args.theta, "theta"), "theta")
    try:
        beta = theorems.construct_beta(alpha, theta)
    except NotConstructibleError as exc:
        print(f"not constructible: {exc}", file=sys.stderr)
        return EXIT_FAIL
    _emit(beta.to_json(), args.report)
    return EXIT_OK


def cmd_enumerate_betas(args) -> int:
    alpha = _blaschke(_load_json(args.alpha, "alpha"), "alpha")
    try:
        betas = theorems.enumerate_betas(alpha)
    except ParameterError as exc:
        raise UsageError(f"alpha: {exc}") from None
    _emit([b.to_json() for b in betas], args.report)
    return EXIT_OK


def _direct_check(check_id: str, params: dict, cfg: RunConfig):
    """Run a single theorem routine on explicit parameters."""
    grid = cfg.grid

    def B(name, default=None):
        if name not in params:
            if default is not None:
                return default
            raise UsageError(f"params: missing field {name!r}")
        return _blaschke(params[name], name)

    if check_id == "mz_conjugation_model_containment":
        return theorems.verify_mz_conjugation_containment(B("beta"), B("gamma", BlaschkeProduct()), B("alpha"),
                                                          B("theta"), grid, cfg.tol_composed, cfg.demo_floor)
    if check_id == "commuting_model_containment_rigidity":
        return theorems.verify_commuting_containment_rigidity(B("alpha"), B("theta"), B("beta"),
                                                              B("gamma", BlaschkeProduct()), grid,
                                                              cfg.tol_composed, cfg.seed)
    if check_id == "sandwich_involution_criterion":
        return theorems.check_sandwich_involution(B("alpha"), B("theta"), grid, cfg.tol_composed, cfg.seed)
    if check_id == "shift_invariant_conjugation":
        return theorems.verify_shift_invariant_conjugation(B("alpha"), B("theta"), grid, cfg.tol_composed,
                                                           cfg.demo_floor, cfg.seed)
    if check_id == "obstruction_example":
        return theorems.check_obstruction_example(_complex(params.get("a"), "a"), _complex(params.get("b"), "b"),
                                                  grid, cfg.tol_construct, cfg.demo_floor)
    if check_id == "mz_conjugation_invariant_subspace_demo":
        return theorems.demo_mz_conjugation_invariant_subspace(
            B("alpha"), B("theta"), int(params.get("trials", cfg.trials)), int(params.get("seed", cfg.seed)),
            cfg.demo_floor, params.get("family", "generic"), grid)
    if check_id == "sharp_intertwining_conjugation":
        return theorems.verify_sharp_intertwining_conjugation(B("theta"), _complex(params.get("lam", 1), "lam"),
                                                              grid, cfg.tol_composed)
    if check_id == "symmetric_theta_commuting_conjugations":
        return theorems.verify_symmetric_theta_commuting(B("theta"), grid, cfg.tol_composed, cfg.seed)
    if check_id == "truncated_shift_symmetric_conjugation":
        psi = LaurentFunction.constant(_complex(params.get("psi", 1), "psi"), grid)
        return theorems.verify_truncated_shift_symmetric_conjugation(B("theta"), psi, grid, cfg.tol_composed,
                                                                     cfg.seed)
    raise UsageError(f"check {check_id!r} takes no explicit params; run it without --params")


def cmd_check(args) -> int:
    cfg = load_config(args)
    if args.check_id not in REGISTRY:
        raise UsageError(f"unknown check id {args.check_id!r} (see --list-checks)")
    if args.params:
        params = _load_json(args.params, "params")
        if not isinstance(params, dict):
            raise UsageError("params must be a JSON object")
        try:
            report = _direct_check(args.check_id, params, cfg)
        except ParameterError as exc:
            raise UsageError(f"params: {exc}") from None
    else:
        report = run_check(args.check_id, cfg)
    print(str(report), file=sys.stderr)
    _emit(report.to_json(), args.report)
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_obstruction_example(args) -> int:
    cfg = load_config(args)
    try:
        report = theorems.check_obstruction_example(_complex(args.a, "a"), _complex(args.b, "b"), cfg.grid,
                                                    cfg.tol_construct, cfg.demo_floor)
    except ParameterError as exc:
        raise UsageError(str(exc)) from None
    print(str(report), file=sys.stderr)
    _emit(report.to_json(), args.report)
    return EXIT_OK if report.passed else EXIT_FAIL


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def _seed(text: str) -> int:
    try:
        v = int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid seed {text!r}") from None
    if not 0 <= v <= SEED_MASK:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", metavar="PATH", help="RunConfig JSON file")
    common.add_argument("--report", metavar="PATH", help="write JSON output here instead of stdout")
    common.add_argument("--seed", type=_seed, help="base seed (fallback: $CONJULAB_SEED, then 0)")
    common.add_argument("-v", "--verbose", action="store_true", help="log per-check timings")

    p = argparse.ArgumentParser(prog="conjulab", description="Numerical certification of conjugations on "
                                "Hardy-space shift-invariant and model subspaces.")
    p.add_argument("--list-checks", action="store_true", help="print registered check ids and exit")
    sub = p.add_subparsers(dest="command")

    s = sub.add_parser("verify-all", parents=[common], help="run the certification suite")
    s.add_argument("--check", action="append", metavar="ID", help="restrict to this check (repeatable)")
    s.add_argument("--list-checks", action="store_true", help="print registered check ids and exit")
    s.set_defaults(func=cmd_verify_all)

    s = sub.add_parser("construct-beta", parents=[common], help="beta with theta <= beta and beta beta# = alpha alpha#")
    s.add_argument("alpha", help="BlaschkeProduct JSON (or @file)")
    s.add_argument("theta", help="BlaschkeProduct JSON (or @file)")
    s.set_defaults(func=cmd_construct_beta)

    s = sub.add_parser("enumerate-betas", parents=[common], help="all beta with beta beta# = alpha alpha#")
    s.add_argument("alpha", help="BlaschkeProduct JSON (or @file)")
    s.set_defaults(func=cmd_enumerate_betas)

    s = sub.add_parser("check", parents=[common], help="run one registered check")
    s.add_argument("check_id")
    s.add_argument("--params", help="JSON object of explicit inputs (or @file)")
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("obstruction-example", parents=[common],
                       help="alpha = b_a b_b, theta = b_a b_conj(b): shift-invariant but not model-space conjugation")
    s.add_argument("a", help="complex, e.g. 0.5j")
    s.add_argument("b", help="complex, e.g. 0.3+0.2j")
    s.set_defaults(func=cmd_obstruction_example)
    return p


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    if args.list_checks and args.command is None:
        print("\n".join(REGISTRY))
        return EXIT_OK
    if args.command is None:
        parser.print_usage(sys.stderr)
        return EXIT_USAGE
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
