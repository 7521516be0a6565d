"""Command-line entry point: ``hopfkit make | analyze | verify``."""
from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass

from . import hopf as hp
from .double import build_double, double_to_json, quasi_to_json
from .groups import BUILTIN_GROUPS, GroupError, cyclic, make_group
from .reports import (
    SUITES,
    InputError,
    VerificationReport,
    analysis_to_json,
    analyze_subject,
    dims_csv,
    fusion_csv,
    hopf_checks,
    load_subject,
    matrix_csv,
    run_full_suite,
    to_complex,
)
from .scalars import DEFAULT_TOL, ToleranceConfig
from .triangular import TwistError, bicharacter_twist, twist_group_algebra, twist_to_json

EXIT_PASS, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


@dataclass(frozen=True)
class CliConfig:
    subcommand: str
    inputs: tuple[str, ...]
    out: str | None
    tol: ToleranceConfig
    scalar: str | None
    fmt: str


def _common(p: argparse.ArgumentParser):
    p.add_argument("--tol", type=float, help=f"structural residual tolerance (default {DEFAULT_TOL.residual_tol})")
    p.add_argument("--int-tol", type=float, help=f"integer recognition tolerance (default {DEFAULT_TOL.integer_tol})")
    p.add_argument("--seed", type=int, help="seed for the randomized block splitting")
    p.add_argument("--scalar", choices=("rational", "complex"), help="scalar backend")
    p.add_argument("--out", metavar="DIR", help="output directory")
    p.add_argument("--format", choices=("json", "csv", "md"), default="json")


def _source(p: argparse.ArgumentParser):
    p.add_argument("input", nargs="?", help="Hopf or twist JSON file, or a group spec such as S3")
    p.add_argument("--group", help=f"group spec ({', '.join(BUILTIN_GROUPS)}, cyclic(n), ...)")
    p.add_argument("--double", action="store_true", help="work with the Drinfeld double of the input")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hopfkit", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    make = sub.add_parser("make", help="construct a Hopf algebra and write it as JSON")
    make.add_argument("kind", choices=("group", "dual", "double", "twist"))
    make.add_argument("input", nargs="?", help="Hopf JSON file (for dual/double)")
    make.add_argument("--group")
    make.add_argument("--cyclic", type=int, metavar="N")
    make.add_argument("--bicharacter", default="a1b2", help="e.g. a1b2 or a1b2+a2b1")
    make.add_argument("-o", "--output", help="output file (default: a name under --out)")
    _common(make)

    analyze = sub.add_parser("analyze", help="blocks, characters, S-matrix and fusion tensors")
    _source(analyze)
    _common(analyze)

    verify = sub.add_parser("verify", help="run a check suite and print the report")
    _source(verify)
    verify.add_argument("--suite", choices=SUITES, default="all")
    _common(verify)
    return parser


def _config(args) -> CliConfig:
    changes = {}
    if args.tol is not None:
        changes["residual_tol"] = args.tol
    if args.int_tol is not None:
        changes["integer_tol"] = args.int_tol
    if args.seed is not None:
        changes["rng_seed"] = args.seed
    tol = DEFAULT_TOL.with_(**changes)  # validates
    inputs = tuple(x for x in (getattr(args, "input", None), getattr(args, "group", None)) if x)
    return CliConfig(args.command, inputs, args.out, tol, args.scalar, args.format)


def _write(path: str, text: str):
    os.makedirs(os.path.dirname(path) or ".", exist_ok=True)
    with open(path, "w") as fh:
        fh.write(text)
    print(path)


def _dump(obj) -> str:
    return json.dumps(obj, indent=1, sort_keys=True) + "\n"


def _one_source(cfg: CliConfig) -> str:
    if len(cfg.inputs) != 1:
        raise InputError("give exactly one of an input file or --group")
    return cfg.inputs[0]


def cmd_make(args, cfg: CliConfig) -> int:
    out_dir = cfg.out or "."

    def target(default):
        return args.output or os.path.join(out_dir, default)

    def base_algebra():
        if args.cyclic is not None:
            return hp.group_algebra(cyclic(args.cyclic)), f"C{args.cyclic}"
        if args.group:
            return hp.group_algebra(make_group(args.group)), args.group
        if args.input:
            try:
                H = hp.hopf_from_json(hp.load_json(args.input))
            except OSError as exc:
                raise InputError(str(exc)) from exc
            return H, os.path.splitext(os.path.basename(args.input))[0]
        raise InputError("need --group, --cyclic or an input file")

    def finish(H):
        return to_complex(H) if cfg.scalar == "complex" and H.scalar_mode == "rational" else H

    if args.kind == "twist":
        if not args.group:
            raise InputError("make twist needs --group")
        T = bicharacter_twist(args.group, args.bicharacter, cfg.tol)
        ta = twist_group_algebra(T, cfg.tol)
        if not ta.passed:
            print("twisted algebra failed validation", file=sys.stderr)
            return EXIT_FAIL
        stem = f"twist_{args.group}_{args.bicharacter.replace('+', '_')}"
        _write(target(stem + ".json"), _dump(quasi_to_json(ta.quasi)))
        _write(os.path.join(out_dir, stem + "_J.json"), _dump(twist_to_json(T)))
        return EXIT_PASS

    H, stem = base_algebra()
    if args.kind == "group":
        _write(target(f"{stem}.json"), _dump(hp.hopf_to_json(finish(H))))
    elif args.kind == "dual":
        H = H if H.antipode is not None else H.with_antipode(hp.solve_antipode(H, cfg.tol))
        _write(target(f"dual_{stem}.json"), _dump(hp.hopf_to_json(finish(hp.dual_hopf(H)))))
    else:
        H = finish(H if H.antipode is not None else H.with_antipode(hp.solve_antipode(H, cfg.tol)))
        _write(target(f"D_{stem}.json"), _dump(double_to_json(build_double(H, cfg.tol))))
    return EXIT_PASS


def cmd_analyze(args, cfg: CliConfig) -> int:
    subject = load_subject(_one_source(cfg), double=args.double, scalar=cfg.scalar, tol=cfg.tol)
    if subject.build_error is not None:
        print(f"construction failed: {subject.build_error.detail}", file=sys.stderr)
        return EXIT_FAIL
    axioms = hopf_checks(subject.H, cfg.tol)
    if not all(c.passed for c in axioms):
        report = VerificationReport(subject.label, axioms, {"input_sha256": subject.digest})
        sys.stdout.write(report.render(cfg.fmt))
        return EXIT_FAIL
    a = analyze_subject(subject, cfg.tol)
    out = cfg.out or "."
    _write(os.path.join(out, "analysis.json"), analysis_to_json(a))
    _write(os.path.join(out, "dims.csv"), dims_csv(a))
    _write(os.path.join(out, "characters.csv"), matrix_csv(a["characters"]))
    if "s_matrix" in a:
        _write(os.path.join(out, "s_matrix.csv"), matrix_csv(a["s_matrix"]))
    for key in ("fusion_bruteforce", "fusion_verlinde"):
        if a.get(key) is not None:
            _write(os.path.join(out, f"{key}.csv"), fusion_csv(a[key]))
    failing = [c.name for c in a.get("checks", []) if not c.passed]
    if failing:
        print(f"failing checks: {', '.join(failing)}", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_PASS


def cmd_verify(args, cfg: CliConfig) -> int:
    report = run_full_suite(_one_source(cfg), args.suite, double=args.double, scalar=cfg.scalar,
                            tol=cfg.tol)
    text = report.render(cfg.fmt)
    if cfg.out:
        _write(os.path.join(cfg.out, f"report.{cfg.fmt}"), text)
    else:
        sys.stdout.write(text)
    return EXIT_PASS if report.passed else EXIT_FAIL


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _config(args)
        handler = {"make": cmd_make, "analyze": cmd_analyze, "verify": cmd_verify}[args.command]
        return handler(args, cfg)
    except (InputError, hp.HopfFormatError, GroupError, TwistError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
