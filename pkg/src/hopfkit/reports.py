"""Verification reports: run the named checks on an input and render the results."""
from __future__ import annotations

import csv
import hashlib
import io
import json
import math
import os
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import hopf as hp
from .checks import CATALOG, Check
from .double import (
    ConstructionError,
    QuasitriangularStructure,
    build_double,
    factorizability_map,
    r_matrix_from_json,
)
from .groups import FiniteGroup, GroupError, double_dims_oracle, make_group
from .hopf import HopfAlgebra, HopfFormatError, group_algebra, validate_hopf
from .modular import (
    ModularData,
    analyze_modular,
    check_divisibility_double,
    check_frobenius_type,
    prime_dimension_report,
    _is_prime,
)
from .reptheory import character_rank, fusion_bruteforce, wedderburn
from .scalars import DEFAULT_TOL, ToleranceConfig
from .triangular import (
    TwistData,
    check_u_involution,
    is_triangular,
    parity_twist,
    twist_from_json,
    twist_group_algebra,
)

SCHEMA_VERSION = 1
SUITES = ("all", "hopf", "modular", "triangular", "divisibility")


class InputError(ValueError):
    """Unparseable input; ``location`` points at the offending field when known."""

    def __init__(self, message: str, location: str = ""):
        super().__init__(f"{location}: {message}" if location else message)
        self.location = location


# ---------------------------------------------------------------------------
# the report

def _plain(x):
    """JSON-safe, rounded copy of a detail value."""
    if isinstance(x, Check):
        return {"name": x.name, "passed": x.passed, "residual": _plain(x.residual)}
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if isinstance(x, np.ndarray):
        return _plain(x.tolist())
    if isinstance(x, (bool, np.bool_)):
        return bool(x)
    if isinstance(x, (int, np.integer)):
        return int(x)
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}"
    if isinstance(x, (complex, np.complexfloating)):
        if abs(x.imag) == 0:
            return _plain(float(x.real))
        return [_plain(float(x.real)), _plain(float(x.imag))]
    if isinstance(x, (float, np.floating)):
        x = float(x)
        if not math.isfinite(x):
            return str(x)
        return float(f"{x:.6e}") + 0.0
    if x is None or isinstance(x, str):
        return x
    return str(x)


@dataclass
class VerificationReport:
    subject: str
    checks: list[Check]
    provenance: dict = field(default_factory=dict)

    def __post_init__(self):
        order = {name: i for i, name in enumerate(CATALOG)}
        self.checks = sorted(self.checks, key=lambda c: order[c.name])

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def status(self) -> str:
        return "pass" if self.passed else "fail"

    def failures(self) -> list[str]:
        return [c.name for c in self.checks if not c.passed]

    def check(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_dict(self) -> dict:
        return {
            "schema": SCHEMA_VERSION,
            "subject": self.subject,
            "status": self.status,
            "summary": {"total": len(self.checks),
                        "failed": sum(1 for c in self.checks if not c.passed)},
            "checks": [{"name": c.name, "status": "pass" if c.passed else "fail",
                        "residual": _plain(c.residual), "detail": _plain(c.detail)}
                       for c in self.checks],
            "provenance": _plain(self.provenance),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["name", "status", "residual"])
        for c in self.checks:
            w.writerow([c.name, "pass" if c.passed else "fail", _plain(c.residual)])
        return buf.getvalue()

    def to_markdown(self) -> str:
        lines = [f"# Verification report: {self.subject}", "",
                 f"Overall status: **{self.status.upper()}** "
                 f"({len(self.checks) - len(self.failures())}/{len(self.checks)} checks pass)", "",
                 "| check | status | residual |", "|---|---|---|"]
        for c in self.checks:
            lines.append(f"| {c.name} | {'pass' if c.passed else 'FAIL'} | {_plain(c.residual)} |")
        lines += ["", "## Provenance", ""]
        for k, v in sorted(_plain(self.provenance).items()):
            lines.append(f"- {k}: `{json.dumps(v, sort_keys=True)}`")
        return "\n".join(lines) + "\n"

    def render(self, fmt: str) -> str:
        if fmt == "json":
            return self.to_json()
        if fmt == "csv":
            return self.to_csv()
        if fmt == "md":
            return self.to_markdown()
        raise ValueError(f"unknown format {fmt!r}")


# ---------------------------------------------------------------------------
# inputs

@dataclass
class Subject:
    """A parsed input: an algebra, optionally an R-matrix, and what is known about its origin."""

    label: str
    H: HopfAlgebra
    R: dict | None
    r_source: str | None
    digest: str
    group: FiniteGroup | None = None       # H = kG (untwisted)
    base_dim: int | None = None             # H = D(K) with dim K = base_dim
    base_group: FiniteGroup | None = None   # H = D(kG)
    twist: TwistData | None = None
    twist_checks: list = field(default_factory=list)
    build_error: Check | None = None


def to_complex(H: HopfAlgebra) -> HopfAlgebra:
    def cv(d):
        return {k: complex(v) for k, v in d.items()}
    anti = None if H.antipode is None else tuple(cv(c) for c in H.antipode)
    return HopfAlgebra(H.dim, H.labels, {k: cv(v) for k, v in H.mult.items()},
                       tuple(complex(v) for v in H.unit), tuple(cv(t) for t in H.comult),
                       tuple(complex(v) for v in H.counit), anti, "complex", H.name, dict(H.meta))


def _is_cocommutative(H: HopfAlgebra) -> bool:
    return all(hp.residual(t, hp.flip(t)) == 0 for t in H.comult)


def load_subject(source, *, double: bool = False, scalar: str | None = None,
                 tol: ToleranceConfig = DEFAULT_TOL) -> Subject:
    """Parse a group spec, a JSON file path, or an already-loaded JSON object."""
    data = None
    if isinstance(source, dict):
        data = source
        raw = json.dumps(source, sort_keys=True).encode()
        label = str(source.get("name", "input"))
    elif isinstance(source, str) and os.path.isfile(source):
        with open(source, "rb") as fh:
            raw = fh.read()
        try:
            data = json.loads(raw)
        except json.JSONDecodeError as exc:
            raise InputError(f"invalid JSON ({exc.msg})", f"line {exc.lineno}") from exc
        except UnicodeDecodeError as exc:
            raise InputError("file is not UTF-8 text") from exc
        label = os.path.basename(source)
    elif isinstance(source, str):
        raw = source.encode()
        label = source
    else:
        raise InputError(f"unsupported input {source!r}")
    digest = hashlib.sha256(raw).hexdigest()

    group = None
    twist = None
    R = None
    r_source = None
    if data is None:
        try:
            group = make_group(source)
        except (GroupError, ValueError) as exc:
            raise InputError(str(exc), "group spec") from exc
        H = group_algebra(group)
    elif not isinstance(data, dict):
        raise InputError("top level must be an object")
    elif "J" in data:
        try:
            twist = twist_from_json(data, tol)
        except (HopfFormatError, GroupError) as exc:
            raise InputError(str(exc), getattr(exc, "location", "")) from exc
        H = twist.algebra
    else:
        try:
            H = hp.hopf_from_json(data)
            if data.get("r_matrix") is not None:
                R = r_matrix_from_json(data, H)
                r_source = "input"
        except HopfFormatError as exc:
            raise InputError(str(exc).split(": ", 1)[-1], exc.location) from exc
        group = H.meta.get("group")

    if scalar == "complex" and H.scalar_mode == "rational":
        H = to_complex(H)
    elif scalar == "rational" and H.scalar_mode == "complex":
        raise InputError("input carries floating scalars; rational mode is unavailable", "scalar_mode")

    subject = Subject(label, H, R, r_source, digest, group=group, twist=twist)
    factors = H.meta.get("factors")
    if factors:
        subject.base_dim = int(factors.get("alg_dim", 0)) or None
        if isinstance(factors.get("base_group"), dict):
            subject.base_group = FiniteGroup.from_json(factors["base_group"])

    if twist is not None:
        subject.group = None
        if twist.certified:
            try:
                ta = twist_group_algebra(twist, tol)
                subject.H, subject.R, subject.r_source = ta.H, ta.quasi.R, "twist"
                subject.twist_checks = ta.checks
            except (ValueError, ArithmeticError) as exc:
                subject.build_error = Check("gauge", False, float("inf"), {"error": str(exc)})

    if double:
        try:
            if H.antipode is None:
                H = H.with_antipode(hp.solve_antipode(H, tol))
            dd = build_double(H, tol)
        except (ConstructionError, hp.AntipodeError) as exc:
            subject.build_error = Check("antipode-involutive", False, float("inf"),
                                        {"error": str(exc)})
            return subject
        subject.base_group = group
        subject.base_dim = H.dim
        subject.group = None
        subject.H, subject.R, subject.r_source = dd.D, dd.quasi.R, "double"
        subject.label = f"D({subject.label})"
        subject.twist = None
    if subject.R is None and _is_cocommutative(subject.H):
        subject.R = subject.H.one2()
        subject.r_source = "trivial"
    return subject


# ---------------------------------------------------------------------------
# check groups

def _guarded(checks: list, name: str, fn, *args, **kwargs):
    """Run ``fn``; an exception becomes a failing check called ``name``."""
    try:
        return fn(*args, **kwargs)
    except (ValueError, ArithmeticError, RuntimeError, np.linalg.LinAlgError) as exc:
        checks.append(Check(name, False, float("inf"), {"error": f"{type(exc).__name__}: {exc}"}))
        return None


def hopf_checks(H: HopfAlgebra, tol: ToleranceConfig) -> list[Check]:
    rep = validate_hopf(H, tol)
    out = [Check.from_residual(name, r, tol.residual_tol) for name, r in rep.residuals.items()]
    if H.antipode is not None:
        out.append(Check.from_residual("antipode-involutive", hp.antipode_squared_residual(H),
                                       tol.residual_tol))
    return out


def quasi_checks(Q: QuasitriangularStructure, tol: ToleranceConfig) -> list[Check]:
    qt = Q.quasitriangularity_residuals()
    return [
        Check.from_residual("quasitriangularity", max(qt.values()), tol.residual_tol, **qt),
        Check.from_residual("u-conjugation", Q.u_conjugation_residual(), tol.residual_tol),
        Check.from_residual("u-coproduct", Q.u_coproduct_residual(), tol.residual_tol),
        Check.from_residual("u-central", Q.u_central_residual(), tol.residual_tol),
        Check.from_residual("special-grouplike", Q.special_grouplike_residual(), tol.residual_tol),
    ]


def modular_checks(Q: QuasitriangularStructure, tol: ToleranceConfig,
                   base_group: FiniteGroup | None = None) -> tuple[list[Check], ModularData | None]:
    out: list[Check] = []
    F = factorizability_map(Q, tol)
    out.append(Check("factorizability", F.invertible, 0.0, {"rank": F.rank, "dim": F.dim}))
    T = _guarded(out, "wedderburn", wedderburn, Q.parent, tol)
    if T is None:
        return out, None
    out.append(Check("wedderburn", True, max(T.residuals.values()),
                     {"dims": sorted(T.dims), **T.residuals}))
    rank = character_rank(T, tol)
    out.append(Check("character-basis", rank == len(T), 0.0, {"rank": rank, "blocks": len(T)}))
    if base_group is not None:
        oracle = double_dims_oracle(base_group)
        out.append(Check("double-dims-oracle", sorted(T.dims) == oracle, 0.0,
                         {"dims": sorted(T.dims), "oracle": oracle}))
    md = _guarded(out, "s-invertibility", analyze_modular, Q, T, tol)
    if md is None:
        return out, None
    out.extend(md.checks)
    sad = md.check("s=AD")
    if "A_invertible" in sad.detail:
        out.append(Check("factorizability-center", bool(sad.detail["A_invertible"]), 0.0))
    return out, md


@dataclass(frozen=True)
class _DimOnly:
    dim: int


def divisibility_checks(subject: Subject, tol: ToleranceConfig,
                        T_double=None) -> list[Check]:
    out: list[Check] = []
    H = subject.H
    if subject.base_dim is not None:
        T = T_double or _guarded(out, "divisibility", wedderburn, H, tol)
        if T is not None:
            out.append(check_divisibility_double(_DimOnly(subject.base_dim), T))
        return out
    dd = _guarded(out, "divisibility", build_double, H, tol)
    if dd is not None:
        T = _guarded(out, "divisibility", wedderburn, dd.D, tol)
        if T is not None:
            out.append(check_divisibility_double(H, T))
    if subject.R is not None:
        Q = QuasitriangularStructure(H, subject.R, tol)
        c = _guarded(out, "frobenius-type", check_frobenius_type, Q, tol, dd)
        if c is not None:
            out.append(c)
            out.append(Check("hopf-surjection",
                             c.detail["surjection_rank"] == H.dim and max(
                                 c.detail["surjection_residuals"].values()) <= tol.residual_tol,
                             max(c.detail["surjection_residuals"].values()),
                             {"rank": c.detail["surjection_rank"], **c.detail["surjection_residuals"]}))
    if _is_prime(H.dim):
        c = _guarded(out, "prime-dimension", prime_dimension_report, H, tol)
        if c is not None:
            out.append(c)
    return out


def triangular_checks(Q: QuasitriangularStructure, tol: ToleranceConfig) -> list[Check]:
    ok, res = is_triangular(Q)
    out = [Check.from_residual("triangularity", res, tol.residual_tol)]
    if not ok:
        return out
    T = _guarded(out, "u-involution", wedderburn, Q.parent, tol)
    if T is None:
        return out
    c = _guarded(out, "u-involution", check_u_involution, Q, T)
    if c is not None:
        out.append(c)
    if c is not None and c.passed:
        res = _guarded(out, "parity-twist", parity_twist, Q, T)
        if res is not None:
            Qt, pc = res
            # applying the correction again must change nothing
            again = hp.residual(parity_twist(Qt, T)[0].R, Qt.R)
            pc.detail["idempotent"] = again
            pc.passed = pc.passed and again <= tol.residual_tol
            out.append(pc)
    return out


# ---------------------------------------------------------------------------
# the suite

def run_full_suite(source, suite: str = "all", *, double: bool = False, scalar: str | None = None,
                   tol: ToleranceConfig = DEFAULT_TOL) -> VerificationReport:
    """Every applicable named check on ``source`` (group spec, JSON path, or JSON object).

    Raises :class:`InputError` for unparseable input. The report depends only
    on the input, the options and ``tol`` (which carries the seed).
    """
    if suite not in SUITES:
        raise InputError(f"unknown suite {suite!r}; choose from {', '.join(SUITES)}", "suite")
    subject = load_subject(source, double=double, scalar=scalar, tol=tol)
    H = subject.H
    checks: list[Check] = []
    skipped: list[str] = []
    if subject.build_error is not None:
        checks.append(subject.build_error)
    if subject.twist is not None:
        checks.extend(subject.twist.checks)
        checks.extend(subject.twist_checks)

    if suite in ("all", "hopf") or subject.build_error is not None:
        checks.extend(hopf_checks(H, tol))
    if H.antipode is None:
        if suite != "hopf":
            skipped.append("everything past the Hopf axioms: no antipode")
        return _finish(subject, suite, checks, skipped, tol, double)

    Q = QuasitriangularStructure(H, subject.R, tol) if subject.R is not None else None
    is_double = subject.base_dim is not None

    if suite in ("all", "modular"):
        if Q is None:
            if suite == "modular":
                raise InputError("input has no R-matrix; pass a double or use --double", "r_matrix")
            skipped.append("modular: no R-matrix")
        else:
            if suite == "modular" or is_double or factorizability_map(Q, tol).invertible:
                checks.extend(quasi_checks(Q, tol))
                mod, _ = modular_checks(Q, tol, subject.base_group)
                checks.extend(mod)
            else:
                checks.extend(quasi_checks(Q, tol))
                skipped.append("modular: R is not factorizable")

    if suite in ("all", "divisibility"):
        checks.extend(divisibility_checks(subject, tol))

    if suite in ("all", "triangular"):
        if Q is None:
            if suite == "triangular":
                raise InputError("input has no R-matrix", "r_matrix")
            skipped.append("triangular: no R-matrix")
        elif suite == "triangular" or is_triangular(Q)[0]:
            if suite == "triangular":
                checks.extend(c for c in quasi_checks(Q, tol) if c.name == "quasitriangularity")
            checks.extend(triangular_checks(Q, tol))
        else:
            skipped.append("triangular: R is not triangular")
    return _finish(subject, suite, checks, skipped, tol, double)


def _finish(subject, suite, checks, skipped, tol, double) -> VerificationReport:
    seen = set()
    unique = []
    for c in checks:  # suites can reach the same check twice
        key = (c.name, json.dumps(_plain(c.detail), sort_keys=True), _plain(c.residual))
        if key not in seen:
            seen.add(key)
            unique.append(c)
    provenance = {
        "input_sha256": subject.digest,
        "suite": suite,
        "double": double,
        "scalar_mode": subject.H.scalar_mode,
        "dim": subject.H.dim,
        "r_matrix": subject.r_source,
        "seed": tol.rng_seed,
        "tolerances": {"residual_tol": tol.residual_tol, "integer_tol": tol.integer_tol,
                       "eigen_gap_tol": tol.eigen_gap_tol,
                       "max_random_retries": tol.max_random_retries},
        "skipped": skipped,
    }
    return VerificationReport(subject.label, unique, provenance)


# ---------------------------------------------------------------------------
# analysis artifacts

def analyze_subject(subject: Subject, tol: ToleranceConfig = DEFAULT_TOL) -> dict:
    """Blocks, characters and (given an R-matrix) the S-matrix and both fusion tensors."""
    H = subject.H
    T = wedderburn(H, tol)
    out = {
        "subject": subject.label,
        "dim": H.dim,
        "dims": T.dims,
        "dual": list(T.dual_involution) if T.dual_involution is not None else None,
        "characters": T.characters,
    }
    if subject.R is not None:
        Q = QuasitriangularStructure(H, subject.R, tol)
        md = analyze_modular(Q, T, tol)
        out.update({
            "s_matrix": md.s,
            "fusion_bruteforce": md.fusion_bf,
            "fusion_verlinde": md.fusion_verlinde,
            "checks": md.checks,
        })
    else:
        out["fusion_bruteforce"] = fusion_bruteforce(H, T, tol)
    return out


def _clean_number(v):
    v = complex(v)
    re = float(np.round(v.real, 12)) + 0.0
    im = float(np.round(v.imag, 12)) + 0.0
    return re if im == 0 else [re, im]


def analysis_to_json(a: dict) -> str:
    def conv(x):
        if isinstance(x, np.ndarray):
            if x.dtype.kind in "iu":
                return x.tolist()
            return [conv(v) for v in x] if x.ndim > 1 else [_clean_number(v) for v in x]
        if isinstance(x, list) and x and isinstance(x[0], Check):
            return [{"name": c.name, "status": "pass" if c.passed else "fail",
                     "residual": _plain(c.residual)} for c in x]
        return x
    return json.dumps({k: conv(v) for k, v in a.items()}, indent=2, sort_keys=True) + "\n"


def matrix_csv(M) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    for row in np.atleast_2d(M):
        w.writerow([_fmt_cell(v) for v in row])
    return buf.getvalue()


def fusion_csv(N) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["i", "j", "l", "N"])
    for idx in np.ndindex(*N.shape):
        v = N[idx]
        if v != 0:
            w.writerow([*idx, _fmt_cell(v)])
    return buf.getvalue()


def _fmt_cell(v) -> str:
    c = _clean_number(v)
    if isinstance(c, list):
        return f"{c[0]:.12g}{c[1]:+.12g}j"
    return f"{c:.12g}"


def dims_csv(a: dict) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["block", "dim", "dual"])
    for i, d in enumerate(a["dims"]):
        w.writerow([i, d, a["dual"][i] if a["dual"] is not None else ""])
    return buf.getvalue()

